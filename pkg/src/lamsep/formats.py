"""Readers and writers: PACE .gr graphs, PACE-style .td decompositions,
family JSON, certificate JSON and DOT.

Writers are canonical: the same object always serialises to the same bytes,
and ``parse(emit(x)) == x``.
"""

from __future__ import annotations

import json
from typing import Iterable

from .decomposition import TreeDecomposition, leaf_bipartition
from .errors import FormatError, LamsepError, NotDeciduous
from .graph import Graph, build_graph
from .separation import ManySidedSeparation, SeparationFamily


def _ints(tokens: Iterable[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield lineno, line.split()


# -- graphs ----------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse PACE ``p tw n m`` format, or a plain edge list whose first line is ``n``."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty graph file")
    lineno, first = lines[0]
    if first[0] == "p":
        if len(first) != 4 or first[1] != "tw":
            raise FormatError(f"line {lineno}: expected 'p tw <n> <m>'")
        n, m = _ints(first[2:], lineno)
    elif len(first) == 1:
        (n,), m = _ints(first, lineno), None
    else:
        raise FormatError(f"line {lineno}: expected a 'p tw' header or a vertex count")
    edges = []
    for lineno, toks in lines[1:]:
        if len(toks) != 2:
            raise FormatError(f"line {lineno}: expected 'u v'")
        edges.append(tuple(_ints(toks, lineno)))
    if m is not None and m != len(edges):
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return build_graph(n, edges)
    except LamsepError as exc:
        raise FormatError(str(exc)) from exc


def emit_graph(g: Graph) -> str:
    out = [f"p tw {g.n} {g.m}"]
    out += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(out) + "\n"


# -- families --------------------------------------------------------------


def family_to_obj(f: SeparationFamily) -> dict:
    return {
        "n": f.n,
        "separations": [
            {"cutset": sorted(s.cutset), "sides": [sorted(a) for a in s.sides]} for s in f
        ],
    }


def family_from_obj(obj) -> SeparationFamily:
    try:
        n = obj["n"]
        seps = obj["separations"]
        if not isinstance(n, int) or not isinstance(seps, list):
            raise TypeError
        members = []
        for entry in seps:
            sides = entry["sides"]
            cutset = entry["cutset"]
            if not all(isinstance(v, int) for part in sides + [cutset] for v in part):
                raise TypeError
            members.append(ManySidedSeparation(tuple(frozenset(a) for a in sides), frozenset(cutset), n))
        return SeparationFamily(n, members)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"malformed family JSON: {exc}") from None


def parse_family(text: str) -> SeparationFamily:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return family_from_obj(obj)


def emit_family(f: SeparationFamily) -> str:
    obj = family_to_obj(f)
    if not obj["separations"]:
        return json.dumps(obj) + "\n"
    rows = ",\n".join("    " + json.dumps(s) for s in obj["separations"])
    return f'{{\n  "n": {f.n},\n  "separations": [\n{rows}\n  ]\n}}\n'


# -- decompositions --------------------------------------------------------


def parse_td(text: str) -> TreeDecomposition:
    """Parse ``s td`` header, ``b`` bag lines and tree edge lines; comments are ignored."""
    header = None
    bags: dict[int, frozenset] = {}
    edges = []
    for lineno, toks in _content_lines(text):
        if toks[0] == "s":
            if header is not None or len(toks) != 5 or toks[1] != "td":
                raise FormatError(f"line {lineno}: expected a single 's td <bags> <maxbag> <n>'")
            header = _ints(toks[2:], lineno)
        elif header is None:
            raise FormatError(f"line {lineno}: content before 's td' header")
        elif toks[0] == "b":
            ids = _ints(toks[1:], lineno)
            if not ids:
                raise FormatError(f"line {lineno}: bag line without id")
            if ids[0] in bags:
                raise FormatError(f"line {lineno}: duplicate bag {ids[0]}")
            bags[ids[0]] = frozenset(ids[1:])
        elif len(toks) == 2:
            edges.append(tuple(_ints(toks, lineno)))
        else:
            raise FormatError(f"line {lineno}: unrecognised line")
    if header is None:
        raise FormatError("missing 's td' header")
    count, _, n = header
    if count != len(bags) or sorted(bags) != list(range(1, count + 1)):
        raise FormatError(f"header declares {count} bags numbered 1..{count}, found {sorted(bags)}")
    for a, b in edges:
        if a not in bags or b not in bags:
            raise FormatError(f"tree edge {a} {b} references an unknown bag")
    return TreeDecomposition.from_parts(n, bags, edges)


def emit_td(td: TreeDecomposition) -> str:
    """PACE-style text; nodes are renumbered 1..N in id order if necessary."""
    nodes = td.nodes
    if nodes != list(range(1, len(nodes) + 1)):
        td = td.relabel({t: i for i, t in enumerate(nodes, 1)})
        nodes = td.nodes
    maxbag = max((len(b) for b in td.bags.values()), default=0)
    out = [f"s td {len(nodes)} {maxbag} {td.n}"]
    try:
        X = leaf_bipartition(td).X
        out.append("c x-class: " + " ".join(map(str, sorted(X))))
    except (NotDeciduous, KeyError):
        pass
    for t in nodes:
        out.append(" ".join(["b", str(t)] + [str(v) for v in sorted(td.bags[t])]))
    out += [f"{a} {b}" for a, b in sorted(td.edges)]
    return "\n".join(out) + "\n"


def emit_dot(td: TreeDecomposition) -> str:
    out = ["graph T {"]
    for t in td.nodes:
        label = "{" + ",".join(map(str, sorted(td.bags[t]))) + "}"
        out.append(f'  {t} [label="{label}"];')
    out += [f"  {a} -- {b};" for a, b in sorted(td.edges)]
    out.append("}")
    return "\n".join(out) + "\n"


# -- certificates ----------------------------------------------------------


def emit_certificate(cert: dict) -> str:
    return json.dumps(cert, indent=2, sort_keys=True) + "\n"


def parse_certificate(text: str) -> tuple[Graph, SeparationFamily, dict]:
    try:
        cert = json.loads(text)
        gobj = cert["graph"]
        g = build_graph(gobj["n"], [tuple(e) for e in gobj["edges"]])
        f = family_from_obj(cert["family"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from None
    except LamsepError as exc:
        raise FormatError(f"malformed certificate: {exc}") from exc
    return g, f, cert
