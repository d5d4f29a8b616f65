"""``lamsep`` command line.

Exit codes: 0 success / property holds, 1 property false, 2 usage or parse
error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import formats
from .builder import build_deciduous_td
from .decomposition import tau, tau_star, validate_td, width
from .errors import (
    BadParams,
    ContextMismatch,
    FormatError,
    InternalInvariant,
    InvalidDecomposition,
    LamsepError,
    NotACutset,
    NotConnectedGraph,
    NotDeciduous,
    OutOfRange,
    TooLarge,
)
from .graph import enum_minimal_cutsets
from .separation import SeparationFamily, crossing_pair, msep_from_cutset, project_family, validate_msep

OK, FALSE, USAGE, INTERNAL = 0, 1, 2, 3


@dataclass
class CommandResult:
    code: int
    summary: str
    payload: dict | None = None


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path):
    return formats.parse_graph(_read(path))


def _load_family(path, g=None):
    f = formats.parse_family(_read(path))
    if g is not None:
        if f.n != g.n:
            raise ContextMismatch(f"family is over n={f.n} but the graph has n={g.n}")
        for idx, s in enumerate(f, 1):
            problems = validate_msep(g, s)
            if problems:
                raise FormatError(f"separation {idx} {s!r} is invalid: {problems[0]}")
    return f


def _load_td(path, g):
    td = formats.parse_td(_read(path))
    if td.n != g.n:
        raise ContextMismatch(f"decomposition is over n={td.n} but the graph has n={g.n}")
    return td


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


# -- commands --------------------------------------------------------------


def cmd_check_laminar(args) -> CommandResult:
    g = _load_graph(args.graph)
    f = _load_family(args.seps, g)
    pair = crossing_pair(f)
    if pair is None:
        return CommandResult(OK, "laminar", {"laminar": True})
    s1, s2 = pair
    return CommandResult(
        FALSE,
        f"crossing\n{s1!r}\n{s2!r}",
        {"laminar": False, "crossing": formats.family_to_obj(SeparationFamily(f.n, [s1, s2]))["separations"]},
    )


def cmd_build_td(args) -> CommandResult:
    g = _load_graph(args.graph)
    f = _load_family(args.seps, g)
    pair = crossing_pair(f)
    if pair is not None:
        return CommandResult(FALSE, f"not laminar\n{pair[0]!r}\n{pair[1]!r}")
    try:
        td = build_deciduous_td(g, f)
    except InternalInvariant as exc:
        cert_path = (args.out + ".cert.json") if args.out else "lamsep-certificate.json"
        _write(cert_path, formats.emit_certificate(exc.certificate))
        return CommandResult(INTERNAL, f"internal invariant violated: {exc}; certificate written to {cert_path}")
    # never ship an unvalidated decomposition
    if validate_td(g, td):
        return CommandResult(INTERNAL, "internal invariant violated: built decomposition is invalid")
    text = formats.emit_td(td)
    if args.dot:
        _write(args.dot, formats.emit_dot(td))
    if args.out:
        _write(args.out, text)
        return CommandResult(OK, f"wrote {args.out} ({len(td.bags)} bags, width {width(td)})")
    return CommandResult(OK, text.rstrip("\n"))


def _checked_td(args):
    g = _load_graph(args.graph)
    td = _load_td(args.td, g)
    problems = validate_td(g, td)
    if problems:
        raise InvalidDecomposition(str(problems[0]), problems)
    return g, td


def cmd_tau(args) -> CommandResult:
    g, td = _checked_td(args)
    return CommandResult(OK, formats.emit_family(tau(g, td)).rstrip("\n"))


def cmd_tau_star(args) -> CommandResult:
    g, td = _checked_td(args)
    return CommandResult(OK, formats.emit_family(tau_star(g, td)).rstrip("\n"))


def cmd_project(args) -> CommandResult:
    f = _load_family(args.seps)
    return CommandResult(OK, formats.emit_family(project_family(f)).rstrip("\n"))


def cmd_width(args) -> CommandResult:
    td = formats.parse_td(_read(args.td))
    return CommandResult(OK, str(width(td, paper_literal=args.paper_literal_width)))


def cmd_minimal_cutsets(args) -> CommandResult:
    g = _load_graph(args.graph)
    cuts = enum_minimal_cutsets(g, args.max_size)
    lines = [" ".join(map(str, sorted(c))) for c in cuts]
    return CommandResult(OK, "\n".join(lines), {"cutsets": [sorted(c) for c in cuts]})


def _parse_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise _UsageError(f"bad vertex list {text!r}") from None


def cmd_from_cutset(args) -> CommandResult:
    g = _load_graph(args.graph)
    s = msep_from_cutset(g, _parse_list(args.cutset))
    return CommandResult(OK, formats.emit_family(SeparationFamily(g.n, [s])).rstrip("\n"))


def cmd_gen(args) -> CommandResult:
    from .oracle import gen_graph, gen_laminar_family

    params = {k: v for k in ("n", "k", "rows", "cols", "p") if (v := getattr(args, k)) is not None}
    g = gen_graph(args.model, seed=args.seed, **params)
    text = formats.emit_graph(g)
    notes = []
    if args.seps_out:
        fams = gen_laminar_family(g, args.strategy, seed=args.seed, max_members=args.max_members)
        f = fams[0]
        _write(args.seps_out, formats.emit_family(f))
        notes.append(f"wrote {args.seps_out} ({len(f)} separations)")
    if args.out:
        _write(args.out, text)
        notes.insert(0, f"wrote {args.out} (n={g.n}, m={g.m})")
        return CommandResult(OK, "\n".join(notes))
    return CommandResult(OK, "\n".join([text.rstrip("\n")] + notes))


def cmd_selfcheck(args) -> CommandResult:
    if args.replay:
        from .oracle import check_all

        g, f, cert = formats.parse_certificate(_read(args.replay))
        report = check_all(g, f)
        head = f"replay of {cert.get('check', '?')}: {'ok' if report.ok else 'FAILED'}"
        return CommandResult(OK if report.ok else FALSE, head + "\n" + report.summary())

    from .acceptance import run_all

    results = run_all(nmax=args.nmax, jobs=args.jobs)
    lines = [r.line(timings=args.timings) for r in results]
    certs = [c for r in results for c in r.certificates]
    if certs and args.cert_dir:
        out = Path(args.cert_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, c in enumerate(certs, 1):
            (out / f"certificate-{i:03d}.json").write_text(formats.emit_certificate(c))
        lines.append(f"wrote {len(certs)} certificate(s) to {out}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return CommandResult(OK if passed == len(results) else FALSE, "\n".join(lines))


# -- parser ----------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lamsep", description="Many-sided separations and deciduous tree decompositions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check-laminar", help="test a family for pairwise non-crossing")
    c.add_argument("--graph", required=True)
    c.add_argument("--seps", required=True)
    c.set_defaults(fn=cmd_check_laminar)

    c = sub.add_parser("build-td", help="build a deciduous tree decomposition from a laminar family")
    c.add_argument("--graph", required=True)
    c.add_argument("--seps", required=True)
    c.add_argument("--out")
    c.add_argument("--dot")
    c.set_defaults(fn=cmd_build_td)

    for name, fn in (("tau", cmd_tau), ("tau-star", cmd_tau_star)):
        c = sub.add_parser(name, help=f"extract {name} from a decomposition")
        c.add_argument("--graph", required=True)
        c.add_argument("--td", required=True)
        c.set_defaults(fn=fn)

    c = sub.add_parser("project", help="separation projection of a family")
    c.add_argument("--seps", required=True)
    c.set_defaults(fn=cmd_project)

    c = sub.add_parser("width", help="width of a decomposition")
    c.add_argument("--td", required=True)
    c.add_argument("--paper-literal-width", action="store_true", help="use the smallest bag instead of the largest")
    c.set_defaults(fn=cmd_width)

    c = sub.add_parser("minimal-cutsets", help="enumerate minimal cutsets by brute force")
    c.add_argument("--graph", required=True)
    c.add_argument("--max-size", type=int, required=True)
    c.set_defaults(fn=cmd_minimal_cutsets)

    c = sub.add_parser("from-cutset", help="separation whose sides are the components of G - C")
    c.add_argument("--graph", required=True)
    c.add_argument("--cutset", required=True, help="comma separated vertex list")
    c.set_defaults(fn=cmd_from_cutset)

    c = sub.add_parser("gen", help="generate a graph (and optionally a laminar family)")
    c.add_argument("--model", required=True, choices=["path", "cycle", "star", "grid", "tree", "gnp"])
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--rows", type=int)
    c.add_argument("--cols", type=int)
    c.add_argument("--p", type=float)
    c.add_argument("--out")
    c.add_argument("--seps-out")
    c.add_argument("--strategy", default="greedy", choices=["greedy", "exhaustive"])
    c.add_argument("--max-members", type=int)
    c.set_defaults(fn=cmd_gen)

    c = sub.add_parser("selfcheck", help="run the acceptance corpus, or replay a certificate")
    c.add_argument("--nmax", type=int, default=6, help="largest graph order in the exhaustive catalog")
    c.add_argument("--replay")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--cert-dir")
    c.add_argument("--timings", action="store_true")
    c.set_defaults(fn=cmd_selfcheck)
    return p


def run(argv: list[str] | None = None) -> CommandResult:
    try:
        args = make_parser().parse_args(argv)
    except _UsageError as exc:
        return CommandResult(USAGE, str(exc))
    except SystemExit as exc:  # --help
        return CommandResult(OK if not exc.code else USAGE, "")
    try:
        return args.fn(args)
    except _UsageError as exc:
        return CommandResult(USAGE, str(exc))
    except InternalInvariant as exc:
        return CommandResult(INTERNAL, f"internal invariant violated: {exc}")
    except (FormatError, ContextMismatch, OutOfRange, BadParams, TooLarge, NotConnectedGraph) as exc:
        return CommandResult(USAGE, f"error: {exc}")
    except (NotDeciduous, InvalidDecomposition, NotACutset) as exc:
        return CommandResult(FALSE, f"{type(exc).__name__}: {exc}")
    except LamsepError as exc:
        return CommandResult(USAGE, f"error: {exc}")


def main(argv: list[str] | None = None) -> int:
    result = run(argv)
    if result.summary:
        stream = sys.stderr if result.code == USAGE else sys.stdout
        print(result.summary, file=stream)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
