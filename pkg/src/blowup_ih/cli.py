"""Command-line front end.

    blowup-ih cohomology --space fixture:cone_circle --perversity "gm 0 0 0" --ring q
    blowup-ih verify signs
    blowup-ih compare ordinary --space fixture:susp_torus --ring q
    blowup-ih compare recoding --space fixture:fake_sphere --recode "0->2,1->2,2->2"

Exit codes: 0 success, 1 input error, 2 property failure (a verify check
failed, or a comparison map is not an isomorphism in some degree).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .algebra import ChainMap, Ring, parse_ring
from .amalgam import ordinary_comparison, refinement_pullback, regular_restriction, relative_comparison
from .blowup import intersection_subcomplex
from .chains import tame_complex
from .complex_core import InputError, Perversity, WeightedComplex, parse_perversity, recode
from .io import SCHEMA_VERSION, complex_json, format_group_table, group_table_json, load_document
from .products import chi_map

EXIT_OK, EXIT_INPUT, EXIT_PROPERTY = 0, 1, 2

COMPARE_MODES = ("ordinary", "regular", "relative", "dual-tame", "recoding")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def load_space(spec: str):
    """A space file path, ``fixture:<name>``, or a bare fixture name."""
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        return load_document(fixtures.data_text(name)) if name in fixtures.BUILDERS else _unknown(name)
    path = Path(spec)
    if path.exists():
        try:
            return load_document(path.read_text(encoding="utf-8"))
        except UnicodeDecodeError:
            raise InputError(f"{spec}: not a text file") from None
    if spec in fixtures.BUILDERS:
        return load_document(fixtures.data_text(spec))
    raise InputError(f"no such file or fixture: {spec}")


def _unknown(name: str):
    raise InputError(f"unknown fixture {name!r}; try 'blowup-ih fixtures'")


def parse_recoding(text: str, n: int) -> tuple[int, ...]:
    """``"0->2,1->2"``; weights not mentioned keep their value."""
    phi = list(range(n + 1))
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        if "->" not in part:
            raise InputError(f"bad recoding entry {part!r}; expected 'a->b'")
        a, b = part.split("->", 1)
        try:
            a_, b_ = int(a), int(b)
        except ValueError:
            raise InputError(f"bad recoding entry {part!r}") from None
        if not 0 <= a_ <= n:
            raise InputError(f"recoding mentions weight {a_} outside 0..{n}")
        phi[a_] = b_
    return tuple(phi)


def _ring(text: str) -> Ring:
    try:
        return parse_ring(text)
    except ValueError as e:
        raise InputError(str(e)) from None


def _perversity(cx: WeightedComplex, text: str | None, default: Perversity | None) -> Perversity:
    if text:
        return parse_perversity(cx, text)
    return default if default is not None else Perversity.zero(cx)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_cohomology(args) -> int:
    doc = load_space(args.space)
    cx = doc.complex
    p = _perversity(cx, args.perversity, doc.perversity)
    ring = _ring(args.ring)
    if args.tame:
        groups = tame_complex(cx, p, ring).homology_table()
        _emit(args, group_table_json(groups, what="tame-homology", perversity=p, ring=ring),
              format_group_table(groups, "h_"))
    else:
        groups = intersection_subcomplex(cx, p, ring).homology_table()
        _emit(args, group_table_json(groups, what="intersection-cohomology", perversity=p, ring=ring),
              format_group_table(groups, "H^"))
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify

    if args.suite != "all" and args.suite not in verify.SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from all, {', '.join(verify.SUITES)}")
    results = verify.run(args.suite)
    failed = [r for r in results if not r.passed]
    if args.json:
        print(json.dumps({
            "schema": SCHEMA_VERSION,
            "kind": "verify",
            "suite": args.suite,
            "checks": [{"suite": r.suite, "name": r.name, "passed": r.passed, "cases": r.cases,
                        "counterexample": r.witness} for r in results],
        }, indent=2, sort_keys=True))
    else:
        for r in results:
            print(r.line())
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_PROPERTY if failed else EXIT_OK


def _comparison(args) -> tuple[ChainMap, str, str]:
    doc = load_space(args.space)
    cx = doc.complex
    ring = _ring(args.ring)
    mode = args.mode
    if mode == "ordinary":
        return ordinary_comparison(cx, ring), "ordinary cochains", "H^*_0"
    if mode == "regular":
        p = _perversity(cx, args.perversity, doc.perversity)
        return regular_restriction(cx, p, ring), "H^*_p", "top-weight cochains"
    if mode == "relative":
        p = _perversity(cx, args.perversity, doc.perversity)
        return relative_comparison(cx, p, ring), "cochains relative to the singular part", "H^*_p"
    if mode == "dual-tame":
        p = _perversity(cx, args.perversity, doc.perversity)
        return chi_map(cx, p, ring), "H^*_p", "tame cohomology of the dual perversity"
    # recoding: the space is the fine complex
    if not args.recode:
        raise InputError("compare recoding needs --recode")
    phi = parse_recoding(args.recode, cx.n)
    coarse = recode(cx, phi)
    pc = _perversity(coarse, args.perversity, None)
    return refinement_pullback(cx, coarse, phi, pc, None, ring), "coarse H^*", "fine H^*"


def cmd_compare(args) -> int:
    m, src, tgt = _comparison(args)
    if not m.is_chain_map():
        print("error: comparison map is not a chain map", file=sys.stderr)
        return EXIT_PROPERTY
    report = m.degreewise_iso()
    rows = []
    for k in sorted(report):
        rows.append({"degree": k, "source": m.source.homology(k).as_dict(),
                     "target": m.target.homology(k).as_dict(), "iso": report[k]})
    ok = all(report.values())
    lines = [f"{args.mode}: {src} -> {tgt} over {m.source.ring.spec}"]
    for r, k in zip(rows, sorted(report)):
        lines.append(f"  degree {k}: {m.source.homology(k)} -> {m.target.homology(k)}  "
                     f"{'iso' if r['iso'] else 'NOT iso'}")
    lines.append("isomorphism in every degree" if ok else "not an isomorphism")
    _emit(args, {"schema": SCHEMA_VERSION, "kind": "comparison", "mode": args.mode,
                 "ring": m.source.ring.spec, "degrees": rows, "iso": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_fixtures(args) -> int:
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, "kind": "fixtures",
                          "fixtures": [{"name": n, "description": fixtures.DESCRIPTIONS[n]} for n in fixtures.names()]},
                         indent=2, sort_keys=True))
    else:
        width = max(len(n) for n in fixtures.names())
        for n in fixtures.names():
            print(f"{n:<{width}}  {fixtures.DESCRIPTIONS[n]}")
    return EXIT_OK


def cmd_describe(args) -> int:
    cx = load_space(args.space).complex
    data = complex_json(cx)
    lines = [f"formal dimension {cx.n}, {cx.num_vertices} vertices, {len(cx.facets)} facets"]
    for st in data["strata"]:
        kind = "singular" if st["singular"] else "regular"
        lines.append(f"  stratum {st['id']}: weight {st['index']}, codim {st['codim']}, {kind}, "
                     f"vertices {' '.join(st['vertices'])}")
    lines.append(f"normal: {'yes' if cx.is_normal() else 'no'}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blowup-ih", description="Blown-up intersection cohomology of weighted simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, algebra=True):
        p.add_argument("--space", required=True, help="space file, or fixture:<name>")
        if algebra:
            p.add_argument("--perversity", help="gm v0..vn | codim v0..vn | stratum id:v ... | zero | top")
            p.add_argument("--ring", default="z", help="z, q or zp:<p> (default z)")
        p.add_argument("--json", action="store_true", help="JSON output")

    p = sub.add_parser("cohomology", help="intersection cohomology table")
    common(p)
    p.add_argument("--tame", action="store_true", help="tame intersection homology instead")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("suite", nargs="?", default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="comparison maps and their induced maps")
    p.add_argument("mode", choices=COMPARE_MODES)
    common(p)
    p.add_argument("--recode", help="weight recoding, e.g. '0->2,1->2'")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fixtures", help="list the shipped fixtures")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("describe", help="strata of a space")
    common(p, algebra=False)
    p.set_defaults(func=cmd_describe)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
