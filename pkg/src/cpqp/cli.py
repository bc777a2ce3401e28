"""Command line: ``cpqp {build,homology,morse,linkage,verify} ...``.

Exit status: 0 success, 1 verification failure, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import bicyclopermutohedron as qpm
from .complex_core import ChainComplex, euler_characteristic
from .cp_morse import build_cp_matching
from .cyclopermutohedron import DEFAULT_MAX_N, ResourceGuardError, build_cp, check_guard
from .discrete_morse import morse_boundary, path_weight, paths_between_critical
from .homology import HomologyResult, homology_mod2, homology_z
from .linkage import NonGenericError, build_moduli_complex, build_reduced_moduli, parse_lengths
from .partitions import PartitionError
from .verification import run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _build(kind: str, n: int, guard: int) -> ChainComplex:
    return build_cp(n, guard) if kind == "cp" else qpm.build_qp(n, guard)


def _matching(kind: str, n: int, cc: ChainComplex):
    return build_cp_matching(n, cc) if kind == "cp" else qpm.build_qp_matching(n, cc)


def homology_rows(h: HomologyResult | None, mod2: list[int]) -> list[dict]:
    rows = []
    for k, b2 in enumerate(mod2):
        row = {"dim": k, "betti_mod2": b2}
        if h is not None:
            row.update(group=h.describe(k), betti=h.betti[k], torsion=h.torsion[k])
        rows.append(row)
    return rows


def render_table(rows: list[dict], fmt: str) -> str:
    cols = ["dim", "betti", "torsion", "betti_mod2"]
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            tors = " ".join(str(t) for t in r.get("torsion", []))
            w.writerow([r["dim"], r.get("betti", ""), tors, r["betti_mod2"]])
        return buf.getvalue().rstrip("\n")
    if rows and "group" in rows[0]:
        header = ["dim", "H_k", "betti", "torsion", "betti_mod2"]
        body = [[str(r["dim"]), r["group"], str(r["betti"]), ",".join(map(str, r["torsion"])) or "-", str(r["betti_mod2"])] for r in rows]
    else:
        header = ["dim", "betti_mod2"]
        body = [[str(r["dim"]), str(r["betti_mod2"])] for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(x.ljust(w) for x, w in zip(line, widths)).rstrip() for line in [header] + body]
    return "\n".join(lines)


def summary(cc: ChainComplex) -> str:
    counts = ", ".join(f"{k}: {c}" for k, c in enumerate(cc.counts))
    return f"{cc.name}\ncells by dimension: {counts}\nEuler characteristic: {euler_characteristic(cc)}"


def cmd_build(args) -> int:
    cc = _build(args.kind, args.n, args.guard)
    print(cc.to_json(sort_keys=True) if args.format == "json" else summary(cc))
    return EXIT_OK


def cmd_homology(args) -> int:
    if args.coeff == "z2":
        if args.kind == "qp":
            check_guard(args.n, args.guard)
            mod2 = qpm.qp_homology_mod2(args.n, args.guard)
        else:
            mod2 = homology_mod2(build_cp(args.n, args.guard))
        rows = homology_rows(None, mod2)
    else:
        h = homology_z(_build(args.kind, args.n, args.guard))
        rows = homology_rows(h, h.betti_mod2)
    print(render_table(rows, args.format))
    return EXIT_OK


def _matrix_text(m) -> str:
    if m.rows == 0 or m.cols == 0:
        return f"  ({m.rows} x {m.cols})"
    return "\n".join("  " + " ".join(f"{v:2d}" for v in row) for row in m.to_dense().tolist())


def cmd_morse(args) -> int:
    cc = _build(args.kind, args.n, args.guard)
    m = _matching(args.kind, args.n, cc)
    morse = morse_boundary(cc, m)
    label = cc.cell_label
    if args.emit_paths:
        for k in range(1, len(morse.critical)):
            for j in morse.critical[k]:
                for i in morse.critical[k - 1]:
                    for p in paths_between_critical(cc, m, (k, j), (k - 1, i)):
                        rec = {
                            "from": label(cc.cells[k][j]),
                            "to": label(cc.cells[k - 1][i]),
                            "path": [label(cc.cells[d][x]) for d, x in p],
                            "incidence": cc.boundary[k][p[1][1], j],
                            "weight": path_weight(cc, p[1:]),
                        }
                        print(json.dumps(rec))
        return EXIT_OK
    print(f"Morse complex of {cc.name}")
    print("critical cells: " + ", ".join(f"dim {k}: {c}" for k, c in enumerate(morse.counts)))
    for k in range(len(morse.critical)):
        print(f"dim {k}: " + " ".join(label(c) for c in morse.critical_cells(k)))
    for k in range(1, len(morse.critical)):
        d = morse.boundary[k]
        print(f"path counts {k} -> {k - 1}:")
        print(_matrix_text(morse.path_counts[k]))
        print(f"Morse boundary {k} ({d.rows} x {d.cols}, {'zero' if d.is_zero() else 'nonzero'}):")
        print(_matrix_text(d))
    return EXIT_OK


def cmd_linkage(args) -> int:
    ell = parse_lengths(args.lengths)
    cc = build_reduced_moduli(ell) if args.reduced else build_moduli_complex(ell)
    if args.format == "json" and not args.homology:
        print(cc.to_json(sort_keys=True))
        return EXIT_OK
    if args.format == "text":
        print(summary(cc))
    if args.homology:
        h = homology_z(cc)
        print(render_table(homology_rows(h, h.betti_mod2), args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n is not None:
        lo = hi = args.n
    else:
        lo, hi = 3, args.max_n
    check_guard(hi, args.guard)
    results = run_all(hi, args.kind, seed=args.seed, log=print, min_n=lo)
    failed = [name for name, rep in results if not rep.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpqp", description=__doc__.splitlines()[0])
    p.add_argument("--guard", type=int, default=DEFAULT_MAX_N, help=f"largest n allowed (default {DEFAULT_MAX_N})")
    sub = p.add_subparsers(dest="command", required=True)

    def kind_n(sp, kinds=("cp", "qp")):
        sp.add_argument("kind", choices=kinds)
        sp.add_argument("--n", type=int, required=True)

    b = sub.add_parser("build", help="build CP or QP and summarise it")
    kind_n(b)
    b.add_argument("--format", choices=["text", "json"], default="text")
    b.set_defaults(func=cmd_build)

    h = sub.add_parser("homology", help="integral or mod-2 homology")
    kind_n(h)
    h.add_argument("--coeff", choices=["z", "z2"], default="z")
    h.add_argument("--format", choices=["text", "csv", "json"], default="text")
    h.set_defaults(func=cmd_homology)

    m = sub.add_parser("morse", help="critical cells, path counts and Morse boundaries")
    kind_n(m)
    m.add_argument("--emit-paths", action="store_true", help="JSON lines, one per gradient path")
    m.set_defaults(func=cmd_morse)

    li = sub.add_parser("linkage", help="moduli complex of a polygon linkage")
    li.add_argument("--lengths", required=True, help="comma separated, rationals allowed (3/2)")
    li.add_argument("--reduced", action="store_true", help="quotient by reflection")
    li.add_argument("--homology", action="store_true")
    li.add_argument("--format", choices=["text", "csv", "json"], default="text")
    li.set_defaults(func=cmd_linkage)

    v = sub.add_parser("verify", help="run the verification bundle")
    v.add_argument("kind", choices=["cp", "qp", "linkage", "all"])
    g = v.add_mutually_exclusive_group()
    g.add_argument("--max-n", type=int, default=5)
    g.add_argument("--n", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, PartitionError, NonGenericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
