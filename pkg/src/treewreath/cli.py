"""Command-line entry point.

Exit status is 0 on success, 1 on domain errors (size ceilings, search
budgets, non-separable input) and 2 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import chartab, conjugacy, permrep, sepset, spectral
from .errors import BudgetExceededError, NotSeparableError, SizeLimitError
from .rtree import count_rtrees, enumerate_rtrees, format_tree, parse_tree, tree_invariant
from .wreath import enumerate_group, group_order, leaf_images

log = logging.getLogger("treewreath")

DOMAIN_ERRORS = (SizeLimitError, BudgetExceededError, NotSeparableError, ArithmeticError)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=1)


def _positive(value: str) -> int:
    v = int(value)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return v


# subcommands ----------------------------------------------------------------


def cmd_trees(args) -> int:
    trees = enumerate_rtrees(args.n, args.r)
    if args.json:
        _emit(_dump({"n": args.n, "r": args.r, "count": count_rtrees(args.n, args.r),
                     "trees": [format_tree(t) for t in trees]}))
    else:
        _emit("\n".join(format_tree(t) for t in trees))
    return 0


def _class_rows(n: int) -> list[dict]:
    return [
        {"tree": format_tree(c.tree), "size": str(c.size), "rep": c.cycle_notation}
        for c in conjugacy.classes(n)
    ]


def cmd_classes(args) -> int:
    rows = _class_rows(args.n)
    if args.json:
        _emit(_dump({"n": args.n, "classes": rows}))
    else:
        lines = [f"{'index':>5}  {'size':>10}  representative  |  tree"]
        for i, r in enumerate(rows, start=1):
            lines.append(f"{i:>5}  {r['size']:>10}  {r['rep']}  |  {r['tree']}")
        _emit("\n".join(lines))
    return 0


def cmd_chartab(args) -> int:
    table = chartab.build_table(args.n, allow_large=args.allow_large)
    if args.modified:
        mod = chartab.modified_table(table)
        values = [[str(v) for v in row] for row in mod.entries]
    else:
        values = [[str(v) for v in row] for row in table.values]
    irreps = [{"tree": format_tree(t), "dim": d} for t, d in zip(table.irreps, table.dims)]
    if args.format == "json":
        doc = {"n": args.n, "classes": _class_rows(args.n), "irreps": irreps, "values": values}
        if args.modified:
            doc["eigenvalues"] = [[str(v) for v in row] for row in mod.eigenvalues]
        _emit(_dump(doc))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["irrep"] + [format_tree(t) for t in table.class_trees])
        for t, row in zip(table.irreps, values):
            writer.writerow([format_tree(t)] + row)
        _emit(buf.getvalue())
    else:
        width = max(len(v) for row in values for v in row) + 1
        lines = ["classes (columns):"]
        lines += [f"  {j:>3}: {format_tree(t)}" for j, t in enumerate(table.class_trees, 1)]
        lines.append("irreps (rows):")
        for i, (t, row) in enumerate(zip(table.irreps, values), 1):
            lines.append(f"  {i:>3}: " + "".join(v.rjust(width) for v in row) + f"   {format_tree(t)}")
        _emit("\n".join(lines))
    return 0


def _sep_instance(n: int, rep: str) -> sepset.SepInstance:
    if rep == "perm":
        return permrep.reduced_instance(n)
    table = chartab.build_table(n)
    return sepset.SepInstance(chartab.modified_table(table).entries, tuple(table.class_trees))


def _set_json(cols, trees) -> dict:
    return {"columns": [c + 1 for c in cols], "trees": [format_tree(trees[c]) for c in cols]}


def cmd_sepset(args) -> int:
    inst = _sep_instance(args.n, args.rep)
    trees = list(inst.col_labels)
    if args.method == "brute":
        result = sepset.brute_force_minimal(inst, max_k=args.max_k, workers=args.threads)
        if result.k is None:
            _emit(f"no separating set of size <= {args.max_k}")
            return 0
        k, sets = result.k, result.sets
    else:
        order = sepset.greedy_order(inst)
        chosen = tuple(sorted(c for c, _ in order))
        k, sets = len(chosen), [chosen]
        log.info("greedy picks: %s", ", ".join(f"{c + 1} (+{g})" for c, g in order))
    shown = sets if args.all else sets[:1]
    if args.json:
        _emit(_dump({"n": args.n, "rep": args.rep, "method": args.method, "k": k,
                     "count": len(sets), "sets": [_set_json(s, trees) for s in shown]}))
    else:
        lines = [f"k={k}"]
        if args.method == "brute":
            lines.append(f"count={len(sets)}")
        for s in shown:
            idx = ", ".join(str(c + 1) for c in s)
            lines.append("{" + idx + "}  " + "  ".join(format_tree(trees[c]) for c in s))
        _emit("\n".join(lines))
    return 0


def cmd_permrep(args) -> int:
    dec = permrep.decompose(args.n)
    table = chartab.build_table(args.n)
    doc = {
        "n": args.n,
        "dim": 2**args.n,
        "character": [str(v) for v in dec.character],
        "constituents": [
            {"tree": format_tree(t), "dim": table.dims[table.row_index(t)], "multiplicity": dec.multiplicities[t]}
            for t in dec.constituents
        ],
    }
    if args.matrices:
        ops = [permrep.class_sum_matrix(t, args.n) for t in table.class_trees]
        doc["matrices"] = [
            {"tree": format_tree(op.tree), "matrix": op.matrix.tolist(), "spectrum": list(op.spectrum)}
            for op in ops
        ]
    if args.sepsets:
        result = permrep.perm_sepsets(args.n, args.method)
        doc["sepsets"] = {
            "method": args.method,
            "k": result.k,
            "count": len(result.sets),
            "sets": [_set_json(s, table.class_trees) for s in result.sets],
        }
    if args.json or args.matrices:
        _emit(_dump(doc))
    else:
        lines = [f"V_{args.n}: dim {2**args.n}, {len(dec.constituents)} isotypic subspaces"]
        for c in doc["constituents"]:
            lines.append(f"  {c['tree']}  dim={c['dim']}  multiplicity={c['multiplicity']}")
        if args.sepsets:
            s = doc["sepsets"]
            lines.append(f"separating sets ({s['method']}): k={s['k']} count={s['count']}")
            for item in s["sets"]:
                lines.append("  {" + ", ".join(map(str, item["columns"])) + "}  " + "  ".join(item["trees"]))
        _emit("\n".join(lines))
    return 0


def _read_sepset_file(path: str) -> list:
    trees = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line:
            trees.append(parse_tree(line))
    return trees


def cmd_project(args) -> int:
    x = spectral.read_signal(args.signal)
    chosen = None if args.sepset == "auto" else _read_sepset_file(args.sepset)
    counter = spectral.OpCounter()
    if args.rep == "perm":
        comps = spectral.isotypic_decompose_perm(args.n, x, chosen, counter)
    else:
        comps = spectral.isotypic_decompose_regular(args.n, x, chosen, counter)
    _emit(_dump({"n": args.n, "rep": args.rep, "operator_applications": counter.applications,
                 "components": [spectral.component_json(c) for c in comps]}))
    return 0


def cmd_dft(args) -> int:
    x = spectral.read_signal(args.signal)
    counter = spectral.OpCounter()
    coeffs = spectral.eigenspace_dft(x, counter)
    if args.json:
        _emit(_dump({"length": len(x), "butterflies": counter.butterflies,
                     "coefficients": [[float(v.real), float(v.imag)] for v in coeffs]}))
    else:
        _emit("\n".join(f"{float(v.real)!r},{float(v.imag)!r}" for v in coeffs))
    return 0


def cmd_reduce_mtc(args) -> int:
    data = json.loads(Path(args.input).read_text())
    m = sepset.MTCInstance.from_json(data)
    inst, k = sepset.mtc_to_sepset(m)
    doc = {"rows": inst.n_rows, "cols": inst.n_cols, "entries": [list(r) for r in inst.entries], "k": k}
    text = _dump(doc)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        _emit(text)
    return 0


# verification ---------------------------------------------------------------


def verification_checks(n: int) -> list[tuple[str, Callable[[], bool]]]:
    def counts():
        return len(enumerate_rtrees(n)) == count_rtrees(n)

    def sizes_sum():
        return sum(c.size for c in conjugacy.classes(n)) == group_order(n)

    def buckets():
        b = conjugacy.bucket_oracle(n)
        return len(b) == count_rtrees(n) and all(b[c.tree] == c.size for c in conjugacy.classes(n))

    def injective():
        return len({leaf_images(x).tobytes() for x in enumerate_group(n)}) == group_order(n)

    def reps():
        return all(tree_invariant(c.representative) == c.tree for c in conjugacy.classes(n))

    def orthogonality():
        return chartab.check_orthogonality(chartab.build_table(n))

    def dimsum():
        return sum(d * d for d in chartab.build_table(n).dims) == group_order(n)

    def traces():
        table = chartab.build_table(n)
        return all(
            int(np.trace(chartab.explicit_irrep(r, c.representative))) == v
            for r, row in zip(table.irreps, table.values)
            for c, v in zip(table.classes, row)
        )

    def eigen_integral():
        chartab.modified_table(chartab.build_table(n))
        return True

    def perm_decomposition():
        mult = permrep.decompose(n).multiplicities.values()
        return all(m in (0, 1) for m in mult) and sum(mult) == n + 1

    def commuting():
        mats = [permrep.class_sum_matrix(t, n).matrix for t in enumerate_rtrees(n)]
        return all(np.array_equal(a @ b, b @ a) for i, a in enumerate(mats) for b in mats[i + 1:])

    def haar():
        return len(set(spectral.match_isotypics_to_haar(n).values())) == n + 1

    checks = [
        ("tree count matches recurrence", counts),
        ("class sizes sum to |W_n|", sizes_sum),
        ("representatives lie in their class", reps),
        ("row and column orthogonality", orthogonality),
        ("sum of squared dimensions is |W_n|", dimsum),
        ("class-sum eigenvalues are integers", eigen_integral),
    ]
    if n <= 4:
        checks += [
            ("enumeration is injective on leaves", injective),
            ("bucketing by tree invariant matches class sizes", buckets),
            ("V_n has n+1 constituents of multiplicity 1", perm_decomposition),
            ("class sums on leaves commute", commuting),
            ("isotypics of V_n are the Haar levels", haar),
        ]
    if n <= 3:
        checks.append(("explicit-matrix traces equal table entries", traces))
    return checks


def cmd_verify(args) -> int:
    if args.n > 4:
        raise SizeLimitError("verify runs for n <= 4")
    failures = 0
    for name, check in verification_checks(args.n):
        try:
            ok = bool(check())
        except DOMAIN_ERRORS as exc:
            ok = False
            name = f"{name} ({exc})"
        failures += not ok
        _emit(f"{'PASS' if ok else 'FAIL'}  {name}")
    _emit("all checks passed" if not failures else f"{failures} check(s) failed")
    return 0 if not failures else 1


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treewreath", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--threads", type=_positive, default=1,
                   help="worker processes for exhaustive searches (default 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trees", help="list the labeled trees of height n")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_trees)

    s = sub.add_parser("classes", help="conjugacy classes with sizes and representatives")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classes)

    s = sub.add_parser("chartab", help="character table")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--modified", action="store_true", help="divide each row by its dimension")
    s.add_argument("--allow-large", action="store_true", help="permit n = 5")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    s.set_defaults(func=cmd_chartab, format="text")

    s = sub.add_parser("sepset", help="separating sets of class sums")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--rep", choices=["regular", "perm"], default="regular")
    s.add_argument("--method", choices=["brute", "greedy"], default="brute")
    s.add_argument("--max-k", type=int, default=None)
    s.add_argument("--all", action="store_true", help="print every minimal set")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sepset)

    s = sub.add_parser("permrep", help="leaf permutation representation")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--matrices", action="store_true")
    s.add_argument("--sepsets", action="store_true")
    s.add_argument("--method", choices=["brute", "greedy"], default="brute")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_permrep)

    s = sub.add_parser("project", help="isotypic projections of a signal")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--rep", choices=["perm", "regular"], default="perm")
    s.add_argument("--signal", required=True)
    s.add_argument("--sepset", default="auto", help="'auto' or a file with one tree per line")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("dft", help="cyclic DFT by eigenspace splitting")
    s.add_argument("--signal", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_dft)

    s = sub.add_parser("reduce-mtc", help="MINIMUM TEST COLLECTION -> separating-set instance")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", dest="output")
    s.set_defaults(func=cmd_reduce_mtc)

    s = sub.add_parser("verify", help="run the oracle checks at height n")
    s.add_argument("--n", type=_positive, required=True)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
