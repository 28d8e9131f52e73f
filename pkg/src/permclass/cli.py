"""The ``permclass`` command-line front end.

Subcommands: count, classes, invariant, table, verify, orbit, stooge,
theorem.  Exit codes: 0 success, 1 verification mismatch, 2 usage/parse
error, 3 resource refusal.  Output is deterministic for a fixed
configuration (independent of --workers), and PERMCLASS_MEMORY_CAP_MB is
respected by the enumeration engine.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import engine, invariants, meta, oracle, perms, relation
from .errors import PermclassError, ResourceLimitError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _add_common(sub, partition_required=True, with_n=True):
    sub.add_argument("--partition", required=partition_required,
                     help="replacement partition, e.g. '{123,321}{132,231}'")
    if with_n:
        sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--mode", choices=["factor", "subword"], default="factor")
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument("--allow-large", action="store_true",
                     help="raise the n bound after a memory check")
    sub.add_argument("--format", choices=["text", "json", "csv"], default="text")
    sub.add_argument("--output", default=None, help="write to a file instead of stdout")


def _cmd_count(args) -> int:
    K = relation.parse_partition(args.partition)
    dec = engine.enumerate_classes(
        args.n, K, mode=args.mode, workers=args.workers, allow_large=args.allow_large
    )
    if args.format == "json":
        _emit(_json(dec.to_json_dict()), args.output)
    elif args.format == "csv":
        ident = ""
        if args.with_identity:
            ident = dec.class_sizes[dec.class_of_perm(perms.identity(args.n))]
        _emit(
            _csv(
                [[K.text(), args.n, args.mode, dec.num_classes, dec.num_trivial, ident]],
                ["relation", "n", "mode", "classes", "trivial", "identity_class_size"],
            ),
            args.output,
        )
    else:
        sizes = dec.sizes_multiset()
        hist = {}
        for s in sizes:
            hist[s] = hist.get(s, 0) + 1
        summary = ", ".join(f"{v}x{k}" for k, v in sorted(hist.items()))
        _emit(
            f"partition {K.text()} n={args.n} mode={args.mode}\n"
            f"num_classes={dec.num_classes} num_trivial={dec.num_trivial}\n"
            f"class sizes: {summary}\n",
            args.output,
        )
    return EXIT_OK


def _cmd_classes(args) -> int:
    K = relation.parse_partition(args.partition)
    if args.perm:
        p = perms.parse_perm(args.perm)
        cls = sorted(engine.class_of(p, K, mode=args.mode, max_size=args.max_class_size))
        if args.format == "json":
            data = {
                "partition": K.text(),
                "mode": args.mode,
                "perm": perms.format_perm(p),
                "class_size": len(cls),
                "members": [perms.format_perm(q) for q in cls],
            }
            _emit(_json(data), args.output)
        else:
            _emit("\n".join(perms.format_perm(q) for q in cls) + "\n", args.output)
        return EXIT_OK
    if args.n is None:
        raise PermclassError("classes needs --n (full dump) or --perm (one class)")
    dec = engine.enumerate_classes(
        args.n, K, mode=args.mode, workers=args.workers, allow_large=args.allow_large
    )
    if args.format == "csv":
        _emit(
            _csv(dec.to_csv_rows(), ["class_id", "size", "representative"]),
            args.output,
        )
    else:
        _emit(_json(dec.to_json_dict()), args.output)
    return EXIT_OK


def _cmd_invariant(args) -> int:
    p = perms.parse_perm(args.perm)
    K = relation.parse_partition(args.partition) if args.partition else None
    report = invariants.full_report(p, K)
    data = report.to_json_dict()
    if args.name:
        if args.name == "canonical":
            if not args.relation_key:
                raise PermclassError("--name canonical needs --relation-key")
            value = perms.format_perm(invariants.canonical_form(p, args.relation_key))
        elif args.name in data:
            value = data[args.name]
        else:
            raise PermclassError(
                f"unknown invariant {args.name!r}; known: {sorted(data)} or 'canonical'"
            )
        data = {"permutation": perms.format_perm(p), args.name: value}
    _emit(_json(data), args.output)
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.list_relations:
        lines = [
            f"{row.key:24s} valid n>={row.floor}  {row.formula_text}"
            for row in (oracle.ROWS_BY_KEY[k] for k in oracle.relation_keys())
        ]
        lines.append(f"{oracle.FIGURE2_KEY:24s} table 3<=n<=12  (computational reference)")
        _emit("\n".join(lines) + "\n", args.output)
        return EXIT_OK
    rows = []
    if args.figure == 1:
        for key in oracle.relation_keys():
            for n, v in oracle.sequence_table(key, args.n_max).items():
                rows.append((key, n, v))
    else:
        for n, v in oracle.sequence_table(oracle.FIGURE2_KEY, min(args.n_max, 12)).items():
            rows.append((oracle.FIGURE2_KEY, n, v))
    if args.format == "json":
        _emit(_json([{"relation": k, "n": n, "classes": v} for k, n, v in rows]), args.output)
    else:
        _emit(_csv(rows, ["relation", "n", "classes"]), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    keys = oracle.relation_keys() if args.relations == "all" else tuple(
        k for k in args.relations.split(";") if k
    )
    lines = []
    results = []
    ok = True
    for key in keys:
        K = relation.parse_partition(key)
        floor = oracle.validity_floor(key)
        for n in range(max(3, floor), args.n_max + 1):
            expected = oracle.expected_count(key, n)
            got = engine.enumerate_classes(n, K, workers=args.workers).num_classes
            good = expected == got
            ok &= good
            results.append(
                {"relation": key, "n": n, "expected": expected, "engine": got, "ok": good}
            )
            lines.append(
                f"{'OK      ' if good else 'MISMATCH'} {key:24s} n={n} "
                f"expected={expected} engine={got}"
            )
    K2 = relation.parse_partition(oracle.FIGURE2_KEY)
    for n in range(3, args.figure2_n_max + 1):
        expected = oracle.figure2_reference(n)
        got = engine.enumerate_classes(n, K2, workers=args.workers).num_classes
        good = expected == got
        ok &= good
        results.append(
            {"relation": oracle.FIGURE2_KEY, "n": n, "expected": expected,
             "engine": got, "ok": good}
        )
        lines.append(
            f"{'OK      ' if good else 'MISMATCH'} {oracle.FIGURE2_KEY:24s} n={n} "
            f"expected={expected} engine={got}"
        )
    lines.append("all rows verified" if ok else "verification FAILED")
    if args.format == "json":
        _emit(_json({"ok": ok, "results": results}), args.output)
    else:
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_orbit(args) -> int:
    K = relation.parse_partition(args.partition)
    orbit = relation.symmetry_orbit(K)
    if args.format == "json":
        _emit(_json([P.text() for P in orbit]), args.output)
    else:
        _emit("\n".join(P.text() for P in orbit) + "\n", args.output)
    return EXIT_OK


def _cmd_stooge(args) -> int:
    K = relation.parse_partition(args.partition)
    if args.normalize:
        p = perms.parse_perm(args.normalize)
        out = meta.stooge_normalize(p, K)
        _emit(_json({
            "partition": K.text(),
            "input": perms.format_perm(p),
            "normalized": perms.format_perm(out),
        }), args.output)
        return EXIT_OK
    sets = meta.stooge_sets(args.n, K)
    _emit(_json(sets.to_json_dict()), args.output)
    return EXIT_OK


def _cmd_theorem(args) -> int:
    K = relation.parse_partition(args.partition)
    if args.theorem == "avoider-criterion":
        rep = meta.avoider_criterion(K, args.k, check_to=args.check_to)
        _emit(_json(rep.to_json_dict()), args.output)
    elif args.theorem == "adjacent-subword":
        rep = meta.adjacent_equals_subword(K, args.k, check_to=args.check_to)
        _emit(_json(rep.to_json_dict()), args.output)
    else:  # down-jump
        p = perms.parse_perm(args.perm)
        out = meta.repeated_down_jump(p, K, strategy=args.strategy)
        _emit(_json({
            "partition": K.text(),
            "input": perms.format_perm(p),
            "avoider": perms.format_perm(out),
            "strategy": args.strategy,
        }), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permclass",
        description="Pattern-replacement equivalence classes on permutations",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="enumerate classes of S_n")
    _add_common(p)
    p.add_argument("--with-identity", action="store_true",
                   help="include the identity-class size in CSV output")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("classes", help="dump representatives or one BFS class")
    _add_common(p, with_n=False)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--perm", default=None, help="dump the BFS class of this permutation")
    p.add_argument("--max-class-size", type=int, default=None)
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("invariant", help="invariant report for a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--name", default=None, help="single invariant to report")
    p.add_argument("--partition", default=None,
                   help="include hit-position predicates for this partition")
    p.add_argument("--relation-key", default=None,
                   choices=["bushy", "root", "v_perm", "compact"],
                   help="canonical form family (with --name canonical)")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("table", help="emit the reference count tables")
    p.add_argument("--figure", type=int, choices=[1, 2], default=1)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--list-relations", action="store_true")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify", help="engine counts vs formulas; exit 1 on mismatch")
    p.add_argument("--relations", default="all",
                   help="'all' or semicolon-separated canonical partition texts")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--figure2-n-max", type=int, default=8)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("orbit", help="reverse/complement symmetry orbit")
    p.add_argument("--partition", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("stooge", help="L/R/I sets or stooge normalization")
    p.add_argument("--partition", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--normalize", default=None, help="permutation to normalize")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_stooge)

    p = sub.add_parser("theorem", help="criterion / equality / down-jump reports")
    p.add_argument("theorem",
                   choices=["avoider-criterion", "adjacent-subword", "down-jump"])
    p.add_argument("--partition", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--check-to", type=int, default=None)
    p.add_argument("--perm", default=None)
    p.add_argument("--strategy", choices=["leftmost", "rightmost"], default="leftmost")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_theorem)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as e:
        print(f"resource error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (PermclassError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
