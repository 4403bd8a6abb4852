"""Command-line entry point binding the modules into reproducible runs.

Reports are deterministic: same configuration, same bytes, regardless of
worker count.  json and csv modes carry no decorative text.  Exit codes:
0 success, 1 verification failure, 2 invalid configuration or input,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bounds, recurrence
from .enumeration import (HEX, TRIANGLE, CountTable, GeometryError,
                          SizeLimitError, count_fixed, count_fixed_oracle,
                          count_marked, default_geometry, load_geometry,
                          verify_observation, verify_proposition1,
                          verify_supermultiplicative)
from .recurrence import (dominance_check, hat_sequences, u_sequence,
                         verify_series_identities)

_IDENTITY_ORDER = 1000


def _render(header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    cells = [[str(v) for v in r] for r in rows]
    widths = [max([len(str(h))] + [len(r[i]) for r in cells])
              for i, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for r in cells:
        lines.append("  ".join(v.ljust(widths[i]) for i, v in enumerate(r)).rstrip())
    return "\n".join(lines) + "\n"


def _write(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_counts_csv(path) -> CountTable:
    values = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            try:
                n = int(row[0])
            except ValueError:
                continue
            values[n] = int(row[1])
    if not values:
        raise ValueError("no counts found in %s" % path)
    top = max(values)
    if set(values) != set(range(1, top + 1)):
        raise ValueError("counts file must cover n = 1..%d contiguously" % top)
    return CountTable(TRIANGLE, (0,) + tuple(values[n] for n in range(1, top + 1)),
                      "csv:%s" % path)


def _prefix(table: CountTable, n_max: int) -> CountTable:
    return CountTable(table.representation, table.values[:n_max + 1],
                      table.provenance)


def cmd_count(args) -> int:
    table = count_fixed(args.n_max, args.representation, args.workers)
    rows = [[n, table[n]] for n in range(1, args.n_max + 1)]
    _write(_render(["n", "T"], rows, args.format), args.out)
    return 0


def cmd_marked(args) -> int:
    geometry = load_geometry(args.geometry) if args.geometry else default_geometry()
    tables = {i: count_marked(geometry[i], args.n_max, args.workers)
              for i in ("g", "h", "k")}
    rows = [[n, tables["g"][n], tables["h"][n], tables["k"][n]]
            for n in range(args.n_max + 1)]
    _write(_render(["n", "G", "H", "K"], rows, args.format), args.out)
    return 0


def cmd_recurrence(args) -> int:
    if args.seed:
        seed = _read_counts_csv(args.seed)
        cutoff = args.cutoff if args.cutoff is not None else seed.n_max
        hybrid = u_sequence(seed, cutoff, args.n_max)
        rows = recurrence.u_rows(hybrid)
        text = _render(["n", "U", "ratio"], rows, args.format)
        if args.format == "table" and len(rows) >= 2:
            text += ("growth ratio at n=%d: %s (depends on the cutoff n0=%d; "
                     "not a certified bound)\n"
                     % (hybrid.n_max, rows[-1][2], cutoff))
        _write(text, args.out)
        return 0
    seqs = hat_sequences(args.n_max)
    _write(_render(["n", "G_hat", "H_hat", "K_hat"],
                   recurrence.hat_rows(seqs), args.format), args.out)
    return 0


def cmd_bound(args) -> int:
    solution = bounds.cubic_solution(args.precision)
    if args.seed:
        t = _read_counts_csv(args.seed)
    else:
        t = count_fixed(args.n_max, TRIANGLE, args.workers)
    lower = bounds.lower_bound_fekete(t)
    report = bounds.bound_report(solution, lower)
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        rows = [["z", report["z"]],
                ["lambda_upper", report["lambda_upper"]],
                ["x_c", report["x_c"]],
                ["residual_cubic", report["residuals"]["cubic"]],
                ["residual_saddle_series", report["residuals"]["saddle"][0]],
                ["residual_saddle_radius", report["residuals"]["saddle"][1]],
                ["lower_bound", report["lower_bound"]],
                ["n_used", report["n_used"]],
                ["method", report["method"]]]
        text = _render(["quantity", "value"], rows, args.format)
    _write(text, args.out)
    return 0


def _verify_checks(args) -> list:
    geometry = load_geometry(args.geometry) if args.geometry else default_geometry()
    n_fix = min(args.n_max, 14)
    n_oracle = min(args.n_max, 10)
    n_marked = min(args.n_max, 12)
    checks = []

    t_tri = count_fixed(n_fix, TRIANGLE, args.workers)
    t_hex = count_fixed(n_fix, HEX, args.workers)

    oracle_ok = (count_fixed_oracle(n_oracle, TRIANGLE).values
                 == t_tri.values[:n_oracle + 1]
                 and count_fixed_oracle(n_oracle, HEX).values
                 == t_hex.values[:n_oracle + 1])
    checks.append(("oracle_equivalence", oracle_ok,
                   "rooted expansion vs naive oracle, n <= %d, both representations"
                   % n_oracle))

    checks.append(("representation_agreement",
                   t_tri.values[2:] == t_hex.values[2:],
                   "triangle vs hex tables, 2 <= n <= %d" % n_fix))

    g = count_marked(geometry["g"], n_marked, args.workers)
    h = count_marked(geometry["h"], n_marked, args.workers)
    k = count_marked(geometry["k"], n_marked, args.workers)
    g_prime = count_marked(geometry["g'"], n_marked, args.workers)

    prop = verify_proposition1(g, h, k)
    checks.append(("proposition_inequalities",
                   all(r["g_ok"] and r["h_ok"] and r["k_ok"] for r in prop),
                   "G/H/K counting inequalities, n <= %d" % n_marked))

    checks.append(("type_g_prime_symmetry", g_prime.values == g.values,
                   "type g' table equals type g table, n <= %d" % n_marked))

    seqs = hat_sequences(_IDENTITY_ORDER)

    obs = verify_observation(_prefix(t_hex, n_marked), g)
    checks.append(("observation_t_le_2g", all(r["ok"] for r in obs),
                   "hex T(n) <= 2 G_n, n <= %d" % n_marked))

    checks.append(("chain_t_le_2ghat",
                   all(t_hex[n] <= 2 * seqs.g_hat[n] for n in range(1, n_fix + 1)),
                   "hex T(n) <= 2 Ghat_n, n <= %d" % n_fix))

    dom = dominance_check(g, h, k, seqs, n_marked)
    checks.append(("dominance", all(r["g_ok"] and r["h_ok"] and r["k_ok"] for r in dom),
                   "G/H/K <= Ghat/Hhat/Khat, n <= %d" % n_marked))

    ident = verify_series_identities(seqs, _IDENTITY_ORDER)
    checks.append(("series_identities", ident["ok"],
                   "four identities coefficient-exact to order %d" % ident["order"]))

    solution = bounds.cubic_solution("double")
    lam = solution.lambda_upper
    checks.append(("cubic_residuals",
                   solution.residual_cubic < 1e-12
                   and solution.residual_saddle[0] < 1e-12
                   and solution.residual_saddle[1] < 1e-12
                   and lam < 3.6108,
                   "root and saddle residuals < 1e-12, lambda_upper < 3.6108"))

    extended = bounds.cubic_solution("extended")
    checks.append(("extended_precision_lambda",
                   abs(float(extended.lambda_upper) - 3.610719) < 5e-7,
                   "lambda_upper = 3.610719 to 6 decimal places"))

    ghat = seqs.g_hat
    ratio_ok = all(ghat[n + 1] * ghat[n - 1] >= ghat[n] ** 2
                   for n in range(1, _IDENTITY_ORDER))
    bound_ok = (Fraction(ghat[_IDENTITY_ORDER], ghat[_IDENTITY_ORDER - 1])
                <= Fraction(lam) + Fraction(1, 10 ** 9))
    checks.append(("hat_ratio_growth", ratio_ok and bound_ok,
                   "Ghat ratios nondecreasing and <= lambda_upper + 1e-9"))

    lower = bounds.lower_bound_fekete(t_tri)
    checks.append(("fekete_below_upper_bound", lower.value < lam,
                   "lower bound %.6f at n=%d stays below %.6f"
                   % (lower.value, lower.n_used, lam)))

    supermult = verify_supermultiplicative(t_tri)
    checks.append(("supermultiplicativity", not supermult["violations"],
                   "T(l+m) >= T(l) T(m), l+m <= %d, (1,1) excluded" % n_fix))

    return checks


def cmd_verify(args) -> int:
    checks = _verify_checks(args)
    failed = [name for name, ok, _ in checks if not ok]
    if args.format == "json":
        payload = {"ok": not failed,
                   "checks": [{"name": n, "ok": ok, "detail": d}
                              for n, ok, d in checks]}
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["%s  %s (%s)" % ("ok  " if ok else "FAIL", name, detail)
                 for name, ok, detail in checks]
        if failed:
            lines.append("verification FAILED: %s" % ", ".join(failed))
        else:
            lines.append("all %d checks passed" % len(checks))
        _write("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


def _add_common(parser, with_workers=True) -> None:
    if with_workers:
        parser.add_argument("--workers", type=int, default=1,
                            help="worker processes for counting (default 1)")
    parser.add_argument("--format", choices=("table", "json", "csv"),
                        default="table", help="output format (default table)")
    parser.add_argument("--out", help="write the report to this path")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyiamond",
        description="Polyiamond enumeration and growth-constant bound toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact polyiamond counts T(n)")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--representation", choices=(TRIANGLE, HEX), default=TRIANGLE)
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("marked", help="marked-configuration counts G/H/K")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--geometry", help="geometry config JSON (default: shipped)")
    _add_common(p)
    p.set_defaults(func=cmd_marked)

    p = sub.add_parser("recurrence",
                       help="majorizing sequences, or the hybrid U(n) with --seed")
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--seed", help="counts CSV (n,value) seeding the hybrid recurrence")
    p.add_argument("--cutoff", type=int,
                   help="hybrid cutoff n0 (default: largest seeded n)")
    _add_common(p, with_workers=False)
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("bound", help="cubic root, lambda_upper, Fekete lower bound")
    p.add_argument("--n-max", type=int, default=10,
                   help="enumeration size for the lower bound when no --seed")
    p.add_argument("--seed", help="counts CSV for the lower bound")
    p.add_argument("--precision", choices=("double", "extended"), default="double")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("table", "json", "csv"), default="json")
    p.add_argument("--out", help="write the report to this path")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run the full invariant suite")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--geometry", help="geometry config JSON (default: shipped)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", help="write the report to this path")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (GeometryError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
