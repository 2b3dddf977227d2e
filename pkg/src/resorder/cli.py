"""Command-line entry point ``resorder``."""
from __future__ import annotations

import argparse
import re
import sys
import time

from .densities import ALL_PRIMES, ClassSpec, delta_order, order_difference, rho_index
from .eulerprod import DEFAULT_CUTOFF, Constant, DensityValue, constant_value
from .gdecomp import InvalidBase, decompose, parse_g
from .report import TABLE1_G, TABLE2_G, Report, Row, emit

EXIT_OK, EXIT_USAGE, EXIT_BAD_G = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_format(p):
    p.add_argument("--format", choices=("human", "csv", "json"), default="human")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="resorder", description="Densities of primes with residual order or index in a residue class.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", help="numeric values of A_psi1 and A_xi1")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="prime cutoff of the Euler products")
    _add_format(p)

    p = sub.add_parser("density", help="exact densities")
    dsub = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    q = dsub.add_parser("order", help="order of g mod p in a class mod d")
    q.add_argument("--g", required=True)
    q.add_argument("--d", type=int, choices=(3, 4), required=True)
    q.add_argument("--class", dest="cls", default="0/1", help="prime filter a1/d1")
    q.add_argument("--j", type=int)
    _add_format(q)
    q = dsub.add_parser("index", help="index of <g> mod p in a class mod d")
    q.add_argument("--g", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--a", type=int, required=True)
    _add_format(q)

    p = sub.add_parser("oracle", help="truncated-series evaluation next to the closed form")
    p.add_argument("--g", required=True)
    p.add_argument("--target", required=True, help="diff3, diff4, Delta, S, rho(a,d) or order(j,d)")
    p.add_argument("--cutoff", type=int, default=10**4)
    _add_format(p)

    p = sub.add_parser("census", help="count orders over the first N primes")
    p.add_argument("--g", required=True)
    p.add_argument("--d", type=int, choices=(3, 4), required=True)
    p.add_argument("--primes", type=int, required=True)
    p.add_argument("--jobs", type=int)
    p.add_argument("--checkpoint")
    _add_format(p)

    p = sub.add_parser("table", help="reproduce the comparison tables")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--primes", type=int, help="add an empirical column from a census")
    p.add_argument("--rows", help="comma separated g values (default: all rows)")
    p.add_argument("--jobs", type=int)
    _add_format(p)
    return ap


def _jobs(n):
    from .census import default_jobs

    return n if n else default_jobs()


def _row(label: str, v: DensityValue, empirical=None) -> Row:
    num = float(v)
    dev = None if empirical is None else abs(empirical - num)
    return Row(label, v, num, empirical, dev)


def cmd_constants(args) -> Report:
    rows = [Row(tag.value, DensityValue.constant(tag), constant_value(tag, args.cutoff))
            for tag in (Constant.A_PSI1, Constant.A_XI1)]
    return Report("constants", "", rows, {"cutoff": args.cutoff})


def cmd_density(args) -> Report:
    gp = decompose(parse_g(args.g))
    if args.kind == "order":
        cls = ClassSpec.parse(args.cls)
        js = [args.j] if args.j is not None else list(range(args.d))
        rows = [_row(f"delta({cls};{j},{args.d})", delta_order(gp, args.d, j, cls)) for j in js]
        return Report("density order", str(gp.g), rows, {"grh_conditional": True})
    res = rho_index(gp, args.a, args.d)
    label = f"rho({args.a},{args.d})"
    if isinstance(res, DensityValue):
        rows = [_row(label, res)]
        meta = {"grh_conditional": True}
    else:
        rows = [Row(label, None, res.value, None, None)]
        meta = {"grh_conditional": True, "cutoff": res.cutoff_t, "truncation_estimate": res.error_bound}
    return Report("density index", str(gp.g), rows, meta)


_TARGET = re.compile(r"^(rho|order)\((-?\d+),(\d+)\)$")


def cmd_oracle(args) -> Report:
    from . import densities, oracle

    gp = decompose(parse_g(args.g))
    V = args.cutoff
    t = args.target.replace(" ", "")
    if t in ("diff3", "diff4"):
        d = int(t[-1])
        closed, ser = order_difference(gp, d), oracle.series_order_difference(gp, d, V)
    elif t == "Delta":
        closed, ser = densities.Delta(gp), oracle.delta_sum_series(gp, V)
    elif t == "S":
        closed, ser = densities.xi_sum(gp), oracle.xi_sum_series(gp, V)
    else:
        m = _TARGET.match(t)
        if not m:
            raise ValueError(f"unknown oracle target {args.target!r}")
        a, d = int(m.group(2)), int(m.group(3))
        if m.group(1) == "rho":
            closed, ser = rho_index(gp, a, d), oracle.series_rho(gp, a, d, V)
        else:
            closed, ser = delta_order(gp, d, a), oracle.series_delta_order(gp, d, ALL_PRIMES, a, V)
    rows = [Row(f"{t} series", None, ser.value)]
    if isinstance(closed, DensityValue):
        rows[0].deviation = abs(ser.value - float(closed))
        rows.insert(0, _row(f"{t} closed", closed))
    meta = {"cutoff": V, "grh_conditional": True, "convergence_estimate": ser.convergence_estimate}
    if ser.rigorous_tail is not None:
        meta["tail_estimate"] = ser.rigorous_tail
    return Report("oracle", str(gp.g), rows, meta)


def cmd_census(args) -> Report:
    from .census import census_compare

    gp = decompose(parse_g(args.g))
    if args.checkpoint:
        from .census import CensusSpec, census_run

        spec = CensusSpec(pairs=((1, args.d),), index_moduli=())
        tally = census_run(gp.g, args.primes, spec, _jobs(args.jobs), args.checkpoint)
        rows, tally = census_compare(gp.g, args.d, args.primes, tally=tally)
    else:
        rows, tally = census_compare(gp.g, args.d, args.primes, _jobs(args.jobs))
    out = [_row(label, v, emp) for label, v, emp in rows]
    meta = {"primes": args.primes, "max_prime": tally.max_prime, "skipped": tally.skipped, "grh_conditional": True}
    return Report("census", str(gp.g), out, meta)


def cmd_table(args) -> Report:
    from .census import census_compare

    d = 3 if args.which == 1 else 4
    gs = TABLE1_G if args.which == 1 else TABLE2_G
    if args.rows:
        wanted = [s.strip() for s in args.rows.split(",")]
        values = {parse_g(w) for w in wanted}
        gs = [g for g in gs if parse_g(g) in values] + [w for w in wanted if parse_g(w) not in {parse_g(x) for x in gs}]
    rows = []
    for g in gs:
        gp = decompose(parse_g(g))
        diff = order_difference(gp, d)
        label = f"g={g} g0={gp.g0} h={gp.h}"
        emp = None
        if args.primes:
            crow, _ = census_compare(gp.g, d, args.primes, _jobs(args.jobs))
            emp = crow[-1][2]
        rows.append(_row(label, diff, emp))
    return Report(f"table {args.which}", "", rows, {"primes": args.primes, "grh_conditional": True})


COMMANDS = {"constants": cmd_constants, "density": cmd_density, "oracle": cmd_oracle,
            "census": cmd_census, "table": cmd_table}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except InvalidBase as exc:
        print(f"resorder: invalid g: {exc}", file=sys.stderr)
        return EXIT_BAD_G
    except ValueError as exc:
        print(f"resorder: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.meta["runtime_ms"] = round(1000 * (time.perf_counter() - start), 1)
    out.write(emit(report, args.format))
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
