"""Command-line front end: ``codecensus <command> [flags]``.

Exit status is 0 on success, 1 on invalid input and 2 when a configured
ceiling would be exceeded; failures print one ``error: <kind>: <message>``
line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf, nstr

from . import asymptotics as asy
from . import distributions as dist
from .census import WORK_CEILING, CeilingExceeded, MethodDisagreement, census
from .combinatorics import qbinom, sum_qbinom
from .constants import euler_Kq, theta2, theta3
from .field import field_of_order, prime_power

GROUPS = {"perm": "permutation", "mono": "monomial", "semi": "semilinear"}


class ValidationError(Exception):
    pass


@dataclass
class Report:
    command: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    precision: int = 50
    scalar: bool = False

    def cell(self, value):
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        if isinstance(value, mpf):
            return nstr(value, self.precision)
        if value is None:
            return ""
        return str(value)

    def to_json_obj(self) -> dict:
        def conv(v):
            if isinstance(v, (bool, int)) or v is None:
                return v
            return self.cell(v)

        return {
            "command": self.command,
            "columns": list(self.columns),
            "precision": self.precision,
            "rows": [{c: conv(r.get(c)) for c in self.columns} for r in self.rows],
        }


def render(report: Report, fmt: str = "table") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json_obj(), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(report.columns)
        for r in report.rows:
            w.writerow([report.cell(r.get(c)) for c in report.columns])
        return buf.getvalue().encode()
    if fmt == "table":
        if report.scalar and len(report.rows) == 1:
            return (report.cell(report.rows[0][report.columns[-1]]) + "\n").encode()
        cells = [[report.cell(r.get(c)) for c in report.columns] for r in report.rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(report.columns)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(report.columns, widths)).rstrip()]
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        return ("\n".join(lines) + "\n").encode()
    raise ValidationError(f"unknown format {fmt!r}")


# -- commands -----------------------------------------------------------------

def _q(args) -> int:
    try:
        prime_power(args.q)
    except ValueError as e:
        raise ValidationError(str(e)) from None
    return args.q


def cmd_qbinom(args) -> Report:
    q = _q(args)
    return Report("qbinom", ["n", "k", "q", "value"],
                  [{"n": args.n, "k": args.k, "q": q, "value": qbinom(args.n, args.k, q)}],
                  args.precision, scalar=True)


def cmd_sum(args) -> Report:
    q = _q(args)
    return Report("sum", ["n", "q", "value"],
                  [{"n": args.n, "q": q, "value": sum_qbinom(args.n, q)}],
                  args.precision, scalar=True)


def cmd_constants(args) -> Report:
    q = _q(args)
    tol = mpf(10) ** (-args.precision)
    w = Fraction(1, q)
    items = [
        ("K_q", euler_Kq(q, tol)),
        ("theta2(1/q)", theta2(w, tol)),
        ("theta3(1/q)", theta3(w, tol)),
        ("d1", asy.d1(q, args.precision)),
        ("d2", asy.d2(q, args.precision)),
    ]
    rows = [{"name": name, "q": q, "lo": c.lo, "hi": c.hi} for name, c in items]
    return Report("constants", ["name", "q", "lo", "hi"], rows, args.precision)


def cmd_census(args) -> Report:
    q = _q(args)
    f = field_of_order(q)
    if args.all:
        k = None
    elif args.k is None:
        raise ValidationError("census needs --k or --all")
    elif not 0 <= args.k <= args.n:
        raise ValidationError("need 0 <= k <= n")
    else:
        k = args.k
    if args.n < 1:
        raise ValidationError("n must be >= 1")
    kind = GROUPS[args.group]
    opts = dict(workers=args.threads, work_ceiling=args.work_ceiling)
    methods = ["burnside", "orbits"] if args.method == "both" else [args.method]
    rows = []
    for method in methods:
        res = census(kind, f, args.n, k, method, **opts)
        rows.append(_census_row(args, res, method))
    if args.method == "both":
        if rows[0]["count"] != rows[1]["count"]:
            raise MethodDisagreement(f"burnside {rows[0]['count']} != orbits {rows[1]['count']}")
        both = dict(rows[0], method="both")
        if args.timing:
            both["elapsed_ms"] = rows[0]["elapsed_ms"] + rows[1]["elapsed_ms"]
        rows.append(both)
        for r in rows:
            r["agree"] = True
    cols = ["group", "n", "k", "q", "method", "count", "elapsed_ms"]
    if args.method == "both":
        cols.append("agree")
    return Report("census", cols, rows, args.precision)


def _census_row(args, res, method):
    return {
        "group": args.group, "n": res.n, "k": res.k, "q": res.q, "method": method,
        "count": res.count,
        "elapsed_ms": round(res.elapsed * 1000) if args.timing else None,
    }


def cmd_estimate(args) -> Report:
    q = _q(args)
    n, k, d = args.n, args.k, args.precision
    what = args.what
    kind = GROUPS[args.group]
    exact = None
    try:
        if what == "qbinom":
            est = asy.estimate_qbinom(n, _need_k(k), q, d)
            exact = qbinom(n, k, q)
        elif what == "classes":
            est = asy.estimate_class_count(kind, n, _need_k(k), q, None, d)
        elif what == "total":
            est = asy.estimate_total_classes(kind, n, q, None, d, asymptotic_S=args.asymptotic_S)
        elif what == "S":
            est = asy.estimate_S(n, q, d)
            exact = sum_qbinom(n, q)
        elif what == "ratio":
            rep = asy.ratio_to_central(n, _need_k(k), q, d)
            est, exact = rep.asymptotic, rep.exact
        elif what == "central":
            rep = asy.central_ratio_to_power(n, q, d)
            with mp.workdps(d):
                row = {"quantity": what, "n": n, "k": n // 2, "q": q, "group": None,
                       "exact": rep.exact, "estimate": rep.limit.mid, "log_q": None}
            return Report("estimate", _EST_COLS, [row], d)
        else:  # pragma: no cover - argparse restricts choices
            raise ValidationError(what)
    except ValueError as e:
        raise ValidationError(str(e)) from None
    with mp.workdps(d):
        row = {"quantity": what, "n": n, "k": k, "q": q,
               "group": args.group if what in ("classes", "total") else None,
               "exact": exact, "estimate": est.value(), "log_q": est.logq}
    return Report("estimate", _EST_COLS, [row], d)


_EST_COLS = ["quantity", "n", "k", "q", "group", "exact", "estimate", "log_q"]


def _need_k(k):
    if k is None:
        raise ValidationError("this estimate needs --k")
    return k


def cmd_converge(args) -> Report:
    q = _q(args)
    if args.m_min < 0 or args.m_max < args.m_min:
        raise ValidationError("need 0 <= m-min <= m-max")
    rows = [
        {"m": r.m, "exact_gap": r.exact_gap, "tv_lo": r.tv.lo, "tv_hi": r.tv.hi}
        for r in dist.convergence_report(args.parity, q, range(args.m_min, args.m_max + 1),
                                         digits=args.precision)
    ]
    return Report("converge", ["m", "exact_gap", "tv_lo", "tv_hi"], rows, args.precision)


def cmd_dist(args) -> Report:
    try:
        nome = Fraction(args.nome)
        d = dist.theta_distribution(args.variant, nome, args.precision)
        if args.op == "pmf":
            if args.k is None:
                raise ValidationError("pmf needs --k")
            val = dist.theta_pmf(d, Fraction(args.k))
            with mp.workdps(args.precision):
                row = {"variant": args.variant, "nome": nome, "k": Fraction(args.k), "pmf": val.mid}
            return Report("dist", ["variant", "nome", "k", "pmf"], [row], args.precision, scalar=True)
        draws = dist.sample(d, args.seed, args.count)
    except ValueError as e:
        raise ValidationError(str(e)) from None
    rows = [{"i": i, "value": Fraction(float(x))} for i, x in enumerate(draws)]
    return Report("dist", ["i", "value"], rows, args.precision)


def cmd_star(args) -> Report:
    try:
        fam = {
            "half-floor": lambda: asy.HalfFloorMinusConst(int(args.r)),
            "half-ceil": lambda: asy.HalfCeilPlusConst(int(args.r)),
            "power-log": lambda: asy.HalfMinusPowerLog(Fraction(args.alpha), Fraction(args.beta)),
            "constant": lambda: asy.ConstantDim(int(args.alpha)),
            "linear": lambda: asy.LinearFraction(Fraction(args.lam)),
        }[args.family]()
    except (ValueError, TypeError) as e:
        raise ValidationError(str(e)) from None
    status = asy.star_classify(fam)
    return Report("star", ["family", "status"], [{"family": repr(fam), "status": status.value}],
                  args.precision, scalar=True)


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _positive(name, minimum):
    def conv(s):
        v = int(s)
        if v < minimum:
            raise argparse.ArgumentTypeError(f"{name} must be >= {minimum}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--q", type=int, default=2)
    shared.add_argument("--precision", type=_positive("precision", 10), default=50)
    shared.add_argument("--format", choices=["table", "csv", "json"], default="table")
    shared.add_argument("--out")
    shared.add_argument("--threads", type=_positive("threads", 1), default=1)
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--work-ceiling", type=_positive("work-ceiling", 1), default=WORK_CEILING)

    parser = _Parser(prog="codecensus", description="Exact and asymptotic counts of inequivalent linear codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qbinom", parents=[shared], help="exact q-binomial coefficient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("sum", parents=[shared], help="S(n), the number of subspaces of F_q^n")
    p.add_argument("--n", type=_positive("n", 0), required=True)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("constants", parents=[shared], help="certified K_q, theta2, theta3, d1, d2")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("census", parents=[shared], help="exact number of inequivalent codes")
    p.add_argument("--group", choices=sorted(GROUPS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--all", action="store_true", help="all dimensions (projective space)")
    p.add_argument("--method", choices=["burnside", "orbits", "both"], default="burnside")
    p.add_argument("--timing", action="store_true", help="report wall-clock time (breaks byte-reproducibility)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("estimate", parents=[shared], help="asymptotic estimates")
    p.add_argument("--what", choices=["qbinom", "classes", "total", "S", "ratio", "central"], required=True)
    p.add_argument("--n", type=_positive("n", 0), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--group", choices=sorted(GROUPS), default="mono")
    p.add_argument("--asymptotic-S", action="store_true", dest="asymptotic_S")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("converge", parents=[shared], help="exact vs theta-limit distances per m")
    p.add_argument("--parity", choices=["even", "odd"], required=True)
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=20)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("dist", parents=[shared], help="discrete Gaussian theta laws")
    p.add_argument("--variant", choices=["theta2", "theta3"], required=True)
    p.add_argument("--nome", default="1/2")
    p.add_argument("--op", choices=["pmf", "sample"], default="pmf")
    p.add_argument("--k")
    p.add_argument("--count", type=_positive("count", 1), default=10)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("star", parents=[shared], help="classify a dimension family")
    p.add_argument("--family", choices=["half-floor", "half-ceil", "power-log", "constant", "linear"], required=True)
    p.add_argument("--r", default="0")
    p.add_argument("--alpha", default="0")
    p.add_argument("--beta", default="0")
    p.add_argument("--lam", default="1/3")
    p.set_defaults(func=cmd_star)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        report = args.func(args)
        data = render(report, args.format)
    except ValidationError as e:
        print(f"error: validation: {e}", file=stderr)
        return 1
    except CeilingExceeded as e:
        print(f"error: ceiling: {e}", file=stderr)
        return 2
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        stdout.write(data)
        stdout.flush()
    return 0


def main():  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
