"""Command-line front end: ``numbers``, ``poly``, ``eval`` and ``verify``.

Exit codes: 0 success / all suites passed, 1 argument error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction

from .multiindex import MultiIndex, indices_up_to
from .polynomials import MvPolynomial, bernoulli_poly, euler_poly, evaluate
from .ring import Poly
from .serialize import decode, encode
from .series import DEFAULT_ORDER
from .umbrae import bernoulli_number, euler_number
from .verify import (
    MonteCarloConfig,
    run_exact_suite,
    run_montecarlo_rademacher,
    run_montecarlo_uniform,
    run_oracle_suite,
    run_reduction_suite,
)

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2
MAX_DIM = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument types ----------------------------------------------------------


def parse_multiindex(text: str) -> MultiIndex:
    try:
        return MultiIndex(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad multi-index {text!r}: {exc}") from None


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


def parse_order(text: str):
    return "symbolic" if text == "symbolic" else parse_rational(text)


def parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(p) for p in text.split(","))


# -- output document -------------------------------------------------------


@dataclass
class OutputDocument:
    command: dict
    payload: dict
    schema: str = SCHEMA_VERSION
    timestamp: str | None = None

    def to_json(self) -> str:
        data = {"schema": self.schema, "command": self.command, "payload": _encode_payload(self.payload)}
        if self.timestamp is not None:
            data["timestamp"] = self.timestamp
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "OutputDocument":
        data = json.loads(text)
        return cls(
            command=data["command"],
            payload=_decode_payload(data["payload"]),
            schema=data["schema"],
            timestamp=data.get("timestamp"),
        )


def _encode_payload(payload: dict) -> dict:
    kind = payload["kind"]
    out = dict(payload)
    if kind == "numbers":
        out["entries"] = [{"v": list(e["v"]), "value": encode(e["value"])} for e in payload["entries"]]
    elif kind == "polynomial":
        out["polynomial"] = encode(payload["polynomial"])
    elif kind == "value":
        out["value"] = encode(payload["value"])
    return out


def _decode_payload(data: dict) -> dict:
    kind = data["kind"]
    out = dict(data)
    if kind == "numbers":
        out["entries"] = [{"v": e["v"], "value": decode(e["value"])} for e in data["entries"]]
    elif kind == "polynomial":
        out["polynomial"] = decode(data["polynomial"])
    elif kind == "value":
        out["value"] = decode(data["value"])
    return out


def render_document(doc: OutputDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json()
    if fmt == "csv":
        return _render_csv(doc.payload)
    if fmt == "latex":
        return _render_latex(doc.payload)
    raise UsageError(f"unknown format {fmt!r}")


def parse_document(text: str) -> OutputDocument:
    return OutputDocument.from_json(text)


def _cells(value) -> list[str]:
    if isinstance(value, Poly):
        return [str(c) for c in (value.coeffs("t") or [Fraction(0)])]
    return [str(Fraction(value))]


def _render_csv(payload: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    kind = payload["kind"]
    if kind == "numbers":
        rows = [(e["v"], _cells(e["value"])) for e in payload["entries"]]
        if payload["t"] == "symbolic":
            width = max(len(c) for _, c in rows)
            w.writerow(["v"] + [f"t^{i}" for i in range(width)])
            for v, c in rows:
                w.writerow([",".join(map(str, v))] + c + ["0"] * (width - len(c)))
        else:
            w.writerow(["v", "value"])
            for v, c in rows:
                w.writerow([",".join(map(str, v)), c[0]])
    elif kind == "polynomial":
        P = payload["polynomial"]
        terms = P.terms.items()
        width = max((len(_cells(c)) for _, c in terms), default=1)
        if payload["t"] == "symbolic":
            w.writerow(["x"] + [f"t^{i}" for i in range(width)])
            for x, c in terms:
                cells = _cells(c)
                w.writerow([",".join(map(str, x))] + cells + ["0"] * (width - len(cells)))
        else:
            w.writerow(["x", "coefficient"])
            for x, c in terms:
                w.writerow([",".join(map(str, x)), _cells(c)[0]])
    elif kind == "value":
        w.writerow(["value"])
        w.writerow([str(payload["value"])])
    elif kind == "reports":
        w.writerow(["suite", "attempted", "passed", "ok"])
        for r in payload["reports"]:
            w.writerow([r["suite"], r["attempted"], r["passed"], str(r["ok"]).lower()])
    return buf.getvalue()


def latex_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def latex_poly(p: Poly, leading=()) -> str:
    if not p:
        return "0"
    out = ""
    for i, (m, c) in enumerate(p.sorted_terms(leading)):
        mono = "".join(
            f"{n[0]}_{{{n[1:]}}}" + ("" if e == 1 else f"^{{{e}}}") if n[1:].isdigit() else n + ("" if e == 1 else f"^{{{e}}}")
            for n, e in m
        )
        mag = abs(c)
        body = mono if (mag == 1 and mono) else (latex_rational(mag) + (" " + mono if mono else ""))
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _latex_value(value) -> str:
    if isinstance(value, MvPolynomial):
        return latex_poly(value.poly, value.xnames)
    if isinstance(value, Poly):
        return latex_poly(value)
    return latex_rational(value)


def _render_latex(payload: dict) -> str:
    kind = payload["kind"]
    lines = []
    if kind == "numbers":
        sym = "B" if payload["family"] == "bernoulli" else r"\mathfrak{E}"
        lines += [r"\begin{tabular}{ll}", rf"$v$ & ${sym}_v^{{(t)}}$ \\", r"\hline"]
        for e in payload["entries"]:
            lines.append(f"$({','.join(map(str, e['v']))})$ & ${_latex_value(e['value'])}$ \\\\")
        lines.append(r"\end{tabular}")
    elif kind == "polynomial":
        sym = r"\mathcal{B}" if payload["family"] == "bernoulli" else r"\mathcal{E}"
        v = ",".join(map(str, payload["v"]))
        lines.append(f"${sym}_{{({v})}}^{{(t)}}(x) = {_latex_value(payload['polynomial'])}$")
    elif kind == "value":
        lines.append(f"${_latex_value(payload['value'])}$")
    elif kind == "reports":
        lines += [r"\begin{tabular}{lrrl}", r"suite & attempted & passed & ok \\", r"\hline"]
        for r in payload["reports"]:
            name = r["suite"].replace("_", r"\_")
            lines.append(f"{name} & {r['attempted']} & {r['passed']} & {'yes' if r['ok'] else 'no'} \\\\")
        lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------


def _check_range(max_order: int, degree: int, d: int | None = None) -> None:
    if max_order < 0:
        raise UsageError("--max-order must be >= 0")
    if degree < 0:
        raise UsageError("degree must be >= 0")
    if degree > max_order:
        raise UsageError(f"degree {degree} exceeds truncation order {max_order}")
    if d is not None and not 1 <= d <= MAX_DIM:
        raise UsageError(f"dimension must be between 1 and {MAX_DIM}")


def _t_echo(t) -> str:
    return "symbolic" if t == "symbolic" else str(t)


def cmd_numbers(family: str, d: int, max_deg: int, t="symbolic", max_order: int = DEFAULT_ORDER) -> dict:
    _check_range(max_order, max_deg, d)
    number = bernoulli_number if family == "bernoulli" else euler_number
    tv = None if t == "symbolic" else t
    entries = [{"v": list(v), "value": number(v, tv, max_order)} for v in indices_up_to(d, max_deg)]
    return {"kind": "numbers", "family": family, "d": d, "max_degree": max_deg, "t": _t_echo(t), "entries": entries}


def _make_poly(family: str, v: MultiIndex, t, max_order: int) -> MvPolynomial:
    _check_range(max_order, v.degree, v.d)
    P = (bernoulli_poly if family == "bernoulli" else euler_poly)(v, max_order)
    return P if t == "symbolic" else P.subs_params(t=t)


def cmd_poly(family: str, v: MultiIndex, t="symbolic", max_order: int = DEFAULT_ORDER) -> dict:
    P = _make_poly(family, v, t, max_order)
    return {"kind": "polynomial", "family": family, "v": list(v), "t": _t_echo(t), "polynomial": P}


def cmd_eval(family: str, v: MultiIndex, x, t, max_order: int = DEFAULT_ORDER) -> dict:
    if len(x) != v.d:
        raise UsageError(f"point has dimension {len(x)} but v has dimension {v.d}")
    P = _make_poly(family, v, "symbolic", max_order)
    value = evaluate(P, x, t)
    return {
        "kind": "value",
        "family": family,
        "v": list(v),
        "x": [str(q) for q in x],
        "t": str(t),
        "value": value,
    }


def cmd_verify(
    suite: str = "all",
    max_deg: int = 4,
    d: int = 2,
    samples: int = 10**6,
    seed: int = 42,
    workers: int = 1,
    max_order: int = DEFAULT_ORDER,
    timings: bool = True,
) -> dict:
    _check_range(max_order, max_deg, d)
    reports = []
    if suite in ("all", "exact"):
        reports += run_exact_suite(max_deg, d, order=max_order)
    if suite in ("all", "oracle"):
        reports += run_oracle_suite(max_deg, d, order=max_order)
        reports += run_reduction_suite(max_deg, d, order=max_order)
    if suite in ("all", "montecarlo"):
        for dim in range(1, d + 1):
            try:
                cfg = MonteCarloConfig(samples=samples, seed=seed, d=dim, max_degree=max_deg, workers=workers)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            reports.append(run_montecarlo_uniform(cfg))
            reports.append(run_montecarlo_rademacher(cfg))
    return {
        "kind": "reports",
        "all_passed": all(r.ok for r in reports),
        "reports": [r.to_dict(timings=timings) for r in reports],
    }


# -- entry point -----------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    dflt = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "csv", "latex"), default=dflt("json"))
    p.add_argument("--max-order", type=int, default=dflt(DEFAULT_ORDER), help="truncation order N")
    p.add_argument("--no-timestamp", action="store_true", default=dflt(False), help="omit timestamp and timings")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="umbral", description="Multivariate Bernoulli and Euler numbers and polynomials of order t.")
    _global_flags(parser, True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def family(p):
        p.add_argument("--family", choices=("bernoulli", "euler"), required=True)

    p = sub.add_parser("numbers", help="table of t-th order numbers")
    _global_flags(p, False)
    family(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--max-deg", type=int, default=4)
    p.add_argument("--t", type=parse_order, default="symbolic", help="rational p/q or 'symbolic'")

    p = sub.add_parser("poly", help="expand a polynomial")
    _global_flags(p, False)
    family(p)
    p.add_argument("--v", type=parse_multiindex, required=True, help="e.g. 2,1,0")
    p.add_argument("--t", type=parse_order, default="symbolic")

    p = sub.add_parser("eval", help="evaluate a polynomial at a rational point")
    _global_flags(p, False)
    family(p)
    p.add_argument("--v", type=parse_multiindex, required=True)
    p.add_argument("--x", type=parse_point, required=True, help="e.g. 1/2,0")
    p.add_argument("--t", type=parse_rational, required=True)

    p = sub.add_parser("verify", help="run verification suites")
    _global_flags(p, False)
    p.add_argument("--suite", choices=("all", "exact", "montecarlo", "oracle"), default="all")
    p.add_argument("--max-deg", type=int, default=4)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _echo(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple):
        return [_echo(e) for e in value]
    return value


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    echo = {k: _echo(v) for k, v in vars(args).items()}
    try:
        if args.command == "numbers":
            payload = cmd_numbers(args.family, args.d, args.max_deg, args.t, args.max_order)
        elif args.command == "poly":
            payload = cmd_poly(args.family, args.v, args.t, args.max_order)
        elif args.command == "eval":
            payload = cmd_eval(args.family, args.v, args.x, args.t, args.max_order)
        else:
            payload = cmd_verify(
                args.suite, args.max_deg, args.d, args.samples, args.seed, args.workers,
                args.max_order, timings=not args.no_timestamp,
            )
    except (UsageError, ValueError) as exc:
        print(f"umbral: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stamp = None if args.no_timestamp else datetime.now(timezone.utc).isoformat(timespec="seconds")
    doc = OutputDocument(command=echo, payload=payload, timestamp=stamp)
    stdout.write(render_document(doc, args.format))
    if payload["kind"] == "reports" and not payload["all_passed"]:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
