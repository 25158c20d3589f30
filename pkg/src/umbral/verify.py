"""Verification suites: exact identities, two-path oracle, Monte Carlo."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, sqrt

import numpy as np

from . import series as _series
from .multiindex import MultiIndex, binomial, indices_up_to, sub_indices
from .polynomials import (
    MvPolynomial,
    addition_theorem_check,
    affine_substitute,
    bernoulli_poly,
    euler_poly,
    doubled_bernoulli_split_check,
    poly_gf_check,
    umbral_shift,
    umbral_substitute,
    xvars,
)
from .ring import Poly
from .serialize import encode
from .series import DEFAULT_ORDER, TruncatedSeries
from .umbrae import (
    TupleUmbra,
    Umbra,
    bernoulli_umbra,
    dot_product_gf,
    dot_product_partition,
    euler_minus_unity,
    euler_umbra,
    unity_tuple,
)

__all__ = [
    "VerificationReport",
    "MonteCarloConfig",
    "RNG_ALGORITHM",
    "EXACT_SUITES",
    "run_exact_suite",
    "run_oracle_suite",
    "run_reduction_suite",
    "run_montecarlo_uniform",
    "run_montecarlo_rademacher",
    "perturbed",
    "classical_bernoulli",
    "classical_euler",
]

RNG_ALGORITHM = "numpy.random.Philox (4x64, 10 rounds); shard seed = seed + shard index"


@dataclass
class VerificationReport:
    suite: str
    attempted: int = 0
    passed: int = 0
    counterexample: dict | None = None
    seconds: float | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.attempted

    def record(self, ok: bool, inputs: dict, lhs=None, rhs=None) -> None:
        self.attempted += 1
        if ok:
            self.passed += 1
        elif self.counterexample is None:
            self.counterexample = {"inputs": inputs, "lhs": lhs, "rhs": rhs}

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "attempted": self.attempted,
            "passed": self.passed,
            "ok": self.ok,
            "counterexample": None,
            "details": {k: v for k, v in self.details.items() if timings or not k.endswith("seconds")},
        }
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = {"inputs": ce["inputs"], "lhs": encode(ce["lhs"]), "rhs": encode(ce["rhs"])}
        if timings:
            out["seconds"] = self.seconds
        return out


class _timed:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.seconds = time.perf_counter() - self.start
        return False


# -- independent classical tables -------------------------------------------


def classical_bernoulli(n_max: int) -> list[Fraction]:
    """B_0..B_n from sum_{k<=n} C(n+1,k) B_k = 0 (B_1 = -1/2)."""
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        B.append(-sum(comb(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return B


def classical_euler(n_max: int) -> list[Fraction]:
    """E_0..E_n from sum_{k} C(n,2k) E_{2k} = 0 for even n > 0; odd ones vanish."""
    E = [Fraction(0)] * (n_max + 1)
    E[0] = Fraction(1)
    for n in range(2, n_max + 1, 2):
        E[n] = -sum(comb(n, k) * E[k] for k in range(0, n, 2))
    return E


def perturbed(name: str, n: int, delta=1, order: int = DEFAULT_ORDER) -> Umbra:
    """The builtin Bernoulli or Euler umbra with its n-th moment shifted by ``delta``."""
    coeffs = list(_series.builtin(name, order))
    coeffs[n] += delta
    label = {"bernoulli": "iota", "euler": "eta"}[name]
    return Umbra(TruncatedSeries(coeffs), f"{label}[{n}]+{delta}")


# -- exact identity battery -------------------------------------------------


class _Ctx:
    def __init__(self, order: int, bernoulli: Umbra | None, euler: Umbra | None):
        self.order = order
        self.iota = bernoulli or bernoulli_umbra(order)
        self.eta = euler or euler_umbra(order)
        self.t, self.s = Poly.var("t"), Poly.var("s")
        self.numbers = {
            "bernoulli": dot_product_gf(TupleUmbra(self.iota, 1)).base.moments,
            "euler": dot_product_gf(TupleUmbra(self.eta, 1)).base.moments,
        }
        self._cache: dict = {}

    def number(self, family: str, n: int, sub: str = "t") -> Poly:
        """N_n^{(t)}, N_n^{(s)}, N_n^{(t-s)} or N_n^{(-s)} for family N."""
        key = (family, n, sub)
        if key not in self._cache:
            p = self.numbers[family][n]
            repl = {"t": self.t, "s": self.s, "t-s": self.t - self.s, "-s": -self.s}[sub]
            self._cache[key] = p.subs(t=repl)
        return self._cache[key]

    def poly(self, family: str, v) -> MvPolynomial:
        key = ("poly", family, tuple(v))
        if key not in self._cache:
            make = bernoulli_poly if family == "bernoulli" else euler_poly
            self._cache[key] = make(v, self.order, self.iota if family == "bernoulli" else self.eta)
        return self._cache[key]


def _cases(max_deg: int, max_dim: int):
    for d in range(1, max_dim + 1):
        for v in indices_up_to(d, max_deg):
            yield v


def _suite_convolution(ctx: _Ctx, family: str, max_deg: int, max_dim: int) -> VerificationReport:
    rep = VerificationReport(f"convolution_in_order_{family}")
    with _timed(rep):
        for v in _cases(max_deg, max_dim):
            lhs = ctx.number(family, v.degree)
            rhs = Poly()
            for k in sub_indices(v):
                rhs = rhs + ctx.number(family, k.degree, "s") * ctx.number(family, (v - k).degree, "t-s") * binomial(v, k)
            rep.record(lhs == rhs, {"v": list(v)}, lhs, rhs)
    return rep


def _suite_opposite_order(ctx: _Ctx, family: str, max_deg: int, max_dim: int) -> VerificationReport:
    rep = VerificationReport(f"opposite_order_{family}")
    with _timed(rep):
        for v in _cases(max_deg, max_dim):
            lhs = Poly()
            for k in sub_indices(v):
                lhs = lhs + ctx.number(family, k.degree, "s") * ctx.number(family, (v - k).degree, "-s") * binomial(v, k)
            rhs = Poly.const(1 if v.is_zero() else 0)
            rep.record(lhs == rhs, {"v": list(v)}, lhs, rhs)
    return rep


def _suite_bernoulli_sum(ctx: _Ctx, max_deg: int, max_dim: int) -> VerificationReport:
    rep = VerificationReport("bernoulli_binomial_sum")
    with _timed(rep):
        for v in _cases(max_deg, max_dim):
            if v.degree <= 1:
                continue
            T = TupleUmbra(ctx.iota, v.d)
            lhs = T.mv_moment(v)
            rhs = sum((binomial(v, k) * T.mv_moment(k) for k in sub_indices(v)), Fraction(0))
            rep.record(lhs == rhs, {"v": list(v)}, lhs, rhs)
    return rep


def _binomial_x_sum(v: MultiIndex, values) -> MvPolynomial:
    x = xvars(v.d)
    acc = Poly()
    for k in sub_indices(v):
        acc = acc + Poly.monomial(dict(zip(x, v - k))) * Poly.coerce(values(k)) * binomial(v, k)
    return MvPolynomial(v.d, acc)


def _suite_shifted_expansion(ctx: _Ctx, max_deg: int, max_dim: int) -> list[VerificationReport]:
    rb = VerificationReport("shifted_expansion_bernoulli")
    with _timed(rb):
        for v in _cases(max_deg, max_dim):
            T = TupleUmbra(ctx.iota, v.d)
            lhs = ctx.poly("bernoulli", v)
            # coefficients from the partition path, independent of the g.f. path
            rhs = _binomial_x_sum(v, lambda k: dot_product_partition(T, k))
            rb.record(lhs == rhs, {"v": list(v)}, lhs, rhs)
    re = VerificationReport("shifted_expansion_euler")
    with _timed(re):
        half_t = ctx.t * Fraction(1, 2)
        for v in _cases(max_deg, max_dim):
            lhs = affine_substitute(ctx.poly("euler", v), Fraction(1, 2), half_t) * 2**v.degree
            rhs = _binomial_x_sum(v, lambda k: ctx.number("euler", k.degree))
            re.record(lhs == rhs, {"v": list(v)}, lhs, rhs)
    return [rb, re]


def _suite_special_values(ctx: _Ctx, max_deg: int, max_dim: int) -> VerificationReport:
    rep = VerificationReport("special_values")
    with _timed(rep):
        for v in _cases(max_deg, max_dim):
            zero = {x: 0 for x in xvars(v.d)}
            lhs = ctx.number("bernoulli", v.degree)
            rhs = ctx.poly("bernoulli", v).poly.subs(zero)
            rep.record(lhs == rhs, {"v": list(v), "family": "bernoulli"}, lhs, rhs)
            lhs = ctx.number("euler", v.degree)
            rhs = affine_substitute(ctx.poly("euler", v), 0, ctx.t * Fraction(1, 2)).poly * 2**v.degree
            rep.record(lhs == rhs, {"v": list(v), "family": "euler"}, lhs, rhs)
    return rep


def _suite_zero_mean(ctx: _Ctx, max_deg: int, max_dim: int) -> list[VerificationReport]:
    out = []
    for family in ("bernoulli", "euler"):
        rep = VerificationReport(f"zero_mean_{family}")
        with _timed(rep):
            for d in range(1, max_dim + 1):
                if family == "bernoulli":
                    T = dot_product_gf(TupleUmbra(ctx.iota, d)).inverse()
                else:
                    # 1/2 [t.(u - (-1.eta))]
                    inner = unity_tuple(d, ctx.order) + TupleUmbra(ctx.eta, d).inverse().scale(-1)
                    T = dot_product_gf(inner.scale(Fraction(1, 2)))
                for v in indices_up_to(d, max_deg):
                    if v.is_zero():
                        continue
                    lhs = umbral_substitute(ctx.poly(family, v), T)
                    rep.record(lhs == 0, {"v": list(v)}, lhs, Poly())
        out.append(rep)
    return out


def _suite_poly_gf(ctx: _Ctx, max_n: int) -> list[VerificationReport]:
    out = []
    for family in ("bernoulli", "euler"):
        rep = VerificationReport(f"generating_function_{family}")
        base = ctx.iota if family == "bernoulli" else ctx.eta
        with _timed(rep):
            for r in poly_gf_check(max_n, family, ctx.order, base):
                rep.record(r.ok, r.inputs, r.lhs, r.rhs)
        out.append(rep)
    return out


def _suite_addition(ctx: _Ctx, max_deg: int, max_dim: int) -> list[VerificationReport]:
    out = []
    for family in ("bernoulli", "euler"):
        add = VerificationReport(f"addition_theorem_{family}")
        opp = VerificationReport(f"addition_opposite_order_{family}")
        base = ctx.iota if family == "bernoulli" else ctx.eta
        start = time.perf_counter()
        for v in _cases(max_deg, max_dim):
            r_add, r_opp = addition_theorem_check(v, family, ctx.order, base)
            add.record(r_add.ok, r_add.inputs, r_add.lhs, r_add.rhs)
            opp.record(r_opp.ok, r_opp.inputs, r_opp.lhs, r_opp.rhs)
        add.seconds = opp.seconds = time.perf_counter() - start
        out += [add, opp]
    return out


def _suite_reflection(ctx: _Ctx, max_deg: int, max_dim: int) -> list[VerificationReport]:
    out = []
    for family in ("bernoulli", "euler"):
        rep = VerificationReport(f"reflection_{family}")
        with _timed(rep):
            for v in _cases(max_deg, max_dim):
                P = ctx.poly(family, v)
                lhs = affine_substitute(P, -1, ctx.t)
                rhs = P * (-1) ** v.degree
                rep.record(lhs == rhs, {"v": list(v)}, lhs, rhs)
        out.append(rep)
    return out


def _suite_doubled_split(ctx: _Ctx, max_n: int) -> VerificationReport:
    rep = VerificationReport("doubled_bernoulli_split")
    with _timed(rep):
        for r in doubled_bernoulli_split_check(max_n, ctx.iota, ctx.eta):
            rep.record(r.ok, r.inputs, r.lhs, r.rhs)
    return rep


def _suite_bernoulli_euler(ctx: _Ctx, max_deg: int, max_dim: int) -> VerificationReport:
    rep = VerificationReport("bernoulli_euler_relation")
    with _timed(rep):
        for d in range(1, max_dim + 1):
            tiota = dot_product_gf(TupleUmbra(ctx.iota, d))
            for v in indices_up_to(d, max_deg):
                lhs = affine_substitute(ctx.poly("bernoulli", v), Fraction(1, 2), 0) * 2**v.degree
                rhs = umbral_shift(ctx.poly("euler", v), tiota)
                rep.record(lhs == rhs, {"v": list(v)}, lhs, rhs)
    return rep


EXACT_SUITES = (
    "convolution_in_order_bernoulli",
    "convolution_in_order_euler",
    "opposite_order_bernoulli",
    "opposite_order_euler",
    "bernoulli_binomial_sum",
    "shifted_expansion_bernoulli",
    "shifted_expansion_euler",
    "special_values",
    "zero_mean_bernoulli",
    "zero_mean_euler",
    "generating_function_bernoulli",
    "generating_function_euler",
    "addition_theorem_bernoulli",
    "addition_opposite_order_bernoulli",
    "addition_theorem_euler",
    "addition_opposite_order_euler",
    "reflection_bernoulli",
    "reflection_euler",
    "doubled_bernoulli_split",
    "bernoulli_euler_relation",
)


def run_exact_suite(
    max_deg: int,
    max_dim: int,
    *,
    order: int = DEFAULT_ORDER,
    gf_max_n: int = 8,
    split_max_n: int | None = None,
    bernoulli: Umbra | None = None,
    euler: Umbra | None = None,
) -> list[VerificationReport]:
    """Every exact identity, one report each; failures are reported, not raised.

    ``bernoulli`` / ``euler`` replace the builtin base umbrae (used for
    mutation testing).
    """
    if max_deg > order:
        raise ValueError(f"max_deg {max_deg} exceeds truncation order {order}")
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    ctx = _Ctx(order, bernoulli, euler)
    reports = [
        _suite_convolution(ctx, "bernoulli", max_deg, max_dim),
        _suite_convolution(ctx, "euler", max_deg, max_dim),
        _suite_opposite_order(ctx, "bernoulli", max_deg, max_dim),
        _suite_opposite_order(ctx, "euler", max_deg, max_dim),
        _suite_bernoulli_sum(ctx, max_deg, max_dim),
        *_suite_shifted_expansion(ctx, max_deg, max_dim),
        _suite_special_values(ctx, max_deg, max_dim),
        *_suite_zero_mean(ctx, max_deg, max_dim),
        *_suite_poly_gf(ctx, min(gf_max_n, order)),
        *_suite_addition(ctx, max_deg, max_dim),
        *_suite_reflection(ctx, max_deg, max_dim),
        _suite_doubled_split(ctx, order if split_max_n is None else split_max_n),
        _suite_bernoulli_euler(ctx, max_deg, max_dim),
    ]
    assert tuple(r.suite for r in reports) == EXACT_SUITES
    return reports


# -- two-path oracle ----------------------------------------------------------


def _oracle_bases(d: int, order: int) -> dict[str, TupleUmbra]:
    return {
        "iota": TupleUmbra(bernoulli_umbra(order), d),
        "eta": TupleUmbra(euler_umbra(order), d),
        "u": unity_tuple(d, order),
        "eta-u": euler_minus_unity(d, order),
    }


def run_oracle_suite(max_deg: int, max_dim: int, order: int = DEFAULT_ORDER) -> list[VerificationReport]:
    """Partition-path moments of t.mu against g.f.-path moments, exactly in Q[t]."""
    if max_deg > order:
        raise ValueError(f"max_deg {max_deg} exceeds truncation order {order}")
    reports = []
    for name in ("iota", "eta", "u", "eta-u"):
        rep = VerificationReport(f"oracle_{name}")
        t_part = t_gf = 0.0
        start = time.perf_counter()
        for d in range(1, max_dim + 1):
            T = _oracle_bases(d, order)[name]
            t0 = time.perf_counter()
            tT = dot_product_gf(T)
            gf = {v: tT.mv_moment(v) for v in indices_up_to(d, max_deg)}
            t1 = time.perf_counter()
            part = {v: dot_product_partition(T, v) for v in indices_up_to(d, max_deg)}
            t2 = time.perf_counter()
            t_gf += t1 - t0
            t_part += t2 - t1
            for v in indices_up_to(d, max_deg):
                rep.record(gf[v] == part[v], {"v": list(v)}, part[v], gf[v])
        rep.seconds = time.perf_counter() - start
        rep.details = {"partition_path_seconds": t_part, "gf_path_seconds": t_gf}
        reports.append(rep)
    return reports


def run_reduction_suite(max_deg: int, max_dim: int, order: int = DEFAULT_ORDER) -> list[VerificationReport]:
    """B_v^{(1)} = B_{|v|} and E_v^{(1)} = E_{|v|} against classical recurrences."""
    B, E = classical_bernoulli(max_deg), classical_euler(max_deg)
    out = []
    for name, table, base in (("bernoulli", B, bernoulli_umbra(order)), ("euler", E, euler_umbra(order))):
        rep = VerificationReport(f"order_one_reduction_{name}")
        with _timed(rep):
            for d in range(1, max_dim + 1):
                one = dot_product_gf(TupleUmbra(base, d)).at(1)
                for v in indices_up_to(d, max_deg):
                    lhs = one.mv_moment(v)
                    rep.record(lhs == table[v.degree], {"v": list(v)}, lhs, table[v.degree])
        out.append(rep)
    return out


# -- Monte Carlo --------------------------------------------------------------


@dataclass(frozen=True)
class MonteCarloConfig:
    samples: int = 10**6
    seed: int = 42
    d: int = 1
    max_degree: int = 4
    confidence: float = 4.0
    workers: int = 1

    def __post_init__(self):
        if self.samples < 10**4:
            raise ValueError("sample count must be >= 10^4")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.confidence <= 0:
            raise ValueError("confidence multiplier must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _shard_sizes(n: int, shards: int) -> list[int]:
    q, r = divmod(n, shards)
    return [q + (i < r) for i in range(shards)]


def _power_sums(cfg: MonteCarloConfig, draw) -> tuple[np.ndarray, np.ndarray]:
    degs = np.arange(cfg.max_degree + 1)

    def shard(i: int, size: int):
        rng = np.random.Generator(np.random.Philox(cfg.seed + i))
        x = draw(rng, size)
        pw = x[:, None] ** degs[None, :]
        return pw.sum(axis=0), (pw * pw).sum(axis=0)

    sizes = _shard_sizes(cfg.samples, cfg.workers)
    if cfg.workers == 1:
        parts = [shard(0, sizes[0])]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(shard, range(cfg.workers), sizes))
    s1 = np.zeros(len(degs))
    s2 = np.zeros(len(degs))
    for a, b in parts:
        s1 += a
        s2 += b
    return s1, s2


def _montecarlo(name: str, cfg: MonteCarloConfig, draw, target: TupleUmbra) -> VerificationReport:
    rep = VerificationReport(name)
    with _timed(rep):
        s1, s2 = _power_sums(cfg, draw)
        n = cfg.samples
        mean = s1 / n
        var = np.maximum(s2 / n - mean**2, 0.0) * n / (n - 1)
        sd = np.sqrt(var)
        for v in indices_up_to(cfg.d, cfg.max_degree):
            p = v.degree
            exact = target.mv_moment(v)
            err = abs(float(mean[p]) - float(exact))
            tol = cfg.confidence * float(sd[p]) / sqrt(n)
            rep.record(err <= tol, {"v": list(v)}, float(mean[p]), exact)
    rep.details = {
        "generator": RNG_ALGORITHM,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "workers": cfg.workers,
        "d": cfg.d,
        "confidence": cfg.confidence,
    }
    return rep


def run_montecarlo_uniform(cfg: MonteCarloConfig) -> VerificationReport:
    """Sample moments of (U, ..., U) against the inverse of the Bernoulli tuple."""
    target = TupleUmbra(bernoulli_umbra(max(cfg.max_degree, 1)), cfg.d).inverse()
    return _montecarlo(f"uniform_d{cfg.d}", cfg, lambda rng, k: rng.random(k), target)


def run_montecarlo_rademacher(cfg: MonteCarloConfig) -> VerificationReport:
    """Sample moments of (X, ..., X), X = 2Y - 1, against the inverse of the Euler tuple."""
    target = TupleUmbra(euler_umbra(max(cfg.max_degree, 1)), cfg.d).inverse()

    def draw(rng, k):
        return 2.0 * rng.integers(0, 2, size=k).astype(np.float64) - 1.0

    return _montecarlo(f"rademacher_d{cfg.d}", cfg, draw, target)
