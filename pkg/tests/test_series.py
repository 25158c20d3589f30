from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from umbral.ring import Poly
from umbral.series import (
    POLY,
    QQ,
    TruncatedSeries,
    builtin,
    exp0,
    identity,
    log1,
    mul,
    power_t,
    reciprocal,
    scale_arg,
)

N = 12


def exp_series(c=1, order=N):
    return TruncatedSeries(Fraction(c) ** n for n in range(order + 1))


def bernoulli_recurrence(n_max):
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        B.append(-sum(comb(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return B


def sympy_power_coeffs(expr, n_max):
    z, t = sympy.symbols("z t")
    ser = sympy.series(expr(z) ** t, z, 0, n_max + 1).removeO()
    out = []
    for n in range(n_max + 1):
        c = sympy.Poly(sympy.expand(ser.coeff(z, n) * sympy.factorial(n)), t)
        out.append(Poly.from_coeffs(Fraction(int(q.p), int(q.q)) for q in reversed(c.all_coeffs())))
    return out


# one-constant-term series over Q with small rational coefficients
unit_series = st.lists(
    st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=6, max_size=6
).map(lambda cs: TruncatedSeries([1] + cs))


def test_mul_examples():
    assert mul(exp_series(), exp_series(-1)) == identity(N)
    assert mul(exp_series(), exp_series()) == exp_series(2)
    assert mul(builtin("bernoulli"), builtin("expm1_over_z")) == identity(N)


def test_mul_mismatch():
    with pytest.raises(ValueError):
        mul(exp_series(order=3), exp_series(order=4))
    with pytest.raises(ValueError):
        mul(exp_series().lift(), exp_series())


def test_reciprocal_examples():
    r = reciprocal(builtin("expm1_over_z"))
    assert list(r)[:5] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert list(r) == bernoulli_recurrence(N)
    assert reciprocal(identity(N)) == identity(N)
    assert reciprocal(exp_series()) == exp_series(-1)
    with pytest.raises(ZeroDivisionError):
        reciprocal(TruncatedSeries([0, 1, 1]))


def test_log_exp_examples():
    assert log1(identity(N)) == TruncatedSeries([0] * (N + 1))
    z = TruncatedSeries([0, 1] + [0] * (N - 1))
    assert exp0(z) == exp_series()
    b = builtin("bernoulli")
    assert exp0(log1(b)) == b
    with pytest.raises(ValueError):
        log1(TruncatedSeries([2, 1]))
    with pytest.raises(ValueError):
        exp0(TruncatedSeries([1, 1]))


@settings(max_examples=30, deadline=None)
@given(unit_series)
def test_log_exp_roundtrip(f):
    assert exp0(log1(f)) == f


def test_power_t_examples():
    t = Poly.var("t")
    p = power_t(builtin("bernoulli"))
    assert p.ring == POLY
    assert p[1] == -t / 2
    assert p[2] == (3 * t**2 - t) / 12
    assert p.at(0) == identity(N)
    with pytest.raises(ValueError):
        power_t(TruncatedSeries([2, 1]))


def test_power_t_against_sympy_series():
    ours = power_t(builtin("bernoulli", 5))
    assert list(ours) == sympy_power_coeffs(lambda z: z / (sympy.exp(z) - 1), 5)
    half = reciprocal(TruncatedSeries([1] + [Fraction(1, 2)] * 4))
    assert list(power_t(half)) == sympy_power_coeffs(lambda z: 2 / (sympy.exp(z) + 1), 4)


@settings(max_examples=15, deadline=None)
@given(unit_series)
def test_power_t_integer_and_negative_orders(f):
    p = power_t(f)
    assert p.at(1) == f
    assert p.at(2) == mul(f, f)
    assert p.at(3) == mul(mul(f, f), f)
    assert p.at(-1) == reciprocal(f)
    for n, c in enumerate(p):
        assert c.degree("t") <= n


@pytest.mark.parametrize("name", ["bernoulli", "euler"])
def test_power_t_properties_builtin(name):
    f = builtin(name)
    p = power_t(f)
    assert p.at(1) == f
    assert p.at(2) == mul(f, f)
    assert p.at(3) == mul(mul(f, f), f)
    assert p.at(-1) == reciprocal(f)
    for n, c in enumerate(p):
        assert c.degree("t") <= n
    # (s + t) rule: f^s f^t = f^{s+t}
    for s_val, t_val in [(Fraction(1, 2), Fraction(1, 3)), (Fraction(-2, 5), 3)]:
        assert mul(p.at(s_val), p.at(t_val)) == p.at(s_val + t_val)
    # and symbolically in Q[s, t]
    ps = p.subs(t=Poly.var("s"))
    assert mul(ps, p) == p.subs(t=Poly.var("s") + Poly.var("t"))


def test_scale_arg():
    b = builtin("bernoulli")
    assert scale_arg(b, 1) == b
    assert scale_arg(b, 2)[2] == Fraction(2, 3)
    # 1/2 (eta - u): 2/(e^z + 1)
    emu = mul(builtin("euler"), exp_series(-1))
    half = scale_arg(emu, Fraction(1, 2))
    assert half == reciprocal(TruncatedSeries([1] + [Fraction(1, 2)] * N))


def test_builtins():
    assert list(builtin("bernoulli"))[:5] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert list(builtin("euler"))[:5] == [1, 0, -1, 0, 5]
    assert list(builtin("euler")) == [Fraction(int(sympy.euler(n))) for n in range(N + 1)]
    assert all(a == 1 for a in builtin("unity"))
    assert builtin("unity", 3).order == 3
    with pytest.raises(ValueError):
        builtin("gamma")


def test_ring_bookkeeping():
    f = exp_series()
    assert f.ring == QQ
    assert f.lift().ring == POLY
    assert f.lift().subs(t=1) == f
