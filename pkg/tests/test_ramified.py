"""Eisenstein-ramified arithmetic and the integral root finder."""

import random

import pytest

from lcft import errors
from lcft.padic import BaseField, Precision, make_unramified
from lcft.ramified import RamifiedRing, integral_roots, ram_poly_eval

PREC = Precision(pi_digits=16, residue_degree_cap=24)
Q2 = BaseField("p-adic", 2)
Q3 = BaseField("p-adic", 3)


def zeta3_ring(M=1):
    W = make_unramified(Q3, M, PREC)
    return RamifiedRing(W, [W.from_int(3), W.from_int(3)])


def sqrt2_ring():
    W = make_unramified(Q2, 1, PREC)
    return RamifiedRing(W, [W.from_int(-2), W.zero()])


def zeta9_ring():
    W = make_unramified(Q3, 1, PREC)
    coeffs = [3, 9, 18, 21, 15, 6]
    return RamifiedRing(W, [W.from_int(c) for c in coeffs])


def unram_style_ring(M=2):
    W = make_unramified(Q2, M, PREC)
    return RamifiedRing(W, [-W.from_int(2)])


RINGS = [zeta3_ring, sqrt2_ring, zeta9_ring, unram_style_ring]


def test_not_eisenstein_rejected():
    W = make_unramified(Q3, 1, PREC)
    with pytest.raises(errors.NotEisenstein):
        RamifiedRing(W, [W.from_int(1), W.from_int(3)])
    with pytest.raises(errors.NotEisenstein):
        RamifiedRing(W, [W.from_int(3), W.from_int(1)])


def test_defining_relation_holds():
    R = zeta3_ring()
    pi = R.pi_elt()
    w3 = R.from_w(R.W.from_int(3))
    assert (pi * pi + w3 * pi + w3).is_zero()


@pytest.mark.parametrize("mk", RINGS)
def test_ring_laws(mk):
    R = mk()
    rng = random.Random(31)
    xs = [R.random_unit(rng) for _ in range(4)]
    zt = [x.shift_pi(rng.randrange(-2, 3)) for x in xs]
    x, y, z, _ = zt
    assert ((x + y) + z).eq_prec(x + (y + z))
    assert (x * y).eq_prec(y * x)
    assert ((x * y) * z).eq_prec(x * (y * z))
    assert (x * (y + z)).eq_prec(x * y + x * z)
    for u in zt:
        prod = u * u.inv()
        assert prod.eq_prec(R.one(), prod.prec - 1)


@pytest.mark.parametrize("mk", RINGS)
def test_valuation_and_normal_form(mk):
    R = mk()
    rng = random.Random(7)
    u = R.random_unit(rng)
    assert u.val_pi() == 0
    assert u.shift_pi(3).val_pi() == 3
    assert u.shift_pi(-5).val_pi() == -5
    pi = R.pi_elt()
    assert (pi ** 4 * u).val_pi() == 4
    assert R.zero().val_pi() is None


def test_pi_power_vs_p():
    # in the zeta_3 ring, Pi^2 differs from 3 by a unit; v_Pi(3) = 2
    R = zeta3_ring()
    three = R.from_w(R.W.from_int(3))
    assert three.val_pi() == 2
    ratio = three * R.pi_elt().inv() ** 2
    assert ratio.val_pi() == 0


@pytest.mark.parametrize("mk", RINGS)
def test_norm_multiplicative(mk):
    R = mk()
    rng = random.Random(3)
    for _ in range(6):
        x = R.random_unit(rng).shift_pi(rng.randrange(-1, 2))
        y = R.random_unit(rng)
        nx, ny, nxy = x.norm_to_w(), y.norm_to_w(), (x * y).norm_to_w()
        assert nxy.eq_prec(nx * ny, min(nxy.prec, (nx * ny).prec) - 1)


def test_norm_values():
    R = zeta3_ring()
    # N(Pi) = a_0 for even e
    assert R.pi_elt().norm_to_w().eq_prec(R.W.from_int(3))
    # norm of an unramified scalar is its e-th power
    w = R.W.from_int(5)
    assert R.from_w(w).norm_to_w().eq_prec(w * w)


def test_sigma_fixes_pi_and_is_hom():
    W = make_unramified(Q2, 2, PREC)
    R = RamifiedRing(W, [W.from_int(-2), W.zero()])
    rng = random.Random(11)
    x, y = R.random_unit(rng), R.random_unit(rng)
    assert R.sigma(x * y).eq_prec(R.sigma(x) * R.sigma(y))
    assert R.sigma(R.pi_elt()).eq_prec(R.pi_elt())
    assert R.sigma(R.sigma(x)).eq_prec(x)


def test_digit_extraction_roundtrip():
    R = zeta3_ring(M=2)
    F = R.W.residue_field
    c = F.from_code(5)
    x = R.one_plus_digit(c, 3)
    assert x.digit_residue(1) is None
    assert x.digit_residue(3) == c
    with pytest.raises(ValueError):
        (R.one() + R.pi_elt()).digit_residue(2)


def test_integral_roots_tame():
    R = zeta3_ring()
    W = R.W
    poly = [R.from_w(W.from_int(3)), R.from_w(W.from_int(3)), R.one()]
    roots = integral_roots(R, poly)
    assert len(roots) == 2
    for r in roots:
        v = ram_poly_eval(poly, r)
        assert v.is_zero() and v.prec >= 24
    assert any(r.eq_prec(R.pi_elt(), 24) for r in roots)


def test_integral_roots_char2():
    R = sqrt2_ring()
    poly = [R.from_w(R.W.from_int(-2)), R.zero(), R.one()]
    roots = integral_roots(R, poly)
    assert len(roots) == 2
    pi = R.pi_elt()
    assert any(r.eq_prec(pi, 20) for r in roots)
    assert any(r.eq_prec(-pi, 20) for r in roots)


def test_integral_roots_wild_cyclotomic():
    # the 9th cyclotomic Eisenstein polynomial splits completely in its own field
    R = zeta9_ring()
    W = R.W
    coeffs = [3, 9, 18, 21, 15, 6]
    poly = [R.from_w(W.from_int(c)) for c in coeffs] + [R.one()]
    roots = integral_roots(R, poly)
    assert len(roots) == 6
    for r in roots:
        assert ram_poly_eval(poly, r).is_zero()
        assert r.val_pi() == 1


def test_integral_roots_no_roots():
    # X^2 - u for a non-square unit u of Z_3 has no roots in the zeta_3 ring?
    # 2 is not a square mod 3, and Q_3(zeta_3)/Q_3 is ramified, so the residue
    # field stays F_3 and X^2 - 2 stays rootless.
    R = zeta3_ring()
    poly = [R.from_w(R.W.from_int(-2)), R.zero(), R.one()]
    assert integral_roots(R, poly) == []
