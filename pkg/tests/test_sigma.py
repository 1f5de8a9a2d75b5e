"""sigma-equation solver: pins, randomized soundness, determinism, growth."""

import random
from fractions import Fraction

import pytest

from lcft import errors
from lcft.extension import build_extension
from lcft.lk import LKChain, LKElt
from lcft.padic import BaseField, Precision
from lcft.sigma import solve_sigma, verify_exactness

PREC = Precision(pi_digits=16, residue_degree_cap=24)
Q2 = BaseField("p-adic", 2)
Q3 = BaseField("p-adic", 3)
F2T = BaseField("laurent", 2)


def chain(base, cfg, prec=PREC):
    return LKChain(build_extension(base, cfg, prec))


def test_gamma_one_gives_beta_one():
    ch = chain(Q2, {"unramified": 2})
    sol = solve_sigma(ch, ch.top.one())
    assert sol.beta.eq_prec(ch.top.one())
    assert sol.residual_valuation is None
    assert sol.m_used == 2


def test_unramified_d2_paper_pattern():
    """gamma = (pi, pi^{-1}) solves to beta = (pi^{-1}, 1) on the nose."""
    ch = chain(Q2, {"unramified": 2})
    lv = ch.top
    gamma = LKElt(lv, (lv.ring.one().shift_pi(1), lv.ring.one().shift_pi(-1)))
    sol = solve_sigma(ch, gamma)
    expect = LKElt(lv, (lv.ring.one().shift_pi(-1), lv.ring.one()))
    assert sol.beta.eq_prec(expect)


EXTS = [
    ("unram2", Q2, {"unramified": 2}),
    ("unram3", Q3, {"unramified": 3}),
    ("zeta3", Q3, {"cyclotomic": 3}),
    ("sqrt2", Q2, {"eisenstein": [-2, 0, 1]}),
    ("comp", Q3, {"unramified": 2, "cyclotomic": 3}),
    ("f2t", F2T, {"unramified": 2}),
]


@pytest.mark.parametrize("name,base,cfg", EXTS)
def test_solver_on_constructed_gammas(name, base, cfg):
    prec = PREC if base is not F2T else Precision(12, 24)
    ch = chain(base, cfg, prec)
    rng = random.Random(hash(name) % 997)
    for trial in range(12):
        lv = ch.top
        witness = lv.random_unit(rng)
        if trial % 3 == 1 and ch.ext.f > 1:
            # mix in a pi_L-power tuple; the witness absorbs it
            shifts = [rng.randrange(-2, 3) for _ in range(ch.ext.f - 1)]
            shifts.append(-sum(shifts))
            tup = LKElt(lv, tuple(lv.ring.one().shift_pi(s) for s in shifts))
            witness = witness * tup
        if trial % 3 == 2:
            witness = witness * lv.embed_L(ch.ext.random_unit(rng))
        gamma = witness.sigma() * witness.inv()
        assert gamma.w_val() == 0
        sol = solve_sigma(ch, gamma)
        assert sol.residual_valuation is None or sol.residual_valuation >= (
            sol.beta.min_prec() - 4
        )
        # beta differs from the witness by a sigma-fixed factor
        ratio = sol.beta * ch.lift(witness).inv()
        assert ratio.is_sigma_fixed(ratio.min_prec() - 4)


def test_nonzero_slope_rejected():
    ch = chain(Q3, {"cyclotomic": 3})
    with pytest.raises(errors.NonzeroSlope):
        solve_sigma(ch, ch.top.iota_power(1))


def test_determinism_bit_identical():
    ch1 = chain(Q3, {"cyclotomic": 3})
    ch2 = chain(Q3, {"cyclotomic": 3})
    rng1, rng2 = random.Random(5), random.Random(5)
    u1, u2 = ch1.top.random_unit(rng1), ch2.top.random_unit(rng2)
    g1 = u1.sigma() * u1.inv()
    g2 = u2.sigma() * u2.inv()
    s1, s2 = solve_sigma(ch1, g1), solve_sigma(ch2, g2)
    assert s1.m_used == s2.m_used
    assert [c.digit_arrays() for c in s1.beta.comps] == [
        c.digit_arrays() for c in s2.beta.comps
    ]


def test_tiebreak_ambiguity_is_sigma_fixed():
    ch = chain(Q3, {"unramified": 2})
    rng = random.Random(7)
    u = ch.top.random_unit(rng)
    gamma = u.sigma() * u.inv()
    a = solve_sigma(ch, gamma, tiebreak=0)
    b = solve_sigma(ch, chain_lift(ch, gamma), tiebreak=1)
    ratio = ch.lift(a.beta) * b.beta.inv()
    assert ratio.is_sigma_fixed(ratio.min_prec() - 4)
    assert not ch.lift(a.beta).eq_prec(b.beta, 4)  # genuinely different reps


def chain_lift(ch, x):
    return ch.lift(x)


def test_residue_growth_zeta3():
    """The nontrivial Galois twist of alpha = pi^{-1} needs residue degree 6."""
    ch = chain(Q3, {"cyclotomic": 3})
    ext = ch.ext
    G = ext.galois_group()
    s = next(t for t in G if not t.is_identity())
    alpha = ch.top.iota_power(-1)
    gamma = alpha.galois(s) * alpha.inv()
    assert gamma.w_val() == 0
    sol = solve_sigma(ch, gamma)
    assert sol.m_used == 6
    assert sol.residual_valuation is None or sol.residual_valuation >= (
        sol.beta.min_prec() - 4
    )


def test_budget_exceeded_with_tiny_cap():
    ch = chain(Q3, {"cyclotomic": 3}, Precision(pi_digits=16, residue_degree_cap=2))
    ext = ch.ext
    G = ext.galois_group()
    s = next(t for t in G if not t.is_identity())
    alpha = ch.top.iota_power(-1)
    gamma = alpha.galois(s) * alpha.inv()
    with pytest.raises(errors.ResidueBudgetExceeded):
        solve_sigma(ch, gamma)


def test_exactness_report():
    for base, cfg in [(Q3, {"cyclotomic": 3}), (Q2, {"unramified": 2})]:
        ch = chain(base, cfg)
        report = verify_exactness(ch, samples=10, seed=1)
        assert all(c["status"] == "pass" for c in report)
