"""The split algebra of an extension: f copies of the ramified model.

An element has two faces.  The split form is an f-tuple of ramified-ring
elements on which the Frobenius acts by rotate-and-twist, norms multiply
componentwise, and the slope valuation is read off.  The tensor form is a
coefficient vector on the basis {Pi^a omega^b} over the unramified model, the
natural home for the Galois action.  Conversion runs through a Vandermonde
matrix in the Frobenius conjugates of the embedded residue generator, whose
determinant is a unit, so the two faces agree to full precision.

Residue degrees grow along a single chain of levels per extension; all
structure constants are transported level to level so that every consumer
sees one consistent embedding system.
"""

from __future__ import annotations

from fractions import Fraction

from . import errors
from .linalg import gauss_solve_elts
from .padic import hensel_root, make_unramified
from .ramified import RamElt, RamifiedRing
from .residue import embed_element


class LKLevel:
    """L_K realized at residue degree m (a multiple of f)."""

    def __init__(self, chain, m, parent=None):
        ext = chain.ext
        self.chain = chain
        self.ext = ext
        self.m = m
        if m == ext.f:
            self.W = ext.Wf
            self.ring = ext.model
        else:
            self.W = make_unramified(ext.base, m, ext.prec)
            self.ring = RamifiedRing(self.W, ext.eis_in(self.W))
        self.parent = parent
        if parent is None:
            self.omega_hat = self.W.gen() if ext.f > 1 else self.W.one()
            self._lift_w = lambda w: w
        else:
            img, powers = _step_embedding(parent.W, self.W)
            self._step_powers = powers
            self._lift_w = self._make_lift(parent.W)
            self.omega_hat = self._lift_w(parent.omega_hat)
        self._vand = None
        self._tensor_mats = {}

    def _make_lift(self, Wsmall):
        powers = self._step_powers

        def lift(w):
            if w.is_zero():
                return self.W.zero(w.prec)
            acc = None
            for i, c in enumerate(w.vec):
                if Wsmall.C.is_zero(c):
                    continue
                term = powers[i].scale(c)
                acc = term if acc is None else acc + term
            if acc is None:
                return self.W.zero(w.prec)
            return acc.shift_by(w.shift).reduce_prec(w.prec)

        return lift

    def lift_w_from(self, level, w):
        """Transport an unramified element from an ancestor level to here."""
        if level is self:
            return w
        path = []
        cur = self
        while cur is not None and cur is not level:
            path.append(cur)
            cur = cur.parent
        if cur is not level:
            raise errors.IncompatibleTower("levels are not on one chain")
        for lv in reversed(path):
            w = lv._lift_w(w)
        return w

    def lift_ram_from(self, level, x):
        if level is self:
            return x
        vec = tuple(self.lift_w_from(level, w) for w in x.vec)
        return RamElt(self.ring, x.tshift, vec, x.prec)

    def vandermonde(self):
        """V[i][b] = sigma^i(omega_hat)^b and a solver for V c = z."""
        if self._vand is None:
            f = self.ext.f
            conj = [self.omega_hat]
            for _ in range(f - 1):
                conj.append(self.W.sigma(conj[-1]))
            rows = []
            for i in range(f):
                row = [self.W.one()]
                for _ in range(f - 1):
                    row.append(row[-1] * conj[i])
                rows.append(row)
            self._vand = rows
        return self._vand

    def embed_L(self, a):
        """Diagonal embedding of an L-model element (over W_f)."""
        x = self.lift_ram_from(self.chain.levels[0], a)
        return LKElt(self, tuple(x for _ in range(self.ext.f)))

    def embed_Knr(self, c):
        """x -> (sigma^{-i} x)_i on the W-side."""
        f = self.ext.f
        comps = []
        cur = c
        comps.append(self.ring.from_w(cur))
        for _ in range(f - 1):
            cur = self.W.sigma(cur, self.m - 1)
            comps.append(self.ring.from_w(cur))
        return LKElt(self, tuple(comps))

    def from_parts(self, parts):
        return LKElt(self, tuple(parts))

    def one(self):
        return LKElt(self, tuple(self.ring.one() for _ in range(self.ext.f)))

    def iota_power(self, k):
        """(Pi^k, 1, ..., 1): the single-block pi_L power."""
        comps = [self.ring.one() for _ in range(self.ext.f)]
        comps[0] = comps[0].shift_pi(k)
        return LKElt(self, tuple(comps))

    def random_unit(self, rng):
        return LKElt(self, tuple(self.ring.random_unit(rng)
                                 for _ in range(self.ext.f)))

    def tensor_matrix(self, s):
        """Coordinate matrix of the Galois action of s on the tensor basis."""
        got = self._tensor_mats.get(s.index)
        if got is None:
            ext = self.ext
            cols = []
            omega_pows = [ext.model.one()]
            for _ in range(ext.f - 1):
                omega_pows.append(omega_pows[-1] * ext.omega())
            for a in range(ext.e):
                for b in range(ext.f):
                    img = s._pipows[a] * s.apply(omega_pows[b])
                    cols.append(ext.coords(img))
            got = cols
            self._tensor_mats[s.index] = got
        return got

    def __repr__(self):
        return f"LK({self.ext.name} @ m={self.m})"


def _step_embedding(Wsmall, Wbig):
    """Canonical embedding image of Wsmall's generator in Wbig, plus powers."""
    if Wsmall.M == 1:
        one = Wbig.one()
        return one, [one]
    res_img = embed_element(Wsmall.residue_field, Wbig.residue_field,
                            Wsmall.residue_field.gen())
    seed = Wbig.from_residue(res_img)
    poly = [Wbig._const_vec(c) for c in Wsmall.modulus] + [Wbig.one()]
    img = hensel_root(poly, seed)
    powers = [Wbig.one()]
    for _ in range(Wsmall.M - 1):
        powers.append(powers[-1] * img)
    return img, powers


class LKChain:
    """Growth chain of residue levels for one extension."""

    def __init__(self, ext):
        self.ext = ext
        self.levels = [LKLevel(self, ext.f)]

    @property
    def top(self):
        return self.levels[-1]

    def grow(self, factor):
        if factor <= 1:
            return self.top
        m = self.top.m * factor
        if m > self.ext.prec.residue_degree_cap:
            raise errors.ResidueBudgetExceeded(
                f"solver needs residue degree {m} > cap "
                f"{self.ext.prec.residue_degree_cap}"
            )
        self.levels.append(LKLevel(self, m, parent=self.top))
        return self.top

    def lift(self, x, level=None):
        """Lift an LKElt to a (higher) level of this chain, default the top."""
        level = level or self.top
        if x.level is level:
            return x
        return LKElt(level, tuple(level.lift_ram_from(x.level, c) for c in x.comps))


class LKElt:
    """Element of the split algebra at a fixed level."""

    __slots__ = ("level", "comps", "_tensor")

    def __init__(self, level, comps, tensor=None):
        self.level = level
        self.comps = comps
        self._tensor = tensor

    # -- algebra -----------------------------------------------------------------

    def _lockstep(self, other):
        if self.level is not other.level:
            raise errors.AmbientMismatch("elements live at different levels")

    def __mul__(self, other):
        self._lockstep(other)
        return LKElt(self.level, tuple(a * b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other):
        self._lockstep(other)
        return LKElt(self.level, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        self._lockstep(other)
        return LKElt(self.level, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return LKElt(self.level, tuple(-a for a in self.comps))

    def inv(self):
        for c in self.comps:
            if c.is_zero():
                raise errors.NotInvertible("zero split component at precision")
        return LKElt(self.level, tuple(c.inv() for c in self.comps))

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self.level.one()
        b = self
        while k:
            if k & 1:
                out = out * b
            b = b * b
            k >>= 1
        return out

    def sigma(self):
        f = self.level.ext.f
        ring = self.level.ring
        rot = (ring.sigma(self.comps[f - 1], f),) + self.comps[: f - 1]
        return LKElt(self.level, rot)

    def sigma_inv(self):
        f = self.level.ext.f
        ring = self.level.ring
        m = self.level.m
        rot = self.comps[1:] + (ring.sigma(self.comps[0], m - f),)
        return LKElt(self.level, rot)

    def galois(self, s):
        """Action of 1 (x) s through the tensor face."""
        cols = self.level.tensor_matrix(s)
        ten = self.tensor()
        d = len(ten)
        out = [None] * d
        for idx, coeff in enumerate(ten):
            if coeff.is_zero():
                continue
            col = cols[idx]
            for j in range(d):
                term = coeff.scale(col[j])
                out[j] = term if out[j] is None else out[j] + term
        W = self.level.W
        out = [w if w is not None else W.zero() for w in out]
        return tensor_to_lk(self.level, tuple(out))

    # -- representations -----------------------------------------------------------

    def tensor(self):
        if self._tensor is None:
            self._tensor = _split_to_tensor(self.level, self.comps)
        return self._tensor

    # -- numerics --------------------------------------------------------------------

    def w_val(self):
        """Slope valuation: sum of component valuations over [L:K], v(pi_K) = 1."""
        ext = self.level.ext
        total = 0
        for c in self.comps:
            v = c.val_pi()
            if v is None:
                raise errors.ZeroComponent("split component is zero at precision")
            total += v
        return Fraction(total, ext.d)

    def norm(self):
        """Norm to the unramified model W_m."""
        W = self.level.W
        acc = None
        for i, c in enumerate(self.comps):
            n = c.norm_to_w()
            n = W.sigma(n, i)
            acc = n if acc is None else acc * n
        return acc

    def min_prec(self):
        return min(c.prec for c in self.comps)

    def eq_prec(self, other, n=None):
        self._lockstep(other)
        return all(a.eq_prec(b, n) for a, b in zip(self.comps, other.comps))

    def dist_pi(self, other):
        """Smallest Pi-valuation of a component difference (None = equal)."""
        self._lockstep(other)
        best = None
        for a, b in zip(self.comps, other.comps):
            d = (a - b).val_pi()
            if d is not None and (best is None or d < best):
                best = d
        return best

    def reduce_prec(self, n):
        return LKElt(self.level, tuple(c.reduce_prec(n) for c in self.comps))

    def is_sigma_fixed(self, tol):
        d = self.sigma() - self
        return all(c.is_zero() or c.val_pi() >= tol for c in d.comps)

    def serialize(self):
        return {"m": self.level.m, "components": [c.digit_arrays() for c in self.comps]}

    def __repr__(self):
        return f"LKElt({self.level}, {list(self.comps)})"


def _split_to_tensor(level, comps):
    ext = level.ext
    e, f = ext.e, ext.f
    W = level.W
    if f == 1:
        return comps[0].laurent_coeffs()
    lau = [c.laurent_coeffs() for c in comps]
    vand = level.vandermonde()
    out = [None] * (e * f)
    for a in range(e):
        z = [W.sigma(lau[i][a], i) for i in range(f)]
        cvec = gauss_solve_elts([row[:] for row in vand], z)
        for b in range(f):
            out[a * f + b] = cvec[b]
    return tuple(out)


def tensor_to_lk(level, tensor):
    ext = level.ext
    e, f = ext.e, ext.f
    W, m = level.W, level.m
    if f == 1:
        return LKElt(level, (level.ring.from_laurent(list(tensor)),), tensor=tuple(tensor))
    vand = level.vandermonde()
    comps = []
    for i in range(f):
        coeffs = []
        for a in range(e):
            z = None
            for b in range(f):
                t = tensor[a * f + b]
                if t.is_zero():
                    continue
                term = t * vand[i][b]
                z = term if z is None else z + term
            z = z if z is not None else W.zero()
            coeffs.append(W.sigma(z, (m - i) % m))
        comps.append(level.ring.from_laurent(coeffs))
    return LKElt(level, tuple(comps), tensor=tuple(tensor))


def slope_empirical(alpha, n_max):
    """Iterate F(x) = alpha * sigma(x) on the standard lattice basis and
    measure the valuation growth; exact at multiples of the degree."""
    level = alpha.level
    ext = level.ext
    e, f = ext.e, ext.f
    budget = min(c.prec for c in alpha.comps)
    west = alpha.w_val()
    if n_max * abs(west) * e >= budget - 2:
        raise errors.PrecisionLoss("slope iteration would exhaust pi digits")
    gains = []
    for i in range(f):
        for a in range(e):
            comps = [level.ring.zero() for _ in range(f)]
            comps[i] = level.ring.one().shift_pi(a)
            x = LKElt(level, tuple(comps))
            v0 = _lattice_val(x)
            for _ in range(n_max):
                x = alpha * x.sigma()
            gains.append(_lattice_val(x) - v0)
    lo = Fraction(min(gains), n_max * e)
    hi = Fraction(max(gains), n_max * e)
    return {"estimate": lo, "interval": (lo, hi), "n": n_max}


def _lattice_val(x):
    vals = [v for v in (c.val_pi() for c in x.comps) if v is not None]
    if not vals:
        raise errors.PrecisionLoss("lattice vector vanished at precision")
    return min(vals)
