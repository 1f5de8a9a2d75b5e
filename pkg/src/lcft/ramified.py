"""Eisenstein-ramified extensions of a truncated unramified ring.

RamifiedRing models O = W[Pi]/(Eis) where W is an UnramifiedRing and Eis has
coefficients from the base field, so the Frobenius of W extends to O fixing
Pi.  Elements are Pi-power-shifted polynomials of degree < e over W in a
normal form with unit low coefficient, and track absolute precision in
Pi-digit units (e digits per pi digit).

The degree-1 case models the unramified situation itself (Eis = X - pi) and
is used uniformly by the split-algebra layer.

This module also hosts the digit-branching integral root finder used for
Galois-group discovery and tower embeddings; it handles wildly ramified
polynomials where plain Hensel lifting fails on multiple residue roots.
"""

from __future__ import annotations

from . import errors
from .padic import UnramElt, make_elt


class RamifiedRing:
    def __init__(self, W, eis_low):
        """eis_low: the non-leading Eisenstein coefficients a_0..a_{e-1} as UnramElt."""
        self.W = W
        self.e = len(eis_low)
        self.eis = list(eis_low)
        if self.eis[0].val() != 1:
            raise errors.NotEisenstein("constant term must have valuation 1")
        for c in self.eis[1:]:
            v = c.val()
            if v is not None and v < 1:
                raise errors.NotEisenstein("non-leading coefficients need v >= 1")
        self.a0_inv = self.eis[0].inv()

    @property
    def prec_pi(self):
        return self.e * self.W.N

    def zero(self, prec=None):
        n = self.prec_pi if prec is None else prec
        return RamElt(self, n, tuple(self.W.zero() for _ in range(self.e)), n)

    def one(self):
        return self.from_w(self.W.one())

    def from_w(self, w):
        """Embed an unramified element (exact in Pi terms)."""
        vec = [w] + [self.W.zero()] * (self.e - 1)
        return make_ram(self, 0, tuple(vec), self.e * w.prec)

    def pi_elt(self):
        """The uniformizer Pi as an element."""
        if self.e == 1:
            # Eis = X + a_0, so Pi = -a_0 (for the standard X - pi, Pi = pi)
            return self.from_w(-self.eis[0])
        vec = [self.W.zero()] * self.e
        vec[1] = self.W.one()
        return make_ram(self, 0, tuple(vec), self.prec_pi)

    def from_coeffs(self, ws, tshift=0):
        vec = list(ws) + [self.W.zero()] * (self.e - len(ws))
        n = min((self.e * w.prec + a for a, w in enumerate(vec)), default=self.prec_pi)
        return make_ram(self, tshift, tuple(vec), n + tshift)

    def from_laurent(self, ws):
        """From Pi^0-aligned coefficients that may carry negative pi-shifts."""
        return self.from_coeffs(list(ws))

    def one_plus_digit(self, c, k):
        """1 + [c] Pi^k for a residue-field element c (cheap lift)."""
        lift = self.W.from_residue(c)
        return self.one() + self.from_w(lift).shift_pi(k)

    def sigma(self, x, k=1):
        """Coefficientwise Frobenius power; Pi is fixed (Eis has base coefficients)."""
        if k % self.W.M == 0:
            return x
        return RamElt(self, x.tshift, tuple(self.W.sigma(w, k) for w in x.vec), x.prec)

    def random_unit(self, rng, prec=None):
        n = self.prec_pi if prec is None else prec
        while True:
            vec = tuple(self.W.random(rng) for _ in range(self.e))
            x = make_ram(self, 0, vec, n)
            if x.val_pi() == 0:
                return x

    def lift_to(self, other, emb):
        """Return a coefficient transport function into a higher-level ring."""
        def f(x):
            return RamElt(other, x.tshift, tuple(emb(w) for w in x.vec), x.prec)
        return f

    def __repr__(self):
        return f"Ram(e={self.e}, {self.W!r})"


def _times_pi_once(ring, vec):
    """Multiply a coefficient tuple by Pi (exact)."""
    e, W = ring.e, ring.W
    if e == 1:
        return ((-ring.eis[0]) * vec[0],)
    out = [W.zero()] + list(vec[: e - 1])
    top = vec[e - 1]
    if not top.is_zero():
        for j in range(e):
            out[j] = out[j] - top * ring.eis[j]
    return tuple(out)


def _div_pi_once(ring, vec):
    """Divide a coefficient tuple by Pi exactly; requires v(vec[0]) >= 1."""
    e = ring.e
    if e == 1:
        return ((vec[0] * (-ring.eis[0]).inv()),)
    w0 = vec[0]
    out = list(vec[1:]) + [ring.W.zero()]
    if not w0.is_zero():
        # 1/Pi = -a0^{-1} (Pi^{e-1} + a_{e-1} Pi^{e-2} + ... + a_1)
        s = w0 * ring.a0_inv
        out[e - 1] = out[e - 1] - s
        for j in range(1, e):
            out[j - 1] = out[j - 1] - s * ring.eis[j]
    return tuple(out)


def make_ram(ring, tshift, vec, prec):
    """Normal form: low coefficient a unit (val_Pi of the polynomial part = 0)."""
    if prec <= tshift:
        return RamElt(ring, prec, tuple(ring.W.zero() for _ in range(ring.e)), prec)
    # clip coefficient precisions to the element's knowledge window
    e = ring.e
    vec = tuple(
        w.reduce_prec(_ceil_div(prec - tshift - a, e)) for a, w in enumerate(vec)
    )
    v = _vec_val(ring, vec, prec - tshift)
    if v is None:
        return RamElt(ring, prec, tuple(ring.W.zero() for _ in range(e)), prec)
    if v > 0:
        for _ in range(v):
            vec = _div_pi_once(ring, vec)
    elif v < 0:
        # coefficients with negative pi-shift: push the defect into tshift
        for _ in range(-v):
            vec = _times_pi_once(ring, vec)
    tshift += v
    vec = tuple(
        w.reduce_prec(_ceil_div(prec - tshift - a, e)) for a, w in enumerate(vec)
    )
    return RamElt(ring, tshift, vec, prec)


def _ceil_div(a, b):
    return -(-a // b)


def _vec_val(ring, vec, window):
    """Pi-valuation of the polynomial part, None if zero within the window."""
    best = None
    for a, w in enumerate(vec):
        wv = w.val()
        if wv is None:
            continue
        v = ring.e * wv + a
        if best is None or v < best:
            best = v
    if best is None or best >= window:
        return None
    return best


class RamElt:
    """Pi^tshift * (unit-low polynomial in Pi over W), known mod Pi^prec."""

    __slots__ = ("ring", "tshift", "vec", "prec")

    def __init__(self, ring, tshift, vec, prec):
        self.ring = ring
        self.tshift = tshift
        self.vec = vec
        self.prec = prec

    def coeff_at(self, a):
        return self.vec[a]

    def is_zero(self):
        return self.tshift >= self.prec

    def val_pi(self):
        """Valuation in Pi-digit units (v(Pi) = 1), None for the zero marker."""
        return None if self.is_zero() else self.tshift

    def val(self):
        # alias used by generic linear algebra (unit test: val == 0)
        return self.val_pi()

    def __add__(self, other):
        r = self.ring
        n = min(self.prec, other.prec)
        if self.is_zero():
            return make_ram(r, other.tshift, other.vec, n)
        if other.is_zero():
            return make_ram(r, self.tshift, self.vec, n)
        t = min(self.tshift, other.tshift)
        va = self.vec
        for _ in range(self.tshift - t):
            va = _times_pi_once(r, va)
        vb = other.vec
        for _ in range(other.tshift - t):
            vb = _times_pi_once(r, vb)
        return make_ram(r, t, tuple(a + b for a, b in zip(va, vb)), n)

    def __neg__(self):
        return RamElt(self.ring, self.tshift, tuple(-w for w in self.vec), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        r = self.ring
        e = r.e
        t = self.tshift + other.tshift
        n = min(self.prec + other.tshift, other.prec + self.tshift)
        if self.is_zero() or other.is_zero():
            return r.zero(n)
        if e == 1:
            return make_ram(r, t, (self.vec[0] * other.vec[0],), n)
        W = r.W
        conv = [W.zero()] * (2 * e - 1)
        for i, a in enumerate(self.vec):
            if a.is_zero():
                continue
            for j, b in enumerate(other.vec):
                conv[i + j] = conv[i + j] + a * b
        # Pi^idx = -sum_j a_j Pi^(idx - e + j), highest index first
        for idx in range(2 * e - 2, e - 1, -1):
            c = conv[idx]
            if c.is_zero():
                continue
            for j in range(e):
                conv[idx - e + j] = conv[idx - e + j] - c * r.eis[j]
        return make_ram(r, t, tuple(conv[:e]), n)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self.ring.one()
        b = self
        while k:
            if k & 1:
                out = out * b
            b = b * b
            k >>= 1
        return out

    def inv(self):
        if self.is_zero():
            raise errors.NotInvertible("inverse of zero ramified element")
        r = self.ring
        nrel = self.prec - self.tshift
        u = RamElt(r, 0, self.vec, nrel)
        if r.e == 1:
            return make_ram(r, -self.tshift, (self.vec[0].inv(),), nrel - self.tshift)
        w0 = self.vec[0]
        y = r.from_w(w0.inv()).reduce_prec(nrel)
        one = r.one().reduce_prec(nrel)
        for _ in range(max(1, (nrel - 1).bit_length()) + 1):
            err = one - u * y
            if err.is_zero():
                break
            y = y + y * err
        return RamElt(r, y.tshift - self.tshift, y.vec, nrel - self.tshift)

    def shift_pi(self, k):
        """Multiply by the exact power Pi^k."""
        if self.is_zero():
            return self.ring.zero(self.prec + k)
        return RamElt(self.ring, self.tshift + k, self.vec, self.prec + k)

    def reduce_prec(self, n):
        if n >= self.prec:
            return self
        return make_ram(self.ring, self.tshift, self.vec, n)

    def realize_at(self, t0):
        """Coefficient tuple of the Pi^t0-aligned representative (tshift >= t0)."""
        if self.is_zero():
            return tuple(self.ring.W.zero() for _ in range(self.ring.e))
        if self.tshift < t0:
            raise ValueError("cannot realize at a higher alignment than the valuation")
        vec = self.vec
        for _ in range(self.tshift - t0):
            vec = _times_pi_once(self.ring, vec)
        return vec

    def laurent_coeffs(self):
        """Pi^0-aligned coefficients, allowing negative pi-shifts for tshift < 0."""
        if self.is_zero():
            return tuple(self.ring.W.zero() for _ in range(self.ring.e))
        if self.tshift >= 0:
            return self.realize_at(0)
        vec = self.vec
        for _ in range(-self.tshift):
            vec = _div_pi_once(self.ring, vec)
        return vec

    def residue(self):
        """Image in the residue field of W (requires val >= 0)."""
        if self.is_zero() or self.tshift > 0:
            return self.ring.W.residue_field.zero()
        if self.tshift < 0:
            raise ValueError("negative valuation has no residue")
        return self.vec[0].residue()

    def digit_residue(self, k):
        """Residue of (self - 1)/Pi^k, requiring self = 1 mod Pi^k."""
        d = self - self.ring.one()
        if d.is_zero():
            return None
        if d.tshift < k:
            raise ValueError("element is not 1 mod Pi^k")
        if d.tshift > k:
            return None
        return d.vec[0].residue()

    def eq_prec(self, other, n=None):
        d = self - other
        if n is None:
            return d.is_zero()
        return d.is_zero() or d.tshift >= n

    def dist_pi(self, other):
        """Pi-valuation of the difference; None when equal at joint precision."""
        return (self - other).val_pi()

    def norm_to_w(self):
        """Norm to W: product over the Eisenstein conjugates, via the
        multiplication matrix determinant (division-free)."""
        r = self.ring
        if self.is_zero():
            raise errors.ZeroComponent("norm of zero component")
        if r.e == 1:
            return (-r.eis[0]) ** self.tshift * self.vec[0]
        from .linalg import subset_det
        cols = []
        vec = self.vec
        for _ in range(r.e):
            cols.append(vec)
            vec = _times_pi_once(r, vec)
        mat = [[cols[j][i] for j in range(r.e)] for i in range(r.e)]
        unit_norm = subset_det(mat)
        # N(Pi) = (-1)^e * a_0
        n_pi = -self.ring.eis[0] if r.e % 2 else self.ring.eis[0]
        return (n_pi ** self.tshift) * unit_norm

    def digit_arrays(self):
        return {
            "tshift": self.tshift,
            "prec": self.prec,
            "coeffs": [w.digit_arrays() for w in self.vec],
        }

    def __repr__(self):
        if self.is_zero():
            return f"O(Pi^{self.prec})"
        return f"Pi^{self.tshift}*{list(self.vec)} + O(Pi^{self.prec})"


# -- polynomial helpers and the integral root finder -----------------------------


def ram_poly_eval(poly, x):
    acc = poly[-1]
    for c in reversed(poly[:-1]):
        acc = acc * x + c
    return acc


def ram_poly_deriv(poly):
    ring = poly[0].ring
    out = []
    for i, c in enumerate(poly):
        if i >= 1:
            out.append(c * ring.from_w(ring.W.from_int(i)))
    return out


def newton_root_ram(poly, seed):
    """Lift a root from a seed with v(f(seed)) > 2 v(f'(seed)), Pi-adically."""
    dpoly = ram_poly_deriv(poly)
    x = seed
    fx = ram_poly_eval(poly, x)
    dfx = ram_poly_eval(dpoly, x)
    s = dfx.val_pi()
    if s is None:
        raise errors.HenselFails("derivative vanishes at seed")
    t = fx.val_pi()
    t_eff = t if t is not None else fx.prec
    if t_eff <= 2 * s:
        raise errors.HenselFails("Hensel hypothesis fails at seed")
    budget = max(1, seed.prec)
    for _ in range(budget.bit_length() + 4):
        if fx.is_zero():
            break
        x = x - fx * dfx.inv()
        fx = ram_poly_eval(poly, x)
        dfx = ram_poly_eval(dpoly, x)
    else:
        raise errors.PrecisionLoss("ramified Newton did not certify a root")
    return x.reduce_prec(seed.prec - 2 * s)


def integral_roots(ring, poly, budget=None):
    """All roots with v >= 0 of poly (RamElt coefficients) in the ring.

    Digit-branching with Hensel acceleration at simple residue roots; handles
    wild ramification.  Returns roots sorted by a canonical digit key.
    """
    if budget is None:
        budget = ring.prec_pi
    out = []
    _roots_rec(ring, list(poly), ring.zero(), 0, budget, out)
    dedup = []
    for r in out:
        if not any(r.eq_prec(s, min(r.prec, s.prec) - 1) for s in dedup):
            dedup.append(r)
    dedup.sort(key=lambda r: _root_key(ring, r))
    return dedup


def _root_key(ring, r):
    if r.is_zero():
        return (1, 0, ())
    digs = []
    for w in r.vec:
        d = w.digit_arrays()
        digs.append((w.shift, tuple(tuple(c) if isinstance(c, list) else (c,)
                                    for c in d["coeffs"])))
    return (0, r.tshift, tuple(digs))


def _roots_rec(ring, poly, prefix, k, budget, out):
    if k > budget:
        raise errors.PrecisionLoss("root-finder digit budget exhausted")
    W = ring.W
    F = W.residue_field
    vals = [c.val_pi() for c in poly]
    if all(v is None for v in vals):
        raise errors.PrecisionLoss("polynomial vanishes at working precision")
    m = min(v for v in vals if v is not None)
    work = [c.shift_pi(-m) for c in poly]
    respoly = []
    for c in work:
        v = c.val_pi()
        respoly.append(F.zero() if (v is None or v > 0) else c.residue())
    from .residue import poly_roots, poly_trim, poly_eval
    rp = poly_trim(F, respoly)
    if len(rp) <= 1:
        return  # no residue roots: all roots of the branch are non-integral or absent
    dres = []
    for i in range(1, len(rp)):
        acc = F.zero()
        for _ in range(i % F.p):
            acc = F.add(acc, rp[i])
        dres.append(acc)
    for cbar in poly_roots(F, rp):
        simple = not F.is_zero(poly_eval(F, dres, cbar)) if dres else False
        if simple:
            seed = ring.from_w(W.from_residue(cbar))
            try:
                z = newton_root_ram(work, seed)
            except (errors.HenselFails, errors.PrecisionLoss):
                z = None
            if z is not None:
                out.append(prefix + z.shift_pi(k))
                continue
        # branch: substitute Z -> cbar + Pi*Z'
        clift = ring.from_w(W.from_residue(cbar))
        shifted = _compose_shift(ring, work, clift)
        newpref = prefix + clift.shift_pi(k)
        _roots_rec(ring, shifted, newpref, k + 1, budget, out)


def _compose_shift(ring, poly, c):
    """Coefficients of poly(c + Pi*Z): Taylor shift by c, then scale by Pi."""
    coeffs = list(poly)
    taylor = []
    while coeffs:
        b = coeffs[-1]
        descending = [b]
        for i in range(len(coeffs) - 2, -1, -1):
            b = coeffs[i] + b * c
            descending.append(b)
        descending.reverse()  # [remainder, quotient low-first...]
        taylor.append(descending[0])
        coeffs = descending[1:]
    return [t.shift_pi(j) for j, t in enumerate(taylor)]
