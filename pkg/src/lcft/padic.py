"""Truncated unramified arithmetic over a local base field.

This is the computational stand-in for the completed maximal unramified
extension: a degree-M extension of the base carried to N pi-adic digits.
Elements are pi-power-shifted coefficient vectors over the truncated base
ring and every element tracks its own absolute precision.  The Frobenius lift
is pinned as the unique ring automorphism sending the table generator to the
Hensel-lifted root of the defining polynomial congruent to generator^q.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .coeffring import Laurent2Coeff, LaurentCoeff, PadicCoeff
from .residue import extension_field, is_prime, prime_field, table_polynomial


class BaseField:
    """A nonarchimedean local base: Q_p-like (q = p) or F_q((t))."""

    __slots__ = ("kind", "p", "q", "r", "residue_field", "_coeff_cache")

    def __init__(self, kind, p, q=None):
        if kind not in ("p-adic", "laurent"):
            raise errors.InvalidBase(f"unknown base kind {kind!r}")
        if not is_prime(p):
            raise errors.InvalidBase(f"p = {p} is not prime")
        q = p if q is None else q
        r, pk = 0, 1
        while pk < q:
            pk *= p
            r += 1
        if pk != q or r < 1:
            raise errors.InvalidBase(f"q = {q} is not a positive power of p = {p}")
        if kind == "p-adic" and q != p:
            raise errors.InvalidBase(
                "p-adic bases with q > p (Witt coefficient rings) are not supported"
            )
        self.kind = kind
        self.p = p
        self.q = q
        self.r = r
        base = prime_field(p)
        self.residue_field = extension_field(base, r) if r > 1 else base
        self._coeff_cache = {}

    def coeff_ring(self, N):
        got = self._coeff_cache.get(N)
        if got is None:
            if self.kind == "p-adic":
                got = PadicCoeff(self.p, N)
            elif self.p == 2 and self.r == 1:
                got = Laurent2Coeff(N)
            else:
                got = LaurentCoeff(self.p, self.r, N)
            self._coeff_cache[N] = got
        return got

    def uniformizer_name(self):
        return "p" if self.kind == "p-adic" else "t"

    def describe(self):
        if self.kind == "p-adic":
            return f"Q_{self.p}"
        return f"F_{self.q}((t))"

    def __repr__(self):
        return f"BaseField({self.describe()})"


@dataclass(frozen=True)
class Precision:
    """Absolute pi-adic digit budget and the residue-degree allocation cap."""

    pi_digits: int = 16
    residue_degree_cap: int = 24

    def __post_init__(self):
        if self.pi_digits < 1 or self.residue_degree_cap < 1:
            raise errors.ConfigError("precision parameters must be >= 1")


class UnramifiedRing:
    """Degree-M unramified extension of the base, truncated at pi^N."""

    def __init__(self, base, M, prec):
        if M > prec.residue_degree_cap:
            raise errors.ResidueBudgetExceeded(
                f"degree {M} exceeds residue cap {prec.residue_degree_cap}"
            )
        self.base = base
        self.M = M
        self.N = prec.pi_digits
        self.prec = prec
        self.C = base.coeff_ring(self.N)
        self.residue_field = (
            extension_field(base.residue_field, M) if M > 1 else base.residue_field
        )
        # lift the table polynomial digit-for-digit; it reduces to itself mod pi
        if M > 1:
            table = table_polynomial(base.residue_field, M)
            self.modulus = tuple(self._lift_res_coeff(c) for c in table[:M])
        else:
            self.modulus = (self.C.neg(self.C.one()),)  # x - 1 placeholder, unused
        self.red_rows = self._reduction_rows() if M > 1 else None
        self._frob = {}
        self._teich_cache = {}

    def _lift_res_coeff(self, c):
        C = self.C
        if self.base.kind == "p-adic":
            return C.from_int(c)
        return C.from_residue(c)

    def _reduction_rows(self):
        """x^(M+k) mod modulus for 0 <= k <= M-2, as coefficient rows to ADD."""
        C, M = self.C, self.M
        rows = []
        cur = [C.neg(c) for c in self.modulus]  # x^M = -(low part)
        rows.append(tuple(cur))
        for _ in range(M - 2):
            nxt = [C.zero()] + cur[: M - 1]
            top = cur[M - 1]
            if not C.is_zero(top):
                for j in range(M):
                    nxt[j] = C.add(nxt[j], C.mul(top, rows[0][j]))
            cur = nxt
            rows.append(tuple(cur))
        return rows

    # -- element constructors --------------------------------------------------

    def zero(self, prec=None):
        n = self.N if prec is None else prec
        return UnramElt(self, n, self._zvec(), n)

    def one(self):
        return self.from_int(1)

    def _zvec(self):
        z = self.C.zero()
        return tuple(z for _ in range(self.M))

    def from_int(self, a):
        C = self.C
        vec = [C.from_int(a)] + [C.zero()] * (self.M - 1)
        return make_elt(self, 0, tuple(vec), self.N)

    def from_coeffs(self, cs, prec=None):
        """Element from base-ring values on the power basis (exact at prec)."""
        n = self.N if prec is None else prec
        C = self.C
        vec = list(cs) + [C.zero()] * (self.M - len(cs))
        return make_elt(self, 0, tuple(vec[: self.M]), n)

    def gen(self):
        C = self.C
        vec = [C.zero()] * self.M
        if self.M == 1:
            vec[0] = C.one()
        else:
            vec[1] = C.one()
        return make_elt(self, 0, tuple(vec), self.N)

    def from_residue(self, c):
        """Cheap (non-Teichmuller) digit lift of a residue-field element."""
        if self.M == 1:
            return make_elt(self, 0, (self.C.from_residue(c),), self.N)
        coords = list(c)
        return make_elt(self, 0, tuple(self._lift_res_coeff(x) for x in coords), self.N)

    def random_unit(self, rng, prec=None):
        n = self.N if prec is None else prec
        while True:
            vec = tuple(self.C.rand(rng, n) for _ in range(self.M))
            x = make_elt(self, 0, vec, n)
            if x.val() == 0:
                return x

    def random(self, rng, prec=None):
        n = self.N if prec is None else prec
        return make_elt(self, 0, tuple(self.C.rand(rng, n) for _ in range(self.M)), n)

    # -- Frobenius ---------------------------------------------------------------

    def frobenius_matrix(self, k=1):
        """Columns of sigma^k on the power basis, cached."""
        k %= self.M
        got = self._frob.get(k)
        if got is not None:
            return got
        if k == 0:
            cols = []
            for i in range(self.M):
                vec = [self.C.zero()] * self.M
                vec[i] = self.C.one()
                cols.append(tuple(vec))
            mat = tuple(cols)
        elif k == 1:
            g_img = self._frobenius_generator_image()
            mat = self._power_columns(g_img)
        else:
            prev = self.frobenius_matrix(k - 1)
            one_step = self.frobenius_matrix(1)
            gen_prev = UnramElt(self, 0, prev[1] if self.M > 1 else prev[0], self.N)
            mat = self._power_columns(self._apply_matrix(one_step, gen_prev))
        self._frob[k] = mat
        return mat

    def _power_columns(self, g):
        cols = [self.one().vec]
        cur = self.one()
        for _ in range(self.M - 1):
            cur = cur * g
            cols.append(cur.vec)
        return tuple(cols)

    def _apply_matrix(self, mat, x):
        C = self.C
        out = [C.zero()] * self.M
        for i, c in enumerate(x.vec):
            if C.is_zero(c):
                continue
            col = mat[i]
            for j in range(self.M):
                out[j] = C.add(out[j], C.mul(c, col[j]))
        n = x.prec
        return make_elt(self, x.shift, tuple(C.reduce(v, n - x.shift) for v in out), n)

    def _frobenius_generator_image(self):
        """Hensel-lifted root of the modulus congruent to gen^q."""
        if self.M == 1:
            return self.one()
        g = self.gen()
        seed = g ** self.base.q
        poly = self.modulus_poly()
        return hensel_root(poly, seed)

    def modulus_poly(self):
        """The defining polynomial as a list of ring elements (monic)."""
        return [self._const_vec(c) for c in self.modulus] + [self.one()]

    def _const_vec(self, cval):
        vec = [cval] + [self.C.zero()] * (self.M - 1)
        return make_elt(self, 0, tuple(vec), self.N)

    def sigma(self, x, k=1):
        if x.is_zero():
            return x
        k %= self.M
        if k == 0:
            return x
        return self._apply_matrix(self.frobenius_matrix(k), x)

    def teichmuller(self, c):
        """The unique root of X^(q^M) = X lifting residue c, to full precision."""
        key = self.residue_field.code(c)
        got = self._teich_cache.get(key)
        if got is not None:
            return got
        if self.residue_field.is_zero(c):
            out = self.zero()
        elif self.base.kind == "laurent":
            out = self.from_residue(c)  # exact: t-free constants are roots of unity
        else:
            x = self.from_residue(c)
            Q = self.base.q ** self.M
            # Newton on X^Q - X; the derivative is = -1 mod pi, so convergence
            # is quadratic from any residue-correct seed
            for _ in range(self.N.bit_length() + 3):
                xq = x ** Q
                num = xq - x
                if num.is_zero():
                    break
                den = xq * self.from_int(Q) * x.inv() - self.one()
                x = x - num * den.inv()
            else:
                raise errors.PrecisionLoss("Teichmuller iteration did not settle")
            out = x
        self._teich_cache[key] = out
        return out

    def __repr__(self):
        return f"W({self.base.describe()}; M={self.M}, N={self.N})"


def make_elt(ring, shift, vec, prec):
    """Normalize: factor the pi-power out of vec and reduce mod pi^(prec-shift)."""
    C = ring.C
    if prec <= shift:
        return UnramElt(ring, prec, ring._zvec(), prec)
    vals = [C.val(v) for v in vec]
    vmin = None
    for v in vals:
        if v is not None and (vmin is None or v < vmin):
            vmin = v
            if vmin == 0:
                break
    if vmin is None or vmin >= prec - shift:
        return UnramElt(ring, prec, ring._zvec(), prec)
    if vmin:
        vec = tuple(C.shift_down(v, vmin) for v in vec)
        shift += vmin
    vec = tuple(C.reduce(v, prec - shift) for v in vec)
    return UnramElt(ring, shift, vec, prec)


class UnramElt:
    """pi^shift * (unit-part coefficient vector), known modulo pi^prec."""

    __slots__ = ("ring", "shift", "vec", "prec")

    def __init__(self, ring, shift, vec, prec):
        self.ring = ring
        self.shift = shift
        self.vec = vec
        self.prec = prec

    def is_zero(self):
        """Indistinguishable from zero at this element's precision."""
        return self.shift >= self.prec

    def val(self):
        """Valuation in v(pi) = 1 units, or None for the ">= prec" marker."""
        return None if self.is_zero() else self.shift

    def __add__(self, other):
        r = self.ring
        C = r.C
        n = min(self.prec, other.prec)
        if self.is_zero():
            return make_elt(r, other.shift, other.vec, n)
        if other.is_zero():
            return make_elt(r, self.shift, self.vec, n)
        s = min(self.shift, other.shift)
        va = self.vec if self.shift == s else tuple(
            C.shift_up(v, self.shift - s) for v in self.vec)
        vb = other.vec if other.shift == s else tuple(
            C.shift_up(v, other.shift - s) for v in other.vec)
        return make_elt(r, s, tuple(C.add(a, b) for a, b in zip(va, vb)), n)

    def __neg__(self):
        C = self.ring.C
        return UnramElt(self.ring, self.shift, tuple(C.neg(v) for v in self.vec), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        r = self.ring
        s = self.shift + other.shift
        n = min(self.prec + other.shift, other.prec + self.shift)
        if self.is_zero() or other.is_zero():
            return UnramElt(r, n, r._zvec(), n)
        if r.M == 1:
            prod = r.C.reduce(r.C.mul(self.vec[0], other.vec[0]), n - s)
            return UnramElt(r, s, (prod,), n) if not r.C.is_zero(prod) else UnramElt(r, n, r._zvec(), n)
        vec = r.C.poly_mulmod(self.vec, other.vec, r.red_rows, n - s)
        return UnramElt(r, s, vec, n)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        out = self.ring.one()
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def inv(self):
        if self.is_zero():
            raise errors.NotInvertible("inverse of (pi-adically) zero element")
        r = self.ring
        nrel = self.prec - self.shift  # relative precision of the unit part
        u = UnramElt(r, 0, self.vec, nrel)
        y = r.from_residue(r.residue_field.inv(u.residue())).reduce_prec(nrel)
        one = r.one().reduce_prec(nrel)
        # Newton at full working precision; correct digits double per step
        for _ in range(max(1, (nrel - 1).bit_length()) + 1):
            err = one - u * y
            if err.is_zero():
                break
            y = y + y * err
        return UnramElt(r, y.shift - self.shift, y.vec, nrel - self.shift)

    def frobenius(self, k=1):
        return self.ring.sigma(self, k)

    def scale(self, cval):
        """Multiply by an exact coefficient-ring value (O(M), no convolution)."""
        r = self.ring
        C = r.C
        cv = C.val(cval)
        if cv is None or self.is_zero():
            n = self.prec + (cv if cv is not None else r.N)
            return UnramElt(r, n, r._zvec(), n)
        return make_elt(r, self.shift,
                        tuple(C.mul(v, cval) for v in self.vec), self.prec + cv)

    def shift_by(self, k):
        """Multiply by the exact power pi^k."""
        if self.is_zero():
            return UnramElt(self.ring, self.prec + k, self.ring._zvec(), self.prec + k)
        return UnramElt(self.ring, self.shift + k, self.vec, self.prec + k)

    def reduce_prec(self, n):
        if n >= self.prec:
            return self
        return make_elt(self.ring, self.shift, self.vec, n)

    def residue(self):
        """Image in the residue field; requires valuation >= 0."""
        r = self.ring
        if self.is_zero() or self.shift > 0:
            return r.residue_field.zero()
        if self.shift < 0:
            raise ValueError("negative valuation has no residue")
        res = [r.C.residue(v) for v in self.vec]
        if r.M == 1:
            return res[0]
        return tuple(res)

    def eq_prec(self, other, n=None):
        d = self - other
        if n is None:
            return d.is_zero()
        return d.is_zero() or d.shift >= n

    def dist(self, other):
        """Valuation of the difference (None when equal at joint precision)."""
        return (self - other).val()

    def digit_arrays(self):
        """Little-endian pi-digit arrays per basis coefficient, plus shift/prec."""
        C = self.ring.C
        n = max(0, self.prec - self.shift)
        return {
            "shift": self.shift,
            "prec": self.prec,
            "coeffs": [C.digits(v, n) for v in self.vec],
        }

    def __repr__(self):
        if self.is_zero():
            return f"O(pi^{self.prec})"
        return f"pi^{self.shift}*{list(self.vec)} + O(pi^{self.prec})"


# -- spec-level operations ------------------------------------------------------


def make_unramified(base, M, prec):
    """Ring descriptor for the degree-M unramified extension at the precision plan."""
    return UnramifiedRing(base, M, prec)


def frobenius(x, k=1):
    return x.frobenius(k)


def teichmuller(ring, c):
    return ring.teichmuller(c)


def valuation(x):
    """Integer valuation, or the ">= prec" marker (None) for truncated zero."""
    return x.val()


def hensel_root(poly, seed):
    """Unique root congruent to seed under |f(seed)| < |f'(seed)|^2.

    poly is a low-first list of ring elements.  Result precision is
    N - v(f'(root)), reflecting the certified ball.
    """
    x = seed
    fx = _poly_eval(poly, x)
    dfx = _poly_eval(_poly_deriv(poly), x)
    t = fx.val()
    s = dfx.val()
    if s is None:
        raise errors.HenselFails("derivative vanishes at seed to working precision")
    t_eff = t if t is not None else fx.prec
    if t_eff <= 2 * s:
        raise errors.HenselFails(
            f"|f(seed)| = pi^{t_eff} not smaller than |f'(seed)|^2 = pi^{2 * s}"
        )
    N = seed.prec
    for _ in range(N.bit_length() + 3):
        if fx.is_zero():
            break
        x = x - fx * dfx.inv()
        fx = _poly_eval(poly, x)
        dfx = _poly_eval(_poly_deriv(poly), x)
    else:
        raise errors.PrecisionLoss("Hensel iteration did not certify a root")
    # worst-case documented loss: twice the derivative valuation
    return x.reduce_prec(N - 2 * s)


def _poly_eval(poly, x):
    acc = poly[-1]
    for c in reversed(poly[:-1]):
        acc = acc * x + c
    return acc


def _poly_deriv(poly):
    ring = poly[0].ring
    return [c * ring.from_int(i) for i, c in enumerate(poly) if i >= 1]
