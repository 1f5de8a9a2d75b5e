"""Finite extensions L/K: construction, the L-model, and Galois groups.

An extension is generated by an unramified part of degree f (the table
generator omega) and an Eisenstein part of degree e with coefficient literals
from the base field.  The L-model is the ramified ring over W_f, i.e.
elements are polynomials in Pi over the degree-f unramified ring, giving a
K-basis {Pi^a omega^b}.

Galois automorphisms are pairs (residue shift k, root of the Eisenstein
polynomial): both generators have all their conjugates in L exactly when L/K
is Galois, and then every pair defines an automorphism because the Eisenstein
coefficients live in K.
"""

from __future__ import annotations

from . import errors
from .padic import make_elt, make_unramified
from .ramified import RamifiedRing, _root_key, integral_roots

DEGREE_CAP = 8
PART_CAP = 6


def cyclotomic_eisenstein(p, n):
    """Low coefficients of the minimal polynomial of zeta_n - 1 over Q_p (n = p^k)."""
    k, m = 0, n
    while m % p == 0:
        m //= p
        k += 1
    if m != 1 or k == 0:
        raise errors.UnsupportedDegree(
            f"cyclotomic shortcut needs n = p^k with the base p, got n = {n}"
        )
    step = n // p
    phi = [0] * (step * (p - 1) + 1)
    for j in range(p):
        if j * step < len(phi):
            phi[j * step] = 1
    # Taylor shift X -> X + 1 over the integers
    coeffs = list(phi)
    shifted = []
    while coeffs:
        b = coeffs[-1]
        desc = [b]
        for i in range(len(coeffs) - 2, -1, -1):
            b = coeffs[i] + b
            desc.append(b)
        desc.reverse()
        shifted.append(desc[0])
        coeffs = desc[1:]
    assert shifted[-1] == 1
    return shifted[:-1]


def lift_literal(W, lit):
    """Base-field coefficient literal -> element of the unramified ring W."""
    C = W.C
    if isinstance(lit, int):
        return W.from_coeffs([C.from_int(lit)])
    if isinstance(lit, dict) and "t" in lit:
        if W.base.kind != "laurent":
            raise errors.ConfigError("t-digit literals only make sense over laurent bases")
        return W.from_coeffs([C.from_digits(lit["t"])])
    raise errors.ConfigError(f"unsupported coefficient literal {lit!r}")


class ExtensionField:
    def __init__(self, base, f, eis_spec, prec, name=None):
        if f < 1:
            raise errors.UnsupportedDegree("unramified degree must be >= 1")
        self.base = base
        self.f = f
        self.eis_spec = eis_spec  # None for e = 1 (canonical X - pi)
        self.e = 1 if eis_spec is None else len(eis_spec)
        self.d = self.e * self.f
        if self.e > PART_CAP or self.f > PART_CAP or self.d > DEGREE_CAP:
            raise errors.UnsupportedDegree(
                f"degree caps exceeded: e={self.e}, f={self.f}, d={self.d}"
            )
        self.prec = prec
        self.name = name or f"ext(e={self.e},f={self.f})"
        self.WK = make_unramified(base, 1, prec)
        self.Wf = make_unramified(base, f, prec)
        self.model = RamifiedRing(self.Wf, self.eis_in(self.Wf))
        self._galois = None

    def eis_in(self, W):
        """The Eisenstein coefficients lifted into an unramified ring over the base."""
        if self.eis_spec is None:
            return [W.from_coeffs([W.C.neg(W.C.uniformizer())])]
        return [lift_literal(W, lit) for lit in self.eis_spec]

    def eis_poly(self, ring):
        """The monic Eisenstein polynomial over a ramified ring (RamElt coefficients)."""
        return [ring.from_w(c) for c in self.eis_in(ring.W)] + [ring.one()]

    # -- L-model helpers ---------------------------------------------------------

    def one(self):
        return self.model.one()

    def pi(self):
        return self.model.pi_elt()

    def omega(self):
        return self.model.from_w(self.Wf.gen())

    def from_int(self, a):
        return self.model.from_w(self.Wf.from_int(a))

    def from_coords(self, cvals, tshift=0):
        """Element from d base-ring coordinates on the {Pi^a omega^b} basis."""
        f = self.f
        ws = [self.Wf.from_coeffs(cvals[a * f:(a + 1) * f]) for a in range(self.e)]
        return self.model.from_coeffs(ws, tshift)

    def coords(self, x):
        """Base-ring coordinates of an integral element (inverse of from_coords)."""
        if x.val_pi() is not None and x.val_pi() < 0:
            raise ValueError("coords need an integral element; factor the Pi power")
        C = self.Wf.C
        out = []
        for w in x.realize_at(0):
            for b in range(self.f):
                out.append(C.shift_up(w.vec[b], w.shift) if not w.is_zero() else C.zero())
        return out

    def random_unit(self, rng):
        return self.model.random_unit(rng)

    def norm_to_K(self, x):
        """Field norm N_{L/K} as an element of the K-model (degree-1 ring)."""
        nw = x.norm_to_w()
        prod = nw
        y = nw
        for _ in range(self.f - 1):
            y = self.Wf.sigma(y)
            prod = prod * y
        return self.descend_to_K(prod)

    def descend_to_K(self, w):
        """Reinterpret a sigma-fixed W_f element as a K-model scalar."""
        if w.is_zero():
            return make_elt(self.WK, w.prec, (self.WK.C.zero(),), w.prec)
        for tail in w.vec[1:]:
            tv = self.Wf.C.val(tail)
            if tv is not None and tv < w.prec - w.shift:
                raise errors.NotInL("value does not descend to the base field")
        return make_elt(self.WK, w.shift, (w.vec[0],), w.prec)

    def galois_group(self):
        if self._galois is None:
            self._galois = GaloisGroup(self)
        return self._galois

    def __repr__(self):
        return f"ExtensionField({self.name}, e={self.e}, f={self.f} over {self.base.describe()})"


def build_extension(base, config, prec):
    """Build from a config dict: unramified / cyclotomic / eisenstein shortcuts."""
    f = config.get("unramified", 1)
    name = config.get("name")
    has_cyc = "cyclotomic" in config
    has_eis = "eisenstein" in config
    if has_cyc and has_eis:
        raise errors.ConfigError("give either cyclotomic or eisenstein, not both")
    if has_cyc:
        eis_spec = cyclotomic_eisenstein(base.p, config["cyclotomic"])
    elif has_eis:
        eis_spec = list(config["eisenstein"])
        if not eis_spec or eis_spec[-1] != 1:
            raise errors.NotEisenstein("explicit eisenstein data must be monic (end with 1)")
        eis_spec = eis_spec[:-1]
        if len(eis_spec) == 0:
            raise errors.NotEisenstein("eisenstein polynomial must have degree >= 1")
    else:
        eis_spec = None
    if eis_spec is not None and len(eis_spec) == 1:
        # degree-1 ramified part: fold into the canonical uniformizer
        eis_spec = None
    return ExtensionField(base, f, eis_spec, prec, name=name)


class GaloisAutomorphism:
    """Determined by the residue shift k and the image of Pi."""

    __slots__ = ("ext", "k", "pi_img", "index", "_pipows", "_pipow_inv")

    def __init__(self, ext, k, pi_img, index=None):
        self.ext = ext
        self.k = k
        self.pi_img = pi_img
        self.index = index
        pows = [ext.model.one()]
        for _ in range(ext.e - 1):
            pows.append(pows[-1] * pi_img)
        self._pipows = pows
        self._pipow_inv = pi_img.inv() if ext.e > 1 else None

    def omega_img(self):
        return self.ext.Wf.sigma(self.ext.Wf.gen(), self.k)

    def is_identity(self):
        return self.k == 0 and self.pi_img.eq_prec(
            self.ext.pi(), self.pi_img.prec - 1)

    def apply(self, x):
        """Apply to an L-model element."""
        ext = self.ext
        Wf, e = ext.Wf, ext.e
        if x.is_zero():
            return x
        t = x.tshift
        acc = None
        for a, w in enumerate(x.vec):
            if w.is_zero():
                continue
            term = ext.model.from_w(Wf.sigma(w, self.k)) * self._pipows[a]
            acc = term if acc is None else acc + term
        if acc is None:
            return ext.model.zero(x.prec)
        if t > 0:
            acc = acc * self.pi_img ** t
        elif t < 0:
            inv = self._pipow_inv if self._pipow_inv is not None else self.pi_img.inv()
            acc = acc * inv ** (-t)
        return acc.reduce_prec(x.prec)

    def __repr__(self):
        return f"s[{self.index}](k={self.k})"


class GaloisGroup:
    def __init__(self, ext):
        self.ext = ext
        ring = ext.model
        roots = integral_roots(ring, ext.eis_poly(ring))
        if len(roots) < ext.e:
            raise errors.NotGalois(
                f"found {len(roots)} Eisenstein roots, need {ext.e}: "
                "extension is not Galois at working precision"
            )
        elts = []
        for k in range(ext.f):
            for r in roots:
                elts.append(GaloisAutomorphism(ext, k, r))
        elts.sort(key=lambda s: (s.k, _root_key(ring, s.pi_img)))
        for i, s in enumerate(elts):
            s.index = i
        self.elements = elts
        self.order = len(elts)
        self.identity = next(s for s in elts if s.is_identity())
        self._table = {}
        for s in elts:
            for t in elts:
                self._table[(s.index, t.index)] = self._match(s, t).index
        self._inv = {}
        for s in elts:
            for t in elts:
                if self._table[(s.index, t.index)] == self.identity.index:
                    self._inv[s.index] = t.index
        if len(self._inv) != self.order:
            raise errors.NotGalois("automorphism composition is not a group at precision")

    def _match(self, s, t):
        """The element equal to s compose t (s applied after t)."""
        img = s.apply(t.pi_img)
        k = (s.k + t.k) % self.ext.f
        best, best_d, second = None, -1, -1
        for cand in self.elements:
            if cand.k != k:
                continue
            d = img.dist_pi(cand.pi_img)
            dv = img.prec if d is None else d
            if dv > best_d:
                best, best_d, second = cand, dv, best_d
            elif dv > second:
                second = dv
        if best is None or best_d <= second:
            raise errors.NotGalois("ambiguous automorphism match at precision")
        return best

    def compose(self, s, t):
        return self.elements[self._table[(s.index, t.index)]]

    def inverse(self, s):
        return self.elements[self._inv[s.index]]

    def mult_table(self):
        return dict(self._table)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order
