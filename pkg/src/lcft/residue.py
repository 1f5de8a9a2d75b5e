"""Finite residue fields with a deterministic polynomial table.

Fields are built as extensions of a common base by the lexicographically
smallest monic irreducible polynomial of each degree (found by exhaustive
search, cached).  Elements of a prime field are ints in [0, p); elements of
an extension are constant-first tuples over the base field.  Every element
has an integer *code* (little-endian in the basis) and the code order is the
canonical order used for all tie-breaks in the engine.

Root finding uses gcd with X^|F| - X followed by deterministic
equal-degree-one splitting (quadratic-residue gcds in odd characteristic,
trace splitting in characteristic 2), so repeated runs are bit-identical.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FiniteField:
    """GF(p) or an extension GF(s^n) of another FiniteField by a table polynomial."""

    __slots__ = ("p", "base", "degree", "modulus", "size", "pdim", "_emb_cache")

    def __init__(self, p, base=None, degree=1, modulus=None):
        self.p = p
        self.base = base
        self.degree = degree
        self.modulus = modulus  # monic, stored as low-degree coeffs over base
        if base is None:
            self.size = p
            self.pdim = 1
        else:
            self.size = base.size ** degree
            self.pdim = base.pdim * degree
        self._emb_cache = {}

    # -- element constructors ------------------------------------------------

    def zero(self):
        return 0 if self.base is None else tuple(self.base.zero() for _ in range(self.degree))

    def one(self):
        return self.from_code(1)

    def gen(self):
        if self.base is None:
            raise ValueError("prime field has no extension generator")
        return self.from_code(self.base.size)

    def from_code(self, code):
        if not 0 <= code < self.size:
            code %= self.size
        if self.base is None:
            return code
        s = self.base.size
        out = []
        for _ in range(self.degree):
            out.append(self.base.from_code(code % s))
            code //= s
        return tuple(out)

    def code(self, a):
        if self.base is None:
            return a
        c = 0
        for x in reversed(a):
            c = c * self.base.size + self.base.code(x)
        return c

    def lift(self, b):
        """Embed a base-field element as a constant."""
        if self.base is None:
            raise ValueError("prime field has no base")
        return tuple([b] + [self.base.zero() for _ in range(self.degree - 1)])

    def all_elements(self):
        return (self.from_code(c) for c in range(self.size))

    def random(self, rng):
        return self.from_code(rng.randrange(self.size))

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.base is None:
            return (-a) % self.p
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        F, n = self.base, self.degree
        prod = [F.zero()] * (2 * n - 1)
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        # reduce modulo the monic table polynomial
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if F.is_zero(c):
                continue
            for j, m in enumerate(self.modulus):
                prod[k - n + j] = F.sub(prod[k - n + j], F.mul(c, m))
        return tuple(prod[:n])

    def is_zero(self, a):
        if self.base is None:
            return a == 0
        return all(self.base.is_zero(x) for x in a)

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = self.one()
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.pow(a, self.size - 2)

    def frobenius(self, a, k=1):
        """a ** p**k."""
        if self.size == 2 or self.is_zero(a):
            return a
        # gcd(p, size-1) = 1, so the reduced exponent is never zero
        return self.pow(a, pow(self.p, k, self.size - 1))

    # -- flattening over the prime field ---------------------------------------

    def flatten(self, a):
        """Coordinates over F_p, little-endian across the tower."""
        if self.base is None:
            return [a]
        out = []
        for x in a:
            out.extend(self.base.flatten(x))
        return out

    def unflatten(self, coords):
        if self.base is None:
            return coords[0] % self.p
        k = self.base.pdim
        return tuple(self.base.unflatten(coords[i * k:(i + 1) * k]) for i in range(self.degree))

    def __repr__(self):
        return f"GF({self.size})"


@lru_cache(maxsize=None)
def prime_field(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FiniteField(p)


# ---------------------------------------------------------------------------
# dense polynomials over a FiniteField (low-degree-first coefficient lists)
# ---------------------------------------------------------------------------

def poly_trim(F, f):
    while f and F.is_zero(f[-1]):
        f = f[:-1]
    return f


def poly_add(F, f, g):
    n = max(len(f), len(g))
    f = list(f) + [F.zero()] * (n - len(f))
    g = list(g) + [F.zero()] * (n - len(g))
    return poly_trim(F, [F.add(a, b) for a, b in zip(f, g)])


def poly_scale(F, f, c):
    return poly_trim(F, [F.mul(a, c) for a in f])


def poly_mul(F, f, g):
    if not f or not g:
        return []
    prod = [F.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            prod[i + j] = F.add(prod[i + j], F.mul(a, b))
    return poly_trim(F, prod)


def poly_divmod(F, f, g):
    g = poly_trim(F, list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    ginv = F.inv(g[-1])
    q = [F.zero()] * max(0, len(f) - len(g) + 1)
    while len(poly_trim(F, f)) >= len(g):
        f = poly_trim(F, f)
        d = len(f) - len(g)
        c = F.mul(f[-1], ginv)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = F.sub(f[d + i], F.mul(c, b))
    return poly_trim(F, q), poly_trim(F, f)


def poly_mod(F, f, g):
    return poly_divmod(F, f, g)[1]


def poly_gcd(F, f, g):
    f, g = poly_trim(F, list(f)), poly_trim(F, list(g))
    while g:
        f, g = g, poly_mod(F, f, g)
    if f:
        f = poly_scale(F, f, F.inv(f[-1]))
    return f


def poly_powmod(F, f, e, m):
    r = [F.one()]
    f = poly_mod(F, f, m)
    while e:
        if e & 1:
            r = poly_mod(F, poly_mul(F, r, f), m)
        f = poly_mod(F, poly_mul(F, f, f), m)
        e >>= 1
    return r


def poly_eval(F, f, x):
    acc = F.zero()
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, f):
    """Monic f of degree >= 1 over F."""
    n = len(f) - 1
    if n == 1:
        return True
    x = [F.zero(), F.one()]
    xq = poly_powmod(F, x, F.size ** n, f)
    if poly_trim(F, poly_add(F, xq, poly_scale(F, x, F.neg(F.one())))) != []:
        return False
    for ell in _prime_factors(n):
        xe = poly_powmod(F, x, F.size ** (n // ell), f)
        h = poly_add(F, xe, poly_scale(F, x, F.neg(F.one())))
        if len(poly_gcd(F, h, f)) > 1:
            return False
    return True


def table_polynomial(F, n):
    """Lex-least (by code tuple, constant first) monic irreducible of degree n over F."""
    key = ("table", n)
    cached = F._emb_cache.get(key)
    if cached is not None:
        return cached
    for code in itertools.count():
        lows = []
        c = code
        for _ in range(n):
            lows.append(F.from_code(c % F.size))
            c //= F.size
        if c:
            raise RuntimeError(f"no irreducible of degree {n} over {F}")
        f = lows + [F.one()]
        if F.is_zero(f[0]):
            continue
        if is_irreducible(F, f):
            F._emb_cache[key] = f
            return f


_EXT_REGISTRY = {}


def extension_field(F, n):
    """The degree-n extension of F by the table polynomial (registry-cached)."""
    if n == 1:
        return F
    key = (id(F), n)
    got = _EXT_REGISTRY.get(key)
    if got is None:
        got = FiniteField(F.p, base=F, degree=n, modulus=tuple(table_polynomial(F, n)))
        _EXT_REGISTRY[key] = got
    return got


# ---------------------------------------------------------------------------
# roots and the two residue solvers used by the sigma-equation digit loop
# ---------------------------------------------------------------------------

def poly_roots(F, f):
    """All roots of f in F, sorted by element code. Deterministic."""
    f = poly_trim(F, list(f))
    if len(f) <= 1:
        return []
    f = poly_scale(F, f, F.inv(f[-1]))
    x = [F.zero(), F.one()]
    xq = poly_powmod(F, x, F.size, f)
    lin = poly_gcd(F, poly_add(F, xq, poly_scale(F, x, F.neg(F.one()))), f)
    roots = []
    _split_linears(F, lin, roots)
    roots.sort(key=F.code)
    return roots


def _split_linears(F, g, out):
    g = poly_trim(F, list(g))
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append(F.mul(F.neg(g[0]), F.inv(g[1])))
        return
    if F.p != 2:
        for code in itertools.count():
            d = F.from_code(code % F.size)
            shifted = [d, F.one()]
            h = poly_powmod(F, shifted, (F.size - 1) // 2, g)
            h = poly_add(F, h, [F.neg(F.one())])
            h = poly_gcd(F, h, g)
            if 0 < len(h) - 1 < len(g) - 1:
                _split_linears(F, h, out)
                _split_linears(F, poly_divmod(F, g, h)[0], out)
                return
    else:
        k = F.pdim
        for code in itertools.count(1):
            d = F.from_code(code % F.size)
            y = poly_mod(F, [F.zero(), d], g)
            acc = y
            for _ in range(k - 1):
                y = poly_mod(F, poly_mul(F, y, y), g)
                acc = poly_add(F, acc, y)
            h = poly_gcd(F, acc, g)
            if 0 < len(h) - 1 < len(g) - 1:
                _split_linears(F, h, out)
                _split_linears(F, poly_divmod(F, g, h)[0], out)
                return


def kummer_solutions(F, n, a):
    """Sorted solutions of x^n = a in F (possibly empty)."""
    f = [F.neg(a)] + [F.zero()] * (n - 1) + [F.one()]
    return poly_roots(F, f)


def kummer_solvable(F, n, a):
    """x^n = a solvable in F^x, by the cyclic-group order test (a != 0)."""
    g = _gcd(n, F.size - 1)
    return F.pow(a, (F.size - 1) // g) == F.one()


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def artin_schreier_solutions(F, Q, c):
    """Solve x^Q - x = c over F with F_p-linear algebra.

    Returns (canonical_solution, kernel_elements) or (None, kernel_elements)
    when unsolvable.  Kernel is the subfield F_Q; canonical solution is the
    least element code in the solution coset.
    """
    dim = F.pdim
    p = F.p
    basis = [F.unflatten([1 if i == j else 0 for i in range(dim)]) for j in range(dim)]
    cols = []
    for b in basis:
        img = F.sub(F.pow(b, Q), b)
        cols.append(F.flatten(img))
    # rows indexed by flat coordinate, columns by basis index
    mat = [[cols[j][i] % p for j in range(dim)] for i in range(dim)]
    rhs = [v % p for v in F.flatten(c)]
    sol, kernel = _solve_mod_p(mat, rhs, p)
    if len(kernel) * _ilog(p) > 12:
        raise ValueError("Artin-Schreier kernel too large to canonicalize")
    kernel_elts = sorted(_span_elements(F, kernel, p), key=F.code)
    if sol is None:
        return None, kernel_elts
    x0 = F.unflatten(sol)
    best = min((F.add(x0, k) for k in kernel_elts), key=F.code)
    return best, kernel_elts


def _ilog(p):
    return max(1, p.bit_length() - 1)


def _solve_mod_p(mat, rhs, p):
    """Gaussian elimination over F_p; returns (particular or None, kernel basis)."""
    n = len(mat)
    m = len(mat[0]) if n else 0
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    pivots = []
    r = 0
    for col in range(m):
        piv = None
        for i in range(r, n):
            if a[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][col], -1, p)
        a[r] = [(v * inv) % p for v in a[r]]
        for i in range(n):
            if i != r and a[i][col] % p:
                f = a[i][col]
                a[i] = [(v - f * w) % p for v, w in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    for i in range(r, n):
        if a[i][m] % p:
            return None, _kernel_basis(a, pivots, m, p)
    sol = [0] * m
    for i, col in enumerate(pivots):
        sol[col] = a[i][m] % p
    return sol, _kernel_basis(a, pivots, m, p)


def _kernel_basis(a, pivots, m, p):
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * m
        vec[fc] = 1
        for i, col in enumerate(pivots):
            vec[col] = (-a[i][fc]) % p
        basis.append(vec)
    return basis


def _span_elements(F, kernel_basis, p):
    elems = []
    for combo in itertools.product(range(p), repeat=len(kernel_basis)):
        coords = [0] * F.pdim
        for c, vec in zip(combo, kernel_basis):
            for i, v in enumerate(vec):
                coords[i] = (coords[i] + c * v) % p
        elems.append(F.unflatten(coords))
    return elems


def embedding_image(Fsmall, Fbig):
    """Lex-least root in Fbig of Fsmall's defining polynomial; cached."""
    key = ("emb", id(Fbig))
    got = Fsmall._emb_cache.get(key)
    if got is not None:
        return got
    if Fbig.base is not Fsmall.base:
        raise ValueError("embedding requires extensions of a common base")
    roots = poly_roots(Fbig, [Fbig.lift(c) for c in Fsmall.modulus])
    if not roots:
        raise ValueError(f"{Fsmall} does not embed in {Fbig}")
    img = roots[0]
    Fsmall._emb_cache[key] = img
    return img


def embed_element(Fsmall, Fbig, a):
    """Map a in Fsmall into Fbig along the canonical embedding."""
    if Fsmall is Fbig:
        return a
    if Fbig.base is Fsmall:
        return Fbig.lift(a)
    img = embedding_image(Fsmall, Fbig)
    acc = Fbig.zero()
    for c in reversed(a):
        acc = Fbig.add(Fbig.mul(acc, img), Fbig.lift(c))
    return acc


def multiplicative_generator(F):
    """Smallest-code generator of F^x."""
    n = F.size - 1
    factors = _prime_factors(n)
    for code in range(1, F.size):
        a = F.from_code(code)
        if all(F.pow(a, n // ell) != F.one() for ell in factors):
            return a
    raise RuntimeError("no generator found")
