"""Truncated coefficient rings O_K / pi^N for the two base-field kinds.

For a p-adic base the ring is Z/p^N with ints as values.  For a Laurent base
F_q((t)) it is F_q[t]/t^N; the general implementation stores length-N tuples
of F_q elements, and the very common F_2((t)) case packs the digits into an
int bitmask with carryless multiplication.

These classes are value-semantic helpers: elements do not track their own
precision (the unramified layer above does) and all operations are exact in
the full modulus.
"""

from __future__ import annotations

from .residue import extension_field, prime_field


class PadicCoeff:
    """Z/p^N with plain ints."""

    kind = "p-adic"

    def __init__(self, p, N):
        self.p = p
        self.N = N
        self.pN = p ** N
        self.pow_cache = [p ** i for i in range(N + 1)]
        self.residue_field = prime_field(p)

    def zero(self):
        return 0

    def one(self):
        return 1

    def uniformizer(self):
        return self.p % self.pN

    def from_int(self, a):
        return a % self.pN

    def from_digits(self, digits):
        acc = 0
        for d in reversed(digits[: self.N]):
            acc = acc * self.p + (d % self.p)
        return acc % self.pN

    def is_zero(self, x):
        return x == 0

    def add(self, a, b):
        return (a + b) % self.pN

    def sub(self, a, b):
        return (a - b) % self.pN

    def neg(self, a):
        return (-a) % self.pN

    def mul(self, a, b):
        return (a * b) % self.pN

    def reduce(self, x, n):
        if n <= 0:
            return 0
        return x % self.pow_cache[min(n, self.N)]

    def val(self, x, bound=None):
        """pi-adic valuation; None means zero in the full modulus."""
        if x % self.pN == 0:
            return None
        x %= self.pN
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def inv_unit(self, x, n):
        return pow(x, -1, self.pow_cache[min(n, self.N)])

    def shift_down(self, x, k):
        q, r = divmod(x % self.pN, self.pow_cache[k])
        if r:
            raise ValueError("inexact division by uniformizer power")
        return q

    def shift_up(self, x, k):
        return (x * self.pow_cache[min(k, self.N)]) % self.pN

    def residue(self, x):
        return x % self.p

    def from_residue(self, c):
        return c % self.p

    def rand(self, rng, n=None):
        n = self.N if n is None else n
        return rng.randrange(self.pow_cache[n])

    def digits(self, x, n):
        x %= self.pN
        out = []
        for _ in range(n):
            out.append(x % self.p)
            x //= self.p
        return out

    def poly_mulmod(self, va, vb, red_rows, nmod):
        """(sum va_i x^i)(sum vb_j x^j) reduced by rows x^{M+k} -> red_rows[k], mod p^nmod."""
        M = len(va)
        conv = [0] * (2 * M - 1)
        for i, a in enumerate(va):
            if a:
                for j, b in enumerate(vb):
                    conv[i + j] += a * b
        for k in range(M - 2, -1, -1):
            c = conv[M + k]
            if c:
                row = red_rows[k]
                for j in range(M):
                    conv[j] += c * row[j]
        m = self.pow_cache[min(nmod, self.N)] if nmod > 0 else 1
        return tuple(c % m for c in conv[:M])


class Laurent2Coeff:
    """F_2[t]/t^N packed into int bitmasks."""

    kind = "laurent"

    def __init__(self, N):
        self.p = 2
        self.N = N
        self.mask = (1 << N) - 1
        self.residue_field = prime_field(2)

    def zero(self):
        return 0

    def one(self):
        return 1

    def uniformizer(self):
        return 2 & self.mask

    def from_int(self, a):
        return a % 2

    def from_digits(self, codes):
        acc = 0
        for i, c in enumerate(codes[: self.N]):
            acc |= (c & 1) << i
        return acc

    def is_zero(self, x):
        return x == 0

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        c = 0
        while a:
            low = a & -a
            c ^= b << (low.bit_length() - 1)
            a ^= low
        return c & self.mask

    def reduce(self, x, n):
        if n <= 0:
            return 0
        return x & ((1 << min(n, self.N)) - 1)

    def val(self, x, bound=None):
        x &= self.mask
        if x == 0:
            return None
        return (x & -x).bit_length() - 1

    def inv_unit(self, x, n):
        y = 1
        k = 1
        while k < n:
            k *= 2
            e = 1 ^ self.reduce(self.mul(x, y), min(k, n))
            y = self.reduce(y ^ self.mul(y, e), min(k, n))
        return self.reduce(y, n)

    def shift_down(self, x, k):
        if x & ((1 << k) - 1):
            raise ValueError("inexact division by uniformizer power")
        return x >> k

    def shift_up(self, x, k):
        return (x << k) & self.mask

    def residue(self, x):
        return x & 1

    def from_residue(self, c):
        return c % 2

    def rand(self, rng, n=None):
        n = self.N if n is None else n
        return rng.getrandbits(n) if n else 0

    def digits(self, x, n):
        return [(x >> i) & 1 for i in range(n)]

    def poly_mulmod(self, va, vb, red_rows, nmod):
        M = len(va)
        conv = [0] * (2 * M - 1)
        for i, a in enumerate(va):
            if a:
                for j, b in enumerate(vb):
                    if vb[j]:
                        conv[i + j] ^= self.mul(a, vb[j])
        for k in range(M - 2, -1, -1):
            c = conv[M + k]
            if c:
                row = red_rows[k]
                for j in range(M):
                    if row[j]:
                        conv[j] ^= self.mul(c, row[j])
        m = (1 << min(nmod, self.N)) - 1 if nmod > 0 else 0
        return tuple(c & m for c in conv[:M])


class LaurentCoeff:
    """F_q[t]/t^N with dense digit tuples; the general (slow) Laurent ring."""

    kind = "laurent"

    def __init__(self, p, r, N):
        self.p = p
        self.N = N
        base = prime_field(p)
        self.residue_field = extension_field(base, r) if r > 1 else base
        self.F = self.residue_field
        self._zero = tuple(self.F.zero() for _ in range(N))

    def zero(self):
        return self._zero

    def one(self):
        return self.from_residue(self.F.one())

    def uniformizer(self):
        F = self.F
        return tuple(
            F.one() if i == 1 else F.zero() for i in range(self.N)
        ) if self.N > 1 else self._zero

    def from_int(self, a):
        return self.from_residue(self.F.from_code(a % self.p))

    def from_digits(self, codes):
        F = self.F
        digs = [F.from_code(c) for c in codes[: self.N]]
        digs += [F.zero()] * (self.N - len(digs))
        return tuple(digs)

    def is_zero(self, x):
        return all(self.F.is_zero(c) for c in x)

    def add(self, a, b):
        F = self.F
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.F
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.F.neg(x) for x in a)

    def mul(self, a, b):
        F, N = self.F, self.N
        out = [F.zero()] * N
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j in range(N - i):
                y = b[j]
                if not F.is_zero(y):
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return tuple(out)

    def reduce(self, x, n):
        n = max(0, min(n, self.N))
        F = self.F
        return tuple(c if i < n else F.zero() for i, c in enumerate(x))

    def val(self, x, bound=None):
        for i, c in enumerate(x):
            if not self.F.is_zero(c):
                return i
        return None

    def inv_unit(self, x, n):
        F = self.F
        y = [F.zero()] * self.N
        y[0] = F.inv(x[0])
        known = 1
        while known < n:
            known = min(2 * known, n)
            prod = self.reduce(self.mul(x, tuple(y)), known)
            err = list(self.sub(self.one(), prod))
            y = list(self.add(tuple(y), self.reduce(self.mul(tuple(y), tuple(err)), known)))
        return self.reduce(tuple(y), n)

    def shift_down(self, x, k):
        F = self.F
        if any(not F.is_zero(c) for c in x[:k]):
            raise ValueError("inexact division by uniformizer power")
        return tuple(list(x[k:]) + [F.zero()] * k)

    def shift_up(self, x, k):
        F = self.F
        return tuple([F.zero()] * k + list(x[: self.N - k]))

    def residue(self, x):
        return x[0]

    def from_residue(self, c):
        F = self.F
        return tuple(c if i == 0 else F.zero() for i in range(self.N))

    def rand(self, rng, n=None):
        n = self.N if n is None else n
        F = self.F
        return tuple(F.random(rng) if i < n else F.zero() for i in range(self.N))

    def digits(self, x, n):
        return [self.F.code(c) for c in x[:n]]

    def poly_mulmod(self, va, vb, red_rows, nmod):
        M = len(va)
        conv = [self._zero] * (2 * M - 1)
        for i, a in enumerate(va):
            if not self.is_zero(a):
                for j, b in enumerate(vb):
                    if not self.is_zero(b):
                        conv[i + j] = self.add(conv[i + j], self.mul(a, b))
        for k in range(M - 2, -1, -1):
            c = conv[M + k]
            if not self.is_zero(c):
                row = red_rows[k]
                for j in range(M):
                    if not self.is_zero(row[j]):
                        conv[j] = self.add(conv[j], self.mul(c, row[j]))
        return tuple(self.reduce(c, nmod) for c in conv[:M])
