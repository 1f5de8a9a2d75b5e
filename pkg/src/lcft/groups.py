"""Finite multiplication-table groups and integer lattice quotients.

Groups discovered from Galois data are handled as index tables; the module
provides commutator subgroups, abelianizations, transfer maps, and finite
abelian quotients of Z^g by relation lattices via Smith normal form.
"""

from __future__ import annotations

from . import errors


class TableGroup:
    """Group on indices 0..n-1 with an explicit multiplication table."""

    def __init__(self, table, identity, n):
        self.table = table  # dict (i, j) -> k
        self.identity = identity
        self.n = n
        self._inv = {}
        for i in range(n):
            for j in range(n):
                if table[(i, j)] == identity:
                    self._inv[i] = j

    @classmethod
    def from_galois(cls, G):
        return cls(G.mult_table(), G.identity.index, len(G))

    def mul(self, i, j):
        return self.table[(i, j)]

    def inv(self, i):
        return self._inv[i]

    def conj(self, t, s):
        """t s t^{-1}."""
        return self.mul(self.mul(t, s), self.inv(t))

    def subgroup_closure(self, gens):
        got = {self.identity}
        frontier = [self.identity]
        gens = set(gens) | {self.inv(g) for g in gens}
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in got:
                    got.add(y)
                    frontier.append(y)
        return sorted(got)

    def commutator_subgroup(self):
        comms = set()
        for s in range(self.n):
            for t in range(self.n):
                c = self.mul(self.mul(s, t), self.mul(self.inv(s), self.inv(t)))
                comms.add(c)
        return self.subgroup_closure(comms)

    def cosets(self, subgroup):
        """Left cosets of a (normal, in our uses) subgroup, sorted by least member."""
        sub = set(subgroup)
        seen = set()
        out = []
        for i in range(self.n):
            if i in seen:
                continue
            coset = frozenset(self.mul(i, h) for h in sub)
            seen |= coset
            out.append(coset)
        out.sort(key=min)
        return out

    def abelianization(self):
        """(cosets, coset_index map, quotient TableGroup)."""
        csets = self.cosets(self.commutator_subgroup())
        idx = {}
        for ci, c in enumerate(csets):
            for g in c:
                idx[g] = ci
        table = {}
        reps = [min(c) for c in csets]
        for i, r1 in enumerate(reps):
            for j, r2 in enumerate(reps):
                table[(i, j)] = idx[self.mul(r1, r2)]
        return csets, idx, TableGroup(table, idx[self.identity], len(csets))

    def transfer(self, subgroup, g):
        """Transfer to the subgroup: the product of h_i with g r_i = r_j h_i,
        returned as a product element of the subgroup (class mod H^c is what
        callers compare)."""
        sub = set(subgroup)
        csets = self.cosets(subgroup)
        reps = [min(c) for c in csets]
        rep_of = {}
        for c, r in zip(csets, reps):
            for x in c:
                rep_of[x] = r
        prod = self.identity
        for r in reps:
            gr = self.mul(g, r)
            r2 = rep_of[gr]
            h = self.mul(self.inv(r2), gr)
            if h not in sub:
                raise errors.LcftError("transfer bookkeeping left the subgroup")
            prod = self.mul(prod, h)
        return prod

    def element_order(self, g):
        cur, n = g, 1
        while cur != self.identity:
            cur = self.mul(cur, g)
            n += 1
        return n


# -- Smith normal form over Z -----------------------------------------------------


def smith_normal_form(A):
    """Return (D, U, Uinv, V) with U A V = D diagonal, U, V unimodular."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [row[:] for row in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), det = ad-bc = ±1
        for k in range(n):
            D[i][k], D[j][k] = a * D[i][k] + b * D[j][k], c * D[i][k] + d * D[j][k]
        for k in range(m):
            U[i][k], U[j][k] = a * U[i][k] + b * U[j][k], c * U[i][k] + d * U[j][k]
        det = a * d - b * c
        # Uinv gets the inverse column operation: Uinv <- Uinv * [[a,b],[c,d]]^{-1}
        for k in range(m):
            x, y = Uinv[k][i], Uinv[k][j]
            Uinv[k][i] = (d * x - c * y) * det
            Uinv[k][j] = (-b * x + a * y) * det

    def col_op(i, j, a, b, c, d):
        for k in range(m):
            D[k][i], D[k][j] = a * D[k][i] + b * D[k][j], c * D[k][i] + d * D[k][j]
        for k in range(n):
            V[k][i], V[k][j] = a * V[k][i] + b * V[k][j], c * V[k][i] + d * V[k][j]

    def gcd_ext(a, b):
        if b == 0:
            return (abs(a), (1 if a >= 0 else -1), 0)
        x0, x1, y0, y1 = 1, 0, 0, 1
        while b:
            q, a, b = a // b, b, a % b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        return a, x0, y0

    def negate_row(t):
        for k in range(n):
            D[t][k] = -D[t][k]
        for k in range(m):
            U[t][k] = -U[t][k]
            Uinv[k][t] = -Uinv[k][t]

    def eliminate():
        t = 0
        while t < min(m, n):
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j]:
                        piv = (i, j)
                        break
                if piv:
                    break
            if piv is None:
                break
            i0, j0 = piv
            if i0 != t:
                row_op(t, i0, 0, 1, 1, 0)
            if j0 != t:
                col_op(t, j0, 0, 1, 1, 0)
            while True:
                done = True
                for i in range(t + 1, m):
                    if D[i][t]:
                        g, x, y = gcd_ext(D[t][t], D[i][t])
                        a, b = D[t][t] // g, D[i][t] // g
                        row_op(t, i, x, y, -b, a)
                        done = False
                for j in range(t + 1, n):
                    if D[t][j]:
                        g, x, y = gcd_ext(D[t][t], D[t][j])
                        a, b = D[t][t] // g, D[t][j] // g
                        col_op(t, j, x, y, -b, a)
                        done = False
                if done:
                    break
            if D[t][t] < 0:
                negate_row(t)
            t += 1
        return t

    rank = eliminate()
    for _ in range(64):
        bad = None
        for i in range(rank - 1):
            if D[i][i] and D[i + 1][i + 1] % D[i][i]:
                bad = i
                break
        if bad is None:
            break
        row_op(bad, bad + 1, 1, 1, 0, 1)
        rank = eliminate()
    else:
        raise errors.LcftError("Smith normal form did not converge")
    return D, U, Uinv, V


class FinAbQuotient:
    """Z^g modulo the lattice spanned by relation columns; must be finite."""

    def __init__(self, g, columns):
        self.g = g
        if not columns:
            columns = [[0] * g]
        A = [[col[i] for col in columns] for i in range(g)]
        D, U, Uinv, V = smith_normal_form(A)
        self.U = U
        self.Uinv = Uinv
        rank = 0
        diag = []
        for i in range(min(len(D), len(D[0]) if D else 0)):
            if D[i][i]:
                diag.append(D[i][i])
                rank += 1
        if rank < g:
            raise errors.Unstable("quotient has a free part; relations incomplete")
        self.diag = diag
        self.invariants = tuple(d for d in diag if d != 1)
        self.order = 1
        for d in self.invariants:
            self.order *= d
        self._keep = [i for i, d in enumerate(diag) if d != 1]

    def reduce(self, vec):
        y = [sum(self.U[i][k] * vec[k] for k in range(self.g)) for i in range(self.g)]
        return tuple(y[i] % self.diag[i] for i in self._keep)

    def lift(self, cls):
        """An exponent vector mapping to the given class tuple."""
        y = [0] * self.g
        for pos, i in enumerate(self._keep):
            y[i] = cls[pos]
        return [sum(self.Uinv[i][k] * y[k] for k in range(self.g)) for i in range(self.g)]

    def zero(self):
        return tuple(0 for _ in self._keep)

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))

    def neg(self, a):
        return tuple((-x) % d for x, d in zip(a, self.invariants))

    def all_classes(self):
        import itertools
        return [tuple(c) for c in itertools.product(*(range(d) for d in self.invariants))]
