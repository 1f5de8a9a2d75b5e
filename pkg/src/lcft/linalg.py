"""Small exact linear-algebra helpers used across the engine.

Everything here is division-free or pivots only on units, so no precision is
lost beyond what the inputs carry.
"""

from __future__ import annotations

from . import errors


def subset_det(mat):
    """Determinant by subset dynamic programming (division-free).

    mat is a square list-of-rows whose entries support +, -, * and have a
    ring `one` reachable from entries; n <= ~8 keeps this cheap.
    """
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return mat[0][0]
    # dp over column subsets: signed minors of the first r rows per r-subset
    cur = {}
    for j in range(n):
        cur[1 << j] = mat[0][j]
    for r in range(1, n):
        nxt = {}
        row = mat[r]
        for subset, val in cur.items():
            for j in range(n):
                bit = 1 << j
                if subset & bit:
                    continue
                term = val * row[j]
                # sign: parity of set bits of subset above j
                if bin(subset >> (j + 1)).count("1") % 2:
                    term = -term
                s2 = subset | bit
                acc = nxt.get(s2)
                nxt[s2] = term if acc is None else acc + term
        cur = nxt
    return cur[(1 << n) - 1]


def gauss_solve_elts(rows, rhs):
    """Solve A x = rhs with element entries, pivoting only on units.

    rows: list of lists (n x n), entries with .val() and .inv(); rhs: list of
    length n.  Raises NotInvertible when no unit pivot can be found, which
    signals precision exhaustion rather than genuine singularity.
    """
    n = len(rows)
    a = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    perm = list(range(n))
    for col in range(n):
        piv = None
        for i in range(col, n):
            v = a[i][col].val()
            if v == 0:
                piv = i
                break
        if piv is None:
            raise errors.NotInvertible("no unit pivot; matrix singular at precision")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inv()
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col:
                f = a[i][col]
                if f.val() is not None:
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def solve_coeff_linear(C, rows, rhs, n, check_n=None):
    """Solve an (m x k) system over the coefficient ring C, unit pivots only.

    rows[i] is a length-k list of C-values, rhs length m.  Returns the unique
    solution (len k) mod pi^n, and raises NotInvertible if the system is not
    uniquely solvable with unit pivots, ValueError if inconsistent at
    pi^check_n (default pi^n).
    """
    if check_n is None:
        check_n = n
    m, k = len(rows), len(rows[0])
    a = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(k):
        piv = None
        for i in range(r, m):
            if C.val(a[i][col]) == 0:
                piv = i
                break
        if piv is None:
            raise errors.NotInvertible("no unit pivot in coefficient system")
        a[r], a[piv] = a[piv], a[r]
        inv = C.inv_unit(a[r][col], n)
        a[r] = [C.reduce(C.mul(x, inv), n) for x in a[r]]
        for i in range(m):
            if i != r and not C.is_zero(a[i][col]):
                f = a[i][col]
                a[i] = [C.reduce(C.sub(x, C.mul(f, y)), n) for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == k:
            break
    if len(pivots) < k:
        raise errors.NotInvertible("rank deficiency in coefficient system")
    for i in range(k, m):
        if not C.is_zero(C.reduce(a[i][k], check_n)):
            raise ValueError("inconsistent linear system at working precision")
    sol = [C.zero()] * k
    for i, col in enumerate(pivots):
        sol[col] = a[i][k]
    return sol
