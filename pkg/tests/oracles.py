"""Independent brute-force reference implementations used only by the tests.

Nothing here imports the package's linear algebra, so agreement with the
package is a genuine cross-check rather than a tautology.
"""
from fractions import Fraction
from itertools import combinations
from math import comb


def gauss_solve(A, b):
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * p for a, p in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def gauss_rank(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    rk, ncols = 0, len(M[0])
    for c in range(ncols):
        piv = next((r for r in range(rk, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for r in range(len(M)):
            if r != rk and M[r][c] != 0:
                f = M[r][c] / M[rk][c]
                M[r] = [a - f * p for a, p in zip(M[r], M[rk])]
        rk += 1
    return rk


def ip(u, v):
    return sum(Fraction(a) * Fraction(b) for a, b in zip(u, v))


def brute_min_norm(points):
    """Nearest point of conv(points) to 0 by enumerating affinely independent subsets.

    For each subset the minimiser over its affine hull solves the KKT system
    [G 1; 1^T 0][lam; mu] = [0; 1]; keep those with lam >= 0.
    """
    pts = [tuple(Fraction(x) for x in p) for p in dict.fromkeys(tuple(p) for p in points)]
    dim = len(pts[0])
    best = None
    for k in range(1, min(len(pts), dim + 1) + 1):
        for sub in combinations(pts, k):
            A = [[ip(p, q) for q in sub] + [1] for p in sub] + [[1] * k + [0]]
            sol = gauss_solve(A, [0] * k + [1])
            if sol is None:
                continue
            lam = sol[:k]
            if any(x < 0 for x in lam):
                continue
            x = tuple(sum(l * p[i] for l, p in zip(lam, sub)) for i in range(dim))
            nsq = ip(x, x)
            if best is None or nsq < best[1]:
                best = (x, nsq)
    return best


def nullvector(rows, dim):
    """A nonzero vector orthogonal to ``rows`` when they have rank dim - 1."""
    for j in range(dim):
        # fix coordinate j to 1 and solve on the rest
        A = [[r[i] for i in range(dim) if i != j] for r in rows]
        rhs = [-Fraction(r[j]) for r in rows]
        square = [A[i] for i in range(len(A))]
        if len(square) != dim - 1:
            continue
        sol = gauss_solve(square, rhs)
        if sol is not None:
            v = list(sol)
            v.insert(j, Fraction(1))
            return tuple(v)
    return None


def origin_interior_oracle(points, dim):
    """0 is interior to conv(points) in R^dim iff no nonzero y has <y, p> >= 0 for all p."""
    if gauss_rank(points) < dim:
        return False
    if dim == 1:
        return any(p[0] > 0 for p in points) and any(p[0] < 0 for p in points)
    for sub in combinations(points, dim - 1):
        if gauss_rank(sub) != dim - 1:
            continue
        y = nullvector(list(sub), dim)
        for s in (1, -1):
            if all(s * ip(y, p) >= 0 for p in points):
                return False
    return True


def lp_vertex_max(c, A, b, box):
    """max c.x s.t. A x <= b, 0 <= x <= box by vertex enumeration (bounded by the box).

    Returns None when infeasible.
    """
    n = len(c)
    rows = [list(r) for r in A] + [[-int(i == j) for j in range(n)] for i in range(n)]
    rows += [[int(i == j) for j in range(n)] for i in range(n)]
    rhs = list(b) + [0] * n + [box] * n
    best = None
    for sub in combinations(range(len(rows)), n):
        x = gauss_solve([rows[i] for i in sub], [rhs[i] for i in sub])
        if x is None:
            continue
        if all(ip(r, x) <= h for r, h in zip(rows, rhs)):
            v = ip(c, x)
            if best is None or v > best:
                best = v
    return best


def exponent_vectors(nvars, d):
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in exponent_vectors(nvars - 1, d - a):
            yield (a,) + rest


def trivial_weight_exists(n, m, ell):
    """Is there an ell-subset of degree-m monomials whose coordinate sums are all equal?"""
    mons = list(exponent_vectors(n + 1, m))
    assert ell <= comb(n + m, m)
    for sub in combinations(mons, ell):
        sums = [sum(e[i] for e in sub) for i in range(n + 1)]
        if len(set(sums)) == 1:
            return True
    return False
