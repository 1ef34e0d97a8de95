"""Linear algebra over Q(i) and over the truncated DVR C[[b]].

Constant matrices are lists of rows of :class:`Scalar`; series matrices
are lists of rows of :class:`Series`.  Vectors are plain lists/tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .errors import CharPolyNotSplit, NotAUnit, PrecisionInconclusive
from .scalars import ONE, ZERO, Scalar
from .series import INFINITE, Series

# ---------------------------------------------------------------------------
# constant matrices


def zeros(n, m):
    return [[ZERO] * m for _ in range(n)]


def eye(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def cmat_mul(A, B):
    if not A:
        return []
    m = len(B[0]) if B else 0
    out = zeros(len(A), m)
    for i, row in enumerate(A):
        acc = out[i]
        for k, a in enumerate(row):
            if not a:
                continue
            for j, bkj in enumerate(B[k]):
                if bkj:
                    acc[j] = acc[j] + a * bkj
    return out


def cmat_vec(A, v):
    out = []
    for row in A:
        acc = ZERO
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def rref(A, ncols=None):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    R = [list(r) for r in A]
    if not R:
        return R, []
    ncols = len(R[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(A) -> int:
    return len(rref(A)[1]) if A and A[0] else 0


def nullspace(A, ncols):
    """Basis of {x : A x = 0}; columns count given explicitly for empty A."""
    if not A:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(A, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(R, piv):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


def det(A):
    n = len(A)
    if n == 0:
        return ONE
    M = [list(r) for r in A]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        inv = M[c][c].inverse()
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def cinverse(A):
    n = len(A)
    aug = [list(A[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    R, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def charpoly(A):
    """Coefficients ``[c_0, ..., c_n]`` of det(x I - A), c_n = 1 (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        M = cmat_mul(A, M) if k > 1 else zeros(n, n)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            M[i][i] = M[i][i] + c_prev
        AM = cmat_mul(A, M)
        tr = ZERO
        for i in range(n):
            tr = tr + AM[i][i]
        coeffs[n - k] = -(tr / k)
    return coeffs


def _to_sympy(c: Scalar):
    return sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + sympy.I * sympy.Rational(
        int(c.im.numerator), int(c.im.denominator))


def _from_sympy(x) -> Scalar:
    re_part, im_part = sympy.re(x), sympy.im(x)
    return Scalar(f"{re_part.p}/{re_part.q}", f"{im_part.p}/{im_part.q}")


def eigenvalues(A, case="eigenvalues"):
    """Distinct eigenvalues of a constant matrix, all required to lie in Q(i)."""
    n = len(A)
    if n == 0:
        return []
    cp = charpoly(A)
    x = sympy.Symbol("x")
    expr = sum(_to_sympy(c) * x**k for k, c in enumerate(cp))
    _, factors = sympy.factor_list(sympy.expand(expr), x, gaussian=True)
    roots = []
    for fac, _mult in factors:
        poly = sympy.Poly(fac, x)
        if poly.degree() == 0:
            continue
        if poly.degree() > 1:
            raise CharPolyNotSplit(f"characteristic polynomial has the irreducible factor {fac}",
                                   case=case, factor=str(fac))
        a1, a0 = poly.all_coeffs()
        roots.append(_from_sympy(sympy.nsimplify(-a0 / a1)))
    out = []
    for r in roots:
        if r not in out:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# series matrices


def smat_prec(A) -> int:
    return min((x.prec for row in A for x in row), default=10**9)


def sidentity(n, prec):
    return [[Series.one(prec) if i == j else Series.zero(prec) for j in range(n)] for i in range(n)]


def szeros(n, m, prec):
    return [[Series.zero(prec) for _ in range(m)] for _ in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def smat_mul(A, B):
    if not A or not B:
        n = len(A)
        m = len(B[0]) if B else 0
        return [[Series.zero(smat_prec(A) if A else 1) for _ in range(m)] for _ in range(n)]
    out = []
    for row in A:
        new_row = []
        for j in range(len(B[0])):
            acc = None
            for k, a in enumerate(row):
                bkj = B[k][j]
                if a.is_zero() or bkj.is_zero():
                    t = Series.zero(min(a.prec, bkj.prec))
                else:
                    t = a * bkj
                acc = t if acc is None else acc + t
            new_row.append(acc)
        out.append(new_row)
    return out


def smat_vec(A, v):
    return [r[0] for r in smat_mul(A, [[x] for x in v])]


def smat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def smat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def smat_map(A, f):
    return [[f(x) for x in row] for row in A]


def smat_const(A):
    """The constant term A(0)."""
    return [[x.coeffs[0] if x.prec else ZERO for x in row] for row in A]


def smat_coeff(A, k):
    return [[x.coeffs[k] if k < x.prec else ZERO for x in row] for row in A]


def smat_truncate(A, prec):
    return [[x.truncate(min(prec, x.prec)) for x in row] for row in A]


def smat_from_coeffs(mats, prec):
    """Assemble a series matrix from constant coefficient matrices."""
    n = len(mats[0])
    m = len(mats[0][0]) if n else 0
    return [[Series([mats[k][i][j] if k < len(mats) else ZERO for k in range(prec)], prec)
             for j in range(m)] for i in range(n)]


def smat_inverse(P):
    """Inverse of a square series matrix whose constant term is invertible."""
    n = len(P)
    if n == 0:
        return []
    N = smat_prec(P)
    P0 = smat_const(P)
    try:
        X0 = cinverse(P0)
    except ZeroDivisionError:
        raise NotAUnit("matrix is not invertible over C[[b]]") from None
    Pk = [smat_coeff(P, k) for k in range(N)]
    X = [X0]
    for m in range(1, N):
        acc = zeros(n, n)
        for l in range(1, m + 1):
            if any(any(r) for r in Pk[l]):
                T = cmat_mul(Pk[l], X[m - l])
                acc = [[a + t for a, t in zip(ra, rt)] for ra, rt in zip(acc, T)]
        T = cmat_mul(X0, acc)
        X.append([[-t for t in row] for row in T])
    return smat_from_coeffs(X, N)


def column(A, j):
    return [row[j] for row in A]


def columns_to_matrix(cols, n, prec=None):
    if not cols:
        return [[] for _ in range(n)]
    return [[c[i] for c in cols] for i in range(n)]


def vec_valuation(v):
    return min((x.valuation() for x in v), default=INFINITE)


@dataclass
class Elimination:
    """Result of valuation-pivot elimination ``R A C = D``.

    ``D`` has ``b**dvals[i]`` at (i, i) for ``i < rank`` and zeros
    elsewhere (zero up to the working precision ``prec``).
    """

    R: list
    Rinv: list
    C: list
    dvals: list
    rank: int
    prec: int


def eliminate(A, nrows=None):
    """Smith-type reduction over the truncated DVR.

    Pivot choice: minimal valuation, ties broken by lowest row index and
    then lowest column index.
    """
    n = len(A) if nrows is None else nrows
    m = len(A[0]) if A else 0
    N = smat_prec(A) if A and m else 10**9
    if N == 10**9:
        N = 1
    A = [list(r) for r in A]
    R = sidentity(n, N)
    Rinv = sidentity(n, N)
    C = sidentity(m, N)
    dvals = []
    for p in range(min(n, m)):
        best = None
        for i in range(p, n):
            for j in range(p, m):
                v = A[i][j].valuation()
                if v != INFINITE and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        d, i, j = best
        if i != p:
            A[p], A[i] = A[i], A[p]
            R[p], R[i] = R[i], R[p]
            for row in Rinv:
                row[p], row[i] = row[i], row[p]
        if j != p:
            for row in A:
                row[p], row[j] = row[j], row[p]
            for row in C:
                row[p], row[j] = row[j], row[p]
        u = A[p][p].divide_by_b(d)
        uinv = u.invert()
        for i in range(p + 1, n):
            if A[i][p].is_zero():
                A[i][p] = Series.zero(A[i][p].prec)
                continue
            q = A[i][p].divide_by_b(d) * uinv
            A[i] = [x - q * y for x, y in zip(A[i], A[p])]
            R[i] = [x - q * y for x, y in zip(R[i], R[p])]
            for row in Rinv:
                row[p] = row[p] + row[i] * q
        for j in range(p + 1, m):
            if A[p][j].is_zero():
                continue
            q = A[p][j].divide_by_b(d) * uinv
            for row in A:
                row[j] = row[j] - q * row[p]
            for row in C:
                row[j] = row[j] - q * row[p]
        for i in range(p + 1, n):
            A[i][p] = Series.zero(A[i][p].prec)
        for j in range(p + 1, m):
            A[p][j] = Series.zero(A[p][j].prec)
        R[p] = [x * uinv for x in R[p]]
        for row in Rinv:
            row[p] = row[p] * u
        A[p][p] = Series.monomial(ONE, d, A[p][p].prec)
        dvals.append(d)
    prec = min(smat_prec(A) if A and m else N, smat_prec(R) if n else N)
    return Elimination(R, Rinv, C, dvals, len(dvals), prec)


def span_basis(G, n):
    """A C[[b]]-basis (as column vectors) of the span of the columns of G."""
    if not G or not G[0]:
        return []
    el = eliminate(G, n)
    basis = []
    for i, d in enumerate(el.dvals):
        basis.append([row[i].shift(d).truncate(min(row[i].prec + d, el.prec)) for row in el.Rinv])
    return basis


def solve_in_span(G, v, n):
    """Coefficients c with G c = v over C[[b]], or None if v is not in the span.

    Raises PrecisionInconclusive when a required divisibility test runs
    past the known coefficients.
    """
    m = len(G[0]) if G and G[0] else 0
    if m == 0:
        return [] if all(x.is_zero() for x in v) else None
    el = eliminate(G, n)
    w = smat_vec(el.R, list(v))
    y = []
    for i, d in enumerate(el.dvals):
        if d >= w[i].prec:
            raise PrecisionInconclusive("membership undecidable at this precision", case="membership")
        if any(w[i].coeffs[:d]):
            return None
        y.append(w[i].divide_by_b(d))
    for i in range(el.rank, n):
        if not w[i].is_zero():
            return None
    y.extend(Series.zero(el.prec) for _ in range(m - el.rank))
    return smat_vec(el.C, y)
