"""(a,b)-modules presented on a free C[[b]]-basis by an a-matrix.

Column ``j`` of the a-matrix holds the coordinates of ``a e_j``.  The
action on a general vector follows from ``ab - ba = b^2``::

    a(f(b) x) = f(b) (a x) + b^2 f'(b) x
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (NotNormal, NotRegular, PrecisionInconclusive)
from .linalg import (cmat_mul, column, columns_to_matrix, eliminate, rank,
                     sidentity, smat_const, smat_inverse, smat_mul, smat_prec,
                     smat_vec, solve_in_span, span_basis, szeros, transpose)
from .scalars import ONE, ZERO, Scalar
from .series import DEFAULT_PREC, INFINITE, Series


class ABModule:
    """A free C[[b]]-module of rank ``n`` with its a-matrix."""

    __slots__ = ("amatrix", "rank", "prec")

    def __init__(self, amatrix, prec: int | None = None):
        rows = [tuple(Series.coerce(x, prec) for x in row) for row in amatrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("a-matrix must be square")
        if prec is None:
            prec = smat_prec(rows) if n else DEFAULT_PREC
        self.amatrix = tuple(tuple(x.truncate(min(x.prec, prec)) for x in r) for r in rows)
        self.rank = n
        self.prec = min(prec, smat_prec(self.amatrix)) if n else prec

    def entry(self, i, j) -> Series:
        return self.amatrix[i][j]

    def basis_vector(self, j) -> tuple:
        return tuple(Series.one(self.prec) if i == j else Series.zero(self.prec)
                     for i in range(self.rank))

    def zero_vector(self) -> tuple:
        return tuple(Series.zero(self.prec) for _ in range(self.rank))

    def __eq__(self, other):
        if not isinstance(other, ABModule):
            return NotImplemented
        return self.rank == other.rank and all(
            x == y for r, s in zip(self.amatrix, other.amatrix) for x, y in zip(r, s))

    __hash__ = None

    def __repr__(self):
        rows = "; ".join(", ".join(str(x) for x in r) for r in self.amatrix)
        return f"ABModule(rank={self.rank}, prec={self.prec}, [{rows}])"


def elementary(lam, prec: int | None = None) -> ABModule:
    """E_lambda: one generator with ``a e = lambda b e``."""
    lam = Scalar.coerce(lam)
    return ABModule([[Series.monomial(lam, 1, prec)]], prec)


def rank2_extension(lam1, lam2, prec: int | None = None) -> ABModule:
    """Basis (y, t) with ``a y = lam1 b y`` and ``a t = lam2 b t + y``."""
    lam1, lam2 = Scalar.coerce(lam1), Scalar.coerce(lam2)
    return ABModule([[Series.monomial(lam1, 1, prec), Series.one(prec)],
                     [Series.zero(prec), Series.monomial(lam2, 1, prec)]], prec)


def zero_module(prec: int | None = None) -> ABModule:
    return ABModule([], prec if prec is not None else DEFAULT_PREC)


def apply_a(E: ABModule, v) -> tuple:
    v = [Series.coerce(x, E.prec) for x in v]
    if len(v) != E.rank:
        raise ValueError("vector length does not match module rank")
    out = smat_vec(E.amatrix, v) if E.rank else []
    res = []
    for i, f in enumerate(v):
        if f.prec >= 2:
            res.append(out[i] + f.derivative().shift(2))
        else:
            res.append(out[i])
    return tuple(res)


def apply_a_matrix(E: ABModule, P):
    """a applied to each column of P."""
    cols = [apply_a(E, column(P, j)) for j in range(len(P[0]) if P else 0)]
    return columns_to_matrix(cols, E.rank)


def commutation_check(E: ABModule) -> bool:
    """Check ``a(b e_j) - b (a e_j) = b^2 e_j`` for every basis vector."""
    if E.prec < 3:
        raise PrecisionInconclusive("commutation check needs precision at least 3",
                                    case="commutation_check")
    N = E.prec - 2
    for j in range(E.rank):
        e = E.basis_vector(j)
        be = tuple(x.shift(1).truncate(E.prec) for x in e)
        lhs = apply_a(E, be)
        rhs = tuple(x.shift(1) for x in apply_a(E, e))
        b2e = tuple(x.shift(2) for x in e)
        for l, r, t in zip(lhs, rhs, b2e):
            if (l - r - t).truncate(N) != Series.zero(N):
                return False
    return True


def direct_sum(E: ABModule, F: ABModule) -> ABModule:
    prec = min(E.prec, F.prec)
    n, m = E.rank, F.rank
    rows = []
    for i in range(n):
        rows.append(list(E.amatrix[i]) + [Series.zero(prec) for _ in range(m)])
    for i in range(m):
        rows.append([Series.zero(prec) for _ in range(n)] + list(F.amatrix[i]))
    return ABModule(rows, prec)


def direct_sum_all(modules) -> ABModule:
    out = None
    for M in modules:
        out = M if out is None else direct_sum(out, M)
    return out if out is not None else zero_module()


def has_simple_pole(E: ABModule) -> bool:
    return all(x.valuation() >= 1 for row in E.amatrix for x in row)


def change_basis(E: ABModule, P) -> ABModule:
    """The same module written on the basis formed by the columns of P (P(0) invertible)."""
    if E.rank == 0:
        return E
    Pinv = smat_inverse(P)
    return ABModule(smat_mul(Pinv, apply_a_matrix(E, P)))


def complete_basis(cols, n, prec):
    """Extend vectors independent mod b by standard basis vectors (lowest index first)."""
    chosen = [list(c) for c in cols]
    const = [[x.coeffs[0] for x in c] for c in chosen]
    if rank(const) < len(const):
        raise NotNormal("vectors are dependent modulo b", case="complete_basis")
    for i in range(n):
        if len(chosen) == n:
            break
        unit = [ONE if k == i else ZERO for k in range(n)]
        if rank(const + [unit]) > len(const):
            const.append(unit)
            chosen.append([Series.one(prec) if k == i else Series.zero(prec) for k in range(n)])
    return chosen


# ---------------------------------------------------------------------------
# submodules


class Submodule:
    """A sub-object of ``ambient`` given by generator vectors.

    Dependent generators are replaced by a C[[b]]-basis of their span.
    """

    def __init__(self, ambient: ABModule, generators):
        self.ambient = ambient
        gens = [tuple(Series.coerce(x, ambient.prec) for x in g) for g in generators]
        if any(len(g) != ambient.rank for g in gens):
            raise ValueError("generator length does not match module rank")
        gens = [g for g in gens if not all(x.is_zero() for x in g)]
        if gens:
            el = eliminate(columns_to_matrix(gens, ambient.rank), ambient.rank)
            if el.rank < len(gens):
                gens = [tuple(v) for v in span_basis(columns_to_matrix(gens, ambient.rank),
                                                     ambient.rank)]
        self.generators = gens

    @property
    def rank(self) -> int:
        return len(self.generators)

    def matrix(self):
        return columns_to_matrix(self.generators, self.ambient.rank)

    def __repr__(self):
        return f"Submodule(rank={self.rank}, generators={self.generators!r})"


def membership(v, F: Submodule) -> bool:
    n = F.ambient.rank
    v = [Series.coerce(x, F.ambient.prec) for x in v]
    if F.rank == 0:
        return all(x.is_zero() for x in v)
    return solve_in_span(F.matrix(), v, n) is not None


def is_a_stable(F: Submodule) -> bool:
    if F.rank == 0:
        return True
    el = eliminate(F.matrix(), F.ambient.rank)
    if el.rank < F.rank or any(d >= el.prec for d in el.dvals):
        raise PrecisionInconclusive("generator matrix rank undecidable at this precision",
                                    case="is_a_stable")
    return all(membership(apply_a(F.ambient, g), F) for g in F.generators)


def is_normal(F: Submodule) -> bool:
    """Normal iff the generator matrix has full column rank modulo b."""
    if F.rank == 0:
        return True
    for g in F.generators:
        if all(x.is_zero() for x in g):
            raise PrecisionInconclusive("generator vanishes to working precision", case="is_normal")
    return rank(transpose(smat_const(F.matrix()))) == F.rank


@dataclass
class QuotientMap:
    """Projection E -> E/F for a normal F, with the adapted basis P = [F | complement]."""

    ambient: ABModule
    module: ABModule
    basis: list
    basis_inv: list
    k: int

    def __call__(self, v):
        w = smat_vec(self.basis_inv, list(v))
        return tuple(w[self.k:])

    def lift(self, w):
        """A preimage of the quotient vector ``w`` (coordinates in the quotient basis)."""
        cols = self.basis
        n = self.ambient.rank
        out = [Series.zero(self.ambient.prec) for _ in range(n)]
        for c, x in zip(range(self.k, n), w):
            for i in range(n):
                out[i] = out[i] + cols[i][c] * x
        return tuple(out)


def adapted_basis(E: ABModule, F: Submodule):
    cols = complete_basis(F.generators, E.rank, E.prec)
    return columns_to_matrix(cols, E.rank)


def quotient(E: ABModule, F: Submodule):
    """Return ``(E/F, projection)`` for a normal submodule F."""
    if F.ambient is not E and F.ambient != E:
        raise ValueError("submodule belongs to another module")
    if not is_normal(F):
        raise NotNormal("quotient by a non-normal submodule has b-torsion", case="quotient")
    k = F.rank
    P = adapted_basis(E, F)
    if E.rank == 0:
        return E, QuotientMap(E, E, [], [], 0)
    Pinv = smat_inverse(P)
    T = smat_mul(Pinv, apply_a_matrix(E, P))
    for i in range(k, E.rank):
        for j in range(k):
            if not T[i][j].is_zero():
                raise NotNormal("submodule is not a-stable", case="quotient")
    Q = ABModule([row[k:] for row in T[k:]], min(E.prec, smat_prec(T)))
    return Q, QuotientMap(E, Q, P, Pinv, k)


def restriction(E: ABModule, F: Submodule):
    """F as an (a,b)-module on its generators (F normal and a-stable)."""
    k = F.rank
    P = adapted_basis(E, F)
    T = smat_mul(smat_inverse(P), apply_a_matrix(E, P))
    for i in range(k, E.rank):
        for j in range(k):
            if not T[i][j].is_zero():
                raise NotNormal("submodule is not a-stable", case="restriction")
    return ABModule([row[:k] for row in T[:k]], min(E.prec, smat_prec(T)))


# ---------------------------------------------------------------------------
# regularity


def _nilpotent(A) -> bool:
    n = len(A)
    if n == 0:
        return True
    P = A
    for _ in range(n - 1):
        P = cmat_mul(P, A)
    return not any(x for row in P for x in row)


def saturation(E: ABModule):
    """The smallest simple-pole lattice L containing E, and E's basis in L-coordinates.

    Iterates ``L_{k+1} = L_k + b^{-1} a L_k``.  Returns ``(L, J)`` where the
    columns of J are the images of E's basis vectors.
    """
    n = E.rank
    if n == 0:
        return E, []
    # a induces a nilpotent endomorphism of E/bE on regular modules
    if not _nilpotent(smat_const(E.amatrix)):
        raise NotRegular("a mod b is not nilpotent", case="saturate")
    cur = E
    J = sidentity(n, E.prec)
    steps = 0
    while not has_simple_pole(cur):
        steps += 1
        if steps > n * E.prec:
            raise NotRegular("saturation did not stabilise", case="saturate")
        N = cur.prec
        if N < 4:
            raise PrecisionInconclusive("saturation exhausted the precision", case="saturate")
        G = [[Series.monomial(ONE, 1, N) if i == j else Series.zero(N) for j in range(n)]
             + list(cur.amatrix[i]) for i in range(n)]
        el = eliminate(G, n)
        if el.rank < n:
            raise PrecisionInconclusive("lattice rank undecidable", case="saturate")
        K = [[el.Rinv[i][j].shift(el.dvals[j]) for j in range(n)] for i in range(n)]
        aK = apply_a_matrix(cur, K)
        RaK = smat_mul(el.R, aK)
        newM = []
        for i in range(n):
            row = [x.divide_by_b(el.dvals[i]) for x in RaK[i]]
            row[i] = row[i] - Series.monomial(ONE, 1, row[i].prec)
            newM.append(row)
        RJ = smat_mul(el.R, J)
        J = [[x.shift(1 - el.dvals[i]) if el.dvals[i] <= 1 else x.divide_by_b(el.dvals[i] - 1)
              for x in RJ[i]] for i in range(n)]
        prec = min(smat_prec(newM), N - 1)
        cur = ABModule([[x.truncate(min(x.prec, prec)) for x in r] for r in newM], prec)
        J = [[x.truncate(min(x.prec, prec)) for x in r] for r in J]
    return cur, J


def saturate(E: ABModule) -> ABModule:
    return saturation(E)[0]


def is_regular(E: ABModule) -> bool:
    try:
        saturation(E)
    except NotRegular:
        return False
    return True


def subquotient(E: ABModule, small: Submodule, big: Submodule):
    """The module big/small for normal a-stable ``small ⊆ big``.

    Returns ``(module, B)`` where the columns of B are an adapted basis of
    ``big`` whose first ``small.rank`` vectors span ``small``.  The
    remaining columns lift the subquotient's basis.
    """
    n, k1, k2 = E.rank, small.rank, big.rank
    K = big.matrix()
    coords = []
    for g in small.generators:
        c = solve_in_span(K, g, n) if k2 else None
        if c is None:
            raise NotNormal("first submodule is not contained in the second", case="subquotient")
        coords.append(c)
    Pc = columns_to_matrix(complete_basis(coords, k2, E.prec), k2) if k2 else []
    B = smat_mul(K, Pc) if k2 else [[] for _ in range(n)]
    P = columns_to_matrix(complete_basis([column(B, j) for j in range(k2)], n, E.prec), n)
    T = smat_mul(smat_inverse(P), apply_a_matrix(E, P))
    for i in range(n):
        for j in range(k2):
            if (i >= k2 or (j < k1 <= i)) and not T[i][j].is_zero():
                raise NotNormal("submodule is not a-stable", case="subquotient")
    mod = ABModule([row[k1:k2] for row in T[k1:k2]], min(E.prec, smat_prec(T)) if n else E.prec)
    return mod, B
