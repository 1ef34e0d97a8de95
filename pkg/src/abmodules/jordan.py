"""Normal elementary submodules, Jordan-Hölder series and quotient permutation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (Blocked, InvalidInput, NotNormal, NotSimplePole,
                     PrecisionInconclusive, SameClass)
from .linalg import (cinverse, column, columns_to_matrix, eigenvalues, eliminate,
                     nullspace, rank, rref, smat_const, smat_inverse, smat_mul,
                     smat_vec)
from .module import (ABModule, Submodule, apply_a, apply_a_matrix, quotient,
                     saturation)
from .scalars import ONE, ZERO, Scalar, class_key, congruent_mod_Z
from .series import INFINITE, Series

# ---------------------------------------------------------------------------
# rank one


def normalize_rank1(E: ABModule):
    """For ``a e = g(b) b e`` return ``(g(0), u)`` with ``a(u e) = g(0) b (u e)``, ``u(0) = 1``."""
    if E.rank != 1:
        raise InvalidInput("rank-1 module expected", case="normalize_rank1")
    m = E.amatrix[0][0]
    if m.valuation() < 1:
        raise NotSimplePole("a e is not divisible by b", case="normalize_rank1")
    g = m.divide_by_b(1)
    lam = g.coeffs[0]
    # b u' + (g - lam) u = 0 order by order
    u = [ONE]
    for k in range(1, g.prec):
        acc = ZERO
        for l in range(1, k + 1):
            if g.coeffs[l]:
                acc = acc + g.coeffs[l] * u[k - l]
        u.append(-(acc / Scalar(k)))
    return lam, Series(u, g.prec)


def vector_param(E: ABModule, v):
    """The mu with ``a v = mu b v`` (to precision), or None."""
    av = apply_a(E, v)
    k = min(x.valuation() for x in v)
    if k == INFINITE:
        return None
    i = next(i for i, x in enumerate(v) if x.valuation() == k)
    if k + 1 >= av[i].prec:
        raise PrecisionInconclusive("vector too deep for precision", case="vector_param")
    mu = av[i].coeffs[k + 1] / v[i].coeffs[k]
    for x, y in zip(av, v):
        if x != y.shift(1) * mu:
            return None
    return mu


# ---------------------------------------------------------------------------
# elementary vectors


@dataclass
class ElementaryFamily:
    """Elementary vectors of one parameter ``mu`` in E.

    ``reps`` are normal generators independent modulo b; ``torsion`` spans
    the elementary vectors of parameter ``mu`` lying in bE.
    """

    param: Scalar
    reps: list
    torsion: list = field(default_factory=list)


def _eigen_solutions(A, mu, N):
    """Basis of solutions of ``(A_0 + m - mu) v_m = -sum_{l>=1} A_l v_{m-l}``, m < N."""
    n = len(A[0])
    nz = [[(i, k, A[l][i][k]) for i in range(n) for k in range(n) if A[l][i][k]]
          for l in range(N)]
    sols = []
    for m in range(N):
        q = len(sols)
        rows = []
        T = [[A[0][i][k] + (Scalar(m) - mu if i == k else ZERO) for k in range(n)]
             for i in range(n)]
        rhs = []
        for s in sols:
            r = [ZERO] * n
            for l in range(1, m + 1):
                v = s[m - l]
                for i, k, a in nz[l]:
                    if v[k]:
                        r[i] = r[i] + a * v[k]
            rhs.append(r)
        for i in range(n):
            rows.append(list(T[i]) + [rhs[s][i] for s in range(q)])
        basis = nullspace(rows, n + q)
        new = []
        for vec in basis:
            X, c = vec[:n], vec[n:]
            combo = []
            for order in range(m):
                acc = [ZERO] * n
                for si, cs in enumerate(c):
                    if cs:
                        src = sols[si][order]
                        acc = [x + cs * y for x, y in zip(acc, src)]
                combo.append(acc)
            combo.append(list(X))
            new.append(combo)
        sols = new
    # drop solutions invisible at this precision and re-reduce
    flat = [[x for order in s for x in order] for s in sols]
    R, piv = rref(flat)
    return [[[R[r][o * n + i] for i in range(n)] for o in range(N)] for r in range(len(piv))]


def _as_vector(sol, n, N):
    return tuple(Series([sol[o][i] for o in range(N)], N) for i in range(n))


def _normalize_rep(v):
    c0 = next(x.coeffs[0] for x in v if x.coeffs[0])
    inv = c0.inverse()
    return tuple(x * inv for x in v)


def _sort_families(fams):
    """Classes by their least parameter (re, im); within a class the maximal one first."""
    least = {}
    for f in fams:
        k = class_key(f.param)
        least[k] = min(least.get(k, (f.param.re, f.param.im)), (f.param.re, f.param.im))
    fams.sort(key=lambda f: (least[class_key(f.param)], class_key(f.param), -f.param.re, -f.param.im))


def elementary_families(E: ABModule):
    """All elementary families of E in canonical order (see :func:`_sort_families`)."""
    n = E.rank
    if n == 0:
        return []
    L, J = saturation(E)
    NL = L.prec
    N = NL - 1
    if N < 2:
        raise PrecisionInconclusive("precision too low to solve for elementary vectors",
                                    case="find_normal_elementary")
    Aser = [[x.divide_by_b(1) for x in row] for row in L.amatrix]
    A = [[[Aser[i][k].coeffs[l] for k in range(n)] for i in range(n)] for l in range(N)]
    rhos = eigenvalues(A[0], case="find_normal_elementary")
    elJ = eliminate(J, n)
    s = max(elJ.dvals, default=0)
    cands = []
    for r in rhos:
        for m in range(s + 1):
            mu = r + Scalar(m)
            if mu not in cands:
                cands.append(mu)
    fams = []
    for mu in cands:
        sols = _eigen_solutions(A, mu, N)
        if not sols:
            continue
        vecs = [_as_vector(sol, n, N) for sol in sols]
        fam = _restrict_to_E(vecs, elJ, n, mu)
        if fam is not None:
            fams.append(fam)
    _sort_families(fams)
    return fams


def _restrict_to_E(vecs, elJ, n, mu):
    """Intersect the span of ``vecs`` (L-coordinates) with E and bE; express in E-coordinates."""
    d = elJ.dvals
    W = [smat_vec(elJ.R, list(v)) for v in vecs]
    q = len(vecs)
    prec = min(x.prec for w in W for x in w)
    if max(d, default=0) + 1 >= prec:
        raise PrecisionInconclusive("lattice index exceeds precision", case="find_normal_elementary")

    def constraints(extra):
        rows = []
        for i in range(n):
            for k in range(d[i] + extra):
                row = [W[s][i].coeffs[k] for s in range(q)]
                if any(row):
                    rows.append(row)
        return rows

    in_E = nullspace(constraints(0), q)
    in_bE = nullspace(constraints(1), q)

    def to_E(c):
        w = [sum((W[s][i] * cs for s, cs in enumerate(c) if cs), Series.zero(prec))
             for i in range(n)]
        y = [w[i].divide_by_b(d[i]) for i in range(n)]
        return tuple(smat_vec(elJ.C, y))

    U = [to_E(c) for c in in_E]
    T = [to_E(c) for c in in_bE]
    reps, consts = [], []
    for u in U:
        c0 = [x.coeffs[0] for x in u]
        if any(c0) and rank(consts + [c0]) > len(consts):
            consts.append(c0)
            reps.append(_normalize_rep(u))
    if not reps and not T:
        return None
    return ElementaryFamily(mu, reps, T)


def find_normal_elementary(E: ABModule):
    """List of ``(mu, e)`` with ``a e = mu b e`` and ``e`` not in bE, in canonical order."""
    return [(f.param, e) for f in elementary_families(E) for e in f.reps]


# ---------------------------------------------------------------------------
# composition series


@dataclass(eq=False)
class CompositionSeries:
    """A full flag given by basis columns: ``F_j`` is spanned by the first ``j`` columns."""

    ambient: ABModule
    basis: list
    params: list

    @property
    def steps(self):
        return [Submodule(self.ambient, self.basis[:j]) for j in range(len(self.basis) + 1)]

    def matrix(self):
        return columns_to_matrix(self.basis, self.ambient.rank)

    def triangular(self) -> ABModule:
        """The a-matrix on the flag basis (upper triangular)."""
        P = self.matrix()
        return ABModule(smat_mul(smat_inverse(P), apply_a_matrix(self.ambient, P)))

    def __len__(self):
        return len(self.basis)


def series_from_flag(E: ABModule, cols) -> CompositionSeries:
    """Validate a flag basis and read off the quotient parameters."""
    n = E.rank
    cols = [tuple(c) for c in cols]
    if len(cols) != n:
        raise InvalidInput("flag must have one vector per rank", case="series")
    if n == 0:
        return CompositionSeries(E, [], [])
    P = columns_to_matrix(cols, n)
    if rank(smat_const(P)) < n:
        raise NotNormal("flag steps are not normal", case="series")
    T = smat_mul(smat_inverse(P), apply_a_matrix(E, P))
    params = []
    for j in range(n):
        for i in range(j + 1, n):
            if not T[i][j].is_zero():
                raise NotNormal(f"flag step {j + 1} is not a-stable", case="series")
        d = T[j][j]
        if d.coeffs[0]:
            raise NotSimplePole("quotient is not regular", case="series")
        params.append(d.coeffs[1])
    return CompositionSeries(E, cols, params)


def _pick_first(cands):
    return 0


def jh_series(E: ABModule, chooser=None) -> CompositionSeries:
    """Jordan-Hölder series built from the first normal elementary submodule at each step.

    ``chooser`` receives the candidate list ``[(mu, e), ...]`` and returns
    the index to use; it lets tests force alternative orderings.
    """
    cols = _jh_columns(E, chooser or _pick_first)
    return series_from_flag(E, cols)


def _jh_columns(E, chooser):
    if E.rank == 0:
        return []
    cands = find_normal_elementary(E)
    if not cands:
        raise PrecisionInconclusive("no normal elementary submodule found", case="jh_series")
    _, e = cands[chooser(cands)]
    Q, proj = quotient(E, Submodule(E, [e]))
    rest = _jh_columns(Q, chooser)
    return [tuple(e)] + [proj.lift(c) for c in rest]


def _swap_vector(G: ABModule, l1, l2):
    """For G in the exact form ``a y = l1 b y``, ``a t = l2 b t + y`` return ``y + (l2-l1+1) b t``."""
    M = G.amatrix
    p = G.prec
    if (M[0][0] == Series.monomial(l1, 1, p) and M[1][1] == Series.monomial(l2, 1, p)
            and M[0][1] == Series.one(p) and M[1][0].is_zero()):
        return (Series.one(p), Series.monomial(l2 - l1 + ONE, 1, p))
    return None


def permute_quotients(E: ABModule, S: CompositionSeries, j: int) -> CompositionSeries:
    """Swap the classes of quotients ``j`` and ``j+1`` (1-based)."""
    n = E.rank
    if not 1 <= j < n:
        raise InvalidInput("index out of range", case="permute_quotients")
    lj, lk = S.params[j - 1], S.params[j]
    if congruent_mod_Z(lj, lk):
        raise SameClass(f"quotients {j} and {j + 1} share a class mod Z", case="permute_quotients")
    T = S.triangular()
    a, b = j - 1, j
    G = ABModule([[T.amatrix[a][a], T.amatrix[a][b]], [T.amatrix[b][a], T.amatrix[b][b]]])
    x = _swap_vector(G, lj, lk)
    if x is None:
        for fam in elementary_families(G):
            if congruent_mod_Z(fam.param, lk) and fam.reps:
                x = fam.reps[0]
                break
    if x is None:
        raise PrecisionInconclusive("no elementary vector in the target class", case="permute_quotients")
    pa, pb = S.basis[a], S.basis[b]
    xt = tuple(u * x[0] + w * x[1] for u, w in zip(pa, pb))
    other = pa if x[1].coeffs[0] else pb
    cols = list(S.basis)
    cols[a], cols[b] = xt, other
    return series_from_flag(E, cols)


def rearrange_series(E: ABModule, S: CompositionSeries, lam, position: str = "first",
                     source: int | None = None) -> CompositionSeries:
    """Bubble a quotient of class ``lam`` to the first or last position.

    ``source`` (0-based) selects which quotient moves; by default the one
    nearest the target end.
    """
    lam = Scalar.coerce(lam)
    idx = [k for k, p in enumerate(S.params) if congruent_mod_Z(p, lam)]
    if not idx:
        raise InvalidInput("no quotient of the requested class", case="rearrange_series")
    if position not in ("first", "last"):
        raise ValueError("position must be 'first' or 'last'")
    if source is None:
        source = idx[0] if position == "first" else idx[-1]
    elif source not in idx:
        raise InvalidInput("source quotient is not of the requested class", case="rearrange_series")
    cur = S
    p = source
    if position == "first":
        while p > 0:
            if congruent_mod_Z(cur.params[p - 1], cur.params[p]):
                raise Blocked(f"swap at {p} meets the same class", case="rearrange_series", index=p)
            cur = permute_quotients(E, cur, p)
            p -= 1
    else:
        while p < len(cur.params) - 1:
            if congruent_mod_Z(cur.params[p], cur.params[p + 1]):
                raise Blocked(f"swap at {p + 1} meets the same class", case="rearrange_series",
                              index=p + 1)
            cur = permute_quotients(E, cur, p + 1)
            p += 1
    return cur


# ---------------------------------------------------------------------------
# rank two


@dataclass(frozen=True)
class Split:
    lam: Scalar
    mu: Scalar

    def params(self):
        return (self.lam, self.mu)

    def __str__(self):
        return f"Split({self.lam}, {self.mu})"


@dataclass(frozen=True)
class Ext:
    """Non-split: sub-parameter ``lam1``, quotient parameter ``lam2``."""

    lam1: Scalar
    lam2: Scalar

    def params(self):
        return (self.lam1, self.lam2)

    def __str__(self):
        return f"Ext({self.lam1}, {self.lam2})"


def classify_rank2(E: ABModule):
    if E.rank != 2:
        raise InvalidInput("rank-2 module expected", case="classify_rank2")
    fams = elementary_families(E)
    flat = [(f.param, e) for f in fams for e in f.reps]
    if not flat:
        raise PrecisionInconclusive("no normal elementary submodule found", case="classify_rank2")
    mu, e1 = flat[0]
    c1 = [x.coeffs[0] for x in e1]
    for nu, e2 in flat[1:]:
        if rank([c1, [x.coeffs[0] for x in e2]]) == 2:
            return Split(mu, nu)
    Q, _ = quotient(E, Submodule(E, [e1]))
    lam2, _ = normalize_rank1(Q)
    return Ext(mu, lam2)
