"""Dual, conjugate and adjoint modules; E_0-valued (anti-)hermitian forms.

A form is stored as the matrix ``S`` with ``H(e_i, e_j) = S_ij(b) e_0``.
The second slot is conjugate-linear through ``b -> -b``::

    H(sum f_i e_i, sum g_j e_j) = sum f_i(b) conj_b(g_j)(b) S_ij(b)

In these coordinates a form on a module with a-matrix M is compatible with
``a`` iff ``b^2 S' = M^T S - S conj_b(M)`` and (anti-)hermitian iff
``S^T = sign * conj_b(S)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotWellDefined, PrecisionInconclusive
from .linalg import (column, det, nullspace, rref, smat_const, smat_mul,
                     smat_prec, transpose)
from .module import ABModule, Submodule, subquotient
from .scalars import I, ONE, ZERO, Scalar, is_nonneg_integer
from .series import Series

HERMITIAN = 1
ANTIHERMITIAN = -1

SIGN_NAMES = {HERMITIAN: "hermitian", ANTIHERMITIAN: "antihermitian"}


def sign_from_name(name: str) -> int:
    name = name.strip().lower().replace("-", "").replace("_", "")
    if name == "hermitian":
        return HERMITIAN
    if name == "antihermitian":
        return ANTIHERMITIAN
    raise ValueError(f"unknown form kind {name!r}")


def dual(E: ABModule) -> ABModule:
    """Hom(E, E_0) on the dual basis: ``(a phi)(x) = a phi(x) - phi(a x)`` gives ``-M^T``."""
    n = E.rank
    return ABModule([[-E.amatrix[j][i] for j in range(n)] for i in range(n)], E.prec)


def conjugate(E: ABModule) -> ABModule:
    """Same basis, actions ``-a`` and ``-b``: the a-matrix becomes ``-M(-b)``."""
    return ABModule([[-x.conj_b() for x in row] for row in E.amatrix], E.prec)


def adjoint(E: ABModule) -> ABModule:
    return conjugate(dual(E))


@dataclass(eq=False)
class SesquiForm:
    ambient: ABModule
    S: tuple
    sign: int = HERMITIAN

    def __post_init__(self):
        prec = self.ambient.prec
        self.S = tuple(tuple(Series.coerce(x, prec) for x in row) for row in self.S)
        n = self.ambient.rank
        if len(self.S) != n or any(len(r) != n for r in self.S):
            raise ValueError("form matrix must be n x n")
        if self.sign not in (HERMITIAN, ANTIHERMITIAN):
            raise ValueError("sign must be +1 or -1")

    @property
    def kind(self) -> str:
        return SIGN_NAMES[self.sign]

    @property
    def prec(self) -> int:
        return min(self.ambient.prec, smat_prec(self.S)) if self.ambient.rank else self.ambient.prec


def eval_form(H: SesquiForm, v, w) -> Series:
    n = H.ambient.rank
    prec = H.prec
    acc = Series.zero(prec)
    wc = [Series.coerce(x, prec).conj_b() for x in w]
    for i in range(n):
        fi = Series.coerce(v[i], prec)
        if fi.is_zero():
            continue
        row = Series.zero(prec)
        for j in range(n):
            if wc[j].is_zero() or H.S[i][j].is_zero():
                continue
            row = row + wc[j] * H.S[i][j]
        acc = acc + fi * row
    return acc


def form_matrix_in_basis(H: SesquiForm, cols):
    """Gram matrix ``H(c_a, c_b)`` of a list of vectors."""
    return [[eval_form(H, u, w) for w in cols] for u in cols]


def compatibility_defect(E: ABModule, S):
    """``b^2 S' - (M^T S - S conj_b(M))``, entrywise."""
    n = E.rank
    M = E.amatrix
    Mc = [[x.conj_b() for x in row] for row in M]
    lhs = smat_mul(transpose(M), S)
    rhs = smat_mul(S, Mc)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = S[i][j]
            d = s.derivative().shift(2) if s.prec >= 2 else Series.zero(s.prec)
            row.append(d - (lhs[i][j] - rhs[i][j]))
        out.append(row)
    return out


def check_form(H: SesquiForm) -> bool:
    """Symmetry and a-compatibility, both to precision ``prec - 2``."""
    N = H.prec - 2
    if N < 1:
        raise PrecisionInconclusive("form check needs precision at least 3", case="check_form")
    n = H.ambient.rank
    for i in range(n):
        for j in range(n):
            if (H.S[j][i] - H.S[i][j].conj_b() * H.sign).truncate(N) != Series.zero(N):
                return False
    for row in compatibility_defect(H.ambient, H.S):
        for x in row:
            if not x.truncate(N).is_zero():
                return False
    return True


def is_nondegenerate(H: SesquiForm) -> bool:
    if H.ambient.rank == 0:
        return True
    return bool(det(smat_const(H.S)))


def form_to_morphism(H: SesquiForm):
    """Matrix of ``y -> H(., y)`` from E to adjoint(E) on the distinguished bases."""
    return [[x.conj_b() for x in row] for row in H.S]


def morphism_to_form(Phi, E: ABModule, sign: int = HERMITIAN) -> SesquiForm:
    return SesquiForm(E, tuple(tuple(x.conj_b() for x in row) for row in Phi), sign)


def is_morphism(Phi, E: ABModule, F: ABModule) -> bool:
    """``Phi o a_E = a_F o Phi`` to precision ``prec - 2``."""
    from .module import apply_a_matrix
    lhs = smat_mul(Phi, [list(r) for r in E.amatrix])
    rhs = apply_a_matrix(F, Phi)
    N = min(E.prec, F.prec, smat_prec(Phi)) - 2
    return all((x - y).truncate(N).is_zero() for r, s in zip(lhs, rhs) for x, y in zip(r, s))


def solve_E0(mu, prec: int | None = None):
    """The solution of ``b^2 S' = mu b S`` with leading coefficient 1, or None.

    Order k of the equation reads ``(k - mu) S_k = 0``.
    """
    mu = Scalar.coerce(mu)
    if not is_nonneg_integer(mu):
        return None
    k = int(mu.re)
    prec = Series.zero(prec).prec if prec is None else prec
    if k >= prec:
        raise PrecisionInconclusive(f"b^{k} is invisible at precision {prec}", case="solve_E0")
    return Series.monomial(ONE, k, prec)


def hyperbolic(E: ABModule, sign: int = HERMITIAN) -> SesquiForm:
    """``[[0, I], [sign I, 0]]`` on a module of even rank split into two halves."""
    n = E.rank
    h = n // 2
    S = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < h and j == i + h:
                row.append(Series.one(E.prec))
            elif i >= h and j == i - h:
                row.append(Series.const(Scalar(sign), E.prec))
            else:
                row.append(Series.zero(E.prec))
        S.append(row)
    return SesquiForm(E, S, sign)


# ---------------------------------------------------------------------------
# form search

SAMPLE_SCALARS = (ZERO, ONE, -ONE, I, -I, Scalar("1/2"), Scalar("-1/2"))
SAMPLE_BUDGET = 200


def _sparse_coeffs(M, N):
    """For each order l < N the nonzero entries (i, k, value) of M_l."""
    n = len(M)
    out = []
    for l in range(N):
        out.append([(i, k, M[i][k].coeffs[l]) for i in range(n) for k in range(n)
                    if l < M[i][k].prec and M[i][k].coeffs[l]])
    return out


def _form_solutions(E: ABModule, sign: int):
    """Basis of the solution space, each solution a list of n*n flat coefficient arrays."""
    n = E.rank
    N = E.prec
    nn = n * n
    Ml = _sparse_coeffs(E.amatrix, N)
    sols = []
    for m in range(N):
        # residual of the order-m equation from the known orders < m
        res = []
        for s in sols:
            r = [ZERO] * nn
            if m >= 1:
                prev = s[m - 1]
                if m - 1:
                    f = Scalar(m - 1)
                    for idx in range(nn):
                        if prev[idx]:
                            r[idx] = r[idx] - prev[idx] * f
            for l in range(1, m + 1):
                if not Ml[l]:
                    continue
                X = s[m - l]
                sg = -1 if l % 2 else 1
                for (i, k, v) in Ml[l]:
                    # (M_l^T X)_{k j} += M_l[i][k] X_{i j}
                    for j in range(n):
                        x = X[i * n + j]
                        if x:
                            r[k * n + j] = r[k * n + j] + v * x
                    # -(X conj(M)_l)_{j k} = -sg X_{j i} M_l[i][k]
                    for j in range(n):
                        x = X[j * n + i]
                        if x:
                            t = v * x
                            r[j * n + k] = r[j * n + k] - (t if sg == 1 else -t)
            res.append(r)
        q = len(sols)
        ncols = nn + q
        rows = []
        M0 = Ml[0]
        for i in range(n):
            for j in range(n):
                row = [ZERO] * ncols
                # M_0^T X - X M_0 on the unknown X = S_m
                for (a, k, v) in M0:
                    if k == i:
                        row[a * n + j] = row[a * n + j] + v
                    if k == j:
                        row[i * n + a] = row[i * n + a] - v
                for s_idx in range(q):
                    row[nn + s_idx] = res[s_idx][i * n + j]
                rows.append(row)
        sym = sign * (-1 if m % 2 else 1)
        for i in range(n):
            for j in range(i, n):
                row = [ZERO] * ncols
                row[j * n + i] = row[j * n + i] + ONE
                row[i * n + j] = row[i * n + j] - Scalar(sym)
                if any(row):
                    rows.append(row)
        rows = [r for r in rows if any(r)]
        basis = nullspace(rows, ncols)
        new = []
        for vec in basis:
            X = vec[:nn]
            c = vec[nn:]
            combo = []
            for order in range(m):
                acc = [ZERO] * nn
                for s_idx, cs in enumerate(c):
                    if cs:
                        src = sols[s_idx][order]
                        for idx in range(nn):
                            if src[idx]:
                                acc[idx] = acc[idx] + cs * src[idx]
                combo.append(acc)
            combo.append(list(X))
            new.append(combo)
        sols = new
    return sols


def _truncated_basis(sols, prec, nn):
    """Drop solutions invisible below ``prec`` and re-reduce the rest."""
    flat = [[x for order in s[:prec] for x in order] for s in sols]
    R, piv = rref(flat)
    return [[R[r][k * nn:(k + 1) * nn] for k in range(prec)] for r in range(len(piv))]


def _to_form(E, sol, sign, prec):
    n = E.rank
    S = [[Series([sol[k][i * n + j] for k in range(prec)], prec) for j in range(n)]
         for i in range(n)]
    return SesquiForm(E, S, sign)


def find_form(E: ABModule, sign: int = HERMITIAN):
    """Basis of compatible forms of the given sign, plus a nondegenerate sample or None.

    The top order of each solution is not constrained by any equation, so
    the returned forms carry precision ``prec - 1``.
    """
    if E.prec < 3:
        raise PrecisionInconclusive("form search needs precision at least 3", case="find_form")
    if E.rank == 0:
        H = SesquiForm(E, (), sign)
        return [H], H
    prec = E.prec - 1
    sols = _truncated_basis(_form_solutions(E, sign), prec, E.rank * E.rank)
    forms = [_to_form(E, s, sign, prec) for s in sols]
    return forms, _sample_nondegenerate(forms)


def _sample_nondegenerate(forms):
    if not forms:
        return None
    n = forms[0].ambient.rank
    consts = [smat_const(H.S) for H in forms]
    useful = [k for k, C in enumerate(consts) if any(x for row in C for x in row)]
    nonzero = SAMPLE_SCALARS[1:]
    budget = SAMPLE_BUDGET
    # a generic combination is nondegenerate whenever any is, so wide supports go first
    for size in range(len(useful), 0, -1):
        for support in itertools.combinations(useful, size):
            for coeffs in itertools.product(nonzero, repeat=size):
                if budget == 0:
                    return None
                budget -= 1
                C = [[sum((c * consts[k][i][j] for k, c in zip(support, coeffs)), ZERO)
                      for j in range(n)] for i in range(n)]
                if det(C):
                    return _combine(forms, support, coeffs)
    return None


def _combine(forms, support, coeffs):
    H0 = forms[0]
    n = H0.ambient.rank
    S = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Series.zero(H0.prec)
            for k, c in zip(support, coeffs):
                acc = acc + forms[k].S[i][j] * c
            row.append(acc)
        S.append(row)
    return SesquiForm(H0.ambient, S, H0.sign)


def induced_form(H: SesquiForm, F1: Submodule, Fn1: Submodule):
    """The form induced on ``Fn1/F1``; requires ``H(F1, Fn1) = 0``.

    Returns ``(form, lifts)`` where ``lifts`` are vectors of the ambient
    module lifting the subquotient's basis.
    """
    E = H.ambient
    mod, B = subquotient(E, F1, Fn1)
    k1, k2 = F1.rank, Fn1.rank
    cols = [column(B, j) for j in range(k2)]
    for g in F1.generators:
        for w in cols:
            if not eval_form(H, g, w).is_zero():
                raise NotWellDefined("first submodule is not orthogonal to the second",
                                     case="induced_form")
    mid = cols[k1:]
    S = form_matrix_in_basis(H, mid)
    return SesquiForm(mod, S, H.sign), mid
