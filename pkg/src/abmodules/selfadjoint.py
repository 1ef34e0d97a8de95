"""Self-adjoint Jordan-Hölder series for hermitian and anti-hermitian modules.

The output of every construction here is a :class:`SelfAdjointCertificate`:
a list of blocks (module, form matrix, sign) and a flag basis of their
direct sum whose quotient parameters satisfy ``lambda_{n-j+1} = -lambda_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (ABModuleError, CaseAnalysisExhausted, CenterNotE0,
                     DegenerateForm, FormShapeViolation, InvalidForm,
                     InvalidInput, NotIsotropic, NotSelfAdjoint,
                     RootNotInField)
from .forms import (ANTIHERMITIAN, HERMITIAN, SesquiForm, adjoint, check_form,
                    eval_form, induced_form, is_nondegenerate)
from .jordan import (CompositionSeries, elementary_families, jh_series,
                     normalize_rank1, rearrange_series, series_from_flag,
                     vector_param)
from .linalg import (columns_to_matrix, eliminate, smat_inverse, transpose,
                     vec_valuation)
from .module import (ABModule, Submodule, complete_basis, direct_sum,
                     direct_sum_all, membership, saturation)
from .scalars import ONE, ZERO, Scalar, class_key, congruent_mod_Z, sqrt_in_field
from .series import Series

HALF = Scalar("1/2")


@dataclass(eq=False)
class FormBlock:
    """One orthogonal summand: a module with a nondegenerate form.

    ``kind`` is ``hermitian``, ``antihermitian`` or ``pair``; a pair block
    is ``G ⊕ adjoint(G)`` with the hyperbolic pairing and remembers ``G``.
    """

    module: ABModule
    S: tuple
    sign: int
    kind: str
    generator: ABModule | None = None

    def form(self) -> SesquiForm:
        return SesquiForm(self.module, self.S, self.sign)


@dataclass(eq=False)
class SelfAdjointCertificate:
    blocks: list
    columns: list  # (block index, vector in block coordinates)
    params: list
    cases: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.columns)

    @property
    def ambient(self) -> ABModule:
        return direct_sum_all([b.module for b in self.blocks])

    def embedded_columns(self):
        offsets, off = [], 0
        for b in self.blocks:
            offsets.append(off)
            off += b.module.rank
        prec = min((b.module.prec for b in self.blocks), default=1)
        out = []
        for k, v in self.columns:
            vec = [Series.zero(prec) for _ in range(off)]
            for i, x in enumerate(v):
                vec[offsets[k] + i] = x
            out.append(tuple(vec))
        return out

    def series(self) -> CompositionSeries:
        return series_from_flag(self.ambient, self.embedded_columns())


@dataclass(eq=False)
class SummandSpec:
    kind: str  # hermitian | antihermitian | pair
    module: ABModule
    S: tuple | None = None


def HermitianBlock(E, S) -> SummandSpec:
    return SummandSpec("hermitian", E, S)


def AntiHermitianBlock(E, S) -> SummandSpec:
    return SummandSpec("antihermitian", E, S)


def PairBlock(G) -> SummandSpec:
    return SummandSpec("pair", G, None)


# ---------------------------------------------------------------------------
# building blocks


def annihilator_pair(E: ABModule, H: SesquiForm, F1: Submodule) -> Submodule:
    """``{x : H(e, x) = 0}`` for an isotropic normal elementary ``F1 = span(e)``."""
    if F1.rank != 1:
        raise InvalidInput("rank-1 submodule expected", case="annihilator_pair")
    if not is_nondegenerate(H):
        raise DegenerateForm("form is degenerate", case="annihilator_pair")
    e = F1.generators[0]
    if not eval_form(H, e, e).is_zero():
        raise NotIsotropic("generator is not isotropic", case="annihilator_pair")
    n = E.rank
    # x -> H(e, x) = sum_j conj_b(x_j) r_j, so the kernel is cut out by conj_b(r)
    r = [sum((e[i] * H.S[i][j] for i in range(n)), Series.zero(H.prec)) for j in range(n)]
    row = [[x.conj_b() for x in r]]
    el = eliminate(row, 1)
    if el.rank == 0:
        raise DegenerateForm("row map vanishes to working precision", case="annihilator_pair")
    kernel = [tuple(el.C[i][j] for i in range(n)) for j in range(1, n)]
    Fn1 = Submodule(E, kernel)
    if not membership(e, Fn1):
        raise NotIsotropic("generator is not in its annihilator", case="annihilator_pair")
    return Fn1


def _b_power_part(h: Series, k: int):
    """The scalar c with ``h = c b^k`` (k may be any integer >= 0), or raise."""
    if h.is_zero():
        return ZERO
    if k < 0 or k >= h.prec:
        raise FormShapeViolation("value is not a multiple of b^(2f)", case="find_isotropic")
    for i, c in enumerate(h.coeffs):
        if c and i != k:
            raise FormShapeViolation("value is not a multiple of b^(2f)", case="find_isotropic")
    return h.coeffs[k]


def find_isotropic(E: ABModule, H: SesquiForm, F: Submodule, G: Submodule):
    """An isotropic normal elementary vector in the span of two elementary ones of one class."""
    ef, eg = F.generators[0], G.generators[0]
    f, g = vector_param(E, ef), vector_param(E, eg)
    if f is None or g is None:
        raise InvalidInput("generators are not elementary", case="find_isotropic")
    if not congruent_mod_Z(f, g):
        raise InvalidInput("parameters are not congruent mod Z", case="find_isotropic")
    if (f - g).re < 0:
        ef, eg, f, g = eg, ef, g, f
    shift = int((f - g).re)
    e1 = tuple(x.shift(shift).truncate(x.prec) for x in eg)
    V = (ef, e1)
    two_f = f + f
    k = int(two_f.re) if two_f.is_integer() else -1
    B = [[_b_power_part(eval_form(H, v, w), k) for w in V] for v in V]
    if not any(x for row in B for x in row):
        return _normalize_vector(ef)
    # B(w, v) = sign (-1)^(2f) B(v, w)
    parity = H.sign * (-1 if k % 2 else 1)
    if parity == -1:
        return _check_isotropic(H, _normalize_vector(ef))
    a0, a1, a2 = B[0][0], B[0][1] + B[1][0], B[1][1]
    if not a0:
        e = ef
    elif not a2:
        if a1:
            x = -a0 / a1
            e = tuple(u + w * x for u, w in zip(ef, e1))
        else:
            e = e1
    else:
        s = sqrt_in_field(a1 * a1 - a0 * a2 * Scalar(4))
        if s is None:
            raise RootNotInField("isotropic direction needs a quadratic extension",
                                 case="find_isotropic")
        roots = [(-a1 + s) / (a2 * Scalar(2)), (-a1 - s) / (a2 * Scalar(2))]
        x = max(roots, key=lambda z: (z.re, z.im))
        e = tuple(u + w * x for u, w in zip(ef, e1))
    return _check_isotropic(H, _normalize_vector(e))


def _normalize_vector(e):
    k = vec_valuation(e)
    if k == float("inf"):
        raise InvalidInput("isotropic combination vanishes", case="find_isotropic")
    return tuple(x.divide_by_b(k) for x in e)


def _check_isotropic(H, e):
    if not eval_form(H, e, e).is_zero():
        raise NotIsotropic("constructed vector is not isotropic", case="find_isotropic")
    return e


# ---------------------------------------------------------------------------
# hermitian and anti-hermitian modules


def _classes(params):
    return sorted(class_key(p) for p in params)


def structural_obstruction(E: ABModule):
    """Raise NotSelfAdjoint when the Jordan-Hölder classes forbid self-adjointness."""
    saturation(E)
    if E.rank == 0:
        return
    params = jh_series(E).params
    cl = _classes(params)
    if E.rank == 2 and set(cl) == {class_key(ZERO), class_key(HALF)}:
        raise NotSelfAdjoint("rank 2 with classes 0 and 1/2 mod Z is never self-adjoint",
                             case="case-4")
    if cl != _classes([-p for p in params]):
        raise NotSelfAdjoint("class multiset is not symmetric under negation",
                             case="class-multiset")


def selfadjoint_jh(E: ABModule, H: SesquiForm, mode: str = "scan") -> SelfAdjointCertificate:
    """Self-adjoint Jordan-Hölder series for a nondegenerate (anti-)hermitian form.

    ``mode="scan"`` takes any isotropic normal elementary vector first.
    ``mode="deferred"`` skips classes 0 and 1/2 in that first scan for
    hermitian forms, which exercises the unique-submodule route.
    """
    if mode not in ("scan", "deferred"):
        raise ValueError("mode must be 'scan' or 'deferred'")
    structural_obstruction(E)
    if not check_form(H):
        raise InvalidForm("form fails symmetry or a-compatibility", case="selfadjoint_jh")
    if not is_nondegenerate(H):
        raise DegenerateForm("form is degenerate", case="selfadjoint_jh")
    cases = []
    cols, params = _sajh(E, H, mode, cases)
    block = FormBlock(E, H.S, H.sign, H.kind)
    return SelfAdjointCertificate([block], [(0, c) for c in cols], params, cases)


def _sajh(E, H, mode, cases):
    n = E.rank
    if n == 0:
        return [], []
    if n == 1:
        lam, u = normalize_rank1(E)
        if lam:
            raise InvalidForm("rank-1 quotient with a nondegenerate form must be E_0",
                              case="selfadjoint_jh")
        return [(u,)], [lam]
    if n == 2:
        structural_obstruction(E)
    e, Fn1, case = _inductive_step(E, H, mode)
    cases.append(case)
    F1 = Submodule(E, [e])
    Hmid, lifts = induced_form(H, F1, Fn1)
    mid_cols, _ = _sajh(Hmid.ambient, Hmid, mode, cases)
    lifted = []
    for c in mid_cols:
        v = [Series.zero(E.prec) for _ in range(n)]
        for coef, w in zip(c, lifts):
            v = [x + y * coef for x, y in zip(v, w)]
        lifted.append(tuple(v))
    z = complete_basis(Fn1.generators, n, E.prec)[-1]
    cols = [tuple(e)] + lifted + [tuple(z)]
    S = series_from_flag(E, cols)
    p = S.params
    if any(p[-1 - j] != -p[j] for j in range(n)):
        raise ABModuleError("constructed series is not self-adjoint", case=f"case-{case}")
    return cols, p


def _candidates(fams):
    """Normal elementary generators: representatives, then representatives plus torsion."""
    out = []
    for f in fams:
        for r in f.reps:
            out.append((f.param, r))
    for f in fams:
        for r in f.reps:
            for t in f.torsion:
                out.append((f.param, tuple(x + y for x, y in zip(r, t))))
    return out


def _distinct(E, u, v):
    return not membership(v, Submodule(E, [u]))


def _inductive_step(E, H, mode):
    fams = elementary_families(E)
    special = {class_key(ZERO), class_key(HALF)}
    skip_special = mode == "deferred" and H.sign == HERMITIAN

    # (1) an isotropic normal elementary generator
    for f in fams:
        if skip_special and class_key(f.param) in special:
            continue
        for e in f.reps:
            if eval_form(H, e, e).is_zero():
                return e, annihilator_pair(E, H, Submodule(E, [e])), "1"

    # (2) two distinct normal elementary submodules in one class
    cands = _candidates(fams)
    root_failure = None
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            (mu, u), (nu, v) = cands[i], cands[j]
            if not congruent_mod_Z(mu, nu) or not _distinct(E, u, v):
                continue
            try:
                e = find_isotropic(E, H, Submodule(E, [u]), Submodule(E, [v]))
            except RootNotInField as exc:
                root_failure = exc
                continue
            return e, annihilator_pair(E, H, Submodule(E, [e])), "2"

    # (3) a unique normal elementary submodule in a class met twice in the series
    for f in fams:
        same = [g for g in fams if congruent_mod_Z(g.param, f.param)]
        # rep + torsion of the same parameter would be a second submodule
        if sum(len(g.reps) for g in same) != 1 or not f.reps or f.torsion:
            continue
        e = f.reps[0]
        step = _unique_route(E, H, f.param, e)
        if step is not None:
            return e, step, "3"

    if skip_special:
        for f in fams:
            for e in f.reps:
                if eval_form(H, e, e).is_zero():
                    return e, annihilator_pair(E, H, Submodule(E, [e])), "1"
    if root_failure is not None:
        raise root_failure
    raise CaseAnalysisExhausted("no case of the induction applies", case="selfadjoint_jh")


def _unique_route(E, H, lam, e):
    from .module import quotient
    Q, proj = quotient(E, Submodule(E, [e]))
    rest = jh_series(Q)
    cols = [tuple(e)] + [proj.lift(c) for c in rest.basis]
    S = series_from_flag(E, cols)
    idx = [k for k, p in enumerate(S.params) if congruent_mod_Z(p, lam)]
    if len(idx) < 2:
        return None
    S = rearrange_series(E, S, lam, "last", source=idx[-1])
    if S.params[-1] != -S.params[0]:
        return None
    return Submodule(E, S.basis[:-1])


# ---------------------------------------------------------------------------
# direct sums


def adjoint_series(G: ABModule, S: CompositionSeries) -> CompositionSeries:
    """The annihilator flag in adjoint(G): reversed, with negated parameters."""
    n = G.rank
    A = adjoint(G)
    if n == 0:
        return CompositionSeries(A, [], [])
    Pinv = smat_inverse(S.matrix())
    Q = [[x.conj_b() for x in row] for row in transpose(Pinv)]
    cols = [tuple(Q[i][j] for i in range(n)) for j in reversed(range(n))]
    out = series_from_flag(A, cols)
    expected = [-p for p in reversed(S.params)]
    if out.params != expected:
        raise ABModuleError("adjoint flag parameters disagree", case="adjoint_series")
    return out


def hyperbolic_pair_form(G: ABModule):
    n = G.rank
    prec = G.prec
    return tuple(tuple(Series.one(prec) if abs(i - j) == n and min(i, j) < n else Series.zero(prec)
                       for j in range(2 * n)) for i in range(2 * n))


def pair_block_series(G: ABModule) -> SelfAdjointCertificate:
    n = G.rank
    S = jh_series(G)
    A = adjoint_series(G, S)
    D = direct_sum(G, A.ambient)
    prec = D.prec
    zeros = [Series.zero(prec)] * n
    cols = [(0, tuple(c) + tuple(zeros)) for c in S.basis]
    cols += [(0, tuple(zeros) + tuple(c)) for c in A.basis]
    block = FormBlock(D, hyperbolic_pair_form(G), HERMITIAN, "pair", generator=G)
    return SelfAdjointCertificate([block], cols, list(S.params) + list(A.params), ["pair"])


def interleave(C1: SelfAdjointCertificate, C2: SelfAdjointCertificate) -> SelfAdjointCertificate:
    r, s = C1.rank, C2.rank
    off = len(C1.blocks)
    c1 = list(zip(C1.columns, C1.params))
    c2 = [((k + off, v), p) for (k, v), p in zip(C2.columns, C2.params)]
    if r % 2 and s % 2:
        for label, (_, p) in (("first", c1[r // 2]), ("second", c2[s // 2])):
            if p:
                raise CenterNotE0(f"central quotient of the {label} certificate has parameter {p}",
                                  case="interleave")
    order = c1[:r // 2] + c2[:s // 2]
    if s % 2:
        order.append(c2[s // 2])
    if r % 2:
        order.append(c1[r // 2])
    order += c2[(s + 1) // 2:] + c1[(r + 1) // 2:]
    return SelfAdjointCertificate(C1.blocks + C2.blocks, [c for c, _ in order],
                                  [p for _, p in order], C1.cases + C2.cases)


def block_certificate(spec: SummandSpec, mode: str = "scan") -> SelfAdjointCertificate:
    if spec.kind == "pair":
        return pair_block_series(spec.module)
    sign = HERMITIAN if spec.kind == "hermitian" else ANTIHERMITIAN
    return selfadjoint_jh(spec.module, SesquiForm(spec.module, spec.S, sign), mode)


def selfadjoint_jh_general(blocks, mode: str = "scan") -> SelfAdjointCertificate:
    """Certificates per block, folded from the right with :func:`interleave`."""
    certs = []
    for k, spec in enumerate(blocks):
        try:
            certs.append(block_certificate(spec, mode))
        except ABModuleError as exc:
            exc.args = (f"block {k + 1}: {exc.args[0] if exc.args else ''}",)
            raise
    if not certs:
        return SelfAdjointCertificate([], [], [])
    acc = certs[-1]
    for c in reversed(certs[:-1]):
        acc = interleave(c, acc)
    return acc
