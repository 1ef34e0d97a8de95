import pytest

import corpus
from abmodules.errors import NotWellDefined, PrecisionInconclusive
from abmodules.forms import (ANTIHERMITIAN, HERMITIAN, SesquiForm, adjoint,
                             check_form, conjugate, dual, eval_form,
                             find_form, form_to_morphism, hyperbolic,
                             induced_form, is_morphism, is_nondegenerate,
                             morphism_to_form, sign_from_name, solve_E0)
from abmodules.module import (Submodule, direct_sum, elementary,
                              rank2_extension, saturate)
from abmodules.series import Series, parse_series

P = 16


def s(text, prec=P):
    return parse_series(text, prec)


def vec(*texts):
    return tuple(s(t) for t in texts)


def half_pair():
    return direct_sum(elementary("1/2", P), elementary("-1/2", P))


def test_dual_conjugate_adjoint_matrices():
    E = rank2_extension("1/3", 0, P)
    assert dual(E).amatrix == ((s("-1/3*b"), s("0")), (s("-1"), s("0")))
    assert conjugate(E).amatrix == ((s("1/3*b"), s("-1")), (s("0"), s("0")))
    assert adjoint(E).amatrix == ((s("-1/3*b"), s("0")), (s("1"), s("0")))
    assert adjoint(adjoint(E)) == E


def test_adjoint_of_elementary():
    assert adjoint(elementary("2/3", P)) == elementary("-2/3", P)


def test_check_form_examples():
    assert check_form(SesquiForm(half_pair(), [[0, 1], [1, 0]], HERMITIAN))
    assert check_form(SesquiForm(half_pair(), [[0, 1], [-1, 0]], ANTIHERMITIAN))
    # right symmetry type, wrong compatibility
    assert not check_form(SesquiForm(half_pair(), [[1, 0], [0, 1]], HERMITIAN))
    # compatible but with the wrong sign
    assert not check_form(SesquiForm(half_pair(), [[0, 1], [1, 0]], ANTIHERMITIAN))


def test_eval_form_sesquilinear():
    H = SesquiForm(half_pair(), [[0, 1], [1, 0]], HERMITIAN)
    v, w = vec("1", "0"), vec("0", "1")
    assert eval_form(H, v, w) == s("1")
    bv = tuple(x.shift(1).truncate(P) for x in v)
    bw = tuple(x.shift(1).truncate(P) for x in w)
    assert eval_form(H, bv, w) == s("b")
    assert eval_form(H, v, bw) == s("-b")


def test_eval_form_compatibility():
    # H(a v, w) - H(v, a w) = a H(v, w), with a acting on E_0 as b^2 d/db
    form = corpus.hyp("1/3", prec=P)
    E = form.ambient
    from abmodules.module import apply_a
    v, w = vec("1", "b"), vec("b^2", "1+b")
    lhs = eval_form(form, apply_a(E, v), w) - eval_form(form, v, apply_a(E, w))
    rhs = eval_form(form, v, w).derivative().shift(2)
    N = P - 3
    assert lhs.truncate(N) == rhs.truncate(N)


def test_morphism_round_trip():
    for H in list(corpus.hermitian_fixtures().values())[:5]:
        Phi = form_to_morphism(H)
        assert is_morphism(Phi, H.ambient, adjoint(H.ambient))
        back = morphism_to_form(Phi, H.ambient, H.sign)
        assert [list(r) for r in back.S] == [list(r) for r in H.S]


def test_nondegenerate():
    assert is_nondegenerate(SesquiForm(half_pair(), [[0, 1], [1, 0]], HERMITIAN))
    E = direct_sum(elementary(0, P), elementary(0, P))
    assert not is_nondegenerate(SesquiForm(E, [["b", 0], [0, 1]], HERMITIAN))


def test_hyperbolic():
    E = direct_sum(elementary("1/4", P), elementary("-1/4", P))
    H = hyperbolic(E, ANTIHERMITIAN)
    assert H.S[1][0] == s("-1") and H.S[0][1] == s("1")
    assert check_form(H) and is_nondegenerate(H)


@pytest.mark.parametrize("mu,k", [(0, 0), (1, 1), (3, 3)])
def test_solve_E0_solutions(mu, k):
    assert solve_E0(mu, P) == Series.monomial(1, k, P)


@pytest.mark.parametrize("mu", ["-1", "1/2", "i", "5/3"])
def test_solve_E0_none(mu):
    assert solve_E0(mu, P) is None


def test_solve_E0_invisible():
    with pytest.raises(PrecisionInconclusive):
        solve_E0(20, P)


def test_find_form_sat_ext_1_0():
    L = saturate(rank2_extension(1, 0, P + 2))
    _, nd = find_form(L, HERMITIAN)
    assert nd is None
    basis, nd = find_form(L, ANTIHERMITIAN)
    assert basis and nd is not None
    assert check_form(nd) and is_nondegenerate(nd)


def test_find_form_sat_ext_0_1_both_signs():
    L = saturate(rank2_extension(0, 1, P + 2))
    for sign in (HERMITIAN, ANTIHERMITIAN):
        _, nd = find_form(L, sign)
        assert nd is not None and nd.sign == sign and check_form(nd)


def test_find_form_case4_has_none():
    E = direct_sum(elementary(0, P), elementary("1/2", P))
    for sign in (HERMITIAN, ANTIHERMITIAN):
        assert find_form(E, sign)[1] is None


def test_find_form_elementary_dimension():
    # forms on E_0 are constants, real for hermitian
    basis, nd = find_form(elementary(0, P), HERMITIAN)
    assert len(basis) == 1 and nd is not None
    assert find_form(elementary("1/2", P), HERMITIAN)[1] is None


def test_induced_form():
    H = corpus.osum(corpus.hyp("1/2"), corpus.e0())
    E = H.ambient
    F1 = Submodule(E, [vec("1", "0", "0")])
    Fn1 = Submodule(E, [vec("1", "0", "0"), vec("0", "0", "1")])
    Hm, lifts = induced_form(H, F1, Fn1)
    assert Hm.ambient.rank == 1 and Hm.S[0][0] == s("1")
    assert Hm.ambient.amatrix[0][0].is_zero()
    assert len(lifts) == 1
    with pytest.raises(NotWellDefined):
        induced_form(H, F1, Submodule(E, [vec("1", "0", "0"), vec("0", "1", "0")]))


def test_sign_names():
    assert sign_from_name("hermitian") == HERMITIAN
    assert sign_from_name("anti-hermitian") == ANTIHERMITIAN
    with pytest.raises(ValueError):
        sign_from_name("symmetric")
