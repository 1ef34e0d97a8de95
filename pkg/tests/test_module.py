import pytest

from abmodules.errors import NotNormal, NotRegular, PrecisionInconclusive
from abmodules.module import (ABModule, Submodule, apply_a, change_basis,
                              commutation_check, direct_sum, elementary,
                              has_simple_pole, is_a_stable, is_normal,
                              is_regular, membership, quotient, rank2_extension,
                              restriction, saturate, saturation, subquotient)
from abmodules.series import Series, parse_series

P = 16


def s(text, prec=P):
    return parse_series(text, prec)


def vec(*texts):
    return tuple(s(t) for t in texts)


def test_elementary_action():
    E = elementary("1/2", P)
    assert apply_a(E, vec("1")) == vec("1/2*b")
    # a(b e) = b a e + b^2 e = (3/2) b^2 e
    assert apply_a(E, vec("b")) == vec("3/2*b^2")


def test_extension_action():
    E = rank2_extension(0, 1, P)
    assert apply_a(E, vec("0", "1")) == vec("1", "b")
    assert apply_a(E, vec("1", "0")) == vec("0", "0")


def test_commutation_check():
    assert commutation_check(rank2_extension("1/3", 2, P))
    with pytest.raises(PrecisionInconclusive):
        commutation_check(ABModule([["b"]], 2))


def test_simple_pole_and_regularity():
    assert has_simple_pole(elementary(1, P))
    assert not has_simple_pole(rank2_extension(0, 0, P))
    assert is_regular(rank2_extension(0, 0, P))
    assert not is_regular(ABModule([["1"]], P))
    with pytest.raises(NotRegular):
        saturation(ABModule([["1"]], P))


def test_saturation_of_resonant_extension():
    L = saturate(rank2_extension(0, 0, P))
    assert has_simple_pole(L)
    assert L.amatrix[0] == vec("-b", "b")
    assert all(x.is_zero() for x in L.amatrix[1])


def test_saturation_is_idempotent():
    for E in (rank2_extension(1, 0, P), rank2_extension("1/2", "1/2", P),
              direct_sum(rank2_extension(0, 1, P), elementary("1/3", P))):
        L = saturate(E)
        L2, J = saturation(L)
        assert L2 == L
        assert all(J[i][j] == (Series.one(L.prec) if i == j else Series.zero(L.prec))
                   for i in range(L.rank) for j in range(L.rank))


def test_saturation_embeds_E():
    E = rank2_extension(1, 0, P)
    L, J = saturation(E)
    # a(J e_j) computed in L equals J applied to a(e_j) computed in E
    for j in range(E.rank):
        col = tuple(J[i][j] for i in range(L.rank))
        ae = apply_a(E, E.basis_vector(j))
        img = tuple(sum((J[i][k] * ae[k] for k in range(E.rank)), Series.zero(L.prec))
                    for i in range(L.rank))
        N = L.prec - 3
        assert all(x.truncate(N) == y.truncate(N) for x, y in zip(apply_a(L, col), img))


def test_normality():
    E = rank2_extension(0, 1, P)
    y = E.basis_vector(0)
    assert is_normal(Submodule(E, [y])) and is_a_stable(Submodule(E, [y]))
    by = tuple(x.shift(1).truncate(P) for x in y)
    assert not is_normal(Submodule(E, [by]))
    assert not is_a_stable(Submodule(E, [E.basis_vector(1)]))


def test_dependent_generators_reduced():
    E = direct_sum(elementary(0, P), elementary(0, P))
    F = Submodule(E, [vec("1", "0"), vec("b", "0"), vec("0", "0")])
    assert F.rank == 1
    assert membership(vec("1+b", "0"), F)
    assert not membership(vec("0", "1"), F)


def test_quotient_of_extension():
    E = rank2_extension("1/3", "1/2", P)
    Q, proj = quotient(E, Submodule(E, [E.basis_vector(0)]))
    assert Q.amatrix == ((s("1/2*b"),),)
    w = proj(vec("7", "1+b"))
    assert w == vec("1+b")
    assert proj(proj.lift(w)) == w
    with pytest.raises(NotNormal):
        quotient(E, Submodule(E, [vec("b", "0")]))
    with pytest.raises(NotNormal):
        quotient(E, Submodule(E, [E.basis_vector(1)]))


def test_restriction_and_subquotient():
    E = direct_sum(rank2_extension(0, 1, P), elementary("1/4", P))
    F = Submodule(E, [vec("1", "0", "0")])
    assert restriction(E, F).amatrix == ((s("0"),),)
    big = Submodule(E, [vec("1", "0", "0"), vec("0", "1", "0")])
    mid, _ = subquotient(E, F, big)
    assert mid.amatrix == ((s("b"),),)


def test_change_basis_preserves_structure():
    E = rank2_extension("1/2", "-1/2", P)
    Pm = [[s("1"), s("b")], [s("1+b"), s("1")]]
    E2 = change_basis(E, Pm)
    assert commutation_check(E2)
    assert is_regular(E2)


def test_direct_sum():
    D = direct_sum(elementary(1, P), rank2_extension(0, 0, P))
    assert D.rank == 3
    assert D.amatrix[1][2] == s("1") and D.amatrix[0][1].is_zero()


def test_bad_shapes():
    with pytest.raises(ValueError):
        ABModule([["b", "0"]], 8)
    with pytest.raises(ValueError):
        Submodule(elementary(0, 8), [vec("1", "0")])
