import json

import pytest

import corpus
from abmodules.certificate import (certificate_from_dict, certificate_from_json,
                                   certificate_to_dict, certificate_to_json,
                                   middle_forms, verify_certificate)
from abmodules.errors import CertificateError, ParseError
from abmodules.forms import HERMITIAN
from abmodules.module import elementary, rank2_extension
from abmodules.scalars import ONE
from abmodules.selfadjoint import (FormBlock, SelfAdjointCertificate,
                                   pair_block_series, selfadjoint_jh)
from abmodules.series import Series

P = 16


def hyp_cert():
    H = corpus.osum(corpus.hyp("1/2", prec=P), corpus.e0(prec=P))
    return selfadjoint_jh(H.ambient, H)


def test_round_trip_is_stable():
    cert = hyp_cert()
    text = certificate_to_json(cert)
    back = certificate_from_json(text)
    assert certificate_to_json(back) == text
    rep = verify_certificate(back)
    assert rep == {"rank": 3, "params": ["1/2", "0", "-1/2"], "symmetric": True,
                   "steps_normal": True, "middle_levels": 2}


def test_middle_forms():
    levels = middle_forms(hyp_cert())
    assert [lvl[0].ambient.rank for lvl in levels] == [3, 1]
    assert levels[1][0].S[0][0] == Series.one(P)


def test_pair_certificate_round_trip():
    cert = pair_block_series(rank2_extension(0, 1, P))
    back = certificate_from_dict(json.loads(certificate_to_json(cert)))
    assert back.blocks[0].kind == "pair"
    verify_certificate(back)


def _tampered(mutate):
    d = certificate_to_dict(hyp_cert())
    mutate(d)
    return certificate_from_dict(d)


@pytest.mark.parametrize("mutate,msg", [
    (lambda d: d["params"].__setitem__(0, "1"), "disagree"),
    (lambda d: (d["columns"].insert(0, d["columns"].pop(1)),
                d.__setitem__("params", ["0", "1/2", "-1/2"])), "lambda"),
    (lambda d: d["columns"][0].__setitem__("vector", ["b", "0", "0"]), "not a composition"),
    (lambda d: d["blocks"][0]["form"][2].__setitem__(2, "0"), "degenerate"),
    (lambda d: d["blocks"][0]["form"][0].__setitem__(1, "2"), "fails its checks"),
])
def test_tampering_is_caught(mutate, msg):
    with pytest.raises(CertificateError, match=msg):
        verify_certificate(_tampered(mutate))


def test_non_isotropic_first_step():
    # flag (e_0, e_1/2, e_-1/2) on E_0 + hyp: params fail the symmetry test
    H = corpus.osum(corpus.e0(prec=P), corpus.hyp("1/2", prec=P))
    E = H.ambient
    cols = [(0, E.basis_vector(1)), (0, E.basis_vector(0)), (0, E.basis_vector(2))]
    ok = SelfAdjointCertificate([FormBlock(E, H.S, HERMITIAN, "hermitian")], cols,
                                [ONE / 2, ONE * 0, -ONE / 2])
    verify_certificate(ok)
    bad = SelfAdjointCertificate(ok.blocks, [cols[1], cols[0], cols[2]], [0 * ONE, ONE / 2, -ONE / 2])
    with pytest.raises(CertificateError):
        verify_certificate(bad)


@pytest.mark.parametrize("text", ["not json", "{}", '{"type": "selfadjoint-certificate"}'])
def test_malformed(text):
    with pytest.raises(ParseError):
        certificate_from_json(text)


def test_rank_one():
    E = elementary(0, P)
    from abmodules.forms import SesquiForm
    cert = selfadjoint_jh(E, SesquiForm(E, [[-1]], HERMITIAN))
    assert verify_certificate(certificate_from_json(certificate_to_json(cert)))["params"] == ["0"]
