"""Independent verification and JSON serialization of self-adjoint certificates."""

from __future__ import annotations

import json

from .errors import ABModuleError, CertificateError, ParseError
from .forms import SIGN_NAMES, SesquiForm, check_form, form_matrix_in_basis, is_nondegenerate
from .jordan import series_from_flag
from .linalg import columns_to_matrix, smat_inverse, smat_mul
from .module import ABModule, apply_a_matrix
from .scalars import format_scalar, parse_scalar
from .selfadjoint import FormBlock, SelfAdjointCertificate
from .series import Series, format_series, parse_series


def _block_flags(cert: SelfAdjointCertificate):
    """Per block: global positions and vectors of its columns, in order."""
    flags = [([], []) for _ in cert.blocks]
    for pos, (k, v) in enumerate(cert.columns):
        flags[k][0].append(pos)
        flags[k][1].append(v)
    return flags


def middle_forms(cert: SelfAdjointCertificate):
    """For each j < n/2 the induced forms on ``F_{n-j}/F_j``, one per block.

    Also checks that ``F_j`` is orthogonal to ``F_{n-j}``; raises
    CertificateError otherwise.
    """
    n = cert.rank
    flags = _block_flags(cert)
    gram, tri = [], []
    for blk, (_, vecs) in zip(cert.blocks, flags):
        H = blk.form()
        gram.append(form_matrix_in_basis(H, vecs))
        r = len(vecs)
        if r:
            P = columns_to_matrix(vecs, blk.module.rank)
            tri.append(smat_mul(smat_inverse(P), apply_a_matrix(blk.module, P)))
        else:
            tri.append([])
    out = []
    # at 2j == n the middle quotient is zero; F_{n/2} need not be isotropic
    # (two odd blocks share the centre)
    for j in range((n + 1) // 2):
        level = []
        for b, (blk, (pos, _)) in enumerate(zip(cert.blocks, flags)):
            lo = sum(1 for p in pos if p < j)
            hi = sum(1 for p in pos if p < n - j)
            if lo + hi != len(pos):
                raise CertificateError(f"block {b + 1} is not symmetric about the centre at j={j}",
                                       case="verify")
            Gm = gram[b]
            for i in range(lo):
                for k in range(hi):
                    if not Gm[i][k].is_zero():
                        raise CertificateError(f"F_{j} is not orthogonal to F_{n - j}", case="verify")
            T = tri[b]
            M = ABModule([row[lo:hi] for row in T[lo:hi]], blk.module.prec) if hi > lo else \
                ABModule([], blk.module.prec)
            S = [row[lo:hi] for row in Gm[lo:hi]]
            level.append(SesquiForm(M, S, blk.sign))
        out.append(level)
    return out


def verify_certificate(cert: SelfAdjointCertificate) -> dict:
    """Re-check every invariant from the raw data; raise CertificateError on failure."""
    n = cert.rank
    for b, blk in enumerate(cert.blocks):
        H = blk.form()
        try:
            ok = check_form(H)
        except ABModuleError as exc:
            raise CertificateError(f"block {b + 1}: {exc}", case="verify") from exc
        if not ok:
            raise CertificateError(f"block {b + 1}: form fails its checks", case="verify")
        if not is_nondegenerate(H):
            raise CertificateError(f"block {b + 1}: form is degenerate", case="verify")
    try:
        series = cert.series()
    except ABModuleError as exc:
        raise CertificateError(f"flag is not a composition series: {exc}", case="verify") from exc
    if list(series.params) != list(cert.params):
        raise CertificateError("recorded parameters disagree with the flag", case="verify")
    for j in range(n):
        if cert.params[n - 1 - j] != -cert.params[j]:
            raise CertificateError(f"lambda_{n - j} != -lambda_{j + 1}", case="verify")
    levels = middle_forms(cert)
    for j, level in enumerate(levels):
        for b, H in enumerate(level):
            if H.ambient.rank == 0:
                continue
            if not check_form(H):
                raise CertificateError(f"middle form {j}, block {b + 1} fails its checks", case="verify")
            if not is_nondegenerate(H):
                raise CertificateError(f"middle form {j}, block {b + 1} is degenerate", case="verify")
    return {
        "rank": n,
        "params": [format_scalar(p) for p in cert.params],
        "symmetric": True,
        "steps_normal": True,
        "middle_levels": len(levels),
    }


# ---------------------------------------------------------------------------
# JSON


def _mat(M):
    return [[format_series(x, with_order=True) for x in row] for row in M]


def _vec(v):
    return [format_series(x, with_order=True) for x in v]


def certificate_to_dict(cert: SelfAdjointCertificate) -> dict:
    blocks = []
    for blk in cert.blocks:
        d = {
            "kind": blk.kind,
            "sign": SIGN_NAMES[blk.sign],
            "prec": blk.module.prec,
            "amatrix": _mat(blk.module.amatrix),
            "form": _mat(blk.S),
        }
        blocks.append(d)
    return {
        "type": "selfadjoint-certificate",
        "rank": cert.rank,
        "blocks": blocks,
        "columns": [{"block": k, "vector": _vec(v)} for k, v in cert.columns],
        "params": [format_scalar(p) for p in cert.params],
        "cases": list(cert.cases),
    }


def certificate_from_dict(d: dict) -> SelfAdjointCertificate:
    try:
        if d.get("type") != "selfadjoint-certificate":
            raise ParseError("not a certificate document", case="certificate")
        blocks = []
        for b in d["blocks"]:
            prec = int(b["prec"])
            M = ABModule([[parse_series(x, prec) for x in row] for row in b["amatrix"]], prec)
            S = tuple(tuple(parse_series(x, prec) for x in row) for row in b["form"])
            sign = 1 if b["sign"] == "hermitian" else -1
            blocks.append(FormBlock(M, S, sign, b["kind"]))
        cols = []
        for c in d["columns"]:
            k = int(c["block"])
            prec = blocks[k].module.prec
            cols.append((k, tuple(parse_series(x, prec) for x in c["vector"])))
        params = [parse_scalar(p) for p in d["params"]]
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate: {exc}", case="certificate") from exc
    return SelfAdjointCertificate(blocks, cols, params, list(d.get("cases", [])))


def certificate_to_json(cert: SelfAdjointCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2)


def certificate_from_json(text: str) -> SelfAdjointCertificate:
    try:
        return certificate_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", case="certificate") from exc
