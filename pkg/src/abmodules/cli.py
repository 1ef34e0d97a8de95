"""Command-line interface.

Exit statuses: 0 success, 1 malformed input or I/O failure, 2 a definite
mathematical negative, 3 an inconclusive computation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificate import (certificate_from_json, certificate_to_dict,
                          verify_certificate)
from .errors import ABModuleError, Inconclusive, InvalidInput, NegativeResult
from .forms import (ANTIHERMITIAN, HERMITIAN, SIGN_NAMES, adjoint, check_form,
                    find_form, is_nondegenerate)
from .jordan import classify_rank2, jh_series
from .module import commutation_check, is_a_stable, is_normal, is_regular
from .scalars import format_scalar
from .selfadjoint import selfadjoint_jh, selfadjoint_jh_general, structural_obstruction
from .textio import (ModuleDocument, format_document, format_vector,
                     parse_blocks, parse_document)
from .series import format_series

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class CheckFailed(NegativeResult):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _params(ps):
    return [format_scalar(p) for p in ps]


def _emit(args, data: dict, text: str):
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text.rstrip("\n"))


# ---------------------------------------------------------------------------
# commands


def cmd_check(args):
    doc = parse_document(_read(args.input), args.precision)
    E = doc.module
    res = {"commutation": commutation_check(E), "regular": is_regular(E)}
    if doc.form is not None:
        res["form_compatible"] = check_form(doc.form)
        res["form_nondegenerate"] = is_nondegenerate(doc.form)
    for k, F in enumerate(doc.submodules, 1):
        res[f"submodule_{k}_a_stable"] = is_a_stable(F)
        res[f"submodule_{k}_normal"] = is_normal(F)
    lines = [f"{k}: {'ok' if v else 'FAILED'}" for k, v in res.items()]
    _emit(args, {"command": "check", "results": res}, "\n".join(lines))
    if not all(res.values()):
        raise CheckFailed("some checks failed", case="check")


def _series_report(S):
    return {
        "params": _params(S.params),
        "steps": [[format_series(x) for x in v] for v in S.basis],
    }


def cmd_jh(args):
    E = parse_document(_read(args.input), args.precision).module
    S = jh_series(E)
    rep = _series_report(S)
    lines = ["params: " + ", ".join(rep["params"])]
    lines += [f"F_{j + 1} = F_{j} + {format_vector(v)}" for j, v in enumerate(S.basis)]
    _emit(args, {"command": "jh", "rank": E.rank, **rep}, "\n".join(lines))


def cmd_adjoint(args):
    doc = parse_document(_read(args.input), args.precision)
    A = adjoint(doc.module)
    text = format_document(ModuleDocument(A))
    _emit(args, {"command": "adjoint", "document": text}, text)


def cmd_classify(args):
    E = parse_document(_read(args.input), args.precision).module
    c = classify_rank2(E)
    kind = type(c).__name__
    _emit(args, {"command": "classify", "kind": kind, "params": _params(c.params())}, str(c))


def cmd_find_form(args):
    E = parse_document(_read(args.input), args.precision).module
    signs = {"hermitian": [HERMITIAN], "antihermitian": [ANTIHERMITIAN],
             "both": [HERMITIAN, ANTIHERMITIAN]}[args.sign]
    data, lines = {"command": "find-form", "results": []}, []
    for sign in signs:
        basis, nd = find_form(E, sign)
        name = SIGN_NAMES[sign]
        entry = {
            "sign": name,
            "dimension": len(basis),
            "basis": [[[format_series(x) for x in r] for r in H.S] for H in basis],
            "nondegenerate": None if nd is None else [[format_series(x) for x in r] for r in nd.S],
        }
        data["results"].append(entry)
        lines.append(f"{name}: {len(basis)} independent form(s)")
        if nd is None:
            lines.append("  no nondegenerate form found at sampling budget")
        else:
            lines.append("  nondegenerate sample:")
            lines += ["    " + "; ".join(format_series(x) for x in r) for r in nd.S]
    _emit(args, data, "\n".join(lines))


def _certificate_output(args, cert, command):
    data = {"command": command, "certificate": certificate_to_dict(cert)}
    lines = [f"self-adjoint Jordan-Hölder series, rank {cert.rank}",
             "params: " + ", ".join(_params(cert.params))]
    if cert.cases:
        lines.append("cases: " + ", ".join(cert.cases))
    for j, (k, v) in enumerate(cert.columns):
        lines.append(f"F_{j + 1} = F_{j} + block {k + 1} {format_vector(v)}")
    if args.verify:
        data["verification"] = verify_certificate(cert)
        lines.append("verified: yes")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(data["certificate"], fh, indent=2)
    _emit(args, data, "\n".join(lines))


def cmd_sajh(args):
    doc = parse_document(_read(args.input), args.precision)
    E, H = doc.module, doc.form
    if H is None:
        structural_obstruction(E)
        for sign in (HERMITIAN, ANTIHERMITIAN):
            H = find_form(E, sign)[1]
            if H is not None:
                break
        if H is None:
            raise Inconclusive("no nondegenerate form found at sampling budget", case="find_form")
    cert = selfadjoint_jh(E, H, mode=args.mode)
    _certificate_output(args, cert, "sajh")


def cmd_sajh_general(args):
    specs = parse_blocks(_read(args.input), args.precision)
    cert = selfadjoint_jh_general(specs, mode=args.mode)
    _certificate_output(args, cert, "sajh-general")


def cmd_verify(args):
    cert = certificate_from_json(_read(args.input))
    rep = verify_certificate(cert)
    _emit(args, {"command": "verify", **rep},
          f"certificate verified: rank {rep['rank']}, params " + ", ".join(rep["params"]))


COMMANDS = {
    "check": (cmd_check, "commutation, regularity, form and submodule checks"),
    "jh": (cmd_jh, "Jordan-Hölder series"),
    "adjoint": (cmd_adjoint, "adjoint module document"),
    "classify": (cmd_classify, "rank-2 normal form"),
    "find-form": (cmd_find_form, "search for compatible (anti-)hermitian forms"),
    "sajh": (cmd_sajh, "self-adjoint Jordan-Hölder series of a module with a form"),
    "sajh-general": (cmd_sajh_general, "self-adjoint series of a direct sum of blocks"),
    "verify": (cmd_verify, "re-verify a JSON certificate"),
}


def _precision(text):
    n = int(text)
    if n < 8:
        raise argparse.ArgumentTypeError("precision must be at least 8")
    return n


def _common(defaults: bool):
    """Global flags, accepted before or after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--precision", type=_precision, default=d(None),
                   help="truncation order (overrides the file header and ABMODULES_PRECISION)")
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--verify", action="store_true", default=d(False),
                   help="re-check emitted certificates")
    return p


def build_parser():
    p = argparse.ArgumentParser(prog="abmodules", description=__doc__.splitlines()[0],
                                parents=[_common(True)])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, parents=[_common(False)])
        sp.add_argument("input", help="input file, or - for stdin")
        if name == "find-form":
            sp.add_argument("--sign", choices=("hermitian", "antihermitian", "both"), default="both")
        if name in ("sajh", "sajh-general"):
            sp.add_argument("--mode", choices=("scan", "deferred"), default="scan")
            sp.add_argument("-o", "--output", help="also write the certificate JSON here")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors are input errors, not mathematical negatives
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    if not hasattr(args, "output"):
        args.output = None
    handler = COMMANDS[args.command][0]
    try:
        handler(args)
    except NegativeResult as exc:
        print(f"negative: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ABModuleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
