"""Plain-text module documents.

A document looks like::

    # E_{1/2} + E_{-1/2} with the hyperbolic form
    rank 2, prec 32
    1/2*b; 0
    0; -1/2*b
    form hermitian
    0; 1
    1; 0
    submodule 1
    1; 0

Rows hold the a-matrix row by row, entries separated by ``;``.  The
header may omit ``prec``; the default precision then applies
(``ABMODULES_PRECISION``, else 32).  The ``form`` block gives ``S`` in
the same layout and each ``submodule k`` block lists ``k`` generators.  Entries whose precision differs
from the header carry an explicit ``O(b^k)`` term.

A blocks file for general self-adjoint assembly is a sequence of::

    block hermitian | antihermitian | pair
    <module document>
    end
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .forms import SesquiForm, sign_from_name, SIGN_NAMES
from .module import ABModule, Submodule
from .selfadjoint import SummandSpec
from .series import Series, default_prec, format_series, parse_series

_HEADER = re.compile(r"^rank\s+(\d+)(?:\s*,\s*prec\s+(\d+))?$")
_FORM = re.compile(r"^form\s+(\S+)$")
_SUB = re.compile(r"^submodule\s+(\d+)$")
_BLOCK = re.compile(r"^block\s+(\S+)$")


@dataclass(eq=False)
class ModuleDocument:
    module: ABModule
    form: SesquiForm | None = None
    submodules: list = field(default_factory=list)
    comments: list = field(default_factory=list)


def _lines(text):
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _row(line, lineno, n, prec):
    parts = [p.strip() for p in line.split(";")]
    if n == 0 and parts == [""]:
        return []
    if len(parts) != n:
        raise ParseError(f"line {lineno}: expected {n} entries, found {len(parts)}", case="parse")
    try:
        return [parse_series(p, prec) for p in parts]
    except ParseError as exc:
        raise ParseError(f"line {lineno}: {exc.args[0]}", case="parse") from exc


def _parse_lines(lines, prec_override=None) -> ModuleDocument:
    if not lines:
        raise ParseError("empty module document", case="parse")
    lineno, head = lines[0]
    m = _HEADER.match(head)
    if not m:
        raise ParseError(f"line {lineno}: expected 'rank n, prec N'", case="parse")
    n = int(m.group(1))
    prec = int(m.group(2)) if m.group(2) else default_prec()
    if prec < 1:
        raise ParseError(f"line {lineno}: precision must be positive", case="parse")
    if prec_override is not None:
        prec = prec_override
    pos = 1

    def take_rows(count, width):
        nonlocal pos
        rows = []
        for _ in range(count):
            if pos >= len(lines):
                raise ParseError("unexpected end of document", case="parse")
            ln, text = lines[pos]
            rows.append(_row(text, ln, width, prec))
            pos += 1
        return rows

    M = ABModule(take_rows(n, n), prec) if n else ABModule([], prec)
    doc = ModuleDocument(M)
    while pos < len(lines):
        ln, text = lines[pos]
        fm, sm = _FORM.match(text), _SUB.match(text)
        pos += 1
        if fm:
            if doc.form is not None:
                raise ParseError(f"line {ln}: second form block", case="parse")
            try:
                sign = sign_from_name(fm.group(1))
            except ValueError as exc:
                raise ParseError(f"line {ln}: {exc}", case="parse") from exc
            doc.form = SesquiForm(M, take_rows(n, n), sign)
        elif sm:
            k = int(sm.group(1))
            doc.submodules.append(Submodule(M, take_rows(k, n)))
        else:
            raise ParseError(f"line {ln}: unexpected {text!r}", case="parse")
    return doc


def parse_document(text: str, prec: int | None = None) -> ModuleDocument:
    return _parse_lines(_lines(text), prec)


def parse_module(text: str, prec: int | None = None) -> ABModule:
    return parse_document(text, prec).module


def _entry(x: Series, prec: int) -> str:
    return format_series(x, with_order=x.prec != prec)


def _rows(rows, prec):
    return ["; ".join(_entry(x, prec) for x in row) for row in rows]


def format_document(doc: ModuleDocument) -> str:
    M = doc.module
    out = [f"# {c}" for c in doc.comments]
    out.append(f"rank {M.rank}, prec {M.prec}")
    out += _rows(M.amatrix, M.prec)
    if doc.form is not None:
        out.append(f"form {SIGN_NAMES[doc.form.sign]}")
        out += _rows(doc.form.S, M.prec)
    for F in doc.submodules:
        out.append(f"submodule {F.rank}")
        out += _rows(F.generators, M.prec)
    return "\n".join(out) + "\n"


def format_module(E: ABModule, form: SesquiForm | None = None) -> str:
    return format_document(ModuleDocument(E, form))


def parse_blocks(text: str, prec: int | None = None):
    """Parse a blocks file into a list of :class:`SummandSpec`."""
    lines = _lines(text)
    specs = []
    pos = 0
    while pos < len(lines):
        ln, head = lines[pos]
        m = _BLOCK.match(head)
        if not m:
            raise ParseError(f"line {ln}: expected 'block <kind>'", case="parse")
        kind = m.group(1).lower().replace("-", "")
        if kind not in ("hermitian", "antihermitian", "pair"):
            raise ParseError(f"line {ln}: unknown block kind {m.group(1)!r}", case="parse")
        end = next((k for k in range(pos + 1, len(lines)) if lines[k][1] == "end"), None)
        if end is None:
            raise ParseError(f"line {ln}: block without 'end'", case="parse")
        doc = _parse_lines(lines[pos + 1:end], prec)
        if kind == "pair":
            specs.append(SummandSpec("pair", doc.module))
        else:
            if doc.form is None:
                raise ParseError(f"line {ln}: {kind} block needs a form", case="parse")
            if SIGN_NAMES[doc.form.sign] != kind:
                raise ParseError(f"line {ln}: block kind and form sign disagree", case="parse")
            specs.append(SummandSpec(kind, doc.module, doc.form.S))
        pos = end + 1
    if not specs:
        raise ParseError("no blocks found", case="parse")
    return specs


def format_blocks(specs) -> str:
    parts = []
    for spec in specs:
        parts.append(f"block {spec.kind}")
        form = None
        if spec.kind != "pair":
            form = SesquiForm(spec.module, spec.S, 1 if spec.kind == "hermitian" else -1)
        parts.append(format_module(spec.module, form).rstrip("\n"))
        parts.append("end")
    return "\n".join(parts) + "\n"


def format_vector(v) -> str:
    return "(" + ", ".join(format_series(x) for x in v) + ")"
