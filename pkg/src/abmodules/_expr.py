"""Recursive-descent parser for polynomial expressions in ``b`` over Q(i).

Accepted syntax: rationals, ``i``, ``b``, ``+ - * /``, ``^`` with a
non-negative integer exponent, parentheses, and one optional ``O(b^k)``
term recording a truncation order.  Division is only allowed by constants.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|(O)\s*\(|([ib])|(\^|\*|/|\+|-|\(|\)))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} in {text!r}")
        num, big_o, sym, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif big_o is not None:
            out.append(("O", None))
        elif sym is not None:
            out.append(("sym", sym))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    # polynomials are dicts deg -> (re, im) pairs of mpq

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.order = None

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"malformed expression {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        poly = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return poly, self.order

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term_or_order(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            acc = _add(acc, self.term_or_order(sign))
        return acc

    def term_or_order(self, sign):
        if self.peek()[0] == "O":
            self.take()
            self.take("sym", "b")
            k = 1
            if self.peek() == ("op", "^"):
                self.take()
                k = self.take("num")[1]
            self.take("op", ")")
            if self.order is not None:
                raise ParseError(f"more than one O-term in {self.text!r}")
            self.order = k
            return {}
        t = self.term()
        return t if sign > 0 else _scale(t, (mpq(-1), mpq(0)))

    def term(self):
        acc = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                acc = _mul(acc, rhs)
            else:
                if set(rhs) - {0} or not rhs:
                    raise ParseError(f"division by a non-constant in {self.text!r}")
                acc = _scale(acc, _inv(rhs[0]))
        return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = self.take("num")[1]
            out = {0: (mpq(1), mpq(0))}
            for _ in range(k):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return {0: (mpq(val), mpq(0))} if val else {}
        if kind == "sym":
            self.take()
            return {0: (mpq(0), mpq(1))} if val == "i" else {1: (mpq(1), mpq(0))}
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"malformed expression {self.text!r}")


def _add(p, q):
    out = dict(p)
    for k, (a, b) in q.items():
        c, d = out.get(k, (mpq(0), mpq(0)))
        out[k] = (a + c, b + d)
    return {k: v for k, v in out.items() if v[0] or v[1]}


def _scale(p, s):
    c, d = s
    return {k: (a * c - b * d, a * d + b * c) for k, (a, b) in p.items()
            if (a * c - b * d) or (a * d + b * c)}


def _mul(p, q):
    out = {}
    for i, (a, b) in p.items():
        for j, (c, d) in q.items():
            e, f = out.get(i + j, (mpq(0), mpq(0)))
            out[i + j] = (e + a * c - b * d, f + a * d + b * c)
    return {k: v for k, v in out.items() if v[0] or v[1]}


def _inv(s):
    a, b = s
    n = a * a + b * b
    if not n:
        raise ParseError("division by zero")
    return (a / n, -b / n)


def parse_polynomial(text: str):
    """Return ``(coeffs, order)``: a dict degree -> (re, im) and the O-term order or None."""
    return _Parser(text).parse()
