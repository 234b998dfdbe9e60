"""Element-expression grammar: parsing and deterministic printing.

Terms are scalar-weighted words in family generators; `(x)` separates tensor
slots and binds looser than `*` but parenthesized subexpressions may hold full
tensor sums, so `1/2*(1 (x) 1 + g (x) g)` works.  Scalar literals are
integers, fractions `a/b`, and roots of unity `z{M}^k`.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .hopf import Elem, HopfData, Tensor


class ExprError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<tensor>\(x\))
      | (?P<root>z\d+(?:\^-?\d+)?)
      | (?P<int>\d+)
      | (?P<name>[A-Za-z][A-Za-z0-9]*(?:\{\d+(?:,\d+)*\})?)
      | (?P<op>[\^*/+\-()])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start()))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over: sum of '*'-joined factors, '(x)' at the top of
    each parenthesis level, 2 or 3 tensor slots."""

    def __init__(self, h: HopfData, tokens):
        self.h = h
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    # values are field scalars, Elem, or Tensor.
    # '+'/'-' bind loosest, then '(x)', then '*'.
    def parse_tensorexpr(self):
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        acc = self.parse_tensorterm()
        if negate:
            acc = self._negate(acc)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                term = self.parse_tensorterm()
                if val == "-":
                    term = self._negate(term)
                acc = self._add(acc, term, pos)
            else:
                return acc

    def parse_tensorterm(self):
        parts = [self.parse_term()]
        while self.peek()[0] == "tensor":
            self.take()
            parts.append(self.parse_term())
        if len(parts) == 1:
            return parts[0]
        if len(parts) > 3:
            raise ExprError("at most three tensor slots", self.peek()[2])
        elems = [self._as_elem(p) for p in parts]
        out = elems[0].tensor(elems[1])
        if len(elems) == 3:
            out = _tensor3(out, elems[2])
        return out

    def parse_term(self):
        acc = self.parse_factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = self._mul(acc, self.parse_factor(), pos)
            elif kind == "op" and val == "/":
                self.take()
                div = self.parse_factor()
                if isinstance(div, (Elem, Tensor)):
                    raise ExprError("division only by scalars", pos)
                acc = self._mul(acc, self.h.field.one / div, pos)
            else:
                return acc

    def parse_factor(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self.h.field.from_int(int(val))
        if kind == "root":
            m = re.fullmatch(r"z(\d+)(?:\^(-?\d+))?", val)
            order, exp = int(m.group(1)), int(m.group(2) or 1)
            return self.h.field.make_root(order) ** exp
        if kind == "name":
            return self._generator_power(val, pos)
        if kind == "op" and val == "(":
            inner = self.parse_tensorexpr()
            kind2, val2, pos2 = self.take()
            if not (kind2 == "op" and val2 == ")"):
                raise ExprError("expected ')'", pos2)
            return inner
        if kind == "op" and val == "-":
            return self._negate(self.parse_factor())
        raise ExprError(f"unexpected token {val!r}", pos)

    def _generator_power(self, name: str, pos: int):
        exp = 1
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind2, val2, pos2 = self.take()
            if kind2 != "int":
                raise ExprError("expected integer exponent", pos2)
            exp = int(val2)
        base = self._resolve_generator(name, pos)
        return base**exp

    def _resolve_generator(self, name: str, pos: int) -> Elem:
        h = self.h
        if name in h.generators:
            return h.gen(name)
        m = re.fullmatch(r"([A-Za-z][A-Za-z0-9]*)\{(\d+(?:,\d+)*)\}", name)
        if m:
            stem, idxs = m.group(1), m.group(2).split(",")
            acc = h.unit()
            for i in idxs:
                sub = f"{stem}{i}"
                if sub not in h.generators:
                    raise ExprError(f"unknown generator {sub!r}", pos)
                acc = acc * h.gen(sub)
            return acc
        raise ExprError(f"unknown generator {name!r}", pos)

    def _as_elem(self, v) -> Elem:
        if isinstance(v, Tensor):
            raise ExprError("tensor slot must be an algebra element")
        if isinstance(v, Elem):
            return v
        return self.h.unit().scaled(v)

    def _negate(self, v):
        if isinstance(v, (Elem, Tensor)):
            return -v
        return -v

    def _add(self, a, b, pos):
        try:
            if isinstance(a, (Elem, Tensor)) or isinstance(b, (Elem, Tensor)):
                if not isinstance(a, (Elem, Tensor)):
                    a = self._promote_like(b, a)
                if not isinstance(b, (Elem, Tensor)):
                    b = self._promote_like(a, b)
            return a + b
        except Exception as exc:  # mismatched arity
            raise ExprError(f"cannot add values: {exc}", pos)

    def _promote_like(self, template, scalar):
        if isinstance(template, Elem):
            return self.h.unit().scaled(scalar)
        return self.h.unit_tensor(template.legs).scaled(scalar)

    def _mul(self, a, b, pos):
        a_t = isinstance(a, (Elem, Tensor))
        b_t = isinstance(b, (Elem, Tensor))
        try:
            if a_t and b_t:
                return a * b
            if a_t:
                return a.scaled(b)
            if b_t:
                return b.scaled(a)
            return a * b
        except Exception as exc:
            raise ExprError(f"cannot multiply values: {exc}", pos)


def _tensor3(t2: Tensor, e: Elem) -> Tensor:
    h = t2.parent
    dim = h.dim
    out = {}
    for k, v in t2.coeffs.items():
        for j, c in e.coeffs.items():
            w = v * c
            if w:
                out[k * dim + j] = w
    return Tensor(h, 3, out)


def parse_element(h: HopfData, text: str):
    """Parse to an Elem or Tensor over h; bare scalars become multiples of 1."""
    tokens = _tokenize(text)
    p = _Parser(h, tokens)
    out = p.parse_tensorexpr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ExprError(f"trailing input {val!r}", pos)
    if not isinstance(out, (Elem, Tensor)):
        return h.unit().scaled(out)
    return out


# -- printing ---------------------------------------------------------------


def _scalar_terms(field, c) -> list[tuple[Fraction, str]]:
    """Decompose a scalar into (rational, root-power-suffix) monomials."""
    if isinstance(c, Fraction):
        return [(c, "")]
    if hasattr(c, "coeffs"):  # cyclotomic
        out = []
        m = field.order
        for k, q in enumerate(c.coeffs):
            if q:
                out.append((q, "" if k == 0 else (f"z{m}" if k == 1 else f"z{m}^{k}")))
        return out
    # prime field
    return [(Fraction(c.val), "")]


def _format_term(q: Fraction, root: str, word: str, first: bool) -> str:
    sign = "-" if q < 0 else "+"
    q = abs(q)
    factors = []
    if q != 1 or (root == "" and word == ""):
        factors.append(str(q))
    if root:
        factors.append(root)
    if word:
        factors.append(word)
    body = "*".join(factors)
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def format_elem(a: Elem) -> str:
    h = a.parent
    if not a.coeffs:
        return "0"
    parts = []
    for idx in sorted(a.coeffs):
        for q, root in _scalar_terms(h.field, a.coeffs[idx]):
            word = h.labels[idx]
            word = "" if word == "1" else word
            parts.append(_format_term(q, root, word, not parts))
    return "".join(parts)


def format_tensor(t: Tensor) -> str:
    h = t.parent
    if not t.coeffs:
        return "0"
    parts = []
    for idx in sorted(t.coeffs):
        word = "(" + " (x) ".join(h.labels[i] for i in t._split(idx)) + ")"
        for q, root in _scalar_terms(h.field, t.coeffs[idx]):
            parts.append(_format_term(q, root, word, not parts))
    return "".join(parts)


def format_value(v) -> str:
    if isinstance(v, Tensor):
        return format_tensor(v)
    return format_elem(v)


def parse_scalar(field, text: str):
    """Scalar literal: optional sign, '*'-joined ints, fractions and zM^k roots."""
    tokens = _tokenize(text)
    i = 0
    sign = 1
    while tokens[i][0] == "op" and tokens[i][1] in "+-":
        if tokens[i][1] == "-":
            sign = -sign
        i += 1
    acc = field.one
    expect_factor = True
    consumed = 0
    while tokens[i][0] != "end":
        kind, val, pos = tokens[i]
        if expect_factor:
            if kind == "int":
                num = int(val)
                if tokens[i + 1][0] == "op" and tokens[i + 1][1] == "/":
                    den_kind, den_val, den_pos = tokens[i + 2]
                    if den_kind != "int":
                        raise ExprError("expected denominator", den_pos)
                    acc = acc * field.from_fraction(Fraction(num, int(den_val)))
                    i += 3
                else:
                    acc = acc * field.from_int(num)
                    i += 1
            elif kind == "root":
                m = re.fullmatch(r"z(\d+)(?:\^(-?\d+))?", val)
                acc = acc * field.make_root(int(m.group(1))) ** int(m.group(2) or 1)
                i += 1
            else:
                raise ExprError(f"expected scalar factor, got {val!r}", pos)
            expect_factor = False
            consumed += 1
        else:
            if kind == "op" and val == "*":
                expect_factor = True
                i += 1
            else:
                raise ExprError(f"unexpected token {val!r} in scalar", pos)
    if expect_factor or consumed == 0:
        raise ExprError("empty or dangling scalar literal")
    return acc if sign == 1 else -acc
