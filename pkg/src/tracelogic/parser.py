"""Concrete syntax for formulas and terms.

Grammar, loosest binding first::

    formula    := iff
    iff        := imp ( "<->" imp )*
    imp        := or ( "->" imp )?
    or         := and ( ("\\/" | "||" | "∨") and )*
    and        := unary ( ("/\\" | "&&" | "∧") unary )*
    unary      := ("!" | "¬" | "G" | "□" | "F" | "◇" | "X" | "Xs" | "Xw") unary
                | temporal
    temporal   := operand ( ("U" | "R") unary )?
    operand    := "(" formula ")" | "true" | "false" | comparison
    comparison := arith ( ("=" | "!=" | "<" | "<=" | ">" | ">=") arith )?
    arith      := product ( ("+" | "-" | "-.") product )*
    product    := factor ( ("*" | "/") factor )*
    factor     := "-"? primary ( "^" natural )?
    primary    := number | "true" | "false" | get | "(" comparison ")" | "X" primary
                | "not" "(" comparison ")" | ("and" | "or") "(" comparison "," comparison ")"
    get        := ("s" | "w") "(" "X"* ident ")" | "(" ("←" | "←ˢ" | "←ʷ") "X"* ident ")" | ident

Plain ``X`` is strong next on formulas; inside a get it shifts the read one
step ahead.  A bare identifier is a strong read.  ``-.`` (alias ``∸``) is
truncated subtraction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import TermTypeError, TraceLogicError
from .formula import (And, Atom, ConstProp, Finally, Formula, Globally, Iff, Imp,
                      Not, Or, Release, SNext, Until, WNext)
from .terms import (STRONG, WEAK, BinOp, Binary, Const, Shift, Term, Unary, UnOp, Var,
                    normalize_shifts, shift_term)


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the UTF-8 encoding of the parsed text."""
    start: int
    end: int


class ParseError(TraceLogicError, ValueError):
    def __init__(self, message: str, span: SourceSpan, expected=(), text: str = ""):
        self.message = message
        self.span = span
        self.expected = list(expected)
        self.text = text
        super().__init__(self._render())

    def _render(self):
        msg = f"{self.message} at byte {self.span.start}"
        if self.expected:
            msg += f" (expected {', '.join(self.expected)})"
        return msg


_ALIASES = {
    "∧": "/\\", "&&": "/\\", "∨": "\\/", "||": "\\/", "¬": "!", "→": "->",
    "↔": "<->", "≤": "<=", "≥": ">=", "≠": "!=", "∸": "-.", "□": "G", "◇": "F",
    "Xˢ": "Xs", "Xʷ": "Xw", "←": "<-s", "←ˢ": "<-s", "←ʷ": "<-w",
}

_SYMBOLS = sorted(
    ["<->", "->", "\\/", "/\\", "||", "&&", "<=", ">=", "!=", "-.", "(", ")", "!",
     "=", "<", ">", "+", "-", "*", "/", "^", ",",
     "↔", "→", "∨", "∧", "¬", "≤", "≥", "≠", "□", "◇", "←ˢ", "←ʷ", "←", "∸"],
    key=len, reverse=True)

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>\d+(?:\.\d+)?)"
    r"|(?P<ident>[^\W\d]\w*)"
    r"|(?P<sym>" + "|".join(re.escape(s) for s in _SYMBOLS) + ")")

KEYWORDS = frozenset({"G", "F", "X", "Xs", "Xw", "U", "R", "true", "false"})

_CMP = {"=": BinOp.EQ, "!=": BinOp.NE, "<": BinOp.LT, "<=": BinOp.LE,
        ">": BinOp.GT, ">=": BinOp.GE}
_ADD = {"+": BinOp.ADD, "-": BinOp.SUB, "-.": BinOp.MONUS}
_MUL = {"*": BinOp.MUL, "/": BinOp.DIV}
_TERM_FOLLOW = frozenset(_CMP) | frozenset(_ADD) | frozenset(_MUL) | {"^"}


@dataclass
class _Tok:
    kind: str  # "num", "ident", "sym", "eof"
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             _byte_span(text, pos, pos + 1), text=text)
        kind = m.lastgroup
        if kind != "ws":
            s = m.group()
            if kind == "num" and m.end() < len(text) and text[m.end()] in "eE":
                raise ParseError("scientific notation is not supported",
                                 _byte_span(text, pos, m.end() + 1), text=text)
            toks.append(_Tok(kind, _ALIASES.get(s, s), pos, m.end()))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


def _byte_span(text, start, end):
    b0 = len(text[:start].encode("utf-8"))
    b1 = b0 + len(text[start:end].encode("utf-8"))
    return SourceSpan(b0, b1)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # -- helpers --
    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, n=1):
        return self.toks[min(self.i + n, len(self.toks) - 1)]

    def at(self, *texts):
        t = self.tok
        return t.kind in ("sym", "ident") and t.text in texts

    def advance(self):
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message, expected=(), tok=None):
        tok = tok or self.tok
        end = tok.end if tok.end > tok.start else tok.start
        return ParseError(message, _byte_span(self.text, tok.start, end), expected, self.text)

    def expect(self, text):
        if not self.at(text):
            got = self.tok.text or "end of input"
            raise self.error(f"unexpected {got!r}", [repr(text)])
        return self.advance()

    def is_ident(self, tok=None):
        tok = tok or self.tok
        return tok.kind == "ident" and tok.text not in KEYWORDS

    # -- formulas --
    def formula(self) -> Formula:
        left = self.imp()
        while self.at("<->"):
            self.advance()
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.or_()
        if self.at("->"):
            self.advance()
            return Imp(left, self.imp())
        return left

    def or_(self):
        left = self.and_()
        while self.at("\\/"):
            self.advance()
            left = Or(left, self.and_())
        return left

    def and_(self):
        left = self.unary()
        while self.at("/\\"):
            self.advance()
            left = And(left, self.unary())
        return left

    _PREFIX = {"!": Not, "G": Globally, "F": Finally, "X": SNext, "Xs": SNext, "Xw": WNext}

    def unary(self):
        t = self.tok
        if t.kind in ("sym", "ident") and t.text in self._PREFIX:
            self.advance()
            return self._PREFIX[t.text](self.unary())
        return self.temporal()

    def temporal(self):
        left = self.operand()
        if self.at("U"):
            self.advance()
            return Until(left, self.unary())
        if self.at("R"):
            self.advance()
            return Release(left, self.unary())
        return left

    def operand(self):
        if self.at("true", "false") and not (self.peek().text in _CMP and self.peek().kind == "sym"):
            return ConstProp(self.advance().text == "true")
        if self.at("(") and not self.peek().text.startswith("<-"):
            save = self.i
            try:
                self.advance()
                f = self.formula()
                self.expect(")")
                if not (self.tok.kind == "sym" and self.tok.text in _TERM_FOLLOW):
                    return f
                first_error = None
            except ParseError as e:
                first_error = e
            self.i = save
            try:
                return self.comparison()
            except ParseError as e:
                if first_error is not None and first_error.span.start > e.span.start:
                    raise first_error
                raise
        return self.comparison()

    def comparison(self) -> Atom:
        start_tok = self.tok
        term = self.cmp_term()
        try:
            return Atom(term)
        except TermTypeError:
            raise self.error("numeric expression used as a formula",
                             ["comparison operator"], tok=self.tok
                             if self.tok.kind != "eof" else start_tok)

    # -- terms --
    def cmp_term(self) -> Term:
        left = self.arith()
        if self.tok.kind == "sym" and self.tok.text in _CMP:
            op_tok = self.advance()
            right = self.arith()
            return self._build(op_tok, _CMP[op_tok.text], left, right)
        return left

    def _build(self, tok, op, left, right):
        try:
            return Binary(op, left, right)
        except TermTypeError as e:
            raise self.error(str(e), tok=tok) from None

    def arith(self):
        left = self.product()
        while self.tok.kind == "sym" and self.tok.text in _ADD:
            op_tok = self.advance()
            left = self._build(op_tok, _ADD[op_tok.text], left, self.product())
        return left

    def product(self):
        left = self.factor()
        while self.tok.kind == "sym" and self.tok.text in _MUL:
            op_tok = self.advance()
            left = self._build(op_tok, _MUL[op_tok.text], left, self.factor())
        return left

    def factor(self):
        neg_tok = self.advance() if self.at("-") else None
        bare_number = self.tok.kind == "num"
        base = self.primary()
        if self.at("^"):
            op_tok = self.advance()
            if self.tok.kind != "num" or "." in self.tok.text:
                raise self.error("exponent must be a natural number literal", ["natural number"])
            base = self._build(op_tok, BinOp.POW, base, Const(int(self.advance().text)))
            bare_number = False
        if neg_tok is None:
            return base
        if bare_number:
            return Const(-base.value)
        try:
            return Unary(UnOp.NEG, base)
        except TermTypeError as e:
            raise self.error(str(e), tok=neg_tok) from None

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Const(Fraction(t.text))
        if self.at("true", "false"):
            self.advance()
            return Const(t.text == "true")
        if self.at("("):
            if self.peek().text in ("<-s", "<-w"):
                self.advance()
                strength = STRONG if self.advance().text == "<-s" else WEAK
                var = self.shifted(strength)
                self.expect(")")
                return var
            self.advance()
            inner = self.cmp_term()
            self.expect(")")
            return inner
        if self.at("X"):
            # X on a term looks one step ahead: X (a + b) reads a and b shifted
            self.advance()
            return shift_term(self.primary(), 1)
        if t.kind == "ident" and self.peek().text == "(" and self.peek().kind == "sym":
            if t.text in ("s", "w"):
                self.advance()
                self.advance()
                var = self.shifted(STRONG if t.text == "s" else WEAK)
                self.expect(")")
                return var
            if t.text in ("not", "and", "or"):
                return self.call()
        if self.is_ident():
            self.advance()
            return Var(t.text, STRONG)
        got = t.text or "end of input"
        raise self.error(f"unexpected {got!r}", ["number", "variable", "'('", "s(", "w("])

    def call(self):
        name_tok = self.advance()
        self.expect("(")
        a = self.cmp_term()
        if name_tok.text == "not":
            self.expect(")")
            try:
                return Unary(UnOp.NOT, a)
            except TermTypeError as e:
                raise self.error(str(e), tok=name_tok) from None
        self.expect(",")
        b = self.cmp_term()
        self.expect(")")
        return self._build(name_tok, BinOp.AND if name_tok.text == "and" else BinOp.OR, a, b)

    def shifted(self, strength):
        k = 0
        while self.at("X"):
            self.advance()
            k += 1
        if not self.is_ident():
            got = self.tok.text or "end of input"
            raise self.error(f"unexpected {got!r}", ["variable", "'X'"])
        var = Var(self.advance().text, strength)
        return Shift(var, k) if k else var

    def finish(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}", ["end of input"])


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    if p.tok.kind == "eof":
        raise p.error("empty formula", ["formula"])
    f = p.formula()
    p.finish()
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.cmp_term()
    p.finish()
    return t


# --- printing ----------------------------------------------------------------

def _decimal(x: Fraction):
    d = x.denominator
    for f in (2, 5):
        while d % f == 0:
            d //= f
    if d != 1:
        return None
    n = 1
    while (x * 10 ** n).denominator != 1:
        n += 1
    s = str(abs((x * 10 ** n).numerator)).rjust(n + 1, "0")
    return ("-" if x < 0 else "") + s[:-n] + "." + s[-n:]


def _const_text(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return f"(-{-v})" if v < 0 else str(v)
    dec = _decimal(v)
    if dec is not None:
        return f"({dec})" if v < 0 else dec
    return f"({v.numerator} / {v.denominator})"


_BINOP_TEXT = {op: op.value for op in BinOp}


def print_term(term: Term, top: bool = False) -> str:
    """Fully parenthesized text of ``term``; ``top`` drops the outermost parens."""
    if isinstance(term, Const):
        return _const_text(term.value)
    if isinstance(term, Var):
        return term.name if term.strength is STRONG else f"w({term.name})"
    if isinstance(term, Shift):
        if not isinstance(term.inner, Var):
            return print_term(normalize_shifts(term), top)
        v = term.inner
        return f"{v.strength.value}({'X ' * term.k}{v.name})"
    if isinstance(term, Unary):
        inner = print_term(term.inner, True)
        if term.op is UnOp.NOT:
            return f"not({inner})"
        return f"(-({inner}))"
    if isinstance(term, Binary):
        if term.op in (BinOp.AND, BinOp.OR):
            return f"{term.op.value}({print_term(term.left, True)}, {print_term(term.right, True)})"
        s = f"{print_term(term.left)} {_BINOP_TEXT[term.op]} {print_term(term.right)}"
        return s if top else f"({s})"
    raise TypeError(f"not a term: {term!r}")


_PREFIX_TEXT = {Not: "!", Globally: "G", Finally: "F", SNext: "Xs", WNext: "Xw"}
_INFIX_TEXT = {And: "/\\", Or: "\\/", Imp: "->", Iff: "<->", Until: "U", Release: "R"}


def print_formula(f: Formula) -> str:
    """Canonical fully parenthesized text; parses back to the same tree."""
    if isinstance(f, ConstProp):
        return "true" if f.b else "false"
    if isinstance(f, Atom):
        return print_term(f.term, top=True)
    t = type(f)
    if t in _PREFIX_TEXT:
        return f"{_PREFIX_TEXT[t]} ({print_formula(f.p)})"
    if t in _INFIX_TEXT:
        return f"({print_formula(f.p)}) {_INFIX_TEXT[t]} ({print_formula(f.q)})"
    raise TypeError(f"cannot print {f!r}")
