"""Reference implementations used as test oracles.

None of these import the evaluator, the kernels or the term interpreter of
the package.  They work on plain Python lists of dicts and follow the
textbook definitions as literally as practical:

* ``ref_term`` / ``ref_atom``: a second term interpreter;
* ``naive_sat``: finite traces, by slicing suffixes;
* ``UnrollOracle``: lassos, by explicit unrolling and bounded search windows,
  vectorized with numpy across many lassos at once.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from tracelogic import formula as F
from tracelogic.terms import BinOp, Binary, Const, Shift, Strength, Unary, UnOp, Var

UNDEF = object()


# --- terms -------------------------------------------------------------------

def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def ref_term(term, word, i):
    """Value of ``term`` read at position ``i`` of ``word`` (a list of dicts)."""
    if isinstance(term, Const):
        return term.value
    if isinstance(term, Var):
        if i >= len(word) or term.name not in word[i]:
            return UNDEF
        return word[i][term.name]
    if isinstance(term, Shift):
        return ref_term(term.inner, word, i + term.k)
    if isinstance(term, Unary):
        a = ref_term(term.inner, word, i)
        if a is UNDEF:
            return UNDEF
        return (not a) if term.op is UnOp.NOT else _norm(-a)
    a = ref_term(term.left, word, i)
    b = ref_term(term.right, word, i)
    if a is UNDEF or b is UNDEF:
        return UNDEF
    op = term.op
    table = {
        BinOp.ADD: lambda: a + b, BinOp.SUB: lambda: a - b,
        BinOp.MONUS: lambda: a - b if a > b else 0, BinOp.MUL: lambda: a * b,
        BinOp.POW: lambda: a ** b, BinOp.EQ: lambda: a == b, BinOp.NE: lambda: a != b,
        BinOp.LT: lambda: a < b, BinOp.LE: lambda: a <= b, BinOp.GT: lambda: a > b,
        BinOp.GE: lambda: a >= b, BinOp.AND: lambda: a and b, BinOp.OR: lambda: a or b,
    }
    if op is BinOp.DIV:
        return UNDEF if b == 0 else _norm(Fraction(a) / Fraction(b))
    return _norm(table[op]())


def _reads(term, offset=0):
    """(name, offset, strength) for every variable occurrence."""
    if isinstance(term, Var):
        return [(term.name, offset, term.strength)]
    if isinstance(term, Shift):
        return _reads(term.inner, offset + term.k)
    if isinstance(term, Unary):
        return _reads(term.inner, offset)
    if isinstance(term, Binary):
        return _reads(term.left, offset) + _reads(term.right, offset)
    return []


def ref_definedness(term, word, i):
    def ok(name, off):
        return i + off < len(word) and name in word[i + off]
    reads = _reads(term)
    if any(not ok(n, o) for n, o, s in reads if s is Strength.STRONG):
        return "strong"
    if any(not ok(n, o) for n, o, s in reads if s is Strength.WEAK):
        return "weak"
    if ref_term(term, word, i) is UNDEF:
        return "strong"
    return "defined"


def ref_atom(term, word, i):
    d = ref_definedness(term, word, i)
    if d == "strong":
        return False
    if d == "weak":
        return True
    return bool(ref_term(term, word, i))


def max_shift(term):
    return max((o for _, o, _ in _reads(term)), default=0)


# --- finite traces: literal suffix semantics --------------------------------

def naive_sat(word, f) -> bool:
    """Satisfaction on a finite word, by recursion over suffixes."""
    return _naive(tuple(_freeze(s) for s in word), f)


def _freeze(state):
    # keep bool and int apart when used as cache keys
    return tuple(sorted((k, type(v).__name__, v) for k, v in state.items()))


def _thaw(key):
    return [{k: v for k, _, v in s} for s in key]


@lru_cache(maxsize=None)
def _naive(w, f):
    n = len(w)
    if isinstance(f, F.ConstProp):
        return f.b
    if isinstance(f, F.Atom):
        return ref_atom(f.term, _thaw(w), 0)
    if isinstance(f, F.Not):
        return not _naive(w, f.p)
    if isinstance(f, F.And):
        return _naive(w, f.p) and _naive(w, f.q)
    if isinstance(f, F.Or):
        return _naive(w, f.p) or _naive(w, f.q)
    if isinstance(f, F.Imp):
        return (not _naive(w, f.p)) or _naive(w, f.q)
    if isinstance(f, F.Iff):
        return _naive(w, f.p) == _naive(w, f.q)
    if isinstance(f, F.SNext):
        return n > 1 and _naive(w[1:], f.p)
    if isinstance(f, F.WNext):
        return n <= 1 or _naive(w[1:], f.p)
    if isinstance(f, F.Until):
        return any(_naive(w[k:], f.q) and all(_naive(w[j:], f.p) for j in range(k))
                   for k in range(n))
    if isinstance(f, F.Release):
        return all(_naive(w[k:], f.q) or any(_naive(w[j:], f.p) for j in range(k))
                   for k in range(n))
    if isinstance(f, F.Finally):
        return any(_naive(w[k:], f.p) for k in range(n))
    if isinstance(f, F.Globally):
        return all(_naive(w[k:], f.p) for k in range(n))
    raise TypeError(f)


# --- lassos: explicit unrolling ---------------------------------------------

class UnrollOracle:
    """Truth of formulas at position 0 of many lassos, via explicit unrolling.

    Every lasso is unrolled into a plain word.  From any position, the next
    ``W = max(prefix + cycle)`` positions visit every state the lasso can
    still reach, so searching a window of ``W`` positions decides Until and
    Release exactly.  Each temporal operator therefore shortens the range of
    positions whose value is trustworthy by ``W - 1`` (or by 1 for next);
    by default the unrolled length leaves enough positions to also check
    that truth values become periodic from the prefix on.  ``length``
    overrides it; :meth:`sat` fails loudly if it is too short for a formula.
    """

    def __init__(self, lassos, max_depth, max_read=1, length=None):
        self.lassos = list(lassos)
        self.W = max(len(t.prefix) + len(t.cycle) for t in self.lassos)
        self.C = max(len(t.cycle) for t in self.lassos)
        self.L = length or (max_depth + 2) * self.W + self.C + 1
        self.max_read = max_read
        self.words = []
        for t in self.lassos:
            pre, cyc = [dict(s) for s in t.prefix], [dict(s) for s in t.cycle]
            w = list(pre)
            while len(w) < self.L + max_read:
                w.extend(cyc)
            self.words.append(w[: self.L + max_read])
        self._memo = {}

    def _atom(self, term):
        out = np.zeros((len(self.words), self.L), dtype=bool)
        for r, w in enumerate(self.words):
            for i in range(self.L):
                out[r, i] = ref_atom(term, w, i)
        return out, self.L

    def vec(self, f):
        """``(values, valid)``: values[r, i] is exact for every i < valid."""
        hit = self._memo.get(f)
        if hit is None:
            hit = self._memo[f] = self._vec(f)
        return hit

    def _vec(self, f):
        n, L = len(self.words), self.L
        if isinstance(f, F.ConstProp):
            return np.full((n, L), f.b), L
        if isinstance(f, F.Atom):
            if max_shift(f.term) > self.max_read:
                raise ValueError("increase max_read")
            return self._atom(f.term)
        if isinstance(f, F.Not):
            v, k = self.vec(f.p)
            return ~v, k
        if isinstance(f, (F.And, F.Or, F.Imp, F.Iff)):
            (a, ka), (b, kb) = self.vec(f.p), self.vec(f.q)
            op = {F.And: a & b, F.Or: a | b, F.Imp: ~a | b, F.Iff: a == b}[type(f)]
            return op, min(ka, kb)
        if isinstance(f, (F.SNext, F.WNext)):
            v, k = self.vec(f.p)
            out = np.zeros_like(v)
            out[:, :-1] = v[:, 1:]
            return out, k - 1
        if isinstance(f, F.Finally):
            return self._window(np.ones((n, L), bool), L, *self.vec(f.p), until=True)
        if isinstance(f, F.Globally):
            return self._window(np.zeros((n, L), bool), L, *self.vec(f.p), until=False)
        if isinstance(f, (F.Until, F.Release)):
            return self._window(*self.vec(f.p), *self.vec(f.q), until=isinstance(f, F.Until))
        raise TypeError(f)

    def _window(self, p, kp, q, kq, until):
        valid = min(kp, kq) - (self.W - 1)
        out = np.zeros_like(p)
        for i in range(max(valid, 0)):
            # search positions i .. i+W-1 for the goal, guarding with p
            guard = np.ones(p.shape[0], bool)
            res = np.zeros(p.shape[0], bool) if until else np.ones(p.shape[0], bool)
            for j in range(i, i + self.W):
                if until:
                    res |= guard & q[:, j]
                    guard &= p[:, j]
                else:
                    res &= ~guard | q[:, j]
                    guard &= ~p[:, j]
            out[:, i] = res
        return out, valid

    def sat(self, f):
        v, k = self.vec(f)
        if k < 1:
            raise ValueError(f"unrolled length {self.L} is too short for {f}")
        return v[:, 0]

    def periodic(self, f):
        """Rows whose trustworthy values repeat with the cycle length past the prefix."""
        v, k = self.vec(f)
        ok = []
        for r, t in enumerate(self.lassos):
            P, C = len(t.prefix), len(t.cycle)
            ok.append(all(v[r, i] == v[r, i + C] for i in range(P, k - C)))
        return ok
