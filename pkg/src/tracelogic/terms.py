"""Expressions over trace variables.

A term is evaluated against a trace (at its first position) and yields a
value or ``None``.  ``None`` means the term is undefined there: a variable
was read past the end of a finite trace, a variable is unbound in the state
being read, or an operator hit an exceptional case such as division by zero.

Variables carry a *strength*.  When a boolean term is used as an atomic
formula, undefined strong reads make the atom false and undefined weak reads
make it true, strong reads taking priority.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import TermTypeError
from .trace import Trace, Value, to_value, value_kind


class Strength(enum.Enum):
    STRONG = "s"
    WEAK = "w"


STRONG = Strength.STRONG
WEAK = Strength.WEAK


class UnOp(enum.Enum):
    NEG = "-"
    NOT = "not"


class BinOp(enum.Enum):
    ADD = "+"
    SUB = "-"
    MONUS = "-."  # truncated subtraction on naturals
    MUL = "*"
    DIV = "/"
    POW = "^"
    EQ = "="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    AND = "and"
    OR = "or"


ARITH_OPS = frozenset({BinOp.ADD, BinOp.SUB, BinOp.MONUS, BinOp.MUL, BinOp.DIV, BinOp.POW})
ORDER_OPS = frozenset({BinOp.LT, BinOp.LE, BinOp.GT, BinOp.GE})
EQUALITY_OPS = frozenset({BinOp.EQ, BinOp.NE})
LOGIC_OPS = frozenset({BinOp.AND, BinOp.OR})
COMPARISON_OPS = ORDER_OPS | EQUALITY_OPS

# static result kinds; ANY marks variables whose kind is only known at runtime
BOOL, NUM, ANY = "bool", "num", "any"


class Term:
    """Base class of term nodes."""

    __slots__ = ()

    def __str__(self):
        from .parser import print_term
        return print_term(self)


@dataclass(frozen=True)
class Const(Term):
    value: Value
    kind: str = field(init=False, repr=False)

    def __post_init__(self):
        v = to_value(self.value)
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "kind", value_kind(v))


@dataclass(frozen=True)
class Var(Term):
    name: str
    strength: Strength = STRONG

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError(f"variable names must be nonempty strings, got {self.name!r}")


@dataclass(frozen=True)
class Shift(Term):
    inner: Term
    k: int = 1

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"shift amount must be a positive integer, got {self.k!r}")


@dataclass(frozen=True)
class Unary(Term):
    op: UnOp
    inner: Term

    def __post_init__(self):
        k = term_kind(self.inner)
        if self.op is UnOp.NEG and k == BOOL:
            raise TermTypeError("cannot negate a boolean term")
        if self.op is UnOp.NOT and k == NUM:
            raise TermTypeError("logical 'not' applied to a numeric term")


@dataclass(frozen=True)
class Binary(Term):
    op: BinOp
    left: Term
    right: Term

    def __post_init__(self):
        lk, rk = term_kind(self.left), term_kind(self.right)
        op = self.op
        if op in ARITH_OPS or op in ORDER_OPS:
            if BOOL in (lk, rk):
                raise TermTypeError(f"operator {op.value!r} needs numeric operands")
        elif op in LOGIC_OPS:
            if NUM in (lk, rk):
                raise TermTypeError(f"operator {op.value!r} needs boolean operands")
        elif op in EQUALITY_OPS:
            if ANY not in (lk, rk) and lk != rk:
                raise TermTypeError(f"cannot compare {lk} with {rk} using {op.value!r}")
        if op is BinOp.POW and isinstance(self.right, Const):
            e = self.right.value
            if not (isinstance(e, int) and not isinstance(e, bool) and e >= 0):
                raise TermTypeError(f"exponent must be a non-negative integer, got {e}")


def term_kind(term: Term) -> str:
    if isinstance(term, Const):
        return term.kind
    if isinstance(term, Var):
        return ANY
    if isinstance(term, Shift):
        return term_kind(term.inner)
    if isinstance(term, Unary):
        return NUM if term.op is UnOp.NEG else BOOL
    if isinstance(term, Binary):
        return NUM if term.op in ARITH_OPS else BOOL
    raise TypeError(f"not a term: {term!r}")


# --- evaluation -------------------------------------------------------------

def _num(v, op):
    if isinstance(v, bool):
        raise TermTypeError(f"operator {op.value!r} needs numeric operands, got {v!r}")
    return v


def _bool(v, op):
    if not isinstance(v, bool):
        raise TermTypeError(f"operator {op.value!r} needs boolean operands, got {v!r}")
    return v


def _norm(x) -> Value:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _apply_binary(op: BinOp, a: Value, b: Value) -> Optional[Value]:
    if op is BinOp.ADD:
        return _norm(_num(a, op) + _num(b, op))
    if op is BinOp.SUB:
        return _norm(_num(a, op) - _num(b, op))
    if op is BinOp.MONUS:
        return _norm(max(0, _num(a, op) - _num(b, op)))
    if op is BinOp.MUL:
        return _norm(_num(a, op) * _num(b, op))
    if op is BinOp.DIV:
        if _num(b, op) == 0:
            return None
        return _norm(Fraction(_num(a, op)) / b)
    if op is BinOp.POW:
        e = _num(b, op)
        if not isinstance(e, int) or e < 0:
            raise TermTypeError(f"exponent must be a non-negative integer, got {e}")
        return _norm(_num(a, op) ** e)
    if op in ORDER_OPS:
        a, b = _num(a, op), _num(b, op)
        if op is BinOp.LT:
            return a < b
        if op is BinOp.LE:
            return a <= b
        if op is BinOp.GT:
            return a > b
        return a >= b
    if op in EQUALITY_OPS:
        if value_kind(a) != value_kind(b):
            raise TermTypeError(f"cannot compare {a!r} with {b!r}")
        return (a == b) if op is BinOp.EQ else (a != b)
    if op is BinOp.AND:
        return _bool(a, op) and _bool(b, op)
    if op is BinOp.OR:
        return _bool(a, op) or _bool(b, op)
    raise AssertionError(op)


def eval_at(term: Term, trace: Trace, i: int) -> Optional[Value]:
    """Evaluate ``term`` at timestep ``i`` of ``trace``."""
    if isinstance(term, Var):
        state = trace.state_at(i)
        if state is None:
            return None
        return state.get(term.name)
    if isinstance(term, Const):
        return term.value
    if isinstance(term, Shift):
        return eval_at(term.inner, trace, i + term.k)
    if isinstance(term, Binary):
        a = eval_at(term.left, trace, i)
        b = eval_at(term.right, trace, i)
        if a is None or b is None:
            return None
        return _apply_binary(term.op, a, b)
    if isinstance(term, Unary):
        a = eval_at(term.inner, trace, i)
        if a is None:
            return None
        if term.op is UnOp.NEG:
            return _norm(-_num(a, term.op))
        if not isinstance(a, bool):
            raise TermTypeError(f"logical 'not' needs a boolean operand, got {a!r}")
        return not a
    raise TypeError(f"not a term: {term!r}")


def eval_term(term: Term, t: Trace) -> Optional[Value]:
    return eval_at(term, t, 0)


# --- gets and definedness ---------------------------------------------------

class GetSite(NamedTuple):
    """One variable read: the name and the total shift applied to it."""
    name: str
    offset: int


def _walk_gets(term, offset, out):
    if isinstance(term, Var):
        out.append((term.strength, GetSite(term.name, offset)))
    elif isinstance(term, Shift):
        _walk_gets(term.inner, offset + term.k, out)
    elif isinstance(term, Unary):
        _walk_gets(term.inner, offset, out)
    elif isinstance(term, Binary):
        _walk_gets(term.left, offset, out)
        _walk_gets(term.right, offset, out)


def collect_gets(term: Term) -> tuple[list[GetSite], list[GetSite]]:
    """Split the variable reads of ``term`` into (strong, weak) lists."""
    sites = []
    _walk_gets(term, 0, sites)
    strong = [g for s, g in sites if s is STRONG]
    weak = [g for s, g in sites if s is WEAK]
    return strong, weak


class Definedness(enum.Enum):
    DEFINED = "defined"
    UNDEFINED_STRONG = "undefined-strong"
    UNDEFINED_WEAK = "undefined-weak"


def _site_defined(trace, i, site):
    state = trace.state_at(i + site.offset)
    return state is not None and site.name in state


def definedness_at(term: Term, trace: Trace, i: int) -> Definedness:
    strong, weak = collect_gets(term)
    if not all(_site_defined(trace, i, g) for g in strong):
        return Definedness.UNDEFINED_STRONG
    if not all(_site_defined(trace, i, g) for g in weak):
        return Definedness.UNDEFINED_WEAK
    if eval_at(term, trace, i) is None:
        # every read succeeded, so an operator failed (division by zero)
        return Definedness.UNDEFINED_STRONG
    return Definedness.DEFINED


def term_definedness(term: Term, t: Trace) -> Definedness:
    return definedness_at(term, t, 0)


def atom_truth(term: Term, trace: Trace, i: int) -> bool:
    """Truth of ``term`` used as an atomic formula at timestep ``i``."""
    d = definedness_at(term, trace, i)
    if d is Definedness.UNDEFINED_STRONG:
        return False
    if d is Definedness.UNDEFINED_WEAK:
        return True
    v = eval_at(term, trace, i)
    if not isinstance(v, bool):
        raise TermTypeError(f"atomic formula evaluated to non-boolean value {v!r}")
    return v


# --- structural transformations ----------------------------------------------

def shift_term(term: Term, k: int = 1) -> Term:
    """Look ``k`` steps further ahead, pushing the shift down to the reads."""
    if k == 0 or isinstance(term, Const):
        return term
    if isinstance(term, Var):
        return Shift(term, k)
    if isinstance(term, Shift):
        return shift_term(term.inner, term.k + k)
    if isinstance(term, Unary):
        return Unary(term.op, shift_term(term.inner, k))
    if isinstance(term, Binary):
        return Binary(term.op, shift_term(term.left, k), shift_term(term.right, k))
    raise TypeError(f"not a term: {term!r}")


def normalize_shifts(term: Term) -> Term:
    """Rewrite so shifts sit directly on variables, with nested shifts fused."""
    if isinstance(term, (Const, Var)):
        return term
    if isinstance(term, Shift):
        return shift_term(normalize_shifts(term.inner), term.k)
    if isinstance(term, Unary):
        return Unary(term.op, normalize_shifts(term.inner))
    return Binary(term.op, normalize_shifts(term.left), normalize_shifts(term.right))


def with_strength(term: Term, strength: Strength) -> Term:
    if isinstance(term, Var):
        return Var(term.name, strength)
    if isinstance(term, Const):
        return term
    if isinstance(term, Shift):
        return Shift(with_strength(term.inner, strength), term.k)
    if isinstance(term, Unary):
        return Unary(term.op, with_strength(term.inner, strength))
    return Binary(term.op, with_strength(term.left, strength), with_strength(term.right, strength))


def _is_nat(term, nat_vars):
    if isinstance(term, Const):
        return isinstance(term.value, int) and not isinstance(term.value, bool) and term.value >= 0
    if isinstance(term, Var):
        return term.name in nat_vars
    if isinstance(term, Shift):
        return _is_nat(term.inner, nat_vars)
    if isinstance(term, Binary) and term.op in (BinOp.ADD, BinOp.MUL, BinOp.MONUS):
        return _is_nat(term.left, nat_vars) and _is_nat(term.right, nat_vars)
    if isinstance(term, Binary) and term.op is BinOp.POW:
        return _is_nat(term.left, nat_vars)
    return False


def naturalize(term: Term, nat_vars) -> Term:
    """Turn ``a - b`` into truncated subtraction wherever both sides are naturals."""
    nat_vars = frozenset(nat_vars)
    if isinstance(term, (Const, Var)):
        return term
    if isinstance(term, Shift):
        return Shift(naturalize(term.inner, nat_vars), term.k)
    if isinstance(term, Unary):
        return Unary(term.op, naturalize(term.inner, nat_vars))
    left = naturalize(term.left, nat_vars)
    right = naturalize(term.right, nat_vars)
    op = term.op
    if op is BinOp.SUB and _is_nat(left, nat_vars) and _is_nat(right, nat_vars):
        op = BinOp.MONUS
    return Binary(op, left, right)


def term_size(term: Term) -> int:
    if isinstance(term, (Const, Var)):
        return 1
    if isinstance(term, (Shift, Unary)):
        return 1 + term_size(term.inner)
    return 1 + term_size(term.left) + term_size(term.right)
