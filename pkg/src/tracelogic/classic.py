"""Classic propositional LTL and LTLf, and their embeddings.

Each logic has its own small syntax tree and a direct evaluator.  The direct
evaluators deliberately share no code with :mod:`tracelogic.semantics`: LTL
is evaluated by walking the successor chain of the lasso, LTLf by plain
recursion over list indices.  Agreement between a direct evaluator and the
core evaluator on a translated formula is therefore a real cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import formula as core
from .errors import NotFinite, NotInfinite, UnboundVariable, UnsupportedConstruct
from .semantics import sat
from .terms import STRONG, Var as TermVar
from .trace import FiniteTrace, LassoTrace, Trace


# --- LTL ----------------------------------------------------------------------

@dataclass(frozen=True)
class LVar:
    name: str


@dataclass(frozen=True)
class LNot:
    f: "LTLFormula"


@dataclass(frozen=True)
class LOr:
    f1: "LTLFormula"
    f2: "LTLFormula"


@dataclass(frozen=True)
class LNext:
    f: "LTLFormula"


@dataclass(frozen=True)
class LUntil:
    f1: "LTLFormula"
    f2: "LTLFormula"


LTLFormula = Union[LVar, LNot, LOr, LNext, LUntil]


# --- LTLf ---------------------------------------------------------------------

@dataclass(frozen=True)
class FVar:
    name: str


@dataclass(frozen=True)
class FNot:
    f: "LTLfFormula"


@dataclass(frozen=True)
class FAnd:
    f1: "LTLfFormula"
    f2: "LTLfFormula"


@dataclass(frozen=True)
class FOr:
    f1: "LTLfFormula"
    f2: "LTLfFormula"


@dataclass(frozen=True)
class FSNext:
    f: "LTLfFormula"


@dataclass(frozen=True)
class FWNext:
    f: "LTLfFormula"


@dataclass(frozen=True)
class FUntil:
    f1: "LTLfFormula"
    f2: "LTLfFormula"


LTLfFormula = Union[FVar, FNot, FAnd, FOr, FSNext, FWNext, FUntil]


def _prop(state, name):
    if name not in state:
        raise UnboundVariable(name)
    v = state[name]
    if not isinstance(v, bool):
        raise UnboundVariable(f"{name} is not bound to a boolean")
    return v


def ltl_sat_direct(t: Trace, f: LTLFormula) -> bool:
    """Standard LTL semantics on an infinite (lasso) trace."""
    if not isinstance(t, LassoTrace):
        raise NotInfinite("LTL formulas are evaluated on infinite (lasso) traces")
    word = list(t.prefix) + list(t.cycle)
    loop_to = len(t.prefix)

    def succ(i):
        return i + 1 if i + 1 < len(word) else loop_to

    memo = {}

    def holds(f, i):
        key = (f, i)
        if key in memo:
            return memo[key]
        if isinstance(f, LVar):
            r = _prop(word[i], f.name)
        elif isinstance(f, LNot):
            r = not holds(f.f, i)
        elif isinstance(f, LOr):
            r = holds(f.f1, i) or holds(f.f2, i)
        elif isinstance(f, LNext):
            r = holds(f.f, succ(i))
        elif isinstance(f, LUntil):
            # follow successors; once a position repeats, every later
            # position has already been seen, so a witness cannot appear
            r = False
            seen = set()
            j = i
            while j not in seen:
                if holds(f.f2, j):
                    r = True
                    break
                if not holds(f.f1, j):
                    break
                seen.add(j)
                j = succ(j)
        else:
            raise TypeError(f"not an LTL formula: {f!r}")
        memo[key] = r
        return r

    return holds(f, 0)


def ltlf_sat_direct(t: Trace, f: LTLfFormula) -> bool:
    """LTLf semantics on a finite trace."""
    if not isinstance(t, FiniteTrace):
        raise NotFinite("LTLf formulas are evaluated on finite traces")
    word = t.states
    last = len(word) - 1
    memo = {}

    def holds(f, i):
        key = (f, i)
        if key not in memo:
            memo[key] = _holds(f, i)
        return memo[key]

    def _holds(f, i):
        if isinstance(f, FVar):
            return _prop(word[i], f.name)
        if isinstance(f, FNot):
            return not holds(f.f, i)
        if isinstance(f, FAnd):
            return holds(f.f1, i) and holds(f.f2, i)
        if isinstance(f, FOr):
            return holds(f.f1, i) or holds(f.f2, i)
        if isinstance(f, FSNext):
            return i < last and holds(f.f, i + 1)
        if isinstance(f, FWNext):
            return i == last or holds(f.f, i + 1)
        if isinstance(f, FUntil):
            for k in range(i, last + 1):
                if holds(f.f2, k):
                    return True
                if not holds(f.f1, k):
                    return False
            return False
        raise TypeError(f"not an LTLf formula: {f!r}")

    return holds(f, 0)


def _atom(name):
    return core.Atom(TermVar(name, STRONG))


def ltl_to_core(f: LTLFormula, next_op=core.SNext) -> core.Formula:
    """Translate to a core formula.  ``next_op`` may be ``WNext`` as well;
    on infinite traces the two coincide."""
    if isinstance(f, LVar):
        return _atom(f.name)
    if isinstance(f, LNot):
        return core.Not(ltl_to_core(f.f, next_op))
    if isinstance(f, LOr):
        return core.Or(ltl_to_core(f.f1, next_op), ltl_to_core(f.f2, next_op))
    if isinstance(f, LNext):
        return next_op(ltl_to_core(f.f, next_op))
    if isinstance(f, LUntil):
        return core.Until(ltl_to_core(f.f1, next_op), ltl_to_core(f.f2, next_op))
    raise TypeError(f"not an LTL formula: {f!r}")


_LTLF_MAP = {FNot: core.Not, FAnd: core.And, FOr: core.Or, FSNext: core.SNext,
             FWNext: core.WNext, FUntil: core.Until}


def ltlf_to_core(f: LTLfFormula) -> core.Formula:
    if isinstance(f, FVar):
        return _atom(f.name)
    ctor = _LTLF_MAP.get(type(f))
    if ctor is None:
        raise TypeError(f"not an LTLf formula: {f!r}")
    if isinstance(f, (FNot, FSNext, FWNext)):
        return ctor(ltlf_to_core(f.f))
    return ctor(ltlf_to_core(f.f1), ltlf_to_core(f.f2))


def equisat_check(logic: str, f, t: Trace) -> bool:
    """Whether the direct semantics and the core semantics of the translation agree."""
    if logic == "ltl":
        return ltl_sat_direct(t, f) == sat(t, ltl_to_core(f))
    if logic == "ltlf":
        return ltlf_sat_direct(t, f) == sat(t, ltlf_to_core(f))
    raise ValueError(f"unknown logic {logic!r}")


# --- conversion from parsed core formulas -------------------------------------

def _var_name(a):
    term = a.term
    if isinstance(term, TermVar) and term.strength is STRONG:
        return term.name
    raise UnsupportedConstruct(f"only propositional variables are allowed, got {a}")


def ltl_from_core(f: core.Formula) -> LTLFormula:
    """Read a parsed formula as classic LTL.

    Conjunction, implication and equivalence are desugared into the
    primitive connectives; constants and F/G/R have no LTL counterpart here
    since the primitive syntax has no constant.
    """
    if isinstance(f, core.Atom):
        return LVar(_var_name(f))
    if isinstance(f, core.Not):
        return LNot(ltl_from_core(f.p))
    if isinstance(f, core.Or):
        return LOr(ltl_from_core(f.p), ltl_from_core(f.q))
    if isinstance(f, core.And):
        return LNot(LOr(LNot(ltl_from_core(f.p)), LNot(ltl_from_core(f.q))))
    if isinstance(f, core.Imp):
        return LOr(LNot(ltl_from_core(f.p)), ltl_from_core(f.q))
    if isinstance(f, core.Iff):
        a, b = ltl_from_core(f.p), ltl_from_core(f.q)
        return LNot(LOr(LNot(LOr(LNot(a), b)), LNot(LOr(LNot(b), a))))
    if isinstance(f, (core.SNext, core.WNext)):
        return LNext(ltl_from_core(f.p))
    if isinstance(f, core.Until):
        return LUntil(ltl_from_core(f.p), ltl_from_core(f.q))
    raise UnsupportedConstruct(f"{type(f).__name__} is not part of the LTL syntax")


def ltlf_from_core(f: core.Formula) -> LTLfFormula:
    if isinstance(f, core.Atom):
        return FVar(_var_name(f))
    if isinstance(f, core.Not):
        return FNot(ltlf_from_core(f.p))
    if isinstance(f, core.And):
        return FAnd(ltlf_from_core(f.p), ltlf_from_core(f.q))
    if isinstance(f, core.Or):
        return FOr(ltlf_from_core(f.p), ltlf_from_core(f.q))
    if isinstance(f, core.Imp):
        return FOr(FNot(ltlf_from_core(f.p)), ltlf_from_core(f.q))
    if isinstance(f, core.SNext):
        return FSNext(ltlf_from_core(f.p))
    if isinstance(f, core.WNext):
        return FWNext(ltlf_from_core(f.p))
    if isinstance(f, core.Until):
        return FUntil(ltlf_from_core(f.p), ltlf_from_core(f.q))
    raise UnsupportedConstruct(f"{type(f).__name__} is not part of the LTLf syntax")
