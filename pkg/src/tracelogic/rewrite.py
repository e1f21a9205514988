"""Semantics-preserving formula rewriting.

Rules are written as patterns over formulas, with :class:`Meta` nodes
standing for arbitrary subformulas.  A rule set is applied innermost-first,
left to right, until no rule fires.  Every rule registered here is checked
for soundness against the exhaustive small-trace corpus in the test suite.

Rule families:

``EXPAND_RULES``
    remove Finally, Globally, WNext, Imp and Iff.
``NNF_RULES``
    push negations down to atoms and constants.
``SIMPLIFY_RULES``
    constant folding, unit/absorbing elements, idempotence, double negation.
    Each rule strictly decreases :func:`~tracelogic.formula.size`, which
    bounds the number of applications by the size of the input.
``PUSH_NEXT_RULES``
    distribute next over conjunction/disjunction and fold it into atoms by
    shifting their reads one step ahead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .formula import (FALSE, TRUE, And, Atom, ConstProp, Finally, Formula, Globally,
                      Iff, Imp, Not, Or, Release, SNext, Until, WNext, _node, map_children)
from .terms import Const, collect_gets, naturalize, shift_term


@_node
class Meta(Formula):
    """Pattern variable matching any formula."""
    name: str


P, Q = Meta("P"), Meta("Q")

Binding = dict


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Formula
    rhs: Union[Formula, Callable[[Binding], Formula]]
    guard: Optional[Callable[[Binding], bool]] = None

    def match(self, f: Formula) -> Optional[Binding]:
        b = {}
        if not _match(self.lhs, f, b):
            return None
        if self.guard is not None and not self.guard(b):
            return None
        return b

    def build(self, binding: Binding) -> Formula:
        if callable(self.rhs) and not isinstance(self.rhs, Formula):
            return self.rhs(binding)
        return substitute(self.rhs, binding)

    def apply(self, f: Formula) -> Optional[Formula]:
        """Rewrite ``f`` at its root, or return ``None`` if the rule does not fire."""
        b = self.match(f)
        return None if b is None else self.build(b)


def _match(pat, f, b):
    if isinstance(pat, Meta):
        if pat.name in b:
            return b[pat.name] == f
        b[pat.name] = f
        return True
    if type(pat) is not type(f):
        return False
    if isinstance(pat, (ConstProp, Atom)):
        return pat == f
    return all(_match(pc, fc, b) for pc, fc in zip(pat.children, f.children))


def substitute(pat: Formula, binding: Binding) -> Formula:
    if isinstance(pat, Meta):
        return binding[pat.name]
    return map_children(pat, lambda c: substitute(c, binding))


def _rule(name, lhs, rhs, guard=None):
    return RewriteRule(name, lhs, rhs, guard)


EXPAND_RULES = [
    _rule("expand-finally", Finally(P), Until(TRUE, P)),
    _rule("expand-globally", Globally(P), Not(Until(TRUE, Not(P)))),
    _rule("expand-wnext", WNext(P), Not(SNext(Not(P)))),
    _rule("expand-imp", Imp(P, Q), Or(Not(P), Q)),
    _rule("expand-iff", Iff(P, Q), And(Or(Not(P), Q), Or(Not(Q), P))),
]

NNF_RULES = [
    _rule("nnf-not-true", Not(TRUE), FALSE),
    _rule("nnf-not-false", Not(FALSE), TRUE),
    _rule("nnf-double-negation", Not(Not(P)), P),
    _rule("nnf-not-and", Not(And(P, Q)), Or(Not(P), Not(Q))),
    _rule("nnf-not-or", Not(Or(P, Q)), And(Not(P), Not(Q))),
    _rule("nnf-imp", Imp(P, Q), Or(Not(P), Q)),
    _rule("nnf-not-iff", Not(Iff(P, Q)), Iff(P, Not(Q))),
    _rule("nnf-not-snext", Not(SNext(P)), WNext(Not(P))),
    _rule("nnf-not-wnext", Not(WNext(P)), SNext(Not(P))),
    _rule("nnf-not-until", Not(Until(P, Q)), Release(Not(P), Not(Q))),
    _rule("nnf-not-release", Not(Release(P, Q)), Until(Not(P), Not(Q))),
    _rule("nnf-not-finally", Not(Finally(P)), Globally(Not(P))),
    _rule("nnf-not-globally", Not(Globally(P)), Finally(Not(P))),
]


def _const_atom(b):
    return isinstance(b["P"], Atom) and isinstance(b["P"].term, Const)


SIMPLIFY_RULES = [
    _rule("not-true", Not(TRUE), FALSE),
    _rule("not-false", Not(FALSE), TRUE),
    _rule("double-negation", Not(Not(P)), P),
    _rule("and-true-right", And(P, TRUE), P),
    _rule("and-true-left", And(TRUE, P), P),
    _rule("and-false-right", And(P, FALSE), FALSE),
    _rule("and-false-left", And(FALSE, P), FALSE),
    _rule("and-idempotent", And(P, P), P),
    _rule("or-false-right", Or(P, FALSE), P),
    _rule("or-false-left", Or(FALSE, P), P),
    _rule("or-true-right", Or(P, TRUE), TRUE),
    _rule("or-true-left", Or(TRUE, P), TRUE),
    _rule("or-idempotent", Or(P, P), P),
    _rule("imp-false-left", Imp(FALSE, P), TRUE),
    _rule("imp-true-left", Imp(TRUE, P), P),
    _rule("imp-true-right", Imp(P, TRUE), TRUE),
    _rule("imp-false-right", Imp(P, FALSE), Not(P)),
    _rule("imp-reflexive", Imp(P, P), TRUE),
    _rule("iff-true-right", Iff(P, TRUE), P),
    _rule("iff-true-left", Iff(TRUE, P), P),
    _rule("iff-false-right", Iff(P, FALSE), Not(P)),
    _rule("iff-false-left", Iff(FALSE, P), Not(P)),
    _rule("iff-reflexive", Iff(P, P), TRUE),
    _rule("until-false-goal", Until(P, FALSE), FALSE),
    _rule("until-true-goal", Until(P, TRUE), TRUE),
    _rule("until-false-hold", Until(FALSE, Q), Q),
    _rule("until-idempotent", Until(P, P), P),
    _rule("release-true-goal", Release(P, TRUE), TRUE),
    _rule("release-false-goal", Release(P, FALSE), FALSE),
    _rule("release-true-trigger", Release(TRUE, Q), Q),
    _rule("release-idempotent", Release(P, P), P),
    _rule("finally-true", Finally(TRUE), TRUE),
    _rule("finally-false", Finally(FALSE), FALSE),
    _rule("finally-finally", Finally(Finally(P)), Finally(P)),
    _rule("globally-true", Globally(TRUE), TRUE),
    _rule("globally-false", Globally(FALSE), FALSE),
    _rule("globally-globally", Globally(Globally(P)), Globally(P)),
    _rule("snext-false", SNext(FALSE), FALSE),
    _rule("wnext-true", WNext(TRUE), TRUE),
    _rule("atom-constant", P, lambda b: ConstProp(b["P"].term.value), guard=_const_atom),
]


def _has_strong_get(b):
    a = b["P"]
    return isinstance(a, Atom) and bool(collect_gets(a.term)[0])


def _only_weak_gets(b):
    # with no strong read and at least one weak read, reading past the end
    # makes the shifted atom true, exactly like weak next
    a = b["P"]
    if not isinstance(a, Atom):
        return False
    strong, weak = collect_gets(a.term)
    return not strong and bool(weak)


def _shifted_atom(b):
    return Atom(shift_term(b["P"].term, 1))


PUSH_NEXT_RULES = [
    _rule("snext-and", SNext(And(P, Q)), And(SNext(P), SNext(Q))),
    _rule("snext-or", SNext(Or(P, Q)), Or(SNext(P), SNext(Q))),
    _rule("wnext-and", WNext(And(P, Q)), And(WNext(P), WNext(Q))),
    _rule("wnext-or", WNext(Or(P, Q)), Or(WNext(P), WNext(Q))),
    _rule("snext-strong-atom", SNext(P), _shifted_atom, guard=_has_strong_get),
    _rule("wnext-weak-atom", WNext(P), _shifted_atom, guard=_only_weak_gets),
]

ALL_RULES = EXPAND_RULES + NNF_RULES + SIMPLIFY_RULES + PUSH_NEXT_RULES


class _Counter:
    def __init__(self):
        self.n = 0


def normalize(f: Formula, rules, counter: _Counter | None = None) -> Formula:
    """Apply ``rules`` innermost-first, left to right, until none fires."""
    counter = counter if counter is not None else _Counter()
    f = map_children(f, lambda c: normalize(c, rules, counter))
    for rule in rules:
        g = rule.apply(f)
        if g is not None:
            counter.n += 1
            return normalize(g, rules, counter)
    return f


def expand_derived(f: Formula) -> Formula:
    return normalize(f, EXPAND_RULES)


def to_nnf(f: Formula) -> Formula:
    return normalize(f, NNF_RULES)


def simplify(f: Formula) -> Formula:
    return normalize(f, SIMPLIFY_RULES)


def simplify_counting(f: Formula) -> tuple[Formula, int]:
    """Like :func:`simplify`, also returning the number of rule applications."""
    c = _Counter()
    return normalize(f, SIMPLIFY_RULES, c), c.n


def push_next(f: Formula) -> Formula:
    return normalize(f, PUSH_NEXT_RULES)


def normalize_pipeline(f: Formula) -> Formula:
    return simplify(to_nnf(expand_derived(f)))


def map_atoms(f: Formula, fn) -> Formula:
    if isinstance(f, Atom):
        return fn(f)
    return map_children(f, lambda c: map_atoms(c, fn))


def naturalize_formula(f: Formula, nat_vars) -> Formula:
    """Use truncated subtraction between naturals inside every atom."""
    return map_atoms(f, lambda a: Atom(naturalize(a.term, nat_vars)))


def is_nnf(f: Formula) -> bool:
    if isinstance(f, Not):
        return isinstance(f.p, (Atom, ConstProp))
    if isinstance(f, Imp):
        return False
    return all(is_nnf(c) for c in f.children)


__all__ = [
    "Meta", "RewriteRule", "EXPAND_RULES", "NNF_RULES", "SIMPLIFY_RULES", "PUSH_NEXT_RULES",
    "ALL_RULES", "normalize", "expand_derived", "to_nnf", "simplify", "simplify_counting",
    "push_next", "normalize_pipeline", "naturalize_formula", "map_atoms", "is_nnf",
    "substitute",
]
