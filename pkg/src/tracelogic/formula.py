"""Temporal formula syntax trees."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import TermTypeError
from .terms import NUM, Term, term_kind, term_size


def _cached_hash(self):
    try:
        return self.__dict__["_hash"]
    except KeyError:
        h = hash((type(self).__name__,) + tuple(getattr(self, f.name) for f in fields(self)))
        object.__setattr__(self, "_hash", h)
        return h


def _node(cls):
    # frozen dataclass whose structural hash is computed once; formulas are
    # used heavily as memo keys during evaluation
    cls = dataclass(frozen=True)(cls)
    cls.__hash__ = _cached_hash
    return cls


class Formula:
    """Base class of formula nodes.

    ``&``, ``|`` and ``~`` build conjunctions, disjunctions and negations.
    """

    children: tuple = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        from .parser import print_formula
        return print_formula(self)


@_node
class ConstProp(Formula):
    b: bool

    def __post_init__(self):
        if not isinstance(self.b, bool):
            raise TypeError(f"ConstProp needs a bool, got {self.b!r}")


@_node
class Atom(Formula):
    term: Term

    def __post_init__(self):
        if not isinstance(self.term, Term):
            raise TypeError(f"Atom needs a term, got {self.term!r}")
        if term_kind(self.term) == NUM:
            raise TermTypeError(f"atomic formula must be boolean, got numeric term {self.term}")


class _Unary(Formula):
    @property
    def children(self):
        return (self.p,)


class _Binary(Formula):
    @property
    def children(self):
        return (self.p, self.q)


@_node
class Not(_Unary):
    p: Formula


@_node
class SNext(_Unary):
    p: Formula


@_node
class WNext(_Unary):
    p: Formula


@_node
class Finally(_Unary):
    p: Formula


@_node
class Globally(_Unary):
    p: Formula


@_node
class And(_Binary):
    p: Formula
    q: Formula


@_node
class Or(_Binary):
    p: Formula
    q: Formula


@_node
class Imp(_Binary):
    p: Formula
    q: Formula


@_node
class Iff(_Binary):
    p: Formula
    q: Formula


@_node
class Until(_Binary):
    p: Formula
    q: Formula


@_node
class Release(_Binary):
    p: Formula
    q: Formula


TRUE = ConstProp(True)
FALSE = ConstProp(False)

UNARY_TYPES = (Not, SNext, WNext, Finally, Globally)
BINARY_TYPES = (And, Or, Imp, Iff, Until, Release)


def rebuild(f: Formula, children) -> Formula:
    """Return a node of the same type as ``f`` with new children."""
    children = tuple(children)
    if children == f.children:
        return f
    return type(f)(*children)


def map_children(f: Formula, fn) -> Formula:
    if not f.children:
        return f
    return rebuild(f, (fn(c) for c in f.children))


def depth(f: Formula) -> int:
    """Height of the tree; leaves (atoms and constants) have depth 1."""
    if not f.children:
        return 1
    return 1 + max(depth(c) for c in f.children)


def size(f: Formula) -> int:
    """Node count, with atoms weighted by the size of their term."""
    if isinstance(f, Atom):
        return 1 + term_size(f.term)
    return 1 + sum(size(c) for c in f.children)


def subformulas(f: Formula):
    """All subformulas of ``f`` in post-order, without duplicates."""
    seen = {}

    def walk(g):
        if g in seen:
            return
        for c in g.children:
            walk(c)
        seen[g] = None

    walk(f)
    return list(seen)


def atoms(f: Formula) -> list[Atom]:
    return [g for g in subformulas(f) if isinstance(g, Atom)]
