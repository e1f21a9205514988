"""States and traces.

A trace is a nonempty sequence of states.  Finite traces hold their states
explicitly; infinite traces are ultimately periodic and are stored as a lasso
(a possibly-empty prefix followed by a cycle that repeats forever).

Indexing past the end of a finite trace yields ``None`` rather than raising,
and so does shifting a trace by its whole length.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from decimal import Decimal
from fractions import Fraction
from typing import Union

from .errors import EmptyCycle, EmptyTrace

Value = Union[bool, int, Fraction]

#: Length of every lasso trace.  Finite lengths are plain ``int`` values >= 1,
#: so ``i < length(t)`` works uniformly.
INFINITE = math.inf


def to_value(x) -> Value:
    """Coerce ``x`` to an exact value.

    Fractions with denominator 1 collapse to ``int`` so that equal numbers
    hash equally.  Floats and decimals are converted through their decimal
    text, i.e. ``0.1`` becomes ``1/10`` and not the binary approximation.
    """
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite number {x!r}")
        x = Fraction(repr(x))
    elif isinstance(x, Decimal):
        if not x.is_finite():
            raise ValueError(f"non-finite number {x!r}")
        x = Fraction(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"unsupported value {x!r} of type {type(x).__name__}")


def value_kind(v: Value) -> str:
    return "bool" if isinstance(v, bool) else "num"


def _tag(v: Value):
    # bool is an int subclass; keep True and 1 apart in equality and hashing
    return (value_kind(v), v)


class State(Mapping):
    """Immutable assignment of values to variable names at one timestep."""

    __slots__ = ("_items", "_dict", "_hash")

    def __init__(self, bindings: Mapping | Iterable = ()):
        d = dict(bindings)
        for name in d:
            if not isinstance(name, str) or not name:
                raise ValueError(f"variable names must be nonempty strings, got {name!r}")
        self._dict = {k: to_value(v) for k, v in sorted(d.items())}
        self._items = tuple((k, _tag(v)) for k, v in self._dict.items())
        self._hash = hash(self._items)

    def __getitem__(self, name):
        return self._dict[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._dict)

    def __len__(self):
        return len(self._dict)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, State):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == State(other)
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self._dict.items())
        return "{" + inner + "}"


def _as_state(s) -> State:
    return s if isinstance(s, State) else State(s)


class Trace:
    """Common interface of :class:`FiniteTrace` and :class:`LassoTrace`."""

    __slots__ = ()

    # number of distinct positions the evaluator needs to look at
    n_positions: int
    prefix_len: int
    cycle_len: int

    @property
    def length(self):
        raise NotImplementedError

    def state_at(self, i: int) -> State | None:
        raise NotImplementedError

    def shift(self, k: int) -> Trace | None:
        raise NotImplementedError

    def canonical_position(self, i: int) -> int:
        """Map a timestep to a position in ``range(n_positions)``."""
        raise NotImplementedError


class FiniteTrace(Trace):
    __slots__ = ("states", "_hash")

    def __init__(self, states: Iterable):
        states = tuple(_as_state(s) for s in states)
        if not states:
            raise EmptyTrace("a trace must contain at least one state")
        self.states = states
        self._hash = hash(("finite", states))

    @property
    def length(self) -> int:
        return len(self.states)

    @property
    def n_positions(self) -> int:
        return len(self.states)

    @property
    def prefix_len(self) -> int:
        return len(self.states)

    @property
    def cycle_len(self) -> int:
        return 0

    def state_at(self, i):
        if 0 <= i < len(self.states):
            return self.states[i]
        return None

    def shift(self, k):
        if k < 0:
            raise ValueError("shift amount must be non-negative")
        if k >= len(self.states):
            return None
        return self if k == 0 else FiniteTrace(self.states[k:])

    def canonical_position(self, i):
        return i

    def __eq__(self, other):
        return isinstance(other, FiniteTrace) and self.states == other.states

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteTrace({list(self.states)})"


class LassoTrace(Trace):
    """``prefix`` followed by ``cycle`` repeated forever."""

    __slots__ = ("prefix", "cycle", "_hash")

    def __init__(self, prefix: Iterable, cycle: Iterable):
        prefix = tuple(_as_state(s) for s in prefix)
        cycle = tuple(_as_state(s) for s in cycle)
        if not cycle:
            raise EmptyCycle("the cycle of a lasso trace must be nonempty")
        self.prefix = prefix
        self.cycle = cycle
        self._hash = hash(("lasso", prefix, cycle))

    @property
    def length(self):
        return INFINITE

    @property
    def n_positions(self) -> int:
        return len(self.prefix) + len(self.cycle)

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)

    @property
    def cycle_len(self) -> int:
        return len(self.cycle)

    def canonical_position(self, i):
        p = len(self.prefix)
        if i < p:
            return i
        return p + (i - p) % len(self.cycle)

    def state_at(self, i):
        if i < 0:
            return None
        p = len(self.prefix)
        if i < p:
            return self.prefix[i]
        return self.cycle[(i - p) % len(self.cycle)]

    def shift(self, k):
        if k < 0:
            raise ValueError("shift amount must be non-negative")
        if k == 0:
            return self
        p = len(self.prefix)
        if k <= p:
            return LassoTrace(self.prefix[k:], self.cycle)
        r = (k - p) % len(self.cycle)
        return LassoTrace((), self.cycle[r:] + self.cycle[:r])

    def __eq__(self, other):
        return (isinstance(other, LassoTrace) and self.prefix == other.prefix
                and self.cycle == other.cycle)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LassoTrace({list(self.prefix)}, {list(self.cycle)})"


def trace_from_states(states) -> FiniteTrace:
    return FiniteTrace(states)


def trace_lasso(prefix, cycle) -> LassoTrace:
    return LassoTrace(prefix, cycle)


def length(t: Trace):
    return t.length


def state_at(t: Trace, i: int) -> State | None:
    return t.state_at(i)


def shift(t: Trace, k: int) -> Trace | None:
    return t.shift(k)
