"""Satisfaction of formulas by finite and lasso traces.

Every subformula is evaluated once per trace position, bottom-up, into a
truth vector.  A lasso needs only its ``prefix + cycle`` distinct positions:
from the cycle onwards all truth values repeat with the cycle's period, so
the successor of the last cycle position is the first one.

:class:`Evaluator` evaluates over a whole bundle of traces at once and
memoizes subformula vectors, which is what makes checking many formulas over
many traces cheap.  :func:`sat`, :func:`sat_at` and :func:`check` are the
single-trace entry points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import IndexOutOfRange
from .formula import (And, Atom, ConstProp, Finally, Formula, Globally, Iff, Imp,
                      Not, Or, Release, SNext, Until, WNext)
from .terms import atom_truth
from .trace import Trace


class Evaluator:
    """Truth vectors of formulas over a fixed bundle of traces."""

    def __init__(self, traces: Trace | Iterable[Trace]):
        if isinstance(traces, Trace):
            traces = [traces]
        self.traces = list(traces)
        sizes = [t.n_positions for t in self.traces]
        self.start = np.zeros(len(sizes), dtype=np.int64)
        if sizes:
            self.start[1:] = np.cumsum(sizes)[:-1]
        self.prefix = np.array([t.prefix_len for t in self.traces], dtype=np.int64)
        self.cycle = np.array([t.cycle_len for t in self.traces], dtype=np.int64)
        self.n = int(sum(sizes))
        self._memo: dict[Formula, np.ndarray] = {}

    def clear(self):
        self._memo.clear()

    def _layout(self):
        return self.start, self.prefix, self.cycle

    def _atom(self, term):
        out = np.empty(self.n, dtype=np.uint8)
        for s, t in zip(self.start.tolist(), self.traces):
            for i in range(t.n_positions):
                out[s + i] = atom_truth(term, t, i)
        return out

    def vector(self, f: Formula) -> np.ndarray:
        """Truth of ``f`` at every position of the bundle (uint8 array)."""
        v = self._memo.get(f)
        if v is None:
            v = self._compute(f)
            self._memo[f] = v
        return v

    def _compute(self, f):
        if isinstance(f, ConstProp):
            return np.full(self.n, int(f.b), dtype=np.uint8)
        if isinstance(f, Atom):
            return self._atom(f.term)
        if isinstance(f, Not):
            return 1 - self.vector(f.p)
        if isinstance(f, And):
            return self.vector(f.p) & self.vector(f.q)
        if isinstance(f, Or):
            return self.vector(f.p) | self.vector(f.q)
        if isinstance(f, Imp):
            return (1 - self.vector(f.p)) | self.vector(f.q)
        if isinstance(f, Iff):
            return (self.vector(f.p) == self.vector(f.q)).astype(np.uint8)
        if isinstance(f, SNext):
            return kernels.next_step(self.vector(f.p), *self._layout(), True)
        if isinstance(f, WNext):
            return kernels.next_step(self.vector(f.p), *self._layout(), False)
        if isinstance(f, Until):
            return kernels.until(self.vector(f.p), self.vector(f.q), *self._layout())
        if isinstance(f, Release):
            return kernels.release(self.vector(f.p), self.vector(f.q), *self._layout())
        if isinstance(f, Finally):
            ones = np.ones(self.n, dtype=np.uint8)
            return kernels.until(ones, self.vector(f.p), *self._layout())
        if isinstance(f, Globally):
            zeros = np.zeros(self.n, dtype=np.uint8)
            return kernels.release(zeros, self.vector(f.p), *self._layout())
        raise TypeError(f"cannot evaluate {f!r}")

    def sat(self, f: Formula) -> list[bool]:
        """``sat`` of ``f`` for each trace of the bundle, in order."""
        v = self.vector(f)
        return [bool(x) for x in v[self.start]]

    def sat_at(self, j: int, i: int, f: Formula) -> bool:
        t = self.traces[j]
        if not 0 <= i < t.length:
            raise IndexOutOfRange(f"position {i} is outside a trace of length {t.length}")
        return bool(self.vector(f)[self.start[j] + t.canonical_position(i)])

    def local(self, j: int, f: Formula) -> np.ndarray:
        """Truth of ``f`` at the distinct positions of trace ``j``."""
        s = int(self.start[j])
        return self.vector(f)[s:s + self.traces[j].n_positions]


def sat(t: Trace, f: Formula) -> bool:
    return Evaluator(t).sat(f)[0]


def sat_at(t: Trace, i: int, f: Formula) -> bool:
    return Evaluator(t).sat_at(0, i, f)


def sat_all(traces: Iterable[Trace], f: Formula) -> list[bool]:
    return Evaluator(traces).sat(f)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[int] = None
    detail: str = ""


def _scan_limit(t: Trace) -> int:
    # every earliest witness of a lasso lies within prefix + cycle steps; the
    # bound below leaves room for one more cycle
    if t.cycle_len:
        return t.prefix_len + 2 * t.cycle_len
    return t.n_positions


def _earliest_until(t, pv, qv):
    for k in range(_scan_limit(t)):
        c = t.canonical_position(k)
        if qv[c]:
            return k
        if not pv[c]:
            return None
    return None


def _earliest_release_failure(t, pv, qv):
    for k in range(_scan_limit(t)):
        c = t.canonical_position(k)
        if not qv[c]:
            return k
        if pv[c]:
            return None
    return None


def check(t: Trace, f: Formula, evaluator: Evaluator | None = None) -> Verdict:
    """Evaluate ``f`` on ``t`` and explain the outcome.

    A witness is reported for Finally/Until when the formula holds (the
    earliest position where the goal is reached) and for Globally/Release
    when it fails (the earliest position where the obligation breaks).
    """
    ev = evaluator or Evaluator(t)
    j = ev.traces.index(t) if evaluator is not None else 0
    holds = bool(ev.local(j, f)[0])
    kind = "lasso" if t.cycle_len else "finite"
    where = f"{kind} trace of length {t.length}"

    if isinstance(f, (Finally, Until)) and holds:
        pv = ev.local(j, f.p) if isinstance(f, Until) else np.ones(t.n_positions, np.uint8)
        qv = ev.local(j, f.q if isinstance(f, Until) else f.p)
        k = _earliest_until(t, pv, qv)
        return Verdict(True, k, f"goal first reached at step {k} of the {where}")
    if isinstance(f, (Globally, Release)) and not holds:
        if isinstance(f, Release):
            pv, qv = ev.local(j, f.p), ev.local(j, f.q)
        else:
            pv, qv = np.zeros(t.n_positions, np.uint8), ev.local(j, f.p)
        k = _earliest_release_failure(t, pv, qv)
        return Verdict(False, k, f"obligation first violated at step {k} of the {where}")
    if holds:
        return Verdict(True, None, f"formula holds on the {where}")
    return Verdict(False, None, f"formula does not hold on the {where}")
