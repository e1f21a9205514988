"""Two-light intersection example: trace generator and its properties.

Light 1 starts green with both queues empty.  A green light lets
``max_departs`` cars go per step; a red light lets none.  The green light
hands over to the other light in the step after its queue is observed empty.
Queues are natural numbers, so ``queue + arrives - departs`` is truncated at
zero, and the property formulas are evaluated with those variables declared
natural (see :func:`tracelogic.rewrite.naturalize_formula`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BadParameters
from .formula import Formula
from .parser import parse_formula
from .rewrite import naturalize_formula
from .trace import FiniteTrace, LassoTrace

NAT_VARS = ("TL1Arrives", "TL1Departs", "TL1Queue", "TL2Arrives", "TL2Departs", "TL2Queue")

# extra steps spent looking for a repeated state once the requested steps are done
PERIOD_SEARCH_LIMIT = 100_000


@dataclass(frozen=True)
class TrafficRun:
    simulated: list  # every state produced, through one full cycle when one was found
    steps: int
    lasso_start: Optional[int]
    period: Optional[int]

    @property
    def periodic(self) -> bool:
        return self.period is not None

    @property
    def records(self):
        return self.simulated[: self.steps]

    def lasso_records(self):
        """Prefix plus one copy of the cycle, ready for ``--lasso-start``."""
        if not self.periodic:
            raise BadParameters("the run did not become periodic within the search limit")
        return self.simulated[: self.lasso_start + self.period]

    def as_finite(self) -> FiniteTrace:
        return FiniteTrace(self.records)

    def as_lasso(self) -> LassoTrace:
        recs = self.lasso_records()
        return LassoTrace(recs[: self.lasso_start], recs[self.lasso_start:])


def _validate(steps, max_arrives, max_departs, schedules):
    if steps < 1:
        raise BadParameters("steps must be at least 1")
    if max_arrives < 0 or not max_departs > max_arrives:
        raise BadParameters("need max_departs > max_arrives >= 0")
    for sched in schedules:
        if not sched:
            raise BadParameters("arrival schedule must be nonempty")
        for a in sched:
            if not 0 <= a <= max_arrives:
                raise BadParameters(f"arrival count {a} outside 0..{max_arrives}")


def generate_traffic_trace(steps: int, max_arrives: int, max_departs: int,
                           arrival_schedule=(1,), arrival_schedule2=None) -> TrafficRun:
    """Simulate the intersection.

    Arrivals at light 1 follow ``arrival_schedule`` cyclically; light 2 uses
    ``arrival_schedule2`` (defaults to the same list).  The simulation runs
    until the joint (state, schedule phase) repeats, which gives the lasso
    shape of the infinite run; ``records`` holds the first ``steps`` states.
    Queues can grow without bound (e.g. an arrival at every step), so the
    search gives up after :data:`PERIOD_SEARCH_LIMIT` further steps and
    leaves ``period`` as ``None``.
    """
    sched1 = list(arrival_schedule)
    sched2 = list(arrival_schedule2) if arrival_schedule2 is not None else sched1
    _validate(steps, max_arrives, max_departs, (sched1, sched2))

    g1, q1, q2 = True, 0, 0
    seen = {}
    out = []
    lasso_start = period = None
    t = 0
    while len(out) < steps or (lasso_start is None and t < steps + PERIOD_SEARCH_LIMIT):
        a1 = sched1[t % len(sched1)]
        a2 = sched2[t % len(sched2)]
        d1 = max_departs if g1 else 0
        d2 = 0 if g1 else max_departs
        rec = {"TL1Green": g1, "TL2Green": not g1,
               "TL1Arrives": a1, "TL1Departs": d1, "TL1Queue": q1,
               "TL2Arrives": a2, "TL2Departs": d2, "TL2Queue": q2}
        key = (g1, q1, q2, t % len(sched1), t % len(sched2))
        if lasso_start is None:
            if key in seen:
                lasso_start = seen[key]
                period = t - lasso_start
            else:
                seen[key] = t
        if lasso_start is not None and len(out) >= steps:
            break
        out.append(rec)
        # the light switches when its queue was empty at the start of the step
        if g1 and q1 == 0:
            g1_next = False
        elif not g1 and q2 == 0:
            g1_next = True
        else:
            g1_next = g1
        q1 = max(0, q1 + a1 - d1)
        q2 = max(0, q2 + a2 - d2)
        g1 = g1_next
        t += 1
    return TrafficRun(out, steps, lasso_start, period)


def assumed_properties(max_arrives: int, max_departs: int) -> dict[str, str]:
    """Assumptions about the system, as formula text."""
    props = {"TL1StartGreen": "TL1Green"}
    for me, other in (("TL1", "TL2"), ("TL2", "TL1")):
        props[f"{me}To{other}Green"] = (
            f"G (({me}Green /\\ s({me}Queue) = 0) -> Xs (!{me}Green /\\ {other}Green))")
        props[f"{me}StayGreen"] = (
            f"G (({me}Green /\\ s({me}Queue) != 0) -> Xs ({me}Green /\\ !{other}Green))")
        props[f"{me}GreenDeparts"] = f"G ({me}Green -> s({me}Departs) = {max_departs})"
        props[f"{me}RedDeparts"] = f"G (!{me}Green -> s({me}Departs) = 0)"
        props[f"{me}ArrivesBounds"] = (
            f"G (0 <= s({me}Arrives) /\\ s({me}Arrives) <= {max_arrives})")
        props[f"{me}QueueNext"] = (
            f"G (s(X {me}Queue) = s({me}Queue) + s({me}Arrives) - s({me}Departs))")
    return props


DESIRED_PROPERTIES = {
    "G_OneLightGreen": "G (TL1Green <-> !TL2Green)",
    "G_F_Green": "(G (F TL1Green)) /\\ (G (F TL2Green))",
}


def compile_property(text: str) -> Formula:
    return naturalize_formula(parse_formula(text), NAT_VARS)
