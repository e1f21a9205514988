"""Small-model corpora for exhaustive and randomized checking.

The default trace corpus is every boolean trace over two variables ``p`` and
``q`` with finite length 1-4, plus every lasso with prefix length 0-2 and
cycle length 1-2.
"""

from __future__ import annotations

import itertools
import random

from . import classic as cl
from .formula import (FALSE, TRUE, And, Atom, Finally, Formula, Globally, Iff, Imp, Not, Or,
                      Release, SNext, Until, WNext)
from .terms import STRONG, WEAK, BinOp, Binary, Shift, Var
from .trace import FiniteTrace, LassoTrace, State

VARS = ("p", "q")


def boolean_states(names=VARS) -> list[State]:
    return [State(zip(names, bits)) for bits in itertools.product((False, True), repeat=len(names))]


def finite_traces(max_len=4, names=VARS) -> list[FiniteTrace]:
    states = boolean_states(names)
    return [FiniteTrace(seq) for n in range(1, max_len + 1)
            for seq in itertools.product(states, repeat=n)]


def lasso_traces(max_prefix=2, max_cycle=2, names=VARS) -> list[LassoTrace]:
    states = boolean_states(names)
    out = []
    for p in range(max_prefix + 1):
        for c in range(1, max_cycle + 1):
            for pre in itertools.product(states, repeat=p):
                for cyc in itertools.product(states, repeat=c):
                    out.append(LassoTrace(pre, cyc))
    return out


def trace_corpus():
    return finite_traces() + lasso_traces()


def default_atoms(names=VARS) -> list[Formula]:
    atoms = []
    for n in names:
        atoms.append(Atom(Var(n, STRONG)))
        atoms.append(Atom(Var(n, WEAK)))
        atoms.append(Atom(Shift(Var(n, STRONG), 1)))
        atoms.append(Atom(Shift(Var(n, WEAK), 1)))
    a, b = names[0], names[-1]
    atoms.append(Atom(Binary(BinOp.EQ, Var(a, STRONG), Shift(Var(b, WEAK), 1))))
    atoms.append(Atom(Binary(BinOp.NE, Var(a, WEAK), Var(b, STRONG))))
    return atoms


UNARY = (Not, SNext, WNext, Finally, Globally)
BINARY = (And, Or, Imp, Iff, Until, Release)


def random_formula(rng: random.Random, max_depth=4, atoms=None) -> Formula:
    """A random formula of depth at most ``max_depth`` (leaves have depth 1)."""
    atoms = atoms or default_atoms()
    if max_depth <= 1 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.1:
            return TRUE
        if r < 0.2:
            return FALSE
        return rng.choice(atoms)
    if rng.random() < 0.45:
        return rng.choice(UNARY)(random_formula(rng, max_depth - 1, atoms))
    op = rng.choice(BINARY)
    return op(random_formula(rng, max_depth - 1, atoms), random_formula(rng, max_depth - 1, atoms))


def random_formulas(n=1000, max_depth=4, seed=20250101, atoms=None) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, max_depth, atoms) for _ in range(n)]


def enumerate_ltlf(max_depth=3, names=VARS):
    """Every LTLf formula of depth at most ``max_depth`` (variables have depth 1)."""
    level = [cl.FVar(n) for n in names]
    for _ in range(max_depth - 1):
        prev = level
        level = [cl.FVar(n) for n in names]
        level += [u(f) for u in (cl.FNot, cl.FSNext, cl.FWNext) for f in prev]
        level += [b(f, g) for b in (cl.FAnd, cl.FOr, cl.FUntil) for f in prev for g in prev]
    return level


def enumerate_ltl(max_depth=3, names=VARS):
    level = [cl.LVar(n) for n in names]
    for _ in range(max_depth - 1):
        prev = level
        level = [cl.LVar(n) for n in names]
        level += [u(f) for u in (cl.LNot, cl.LNext) for f in prev]
        level += [b(f, g) for b in (cl.LOr, cl.LUntil) for f in prev for g in prev]
    return level
