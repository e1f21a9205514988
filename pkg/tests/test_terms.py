import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import UNDEF, ref_definedness, ref_term
from tracelogic.errors import TermTypeError
from tracelogic.terms import (STRONG, WEAK, BinOp, Binary, Const, Definedness, GetSite,
                              Shift, Unary, UnOp, Var, atom_truth, collect_gets,
                              definedness_at, eval_at, eval_term, naturalize, normalize_shifts, shift_term,
                              term_definedness, with_strength)
from tracelogic.trace import FiniteTrace, LassoTrace, State


def fin(*states):
    return FiniteTrace([State(s) for s in states])


N, NW = Var("n", STRONG), Var("n", WEAK)


class TestEvalExamples:
    def test_projection(self):
        assert eval_term(N, fin({"n": 5})) == 5

    def test_read_past_end(self):
        assert eval_term(Shift(N, 1), fin({"n": 5})) is None

    def test_square_of_previous(self):
        t = Binary(BinOp.EQ, Shift(N, 1), Binary(BinOp.POW, N, Const(2)))
        tr = fin({"n": 5}, {"n": 25})
        assert eval_term(t, tr) is True
        assert ref_term(t, [{"n": 5}, {"n": 25}], 0) is True

    def test_unbound_variable_is_undefined(self):
        assert eval_term(Var("m"), fin({"n": 1})) is None

    def test_division_is_exact(self):
        assert eval_term(Binary(BinOp.DIV, Const(1), Const(3)), fin({})) == Fraction(1, 3)
        assert eval_term(Binary(BinOp.DIV, Const(6), Const(3)), fin({})) == 2

    def test_division_by_zero_is_undefined(self):
        assert eval_term(Binary(BinOp.DIV, N, Const(0)), fin({"n": 1})) is None

    def test_subtraction_is_signed(self):
        assert eval_term(Binary(BinOp.SUB, Const(1), Const(3)), fin({})) == -2

    def test_truncated_subtraction(self):
        assert eval_term(Binary(BinOp.MONUS, Const(1), Const(3)), fin({})) == 0
        assert eval_term(Binary(BinOp.MONUS, Const(5), Const(3)), fin({})) == 2

    def test_integer_equals_integral_rational(self):
        t = Binary(BinOp.EQ, Binary(BinOp.DIV, Const(4), Const(2)), Const(2))
        assert eval_term(t, fin({})) is True


class TestTypeErrors:
    def test_add_booleans_rejected_at_construction(self):
        with pytest.raises(TermTypeError):
            Binary(BinOp.ADD, Const(True), Const(1))

    def test_add_boolean_variable_at_runtime(self):
        with pytest.raises(TermTypeError):
            eval_term(Binary(BinOp.ADD, Var("p"), Const(1)), fin({"p": True}))

    def test_mixed_equality_at_runtime(self):
        with pytest.raises(TermTypeError):
            eval_term(Binary(BinOp.EQ, Var("p"), Const(1)), fin({"p": True}))

    def test_negative_exponent(self):
        with pytest.raises(TermTypeError):
            Binary(BinOp.POW, N, Const(-1))
        with pytest.raises(TermTypeError):
            eval_term(Binary(BinOp.POW, Const(2), N), fin({"n": -1}))

    def test_type_error_is_not_undefined(self):
        # a kind mismatch raises even where reads are defined
        with pytest.raises(TypeError):
            atom_truth(Binary(BinOp.AND, Var("p"), Var("q")), fin({"p": True, "q": 3}), 0)

    def test_zero_shift_rejected(self):
        with pytest.raises(ValueError):
            Shift(N, 0)


class TestCollectGets:
    def test_single_strong(self):
        assert collect_gets(N) == ([GetSite("n", 0)], [])

    def test_mixed(self):
        t = Binary(BinOp.LT, Var("a", WEAK), Var("b", STRONG))
        assert collect_gets(t) == ([GetSite("b", 0)], [GetSite("a", 0)])

    def test_constant(self):
        assert collect_gets(Const(5)) == ([], [])

    def test_shift_offsets(self):
        t = Binary(BinOp.ADD, Shift(N, 2), Shift(Shift(NW, 1), 1))
        assert collect_gets(t) == ([GetSite("n", 2)], [GetSite("n", 2)])


class TestDefinedness:
    def test_strong_past_end(self):
        assert term_definedness(Shift(N, 1), fin({"n": 1})) is Definedness.UNDEFINED_STRONG

    def test_weak_past_end(self):
        assert term_definedness(Shift(NW, 1), fin({"n": 1})) is Definedness.UNDEFINED_WEAK

    def test_defined(self):
        assert term_definedness(N, fin({"n": 1})) is Definedness.DEFINED

    def test_strong_wins_over_weak(self):
        t = Binary(BinOp.LT, Shift(NW, 1), Shift(Var("m"), 1))
        assert term_definedness(t, fin({"n": 1})) is Definedness.UNDEFINED_STRONG

    def test_division_by_zero_is_strong(self):
        t = Binary(BinOp.EQ, Binary(BinOp.DIV, NW, Const(0)), Const(1))
        assert term_definedness(t, fin({"n": 1})) is Definedness.UNDEFINED_STRONG
        assert atom_truth(t, fin({"n": 1}), 0) is False

    def test_atom_truth(self):
        lt = Binary(BinOp.LT, Shift(N, 1), Const(10))
        assert atom_truth(lt, fin({"n": 1}), 0) is False
        assert atom_truth(with_strength(lt, WEAK), fin({"n": 1}), 0) is True
        assert atom_truth(lt, fin({"n": 1}, {"n": 3}), 0) is True
        assert atom_truth(lt, fin({"n": 1}, {"n": 30}), 0) is False


# --- exhaustive small terms --------------------------------------------------

LEAVES = [N, Var("m", WEAK), Const(2)]


def _terms(depth):
    level = list(LEAVES)
    for _ in range(depth - 1):
        prev = level
        level = list(LEAVES)
        level += [Shift(t, 1) for t in prev]
        candidates = [(Unary, (UnOp.NEG, t)) for t in prev]
        candidates += [(Binary, (op, a, b)) for op in (BinOp.ADD, BinOp.MUL, BinOp.LT)
                       for a, b in itertools.product(prev, repeat=2)]
        for ctor, args in candidates:
            try:
                level.append(ctor(*args))
            except TermTypeError:
                pass
    return level


TERMS3 = _terms(3)
NUM_STATES = [State({"n": 1, "m": 2}), State({"n": 2})]
NUM_TRACES = [FiniteTrace(s) for k in range(1, 5) for s in itertools.product(NUM_STATES, repeat=k)]
NUM_TRACES += [LassoTrace([NUM_STATES[0]], [NUM_STATES[1]]), LassoTrace([], NUM_STATES)]


def _words(t):
    if isinstance(t, FiniteTrace):
        return [dict(s) for s in t.states]
    w = [dict(s) for s in t.prefix]
    while len(w) < 12:
        w += [dict(s) for s in t.cycle]
    return w


def _subterms(t):
    yield t
    for c in (getattr(t, "inner", None), getattr(t, "left", None), getattr(t, "right", None)):
        if c is not None:
            yield from _subterms(c)


def _safe(term, tr, i):
    try:
        return eval_at(term, tr, i)
    except TermTypeError:
        return "type-error"


def test_exhaustive_term_count():
    assert len(TERMS3) > 1000


_DEF = {"defined": Definedness.DEFINED, "strong": Definedness.UNDEFINED_STRONG,
        "weak": Definedness.UNDEFINED_WEAK}


def test_shift_fusion_exhaustive():
    for e in TERMS3:
        for a, b in ((1, 1), (1, 2), (2, 1)):
            nested = Shift(Shift(e, a), b)
            fused = Shift(e, a + b)
            pushed = shift_term(e, a + b)
            for tr in NUM_TRACES:
                x = _safe(nested, tr, 0)
                assert x == _safe(fused, tr, 0) == _safe(pushed, tr, 0)
                assert x == _safe(normalize_shifts(nested), tr, 0)


def test_agrees_with_reference_interpreter():
    for e in TERMS3:
        for tr in NUM_TRACES:
            w = _words(tr)
            for i in range(3):
                got = _safe(e, tr, i)
                if got == "type-error":
                    continue
                ref = ref_term(e, w, i)
                assert got == (None if ref is UNDEF else ref)
                if i < tr.length:
                    assert definedness_at(e, tr, i) is _DEF[ref_definedness(e, w, i)]


def test_undefined_propagation():
    for e in TERMS3:
        for tr in NUM_TRACES:
            for s in _subterms(e):
                if isinstance(s, (Unary, Binary)):
                    kids = [s.inner] if isinstance(s, Unary) else [s.left, s.right]
                    if any(_safe(k, tr, 0) is None for k in kids):
                        assert _safe(s, tr, 0) is None


def test_definedness_iff_value():
    for e in TERMS3:
        for tr in NUM_TRACES:
            if _safe(e, tr, 0) == "type-error":
                continue
            defined = term_definedness(e, tr) is Definedness.DEFINED
            assert defined == (eval_term(e, tr) is not None)


def test_determinism():
    for e in TERMS3[:200]:
        for tr in NUM_TRACES[:10]:
            assert _safe(e, tr, 0) == _safe(e, tr, 0)


# --- randomized arithmetic ----------------------------------------------------

values = st.one_of(st.integers(-50, 50),
                   st.fractions(min_value=-20, max_value=20, max_denominator=12))


@st.composite
def num_terms(draw, depth=3):
    if depth <= 1 or draw(st.booleans()):
        return draw(st.one_of(st.builds(Const, values),
                              st.sampled_from([N, NW, Var("m"), Shift(N, 1)])))
    op = draw(st.sampled_from([BinOp.ADD, BinOp.SUB, BinOp.MONUS, BinOp.MUL, BinOp.DIV]))
    return Binary(op, draw(num_terms(depth - 1)), draw(num_terms(depth - 1)))


@settings(max_examples=300, deadline=None)
@given(num_terms(), st.lists(st.fixed_dictionaries({"n": values}), min_size=1, max_size=3),
       st.integers(0, 3))
def test_random_arithmetic_matches_reference(term, word, i):
    tr = FiniteTrace([State(s) for s in word])
    ref = ref_term(term, word, i)
    assert eval_at(term, tr, i) == (None if ref is UNDEF else ref)


def test_naturalize_only_between_naturals():
    d = Binary(BinOp.SUB, Var("q"), Var("d"))
    assert naturalize(d, {"q", "d"}).op is BinOp.MONUS
    assert naturalize(d, {"q"}).op is BinOp.SUB
    neg = Binary(BinOp.SUB, Var("q"), Const(-1))
    assert naturalize(neg, {"q"}).op is BinOp.SUB
