import pytest

from tracelogic.errors import BadParameters
from tracelogic.semantics import Evaluator
from tracelogic.traffic import (DESIRED_PROPERTIES, assumed_properties, compile_property,
                                generate_traffic_trace)


def test_one_green_per_record():
    run = generate_traffic_trace(6, 1, 2, [1])
    assert len(run.records) == 6
    for r in run.records:
        assert r["TL1Green"] != r["TL2Green"]


def test_single_step():
    run = generate_traffic_trace(1, 1, 2, [1])
    assert len(run.records) == 1 and run.records[0]["TL1Green"] is True
    assert run.records[0]["TL1Queue"] == run.records[0]["TL2Queue"] == 0


@pytest.mark.parametrize("args", [(0, 1, 2, [1]), (5, 2, 2, [1]), (5, 1, 2, [2]),
                                  (5, 1, 2, []), (5, -1, 2, [0])])
def test_bad_parameters(args):
    with pytest.raises(BadParameters):
        generate_traffic_trace(*args)


def test_period_detected_and_consistent():
    run = generate_traffic_trace(50, 1, 2, [1, 0, 1])
    assert run.period >= 1
    lasso = run.as_lasso()
    finite = run.as_finite()
    for i in range(50):
        assert lasso.state_at(i) == finite.state_at(i)


def test_queues_are_natural():
    run = generate_traffic_trace(200, 3, 4, [3, 0, 2, 1])
    assert all(r["TL1Queue"] >= 0 and r["TL2Queue"] >= 0 for r in run.records)


@pytest.mark.parametrize("schedule", [[0], [1, 0], [1, 1, 0], [0, 0, 1]])
def test_properties_hold(schedule):
    run = generate_traffic_trace(40, 1, 2, schedule)
    lasso = run.as_lasso()
    props = {**assumed_properties(1, 2), **DESIRED_PROPERTIES}
    ev = Evaluator(lasso)
    for name, text in props.items():
        assert ev.sat(compile_property(text))[0], name


def test_safety_on_finite_prefix():
    run = generate_traffic_trace(50, 1, 2, [1, 0])
    ev = Evaluator(run.as_finite())
    assert ev.sat(compile_property(DESIRED_PROPERTIES["G_OneLightGreen"]))[0]


def test_mirrored_properties_present():
    names = set(assumed_properties(1, 2))
    for base in ("ToTL2Green", "StayGreen", "GreenDeparts", "RedDeparts",
                 "ArrivesBounds", "QueueNext"):
        assert any(n.endswith(base) or base in n for n in names)
    assert "TL2ToTL1Green" in names and "TL1StartGreen" in names


def test_unbounded_queues_have_no_period():
    run = generate_traffic_trace(30, 1, 2, [1])
    assert not run.periodic and run.lasso_start is None
    assert len(run.records) == 30
    with pytest.raises(BadParameters):
        run.as_lasso()
    ev = Evaluator(run.as_finite())
    assert ev.sat(compile_property(DESIRED_PROPERTIES["G_OneLightGreen"]))[0]
