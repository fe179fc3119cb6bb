"""The loud convention-bug guards fire when an invariant is sabotaged."""

import json

import pytest

from parahecke.engine import load_engine
from parahecke.errors import NegativeCoefficient, NonUnitDiagonal
from parahecke.ringcore import LaurentPoly
from parahecke.verify import CheckResult, render_results


def test_non_unit_diagonal_guard(monkeypatch):
    eng = load_engine("a1")
    B, H = eng.bern, eng.hecke
    # sabotage: make the diagonal of the elimination non-monomial
    real_mul = H.mul

    def bad_mul(a, b):
        out = real_mul(a, b)
        return out.scale(LaurentPoly.q() + 1)

    h = H.basis(eng.weyl.elt([1]))
    monkeypatch.setattr(H, "mul", bad_mul)
    B._theta.clear()
    with pytest.raises(NonUnitDiagonal):
        B.im_to_bern(h)
    monkeypatch.undo()
    B._theta.clear()


def test_negative_coefficient_counterexample(monkeypatch):
    eng = load_engine("a1")
    P, d = eng.para, eng.datum
    real = eng.bern.orbit_sum_r

    def sabotage(m):
        out = real(m)
        if m == d.zero:
            return out.scale(LaurentPoly.from_int(-1))
        return out

    monkeypatch.setattr(eng.bern, "orbit_sum_r", sabotage)
    P._centers.clear()
    with pytest.raises(NegativeCoefficient) as exc:
        P.satake_table([d.lattice([-1])], check_products=False)
    blob = json.loads(str(exc.value))
    assert blob["theorem_falsified"] == "satake positivity"
    assert blob["x"]["free"] == [-1] and blob["m"]["free"] == [0]
    monkeypatch.undo()
    P._centers.clear()


def test_render_results_failure_exit():
    text, worst = render_results([
        CheckResult("good", "PASS"),
        CheckResult("bad", "FAIL", "broken"),
        CheckResult("halted", "FALSIFIED", "{...}"),
    ])
    assert worst == 1
    assert "[FAIL] bad: broken" in text and "[FALSIFIED] halted" in text
