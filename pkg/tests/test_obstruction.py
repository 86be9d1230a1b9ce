import pytest

from cubext import balls as B
from cubext import obstruction as OB


def _labels(e):
    return sorted(e.labels)


def test_n1_matches_hand_proof():
    d = OB.prove_hauptlemma(1, 3)
    assert OB.check_derivation(d)
    assert _labels(d.start) == ["sJs", "ssJ"]
    assert _labels(d.hyps["d1,1"]) == ["Jss", "ssJ"]
    assert _labels(d.hyps["Y"]) == ["Jss", "sJs"]
    comp = d.steps[0]
    assert comp.rule == "COMPLEMENT" and comp.relation == "d1,1"
    assert _labels(comp.result) == ["Jss", "sJs"]
    assert d.steps[-1].relation == "Y"


def test_n2_matches_hand_proof():
    d = OB.prove_hauptlemma(2, 4)
    assert OB.check_derivation(d)
    x_steps = [s for s in d.steps if s.side == "X" and s.rule == "COMPLEMENT"]
    y_steps = [s for s in d.steps if s.side == "Y" and s.rule == "COMPLEMENT"]
    assert [s.relation for s in x_steps] == ["d1,2"]
    assert [s.relation for s in y_steps] == ["d2,1"]
    xp = ["JsJs", "JssJ", "sJJs", "sJsJ"]
    assert _labels(x_steps[0].result) == xp
    assert _labels(y_steps[0].result) == xp
    assert d.steps[-1].rule == "MEET"


@pytest.mark.parametrize("n", [3, 4])
def test_search_proofs(n):
    d = OB.prove_hauptlemma(n)
    assert OB.check_derivation(d)
    assert d.max_cells() <= OB.cell_bound(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cell_bound(n):
    d = OB.prove_hauptlemma(n, method="scheme")
    assert OB.check_derivation(d)
    assert d.max_cells() <= OB.cell_bound(n)


def test_certificate_round_trip_and_tamper():
    d = OB.prove_hauptlemma(2)
    text = d.certificate()
    d2 = OB.parse_certificate(text)
    assert OB.check_derivation(d2)
    assert d2.certificate() == text
    bad = text.replace("JsJs", "JJss", 1)
    with pytest.raises(OB.DerivationError):
        OB.parse_certificate(bad)


def test_dropping_a_step_breaks_the_proof():
    d = OB.prove_hauptlemma(2)
    d.steps = d.steps[1:]
    assert not OB.check_derivation(d)
    assert OB.explain_derivation(d)


def test_wrong_hypothesis_is_rejected():
    d = OB.prove_hauptlemma(1)
    d.hyps["d1,1"] = OB.triviality_instance(d.source, 1, 1).__class__(d.source, ("ssJ", "sJs"))
    assert not OB.check_derivation(d)


def test_complement_rewrite_small():
    x = OB.expression(3, ["ssJ", "sJs"])
    rel = OB.triviality_instance(3, 1, 1)
    out = OB.complement_rewrite(x, rel)
    assert _labels(out) == ["Jss", "sJs"]
    with pytest.raises(OB.DerivationError):
        OB.complement_rewrite(x, x)


def test_d2d2_symbolic():
    assert OB.d2d2_start_is_product()
    assert OB.check_derivation(OB.d2d2_symbolic(), require_goal=False)
    assert not OB.check_derivation(OB.d2d2_symbolic(with_resolution=False), require_goal=False)


def test_expressions_are_balls():
    for n in (1, 2, 3):
        assert B.validate_ball(OB.hypothesis(n + 2, n).ball).ok
        assert B.validate_ball(OB.goal(n + 2, n).ball).ok
    assert OB.cell_bound(4) == 2 * 3 + 5


def test_out_of_range():
    with pytest.raises(OB.DerivationError):
        OB.prove_hauptlemma(5)
