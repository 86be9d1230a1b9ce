import warnings

import pytest

from cubext import balls as B
from cubext import words as W


def _valid(b):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return B.validate_ball(b).ok


@pytest.mark.parametrize("n", range(1, 5))
def test_standard_balls_validate(n):
    assert _valid(B.make_T0(n))
    assert _valid(B.make_double(n))


def test_large_dimension_warns_about_link():
    with pytest.warns(UserWarning):
        rep = B.validate_ball(B.make_T0(4))
    assert rep.notes


def test_orientation_signs():
    assert B.orientation_signs(B.make_double(3)) == [1, -1]
    assert B.orientation_signs(B.make_T0(1)) == [1, -1]
    assert B.orientation_signs(B.make_T0(3)) == [1, -1, 1, -1]


def test_free_face_is_rejected():
    b = B.Ball(2, 2, ((0, (1,), 1, (1,)),))
    rep = B.validate_ball(b)
    assert not rep.ok and "boundary coverage" in rep.problems[0]


def test_self_gluing_and_missing_cells():
    assert not B.validate_ball(B.Ball(1, 1, ((0, (1,), 0, (1,)),))).ok
    assert not B.validate_ball(B.Ball(1, 2, ((0, (1,), 5, (1,)),))).ok


def test_disconnected_cells():
    d = B.make_double(1)
    two = B.Ball(1, 4, d.gluings + ((2, (1,), 3, (1,)),))
    assert "connected" in B.validate_ball(two).problems[0]


def test_single_cube_is_not_closed():
    assert not B.validate_ball(B.Ball(2, 1, ())).ok
    assert _valid(B.single_cell(2))  # all faces cut


def test_json_round_trip():
    for b in (B.make_T0(2), B.make_double(3), B.single_cell(2)):
        assert B.Ball.from_json(b.to_json()) == b
    with pytest.raises(B.BallError):
        B.Ball.from_json('{"dim": 2}')


def test_words_ball_matches_T0():
    b = B.ball_from_words(["JJs", "sJJ", "JsJ"], require_closed=True)
    assert B.equivalent(b, B.make_T0(2))
    with pytest.raises(B.BallError):
        B.ball_from_words(["Js", "Js", "Js"])


def test_search_dimension_two_three_cells():
    found = B.search_balls(2, 3)
    assert len(found) == 1
    assert B.equivalent(found[0], B.make_T0(2))


def test_search_dimension_three_three_cells_is_empty():
    assert B.search_balls(3, 3) == []


def test_search_small_cases():
    assert len(B.search_balls(2, 2)) == 1  # the double
    assert len(B.search_balls(1, 2)) == 1
    with pytest.raises(ValueError):
        B.search_balls(5, 4)


def test_equivalence_distinguishes():
    assert not B.equivalent(B.make_T0(2), B.make_double(2))
    assert B.equivalent(B.make_double(2), B.make_double(2))


def test_product_of_balls():
    p = B.product(B.make_T0(1), B.make_T0(2))
    assert p.dim == 3 and p.cells == 6
    assert _valid(p)
    a, c = B.orientation_signs(B.make_T0(1)), B.orientation_signs(B.make_T0(2))
    sp = B.orientation_signs(p)
    outer = [x * y for x in a for y in c]
    assert sp == outer or sp == [-v for v in outer]


def test_complement_and_union():
    t = B.make_T0(2)
    comp = B.complement(t, [0])
    assert comp.cells == 2 and comp.cut
    assert _valid(comp)
    assert B.is_sub_ball(t, [0, 1])
    with pytest.raises(B.BallError):
        B.complement(t, [0, 1, 2])


def test_labels_survive():
    b = B.ball_from_words(W.boundary_words(2))
    assert b.labels == tuple(W.boundary_words(2))
