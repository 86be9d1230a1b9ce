from math import comb

import pytest
from hypothesis import given, strategies as st

from cubext import words as W

word = st.text(alphabet="sJ", max_size=8)


@pytest.mark.parametrize("gap", range(1, 9))
def test_morphism_counts_are_binomial(gap):
    for k in range(0, 7):
        got = [m for m in W.enumerate_morphisms(gap + 3, 3, k) if m.dim == k]
        assert len(got) == comb(gap - 1, k)


def test_identity_and_backwards_homs_are_empty():
    assert W.enumerate_morphisms(3, 3, 4) == []
    assert W.enumerate_morphisms(2, 5, 4) == []


@given(word, word, word)
def test_otimes_is_associative(u, v, w):
    assert W.otimes(W.otimes(u, v), w) == W.otimes(u, W.otimes(v, w))


@given(word, word)
def test_degree_and_dimension_add(v, w):
    x = W.otimes(v, w)
    assert W.deg(x) == W.deg(v) + W.deg(w) + 1
    assert W.dim(x) == W.dim(v) + W.dim(w)


def test_generators_compose():
    assert W.I(2) + W.I(3) == W.I(5)
    assert W.I(0) == ""
    with pytest.raises(W.WordError):
        W.I(-1)


@given(word.filter(lambda w: w.count("J") >= 2), st.data())
def test_left_face_identity(w, data):
    n = W.dim(w)
    j = data.draw(st.integers(2, n))
    i = data.draw(st.integers(1, j - 1))
    assert W.face(W.face(w, j), i) == W.face(W.face(w, i), j - 1)


@given(word, st.integers(5, 20))
def test_factorization_recomposes(w, src):
    m = W.ChainMorphism(src, w)
    gens = W.generators(m)
    acc = gens[-1]
    for g in reversed(gens[:-1]):
        acc = W.compose_chain(g, acc)
    assert acc == m
    assert all("s" not in g.word for g in gens)


def test_compose_checks_endpoints():
    f = W.ChainMorphism(5, "J")   # 5 -> 3
    g = W.ChainMorphism(3, "")    # 3 -> 2
    assert W.compose_chain(g, f) == W.ChainMorphism(5, "sJ")
    with pytest.raises(W.WordError):
        W.compose_chain(f, f)


def test_boundary_tuple_words():
    assert W.boundary_words(0) == ["s"]
    assert W.boundary_words(2) == ["sJJ", "JsJ", "JJs"]
    assert [m.target for m in W.boundary_tuple(6, 2)] == [2, 2, 2]


@given(word)
def test_boundary_inclusions_compose(w):
    js = W.j_positions(w)
    if len(js) < 2:
        return
    v = W.face(w, 1)
    u = W.face(v, 1)
    step = W.boundary_inclusion(u, v).then(W.boundary_inclusion(v, w))
    assert step == W.boundary_inclusion(u, w)


def test_boundary_membership():
    assert W.in_boundary("sJs", "JJs")
    assert not W.in_boundary("JJs", "sJs")
    assert not W.in_boundary("s", "ss")
    with pytest.raises(W.WordError):
        W.boundary_inclusion("JJ", "sJ")


def test_parse_and_bad_letters():
    assert W.ChainMorphism.parse("7:sJ") == W.ChainMorphism(7, "sJ")
    with pytest.raises(W.WordError):
        W.ChainMorphism.parse("x:s")
    with pytest.raises(W.WordError):
        W.check_word("sxJ")
