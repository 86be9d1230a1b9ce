import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cubext import balls as B
from cubext import homalg as H
from cubext import spectral as S
from cubext import tracks as T
from cubext._chain import HomSpace


def _chain(seed, p=3, order=3):
    fc = S.random_filtered_complex(np.random.default_rng(seed), p=p, stages=6, depth=2)
    return T.HigherChain.from_multicomplex(S.multicomplex(fc), max_order=order)


@pytest.fixture(scope="module")
def a1_res():
    alg = H.a1_algebra()
    return H.minimal_resolution(alg, H.trivial_module(alg), 11, 16)


@pytest.fixture(scope="module")
def ext_res():
    alg = H.exterior()
    return H.minimal_resolution(alg, H.trivial_module(alg), 11, 16)


# -- chain model tracks ------------------------------------------------------------

@given(st.integers(0, 200))
@settings(max_examples=25)
def test_generator_cubes_are_valid(seed):
    chain = _chain(seed)
    for (i, k) in chain.K:
        if k and chain.has(i, "J" * k):
            assert chain.track(i, "J" * k).valid()


def test_compose_is_the_concatenated_word():
    chain = _chain(3)
    i = max(chain.A)
    f, g = chain.track(i - 2, "J"), chain.track(i, "J")
    assert T.same_track(T.compose(f, g), chain.track(i, "JsJ"))


def test_broken_track_is_reported():
    chain = _chain(4)
    i = max(chain.A)
    t = chain.track(i, "JJ")
    h = HomSpace(t.top.source, t.top.target, 2).random(np.random.default_rng(0))
    broken = T.Track(2, t.top + h, t.faces)
    assert broken.valid() == (h.d().is_zero())


def test_gluing_violation_is_rejected():
    chain = _chain(5)
    i = max(chain.A)
    a = chain.track(i, "J")
    f = a.face(1)
    other = HomSpace(f.top.source, f.top.target, 0).basis()
    moved = T.Track(0, f.top + next(other), ())
    b = T.Track(1, a.top, (moved,))
    with pytest.raises(T.TrackError):
        T.obstruction_class(B.make_double(1), [a, b])


def test_double_rule_and_action(rng):
    chain = _chain(6)
    i = max(chain.A)
    t = chain.track(i, "J")
    assert T.obstruction_class(B.make_double(1), [t, t]).is_zero
    alpha = HomSpace(t.top.source, t.top.target, 1).random_cycle(rng)
    o = T.obstruction_class(B.make_double(1), [t.plus(alpha), t])
    assert np.array_equal(o.coords, o.space.class_of(alpha))


@pytest.mark.parametrize("n", [1, 2])
def test_boundary_tuples_vanish(n):
    chain = _chain(7)
    for i in chain.A:
        labels = T.W.boundary_words(n)
        if all(chain.has(i, w) for w in labels):
            e = T.OB.expression(i, labels)
            assert chain.obstruction(e).is_zero


# -- axiom suite ------------------------------------------------------------------

def test_axiom_suite_passes():
    rep = T.axiom_suite(seed=0, trials=100, p=3)
    assert rep.ok, rep.to_tsv()
    assert all(n >= 50 for _, n in rep.results.values())


def test_axiom_suite_detects_wrong_signs():
    rep = T.axiom_suite(seed=0, trials=40, p=3, corrupt=True)
    assert not rep.ok
    for name in ("action", "double", "boundary_dim1"):
        ok, n = rep.results[name]
        assert ok < n


def test_axiom_suite_mod_two():
    assert T.axiom_suite(seed=2, trials=30, p=2).ok


# -- lifting ----------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2])
def test_lift_exterior(ext_res, n):
    hr = T.lift_resolution(ext_res, n, 10, seed=1)
    assert hr.check_obstruction_property()


@pytest.mark.parametrize("n", [1, 2])
def test_lift_a1(a1_res, n):
    hr = T.lift_resolution(a1_res, n, 10, seed=2)
    assert hr.check_obstruction_property()
    assert all(hr.cube_ok(i, k) for k in range(1, n + 1) for i in range(k, 11))


def test_inclusion_property(a1_res):
    hr = T.lift_resolution(a1_res, 2, 8, seed=0)
    assert hr.check_inclusion(8)


def test_injected_error_fails_at_first_solve(a1_res):
    bad = T.inject_dd_error(a1_res, 2)
    with pytest.raises(T.LiftError, match="i=2"):
        T.lift_resolution(bad, 1, 10)


def test_lift_window_errors(ext_res):
    with pytest.raises(T.LiftError):
        T.lift_resolution(ext_res, 0, 5)
    with pytest.raises(T.LiftError):
        T.lift_resolution(ext_res, 1, 40)


def test_relift_changes_nothing_visible(a1_res):
    for seed in range(3):
        hr = T.lift_resolution(a1_res, 1, 8, seed=seed)
        for r in range(0, 6):
            for t in sorted(set(a1_res.stages[r].gens)):
                k = sum(1 for g in a1_res.stages[r].gens if g == t)
                assert not np.any(T.resolution_d2(hr, r, t, np.ones(k, dtype=np.int64)))


# -- brackets ------------------------------------------------------------------------------

def test_toda_matches_massey_oracle():
    rng = np.random.default_rng(11)
    seen = nontrivial = 0
    while seen < 30:
        a, b, c = T.random_toda_instance(rng, 3)
        try:
            br = T.toda_bracket(a, b, c)
            oracle = T.massey_oracle(a, b, c)
        except (T.BracketUndefined, T.EnumerationLimit):
            continue
        seen += 1
        assert br.elements() == oracle
        nontrivial += oracle != {tuple([0] * len(br.value))}
    assert nontrivial > 0


def test_undefined_bracket():
    rng = np.random.default_rng(5)
    for _ in range(200):
        X = [T.random_complex(rng, 2, range(0, 2), 2) for _ in range(4)]
        a = HomSpace(X[1], X[0], 0).random_cycle(rng)
        b = HomSpace(X[2], X[1], 0).random_cycle(rng)
        c = HomSpace(X[3], X[2], 0).random_cycle(rng)
        if HomSpace(X[2], X[0], 1).solve_d(-(a @ b)) is None:
            with pytest.raises(T.BracketUndefined):
                T.toda_bracket(a, b, c)
            return
    pytest.skip("no obstructed instance drawn")


@pytest.mark.parametrize("n", [1, 2])
def test_resolution_brackets_contain_zero(a1_res, n):
    hr = T.lift_resolution(a1_res, n, 8, seed=3)
    assert all(T.resolution_bracket_contains_zero(hr, i) for i in range(n + 1, 9))


# -- differentials ------------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("p", [2, 3])
def test_pages_match_oracle(seed, p):
    fc = S.random_filtered_complex(np.random.default_rng(seed), p=p, stages=6, depth=2)
    ss = T.ChainSpectralSequence.from_filtered(fc)
    oracle = S.ss_oracle(fc, 4)
    for pg in ss.pages(4):
        assert pg.dims == oracle[pg.m].dims
    for m in (1, 2, 3):
        assert ss.check_dd(m)


def test_some_higher_differential_is_nonzero():
    hits = 0
    for seed in range(10):
        fc = S.random_filtered_complex(np.random.default_rng(seed), p=2, stages=6, depth=2)
        pages = S.ss_oracle(fc, 3)
        hits += pages[2].dims != pages[3].dims
    assert hits


def test_d2_invariance():
    rng = np.random.default_rng(0)
    fc = S.random_filtered_complex(np.random.default_rng(1), p=3, stages=6, depth=2)
    ss = T.ChainSpectralSequence.from_filtered(fc)
    for r, s in ss._support():
        for x in ss.Z(2, r, s):
            assert T.d2_invariance(ss, r, s, x, rng, trials=10)


def test_d2_of_a_boundary_vanishes():
    fc = S.random_filtered_complex(np.random.default_rng(2), p=3, stages=6, depth=2)
    ss = T.ChainSpectralSequence.from_filtered(fc)
    for r, s in ss._support():
        for b in ss.B(2, r, s):
            got = ss.d(2, r, s, b)
            assert got is not None
            assert ss.same_mod_B(2, r + 2, s + 1, got, np.zeros_like(got))
