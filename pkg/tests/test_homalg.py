import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubext import _fp
from cubext import homalg as H


@pytest.fixture(scope="module")
def a1():
    return H.a1_algebra()


@pytest.mark.parametrize("name", ["exterior", "truncated_polynomial", "a1"])
def test_shipped_algebras_load_and_check(name):
    alg = H.load_algebra(name)
    assert alg.check() == []
    assert H.GradedAlgebra.from_json(alg.to_json()).table == alg.table


def test_a1_basis(a1):
    assert a1.degrees == (0, 1, 2, 3, 3, 4, 5, 6)
    assert a1.dim == 8


@pytest.mark.parametrize("a,b", [(a, b) for b in range(1, 8) for a in range(1, 2 * b)])
def test_adem_relations_hold_in_milnor_basis(a, b):
    # Sq^a Sq^b computed in the Milnor basis equals the Adem expansion
    lhs = H.milnor_product((a,), (b,))
    rhs: dict = {}
    for (c, d), coeff in H.adem(a, b).items():
        prod = H.milnor_product((c,), (d,)) if d else {(c,): 1}
        for k, v in prod.items():
            rhs[k] = (rhs.get(k, 0) + coeff * v) % 2
    clean = lambda d: {k: v % 2 for k, v in d.items() if v % 2}
    assert clean(lhs) == clean(rhs)


def test_truncation_raises():
    alg = H.GradedAlgebra(2, 1, ("1", "x"), (0, 1), {(1, 1): {}}, complete=False)
    with pytest.raises(H.TruncationError):
        alg.mul(1, 1)


def test_exterior_resolution_generators():
    alg = H.exterior()
    res = H.minimal_resolution(alg, H.trivial_module(alg), 4, 8)
    assert [res.generator_degrees(r) for r in range(5)] == [(0,), (1,), (2,), (3,), (4,)]
    assert res.check_dd() and res.check_exact() and res.is_minimal()


def test_polynomial_resolution_generators():
    alg = H.truncated_polynomial()
    res = H.minimal_resolution(alg, H.trivial_module(alg), 3, 10)
    assert [res.generator_degrees(r) for r in range(4)] == [(0,), (2,), (4,), (6,)]


def test_a1_resolution(a1):
    res = H.minimal_resolution(a1, H.trivial_module(a1), 3, 10)
    assert res.generator_degrees(1) == (1, 2)
    assert res.generator_degrees(2) == (2, 4)
    assert res.generator_degrees(3) == (3, 7)
    assert res.check_dd() and res.check_exact() and res.is_minimal()


def test_exterior_ext_is_diagonal():
    alg = H.exterior()
    res = H.minimal_resolution(alg, H.trivial_module(alg), 9, 12)
    chart = H.ext_chart(res, H.trivial_module(alg), 8, 10)
    for r in range(9):
        for t in range(11):
            assert chart.rank(r, t) == (1 if t == r else 0)


@pytest.mark.parametrize("name", ["exterior", "truncated_polynomial", "a1"])
def test_ext_matches_bar_oracle(name):
    alg = H.load_algebra(name)
    res = H.minimal_resolution(alg, H.trivial_module(alg), 5, 10)
    chart = H.ext_chart(res, H.trivial_module(alg), 4, 10)
    bar = H.bar_ext_ranks(alg, 4, 10)
    for r in range(5):
        for t in range(11):
            assert chart.rank(r, t) == bar.get((r, t), 0)


def test_window_is_enforced():
    alg = H.exterior()
    res = H.minimal_resolution(alg, H.trivial_module(alg), 3, 6)
    with pytest.raises(H.TruncationError):
        H.ext_chart(res, H.trivial_module(alg), 2, 9)
    with pytest.raises(H.TruncationError):
        H.ext_chart(res, H.trivial_module(alg), 3)


def test_chart_serialization():
    alg = H.exterior()
    res = H.minimal_resolution(alg, H.trivial_module(alg), 3, 6)
    chart = H.ext_chart(res, H.trivial_module(alg))
    assert "1\t1\t1" in chart.to_tsv()
    assert "1\t0\t1" in chart.to_tsv("stem")
    assert '"window"' in chart.to_json()


def test_free_module_resolves_trivially(a1):
    res = H.free_resolution(a1, (0, 3), r_max=1, t_max=9)
    assert res.generator_degrees(0) == (0, 3)
    assert res.generator_degrees(1) == ()


def test_suspension_shifts_everything():
    alg = H.exterior()
    res = H.minimal_resolution(alg, H.trivial_module(alg), 2, 6)
    s = H.suspend(res, 2)
    assert s.generator_degrees(2) == (4,)
    assert s.check_dd()
    with pytest.raises(H.TruncationError):
        H.suspend(H.trivial_module(alg), 5, t_max=3)


def test_module_checks(a1):
    M = H.module_from_algebra(a1)
    assert M.check() == []
    bad = H.GradedModule(a1, dict(M.dims), dict(M.action))
    bad.action[(1, 0)] = np.zeros_like(bad.action[(1, 0)])
    assert bad.check()


def test_kernels_rank_nullity(a1):
    M = H.module_from_algebra(a1)
    f = H.multiplication_map(M, a1.index("Sq(1)"))
    for t, info in H.hom_and_kernels(f).items():
        assert info["kernel"].shape[0] + info["rank"] == M.dim(t)
    with pytest.raises(H.DegreeError):
        H.ModuleMap(M, M, {0: np.zeros((3, 3), dtype=np.int64)}, 1).matrix(0)


@given(st.integers(0, 2**31), st.sampled_from([2, 3, 5]))
def test_solve_and_nullspace(seed, p):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, (4, 6))
    ns = _fp.nullspace(a, p)
    assert not np.any(a @ ns.T % p)
    assert ns.shape[0] + _fp.rank(a, p) == 6
    x = rng.integers(0, p, 6)
    sol = _fp.solve(a, a @ x % p, p)
    assert sol is not None and np.array_equal(a @ sol % p, a @ x % p)
