import numpy as np
import pytest

from cubext import spectral as S
from cubext._chain import Cx, HomSpace, identity, point


def _fc(seed, p=2, **kw):
    return S.random_filtered_complex(np.random.default_rng(seed), p=p, **kw)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("p", [2, 3])
def test_random_complex_is_filtered(seed, p):
    fc = _fc(seed, p, stages=6)
    assert fc.check() == []


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("p", [2, 3])
def test_multicomplex_relations_and_round_trip(seed, p):
    fc = _fc(seed, p, stages=6)
    mc = S.multicomplex(fc)
    assert mc.check_relations() == []
    back = S.from_multicomplex(mc)
    assert back.check() == []
    assert S.total_homology(back) == S.total_homology(fc)


@pytest.mark.parametrize("seed", range(4))
def test_pages_converge_to_homology(seed):
    fc = _fc(seed, 3, stages=6)
    pages = S.ss_oracle(fc, 7)
    assert pages[-1].total() == sum(S.total_homology(fc).values())
    totals = [pg.total() for pg in pages]
    assert totals == sorted(totals, reverse=True)
    homological = S.ss_oracle(fc, 7, dual=False)
    assert [pg.total() for pg in homological] == totals


def test_zero_differential_pages_are_constant():
    fc = S.FilteredComplex(2, [(0, 0), (1, 0), (2, -1)], np.zeros((3, 3), dtype=np.int64))
    pages = S.ss_oracle(fc, 3)
    assert all(pg.dims == pages[0].dims for pg in pages)


def test_two_stage_filtration_degenerates_at_e2():
    fc = _fc(7, 2, stages=2)
    pages = S.ss_oracle(fc, 4)
    assert pages[2].dims == pages[3].dims == pages[4].dims


def test_json_round_trip_and_errors():
    fc = _fc(1)
    assert S.FilteredComplex.from_json(fc.to_json()).labels == fc.labels
    with pytest.raises(ValueError):
        S.FilteredComplex.from_json('{"prime": 2}')


def test_pages_tsv():
    text = S.pages_tsv(S.ss_oracle(_fc(2), 1))
    assert all(len(line.split("\t")) == 4 for line in text.strip().splitlines())


def test_hom_complex_leibniz(rng):
    p = 3
    X = Cx(p, {0: 1, 1: 2}, {1: np.array([[1, 2]])})
    Y = Cx(p, {0: 2, 1: 1}, {1: np.array([[1], [0]])})
    Z = point(p, 0)
    f = HomSpace(Y, Z, 1).random(rng)
    g = HomSpace(X, Y, 0).random(rng)
    lhs = (f @ g).d()
    rhs = f.d() @ g - f @ g.d()
    assert (lhs - rhs).is_zero()
    assert identity(X).d().is_zero()


def test_homspace_homology_and_solve(rng):
    p = 2
    X = Cx(p, {0: 1, 1: 1}, {1: np.array([[1]])})  # acyclic
    hs = HomSpace(X, X, 0)
    assert hs.homology_dim == 0
    c = hs.random_cycle(rng)
    assert hs.is_cycle(c)
    h = HomSpace(X, X, 1).solve_d(c)
    assert h is not None and (h.d() - c).is_zero()


def test_suspension_flips_differential():
    X = Cx(3, {0: 1, 1: 1}, {1: np.array([[1]])})
    SX = X.suspend()
    assert SX.dim(2) == 1 and SX.diff(2)[0, 0] == 2
    assert SX.check()


def test_dictionary_sign():
    assert S.dict_sign(0, 0) == 1
    assert S.dict_sign(0, 1) == -1
    assert S.dict_sign(1, 5) == 1
    assert S.dict_sign(2, 0) == -1
    assert S.dict_sign(3, 1) == -1
