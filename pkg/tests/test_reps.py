import random

import pytest
from hypothesis import given, settings, strategies as st

from qheisenberg.coeff import CycloNum
from qheisenberg.errors import DegenerateBlockError, UnsupportedModulusError
from qheisenberg.ncalg import AlgebraPreset
from qheisenberg.poisson import PointData, structure_data
from qheisenberg.reps import (
    RepMatrices,
    commutant_dimension,
    direct_sum,
    dkp_check,
    dkp_sweep,
    frt_representation,
    identity,
    irrep_dimension,
    mat_mul,
    mat_scale,
    oh_dkp_check,
    oh_dkp_sweep,
    oh_torus_spec,
    torus_representation,
    torus_spec,
    transpose,
    verify_relations,
)
from qheisenberg.skewnf import AlgebraSpec, build_matrix, degree


def test_frt_representation_n2():
    rep = frt_representation(2, 3)
    assert rep.dim == 3
    z = CycloNum.zeta(3)
    D = rep.mats["z1"]
    assert [D[i][i] for i in range(3)] == [z ** 0, z, z ** 2]
    assert rep.mats["zs1"] == D
    prod = mat_mul(rep.mats["z0"], rep.mats["zs0"])
    assert prod == mat_scale(identity(3, 3), z)


@pytest.mark.parametrize("N,m", [(2, 3), (3, 3), (2, 5)])
def test_frt_representation_irreducible(N, m):
    rep = frt_representation(N, m)
    assert rep.dim == m ** (N - 1)
    report = verify_relations(rep, AlgebraPreset.frtbar(N))
    assert report.ok, report.failures
    assert commutant_dimension(rep) == 1


def test_corrupted_representation_is_caught():
    rep = frt_representation(2, 3)
    mats = dict(rep.mats)
    mats["z0"] = transpose(mats["z0"])
    bad = RepMatrices(3, 3, mats)
    report = verify_relations(bad, AlgebraPreset.frtbar(2))
    assert not report.ok
    assert any("z0" in f for f in report.failures)


def test_even_m_rejected():
    with pytest.raises(UnsupportedModulusError):
        frt_representation(2, 4)


def test_rep_json_roundtrip():
    rep = frt_representation(2, 3)
    assert RepMatrices.from_json(rep.to_json()).mats == rep.mats


def test_direct_sum_commutant():
    one = RepMatrices(3, 1, {"z0": [[CycloNum.zeta(3)]]})
    two = RepMatrices(3, 2, {"z0": direct_sum(one.mats["z0"], one.mats["z0"], 3)})
    assert commutant_dimension(two) == 4


# --- torus representations -----------------------------------------------------


TORI = [
    build_matrix(AlgebraSpec.frtbar(2)),
    build_matrix(AlgebraSpec.frtbar(3)),
    build_matrix(AlgebraSpec.L_up(1, 1)),
    build_matrix(AlgebraSpec.M(4)),
    build_matrix(AlgebraSpec.explicit([[0, -2], [2, 0]])),
    build_matrix(AlgebraSpec.explicit([[0]])),
]


@pytest.mark.parametrize("H", TORI)
def test_torus_representation(H):
    m = 3
    rep = torus_representation(H, m)
    assert rep.dim == degree(H, m)
    assert verify_relations(rep, AlgebraPreset.torus(H)).ok
    if rep.dim <= 9:
        assert commutant_dimension(rep) == 1


@st.composite
def small_skew(draw, max_n=4, bound=4):
    n = draw(st.integers(1, max_n))
    H = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(st.integers(-bound, bound))
            H[i][j], H[j][i] = v, -v
    return H


@settings(max_examples=40, deadline=None)
@given(small_skew(), st.sampled_from([5, 7]))
def test_torus_representation_random(H, m):
    try:
        rep = torus_representation(H, m)
    except DegenerateBlockError:
        return
    assert rep.dim == degree(H, m)
    spec = AlgebraSpec.explicit(H)
    assert verify_relations(rep, AlgebraPreset.torus(build_matrix(spec))).ok


def test_degenerate_block():
    with pytest.raises(DegenerateBlockError):
        torus_representation([[0, -3], [3, 0]], 3)


# --- DKP bookkeeping -----------------------------------------------------------


def test_irrep_dimension_examples():
    assert irrep_dimension(structure_data(PointData(2, [1, 1, 1, 1])), 3) == 3
    assert irrep_dimension(structure_data(PointData(2, [0, 0, 0, 0])), 3) == 1
    assert irrep_dimension(structure_data(PointData(2, [1, 1, 0, 0])), 3) == 3
    assert torus_spec(structure_data(PointData(2, [1, 1, 1, 1]))) == AlgebraSpec.L_down(0, 1)


def test_dkp_examples():
    r = dkp_check(structure_data(PointData(2, [1, 1, 1, 1])), 3)
    assert r.ok and r.rep_dim == 3 and r.leaf_dim == 2
    r = dkp_check(structure_data(PointData(2, [0, 0, 0, 0])), 3)
    assert r.ok and r.rep_dim == 1


@pytest.mark.parametrize("m", [3, 5])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_dkp_sweep_exhaustive(N, m):
    res = dkp_sweep(N, m, range(-1, 3), oracle=True)
    assert res.points == 4 ** (2 * N)
    assert res.ok, res.failures[:3]


@pytest.mark.parametrize("N", [4, 5])
def test_dkp_sweep_random(N):
    rnd = random.Random(N)
    pts = [PointData(N, [rnd.randint(-2, 2) for _ in range(2 * N)]) for _ in range(400)]
    for m in (3, 5):
        res = dkp_sweep(N, m, points=pts, oracle=True)
        assert res.ok


# --- Oh's algebra ----------------------------------------------------------------


def test_oh_torus_spec():
    # generic point: every index in one group, torus L_up(1,...,1) shape
    ls = structure_data(PointData(1, [1, 1]))
    assert oh_torus_spec(ls) == AlgebraSpec.L_up(0, 1)
    assert degree(build_matrix(AlgebraSpec.L_T(3, "up")), 5) == 5 ** 3


@pytest.mark.parametrize("N", [1, 2, 3])
def test_oh_dkp_sweep_exhaustive(N):
    for m in (3, 5):
        res = oh_dkp_sweep(N, m, range(-1, 3))
        assert res.ok, res.failures[:3]


def test_oh_dkp_random():
    rnd = random.Random(7)
    for N in (4, 5):
        pts = [PointData(N, [rnd.randint(-2, 2) for _ in range(2 * N)]) for _ in range(300)]
        assert oh_dkp_sweep(N, 3, points=pts).ok


def test_oh_generic_point_has_full_rank():
    # all coordinates nonzero and generic: leaf of dimension 2N, rep of degree m^N
    rnd = random.Random(1)
    for N in (1, 2, 3, 4):
        p = PointData(N, [rnd.choice([1, 2, 3]) for _ in range(2 * N)])
        r = oh_dkp_check(p, 3)
        if r.leaf_dim == 2 * N:
            assert r.ok and r.rep_dim == 3 ** N
