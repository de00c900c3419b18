import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qheisenberg.errors import ValidationError
from qheisenberg.skewnf import (
    AlgebraSpec,
    SkewMatrix,
    bareiss_det,
    bareiss_rank,
    block_matrix,
    build_matrix,
    canonical_form,
    center_lattice,
    degree,
    lattice_contains,
    mat_mul,
    pfaffian,
    transpose,
)


@st.composite
def skew_matrices(draw, max_n=8, bound=9):
    n = draw(st.integers(1, max_n))
    H = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(st.integers(-bound, bound))
            H[i][j], H[j][i] = v, -v
    return H


def random_unimodular(n, rnd, steps=12):
    W = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rnd.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rnd.randint(-2, 2)
        W[i] = [a + c * b for a, b in zip(W[i], W[j])]
    return W


def blocks_of(spec):
    return sorted(canonical_form(build_matrix(spec)).blocks)


# --- examples --------------------------------------------------------------


def test_frtbar2_matrix():
    assert build_matrix(AlgebraSpec.frtbar(2)).as_lists() == [
        [0, -1, 0, -1],
        [1, 0, -1, 0],
        [0, 1, 0, 1],
        [1, 0, -1, 0],
    ]


def test_M3_matrix():
    assert build_matrix(AlgebraSpec.M(3)).as_lists() == [[0, -1, -1], [1, 0, -1], [1, 1, 0]]


def test_L_up_11_matrix():
    H = build_matrix(AlgebraSpec.L_up(1, 1)).as_lists()
    assert H == [[0, -1, -2, -2], [1, 0, 0, -2], [2, 0, 0, 0], [2, 2, 0, 0]]
    assert pfaffian(H) == -4
    cf = canonical_form(H)
    assert (cf.blocks, cf.zero_count) == ((1, 4), 0)
    # Pf(W H W^T) = det(W) Pf(H) = Pf(H), so the sign must live somewhere
    assert cf.orientation == -1


def test_canonical_examples():
    cf = canonical_form([[0, -1], [1, 0]])
    assert cf.blocks == (1,) and cf.zero_count == 0
    cf = canonical_form(build_matrix(AlgebraSpec.frtbar(2)))
    assert cf.blocks == (1,) and cf.zero_count == 2


def test_degree_examples():
    assert degree(build_matrix(AlgebraSpec.frtbar(2)), 3) == 3
    assert degree(build_matrix(AlgebraSpec.frtbar(3)), 3) == 9
    assert degree([[0, -2], [2, 0]], 3) == 3
    assert degree([[0, -3], [3, 0]], 3) == 1


def test_center_examples():
    H = build_matrix(AlgebraSpec.frtbar(2))
    basis = center_lattice(H, 3)
    for v in [(1, 0, 1, 0), (0, 1, 0, 2), (3, 0, 0, 0)]:
        assert lattice_contains(basis, v, 3)
    assert not lattice_contains(basis, (1, 0, 0, 0), 3)


def test_bad_specs():
    with pytest.raises(ValidationError):
        AlgebraSpec.L_up()
    with pytest.raises(ValidationError):
        AlgebraSpec.L_up(1, -1)
    with pytest.raises(ValidationError):
        SkewMatrix(((0, 1), (1, 0)))


def test_json_roundtrip():
    H = build_matrix(AlgebraSpec.frtbar(3))
    assert SkewMatrix.from_json(H.to_json()) == H


# --- canonical form properties --------------------------------------------


@settings(max_examples=150, deadline=None)
@given(skew_matrices())
def test_canonical_form_sound(H):
    cf = canonical_form(H)
    assert bareiss_det(cf.W) == 1
    assert mat_mul(mat_mul(cf.W, H), transpose(cf.W)) == cf.matrix()
    assert list(cf.blocks) == sorted(cf.blocks) and all(b > 0 for b in cf.blocks)
    # divisibility chain
    assert all(b2 % b1 == 0 for b1, b2 in zip(cf.blocks, cf.blocks[1:]))
    assert bareiss_rank(H) == 2 * len(cf.blocks) == cf.rank


@settings(max_examples=80, deadline=None)
@given(skew_matrices(max_n=7, bound=5), st.randoms(use_true_random=False))
def test_blocks_are_congruence_invariants(H, rnd):
    n = len(H)
    # permutations and unimodular congruences must not move the blocks
    perm = list(range(n))
    rnd.shuffle(perm)
    P = [[H[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    U = random_unimodular(n, rnd)
    C = mat_mul(mat_mul(U, H), transpose(U))
    ref = canonical_form(H).blocks
    assert canonical_form(P).blocks == ref
    assert canonical_form(C).blocks == ref


@settings(max_examples=80, deadline=None)
@given(skew_matrices(max_n=6, bound=6))
def test_pfaffian_identity(H):
    n = len(H)
    if n % 2:
        return
    cf = canonical_form(H)
    prod = 1
    for b in cf.blocks:
        prod *= -b  # Pf [[0, -b], [b, 0]] = -b
    expect = 0 if cf.zero_count else cf.orientation * prod
    assert pfaffian(H) == expect
    assert bareiss_det(H) == pfaffian(H) ** 2


# --- block tables for L^T and for general L(s) ---------------------------------


@pytest.mark.parametrize("T", range(1, 7))
def test_LT_block_tables(T):
    down = blocks_of(AlgebraSpec.L_T(T, "down"))
    up = blocks_of(AlgebraSpec.L_T(T, "up"))
    assert 2 * len(down) == 2 * T - 2
    assert 2 * len(up) == 2 * T
    expect_up = sorted([4] * (T // 2) + [1] * (T // 2) + [2] * (T % 2))
    assert up == expect_up
    if T >= 2:
        expect_down = sorted([4] * ((T - 2) // 2) + [1] * (T // 2) + [2] * (T % 2))
        assert down == expect_down


def _L(x, arrow):
    return [] if x == 0 else blocks_of(AlgebraSpec.L_T(x, arrow))


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=2, max_size=5))
def test_L_down_blocks(s):
    spec = AlgebraSpec.L_down(*s)
    blocks = blocks_of(spec)
    rank = 2 * (s[-1] // 2) + sum(2 * ((v + 1) // 2) for v in s[:-1])
    assert 2 * len(blocks) == rank
    x = sum(v % 2 for v in s)
    residual = _L(x, "up" if s[-1] % 2 == 0 else "down")
    assert blocks == sorted([1] * sum(v // 2 for v in s) + residual)


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_L_up_blocks(s):
    blocks = blocks_of(AlgebraSpec.L_up(*s))
    assert 2 * len(blocks) == sum(2 * ((v + 1) // 2) for v in s)
    y = sum(v % 2 for v in s)
    assert blocks == sorted([1] * sum(v // 2 for v in s) + _L(y, "up"))


@pytest.mark.parametrize("x", range(0, 9))
def test_M_blocks(x):
    cf = canonical_form(build_matrix(AlgebraSpec.M(x)))
    assert cf.blocks == (1,) * (x // 2)
    assert cf.zero_count == x % 2


@pytest.mark.parametrize("m", [3, 5, 7])
@pytest.mark.parametrize("N", range(2, 7))
def test_degree_frtbar_and_oh(N, m):
    assert degree(build_matrix(AlgebraSpec.frtbar(N)), m) == m ** (N - 1)
    assert degree(build_matrix(AlgebraSpec.L_T(N, "up")), m) == m ** N
    assert degree(build_matrix(AlgebraSpec.oh_localized(N)), m) == m ** N


def test_frtbar_equivalent_to_L_down():
    for N in range(1, 7):
        a = canonical_form(build_matrix(AlgebraSpec.frtbar(N)))
        b = canonical_form(build_matrix(AlgebraSpec.L_T(N, "down")))
        assert a.blocks == b.blocks


# --- center lattice: brute force oracle ------------------------------------


@settings(max_examples=60, deadline=None)
@given(skew_matrices(max_n=4, bound=6), st.sampled_from([2, 3, 4, 9]))
def test_center_lattice_brute_force(H, m):
    n = len(H)
    basis = center_lattice(H, m)
    for v in basis:
        assert all(sum(H[i][j] * v[j] for j in range(n)) % m == 0 for i in range(n))
    kernel = [
        v for v in itertools.product(range(m), repeat=n)
        if all(sum(H[i][j] * v[j] for j in range(n)) % m == 0 for i in range(n))
    ]
    for v in kernel:
        assert lattice_contains(basis, v, m)
    # dimension over the center is degree^2
    assert len(kernel) * degree(H, m) ** 2 == m ** n


def test_block_matrix_layout():
    assert block_matrix([2], 1) == [[0, -2, 0], [2, 0, 0], [0, 0, 0]]
    assert block_matrix([2], 0, orientation=-1) == [[0, 2], [-2, 0]]
