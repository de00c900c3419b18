"""Explicit representations over Q(eps) and the DKP dimension bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coeff import CycloNum, cyclo_reduce
from .errors import (
    ComputationError,
    DegenerateBlockError,
    UnsupportedModulusError,
    ValidationError,
)
from .ncalg import AlgebraPreset, _corrections
from .poisson import (
    LeafStructure,
    PointData,
    leaf_dimension,
    oh_rank,
    oh_transport,
    rank as poisson_rank,
    structure_data,
)
from .skewnf import AlgebraSpec, SkewMatrix, bareiss_rank, build_matrix, canonical_form, degree

Matrix = List[List[CycloNum]]

COMMUTANT_DIM_CAP = 27


def _check_m(m: int):
    if m < 3 or m % 2 == 0:
        raise UnsupportedModulusError(f"m must be odd and >= 3, got {m}")


# ---------------------------------------------------------------------------
# small exact matrix kit


def identity(m: int, n: int) -> Matrix:
    z, o = CycloNum.zero(m), CycloNum.one(m)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def clock(m: int, power: int = 1) -> Matrix:
    """``D^power``, ``D v_i = eps^i v_i``."""
    z = CycloNum.zero(m)
    out = [[z] * m for _ in range(m)]
    for i in range(m):
        out[i][i] = CycloNum.zeta(m, i * power)
    return out


def shift(m: int, power: int = 1) -> Matrix:
    """``sigma^power``, ``sigma v_i = v_{i+1 mod m}``."""
    z, o = CycloNum.zero(m), CycloNum.one(m)
    out = [[z] * m for _ in range(m)]
    for i in range(m):
        out[(i + power) % m][i] = o
    return out


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k, p = len(A), len(B), len(B[0]) if B else 0
    zero = A[0][0] * 0 if A and A[0] else None
    out = []
    for i in range(n):
        row = A[i]
        nz = [(t, row[t]) for t in range(k) if row[t]]
        out_row = []
        for j in range(p):
            acc = None
            for t, a in nz:
                b = B[t][j]
                if b:
                    acc = a * b if acc is None else acc + a * b
            out_row.append(zero if acc is None else acc)
        out.append(out_row)
    return out


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[a * c for a in row] for row in A]


def is_zero_matrix(A: Matrix) -> bool:
    return all(not a for row in A for a in row)


def kron(A: Matrix, B: Matrix) -> Matrix:
    out = []
    for ra in A:
        for rb in B:
            out.append([a * b for a in ra for b in rb])
    return out


def kron_all(mats: Sequence[Matrix], m: int) -> Matrix:
    out = identity(m, 1)
    for M in mats:
        out = kron(out, M)
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def direct_sum(A: Matrix, B: Matrix, m: int) -> Matrix:
    z = CycloNum.zero(m)
    a, b = len(A), len(B)
    out = [list(r) + [z] * b for r in A]
    out += [[z] * a + list(r) for r in B]
    return out


def nullity(rows: List[List[CycloNum]], ncols: int) -> int:
    """Dimension of the solution space of ``rows . x = 0`` over Q(eps)."""
    A = [list(r) for r in rows if any(r)]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][col].inverse()
        prow = [x * inv for x in A[rank]]
        A[rank] = prow
        for i in range(len(A)):
            if i != rank and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], prow)]
        rank += 1
        if rank == len(A):
            break
    return ncols - rank


# ---------------------------------------------------------------------------
# representations


@dataclass
class RepMatrices:
    m: int
    dim: int
    mats: Dict[str, Matrix]

    def __post_init__(self):
        for name, M in self.mats.items():
            if len(M) != self.dim or any(len(r) != self.dim for r in M):
                raise ValidationError(f"matrix for {name} is not {self.dim}x{self.dim}")

    def to_json(self):
        return {
            "m": self.m,
            "dim": self.dim,
            "mats": {
                name: [[[str(c) for c in x.coeffs] for x in row] for row in M]
                for name, M in self.mats.items()
            },
        }

    @classmethod
    def from_json(cls, obj) -> "RepMatrices":
        from .coeff import parse_rational

        try:
            m = int(obj["m"])
            mats = {
                name: [[CycloNum(m, [parse_rational(c) for c in x]) for x in row] for row in M]
                for name, M in obj["mats"].items()
            }
            return cls(m, int(obj["dim"]), mats)
        except (KeyError, TypeError) as exc:
            raise ValidationError("representation JSON needs m, dim and mats") from exc


def frt_representation(N: int, m: int) -> RepMatrices:
    """Clock/shift operators on ``(C^m)^{(x)(N-1)}`` for the quasipolynomial
    algebra of F_q(N).  Tensor positions are numbered 1..N-1."""
    _check_m(m)
    if N < 2:
        raise ValidationError("the tensor representation needs N >= 2")
    n_f = N - 1
    I = identity(m, m)

    def op(parts: Dict[int, Matrix]) -> Matrix:
        return kron_all([parts.get(k, I) for k in range(1, n_f + 1)], m)

    def times(*factors):
        out: Dict[int, Matrix] = {}
        for pos, M in factors:
            out[pos] = mat_mul(out[pos], M) if pos in out else M
        return out

    mats: Dict[str, Matrix] = {}
    for i in range(N):
        if i == N - 1:
            mats[f"z{i}"] = op({n_f: clock(m)})
            mats[f"zs{i}"] = op({n_f: clock(m)})
        elif i == 0:
            mats["z0"] = op(times((1, clock(m)), *[(k, shift(m)) for k in range(1, n_f + 1)]))
            mats["zs0"] = op(times((1, clock(m, -1)), *[(k, shift(m, -1)) for k in range(1, n_f + 1)]))
        else:
            mats[f"z{i}"] = op(times((i, clock(m)), *[(k, shift(m)) for k in range(i + 1, n_f + 1)]))
            mats[f"zs{i}"] = op(times((i, clock(m)), *[(k, shift(m, -1)) for k in range(i + 1, n_f + 1)]))
    order = [f"z{i}" for i in range(N)] + [f"zs{i}" for i in range(N)]
    return RepMatrices(m, m ** n_f, {k: mats[k] for k in order})


def _int_inverse(W: Sequence[Sequence[int]]) -> List[List[int]]:
    n = len(W)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(W)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c])
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    out = [[A[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for r in out for x in r)
    return [[int(x) for x in r] for r in out]


def torus_representation(H, m: int) -> RepMatrices:
    """Irreducible representation of the quantum torus of ``H`` of dimension
    ``m^{rank/2}``, one clock/shift pair per canonical block."""
    _check_m(m)
    if not isinstance(H, SkewMatrix):
        H = SkewMatrix(tuple(tuple(r) for r in H))
    cf = canonical_form(H)
    for b in cf.blocks:
        if gcd(m, b) != 1:
            raise DegenerateBlockError(f"block {b} is not coprime to m={m}")
    K = len(cf.blocks)
    Winv = _int_inverse(cf.W)
    names = [f"z{k}" for k in range(H.n)]
    mats: Dict[str, Matrix] = {}
    for u in range(H.n):
        parts = []
        for k in range(K):
            b = cf.blocks[k] * (cf.orientation if k == 0 else 1)
            # y_{2k} = sigma, y_{2k+1} = D^{b}: sigma D^b = q^{-b} D^b sigma
            a1, a2 = Winv[u][2 * k], Winv[u][2 * k + 1]
            parts.append(mat_mul(shift(m, a1 % m), clock(m, (b * a2) % m)))
        mats[names[u]] = kron_all(parts, m)
    return RepMatrices(m, m ** K, mats)


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    ok: bool


@dataclass(frozen=True)
class VerificationReport:
    checks: Tuple[RelationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[str]:
        return [c.relation for c in self.checks if not c.ok]

    def to_json(self):
        return {"ok": self.ok, "relations": [{"relation": c.relation, "ok": c.ok} for c in self.checks]}


def _fmt_q(e: int) -> str:
    return "" if e == 0 else ("q*" if e == 1 else f"q^{e}*")


def verify_relations(rep: RepMatrices, preset: AlgebraPreset) -> VerificationReport:
    """Substitute the matrices into ``x_u x_v = q^{H[u][v]} x_v x_u + corr``
    for every pair ``u < v`` of generators."""
    names = preset.names
    missing = [n for n in names if n not in rep.mats]
    if missing:
        raise ValidationError(f"representation lacks generators {missing}")
    H = preset.exponents
    corr = _corrections(preset)
    m = rep.m
    X = [rep.mats[n] for n in names]
    checks = []
    prods: Dict[Tuple[int, int], Matrix] = {}

    def prod(a, b):
        if (a, b) not in prods:
            prods[(a, b)] = mat_mul(X[a], X[b])
        return prods[(a, b)]

    for u in range(len(names)):
        for v in range(u + 1, len(names)):
            # x_v x_u = q^{H[v][u]} x_u x_v + corr(v, u)
            lhs = prod(v, u)
            rhs = mat_scale(prod(u, v), CycloNum.zeta(m, H[v][u]))
            text = f"{names[v]}*{names[u]} = {_fmt_q(H[v][u])}{names[u]}*{names[v]}"
            for mono, c in corr.get((v, u), ()):
                idx = [k for k, e in enumerate(mono) if e]
                term = X[idx[0]]
                for k in idx[1:]:
                    term = mat_mul(term, X[k])
                rhs = mat_add(rhs, mat_scale(term, cyclo_reduce(c, m)))
                text += f" + ({c.format()})*" + "*".join(names[k] for k in idx)
            dim = rep.dim
            if len(lhs) != dim:
                raise ValidationError("dimension mismatch")
            checks.append(RelationCheck(text, is_zero_matrix(mat_sub(lhs, rhs))))
    return VerificationReport(tuple(checks))


def commutant_dimension(rep: RepMatrices, cap: int = COMMUTANT_DIM_CAP) -> int:
    """``dim {X : X g = g X for every generator g}`` over Q(eps)."""
    d = rep.dim
    if d > cap:
        raise ComputationError(f"dimension {d} exceeds the commutant cap {cap}")
    zero = CycloNum.zero(rep.m)
    rows = []
    # unknown X[a][b] has index a*d + b; equation for entry (i, j) of X g - g X
    for g in rep.mats.values():
        for i in range(d):
            for j in range(d):
                row = [zero] * (d * d)
                for t in range(d):
                    if g[t][j]:
                        row[i * d + t] = row[i * d + t] + g[t][j]
                    if g[i][t]:
                        row[t * d + j] = row[t * d + j] - g[i][t]
                if any(row):
                    rows.append(row)
    return nullity(rows, d * d)


# ---------------------------------------------------------------------------
# DKP bookkeeping


def nilpotent_count(ls: LeafStructure) -> int:
    """Number of nilpotent pairs ``s_nil`` in the induced module."""
    if ls.degenerate:
        return 0
    seq = list(ls.i_seq)
    s = ls.s
    if s % 2 == 0:
        l = s // 2
        return sum(seq[2 * k] - seq[2 * k + 1] - 1 for k in range(l)) + seq[2 * l]
    l = (s - 1) // 2
    return sum(seq[2 * k] - seq[2 * k + 1] - 1 for k in range(l + 1))


def torus_spec(ls: LeafStructure) -> Optional[AlgebraSpec]:
    """The quasipolynomial algebra 𝒜 carried by ``V_0``, as an L_down spec.

    ``s_{r+1} = r_0 + 1``, ``s_{r+1-i} = 2 + r_{2i}`` for ``1 <= i <= r-1``,
    ``r = l + 1``, and ``s_1 = 0`` (s even) or ``r_{2l+2} + 2`` (s odd).
    """
    if ls.degenerate:
        return None
    rm = ls.r_map
    l = ls.l
    r = l + 1
    s = [0] * (r + 1)  # s[0] is s_1
    s[r] = rm[0] + 1
    for i in range(1, r):
        s[r - i] = 2 + rm[2 * i]
    s[0] = 0 if ls.s % 2 == 0 else rm[2 * l + 2] + 2
    return AlgebraSpec.L_down(*s)


@lru_cache(maxsize=4096)
def _spec_rank(spec: AlgebraSpec) -> int:
    return bareiss_rank(build_matrix(spec).as_lists())


@lru_cache(maxsize=4096)
def _spec_degree(spec: AlgebraSpec, m: int) -> int:
    return degree(build_matrix(spec), m)


def torus_rank(ls: LeafStructure) -> int:
    if ls.degenerate:
        # M(r_0) after renumbering: rank 2 floor(r_0 / 2)
        return bareiss_rank(build_matrix(AlgebraSpec.M(ls.degenerate_r0)).as_lists())
    return _spec_rank(torus_spec(ls))


def irrep_dimension(ls: LeafStructure, m: int) -> int:
    _check_m(m)
    if ls.degenerate:
        return degree(build_matrix(AlgebraSpec.M(ls.degenerate_r0)), m)
    return m ** nilpotent_count(ls) * _spec_degree(torus_spec(ls), m)


@dataclass(frozen=True)
class DKPReport:
    structure: LeafStructure
    m: int
    s_nil: int
    torus_rank: int
    rep_dim: int
    leaf_dim: int
    ok: bool

    def to_json(self):
        return {
            "structure": self.structure.to_json(),
            "m": self.m,
            "s_nil": self.s_nil,
            "torus_rank": self.torus_rank,
            "rep_dim": self.rep_dim,
            "leaf_dim": self.leaf_dim,
            "ok": self.ok,
        }


def dkp_check(ls: LeafStructure, m: int) -> DKPReport:
    _check_m(m)
    s_nil = nilpotent_count(ls)
    t_rank = torus_rank(ls)
    rep_dim = irrep_dimension(ls, m)
    leaf = leaf_dimension(ls)
    ok = rep_dim == m ** (leaf // 2) and 2 * s_nil + t_rank == leaf and leaf % 2 == 0
    return DKPReport(ls, m, s_nil, t_rank, rep_dim, leaf, ok)


@dataclass(frozen=True)
class SweepResult:
    N: int
    m: int
    points: int
    structures: int
    failures: Tuple[Tuple[PointData, DKPReport], ...]
    oracle_mismatches: Tuple[PointData, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures and not self.oracle_mismatches

    def to_json(self):
        return {
            "N": self.N,
            "m": self.m,
            "points": self.points,
            "structures": self.structures,
            "failures": [{"point": p.to_json(), "report": r.to_json()} for p, r in self.failures],
            "oracle_mismatches": [p.to_json() for p in self.oracle_mismatches],
            "ok": self.ok,
        }


def dkp_sweep(N: int, m: int, coord_range: Iterable[int] = range(-1, 3), points: Optional[Iterable[PointData]] = None, oracle: bool = False) -> SweepResult:
    """Run :func:`dkp_check` over every point of ``coord_range^{2N}`` (or the
    given points).  With ``oracle=True`` the leaf dimension is also compared
    with the exact Poisson-matrix rank."""
    _check_m(m)
    if points is None:
        vals = list(coord_range)
        points = (PointData(N, c) for c in product(vals, repeat=2 * N))
    seen: Dict[LeafStructure, DKPReport] = {}
    failures = []
    mismatches = []
    count = 0
    for p in points:
        count += 1
        ls = structure_data(p)
        rep = seen.get(ls)
        if rep is None:
            rep = seen[ls] = dkp_check(ls, m)
        if not rep.ok:
            failures.append((p, rep))
        if oracle and poisson_rank(p) != rep.leaf_dim:
            mismatches.append(p)
    return SweepResult(N, m, count, len(seen), tuple(failures), tuple(mismatches))


# ---------------------------------------------------------------------------
# Oh's algebra: same nilpotent part, L_up tori


def oh_torus_spec(ls: LeafStructure) -> Optional[AlgebraSpec]:
    """The torus for Oh's algebra at a w-chart structure.

    Same translation as :func:`torus_spec` but every group is closed by an
    Omega (the extra inverse ``w_{-1}``), so the algebra is L_up.  For odd s
    the shift swallows one generator of the first group.
    """
    if ls.degenerate:
        return None
    s = list(torus_spec(ls).s)
    if ls.s % 2:
        s[0] -= 1
    return AlgebraSpec.L_up(*s)


def oh_dkp_check(p: PointData, m: int) -> DKPReport:
    """DKP identity for Oh's algebra at ``p`` against the exact leaf rank."""
    _check_m(m)
    leaf = oh_rank(p)
    w = oh_transport(p)
    if w is None:
        ls = structure_data(p)
        return DKPReport(ls, m, 0, 0, 1, leaf, leaf == 0)
    ls = structure_data(w)
    if ls.degenerate:
        spec = AlgebraSpec.M(ls.degenerate_r0)
        s_nil = 0
    else:
        spec = oh_torus_spec(ls)
        s_nil = nilpotent_count(ls)
    t_rank = _spec_rank(spec)
    rep_dim = m ** s_nil * _spec_degree(spec, m)
    ok = rep_dim == m ** (leaf // 2) and 2 * s_nil + t_rank == leaf and leaf % 2 == 0
    return DKPReport(ls, m, s_nil, t_rank, rep_dim, leaf, ok)


def oh_dkp_sweep(N: int, m: int, coord_range: Iterable[int] = range(-1, 3), points: Optional[Iterable[PointData]] = None) -> SweepResult:
    _check_m(m)
    if points is None:
        vals = list(coord_range)
        points = (PointData(N, c) for c in product(vals, repeat=2 * N))
    failures = []
    count = 0
    seen = set()
    for p in points:
        count += 1
        rep = oh_dkp_check(p, m)
        seen.add(rep.structure)
        if not rep.ok:
            failures.append((p, rep))
    return SweepResult(N, m, count, len(seen), tuple(failures))
