"""Integer linear algebra for defining matrices of quasipolynomial algebras.

Convention: a skew-symmetric integer matrix ``H`` encodes the relations
``x_u x_v = q^{H[u][v]} x_v x_u``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .errors import ValidationError

IntMatrix = List[List[int]]


@dataclass(frozen=True)
class SkewMatrix:
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValidationError("matrix must be square")
            for j in range(n):
                if row[j] != -rows[j][i]:
                    raise ValidationError(f"matrix is not skew-symmetric at ({i},{j})")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def as_lists(self) -> IntMatrix:
        return [list(r) for r in self.entries]

    def permuted(self, perm: Sequence[int]) -> "SkewMatrix":
        return SkewMatrix(tuple(tuple(self.entries[a][b] for b in perm) for a in perm))

    def to_json(self):
        return {"n": self.n, "entries": self.as_lists()}

    @classmethod
    def from_json(cls, obj) -> "SkewMatrix":
        try:
            n = int(obj["n"])
            entries = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("matrix JSON needs 'n' and 'entries'") from exc
        if len(entries) != n:
            raise ValidationError("'n' does not match the number of rows")
        return cls(tuple(tuple(r) for r in entries))

    @classmethod
    def zero(cls, n: int) -> "SkewMatrix":
        return cls(tuple((0,) * n for _ in range(n)))


def block_matrix(blocks: Sequence[int], zero_count: int, orientation: int = 1) -> IntMatrix:
    """``Diag(S(m_1), ..., S(m_K), 0, ..., 0)`` with ``S(m) = [[0,-m],[m,0]]``.

    ``orientation = -1`` flips the sign of the first block.
    """
    n = 2 * len(blocks) + zero_count
    out = [[0] * n for _ in range(n)]
    for k, mk in enumerate(blocks):
        if k == 0:
            mk *= orientation
        out[2 * k][2 * k + 1] = -mk
        out[2 * k + 1][2 * k] = mk
    return out


@dataclass(frozen=True)
class CanonicalForm:
    """``W H W^T = block_matrix(blocks, zero_count, orientation)``, det W = 1.

    Blocks are positive and form a divisibility chain (hence ascending), which
    makes the block list a congruence invariant.  A unimodular congruence
    multiplies the Pfaffian by det W, so when ``H`` has full rank and its
    Pfaffian has sign ``(-1)^K`` opposite to that of the all-positive block
    form, the first block is carried with a negative sign
    (``orientation == -1``).  Whenever a zero direction exists the
    orientation is always +1.
    """

    W: Tuple[Tuple[int, ...], ...]
    blocks: Tuple[int, ...]
    zero_count: int
    orientation: int = 1

    @property
    def rank(self) -> int:
        return 2 * len(self.blocks)

    def matrix(self) -> IntMatrix:
        return block_matrix(self.blocks, self.zero_count, self.orientation)

    def to_json(self):
        return {
            "blocks": list(self.blocks),
            "zero_count": self.zero_count,
            "orientation": self.orientation,
            "W": [list(r) for r in self.W],
        }


# ---------------------------------------------------------------------------
# AlgebraSpec and builders


@dataclass(frozen=True)
class AlgebraSpec:
    """Names one of the defining matrices of the quasipolynomial algebras.

    kind is one of ``frtbar``, ``oh``, ``ohloc``, ``L``, ``M``, ``explicit``.
    For ``L``: ``s`` holds (s_1, ..., s_r) for ``arrow='up'`` or
    (s_1, ..., s_r, s_{r+1}) for ``arrow='down'``.
    """

    kind: str
    N: Optional[int] = None
    s: Tuple[int, ...] = ()
    arrow: Optional[str] = None
    x: Optional[int] = None
    H: Optional[SkewMatrix] = None

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(v) for v in self.s))
        k = self.kind
        if k in ("frtbar", "oh", "ohloc"):
            if self.N is None or self.N < 1:
                raise ValidationError(f"{k} needs N >= 1")
        elif k == "L":
            if self.arrow not in ("up", "down"):
                raise ValidationError("L-spec arrow must be 'up' or 'down'")
            if any(v < 0 for v in self.s):
                raise ValidationError("L-spec entries must be >= 0")
            # down specs carry the trailing s_{r+1}; r = 0 (no Omegas) is
            # allowed there so that L^1_down is expressible
            r = len(self.s) - (1 if self.arrow == "down" else 0)
            if r < (0 if self.arrow == "down" else 1) or not self.s:
                raise ValidationError("L-spec needs r >= 1 (down specs also need s_{r+1})")
        elif k == "M":
            if self.x is None or self.x < 0:
                raise ValidationError("M-spec needs x >= 0")
        elif k == "explicit":
            if not isinstance(self.H, SkewMatrix):
                raise ValidationError("explicit spec needs a SkewMatrix")
        else:
            raise ValidationError(f"unknown algebra kind {k!r}")

    @property
    def r(self) -> int:
        return len(self.s) - (1 if self.arrow == "down" else 0)

    @classmethod
    def frtbar(cls, N: int):
        return cls("frtbar", N=N)

    @classmethod
    def oh(cls, N: int):
        return cls("oh", N=N)

    @classmethod
    def oh_localized(cls, N: int):
        return cls("ohloc", N=N)

    @classmethod
    def L_up(cls, *s: int):
        return cls("L", s=tuple(s), arrow="up")

    @classmethod
    def L_down(cls, *s: int):
        return cls("L", s=tuple(s), arrow="down")

    @classmethod
    def L_T(cls, T: int, arrow: str):
        return cls("L", s=(1,) * T, arrow=arrow)

    @classmethod
    def M(cls, x: int):
        return cls("M", x=x)

    @classmethod
    def explicit(cls, H):
        if not isinstance(H, SkewMatrix):
            H = SkewMatrix(tuple(tuple(r) for r in H))
        return cls("explicit", H=H)


def frt_exponents(N: int, oh: bool = False) -> IntMatrix:
    """q-exponents for generators ``z_0..z_{N-1}, z_0^*..z_{N-1}^*``.

    With ``oh=True`` the mixed exponents follow the z-form of Oh's algebra
    (``z_i z_j^* = q z_j^* z_i`` and ``z_i z_i^* = q^2 z_i^* z_i`` at top order).
    """
    n = 2 * N
    H = [[0] * n for _ in range(n)]

    def put(u, v, e):
        H[u][v] = e
        H[v][u] = -e

    for i in range(N):
        for j in range(i + 1, N):
            put(i, j, -1)
            put(N + i, N + j, 1)
        for j in range(N):
            if i != j:
                put(i, N + j, 1 if oh else -1)
        if oh:
            put(i, N + i, 2)
    return H


def oh_localized_exponents(N: int) -> IntMatrix:
    """Top-order q-exponents of the w-form relations (w_{N-1} invertible)."""
    n = 2 * N
    H = [[0] * n for _ in range(n)]
    last = N - 1

    def put(u, v, e):
        H[u][v] = e
        H[v][u] = -e

    for i in range(N):
        for j in range(i + 1, N):
            put(i, j, -1)
    for i in range(N - 1):
        for j in range(i + 1, N - 1):
            put(N + i, N + j, 1)
        put(N + i, N + last, 3)
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            put(i, N + j, 1 if i == last else -1)
    put(last, N + last, 2)
    return H


def L_generators(spec: AlgebraSpec) -> List[Tuple[str, int]]:
    """Generators of an L-algebra as ``('z', index)`` / ``('O', index)``.

    The z-indices and Omega-indices are realised concretely: the l-th Omega
    sits just above the z's counted by s_l.  Order: all z's ascending, then
    all Omegas ascending.
    """
    s = list(spec.s)
    if spec.arrow == "up":
        s.append(0)
    zs: List[int] = []
    omegas: List[int] = []
    idx = 0
    for ell, count in enumerate(s):
        for _ in range(count):
            zs.append(idx)
            idx += 1
        if ell < len(s) - 1:
            omegas.append(idx)
    return [("z", i) for i in zs] + [("O", j) for j in omegas]


def build_matrix(spec: AlgebraSpec) -> SkewMatrix:
    k = spec.kind
    if k == "frtbar":
        H = frt_exponents(spec.N)
    elif k == "oh":
        H = frt_exponents(spec.N, oh=True)
    elif k == "ohloc":
        H = oh_localized_exponents(spec.N)
    elif k == "M":
        x = spec.x
        # M_x = sum_{i>j} (E_ij - E_ji): +1 below the diagonal
        H = [[(1 if i > j else -1 if i < j else 0) for j in range(x)] for i in range(x)]
    elif k == "explicit":
        return spec.H
    elif k == "L":
        gens = L_generators(spec)
        n = len(gens)
        H = [[0] * n for _ in range(n)]
        for u, (ku, iu) in enumerate(gens):
            for v, (kv, iv) in enumerate(gens):
                if ku == "z" and kv == "z":
                    H[u][v] = -1 if iu < iv else (1 if iu > iv else 0)
                elif ku == "O" and kv == "z":
                    H[u][v] = 2 if iv < iu else 0
                elif ku == "z" and kv == "O":
                    H[u][v] = -2 if iu < iv else 0
    else:  # pragma: no cover - guarded by AlgebraSpec
        raise ValidationError(k)
    return SkewMatrix(tuple(tuple(r) for r in H))


# ---------------------------------------------------------------------------
# canonical form


class _Congruence:
    """Tracks ``A = W H W^T`` under unimodular basis changes (det +1)."""

    def __init__(self, H: IntMatrix):
        n = len(H)
        self.n = n
        self.A = [list(r) for r in H]
        self.W = [[int(i == j) for j in range(n)] for i in range(n)]

    def add(self, i: int, j: int, t: int):
        """e_i <- e_i + t e_j."""
        if not t:
            return
        A, W = self.A, self.W
        W[i] = [a + t * b for a, b in zip(W[i], W[j])]
        A[i] = [a + t * b for a, b in zip(A[i], A[j])]
        for row in A:
            row[i] += t * row[j]

    def rot(self, i: int, j: int):
        """(e_i, e_j) <- (e_j, -e_i)."""
        if i == j:
            return
        A, W = self.A, self.W
        W[i], W[j] = W[j], [-x for x in W[i]]
        A[i], A[j] = A[j], [-x for x in A[i]]
        for row in A:
            row[i], row[j] = row[j], -row[i]

    def negate_pair(self, i: int, j: int):
        """e_i <- -e_i, e_j <- -e_j."""
        for k in (i, j):
            self.W[k] = [-x for x in self.W[k]]
            self.A[k] = [-x for x in self.A[k]]
            for row in self.A:
                row[k] = -row[k]


def canonical_form(H) -> CanonicalForm:
    """Unimodular congruence to the skew Smith form.

    Pivot on a minimal nonzero entry, clear the two pivot rows by Euclidean
    steps, force the pivot to divide the complement, recurse.
    """
    if isinstance(H, SkewMatrix):
        H = H.as_lists()
    else:
        H = SkewMatrix(tuple(tuple(r) for r in H)).as_lists()
    c = _Congruence(H)
    A = c.A
    n = c.n
    p = 0
    while p + 1 < n:
        best = None
        for i in range(p, n):
            for j in range(i + 1, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        if i != p:
            c.rot(p, i)
            if j == p:
                j = i
        if j != p + 1:
            c.rot(p + 1, j)
        a = A[p][p + 1]
        restart = False
        for k in range(p + 2, n):
            t = A[p][k] // a
            c.add(k, p + 1, -t)
            if A[p][k]:
                restart = True
                break
            s = A[p + 1][k] // a
            c.add(k, p, s)
            if A[p + 1][k]:
                restart = True
                break
        if restart:
            continue
        bad = None
        for k in range(p + 2, n):
            for l in range(p + 2, n):
                if A[k][l] % a:
                    bad = k
                    break
            if bad is not None:
                break
        if bad is not None:
            c.add(p, bad, 1)
            continue
        p += 2
    K = p // 2
    # sign normalisation: S(m) has A[2k][2k+1] = -m < 0
    neg = [k for k in range(K) if A[2 * k][2 * k + 1] > 0]
    while len(neg) >= 2:
        k1, k2 = neg.pop(), neg.pop()
        c.negate_pair(2 * k1, 2 * k2)
    orientation = 1
    if neg:
        (k,) = neg
        if 2 * K < n:
            c.negate_pair(2 * k, n - 1)
        else:
            if k != 0:
                c.negate_pair(2 * k, 0)
            orientation = -1
    blocks = tuple(abs(A[2 * k][2 * k + 1]) for k in range(K))
    cf = CanonicalForm(
        W=tuple(tuple(r) for r in c.W),
        blocks=blocks,
        zero_count=n - 2 * K,
        orientation=orientation,
    )
    assert A == cf.matrix(), "congruence bookkeeping out of sync"
    return cf


# ---------------------------------------------------------------------------
# exact helpers


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(r) for r in zip(*A)]


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def bareiss_rank(M: Sequence[Sequence]) -> int:
    """Rank by fraction-free elimination; rational input is scaled to Z."""
    rows = []
    for r in M:
        r = [Fraction(x) for x in r]
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in r])
    if not rows:
        return 0
    A = rows
    nr, nc = len(A), len(A[0])
    rank, prev = 0, 1
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, nr):
            for j in range(col + 1, nc):
                A[i][j] = (A[i][j] * A[rank][col] - A[i][col] * A[rank][j]) // prev
            A[i][col] = 0
        prev = A[rank][col]
        rank += 1
        if rank == nr:
            break
    return rank


def pfaffian(M: Sequence[Sequence[int]]) -> int:
    """Pfaffian by expansion along the first row (small matrices only)."""
    n = len(M)
    if n % 2:
        return 0
    if n == 0:
        return 1
    total = 0
    for j in range(1, n):
        if M[0][j]:
            keep = [k for k in range(1, n) if k != j]
            sub = [[M[a][b] for b in keep] for a in keep]
            total += (-1) ** (j + 1) * M[0][j] * pfaffian(sub)
    return total


# ---------------------------------------------------------------------------
# degree and centre


def degree(H, m: int) -> int:
    """Product of m / gcd(m, m_i) over the canonical blocks."""
    cf = canonical_form(H)
    out = 1
    for b in cf.blocks:
        out *= m // gcd(m, b)
    return out


def _hnf_mod(vectors: List[List[int]], m: int) -> List[List[int]]:
    """Echelon basis of the subgroup of (Z/m)^n spanned by ``vectors``.

    Works over Z with m*e_i adjoined so row operations stay unimodular;
    returned rows are reduced into [0, m) and zero rows dropped.
    """
    n = len(vectors[0]) if vectors else 0
    rows = [list(v) for v in vectors] + [[m * int(i == j) for j in range(n)] for i in range(n)]
    basis: List[List[int]] = []
    col = 0
    while rows and col < n:
        rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                t = r[col] // piv[col]
                r = [a - t * b for a, b in zip(r, piv)]
                rest.append(r)
            nz = [piv] + [r for r in rest if r[col]]
            others = [r for r in rest if not r[col]]
            rows = [r for r in rows if r[col] == 0] + others + nz
            rows = _dedupe(rows)
            nz = [r for r in rows if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = [r for r in rows if not r[col]]
        col += 1
    out = []
    for r in basis:
        r = [a % m for a in r]
        if any(r):
            out.append(r)
    return out


def _dedupe(rows):
    seen, out = set(), []
    for r in rows:
        t = tuple(r)
        if t not in seen:
            seen.add(t)
            out.append(r)
    return out


def center_lattice(H, m: int) -> List[List[int]]:
    """Generators of ``{x in Z^n : H x = 0 mod m}`` reduced into [0, m).

    Together with ``m Z^n`` (always contained) the returned vectors span the
    lattice; each is the exponent vector of a central monomial.  Computed
    through the canonical form: with ``u = W^{-T} x`` the condition reads
    ``m_k u_{2k} = m_k u_{2k+1} = 0 (mod m)`` per block.
    """
    if m < 2:
        raise ValidationError("center_lattice needs m >= 2")
    if isinstance(H, SkewMatrix):
        Hm = H.as_lists()
    else:
        Hm = SkewMatrix(tuple(tuple(r) for r in H)).as_lists()
    n = len(Hm)
    if n == 0:
        return []
    cf = canonical_form(Hm)
    Wt = transpose([list(r) for r in cf.W])
    gens = []
    for k, b in enumerate(cf.blocks):
        step = m // gcd(m, b)
        for idx in (2 * k, 2 * k + 1):
            gens.append([step * Wt[i][idx] for i in range(n)])
    for idx in range(2 * len(cf.blocks), n):
        gens.append([Wt[i][idx] for i in range(n)])
    basis = _hnf_mod(gens, m)
    for v in basis:
        for row in Hm:
            assert sum(a * b for a, b in zip(row, v)) % m == 0
    return basis


def lattice_contains(basis: Sequence[Sequence[int]], x: Sequence[int], m: int) -> bool:
    """Is ``x`` in the span of ``basis`` plus ``m Z^n``?"""
    rows = [list(b) for b in basis]
    return _index(rows + [list(x)], m) == _index(rows, m)


def _index(rows, m):
    """Order of the subgroup of (Z/m)^n spanned by ``rows``."""
    out = 1
    for r in _hnf_mod(rows, m) if rows else []:
        piv = next(a for a in r if a)
        out *= m // gcd(m, piv)
    return out
