"""Classical side: the quadratic Poisson structure on C^{2N}.

Coordinates are ordered ``(a_0, ..., a_{N-1}, a_{N-1}^*, ..., a_0^*)``.
Brackets of coordinate functions:

    {a_i, a_j}     = -a_i a_j       (i < j)
    {a_i^*, a_j^*} =  a_i^* a_j^*   (i < j)
    {a_i, a_j^*}   = -a_i a_j^*     (i != j)
    {a_i, a_i^*}   = 2 sum_{k>i} a_k a_k^*

The leaf invariants are read off the tail sums
``Omega_i = sum_{k >= i} a_k a_k^*``, which the Hamiltonian flows preserve
up to a common positive factor on each side of the flowing index.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import format_rational, parse_rational
from .errors import DomainError, ValidationError
from .skewnf import bareiss_rank

Coord = Tuple[str, int]  # ("a", i) or ("s", i)


@dataclass(frozen=True)
class PointData:
    N: int
    a: Tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(x) for x in self.a)
        if len(vals) != 2 * self.N:
            raise ValidationError(f"point needs {2 * self.N} coordinates, got {len(vals)}")
        object.__setattr__(self, "a", vals)

    @classmethod
    def from_parts(cls, plain: Sequence, star: Sequence) -> "PointData":
        """From ``a_0..a_{N-1}`` and ``a_0^*..a_{N-1}^*`` (both ascending)."""
        return cls(len(plain), tuple(plain) + tuple(reversed(star)))

    @classmethod
    def parse(cls, text: str, N: Optional[int] = None) -> "PointData":
        vals = [parse_rational(t) for t in text.replace(" ", "").split(",") if t]
        if N is None:
            if len(vals) % 2:
                raise ValidationError("a point has an even number of coordinates")
            N = len(vals) // 2
        return cls(N, tuple(vals))

    def plain(self, i: int) -> Fraction:
        return self.a[i]

    def star(self, i: int) -> Fraction:
        return self.a[2 * self.N - 1 - i]

    @property
    def plains(self) -> List[Fraction]:
        return [self.plain(i) for i in range(self.N)]

    @property
    def stars(self) -> List[Fraction]:
        return [self.star(i) for i in range(self.N)]

    def products(self) -> List[Fraction]:
        return [self.plain(i) * self.star(i) for i in range(self.N)]

    def tails(self) -> List[Fraction]:
        """``Omega_i`` for i = 0..N (``Omega_N = 0``)."""
        out = [Fraction(0)] * (self.N + 1)
        P = self.products()
        for i in reversed(range(self.N)):
            out[i] = out[i + 1] + P[i]
        return out

    def scaled(self, lam) -> "PointData":
        return PointData(self.N, tuple(lam * x for x in self.a))

    def to_json(self):
        return {"N": self.N, "a": [format_rational(x) for x in self.a]}

    @classmethod
    def from_json(cls, obj) -> "PointData":
        try:
            return cls(int(obj["N"]), tuple(parse_rational(x) for x in obj["a"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError("point JSON needs 'N' and 'a'") from exc

    def __str__(self):
        return ",".join(format_rational(x) for x in self.a)


def coordinates(N: int) -> List[Coord]:
    return [("a", i) for i in range(N)] + [("s", i) for i in reversed(range(N))]


# ---------------------------------------------------------------------------
# structure data


@dataclass(frozen=True)
class LeafStructure:
    """Leaf invariants of a point.

    ``i_seq = (i_0, i_1, ..., i_s)``: i_0 is the largest i with
    ``a_i a_i^* != 0``; odd entries are the largest lower index with
    ``Omega_i = 0``, even entries the largest lower index with
    ``Omega_i != 0``.  ``r[2j]`` counts nonzero coordinates strictly between
    ``i_{2j}`` and ``i_{2j-1}`` (above ``i_0`` for j = 0); when s = 2l+1 the
    entry ``r[2l+2]`` is one less than the number of nonzero coordinates
    below ``i_{2l+1}``.  When every product vanishes ``i_seq`` is empty and
    ``degenerate_r0`` counts all nonzero coordinates.
    """

    N: int
    i_seq: Tuple[int, ...]
    r: Tuple[Tuple[int, int], ...] = ()
    degenerate_r0: Optional[int] = None

    @property
    def degenerate(self) -> bool:
        return not self.i_seq

    @property
    def s(self) -> int:
        return len(self.i_seq) - 1

    @property
    def l(self) -> int:
        return self.s // 2

    @property
    def r_map(self) -> Dict[int, int]:
        return dict(self.r)

    def to_json(self):
        return {
            "N": self.N,
            "i_seq": list(self.i_seq),
            "r": {str(k): v for k, v in self.r},
            "degenerate_r0": self.degenerate_r0,
        }


def _nonzero_between(p: PointData, lo: int, hi: int) -> int:
    return sum((p.plain(i) != 0) + (p.star(i) != 0) for i in range(max(lo + 1, 0), min(hi, p.N)))


def structure_data(p: PointData) -> LeafStructure:
    P = p.products()
    if not any(P):
        return LeafStructure(p.N, (), (), _nonzero_between(p, -1, p.N))
    tails = p.tails()
    i0 = max(i for i in range(p.N) if P[i])
    seq = [i0]
    r = {0: _nonzero_between(p, i0, p.N)}
    while True:
        cur = seq[-1]
        want_zero = len(seq) % 2 == 1
        nxt = next((i for i in reversed(range(cur)) if (tails[i] == 0) == want_zero), None)
        if nxt is None:
            break
        if not want_zero:
            r[len(seq)] = _nonzero_between(p, nxt, cur)
        seq.append(nxt)
    s = len(seq) - 1
    if s % 2 == 1:
        r[s + 1] = _nonzero_between(p, -1, seq[-1]) - 1
    return LeafStructure(p.N, tuple(seq), tuple(sorted(r.items())), None)


def leaf_dimension(ls: LeafStructure) -> int:
    """Closed-form dimension of the symplectic leaf."""
    if ls.degenerate:
        return 2 * (ls.degenerate_r0 // 2)
    r = ls.r_map
    seq = list(ls.i_seq)
    s = ls.s
    if s % 2 == 0:
        seq.append(0)
        return sum(
            2 * (seq[2 * k] - seq[2 * k + 1]) + 2 * ((r[2 * k] + 1) // 2)
            for k in range(ls.l + 1)
        )
    l = ls.l
    return sum(2 * (seq[2 * k] - seq[2 * k + 1]) for k in range(l + 1)) + sum(
        2 * ((r[2 * k] + 1) // 2) for k in range(l + 2)
    )


# ---------------------------------------------------------------------------
# brackets and the rank oracle


def coordinate_bracket(N: int, u: Coord, v: Coord) -> Dict[Tuple[int, ...], Fraction]:
    """``{x_u, x_v}`` as a polynomial over the coordinates (exponent vectors
    indexed like :func:`coordinates`)."""
    pos = {c: k for k, c in enumerate(coordinates(N))}

    def mono(*cs):
        e = [0] * (2 * N)
        for c in cs:
            e[pos[c]] += 1
        return tuple(e)

    if u == v:
        return {}
    (tu, iu), (tv, iv) = u, v
    if tu == "a" and tv == "a":
        return {mono(u, v): Fraction(-1 if iu < iv else 1)}
    if tu == "s" and tv == "s":
        return {mono(u, v): Fraction(1 if iu < iv else -1)}
    if tu == "s":
        return {k: -c for k, c in coordinate_bracket(N, v, u).items()}
    if iu != iv:
        return {mono(u, v): Fraction(-1)}
    return {mono(("a", k), ("s", k)): Fraction(2) for k in range(iu + 1, N)}


def _bracket_value(p: PointData, u: Coord, v: Coord) -> Fraction:
    (tu, iu), (tv, iv) = u, v
    if u == v:
        return Fraction(0)
    x = p.plain(iu) if tu == "a" else p.star(iu)
    y = p.plain(iv) if tv == "a" else p.star(iv)
    if tu == "a" and tv == "a":
        return -x * y if iu < iv else x * y
    if tu == "s" and tv == "s":
        return x * y if iu < iv else -x * y
    if tu == "s":
        return -_bracket_value(p, v, u)
    if iu != iv:
        return -x * y
    return 2 * p.tails()[iu + 1]


def poisson_matrix(p: PointData) -> List[List[Fraction]]:
    cs = coordinates(p.N)
    return [[_bracket_value(p, u, v) for v in cs] for u in cs]


def rank(p: PointData) -> int:
    return bareiss_rank(poisson_matrix(p))


def _oh_bracket_value(p: PointData, u: Coord, v: Coord) -> Fraction:
    # Oh's algebra in z-form: mixed pairs get the opposite sign and the
    # diagonal tail sum includes k = i.
    (tu, iu), (tv, iv) = u, v
    if u == v or tu == tv:
        return _bracket_value(p, u, v)
    if tu == "s":
        return -_oh_bracket_value(p, v, u)
    if iu != iv:
        return -_bracket_value(p, u, v)
    return 2 * p.tails()[iu]


def oh_poisson_matrix(p: PointData) -> List[List[Fraction]]:
    cs = coordinates(p.N)
    return [[_oh_bracket_value(p, u, v) for v in cs] for u in cs]


def oh_rank(p: PointData) -> int:
    return bareiss_rank(oh_poisson_matrix(p))


def oh_transport(p: PointData) -> Optional[PointData]:
    """Move a point of Oh's algebra to the localized w-chart.

    Trailing index pairs with ``a_k = a_k^* = 0`` are dropped (the bracket
    restricts to the smaller algebra there).  If only ``a^*`` survives at the
    top, plain and star are exchanged, which is an anti-Poisson map.  Then
    ``w_i = a_i`` and ``w_i^* = a_i^* a_top^2``.  Returns None for the zero
    point.
    """
    P, S = p.plains, p.stars
    n = p.N
    while n and P[n - 1] == 0 and S[n - 1] == 0:
        n -= 1
    if n == 0:
        return None
    P, S = P[:n], S[:n]
    if P[n - 1] == 0:
        P, S = S, P
    a2 = P[n - 1] ** 2
    return PointData.from_parts(P, [x * a2 for x in S])


def poly_bracket(N: int, f: Dict[Tuple[int, ...], Fraction], g: Dict[Tuple[int, ...], Fraction]):
    """``{f, g}`` for polynomials in the coordinates, by the Leibniz rule."""
    cs = coordinates(N)
    n = 2 * N

    def deriv(h, k):
        out = {}
        for mono, c in h.items():
            if mono[k]:
                e = list(mono)
                e[k] -= 1
                e = tuple(e)
                out[e] = out.get(e, 0) + c * mono[k]
        return out

    def mul(x, y):
        out = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                e = tuple(a + b for a, b in zip(m1, m2))
                out[e] = out.get(e, 0) + c1 * c2
        return out

    out: Dict[Tuple[int, ...], Fraction] = {}
    df = [deriv(f, k) for k in range(n)]
    dg = [deriv(g, k) for k in range(n)]
    for u in range(n):
        if not df[u]:
            continue
        for v in range(n):
            if not dg[v]:
                continue
            b = coordinate_bracket(N, cs[u], cs[v])
            if not b:
                continue
            for e, c in mul(mul(df[u], dg[v]), b).items():
                out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def torus_poisson_matrix(H: Sequence[Sequence[int]], x: Sequence) -> List[List[Fraction]]:
    """``(h_ij x_i x_j)``: the bracket of a quasipolynomial algebra at x."""
    return [[Fraction(H[i][j]) * Fraction(x[i]) * Fraction(x[j]) for j in range(len(x))] for i in range(len(x))]


# ---------------------------------------------------------------------------
# moving inside a leaf


def good_point(p: PointData, literal: bool = False) -> PointData:
    """Zero every pair ``(a_i, a_i^*)`` with ``i_{2j+1} < i < i_{2j}``
    (``i_{2l+1} = 0`` when s = 2l).

    By default the removed products are absorbed into ``a_{i_{2j}}^*`` so
    that every tail sum keeps its zero pattern; this is the flow endpoint up
    to rescaling.  ``literal=True`` only zeroes and leaves the rest alone,
    which can change the structure data when several segments interact.
    """
    ls = structure_data(p)
    if ls.degenerate:
        return p
    plain, star = p.plains, p.stars
    tails = p.tails()
    seq = list(ls.i_seq)
    if ls.s % 2 == 0:
        seq.append(0)
    for j in range(0, len(seq), 2):
        top, bottom = seq[j], seq[j + 1]
        for i in range(bottom + 1, top):
            plain[i] = star[i] = Fraction(0)
        if not literal and top - bottom > 1:
            star[top] = (tails[bottom + 1] - tails[top + 1]) / plain[top]
    return PointData.from_parts(plain, star)


def flow_step(p: PointData, k1: int, lam) -> PointData:
    """Time-``t`` map of the Hamiltonian flow of ``a_{k1}``, ``lam = e^{-a_{k1} t}``.

    ``a_{k1}`` is constant; ``a_j, a_j^*`` scale by ``lam`` for j > k1,
    ``a_j`` by ``1/lam`` and ``a_j^*`` by ``lam`` for j < k1, and
    ``a_{k1}^* -> a_{k1}^* - (Omega_{k1+1} / a_{k1}) (lam^2 - 1)``.  When
    ``a_{k1} = 0`` the curve is the line ``a_{k1}^* + 2 Omega_{k1+1} lam``
    and ``lam`` is its additive parameter.
    """
    if not 0 <= k1 < p.N:
        raise DomainError(f"index {k1} out of range")
    lam = Fraction(lam)
    plain, star = p.plains, p.stars
    omega = p.tails()[k1 + 1]
    ak = plain[k1]
    if ak == 0:
        star[k1] = star[k1] + 2 * omega * lam
        return PointData.from_parts(plain, star)
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    for j in range(p.N):
        if j > k1:
            plain[j] *= lam
            star[j] *= lam
        elif j < k1:
            plain[j] /= lam
            star[j] *= lam
    star[k1] = star[k1] - omega / ak * (lam * lam - 1)
    return PointData.from_parts(plain, star)


def flow_to_zero_star(p: PointData) -> Optional[Tuple[int, Fraction]]:
    """``(k1, lam^2)`` for the flow that kills ``a_{k1}^*``, if it exists.

    ``k1`` is the largest index below ``i_0`` with ``a_{k1}^* != 0``; the
    target is ``lam^2 = Omega_{k1} / Omega_{k1+1}`` which needs both tails
    nonzero and ``a_{k1} != 0``.
    """
    ls = structure_data(p)
    if ls.degenerate:
        return None
    i0 = ls.i_seq[0]
    k1 = next((i for i in reversed(range(i0)) if p.star(i) != 0), None)
    if k1 is None or p.plain(k1) == 0:
        return None
    tails = p.tails()
    if tails[k1] == 0 or tails[k1 + 1] == 0:
        return None
    return k1, tails[k1] / tails[k1 + 1]
