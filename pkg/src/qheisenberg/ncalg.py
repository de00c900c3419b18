"""Noncommutative core: PBW normal ordering in F_q(N) and its relatives.

Every preset is an iterated Ore extension on generators ``x_0 < ... < x_{n-1}``
(PBW order).  For ``u > v`` a rule

    x_u x_v = q^{H[u][v]} x_v x_u + corr(u, v)

is stored, where ``corr`` is already in normal form and involves only
generators that sit strictly between in the extension tower.  Multiplication
of PBW monomials is done by a memoized recursion on power blocks
(``x_h^e x_g^k``), so one swap of blocks is computed once per engine.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from .coeff import CycloNum, LaurentPoly, limit_bracket, format_rational
from .errors import (
    DomainError,
    InconsistencyError,
    ModeMismatchError,
    ValidationError,
)
from .skewnf import SkewMatrix, frt_exponents, oh_localized_exponents

Mono = Tuple[int, ...]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


# ---------------------------------------------------------------------------
# coefficient rings


class _Ring:
    """Coefficient ring: generic Laurent polynomials, or Q(eps) for ``m``."""

    def __init__(self, m: Optional[int]):
        self.m = m
        self._q = {}
        if m is None:
            self.zero = LaurentPoly(0)
            self.one = LaurentPoly(1)
        else:
            self.zero = CycloNum.zero(m)
            self.one = CycloNum.one(m)

    def qpow(self, k: int):
        v = self._q.get(k)
        if v is None:
            v = LaurentPoly.q(k) if self.m is None else CycloNum.zeta(self.m, k)
            self._q[k] = v
        return v

    def coerce(self, c):
        if self.m is None:
            if isinstance(c, CycloNum):
                raise ModeMismatchError("root-of-unity scalar in generic mode")
            return LaurentPoly.coerce(c)
        if isinstance(c, CycloNum):
            if c.m != self.m:
                raise ModeMismatchError(f"modulus {c.m} used in mode m={self.m}")
            return c
        if isinstance(c, LaurentPoly):
            from .coeff import cyclo_reduce

            return cyclo_reduce(c, self.m)
        return CycloNum.from_rational(self.m, c)


@lru_cache(maxsize=None)
def _ring(m: Optional[int]) -> _Ring:
    return _Ring(m)


# ---------------------------------------------------------------------------
# presets


@dataclass(frozen=True)
class AlgebraPreset:
    """One of FRT(N), FRTbar(N), Oh(N), OhLocalized(N), Torus(H).

    ``invertible`` lists generator indices allowed negative exponents.  A
    generator may only be invertible if it q-commutes with every other
    generator without correction terms.
    """

    kind: str
    N: Optional[int] = None
    H: Optional[SkewMatrix] = None
    invertible: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if self.kind in ("frt", "frtbar", "oh", "ohloc"):
            if self.N is None or self.N < 1:
                raise ValidationError(f"{self.kind} needs N >= 1")
        elif self.kind == "torus":
            if not isinstance(self.H, SkewMatrix):
                raise ValidationError("torus preset needs a SkewMatrix")
        else:
            raise ValidationError(f"unknown preset {self.kind!r}")
        object.__setattr__(self, "invertible", frozenset(self.invertible))
        for g in self.invertible:
            if not 0 <= g < self.n:
                raise ValidationError(f"invertible index {g} out of range")
            if any(g in pair for pair in _corrections(self)):
                raise ValidationError(f"generator {self.names[g]} has correction terms; cannot invert")

    # constructors
    @classmethod
    def frt(cls, N: int):
        return cls("frt", N=N)

    @classmethod
    def frtbar(cls, N: int):
        return cls("frtbar", N=N)

    @classmethod
    def oh(cls, N: int, invert_last: bool = False):
        return cls("oh", N=N, invertible=frozenset({N - 1}) if invert_last else frozenset())

    @classmethod
    def oh_localized(cls, N: int):
        return cls("ohloc", N=N, invertible=frozenset({N - 1}))

    @classmethod
    def torus(cls, H, invertible=None):
        if not isinstance(H, SkewMatrix):
            H = SkewMatrix(tuple(tuple(r) for r in H))
        inv = frozenset(range(H.n)) if invertible is None else frozenset(invertible)
        return cls("torus", H=H, invertible=inv)

    # shape
    @property
    def n(self) -> int:
        return self.H.n if self.kind == "torus" else 2 * self.N

    @property
    def names(self) -> Tuple[str, ...]:
        if self.kind == "torus":
            return tuple(f"z{k}" for k in range(self.n))
        base = "w" if self.kind == "ohloc" else "z"
        return tuple(f"{base}{k}" for k in range(self.N)) + tuple(
            f"{base}s{k}" for k in range(self.N)
        )

    @property
    def has_stars(self) -> bool:
        return self.kind != "torus"

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown generator {name!r} for preset {self.label}") from None

    def star(self, i: int) -> int:
        return self.N + i

    @property
    def label(self) -> str:
        if self.kind == "torus":
            return f"Torus({self.n})"
        return {"frt": "FRT", "frtbar": "FRTbar", "oh": "Oh", "ohloc": "OhLocalized"}[self.kind] + f"({self.N})"

    @property
    def exponents(self) -> Tuple[Tuple[int, ...], ...]:
        if self.kind == "torus":
            return self.H.entries
        if self.kind in ("frt", "frtbar"):
            H = frt_exponents(self.N)
        elif self.kind == "oh":
            H = frt_exponents(self.N, oh=True)
        else:
            H = oh_localized_exponents(self.N)
        return tuple(tuple(r) for r in H)

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "torus":
            out["H"] = self.H.to_json()
        else:
            out["N"] = self.N
        return out


@lru_cache(maxsize=None)
def _corrections(preset: AlgebraPreset) -> Dict[Tuple[int, int], Tuple[Tuple[Mono, LaurentPoly], ...]]:
    """Correction terms ``corr(u, v)`` for ``u > v`` as (monomial, coeff) pairs."""
    out: Dict[Tuple[int, int], Tuple[Tuple[Mono, LaurentPoly], ...]] = {}
    if preset.kind in ("frtbar", "torus"):
        return out
    N, n = preset.N, 2 * preset.N
    q2m1 = LaurentPoly({2: 1, 0: -1})
    for i in range(N):
        if preset.kind == "frt":
            # z_i^* z_i = z_i z_i^* - (q^2-1) Omega_{i+1}
            c = -q2m1
        elif preset.kind == "oh":
            # z_i^* z_i = q^-2 z_i z_i^* + (q^-2 - 1) Omega_{i+1}
            c = LaurentPoly({-2: 1, 0: -1})
        else:
            # w_i^* w_i = w_i w_i^* - (q^2-1) Omega_{i+1}, i <= N-2
            if i == N - 1:
                continue
            c = -q2m1
        terms = []
        for k in range(i + 1, N):
            e = [0] * n
            e[k] = e[N + k] = 1
            terms.append((tuple(e), c))
        if terms:
            out[(N + i, i)] = tuple(terms)
    return out


# ---------------------------------------------------------------------------
# rewriting engine


def _add_into(acc: dict, mono: Mono, c, zero_check=True):
    v = acc.get(mono)
    v = c if v is None else v + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


class _Engine:
    def __init__(self, preset: AlgebraPreset, m: Optional[int]):
        self.preset = preset
        self.ring = _ring(m)
        self.n = preset.n
        self.H = preset.exponents
        self.corr = {
            k: tuple((mono, self.ring.coerce(c)) for mono, c in v)
            for k, v in _corrections(preset).items()
        }
        self._mul: Dict[Tuple[Mono, Mono], Dict[Mono, object]] = {}
        self._swap: Dict[Tuple[int, int, int, int], Dict[Mono, object]] = {}

    def swap(self, h: int, e: int, g: int, k: int) -> Dict[Mono, object]:
        """Normal form of ``x_h^e x_g^k`` for ``h > g``."""
        key = (h, e, g, k)
        hit = self._swap.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        mono = [0] * self.n
        mono[g] = k
        mono[h] = e
        top = ((tuple(mono), ring.qpow(e * k * self.H[h][g])),)
        corr = self.corr.get((h, g))
        if corr is None:
            out = dict(top)
        elif e == 1 and k == 1:
            out = dict(top)
            for mn, c in corr:
                _add_into(out, mn, c)
        elif e > 1:
            # x_h^{e-1} (x_h x_g^k)
            left = [0] * self.n
            left[h] = e - 1
            out = self.mul_elem({tuple(left): ring.one}, self.swap(h, 1, g, k))
        else:
            # (x_h x_g^{k-1}) x_g
            right = [0] * self.n
            right[g] = 1
            out = self.mul_elem(self.swap(h, 1, g, k - 1), {tuple(right): ring.one})
        self._swap[key] = out
        return out

    def mul(self, a: Mono, b: Mono) -> Dict[Mono, object]:
        key = (a, b)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        one = self.ring.one
        ia = [i for i, x in enumerate(a) if x]
        ib = [i for i, x in enumerate(b) if x]
        if not ia or not ib or ia[-1] <= ib[0]:
            out = {tuple(x + y for x, y in zip(a, b)): one}
        else:
            h, g = ia[-1], ib[0]
            a1 = list(a)
            a1[h] = 0
            b1 = list(b)
            b1[g] = 0
            a1, b1 = tuple(a1), tuple(b1)
            out = {}
            for mono, c in self.swap(h, a[h], g, b[g]).items():
                for mono2, c2 in self.mul(a1, mono).items():
                    for mono3, c3 in self.mul(mono2, b1).items():
                        _add_into(out, mono3, c * c2 * c3)
        self._mul[key] = out
        return out

    def mul_elem(self, x: Mapping[Mono, object], y: Mapping[Mono, object]) -> Dict[Mono, object]:
        out: Dict[Mono, object] = {}
        for ma, ca in x.items():
            for mb, cb in y.items():
                cab = ca * cb
                for mono, c in self.mul(ma, mb).items():
                    _add_into(out, mono, cab * c)
        return out


@lru_cache(maxsize=64)
def _engine(preset: AlgebraPreset, m: Optional[int]) -> _Engine:
    return _Engine(preset, m)


def clear_caches():
    _engine.cache_clear()


# ---------------------------------------------------------------------------
# elements


class NCElement:
    """Sparse PBW expansion: monomial exponent vector -> coefficient.

    ``mode`` is ``None`` for generic q (LaurentPoly coefficients) or an odd
    ``m`` for q a primitive m-th root of unity (CycloNum coefficients).
    """

    __slots__ = ("algebra", "mode", "_terms")

    def __init__(self, algebra: AlgebraPreset, terms: Mapping[Mono, object] = None, mode: Optional[int] = None):
        self.algebra = algebra
        self.mode = mode
        ring = _ring(mode)
        clean = {}
        n = algebra.n
        for mono, c in (terms or {}).items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != n:
                raise ValidationError(f"monomial {mono} has wrong length for {algebra.label}")
            for i, x in enumerate(mono):
                if x < 0 and i not in algebra.invertible:
                    raise DomainError(f"{algebra.names[i]} is not invertible in {algebra.label}")
            c = ring.coerce(c)
            if c:
                _add_into(clean, mono, c)
        self._terms = clean

    @classmethod
    def _raw(cls, algebra, terms, mode):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.mode = mode
        obj._terms = terms
        return obj

    # constructors
    @classmethod
    def scalar(cls, algebra: AlgebraPreset, c, mode=None) -> "NCElement":
        return cls(algebra, {(0,) * algebra.n: c}, mode)

    @classmethod
    def gen(cls, algebra: AlgebraPreset, name_or_index, mode=None, exp: int = 1) -> "NCElement":
        i = algebra.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        mono = [0] * algebra.n
        mono[i] = exp
        return cls(algebra, {tuple(mono): 1}, mode)

    @classmethod
    def monomial(cls, algebra: AlgebraPreset, exps: Sequence[int], c=1, mode=None) -> "NCElement":
        return cls(algebra, {tuple(exps): c}, mode)

    # inspection
    @property
    def terms(self) -> Dict[Mono, object]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, mono: Sequence[int]):
        return self._terms.get(tuple(mono), _ring(self.mode).zero)

    # arithmetic
    def _check(self, other: "NCElement"):
        if other.algebra != self.algebra:
            raise ModeMismatchError(f"{self.algebra.label} vs {other.algebra.label}")
        if other.mode != self.mode:
            raise ModeMismatchError(f"mode {self.mode} vs {other.mode}")

    def _lift(self, other):
        if isinstance(other, NCElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, LaurentPoly, CycloNum)) and not isinstance(other, bool):
            return NCElement.scalar(self.algebra, other, self.mode)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            _add_into(out, mono, c)
        return NCElement._raw(self.algebra, out, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return NCElement._raw(self.algebra, {k: -v for k, v in self._terms.items()}, self.mode)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, NCElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, LaurentPoly, CycloNum)) and not isinstance(other, bool):
            c = _ring(self.mode).coerce(other)
            if not c:
                return NCElement._raw(self.algebra, {}, self.mode)
            return NCElement._raw(self.algebra, {k: v * c for k, v in self._terms.items()}, self.mode)
        return NotImplemented

    def __rmul__(self, other):
        # scalars are central
        return self.__mul__(other)

    def __pow__(self, n: int):
        return power(self, n)

    def __eq__(self, other):
        if isinstance(other, NCElement):
            return self.algebra == other.algebra and self.mode == other.mode and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == NCElement.scalar(self.algebra, other, self.mode)
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, self.mode, frozenset(self._terms.items())))

    # text / json
    def format_monomial(self, mono: Mono) -> str:
        parts = []
        for name, e in zip(self.algebra.names, mono):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"NCElement({self.algebra.label}, {str(self)!r})"

    def to_json(self):
        return [
            {"exps": list(mono), "coeff": c.to_json()}
            for mono, c in self.items()
        ]

    @classmethod
    def from_json(cls, algebra: AlgebraPreset, obj, mode=None) -> "NCElement":
        terms = {}
        try:
            for t in obj:
                c = t["coeff"]
                c = CycloNum.from_json(c) if "m" in c else LaurentPoly.from_json(c)
                _add_into(terms, tuple(t["exps"]), c)
        except (KeyError, TypeError) as exc:
            raise ValidationError("element JSON must be a list of {exps, coeff}") from exc
        return cls(algebra, terms, mode)


def format_element(x: NCElement) -> str:
    if not x._terms:
        return "0"
    out = ""
    for k, (mono, c) in enumerate(x.items()):
        sign = c.leading_sign()
        if sign < 0:
            c = -c
        body_c = c.format()
        mono_s = x.format_monomial(mono)
        if not mono_s:
            body = body_c if k == 0 or _is_atomic(body_c) else f"({body_c})"
        elif body_c == "1":
            body = mono_s
        elif _is_atomic(body_c):
            body = f"{body_c}*{mono_s}"
        else:
            body = f"({body_c})*{mono_s}"
        if k == 0:
            out = ("-" if sign < 0 else "") + body
        else:
            out += (" - " if sign < 0 else " + ") + body
    return out


def _is_atomic(text: str) -> bool:
    """A coefficient prints without parentheses when it is a single term."""
    return "+" not in text and "-" not in text[1:]


# ---------------------------------------------------------------------------
# operations


def _ensure_same(a: NCElement, b: NCElement):
    if a.algebra != b.algebra:
        raise ModeMismatchError(f"{a.algebra.label} vs {b.algebra.label}")
    if a.mode != b.mode:
        raise ModeMismatchError(f"mode {a.mode} vs {b.mode}")


def multiply(a: NCElement, b: NCElement) -> NCElement:
    _ensure_same(a, b)
    eng = _engine(a.algebra, a.mode)
    return NCElement._raw(a.algebra, eng.mul_elem(a._terms, b._terms), a.mode)


def normal_order(word, algebra: Optional[AlgebraPreset] = None, mode=None) -> NCElement:
    """Normal form of a product.

    ``word`` is either an :class:`NCElement` (already normal, returned as is)
    or a sequence of factors, each an NCElement, a generator name, or a
    ``(name, exponent)`` pair; the factors are multiplied left to right.
    """
    if isinstance(word, NCElement):
        return word
    if algebra is None:
        raise ValidationError("normal_order of a word needs the algebra")
    out = NCElement.scalar(algebra, 1, mode)
    for f in word:
        if isinstance(f, NCElement):
            out = multiply(out, f)
        elif isinstance(f, str):
            out = multiply(out, NCElement.gen(algebra, f, mode))
        else:
            name, e = f
            out = multiply(out, NCElement.gen(algebra, name, mode, e))
    return out


def generators(algebra: AlgebraPreset, mode=None) -> List[NCElement]:
    return [NCElement.gen(algebra, i, mode) for i in range(algebra.n)]


def omega(algebra: AlgebraPreset, i: int, mode=None) -> NCElement:
    """``Omega_i = sum_{k >= i} z_k z_k^*``."""
    if not algebra.has_stars:
        raise DomainError("Omega is only defined for presets with starred generators")
    if not 0 <= i < algebra.N:
        raise DomainError(f"Omega index {i} out of range 0..{algebra.N - 1}")
    out = NCElement(algebra, {}, mode)
    for k in range(i, algebra.N):
        out = out + multiply(NCElement.gen(algebra, k, mode), NCElement.gen(algebra, algebra.star(k), mode))
    return out


def commutator(a: NCElement, b: NCElement) -> NCElement:
    return multiply(a, b) - multiply(b, a)


def power(a: NCElement, n: int) -> NCElement:
    if n < 0:
        if len(a._terms) == 1:
            ((mono, c),) = a._terms.items()
            if all(x == 0 or i in a.algebra.invertible for i, x in enumerate(mono)):
                # (c x_1^e_1 ... x_k^e_k)^-1 = c^-1 x_k^-e_k ... x_1^-e_1
                inv = NCElement.scalar(a.algebra, 1, a.mode)
                for i in reversed(range(a.algebra.n)):
                    if mono[i]:
                        inv = multiply(inv, NCElement.gen(a.algebra, i, a.mode, -mono[i]))
                return power(inv * c ** -1, -n)
        raise DomainError("negative powers need an invertible monomial")
    result = NCElement.scalar(a.algebra, 1, a.mode)
    base = a
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


@dataclass(frozen=True)
class CentralityResult:
    central: bool
    witness: Optional[str] = None
    commutator: Optional[NCElement] = None

    def __bool__(self):
        return self.central


def is_central(a: NCElement) -> CentralityResult:
    for i, g in enumerate(generators(a.algebra, a.mode)):
        c = commutator(a, g)
        if c:
            return CentralityResult(False, a.algebra.names[i], c)
    return CentralityResult(True)


# ---------------------------------------------------------------------------
# coefficient families


def _p(i: int) -> LaurentPoly:
    return LaurentPoly.q(-2 * i) - 1


def a_coefficients(n: int) -> List[LaurentPoly]:
    """``(a_0(n), ..., a_n(n))`` from the recursion
    ``a_t(n+1) = (q^{-2t} - 1) a_t(n) + a_{t-1}(n)``, with ``a_0(0) = 1``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    row = [LaurentPoly(1)]
    for k in range(n):
        nxt = []
        for t in range(k + 2):
            v = LaurentPoly(0)
            if t <= k:
                v = v + _p(t) * row[t]
            if t >= 1:
                v = v + row[t - 1]
            nxt.append(v)
        row = nxt
    return row


def a_closed_form(t: int, n: int) -> LaurentPoly:
    """``sum_b p_b^{n-1} / prod_{a != b} (p_b - p_a)`` over ``1 <= a, b <= t``,
    with all denominators cleared exactly."""
    if t < 1 or n < 1:
        raise DomainError("a_closed_form needs t >= 1 and n >= 1")
    p = [None] + [_p(i) for i in range(1, t + 1)]
    vander = LaurentPoly(1)
    for a, c in combinations(range(1, t + 1), 2):
        vander = vander * (p[c] - p[a])
    num = LaurentPoly(0)
    for b in range(1, t + 1):
        rest = LaurentPoly(1)
        others = [a for a in range(1, t + 1) if a != b]
        for a, c in combinations(others, 2):
            rest = rest * (p[c] - p[a])
        sign = -1 if (t - b) % 2 else 1
        num = num + (p[b] ** (n - 1)) * rest * sign
    return num.exact_div(vander)


def c_coefficients(i: int) -> List[LaurentPoly]:
    """``(c_{i,0}, ..., c_{i,i})`` from ``c_{i+1,j} = q^{-2j} c_{i,j} + q^{-2(j-1)} c_{i,j-1}``."""
    if i < 0:
        raise DomainError("i must be >= 0")
    row = [LaurentPoly(1)]
    for k in range(i):
        nxt = []
        for j in range(k + 2):
            v = LaurentPoly(0)
            if j <= k:
                v = v + LaurentPoly.q(-2 * j) * row[j]
            if j >= 1:
                v = v + LaurentPoly.q(-2 * (j - 1)) * row[j - 1]
            nxt.append(v)
        row = nxt
    return row


def d_coefficients(i: int, s: int) -> List[LaurentPoly]:
    """``(d_{i,1}(s), ..., d_{i,i}(s))`` in
    ``z^i z*^s = z*^s z^i + sum_j d_{i,j}(s) Omega^j z*^{s-j} z^{i-j}``."""
    if not 1 <= i <= s:
        raise DomainError("d_coefficients needs 1 <= i <= s")
    c = c_coefficients(i)
    out = []
    pref = LaurentPoly(1)
    for j in range(1, i + 1):
        pref = pref * LaurentPoly({2 * (s + 1 - j): 1, 0: -1})
        out.append(pref * c[j])
    return out


def young_area_sum(i: int, j: int) -> LaurentPoly:
    """``sum q^{2(n_1 + ... + n_j)}`` over ``i-1 >= n_1 > ... > n_j >= 0``."""
    out = LaurentPoly(0)
    for rows in combinations(range(i), j):
        out = out + LaurentPoly.q(2 * sum(rows))
    return out


def f_from_recursion(i: int, j: int) -> LaurentPoly:
    """``q^{2(i-1)j} c_{i,j}``."""
    c = c_coefficients(i)
    if j > i:
        return LaurentPoly(0)
    return LaurentPoly.q(2 * (i - 1) * j) * c[j]


# ---------------------------------------------------------------------------
# classical limit


@dataclass(frozen=True)
class ClassicalPoly:
    """Commutative polynomial in ``a_0..a_{N-1}, as_0..as_{N-1}``
    (``as_k`` standing for ``a_k^*``) with rational coefficients."""

    N: int
    terms: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, N, d):
        return cls(N, tuple(sorted(((k, v) for k, v in d.items() if v), reverse=True)))

    def as_dict(self):
        return dict(self.terms)

    def var_names(self):
        return [f"a{k}" for k in range(self.N)] + [f"as{k}" for k in range(self.N)]

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.var_names()
        out = ""
        for k, (mono, c) in enumerate(self.terms):
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono_s = "*".join(factors)
            a = abs(c)
            if not mono_s:
                body = format_rational(a)
            elif a == 1:
                body = mono_s
            else:
                body = f"{format_rational(a)}*{mono_s}"
            if k == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self):
        return [{"exps": list(mono), "coeff": format_rational(c)} for mono, c in self.terms]


def classical_bracket(N: int, u: int, v: int) -> ClassicalPoly:
    """The closed-form brackets of the coordinate functions (generator
    indices as in FRT(N): ``a_k`` is ``k``, ``a_k^*`` is ``N + k``)."""
    n = 2 * N

    def mono(*idx):
        e = [0] * n
        for i in idx:
            e[i] += 1
        return tuple(e)

    if u == v:
        return ClassicalPoly(N, ())
    su, sv = u >= N, v >= N
    iu, iv = u % N, v % N
    if not su and not sv:
        c = -1 if iu < iv else 1
        return ClassicalPoly.from_dict(N, {mono(u, v): Fraction(c)})
    if su and sv:
        c = 1 if iu < iv else -1
        return ClassicalPoly.from_dict(N, {mono(u, v): Fraction(c)})
    sign = 1
    if su:
        u, v, iu, iv = v, u, iv, iu
        sign = -1
    if iu != iv:
        return ClassicalPoly.from_dict(N, {mono(u, v): Fraction(-sign)})
    return ClassicalPoly.from_dict(N, {mono(k, N + k): Fraction(2 * sign) for k in range(iu + 1, N)})


def poisson_from_commutator(
    g1: Union[str, int], g2: Union[str, int], N: int, m: int, algebra: Optional[AlgebraPreset] = None
) -> ClassicalPoly:
    """``{a, b} = lim_{q -> eps} [x^m, y^m] / (m (q^m - 1))`` computed in
    FRT(N) (or the given preset) at generic q, then mapped to classical
    coordinates."""
    if m < 3 or m % 2 == 0:
        from .errors import UnsupportedModulusError

        raise UnsupportedModulusError(f"m must be odd and >= 3, got {m}")
    alg = AlgebraPreset.frt(N) if algebra is None else algebra
    x = NCElement.gen(alg, g1, None, m)
    y = NCElement.gen(alg, g2, None, m)
    comm = commutator(x, y)
    out: Dict[Tuple[int, ...], Fraction] = {}
    for mono, c in comm._terms.items():
        try:
            val = limit_bracket(c, m)
        except Exception as exc:
            raise InconsistencyError(f"coefficient {c} of {mono}: {exc}") from exc
        if not val:
            continue
        r = val.to_rational()
        if r is None or any(e % m for e in mono):
            raise InconsistencyError(f"monomial {mono} survives the limit with value {val}")
        key = tuple(e // m for e in mono)
        out[key] = out.get(key, Fraction(0)) + r
    return ClassicalPoly.from_dict(N, out)
