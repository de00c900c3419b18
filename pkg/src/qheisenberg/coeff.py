"""Exact coefficient arithmetic.

Two coefficient types are used throughout the package:

* :class:`LaurentPoly` -- Laurent polynomials in the quantum parameter ``q``
  with rational coefficients (the "generic q" mode).
* :class:`CycloNum` -- residues modulo the m-th cyclotomic polynomial, i.e.
  exact elements of Q(eps) for eps a primitive m-th root of unity, with
  ``q`` mapped to ``eps``.

Everything is immutable and built on :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import (
    LimitDoesNotExistError,
    NotInvertibleError,
    UnsupportedModulusError,
    ValidationError,
)

Rational = Union[int, Fraction]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` / ``"p"`` strings (or pass ints/Fractions through)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# dense polynomial helpers (ascending coefficient lists of Fractions)


def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = _trim([Fraction(c) for c in num])
    den = _trim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], num
    rem = list(num)
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                rem[k + j] -= c * d
    return _trim(quot), _trim(rem[: len(den) - 1])


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Tuple[int, ...]:
    """Integer coefficients (ascending) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise UnsupportedModulusError(f"cyclotomic index must be positive, got {m}")
    num: List[Fraction] = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, [Fraction(c) for c in cyclotomic_poly(d)])
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _check_modulus(m) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 3 or m % 2 == 0:
        raise UnsupportedModulusError(f"modulus must be an odd integer >= 3, got {m!r}")
    return m


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Laurent polynomial in ``q`` with exact rational coefficients.

    Stored sparsely as ``{exponent: coefficient}`` with no zero coefficients,
    so structural equality is mathematical equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[None, Rational, Mapping[int, Rational]] = None):
        if terms is None:
            clean: Dict[int, Fraction] = {}
        elif isinstance(terms, (int, Fraction)):
            clean = {0: Fraction(terms)} if terms else {}
        else:
            clean = {}
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def q(cls, exponent: int = 1, coeff: Rational = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return LaurentPoly(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- inspection
    @property
    def terms(self) -> Mapping[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    @property
    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    def coefficient(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    # -- arithmetic
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise NotInvertibleError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            return LaurentPoly._raw({e * n: Fraction(1) / c ** (-n)})
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other`` when it is a Laurent polynomial."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        a_lo, b_lo = self.min_exp, other.min_exp
        quot, rem = _poly_divmod(self._dense(a_lo), other._dense(b_lo))
        if rem:
            raise NotInvertibleError("division is not exact")
        return LaurentPoly({i + a_lo - b_lo: c for i, c in enumerate(quot)})

    def _dense(self, lo: int) -> List[Fraction]:
        out = [Fraction(0)] * (self.max_exp - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return out

    def substitute_q_power(self, k: int) -> "LaurentPoly":
        """Return p(q^k)."""
        return LaurentPoly({e * k: c for e, c in self._terms.items()})

    def evaluate(self, x: Rational) -> Fraction:
        x = Fraction(x)
        return sum((c * x ** e for e, c in self._terms.items()), Fraction(0))

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text / json
    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "q") -> str:
        """Exponent-descending text form, e.g. ``q^2-1`` or ``3/2*q^-1``."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = format_rational(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def leading_sign(self) -> int:
        if not self._terms:
            return 0
        return 1 if self._terms[max(self._terms)] > 0 else -1

    def to_json(self) -> Dict[str, str]:
        return {str(e): format_rational(c) for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "LaurentPoly":
        if not isinstance(obj, Mapping):
            raise ValidationError("LaurentPoly JSON must be an object")
        try:
            return cls({int(e): parse_rational(c) for e, c in obj.items()})
        except ValueError as exc:
            raise ValidationError(f"bad LaurentPoly JSON: {obj!r}") from exc


Q = LaurentPoly.q(1)
ONE = LaurentPoly(1)


# ---------------------------------------------------------------------------


class CycloNum:
    """Element of Q(eps), eps a primitive m-th root of unity (m odd >= 3).

    Represented by the remainder of a polynomial in ``q`` modulo the m-th
    cyclotomic polynomial; ``coeffs`` has length phi(m), ascending.
    """

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs: Iterable[Rational] = ()):
        _check_modulus(m)
        phi = euler_phi(m)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce_mod_cyclo(cs, m)
        cs = cs + [Fraction(0)] * (phi - len(cs))
        self.m = m
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, m: int, coeffs: Tuple[Fraction, ...]) -> "CycloNum":
        obj = cls.__new__(cls)
        obj.m = m
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, m: int) -> "CycloNum":
        return cls(m)

    @classmethod
    def one(cls, m: int) -> "CycloNum":
        return cls(m, [1])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycloNum":
        """eps**k."""
        _check_modulus(m)
        return _zeta_cached(m, k % m)

    @classmethod
    def from_rational(cls, m: int, x: Rational) -> "CycloNum":
        return cls(m, [x])

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.m != self.m:
                raise ValueError(f"cyclotomic moduli differ: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloNum.from_rational(self.m, other)
        raise TypeError

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def to_rational(self):
        """The value as a Fraction if it lies in Q, else ``None``."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycloNum._raw(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycloNum._raw(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloNum._raw(self.m, tuple(a * other for a in self.coeffs))
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        prod = _poly_mul(self.coeffs, other.coeffs)
        return _from_reduced(self.m, _reduce_mod_cyclo(prod, self.m))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Inverse via the extended Euclidean algorithm against Phi_m."""
        a = _trim(list(self.coeffs))
        if not a:
            raise NotInvertibleError("zero has no inverse")
        phi = [Fraction(c) for c in cyclotomic_poly(self.m)]
        # invariant: r0 = s0*a (mod phi), r1 = s1*a (mod phi)
        r0, s0 = phi, []
        r1, s1 = a, [Fraction(1)]
        while r1:
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        if len(r0) != 1:
            raise NotInvertibleError(f"{self} is a zero divisor modulo Phi_{self.m}")
        inv = [c / r0[0] for c in s0]
        return CycloNum(self.m, _reduce_mod_cyclo(inv, self.m))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise NotInvertibleError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloNum.one(self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.m == other.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.coeffs))
        return self._hash

    def as_laurent(self) -> LaurentPoly:
        """The canonical representative polynomial (degree < phi(m))."""
        return LaurentPoly({i: c for i, c in enumerate(self.coeffs)})

    def __repr__(self):
        return f"CycloNum({self.m}, {str(self)!r})"

    def __str__(self):
        return self.as_laurent().format()

    def format(self, var: str = "q") -> str:
        return self.as_laurent().format(var)

    def leading_sign(self) -> int:
        return self.as_laurent().leading_sign()

    def to_json(self):
        return {"m": self.m, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CycloNum":
        try:
            return cls(int(obj["m"]), [parse_rational(c) for c in obj["coeffs"]])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad CycloNum JSON: {obj!r}") from exc


def _reduce_mod_cyclo(p: Sequence[Fraction], m: int) -> List[Fraction]:
    """Remainder of ``p`` modulo Phi_m, first folding exponents mod m."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    folded = [Fraction(0)] * m
    for i, c in enumerate(p):
        if c:
            folded[i % m] += c
    # Phi_m is monic: eliminate top coefficients
    for k in range(m - 1, deg - 1, -1):
        c = folded[k]
        if c:
            for j in range(deg + 1):
                folded[k - deg + j] -= c * phi[j]
    return folded[:deg]


def _from_reduced(m: int, coeffs: List[Fraction]) -> CycloNum:
    return CycloNum._raw(m, tuple(coeffs))


@lru_cache(maxsize=None)
def _zeta_cached(m: int, k: int) -> CycloNum:
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[k] = Fraction(1)
    return CycloNum(m, _reduce_mod_cyclo(coeffs, m))


Coefficient = Union[LaurentPoly, CycloNum]


def cyclo_reduce(p: Union[LaurentPoly, Rational], m: int) -> CycloNum:
    """Evaluate ``p`` at a primitive m-th root of unity, exactly."""
    _check_modulus(m)
    p = LaurentPoly.coerce(p)
    folded = [Fraction(0)] * m
    for e, c in p._terms.items():
        folded[e % m] += c
    return CycloNum(m, _reduce_mod_cyclo(folded, m))


def limit_bracket(p: Union[LaurentPoly, Rational], m: int) -> CycloNum:
    """``lim_{q -> eps} p(q) / (m (q^m - 1))`` computed exactly.

    Writes ``p = q^lo * Phi_m * g`` and ``q^m - 1 = Phi_m * h`` and returns
    ``eps^lo * g(eps) / (m * h(eps))``.
    """
    _check_modulus(m)
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        return CycloNum.zero(m)
    lo = p.min_exp
    phi = [Fraction(c) for c in cyclotomic_poly(m)]
    g, rem = _poly_divmod(p._dense(lo), phi)
    if rem:
        raise LimitDoesNotExistError(
            f"Phi_{m} does not divide {p}; the limit does not exist"
        )
    qm1 = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    h, rem = _poly_divmod(qm1, phi)
    assert not rem
    g_eps = CycloNum(m, _reduce_mod_cyclo(g, m))
    h_eps = CycloNum(m, _reduce_mod_cyclo(h, m))
    return CycloNum.zeta(m, lo) * g_eps / (h_eps * m)


def is_divisible_by_cyclotomic(p: LaurentPoly, m: int) -> bool:
    return cyclo_reduce(p, m).is_zero()
