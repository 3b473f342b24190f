"""Exact arithmetic: rationals, cyclotomic numbers and Laurent polynomials.

Rationals are plain :class:`fractions.Fraction` objects.  Cyclotomic numbers
live in Q(zeta_N) and are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1)
reduced modulo the N-th cyclotomic polynomial, which makes the representation
canonical for a fixed conductor.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

from .errors import NotRational, ZeroBase

Rational = Fraction

__all__ = [
    "Rational",
    "Cyclotomic",
    "LaurentPoly",
    "cyclotomic_polynomial",
    "cyclo_arith",
    "cyclo_to_rational",
    "laurent_eval",
]


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num, den):
    """Exact division of integer polynomials with monic ``den``."""
    num = list(num)
    d = len(den) - 1
    quot = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            quot[i - d] = c
            for j, y in enumerate(den):
                num[i - d + j] -= c * y
    if any(num[:d]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds zeta_n^e written in the canonical basis (0 <= e < n)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    for e in range(n):
        if e < deg:
            row = [0] * deg
            row[e] = 1
        else:
            # x * row(e-1), then eliminate x^deg using Phi_n
            prev = rows[e - 1]
            top = prev[-1]
            row = [0] + list(prev[:-1])
            if top:
                for j in range(deg):
                    row[j] -= top * phi[j]
        rows.append(tuple(row))
    return tuple(rows)


def _totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class Cyclotomic:
    """An element of the cyclotomic field Q(zeta_N), zeta_N = exp(2 pi i / N)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != _totient(conductor):
            raise ValueError("coefficient vector must have length phi(conductor)")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    @classmethod
    def _raw(cls, conductor, coeffs):
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def from_exponents(cls, conductor: int, terms) -> "Cyclotomic":
        """Build sum c * zeta^e from ``(e, c)`` pairs; exponents taken mod N."""
        table = _reduction_table(conductor)
        acc = [Fraction(0)] * len(table[0])
        for e, c in terms:
            if not c:
                continue
            for j, v in enumerate(table[e % conductor]):
                if v:
                    acc[j] += c * v
        return cls._raw(conductor, tuple(acc))

    @classmethod
    def rational(cls, value, conductor: int = 1) -> "Cyclotomic":
        return cls.from_exponents(conductor, [(0, Fraction(value))])

    @classmethod
    def zeta(cls, conductor: int, power: int = 1) -> "Cyclotomic":
        return cls.from_exponents(conductor, [(power, Fraction(1))])

    # -- structure ---------------------------------------------------------

    def _terms(self):
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def embed(self, conductor: int) -> "Cyclotomic":
        """Same number viewed in Q(zeta_M) for a multiple M of the conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        step = conductor // self.conductor
        return Cyclotomic.from_exponents(conductor, [(e * step, c) for e, c in self._terms()])

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, _RationalABC)):
                other = Cyclotomic.rational(other, self.conductor)
            else:
                return None, None
        n = math.lcm(self.conductor, other.conductor)
        return self.embed(n), other.embed(n)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self!r} is not rational")
        return self.coeffs[0]

    def conj(self) -> "Cyclotomic":
        n = self.conductor
        return Cyclotomic.from_exponents(n, [(-e, c) for e, c in self._terms()])

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta -> zeta^k (k coprime to the conductor)."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        return Cyclotomic.from_exponents(n, [(k * e, c) for e, c in self._terms()])

    def __complex__(self):
        n = self.conductor
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * e / n) for e, c in self._terms()),
            0j,
        )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return Cyclotomic._raw(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return Cyclotomic._raw(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)):
            other = Fraction(other)
            return Cyclotomic._raw(self.conductor, tuple(x * other for x in self.coeffs))
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        n = a.conductor
        prod: dict[int, Fraction] = {}
        bt = b._terms()
        for i, x in a._terms():
            for j, y in bt:
                e = (i + j) % n
                prod[e] = prod.get(e, 0) + x * y
        return Cyclotomic.from_exponents(n, prod.items())

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = 1 / Fraction(other)
            return Cyclotomic._raw(self.conductor, tuple(x * inv for x in self.coeffs))
        if isinstance(other, Cyclotomic) and other.is_rational():
            return self / other.to_rational()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Cyclotomic.rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal values at different conductors must collide
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyclotomic-irrational",))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {self})"

    def __str__(self):
        parts = []
        for e, c in self._terms():
            if e == 0:
                parts.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{e}" if e > 1 else "")
                parts.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def cyclo_arith(a: Cyclotomic, b: Cyclotomic | None, op: str) -> Cyclotomic:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown operation {op!r}")


def cyclo_to_rational(a: Cyclotomic) -> Fraction:
    return a.to_rational()


class LaurentPoly:
    """Sparse Laurent polynomial in one variable with rational coefficients."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var: str = "q"):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self.terms: dict[int, Fraction] = clean
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coeff=1, var: str = "q") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def constant(cls, c, var: str = "q") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def from_coeffs(cls, coeffs, var: str = "q", shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(coeffs)}, var)

    @property
    def min_exp(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def max_exp(self) -> int:
        return max(self.terms) if self.terms else 0

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return self.min_exp >= 0

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, _RationalABC)):
            return LaurentPoly.constant(other, self.var)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                return LaurentPoly({e * k: Fraction(c) ** k}, self.var)
            raise ValueError("only monomials can be raised to negative powers")
        out = LaurentPoly.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPoly):
            return self.divexact(other)
        return NotImplemented

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other``; raises ArithmeticError if a remainder is left."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        dlead = other.max_exp
        dlow = other.min_exp
        lead_c = other.terms[dlead]
        quot: dict[int, Fraction] = {}
        while rem:
            top = max(rem)
            if top - dlead < self.min_exp - dlow:
                break
            c = rem[top] / lead_c
            shift = top - dlead
            quot[shift] = c
            for e, oc in other.terms.items():
                k = e + shift
                v = rem.get(k, 0) - c * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if rem:
            raise ArithmeticError("inexact Laurent polynomial division")
        return LaurentPoly(quot, self.var)

    def __call__(self, q):
        return laurent_eval(self, q)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient_list(self) -> list[Fraction]:
        """Dense coefficients from ``min_exp`` up to ``max_exp``."""
        if not self.terms:
            return []
        lo, hi = self.min_exp, self.max_exp
        return [self.terms.get(e, Fraction(0)) for e in range(lo, hi + 1)]

    def with_var(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self.terms, var)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                mono = str(abs(c))
            else:
                x = self.var if e == 1 else f"{self.var}^{e}"
                mono = x if abs(c) == 1 else f"{abs(c)}*{x}"
            sign = "-" if c < 0 else "+"
            out.append((sign, mono))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, mono in out[1:]:
            s += f" {sign} {mono}"
        return s


def laurent_eval(p: LaurentPoly, q) -> Fraction:
    q = Fraction(q)
    if q == 0:
        if p.min_exp < 0:
            raise ZeroBase("cannot evaluate negative powers at zero")
        return p.terms.get(0, Fraction(0))
    return sum((c * q**e for e, c in p.terms.items()), Fraction(0))
