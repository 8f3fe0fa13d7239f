"""Exact coefficient arithmetic.

Everything downstream is computed over one of two coefficient rings:

* ``LaurentScalar`` -- Laurent polynomials in a single variable ``v`` with
  rational coefficients.  One exponent step is one power of ``v``; for a
  fixed rank ``n`` the deformation parameter is ``q = v^(2n)``, so every
  fractional power of ``q`` that shows up in formulas (``q^(1/n)``,
  ``q^((n-1)/2n)``, ...) is an integer power of ``v``.

* ``CyclotomicScalar`` -- elements of Q(zeta_m), represented as residues in
  Q[x]/(Phi_m(x)).  ``specialize`` is the evaluation ``v -> zeta_m``.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LaurentScalar:
    """A Laurent polynomial in ``v`` over Q, stored as exponent -> coefficient.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                c = _as_fraction(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean

    @classmethod
    def zero(cls) -> "LaurentScalar":
        return cls()

    @classmethod
    def one(cls) -> "LaurentScalar":
        return cls({0: 1})

    @classmethod
    def from_rational(cls, c) -> "LaurentScalar":
        return cls({0: _as_fraction(c)})

    @classmethod
    def v_power(cls, e: int, coeff=1) -> "LaurentScalar":
        return cls({e: _as_fraction(coeff)})

    def items(self):
        return self._terms.items()

    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, _ZERO_FRAC) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentScalar(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.from_rational(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, _ZERO_FRAC) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentScalar.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def inverse(self) -> "LaurentScalar":
        """Invert a unit, i.e. a single term c*v^e."""
        if len(self._terms) != 1:
            raise ArithmeticError(f"not a unit in the Laurent ring: {self}")
        (e, c), = self._terms.items()
        return LaurentScalar({-e: Fraction(1) / c})

    def at_one(self) -> Fraction:
        """Evaluate at v = 1 (sum of all coefficients)."""
        return sum(self._terms.values(), _ZERO_FRAC)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            if e == 0:
                body = str(c)
            else:
                ve = "v" if e == 1 else f"v^{e}"
                if c == 1:
                    body = ve
                elif c == -1:
                    body = f"-{ve}"
                else:
                    body = f"{c}*{ve}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


_ZERO_FRAC = Fraction(0)


def laurent_arith(a: LaurentScalar, b: LaurentScalar, op: str) -> LaurentScalar:
    """Ring arithmetic dispatch used by the CLI; op is add, sub or mul."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


class IntPoly:
    """Dense univariate polynomial over Q, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x_power(cls, e: int, coeff=1) -> "IntPoly":
        return cls((0,) * e + (coeff,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (_ZERO_FRAC,) * (n - len(self.coeffs))
        b = other.coeffs + (_ZERO_FRAC,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return IntPoly(tuple(c * other for c in self.coeffs))
        out = [_ZERO_FRAC] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other: "IntPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = IntPoly()
        r = self
        dlead = other.coeffs[-1]
        while not r.is_zero() and r.degree() >= other.degree():
            shift = r.degree() - other.degree()
            t = IntPoly.x_power(shift, r.coeffs[-1] / dlead)
            q = q + t
            r = r - t * other
        return q, r

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            xe = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
            parts.append(xe if c == 1 and e > 0 else (f"{c}" if e == 0 else f"{c}*{xe}"))
        return " + ".join(reversed(parts))


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial Phi_m, by exact recursive division.

    Phi_m = (x^m - 1) / prod of Phi_d over proper divisors d of m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    poly = IntPoly((-1,) + (0,) * (m - 1) + (1,))
    for d in range(1, m):
        if m % d == 0:
            poly, rem = divmod(poly, cyclotomic_poly(d))
            assert rem.is_zero()
    return poly


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


class CyclotomicScalar:
    """An element of Q(zeta_m) as a residue modulo Phi_m(x)."""

    __slots__ = ("m", "residue")

    def __init__(self, m: int, residue: IntPoly):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        _, r = divmod(residue, cyclotomic_poly(m))
        self.residue = r

    @classmethod
    def zero(cls, m: int) -> "CyclotomicScalar":
        return cls(m, IntPoly())

    @classmethod
    def one(cls, m: int) -> "CyclotomicScalar":
        return cls(m, IntPoly((1,)))

    @classmethod
    def from_rational(cls, m: int, c) -> "CyclotomicScalar":
        return cls(m, IntPoly((_as_fraction(c),)))

    @classmethod
    def root(cls, m: int, power: int = 1) -> "CyclotomicScalar":
        """zeta_m raised to the given (possibly negative) power."""
        return cls(m, IntPoly.x_power(power % m))

    def _check(self, other):
        if self.m != other.m:
            raise ValueError(f"mixed cyclotomic orders {self.m} and {other.m}")

    def is_zero(self) -> bool:
        return self.residue.is_zero()

    def __bool__(self):
        return not self.residue.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.m == other.m and self.residue == other.residue

    def __hash__(self):
        return hash((self.m, self.residue.coeffs))

    def __neg__(self):
        return CyclotomicScalar(self.m, -self.residue)

    def __add__(self, other):
        self._check(other)
        return CyclotomicScalar(self.m, self.residue + other.residue)

    def __sub__(self, other):
        self._check(other)
        return CyclotomicScalar(self.m, self.residue - other.residue)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicScalar(self.m, self.residue * other)
        self._check(other)
        return CyclotomicScalar(self.m, self.residue * other.residue)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicScalar.one(self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CyclotomicScalar":
        """Field inverse by the extended Euclidean algorithm modulo Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_m)")
        # Invariants: old_r = old_s*residue + (...)*Phi_m, similarly r.
        old_r, r = self.residue, cyclotomic_poly(self.m)
        old_s, s = IntPoly((1,)), IntPoly()
        while not r.is_zero():
            q, rem = divmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, old_s - q * s
        # old_r is a nonzero constant gcd
        assert old_r.degree() == 0
        inv = old_s * (Fraction(1) / old_r.coeffs[0])
        return CyclotomicScalar(self.m, inv)

    def __repr__(self):
        return f"({self.residue!r} mod Phi_{self.m})"


def specialize(s: LaurentScalar, m: int) -> CyclotomicScalar:
    """Evaluate a Laurent scalar at v = zeta_m.

    Negative exponents reduce through x^m = 1 before reduction mod Phi_m.
    """
    out = IntPoly()
    for e, c in s.items():
        out = out + IntPoly.x_power(e % m, c)
    return CyclotomicScalar(m, out)


@dataclass(frozen=True)
class LaurentRing:
    """Coefficient-ring handle for the universal Laurent ring Q[v, v^-1]."""

    def zero(self):
        return LaurentScalar.zero()

    def one(self):
        return LaurentScalar.one()

    def coerce(self, x):
        if isinstance(x, LaurentScalar):
            return x
        return LaurentScalar.from_rational(x)


@dataclass(frozen=True)
class CyclotomicRing:
    """Coefficient-ring handle for Q(zeta_m)."""

    m: int

    def zero(self):
        return CyclotomicScalar.zero(self.m)

    def one(self):
        return CyclotomicScalar.one(self.m)

    def coerce(self, x):
        if isinstance(x, CyclotomicScalar):
            if x.m != self.m:
                raise ValueError(f"mixed cyclotomic orders {x.m} and {self.m}")
            return x
        if isinstance(x, LaurentScalar):
            return specialize(x, self.m)
        return CyclotomicScalar.from_rational(self.m, x)


LAURENT = LaurentRing()
