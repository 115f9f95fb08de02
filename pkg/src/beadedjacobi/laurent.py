"""Exact Laurent polynomials in ``t``, beads over a fixed denominator, and
the normalization checks for that denominator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import AlexanderNormalizationError, ContextMismatchError, ParseError, ValidationError


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients.

    >>> p = LaurentPoly.parse("t^-1 - 1 + t")
    >>> p.conjugate() == p
    True
    >>> p(1)
    Fraction(1, 1)
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _as_fraction(v)
                if v:
                    c[int(k)] = v
        self._coeffs = c
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls.constant(x)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return _parse_laurent(text)

    # -- inspection -------------------------------------------------------

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero terms as ``(exponent, coefficient)``, ascending exponent."""
        return sorted(self._coeffs.items())

    def coefficient(self, k: int) -> Fraction:
        return self._coeffs.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def min_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return min(self._coeffs)

    def max_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def key(self) -> tuple:
        """Hashable, totally ordered encoding of the coefficients."""
        return tuple((k, v.numerator, v.denominator) for k, v in sorted(self._coeffs.items()))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        c = dict(self._coeffs)
        for k, v in other._coeffs.items():
            c[k] = c.get(k, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            f = Fraction(other)
            return LaurentPoly({k: v * f for k, v in self._coeffs.items()})
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        c: dict[int, Fraction] = {}
        for a, x in self._coeffs.items():
            for b, y in other._coeffs.items():
                c[a + b] = c.get(a + b, 0) + x * y
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (k, v), = self._coeffs.items()
            return LaurentPoly({k * e: v ** e})
        out = LaurentPoly.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: v for e, v in self._coeffs.items()})

    def conjugate(self) -> "LaurentPoly":
        """Substitute ``t -> t^-1``."""
        return LaurentPoly({-k: v for k, v in self._coeffs.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({k - 1: k * v for k, v in self._coeffs.items() if k})

    def __call__(self, x) -> Fraction:
        x = _as_fraction(x)
        return sum((v * x ** k for k, v in self._coeffs.items()), Fraction(0))

    def value_at_one(self) -> Fraction:
        return sum(self._coeffs.values(), Fraction(0))

    def divmod_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in ``Q[t, t^-1]``; raises ``ValueError`` if the
        division leaves a remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = dict(self._coeffs)
        dlo, dhi = divisor.min_degree(), divisor.max_degree()
        lead = divisor._coeffs[dhi]
        quot: dict[int, Fraction] = {}
        lo = min(rem)
        while rem and max(rem) - dhi >= lo - dlo:
            top = max(rem)
            q = rem[top] / lead
            e = top - dhi
            quot[e] = q
            for k, v in divisor._coeffs.items():
                nv = rem.get(k + e, 0) - q * v
                if nv:
                    rem[k + e] = nv
                else:
                    rem.pop(k + e, None)
        if rem:
            raise ValueError(f"{self} is not divisible by {divisor}")
        return LaurentPoly(quot)

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        out = []
        for k, v in sorted(self._coeffs.items()):
            neg = v < 0
            a = -v if neg else v
            if k == 0:
                body = _fmt_fraction(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{_fmt_fraction(a)} {mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_fraction(x) -> str:
    """Exact ``p/q`` rendering used for every numeric output."""
    return _fmt_fraction(Fraction(x))


def _coerce_operand(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction, Rational)) and not isinstance(x, bool):
        return LaurentPoly.constant(x)
    return NotImplemented


def _parse_laurent(text: str) -> LaurentPoly:
    # Hand-rolled scanner so that errors point at the offending column.
    s = text
    i, n = 0, len(s)
    coeffs: dict[int, Fraction] = {}

    def skip():
        nonlocal i
        while i < n and s[i].isspace():
            i += 1

    def read_int():
        nonlocal i
        start = i
        while i < n and s[i].isdigit():
            i += 1
        return s[start:i]

    skip()
    if i >= n:
        raise ParseError("empty polynomial", column=1)
    first = True
    while True:
        skip()
        if i >= n:
            break
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
            skip()
        elif not first:
            raise ParseError(f"expected '+' or '-' before {s[i]!r}", column=i + 1)
        start = i
        coeff = None
        digits = read_int()
        if digits:
            coeff = Fraction(int(digits))
            skip()
            if i < n and s[i] == "/":
                i += 1
                skip()
                den = read_int()
                if not den:
                    raise ParseError("expected denominator after '/'", column=i + 1)
                if int(den) == 0:
                    raise ParseError("zero denominator", column=i)
                coeff /= int(den)
            skip()
            if i < n and s[i] == "*":
                i += 1
                skip()
                if i >= n or s[i] != "t":
                    raise ParseError("expected 't' after '*'", column=i + 1)
        exp = 0
        if i < n and s[i] == "t":
            i += 1
            exp = 1
            skip()
            if i < n and s[i] == "^":
                i += 1
                skip()
                close = None
                if i < n and s[i] in "{(":
                    close = "}" if s[i] == "{" else ")"
                    i += 1
                    skip()
                esign = 1
                if i < n and s[i] in "+-":
                    esign = -1 if s[i] == "-" else 1
                    i += 1
                    skip()
                d = read_int()
                if not d:
                    raise ParseError("expected integer exponent", column=i + 1)
                exp = esign * int(d)
                if close:
                    skip()
                    if i >= n or s[i] != close:
                        raise ParseError(f"expected {close!r}", column=i + 1)
                    i += 1
        elif coeff is None:
            found = repr(s[i]) if i < n else "end of input"
            raise ParseError(f"expected a coefficient or 't', found {found}", column=start + 1)
        value = sign * (coeff if coeff is not None else Fraction(1))
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + value
        first = False
    return LaurentPoly(coeffs)


def conjugate(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly.coerce(p).conjugate()


@dataclass(frozen=True)
class DeltaContext:
    """Fixed bead denominator ``delta`` with ``delta(1/t) = t^-s delta(t)``."""

    delta: LaurentPoly
    symmetry_shift: int

    def __post_init__(self):
        d = LaurentPoly.coerce(self.delta)
        object.__setattr__(self, "delta", d)
        if d.value_at_one() != 1:
            raise AlexanderNormalizationError(f"delta(1) = {d.value_at_one()}, expected 1", "value_at_one")
        if d.conjugate().shift(self.symmetry_shift) != d:
            raise AlexanderNormalizationError(
                f"delta(1/t) != t^-{self.symmetry_shift} delta(t)", "symmetry")
        if self.symmetry_shift not in (0, 1):
            raise AlexanderNormalizationError(
                f"symmetry shift {self.symmetry_shift} is not 0 or 1", "symmetry")

    @property
    def s(self) -> int:
        return self.symmetry_shift

    def is_trivial(self) -> bool:
        return self.delta == 1

    def bead(self, numerator) -> "Bead":
        return Bead(LaurentPoly.coerce(numerator), self)

    def one(self) -> "Bead":
        """The bead equal to the rational function 1, i.e. numerator delta."""
        return Bead(self.delta, self)

    def from_laurent(self, p) -> "Bead":
        """The bead equal to the Laurent polynomial ``p``."""
        return Bead(LaurentPoly.coerce(p) * self.delta, self)

    def __str__(self):
        return str(self.delta)


def validate_alexander(p) -> DeltaContext:
    """Accept ``p`` as a bead denominator and detect its symmetry shift.

    Raises ``AlexanderNormalizationError`` naming the failed predicate.
    """
    p = LaurentPoly.coerce(p)
    if p.value_at_one() != 1:
        raise AlexanderNormalizationError(f"p(1) = {p.value_at_one()}, expected 1", "value_at_one")
    s = p.min_degree() + p.max_degree()
    if p.conjugate().shift(s) != p:
        raise AlexanderNormalizationError("p(1/t) is not a unit multiple t^-s p(t)", "symmetry")
    if s not in (0, 1):
        raise AlexanderNormalizationError(
            f"p(1/t) = t^-{s} p(t) requires shift {s}, outside {{0, 1}}", "symmetry")
    return DeltaContext(p, s)


TRIVIAL_CONTEXT = DeltaContext(LaurentPoly.constant(1), 0)


class Bead:
    """``numerator(t) / delta(t)`` for the delta of ``context``."""

    __slots__ = ("numerator", "context")

    def __init__(self, numerator, context: DeltaContext):
        self.numerator = LaurentPoly.coerce(numerator)
        self.context = context

    def _check(self, other: "Bead"):
        if not isinstance(other, Bead):
            raise TypeError("expected a Bead")
        if other.context != self.context:
            raise ContextMismatchError(
                f"beads over different denominators: {self.context} vs {other.context}")

    def __add__(self, other):
        self._check(other)
        return Bead(self.numerator + other.numerator, self.context)

    def __sub__(self, other):
        self._check(other)
        return Bead(self.numerator - other.numerator, self.context)

    def __neg__(self):
        return Bead(-self.numerator, self.context)

    def scale(self, c) -> "Bead":
        return Bead(self.numerator * Fraction(c), self.context)

    def times(self, p) -> "Bead":
        """Multiply by the Laurent polynomial ``p``."""
        return Bead(self.numerator * LaurentPoly.coerce(p), self.context)

    def conjugate(self) -> "Bead":
        return conjugate_bead(self)

    def value_at_one(self) -> Fraction:
        return self.numerator.value_at_one()

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_one(self) -> bool:
        return self.numerator == self.context.delta

    def as_laurent(self) -> LaurentPoly:
        """The bead as a Laurent polynomial; raises when delta does not divide."""
        try:
            return self.numerator.divmod_exact(self.context.delta)
        except ValueError:
            raise ValidationError(
                f"bead ({self.numerator})/({self.context.delta}) is not a Laurent polynomial") from None

    def __eq__(self, other):
        if not isinstance(other, Bead):
            return NotImplemented
        return self.context == other.context and self.numerator == other.numerator

    def __hash__(self):
        return hash((self.numerator, self.context.delta))

    def __repr__(self):
        if self.context.is_trivial():
            return f"Bead({str(self.numerator)!r})"
        return f"Bead(({self.numerator}) / ({self.context.delta}))"


def conjugate_bead(b: Bead) -> Bead:
    """The bead representing ``b(1/t)``: numerator ``t^s conj(numerator)``."""
    return Bead(b.numerator.conjugate().shift(b.context.symmetry_shift), b.context)


def log_derivative(p) -> tuple[LaurentPoly, LaurentPoly]:
    """``(t p'(t), p(t))`` without reduction."""
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        raise ValidationError("log derivative of the zero polynomial")
    return p.derivative().shift(1), p


def product(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.constant(1)
    for p in polys:
        out = out * p
    return out
