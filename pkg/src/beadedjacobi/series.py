"""Truncated graded series of diagram sums: products by disjoint union,
exp and log, the partition form of exp, and the framing correction by the
anomaly series."""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from math import factorial

from .diagram import theta
from .errors import ContextMismatchError, InternalCheckError, ParseError, ValidationError
from .laurent import TRIVIAL_CONTEXT, DeltaContext, LaurentPoly, validate_alexander
from .normalform import DiagramSum, inclusion_i, reduce


class GradedSeries:
    """Components in degrees ``0..truncation``; missing degrees are zero."""

    __slots__ = ("components", "truncation", "context")

    def __init__(self, components=None, truncation: int = 0, context: DeltaContext = TRIVIAL_CONTEXT):
        if truncation < 0:
            raise ValidationError("truncation must be nonnegative")
        self.truncation = truncation
        self.context = context
        self.components: dict[int, DiagramSum] = {}
        for n, s in dict(components or {}).items():
            if n > truncation or not s.terms:
                continue
            if s.context != context:
                raise ContextMismatchError(f"degree {n} component over a different denominator")
            if s.degree != n:
                raise ValidationError(f"component stored in degree {n} has degree {s.degree}")
            if n == 0 and any(k != () for k in s.terms):
                raise ValidationError("degree 0 must be a multiple of the empty diagram")
            self.components[n] = s

    @classmethod
    def zero(cls, truncation, context=TRIVIAL_CONTEXT):
        return cls({}, truncation, context)

    @classmethod
    def one(cls, truncation, context=TRIVIAL_CONTEXT):
        return cls({0: DiagramSum.one(context)}, truncation, context)

    @classmethod
    def from_sums(cls, sums, truncation=None, context=None):
        sums = [s for s in sums if s.terms]
        context = context or (sums[0].context if sums else TRIVIAL_CONTEXT)
        comps: dict[int, DiagramSum] = {}
        for s in sums:
            comps[s.degree] = comps[s.degree] + s if s.degree in comps else s
        if truncation is None:
            truncation = max(comps, default=0)
        return cls(comps, truncation, context)

    def __getitem__(self, n) -> DiagramSum:
        return self.components.get(n, DiagramSum.zero(n, self.context))

    def constant(self) -> Fraction:
        return self.components[0].terms.get((), Fraction(0)) if 0 in self.components else Fraction(0)

    def _check(self, other):
        if self.context != other.context:
            raise ContextMismatchError("series over different denominators")

    def truncate(self, N) -> "GradedSeries":
        return GradedSeries(self.components, min(N, self.truncation), self.context)

    def __add__(self, other):
        self._check(other)
        N = min(self.truncation, other.truncation)
        return GradedSeries({n: self[n] + other[n] for n in range(N + 1)}, N, self.context)

    def __neg__(self):
        return GradedSeries({n: -s for n, s in self.components.items()}, self.truncation, self.context)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return product(self, other)
        c = Fraction(other)
        return GradedSeries({n: s * c for n, s in self.components.items()}, self.truncation, self.context)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.truncation == other.truncation and self.context == other.context
                and self.components == other.components)

    def __repr__(self):
        degs = ", ".join(f"{n}: {len(s)} terms" for n, s in sorted(self.components.items()))
        return f"GradedSeries(truncation={self.truncation}, {{{degs}}})"

    def is_zero(self):
        return not self.components

    # -- serialization ---------------------------------------------------------------

    def to_dict(self, extra=None) -> dict:
        obj = {"format": 1, "delta": str(self.context.delta), "truncation": self.truncation,
               "components": [[n, self.components[n].to_text()] for n in sorted(self.components)]}
        if extra:
            obj.update(extra)
        return obj

    def to_json(self, extra=None) -> str:
        return json.dumps(self.to_dict(extra), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "GradedSeries":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        if obj.get("format") != 1:
            raise ValidationError(f"unsupported format version {obj.get('format')!r}")
        try:
            ctx = validate_alexander(LaurentPoly.parse(str(obj.get("delta", "1"))))
            N = int(obj["truncation"])
            comps = {}
            for n, text in obj.get("components", []):
                s = DiagramSum.from_text(text, ctx)
                if s.terms and s.degree != int(n):
                    raise ValidationError(f"component listed in degree {n} has degree {s.degree}")
                s.degree = int(n)
                comps[int(n)] = comps[int(n)] + s if int(n) in comps else s
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed series: {exc}") from None
        return cls(comps, N, ctx)


def product(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    """Degree ``n`` part is ``sum_{p+q=n} a_p * b_q`` by disjoint union."""
    a._check(b)
    N = min(a.truncation, b.truncation)
    out: dict[int, DiagramSum] = {}
    for p, x in a.components.items():
        for q, y in b.components.items():
            if p + q > N:
                continue
            z = x.union_product(y)
            out[p + q] = out[p + q] + z if p + q in out else z
    return GradedSeries(out, N, a.context)


def _power_series(z: GradedSeries, coeffs) -> GradedSeries:
    """``sum_k coeffs[k] z^k`` for ``z`` without constant term."""
    N = z.truncation
    total = GradedSeries.one(N, z.context) * coeffs[0]
    power = GradedSeries.one(N, z.context)
    for k in range(1, N + 1):
        power = product(power, z)
        if power.is_zero():
            break
        total = total + power * coeffs[k]
    return total


def exp(z: GradedSeries) -> GradedSeries:
    if 0 in z.components:
        raise ValidationError("exp needs a series with zero degree-0 part")
    return _power_series(z, [Fraction(1, factorial(k)) for k in range(z.truncation + 1)])


def log(Z: GradedSeries) -> GradedSeries:
    if Z.constant() != 1:
        raise ValidationError("log needs a series with degree-0 part 1")
    u = Z - GradedSeries.one(Z.truncation, Z.context)
    coeffs = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, Z.truncation + 1)]
    return _power_series(u, coeffs)


def integer_partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as lists of ``(part, multiplicity)``, largest part first."""
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for k in range(n // part, 0, -1):
            for rest in integer_partitions(n - k * part, part - 1):
                yield [(part, k)] + rest


def exp_via_partitions(z: GradedSeries) -> GradedSeries:
    """Degree ``n`` part is ``sum_p prod_j z_{n_j}^{k_j} / k_j!`` over the
    partitions ``p = ((n_1, k_1), ...)`` of ``n``."""
    if 0 in z.components:
        raise ValidationError("exp needs a series with zero degree-0 part")
    N = z.truncation
    powers: dict[tuple[int, int], DiagramSum] = {}

    def power(part, k):
        if (part, k) not in powers:
            base = z[part]
            acc = DiagramSum.one(z.context)
            for _ in range(k):
                acc = acc.union_product(base)
            powers[(part, k)] = acc * Fraction(1, factorial(k))
        return powers[(part, k)]

    comps = {0: DiagramSum.one(z.context)}
    for n in range(1, N + 1):
        total = DiagramSum.zero(n, z.context)
        for p in integer_partitions(n):
            term = DiagramSum.one(z.context)
            for part, k in p:
                term = term.union_product(power(part, k))
                if not term.terms:
                    break
            if term.terms:
                total = total + term
        comps[n] = total
    return GradedSeries(comps, N, z.context)


def partition_label_count(n: int, partition) -> int:
    """Ways to split ``3n`` labels into unordered blocks: ``k_j`` blocks of
    size ``3 n_j`` for each ``(n_j, k_j)``."""
    denom = 1
    for part, k in partition:
        denom *= factorial(k) * factorial(3 * part) ** k
    return factorial(3 * n) // denom


# -- anomaly and framing -----------------------------------------------------------------

class AnomalySeries(GradedSeries):
    """The anomaly over ``delta = 1``: ``(1/12) theta`` in degree 1, zero in
    even degrees, and caller-supplied odd parts from degree 3 on.  Odd
    degrees left unspecified are zero and listed in ``unknown``."""

    __slots__ = ("unknown",)

    def __init__(self, truncation: int, odd_parts=None):
        odd_parts = dict(odd_parts or {})
        comps = {}
        if truncation >= 1:
            comps[1] = reduce(theta()) * Fraction(1, 12)
        unknown = []
        for n in range(3, truncation + 1, 2):
            if n in odd_parts:
                comps[n] = odd_parts[n]
            else:
                unknown.append(n)
        for n in odd_parts:
            if n % 2 == 0 or n < 3:
                raise ValidationError(f"anomaly part in degree {n} is fixed, not an input")
        super().__init__(comps, truncation, TRIVIAL_CONTEXT)
        self.unknown = tuple(unknown)


def framing_correct(Z: GradedSeries, p1, alpha: AnomalySeries | None = None) -> GradedSeries:
    """``Z * exp(-(p1 / 4) i(alpha))`` with ``alpha`` carried into Z's denominator."""
    if Z.constant() != 1:
        raise ValidationError("framing correction needs a series with degree-0 part 1")
    if alpha is None:
        alpha = AnomalySeries(Z.truncation)
    lifted = GradedSeries({n: inclusion_i(s, Z.context) for n, s in alpha.components.items()},
                          min(alpha.truncation, Z.truncation), Z.context)
    factor = exp(lifted * (-Fraction(p1) / 4))
    return product(Z, factor)


def connected_part_check(Z: GradedSeries) -> GradedSeries:
    """``log(Z)``, after checking that every term in it is connected."""
    z = log(Z)
    for n, s in sorted(z.components.items()):
        bad = [k for k in s.terms if len(k) > 1]
        if bad:
            raise InternalCheckError(
                f"log has {len(bad)} disconnected term(s) in degree {n}; the series is not an exponential "
                "of connected diagrams")
    return z


def connected_only(z: GradedSeries) -> bool:
    return all(len(k) <= 1 for s in z.components.values() for k in s.terms)
