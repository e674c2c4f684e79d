"""Chern roots, the classes prod(1 + x^(p-1)), Newton identities, adjunction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .exactalg import GradedAlgebra, NotAUnit, RingElement, invert_unit


class DimensionUnderflow(ValueError):
    pass


@dataclass
class VirtualBundle:
    """Formal difference ``sum(positive) - sum(negative)`` of line roots.

    When the roots are not available as classes of the ambient ring (G/P),
    only ``series`` (the total Chern class) is stored; ``root_powered`` may
    then supply ``prod(1 + root^(p-1))`` from roots living elsewhere.
    """

    positive: list[RingElement] = field(default_factory=list)
    negative: list[RingElement] = field(default_factory=list)
    series: RingElement | None = None
    rank: int | None = None
    root_powered: Callable[[int], RingElement] | None = None
    label: str = ""

    def __post_init__(self):
        for r in self.positive + self.negative:
            if not r.is_homogeneous(1):
                raise ValueError(f"root {r!r} is not of codimension 1")
        if self.rank is None:
            if self.series is not None and not self.has_roots:
                raise ValueError("a series-only bundle needs an explicit rank")
            self.rank = len(self.positive) - len(self.negative)
        if self.series is not None and self.has_roots:
            if chern_series_from_roots(self) != self.series.truncate(self.algebra.dim):
                raise ValueError("roots and total Chern series disagree")

    @property
    def has_roots(self) -> bool:
        return bool(self.positive or self.negative)

    @property
    def algebra(self) -> GradedAlgebra:
        if self.series is not None:
            return self.series.algebra
        if self.positive:
            return self.positive[0].algebra
        if self.negative:
            return self.negative[0].algebra
        raise ValueError("empty bundle has no algebra; use zero_bundle(A)")

    def __neg__(self) -> "VirtualBundle":
        if self.has_roots or self.series is None:
            return VirtualBundle(list(self.negative), list(self.positive), rank=-self.rank, label=f"-{self.label}")
        rp = self.root_powered
        return VirtualBundle(
            series=invert_unit(self.series),
            rank=-self.rank,
            root_powered=(lambda p: invert_unit(rp(p))) if rp else None,
            label=f"-{self.label}",
        )

    def __add__(self, other: "VirtualBundle") -> "VirtualBundle":
        return direct_sum(self, other)

    def __sub__(self, other: "VirtualBundle") -> "VirtualBundle":
        return direct_sum(self, -other)

    def map(self, f: Callable[[RingElement], RingElement]) -> "VirtualBundle":
        """Push every root (or the series) through a ring map such as a pullback."""
        if self.has_roots:
            return VirtualBundle([f(r) for r in self.positive], [f(r) for r in self.negative], rank=self.rank, label=self.label)
        if self.series is None:
            return VirtualBundle(rank=self.rank, label=self.label)
        return VirtualBundle(series=f(self.series), rank=self.rank, label=self.label)


def zero_bundle(A: GradedAlgebra) -> VirtualBundle:
    return VirtualBundle(series=A.one(), rank=0, label="0")


def line_bundles(roots: list[RingElement]) -> VirtualBundle:
    return VirtualBundle(list(roots))


def direct_sum(v: VirtualBundle, w: VirtualBundle) -> VirtualBundle:
    rank = v.rank + w.rank
    if (v.has_roots or v.series is None) and (w.has_roots or w.series is None):
        return VirtualBundle(v.positive + w.positive, v.negative + w.negative, rank=rank)
    rp = None
    if v.root_powered or w.root_powered:
        rp = lambda p: powered_class(v, p) * powered_class(w, p)
    return VirtualBundle(series=chern_series(v) * chern_series(w), rank=rank, root_powered=rp)


def _one_plus_product(roots: list[RingElement], A: GradedAlgebra, power: int = 1) -> RingElement:
    out = A.one()
    for r in roots:
        out = (out * (A.one() + r**power)).truncate(A.dim)
    return out


def chern_series_from_roots(v: VirtualBundle) -> RingElement:
    A = v.algebra
    return _one_plus_product(v.positive, A) * invert_unit(_one_plus_product(v.negative, A))


def chern_series(v: VirtualBundle) -> RingElement:
    """Total Chern class ``prod(1 + a_i) / prod(1 + b_j)``."""
    if v.series is not None:
        return v.series
    if not v.has_roots:
        raise NotAUnit("empty bundle without an algebra")
    return chern_series_from_roots(v)


def chern_classes(v: VirtualBundle, up_to: int | None = None) -> list[RingElement]:
    """``[c_1, ..., c_up_to]`` as homogeneous elements."""
    c = chern_series(v)
    n = up_to if up_to is not None else c.algebra.dim
    return [c.component(k) for k in range(1, n + 1)]


# ---------------------------------------------------------------------------
# Newton identities


def elementary_to_power(elementary: list[RingElement], up_to: int) -> list[RingElement]:
    """Power sums ``[p_1..p_up_to]`` from ``[e_1, e_2, ...]`` (missing e_k are zero).

    ``p_k = sum_{i<k} (-1)^(i-1) e_i p_(k-i) + (-1)^(k-1) k e_k``.
    """
    if not elementary:
        raise ValueError("need at least e_1 to fix the algebra")
    A = elementary[0].algebra
    e = lambda k: elementary[k - 1] if k <= len(elementary) else A.zero()
    p: list[RingElement] = []
    for k in range(1, up_to + 1):
        acc = e(k) * (k if k % 2 else -k)
        for i in range(1, k):
            term = e(i) * p[k - i - 1]
            acc = acc + (term if i % 2 else -term)
        p.append(acc)
    return p


def power_to_elementary(power: list[RingElement], up_to: int) -> list[RingElement]:
    """Inverse of :func:`elementary_to_power`: ``k e_k = sum (-1)^(i-1) e_(k-i) p_i``."""
    if not power:
        raise ValueError("need at least p_1 to fix the algebra")
    A = power[0].algebra
    pw = lambda k: power[k - 1] if k <= len(power) else A.zero()
    e: list[RingElement] = [A.one()]
    for k in range(1, up_to + 1):
        acc = A.zero()
        for i in range(1, k + 1):
            term = e[k - i] * pw(i)
            acc = acc + (term if i % 2 else -term)
        e.append(acc.divide_exact(k))
    return e[1:]


def newton_convert(elementary: list[RingElement], up_to: int) -> list[RingElement]:
    return elementary_to_power(elementary, up_to)


# ---------------------------------------------------------------------------
# the class prod(1 + x^(p-1))


def powered_class_via_roots(v: VirtualBundle, p: int) -> RingElement:
    A = v.algebra
    q = p - 1
    num = _one_plus_product(v.positive, A, q)
    den = _one_plus_product(v.negative, A, q)
    return (num * invert_unit(den)).truncate(A.dim)


def powered_class_via_newton(v: VirtualBundle, p: int) -> RingElement:
    """Same class from the Chern series alone: power sums ``p_(qj)`` of the roots
    are the power sums of the ``q``-th powers, then back to elementary ones."""
    c = chern_series(v)
    A = c.algebra
    q = p - 1
    n = A.dim
    if n == 0:
        return A.one()
    elementary = [c.component(k) for k in range(1, n + 1)]
    psums = elementary_to_power(elementary, n)
    m = n // q
    if m == 0:
        return A.one()
    qpsums = [psums[q * j - 1] for j in range(1, m + 1)]
    es = power_to_elementary(qpsums, m)
    out = A.one()
    for x in es:
        out = out + x
    return out


def powered_class(v: VirtualBundle, p: int, with_parameter: bool = False):
    """``c^(p)(v) = prod(1 + a_i^(p-1)) / prod(1 + b_j^(p-1))``.

    Explicit roots are used when present, then externally supplied roots,
    then Newton's identities on the Chern series.  With ``with_parameter``
    the result is the dict ``{i: component of codim i(p-1)}`` -- the
    coefficients of ``t^i`` in ``prod(1 + t a^(p-1)) / prod(1 + t b^(p-1))``.
    """
    if v.has_roots:
        total = powered_class_via_roots(v, p)
    elif v.root_powered is not None:
        total = v.root_powered(p)
    else:
        total = powered_class_via_newton(v, p)
    if not with_parameter:
        return total
    q = p - 1
    return {i: total.component(i * q) for i in range(total.algebra.dim // q + 1)}


# ---------------------------------------------------------------------------
# varieties


@dataclass
class VarietyDescriptor:
    """A smooth projective variety known through a Chow ring.

    Classes live in ``ring``; ``fundamental`` is the pushforward of
    ``[self]`` to that ring (the unit for an intrinsic ring, the product of
    the cutting divisors for a complete intersection), so
    ``deg_self(a) = deg_ring(fundamental * a)``.
    """

    name: str
    dim: int
    ring: GradedAlgebra
    tangent: VirtualBundle
    provenance: str
    fundamental: RingElement | None = None
    classes: dict[str, RingElement] = field(default_factory=dict)
    ambient: "VarietyDescriptor | None" = None
    divisors: list[RingElement] = field(default_factory=list)
    factors: tuple = ()

    def __post_init__(self):
        if self.fundamental is None:
            self.fundamental = self.ring.one()
        if self.tangent.rank != self.dim:
            raise ValueError(f"tangent rank {self.tangent.rank} != dim {self.dim} for {self.name}")

    @property
    def intrinsic(self) -> bool:
        return self.provenance != "complete_intersection"

    def degree(self, a: RingElement):
        from .exactalg import degree

        return degree(self.fundamental * a.component(self.dim))

    def chern_number(self, a: RingElement) -> int:
        return int(self.degree(a))

    def euler_characteristic(self) -> int:
        return int(self.degree(chern_series(self.tangent)))


def complete_intersection(ambient: VarietyDescriptor, divisors: list[RingElement], name: str | None = None) -> VarietyDescriptor:
    """Smooth complete intersection of the given divisor classes (adjunction).

    ``T_Z = T_X|_Z - sum O(D_i)|_Z``; no Chow ring of ``Z`` is built, all
    numbers are pushed forward to the ambient ring.
    """
    if not ambient.intrinsic:
        base = ambient.ambient
        divisors = list(ambient.divisors) + list(divisors)
        return complete_intersection(base, divisors, name)
    if len(divisors) > ambient.dim:
        raise DimensionUnderflow(f"{len(divisors)} divisors in a {ambient.dim}-dimensional variety")
    for d in divisors:
        if d.algebra is not ambient.ring or not d.is_homogeneous(1):
            raise ValueError("divisors must be codimension-1 classes of the ambient ring")
    A = ambient.ring
    fund = A.one()
    for d in divisors:
        fund = fund * d
    tangent = ambient.tangent - VirtualBundle(list(divisors))
    label = name or f"CI({ambient.name}; {len(divisors)})"
    return VarietyDescriptor(
        label,
        ambient.dim - len(divisors),
        A,
        tangent,
        "complete_intersection",
        fundamental=fund,
        classes=dict(ambient.classes),
        ambient=ambient,
        divisors=list(divisors),
    )
