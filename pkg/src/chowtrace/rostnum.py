"""Rost numbers, Landweber-Novikov Chow traces and the operations phi^(t^r)_p.

Only two shapes of cobordism classes ``[Z -> X]`` are modelled: ``X`` a point,
and ``Z`` a complete intersection of divisors in a cellular ``X``.  Traces are
pushed-forward symmetric functions of the roots of the virtual normal bundle
``nu = T_X|_Z - T_Z``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .charclass import (
    VarietyDescriptor,
    VirtualBundle,
    chern_series,
    powered_class,
    powered_class_via_newton,
)
from .exactalg import RingElement, degree, invert_unit, point_algebra, reduce_mod


class UnsupportedShape(ValueError):
    pass


class NotDivisibleByP(ArithmeticError):
    pass


class DimensionNotDivisible(ValueError):
    pass


class PathDisagreement(ArithmeticError):
    pass


def _check_prime(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not a prime")


@dataclass
class CobordismClassData:
    """``[Z -> X]`` of codimension ``m``; ``base`` is None for the point."""

    variety: VarietyDescriptor
    base: VarietyDescriptor | None
    normal: VirtualBundle
    m: int

    def __post_init__(self):
        if self.normal.rank != self.m:
            raise ValueError(f"normal bundle rank {self.normal.rank} != codimension {self.m}")

    @property
    def target_ring(self):
        return point_algebra() if self.base is None else self.base.ring


def over_point(z: VarietyDescriptor) -> CobordismClassData:
    return CobordismClassData(z, None, -z.tangent, -z.dim)


def in_ambient(z: VarietyDescriptor) -> CobordismClassData:
    if z.provenance != "complete_intersection":
        raise UnsupportedShape("only complete intersections map to a non-trivial base")
    nu = VirtualBundle(list(z.divisors), rank=len(z.divisors))
    return CobordismClassData(z, z.ambient, nu, len(z.divisors))


def as_class(x) -> CobordismClassData:
    return x if isinstance(x, CobordismClassData) else over_point(x)


def _powered_components(c: CobordismClassData, p: int, method: str) -> dict[int, RingElement]:
    q = p - 1
    if method == "newton":
        total = powered_class_via_newton(c.normal, p)
    elif method == "roots":
        total = powered_class(c.normal, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    return {i: total.component(i * q) for i in range(total.algebra.dim // q + 1)}


def ln_trace(c, p: int, i: int, method: str = "newton"):
    """``pr(S^i_LN [Z -> X])``: an integer for the point, a class of ``CH^(m+i(p-1))(X)`` otherwise."""
    _check_prime(p)
    c = as_class(c)
    if i < 0:
        raise ValueError("i must be nonnegative")
    z = c.variety
    if c.base is None:
        if i * (p - 1) != z.dim:
            return 0
        comps = _powered_components(c, p, method)
        part = comps.get(i)
        return int(z.degree(part)) if part is not None else 0
    if c.base.provenance == "complete_intersection":
        raise UnsupportedShape("base must have an intrinsic ring")
    comps = _powered_components(c, p, method)
    part = comps.get(i)
    if part is None:
        return c.base.ring.zero()
    return (z.fundamental * part).truncate(c.base.dim)


def phi(c, r: int, p: int, method: str = "newton"):
    """``phi^(t^r)_p`` of a class: an int mod p for the point, a mod-p class otherwise."""
    _check_prime(p)
    c = as_class(c)
    if r <= 0:
        raise ValueError("r must be positive")
    if r % (p - 1):
        return 0 if c.base is None else reduce_mod(c.base.ring.zero(), p)
    i = r // (p - 1) + c.m
    if i < 0:
        return 0 if c.base is None else reduce_mod(c.base.ring.zero(), p)
    tr = ln_trace(c, p, i, method)
    if c.base is None:
        if tr % p:
            raise NotDivisibleByP(f"trace {tr} of {c.variety.name} not divisible by {p}")
        return (tr // p) % p
    for _, coef in tr.items():
        if int(coef) % p:
            raise NotDivisibleByP(f"trace of {c.variety.name} in {c.base.name} not divisible by {p}")
    return reduce_mod(tr.divide_exact(p), p)


def phi_series(q, c, p: int):
    """``sum q_r phi^(t^r)_p`` for ``q`` a list of ``(coefficient, r)`` pairs."""
    c = as_class(c)
    if c.base is None:
        total = 0
        for coef, r in q:
            total += int(coef) * phi(c, r, p)
        return total % p
    out = reduce_mod(c.base.ring.zero(), p)
    for coef, r in q:
        val = phi(c, r, p)
        out = out + (reduce_mod(coef, p) * val if isinstance(coef, RingElement) else val * (int(coef) % p))
    return out


# ---------------------------------------------------------------------------
# Rost numbers


def eta_integer(v: VarietyDescriptor, p: int) -> int:
    """``deg (c(T)^(p))^(-1)``, before the division by ``p``."""
    inv = invert_unit(powered_class(v.tangent, p))
    return int(v.degree(inv))


@dataclass
class EtaResult:
    pre_division: int
    eta_integer: int
    eta_mod_p: int
    trace_path: int
    paths_agree: bool


def rost_number_full(v: VarietyDescriptor, p: int) -> EtaResult:
    _check_prime(p)
    if v.dim <= 0:
        raise DimensionNotDivisible("dimension must be positive")
    if v.dim % (p - 1):
        raise DimensionNotDivisible(f"{p - 1} does not divide dim {v.dim}")
    pre = eta_integer(v, p)
    if pre % p:
        raise NotDivisibleByP(f"deg of the inverse class is {pre}, not divisible by {p}")
    direct = (pre // p) % p
    traced = phi(over_point(v), v.dim * p, p, method="newton")
    if direct != traced:
        raise PathDisagreement(f"{v.name}, p={p}: direct {direct} vs trace {traced}")
    return EtaResult(pre, pre // p, direct, traced, True)


def rost_number(v: VarietyDescriptor, p: int) -> int:
    return rost_number_full(v, p).eta_mod_p


def rdf_check(u: VarietyDescriptor, v: VarietyDescriptor, p: int, max_i: int | None = None) -> dict:
    """Base-point identity ``phi^(t^r)([U][V]) = eta_p(U) pr(S^i_LN [V])``, ``r = (p-1)(i + dim V) + p dim U``.

    The left side goes through the Kunneth product ring, the right side
    through the trace on ``V`` alone.
    """
    from .catalog import product

    if u.dim <= 0 or v.dim <= 0:
        raise ValueError("dimensions must be positive")
    uv = over_point(product(u, v))
    divisible = u.dim % (p - 1) == 0
    eta = rost_number(u, p) if divisible else None
    top = max_i if max_i is not None else v.dim + 1
    rows, ok = [], True
    for i in range(0, top + 1):
        r = (p - 1) * (i + v.dim) + p * u.dim
        lhs = phi(uv, r, p)
        rhs = (eta * ln_trace(v, p, i)) % p if divisible else 0
        rows.append({"i": i, "r": r, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs})
        ok = ok and lhs == rhs
    # the side remark: nothing survives when p-1 does not divide dim U
    if not divisible:
        ok = ok and all(row["lhs"] == 0 for row in rows)
    return {"U": u.name, "V": v.name, "p": p, "holds": ok, "rows": rows}


# ---------------------------------------------------------------------------
# screening


def is_prime_power_minus_one(n: int, p: int) -> bool:
    k = n + 1
    if k < p:
        return False
    while k % p == 0:
        k //= p
    return k == 1


@dataclass
class RostReport:
    variety: str
    p: int
    dim: int
    dim_test: bool
    eta_integer: int | None
    eta_mod_p: int | None
    pre_division: int | None
    eta_test: bool
    verdict: str
    note: str = "necessary conditions only; passing does not construct a special correspondence"
    errors: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "variety": self.variety,
            "p": self.p,
            "dim": self.dim,
            "dim_test": "pass" if self.dim_test else "fail",
            "eta_integer": self.eta_integer,
            "eta_mod_p": self.eta_mod_p,
            "pre_division": self.pre_division,
            "eta_test": "pass" if self.eta_test else "fail",
            "verdict": self.verdict,
            "note": self.note,
            "errors": list(self.errors),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def screen_special_correspondence(v: VarietyDescriptor, p: int) -> RostReport:
    dim_ok = is_prime_power_minus_one(v.dim, p)
    errors = []
    eta_int = eta_mod = pre = None
    try:
        res = rost_number_full(v, p)
        eta_int, eta_mod, pre = res.eta_integer, res.eta_mod_p, res.pre_division
    except (DimensionNotDivisible, NotDivisibleByP, PathDisagreement) as exc:
        errors.append(f"{type(exc).__name__}: {exc}")
    eta_ok = eta_mod is not None and eta_mod != 0
    verdict = "candidate" if dim_ok and eta_ok else "not a candidate"
    return RostReport(v.name, p, v.dim, dim_ok, eta_int, eta_mod, pre, eta_ok, verdict, errors=errors)


def total_chern(v: VarietyDescriptor) -> RingElement:
    return chern_series(v.tangent)


def degree_in_point(x) -> int:
    return int(degree(x)) if isinstance(x, RingElement) else int(x)
