"""Named varieties: projective spaces, split quadrics, G/P, products, complete intersections.

Name grammar::

    P<n>                 projective space
    Q<n>                 split quadric (intrinsic ring for odd n, hypersurface model otherwise)
    <T><r>/P<i>[,<j>..]  homogeneous variety, e.g. F4/P4, B2/P1, A2/P1,2  (also F4P4)
    X x Y                products, written with a lower-case ``x``: P1xP1, Q3xP2
"""

from __future__ import annotations

import re
from functools import lru_cache

from .charclass import VarietyDescriptor, VirtualBundle, chern_series, complete_intersection, powered_class, zero_bundle
from .exactalg import ZZ, GradedAlgebra, direct_sum, include_summand, kunneth_product, pull_left, pull_right, point_algebra
from .rootweyl import ParabolicQuotient, poincare_polynomial
from .schubert import divisor_class, gp_algebra, gp_tangent_roots


class UnknownVariety(KeyError):
    pass


class UnsupportedCombination(ValueError):
    pass


# ---------------------------------------------------------------------------
# rings


def projective_space_ring(n: int) -> GradedAlgebra:
    names = ["1"] + [("h" if k == 1 else f"h{k}") for k in range(1, n + 1)]
    table = {(a, b): {a + b: 1} for a in range(n + 1) for b in range(a, n + 1) if a + b <= n}
    A = GradedAlgebra(f"P{n}", names, list(range(n + 1)), table, n, {0: 1}, n, ZZ)
    A.provenance = {"kind": "projective", "n": n}
    return A


def odd_quadric_ring(n: int) -> GradedAlgebra:
    """Split quadric of odd dimension ``n = 2k + 1``.

    Basis ``h^i`` (i <= k) and ``l_j`` (class of a linear ``P^j``, codim
    ``n - j``, j <= k), with ``h^(k+1) = 2 l_k``, ``h l_j = l_(j-1)``,
    ``l_i l_j = 0``.
    """
    if n < 1 or n % 2 == 0:
        raise UnsupportedCombination(f"intrinsic split-quadric ring only for odd dimension, got {n}")
    k = (n - 1) // 2
    names, codims = [], []
    for i in range(k + 1):
        names.append("1" if i == 0 else ("h" if i == 1 else f"h{i}"))
        codims.append(i)
    for j in range(k, -1, -1):
        names.append(f"l{j}")
        codims.append(n - j)
    idx = {c: t for t, c in enumerate(codims)}
    table = {}
    for a in range(len(names)):
        for b in range(a, len(names)):
            ca, cb = codims[a], codims[b]
            if ca + cb > n:
                continue
            target = idx[ca + cb]
            if ca <= k and cb <= k:
                table[(a, b)] = {target: 1 if ca + cb <= k else 2}
            elif ca <= k or cb <= k:
                table[(a, b)] = {target: 1}
    A = GradedAlgebra(f"Q{n}", names, codims, table, n, {0: 1}, idx[n], ZZ)
    A.provenance = {"kind": "quadric", "n": n}
    return A


# ---------------------------------------------------------------------------
# descriptors


def projective_space(n: int) -> VarietyDescriptor:
    A = projective_space_ring(n)
    if n == 0:
        return VarietyDescriptor("P0", 0, A, zero_bundle(A), "builtin")
    h = A.basis("h")
    # Euler sequence: T + O = O(1)^(n+1)
    T = VirtualBundle([h] * (n + 1), [A.zero()], label=f"T(P{n})")
    return VarietyDescriptor(f"P{n}", n, A, T, "builtin", classes={"h": h})


def split_quadric(n: int) -> VarietyDescriptor:
    if n % 2 == 0:
        return quadric_hypersurface(n)
    A = odd_quadric_ring(n)
    # for the conic h = 2 * point
    h = A.basis("h") if "h" in A.index else 2 * A.basis("l0")
    # T + O + O(2) = O(1)^(n+2)
    T = VirtualBundle([h] * (n + 2), [2 * h, A.zero()], label=f"T(Q{n})")
    classes = {"h": h}
    for j in range((n - 1) // 2 + 1):
        classes[f"l{j}"] = A.basis(f"l{j}")
    return VarietyDescriptor(f"Q{n}", n, A, T, "builtin", classes=classes)


def quadric_hypersurface(n: int) -> VarietyDescriptor:
    amb = projective_space(n + 1)
    return complete_intersection(amb, [2 * amb.classes["h"]], name=f"Q{n}")


def homogeneous(group: str, marked) -> VarietyDescriptor:
    A = gp_algebra(group, marked)
    T = gp_tangent_roots(A)
    Q: ParabolicQuotient = A.provenance["quotient"]
    classes = {f"D{i}": divisor_class(A, i) for i in Q.marked}
    if len(Q.marked) == 1:
        classes["H"] = divisor_class(A)
    return VarietyDescriptor(Q.label, Q.dim, A, T, "gp", classes=classes)


def product(u: VarietyDescriptor, v: VarietyDescriptor) -> VarietyDescriptor:
    if not (u.intrinsic and v.intrinsic):
        raise UnsupportedCombination("products need intrinsic Chow rings on both factors")
    P = kunneth_product(u.ring, v.ring, name=f"{u.name}x{v.name}")
    T = u.tangent.map(lambda a: pull_left(a, P)) + v.tangent.map(lambda b: pull_right(b, P))
    classes = {}
    for key, c in u.classes.items():
        classes[f"{key}_1"] = pull_left(c, P)
    for key, c in v.classes.items():
        classes[f"{key}_2"] = pull_right(c, P)
    return VarietyDescriptor(f"{u.name}x{v.name}", u.dim + v.dim, P, T, "product", classes=classes, factors=(u, v))


def disjoint_union(u: VarietyDescriptor, v: VarietyDescriptor) -> VarietyDescriptor:
    """``U ⊔ V`` for equal dimensions; characteristic numbers add."""
    if not (u.intrinsic and v.intrinsic):
        raise UnsupportedCombination("disjoint unions need intrinsic Chow rings")
    if u.dim != v.dim:
        raise UnsupportedCombination("disjoint union of varieties of different dimensions")
    S = direct_sum(u.ring, v.ring, name=f"{u.name}+{v.name}")

    def glue(a, b):
        return include_summand(a, S, 0) + include_summand(b, S, 1)

    T = VirtualBundle(
        series=glue(chern_series(u.tangent), chern_series(v.tangent)),
        rank=u.dim,
        root_powered=lambda p: glue(powered_class(u.tangent, p), powered_class(v.tangent, p)),
        label=f"T({u.name}+{v.name})",
    )
    return VarietyDescriptor(f"{u.name}+{v.name}", u.dim, S, T, "disjoint_union", factors=(u, v))


def subvariety_by_divisors(v: VarietyDescriptor, powers, name: str | None = None) -> VarietyDescriptor:
    """Cut ``v`` by divisors given as classes or as ``(class_name, count)`` pairs."""
    divisors = []
    for item in powers:
        if isinstance(item, tuple):
            key, count = item
            divisors.extend([v.classes[key]] * count)
        elif isinstance(item, str):
            divisors.append(v.classes[item])
        else:
            divisors.append(item)
    return complete_intersection(v, divisors, name=name)


def point() -> VarietyDescriptor:
    A = point_algebra()
    return VarietyDescriptor("pt", 0, A, zero_bundle(A), "builtin")


# ---------------------------------------------------------------------------
# registry

_GP_RE = re.compile(r"^([A-Ga-g])(\d+)/?[Pp](\d+(?:,\d+)*)$")


def normalize_name(name: str) -> str:
    name = name.strip().replace(" ", "")
    m = _GP_RE.match(name)
    if m:
        return f"{m.group(1).upper()}{m.group(2)}/P{m.group(3)}"
    return name


def builtin(name: str) -> VarietyDescriptor:
    """Descriptor for a catalog name (cached; descriptors are read-only)."""
    return _builtin(normalize_name(name))


@lru_cache(maxsize=None)
def _builtin(name: str) -> VarietyDescriptor:
    factors = _split_product(name)
    if len(factors) > 1:
        out = builtin(factors[0])
        for f in factors[1:]:
            out = product(out, builtin(f))
        return out
    if name == "pt":
        return point()
    m = re.fullmatch(r"P(\d+)", name)
    if m:
        return projective_space(int(m.group(1)))
    m = re.fullmatch(r"Q(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownVariety(name)
        return split_quadric(n)
    m = _GP_RE.match(name)
    if m:
        group = f"{m.group(1).upper()}{m.group(2)}"
        marked = [int(t) for t in m.group(3).split(",")]
        try:
            return homogeneous(group, marked)
        except ValueError as exc:
            raise UnknownVariety(f"{name}: {exc}") from exc
    raise UnknownVariety(name)


def _split_product(name: str) -> list[str]:
    parts = name.split("x")
    if any(not p for p in parts):
        raise UnknownVariety(name)
    return [normalize_name(p) for p in parts]


def cell_count(v: VarietyDescriptor) -> int:
    return v.ring.rank if v.intrinsic else None


def gp_poincare(v: VarietyDescriptor) -> list[int] | None:
    if v.provenance != "gp":
        return None
    return poincare_polynomial(v.ring.provenance["quotient"])


def check_descriptor(v: VarietyDescriptor) -> list[str]:
    """Descriptor invariants; returns a list of problems (empty when fine)."""
    problems = []
    if v.tangent.rank != v.dim:
        problems.append("tangent rank differs from dimension")
    if v.intrinsic:
        from .exactalg import degree

        if int(degree(v.ring.basis(v.ring.point))) != 1:
            problems.append("point class does not have degree 1")
        if v.provenance in ("builtin", "gp", "product") and v.euler_characteristic() != v.ring.rank:
            problems.append("top Chern number differs from the cell count")
    if v.provenance == "gp" and v.ring.ranks() != gp_poincare(v):
        problems.append("Chow ranks differ from the Poincare polynomial")
    return problems


KNOWN_MODELS = {
    "Q3": ("B2/P1",),
    "Q5": ("B3/P1",),
    "P2": ("A2/P1",),
    "P3": ("A3/P1", "C2/P1"),
}


def alternative_models(name: str) -> list[VarietyDescriptor]:
    """Other descriptors of the same variety (hypersurface and G/P models)."""
    name = normalize_name(name)
    out = []
    m = re.fullmatch(r"Q(\d+)", name)
    if m and int(m.group(1)) % 2 == 1:
        out.append(quadric_hypersurface(int(m.group(1))))
    for gp in KNOWN_MODELS.get(name, ()):
        out.append(builtin(gp))
    return out


def chern_total(v: VarietyDescriptor):
    return chern_series(v.tangent)
