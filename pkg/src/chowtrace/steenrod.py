"""Reduced p-th power operations on mod-p Chow rings.

A table fixes the total operation ``S = sum S^i`` on a set of ring generators;
it extends to the whole ring by the Cartan formula.  ``validate`` checks
instability, the top-power rule, multiplicativity against the ring relations,
the (Bockstein-free) Adem relations and, when tangent data is supplied, the
Wu-type identity ``deg(S(x) * c^(p)(T)^-1) = deg(x)`` coming from
compatibility with pushforward to a point.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from math import comb

from .exactalg import GradedAlgebra, RingElement, degree, invert_unit, kunneth_product, reduce_mod, tensor


class NotInGeneratedSubring(ValueError):
    pass


class UnsolvableSteenrod(ArithmeticError):
    pass


class SearchBoundExceeded(RuntimeError):
    pass


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


# ---------------------------------------------------------------------------
# linear algebra over GF(p)


def _reduce_row(row, pivots, p):
    row = list(row)
    for col, prow in pivots:
        c = row[col]
        if c:
            row = [(a - c * b) % p for a, b in zip(row, prow)]
    return row


def _express(target, columns, p):
    """Coefficients ``x`` with ``sum x_k columns[k] == target`` mod p, or None."""
    n = len(target)
    m = len(columns)
    # augmented rows: [column entries | identity] so we can track combinations
    rows = []
    for k, col in enumerate(columns):
        rows.append([c % p for c in col] + [1 if t == k else 0 for t in range(m)])
    pivots = []
    for r in rows:
        r = _reduce_row(r, pivots, p)
        lead = next((i for i in range(n) if r[i]), None)
        if lead is None:
            continue
        inv = pow(r[lead], -1, p)
        r = [(a * inv) % p for a in r]
        pivots.append((lead, r))
    t = _reduce_row([c % p for c in target] + [0] * m, pivots, p)
    if any(t[:n]):
        return None
    return [(-c) % p for c in t[n:]]


def _vector(x: RingElement, idxs):
    return [x.coeffs.get(k, 0) for k in idxs]


# ---------------------------------------------------------------------------
# generators


class GeneratorData:
    """Ring generators (basis elements) of a mod-p algebra and the expression
    of every basis element as a combination of generator monomials."""

    def __init__(self, A: GradedAlgebra, generators: list[str] | None = None):
        if A.domain.kind != "GF":
            raise ValueError("Steenrod tables live on mod-p algebras")
        self.algebra = A
        self.p = A.domain.p
        fixed = generators is not None
        self.generators: list[str] = list(generators or [])
        self.express: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
        for m in range(0, A.dim + 1):
            idxs = A.by_codim(m)
            if not idxs:
                continue
            while True:
                monos = self._monomials(m)
                values = [self.monomial_value(e) for e in monos]
                cols = [_vector(v, idxs) for v in values]
                missing = None
                for k in idxs:
                    target = [1 if t == k else 0 for t in idxs]
                    sol = _express(target, cols, self.p)
                    if sol is None:
                        missing = k
                        break
                    self.express[k] = [(c, e) for c, e in zip(sol, monos) if c]
                if missing is None:
                    break
                if fixed:
                    raise NotInGeneratedSubring(f"{A.names[missing]} is not generated by {self.generators}")
                self.generators.append(A.names[missing])

    @property
    def codims(self) -> list[int]:
        A = self.algebra
        return [A.codims[A.index[g]] for g in self.generators]

    def _monomials(self, m: int) -> list[tuple[int, ...]]:
        cods = self.codims
        out = []

        def rec(pos, left, acc):
            if pos == len(cods):
                if left == 0:
                    out.append(tuple(acc))
                return
            c = cods[pos]
            for e in range(left // c + 1):
                rec(pos + 1, left - e * c, acc + [e])

        if m == 0:
            return [tuple([0] * len(cods))]
        if not cods:
            return []
        rec(0, m, [])
        return out

    def monomial_value(self, e) -> RingElement:
        A = self.algebra
        out = A.one()
        for g, k in zip(self.generators, e):
            if k:
                out = out * A.basis(g) ** k
        return out


# ---------------------------------------------------------------------------
# tables


@dataclass
class SteenrodTable:
    p: int
    algebra: GradedAlgebra
    gens: GeneratorData
    images: dict[str, dict[int, RingElement]]
    status: str = "closed-form"
    family: list["SteenrodTable"] = field(default_factory=list)
    wu: RingElement | None = None

    def __post_init__(self):
        self._gen_total: dict[str, RingElement] = {}
        self._basis_total: dict[int, RingElement] = {}
        A = self.algebra
        for g in self.gens.generators:
            c = A.codims[A.index[g]]
            imgs = self.images.setdefault(g, {})
            total = A.basis(g)
            for i, x in imgs.items():
                if not 1 <= i <= c:
                    raise ValueError(f"S^{i} of {g} outside 1..{c}")
                total = total + x
            self._gen_total[g] = total

    @property
    def generators(self) -> list[str]:
        return self.gens.generators

    def total_basis(self, k: int) -> RingElement:
        if k not in self._basis_total:
            A = self.algebra
            out = A.zero()
            for coef, e in self.gens.express[k]:
                term = A.scalar(coef)
                for g, n in zip(self.gens.generators, e):
                    if n:
                        term = term * self._gen_total[g] ** n
                out = out + term
            self._basis_total[k] = out
        return self._basis_total[k]

    def key(self):
        return tuple(
            (g, i, tuple(sorted(x.coeffs.items())))
            for g in self.generators
            for i, x in sorted(self.images[g].items())
        )

    def to_dict(self) -> dict:
        from .exactalg import format_element

        gens = []
        for g in self.generators:
            gens.append({"name": g, "images": {str(i): format_element(x) for i, x in sorted(self.images[g].items())}})
        return {"prime": self.p, "algebra_id": self.algebra.name, "generators": gens, "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def table_from_json(text: str | dict, A: GradedAlgebra) -> SteenrodTable:
    data = json.loads(text) if isinstance(text, str) else text
    p = int(data["prime"])
    if A.domain.kind != "GF" or A.domain.p != p:
        A = reduce_mod(A, p)
    names = [g["name"] for g in data["generators"]]
    gens = GeneratorData(A, names)
    images = {g["name"]: {int(i): A.parse(s) for i, s in g["images"].items()} for g in data["generators"]}
    return SteenrodTable(p, A, gens, images, data.get("status", "imported"))


def total_operation(T: SteenrodTable, x: RingElement) -> RingElement:
    if x.algebra is not T.algebra:
        x = reduce_mod(x, T.p)
        if x.algebra is not T.algebra:
            raise ValueError("element does not belong to the table's algebra")
    out = T.algebra.zero()
    for k, c in x.coeffs.items():
        out = out + T.total_basis(k) * c
    return out


def reduced_power(T: SteenrodTable, i: int, x: RingElement) -> RingElement:
    """``S^i(x)``: per homogeneous piece of codim m, the codim ``m + i(p-1)`` part."""
    if i == 0:
        return x if x.algebra is T.algebra else reduce_mod(x, T.p)
    A = T.algebra
    out = A.zero()
    for m in sorted(set(A.codims[k] for k in x.coeffs)):
        out = out + total_operation(T, x.component(m)).component(m + i * (T.p - 1))
    return out


def adem_terms(a: int, b: int, p: int) -> list[tuple[int, int, int]]:
    """``S^a S^b = sum c S^(a+b-j) S^j`` for ``0 < a < p b`` (Bockstein-free form)."""
    out = []
    for j in range(0, a // p + 1):
        c = (-1) ** (a + j) * binom((p - 1) * (b - j) - 1, a - p * j)
        c %= p
        if c:
            out.append((c, a + b - j, j))
    return out


def wu_class(tangent, p: int, A: GradedAlgebra) -> RingElement:
    """``c^(p)(T)^-1`` reduced into the mod-p algebra ``A``."""
    from .charclass import powered_class

    inv = invert_unit(powered_class(tangent, p))
    return RingElement(A, inv.coeffs)


def validate(T: SteenrodTable, first_only: bool = False, wu: RingElement | None = None) -> list[str]:
    A = T.algebra
    p = T.p
    q = p - 1
    wu = wu if wu is not None else T.wu
    problems: list[str] = []

    def bad(msg):
        problems.append(msg)
        return first_only

    n = A.rank
    # instability and top power on every basis element
    for k in range(n):
        c = A.codims[k]
        tot = T.total_basis(k)
        b = A.basis(k)
        for m in tot.codims():
            if (m - c) % q or m < c or m > c + c * q:
                if bad(f"S({A.names[k]}) has a component in codim {m} (instability)"):
                    return problems
        if tot.component(c) != b:
            if bad(f"S^0({A.names[k]}) is not the identity"):
                return problems
        if c > 0 and tot.component(c * p) != b**p:
            if bad(f"S^{c}({A.names[k]}) != {A.names[k]}^{p}"):
                return problems
    # Wu identity, cheap and very selective
    if wu is not None:
        for k in range(n):
            c = A.codims[k]
            if c >= A.dim:
                continue
            val = degree((T.total_basis(k) * wu).component(A.dim))
            if int(val) % p:
                if bad(f"Wu identity fails on {A.names[k]}"):
                    return problems
    # multiplicativity on basis pairs (Cartan + relations)
    for i in range(n):
        for j in range(i, n):
            if A.codims[i] + A.codims[j] > A.dim:
                continue
            prod = A.basis(i) * A.basis(j)
            if total_operation(T, prod) != T.total_basis(i) * T.total_basis(j):
                if bad(f"Cartan/relation failure on {A.names[i]}*{A.names[j]}"):
                    return problems
    # Adem relations on every basis element
    for k in range(n):
        x = A.basis(k)
        c = A.codims[k]
        for b in range(1, c + 1):
            sb = reduced_power(T, b, x)
            if sb.is_zero():
                continue
            for a in range(1, p * b):
                if c + (a + b) * q > A.dim:
                    break
                lhs = reduced_power(T, a, sb)
                rhs = A.zero()
                for coef, u, v in adem_terms(a, b, p):
                    rhs = rhs + reduced_power(T, u, reduced_power(T, v, x)) * coef
                if lhs != rhs:
                    if bad(f"Adem S^{a}S^{b} fails on {A.names[k]}"):
                        return problems
    return problems


# ---------------------------------------------------------------------------
# closed forms


def cartan_table(A: GradedAlgebra, wu: RingElement | None = None) -> SteenrodTable:
    """The forced table of an algebra generated in codimension one: ``S(g) = g + g^p``."""
    gens = GeneratorData(A)
    p = A.domain.p
    images = {}
    for g in gens.generators:
        if A.codims[A.index[g]] != 1:
            raise NotInGeneratedSubring(f"{g} is not of codimension one")
        images[g] = {1: A.basis(g) ** p}
    return SteenrodTable(p, A, gens, images, "closed-form", wu=wu)


def projective_table(n: int, p: int) -> SteenrodTable:
    from .catalog import builtin

    v = builtin(f"P{n}")
    A = reduce_mod(v.ring, p)
    return cartan_table(A, wu=wu_class(v.tangent, p, A) if n else None)


def quadric_table(n: int) -> SteenrodTable:
    """Odd split quadric mod 2: ``S^i(h^a) = C(a,i) h^(a+i)``, ``S^i(l_j) = C(n+1-j, i) l_(j-i)``."""
    from .catalog import builtin

    if n < 3 or n % 2 == 0:
        raise ValueError("closed form implemented for odd quadrics of dimension >= 3")
    v = builtin(f"Q{n}")
    A = reduce_mod(v.ring, 2)
    k = (n - 1) // 2
    gens = GeneratorData(A, ["h", f"l{k}"])
    images = {"h": {1: A.basis("h") ** 2}}
    images[f"l{k}"] = {i: A.basis(f"l{k - i}") * binom(n + 1 - k, i) for i in range(1, k + 1)}
    # S^i for i > k lands above the point class
    for i in range(k + 1, n - k + 1):
        images[f"l{k}"][i] = A.zero()
    return SteenrodTable(2, A, gens, images, "closed-form", wu=wu_class(v.tangent, 2, A))


def quadric_closed_form(A: GradedAlgebra, name: str, i: int) -> RingElement:
    """Expected ``S^i`` of a basis element of ``Ch(Q_n)/2`` from the closed forms."""
    n = A.dim
    if name.startswith("l"):
        j = int(name[1:])
        return A.basis(f"l{j - i}") * binom(n + 1 - j, i) if j - i >= 0 else A.zero()
    a = 0 if name == "1" else (1 if name == "h" else int(name[1:]))
    if a + i > n:
        return A.zero()
    coef = binom(a, i)
    h = A.basis("h")
    return h ** (a + i) * coef


def product_table(TA: SteenrodTable, TB: SteenrodTable) -> SteenrodTable:
    """Table on ``A (x) B``; generators ``g|1`` and ``1|g``."""
    if TA.p != TB.p:
        raise ValueError("tables over different primes")
    A, B = TA.algebra, TB.algebra
    P = kunneth_product(A, B)
    names = [f"{g}|{B.names[_unit_index(B)]}" for g in TA.generators]
    names += [f"{A.names[_unit_index(A)]}|{g}" for g in TB.generators]
    images = {}
    for g, nm in zip(TA.generators, names):
        images[nm] = {i: tensor(x, B.one(), P) for i, x in TA.images[g].items()}
    for g, nm in zip(TB.generators, names[len(TA.generators):]):
        images[nm] = {i: tensor(A.one(), x, P) for i, x in TB.images[g].items()}
    wu = tensor(TA.wu, TB.wu, P) if TA.wu is not None and TB.wu is not None else None
    return SteenrodTable(TA.p, P, GeneratorData(P, names), images, "closed-form", wu=wu)


def _unit_index(A: GradedAlgebra) -> int:
    (k,) = A.one().coeffs
    return k


# ---------------------------------------------------------------------------
# solver


def _span_choices(A: GradedAlgebra, m: int, p: int):
    idxs = A.by_codim(m) if m <= A.dim else []
    for coeffs in itertools.product(range(p), repeat=len(idxs)):
        yield RingElement(A, dict(zip(idxs, coeffs)))


def solve_action(
    A: GradedAlgebra,
    fixed: dict[str, dict[int, RingElement]] | None = None,
    generators: list[str] | None = None,
    wu: RingElement | None = None,
    bound: int = 100_000,
    order_seed: int | None = None,
) -> SteenrodTable:
    """Enumerate all tables compatible with the constraints.

    Images of codimension-one generators and top powers are forced; the
    remaining ``S^i(g)`` range over the full mod-p span of their target
    codimension unless given in ``fixed``.  Returns the unique table, or the
    first of the admissible family with ``family`` holding all of them
    (canonically sorted).
    """
    if A.domain.kind != "GF":
        raise ValueError("solve_action needs a mod-p algebra")
    p = A.domain.p
    q = p - 1
    gens = GeneratorData(A, generators)
    fixed = fixed or {}
    slots = []  # (gen, i, choices)
    forced: dict[str, dict[int, RingElement]] = {}
    for g in gens.generators:
        c = A.codims[A.index[g]]
        forced[g] = {c: A.basis(g) ** p}
        for i in range(1, c):
            if g in fixed and i in fixed[g]:
                forced[g][i] = fixed[g][i]
            else:
                slots.append((g, i, list(_span_choices(A, c + i * q, p))))
        if g in fixed and c in fixed[g] and fixed[g][c] != forced[g][c]:
            raise UnsolvableSteenrod(f"fixed S^{c}({g}) contradicts the top-power rule")
    size = 1
    for _, _, ch in slots:
        size *= len(ch)
    if size > bound:
        raise SearchBoundExceeded(f"{size} candidate tables exceed the bound {bound}")
    grid = list(itertools.product(*[range(len(ch)) for _, _, ch in slots]))
    if order_seed is not None:
        random.Random(order_seed).shuffle(grid)
    found = []
    for point in grid:
        images = {g: dict(v) for g, v in forced.items()}
        for (g, i, ch), t in zip(slots, point):
            images[g][i] = ch[t]
        T = SteenrodTable(p, A, gens, images, "candidate", wu=wu)
        if not validate(T, first_only=True):
            found.append(T)
    if not found:
        raise UnsolvableSteenrod("no table satisfies the constraints")
    found.sort(key=lambda t: t.key())
    status = "solved-unique" if len(found) == 1 else "solution-space"
    for T in found:
        T.status = status
    head = found[0]
    head.family = found
    return head


def family_of(T: SteenrodTable) -> list[SteenrodTable]:
    return T.family or [T]


def check_s2_codim4(target, p: int = 3, **solve_kw) -> bool:
    """True iff ``S^2`` kills the codim-4 part under every admissible table."""
    if isinstance(target, SteenrodTable):
        T = target
    else:
        T = solve_for_variety(target, p, **solve_kw)
    A = T.algebra
    for t in family_of(T):
        for k in A.by_codim(4):
            if not reduced_power(t, 2, A.basis(k)).is_zero():
                return False
    return True


def solve_for_variety(v, p: int, use_wu: bool = True, **kw) -> SteenrodTable:
    """Solve on ``Ch(v)/p`` with the Wu constraint from the tangent bundle."""
    A = reduce_mod(v.ring, p)
    wu = wu_class(v.tangent, p, A) if use_wu else None
    return solve_action(A, wu=wu, **kw)


def s2_report(T: SteenrodTable) -> dict:
    A = T.algebra
    fam = family_of(T)
    values = {}
    for k in A.by_codim(4):
        imgs = sorted({repr(reduced_power(t, 2, A.basis(k))) for t in fam})
        values[A.names[k]] = imgs
    return {
        "prime": T.p,
        "algebra_id": A.name,
        "generators": list(T.generators),
        "status": T.status,
        "family_size": len(fam),
        "s2_codim4_images": values,
        "s2_codim4_trivial": check_s2_codim4(T),
    }
