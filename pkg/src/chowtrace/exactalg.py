"""Exact coefficient domains and finite graded commutative algebras.

Every Chow ring in this package is stored as a basis with integer (or
rational, or mod-p) structure constants.  Grading is by codimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


class AlgebraMismatch(ValueError):
    pass


class ModulusMismatch(ValueError):
    pass


class NotAUnit(ArithmeticError):
    pass


class NotDivisible(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# coefficient domains


@dataclass(frozen=True)
class Residue:
    """A residue class modulo a prime.  Carries its modulus."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ModulusMismatch(f"mod {self.p} vs mod {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ModulusMismatch(f"mod {self.p} vs mod {other.p}")
            return self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.p}"


class Domain:
    """Coefficient domain: ``ZZ``, ``QQ`` or ``GF(p)``.

    Coefficients are stored as plain ``int`` (ZZ, GF(p) reduced to
    ``0..p-1``) or ``Fraction`` (QQ).
    """

    def __init__(self, kind: str, p: int | None = None):
        self.kind = kind
        self.p = p

    def __repr__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind

    def __eq__(self, other):
        return isinstance(other, Domain) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def normalize(self, c):
        if self.kind == "ZZ":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise NotDivisible(f"{c} is not an integer")
                return c.numerator
            return int(c)
        if self.kind == "QQ":
            return Fraction(c)
        if isinstance(c, Residue):
            if c.p != self.p:
                raise ModulusMismatch(f"mod {c.p} coefficient in GF({self.p}) algebra")
            return c.value
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def is_unit(self, c) -> bool:
        if self.kind == "ZZ":
            return c in (1, -1)
        return c != 0

    def inverse(self, c):
        if not self.is_unit(c):
            raise NotAUnit(f"{c} is not a unit in {self}")
        if self.kind == "ZZ":
            return c
        if self.kind == "QQ":
            return 1 / c
        return pow(c, -1, self.p)

    def wrap(self, c):
        """Present a stored coefficient to callers (residues keep their modulus)."""
        return Residue(c, self.p) if self.kind == "GF" else c


ZZ = Domain("ZZ")
QQ = Domain("QQ")
_GF_CACHE: dict[int, Domain] = {}


def GF(p: int) -> Domain:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return _GF_CACHE.setdefault(p, Domain("GF", p))


# ---------------------------------------------------------------------------
# algebras


class GradedAlgebra:
    """Finite-rank graded commutative algebra given by structure constants.

    ``table[(i, j)]`` (with ``i <= j``) maps basis indices to the sparse
    expansion of ``b_i * b_j``.  Missing pairs multiply to zero.  The degree
    functional is ``sum(weights[k] * coeff_k)`` over top-codimension basis
    elements; for a connected cellular variety it is the coefficient of the
    point class.
    """

    def __init__(
        self,
        name: str,
        names: list[str],
        codims: list[int],
        table: Mapping[tuple[int, int], Mapping[int, object]],
        dim: int,
        unit: Mapping[int, object],
        point: int,
        domain: Domain = ZZ,
        degree_weights: Mapping[int, object] | None = None,
    ):
        if len(names) != len(codims):
            raise ValueError("names and codims differ in length")
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        self.name = name
        self.names = list(names)
        self.codims = list(codims)
        self.dim = dim
        self.domain = domain
        self.index = {n: k for k, n in enumerate(self.names)}
        self.table: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j), row in table.items():
            key = (i, j) if i <= j else (j, i)
            clean = {k: domain.normalize(c) for k, c in row.items()}
            clean = {k: c for k, c in clean.items() if c != 0}
            if clean:
                self.table[key] = clean
        self.point = point
        if codims[point] != dim:
            raise ValueError("point class must sit in top codimension")
        weights = degree_weights if degree_weights is not None else {point: 1}
        self.degree_weights = {k: domain.normalize(c) for k, c in weights.items()}
        self._unit = {k: domain.normalize(c) for k, c in unit.items()}
        self._mod_cache: dict[int, GradedAlgebra] = {}
        self.provenance: dict = {}

    # -- basic accessors -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"GradedAlgebra({self.name!r}, rank={self.rank}, dim={self.dim}, {self.domain})"

    def element(self, coeffs: Mapping[int, object] | None = None) -> "RingElement":
        return RingElement(self, coeffs or {})

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return RingElement(self, self._unit)

    def basis(self, key: int | str) -> "RingElement":
        k = self.index[key] if isinstance(key, str) else key
        return RingElement(self, {k: 1})

    def scalar(self, c) -> "RingElement":
        return self.one() * c

    def by_codim(self, m: int) -> list[int]:
        return [k for k, c in enumerate(self.codims) if c == m]

    def ranks(self) -> list[int]:
        out = [0] * (self.dim + 1)
        for c in self.codims:
            out[c] += 1
        return out

    def product_of_basis(self, i: int, j: int) -> dict[int, object]:
        return self.table.get((i, j) if i <= j else (j, i), {})

    def parse(self, text: str) -> "RingElement":
        """Parse ``"2*h2 - l0 + 3"``-style sums of ``coef*basisname`` terms."""
        return parse_element(self, text)

    def mod(self, p: int) -> "GradedAlgebra":
        return reduce_mod(self, p)


class RingElement:
    """Sparse element of a :class:`GradedAlgebra`.  Value-like and immutable."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GradedAlgebra, coeffs: Mapping[int, object]):
        dom = algebra.domain
        clean = {}
        for k, c in coeffs.items():
            c = dom.normalize(c)
            if c != 0:
                clean[k] = c
        self.algebra = algebra
        self.coeffs = clean

    def _check(self, other: "RingElement"):
        if other.algebra is not self.algebra:
            a, b = self.algebra, other.algebra
            related = a.name == b.name or a.provenance.get("integral") is b or b.provenance.get("integral") is a
            if a.domain != b.domain and related:
                raise ModulusMismatch(f"{self.algebra.domain} vs {other.algebra.domain}")
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")

    def _lift(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            self._check(other)
            return other
        if isinstance(other, Residue) and self.algebra.domain.kind == "GF":
            if other.p != self.algebra.domain.p:
                raise ModulusMismatch(f"mod {other.p} scalar in {self.algebra.domain} algebra")
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return RingElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return multiply(self, other)
        if isinstance(other, Residue):
            self._lift(other)
        c = self.algebra.domain.normalize(other)
        return RingElement(self.algebra, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return invert_unit(self) ** (-e)
        out = self.algebra.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return other.algebra is self.algebra and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Residue)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, key: int | str):
        k = self.algebra.index[key] if isinstance(key, str) else key
        return self.algebra.domain.wrap(self.coeffs.get(k, 0))

    def component(self, m: int) -> "RingElement":
        """Codimension-``m`` homogeneous part."""
        cod = self.algebra.codims
        return RingElement(self.algebra, {k: c for k, c in self.coeffs.items() if cod[k] == m})

    def truncate(self, m: int) -> "RingElement":
        cod = self.algebra.codims
        return RingElement(self.algebra, {k: c for k, c in self.coeffs.items() if cod[k] <= m})

    def codims(self) -> set[int]:
        return {self.algebra.codims[k] for k in self.coeffs}

    def is_homogeneous(self, m: int | None = None) -> bool:
        cs = self.codims()
        return len(cs) <= 1 and (m is None or not cs or cs == {m})

    def constant_term(self):
        """Coefficient of the unit, read off the codimension-0 part."""
        c0 = self.component(0)
        one = self.algebra._unit
        if not c0.coeffs:
            return 0
        # codim 0 part is a multiple of the unit for connected algebras;
        # for direct sums only multiples of the unit are treated as scalars
        ratio = None
        for k, u in one.items():
            v = c0.coeffs.get(k, 0)
            dom = self.algebra.domain
            r = Fraction(v, u) if dom.kind != "GF" else v * pow(u, -1, dom.p) % dom.p
            if ratio is None:
                ratio = r
            elif ratio != r:
                return None
        if set(c0.coeffs) - set(one):
            return None
        return self.algebra.domain.normalize(ratio)

    def divide_exact(self, n: int) -> "RingElement":
        """Divide every coefficient by the integer ``n``; raise if inexact over ZZ."""
        dom = self.algebra.domain
        if dom.kind == "ZZ":
            out = {}
            for k, c in self.coeffs.items():
                q, r = divmod(c, n)
                if r:
                    raise NotDivisible(f"coefficient {c} of {self.algebra.names[k]} not divisible by {n}")
                out[k] = q
            return RingElement(self.algebra, out)
        if dom.kind == "QQ":
            return RingElement(self.algebra, {k: c / n for k, c in self.coeffs.items()})
        return self * pow(n, -1, dom.p)

    def items(self):
        for k in sorted(self.coeffs, key=lambda k: (self.algebra.codims[k], k)):
            yield self.algebra.names[k], self.algebra.domain.wrap(self.coeffs[k])

    def __repr__(self):
        return format_element(self)

    def to_json(self) -> dict[str, object]:
        return {name: (int(c) if not isinstance(c, Fraction) else str(c)) for name, c in self.items()}


# ---------------------------------------------------------------------------
# operations


def multiply(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    A = a.algebra
    dom = A.domain
    out: dict[int, object] = {}
    for i, ci in a.coeffs.items():
        for j, cj in b.coeffs.items():
            row = A.table.get((i, j) if i <= j else (j, i))
            if not row:
                continue
            cc = ci * cj
            for k, s in row.items():
                out[k] = out.get(k, 0) + cc * s
    if dom.kind == "GF":
        out = {k: v % dom.p for k, v in out.items()}
    return RingElement(A, out)


def invert_unit(a: RingElement) -> RingElement:
    """Inverse of an element with invertible constant term (nilpotent tail)."""
    A = a.algebra
    c0 = a.constant_term()
    if c0 is None or c0 == 0 or not A.domain.is_unit(c0):
        raise NotAUnit(f"constant term {c0!r} of {a!r} is not a unit")
    inv0 = A.domain.inverse(c0)
    tail = a * inv0 - A.one()
    # (1 + t)^-1 = sum (-t)^k ; t is nilpotent, t^(dim+1) = 0
    result = A.one()
    power = A.one()
    for _ in range(A.dim):
        power = power * (-tail)
        if power.is_zero():
            break
        result = result + power
    return result * inv0


def degree(a: RingElement):
    A = a.algebra
    total = 0
    for k, w in A.degree_weights.items():
        total += w * a.coeffs.get(k, 0)
    return A.domain.wrap(A.domain.normalize(total))


def kunneth_product(A: GradedAlgebra, B: GradedAlgebra, name: str | None = None) -> GradedAlgebra:
    """Tensor product of two cellular Chow rings, basis ``a|b``."""
    if A.domain != B.domain:
        raise ModulusMismatch(f"{A.domain} vs {B.domain}")
    nb = B.rank
    names, codims = [], []
    for i in range(A.rank):
        for j in range(nb):
            names.append(f"{A.names[i]}|{B.names[j]}")
            codims.append(A.codims[i] + B.codims[j])
    table: dict[tuple[int, int], dict[int, object]] = {}
    pairs_a = {(i, j): A.product_of_basis(i, j) for i in range(A.rank) for j in range(i, A.rank)}
    for (i1, i2), ra in pairs_a.items():
        if not ra:
            continue
        for j1 in range(nb):
            for j2 in range(nb):
                rb = B.product_of_basis(j1, j2)
                if not rb:
                    continue
                x, y = i1 * nb + j1, i2 * nb + j2
                key = (min(x, y), max(x, y))
                if key in table:
                    continue
                row = {}
                for ka, ca in ra.items():
                    for kb, cb in rb.items():
                        row[ka * nb + kb] = ca * cb
                table[key] = row
    unit = {ka * nb + kb: ca * cb for ka, ca in A._unit.items() for kb, cb in B._unit.items()}
    weights = {ka * nb + kb: wa * wb for ka, wa in A.degree_weights.items() for kb, wb in B.degree_weights.items()}
    P = GradedAlgebra(
        name or f"{A.name}x{B.name}",
        names,
        codims,
        table,
        A.dim + B.dim,
        unit,
        A.point * nb + B.point,
        A.domain,
        weights,
    )
    P.provenance = {"kind": "product", "factors": (A, B)}
    return P


def tensor(a: RingElement, b: RingElement, P: GradedAlgebra) -> RingElement:
    """``a ⊗ b`` in ``P = kunneth_product(A, B)``."""
    A, B = P.provenance["factors"]
    if a.algebra is not A or b.algebra is not B:
        raise AlgebraMismatch("factors do not match the product algebra")
    nb = B.rank
    return RingElement(P, {i * nb + j: ca * cb for i, ca in a.coeffs.items() for j, cb in b.coeffs.items()})


def pull_left(a: RingElement, P: GradedAlgebra) -> RingElement:
    return tensor(a, P.provenance["factors"][1].one(), P)


def pull_right(b: RingElement, P: GradedAlgebra) -> RingElement:
    return tensor(P.provenance["factors"][0].one(), b, P)


def direct_sum(A: GradedAlgebra, B: GradedAlgebra, name: str | None = None) -> GradedAlgebra:
    """Chow ring of a disjoint union ``U ⊔ V`` of equal dimension."""
    if A.domain != B.domain:
        raise ModulusMismatch(f"{A.domain} vs {B.domain}")
    if A.dim != B.dim:
        raise ValueError("disjoint union needs equal dimensions")
    na = A.rank
    names = [f"{n}@1" for n in A.names] + [f"{n}@2" for n in B.names]
    table = dict(A.table)
    for (i, j), row in B.table.items():
        table[(i + na, j + na)] = {k + na: c for k, c in row.items()}
    unit = dict(A._unit)
    unit.update({k + na: c for k, c in B._unit.items()})
    weights = dict(A.degree_weights)
    weights.update({k + na: c for k, c in B.degree_weights.items()})
    S = GradedAlgebra(name or f"{A.name}+{B.name}", names, A.codims + B.codims, table, A.dim, unit, A.point, A.domain, weights)
    S.provenance = {"kind": "disjoint_union", "summands": (A, B)}
    return S


def include_summand(a: RingElement, S: GradedAlgebra, which: int) -> RingElement:
    A, B = S.provenance["summands"]
    src = (A, B)[which]
    if a.algebra is not src:
        raise AlgebraMismatch("summand does not match")
    shift = 0 if which == 0 else A.rank
    return RingElement(S, {k + shift: c for k, c in a.coeffs.items()})


def reduce_mod(x, p: int):
    """Reduce an integral algebra, or an element of one, modulo ``p``."""
    if isinstance(x, RingElement):
        Ap = reduce_mod(x.algebra, p)
        return RingElement(Ap, x.coeffs)
    A: GradedAlgebra = x
    if A.domain.kind == "GF":
        if A.domain.p != p:
            raise ModulusMismatch(f"cannot reduce {A.domain} algebra mod {p}")
        return A
    if A.domain.kind == "QQ":
        raise ValueError("reduce_mod expects an integral algebra")
    if p in A._mod_cache:
        return A._mod_cache[p]
    Ap = GradedAlgebra(
        f"{A.name} mod {p}",
        A.names,
        A.codims,
        A.table,
        A.dim,
        A._unit,
        A.point,
        GF(p),
        A.degree_weights,
    )
    Ap.provenance = dict(A.provenance, integral=A)
    A._mod_cache[p] = Ap
    return Ap


def lift(x: RingElement, A: GradedAlgebra) -> RingElement:
    """Integral lift with representatives in ``0..p-1``."""
    if x.algebra.names != A.names:
        raise AlgebraMismatch("lift target has a different basis")
    return RingElement(A, x.coeffs)


def change_algebra(x: RingElement, A: GradedAlgebra) -> RingElement:
    """Move coefficients to an algebra with the same basis (e.g. ZZ -> QQ)."""
    if x.algebra.names != A.names:
        raise AlgebraMismatch("target has a different basis")
    return RingElement(A, x.coeffs)


def with_domain(A: GradedAlgebra, domain: Domain) -> GradedAlgebra:
    if domain.kind == "GF":
        return reduce_mod(A, domain.p)
    if domain == A.domain:
        return A
    key = ("dom", domain.kind)
    cache = A._mod_cache
    if key not in cache:
        B = GradedAlgebra(A.name, A.names, A.codims, A.table, A.dim, A._unit, A.point, domain, A.degree_weights)
        B.provenance = dict(A.provenance)
        cache[key] = B
    return cache[key]


def point_algebra(domain: Domain = ZZ) -> GradedAlgebra:
    return GradedAlgebra("pt", ["1"], [0], {(0, 0): {0: 1}}, 0, {0: 1}, 0, domain)


# ---------------------------------------------------------------------------
# checks


def check_associativity(A: GradedAlgebra) -> list[tuple[int, int, int]]:
    """Exhaustive (ab)c == a(bc) and ab == ba over all basis triples."""
    bad = []
    basis = [A.basis(k) for k in range(A.rank)]
    prods = {}
    for i in range(A.rank):
        for j in range(A.rank):
            prods[i, j] = basis[i] * basis[j]
            if j < i and prods[i, j] != prods[j, i]:
                bad.append((i, j, -1))
    for i in range(A.rank):
        for j in range(i, A.rank):
            if A.codims[i] + A.codims[j] > A.dim:
                continue
            ab = prods[i, j]
            for k in range(j, A.rank):
                if A.codims[i] + A.codims[j] + A.codims[k] > A.dim:
                    continue
                if ab * basis[k] != basis[i] * prods[j, k]:
                    bad.append((i, j, k))
    return bad


def check_grading(A: GradedAlgebra) -> bool:
    for (i, j), row in A.table.items():
        for k in row:
            if A.codims[k] != A.codims[i] + A.codims[j]:
                return False
    return True


def poincare_symmetric(A: GradedAlgebra) -> bool:
    r = A.ranks()
    return r == r[::-1]


# ---------------------------------------------------------------------------
# text form


def format_element(x: RingElement) -> str:
    parts = []
    for name, c in x.items():
        c = int(c) if isinstance(c, Residue) else c
        if name == "1":
            parts.append(f"{c}")
        elif c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{c}*{name}")
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def parse_element(A: GradedAlgebra, text: str) -> RingElement:
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty element")
    terms: list[str] = []
    cur = ""
    for ch in text:
        if ch in "+-" and cur and cur[-1] not in "*^":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out = A.zero()
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if not t:
            raise ValueError(f"bad term in {text!r}")
        if "*" in t and t.split("*", 1)[0].lstrip("-").replace("/", "").isdigit():
            coef_s, name = t.split("*", 1)
            coef = Fraction(coef_s)
        elif t.replace("/", "").isdigit():
            coef, name = Fraction(t), "1"
        else:
            coef, name = Fraction(1), t
        if name not in A.index:
            if name == "1":
                out = out + A.scalar(sign * coef)
                continue
            raise KeyError(f"unknown basis element {name!r} in {A.name}")
        out = out + A.basis(name) * (sign * coef)
    return out


def elements_equal_up_to(x: RingElement, y: RingElement, m: int) -> bool:
    return x.truncate(m) == y.truncate(m)


def sum_elements(xs: Iterable[RingElement], A: GradedAlgebra) -> RingElement:
    out = A.zero()
    for x in xs:
        out = out + x
    return out
