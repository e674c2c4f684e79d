"""Variety description files (TOML).

::

    [variety]
    name = "P2 by hand"
    dim = 2

    [algebra]
    mode = "presentation"      # builtin | gp | product | presentation | complete_intersection
    generators = [{ name = "h", codim = 1 }]
    relations = [{ lead = "h^3", rhs = "0" }]

    [tangent]
    roots = ["h", "h", "h"]
    negative_roots = ["0"]     # or: chern = ["3*h", "3*h^2"]

Mode keys: ``builtin``: name; ``gp``: group, parabolic (int or list);
``product``: factors (list of builtin names); ``complete_intersection``:
ambient (builtin name), divisors (element strings or ``{class, count}``
tables).  In presentation mode elements are polynomials in the generators
(``2*h^2*x - x``); elsewhere they are sums of ``coef*basisname``.
"""

from __future__ import annotations

import re
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import catalog
from .charclass import VarietyDescriptor, VirtualBundle, complete_intersection
from .exactalg import ZZ, GradedAlgebra, RingElement


class SpecError(ValueError):
    pass


class ConfluenceFailure(ValueError):
    pass


Monomial = tuple[int, ...]


# ---------------------------------------------------------------------------
# polynomials in named generators


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_polynomial(text: str, names: list[str]) -> dict[Monomial, int]:
    """``"2*h^2*x - x + 3"`` -> ``{(2, 1): 2, (0, 1): -1, (0, 0): 3}``."""
    idx = {n: k for k, n in enumerate(names)}
    out: dict[Monomial, int] = {}
    text = text.strip()
    if text in ("", "0"):
        return out
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos and text[pos:m.start()].strip():
            raise SpecError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = 1
        expo = [0] * len(names)
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise SpecError(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+", factor):
                coef *= int(factor)
                continue
            base, _, e = factor.partition("^")
            if base not in idx:
                raise SpecError(f"unknown generator {base!r}")
            expo[idx[base]] += int(e) if e else 1
        key = tuple(expo)
        out[key] = out.get(key, 0) + sign * coef
    if text[pos:].strip():
        raise SpecError(f"cannot parse {text!r}")
    return {k: v for k, v in out.items() if v}


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _monomial_name(e: Monomial, names: list[str]) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return ".".join(parts) or "1"


class Presentation:
    """``Z[generators]`` modulo rewrite rules ``lead -> rhs`` and everything above ``dim``."""

    def __init__(self, names, codims, rules, dim):
        self.names = list(names)
        self.codims = list(codims)
        self.rules = list(rules)  # [(lead monomial, {monomial: coef})]
        self.dim = dim
        for lead, rhs in self.rules:
            c = self.codim(lead)
            for mono in rhs:
                if self.codim(mono) != c:
                    raise SpecError("relations must be homogeneous")
        self._nf: dict[Monomial, dict[Monomial, int]] = {}

    def codim(self, e: Monomial) -> int:
        return sum(a * c for a, c in zip(e, self.codims))

    def _applicable(self, e: Monomial):
        return [k for k, (lead, _) in enumerate(self.rules) if _divides(lead, e)]

    def _rewrite_once(self, e: Monomial, k: int) -> dict[Monomial, int]:
        lead, rhs = self.rules[k]
        rest = tuple(a - b for a, b in zip(e, lead))
        return {tuple(a + b for a, b in zip(rest, m)): c for m, c in rhs.items()}

    def normal_form(self, e: Monomial, choice: int | None = None) -> dict[Monomial, int]:
        """Reduce a monomial; ``choice`` forces the first rule applied."""
        if self.codim(e) > self.dim:
            return {}
        if choice is None and e in self._nf:
            return self._nf[e]
        rules = self._applicable(e)
        if not rules:
            out = {e: 1}
        else:
            k = choice if choice is not None else rules[0]
            out: dict[Monomial, int] = {}
            for m, c in self._rewrite_once(e, k).items():
                for m2, c2 in self.normal_form(m).items():
                    out[m2] = out.get(m2, 0) + c * c2
            out = {m: c for m, c in out.items() if c}
        if choice is None:
            self._nf[e] = out
        return out

    def monomials(self, m: int):
        out = []

        def rec(pos, left, acc):
            if pos == len(self.codims):
                if left == 0:
                    out.append(tuple(acc))
                return
            c = self.codims[pos]
            for k in range(left // c + 1):
                rec(pos + 1, left - k * c, acc + [k])

        rec(0, m, [])
        return out

    def confluence_problems(self) -> list[str]:
        """Every monomial up to ``dim`` must reduce the same way whichever rule fires first."""
        problems = []
        for m in range(self.dim + 1):
            for e in self.monomials(m):
                rules = self._applicable(e)
                if len(rules) < 2:
                    continue
                forms = {tuple(sorted(self.normal_form(e, k).items())) for k in rules}
                if len(forms) > 1:
                    problems.append(_monomial_name(e, self.names))
        return problems

    def algebra(self, name: str, point: str | None = None) -> GradedAlgebra:
        basis = [e for m in range(self.dim + 1) for e in self.monomials(m) if not self._applicable(e)]
        index = {e: k for k, e in enumerate(basis)}
        names = [_monomial_name(e, self.names) for e in basis]
        codims = [self.codim(e) for e in basis]
        table = {}
        for i, a in enumerate(basis):
            for j in range(i, len(basis)):
                b = basis[j]
                prod = tuple(x + y for x, y in zip(a, b))
                nf = self.normal_form(prod)
                if nf:
                    table[(i, j)] = {index[m]: c for m, c in nf.items()}
        top = [k for k, c in enumerate(codims) if c == self.dim]
        if point is not None:
            key = tuple(self._poly(point).keys())
            if len(key) != 1 or key[0] not in index:
                raise SpecError(f"point {point!r} is not a standard monomial")
            pt = index[key[0]]
        elif len(top) == 1:
            pt = top[0]
        else:
            raise SpecError("top codimension has several basis elements; give [algebra] point")
        zero = tuple([0] * len(self.names))
        A = GradedAlgebra(name, names, codims, table, self.dim, {index[zero]: 1}, pt, ZZ)
        A.provenance = {"kind": "presentation", "presentation": self, "basis": basis}
        return A

    def _poly(self, text):
        return parse_polynomial(text, self.names)

    def element(self, A: GradedAlgebra, text: str) -> RingElement:
        index = {e: k for k, e in enumerate(A.provenance["basis"])}
        out = {}
        for mono, c in parse_polynomial(text, self.names).items():
            for m2, c2 in self.normal_form(mono).items():
                out[index[m2]] = out.get(index[m2], 0) + c * c2
        return A.element(out)


# ---------------------------------------------------------------------------
# loading


def _element(text, A: GradedAlgebra, pres: Presentation | None):
    if isinstance(text, int):
        return A.scalar(text)
    return pres.element(A, text) if pres is not None else A.parse(text)


def _tangent(section: dict, A: GradedAlgebra, pres, dim: int) -> VirtualBundle:
    if "roots" in section:
        pos = [_element(t, A, pres) for t in section["roots"]]
        neg = [_element(t, A, pres) for t in section.get("negative_roots", [])]
        return VirtualBundle(pos, neg, label="T")
    if "chern" in section:
        series = A.one()
        for t in section["chern"]:
            series = series + _element(t, A, pres)
        return VirtualBundle(series=series, rank=dim, label="T")
    raise SpecError("[tangent] needs roots or chern")


def load_spec(source) -> VarietyDescriptor:
    """Build a descriptor from a TOML path, TOML text, or an already parsed dict."""
    if isinstance(source, dict):
        data = source
    else:
        path = Path(str(source))
        text = path.read_text() if path.suffix == ".toml" and path.exists() else str(source)
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise SpecError(f"invalid TOML: {exc}") from exc
    var = data.get("variety", {})
    alg = data.get("algebra")
    if not alg or "mode" not in alg:
        raise SpecError("missing [algebra] mode")
    mode = alg["mode"]
    tangent = data.get("tangent")
    name = var.get("name")

    if mode == "builtin":
        v = catalog.builtin(alg["name"])
    elif mode == "gp":
        marked = alg["parabolic"]
        marked = [marked] if isinstance(marked, int) else list(marked)
        v = catalog.homogeneous(alg["group"], marked)
    elif mode == "product":
        factors = alg.get("factors") or []
        if len(factors) < 2:
            raise SpecError("product mode needs at least two factors")
        v = catalog.builtin("x".join(factors))
    elif mode == "complete_intersection":
        amb = catalog.builtin(alg["ambient"])
        divisors = []
        for d in alg.get("divisors", []):
            if isinstance(d, dict):
                divisors.extend([amb.classes[d["class"]]] * int(d.get("count", 1)))
            elif d in amb.classes:
                divisors.append(amb.classes[d])
            else:
                divisors.append(amb.ring.parse(d))
        v = complete_intersection(amb, divisors, name=name)
    elif mode == "presentation":
        if "dim" not in var:
            raise SpecError("presentation mode needs [variety] dim")
        dim = int(var["dim"])
        gens = alg.get("generators") or []
        names = [g["name"] for g in gens]
        codims = [int(g["codim"]) for g in gens]
        if any(c <= 0 for c in codims):
            raise SpecError("generator codimensions must be positive")
        rules = []
        for rel in alg.get("relations", []):
            lead = parse_polynomial(rel["lead"], names)
            if len(lead) != 1 or next(iter(lead.values())) != 1:
                raise SpecError(f"leading term {rel['lead']!r} must be a single monic monomial")
            rules.append((next(iter(lead)), parse_polynomial(str(rel.get("rhs", "0")), names)))
        pres = Presentation(names, codims, rules, dim)
        bad = pres.confluence_problems()
        if bad:
            raise ConfluenceFailure(f"rewrite rules are not confluent on {', '.join(bad[:5])}")
        A = pres.algebra(name or "presented", alg.get("point"))
        if tangent is None:
            raise SpecError("presentation mode needs a [tangent] section")
        T = _tangent(tangent, A, pres, dim)
        classes = {n: pres.element(A, n) for n in names}
        return VarietyDescriptor(name or "presented", dim, A, T, "presentation", classes=classes)
    else:
        raise SpecError(f"unknown mode {mode!r}")

    if tangent is not None:
        A = v.ring
        v = VarietyDescriptor(v.name, v.dim, A, _tangent(tangent, A, None, v.dim), v.provenance,
                              fundamental=v.fundamental, classes=v.classes, ambient=v.ambient,
                              divisors=v.divisors, factors=v.factors)
    if name:
        v = VarietyDescriptor(name, v.dim, v.ring, v.tangent, v.provenance, fundamental=v.fundamental,
                              classes=v.classes, ambient=v.ambient, divisors=v.divisors, factors=v.factors)
    if "dim" in var and int(var["dim"]) != v.dim:
        raise SpecError(f"declared dim {var['dim']} but the construction has dim {v.dim}")
    return v
