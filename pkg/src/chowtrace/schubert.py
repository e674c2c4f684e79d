"""Schubert calculus for G/B and G/P.

Two models of the Borel presentation are kept:

* :class:`BorelAlgebra` -- honest sparse polynomials in the fundamental
  weights over the rationals, with BGG divided differences.  Cheap for rank
  two or three, used for the small cross-checks.
* :class:`OrbitModel` -- the same polynomials represented by their values on
  the regular orbit ``W . rho``.  A divided difference at ``y`` only needs
  values at ``y`` and ``s_i y``, so products and ``d_w`` become vector
  operations and F4 is cheap.

Schubert classes are ``P_w = d_{w^-1 w0}(prod(alpha) / |W|)``; a
polynomial ``f`` of degree ``k`` expands as ``sum_{l(w) = k} d_w(f) P_w``.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from .charclass import VirtualBundle
from .exactalg import ZZ, GradedAlgebra, RingElement
from .rootweyl import DEFAULT_BOUND, ParabolicQuotient, RootSystem, build_root_system, weyl_group


class DivisionFailure(ArithmeticError):
    pass


class IntegralityFailure(ArithmeticError):
    pass


class NotInPullbackImage(ArithmeticError):
    pass


CACHE_ENV = "CHOWTRACE_CACHE_DIR"


# ---------------------------------------------------------------------------
# polynomial model


Poly = dict  # exponent tuple -> Fraction


def poly_add(f: Poly, g: Poly, scale=1) -> Poly:
    out = dict(f)
    for m, c in g.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def poly_pow(f: Poly, e: int, nvars: int) -> Poly:
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(e):
        out = poly_mul(out, f)
    return out


def poly_degree(f: Poly) -> int:
    return max((sum(m) for m in f), default=-1)


class BorelAlgebra:
    """Rational polynomials in the fundamental weights with the Weyl action."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n = rs.rank
        self.W = weyl_group(rs)

    def var(self, j: int) -> Poly:
        return {tuple(int(k == j) for k in range(self.n)): Fraction(1)}

    def const(self, c) -> Poly:
        return {(0,) * self.n: Fraction(c)} if c else {}

    def linear(self, coeffs) -> Poly:
        out = {}
        for j, c in enumerate(coeffs):
            if c:
                out[tuple(int(k == j) for k in range(self.n))] = Fraction(c)
        return out

    def alpha(self, i: int) -> Poly:
        # alpha_i = sum_k <alpha_i, alpha_k^vee> omega_k
        return self.linear(self.rs.cartan[i])

    def root(self, beta) -> Poly:
        coeffs = [sum(beta[i] * self.rs.cartan[i][k] for i in range(self.n)) for k in range(self.n)]
        return self.linear(coeffs)

    def reflect(self, i: int, f: Poly) -> Poly:
        """``s_i f``: substitute ``omega_i -> omega_i - alpha_i``."""
        sub = poly_add(self.var(i), self.alpha(i), -1)
        powers = [self.const(1)]
        out: Poly = {}
        for m, c in f.items():
            e = m[i]
            while len(powers) <= e:
                powers.append(poly_mul(powers[-1], sub))
            rest = {tuple(0 if k == i else v for k, v in enumerate(m)): c}
            out = poly_add(out, poly_mul(rest, powers[e]))
        return out

    def divided_difference(self, i: int, f: Poly) -> Poly:
        num = poly_add(f, self.reflect(i, f), -1)
        return divide_linear(num, self.alpha(i))

    def top_class(self) -> Poly:
        f = self.const(1)
        for beta in self.rs.positive:
            f = poly_mul(f, self.root(beta))
        order = len(self.W)
        return {m: c / order for m, c in f.items()}

    @cached_property
    def _schubert_cache(self) -> dict[int, Poly]:
        return {self.W.longest: self.top_class()}

    def schubert_polynomial(self, w: int) -> Poly:
        cache = self._schubert_cache
        if w in cache:
            return cache[w]
        W = self.W
        i = next(i for i in range(self.n) if W.lengths[W.right[i][w]] > W.lengths[w])
        f = self.divided_difference(i, self.schubert_polynomial(W.right[i][w]))
        cache[w] = f
        return f

    def apply_word(self, word, f: Poly) -> Poly:
        for i in reversed(word):
            f = self.divided_difference(i, f)
        return f

    def expand(self, f: Poly, k: int, elements=None) -> dict[int, Fraction]:
        """Schubert coefficients of a homogeneous degree-``k`` polynomial."""
        W = self.W
        elements = elements if elements is not None else [u for u in range(len(W)) if W.lengths[u] == k]
        out = {}
        for w in elements:
            g = self.apply_word(W.words[w], f)
            if any(sum(m) for m in g):
                raise DivisionFailure("divided difference did not reach a constant")
            c = g.get((0,) * self.n, Fraction(0))
            if c:
                out[w] = c
        return out

    def evaluate(self, f: Poly, point_values) -> Fraction:
        """Evaluate at a point given by its fundamental-weight coordinates."""
        total = Fraction(0)
        for m, c in f.items():
            t = c
            for v, e in zip(point_values, m):
                if e:
                    t *= v**e
            total += t
        return total


def divide_linear(f: Poly, L: Poly) -> Poly:
    """Exact quotient ``f / L`` for a linear form ``L``."""
    if not f:
        return {}
    n = len(next(iter(L)))
    piv = next(j for j in range(n) if L.get(tuple(int(k == j) for k in range(n)), 0))
    cp = L[tuple(int(k == piv) for k in range(n))]
    rest = {m: c for m, c in L.items() if m[piv] == 0}
    f = dict(f)
    q: Poly = {}
    while f:
        m = max(f, key=lambda t: (t[piv], t))
        if m[piv] == 0:
            raise DivisionFailure("polynomial is not divisible by the root")
        c = f[m] / cp
        qm = tuple(v - 1 if k == piv else v for k, v in enumerate(m))
        q[qm] = q.get(qm, 0) + c
        f = poly_add(f, {m: f[m]}, -1)
        f = poly_add(f, poly_mul({qm: c}, rest), -1)
    return {m: c for m, c in q.items() if c}


def divided_difference(rs: RootSystem, i: int, f: Poly) -> Poly:
    return BorelAlgebra(rs).divided_difference(i, f)


# ---------------------------------------------------------------------------
# orbit model


class OrbitModel:
    """Polynomials restricted to the regular orbit ``W . rho``.

    A function is a list indexed by Weyl elements ``u`` (the point ``u rho``).
    """

    def __init__(self, rs: RootSystem, bound: int = DEFAULT_BOUND):
        self.rs = rs
        self.W = weyl_group(rs, bound)
        W = self.W
        n = rs.rank
        half = [rs.gram[j][j] // 2 for j in range(n)]
        self.root_values = [sum(b[j] * half[j] for j in range(n)) for b in rs.roots]
        simple_idx = [rs.root_index[rs.simple(i)] for i in range(n)]
        # (alpha_i, u rho) = (u^-1 alpha_i, rho)
        self.simple_values = []
        for u in range(len(W)):
            pinv = W.perms[W.inverse[u]]
            self.simple_values.append([self.root_values[pinv[simple_idx[i]]] for i in range(n)])
        self._plans: dict[tuple[int, ...], list] = {}
        self._schubert: dict[int, list[Fraction]] = {}

    def __len__(self):
        return len(self.W)

    def linear(self, root_coords) -> list[Fraction]:
        """A linear form given in simple-root coordinates."""
        return [sum((Fraction(c) * v for c, v in zip(root_coords, sv) if c), Fraction(0)) for sv in self.simple_values]

    def omega(self, j: int) -> list[Fraction]:
        return self.linear(self.rs.weights_in_roots[j])

    def root(self, k: int) -> list[int]:
        """Values of the root with index ``k`` (into ``rs.roots``)."""
        W = self.W
        return [self.root_values[W.perms[W.inverse[u]][k]] for u in range(len(W))]

    def divided_difference(self, i: int, f):
        left = self.W.left[i]
        sv = self.simple_values
        return [Fraction(f[u] - f[left[u]], sv[u][i]) for u in range(len(f))]

    def top_class(self) -> list[Fraction]:
        W = self.W
        npos = len(self.rs.positive)
        order = len(W)
        out = []
        for u in range(order):
            pinv = W.perms[W.inverse[u]]
            val = 1
            for k in range(npos):
                val *= self.root_values[pinv[k]]
            out.append(Fraction(val, order))
        return out

    def schubert(self, w: int) -> list[Fraction]:
        cache = self._schubert
        W = self.W
        if not cache:
            cache[W.longest] = self.top_class()
        chain = []
        u = w
        while u not in cache:
            i = next(i for i in range(self.rs.rank) if W.lengths[W.right[i][u]] > W.lengths[u])
            chain.append((u, i))
            u = W.right[i][u]
        for u, i in reversed(chain):
            cache[u] = self.divided_difference(i, cache[W.right[i][u]])
        return cache[w]

    def _plan(self, word):
        """Point sets for evaluating ``d_word f`` at ``rho``."""
        word = tuple(word)
        if word in self._plans:
            return self._plans[word]
        left = self.W.left
        sv = self.simple_values
        levels = []
        pts = [0]
        for i in word:
            pos = {y: k for k, y in enumerate(pts)}
            nxt = list(pts)
            for y in pts:
                z = left[i][y]
                if z not in pos:
                    pos[z] = len(nxt)
                    nxt.append(z)
            steps = [(pos[y], pos[left[i][y]], sv[y][i]) for y in pts]
            levels.append(steps)
            pts = nxt
        plan = (levels, pts)
        self._plans[word] = plan
        return plan

    def apply_word_at_base(self, word, values_on) -> Fraction:
        """``(d_word f)(rho)``, where ``values_on(points)`` returns ``f`` on points."""
        levels, pts = self._plan(word)
        vals = values_on(pts)
        for steps in reversed(levels):
            vals = [Fraction(vals[a] - vals[b], d) for a, b, d in steps]
        return vals[0]

    def expand(self, f, elements) -> dict[int, Fraction]:
        out = {}
        for w in elements:
            c = self.apply_word_at_base(self.W.words[w], lambda pts: [f[y] for y in pts])
            if c:
                out[w] = c
        return out


_ORBIT_CACHE: dict[str, OrbitModel] = {}


def orbit_model(rs: RootSystem) -> OrbitModel:
    if rs.label not in _ORBIT_CACHE:
        _ORBIT_CACHE[rs.label] = OrbitModel(rs)
    return _ORBIT_CACHE[rs.label]


# ---------------------------------------------------------------------------
# Chow rings of G/P in the Schubert basis


def _to_int(c: Fraction, what: str) -> int:
    if c.denominator != 1:
        raise IntegralityFailure(f"non-integral structure constant {c} for {what}")
    return c.numerator


def _cache_path(Q: ParabolicQuotient) -> Path | None:
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    marked = "-".join(str(i) for i in Q.marked)
    return Path(d) / f"schubert_{Q.rs.kind}{Q.rs.rank}_P{marked}.json"


def structure_constants(Q: ParabolicQuotient, order_seed: int | None = None) -> dict[tuple[int, int], dict[int, int]]:
    """Integral structure constants in the Schubert basis (indices into ``Q.reps``).

    ``order_seed`` shuffles the evaluation order; the result does not depend
    on it.
    """
    model = orbit_model(Q.rs)
    W = Q.W
    reps = Q.reps
    by_len: dict[int, list[int]] = {}
    for k, u in enumerate(reps):
        by_len.setdefault(W.lengths[u], []).append(k)
    vecs = [model.schubert(u) for u in reps]
    pairs = [(a, b) for a in range(len(reps)) for b in range(a, len(reps)) if W.lengths[reps[a]] + W.lengths[reps[b]] <= Q.dim]
    if order_seed is not None:
        import random

        random.Random(order_seed).shuffle(pairs)
    table: dict[tuple[int, int], dict[int, int]] = {}
    for a, b in pairs:
        fa, fb = vecs[a], vecs[b]
        ell = W.lengths[reps[a]] + W.lengths[reps[b]]
        row = {}
        for c in by_len.get(ell, []):
            val = model.apply_word_at_base(W.words[reps[c]], lambda pts: [fa[y] * fb[y] for y in pts])
            n = _to_int(val, f"{Q.names()[a]} * {Q.names()[b]}")
            if n < 0:
                raise IntegralityFailure(f"negative structure constant {n}")
            if n:
                row[c] = n
        if row:
            table[(a, b)] = row
    return dict(sorted(table.items()))


def _table_to_json(Q: ParabolicQuotient, table) -> str:
    doc = {
        "group": Q.rs.label,
        "marked": list(Q.marked),
        "basis": Q.names(),
        "codims": Q.lengths(),
        "products": [[a, b, sorted([c, n] for c, n in row.items())] for (a, b), row in sorted(table.items())],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _table_from_json(text: str):
    doc = json.loads(text)
    return {(a, b): {c: n for c, n in row} for a, b, row in doc["products"]}, doc


def schubert_basis(rs: RootSystem, marked, bound: int = DEFAULT_BOUND) -> GradedAlgebra:
    """Integral Chow ring of ``G/P`` in its Schubert basis."""
    Q = ParabolicQuotient(rs, marked, bound)
    path = _cache_path(Q)
    table = None
    if path is not None and path.exists():
        table, doc = _table_from_json(path.read_text())
        if doc["basis"] != Q.names():
            table = None
    if table is None:
        table = structure_constants(Q)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(_table_to_json(Q, table))
            os.replace(tmp, path)
    A = GradedAlgebra(
        Q.label,
        Q.names(),
        Q.lengths(),
        table,
        Q.dim,
        {0: 1},
        Q.rep_index[Q.top],
        ZZ,
    )
    A.provenance = {"kind": "gp", "quotient": Q}
    return A


_GP_CACHE: dict[tuple[str, tuple[int, ...]], GradedAlgebra] = {}


def gp_algebra(group: str, marked) -> GradedAlgebra:
    kind, rank = group[0].upper(), int(group[1:])
    key = (f"{kind}{rank}", tuple(sorted(marked)))
    if key not in _GP_CACHE:
        _GP_CACHE[key] = schubert_basis(build_root_system(kind, rank), marked)
    return _GP_CACHE[key]


def divisor_class(A: GradedAlgebra, node: int | None = None) -> RingElement:
    """Schubert divisor ``sigma_{s_node}``; for a maximal parabolic this is H."""
    Q: ParabolicQuotient = A.provenance["quotient"]
    if node is None:
        if len(Q.marked) != 1:
            raise ValueError("specify the divisor node for a non-maximal parabolic")
        node = Q.marked[0]
    return A.basis(f"s{node}")


def chevalley_multiply(A: GradedAlgebra, node: int, c: RingElement) -> RingElement:
    """Multiply by the divisor ``omega_node`` using Chevalley's rule.

    ``omega_i . sigma_w = sum <omega_i, beta^vee> sigma_{w s_beta}`` over
    positive roots ``beta`` with ``l(w s_beta) = l(w) + 1`` and
    ``w s_beta`` again a minimal coset representative.
    """
    Q: ParabolicQuotient = A.provenance["quotient"]
    if node not in Q.marked:
        raise ValueError(f"node {node} is not marked in {Q.label}")
    W = Q.W
    rs = Q.rs
    refl = W.reflections
    out: dict[int, int] = {}
    for k, coef in c.coeffs.items():
        w = Q.reps[k]
        lw = W.lengths[w]
        for b, beta in enumerate(rs.positive):
            pairing = rs.fundamental_weight_pairing(node - 1, beta)
            if not pairing:
                continue
            v = W.multiply(w, refl[b])
            if W.lengths[v] == lw + 1 and v in Q.rep_index:
                t = Q.rep_index[v]
                out[t] = out.get(t, 0) + coef * pairing
    return RingElement(A, out)


def degree_of_divisor_power(A: GradedAlgebra, power: int, node: int | None = None) -> dict:
    """``deg(H^power)`` (times the complementary dual class when power < dim) by two methods."""
    Q: ParabolicQuotient = A.provenance["quotient"]
    node = node if node is not None else Q.marked[0]
    H = divisor_class(A, node)
    by_table = A.one()
    by_chev = A.one()
    for _ in range(power):
        by_table = by_table * H
        by_chev = chevalley_multiply(A, node, by_chev)
    from .exactalg import degree

    return {
        "power": power,
        "class": by_table.to_json(),
        "degree": int(degree(by_table)) if power == A.dim else None,
        "cross_checked": by_table == by_chev,
    }


# ---------------------------------------------------------------------------
# tangent data


def _levi_invariant(model: OrbitModel, Q: ParabolicQuotient, f) -> bool:
    for j in Q.levi:
        left = model.W.left[j]
        if any(f[u] != f[left[u]] for u in range(len(f))):
            return False
    return True


def _elementary_on_orbit(model: OrbitModel, root_ids, power: int = 1) -> list[list]:
    """``e_k`` of the ``power``-th powers of the given roots, as orbit functions."""
    n = len(model)
    cols = [model.root(k) for k in root_ids]
    out = [[0] * n for _ in range(len(root_ids) + 1)]
    for u in range(n):
        poly = [1]
        for col in cols:
            x = col[u] ** power
            poly = [a + x * b for a, b in zip(poly + [0], [0] + poly)]
        for k, c in enumerate(poly):
            out[k][u] = c
    return out


def expand_in_gp(A: GradedAlgebra, f, degree: int) -> RingElement:
    """Write a W_P-invariant orbit function of the given degree in the Schubert basis."""
    Q: ParabolicQuotient = A.provenance["quotient"]
    model = orbit_model(Q.rs)
    if degree > Q.dim:
        # invariant classes above dim G/P vanish in the pullback image
        return A.zero()
    if not _levi_invariant(model, Q, f):
        raise NotInPullbackImage("class is not invariant under the Levi Weyl group")
    targets = [u for u in Q.reps if Q.W.lengths[u] == degree]
    coeffs = model.expand(f, targets)
    return RingElement(A, {Q.rep_index[u]: _to_int(c, "tangent class") for u, c in coeffs.items()})


def gp_tangent_roots(A: GradedAlgebra) -> VirtualBundle:
    """Tangent bundle of G/P: roots ``beta`` in the unipotent radical, total class in CH(G/P)."""
    Q: ParabolicQuotient = A.provenance["quotient"]
    model = orbit_model(Q.rs)
    elem = _elementary_on_orbit(model, Q.tangent_positive)
    series = A.zero()
    for k in range(0, Q.dim + 1):
        series = series + expand_in_gp(A, elem[k], k)

    def powered(p: int) -> RingElement:
        return powered_class_via_roots(A, p)

    return VirtualBundle(series=series, rank=Q.dim, root_powered=powered, label=f"T({Q.label})")


def powered_class_via_roots(A: GradedAlgebra, p: int) -> RingElement:
    """``prod (1 + beta^(p-1))`` over tangent roots, computed on the orbit."""
    Q: ParabolicQuotient = A.provenance["quotient"]
    model = orbit_model(Q.rs)
    q = p - 1
    elem = _elementary_on_orbit(model, Q.tangent_positive, q)
    out = A.zero()
    for k in range(0, Q.dim // q + 1):
        out = out + expand_in_gp(A, elem[k], k * q)
    return out


def tangent_root_count(A: GradedAlgebra) -> int:
    return len(A.provenance["quotient"].tangent_positive)
