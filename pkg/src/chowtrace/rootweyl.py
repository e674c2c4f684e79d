"""Root systems, Weyl groups and parabolic quotients (Bourbaki numbering).

Numbering table (node i is simple root alpha_i, "long"/"short" by norm):

    A_n   1 - 2 - ... - n
    B_n   1 - ... - (n-1) => n          alpha_n short
    C_n   1 - ... - (n-1) <= n          alpha_n long
    D_n   1 - ... - (n-2) < (n-1), n    fork at n-2
    E_n   1 - 3 - 4 - 5 - ... - n, 2 attached to 4
    F_4   1 - 2 => 3 - 4                alpha_1, alpha_2 long
    G_2   1 <= 2                        alpha_1 short

The invariant form is scaled so short roots have squared length 2; all
pairings used below are then integers.

A parabolic is named by the *marked* simple roots, as in ``F4/P4``:
``P_i`` is the maximal parabolic whose Levi omits node ``i``, and marking
every node gives the Borel subgroup.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod


class UnknownType(ValueError):
    pass


class BoundExceeded(RuntimeError):
    pass


DEFAULT_BOUND = 10**6

FUNDAMENTAL_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}


def fundamental_degrees(kind: str, rank: int) -> tuple[int, ...]:
    if kind == "A":
        return tuple(range(2, rank + 2))
    if kind in "BC":
        return tuple(range(2, 2 * rank + 1, 2))
    if kind == "D":
        return tuple(sorted(list(range(2, 2 * rank - 1, 2)) + [rank]))
    return FUNDAMENTAL_DEGREES[f"{kind}{rank}"]


def _gram(kind: str, n: int) -> list[list[int]]:
    g = [[0] * n for _ in range(n)]

    def link(i, j, v):
        g[i - 1][j - 1] = g[j - 1][i - 1] = v

    if kind == "A" and n >= 1:
        for i in range(1, n + 1):
            g[i - 1][i - 1] = 2
        for i in range(1, n):
            link(i, i + 1, -1)
    elif kind == "B" and n >= 2:
        for i in range(1, n):
            g[i - 1][i - 1] = 4
        g[n - 1][n - 1] = 2
        for i in range(1, n):
            link(i, i + 1, -2)
    elif kind == "C" and n >= 2:
        for i in range(1, n):
            g[i - 1][i - 1] = 2
        g[n - 1][n - 1] = 4
        for i in range(1, n - 1):
            link(i, i + 1, -1)
        link(n - 1, n, -2)
    elif kind == "D" and n >= 3:
        for i in range(1, n + 1):
            g[i - 1][i - 1] = 2
        for i in range(1, n - 1):
            link(i, i + 1, -1)
        link(n - 2, n, -1)
    elif kind == "E" and n in (6, 7, 8):
        for i in range(1, n + 1):
            g[i - 1][i - 1] = 2
        link(1, 3, -1)
        link(2, 4, -1)
        for i in range(3, n):
            link(i, i + 1, -1)
    elif kind == "F" and n == 4:
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        link(1, 2, -2)
        link(2, 3, -2)
        link(3, 4, -1)
    elif kind == "G" and n == 2:
        g[0][0], g[1][1] = 2, 6
        link(1, 2, -3)
    else:
        raise UnknownType(f"no root system of type {kind}{n}")
    return g


@dataclass
class RootSystem:
    kind: str
    rank: int
    gram: list[list[int]]
    positive: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @cached_property
    def cartan(self) -> list[list[int]]:
        """Bourbaki Cartan matrix ``n_ij = <alpha_i, alpha_j^vee>``."""
        g = self.gram
        return [[2 * g[i][j] // g[j][j] for j in range(self.rank)] for i in range(self.rank)]

    def form(self, a, b) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def coroot_pairing(self, beta, i: int) -> int:
        """``<beta, alpha_i^vee>`` for ``beta`` in simple-root coordinates."""
        g = self.gram
        return sum(beta[k] * g[k][i] for k in range(self.rank)) * 2 // g[i][i]

    def reflect(self, beta, i: int) -> tuple[int, ...]:
        c = self.coroot_pairing(beta, i)
        out = list(beta)
        out[i] -= c
        return tuple(out)

    def simple(self, i: int) -> tuple[int, ...]:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    @cached_property
    def roots(self) -> list[tuple[int, ...]]:
        """All roots: positives in closure order, then their negatives."""
        return list(self.positive) + [tuple(-c for c in r) for r in self.positive]

    @cached_property
    def root_index(self) -> dict[tuple[int, ...], int]:
        return {r: k for k, r in enumerate(self.roots)}

    def is_positive(self, k: int) -> bool:
        return k < len(self.positive)

    def weyl_order(self) -> int:
        return prod(fundamental_degrees(self.kind, self.rank))

    def fundamental_weight_pairing(self, i: int, beta) -> int:
        """``<omega_i, beta^vee>``: the i-th coefficient of ``beta^vee`` in simple coroots."""
        nb = self.form(beta, beta)
        return beta[i] * self.gram[i][i] // nb

    @cached_property
    def weights_in_roots(self) -> list[list[Fraction]]:
        """Row j gives omega_j in simple-root coordinates."""
        n = self.rank
        # omega_j = sum_k M[j][k] alpha_k with sum_k M[j][k] n_{k i} = delta_{ji}
        N = [[Fraction(v) for v in row] for row in self.cartan]
        # solve M N = I  ->  N^T M^T = I
        A = [[N[k][i] for k in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if A[r][col] != 0)
            A[col], A[piv] = A[piv], A[col]
            pv = A[col][col]
            A[col] = [v / pv for v in A[col]]
            for r in range(n):
                if r != col and A[r][col] != 0:
                    f = A[r][col]
                    A[r] = [a - f * b for a, b in zip(A[r], A[col])]
        Mt = [row[n:] for row in A]
        return [[Mt[k][j] for k in range(n)] for j in range(n)]


def build_root_system(kind: str, rank: int) -> RootSystem:
    kind = kind.upper()
    if kind not in "ABCDEFG" or len(kind) != 1:
        raise UnknownType(f"unknown type {kind!r}")
    g = _gram(kind, rank)
    rs = RootSystem(kind, rank, g)
    seen = {rs.simple(i) for i in range(rank)}
    order = [rs.simple(i) for i in range(rank)]
    queue = deque(order)
    while queue:
        beta = queue.popleft()
        for i in range(rank):
            gamma = rs.reflect(beta, i)
            if all(c >= 0 for c in gamma) and gamma not in seen:
                seen.add(gamma)
                order.append(gamma)
                queue.append(gamma)
    rs.positive = sorted(order, key=lambda r: (sum(r), tuple(-c for c in r)))
    return rs


# ---------------------------------------------------------------------------
# Weyl groups


class WeylGroup:
    """The Weyl group as permutations of the root set.

    Element ``u`` is stored as the tuple ``perm`` with ``perm[k]`` the
    index of ``u(root_k)``.  Elements are numbered in breadth-first order
    from the identity, using right multiplication by simple reflections, so
    every element carries a canonical reduced word.
    """

    def __init__(self, rs: RootSystem, bound: int = DEFAULT_BOUND):
        expected = rs.weyl_order()
        if expected > bound:
            raise BoundExceeded(f"|W({rs.label})| = {expected} exceeds bound {bound}")
        self.rs = rs
        roots = rs.roots
        idx = rs.root_index
        self.simple_perms = []
        for i in range(rs.rank):
            self.simple_perms.append(tuple(idx[rs.reflect(r, i)] for r in roots))
        npos = len(rs.positive)
        ident = tuple(range(len(roots)))
        self.perms = [ident]
        self.words: list[tuple[int, ...]] = [()]
        self.index = {ident: 0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            pu = self.perms[u]
            for i, s in enumerate(self.simple_perms):
                v = tuple(pu[s[k]] for k in range(len(pu)))
                if v not in self.index:
                    self.index[v] = len(self.perms)
                    self.perms.append(v)
                    self.words.append(self.words[u] + (i,))
                    queue.append(self.index[v])
                    if len(self.perms) > bound:
                        raise BoundExceeded(f"more than {bound} Weyl group elements")
        self.lengths = [sum(1 for k in range(npos) if p[k] >= npos) for p in self.perms]
        n = len(self.perms)
        self.right = [[self.index[tuple(p[s[k]] for k in range(len(p)))] for p in self.perms] for s in self.simple_perms]
        self.left = [[self.index[tuple(s[p[k]] for k in range(len(p)))] for p in self.perms] for s in self.simple_perms]
        inv = [0] * n
        for u, p in enumerate(self.perms):
            q = [0] * len(p)
            for k, v in enumerate(p):
                q[v] = k
            inv[u] = self.index[tuple(q)]
        self.inverse = inv
        self.longest = max(range(n), key=lambda u: self.lengths[u])

    def __len__(self):
        return len(self.perms)

    def length(self, u: int) -> int:
        return self.lengths[u]

    def word(self, u: int) -> tuple[int, ...]:
        return self.words[u]

    def name(self, u: int) -> str:
        w = self.words[u]
        return "1" if not w else "".join(f"s{i + 1}" for i in w)

    def multiply(self, u: int, v: int) -> int:
        pu, pv = self.perms[u], self.perms[v]
        return self.index[tuple(pu[pv[k]] for k in range(len(pu)))]

    def from_word(self, word) -> int:
        u = 0
        for i in word:
            u = self.right[i][u]
        return u

    def act_on_root(self, u: int, k: int) -> int:
        return self.perms[u][k]

    @cached_property
    def reflections(self) -> dict[int, int]:
        """Positive root index -> Weyl element ``s_beta``."""
        rs = self.rs
        out = {}
        for k, beta in enumerate(rs.positive):
            nb = rs.form(beta, beta)
            perm = []
            for r in rs.roots:
                c = 2 * rs.form(r, beta) // nb
                perm.append(rs.root_index[tuple(a - c * b for a, b in zip(r, beta))])
            out[k] = self.index[tuple(perm)]
        return out


def enumerate_weyl(rs: RootSystem, bound: int = DEFAULT_BOUND) -> WeylGroup:
    return WeylGroup(rs, bound)


_WEYL_CACHE: dict[str, WeylGroup] = {}


def weyl_group(rs: RootSystem, bound: int = DEFAULT_BOUND) -> WeylGroup:
    if rs.label not in _WEYL_CACHE:
        _WEYL_CACHE[rs.label] = WeylGroup(rs, bound)
    W = _WEYL_CACHE[rs.label]
    return W


class ParabolicQuotient:
    """``G/P`` for the parabolic with marked nodes ``marked`` (1-based)."""

    def __init__(self, rs: RootSystem, marked, bound: int = DEFAULT_BOUND):
        marked = tuple(sorted(set(marked)))
        if not marked or any(not 1 <= i <= rs.rank for i in marked):
            raise ValueError(f"bad parabolic {marked} for {rs.label}")
        self.rs = rs
        self.marked = marked
        self.levi = tuple(i for i in range(rs.rank) if i + 1 not in marked)
        self.W = weyl_group(rs, bound)
        W = self.W
        npos = len(rs.positive)
        levi_set = set(self.levi)
        self.levi_positive = [k for k, b in enumerate(rs.positive) if all(b[i] == 0 for i in range(rs.rank) if i not in levi_set)]
        self.tangent_positive = [k for k in range(npos) if k not in set(self.levi_positive)]
        simple_idx = [rs.root_index[rs.simple(i)] for i in range(rs.rank)]
        # minimal left-coset representatives: u(alpha_j) > 0 for Levi nodes j
        reps = [u for u in range(len(W)) if all(W.perms[u][simple_idx[j]] < npos for j in self.levi)]
        reps.sort(key=lambda u: (W.lengths[u], u))
        self.reps = reps
        self.rep_index = {u: k for k, u in enumerate(reps)}
        self.levi_order = sum(1 for u in range(len(W)) if all(i in levi_set for i in W.words[u]))

    @property
    def label(self) -> str:
        return f"{self.rs.label}/P" + ",".join(str(i) for i in self.marked)

    @property
    def dim(self) -> int:
        return len(self.tangent_positive)

    def lengths(self) -> list[int]:
        return [self.W.lengths[u] for u in self.reps]

    def names(self) -> list[str]:
        return [self.W.name(u) for u in self.reps]

    @cached_property
    def top(self) -> int:
        return max(self.reps, key=lambda u: self.W.lengths[u])

    def minimal_rep(self, u: int) -> int:
        """Minimal representative of the coset ``u W_P``."""
        W = self.W
        npos = len(self.rs.positive)
        simple_idx = [self.rs.root_index[self.rs.simple(i)] for i in range(self.rs.rank)]
        changed = True
        while changed:
            changed = False
            for j in self.levi:
                if W.perms[u][simple_idx[j]] >= npos:
                    u = W.right[j][u]
                    changed = True
        return u


def minimal_coset_reps(rs: RootSystem, marked, bound: int = DEFAULT_BOUND) -> ParabolicQuotient:
    return ParabolicQuotient(rs, marked, bound)


def poincare_polynomial(Q: ParabolicQuotient) -> list[int]:
    out = [0] * (Q.dim + 1)
    for ell in Q.lengths():
        out[ell] += 1
    return out


def q_integer_product(degrees_num, degrees_den) -> list[int]:
    """Coefficients of prod [d]_q over numerator degrees / prod over denominator."""

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    num = [1]
    for d in degrees_num:
        num = mul(num, [1] * d)
    for d in degrees_den:
        div = [1] * d
        quot = [0] * (len(num) - d + 1)
        rem = list(num)
        for k in range(len(quot)):
            c = rem[k]
            quot[k] = c
            for j in range(d):
                rem[k + j] -= c * div[j]
        if any(rem):
            raise ArithmeticError("q-integer quotient is not polynomial")
        num = quot
    return num


def parse_group(label: str) -> tuple[str, int]:
    label = label.strip().upper()
    return label[0], int(label[1:])
