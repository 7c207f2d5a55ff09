"""Cartan and Coxeter matrices of triangular algebras, and closed-form Coxeter polynomials.

Matrices are plain tuples of tuples of Python ints.  Vertices of quivers and
posets are numbered ``1..n`` in the public types and ``0..n-1`` internally.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegreeMismatch,
    DomainError,
    MalformedQuiver,
    NotAPoset,
    NotUnimodular,
)
from .polycore import (
    ONE,
    T,
    IntPolynomial,
    _v,
    cyclotomic_factor,
    v_poly,
)

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_PERIOD_BOUND = 10_000


# ---------------------------------------------------------------------------
# input types

@dataclass(frozen=True)
class Quiver:
    """Finite acyclic quiver without relations; arrows are ``(source, target)``."""

    n: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if self.n < 1:
            raise MalformedQuiver("a quiver needs at least one vertex")
        for s, t in self.arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise MalformedQuiver(f"arrow {s}->{t} leaves the vertex range 1..{self.n}")
            if s == t:
                raise MalformedQuiver(f"loop at vertex {s}")
        if _topological_order(self.n, [(s - 1, t - 1) for s, t in self.arrows]) is None:
            raise MalformedQuiver("quiver has an oriented cycle")


@dataclass(frozen=True)
class TreeQuiver(Quiver):
    """Quiver whose underlying graph is a tree."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.arrows) != self.n - 1:
            raise MalformedQuiver(f"a tree on {self.n} vertices has {self.n - 1} edges, got {len(self.arrows)}")
        if not _connected(self.n, self.undirected_edges()):
            raise MalformedQuiver("underlying graph is not connected")

    @property
    def edges(self):
        return self.arrows

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [(s - 1, t - 1) for s, t in self.arrows]

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.undirected_edges():
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def induced(self, vertices: Sequence[int]) -> "TreeQuiver":
        """Subquiver on a connected set of (1-based) vertices, relabelled in the given order."""
        index = {v: i + 1 for i, v in enumerate(vertices)}
        arrows = [(index[s], index[t]) for s, t in self.arrows if s in index and t in index]
        return TreeQuiver(len(vertices), tuple(arrows))

    def reoriented(self, rng: random.Random) -> "TreeQuiver":
        arrows = [(s, t) if rng.random() < 0.5 else (t, s) for s, t in self.arrows]
        return TreeQuiver(self.n, tuple(arrows))


@dataclass(frozen=True)
class PosetSpec:
    """Finite poset given by covering pairs ``(x, y)`` meaning ``x < y``."""

    n: int
    relations: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        if self.n < 0:
            raise NotAPoset("negative element count")
        for x, y in self.relations:
            if not (1 <= x <= self.n and 1 <= y <= self.n):
                raise NotAPoset(f"relation {x}<{y} outside 1..{self.n}")


@dataclass(frozen=True)
class CartanMatrix:
    """Unimodular Cartan matrix with a vertex order making it unit upper triangular."""

    matrix: Matrix
    order: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.matrix)

    def principal(self, vertices: Sequence[int]) -> "CartanMatrix":
        """Cartan matrix of the full subcategory on the given (0-based) vertices."""
        vs = list(vertices)
        sub = tuple(tuple(self.matrix[i][j] for j in vs) for i in vs)
        return cartan_from_matrix(sub)


@dataclass(frozen=True)
class CoxeterMatrix:
    matrix: Matrix

    @property
    def n(self) -> int:
        return len(self.matrix)


# ---------------------------------------------------------------------------
# graph helpers

def _topological_order(n: int, arcs: list[tuple[int, int]]) -> list[int] | None:
    indeg = [0] * n
    out: list[list[int]] = [[] for _ in range(n)]
    for s, t in arcs:
        out[s].append(t)
        indeg[t] += 1
    queue = deque(sorted(i for i in range(n) if indeg[i] == 0))
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order if len(order) == n else None


def _connected(n: int, edges: list[tuple[int, int]]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


# ---------------------------------------------------------------------------
# Cartan matrices

def cartan_from_matrix(m: Sequence[Sequence[int]]) -> CartanMatrix:
    """Wrap an integer matrix, checking it is unit triangular after reordering."""
    mat = tuple(tuple(int(x) for x in row) for row in m)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise DomainError("Cartan matrix must be square")
    if any(mat[i][i] != 1 for i in range(n)):
        raise NotUnimodular("Cartan matrix needs unit diagonal")
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j and mat[i][j]]
    order = _topological_order(n, arcs)
    if order is None:
        raise NotUnimodular("Cartan matrix is not triangular under any vertex order")
    return CartanMatrix(mat, tuple(order))


def cartan_of_quiver(q: Quiver) -> CartanMatrix:
    """Path-count matrix: entry (i, j) is the number of directed paths i -> j."""
    n = q.n
    arcs = [(s - 1, t - 1) for s, t in q.arrows]
    order = _topological_order(n, arcs)
    succ: list[list[int]] = [[] for _ in range(n)]
    for s, t in arcs:
        succ[s].append(t)
    paths = [[0] * n for _ in range(n)]
    for src in range(n):
        paths[src][src] = 1
    for v in reversed(order):
        for w in succ[v]:
            for j in range(n):
                paths[v][j] += paths[w][j]
    return CartanMatrix(tuple(tuple(r) for r in paths), tuple(order))


def cartan_of_tree(q: TreeQuiver) -> CartanMatrix:
    if not isinstance(q, TreeQuiver):
        q = TreeQuiver(q.n, q.arrows)
    return cartan_of_quiver(q)


def cartan_of_poset(p: PosetSpec) -> CartanMatrix:
    """Zeta matrix of the order relation generated by the covering pairs."""
    n = p.n
    rel = [[i == j for j in range(n)] for i in range(n)]
    for x, y in p.relations:
        rel[x - 1][y - 1] = True
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                raise NotAPoset(f"elements {i + 1} and {j + 1} are identified by the closure")
    mat = tuple(tuple(int(rel[i][j]) for j in range(n)) for i in range(n))
    return cartan_from_matrix(mat)


# ---------------------------------------------------------------------------
# exact linear algebra

def _matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _inverse_exact(m: Matrix) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise NotUnimodular("Cartan matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def coxeter_matrix(c: CartanMatrix) -> CoxeterMatrix:
    """Integer matrix ``-C^{-T} C``."""
    inv = _inverse_exact(c.matrix)
    if any(x.denominator != 1 for row in inv for x in row):
        raise NotUnimodular("Cartan matrix is not unimodular")
    inv_t = tuple(tuple(int(inv[j][i]) for j in range(c.n)) for i in range(c.n))
    prod = _matmul(inv_t, c.matrix)
    return CoxeterMatrix(tuple(tuple(-x for x in row) for row in prod))


def char_poly_exact(m: CoxeterMatrix | Sequence[Sequence[int]]) -> IntPolynomial:
    """``det(T I - A)`` by the division-free Berkowitz algorithm."""
    a = m.matrix if isinstance(m, CoxeterMatrix) else tuple(tuple(r) for r in m)
    n = len(a)
    # poly holds coefficients in descending order.
    poly = [1]
    for r in range(n):
        arr = a[r][r]
        if r == 0:
            col = [1, -arr]
        else:
            row = a[r][:r]
            vec = [a[i][r] for i in range(r)]
            col = [1, -arr]
            # successive -R A^k C for the leading r x r block
            for _ in range(r):
                col.append(-sum(x * y for x, y in zip(row, vec)))
                vec = [sum(a[i][j] * vec[j] for j in range(r)) for i in range(r)]
            col = col[: r + 2]
        # Toeplitz product: new coefficient k = sum_j col[k - j] * poly[j].
        new = [0] * (r + 2)
        for k in range(r + 2):
            s = 0
            for j in range(max(0, k - len(col) + 1), min(k, r) + 1):
                s += col[k - j] * poly[j]
            new[k] = s
        poly = new
    return IntPolynomial(reversed(poly))


def coxeter_polynomial(c: CartanMatrix) -> IntPolynomial:
    return char_poly_exact(coxeter_matrix(c))


def tree_coxeter_polynomial(q: TreeQuiver) -> IntPolynomial:
    return coxeter_polynomial(cartan_of_tree(q))


def coxeter_period_exact(m: CoxeterMatrix, bound: int = DEFAULT_PERIOD_BOUND) -> int | float:
    """Multiplicative order of the Coxeter matrix, or ``math.inf`` if none up to ``bound``.

    A finite order forces every eigenvalue to be a root of unity, so the
    order divides the lcm ``L`` of the cyclotomic indices of the
    characteristic polynomial and exists iff ``Phi^L == I``.
    """
    if bound < 1:
        raise DomainError("bound must be positive")
    fac = cyclotomic_factor(char_poly_exact(m))
    if not fac.is_cyclotomic:
        return math.inf
    big = fac.lcm_of_indices()
    ident = _identity(m.n)
    if _matpow(m.matrix, big) != ident:
        return math.inf
    order = big
    for p in sorted(_prime_factors(big)):
        while order % p == 0 and _matpow(m.matrix, order // p) == ident:
            order //= p
    return order if order <= bound else math.inf


def _prime_factors(n: int) -> set[int]:
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _matpow(a: Matrix, k: int) -> Matrix:
    result = _identity(len(a))
    base = a
    while k:
        if k & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        k >>= 1
    return result


def adjacency_char_poly(q: TreeQuiver) -> IntPolynomial:
    """Characteristic polynomial of the symmetric adjacency matrix of the underlying graph."""
    if not isinstance(q, TreeQuiver):
        raise MalformedQuiver("adjacency polynomial is defined here for tree quivers")
    n = q.n
    adj = [[0] * n for _ in range(n)]
    for a, b in q.undirected_edges():
        adj[a][b] += 1
        adj[b][a] += 1
    return char_poly_exact(adj)


# ---------------------------------------------------------------------------
# closed forms

def _check_arms(arms: Sequence[int]) -> list[int]:
    arms = [int(a) for a in arms]
    if not arms:
        raise DomainError("a star needs at least one arm")
    if any(a < 1 for a in arms):
        raise DomainError(f"arm symbols must be >= 1, got {arms}")
    return arms


def star_coxeter(arms: Sequence[int]) -> IntPolynomial:
    """Coxeter polynomial of the star ``[p_1, ..., p_t]`` over a common denominator.

    ``(T+1) prod v_{p_i} - T sum_i v_{p_i - 1} prod_{j != i} v_{p_j}``
    """
    arms = _check_arms(arms)
    full = ONE
    for p in arms:
        full = full * v_poly(p)
    total = (T + 1) * full
    for i, p in enumerate(arms):
        term = _v(p - 1)
        for j, q in enumerate(arms):
            if j != i:
                term = term * v_poly(q)
        total = total - T * term
    return total


def star_coefficient_sum(arms: Sequence[int]) -> int:
    """``chi(1) = prod p_i * (2 - sum (1 - 1/p_i))`` in exact rationals."""
    arms = _check_arms(arms)
    prod = math.prod(arms)
    val = prod * (2 - sum(1 - Fraction(1, p) for p in arms))
    if val.denominator != 1:
        raise ArithmeticError(f"star sum for {arms} is not integral: {val}")
    return int(val)


def _check_weights(weights: Sequence[int], min_len: int = 2) -> list[int]:
    w = [int(x) for x in weights]
    if len(w) < min_len:
        raise DomainError(f"need at least {min_len} weights, got {w}")
    if any(x < 2 for x in w):
        raise DomainError(f"weights must be >= 2, got {w}")
    return w


def canonical_coxeter(weights: Sequence[int]) -> IntPolynomial:
    """``(T-1)^2 prod v_{p_i}``."""
    w = _check_weights(weights)
    out = IntPolynomial([1, -2, 1])
    for p in w:
        out = out * v_poly(p)
    return out


def one_point_extension_poly(chi_b: IntPolynomial, chi_c: IntPolynomial) -> IntPolynomial:
    """``(T+1) chi_B - T chi_C`` for a special one-point extension."""
    if chi_b.degree != chi_c.degree + 1:
        raise DegreeMismatch(f"deg chi_B = {chi_b.degree} must be deg chi_C + 1 = {chi_c.degree + 1}")
    return (T + 1) * chi_b - T * chi_c


def extended_canonical_coxeter(weights: Sequence[int]) -> IntPolynomial:
    w = _check_weights(weights)
    return one_point_extension_poly(canonical_coxeter(w), star_coxeter(w))


def euler_characteristic_weights(weights: Sequence[int]) -> Fraction:
    """``2 - sum(1 - 1/p_i)``; positive domestic, zero tubular, negative wild."""
    w = _check_weights(weights, min_len=1)
    return 2 - sum(1 - Fraction(1, p) for p in w)


# ---------------------------------------------------------------------------
# concrete algebras

def star_tree(arms: Sequence[int]) -> TreeQuiver:
    """Star ``[p_1..p_t]`` with every arrow pointing away from the centre (vertex 1)."""
    arms = _check_arms(arms)
    arrows = []
    nxt = 2
    for p in arms:
        prev = 1
        for _ in range(p - 1):
            arrows.append((prev, nxt))
            prev = nxt
            nxt += 1
    return TreeQuiver(nxt - 1, tuple(arrows))


def path_tree(n: int) -> TreeQuiver:
    return TreeQuiver(n, tuple((i, i + 1) for i in range(1, n)))


def dynkin_tree(kind: str, n: int) -> TreeQuiver:
    kind = kind.upper()
    if kind == "A":
        return path_tree(n)
    if kind == "D":
        if n < 4:
            raise DomainError("D_n needs n >= 4")
        return star_tree([2, 2, n - 2])
    if kind == "E":
        arms = {6: [2, 3, 3], 7: [2, 3, 4], 8: [2, 3, 5]}.get(n)
        if arms is None:
            raise DomainError("E_n needs n in 6, 7, 8")
        return star_tree(arms)
    raise DomainError(f"unknown Dynkin type {kind}")


def d_tilde_tree(n: int) -> TreeQuiver:
    """Extended Dynkin tree of type D~_n (n + 1 vertices)."""
    if n < 4:
        raise DomainError("D~_n needs n >= 4")
    # path 1..n-1, extra leaves n (at 2) and n+1 (at n-2)
    arrows = [(i, i + 1) for i in range(1, n - 1)]
    arrows += [(2, n), (n - 2, n + 1)]
    return TreeQuiver(n + 1, tuple(arrows))


def a_tilde_quiver(p: int, q: int) -> Quiver:
    """Cycle with one source and one sink joined by paths of p and q arrows."""
    if p < 1 or q < 1:
        raise DomainError("A~_{p,q} needs p, q >= 1")
    n = p + q
    sink = n
    arrows = []
    for length_, start in ((p, 2), (q, 2 + p - 1)):
        prev = 1
        for k in range(length_ - 1):
            v = start + k
            arrows.append((prev, v))
            prev = v
        arrows.append((prev, sink))
    return Quiver(n, tuple(arrows))


def canonical_cartan(weights: Sequence[int]) -> CartanMatrix:
    """Cartan matrix of the canonical algebra: source 0, arms, sink; dim Hom(source, sink) = 2."""
    w = _check_weights(weights)
    labels = _canonical_labels(w)
    n = len(labels)
    idx = {lab: i for i, lab in enumerate(labels)}
    c = [[0] * n for _ in range(n)]
    for lab, i in idx.items():
        for lab2, j in idx.items():
            c[i][j] = _canonical_hom(lab, lab2)
    return cartan_from_matrix(c)


def _canonical_labels(w: list[int]) -> list[tuple]:
    labels: list[tuple] = [("source",)]
    for i, p in enumerate(w):
        labels += [("arm", i, k) for k in range(1, p)]
    labels.append(("sink",))
    return labels


def _canonical_hom(x: tuple, y: tuple) -> int:
    if x == y:
        return 1
    if x[0] == "source":
        return 2 if y[0] == "sink" else 1
    if x[0] == "arm":
        if y[0] == "sink":
            return 1
        if y[0] == "arm" and y[1] == x[1] and y[2] > x[2]:
            return 1
    return 0


def extended_canonical_cartan(weights: Sequence[int]) -> CartanMatrix:
    """One-point extension of the canonical algebra by the projective at its source.

    The extension vertex comes first; its row copies the source row.
    """
    base = canonical_cartan(weights).matrix
    n = len(base)
    rows = [[1] + list(base[0])]
    for i in range(n):
        rows.append([0] + list(base[i]))
    return cartan_from_matrix(rows)


def r_ladder_poset(n: int) -> PosetSpec:
    """Ladder poset of R_n.

    Even n = 2m: the grid [m] x [2].  Odd n = 2m + 1: [m+1] x [2] with the
    top-left element removed, so the bottom row is one longer on the left.
    Elements are numbered top row first (left to right), then bottom row.
    """
    if n < 0:
        raise DomainError("R_n needs n >= 0")
    m, odd = divmod(n, 2)
    bottom_len = m + odd
    top_cols = list(range(odd, bottom_len))  # columns occupied by the top row
    top = {c: i + 1 for i, c in enumerate(top_cols)}
    bottom = {c: len(top_cols) + c + 1 for c in range(bottom_len)}
    rel = []
    for c in top_cols:
        if c + 1 in top:
            rel.append((top[c], top[c + 1]))
        rel.append((top[c], bottom[c]))
    for c in range(bottom_len - 1):
        rel.append((bottom[c], bottom[c + 1]))
    return PosetSpec(len(top) + len(bottom), tuple(rel))


def r_ladder_coxeter(n: int) -> IntPolynomial:
    if n < 0:
        raise DomainError("R_n needs n >= 0")
    if n == 0:
        return ONE
    return coxeter_polynomial(cartan_of_poset(r_ladder_poset(n)))


# ---------------------------------------------------------------------------
# text format

def parse_structure_file(text: str) -> TreeQuiver | Quiver | PosetSpec:
    """Parse ``n=<int>`` then ``a->b`` arrow lines or ``a<b`` cover lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise MalformedQuiver("first line must be n=<int>")
    try:
        n = int(lines[0].replace(" ", "")[2:])
    except ValueError:
        raise MalformedQuiver(f"bad vertex count line {lines[0]!r}") from None
    arrows, covers = [], []
    for ln in lines[1:]:
        body = ln.replace(" ", "")
        try:
            if "->" in body:
                a, b = body.split("->")
                arrows.append((int(a), int(b)))
            elif "<" in body:
                a, b = body.split("<")
                covers.append((int(a), int(b)))
            else:
                raise ValueError
        except ValueError:
            raise MalformedQuiver(f"cannot parse line {ln!r}") from None
    if arrows and covers:
        raise MalformedQuiver("file mixes arrows and poset covers")
    if covers or (not arrows and n != 1):
        return PosetSpec(n, tuple(covers))
    if len(arrows) == n - 1:
        return TreeQuiver(n, tuple(arrows))
    return Quiver(n, tuple(arrows))


def format_structure(s: Quiver | PosetSpec) -> str:
    if isinstance(s, PosetSpec):
        body = [f"{x}<{y}" for x, y in s.relations]
    else:
        body = [f"{a}->{b}" for a, b in s.arrows]
    return "\n".join([f"n={s.n}"] + body) + "\n"
