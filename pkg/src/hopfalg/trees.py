"""Tree families, permutations, compositions and counting utilities.

Four tree families are provided, each with a canonical form, a grading and a
bit-exact text grammar:

* :class:`PlanarTree` -- reduced planar rooted trees, graded by leaves
  (counts 1, 1, 3, 11, 45, ...),
* :class:`PlanarBinaryTree` -- graded by leaves (Catalan counts),
* :class:`PlanarUnreducedTree` -- ordered rooted trees, graded by vertices
  (Catalan counts again),
* :class:`RootedTree` -- unordered rooted trees in canonical sorted form,
  graded by vertices (counts 1, 1, 2, 4, 9, 20, ...).

The module also enumerates labeled series-parallel posets at desk scale and
verifies the generating-series identities tying the graded dimensions of the
free dipterous/dendriform algebras to those of their primitive parts.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from hopfalg.core import DegreeBoundError

ENUMERATION_BOUND = 8


# ---------------------------------------------------------------------------
# Planar (reduced) trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class PlanarTree:
    """Reduced planar rooted tree: a leaf, or a node with >= 2 ordered children."""

    children: tuple["PlanarTree", ...] = ()

    def __post_init__(self):
        if len(self.children) == 1:
            raise ValueError("internal vertices of a reduced tree need >= 2 inputs")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return sum(c.leaves for c in self.children)

    def __str__(self) -> str:
        if self.is_leaf:
            return "."
        return "(" + " ".join(str(c) for c in self.children) + ")"


PT_LEAF = PlanarTree()


def graft_planar(parts: Iterable[PlanarTree]) -> PlanarTree:
    """Join k >= 2 planar trees to a new root vertex."""
    parts = tuple(parts)
    if len(parts) < 2:
        raise ValueError("grafting needs at least two trees")
    return PlanarTree(parts)


def ungraft_planar(tree: PlanarTree) -> tuple[PlanarTree, ...]:
    if tree.is_leaf:
        raise ValueError("the leaf tree has no root vertex to remove")
    return tree.children


@dataclass(frozen=True, order=True)
class PlanarBinaryTree:
    """Planar rooted tree with exactly two inputs at every internal vertex."""

    pair: tuple["PlanarBinaryTree", ...] = ()

    def __post_init__(self):
        if self.pair and len(self.pair) != 2:
            raise ValueError("internal vertices must have exactly two inputs")

    @property
    def is_leaf(self) -> bool:
        return not self.pair

    @property
    def left(self) -> "PlanarBinaryTree":
        return self.pair[0]

    @property
    def right(self) -> "PlanarBinaryTree":
        return self.pair[1]

    @property
    def leaves(self) -> int:
        if not self.pair:
            return 1
        return self.left.leaves + self.right.leaves

    @property
    def internal(self) -> int:
        return self.leaves - 1

    def graft(self, other: "PlanarBinaryTree") -> "PlanarBinaryTree":
        return PlanarBinaryTree((self, other))

    def __str__(self) -> str:
        if not self.pair:
            return "."
        return f"({self.left} {self.right})"


PBT_LEAF = PlanarBinaryTree()


@dataclass(frozen=True, order=True)
class PlanarUnreducedTree:
    """Rooted tree with ordered children and no arity restriction."""

    children: tuple["PlanarUnreducedTree", ...] = ()

    @property
    def vertices(self) -> int:
        return 1 + sum(c.vertices for c in self.children)

    def __str__(self) -> str:
        return "[" + " ".join(str(c) for c in self.children) + "]"


PUT_VERTEX = PlanarUnreducedTree()


def graft_unreduced(x: PlanarUnreducedTree,
                    y: PlanarUnreducedTree) -> PlanarUnreducedTree:
    """Attach y as the rightmost child of the root of x."""
    return PlanarUnreducedTree(x.children + (y,))


def phi_pbt_to_put(t: PlanarBinaryTree) -> PlanarUnreducedTree:
    """The grafting-compatible bijection from binary to unreduced planar trees."""
    if t.is_leaf:
        return PUT_VERTEX
    return graft_unreduced(phi_pbt_to_put(t.left), phi_pbt_to_put(t.right))


def standard_labeling(t: PlanarUnreducedTree) -> list[tuple[int, ...]]:
    """Vertex paths in standard label order (root first, then left to right).

    Label k corresponds to entry k-1 of the returned list; a path is the
    sequence of child indices from the root.  For a grafting x v y every
    label inside x precedes every label inside y, which makes standard
    labels coincide with preorder.
    """
    out: list[tuple[int, ...]] = []

    def walk(node: PlanarUnreducedTree, path: tuple[int, ...]) -> None:
        out.append(path)
        for i, child in enumerate(node.children):
            walk(child, path + (i,))

    walk(t, ())
    return out


@dataclass(frozen=True, order=True)
class RootedTree:
    """Non-planar rooted tree; children are kept sorted so the form is canonical."""

    children: tuple["RootedTree", ...] = ()

    @staticmethod
    def make(children: Iterable["RootedTree"]) -> "RootedTree":
        return RootedTree(tuple(sorted(children)))

    @property
    def vertices(self) -> int:
        return 1 + sum(c.vertices for c in self.children)

    def __str__(self) -> str:
        return "[" + " ".join(str(c) for c in self.children) + "]"


UT_VERTEX = RootedTree()


def automorphism_count(t: RootedTree) -> int:
    """Order of the root-fixing automorphism group."""
    total = 1
    for child, mult in _group(t.children):
        total *= automorphism_count(child) ** mult * math.factorial(mult)
    return total


def _group(items: tuple) -> list[tuple[object, int]]:
    out: list[tuple[object, int]] = []
    for item in items:
        if out and out[-1][0] == item:
            out[-1] = (item, out[-1][1] + 1)
        else:
            out.append((item, 1))
    return out


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def compositions(total: int, parts: int, minimum: int = 0) -> Iterator[tuple[int, ...]]:
    """Ordered sequences of `parts` integers >= minimum summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


@lru_cache(maxsize=None)
def planar_trees(n: int) -> tuple[PlanarTree, ...]:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (PT_LEAF,)
    out = []
    for k in range(2, n + 1):
        for comp in compositions(n, k, minimum=1):
            for parts in itertools.product(*(planar_trees(m) for m in comp)):
                out.append(PlanarTree(parts))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def binary_trees(n: int) -> tuple[PlanarBinaryTree, ...]:
    """Planar binary trees with n leaves."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (PBT_LEAF,)
    out = []
    for i in range(1, n):
        for left in binary_trees(i):
            for right in binary_trees(n - i):
                out.append(PlanarBinaryTree((left, right)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def planar_unreduced_trees(n: int) -> tuple[PlanarUnreducedTree, ...]:
    """Ordered rooted trees with n vertices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (PUT_VERTEX,)
    out = []
    for k in range(1, n):
        for comp in compositions(n - 1, k, minimum=1):
            for parts in itertools.product(
                    *(planar_unreduced_trees(m) for m in comp)):
                out.append(PlanarUnreducedTree(parts))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def rooted_trees(n: int) -> tuple[RootedTree, ...]:
    """Unordered rooted trees with n vertices, canonically sorted."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (UT_VERTEX,)
    found = set()
    for k in range(1, n):
        for comp in compositions(n - 1, k, minimum=1):
            for parts in itertools.product(*(rooted_trees(m) for m in comp)):
                found.add(RootedTree.make(parts))
    return tuple(sorted(found))


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


FAMILIES = {
    "pt": (planar_trees, "leaves"),
    "pbt": (binary_trees, "leaves"),
    "put": (planar_unreduced_trees, "vertices"),
    "ut": (rooted_trees, "vertices"),
}


def enumerate_family(family: str, n: int) -> list:
    """Complete, duplicate-free, canonically ordered listing of a tree family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if not 1 <= n <= ENUMERATION_BOUND:
        raise DegreeBoundError(
            f"enumeration size {n} outside 1..{ENUMERATION_BOUND}")
    return list(FAMILIES[family][0](n))


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Permutation:
    """Permutation of {1..n} in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.word) != list(range(1, len(self.word) + 1)):
            raise ValueError(f"not a permutation word: {self.word}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @property
    def size(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def inverse(self) -> "Permutation":
        out = [0] * len(self.word)
        for i, v in enumerate(self.word, start=1):
            out[v - 1] = i
        return Permutation(tuple(out))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self∘other)(i) = self(other(i))."""
        return Permutation(tuple(self.word[other.word[i] - 1]
                                 for i in range(len(self.word))))

    def times(self, other: "Permutation") -> "Permutation":
        """Concatenation sigma x tau, acting on the first then last block."""
        n = len(self.word)
        return Permutation(self.word + tuple(v + n for v in other.word))

    def __str__(self) -> str:
        if not self.word:
            return "()"
        if len(self.word) <= 9:
            return "".join(str(v) for v in self.word)
        return ",".join(str(v) for v in self.word)


def std(word: Iterable[int]) -> Permutation:
    """Order-isomorphic relabeling of a word of distinct integers onto 1..n."""
    word = tuple(word)
    if len(set(word)) != len(word):
        raise ValueError(f"entries must be pairwise distinct: {word}")
    ranking = {v: i + 1 for i, v in enumerate(sorted(word))}
    return Permutation(tuple(ranking[v] for v in word))


def shuffles(p: int, q: int) -> list[Permutation]:
    """All (p,q)-shuffles: increasing on the first p and last q positions."""
    out = []
    universe = range(1, p + q + 1)
    for chosen in itertools.combinations(universe, p):
        rest = tuple(v for v in universe if v not in chosen)
        out.append(Permutation(chosen + rest))
    return out


def block_shuffle_splits(items: tuple, sizes: tuple[int, ...]) -> Iterator[tuple]:
    """Ways to distribute items into ordered blocks of given sizes.

    Each block keeps the induced order of the original sequence; this is the
    index-block description of multi-shuffles.
    """
    n = len(items)
    if sum(sizes) != n:
        raise ValueError("sizes must sum to the number of items")
    indices = tuple(range(n))

    def rec(remaining: tuple[int, ...], sizes: tuple[int, ...]):
        if not sizes:
            yield ()
            return
        for chosen in itertools.combinations(remaining, sizes[0]):
            rest = tuple(i for i in remaining if i not in chosen)
            for tail in rec(rest, sizes[1:]):
                yield (tuple(items[i] for i in chosen),) + tail

    return rec(indices, tuple(sizes))


# ---------------------------------------------------------------------------
# Series-parallel posets
# ---------------------------------------------------------------------------


def _series(p: frozenset, q: frozenset) -> frozenset:
    """Stack poset p under poset q (every p-element below every q-element)."""
    extra = {(a, b) for (a, _) in _with_loops(p) for (b, _) in _with_loops(q)}
    return frozenset(set(p) | set(q) | extra)


def _with_loops(rel: frozenset) -> set:
    # recover the ground set from the stored relation (kept as (v, v) loops)
    return {pair for pair in rel if pair[0] == pair[1]}


def _parallel(p: frozenset, q: frozenset) -> frozenset:
    return frozenset(set(p) | set(q))


@lru_cache(maxsize=None)
def _sp_posets(labels: frozenset) -> frozenset:
    """All series-parallel posets on the label set, as strict-order relations.

    A poset is stored as a frozenset containing a loop (v, v) for every
    label and a pair (a, b) for every strict relation a < b.  Binary series
    and parallel compositions suffice because both are associative and the
    duplicates are removed by the canonical representation.
    """
    labels = frozenset(labels)
    if len(labels) == 1:
        (v,) = labels
        return frozenset({frozenset({(v, v)})})
    out: set[frozenset] = set()
    seen_splits = set()
    for r in range(1, len(labels)):
        for left in itertools.combinations(sorted(labels), r):
            left_set = frozenset(left)
            right_set = labels - left_set
            for p in _sp_posets(left_set):
                for q in _sp_posets(right_set):
                    out.add(_series(p, q))
                    if (right_set, left_set) not in seen_splits:
                        out.add(_parallel(p, q))
            seen_splits.add((left_set, right_set))
    return frozenset(out)


def _is_connected(poset: frozenset) -> bool:
    points = sorted({a for (a, b) in poset if a == b})
    if len(points) <= 1:
        return True
    adjacency: dict = {v: set() for v in points}
    for a, b in poset:
        if a != b:
            adjacency[a].add(b)
            adjacency[b].add(a)
    seen = {points[0]}
    stack = [points[0]]
    while stack:
        for w in adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(points)


def series_parallel_posets(n: int, connected: bool = False) -> list[frozenset]:
    if not 1 <= n <= 5:
        raise DegreeBoundError("series-parallel enumeration is desk scale: 1 <= n <= 5")
    posets = _sp_posets(frozenset(range(1, n + 1)))
    if connected:
        posets = [p for p in posets if _is_connected(p)]
    return sorted(posets, key=_poset_text)


def _poset_text(poset: frozenset) -> str:
    pairs = sorted((a, b) for (a, b) in poset if a != b)
    return ",".join(f"{a}<{b}" for a, b in pairs) or "antichain"


def poset_text(poset: frozenset) -> str:
    points = sorted({a for (a, b) in poset if a == b})
    rels = _poset_text(poset)
    return f"[{','.join(str(p) for p in points)}|{rels}]"


def count_series_parallel(n: int, connected: bool = False) -> int:
    return len(series_parallel_posets(n, connected))


# ---------------------------------------------------------------------------
# Labeled rooted trees (free pre-Lie dimensions)
# ---------------------------------------------------------------------------


def count_labeled_rooted_trees(n: int) -> int:
    """Number of rooted trees on n labeled vertices, via automorphism orders."""
    return sum(math.factorial(n) // automorphism_count(t) for t in rooted_trees(n))


# ---------------------------------------------------------------------------
# Dimension rows and generating-series identities
# ---------------------------------------------------------------------------


def dims_dend(maxdeg: int) -> list[int]:
    """Graded dimensions of the free dendriform algebra on one generator."""
    return [len(binary_trees(n + 1)) for n in range(1, maxdeg + 1)]


def dims_brace(maxdeg: int) -> list[int]:
    return [len(planar_unreduced_trees(n)) for n in range(1, maxdeg + 1)]


def dims_mb(maxdeg: int) -> list[int]:
    return [len(planar_trees(n)) for n in range(1, maxdeg + 1)]


def dims_dipt(maxdeg: int) -> list[int]:
    """Graded dimensions of the free dipterous algebra on one generator.

    Basis monomials are nonempty words of planar trees, graded by the total
    number of leaves; the count is obtained by direct enumeration.
    """
    per_degree = [len(planar_trees(n)) for n in range(1, maxdeg + 1)]
    out = []
    for n in range(1, maxdeg + 1):
        total = 0
        for k in range(1, n + 1):
            for comp in compositions(n, k, minimum=1):
                total += math.prod(per_degree[m - 1] for m in comp)
        out.append(total)
    return out


def dims_prelie(maxdeg: int) -> list[int]:
    return [len(rooted_trees(n)) for n in range(1, maxdeg + 1)]


def series_compose(outer: list[Fraction], inner: list[Fraction],
                   maxdeg: int) -> list[Fraction]:
    """Coefficients 1..maxdeg of outer(inner(t)) for series with zero constant term."""
    powers = [[Fraction(0)] * maxdeg for _ in range(maxdeg + 1)]
    if maxdeg >= 1:
        powers[1] = list(inner[:maxdeg]) + [Fraction(0)] * (maxdeg - len(inner))
    for k in range(2, maxdeg + 1):
        powers[k] = _series_mul(powers[k - 1], powers[1], maxdeg)
    out = [Fraction(0)] * maxdeg
    for k in range(1, maxdeg + 1):
        coeff = outer[k - 1] if k - 1 < len(outer) else Fraction(0)
        for i in range(maxdeg):
            out[i] += coeff * powers[k][i]
    return out


def _series_mul(a: list[Fraction], b: list[Fraction], maxdeg: int) -> list[Fraction]:
    out = [Fraction(0)] * maxdeg
    for i, ai in enumerate(a, start=1):
        if not ai:
            continue
        for j, bj in enumerate(b, start=1):
            if i + j <= maxdeg:
                out[i + j - 1] += ai * bj
    return out


def check_series_identities(maxdeg: int = 5) -> list[tuple[str, bool, str]]:
    """Coefficientwise checks: the reduced-planar-tree quadratic and A = C∘P.

    Returns (check id, ok, detail) triples.  The composition identity is
    checked for (associative, dendriform, brace) and (associative,
    dipterous, multibrace) using dimensions obtained by enumeration.
    """
    results = []

    # quadratic equation for the reduced planar tree counts, shifted by one:
    # with C(t) = 1 + sum_{n>=1} |PT_{n+1}| t^n one has 2tC^2 - (1+t)C + 1 = 0
    deg = maxdeg + 1
    c = [Fraction(len(planar_trees(n + 1))) for n in range(1, deg + 1)]
    c_full = [Fraction(1)] + c                      # constant term 1
    square = [Fraction(0)] * (deg + 1)
    for i, ai in enumerate(c_full):
        for j, bj in enumerate(c_full):
            if i + j <= deg:
                square[i + j] += ai * bj
    lhs = [Fraction(0)] * (deg + 1)
    for i in range(deg):
        lhs[i + 1] += 2 * square[i]                 # 2 t C(t)^2
    for i in range(deg + 1):
        lhs[i] -= c_full[i]                         # - C(t)
        if i >= 1:
            lhs[i] -= c_full[i - 1]                 # - t C(t)
    lhs[0] += 1
    ok = all(v == 0 for v in lhs[: deg + 1])
    results.append(("supercatalan-quadratic", ok,
                    f"residual through degree {deg}: "
                    f"{[str(v) for v in lhs[:deg + 1]]}"))

    f_as = [Fraction(1)] * maxdeg
    for name, dims_a, dims_p in (
            ("series-dend-brace", dims_dend(maxdeg), dims_brace(maxdeg)),
            ("series-dipt-mb", dims_dipt(maxdeg), dims_mb(maxdeg))):
        composed = series_compose(f_as, [Fraction(v) for v in dims_p], maxdeg)
        ok = composed == [Fraction(v) for v in dims_a]
        detail = f"A={dims_a} C∘P={[str(v) for v in composed]}"
        results.append((name, ok, detail))
    return results
