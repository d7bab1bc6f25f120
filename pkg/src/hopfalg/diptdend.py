"""Free dipterous and dendriform algebras on planar trees.

The free dipterous algebra lives on words of (leaf-decorated) reduced planar
trees: the associative product is concatenation of words and the right
product grafts, so that the right product of two monomials is always a
single tree.  The free dendriform algebra lives on planar binary trees with
decorations between the leaves.  Both carry the coproduct determined by
making the generators primitive, computed by structural recursion, and both
feed the multibrace extraction machinery:

* :func:`mb_from_dipt` and :func:`mb_from_2as` turn a dipterous resp.
  2-associative context into a multibrace structure by the inductive
  splitting scheme,
* :func:`brace_from_dend` is the closed alternating-sum formula for the
  brace operations of a dendriform algebra,
* :func:`dend_idempotent` is the dendriform analogue of the Eulerian
  idempotent, giving the primitive basis indexed by planar binary trees,
* :func:`inf_idempotent` is the infinitesimal idempotent of 2-associative
  contexts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Iterable

from hopfalg.core import (
    DegreeBoundError,
    HopfModel,
    LinComb,
    as_lincomb,
    lc_multi,
)
from hopfalg.multibrace import MBStructure, brace_structure
from hopfalg.trees import (
    PlanarBinaryTree,
    PlanarTree,
    binary_trees,
    compositions,
    planar_trees,
)

Check = tuple[str, bool, str]


# ---------------------------------------------------------------------------
# Decorated planar trees and dipterous monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class DTree:
    """Reduced planar tree with symbols on the leaves."""

    symbol: str = ""
    children: tuple["DTree", ...] = ()

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
            return self.symbol or "."
        return "(" + " ".join(str(c) for c in self.children) + ")"


def dleaf(symbol: str = "") -> DTree:
    return DTree(symbol, ())


def dgraft(parts: Iterable[DTree]) -> DTree:
    parts = tuple(parts)
    if len(parts) < 2:
        raise ValueError("grafting needs at least two trees")
    return DTree("", parts)


def pt_to_dtree(tree: PlanarTree, symbol: str = "") -> DTree:
    if tree.is_leaf:
        return dleaf(symbol)
    return DTree("", tuple(pt_to_dtree(c, symbol) for c in tree.children))


#: A dipterous basis monomial is a word of decorated trees; () is the unit.
Monomial = tuple

DIPT_UNIT: Monomial = ()


def mono_degree(mono: Monomial) -> int:
    return sum(t.leaves for t in mono)


def mono_text(mono: Monomial) -> str:
    return "1" if not mono else " ".join(str(t) for t in mono)


def dipt_monomials(n: int, symbol: str = "") -> list[Monomial]:
    """All basis monomials of total leaf degree n."""
    out = []
    for k in range(1, n + 1):
        for comp in compositions(n, k, minimum=1):
            for parts in itertools.product(
                    *(tuple(pt_to_dtree(t, symbol) for t in planar_trees(m))
                      for m in comp)):
                out.append(tuple(parts))
    return sorted(out, key=mono_text)


def dipt_succ_mono(a: Monomial, b: Monomial) -> DTree:
    """(t_1 ... t_k) > (s_1 ... s_l): nested grafting, always a single tree."""
    inner = dgraft((a[-1],) + tuple(b))
    for t in reversed(a[:-1]):
        inner = dgraft((t, inner))
    return inner


def dipt_succ(x: Any, y: Any) -> LinComb:
    """Right dipterous product, bilinear, with 1 > w = w and w > 1 = 0."""
    def on_pair(a: Monomial, b: Monomial) -> LinComb:
        if not a and not b:
            raise ValueError("1 > 1 is not defined")
        if not a:
            return LinComb.of(b)
        if not b:
            return LinComb.zero()
        return LinComb.of((dipt_succ_mono(a, b),))
    return _bilinear(on_pair, x, y)


def dipt_star(x: Any, y: Any) -> LinComb:
    """Concatenation of monomials, the associative dipterous product."""
    return _bilinear(lambda a, b: LinComb.of(a + b), x, y)


def _bilinear(op, x, y) -> LinComb:
    out = LinComb.zero()
    for ka, ca in as_lincomb(x).items():
        for kb, cb in as_lincomb(y).items():
            out = out + op(ka, kb).scale(ca * cb)
    return out


# -- coproduct ---------------------------------------------------------------


def _tensor_star(pair_lc_a: LinComb, pair_lc_b: LinComb) -> LinComb:
    return lc_multi([pair_lc_a, pair_lc_b],
                    lambda p, r: (p[0] + r[0], p[1] + r[1]))


def _tensor_succ(pair_lc_a: LinComb, pair_lc_b: LinComb) -> LinComb:
    out = LinComb.zero()
    for (a, b), ca in pair_lc_a.items():
        for (a2, b2), cb in pair_lc_b.items():
            c = ca * cb
            if not b and not b2:
                # both right legs are the unit: fall back to > on the left legs
                out = out + dipt_succ(LinComb.of(a), LinComb.of(a2)) \
                    .map_keys(lambda k: (k, DIPT_UNIT)).scale(c)
            elif not b:
                out = out + LinComb.of((a + a2, b2), c)
            elif not b2:
                continue  # w > 1 = 0
            else:
                out = out + LinComb.of((a + a2, (dipt_succ_mono(b, b2),)), c)
    return out


@lru_cache(maxsize=None)
def dipt_coproduct_mono(mono: Monomial) -> LinComb:
    """Coproduct making every leaf primitive, as a dipterous morphism."""
    if not mono:
        return LinComb.of((DIPT_UNIT, DIPT_UNIT))
    if len(mono) > 1:
        return _tensor_star(dipt_coproduct_mono(mono[:1]),
                            dipt_coproduct_mono(mono[1:]))
    tree = mono[0]
    if tree.is_leaf:
        return LinComb.of((mono, DIPT_UNIT)) + LinComb.of((DIPT_UNIT, mono))
    head, rest = tree.children[0], tree.children[1:]
    return _tensor_succ(dipt_coproduct_mono((head,)), dipt_coproduct_mono(rest))


def dipt_coproduct(x: Any) -> LinComb:
    return as_lincomb(x).apply(dipt_coproduct_mono)


def dipt_model(bound: int = 6) -> HopfModel:
    return HopfModel(product=lambda a, b: dipt_star(a, b),
                     coproduct=dipt_coproduct_mono,
                     unit=DIPT_UNIT, grade=mono_degree, bound=bound)


# ---------------------------------------------------------------------------
# omega words
# ---------------------------------------------------------------------------


def omega_succ(succ: Callable, values: list) -> LinComb:
    """Left-normed right-product word ((v1 > v2) > ...) > vn."""
    if not values:
        raise ValueError("empty word")
    acc = as_lincomb(values[0])
    for v in values[1:]:
        acc = succ(acc, v)
    return acc


def omega_prec(prec: Callable, values: list) -> LinComb:
    """Right-normed left-product word v1 < (v2 < (... < vn))."""
    if not values:
        raise ValueError("empty word")
    acc = as_lincomb(values[-1])
    for v in reversed(values[:-1]):
        acc = prec(as_lincomb(v), acc)
    return acc


def omega_succ_nested(succ: Callable, values: list) -> LinComb:
    """Right-normed right-product word v1 > (v2 > (... > vn))."""
    if not values:
        raise ValueError("empty word")
    acc = as_lincomb(values[-1])
    for v in reversed(values[:-1]):
        acc = succ(as_lincomb(v), acc)
    return acc


# ---------------------------------------------------------------------------
# Multibrace extraction
# ---------------------------------------------------------------------------


def mb_from_dipt(star: Callable, succ: Callable, bound: int,
                 grade: Callable[[Any], int], name: str = "M[dipt]") -> MBStructure:
    """Multibrace operations of a dipterous context, by the inductive scheme.

    M_pq is the difference between the product of the two left-normed right
    words and the already-known contributions of coarser block splittings.
    """
    cache: dict = {}

    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        key = (p, q, xs, ys)
        if key in cache:
            return cache[key]
        value = star(omega_succ(succ, list(xs)), omega_succ(succ, list(ys)))
        for k in range(2, p + q + 1):
            for icomp in compositions(p, k, minimum=0):
                for jcomp in compositions(q, k, minimum=0):
                    if any(a == 0 and b == 0 for a, b in zip(icomp, jcomp)):
                        continue
                    if any((a == 0 and b >= 2) or (b == 0 and a >= 2)
                           for a, b in zip(icomp, jcomp)):
                        continue
                    blocks = _apply_blocks(structure, icomp, jcomp, xs, ys)
                    value = value - omega_succ(succ, blocks)
        cache[key] = value
        return value

    structure = MBStructure(bound, rule, grade=grade, name=name)
    return structure


def mb_from_2as(star: Callable, dot: Callable, bound: int,
                grade: Callable[[Any], int], name: str = "M[2as]") -> MBStructure:
    """Multibrace operations of a pair of associative products.

    Same inductive scheme as the dipterous case with the dot-product word in
    place of the right-normed word.
    """
    cache: dict = {}

    def dotfold(values: list) -> LinComb:
        acc = as_lincomb(values[0])
        for v in values[1:]:
            acc = dot(acc, v)
        return acc

    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        key = (p, q, xs, ys)
        if key in cache:
            return cache[key]
        value = star(dotfold(list(xs)), dotfold(list(ys)))
        for k in range(2, p + q + 1):
            for icomp in compositions(p, k, minimum=0):
                for jcomp in compositions(q, k, minimum=0):
                    if any(a == 0 and b == 0 for a, b in zip(icomp, jcomp)):
                        continue
                    if any((a == 0 and b >= 2) or (b == 0 and a >= 2)
                           for a, b in zip(icomp, jcomp)):
                        continue
                    blocks = _apply_blocks(structure, icomp, jcomp, xs, ys)
                    value = value - dotfold(blocks)
        cache[key] = value
        return value

    structure = MBStructure(bound, rule, grade=grade, name=name)
    return structure


def _apply_blocks(M: MBStructure, icomp, jcomp, xs, ys) -> list[LinComb]:
    blocks = []
    xpos = ypos = 0
    for a, b in zip(icomp, jcomp):
        blocks.append(M.eval(a, b, xs[xpos:xpos + a], ys[ypos:ypos + b]))
        xpos += a
        ypos += b
    return blocks


# ---------------------------------------------------------------------------
# Dendriform algebra on decorated planar binary trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BTree:
    """Planar binary tree with a symbol at each internal vertex.

    The leaf tree is the unit; a one-vertex tree is a generator.  Reading
    the vertex symbols left to right recovers the decoration between the
    leaves.
    """

    parts: tuple = ()  # () for the unit, else (left, right, symbol)

    @property
    def is_leaf(self) -> bool:
        return not self.parts

    @property
    def left(self) -> "BTree":
        return self.parts[0]

    @property
    def right(self) -> "BTree":
        return self.parts[1]

    @property
    def symbol(self) -> str:
        return self.parts[2]

    @property
    def internal(self) -> int:
        if not self.parts:
            return 0
        return 1 + self.left.internal + self.right.internal

    def symbols(self) -> list[str]:
        if not self.parts:
            return []
        return self.left.symbols() + [self.symbol] + self.right.symbols()

    def __str__(self) -> str:
        if not self.parts:
            return "."
        shape = f"({self.left.shape_text()} {self.right.shape_text()})"
        syms = [s for s in self.symbols()]
        if any(syms):
            return shape + "{" + ",".join(syms) + "}"
        return shape

    def shape_text(self) -> str:
        if not self.parts:
            return "."
        return f"({self.left.shape_text()} {self.right.shape_text()})"


DEND_UNIT = BTree()


def bnode(left: BTree, right: BTree, symbol: str = "") -> BTree:
    return BTree((left, right, symbol))


def bgen(symbol: str = "") -> BTree:
    return bnode(DEND_UNIT, DEND_UNIT, symbol)


def pbt_to_btree(tree: PlanarBinaryTree, symbols: list[str] | None = None) -> BTree:
    """Decorate a planar binary tree; symbols are consumed left to right."""
    syms = list(symbols) if symbols is not None else [""] * tree.internal
    if len(syms) != tree.internal:
        raise ValueError("need one symbol per internal vertex")

    def build(t: PlanarBinaryTree, offset: int) -> BTree:
        if t.is_leaf:
            return DEND_UNIT
        left = build(t.left, offset)
        mid = offset + t.left.internal
        right = build(t.right, mid + 1)
        return bnode(left, right, syms[mid])

    return build(tree, 0)


def btree_to_pbt(tree: BTree) -> PlanarBinaryTree:
    if tree.is_leaf:
        return PlanarBinaryTree()
    return PlanarBinaryTree((btree_to_pbt(tree.left), btree_to_pbt(tree.right)))


def dend_basis(degree: int, symbol: str = "") -> list[BTree]:
    """All basis trees with the given number of internal vertices."""
    return [pbt_to_btree(t, [symbol] * degree)
            for t in binary_trees(degree + 1)]


@lru_cache(maxsize=None)
def _dend_prec_keys(t: BTree, s: BTree) -> LinComb:
    if t.is_leaf and s.is_leaf:
        raise ValueError("1 < 1 is not defined")
    if t.is_leaf:
        return LinComb.zero()
    if s.is_leaf:
        return LinComb.of(t)
    rs = _dend_star_keys(t.right, s)
    return rs.map_keys(lambda w: bnode(t.left, w, t.symbol))


@lru_cache(maxsize=None)
def _dend_succ_keys(t: BTree, s: BTree) -> LinComb:
    if t.is_leaf and s.is_leaf:
        raise ValueError("1 > 1 is not defined")
    if t.is_leaf:
        return LinComb.of(s)
    if s.is_leaf:
        return LinComb.zero()
    ls = _dend_star_keys(t, s.left)
    return ls.map_keys(lambda w: bnode(w, s.right, s.symbol))


@lru_cache(maxsize=None)
def _dend_star_keys(t: BTree, s: BTree) -> LinComb:
    if t.is_leaf:
        return LinComb.of(s)
    if s.is_leaf:
        return LinComb.of(t)
    return _dend_prec_keys(t, s) + _dend_succ_keys(t, s)


def dend_prec(x: Any, y: Any) -> LinComb:
    return _bilinear(_dend_prec_keys, x, y)


def dend_succ(x: Any, y: Any) -> LinComb:
    return _bilinear(_dend_succ_keys, x, y)


def dend_star(x: Any, y: Any) -> LinComb:
    return _bilinear(_dend_star_keys, x, y)


# -- coproduct ---------------------------------------------------------------


def _tensor_dend(op_keys: Callable, fallback: Callable,
                 a: LinComb, b: LinComb) -> LinComb:
    """Half-product on the tensor square with the unit fall-back rule."""
    out = LinComb.zero()
    for (a1, a2), ca in a.items():
        for (b1, b2), cb in b.items():
            c = ca * cb
            if a2.is_leaf and b2.is_leaf:
                out = out + fallback(LinComb.of(a1), LinComb.of(b1)) \
                    .map_keys(lambda k: (k, DEND_UNIT)).scale(c)
                continue
            right = op_keys(a2, b2)
            left = _dend_star_keys(a1, b1)
            out = out + lc_multi([left, right], lambda l, r: (l, r)).scale(c)
    return out


@lru_cache(maxsize=None)
def dend_coproduct_key(t: BTree) -> LinComb:
    """Coproduct with primitive generators, through t = t_left > gen < t_right."""
    if t.is_leaf:
        return LinComb.of((DEND_UNIT, DEND_UNIT))
    gen = bgen(t.symbol)
    gen_cop = LinComb.of((gen, DEND_UNIT)) + LinComb.of((DEND_UNIT, gen))
    if t.left.is_leaf and t.right.is_leaf:
        return gen_cop
    middle = _tensor_dend(_dend_succ_keys, dend_succ,
                          dend_coproduct_key(t.left), gen_cop)
    return _tensor_dend(_dend_prec_keys, dend_prec,
                        middle, dend_coproduct_key(t.right))


def dend_coproduct(x: Any) -> LinComb:
    return as_lincomb(x).apply(dend_coproduct_key)


def dend_model(bound: int = 6) -> HopfModel:
    return HopfModel(product=_dend_star_keys, coproduct=dend_coproduct_key,
                     unit=DEND_UNIT, grade=lambda t: t.internal, bound=bound)


# ---------------------------------------------------------------------------
# Idempotents
# ---------------------------------------------------------------------------


def series_idempotent(model: HopfModel, fold: Callable[[list], LinComb],
                      x: Any) -> LinComb:
    """Alternating sum over reduced-coproduct iterates, folded back.

    Computes sum_{n>=1} (-1)^{n+1} fold(n-fold iterate), which terminates on
    conilpotent input; ``fold`` maps a list of basis keys to an element.
    """
    total = LinComb.zero()
    current = model.reduced_iterate(1, x)
    n = 1
    while not current.is_zero():
        sign = 1 if n % 2 == 1 else -1
        folded = current.apply(lambda keys: fold(list(keys)))
        total = total + folded.scale(sign)
        current = current.apply(model._split_first)
        n += 1
        if n > model.bound + 2:
            raise DegreeBoundError("idempotent series did not terminate")
    return total


def dend_idempotent(x: Any, bound: int = 6) -> LinComb:
    """Dendriform Eulerian-type idempotent: right-normed words of iterates."""
    model = dend_model(bound)
    return series_idempotent(
        model, lambda keys: omega_succ_nested(dend_succ, keys), x)


def primitive_basis_dend(n: int, symbol: str = "", bound: int = 8) -> list[LinComb]:
    """Images e(| v t) over binary trees t with n - 1 internal vertices."""
    out = []
    for t in binary_trees(n):
        decorated = pbt_to_btree(t, [symbol] * (n - 1))
        element = bnode(DEND_UNIT, decorated, symbol)  # | v t with root symbol
        out.append(dend_idempotent(LinComb.of(element), bound=bound))
    return out


def inf_idempotent(x: Any, model: HopfModel, dot: Callable) -> LinComb:
    """Infinitesimal idempotent: alternating sum of dot-folded iterates."""
    def fold(keys: list) -> LinComb:
        acc = as_lincomb(keys[0])
        for k in keys[1:]:
            acc = dot(acc, k)
        return acc
    return series_idempotent(model, fold, x)


# ---------------------------------------------------------------------------
# Braces from a dendriform context
# ---------------------------------------------------------------------------


def brace_from_dend(prec: Callable, succ: Callable, bound: int,
                    grade: Callable[[Any], int],
                    name: str = "B[dend]") -> MBStructure:
    """Brace operations of a dendriform context by the alternating-sum formula."""
    def m1q(q: int, xs: tuple, ys: tuple) -> LinComb:
        v = as_lincomb(xs[0])
        total = LinComb.zero()
        for i in range(q + 1):
            sign = 1 if i % 2 == 0 else -1
            middle = v
            if i > 0:
                middle = succ(omega_prec(prec, list(ys[:i])), middle)
            if i < q:
                middle = prec(middle, omega_succ(succ, list(ys[i:])))
            total = total + middle.scale(sign)
        return total
    return brace_structure(bound, m1q, grade=grade, name=name)


# ---------------------------------------------------------------------------
# Law suites
# ---------------------------------------------------------------------------


def check_dipt_laws(maxdeg: int = 6) -> list[Check]:
    """Both dipterous relations on all basis monomial triples up to maxdeg."""
    monos = [m for d in range(1, maxdeg - 1) for m in dipt_monomials(d)]
    assoc_ok, assoc_wit = True, ""
    dipt_ok, dipt_wit = True, ""
    for a, b, c in itertools.product(monos, repeat=3):
        if mono_degree(a) + mono_degree(b) + mono_degree(c) > maxdeg:
            continue
        la, lb, lc_ = LinComb.of(a), LinComb.of(b), LinComb.of(c)
        if assoc_ok and dipt_star(dipt_star(la, lb), lc_) != \
                dipt_star(la, dipt_star(lb, lc_)):
            assoc_ok, assoc_wit = False, f"({a},{b},{c})"
        if dipt_ok and dipt_succ(dipt_star(la, lb), lc_) != \
                dipt_succ(la, dipt_succ(lb, lc_)):
            dipt_ok, dipt_wit = False, f"({a},{b},{c})"
    return [
        ("dipt-star-associative", assoc_ok, assoc_wit or f"degree <= {maxdeg}"),
        ("dipt-right-relation", dipt_ok, dipt_wit or f"degree <= {maxdeg}"),
    ]


def check_dend_laws(maxdeg: int = 6) -> list[Check]:
    """The three dendriform relations on basis tree triples up to maxdeg."""
    trees = [t for d in range(1, maxdeg - 1) for t in dend_basis(d)]
    results = {"dend-left": (True, ""), "dend-middle": (True, ""),
               "dend-right": (True, "")}
    for x, y, z in itertools.product(trees, repeat=3):
        if x.internal + y.internal + z.internal > maxdeg:
            continue
        lx, ly, lz = LinComb.of(x), LinComb.of(y), LinComb.of(z)
        checks = {
            "dend-left": dend_prec(dend_prec(lx, ly), lz) ==
                         dend_prec(lx, dend_star(ly, lz)),
            "dend-middle": dend_prec(dend_succ(lx, ly), lz) ==
                           dend_succ(lx, dend_prec(ly, lz)),
            "dend-right": dend_succ(dend_star(lx, ly), lz) ==
                          dend_succ(lx, dend_succ(ly, lz)),
        }
        for name, ok in checks.items():
            if results[name][0] and not ok:
                results[name] = (False, f"({x},{y},{z})")
    return [(name, ok, wit or f"degree <= {maxdeg}")
            for name, (ok, wit) in results.items()]


def check_lemma_dipt_reduction(bound: int = 6) -> list[Check]:
    """Reduction identities for the dipterous multibrace operations.

    First family: M_n1 reduces through (x1 > x2) for n = 3, 4.  Second
    family: M_nm reduces in the second block for (n, m) in
    {(1,2), (2,2), (1,3)}.  Checked on distinct leaf generators in the free
    dipterous algebra.
    """
    M = mb_from_dipt(dipt_star, dipt_succ, bound, mono_degree)

    def gen(i: int) -> Monomial:
        return (dleaf(f"x{i}"),)

    def ygen(i: int) -> Monomial:
        return (dleaf(f"y{i}"),)

    results: list[Check] = []
    for n in (3, 4):
        xs = tuple(gen(i) for i in range(1, n + 1))
        y = ygen(1)
        lhs = M.eval(n, 1, xs, (y,))
        fused = dipt_succ(LinComb.of(xs[0]), LinComb.of(xs[1]))
        rhs = M.eval_elements(n - 1, 1, (fused,) + xs[2:], (y,)) \
            - dipt_succ(LinComb.of(xs[0]), M.eval(n - 1, 1, xs[1:], (y,)))
        results.append((f"dipt-reduction-M{n}1", lhs == rhs,
                        "" if lhs == rhs else f"difference {lhs - rhs!r}"))
    for n, m in ((1, 2), (2, 2), (1, 3)):
        xs = tuple(gen(i) for i in range(1, n + 1))
        ys = tuple(ygen(i) for i in range(1, m + 1))
        lhs = M.eval(n, m, xs, ys)
        fused = dipt_succ(LinComb.of(ys[0]), LinComb.of(ys[1]))
        rhs = M.eval_elements(n, m - 1, xs, (fused,) + ys[2:]) \
            - dipt_succ(LinComb.of(ys[0]), M.eval(n, m - 1, xs, ys[1:]))
        results.append((f"dipt-reduction-M{n}{m}", lhs == rhs,
                        "" if lhs == rhs else f"difference {lhs - rhs!r}"))
    return [(name, ok, wit or "holds on distinct generators")
            for name, ok, wit in results]
