"""Multibrace structures and the Hopf product they encode on the tensor coalgebra.

A multibrace structure is a family of (p+q)-ary operations M_pq on a
generator space.  It is exactly the data of a unital associative product on
the tensor coalgebra that is a coalgebra morphism for deconcatenation: the
product is rebuilt from block splittings (:func:`mb_to_product`), extracted
back by projection (:func:`product_to_mb`), and the relation family that
characterises associativity is checked term by term (:func:`check_R`).

The brace specialisation (all M_pq with p >= 2 vanishing) comes with the
brace-relation checker, a rewriting normal form for nested brace
expressions, and the resulting operad on pairs (planar unreduced tree,
permutation) with its partial compositions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from hopfalg.core import (
    DegreeBoundError,
    LinComb,
    TensorWord,
    as_lincomb,
    lc_multi,
)
from hopfalg.trees import (
    Permutation,
    PlanarUnreducedTree,
    compositions,
    standard_labeling,
)

Check = tuple[str, bool, str]


# ---------------------------------------------------------------------------
# Multibrace structures
# ---------------------------------------------------------------------------


@dataclass
class MBStructure:
    """Degree-truncated family of (p+q)-ary operations on a generator space.

    ``rule(p, q, xs, ys)`` is only consulted for p, q >= 1; the mandated
    values (M_00 = 0, M_10 = M_01 = id, one-sided operations zero) are
    enforced here.  ``grade`` gives the internal degree of a generator key
    (1 for abstract generators).
    """

    bound: int
    rule: Callable[[int, int, tuple, tuple], LinComb]
    grade: Callable[[Any], int] = field(default=lambda _key: 1)
    name: str = "M"

    def word_grade(self, letters: Iterable) -> int:
        return sum(self.grade(l) for l in letters)

    def eval(self, p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        if len(xs) != p or len(ys) != q:
            raise ValueError("argument blocks do not match the declared arity")
        if p == 0 and q == 0:
            return LinComb.zero()
        if p == 1 and q == 0:
            return LinComb.of(xs[0])
        if p == 0 and q == 1:
            return LinComb.of(ys[0])
        if p == 0 or q == 0:
            return LinComb.zero()
        total = self.word_grade(xs) + self.word_grade(ys)
        if total > self.bound:
            raise DegreeBoundError(
                f"M_{p}{q} on total degree {total} exceeds bound {self.bound}")
        return self.rule(p, q, xs, ys)

    def eval_elements(self, p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        """Like :meth:`eval` but arguments may be vectors; expands multilinearly."""
        factors = [as_lincomb(x) for x in tuple(xs) + tuple(ys)]
        return lc_multi(
            factors, lambda *keys: (keys[:p], keys[p:])
        ).apply(lambda split: self.eval(p, q, split[0], split[1]))


def trivial_mb(bound: int = 6) -> MBStructure:
    """Only the mandated identities; every higher operation vanishes."""
    return MBStructure(bound, lambda p, q, xs, ys: LinComb.zero(), name="trivial")


def brace_structure(bound: int, m1q: Callable[[int, tuple, tuple], LinComb],
                    grade: Callable[[Any], int] = lambda _key: 1,
                    name: str = "B") -> MBStructure:
    """Multibrace structure with M_pq = 0 for p >= 2 and M_1q given by ``m1q``."""
    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        if p >= 2:
            return LinComb.zero()
        return m1q(q, xs, ys)
    return MBStructure(bound, rule, grade=grade, name=name)


# ---------------------------------------------------------------------------
# Reconstruction of the product and extraction of the operations
# ---------------------------------------------------------------------------


def _block_splits(letters: tuple, k: int):
    for comp in compositions(len(letters), k, minimum=0):
        blocks = []
        pos = 0
        for size in comp:
            blocks.append(letters[pos:pos + size])
            pos += size
        yield comp, blocks


def paired_block_splits(xs: tuple, ys: tuple):
    """Sequences of consecutive block pairs covering both words.

    Each pair is nonempty on at least one side and never has two or more
    letters against an empty block (those operations vanish identically),
    so only sequences with a chance of contributing are produced.
    """
    p, q = len(xs), len(ys)

    def rec(i: int, j: int):
        if i == p and j == q:
            yield ()
            return
        for a in range(p - i + 1):
            for b in range(q - j + 1):
                if (a == 0 and b != 1) or (b == 0 and a != 1):
                    continue
                head = (xs[i:i + a], ys[j:j + b])
                for rest in rec(i + a, j + b):
                    yield (head,) + rest

    return rec(0, 0)


def mb_to_product(M: MBStructure, u: TensorWord, v: TensorWord) -> LinComb:
    """The coalgebra-morphism product on tensor words determined by M.

    The component in k-letter words is the sum over all splittings of u and
    of v into k consecutive, possibly empty blocks with no block pair empty
    on both sides, of the word of operation values.
    """
    total = M.word_grade(u.letters) + M.word_grade(v.letters)
    if total > M.bound:
        raise DegreeBoundError(f"product on degree {total} exceeds bound {M.bound}")
    p, q = len(u.letters), len(v.letters)
    if p == 0:
        return LinComb.of(v)
    if q == 0:
        return LinComb.of(u)
    out = LinComb.zero()
    for blocks in paired_block_splits(u.letters, v.letters):
        factors = []
        for xb, yb in blocks:
            factor = M.eval(len(xb), len(yb), xb, yb)
            if factor.is_zero():
                factors = None
                break
            factors.append(factor)
        if factors is not None:
            out = out + lc_multi(factors, lambda *keys: TensorWord(keys))
    return out


def mb_product_map(M: MBStructure) -> Callable[[TensorWord, TensorWord], LinComb]:
    return lambda u, v: mb_to_product(M, u, v)


def product_to_mb(star: Callable[[TensorWord, TensorWord], LinComb],
                  bound: int,
                  grade: Callable[[Any], int] = lambda _key: 1,
                  name: str = "M[*]") -> MBStructure:
    """Extract the operations M_pq as the one-letter component of the product."""
    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        prod = star(TensorWord(xs), TensorWord(ys))
        return LinComb.from_terms(
            (w.letters[0], c) for w, c in prod.items() if len(w.letters) == 1)
    return MBStructure(bound, rule, grade=grade, name=name)


def roundtrip_check(star: Callable[[TensorWord, TensorWord], LinComb],
                    M: MBStructure,
                    words: list[TensorWord]) -> Check:
    """Compare the reconstructed product with the original on given words."""
    for u in words:
        for v in words:
            total = M.word_grade(u.letters) + M.word_grade(v.letters)
            if total > M.bound:
                continue
            if mb_to_product(M, u, v) != star(u, v):
                return ("mb-roundtrip", False,
                        f"reconstruction differs from the product on {u} * {v}; "
                        "the product is not a coalgebra morphism")
    return ("mb-roundtrip", True, f"checked {len(words)}^2 word pairs")


def check_associative(M: MBStructure, words: list[TensorWord],
                      name: str = "associative") -> Check:
    """(u*v)*w = u*(v*w) for all word triples within the bound."""
    for u in words:
        for v in words:
            for w in words:
                total = (M.word_grade(u.letters) + M.word_grade(v.letters)
                         + M.word_grade(w.letters))
                if total > M.bound:
                    continue
                left = mb_to_product(M, u, v).apply(
                    lambda t: mb_to_product(M, t, w))
                right = mb_to_product(M, v, w).apply(
                    lambda t: mb_to_product(M, u, t))
                if left != right:
                    return (f"{name}[{M.name}]", False,
                            f"fails on ({u})({v})({w})")
    return (f"{name}[{M.name}]", True, f"{len(words)}^3 word triples")


def check_hopf_compatible(M: MBStructure, words: list[TensorWord]) -> Check:
    """Deconcatenation is multiplicative for the reconstructed product."""
    from hopfalg.core import deconcat
    for u in words:
        for v in words:
            if M.word_grade(u.letters) + M.word_grade(v.letters) > M.bound:
                continue
            lhs = mb_to_product(M, u, v).apply(deconcat)
            rhs = lc_multi([deconcat(u), deconcat(v)], lambda p, q: (p, q)).apply(
                lambda pq: lc_multi(
                    [mb_to_product(M, pq[0][0], pq[1][0]),
                     mb_to_product(M, pq[0][1], pq[1][1])],
                    lambda left, right: (left, right)))
            if lhs != rhs:
                return (f"hopf-compatible[{M.name}]", False,
                        f"fails on ({u})({v})")
    return (f"hopf-compatible[{M.name}]", True, f"{len(words)}^2 word pairs")


# ---------------------------------------------------------------------------
# The relation family
# ---------------------------------------------------------------------------


def relation_sides(M: MBStructure, xs: tuple, ys: tuple, zs: tuple
                   ) -> tuple[LinComb, LinComb]:
    """Both sides of the relation indexed by the lengths of xs, ys, zs."""
    i = len(xs)
    lhs = LinComb.zero()
    for blocks in paired_block_splits(tuple(xs), tuple(ys)):
        inner = [M.eval(len(xb), len(yb), xb, yb) for xb, yb in blocks]
        lhs = lhs + M.eval_elements(len(blocks), len(zs), tuple(inner), zs)
    rhs = LinComb.zero()
    for blocks in paired_block_splits(tuple(ys), tuple(zs)):
        inner = [M.eval(len(yb), len(zb), yb, zb) for yb, zb in blocks]
        rhs = rhs + M.eval_elements(i, len(blocks), xs, tuple(inner))
    return lhs, rhs


def check_R(M: MBStructure, i: int, j: int, k: int,
            samples: list[tuple[tuple, tuple, tuple]]) -> Check:
    """Evaluate both sides of the (i, j, k) relation on the sample blocks."""
    name = f"R_{i}{j}{k}[{M.name}]"
    for xs, ys, zs in samples:
        lhs, rhs = relation_sides(M, xs, ys, zs)
        if lhs != rhs:
            return (name, False,
                    f"on ({xs};{ys};{zs}): lhs-rhs = {lhs - rhs!r}")
    return (name, True, f"{len(samples)} sample(s)")


def check_brace(B: MBStructure, n: int, m: int,
                samples: list[tuple[Any, tuple, tuple]]) -> Check:
    """Brace relation: composing braces distributes the outer arguments in order."""
    name = f"brace_{n}{m}[{B.name}]"
    for x, ys, zs in samples:
        inner = B.eval(1, n, (x,), ys)
        lhs = B.eval_elements(1, m, (inner,), zs)
        rhs = LinComb.zero()
        for comp, blocks in _block_splits(tuple(zs), 2 * n + 1):
            args: list = list(blocks[0])
            for a in range(1, n + 1):
                prime = blocks[2 * a - 1]
                args.append(B.eval(1, len(prime), (ys[a - 1],), prime))
                args.extend(blocks[2 * a])
            rhs = rhs + B.eval_elements(1, len(args), (x,), tuple(args))
        if lhs != rhs:
            return (name, False, f"on ({x};{ys};{zs}): lhs-rhs = {lhs - rhs!r}")
    return (name, True, f"{len(samples)} sample(s)")


def check_rightsided(star: Callable[[TensorWord, TensorWord], LinComb],
                     M: MBStructure,
                     words: list[TensorWord]) -> tuple[bool, list[Check]]:
    """Both characterisations of right-sidedness, and their agreement.

    (a) filtration: every term of u * v has at least as many letters as u;
    (b) extracted operations M_pq vanish for p >= 2.
    """
    ideal_ok, ideal_witness = True, ""
    for u in words:
        for v in words:
            if M.word_grade(u.letters) + M.word_grade(v.letters) > M.bound:
                continue
            prod = star(u, v)
            bad = [w for w, _ in prod.items() if len(w.letters) < len(u.letters)]
            if bad:
                ideal_ok, ideal_witness = False, (
                    f"{u} * {v} has component {bad[0]} below filtration "
                    f"{len(u.letters)}")
                break
        if not ideal_ok:
            break

    mb_ok, mb_witness = True, ""
    letters = sorted({l for w in words for l in w.letters}, key=str)
    extracted = product_to_mb(star, M.bound, grade=M.grade)
    for p in range(2, 4):
        for q in range(1, 3):
            for xs in itertools.product(letters, repeat=p):
                for ys in itertools.product(letters, repeat=q):
                    if extracted.word_grade(xs) + extracted.word_grade(ys) > M.bound:
                        continue
                    value = extracted.eval(p, q, xs, ys)
                    if not value.is_zero():
                        mb_ok, mb_witness = False, (
                            f"M_{p}{q}({xs};{ys}) = {value!r} is nonzero")
                        break
                if not mb_ok:
                    break
            if not mb_ok:
                break
        if not mb_ok:
            break

    checks = [
        ("rightsided-ideal", ideal_ok, ideal_witness or "filtration preserved"),
        ("rightsided-mb", mb_ok, mb_witness or "all M_pq with p>=2 vanish"),
        ("rightsided-agree", ideal_ok == mb_ok,
         f"ideal={ideal_ok} extraction={mb_ok}"),
    ]
    return ideal_ok and mb_ok, checks


# ---------------------------------------------------------------------------
# Brace expressions and their normal form on labeled trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraceExpr:
    """Nested brace expression {head; args...}; atoms are plain labels."""

    head: Any
    args: tuple = ()


@dataclass(frozen=True, order=True)
class LabeledTree:
    """Planar rooted tree whose vertices carry labels; the brace normal form."""

    label: Any
    children: tuple["LabeledTree", ...] = ()

    @property
    def vertices(self) -> int:
        return 1 + sum(c.vertices for c in self.children)

    def shape(self) -> PlanarUnreducedTree:
        return PlanarUnreducedTree(tuple(c.shape() for c in self.children))

    def preorder_labels(self) -> list:
        out = [self.label]
        for c in self.children:
            out.extend(c.preorder_labels())
        return out

    def __str__(self) -> str:
        if not self.children:
            return str(self.label)
        return "{" + str(self.label) + ";" + ",".join(map(str, self.children)) + "}"


def brace_normalize(expr: Any) -> LinComb:
    """Rewrite nested braces into a combination of labeled trees.

    A brace whose first argument is itself a brace is expanded through the
    brace relation, oriented left to right, until every brace has a bare
    generator in head position; such expressions are exactly labeled trees.
    """
    if not isinstance(expr, BraceExpr):
        return LinComb.of(LabeledTree(expr, ()))
    head = brace_normalize(expr.head)
    args = [brace_normalize(a) for a in expr.args]
    factors = [head] + args
    return lc_multi(factors, lambda *trees: trees).apply(
        lambda trees: _attach(trees[0], trees[1:]))


def _attach(tree: LabeledTree, args: tuple) -> LinComb:
    # normal form of {tree; args} for already-normalized arguments
    if not args:
        return LinComb.of(tree)
    if not tree.children:
        return LinComb.of(LabeledTree(tree.label, tuple(args)))
    n = len(tree.children)
    out = LinComb.zero()
    for comp, blocks in _block_splits(tuple(args), 2 * n + 1):
        inner = [_attach(tree.children[a - 1], blocks[2 * a - 1])
                 for a in range(1, n + 1)]
        def assemble(*trees):
            children = list(blocks[0])
            for a in range(1, n + 1):
                children.append(trees[a - 1])
                children.extend(blocks[2 * a])
            return LabeledTree(tree.label, tuple(children))
        out = out + lc_multi(inner, assemble)
    return out


# ---------------------------------------------------------------------------
# The operad of braces on (tree, permutation) pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OperadElement:
    """Linear combination of pairs (planar unreduced tree, permutation)."""

    arity: int
    terms: LinComb

    def __post_init__(self):
        for (tree, perm), _ in self.terms.items():
            if tree.vertices != self.arity or perm.size != self.arity:
                raise ValueError("basis pair does not match the declared arity")

    @staticmethod
    def of(tree: PlanarUnreducedTree, perm: Permutation, coeff=1) -> "OperadElement":
        return OperadElement(tree.vertices, LinComb.of((tree, perm), coeff))

    @staticmethod
    def unit() -> "OperadElement":
        return OperadElement.of(PlanarUnreducedTree(), Permutation((1,)))

    def __add__(self, other: "OperadElement") -> "OperadElement":
        if other.arity != self.arity:
            raise ValueError("cannot add operad elements of different arities")
        return OperadElement(self.arity, self.terms + other.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperadElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __str__(self) -> str:
        from hopfalg.core import lc_text
        return lc_text(self.terms, key_text=lambda p: f"{p[0]} x {p[1]}")


def corolla_generator(n: int) -> OperadElement:
    """The n-ary generating operation: corolla with the identity permutation."""
    tree = PlanarUnreducedTree(tuple(PlanarUnreducedTree() for _ in range(n)))
    return OperadElement.of(tree, Permutation.identity(n + 1))


def tree_to_expression(tree: PlanarUnreducedTree, values: list) -> Any:
    """Brace expression of a tree, vertex k (standard labeling) holding values[k-1]."""
    paths = standard_labeling(tree)
    index = {path: i for i, path in enumerate(paths)}

    def build(node: PlanarUnreducedTree, path: tuple) -> Any:
        head = values[index[path]]
        if not node.children:
            return head
        return BraceExpr(head, tuple(build(c, path + (i,))
                                     for i, c in enumerate(node.children)))

    return build(tree, ())


def _encode_labeled(tree: LabeledTree) -> tuple[PlanarUnreducedTree, Permutation]:
    shape = tree.shape()
    return shape, Permutation(tuple(tree.preorder_labels()))


def brace_compose(mu: OperadElement, i: int, nu: OperadElement) -> OperadElement:
    """Partial composition: substitute nu into the i-th input of mu.

    Basis pairs are read as brace expressions with formal arguments,
    substituted, and renormalised.  When the i-th vertex is a leaf this is
    plain grafting; at the root or an internal vertex the brace relation
    expands the result into a sum.
    """
    m, n = mu.arity, nu.arity
    if not 1 <= i <= m:
        raise ValueError(f"composition index {i} outside 1..{m}")
    out = LinComb.zero()
    for (t, sigma), c1 in mu.terms.items():
        for (r, tau), c2 in nu.terms.items():
            nu_expr = tree_to_expression(
                r, [i - 1 + tau(k) for k in range(1, n + 1)])

            def slot(j: int):
                if j < i:
                    return j
                if j == i:
                    return nu_expr
                return j + n - 1

            expr = tree_to_expression(
                t, [slot(sigma(k)) for k in range(1, m + 1)])
            normal = brace_normalize(expr)
            out = out + normal.map_keys(_encode_labeled).scale(c1 * c2)
    return OperadElement(m + n - 1, out)
