"""Symmetric multibraces, pre-Lie algebras and the rooted-tree Hopf pair.

The cocommutative counterpart of the multibrace machinery: operations act on
multisets, products are reconstructed through shuffle-type splittings with
1/r! weights, and the right-sided case degenerates to symmetric braces,
which are the same thing as pre-Lie algebras (Guin-Oudom).  The free pre-Lie
algebra lives on rooted trees; its symmetric-coalgebra Hopf closure carries
the Grossman-Larson product, graded dual to the Connes-Kreimer coproduct by
admissible cuts.  Nilpotent Lie algebras enter through their enveloping
algebras and the Eulerian coalgebra isomorphism.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable

from hopfalg.core import (
    DegreeBoundError,
    HopfModel,
    LinComb,
    SymWord,
    as_lincomb,
    invert_on_basis,
    lc_multi,
    unshuffle,
)
from hopfalg.trees import RootedTree, block_shuffle_splits, compositions, rooted_trees

Check = tuple[str, bool, str]


# ---------------------------------------------------------------------------
# Symmetric multibrace structures
# ---------------------------------------------------------------------------


@dataclass
class SMBStructure:
    """Family of (p, q)-symmetric operations on a generator space.

    Arguments are canonically sorted before the rule is consulted, so rules
    may assume multiset order.  Mandated values mirror the tensor case.
    """

    bound: int
    rule: Callable[[int, int, tuple, tuple], LinComb]
    grade: Callable[[Any], int] = lambda _key: 1
    name: str = "SM"

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
        return self.rule(p, q, _sorted(xs), _sorted(ys))

    def eval_elements(self, p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        factors = [as_lincomb(x) for x in tuple(xs) + tuple(ys)]
        return lc_multi(
            factors, lambda *keys: (keys[:p], keys[p:])
        ).apply(lambda split: self.eval(p, q, split[0], split[1]))


def _sorted(letters: tuple) -> tuple:
    return tuple(sorted(letters, key=lambda l: (str(l), repr(l))))


def trivial_smb(bound: int = 6) -> SMBStructure:
    return SMBStructure(bound, lambda p, q, xs, ys: LinComb.zero(), name="trivial")


def sbrace_structure(bound: int, m1q: Callable[[int, tuple, tuple], LinComb],
                     grade: Callable[[Any], int] = lambda _key: 1,
                     name: str = "SB") -> SMBStructure:
    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        if p >= 2:
            return LinComb.zero()
        return m1q(q, xs, ys)
    return SMBStructure(bound, rule, grade=grade, name=name)


# ---------------------------------------------------------------------------
# Product reconstruction and the symmetric relation family
# ---------------------------------------------------------------------------


def smb_to_product(M: SMBStructure, u: SymWord, v: SymWord) -> LinComb:
    """Product on multiset words from ordered block splittings with 1/r! weights."""
    total = M.word_grade(u.letters) + M.word_grade(v.letters)
    if total > M.bound:
        raise DegreeBoundError(f"product on degree {total} exceeds bound {M.bound}")
    p, q = len(u.letters), len(v.letters)
    if p == 0:
        return LinComb.of(v)
    if q == 0:
        return LinComb.of(u)
    out = LinComb.zero()
    for r in range(1, p + q + 1):
        weight = Fraction(1, math.factorial(r))
        for pcomp in compositions(p, r, minimum=0):
            for qcomp in compositions(q, r, minimum=0):
                if any(a == 0 and b == 0 for a, b in zip(pcomp, qcomp)):
                    continue
                if any((a == 0 and b >= 2) or (b == 0 and a >= 2)
                       for a, b in zip(pcomp, qcomp)):
                    continue
                for ublocks in block_shuffle_splits(u.letters, pcomp):
                    for vblocks in block_shuffle_splits(v.letters, qcomp):
                        factors = [
                            M.eval(a, b, ub, vb)
                            for a, b, ub, vb in
                            zip(pcomp, qcomp, ublocks, vblocks)]
                        out = out + lc_multi(
                            factors,
                            lambda *keys: SymWord.make(keys)).scale(weight)
    return out


def smb_product_map(M: SMBStructure) -> Callable[[SymWord, SymWord], LinComb]:
    return lambda u, v: smb_to_product(M, u, v)


def product_to_smb(star: Callable[[SymWord, SymWord], LinComb], bound: int,
                   grade: Callable[[Any], int] = lambda _key: 1,
                   name: str = "SM[*]") -> SMBStructure:
    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        prod = star(SymWord.make(xs), SymWord.make(ys))
        return LinComb.from_terms(
            (w.letters[0], c) for w, c in prod.items() if len(w.letters) == 1)
    return SMBStructure(bound, rule, grade=grade, name=name)


def symmetric_relation_sides(M: SMBStructure, xs: tuple, ys: tuple, zs: tuple
                             ) -> tuple[LinComb, LinComb]:
    """Both sides of the symmetric relation indexed by the block lengths."""
    n, m, r = len(xs), len(ys), len(zs)
    lhs = LinComb.zero()
    for k in range(1, n + m + 1):
        weight = Fraction(1, math.factorial(k))
        for ncomp in compositions(n, k, minimum=0):
            for mcomp in compositions(m, k, minimum=0):
                if any(a == 0 and b == 0 for a, b in zip(ncomp, mcomp)):
                    continue
                for xblocks in block_shuffle_splits(tuple(xs), ncomp):
                    for yblocks in block_shuffle_splits(tuple(ys), mcomp):
                        inner = [M.eval(a, b, xb, yb)
                                 for a, b, xb, yb in
                                 zip(ncomp, mcomp, xblocks, yblocks)]
                        lhs = lhs + M.eval_elements(
                            k, r, tuple(inner), tuple(zs)).scale(weight)
    rhs = LinComb.zero()
    for l in range(1, m + r + 1):
        weight = Fraction(1, math.factorial(l))
        for mcomp in compositions(m, l, minimum=0):
            for rcomp in compositions(r, l, minimum=0):
                if any(a == 0 and b == 0 for a, b in zip(mcomp, rcomp)):
                    continue
                for yblocks in block_shuffle_splits(tuple(ys), mcomp):
                    for zblocks in block_shuffle_splits(tuple(zs), rcomp):
                        inner = [M.eval(a, b, yb, zb)
                                 for a, b, yb, zb in
                                 zip(mcomp, rcomp, yblocks, zblocks)]
                        rhs = rhs + M.eval_elements(
                            n, l, tuple(xs), tuple(inner)).scale(weight)
    return lhs, rhs


def check_smb_associative(M: SMBStructure, words: list[SymWord],
                          name: str = "associative") -> Check:
    for u in words:
        for v in words:
            for w in words:
                total = (M.word_grade(u.letters) + M.word_grade(v.letters)
                         + M.word_grade(w.letters))
                if total > M.bound:
                    continue
                left = smb_to_product(M, u, v).apply(
                    lambda t: smb_to_product(M, t, w))
                right = smb_to_product(M, v, w).apply(
                    lambda t: smb_to_product(M, u, t))
                if left != right:
                    return (f"{name}[{M.name}]", False,
                            f"fails on ({u})({v})({w})")
    return (f"{name}[{M.name}]", True, f"{len(words)}^3 word triples")


def check_smb_hopf(M: SMBStructure, words: list[SymWord]) -> Check:
    """The unshuffle coproduct is multiplicative for the reconstructed product."""
    for u in words:
        for v in words:
            if M.word_grade(u.letters) + M.word_grade(v.letters) > M.bound:
                continue
            lhs = smb_to_product(M, u, v).apply(unshuffle)
            rhs = lc_multi([unshuffle(u), unshuffle(v)], lambda p, q: (p, q)).apply(
                lambda pq: lc_multi(
                    [smb_to_product(M, pq[0][0], pq[1][0]),
                     smb_to_product(M, pq[0][1], pq[1][1])],
                    lambda left, right: (left, right)))
            if lhs != rhs:
                return (f"smb-hopf[{M.name}]", False, f"fails on ({u})({v})")
    return (f"smb-hopf[{M.name}]", True, f"{len(words)}^2 word pairs")


def check_SR(M: SMBStructure, i: int, j: int, k: int,
             samples: list[tuple[tuple, tuple, tuple]]) -> Check:
    name = f"SR_{i}{j}{k}[{M.name}]"
    for xs, ys, zs in samples:
        lhs, rhs = symmetric_relation_sides(M, xs, ys, zs)
        if lhs != rhs:
            return (name, False, f"on ({xs};{ys};{zs}): lhs-rhs = {lhs - rhs!r}")
    return (name, True, f"{len(samples)} sample(s)")


def sr_reference_instances(M: SMBStructure, u, v, w, x) -> list[Check]:
    """The four low-arity relation instances, spelled out term by term."""
    def m(p, q, xs, ys):
        return M.eval_elements(p, q, tuple(xs), tuple(ys))

    out: list[Check] = []
    lhs = m(2, 1, (u, v), (w,)) + m(1, 1, (m(1, 1, (u,), (v,)),), (w,))
    rhs = m(1, 1, (u,), (m(1, 1, (v,), (w,)),)) + m(1, 2, (u,), (v, w))
    out.append((f"SR_111[{M.name}]", lhs == rhs, "M21(uv;w)+M11(M11(u;v);w) "
                "== M11(u;M11(v;w))+M12(u;vw)"))

    lhs = m(2, 2, (u, v), (w, x)) + m(1, 2, (m(1, 1, (u,), (v,)),), (w, x))
    rhs = (m(1, 3, (u,), (v, w, x))
           + m(1, 2, (u,), (m(1, 1, (v,), (w,)), x))
           + m(1, 2, (u,), (w, m(1, 1, (v,), (x,))))
           + m(1, 1, (u,), (m(1, 2, (v,), (w, x)),)))
    out.append((f"SR_112[{M.name}]", lhs == rhs, "M22(uv;wx)+M12(M11(u;v);wx) "
                "== M13(u;vwx)+M12(u;M11(v;w)x)+M12(u;wM11(v;x))+M11(u;M12(v;wx))"))

    lhs = (m(3, 1, (u, v, w), (x,))
           + m(2, 1, (m(1, 1, (u,), (v,)), w), (x,))
           + m(2, 1, (v, m(1, 1, (u,), (w,))), (x,))
           + m(1, 1, (m(1, 2, (u,), (v, w)),), (x,)))
    rhs = (m(1, 3, (u,), (v, w, x))
           + m(1, 2, (u,), (v, m(1, 1, (w,), (x,))))
           + m(1, 2, (u,), (m(1, 1, (v,), (x,)), w))
           + m(1, 1, (u,), (m(2, 1, (v, w), (x,)),)))
    out.append((f"SR_121[{M.name}]", lhs == rhs, "M31(uvw;x)+M21(M11(u;v)w;x)"
                "+M21(vM11(u;w);x)+M11(M12(u;vw);x) == M13(u;vwx)"
                "+M12(u;vM11(w;x))+M12(u;M11(v;x)w)+M11(u;M21(vw;x))"))

    lhs = (m(3, 1, (u, v, w), (x,))
           + m(2, 1, (u, m(1, 1, (v,), (w,))), (x,))
           + m(2, 1, (m(1, 1, (u,), (w,)), v), (x,))
           + m(1, 1, (m(2, 1, (u, v), (w,)),), (x,)))
    rhs = m(2, 2, (u, v), (w, x)) + m(2, 1, (u, v), (m(1, 1, (w,), (x,)),))
    out.append((f"SR_211[{M.name}]", lhs == rhs, "M31(uvw;x)+M21(uM11(v;w);x)"
                "+M21(M11(u;w)v;x)+M11(M21(uv;w);x) == M22(uv;wx)"
                "+M21(uv;M11(w;x))"))
    return out


# ---------------------------------------------------------------------------
# From commutative-and-associative contexts
# ---------------------------------------------------------------------------


def comas_to_smb(star: Callable, dot: Callable, embed: Callable[[Any], LinComb],
                 bound: int, grade: Callable[[Any], int] = lambda _key: 1,
                 name: str = "SM[comas]") -> SMBStructure:
    """Extract the symmetric multibrace operations of a ComAs context.

    ``star``/``dot`` act on ambient elements and ``embed`` maps a generator
    key to its ambient image; the recursion solves the shuffle-splitting
    expansion of the product for the top operation, which must come out
    primitive (a combination of embedded generators).
    """
    cache: dict = {}

    def dotfold(values: list) -> LinComb:
        acc = as_lincomb(values[0])
        for v in values[1:]:
            acc = dot(acc, v)
        return acc

    def expand(p, q, xs, ys) -> LinComb:
        # ambient-valued operation values by the recursion
        key = (p, q, xs, ys)
        if key in cache:
            return cache[key]
        if p == 1 and q == 0:
            return embed(xs[0])
        if p == 0 and q == 1:
            return embed(ys[0])
        if p == 0 or q == 0:
            return LinComb.zero()
        value = star(dotfold([embed(x) for x in xs]),
                     dotfold([embed(y) for y in ys]))
        for r in range(2, p + q + 1):
            weight = Fraction(1, math.factorial(r))
            for pcomp in compositions(p, r, minimum=0):
                for qcomp in compositions(q, r, minimum=0):
                    if any(a == 0 and b == 0 for a, b in zip(pcomp, qcomp)):
                        continue
                    if any((a == 0 and b >= 2) or (b == 0 and a >= 2)
                           for a, b in zip(pcomp, qcomp)):
                        continue
                    for ublocks in block_shuffle_splits(tuple(xs), pcomp):
                        for vblocks in block_shuffle_splits(tuple(ys), qcomp):
                            factors = [expand(a, b, _sorted(ub), _sorted(vb))
                                       for a, b, ub, vb in
                                       zip(pcomp, qcomp, ublocks, vblocks)]
                            value = value - dotfold(factors).scale(weight)
        cache[key] = value
        return value

    generator_of: dict = {}

    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        value = expand(p, q, xs, ys)
        return value.apply(lambda amb: LinComb.of(_unembed(amb, embed, generator_of)))

    return SMBStructure(bound, rule, grade=grade, name=name)


def _unembed(ambient_key: Any, embed: Callable, cache: dict) -> Any:
    # recover the generator key from a length-one ambient key
    if ambient_key in cache:
        return cache[ambient_key]
    if isinstance(ambient_key, SymWord) and len(ambient_key.letters) == 1:
        cache[ambient_key] = ambient_key.letters[0]
        return ambient_key.letters[0]
    raise ValueError(
        f"extraction produced the non-primitive ambient key {ambient_key}")


# ---------------------------------------------------------------------------
# Nilpotent Lie algebras and their enveloping algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants on a graded basis; the grading bounds all brackets."""

    names: tuple[str, ...]
    weights: tuple[int, ...]
    table: tuple[tuple[int, int, tuple[tuple[int, Fraction], ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "_table_map",
                           {(i, j): dict(entries) for i, j, entries in self.table})

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket(self, i: int, j: int) -> LinComb:
        if i == j:
            return LinComb.zero()
        if i > j:
            return -self.bracket(j, i)
        entries = self._table_map.get((i, j), {})
        return LinComb.from_terms(entries.items())

    def bracket_lc(self, a: Any, b: Any) -> LinComb:
        out = LinComb.zero()
        for ka, ca in as_lincomb(a).items():
            for kb, cb in as_lincomb(b).items():
                out = out + self.bracket(ka, kb).scale(ca * cb)
        return out

    def max_weight(self) -> int:
        return max(self.weights)

    def check_jacobi(self) -> Check:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            total = (self.bracket_lc(self.bracket(i, j), LinComb.of(k))
                     + self.bracket_lc(self.bracket(j, k), LinComb.of(i))
                     + self.bracket_lc(self.bracket(k, i), LinComb.of(j)))
            if not total.is_zero():
                return ("jacobi", False, f"fails on basis triple ({i},{j},{k})")
        return ("jacobi", True, f"all triples of {self.dim} basis elements")


def lie_from_json(data: dict) -> LieAlgebra:
    """Load a Lie algebra from its JSON description.

    Expected shape: ``{"basis": [name, ...], "weights": [int, ...],
    "brackets": [{"left": i, "right": j, "value": [[k, "p/q"], ...]}, ...]}``
    with zero-based indices, entries only for left < right.  Antisymmetry
    and the Jacobi identity are verified on load.
    """
    names = tuple(data["basis"])
    weights = tuple(int(w) for w in data["weights"])
    if len(names) != len(weights):
        raise ValueError("basis and weights must have the same length")
    table = []
    for entry in data.get("brackets", []):
        i, j = int(entry["left"]), int(entry["right"])
        if not 0 <= i < j < len(names):
            raise ValueError(f"bracket indices ({i},{j}) must satisfy "
                             f"0 <= i < j < {len(names)}")
        value = tuple((int(k), Fraction(str(c))) for k, c in entry["value"])
        table.append((i, j, value))
    lie = LieAlgebra(names, weights, tuple(table))
    name, ok, witness = lie.check_jacobi()
    if not ok:
        raise ValueError(f"not a Lie algebra: {witness}")
    for i, j, entries in table:
        for k, _ in entries:
            if weights[k] != weights[i] + weights[j]:
                raise ValueError(
                    f"bracket [{names[i]},{names[j]}] is not weight-graded")
    return lie


def lie_to_json(lie: LieAlgebra) -> dict:
    return {
        "basis": list(lie.names),
        "weights": list(lie.weights),
        "brackets": [
            {"left": i, "right": j,
             "value": [[k, str(c)] for k, c in entries]}
            for i, j, entries in lie.table],
    }


def free_nilpotent_lie(generators: int, nil_class: int) -> LieAlgebra:
    """Free Lie algebra on the given generators, truncated beyond ``nil_class``.

    Basis: generators (weight 1); pair brackets [x_i, x_j], i < j (weight 2);
    and for class three the left-normed triples [[x_i, x_j], x_k] with i < j
    and k >= i, the dropped triples being rewritten through the Jacobi identity.
    """
    if nil_class not in (2, 3):
        raise ValueError("only classes 2 and 3 are provided")
    g = generators
    names = [f"x{i + 1}" for i in range(g)]
    weights = [1] * g
    pair_index: dict[tuple[int, int], int] = {}
    for i in range(g):
        for j in range(i + 1, g):
            pair_index[(i, j)] = len(names)
            names.append(f"[x{i + 1},x{j + 1}]")
            weights.append(2)
    triple_index: dict[tuple[int, int, int], int] = {}
    if nil_class >= 3:
        for i in range(g):
            for j in range(i + 1, g):
                for k in range(g):
                    if k < i:
                        continue  # rewritten via Jacobi
                    triple_index[(i, j, k)] = len(names)
                    names.append(f"[[x{i + 1},x{j + 1}],x{k + 1}]")
                    weights.append(3)

    def triple(i: int, j: int, k: int) -> LinComb:
        # [[x_i, x_j], x_k] for i < j, as a combination of basis triples
        if (i, j, k) in triple_index:
            return LinComb.of(triple_index[(i, j, k)])
        # here k < i < j: [[x_i,x_j],x_k] = -[[x_k,x_i],x_j] + [[x_k,x_j],x_i]
        return (-LinComb.of(triple_index[(k, i, j)])
                + LinComb.of(triple_index[(k, j, i)]))

    table: list[tuple[int, int, tuple]] = []
    for i in range(g):
        for j in range(i + 1, g):
            table.append((i, j, ((pair_index[(i, j)], Fraction(1)),)))
    if nil_class >= 3:
        for (i, j), e in sorted(pair_index.items(), key=lambda kv: kv[1]):
            for k in range(g):
                lo, hi = min(e, k), max(e, k)
                value = triple(i, j, k)
                if k < e:
                    value = -value
                entries = tuple(value.items())
                if entries:
                    table.append((lo, hi, entries))
    return LieAlgebra(tuple(names), tuple(weights), tuple(table))


class UEA:
    """Enveloping algebra of a graded nilpotent Lie algebra, on its PBW basis.

    Basis keys are nondecreasing tuples of generator indices; the product
    concatenates and straightens, the coproduct makes generators primitive.
    """

    def __init__(self, lie: LieAlgebra, bound: int):
        self.lie = lie
        self.bound = bound
        self._straighten_memo: dict = {}

    def grade(self, word: tuple) -> int:
        return sum(self.lie.weights[i] for i in word)

    def straighten(self, word: tuple) -> LinComb:
        if word in self._straighten_memo:
            return self._straighten_memo[word]
        if self.grade(word) > self.bound:
            raise DegreeBoundError("straightening beyond the truncation bound")
        result = None
        for pos in range(len(word) - 1):
            if word[pos] > word[pos + 1]:
                swapped = word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2:]
                bracket = self.lie.bracket(word[pos], word[pos + 1])
                shorter = bracket.apply(lambda k: self.straighten(
                    word[:pos] + (k,) + word[pos + 2:]))
                result = self.straighten(swapped) + shorter
                break
        if result is None:
            result = LinComb.of(word)
        self._straighten_memo[word] = result
        return result

    def product(self, w1: tuple, w2: tuple) -> LinComb:
        return self.straighten(w1 + w2)

    def coproduct(self, word: tuple) -> LinComb:
        out = []
        for mask in itertools.product((0, 1), repeat=len(word)):
            left = tuple(l for l, m in zip(word, mask) if m == 0)
            right = tuple(l for l, m in zip(word, mask) if m == 1)
            out.append(((left, right), 1))
        return LinComb.from_terms(out)

    def model(self) -> HopfModel:
        return HopfModel(product=self.product, coproduct=self.coproduct,
                         unit=(), grade=self.grade, bound=self.bound)

    def pbw_words(self, weight: int) -> list[tuple]:
        """PBW basis words of the given total weight."""
        indices = range(self.lie.dim)

        def rec(min_index: int, remaining: int) -> list[tuple]:
            if remaining == 0:
                return [()]
            out = []
            for i in indices:
                if i < min_index:
                    continue
                w = self.lie.weights[i]
                if w <= remaining:
                    out.extend((i,) + tail for tail in rec(i, remaining - w))
            return out

        return [w for w in rec(0, weight) if w]


def lie_to_smb(lie: LieAlgebra, bound: int, name: str = "SM[lie]"
               ) -> SMBStructure:
    """Transport the enveloping-algebra product through the Eulerian isomorphism.

    The coalgebra isomorphism U(g) = S(g) has n-th component
    (1/n!) (e1 x ... x e1) applied to the n-fold reduced coproduct, with e1
    the convolution logarithm of the identity; its inverse is computed
    weight by weight by exact matrix inversion.
    """
    uea = UEA(lie, bound)
    model = uea.model()
    e1 = model.conv_log()

    def to_sym(word: tuple) -> LinComb:
        if not word:
            return LinComb.of(SymWord())
        total = LinComb.zero()
        current = model.reduced_iterate(1, word)
        n = 1
        while not current.is_zero():
            weight = Fraction(1, math.factorial(n))
            legs = current.apply(
                lambda keys: lc_multi([e1(LinComb.of(k)) for k in keys],
                                      lambda *gs: SymWord.make(g[0] for g in gs)))
            total = total + legs.scale(weight)
            current = current.apply(model._split_first)
            n += 1
        return total

    inverses: dict[int, Callable] = {}

    def from_sym(sym: SymWord) -> LinComb:
        weight = sum(lie.weights[i] for i in sym.letters)
        if weight not in inverses:
            domain = uea.pbw_words(weight)
            inverses[weight] = invert_on_basis(domain, lambda w: to_sym(w))
        return inverses[weight](LinComb.of(sym))

    def rule(p: int, q: int, xs: tuple, ys: tuple) -> LinComb:
        left = from_sym(SymWord.make(xs))
        right = from_sym(SymWord.make(ys))
        prod = LinComb.zero()
        for ka, ca in left.items():
            for kb, cb in right.items():
                prod = prod + uea.product(ka, kb).scale(ca * cb)
        image = e1(prod)
        return image.map_keys(lambda w: w[0])

    return SMBStructure(bound, rule,
                        grade=lambda i: lie.weights[i], name=name)


# ---------------------------------------------------------------------------
# Symmetric braces = pre-Lie algebras
# ---------------------------------------------------------------------------


def guin_oudom(m11: Callable[[Any, Any], LinComb], bound: int,
               grade: Callable[[Any], int] = lambda _key: 1,
               name: str = "SB[prelie]") -> SMBStructure:
    """Symmetric brace operations generated by a pre-Lie product.

    M_1n peels the last argument: brace with it, minus the sum of insertions
    into the other arguments.
    """
    cache: dict = {}

    def m1q(q: int, xs: tuple, ys: tuple) -> LinComb:
        x = xs[0]
        key = (x, ys)
        if key in cache:
            return cache[key]
        if q == 1:
            value = m11(x, ys[0])
        else:
            head, last = ys[:-1], ys[-1]
            value = structure.eval_elements(
                1, 1, (structure.eval(1, q - 1, (x,), head),), (last,))
            for i in range(q - 1):
                inserted = m11(head[i], last)
                rest = head[:i] + head[i + 1:]
                value = value - structure.eval_elements(
                    1, q - 1, (x,), rest + (inserted,))
        cache[key] = value
        return value

    structure = sbrace_structure(bound, m1q, grade=grade, name=name)
    return structure


def check_symmetric_brace(B: SMBStructure, n: int, m: int,
                          samples: list[tuple[Any, tuple, tuple]]) -> Check:
    """Symmetric brace relation: outer arguments distribute over multiset splits."""
    name = f"sbrace_{n}{m}[{B.name}]"
    for x, ys, zs in samples:
        inner = B.eval(1, n, (x,), tuple(ys))
        lhs = B.eval_elements(1, m, (inner,), tuple(zs))
        rhs = LinComb.zero()
        for comp in compositions(m, n + 1, minimum=0):
            for blocks in block_shuffle_splits(tuple(zs), comp):
                args = [B.eval(1, len(blocks[a]), (ys[a],), blocks[a])
                        for a in range(n)]
                args.extend(blocks[n])
                rhs = rhs + B.eval_elements(1, n + len(blocks[n]), (x,),
                                            tuple(args))
        if lhs != rhs:
            return (name, False, f"on ({x};{ys};{zs}): lhs-rhs = {lhs - rhs!r}")
    return (name, True, f"{len(samples)} sample(s)")


# ---------------------------------------------------------------------------
# Free pre-Lie algebra on rooted trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LabeledRootedTree:
    """Rooted tree with labeled vertices and unordered (sorted) children."""

    label: str
    children: tuple["LabeledRootedTree", ...] = ()

    @staticmethod
    def make(label: str, children: Iterable["LabeledRootedTree"]
             ) -> "LabeledRootedTree":
        return LabeledRootedTree(label, tuple(sorted(children)))

    @property
    def vertices(self) -> int:
        return 1 + sum(c.vertices for c in self.children)

    def __str__(self) -> str:
        inner = " ".join(str(c) for c in self.children)
        return f"{self.label}[{inner}]" if inner else f"{self.label}[]"


def _attach_everywhere(host, new_child, rebuild) -> LinComb:
    out = rebuild(host, host.children + (new_child,))
    for i, child in enumerate(host.children):
        sub = _attach_everywhere(child, new_child, rebuild)
        rest = host.children[:i] + host.children[i + 1:]
        out = out + sub.apply(
            lambda t: rebuild(host, rest + (t,)))
    return out


def prelie_graft_labeled(a: Any, b: Any) -> LinComb:
    """Pre-Lie product on labeled rooted trees: sum of single-edge attachments."""
    def rebuild(node: LabeledRootedTree, children) -> LinComb:
        return LinComb.of(LabeledRootedTree.make(node.label, children))
    out = LinComb.zero()
    for ka, ca in as_lincomb(a).items():
        for kb, cb in as_lincomb(b).items():
            out = out + _attach_everywhere(ka, kb, rebuild).scale(ca * cb)
    return out


def prelie_graft(a: Any, b: Any) -> LinComb:
    """Pre-Lie product on unlabeled rooted trees."""
    def rebuild(node: RootedTree, children) -> LinComb:
        return LinComb.of(RootedTree.make(children))
    out = LinComb.zero()
    for ka, ca in as_lincomb(a).items():
        for kb, cb in as_lincomb(b).items():
            out = out + _attach_everywhere(ka, kb, rebuild).scale(ca * cb)
    return out


def check_prelie(product: Callable[[Any, Any], LinComb],
                 elements: list, name: str = "prelie") -> Check:
    """Associator symmetry in the last two arguments, on all element triples."""
    for x, y, z in itertools.product(elements, repeat=3):
        lhs = (product(product(x, y), z) - product(x, product(y, z)))
        rhs = (product(product(x, z), y) - product(x, product(z, y)))
        if lhs != rhs:
            return (name, False, f"fails on ({x},{y},{z})")
    return (name, True, f"{len(elements)}^3 triples")


# ---------------------------------------------------------------------------
# Grossman-Larson and Connes-Kreimer
# ---------------------------------------------------------------------------


def gl_smb(bound: int = 6) -> SMBStructure:
    """Symmetric braces of the free pre-Lie algebra on rooted trees."""
    return guin_oudom(lambda t, s: prelie_graft(t, s), bound,
                      grade=lambda t: t.vertices, name="SB[rooted]")


def gl_product(u: SymWord, v: SymWord, bound: int = 6) -> LinComb:
    """Grossman-Larson product on forests of rooted trees."""
    return smb_to_product(gl_smb(bound), u, v)


def gl_model(bound: int = 6) -> HopfModel:
    M = gl_smb(bound)
    return HopfModel(product=lambda u, v: smb_to_product(M, u, v),
                     coproduct=unshuffle, unit=SymWord(),
                     grade=lambda w: sum(t.vertices for t in w.letters),
                     bound=bound)


def admissible_cuts(t: RootedTree) -> list[tuple[SymWord, RootedTree | None]]:
    """All admissible cuts: one cut point on every root-to-leaf path.

    Returns (pruned forest, remaining tree) pairs; for the cut under the
    root the remaining part is ``None`` and the whole tree is pruned.
    """
    out: list[tuple[SymWord, RootedTree | None]] = [(SymWord.make([t]), None)]
    child_cuts = [admissible_cuts(c) for c in t.children]
    for combo in itertools.product(*child_cuts):
        pruned: list[RootedTree] = []
        kept: list[RootedTree] = []
        for forest, rest in combo:
            pruned.extend(forest.letters)
            if rest is not None:
                kept.append(rest)
        out.append((SymWord.make(pruned), RootedTree.make(kept)))
    return out


def ck_coproduct_tree(t: RootedTree) -> LinComb:
    return LinComb.from_terms(
        ((forest, SymWord() if rest is None else SymWord.make([rest])), 1)
        for forest, rest in admissible_cuts(t))


@lru_cache(maxsize=None)
def ck_coproduct_forest(f: SymWord) -> LinComb:
    """Connes-Kreimer coproduct, extended multiplicatively to forests."""
    if not f.letters:
        return LinComb.of((SymWord(), SymWord()))
    factors = [ck_coproduct_tree(t) for t in f.letters]
    return lc_multi(factors, lambda *pairs: (
        SymWord.make([x for p in pairs for x in p[0].letters]),
        SymWord.make([x for p in pairs for x in p[1].letters])))


def ck_model(bound: int = 6) -> HopfModel:
    return HopfModel(
        product=lambda u, v: LinComb.of(u.union(v)),
        coproduct=ck_coproduct_forest, unit=SymWord(),
        grade=lambda w: sum(t.vertices for t in w.letters), bound=bound)


def forests(n: int) -> list[SymWord]:
    """All forests (multisets of rooted trees) with n vertices in total."""
    if n == 0:
        return [SymWord()]
    pool = [t for size in range(1, n + 1) for t in rooted_trees(size)]

    def rec(start: int, remaining: int) -> list[tuple]:
        if remaining == 0:
            return [()]
        out = []
        for idx in range(start, len(pool)):
            size = pool[idx].vertices
            if size <= remaining:
                out.extend((pool[idx],) + tail
                           for tail in rec(idx, remaining - size))
        return out

    return sorted({SymWord.make(combo) for combo in rec(0, n)},
                  key=lambda w: str(w))


def forest_symmetry(f: SymWord) -> int:
    """Product of automorphism orders and multiset permutation factors."""
    from hopfalg.trees import automorphism_count
    total = 1
    for tree, mult in f.counts():
        total *= automorphism_count(tree) ** mult * math.factorial(mult)
    return total


def pairing_gl_ck(maxdeg: int = 3, bound: int = 6) -> list[Check]:
    """Duality of the Grossman-Larson product and the Connes-Kreimer coproduct.

    Uses the diagonal pairing <F, F> = forest symmetry factor (automorphism
    orders times multiplicity factorials), with the left product factor
    paired against the root part of each cut: the declared convention is
    <u * v, w> = sum over cuts of <u, R_c> <v, P_c>.  Both conventions are
    part of the reported detail string.
    """
    M = gl_smb(bound)
    results: list[Check] = []
    note = ("normalisation <F,F> = prod |Aut(t)|^mult * mult!; "
            "left factor pairs the root part R_c")
    for total in range(1, maxdeg + 1):
        ok, witness = True, ""
        for du in range(0, total + 1):
            for u in forests(du):
                for v in forests(total - du):
                    prod = smb_to_product(M, u, v)
                    for w in forests(total):
                        lhs = prod.coefficient(w) * forest_symmetry(w)
                        rhs = Fraction(0)
                        for (pf, rf), c in ck_coproduct_forest(w).items():
                            if pf == v and rf == u:
                                rhs += c * forest_symmetry(u) * forest_symmetry(v)
                        if lhs != rhs:
                            ok, witness = False, (
                                f"<{u}*{v},{w}> = {lhs} but <u (x) v, cuts(w)> = {rhs}")
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        results.append((f"gl-ck-pairing-deg{total}", ok, witness or note))
    return results
