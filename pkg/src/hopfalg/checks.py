"""Named verification suites with machine-readable reports.

Each suite runs a family of exact identity checks at a configurable degree
bound and returns a :class:`Report` whose exit status is zero exactly when
every check passed.  The suites are the single source of truth for the
service, the command line and the acceptance tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from hopfalg import diptdend, prelie, trees, zoo
from hopfalg.core import (
    LinComb,
    SymWord,
    TensorWord,
    lc_multi,
    polynomial_model,
    shuffle_product,
)
from hopfalg.multibrace import (
    BraceExpr,
    MBStructure,
    OperadElement,
    brace_compose,
    brace_normalize,
    check_R,
    check_associative,
    check_brace,
    check_hopf_compatible,
    check_rightsided,
    mb_product_map,
    mb_to_product,
    product_to_mb,
    roundtrip_check,
    trivial_mb,
)
from hopfalg.trees import Permutation, PlanarUnreducedTree


@dataclass
class CheckItem:
    id: str
    ok: bool
    witness: str = ""


@dataclass
class Report:
    suite: str
    checks: list[CheckItem] = field(default_factory=list)

    def add(self, item: tuple[str, bool, str]) -> None:
        self.checks.append(CheckItem(item[0], item[1], item[2]))

    def extend(self, items) -> None:
        for item in items:
            self.add(item)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "pass" if c.ok else "FAIL"
            detail = f"  [{c.witness}]" if (c.witness and not c.ok) else ""
            out.append(f"{c.id}: {status}{detail}")
        out.append(f"suite {self.suite}: "
                   + ("pass" if self.passed else "FAIL"))
        return out


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


def _letters(n: int) -> list[str]:
    return [f"g{i}" for i in range(1, n + 1)]


def qsym_like_mb() -> MBStructure:
    def rule(p, q, xs, ys):
        if p == 1 and q == 1:
            return LinComb.of(xs[0] + ys[0])
        return LinComb.zero()
    return MBStructure(256, rule, grade=lambda n: n, name="merge")


def broken_mb() -> MBStructure:
    def rule(p, q, xs, ys):
        if p == 1 and q == 2:
            return LinComb.of(xs[0])
        return LinComb.zero()
    return MBStructure(64, rule, name="broken")


def two_as_shuffle_concat() -> MBStructure:
    """The 2-associative context (words, concatenation, shuffle)."""
    from hopfalg.core import as_lincomb

    def star(x, y):
        return lc_multi([as_lincomb(x), as_lincomb(y)],
                        lambda a, b: (a, b)).apply(
            lambda pair: shuffle_product(pair[0], pair[1]))

    def dot(x, y):
        return lc_multi([as_lincomb(x), as_lincomb(y)],
                        lambda a, b: a.concat(b))

    return diptdend.mb_from_2as(star, dot, 64,
                                grade=lambda w: len(w.letters), name="M[2as]")


def dipt_mb() -> MBStructure:
    return diptdend.mb_from_dipt(diptdend.dipt_star, diptdend.dipt_succ, 64,
                                 diptdend.mono_degree, name="M[dipt]")


def _relation_arities(maxdeg: int):
    for i in range(1, maxdeg - 1):
        for j in range(1, maxdeg - i):
            for k in range(1, maxdeg - i - j + 1):
                yield i, j, k


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_series(maxdeg: int = 5, seed: int = 0) -> Report:
    report = Report("series")
    rows = {
        "dims-dend": (trees.dims_dend(maxdeg), [1, 2, 5, 14, 42][:maxdeg]),
        "dims-dipt": (trees.dims_dipt(maxdeg), [1, 2, 6, 22, 90][:maxdeg]),
        "dims-mb": (trees.dims_mb(maxdeg), [1, 1, 3, 11, 45][:maxdeg]),
        "dims-brace": (trees.dims_brace(maxdeg), [1, 1, 2, 5, 14][:maxdeg]),
        "dims-prelie": (trees.dims_prelie(maxdeg), [1, 1, 2, 4, 9][:maxdeg]),
    }
    for name, (computed, expected) in rows.items():
        report.add((name, computed == expected,
                    f"computed {computed}, table {expected}"))
    labeled = [trees.count_labeled_rooted_trees(n) for n in range(1, 6)]
    report.add(("dims-prelie-labeled", labeled == [n ** (n - 1) for n in range(1, 6)],
                f"computed {labeled}"))
    sp_d = [trees.count_series_parallel(n) for n in range(1, 6)]
    sp_f = [trees.count_series_parallel(n, connected=True) for n in range(1, 6)]
    report.add(("dims-comas", sp_d == [1, 3, 19, 195, 2791], f"computed {sp_d}"))
    report.add(("dims-smb", sp_f == [1, 2, 12, 122, 1740], f"computed {sp_f}"))
    report.extend(trees.check_series_identities(maxdeg))
    return report


def suite_r(maxdeg: int = 4, seed: int = 0) -> Report:
    report = Report("R")
    abstract = _letters(maxdeg + 1)

    fixtures: list[tuple[MBStructure, list]] = [
        (trivial_mb(64), abstract),
        (qsym_like_mb(), [1, 2, 3, 4]),
        (dipt_mb(), [(diptdend.dleaf(s),) for s in _letters(4)]),
        (two_as_shuffle_concat(),
         [TensorWord((s,)) for s in _letters(3)] + [TensorWord(("g1", "g2"))]),
    ]
    for M, letters in fixtures:
        for i, j, k in _relation_arities(maxdeg):
            if i + j + k > len(letters):
                continue
            xs = tuple(letters[:i])
            ys = tuple(letters[i:i + j])
            zs = tuple(letters[i + j:i + j + k])
            report.add(check_R(M, i, j, k, [(xs, ys, zs)]))

    abstract_words = [TensorWord(w) for r in range(1, 3)
                      for w in itertools.product(abstract[:3], repeat=r)]
    merge_words = [TensorWord(w) for r in range(1, 3)
                   for w in itertools.product((1, 2), repeat=r)]
    merge_bounded = MBStructure(maxdeg + 2, fixtures[1][0].rule,
                                grade=lambda n: n, name="merge")
    for M, words in ((trivial_mb(maxdeg), abstract_words),
                     (merge_bounded, merge_words)):
        report.add(check_associative(M, words))
        report.add(check_hopf_compatible(M, words))
    M_dipt_bounded = diptdend.mb_from_dipt(
        diptdend.dipt_star, diptdend.dipt_succ, maxdeg,
        diptdend.mono_degree, name="M[dipt]")
    dipt_words = [TensorWord(w) for r in (1, 2) for w in
                  itertools.product([(diptdend.dleaf(s),)
                                     for s in _letters(2)], repeat=r)]
    report.add(check_associative(M_dipt_bounded, dipt_words))
    report.add(check_hopf_compatible(M_dipt_bounded, dipt_words))

    bad = broken_mb()
    failed = check_R(bad, 1, 1, 1, [(("a",), ("b",), ("c",))])
    report.add(("R_111-violation-detected", not failed[1],
                "the broken structure must fail the first relation"))
    assoc = check_associative(bad, [TensorWord(("a",)), TensorWord(("b",)),
                                    TensorWord(("c",))])
    report.add(("violation-breaks-associativity", not assoc[1],
                "a failed relation must break associativity at degree 3"))
    rt = roundtrip_check(mb_product_map(fixtures[1][0]), fixtures[1][0],
                         [TensorWord((1,)), TensorWord((1, 2))])
    report.add(rt)
    extracted = product_to_mb(mb_product_map(fixtures[1][0]), 256,
                              grade=lambda n: n)
    report.add(("extraction-roundtrip",
                all(extracted.eval(p, q, xs, ys) ==
                    fixtures[1][0].eval(p, q, xs, ys)
                    for p, q in [(1, 1), (1, 2), (2, 1), (2, 2)]
                    for xs in [tuple(range(1, p + 1))]
                    for ys in [tuple(range(1, q + 1))]),
                "product_to_mb inverts mb_to_product"))
    return report


def suite_sr(maxdeg: int = 4, seed: int = 0) -> Report:
    report = Report("sr")
    lie = prelie.free_nilpotent_lie(3, 3)
    m_lie = prelie.lie_to_smb(lie, 4)
    m_go = zoo.fdb_smb(64)
    m_gl = prelie.gl_smb(64)

    def comas_gl() -> prelie.SMBStructure:
        from hopfalg.core import as_lincomb
        gl = prelie.gl_smb(64)

        def star(x, y):
            return lc_multi([as_lincomb(x), as_lincomb(y)],
                            lambda a, b: (a, b)).apply(
                lambda pair: prelie.smb_to_product(gl, pair[0], pair[1]))

        def dot(x, y):
            return lc_multi([as_lincomb(x), as_lincomb(y)],
                            lambda a, b: a.union(b))

        return prelie.comas_to_smb(
            star, dot, lambda t: LinComb.of(SymWord.make([t])), 64,
            grade=lambda t: t.vertices, name="SM[comas-gl]")

    m_comas = comas_gl()

    dot = trees.UT_VERTEX
    ladder = trees.RootedTree.make([dot])
    tree_letters = [dot, dot, ladder, dot]
    fixtures = [
        (m_lie, [0, 1, 2, 0]),
        (m_go, [1, 2, 1, 3]),
        (m_gl, tree_letters),
        (m_comas, tree_letters),
        (prelie.trivial_smb(64), _letters(4)),
    ]
    for M, letters in fixtures:
        u, v, w, x = letters[:4]
        report.extend(prelie.sr_reference_instances(M, u, v, w, x))
        for i, j, k in _relation_arities(min(maxdeg, 4)):
            xs, ys, zs = (tuple(letters[:i]), tuple(letters[i:i + j]),
                          tuple(letters[i + j:i + j + k]))
            if len(xs) + len(ys) + len(zs) < i + j + k:
                continue
            report.add(prelie.check_SR(M, i, j, k, [(xs, ys, zs)]))

    report.add(("comas-matches-guin-oudom",
                all(m_comas.eval(1, q, (dot,), args) ==
                    m_gl.eval(1, q, (dot,), args)
                    for q, args in [(1, (dot,)), (2, (dot, ladder)),
                                    (1, (ladder,))]),
                "extraction from the product recovers the brace operations"))

    # right-and-left-sided degeneration: only M_11 nonzero
    def pure_m11(op: Callable) -> prelie.SMBStructure:
        def rule(p, q, xs, ys):
            if p == 1 and q == 1:
                return op(xs[0], ys[0])
            return LinComb.zero()
        return prelie.SMBStructure(256, rule, grade=lambda n: n, name="m11-only")

    assoc = pure_m11(lambda a, b: LinComb.of(a + b))
    nonassoc = pure_m11(lambda a, b: LinComb.of(a + 2 * b))
    report.add(prelie.check_SR(assoc, 1, 1, 1, [((1,), (2,), (3,))]))
    bad = prelie.check_SR(nonassoc, 1, 1, 1, [((1,), (2,), (3,))])
    report.add(("SR_111-violation-detected", not bad[1],
                "a nonassociative operation must fail the first relation"))
    words = [SymWord.make([n]) for n in (1, 2)] + [SymWord.make([1, 1])]
    report.add(prelie.check_smb_associative(assoc, words))
    bad_assoc = prelie.check_smb_associative(
        nonassoc, [SymWord.make([n]) for n in (1, 2, 3)])
    report.add(("violation-breaks-product", not bad_assoc[1],
                "a failed relation must break the reconstructed product"))
    report.add(prelie.check_smb_hopf(m_gl, [SymWord.make([dot]),
                                            SymWord.make([dot, dot]),
                                            SymWord.make([ladder])]))
    return report


def suite_brace(maxdeg: int = 4, seed: int = 0) -> Report:
    report = Report("brace")
    B = diptdend.brace_from_dend(diptdend.dend_prec, diptdend.dend_succ, 64,
                                 grade=lambda t: t.internal)
    gens = [diptdend.bgen(s) for s in _letters(4)]
    for n in range(1, 3):
        for m in range(1, 4 - n):
            report.add(check_brace(B, n, m,
                                   [(gens[0], tuple(gens[1:1 + n]),
                                     tuple(gens[1 + n:1 + n + m]))]))
    report.add(check_brace(trivial_mb(64), 1, 2,
                           [("a", ("b",), ("c", "d"))]))

    # symmetric braces from pre-Lie data
    G = prelie.gl_smb(64)
    dot = trees.UT_VERTEX
    ladder = trees.RootedTree.make([dot])
    for n, m in [(1, 1), (2, 1), (1, 2)]:
        report.add(prelie.check_symmetric_brace(
            G, n, m, [(dot, (dot,) * n, (ladder,) + (dot,) * (m - 1))]))
    F = zoo.fdb_smb(64)
    for n, m in [(1, 1), (2, 1), (1, 2), (1, 3)]:
        report.add(prelie.check_symmetric_brace(
            F, n, m, [(1, (2,) + (1,) * (n - 1), (1,) * m)]))
    report.add(("go-symmetric",
                F.eval(1, 2, (1,), (2, 3)) == F.eval(1, 2, (1,), (3, 2)),
                "the brace operations are symmetric in the second block"))

    # normal form: step-based rewriting with randomized redex choice must
    # land on the same answer as the recursive normaliser
    rng = random.Random(seed)
    exprs = [
        BraceExpr(BraceExpr("x", ("y",)), ("z",)),
        BraceExpr(BraceExpr("x", ("y", "z")), ("w",)),
        BraceExpr(BraceExpr(BraceExpr("x", ("y",)), ("z",)), ("w",)),
        BraceExpr(BraceExpr("x", (BraceExpr("y", ("z",)),)), ("w",)),
    ]
    confluent = all(
        _random_rewrite(e, rng) == brace_normalize(e) for e in exprs)
    report.add(("normalize-confluent", confluent,
                f"randomized rewrite order, seed {seed}"))
    ladder2 = PlanarUnreducedTree((PlanarUnreducedTree(),))
    mu = OperadElement.of(ladder2, Permutation.identity(2))
    composed = brace_compose(mu, 1, mu)
    ladder3 = PlanarUnreducedTree((ladder2,))
    corolla = PlanarUnreducedTree((PlanarUnreducedTree(),) * 2)
    expected = (OperadElement.of(ladder3, Permutation((1, 2, 3)))
                + OperadElement.of(corolla, Permutation((1, 2, 3)))
                + OperadElement.of(corolla, Permutation((1, 3, 2))))
    report.add(("operad-ladder-composition", composed == expected,
                f"computed {composed}"))
    return report


def _random_rewrite(expr, rng: random.Random) -> LinComb:
    """Step-based normalisation choosing a random redex at each step."""
    state = LinComb.of(("expr", expr))

    def is_normal(e) -> bool:
        if not isinstance(e, BraceExpr):
            return True
        return (not isinstance(e.head, BraceExpr)
                and all(is_normal(a) for a in e.args))

    def to_tree(e):
        from hopfalg.multibrace import LabeledTree
        if not isinstance(e, BraceExpr):
            return LabeledTree(e, ())
        return LabeledTree(e.head, tuple(to_tree(a) for a in e.args))

    def redexes(e, path=()):  # paths to braces whose head is a brace
        if not isinstance(e, BraceExpr):
            return []
        found = []
        if isinstance(e.head, BraceExpr):
            found.append(path)
        for i, a in enumerate(e.args):
            found.extend(redexes(a, path + (i,)))
        if isinstance(e.head, BraceExpr):
            found.extend(redexes(e.head, path + ("head",)))
        return found

    def rewrite_at(e, path):
        if path:
            step = path[0]
            if step == "head":
                return [(BraceExpr(h, e.args), c)
                        for h, c in rewrite_at(e.head, path[1:])]
            out = []
            for sub, c in rewrite_at(e.args[step], path[1:]):
                args = e.args[:step] + (sub,) + e.args[step + 1:]
                out.append((BraceExpr(e.head, args), c))
            return out
        inner = e.head
        n = len(inner.args)
        out = []
        for comp in trees.compositions(len(e.args), 2 * n + 1, minimum=0):
            blocks, pos = [], 0
            for size in comp:
                blocks.append(e.args[pos:pos + size])
                pos += size
            args: list = list(blocks[0])
            for a in range(1, n + 1):
                prime = blocks[2 * a - 1]
                args.append(BraceExpr(inner.args[a - 1], prime)
                            if prime else inner.args[a - 1])
                args.extend(blocks[2 * a])
            out.append((BraceExpr(inner.head, tuple(args)), 1))
        return out

    for _ in range(64):
        items = list(state.items())
        todo = [(key, c) for key, c in items if not is_normal(key[1])]
        if not todo:
            break
        (tag, expr_), coeff = rng.choice(todo)
        paths = redexes(expr_)
        path = rng.choice(paths)
        state = state - LinComb.of((tag, expr_), coeff)
        for new_expr, c in rewrite_at(expr_, path):
            state = state + LinComb.of(("expr", new_expr), coeff * c)
    return LinComb.from_terms(
        (to_tree(key[1]), c) for key, c in state.items())


def suite_operad(maxdeg: int = 5, seed: int = 0) -> Report:
    report = Report("operad")
    ladder2 = PlanarUnreducedTree((PlanarUnreducedTree(),))
    corolla = PlanarUnreducedTree((PlanarUnreducedTree(),) * 2)
    ladder3 = PlanarUnreducedTree((ladder2,))
    mu = OperadElement.of(ladder2, Permutation.identity(2))
    expected = (OperadElement.of(corolla, Permutation((1, 2, 3)))
                + OperadElement.of(ladder3, Permutation((1, 2, 3)))
                + OperadElement.of(corolla, Permutation((1, 3, 2))))
    report.add(("ladder-self-composition", brace_compose(mu, 1, mu) == expected,
                f"computed {brace_compose(mu, 1, mu)}"))
    corolla3 = PlanarUnreducedTree((PlanarUnreducedTree(),) * 3)
    grafted = brace_compose(OperadElement.of(corolla3, Permutation.identity(4)),
                            2, OperadElement.of(corolla, Permutation.identity(3)))
    target = PlanarUnreducedTree((corolla, PlanarUnreducedTree(),
                                  PlanarUnreducedTree()))
    report.add(("leaf-composition-grafts",
                grafted == OperadElement.of(target, Permutation.identity(6)),
                f"computed {grafted}"))
    unit = OperadElement.unit()
    report.add(("operad-unit",
                brace_compose(mu, 1, unit) == mu
                and brace_compose(mu, 2, unit) == mu
                and brace_compose(unit, 1, mu) == mu, ""))

    rng = random.Random(seed)

    def basis_elements(n: int) -> list[OperadElement]:
        return [OperadElement.of(t, Permutation(p))
                for t in trees.planar_unreduced_trees(n)
                for p in itertools.permutations(range(1, n + 1))]

    seq_ok, par_ok = True, True
    arity_triples = [(l, m, n) for l in (1, 2, 3) for m in (1, 2, 3)
                     for n in (1, 2, 3) if l + m + n <= maxdeg]
    for l, m, n in arity_triples:
        picks = list(itertools.product(basis_elements(l), basis_elements(m),
                                       basis_elements(n)))
        if len(picks) > 24:
            picks = rng.sample(picks, 24)
        for lam, mid, nu in picks:
            for i in range(1, l + 1):
                for j in range(1, m + 1):
                    if brace_compose(brace_compose(lam, i, mid), i - 1 + j, nu) \
                            != brace_compose(lam, i, brace_compose(mid, j, nu)):
                        seq_ok = False
                for k in range(i + 1, l + 1):
                    if brace_compose(brace_compose(lam, i, mid), k + m - 1, nu) \
                            != brace_compose(brace_compose(lam, k, nu), i, mid):
                        par_ok = False
    report.add(("operad-sequential-associativity", seq_ok,
                f"arity triples summing to <= {maxdeg}"))
    report.add(("operad-parallel-associativity", par_ok,
                f"arity triples summing to <= {maxdeg}"))
    return report


def suite_dipt(maxdeg: int = 5, seed: int = 0) -> Report:
    report = Report("dipt")
    report.extend(diptdend.check_dipt_laws(min(maxdeg + 1, 6)))
    dims = trees.dims_dipt(5)
    report.add(("dims", dims == [1, 2, 6, 22, 90], f"computed {dims}"))
    model = diptdend.dipt_model(8)
    coassoc = all(
        _coassociative(model, LinComb.of(m))
        for d in range(1, 5) for m in diptdend.dipt_monomials(d))
    report.add(("coproduct-coassociative", coassoc, "monomials of degree <= 4"))
    hopf = all(
        diptdend.dipt_star(LinComb.of(a), LinComb.of(b)).apply(
            diptdend.dipt_coproduct_mono)
        == lc_multi([diptdend.dipt_coproduct_mono(a),
                     diptdend.dipt_coproduct_mono(b)],
                    lambda p, q: (p, q)).apply(
            lambda pq: lc_multi(
                [diptdend.dipt_star(LinComb.of(pq[0][0]), LinComb.of(pq[1][0])),
                 diptdend.dipt_star(LinComb.of(pq[0][1]), LinComb.of(pq[1][1]))],
                lambda l, r: (l, r)))
        for d1 in (1, 2) for a in diptdend.dipt_monomials(d1)
        for d2 in (1, 2) for b in diptdend.dipt_monomials(d2))
    report.add(("coproduct-multiplicative", hopf, "degree <= 2 factors"))
    return report


def suite_dend(maxdeg: int = 5, seed: int = 0) -> Report:
    report = Report("dend")
    report.extend(diptdend.check_dend_laws(min(maxdeg + 1, 6)))
    dims = trees.dims_dend(5)
    report.add(("dims", dims == [1, 2, 5, 14, 42], f"computed {dims}"))
    model = diptdend.dend_model(8)
    coassoc = all(_coassociative(model, LinComb.of(t))
                  for d in range(1, 5) for t in diptdend.dend_basis(d))
    report.add(("coproduct-coassociative", coassoc, "trees of degree <= 4"))
    y = diptdend.bgen("")
    e_of_gen = diptdend.dend_idempotent(LinComb.of(y))
    report.add(("idempotent-fixes-generator", e_of_gen == LinComb.of(y), ""))
    prod = diptdend.dend_succ(LinComb.of(y), LinComb.of(y))
    report.add(("idempotent-kills-succ",
                diptdend.dend_idempotent(prod).is_zero(), ""))
    prim_ok, dims_ok = True, True
    for n in range(1, maxdeg):
        basis = diptdend.primitive_basis_dend(n)
        if not all(model.reduced_iterate(2, b).is_zero() for b in basis):
            prim_ok = False
        from hopfalg.core import vectors_rank
        if vectors_rank(basis) != trees.catalan(n - 1):
            dims_ok = False
    report.add(("primitive-basis-primitive", prim_ok, f"degrees < {maxdeg}"))
    report.add(("primitive-dims-catalan", dims_ok, f"degrees < {maxdeg}"))
    idem = all(diptdend.dend_idempotent(diptdend.dend_idempotent(LinComb.of(t)))
               == diptdend.dend_idempotent(LinComb.of(t))
               for d in range(1, 5) for t in diptdend.dend_basis(d))
    report.add(("idempotent-squared", idem, "degree <= 4"))
    return report


def suite_reduction(maxdeg: int = 6, seed: int = 0) -> Report:
    report = Report("reduction")
    report.extend(diptdend.check_lemma_dipt_reduction(min(maxdeg, 6)))
    return report


def suite_rightsided(maxdeg: int = 4, seed: int = 0) -> Report:
    report = Report("rightsided")
    letters = _letters(3)
    words = [TensorWord(w) for r in (1, 2)
             for w in itertools.product(letters, repeat=r)]

    shuffle_mb = product_to_mb(shuffle_product, 64)
    ok, checks = check_rightsided(shuffle_product, shuffle_mb, words)
    report.extend((f"shuffle-{n}", o, w) for n, o, w in checks)
    report.add(("shuffle-is-rightsided", ok, ""))

    qsym = qsym_like_mb()
    ok, checks = check_rightsided(mb_product_map(qsym), qsym,
                                  [TensorWord(w) for r in (1, 2)
                                   for w in itertools.product((1, 2), repeat=r)])
    report.extend((f"merge-{n}", o, w) for n, o, w in checks)
    report.add(("merge-is-rightsided", ok, ""))

    def with_m21(p, q, xs, ys):
        if p == 2 and q == 1:
            return LinComb.of(xs[0])
        return LinComb.zero()
    bad = MBStructure(64, with_m21, name="m21")
    ok, checks = check_rightsided(mb_product_map(bad), bad, words)
    report.add(("m21-not-rightsided", not ok,
                "a nonzero two-one operation must violate right-sidedness"))
    report.extend((f"m21-{n}", o, w) for n, o, w in checks
                  if n == "rightsided-agree")
    return report


def suite_eulerian(maxdeg: int = 5, seed: int = 0) -> Report:
    report = Report("eulerian")
    model = polynomial_model(bound=max(maxdeg, 5))
    e1 = model.conv_log()
    x = SymWord.make(["x"])
    xy = SymWord.make(["x", "y"])
    report.add(("e1-fixes-primitives", e1(x) == LinComb.of(x), ""))
    report.add(("e1-kills-products", e1(xy).is_zero(),
                "the product of two primitives has no first component"))
    unit_map = model.unit_map()
    conv_unit = model.convolve(unit_map, model.conv_log())
    report.add(("convolution-unit", conv_unit(xy) == e1(xy), ""))
    from hopfalg.core import IDENTITY
    twice = model.convolve(IDENTITY, IDENTITY)
    report.add(("id-star-id-on-primitive", twice(x) == LinComb.of(x, 2), ""))
    jj = model.convolve(IDENTITY - unit_map, IDENTITY - unit_map)
    report.add(("reduced-square-kills-primitives", jj(x).is_zero(), ""))

    assoc = True
    f = model.convolve(IDENTITY, IDENTITY)
    lhs = model.convolve(model.convolve(f, e1), IDENTITY)
    rhs = model.convolve(f, model.convolve(e1, IDENTITY))
    for word in [x, xy, SymWord.make(["x", "y", "z"])]:
        if lhs(word) != rhs(word):
            assoc = False
    report.add(("convolution-associative", assoc, "on generating maps"))

    words = [SymWord.make(list(w)) for r in range(1, maxdeg)
             for w in itertools.combinations_with_replacement("xy", r)]
    idempotents = [model.eulerian(i) for i in range(1, maxdeg)]
    sum_ok = all(
        sum((e(word) for e in idempotents[:len(word.letters)]),
            LinComb.zero()) == LinComb.of(word)
        for word in words)
    report.add(("eulerian-sum-is-identity", sum_ok,
                f"degrees < {maxdeg}"))
    orth_ok = True
    for i, ei in enumerate(idempotents[:4], start=1):
        for j, ej in enumerate(idempotents[:4], start=1):
            for word in words:
                if len(word.letters) > 4:
                    continue
                value = ei(ej(LinComb.of(word)))
                expected = ej(LinComb.of(word)) if i == j else LinComb.zero()
                if value != expected:
                    orth_ok = False
    report.add(("eulerian-orthogonal-idempotents", orth_ok, "degree <= 4"))
    prim = all(model.reduced_iterate(2, e1(LinComb.of(w))).is_zero()
               for w in words if len(w.letters) <= 4)
    report.add(("e1-image-primitive", prim, "degree <= 4"))
    e2 = idempotents[1]
    report.add(("e2-on-two-primitives", e2(xy) == LinComb.of(xy),
                "a product of two primitives is pure second Eulerian"))
    return report


def _coassociative(model, value: LinComb) -> bool:
    left = model.coproduct_lc(value).apply(
        lambda pr: model.coproduct(pr[0]).map_keys(
            lambda q: (q[0], q[1], pr[1])))
    right = model.coproduct_lc(value).apply(
        lambda pr: model.coproduct(pr[1]).map_keys(
            lambda q: (pr[0], q[0], q[1])))
    return left == right


def suite_ck(maxdeg: int = 4, seed: int = 0) -> Report:
    report = Report("ck")
    model = prelie.ck_model(max(maxdeg, 4) + 1)
    coassoc = all(_coassociative(model, LinComb.of(f))
                  for n in range(1, maxdeg + 1) for f in prelie.forests(n))
    report.add(("ck-coassociative", coassoc, f"forests of degree <= {maxdeg}"))
    mult = all(
        prelie.ck_coproduct_forest(f1.union(f2)) ==
        lc_multi([prelie.ck_coproduct_forest(f1),
                  prelie.ck_coproduct_forest(f2)],
                 lambda p, q: (p[0].union(q[0]), p[1].union(q[1])))
        for d1 in (1, 2) for f1 in prelie.forests(d1)
        for d2 in (1, 2) for f2 in prelie.forests(d2))
    report.add(("ck-multiplicative", mult, "factors of degree <= 2"))
    dot = trees.UT_VERTEX
    ladder = trees.RootedTree.make([dot])
    corolla = trees.RootedTree.make([dot, dot])
    f_l = SymWord.make([ladder])
    expected_l = (LinComb.of((f_l, SymWord()))
                  + LinComb.of((SymWord(), f_l))
                  + LinComb.of((SymWord.make([dot]), SymWord.make([dot]))))
    report.add(("ck-ladder", prelie.ck_coproduct_forest(f_l) == expected_l, ""))
    f_c = SymWord.make([corolla])
    expected_c = (LinComb.of((f_c, SymWord()))
                  + LinComb.of((SymWord(), f_c))
                  + LinComb.of((SymWord.make([dot]), SymWord.make([ladder])), 2)
                  + LinComb.of((SymWord.make([dot, dot]), SymWord.make([dot]))))
    report.add(("ck-corolla", prelie.ck_coproduct_forest(f_c) == expected_c, ""))
    rightsided = all(
        len(pair[1].letters) == 1
        for n in range(1, maxdeg + 1) for t in trees.rooted_trees(n)
        for pair, _ in model.reduced(SymWord.make([t])).items())
    report.add(("ck-rightsided", rightsided,
                "second reduced legs on trees are single trees"))
    cuts = prelie.admissible_cuts(dot)
    report.add(("cuts-of-vertex", len(cuts) == 2, "the two extreme cuts"))
    report.add(("cuts-of-ladder", len(prelie.admissible_cuts(ladder)) == 3, ""))
    report.add(("cuts-of-corolla", len(prelie.admissible_cuts(corolla)) == 5, ""))
    return report


def suite_pairing(maxdeg: int = 3, seed: int = 0) -> Report:
    report = Report("pairing")
    report.extend(prelie.pairing_gl_ck(maxdeg))
    return report


def suite_ctd(maxdeg: int = 4, seed: int = 0) -> Report:
    report = Report("ctd")
    report.extend(zoo.qsym_ctd_check(maxdeg))
    M = zoo.qsym_mb(256)
    table_ok = (M.eval(1, 1, (1,), (2,)) == LinComb.of(3)
                and M.eval(1, 2, (1,), (2, 3)).is_zero()
                and M.eval(2, 1, (1, 2), (3,)).is_zero()
                and M.eval(2, 2, (1, 2), (1, 2)).is_zero())
    report.add(("qsym-mb-table", table_ok,
                "only the merge operation in complexity (1,1) survives"))
    comm = all(zoo.qsym_product(LinComb.of(a), LinComb.of(b)) ==
               zoo.qsym_product(LinComb.of(b), LinComb.of(a))
               for a in zoo.compositions_of(2) for b in zoo.compositions_of(2))
    report.add(("qsym-commutative", comm, "degree 2 pairs"))
    return report


def suite_mr(maxdeg: int = 4, seed: int = 0) -> Report:
    report = Report("mr")
    report.extend(zoo.mr_extract_structures(maxdeg))
    P = Permutation
    phi_vals = {
        P((2, 1)): LinComb.of(P((2, 1))) - LinComb.of(P((1, 2))),
        P((2, 3, 1)): LinComb.of(P((2, 3, 1))) - LinComb.of(P((1, 3, 2))),
        P((3, 1, 2)): LinComb.of(P((3, 1, 2))) - LinComb.of(P((2, 1, 3))),
        P((3, 2, 1)): (LinComb.of(P((3, 2, 1))) - LinComb.of(P((1, 3, 2)))
                       - LinComb.of(P((2, 1, 3))) + LinComb.of(P((1, 2, 3)))),
    }
    ok = all(zoo.mr_phi(TensorWord((s,))) == v for s, v in phi_vals.items())
    report.add(("phi-low-values", ok, "the four displayed expansions"))
    model = zoo.mr_model(6)
    u = LinComb.of(P((2, 1, 3))) - LinComb.of(P((3, 1, 2)))
    v = LinComb.of(P((2, 3, 1))) - LinComb.of(P((1, 3, 2)))
    w = (LinComb.of(P((3, 2, 1))) - LinComb.of(P((1, 3, 2)))
         - LinComb.of(P((2, 1, 3))) + LinComb.of(P((1, 2, 3))))
    report.add(("degree3-primitives",
                all(model.reduced_iterate(2, e).is_zero() for e in (u, v, w)),
                "u, v, w are primitive"))
    prim_dims = []
    for n in range(1, maxdeg + 1):
        from hopfalg.core import vectors_rank
        basis = [LinComb.of(P(word)) for word in
                 itertools.permutations(range(1, n + 1))]
        image_rank = vectors_rank([model.reduced_iterate(2, b) for b in basis])
        prim_dims.append(len(basis) - image_rank)
    report.add(("primitive-dims", prim_dims == [1, 1, 3, 13][:maxdeg],
                f"kernel dimensions {prim_dims} match irreducible counts"))
    hopf_ok = True
    perms = [P(word) for n in (1, 2) for word in
             itertools.permutations(range(1, n + 1))]
    for s in perms:
        for t in perms:
            lhs = zoo.mr_product_keys(s, t).apply(zoo.mr_coproduct_key)
            rhs = lc_multi([zoo.mr_coproduct_key(s), zoo.mr_coproduct_key(t)],
                           lambda p, q: (p, q)).apply(
                lambda pq: lc_multi(
                    [zoo.mr_product_keys(pq[0][0], pq[1][0]),
                     zoo.mr_product_keys(pq[0][1], pq[1][1])],
                    lambda l, r: (l, r)))
            if lhs != rhs:
                hopf_ok = False
    report.add(("mr-hopf-compatible", hopf_ok, "factors of degree <= 2"))
    half_ok = all(
        zoo.mr_succ(LinComb.of(s), LinComb.of(t))
        + zoo.mr_prec(LinComb.of(s), LinComb.of(t))
        == zoo.mr_product(LinComb.of(s), LinComb.of(t))
        for s in perms for t in perms)
    report.add(("half-shuffles-split", half_ok, ""))
    dend_mid = all(
        zoo.mr_prec(zoo.mr_succ(LinComb.of(a), LinComb.of(b)), LinComb.of(c))
        == zoo.mr_succ(LinComb.of(a), zoo.mr_prec(LinComb.of(b), LinComb.of(c)))
        for a in perms[:1] for b in perms[:1] for c in perms[:1])
    report.add(("half-shuffle-middle-relation", dend_mid, "degree-1 triples"))
    return report


def suite_fdb(maxdeg: int = 3, seed: int = 0) -> Report:
    report = Report("fdb")
    assoc_ok = True
    for p in range(1, 8):
        for q in range(1, 8):
            for r in range(1, 8):
                if p + q + r > 9:
                    continue
                left = zoo.fdb_prelie(p, q).apply(lambda k: zoo.fdb_prelie(k, r))
                right = zoo.fdb_prelie(q, r).apply(lambda k: zoo.fdb_prelie(p, k))
                if left - right != LinComb.of(p + q + r, p * p):
                    assoc_ok = False
    report.add(("fdb-associator", assoc_ok,
                "associator is p^2 times the merged generator, p+q+r <= 9"))
    bracket_ok = all(
        zoo.fdb_lie_bracket(p, q) == LinComb.of(p + q, q - p)
        for p in range(1, 5) for q in range(1, 5))
    report.add(("fdb-lie-bracket", bracket_ok, ""))
    report.extend(zoo.fdb_cross_check(maxdeg))
    return report


SUITES: dict[str, Callable[[int, int], Report]] = {
    "series": suite_series,
    "R": suite_r,
    "sr": suite_sr,
    "brace": suite_brace,
    "operad": suite_operad,
    "dipt": suite_dipt,
    "dend": suite_dend,
    "reduction": suite_reduction,
    "rightsided": suite_rightsided,
    "eulerian": suite_eulerian,
    "ck": suite_ck,
    "pairing": suite_pairing,
    "ctd": suite_ctd,
    "mr": suite_mr,
    "fdb": suite_fdb,
}

_DEFAULT_DEGREES = {"series": 5, "operad": 5, "dipt": 5, "dend": 5,
                    "reduction": 6, "eulerian": 5, "pairing": 3, "fdb": 3}


def reference_instance(name: str) -> Report:
    """The four spelled-out low-arity symmetric relation instances."""
    report = Report(name)
    lie = prelie.free_nilpotent_lie(3, 3)
    m_lie = prelie.lie_to_smb(lie, 4)
    instances = {c[0].split("[")[0].replace("_", "").lower(): c
                 for c in prelie.sr_reference_instances(m_lie, 0, 1, 2, 2)}
    key = name.replace("_", "").lower()
    if key not in instances:
        raise KeyError(name)
    report.add(instances[key])
    return report


def run_suite(name: str, maxdeg: int | None = None, seed: int = 0) -> Report:
    if name in ("sr111", "sr112", "sr121", "sr211"):
        return reference_instance(name)
    if name == "all":
        combined = Report("all")
        for suite_name, fn in SUITES.items():
            deg = _DEFAULT_DEGREES.get(suite_name, 4) if maxdeg is None else maxdeg
            sub = fn(deg, seed)
            combined.extend((f"{suite_name}/{c.id}", c.ok, c.witness)
                            for c in sub.checks)
        return combined
    if name not in SUITES:
        raise KeyError(name)
    deg = _DEFAULT_DEGREES.get(name, 4) if maxdeg is None else maxdeg
    return SUITES[name](deg, seed)
