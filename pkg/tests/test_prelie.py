import itertools
from fractions import Fraction


from hopfalg.core import LinComb, SymWord, lc_multi
from hopfalg.prelie import (
    LabeledRootedTree,
    UEA,
    admissible_cuts,
    check_prelie,
    check_smb_associative,
    check_symmetric_brace,
    ck_coproduct_forest,
    comas_to_smb,
    forest_symmetry,
    forests,
    free_nilpotent_lie,
    gl_product,
    gl_smb,
    guin_oudom,
    lie_to_smb,
    pairing_gl_ck,
    prelie_graft,
    prelie_graft_labeled,
    smb_to_product,
    sr_reference_instances,
    trivial_smb,
)
from hopfalg.trees import RootedTree, rooted_trees


DOT = RootedTree()
LADDER = RootedTree.make([DOT])
CYCLE = RootedTree.make([DOT, DOT])


def test_mandated_values():
    M = trivial_smb()
    assert M.eval(1, 0, ("x",), ()) == LinComb.of("x")
    assert M.eval(0, 2, (), ("x", "y")).is_zero()


def test_smb_product_examples():
    def rule(p, q, xs, ys):
        if p == 1 and q == 1:
            return LinComb.of(f"[{xs[0]}{ys[0]}]")
        return LinComb.zero()
    from hopfalg.prelie import SMBStructure
    M = SMBStructure(16, rule, name="m11")
    u, v = SymWord.make(["u"]), SymWord.make(["v"])
    assert smb_to_product(M, u, v) == LinComb.from_terms([
        (SymWord.make(["u", "v"]), 1), (SymWord.make(["[uv]"]), 1)])
    # the two-against-one component in two letters
    u2 = SymWord.make(["u1", "u2"])
    product = smb_to_product(M, u2, v)
    assert product.coefficient(SymWord.make(["u1", "[u2v]"])) == 1
    assert product.coefficient(SymWord.make(["u2", "[u1v]"])) == 1
    assert smb_to_product(M, SymWord(), v) == LinComb.of(v)


def test_free_nilpotent_lie_fixture():
    L2 = free_nilpotent_lie(2, 2)
    assert L2.check_jacobi()[1]
    L3 = free_nilpotent_lie(3, 3)
    assert L3.check_jacobi()[1]
    assert L3.dim == 14
    # gradings bound the brackets
    for i in range(L3.dim):
        for j in range(L3.dim):
            for k, _ in L3.bracket(i, j).items():
                assert L3.weights[k] == L3.weights[i] + L3.weights[j]


def test_uea_straightening():
    L = free_nilpotent_lie(2, 2)
    uea = UEA(L, 4)
    # x1 x0 = x0 x1 + [x1, x0] with [x0, x1] the third basis element
    value = uea.straighten((1, 0))
    assert value == LinComb.from_terms([((0, 1), 1), ((2,), -1)])
    # abelian quotient: no straightening needed for sorted words
    assert uea.straighten((0, 0, 1)) == LinComb.of((0, 0, 1))
    model = uea.model()
    # coassociativity of the enveloping coproduct
    for word in [(0,), (0, 1), (0, 0, 1)]:
        left = model.coproduct_lc(LinComb.of(word)).apply(
            lambda p: uea.coproduct(p[0]).map_keys(
                lambda q: (q[0], q[1], p[1])))
        right = model.coproduct_lc(LinComb.of(word)).apply(
            lambda p: uea.coproduct(p[1]).map_keys(
                lambda q: (p[0], q[0], q[1])))
        assert left == right


def test_lie_to_smb_displayed_formulas():
    L = free_nilpotent_lie(3, 3)
    M = lie_to_smb(L, 4)
    x, y, z = 0, 1, 2
    assert M.eval(1, 1, (x,), (y,)) == L.bracket(x, y).scale(Fraction(1, 2))
    assert M.eval(1, 1, (x,), (y,)) - M.eval(1, 1, (y,), (x,)) == \
        L.bracket(x, y)
    expected12 = (L.bracket_lc(L.bracket(x, y), LinComb.of(z))
                  .scale(Fraction(1, 6))
                  - L.bracket_lc(LinComb.of(x), L.bracket(y, z))
                  .scale(Fraction(1, 12)))
    assert M.eval(1, 2, (x,), (y, z)) == expected12
    expected21 = (L.bracket_lc(L.bracket(x, y), LinComb.of(z))
                  .scale(Fraction(-1, 12))
                  + L.bracket_lc(LinComb.of(x), L.bracket(y, z))
                  .scale(Fraction(1, 6)))
    assert M.eval(2, 1, (x, y), (z,)) == expected21


def test_sr_reference_instances_on_fixtures():
    L = free_nilpotent_lie(3, 3)
    for fixture, letters in [
            (lie_to_smb(L, 4), (0, 1, 2, 0)),
            (gl_smb(64), (DOT, DOT, LADDER, DOT)),
            (trivial_smb(64), ("u", "v", "w", "x"))]:
        for name, ok, detail in sr_reference_instances(fixture, *letters):
            assert ok, f"{name}: {detail}"


def test_guin_oudom_recursion_and_symmetry():
    G = gl_smb(64)
    m12 = G.eval(1, 2, (DOT,), (DOT, LADDER))
    direct = G.eval_elements(
        1, 1, (G.eval(1, 1, (DOT,), (DOT,)),), (LADDER,)) \
        - G.eval_elements(1, 1, (DOT,), (prelie_graft(DOT, LADDER),))
    assert m12 == direct
    assert G.eval(1, 2, (DOT,), (DOT, LADDER)) == \
        G.eval(1, 2, (DOT,), (LADDER, DOT))
    # abelian pre-Lie gives vanishing higher braces
    zero_brace = guin_oudom(lambda a, b: LinComb.zero(), 16)
    assert zero_brace.eval(1, 2, ("x",), ("y", "z")).is_zero()


def test_symmetric_brace_relation():
    G = gl_smb(64)
    assert check_symmetric_brace(G, 1, 1, [(DOT, (DOT,), (DOT,))])[1]
    assert check_symmetric_brace(G, 2, 1, [(DOT, (DOT, LADDER), (DOT,))])[1]
    assert check_symmetric_brace(G, 1, 2, [(DOT, (LADDER,), (DOT, DOT))])[1]


def test_prelie_products_on_trees():
    assert prelie_graft(DOT, DOT) == LinComb.of(LADDER)
    assert prelie_graft(LinComb.of(DOT), prelie_graft(DOT, DOT)) == \
        LinComb.of(RootedTree.make([LADDER]))
    lhs = prelie_graft(prelie_graft(DOT, DOT), DOT)
    assert lhs == LinComb.of(RootedTree.make([LADDER])) + LinComb.of(CYCLE)
    elements = [LinComb.of(t) for n in (1, 2, 3) for t in rooted_trees(n)]
    assert check_prelie(prelie_graft, elements[:4])[1]


def test_prelie_labeled_trees():
    x = LabeledRootedTree("x")
    y = LabeledRootedTree("y")
    z = LabeledRootedTree("z")
    xy = prelie_graft_labeled(x, y)
    assert xy == LinComb.of(LabeledRootedTree.make("x", [y]))
    nested = prelie_graft_labeled(LinComb.of(x), prelie_graft_labeled(y, z))
    assert nested == LinComb.of(
        LabeledRootedTree.make("x", [LabeledRootedTree.make("y", [z])]))
    lhs = prelie_graft_labeled(xy, z)
    ladder = LabeledRootedTree.make(
        "x", [LabeledRootedTree.make("y", [z])])
    wide = LabeledRootedTree.make("x", [y, z])
    assert lhs == LinComb.of(ladder) + LinComb.of(wide)


def test_gl_product():
    u = SymWord.make([DOT])
    assert gl_product(u, u) == (LinComb.of(SymWord.make([DOT, DOT]))
                                + LinComb.of(SymWord.make([LADDER])))
    assert gl_product(SymWord(), u) == LinComb.of(u)
    words = [f for n in range(0, 3) for f in forests(n)]
    assert check_smb_associative(gl_smb(6), words)[1]


def test_comas_extraction_matches_guin_oudom():
    from hopfalg.core import as_lincomb
    gl = gl_smb(64)

    def star(x, y):
        return lc_multi([as_lincomb(x), as_lincomb(y)],
                        lambda a, b: (a, b)).apply(
            lambda pair: smb_to_product(gl, pair[0], pair[1]))

    def dot_product(x, y):
        return lc_multi([as_lincomb(x), as_lincomb(y)],
                        lambda a, b: a.union(b))

    M = comas_to_smb(star, dot_product,
                     lambda t: LinComb.of(SymWord.make([t])), 64,
                     grade=lambda t: t.vertices)
    assert M.eval(1, 1, (DOT,), (DOT,)) == prelie_graft(DOT, DOT)
    assert M.eval(1, 2, (DOT,), (DOT, DOT)) == gl.eval(1, 2, (DOT,), (DOT, DOT))
    assert M.eval(2, 1, (DOT, DOT), (DOT,)).is_zero()


def test_admissible_cuts():
    assert len(admissible_cuts(DOT)) == 2
    cuts = admissible_cuts(LADDER)
    assert len(cuts) == 3
    assert (SymWord.make([LADDER]), None) in cuts
    assert (SymWord.make([DOT]), DOT) in cuts
    assert (SymWord(), LADDER) in cuts
    corolla_cuts = admissible_cuts(CYCLE)
    assert len(corolla_cuts) == 5
    assert sum(1 for p, r in corolla_cuts
               if p == SymWord.make([DOT]) and r == LADDER) == 2


def test_ck_coproduct_examples():
    f = SymWord.make([DOT])
    assert ck_coproduct_forest(f) == (LinComb.of((f, SymWord()))
                                      + LinComb.of((SymWord(), f)))
    ladder = SymWord.make([LADDER])
    value = ck_coproduct_forest(ladder)
    assert value.coefficient((SymWord.make([DOT]), SymWord.make([DOT]))) == 1
    corolla = SymWord.make([CYCLE])
    value = ck_coproduct_forest(corolla)
    assert value.coefficient((SymWord.make([DOT]), ladder)) == 2
    assert value.coefficient((SymWord.make([DOT, DOT]),
                              SymWord.make([DOT]))) == 1


def test_forest_symmetry_factors():
    assert forest_symmetry(SymWord.make([DOT])) == 1
    assert forest_symmetry(SymWord.make([DOT, DOT])) == 2
    assert forest_symmetry(SymWord.make([CYCLE])) == 2
    assert forest_symmetry(SymWord.make([DOT, DOT, DOT])) == 6


def test_pairing():
    for name, ok, detail in pairing_gl_ck(3):
        assert ok, f"{name}: {detail}"


def test_forest_enumeration():
    assert [len(forests(n)) for n in range(0, 5)] == [1, 1, 2, 4, 9]


def test_gl_structure_constants_are_integers():
    # the shuffle-split weights 1/r! must always cancel against orderings
    M = gl_smb(6)
    for d1 in range(0, 3):
        for u in forests(d1):
            for d2 in range(0, 4 - d1):
                for v in forests(d2):
                    for _, coeff in smb_to_product(M, u, v).items():
                        assert coeff.denominator == 1, (u, v, coeff)


def test_lie_json_roundtrip():
    import pytest

    from hopfalg.prelie import lie_from_json, lie_to_json

    heisenberg = {
        "basis": ["p", "q", "z"], "weights": [1, 1, 2],
        "brackets": [{"left": 0, "right": 1, "value": [[2, "1"]]}],
    }
    lie = lie_from_json(heisenberg)
    assert lie.bracket(0, 1) == LinComb.of(2)
    assert lie.bracket(1, 0) == LinComb.of(2, -1)
    assert lie_from_json(lie_to_json(lie)).table == lie.table
    M = lie_to_smb(lie, 4)
    assert M.eval(1, 1, (0,), (1,)) == LinComb.of(2, Fraction(1, 2))
    broken = {
        "basis": ["a", "b"], "weights": [1, 1],
        "brackets": [{"left": 0, "right": 1, "value": [[0, "1"]]}],
    }
    with pytest.raises(ValueError):
        lie_from_json(broken)
