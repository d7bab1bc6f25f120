import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfalg import grammar
from hopfalg.core import SymWord
from hopfalg.diptdend import bgen, dend_basis, dipt_monomials, mono_text
from hopfalg.grammar import ParseError
from hopfalg.multibrace import BraceExpr, OperadElement
from hopfalg.trees import (
    Permutation,
    binary_trees,
    planar_trees,
    planar_unreduced_trees,
    rooted_trees,
)


def test_planar_tree_roundtrip():
    for n in range(1, 6):
        for tree in planar_trees(n):
            assert grammar.parse_planar_tree(str(tree)) == tree
    assert grammar.parse_planar_tree(" ( . . ) ") == planar_trees(2)[0]


def test_planar_tree_errors_and_positions():
    with pytest.raises(ParseError) as err:
        grammar.parse_planar_tree("(.)")
    assert "position" in str(err.value)
    with pytest.raises(ParseError) as err:
        grammar.parse_planar_tree("(. .) junk")
    assert err.value.position == 6


def test_pbt_roundtrip():
    for n in range(1, 6):
        for tree in binary_trees(n):
            assert grammar.parse_pbt(str(tree)) == tree
    with pytest.raises(ParseError):
        grammar.parse_pbt("(. . .)")


def test_bracket_tree_roundtrips():
    for n in range(1, 5):
        for tree in planar_unreduced_trees(n):
            assert grammar.parse_ordered_tree(str(tree)) == tree
        for tree in rooted_trees(n):
            assert grammar.parse_rooted_tree(str(tree)) == tree
    # canonical sorting happens on input too
    assert grammar.parse_rooted_tree("[[[]] []]") == \
        grammar.parse_rooted_tree("[[] [[]]]")


def test_permutation_grammar():
    assert grammar.parse_permutation("321") == Permutation((3, 2, 1))
    assert grammar.parse_permutation("()") == Permutation(())
    long = Permutation(tuple(range(1, 11)))
    assert grammar.parse_permutation(str(long)) == long
    with pytest.raises(ParseError):
        grammar.parse_permutation("11")


def test_composition_grammar():
    assert grammar.parse_composition("1.2.3") == (1, 2, 3)
    assert grammar.parse_composition("7") == (7,)


def test_forest_grammar():
    f = SymWord.make([rooted_trees(2)[0], rooted_trees(1)[0]])
    assert grammar.parse_forest(str(f)) == f
    assert grammar.parse_forest("{}") == SymWord()
    assert grammar.parse_forest("{[], [[]]}") == f


def test_dipt_monomial_grammar():
    for d in range(1, 4):
        for mono in dipt_monomials(d):
            assert grammar.parse_dipt_monomial(mono_text(mono)) == mono
    assert grammar.parse_dipt_monomial("1") == ()


def test_dend_tree_grammar():
    for d in range(0, 4):
        for tree in dend_basis(d):
            assert grammar.parse_dend_tree(str(tree)) == tree
    decorated = grammar.parse_dend_tree("(. .){v}")
    assert decorated == bgen("v")
    assert grammar.parse_dend_tree(str(decorated)) == decorated
    with pytest.raises(ParseError):
        grammar.parse_dend_tree("(. .){a,b}")


def test_brace_expression_grammar():
    expr = grammar.parse_brace_expr("{x1; x2, {x3; x4}}")
    assert expr == BraceExpr("x1", ("x2", BraceExpr("x3", ("x4",))))
    assert grammar.parse_brace_expr("x9") == "x9"


def test_operad_element_grammar():
    element = grammar.parse_operad_element("[[] []] x 132")
    assert element == OperadElement.of(planar_unreduced_trees(3)[0],
                                       Permutation((1, 3, 2)))
    with pytest.raises(ParseError):
        grammar.parse_operad_element("[[]] x 132")   # arity mismatch


def test_qsym_and_fdb_grammars():
    assert grammar.parse_qsym_key("x[1,2]") == (1, 2)
    assert grammar.qsym_text((3,)) == "x[3]"
    assert grammar.parse_qsym_key(grammar.qsym_text((4, 1, 1))) == (4, 1, 1)
    mono = SymWord.make([2, 2, 5])
    text = grammar.fdb_monomial_text(mono)
    assert text == "a2^2*a5"
    assert grammar.parse_fdb_monomial(text) == mono
    assert grammar.parse_fdb_monomial("1") == SymWord()
    assert grammar.fdb_monomial_text(SymWord()) == "1"


@given(st.integers(1, 4), st.integers(0, 30))
@settings(max_examples=30, deadline=None)
def test_random_tree_roundtrips(n, index):
    trees = rooted_trees(n)
    tree = trees[index % len(trees)]
    assert grammar.parse_rooted_tree(str(tree)) == tree


@given(st.text(alphabet="().[]{};,x123 ", max_size=12))
@settings(max_examples=120, deadline=None)
def test_parsers_fail_cleanly_on_garbage(text):
    parsers = [grammar.parse_planar_tree, grammar.parse_pbt,
               grammar.parse_rooted_tree, grammar.parse_permutation,
               grammar.parse_forest, grammar.parse_qsym_key,
               grammar.parse_brace_expr, grammar.parse_operad_element]
    for parse in parsers:
        try:
            parse(text)
        except ParseError:
            pass
