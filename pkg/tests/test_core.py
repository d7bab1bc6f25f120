import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfalg.core import (
    EMPTY_SYM,
    EMPTY_WORD,
    IDENTITY,
    DegreeBoundError,
    HopfModel,
    LinComb,
    SymWord,
    TensorWord,
    deconcat,
    invert_on_basis,
    lc_json,
    lc_multi,
    lc_text,
    pair_text,
    polynomial_model,
    shuffle_product,
    solve_linear_system,
    symmetrize,
    tensor_model,
    unshuffle,
    vectors_rank,
)

scalars = st.builds(Fraction, st.integers(-50, 50),
                    st.integers(1, 12))
keys = st.sampled_from(["a", "b", "c", "d"])
lincombs = st.dictionaries(keys, scalars, max_size=4).map(LinComb)


@given(lincombs, lincombs, lincombs)
@settings(max_examples=60, deadline=None)
def test_addition_is_associative_and_commutative(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x - x == LinComb.zero()


@given(lincombs, lincombs, scalars, scalars)
@settings(max_examples=60, deadline=None)
def test_scaling_distributes(x, y, a, b):
    assert (x + y).scale(a) == x.scale(a) + y.scale(a)
    assert x.scale(a + b) == x.scale(a) + x.scale(b)
    assert x.scale(a).scale(b) == x.scale(a * b)


@given(st.builds(Fraction, st.integers(-10 ** 6, 10 ** 6),
                 st.integers(1, 10 ** 4)))
def test_scalar_roundtrip(value):
    # canonical form has positive denominator and lowest terms
    assert Fraction(value.numerator, value.denominator) == value
    assert value.denominator > 0


def test_no_stored_zero_coefficients():
    lc = LinComb.from_terms([("a", 1), ("a", -1), ("b", 2)])
    assert lc.support() == {"b"}
    assert not LinComb.of("a", 0)


def test_rejects_floats():
    with pytest.raises(TypeError):
        LinComb.of("a", 0.5)


def test_deconcat_examples():
    x1x2 = TensorWord(("x1", "x2"))
    assert deconcat(x1x2) == LinComb.from_terms([
        ((EMPTY_WORD, x1x2), 1),
        ((TensorWord(("x1",)), TensorWord(("x2",))), 1),
        ((x1x2, EMPTY_WORD), 1),
    ])
    assert deconcat(EMPTY_WORD) == LinComb.of((EMPTY_WORD, EMPTY_WORD))
    x = TensorWord(("x1",))
    assert deconcat(x) == LinComb.from_terms(
        [((EMPTY_WORD, x), 1), ((x, EMPTY_WORD), 1)])


def test_unshuffle_examples():
    x = SymWord.make(["x"])
    assert unshuffle(x) == LinComb.from_terms(
        [((EMPTY_SYM, x), 1), ((x, EMPTY_SYM), 1)])
    xy = SymWord.make(["x", "y"])
    assert unshuffle(xy).coefficient(
        (SymWord.make(["x"]), SymWord.make(["y"]))) == 1
    xx = SymWord.make(["x", "x"])
    assert unshuffle(xx).coefficient(
        (SymWord.make(["x"]), SymWord.make(["x"]))) == 2


@given(st.lists(keys, min_size=0, max_size=4))
@settings(max_examples=40, deadline=None)
def test_symword_storage_is_order_independent(letters):
    words = {SymWord.make(p) for p in itertools.permutations(letters)}
    assert len(words) == 1


def test_tensor_coassociativity_small():
    model = tensor_model()
    for n in range(4):
        word = TensorWord(tuple(f"x{i}" for i in range(n)))
        left = model.coproduct_lc(LinComb.of(word)).apply(
            lambda p: deconcat(p[0]).map_keys(lambda q: (q[0], q[1], p[1])))
        right = model.coproduct_lc(LinComb.of(word)).apply(
            lambda p: deconcat(p[1]).map_keys(lambda q: (p[0], q[0], q[1])))
        assert left == right


def test_unshuffle_cocommutative():
    for letters in (["x"], ["x", "y"], ["x", "x", "y"]):
        value = unshuffle(SymWord.make(letters))
        assert value == value.map_keys(lambda p: (p[1], p[0]))


def test_reduced_iterate_conventions():
    model = tensor_model()
    word = TensorWord(("x1", "x2", "x3"))
    # the one-fold iterate is the projection away from the unit
    assert model.reduced_iterate(1, word) == LinComb.of((word,))
    assert model.reduced_iterate(1, EMPTY_WORD).is_zero()
    # a primitive is killed by the two-fold iterate
    assert model.reduced_iterate(2, TensorWord(("x1",))).is_zero()
    # the three-fold iterate of a three-letter word is its full splitting
    split = model.reduced_iterate(3, word)
    assert split == LinComb.of((TensorWord(("x1",)), TensorWord(("x2",)),
                                TensorWord(("x3",))))
    assert model.reduced_iterate(4, word).is_zero()


def test_filtration_degree():
    model = tensor_model()
    assert model.filtration_degree(TensorWord(("x",))) == 1
    for n in (2, 3, 4):
        word = TensorWord(tuple(f"x{i}" for i in range(n)))
        assert model.filtration_degree(word) == n
    assert model.filtration_degree(EMPTY_WORD) == 0
    with pytest.raises(ValueError):
        model.filtration_degree(LinComb.zero())


def test_filtration_detects_non_conilpotent():
    bad = HopfModel(product=lambda a, b: LinComb.of("g"),
                    coproduct=lambda k: LinComb.of(("g", "g")),
                    unit="1", grade=lambda k: 1, bound=3)
    with pytest.raises(DegreeBoundError):
        bad.filtration_degree("g")


def test_convolution_unit_and_id_star_id():
    model = polynomial_model()
    unit_map = model.unit_map()
    g = model.conv_log()
    xy = SymWord.make(["x", "y"])
    assert model.convolve(unit_map, g)(xy) == g(xy)
    x = SymWord.make(["x"])
    assert model.convolve(IDENTITY, IDENTITY)(x) == LinComb.of(x, 2)
    j = IDENTITY - unit_map
    assert model.convolve(j, j)(x).is_zero()


def test_conv_log_on_polynomials():
    model = polynomial_model()
    e1 = model.conv_log()
    x = SymWord.make(["x"])
    assert e1(x) == LinComb.of(x)
    assert e1(EMPTY_SYM).is_zero()
    xy = SymWord.make(["x", "y"])
    # J - J*J/2 kills a product of two primitives
    assert e1(xy).is_zero()
    assert model.reduced_iterate(2, e1(LinComb.of(xy))).is_zero()
    e2 = model.eulerian(2)
    assert e2(xy) == LinComb.of(xy)


def test_conv_log_idempotent_through_degree_five():
    model = polynomial_model()
    e1 = model.conv_log()
    for r in range(1, 6):
        for word in itertools.combinations_with_replacement("xy", r):
            value = e1(SymWord.make(word))
            assert e1(value) == value


def test_shuffle_product_counts():
    u = TensorWord(("a", "b"))
    v = TensorWord(("c",))
    assert sum(c for _, c in shuffle_product(u, v).items()) == 3


def test_symmetrize_no_factor():
    word = TensorWord(("a", "a"))
    assert symmetrize(word) == LinComb.of(word, 2)


def test_serialization_text_and_json():
    lc = LinComb.from_terms([("b", Fraction(1, 2)), ("a", -2), ("c", 1)])
    assert lc_text(lc) == "-2*a + 1/2*b + c"
    assert lc_json(lc) == {"terms": [
        {"coeff": "-2", "key": "a"},
        {"coeff": "1/2", "key": "b"},
        {"coeff": "1", "key": "c"},
    ]}
    assert lc_text(LinComb.zero()) == "0"
    assert pair_text(("a", "b")) == "a (x) b"


def test_counitality_of_every_coproduct():
    """(eps x id) Delta = id = (id x eps) Delta on sample bases everywhere."""
    from hopfalg import diptdend, prelie, zoo
    from hopfalg.trees import Permutation

    cases = []
    model = tensor_model()
    cases.append((model, [TensorWord(("a",)), TensorWord(("a", "b"))]))
    cases.append((polynomial_model(),
                  [SymWord.make(["x"]), SymWord.make(["x", "x"])]))
    cases.append((diptdend.dipt_model(8), diptdend.dipt_monomials(2)))
    cases.append((diptdend.dend_model(8), diptdend.dend_basis(2)))
    cases.append((prelie.ck_model(8), prelie.forests(3)))
    cases.append((prelie.gl_model(6), prelie.forests(2)))
    cases.append((zoo.mr_model(6),
                  [Permutation((1,)), Permutation((2, 1))]))
    cases.append((zoo.qsym_model(), [(2,), (1, 1)]))
    lie = prelie.free_nilpotent_lie(2, 2)
    cases.append((prelie.UEA(lie, 4).model(), [(0,), (0, 1)]))
    for model, basis in cases:
        for key in basis:
            cop = model.coproduct(key)
            left = LinComb.from_terms(
                (pair[1], c) for pair, c in cop.items()
                if pair[0] == model.unit)
            right = LinComb.from_terms(
                (pair[0], c) for pair, c in cop.items()
                if pair[1] == model.unit)
            assert left == LinComb.of(key)
            assert right == LinComb.of(key)


def test_lc_multi_expands_products():
    a = LinComb.from_terms([("x", 1), ("y", 2)])
    b = LinComb.from_terms([("u", 3)])
    assert lc_multi([a, b], lambda p, q: p + q) == LinComb.from_terms(
        [("xu", 3), ("yu", 6)])


def test_linear_algebra_helpers():
    vs = [LinComb.from_terms([("a", 1), ("b", 1)]),
          LinComb.from_terms([("a", 1), ("b", -1)]),
          LinComb.from_terms([("a", 2)])]
    assert vectors_rank(vs) == 2
    inverse = invert_on_basis(["p", "q"], lambda k: {
        "p": LinComb.from_terms([("a", 1), ("b", 1)]),
        "q": LinComb.from_terms([("b", 2)]),
    }[k])
    assert inverse(LinComb.of("a")) == (LinComb.of("p")
                                        + LinComb.of("q", Fraction(-1, 2)))
    with pytest.raises(ValueError):
        invert_on_basis(["p", "q"], lambda k: LinComb.of("a"))


def test_solve_linear_system():
    solution = solve_linear_system([
        ({"x": Fraction(1), "y": Fraction(1)}, Fraction(3)),
        ({"x": Fraction(1), "y": Fraction(-1)}, Fraction(1)),
    ])
    assert solution == {"x": Fraction(2), "y": Fraction(1)}
    assert solve_linear_system([
        ({"x": Fraction(1)}, Fraction(1)),
        ({"x": Fraction(1)}, Fraction(2)),
    ]) is None
