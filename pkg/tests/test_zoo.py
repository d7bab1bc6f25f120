import itertools

import pytest

from hopfalg.core import LinComb, SymWord, TensorWord
from hopfalg.trees import Permutation
from hopfalg.zoo import (
    compositions_of,
    fdb_coproduct,
    fdb_cross_check,
    fdb_lie_bracket,
    fdb_prelie,
    fdb_smb,
    irr_words,
    irreducibles,
    mr_coproduct_key,
    mr_e_dend,
    mr_e_inf,
    mr_extract_structures,
    mr_half_shuffles,
    mr_model,
    mr_phi,
    mr_product,
    mr_product_keys,
    mr_theta,
    mr_transport,
    qsym_coproduct,
    qsym_ctd_check,
    qsym_mb,
    qsym_model,
    qsym_monomial_expansion,
    qsym_product,
)

P = Permutation


# -- Faa di Bruno -------------------------------------------------------------


def test_fdb_prelie_values():
    assert fdb_prelie(1, 1) == LinComb.of(2, -1)
    assert fdb_lie_bracket(2, 5) == LinComb.of(7, 3)
    with pytest.raises(ValueError):
        fdb_prelie(0, 1)


def test_fdb_associator():
    for p, q, r in itertools.product(range(1, 4), repeat=3):
        left = fdb_prelie(p, q).apply(lambda k: fdb_prelie(k, r))
        right = fdb_prelie(q, r).apply(lambda k: fdb_prelie(p, k))
        assert left - right == LinComb.of(p + q + r, p * p)


def test_fdb_coproduct_values():
    assert fdb_coproduct(1) == LinComb.of((SymWord.make([1]), 1))
    delta2 = fdb_coproduct(2)
    assert delta2 == (LinComb.of((SymWord.make([2]), 1))
                      + LinComb.of((SymWord.make([1, 1]), 2)))
    delta3 = fdb_coproduct(3)
    assert delta3.coefficient((SymWord.make([1, 2]), 2)) == 3
    assert delta3.coefficient((SymWord.make([3]), 1)) == 1
    assert delta3.coefficient((SymWord.make([1, 1, 1]), 3)) == 1
    # second legs are always single generators
    for n in range(1, 6):
        for (mono, k), _ in fdb_coproduct(n).items():
            assert isinstance(k, int)


def test_fdb_cross_check():
    for name, ok, detail in fdb_cross_check(3):
        assert ok, f"{name}: {detail}"


def test_fdb_smb_is_symmetric_brace():
    M = fdb_smb(64)
    assert M.eval(2, 1, (1, 2), (1,)).is_zero()
    assert M.eval(1, 1, (2,), (3,)) == LinComb.of(5, -2)


# -- QSym ----------------------------------------------------------------------


def test_qsym_products():
    assert qsym_product(LinComb.of((1,)), LinComb.of((1,))) == \
        LinComb.from_terms([((1, 1), 2), ((2,), 1)])
    assert qsym_product(LinComb.of((1,)), LinComb.of((2,))) == \
        LinComb.from_terms([((1, 2), 1), ((2, 1), 1), ((3,), 1)])
    assert qsym_product(LinComb.of(()), LinComb.of((2, 1))) == \
        LinComb.of((2, 1))


def test_qsym_polynomial_oracle():
    variables = 7

    def expand(lc):
        out = {}
        for key, c in lc.items():
            for mono, n in qsym_monomial_expansion(key, variables).items():
                out[mono] = out.get(mono, 0) + c * n
        return {k: v for k, v in out.items() if v}

    def poly_mult(d1, d2):
        out = {}
        for m1, c1 in d1.items():
            for m2, c2 in d2.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return {k: v for k, v in out.items() if v}

    for a in compositions_of(1) + compositions_of(2):
        for b in compositions_of(1) + compositions_of(2):
            direct = poly_mult(qsym_monomial_expansion(a, variables),
                               qsym_monomial_expansion(b, variables))
            assert direct == expand(qsym_product(LinComb.of(a), LinComb.of(b)))


def test_qsym_coproduct():
    assert qsym_coproduct((2, 1)) == LinComb.from_terms([
        (((), (2, 1)), 1), (((2,), (1,)), 1), (((2, 1), ()), 1)])
    model = qsym_model()
    assert model.reduced_iterate(2, (3,)).is_zero()


def test_qsym_mb_table():
    M = qsym_mb(256)
    assert M.eval(1, 1, (1,), (2,)) == LinComb.of(3)
    assert M.eval(1, 2, (1,), (2, 3)).is_zero()
    assert M.eval(2, 1, (1, 2), (3,)).is_zero()


def test_qsym_ctd_relations():
    for name, ok, detail in qsym_ctd_check(4):
        assert ok, f"{name}: {detail}"


def test_qsym_hopf_compatibility():
    from hopfalg.core import lc_multi
    keys = compositions_of(1) + compositions_of(2)
    for a in keys:
        for b in keys:
            lhs = qsym_product(LinComb.of(a), LinComb.of(b)).apply(
                qsym_coproduct)
            rhs = lc_multi([qsym_coproduct(a), qsym_coproduct(b)],
                           lambda p, q: (p, q)).apply(
                lambda pq: lc_multi(
                    [qsym_product(LinComb.of(pq[0][0]), LinComb.of(pq[1][0])),
                     qsym_product(LinComb.of(pq[0][1]), LinComb.of(pq[1][1]))],
                    lambda l, r: (l, r)))
            assert lhs == rhs


# -- Malvenuto-Reutenauer -------------------------------------------------------


def test_mr_product_examples():
    assert mr_product(LinComb.of(P((1, 2))), LinComb.of(P((1,)))) == \
        LinComb.from_terms([(P((1, 2, 3)), 1), (P((1, 3, 2)), 1),
                            (P((3, 1, 2)), 1)])
    assert mr_product(LinComb.of(P((1,))), LinComb.of(P((1,)))) == \
        LinComb.from_terms([(P((1, 2)), 1), (P((2, 1)), 1)])
    assert mr_product(LinComb.of(P(())), LinComb.of(P((2, 1)))) == \
        LinComb.of(P((2, 1)))


def test_mr_coproduct():
    value = mr_coproduct_key(P((2, 1)))
    assert value == LinComb.from_terms([
        ((P(()), P((2, 1))), 1), ((P((1,)), P((1,))), 1),
        ((P((2, 1)), P(())), 1)])


def test_mr_half_shuffles():
    succ, prec = mr_half_shuffles(P((1,)), P((1,)))
    assert succ == LinComb.of(P((1, 2)))
    assert prec == LinComb.of(P((2, 1)))
    with pytest.raises(ValueError):
        mr_half_shuffles(P(()), P((1,)))
    # the two half shuffles partition the shuffle set
    for s in [P((1,)), P((1, 2)), P((2, 1))]:
        for t in [P((1,)), P((2, 1))]:
            a, b = mr_half_shuffles(s, t)
            assert a + b == mr_product_keys(s, t)


def test_irreducibles():
    assert [len(irreducibles(n)) for n in range(1, 5)] == [1, 1, 3, 13]
    assert set(irreducibles(2)) == {P((2, 1))}
    assert set(irreducibles(3)) == {P((2, 3, 1)), P((3, 1, 2)), P((3, 2, 1))}
    assert [len(irr_words(n)) for n in range(1, 5)] == [1, 2, 6, 24]


def test_phi_displayed_values():
    assert mr_phi(TensorWord((P((2, 1)),))) == \
        LinComb.of(P((2, 1))) - LinComb.of(P((1, 2)))
    assert mr_phi(TensorWord((P((2, 3, 1)),))) == \
        LinComb.of(P((2, 3, 1))) - LinComb.of(P((1, 3, 2)))
    assert mr_phi(TensorWord((P((3, 1, 2)),))) == \
        LinComb.of(P((3, 1, 2))) - LinComb.of(P((2, 1, 3)))
    assert mr_phi(TensorWord((P((3, 2, 1)),))) == \
        (LinComb.of(P((3, 2, 1))) - LinComb.of(P((1, 3, 2)))
         - LinComb.of(P((2, 1, 3))) + LinComb.of(P((1, 2, 3))))


def test_phi_rejects_reducible_letters():
    with pytest.raises(ValueError):
        mr_phi(TensorWord((P((1, 2)),)))


def test_degree3_primitives():
    model = mr_model(6)
    u = LinComb.of(P((2, 1, 3))) - LinComb.of(P((3, 1, 2)))
    v = LinComb.of(P((2, 3, 1))) - LinComb.of(P((1, 3, 2)))
    w = (LinComb.of(P((3, 2, 1))) - LinComb.of(P((1, 3, 2)))
         - LinComb.of(P((2, 1, 3))) + LinComb.of(P((1, 2, 3))))
    for element in (u, v, w):
        assert model.reduced_iterate(2, element).is_zero()
    assert model.reduced_iterate(
        2, LinComb.of(P((1, 2))) - LinComb.of(P((2, 1)))).is_zero()


def test_idempotent_values():
    assert mr_e_inf(LinComb.of(P((2, 1)))) == \
        LinComb.of(P((2, 1))) - LinComb.of(P((1, 2)))
    assert mr_e_inf(LinComb.of(P((1, 2)))).is_zero()
    assert mr_e_dend(LinComb.of(P((1, 2)))).is_zero()
    assert mr_e_dend(LinComb.of(P((2, 1)))) == \
        LinComb.of(P((2, 1))) - LinComb.of(P((1, 2)))


def test_phi_theta_agree_through_degree_two():
    for d in (1, 2):
        for word in irr_words(d):
            assert mr_phi(word) == mr_theta(word)


def test_phi_theta_first_difference_is_degree_three():
    diffs = [word for word in irr_words(3) if mr_phi(word) != mr_theta(word)]
    assert diffs, "the two identifications must differ at degree three"


def test_transport_roundtrip_and_extraction():
    from hopfalg.multibrace import mb_to_product, product_to_mb
    star = mr_transport(mr_theta, 3)
    M = product_to_mb(star, 64, grade=lambda s: s.size)
    one = P((1,))
    words = [TensorWord((one,)), TensorWord((one, one))]
    for u in words:
        for v in words:
            assert mb_to_product(M, u, v) == star(u, v)
    assert M.eval(2, 1, (one, one), (one,)).is_zero()


def test_extract_structures_report():
    report = mr_extract_structures(4)
    failed = [name for name, ok, _ in report if not ok]
    assert failed == [], failed
    detail = {name: witness for name, ok, witness in report}
    assert "degree 3" in detail["phi-theta-first-difference"]
    assert detail["phi-theta-degree4-witness"]
