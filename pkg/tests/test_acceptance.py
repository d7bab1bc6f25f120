"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  All equality checks are exact; no tolerances appear anywhere.

Criterion 9 contains one sub-claim (the two tensor-coalgebra
identifications of the permutation Hopf algebra agreeing through total
degree three) that is provably false as stated: the two canonical
idempotents project along different complements of the primitives already
in degree three, and an exhaustive search over fold and half-shuffle
conventions confirms no reading rescues the claim.  That sub-claim is kept
as a strict expected failure with the computed witness; the corrected
statement (agreement through degree two, explicit first difference in
degree three, and a degree-four witness as well) is asserted instead.
"""

import pytest

from hopfalg import checks, diptdend, prelie, trees, zoo
from hopfalg.core import LinComb, SymWord, TensorWord, lc_text
from hopfalg.trees import Permutation

P = Permutation


def conclude(number: int, description: str, report) -> None:
    failed = [c for c in report.checks if not c.ok]
    status = "pass" if not failed else "FAIL"
    print(f"criterion {number:02d} ({description}): {status}")
    for c in failed:
        print(f"    {c.id}: {c.witness}")
    assert not failed, [c.id for c in failed]


def test_criterion_01_dimension_tables():
    report = checks.suite_series(5)
    expected = {
        "dims-dend": [1, 2, 5, 14, 42],
        "dims-dipt": [1, 2, 6, 22, 90],
        "dims-mb": [1, 1, 3, 11, 45],
    }
    for name, row in expected.items():
        assert any(c.id == name and c.ok for c in report.checks), name
    assert [trees.count_labeled_rooted_trees(n) for n in range(1, 6)] == \
        [1, 2, 9, 64, 625]
    assert [trees.count_series_parallel(n) for n in range(1, 6)] == \
        [1, 3, 19, 195, 2791]
    assert [trees.count_series_parallel(n, True) for n in range(1, 6)] == \
        [1, 2, 12, 122, 1740]
    conclude(1, "dimension tables, exact", report)


def test_criterion_02_series_identities():
    # composition identities through degree 5; the quadratic through degree 6
    results = trees.check_series_identities(5)
    report = checks.Report("series-identities")
    report.extend(results)
    quadratic = [r for r in results if r[0] == "supercatalan-quadratic"]
    assert quadratic and quadratic[0][1]
    conclude(2, "generating series identities", report)


def test_criterion_03_relation_family_equivalence():
    report = checks.suite_r(4)
    structures = {c.id.split("[")[-1].rstrip("]")
                  for c in report.checks if c.id.startswith("R_") and c.ok}
    assert len(structures) >= 3, structures
    assert any(c.id == "R_111-violation-detected" and c.ok
               for c in report.checks)
    assert any(c.id == "violation-breaks-associativity" and c.ok
               for c in report.checks)
    conclude(3, "relations equivalent to associativity", report)


def test_criterion_04_symmetric_relation_instances():
    report = checks.suite_sr(4)
    instances = ("SR_111", "SR_112", "SR_121", "SR_211")
    required_sources = ("SM[lie]", "SM[comas-gl]", "SB[rooted]", "SB[fdb]")
    seen = {c.id for c in report.checks if c.ok}
    for source in required_sources:
        for instance in instances:
            assert f"{instance}[{source}]" in seen, (instance, source)
    conclude(4, "symmetric relation instances", report)


def test_criterion_05_lie_formulas():
    from fractions import Fraction
    L = prelie.free_nilpotent_lie(3, 3)
    M = prelie.lie_to_smb(L, 4)
    x, y, z = 0, 1, 2
    report = checks.Report("lie-formulas")
    report.add(("half-bracket",
                M.eval(1, 1, (x,), (y,)) == L.bracket(x, y).scale(Fraction(1, 2)),
                ""))
    expected12 = (L.bracket_lc(L.bracket(x, y), LinComb.of(z)).scale(Fraction(1, 6))
                  - L.bracket_lc(LinComb.of(x), L.bracket(y, z)).scale(Fraction(1, 12)))
    report.add(("one-two", M.eval(1, 2, (x,), (y, z)) == expected12, ""))
    expected21 = (L.bracket_lc(L.bracket(x, y), LinComb.of(z)).scale(Fraction(-1, 12))
                  + L.bracket_lc(LinComb.of(x), L.bracket(y, z)).scale(Fraction(1, 6)))
    report.add(("two-one", M.eval(2, 1, (x, y), (z,)) == expected21, ""))
    conclude(5, "enveloping-algebra extraction formulas", report)


def test_criterion_06_dendriform_idempotent():
    report = checks.Report("dendriform-idempotent")
    model = diptdend.dend_model(10)
    bases = {d: diptdend.dend_basis(d) for d in range(1, 5)}
    primitive_valued = all(
        model.reduced_iterate(2, diptdend.dend_idempotent(LinComb.of(t))).is_zero()
        for d, basis in bases.items() for t in basis)
    report.add(("idempotent-primitive-valued", primitive_valued, "degree <= 4"))
    kills = all(
        diptdend.dend_idempotent(
            diptdend.dend_succ(LinComb.of(t), LinComb.of(s))).is_zero()
        for d1 in (1, 2, 3) for t in bases[d1]
        for d2 in range(1, 5 - d1) for s in bases[d2])
    report.add(("idempotent-kills-right-products", kills,
                "all basis pairs of total degree <= 4"))
    from hopfalg.core import vectors_rank
    fixes, dims_ok = True, True
    for n in range(1, 5):
        basis = diptdend.primitive_basis_dend(n)
        for b in basis:
            if diptdend.dend_idempotent(b) != b:
                fixes = False
        if vectors_rank(basis) != trees.catalan(n - 1):
            dims_ok = False
    report.add(("idempotent-fixes-primitives", fixes, "degree <= 4"))
    report.add(("primitive-dimensions", dims_ok, "catalan numbers"))
    conclude(6, "dendriform idempotent properties", report)


def test_criterion_07_brace_operad():
    report = checks.suite_operad(5)
    assert any(c.id == "ladder-self-composition" and c.ok for c in report.checks)
    conclude(7, "brace operad composition and associativity", report)


def test_criterion_08_connes_kreimer():
    report = checks.suite_ck(4)
    for item in checks.suite_pairing(3).checks:
        report.checks.append(item)
    conclude(8, "admissible-cut coproduct and duality pairing", report)


def test_criterion_09_permutation_algebra_structures():
    report = checks.Report("mr-structures")
    for name, ok, witness in zoo.mr_extract_structures(4):
        if name == "phi-theta-first-difference":
            continue   # handled separately below
        report.add((name, ok, witness))
    phi_vals = {
        P((2, 1)): LinComb.of(P((2, 1))) - LinComb.of(P((1, 2))),
        P((2, 3, 1)): LinComb.of(P((2, 3, 1))) - LinComb.of(P((1, 3, 2))),
        P((3, 1, 2)): LinComb.of(P((3, 1, 2))) - LinComb.of(P((2, 1, 3))),
        P((3, 2, 1)): (LinComb.of(P((3, 2, 1))) - LinComb.of(P((1, 3, 2)))
                       - LinComb.of(P((2, 1, 3))) + LinComb.of(P((1, 2, 3)))),
    }
    report.add(("phi-displayed-values",
                all(zoo.mr_phi(TensorWord((s,))) == v
                    for s, v in phi_vals.items()), ""))
    model = zoo.mr_model(6)
    u = LinComb.of(P((2, 1, 3))) - LinComb.of(P((3, 1, 2)))
    v = LinComb.of(P((2, 3, 1))) - LinComb.of(P((1, 3, 2)))
    w = (LinComb.of(P((3, 2, 1))) - LinComb.of(P((1, 3, 2)))
         - LinComb.of(P((2, 1, 3))) + LinComb.of(P((1, 2, 3))))
    report.add(("uvw-primitive",
                all(model.reduced_iterate(2, e).is_zero() for e in (u, v, w)),
                ""))
    conclude(9, "permutation algebra: values, primitives, right-sidedness",
             report)


@pytest.mark.xfail(strict=True, reason=(
    "defect in the source statement: the infinitesimal and half-shuffle "
    "identifications already differ in total degree three (witness "
    "M_11(1;21) and M_21(1.1;1)); the two canonical idempotents project "
    "along different complements of the primitives in degree three, so no "
    "convention makes them agree through degree three"))
def test_criterion_09b_identifications_agree_through_degree_three():
    for degree in (1, 2, 3):
        for word in zoo.irr_words(degree):
            assert zoo.mr_phi(word) == zoo.mr_theta(word)


def test_criterion_09c_identification_difference_witnesses():
    # corrected statement: agreement through degree two, first difference in
    # degree three, and a degree-four witness as well
    for degree in (1, 2):
        for word in zoo.irr_words(degree):
            assert zoo.mr_phi(word) == zoo.mr_theta(word)
    witnesses3 = [w for w in zoo.irr_words(3)
                  if zoo.mr_phi(w) != zoo.mr_theta(w)]
    assert witnesses3
    witnesses4 = [w for w in zoo.irr_words(4)
                  if zoo.mr_phi(w) != zoo.mr_theta(w)]
    assert witnesses4
    w = witnesses4[0]
    print("criterion 09 witness (degree 4): "
          f"phi - theta on {'.'.join(map(str, w.letters))} = "
          f"{lc_text(zoo.mr_phi(w) - zoo.mr_theta(w))}")


def test_criterion_10_faa_di_bruno():
    report = checks.suite_fdb(3)
    assert any(c.id == "fdb-associator" and c.ok for c in report.checks)
    assert any(c.id == "fdb-coproduct-a2" and c.ok for c in report.checks)
    assert any(c.id == "fdb-rightsided" and c.ok for c in report.checks)
    conclude(10, "Faa di Bruno pre-Lie and coproduct duality", report)


def test_criterion_11_dipterous_reductions():
    report = checks.suite_reduction(6)
    names = {c.id for c in report.checks}
    assert {"dipt-reduction-M31", "dipt-reduction-M41", "dipt-reduction-M12",
            "dipt-reduction-M22", "dipt-reduction-M13"} <= names
    conclude(11, "dipterous reduction identities", report)


def test_criterion_12_quasi_shuffle():
    report = checks.suite_ctd(4)
    assert any(c.id == "qsym-mb-table" and c.ok for c in report.checks)
    conclude(12, "quasi-shuffle structure and tridendriform split", report)
