"""Chi incarnation: Artin route, cyclic recursion, stratification sums,
specialization reports, and the compatibility lemmas."""

import random
from fractions import Fraction

import pytest

from galstrat.characters import QCentralFunction, alpha_from_conj_domain
from galstrat.chi import (
    QuotientClassData,
    chi_c_alpha,
    chi_formula_class,
    chi_stratification,
    conjugation_class_chi,
    kummer_quotient_data,
    verify_specialization,
)
from galstrat.covers import CoverSpec
from galstrat.errors import MissingData, MissingQuotient
from galstrat.fields import make_field, power_residue
from galstrat.formulas import parse_formula
from galstrat.groups import ConjDomain, GroupHom, cyclic_group, trivial_group
from galstrat.motives import CountTable, MotiveClass, specialize
from galstrat.polynomials import parse_poly
from galstrat.stratifications import GaloisStratification, inflate

Z2 = cyclic_group(2)
Z4 = cyclic_group(4)
ONE = trivial_group()


def brute_nonsquare_count(q):
    k = make_field(q)
    squares = {k.mul(x, x) for x in range(1, q)}
    return q - 1 - len(squares)


def test_chi_c_alpha_squares():
    data = kummer_quotient_data(2, "Y")
    alpha = alpha_from_conj_domain(ConjDomain(Z2, [frozenset({0})]))
    cls = chi_c_alpha(alpha, data)
    assert cls == MotiveClass.generator("Y").scale(Fraction(1, 2))
    table = CountTable.for_torus(["Y"], [5])
    assert specialize(cls, 5, table) == 2  # the two nonzero squares mod 5


def test_chi_c_alpha_nonsquares_symbolic_shape():
    data = QuotientClassData(Z2, {
        frozenset({0}): MotiveClass.generator("Y"),
        frozenset({0, 1}): MotiveClass.generator("X"),
    })
    alpha = alpha_from_conj_domain(ConjDomain(Z2, [frozenset({0, 1})]))
    cls = chi_c_alpha(alpha, data)
    assert cls == MotiveClass.generator("X") - MotiveClass.generator("Y").scale(Fraction(1, 2))
    table = CountTable.for_torus(["X", "Y"], [5])
    assert specialize(cls, 5, table) == brute_nonsquare_count(5) == 2


def test_chi_c_alpha_zero():
    data = kummer_quotient_data(2)
    assert chi_c_alpha(QCentralFunction.constant(Z2, 0), data) == MotiveClass.zero()


def test_chi_c_alpha_missing_quotient():
    data = QuotientClassData(Z4, {frozenset({0}): MotiveClass.generator("Y")})
    alpha = alpha_from_conj_domain(ConjDomain.full(Z4))
    with pytest.raises(MissingQuotient):
        chi_c_alpha(alpha, data)


def test_chi_formula_class_base_case():
    data = kummer_quotient_data(2, "Y")
    assert chi_formula_class(frozenset({0}), data) == MotiveClass.generator("Y")


def test_chi_formula_class_z2():
    data = QuotientClassData(Z2, {
        frozenset({0}): MotiveClass.generator("Y"),
        frozenset({0, 1}): MotiveClass.generator("X"),
    })
    cls = chi_formula_class(frozenset({0, 1}), data)
    assert cls == MotiveClass.generator("X") - MotiveClass.generator("Y").scale(Fraction(1, 2))
    table = CountTable.for_torus(["X", "Y"], [5, 13])
    for q in (5, 13):
        assert specialize(cls, q, table) == brute_nonsquare_count(q)


def frobenius_buckets(n, q):
    """Oracle: bucket the points of the torus by generated Frobenius subgroup."""
    k = make_field(q)
    group = cyclic_group(n)
    buckets = {}
    for x in range(1, q):
        sub = group.cyclic_subgroup(power_residue(x, n, k))
        buckets[sub] = buckets.get(sub, 0) + 1
    return buckets


def test_chi_formula_class_z4_recursion_vs_bucket_oracle():
    data = kummer_quotient_data(4, "Gm")
    levels = {sub: chi_formula_class(sub, data)
              for sub in Z4.cyclic_subgroups()}
    gm = MotiveClass.generator("Gm")
    assert levels[frozenset({0})] == gm
    assert levels[frozenset({0, 2})] == gm.scale(Fraction(1, 2))
    assert levels[frozenset({0, 1, 2, 3})] == gm.scale(Fraction(1, 2))
    for q in (5, 13, 17, 29):
        table = CountTable.for_torus(["Gm"], [q])
        buckets = frobenius_buckets(4, q)
        for sub, cls in levels.items():
            scaled = cls.scale(Fraction(len(sub), 4))  # abelian: normalizer = G
            assert specialize(scaled, q, table) == buckets.get(sub, 0), (q, sorted(sub))


def test_morph_scaling_consistency():
    """Single-class chi equals |C|/|N_G(C)| times the recursion level."""
    for n, sym in ((2, "Y"), (4, "Gm")):
        group = cyclic_group(n)
        data = kummer_quotient_data(n, sym)
        for sub in group.cyclic_subgroups():
            scale = Fraction(len(sub), len(group.normalizer(sub)))
            assert conjugation_class_chi(sub, data) == \
                chi_formula_class(sub, data).scale(scale)


def square_strat():
    gm = CoverSpec.kummer(2, "x", "~(x = 0)")
    origin = CoverSpec.trivial(parse_formula("x = 0"))
    return GaloisStratification(("x",), [
        (gm, ConjDomain(Z2, [frozenset({0})])),
        (origin, ConjDomain(ONE, [frozenset({0})])),
    ], label="zero-or-square")


def test_chi_stratification_zero_or_square():
    strat = square_strat()
    data = {0: kummer_quotient_data(2, "Y"),
            1: QuotientClassData(ONE, {frozenset({0}): MotiveClass.one()})}
    cls = chi_stratification(strat, data)
    assert cls == MotiveClass.one() + MotiveClass.generator("Y").scale(Fraction(1, 2))
    k5 = make_field(5)
    assert len(strat.galois_set({}, k5)) == 3
    assert specialize(cls, 5, CountTable.for_torus(["Y"], [5])) == 3


def test_chi_stratification_empty_support():
    strat = square_strat().with_strata([
        (c, ConjDomain.empty(c.group)) for c, _ in square_strat().strata])
    assert chi_stratification(strat, {}) == MotiveClass.zero()


def test_chi_stratification_full_domains_gives_affine_line():
    strat = square_strat().with_strata([
        (c, ConjDomain.full(c.group)) for c, _ in square_strat().strata])
    data = {0: kummer_quotient_data(2, "Y"),
            1: QuotientClassData(ONE, {frozenset({0}): MotiveClass.one()})}
    cls = chi_stratification(strat, data)
    # full domain on the Kummer stratum contributes the quotient [Y/Z2] = [Gm]
    assert cls == MotiveClass.one() + MotiveClass.generator("Y")
    assert specialize(cls, 5, CountTable.for_torus(["Y"], [5])) == 5


def test_chi_stratification_missing_data():
    with pytest.raises(MissingData):
        chi_stratification(square_strat(), {})


def test_verify_specialization_pass_and_fail():
    strat = square_strat()
    data = {0: kummer_quotient_data(2, "Y"),
            1: QuotientClassData(ONE, {frozenset({0}): MotiveClass.one()})}
    cls = chi_stratification(strat, data)
    table = CountTable.for_torus(["Y"], [5, 13, 17])
    sweep = [(make_field(q), {}) for q in (5, 13, 17)]
    report = verify_specialization(cls, strat, table, sweep)
    assert report.verdict
    assert [row["count"] for row in report.rows] == [3, 7, 9]

    corrupted = strat.with_strata([
        (strat.strata[0][0], ConjDomain.full(Z2)),
        strat.strata[1],
    ])
    bad = verify_specialization(cls, corrupted, table, sweep)
    assert not bad.verdict
    assert bad.first_mismatch()["q"] == 5

    empty = strat.with_strata([
        (c, ConjDomain.empty(c.group)) for c, _ in strat.strata])
    zero_report = verify_specialization(MotiveClass.zero(), empty, table, sweep)
    assert zero_report.verdict


def test_additivity_lemma_on_common_stratification():
    from galstrat.stratifications import boolean_combine
    rng = random.Random(59)
    data = {0: kummer_quotient_data(2, "Y"),
            1: QuotientClassData(ONE, {frozenset({0}): MotiveClass.one()})}
    for _ in range(20):
        def rand_strat():
            subs2 = [s for s in Z2.cyclic_subgroups() if rng.random() < 0.5]
            subs1 = [s for s in ONE.cyclic_subgroups() if rng.random() < 0.5]
            gm = CoverSpec.kummer(2, "x", "~(x = 0)")
            origin = CoverSpec.trivial(parse_formula("x = 0"))
            return GaloisStratification(("x",), [
                (gm, ConjDomain(Z2, subs2)),
                (origin, ConjDomain(ONE, subs1)),
            ])
        a, b = rand_strat(), rand_strat()
        lhs = chi_stratification(boolean_combine(a, b, "or"), data) + \
            chi_stratification(boolean_combine(a, b, "and"), data)
        rhs = chi_stratification(a, data) + chi_stratification(b, data)
        assert lhs == rhs


def test_product_lemma_disjoint_variables():
    from galstrat.stratifications import product
    gm_x = CoverSpec.kummer(2, "x", "~(x = 0)")
    origin_x = CoverSpec.trivial(parse_formula("x = 0"))
    a = GaloisStratification(("x",), [
        (gm_x, ConjDomain(Z2, [frozenset({0})])),
        (origin_x, ConjDomain.empty(ONE)),
    ])
    gm_y = CoverSpec.kummer(2, "y", "~(y = 0)")
    origin_y = CoverSpec.trivial(parse_formula("y = 0"))
    b = GaloisStratification(("y",), [
        (gm_y, ConjDomain(Z2, [frozenset({0, 1})])),
        (origin_y, ConjDomain.empty(ONE)),
    ])
    prod = product(a, b)
    gm = MotiveClass.generator("Gm")
    data_a = {0: kummer_quotient_data(2, "Gm")}
    data_b = {0: kummer_quotient_data(2, "Gm")}
    # quotients of the product torus by cyclic subgroups are all 2-tori
    v4 = prod.strata[0][0].group
    data_prod = {0: QuotientClassData(v4, {
        sub: gm * gm for sub in v4.cyclic_subgroups()})}
    lhs = chi_stratification(prod, data_prod)
    rhs = chi_stratification(a, data_a) * chi_stratification(b, data_b)
    assert lhs == rhs
    table = CountTable.for_torus(["Gm"], [5, 13])
    for q in (5, 13):
        k = make_field(q)
        assert specialize(lhs, q, table) == len(prod.galois_set({}, k))


def test_inflation_invariance_of_chi():
    gm2 = CoverSpec.kummer(2, "x", "~(x = 0)")
    origin = CoverSpec.trivial(parse_formula("x = 0"))
    base = GaloisStratification(("x",), [
        (gm2, ConjDomain(Z2, [frozenset({0})])),
        (origin, ConjDomain.empty(ONE)),
    ])
    psi = GroupHom(Z4, Z2, [0, 1, 0, 1])
    gm4 = CoverSpec.kummer(4, "x", "~(x = 0)")
    inflated = GaloisStratification(("x",), [
        inflate(base.strata[0], psi, gm4),
        base.strata[1],
    ])
    data2 = {0: kummer_quotient_data(2, "Gm")}
    data4 = {0: kummer_quotient_data(4, "Gm")}
    assert chi_stratification(base, data2) == chi_stratification(inflated, data4)


def family_strat():
    """Kummer cover u^2 = z*x over the x-line, parametrized by z != 0."""
    sheet = CoverSpec("kummer", Z2,
                      parse_formula("~(x = 0)", base_params=("z",)),
                      CoverSpec.kummer(2, "x", "~(x = 0)").admissible,
                      "family", n=2, f=parse_poly("z*x"))
    origin = CoverSpec.trivial(parse_formula("x = 0", base_params=("z",)))
    return GaloisStratification(("x",), [
        (sheet, ConjDomain(Z2, [frozenset({0})])),
        (origin, ConjDomain.empty(ONE)),
    ], base_params=("z",), label="family")


def test_base_change_commutes_for_chi():
    strat = family_strat()
    data = {0: kummer_quotient_data(2, "Gm")}
    family_class = chi_stratification(strat, data)
    for q in (5, 13):
        k = make_field(q)
        table = CountTable.for_torus(["Gm"], [q])
        for z0 in range(1, q):
            fiber = strat.substitute_base({"z": z0})
            assert fiber.base_params == ()
            fiber_class = chi_stratification(fiber, data)
            assert fiber_class == family_class  # specialize-then-chi == chi
            count = len(fiber.galois_set({}, k))
            assert specialize(family_class, q, table) == count
            assert count == len(strat.galois_set({"z": z0}, k))
