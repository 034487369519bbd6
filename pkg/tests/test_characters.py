"""Q-central functions: induction, restriction, Artin decomposition, idempotents."""

import random
from fractions import Fraction

import pytest

from galstrat.errors import (
    CentralInvariantViolation,
    SingularSystem,
    ZeroNorm,
)
from galstrat.characters import (
    QCentralFunction,
    alpha_from_conj_domain,
    artin_decompose,
    artin_reconstruct,
    convolve,
    idempotent_coeffs,
    induced_trivial,
    induce_central,
    inner_product,
    regular_character,
    restrict_central,
    solve_exact,
    trivial_character,
)
from galstrat.groups import (
    ConjDomain,
    GroupHom,
    all_homomorphisms,
    cyclic_group,
    direct_product,
    injective_homomorphisms,
    subgroup_embedding,
    symmetric_group,
    trivial_group,
)

S3 = symmetric_group(3)
Z2 = cyclic_group(2)
Z4 = cyclic_group(4)
V4 = direct_product(Z2, Z2)
ONE = trivial_group()

TRANSP = next(rep for rep, _ in S3.cyclic_subgroup_classes() if len(rep) == 2)
ROT = next(rep for rep, _ in S3.cyclic_subgroup_classes() if len(rep) == 3)


def random_central(group, rng):
    values = {rep: Fraction(rng.randrange(-8, 9), rng.randrange(1, 5))
              for rep, _ in group.cyclic_subgroup_classes()}
    return QCentralFunction.from_class_values(group, values)


def test_central_invariant_enforced():
    transp_elt = next(g for g in S3.elements() if S3.order(g) == 2)
    values = [Fraction(0)] * 6
    values[transp_elt] = Fraction(1)  # other transpositions stay 0: not central
    with pytest.raises(CentralInvariantViolation):
        QCentralFunction(S3, values)


def test_alpha_from_conj_domain_examples():
    a = alpha_from_conj_domain(ConjDomain(Z2, [frozenset({0})]))
    assert a.values == (Fraction(1), Fraction(0))
    con_t = ConjDomain.closure(S3, [TRANSP])
    a2 = alpha_from_conj_domain(con_t)
    assert all(a2(g) == (1 if S3.order(g) == 2 else 0) for g in S3.elements())
    full = ConjDomain.full(S3)
    assert alpha_from_conj_domain(full).values == (Fraction(1),) * 6


def test_restrict_examples():
    red = GroupHom(Z4, Z2, [0, 1, 0, 1])
    a = QCentralFunction(Z2, [1, 0])
    assert restrict_central(red, a).values == (1, 0, 1, 0)
    ident = GroupHom(Z2, Z2, [0, 1])
    assert restrict_central(ident, a) == a
    const = QCentralFunction.constant(Z2, Fraction(7, 3))
    assert restrict_central(red, const) == QCentralFunction.constant(Z4, Fraction(7, 3))


def test_induce_regular_from_trivial_subgroup():
    incl = GroupHom(ONE, S3, [0])
    ind = induce_central(incl, trivial_character(ONE))
    assert ind == regular_character(S3)


def direct_summation_induced(group, sub_elements):
    """Oracle: (Ind 1)(g) = #{x : x^-1 g x in H} / |H| by double loop."""
    vals = []
    for g in group.elements():
        hits = sum(1 for x in group.elements() if group.conj(g, x) in sub_elements)
        vals.append(Fraction(hits, len(sub_elements)))
    return tuple(vals)


def test_induce_from_transposition_subgroup():
    h, incl = subgroup_embedding(S3, TRANSP)
    ind = induce_central(incl, trivial_character(h))
    assert ind.values == direct_summation_induced(S3, TRANSP)
    by_class = {1: ind(0),
                2: next(ind(g) for g in S3.elements() if S3.order(g) == 2),
                3: next(ind(g) for g in S3.elements() if S3.order(g) == 3)}
    assert (by_class[1], by_class[2], by_class[3]) == (3, 1, 0)


def test_induce_from_rotation_subgroup():
    h, incl = subgroup_embedding(S3, ROT)
    ind = induce_central(incl, trivial_character(h))
    assert ind.values == direct_summation_induced(S3, ROT)
    assert (ind(0), max(ind(g) for g in S3.elements() if S3.order(g) == 3)) == (2, 2)
    assert all(ind(g) == 0 for g in S3.elements() if S3.order(g) == 2)


def test_inner_product_examples():
    one = trivial_character(S3)
    assert inner_product(one, one) == 1
    assert inner_product(regular_character(S3), one) == 1
    h, incl = subgroup_embedding(S3, TRANSP)
    ind = induce_central(incl, trivial_character(h))
    lhs = inner_product(ind, one)
    rhs = inner_product(trivial_character(h), restrict_central(incl, one))
    assert lhs == rhs == 1


def test_frobenius_reciprocity_all_fixture_homs():
    groups = [ONE, Z2, Z4, V4, S3]
    rng = random.Random(5)
    for source in groups:
        for target in groups:
            for psi in injective_homomorphisms(source, target):
                for _ in range(5):
                    alpha = random_central(source, rng)
                    beta = random_central(target, rng)
                    lhs = inner_product(induce_central(psi, alpha), beta)
                    rhs = inner_product(alpha, restrict_central(psi, beta))
                    assert lhs == rhs


def test_artin_decompose_transposition_indicator():
    alpha = alpha_from_conj_domain(ConjDomain.closure(S3, [TRANSP]))
    coeffs = artin_decompose(alpha)
    # oracle: solve a*(6,0,0) + b*(3,1,0) + c*(2,0,2) = (0,1,0) on class values
    trivial_sub = frozenset({0})
    assert coeffs[trivial_sub] == Fraction(-1, 2)
    assert coeffs[S3.canonical_rep(TRANSP)] == 1
    assert coeffs[ROT] == 0
    assert artin_reconstruct(S3, coeffs) == alpha


def test_artin_decompose_constant_one():
    coeffs = artin_decompose(trivial_character(S3))
    assert coeffs[frozenset({0})] == Fraction(-1, 2)
    assert coeffs[S3.canonical_rep(TRANSP)] == 1
    assert coeffs[ROT] == Fraction(1, 2)


def test_artin_decompose_regular_character():
    for group in (Z2, Z4, V4, S3):
        coeffs = artin_decompose(regular_character(group))
        for rep, c in coeffs.items():
            assert c == (1 if rep == frozenset({0}) else 0)


def test_artin_round_trip_random():
    rng = random.Random(17)
    for group in (ONE, Z2, Z4, V4, S3):
        for _ in range(20):
            alpha = random_central(group, rng)
            coeffs = artin_decompose(alpha)
            assert artin_reconstruct(group, coeffs) == alpha


def test_inflation_restriction_compatibility():
    """Indicator of an inflated domain = restriction of the indicator."""
    from galstrat.stratifications import inflate_domain
    surjections = []
    for source, target in [(Z4, Z2), (V4, Z2), (S3, Z2)]:
        surjections.extend(h for h in all_homomorphisms(source, target) if h.surjective)
    assert surjections
    rng = random.Random(29)
    for psi in surjections:
        for _ in range(5):
            reps = [rep for rep, _ in psi.target.cyclic_subgroup_classes()]
            chosen = [rep for rep in reps if rng.random() < 0.5]
            con = ConjDomain.closure(psi.target, chosen) if chosen \
                else ConjDomain.empty(psi.target)
            lifted = inflate_domain(con, psi)
            assert alpha_from_conj_domain(lifted) == \
                restrict_central(psi, alpha_from_conj_domain(con))


def test_idempotent_trivial_character():
    for group in (Z2, Z4, S3):
        p = idempotent_coeffs(trivial_character(group), 1)
        assert all(c == Fraction(1, group.n) for c in p.values())
        assert convolve(p, p, group) == p


def test_idempotent_sign_character_z2():
    sign = QCentralFunction(Z2, [1, -1])
    p = idempotent_coeffs(sign, 1)
    assert p == {0: Fraction(1, 2), 1: Fraction(-1, 2)}
    assert convolve(p, p, Z2) == p


def s3_characters():
    one = trivial_character(S3)
    sign = QCentralFunction(S3, [1 if S3.order(g) != 2 else -1 for g in S3.elements()])
    std = QCentralFunction(S3, [2 if g == 0 else (0 if S3.order(g) == 2 else -1)
                                for g in S3.elements()])
    return one, sign, std


def test_idempotents_s3_idempotent_and_orthogonal():
    one, sign, std = s3_characters()
    ps = [idempotent_coeffs(one, 1), idempotent_coeffs(sign, 1),
          idempotent_coeffs(std, 2)]
    for p in ps:
        assert convolve(p, p, S3) == p
    for i in range(3):
        for j in range(3):
            if i != j:
                prod = convolve(ps[i], ps[j], S3)
                assert all(v == 0 for v in prod.values())


def test_idempotent_zero_norm():
    zero = QCentralFunction.constant(S3, 0)
    with pytest.raises(ZeroNorm):
        idempotent_coeffs(zero, 1)


def test_solve_exact_singular():
    with pytest.raises(SingularSystem):
        solve_exact([[1, 2], [2, 4]], [1, 1])
