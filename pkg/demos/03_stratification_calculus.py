"""Walkthrough: the stratification calculus.

A stratification partitions affine space into strata, each with a cover and
a conjugation domain (a conjugation-stable family of cyclic subgroups); a
point belongs to the associated set when its decomposition class lies in
its stratum's domain.  Boolean structure, complements, products, and
inflation all act on the domains alone, and every operation can be checked
against brute-force membership.
"""

from galstrat import (
    ConjDomain,
    CoverSpec,
    GaloisStratification,
    GroupHom,
    boolean_combine,
    complement,
    cyclic_group,
    inflate,
    make_field,
    parse_formula,
    product,
    trivial_group,
)

Z2, Z4, ONE = cyclic_group(2), cyclic_group(4), trivial_group()
F5, F13 = make_field(5), make_field(13)

gm = CoverSpec.kummer(2, "x", "~(x = 0)")
origin = CoverSpec.trivial(parse_formula("x = 0"))

squares = GaloisStratification(("x",), [
    (gm, ConjDomain(Z2, [frozenset({0})])),       # Frobenius trivial: squares
    (origin, ConjDomain.empty(ONE)),
], label="squares")
nonsquares = GaloisStratification(("x",), [
    (gm, ConjDomain(Z2, [frozenset({0, 1})])),    # Frobenius full: nonsquares
    (origin, ConjDomain.empty(ONE)),
], label="nonsquares")

print("Z(squares, F_5)    =", squares.galois_set({}, F5).sorted_tuples())
print("Z(nonsquares, F_5) =", nonsquares.galois_set({}, F5).sorted_tuples())

# Union and intersection act on the domains stratum by stratum.
both = boolean_combine(squares, nonsquares, "or")
neither = boolean_combine(squares, nonsquares, "and")
print("Z(or),  F_5:", both.galois_set({}, F5).sorted_tuples())
print("Z(and), F_5:", neither.galois_set({}, F5).sorted_tuples())

# Complement flips each domain inside its group; the ambient space is the
# disjoint union of a stratification and its complement.
comp = complement(squares)
print("Z(~squares), F_5:", comp.galois_set({}, F5).sorted_tuples())
assert len(squares.galois_set({}, F5)) + len(comp.galois_set({}, F5)) == 5

# Product: domains meet inside a group surjecting onto both factors.
squares_y = GaloisStratification(("y",), [
    (CoverSpec.kummer(2, "y", "~(y = 0)"), ConjDomain(Z2, [frozenset({0})])),
    (CoverSpec.trivial(parse_formula("y = 0")), ConjDomain.empty(ONE)),
])
grid = product(squares, squares_y)
print("Z(squares x squares), F_5:", grid.galois_set({}, F5).sorted_tuples())

# Inflation: replace the degree-2 cover by the dominating degree-4 cover;
# the membership set cannot change.
psi = GroupHom(Z4, Z2, [0, 1, 0, 1])
gm4 = CoverSpec.kummer(4, "x", "~(x = 0)")
inflated = GaloisStratification(("x",), [
    inflate(squares.strata[0], psi, gm4),
    squares.strata[1],
])
print("inflated domain:", inflated.strata[0][1].canonical_list())
assert inflated.galois_set({}, F13).tuples == squares.galois_set({}, F13).tuples
print("inflation preserves the definable set over F_13 (checked)")
