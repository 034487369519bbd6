"""Walkthrough: eliminating a quantifier as a conjugation-domain transform.

The engine never computes the geometry (normalizations, Galois closures);
the fixture supplies the group-theoretic data of the projection step, and
the transform produces the quantifier-free stratification.  A brute-force
sweep then certifies that the output set is exactly the projection.

Two shapes of step exist: the finite-etale case (stratum maps onto its
image with finite fibers; domains are lifted to a dominating cover of the
base and closed under conjugation) and the fiber-dimension-one case (the
constants of the cover descend; domains map forward along a surjection).
"""

from galstrat import (
    Case1Datum,
    Case2Datum,
    ConjDomain,
    CoverSpec,
    EliminationEntry,
    EliminationPlan,
    GaloisFormula,
    GaloisStratification,
    GroupHom,
    cyclic_group,
    eliminate_existential,
    make_field,
    parse_formula,
    trivial_group,
)

Z2, ONE = cyclic_group(2), trivial_group()
sweep = [(make_field(q), {}) for q in (5, 13, 29)]

# --- finite-etale step: exists a with b = a^2, a != 0 ------------------------
curve = CoverSpec.trivial(parse_formula("b = a^2 & ~(a = 0)", free_vars=("b", "a")))
rest = CoverSpec.trivial(parse_formula("~(b = a^2 & ~(a = 0))", free_vars=("b", "a")))
strat = GaloisStratification(("b", "a"), [
    (curve, ConjDomain(ONE, [frozenset({0})])),
    (rest, ConjDomain.empty(ONE)),
])
gf = GaloisFormula(("E",), strat)   # the last coordinate (a) is quantified

d_b = CoverSpec.kummer(2, "b", "~(b = 0)")   # the dominating cover of the image
b0 = CoverSpec.trivial(parse_formula("b = 0"))
plan = EliminationPlan([d_b, b0], [EliminationEntry(
    0,
    Case1Datum(proj=GroupHom(ONE, ONE, [0]),    # cover group over the stratum
               emb=GroupHom(ONE, Z2, [0]),      # sits inside the base cover group
               base_cover=d_b),
    0)])
out = eliminate_existential(gf, plan, sweep=sweep)  # raises if semantics break
print("exists a (b = a^2, a != 0)  eliminates to:")
for cover, con in out.strat.strata:
    print(f"  stratum {cover.label:18s} domain {con.canonical_list()}")
k5 = make_field(5)
print("Z over F_5:", out.strat.galois_set({}, k5).sorted_tuples(), "(the squares)")

# --- fiber-dimension-one step: exists x, x a nonsquare ------------------------
gm = CoverSpec.kummer(2, "x", "~(x = 0)")
origin = CoverSpec.trivial(parse_formula("x = 0"))
sentence_in = GaloisStratification(("x",), [
    (gm, ConjDomain(Z2, [frozenset({0, 1})])),
    (origin, ConjDomain.empty(ONE)),
])
point = CoverSpec.trivial(parse_formula("0 = 0"))
sentence_plan = EliminationPlan([point], [EliminationEntry(
    0, Case2Datum(res=GroupHom(Z2, ONE, [0, 0]), base_cover=point), 0)])
sentence_out = eliminate_existential(GaloisFormula(("E",), sentence_in),
                                     sentence_plan, sweep=sweep)
truth = sentence_out.strat.galois_set({}, k5).is_true_sentence()
print("\nexists x nonzero nonsquare:", truth, "over F_5 (and every odd q swept)")

# --- universal quantifier: complement, eliminate, complement -------------------
# every x is zero or a square?  False over any odd field.
univ_in = GaloisStratification(("x",), [
    (gm, ConjDomain(Z2, [frozenset({0})])),
    (origin, ConjDomain(ONE, [frozenset({0})])),
])
univ_plan = EliminationPlan([point], [
    EliminationEntry(0, Case2Datum(res=GroupHom(Z2, ONE, [0, 0]), base_cover=point), 0),
    EliminationEntry(1, Case2Datum(res=GroupHom(ONE, ONE, [0]), base_cover=point), 0),
])
univ_out = eliminate_existential(GaloisFormula(("A",), univ_in), univ_plan, sweep=sweep)
print("forall x (x = 0 or x square):",
      univ_out.strat.galois_set({}, k5).is_true_sentence(), "over F_5")
