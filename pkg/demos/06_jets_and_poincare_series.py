"""Walkthrough: jet spaces and the three Poincare series.

Substituting truncated power series into the defining equations and reading
off t-coefficients gives the jet equations at each level.  Counting their
solutions gives the coefficients of the first series; projecting deeper
levels down and watching the images stabilize gives the second (with an
empirical linear bound on the stabilization levels); reusing chi on
stratifications of the stable images gives the third.
"""

from galstrat import (
    CountTable,
    MotiveClass,
    count_jets,
    geometric_series_counts,
    igusa_series,
    jet_ideal,
    lefschetz_power,
    make_field,
    parse_poly,
    specialize,
    truncation_image,
)

xy = [parse_poly("x*y")]   # two crossing lines: singular at the origin

ideal1 = jet_ideal(xy, 1)
print("level-1 jet equations for xy = 0:", [str(g) for g in ideal1.gens])

for q in (2, 3, 5):
    k = make_field(q)
    counts = [count_jets(jet_ideal(xy, n), {}, k) for n in range(3)]
    print(f"jet counts over F_{q}: {counts}"
          f"  (closed forms {[2*q-1, q*(3*q-2), q*q*(4*q-3)]})")

# First series, in both modes: exact counts, or the closed form for a
# smooth cellular total space (the affine line has class L, dimension 1).
print("\ncount mode, F_3:   ", igusa_series(xy, 2, ("counts", make_field(3), {})))
smooth = igusa_series([], 2, ("smooth", lefschetz_power(1), 1), x_vars=("x",))
print("smooth mode, A^1:  ", [str(c) for c in smooth])

# Truncation images: a level-1 jet on xy = 0 lifts to an arc iff one of its
# two branches vanishes identically; the image of the level-3 solutions
# already equals that stable set.
k2 = make_field(2)
img = truncation_image(jet_ideal(xy, 3), 1, {}, k2)
print("\nstable level-1 image over F_2 has", len(img), "jets (2q^2 - 1 = 7)")

# Second series with empirical stabilization data: for each n the engine
# projects deeper and deeper levels until two consecutive images agree;
# the levels where that happens are bounded by a least linear function.
for q in (2, 3):
    gs = geometric_series_counts(xy, 2, make_field(q), {}, depth_cap=6)
    print(f"F_{q}: image sizes {gs.coefficients}, stabilization at "
          f"{gs.stabilization}, linear bound ({gs.c}, {gs.e})")

# Third series: chi of a user-supplied stratification of each stable image.
# For xy = 0 the level-0 image is the whole curve: both axes glued at 0.
from galstrat import (
    ConjDomain,
    CoverSpec,
    GaloisStratification,
    QuotientClassData,
    chi_stratification,
    cyclic_group,
    parse_formula,
    trivial_group,
)
from galstrat.jets import arithmetic_series

ONE = trivial_group()
axes = CoverSpec.trivial(parse_formula("x*y = 0", free_vars=("x", "y")))
off = CoverSpec.trivial(parse_formula("~(x*y = 0)", free_vars=("x", "y")))
level0 = GaloisStratification(("x", "y"), [
    (axes, ConjDomain(ONE, [frozenset({0})])),
    (off, ConjDomain.empty(ONE)),
])
data = {0: QuotientClassData(ONE, {frozenset({0}):
        MotiveClass.generator("Axes")})}
series = arithmetic_series([(level0, data)])
print("\narithmetic series coefficient 0:", series[0])
table = CountTable({"Axes": {3: 5}})   # 2q - 1 points at q = 3
assert specialize(series[0], 3, table) == 5
print("matches the brute-force count over F_3 (checked)")
