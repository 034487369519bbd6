"""Walkthrough: first-order ring formulas and their definable sets.

Formulas are parsed from a small grammar (E/A quantifiers, & | ~ ->, = !=),
normalized to prenex form, and evaluated by exhaustive enumeration over a
chosen finite field.  The evaluator is the semantic oracle for the whole
engine: everything else is validated against it.
"""

from galstrat import (
    check_definable_bijection,
    eval_formula,
    make_field,
    parse_formula,
    to_prenex,
)

# The nonzero squares, as a formula in one free variable z.
phi = parse_formula("E x (x^2 = z & ~(x = 0))")
print("formula:       ", phi)
print("free variables:", phi.free_vars)

for q in (3, 5, 13):
    k = make_field(q)
    z = eval_formula(phi, {}, k)
    print(f"Z(phi, F_{q}) = {sorted(t[0] for t in z.tuples)}")

# Prenex normal form pulls quantifiers to the front and flattens the matrix
# into a disjunction of conjunctions; the definable set is unchanged.
nested = parse_formula("~(E x (x^3 = z)) -> (E w (w^2 = z) & A u (u = u))")
prenex = to_prenex(nested)
print("\nnested:", nested)
print("prenex:", prenex)
for q in (5, 7):
    k = make_field(q)
    assert eval_formula(nested, {}, k).tuples == eval_formula(prenex, {}, k).tuples
print("prenex transformation preserves every definable set (checked)")

# Definable bijections generate the equivalence on formula classes.  Here
# the classic instance: shifting a square root by 1, over the base with one
# parameter z, checked fiber by fiber.
phi1 = parse_formula("x1^2 = z", base_params=("z",))
phi2 = parse_formula("(x2 + 1)^2 = z", base_params=("z",))
psi = parse_formula("x1 = x2 + 1", base_params=("z",))
for q in (3, 5, 7):
    k = make_field(q)
    verdict = check_definable_bijection(
        psi, phi1, phi2, [k], [{"z": z} for z in range(q)])
    print(f"psi defines a bijection between phi1, phi2 over every z in F_{q}:",
          bool(verdict))
