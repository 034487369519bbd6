"""First-order ring formulas over a parametrized affine base, evaluated by
exhaustive enumeration over small finite fields.

Grammar (whitespace-insensitive):

    formula := or ('->' formula)?
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '~' unary | 'E' ident unary | 'A' ident unary
             | '(' formula ')' | poly ('=' | '!=') poly

Polynomial terms follow the polynomial text syntax.  Quantifiers range over
the whole field; there is no symbolic quantifier elimination here - this
module is the semantic oracle that everything else is validated against.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import (
    BudgetExceeded,
    FormulaSyntaxError,
    UnboundVariableCollision,
    VariableMismatch,
)
from .fields import FiniteField
from .polynomials import Poly, _Tokens, _parse_sum

DEFAULT_BUDGET = 24.0


# -- AST ---------------------------------------------------------------------

class Node:
    __slots__ = ()


class Eq(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left, self.right = left, right


class Neq(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left, self.right = left, right


class And(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left, self.right = left, right


class Or(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left, self.right = left, right


class Not(Node):
    __slots__ = ("sub",)

    def __init__(self, sub):
        self.sub = sub


class Implies(Node):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left, self.right = left, right


class Exists(Node):
    __slots__ = ("var", "sub")

    def __init__(self, var, sub):
        self.var, self.sub = var, sub


class Forall(Node):
    __slots__ = ("var", "sub")

    def __init__(self, var, sub):
        self.var, self.sub = var, sub


def _free_vars_node(node):
    """Free variables of a subformula, in first-occurrence order."""
    if isinstance(node, (Eq, Neq)):
        out = []
        for poly in (node.left, node.right):
            used = poly.used_variables()
            for v in poly.variables:
                if v in used and v not in out:
                    out.append(v)
        return out
    if isinstance(node, (And, Or, Implies)):
        out = _free_vars_node(node.left)
        for v in _free_vars_node(node.right):
            if v not in out:
                out.append(v)
        return out
    if isinstance(node, Not):
        return _free_vars_node(node.sub)
    if isinstance(node, (Exists, Forall)):
        return [v for v in _free_vars_node(node.sub) if v != node.var]
    raise TypeError(node)


def _bound_vars(node):
    if isinstance(node, (Exists, Forall)):
        return {node.var} | _bound_vars(node.sub)
    if isinstance(node, (And, Or, Implies)):
        return _bound_vars(node.left) | _bound_vars(node.right)
    if isinstance(node, Not):
        return _bound_vars(node.sub)
    return set()


class Formula:
    """A formula together with its base parameters and ordered free variables."""

    def __init__(self, body, base_params=(), free_vars=None):
        self.base_params = tuple(base_params)
        self.body = body
        bound = _bound_vars(body)
        if bound & set(self.base_params):
            raise UnboundVariableCollision(
                f"quantifier binds base parameter(s) {sorted(bound & set(self.base_params))}")
        derived = tuple(v for v in _free_vars_node(body)
                        if v not in self.base_params)
        if free_vars is None:
            self.free_vars = derived
        else:
            free_vars = tuple(free_vars)
            if set(derived) - set(free_vars):
                raise VariableMismatch(
                    f"free occurrence of {sorted(set(derived) - set(free_vars))} not declared")
            self.free_vars = free_vars

    def __str__(self):
        return _print_node(self.body)

    def __repr__(self):
        return f"Formula({self})"

    def is_sentence(self):
        return not self.free_vars

    def quantifier_depth(self):
        def depth(node):
            if isinstance(node, (Exists, Forall)):
                return 1 + depth(node.sub)
            if isinstance(node, (And, Or, Implies)):
                return max(depth(node.left), depth(node.right))
            if isinstance(node, Not):
                return depth(node.sub)
            return 0
        return depth(self.body)


def _print_poly_operand(poly):
    return str(poly)


def _print_node(node):
    if isinstance(node, Eq):
        return f"{node.left} = {node.right}"
    if isinstance(node, Neq):
        return f"{node.left} != {node.right}"
    if isinstance(node, And):
        return f"({_print_node(node.left)} & {_print_node(node.right)})"
    if isinstance(node, Or):
        return f"({_print_node(node.left)} | {_print_node(node.right)})"
    if isinstance(node, Implies):
        return f"({_print_node(node.left)} -> {_print_node(node.right)})"
    if isinstance(node, Not):
        return f"~({_print_node(node.sub)})"
    if isinstance(node, Exists):
        return f"E {node.var} ({_print_node(node.sub)})"
    if isinstance(node, Forall):
        return f"A {node.var} ({_print_node(node.sub)})"
    raise TypeError(node)


# -- parsing -------------------------------------------------------------------

_RESERVED = {"E", "A"}


def parse_formula(text: str, base_params=(), free_vars=None) -> Formula:
    toks = _Tokens(text)
    body = _parse_formula(toks)
    tok, pos = toks.peek()
    if tok is not None:
        raise FormulaSyntaxError(f"unexpected token {tok!r}", pos)
    if _bound_vars(body) & set(base_params):
        raise UnboundVariableCollision(
            f"quantifier binds base parameter(s) {sorted(_bound_vars(body) & set(base_params))}")
    body = _rename_duplicate_binders(body, set(_free_vars_node(body)) | set(base_params))
    return Formula(body, base_params=base_params, free_vars=free_vars)


def _parse_formula(toks):
    left = _parse_or(toks)
    tok, _ = toks.peek()
    if tok == "-":
        # lookahead for '->'
        save = toks.pos
        toks.next()
        tok2, _ = toks.peek()
        if tok2 == ">":
            toks.next()
            return Implies(left, _parse_formula(toks))
        toks.pos = save
    return left


def _parse_or(toks):
    left = _parse_and(toks)
    while True:
        tok, _ = toks.peek()
        if tok == "|":
            toks.next()
            left = Or(left, _parse_and(toks))
        else:
            return left


def _parse_and(toks):
    left = _parse_unary(toks)
    while True:
        tok, _ = toks.peek()
        if tok == "&":
            toks.next()
            left = And(left, _parse_unary(toks))
        else:
            return left


def _parse_unary(toks):
    tok, pos = toks.peek()
    if tok is None:
        raise FormulaSyntaxError("unexpected end of formula", pos)
    if tok == "~":
        toks.next()
        return Not(_parse_unary(toks))
    if tok in _RESERVED:
        toks.next()
        var, vpos = toks.next()
        if var is None or not (var[0].isalpha() or var[0] == "_") or var in _RESERVED:
            raise FormulaSyntaxError("expected a variable name after quantifier", vpos)
        sub = _parse_unary(toks)
        return Exists(var, sub) if tok == "E" else Forall(var, sub)
    if tok == "(":
        # may be a parenthesized formula or a parenthesized polynomial term
        save = toks.pos
        toks.next()
        try:
            inner = _parse_formula(toks)
            tok2, pos2 = toks.next()
            if tok2 != ")":
                raise FormulaSyntaxError("expected ')'", pos2)
            return inner
        except FormulaSyntaxError:
            toks.pos = save
            return _parse_atom(toks)
    return _parse_atom(toks)


def _parse_atom(toks):
    left = _parse_sum(toks)
    tok, pos = toks.next()
    if tok == "=":
        return Eq(left, _parse_sum(toks))
    if tok == "!":
        tok2, pos2 = toks.next()
        if tok2 != "=":
            raise FormulaSyntaxError("expected '=' after '!'", pos2)
        return Neq(left, _parse_sum(toks))
    raise FormulaSyntaxError("expected '=' or '!=' after polynomial", pos)


def _rename_duplicate_binders(node, in_scope, counter=None):
    if counter is None:
        counter = {}

    def fresh(name):
        counter[name] = counter.get(name, 0) + 1
        return f"{name}_{counter[name]}"

    def rec(node, scope, subst):
        if isinstance(node, (Eq, Neq)):
            if subst:
                cls = type(node)
                return cls(node.left.substitute({k: Poly.variable(v) for k, v in subst.items()
                                                 if k in node.left.variables}),
                           node.right.substitute({k: Poly.variable(v) for k, v in subst.items()
                                                  if k in node.right.variables}))
            return node
        if isinstance(node, (And, Or, Implies)):
            cls = type(node)
            return cls(rec(node.left, scope, subst), rec(node.right, scope, subst))
        if isinstance(node, Not):
            return Not(rec(node.sub, scope, subst))
        if isinstance(node, (Exists, Forall)):
            cls = type(node)
            var = node.var
            if var in scope:
                new = fresh(var)
                while new in scope:
                    new = fresh(var)
                sub2 = dict(subst)
                sub2[var] = new
                return cls(new, rec(node.sub, scope | {new}, sub2))
            sub2 = {k: v for k, v in subst.items() if k != var}
            return cls(var, rec(node.sub, scope | {var}, sub2))
        raise TypeError(node)

    return rec(node, set(in_scope), {})


# -- prenex normal form ----------------------------------------------------------

def to_prenex(f: Formula) -> Formula:
    """Q1 x1 ... Qm xm [matrix in disjunctive normal form]."""
    body = _strip_implies(f.body)
    body = _nnf(body)
    counter = {}
    prefix, matrix = _pull_quantifiers(body, counter,
                                       set(f.free_vars) | set(f.base_params))
    matrix = _to_dnf(matrix)
    for kind, var in reversed(prefix):
        matrix = kind(var, matrix)
    return Formula(matrix, base_params=f.base_params, free_vars=f.free_vars)


def _strip_implies(node):
    if isinstance(node, Implies):
        return Or(Not(_strip_implies(node.left)), _strip_implies(node.right))
    if isinstance(node, (And, Or)):
        return type(node)(_strip_implies(node.left), _strip_implies(node.right))
    if isinstance(node, Not):
        return Not(_strip_implies(node.sub))
    if isinstance(node, (Exists, Forall)):
        return type(node)(node.var, _strip_implies(node.sub))
    return node


def _nnf(node, negate=False):
    if isinstance(node, Eq):
        return Neq(node.left, node.right) if negate else node
    if isinstance(node, Neq):
        return Eq(node.left, node.right) if negate else node
    if isinstance(node, Not):
        return _nnf(node.sub, not negate)
    if isinstance(node, And):
        cls = Or if negate else And
        return cls(_nnf(node.left, negate), _nnf(node.right, negate))
    if isinstance(node, Or):
        cls = And if negate else Or
        return cls(_nnf(node.left, negate), _nnf(node.right, negate))
    if isinstance(node, Exists):
        cls = Forall if negate else Exists
        return cls(node.var, _nnf(node.sub, negate))
    if isinstance(node, Forall):
        cls = Exists if negate else Forall
        return cls(node.var, _nnf(node.sub, negate))
    raise TypeError(node)


def _rename_in(node, old, new):
    if isinstance(node, (Eq, Neq)):
        cls = type(node)
        sub = {old: Poly.variable(new)}
        left = node.left.substitute(sub) if old in node.left.variables else node.left
        right = node.right.substitute(sub) if old in node.right.variables else node.right
        return cls(left, right)
    if isinstance(node, (And, Or)):
        return type(node)(_rename_in(node.left, old, new), _rename_in(node.right, old, new))
    if isinstance(node, Not):
        return Not(_rename_in(node.sub, old, new))
    if isinstance(node, (Exists, Forall)):
        if node.var == old:
            return node
        return type(node)(node.var, _rename_in(node.sub, old, new))
    raise TypeError(node)


def _pull_quantifiers(node, counter, taken):
    if isinstance(node, (Eq, Neq)):
        return [], node
    if isinstance(node, (Exists, Forall)):
        var = node.var
        if var in taken:
            counter[var] = counter.get(var, 0) + 1
            new = f"{var}_{counter[var]}"
            while new in taken:
                counter[var] += 1
                new = f"{var}_{counter[var]}"
            sub = _rename_in(node.sub, var, new)
            var = new
        else:
            sub = node.sub
        prefix, matrix = _pull_quantifiers(sub, counter, taken | {var})
        kind = Exists if isinstance(node, Exists) else Forall
        return [(kind, var)] + prefix, matrix
    if isinstance(node, (And, Or)):
        pl, ml = _pull_quantifiers(node.left, counter, taken)
        taken2 = taken | {v for _, v in pl}
        pr, mr = _pull_quantifiers(node.right, counter, taken2)
        return pl + pr, type(node)(ml, mr)
    if isinstance(node, Not):
        # NNF input: Not only wraps atoms, which _nnf already removed
        raise TypeError("negation above atom level after NNF")
    raise TypeError(node)


def _to_dnf(node):
    """Distribute And over Or on a quantifier-free NNF matrix."""
    if isinstance(node, (Eq, Neq)):
        return node
    if isinstance(node, Or):
        return Or(_to_dnf(node.left), _to_dnf(node.right))
    if isinstance(node, And):
        left = _to_dnf(node.left)
        right = _to_dnf(node.right)
        if isinstance(left, Or):
            return Or(_to_dnf(And(left.left, right)), _to_dnf(And(left.right, right)))
        if isinstance(right, Or):
            return Or(_to_dnf(And(left, right.left)), _to_dnf(And(left, right.right)))
        return And(left, right)
    raise TypeError(node)


# -- evaluation --------------------------------------------------------------------

class DefinableSet:
    """Z(phi, x, F_q): the tuples of field elements satisfying phi."""

    def __init__(self, field, s_point, free_vars, tuples):
        self.field = field
        self.s_point = dict(s_point)
        self.free_vars = tuple(free_vars)
        self.tuples = frozenset(tuple(t) for t in tuples)
        for t in self.tuples:
            if len(t) != len(self.free_vars):
                raise VariableMismatch("tuple arity mismatch")

    def __len__(self):
        return len(self.tuples)

    def __contains__(self, t):
        return tuple(t) in self.tuples

    def __eq__(self, other):
        return (isinstance(other, DefinableSet)
                and self.free_vars == other.free_vars
                and self.tuples == other.tuples)

    def __hash__(self):
        return hash((self.free_vars, self.tuples))

    def sorted_tuples(self):
        return sorted(self.tuples)

    def is_true_sentence(self):
        return self.free_vars == () and len(self.tuples) == 1

    def __repr__(self):
        return f"DefinableSet({self.free_vars}, {len(self.tuples)} tuples over {self.field})"


def _holds(node, env, k):
    if isinstance(node, Eq):
        return node.left.eval_field(env, k) == node.right.eval_field(env, k)
    if isinstance(node, Neq):
        return node.left.eval_field(env, k) != node.right.eval_field(env, k)
    if isinstance(node, And):
        return _holds(node.left, env, k) and _holds(node.right, env, k)
    if isinstance(node, Or):
        return _holds(node.left, env, k) or _holds(node.right, env, k)
    if isinstance(node, Implies):
        return (not _holds(node.left, env, k)) or _holds(node.right, env, k)
    if isinstance(node, Not):
        return not _holds(node.sub, env, k)
    if isinstance(node, Exists):
        saved = env.get(node.var, _MISSING)
        result = False
        for v in k.elements():
            env[node.var] = v
            if _holds(node.sub, env, k):
                result = True
                break
        _restore(env, node.var, saved)
        return result
    if isinstance(node, Forall):
        saved = env.get(node.var, _MISSING)
        result = True
        for v in k.elements():
            env[node.var] = v
            if not _holds(node.sub, env, k):
                result = False
                break
        _restore(env, node.var, saved)
        return result
    raise TypeError(node)


_MISSING = object()


def _restore(env, var, saved):
    if saved is _MISSING:
        env.pop(var, None)
    else:
        env[var] = saved


def _embedded_s_point(s_point, k):
    return {name: (val if isinstance(val, int) and 0 <= val < k.q else k.embed_fraction(Fraction(val)))
            for name, val in s_point.items()}


def holds_at(f: Formula, s_point, point, k: FiniteField) -> bool:
    """Truth of f at one free-variable tuple (no enumeration of free vars)."""
    env = _embedded_s_point(s_point, k)
    env.update(dict(zip(f.free_vars, point)))
    return _holds(f.body, env, k)


def fresh_conjunction(f: Formula, nonzero_poly) -> Formula:
    """f AND (poly != 0), keeping base parameters and free-variable order."""
    from .polynomials import Poly
    body = And(f.body, Neq(nonzero_poly, Poly.constant(0)))
    extra = [v for v in nonzero_poly.used_variables()
             if v not in f.free_vars and v not in f.base_params]
    return Formula(body, base_params=f.base_params,
                   free_vars=tuple(f.free_vars) + tuple(sorted(extra)))


def conjunction(f: Formula, g: Formula) -> Formula:
    """f AND g over merged free variables (f's order first)."""
    merged = tuple(f.free_vars) + tuple(v for v in g.free_vars if v not in f.free_vars)
    return Formula(And(f.body, g.body), base_params=f.base_params, free_vars=merged)


def negation(f: Formula) -> Formula:
    return Formula(Not(f.body), base_params=f.base_params, free_vars=f.free_vars)


def substitute_formula(f: Formula, mapping) -> Formula:
    """Substitute base parameters (or free variables) by rational constants
    or polynomials; substituted names leave the parameter lists."""
    def rec(node):
        if isinstance(node, (Eq, Neq)):
            cls = type(node)
            left = node.left.substitute(mapping) if set(node.left.variables) & set(mapping) else node.left
            right = node.right.substitute(mapping) if set(node.right.variables) & set(mapping) else node.right
            return cls(left, right)
        if isinstance(node, (And, Or, Implies)):
            return type(node)(rec(node.left), rec(node.right))
        if isinstance(node, Not):
            return Not(rec(node.sub))
        if isinstance(node, (Exists, Forall)):
            if node.var in mapping:
                raise VariableMismatch(f"cannot substitute bound variable {node.var}")
            return type(node)(node.var, rec(node.sub))
        raise TypeError(node)

    base = tuple(p for p in f.base_params if p not in mapping)
    free = tuple(v for v in f.free_vars if v not in mapping)
    return Formula(rec(f.body), base_params=base, free_vars=free)


def eval_formula(f: Formula, s_point, k: FiniteField,
                 budget: float = DEFAULT_BUDGET) -> DefinableSet:
    for name in f.base_params:
        if name not in s_point:
            raise VariableMismatch(f"s_point missing base parameter {name!r}")
    m = len(f.free_vars)
    bits = (m + f.quantifier_depth()) * math.log2(k.q)
    if bits > budget:
        raise BudgetExceeded(f"{bits:.1f} bits exceeds budget {budget}")
    base_env = _embedded_s_point(s_point, k)
    tuples = []
    for point in itertools.product(range(k.q), repeat=m):
        env = dict(base_env)
        env.update(zip(f.free_vars, point))
        if _holds(f.body, env, k):
            tuples.append(point)
    return DefinableSet(k, s_point, f.free_vars, tuples)


# -- definable bijections -------------------------------------------------------------

class BijectionVerdict:
    def __init__(self, passed, witness=None, fibers=None):
        self.passed = passed
        self.witness = witness
        self.fibers = fibers or []

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return "Pass" if self.passed else f"Fail(witness={self.witness})"


def _check_graph(zpsi, z1, z2, n1):
    """Does zpsi cut out the graph of a bijection z1 -> z2?

    Following the intended reading of the defining relation, only the pairs
    with both halves in the respective definable sets count: the relation
    checked is Z(psi) restricted to Z(phi1) x Z(phi2).  Returns an offending
    tuple, or None on success.
    """
    seen_left = {}
    seen_right = {}
    for t in sorted(zpsi.tuples):
        a, b = t[:n1], t[n1:]
        if a not in z1.tuples or b not in z2.tuples:
            continue
        if a in seen_left or b in seen_right:
            return t
        seen_left[a] = b
        seen_right[b] = a
    if len(seen_left) != len(z1) or len(seen_right) != len(z2):
        missing = sorted(set(z1.tuples) - set(seen_left))
        if missing:
            return missing[0] + ("unmatched-left",)
        return sorted(set(z2.tuples) - set(seen_right))[0] + ("unmatched-right",)
    return None


def bijection_fiber_report(psi: Formula, phi1: Formula, phi2: Formula,
                           fields, s_points, budget: float = DEFAULT_BUDGET):
    """Per-(field, s_point) verdicts; the generic-vs-closed-fiber harness."""
    if set(psi.free_vars) != set(phi1.free_vars) | set(phi2.free_vars) \
            or set(phi1.free_vars) & set(phi2.free_vars):
        raise VariableMismatch(
            "free vars of psi must be the disjoint union of those of phi1 and phi2")
    order = tuple(phi1.free_vars) + tuple(phi2.free_vars)
    psi_ordered = Formula(psi.body, base_params=psi.base_params, free_vars=order)
    report = []
    for k in fields:
        for s_point in s_points:
            zpsi = eval_formula(psi_ordered, s_point, k, budget)
            z1 = eval_formula(phi1, s_point, k, budget)
            z2 = eval_formula(phi2, s_point, k, budget)
            bad = _check_graph(zpsi, z1, z2, len(phi1.free_vars))
            report.append({
                "field": k,
                "s_point": dict(s_point),
                "passed": bad is None,
                "witness": bad,
                "sizes": (len(z1), len(z2), len(zpsi)),
            })
    return report


def check_definable_bijection(psi, phi1, phi2, fields, s_points,
                              budget: float = DEFAULT_BUDGET) -> BijectionVerdict:
    report = bijection_fiber_report(psi, phi1, phi2, fields, s_points, budget)
    for entry in report:
        if not entry["passed"]:
            return BijectionVerdict(False,
                                    witness=(entry["field"], entry["s_point"], entry["witness"]),
                                    fibers=report)
    return BijectionVerdict(True, fibers=report)
