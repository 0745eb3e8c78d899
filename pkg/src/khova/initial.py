"""Rank-r initial forms and ideals, Groebner-region and cone tests,
lineality space, and rank-1 weight representatives.

Initial forms use the MIN convention: in_M(f) keeps the terms whose
weight vector M*alpha is lexicographically smallest.
"""

from __future__ import annotations

from fractions import Fraction

from .groebner import (DEFAULT_CAPS, Ideal, buchberger, dehomogenize,
                       homogenize, ideal_equal,
                       lineality_basis_from_generators, order_admissible_for)
from .linalg import solve_strict_system
from .orders import Composite, DEGREVLEX, leading_exponent, weight_of_monomial
from .poly import Polynomial


class PreconditionError(ValueError):
    pass


def _as_matrix(matrix, n):
    rows = [tuple(Fraction(x) for x in row) for row in matrix]
    if not rows:
        raise ValueError("empty weight matrix")
    if any(len(row) != n for row in rows):
        raise ValueError(f"weight matrix needs {n} columns")
    return rows


def initial_form(f, matrix):
    """Sum of the terms of f whose weight M*alpha is lexicographically minimal."""
    if f.is_zero:
        raise ValueError("initial form of the zero polynomial is undefined")
    rows = _as_matrix(matrix, len(f.variables))
    best = None
    chosen = {}
    for e, c in f.terms.items():
        w = weight_of_monomial(rows, e)
        if best is None or w < best:
            best = w
            chosen = {e: c}
        elif w == best:
            chosen[e] = c
    return Polynomial(f.variables, chosen)


def _initial_via_composite(ideal, matrix, caps):
    order = Composite(matrix, DEGREVLEX)
    ctx = buchberger(ideal, order, caps)
    return Ideal(ideal.variables, [initial_form(g, matrix) for g in ctx.basis])


def initial_ideal(ideal, matrix, caps=DEFAULT_CAPS):
    """The initial ideal in_M(I).

    Computed from the reduced Groebner basis under the composite order >_M
    when that order is admissible; otherwise through the homogenization
    identity in_{(0,M)}(I_h) restricted to x0 = 1.
    """
    if ideal.is_zero:
        return Ideal(ideal.variables, [])
    rows = _as_matrix(matrix, len(ideal.variables))
    order = Composite(rows, DEGREVLEX)
    if order_admissible_for(ideal, order):
        return _initial_via_composite(ideal, rows, caps)
    hom = homogenize(ideal, caps)
    lifted = [(Fraction(0),) + row for row in rows]
    init_h = _initial_via_composite(hom, lifted, caps)
    return dehomogenize(init_h)


def iterated_initial_ideal(ideal, rows, caps=DEFAULT_CAPS):
    """Apply rank-1 initial ideals row by row; oracle for initial_ideal."""
    current = ideal
    for row in rows:
        current = initial_ideal(current, [row], caps)
    return current


def groebner_region_test(matrix, ideal, order, caps=DEFAULT_CAPS):
    """True iff the pivot of every reduced-basis element survives passing
    to its M-initial form, i.e. M lies in the cone C^r_>(I)."""
    if ideal.is_zero:
        return True
    rows = _as_matrix(matrix, len(ideal.variables))
    ctx = buchberger(ideal, order, caps)
    for g in ctx.basis:
        if leading_exponent(initial_form(g, rows), order) != \
                leading_exponent(g, order):
            return False
    return True


class ConeDescription:
    """Linear equalities and strict inequalities on weight vectors in Q^n."""

    __slots__ = ("equalities", "strict_inequalities")

    def __init__(self, equalities, strict_inequalities):
        self.equalities = tuple(tuple(Fraction(x) for x in f)
                                for f in equalities)
        self.strict_inequalities = tuple(tuple(Fraction(x) for x in f)
                                         for f in strict_inequalities)

    def satisfied_by(self, u):
        u = tuple(Fraction(x) for x in u)
        for form in self.equalities:
            if sum(a * b for a, b in zip(form, u)) != 0:
                return False
        for form in self.strict_inequalities:
            if sum(a * b for a, b in zip(form, u)) <= 0:
                return False
        return True

    def satisfied_by_matrix(self, matrix):
        """Equalities vanish on every row; strict forms are lex-positive."""
        rows = [tuple(Fraction(x) for x in row) for row in matrix]
        zero = (Fraction(0),) * len(rows)
        for form in self.equalities:
            if tuple(sum(a * b for a, b in zip(form, row))
                     for row in rows) != zero:
                return False
        for form in self.strict_inequalities:
            vec = tuple(sum(a * b for a, b in zip(form, row)) for row in rows)
            if not vec > zero:
                return False
        return True

    def __repr__(self):
        return (f"ConeDescription(eq={len(self.equalities)}, "
                f"strict={len(self.strict_inequalities)})")


def equivalence_cone(matrix, ideal, order, caps=DEFAULT_CAPS):
    """Difference forms cutting out the weights with the same initial forms
    on the reduced basis: ties among M-minimal monomials become equalities,
    non-minimal monomials give strict inequalities."""
    if ideal.is_zero:
        return ConeDescription([], [])
    rows = _as_matrix(matrix, len(ideal.variables))
    if not groebner_region_test(rows, ideal, order, caps):
        raise PreconditionError("weight matrix is outside the Groebner cone "
                                "of the given order")
    ctx = buchberger(ideal, order, caps)
    n = len(ideal.variables)
    eqs, strict = set(), set()
    for g in ctx.basis:
        init = initial_form(g, rows)
        minimal = sorted(init.terms, key=DEGREVLEX.key)
        base = minimal[0]
        for other in minimal[1:]:
            eqs.add(tuple(other[i] - base[i] for i in range(n)))
        for e in g.terms:
            if e not in init.terms:
                strict.add(tuple(e[i] - base[i] for i in range(n)))
    return ConeDescription(sorted(eqs), sorted(strict))


def lineality_space(ideal, caps=DEFAULT_CAPS):
    """Basis of the space of weights for which the ideal is homogeneous."""
    if ideal.is_zero:
        n = len(ideal.variables)
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    ctx = buchberger(ideal, DEGREVLEX, caps)
    canonical = Ideal(ideal.variables, ctx.basis)
    return lineality_basis_from_generators(canonical)


def rank1_representative(ideal, matrix, caps=DEFAULT_CAPS):
    """A single weight vector u = v^T M, v >= 0, with in_u(I) = in_M(I).

    v solves the strict system that keeps every non-minimal monomial of the
    reduced-basis elements strictly above the minimal weight.  The result
    is verified by an initial-ideal comparison before being returned.
    """
    n = len(ideal.variables)
    rows = _as_matrix(matrix, n)
    r = len(rows)
    if ideal.is_zero:
        return tuple(rows[0])
    order = Composite(rows, DEGREVLEX)
    if order_admissible_for(ideal, order):
        ctx = buchberger(ideal, order, caps)
        weight_rows = rows
        basis = ctx.basis
    else:
        hom = homogenize(ideal, caps)
        lifted = [(Fraction(0),) + row for row in rows]
        ctx = buchberger(hom, Composite(lifted, DEGREVLEX), caps)
        weight_rows = lifted
        basis = ctx.basis
    constraints = []
    for i in range(r):
        unit = tuple(Fraction(1) if k == i else Fraction(0) for k in range(r))
        constraints.append((unit, False))
    for g in basis:
        weights = {weight_of_monomial(weight_rows, e) for e in g.terms}
        beta = min(weights)
        for w in weights:
            if w != beta:
                diff = tuple(w[k] - beta[k] for k in range(r))
                constraints.append((diff, True))
    v = solve_strict_system(constraints, r)
    if v is None:
        raise RuntimeError("weight approximation system unexpectedly infeasible")
    u = tuple(sum(v[k] * rows[k][j] for k in range(r)) for j in range(n))
    if not ideal_equal(initial_ideal(ideal, [u], caps),
                       initial_ideal(ideal, rows, caps), caps):
        raise RuntimeError("rank-1 representative failed verification")
    return u
