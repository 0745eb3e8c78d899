"""Tropical membership, prime-cone verification, and the contraction map.

A weight lies in the tropical variety when its initial ideal contains no
monomial; monomial-freeness is decided exactly by saturating at the
product of the variables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import (DEFAULT_CAPS, Ideal, buchberger, ideal_equal,
                       is_unit_ideal, normal_form, order_admissible_for,
                       saturate)
from .initial import PreconditionError, groebner_region_test, initial_ideal
from .orders import Composite, DEGREVLEX, OrderNotAdmissible, weight_of_monomial
from .poly import Polynomial
from .primality import is_prime_desk


def contains_monomial(ideal, caps=DEFAULT_CAPS):
    """True iff some monomial lies in the ideal."""
    if ideal.is_zero:
        return False
    prod = Polynomial.monomial(ideal.variables, (1,) * len(ideal.variables))
    sat = saturate(ideal, prod, caps)
    if sat.is_zero:
        return False
    return is_unit_ideal(buchberger(sat, DEGREVLEX, caps))


def in_tropical_variety(u, ideal, caps=DEFAULT_CAPS):
    return not contains_monomial(initial_ideal(ideal, [u], caps), caps)


def in_tropical_variety_rank_r(matrix, ideal, caps=DEFAULT_CAPS):
    return not contains_monomial(initial_ideal(ideal, matrix, caps), caps)


@dataclass
class PrimeConeReport:
    sample_points: list
    common_initial_ideal: object  # Ideal or None when samples disagree
    monomial_free: bool
    binomial: bool
    primality: str  # "Prime", "NotPrime", "Unknown"
    certificate: dict = field(default_factory=dict)
    meets_groebner_region: bool = True
    notes: str = ""


def _sample_points(rays, lineality, samples, seed):
    rng = random.Random(seed)
    n = len(rays[0])
    points = [tuple(sum(Fraction(r[j]) for r in rays) for j in range(n))]
    while len(points) < samples:
        pt = [Fraction(0)] * n
        for r in rays:
            c = rng.randint(1, 5)
            for j in range(n):
                pt[j] += c * Fraction(r[j])
        for l in lineality:
            c = rng.randint(-3, 3)
            for j in range(n):
                pt[j] += c * Fraction(l[j])
        points.append(tuple(pt))
    return points


def verify_prime_cone(rays, lineality, ideal, samples=3, seed=0,
                      caps=DEFAULT_CAPS):
    """Sample the relative interior of the cone spanned by rays (+ lineality),
    check all samples share one initial ideal, and certify its primality."""
    if not rays:
        raise PreconditionError("at least one ray is required")
    points = _sample_points(rays, lineality, max(samples, 1), seed)
    initials = [initial_ideal(ideal, [u], caps) for u in points]
    for other in initials[1:]:
        if not ideal_equal(initials[0], other, caps):
            return PrimeConeReport(
                sample_points=points,
                common_initial_ideal=None,
                monomial_free=False,
                binomial=False,
                primality="Unknown",
                notes="sample initial ideals disagree: not a single "
                      "Groebner-cone interior")
    common = initials[0]
    ctx = buchberger(common, DEGREVLEX, caps)
    binomial = all(len(g.terms) <= 2 for g in ctx.basis)
    free = not contains_monomial(common, caps)
    primality = is_prime_desk(common, caps)
    meets = _meets_groebner_region(points[0], ideal, caps)
    notes = primality.notes
    return PrimeConeReport(
        sample_points=points,
        common_initial_ideal=common,
        monomial_free=free,
        binomial=binomial,
        primality=primality.status,
        certificate=primality.certificate,
        meets_groebner_region=meets,
        notes=notes)


def _meets_groebner_region(u, ideal, caps):
    from .groebner import _homogeneous_positive_grading
    if ideal.is_zero or _homogeneous_positive_grading(ideal) is not None:
        return True
    if all(Fraction(x) <= 0 for x in u):
        return True
    from .orders import LEX
    for order in (DEGREVLEX, LEX):
        if groebner_region_test([u], ideal, order, caps):
            return True
    return False


def contraction(matrix, ideal, caps=DEFAULT_CAPS):
    """The matrix iota(M) whose i-th column is the pushforward value of x_i:
    the minimum weight over the standard-monomial support of its normal
    form under the composite order."""
    rows = [tuple(Fraction(x) for x in row) for row in matrix]
    n = len(ideal.variables)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix width mismatch")
    if ideal.is_zero:
        return [list(row) for row in rows]
    order = Composite(rows, DEGREVLEX)
    if not order_admissible_for(ideal, order):
        raise OrderNotAdmissible(
            "contraction needs nonpositive weight columns or a positively "
            "graded homogeneous ideal")
    ctx = buchberger(ideal, order, caps)
    columns = []
    for i in range(n):
        xi = Polynomial.variable(ideal.variables, ideal.variables[i])
        nf = normal_form(xi, ctx, caps)
        if nf.is_zero:
            raise PreconditionError(
                f"variable {ideal.variables[i]} lies in the ideal; its "
                "pushforward value is undefined")
        columns.append(min(weight_of_monomial(rows, e) for e in nf.terms))
    return [[columns[j][k] for j in range(n)] for k in range(len(rows))]
