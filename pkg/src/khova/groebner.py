"""Buchberger engine: reduced Groebner bases, normal forms, standard
monomials, elimination, saturation, homogenization, ideal equality.

Pair pruning follows Gebauer-Moeller.  Safety caps guard against orders
that are not well-founded for the given ideal; hitting a cap raises
CapExceeded rather than looping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heappop, heappush

from .linalg import strictly_positive_combination, nullspace
from .orders import (Composite, DEGREVLEX, EliminationOrder, MonomialOrder,
                     OrderNotAdmissible, leading_exponent)
from .poly import (Polynomial, VariableMismatch, exponent_divides,
                   exponent_lcm, add_exponents, sub_exponents, total_degree)


class CapExceeded(RuntimeError):
    def __init__(self, kind, limit):
        super().__init__(f"computation cap exceeded: {kind} > {limit}")
        self.kind = kind
        self.limit = limit


@dataclass(frozen=True)
class Caps:
    pairs: int = 2000
    degree: int = 64
    subduction: int = 10000


DEFAULT_CAPS = Caps()


class Ideal:
    """An ideal given by generators; zero generators are dropped."""

    __slots__ = ("variables", "generators")

    def __init__(self, variables, generators):
        self.variables = tuple(variables)
        gens = []
        for g in generators:
            if g.variables != self.variables:
                raise VariableMismatch("generator variable list mismatch")
            if not g.is_zero:
                gens.append(g)
        self.generators = tuple(gens)

    @property
    def is_zero(self):
        return not self.generators

    def __repr__(self):
        return f"Ideal<{', '.join(str(g) for g in self.generators) or '0'}>"


class GroebnerContext:
    """An ideal together with its reduced Groebner basis for one order."""

    __slots__ = ("ideal", "order", "basis", "reduced", "_leads")

    def __init__(self, ideal, order, basis):
        self.ideal = ideal
        self.order = order
        self.basis = tuple(basis)
        self.reduced = True
        self._leads = tuple(leading_exponent(g, order) for g in self.basis)

    @property
    def leading_exponents(self):
        return self._leads

    def __repr__(self):
        return f"GroebnerContext<{len(self.basis)} elements; {self.order}>"


def _homogeneous_positive_grading(ideal):
    """A strictly positive grading vector making the ideal homogeneous, or None."""
    basis = lineality_basis_from_generators(ideal)
    if not basis:
        return None
    return strictly_positive_combination(basis)


def lineality_basis_from_generators(ideal):
    """Solve for u with every generator u-homogeneous (used for admissibility)."""
    n = len(ideal.variables)
    equations = []
    for g in ideal.generators:
        support = sorted(g.terms)
        base = support[0]
        for other in support[1:]:
            equations.append([other[i] - base[i] for i in range(n)])
    if not equations:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return nullspace(equations, n)


def order_admissible_for(ideal, order):
    """Division under `order` is guaranteed to terminate on this ideal."""
    if not isinstance(order, Composite):
        return True
    if order.columns_nonpositive():
        return True
    return _homogeneous_positive_grading(ideal) is not None


def _check_degree(poly, caps):
    if poly.degree() > caps.degree:
        raise CapExceeded("degree", caps.degree)


REDUCTION_GUARD = 10 ** 6


def reduce_by(poly, basis, leads, order, caps=DEFAULT_CAPS):
    """Full normal form of poly modulo basis (tail terms reduced too)."""
    p = poly
    remainder = {}
    guard = 0
    while p:
        guard += 1
        if guard > REDUCTION_GUARD:
            raise CapExceeded("reduction steps", REDUCTION_GUARD)
        e = leading_exponent(p, order)
        c = p.terms[e]
        for g, lead in zip(basis, leads):
            if exponent_divides(lead, e):
                factor = c / g.terms[lead]
                p = p - g.mul_term(sub_exponents(e, lead), factor)
                _check_degree(p, caps)
                break
        else:
            remainder[e] = c
            p = p - Polynomial.monomial(p.variables, e, c)
    return Polynomial(poly.variables, remainder)


def _s_polynomial(f, g, order):
    ef, cf = leading_exponent(f, order), None
    eg = leading_exponent(g, order)
    cf = f.terms[ef]
    cg = g.terms[eg]
    lcm = exponent_lcm(ef, eg)
    return (f.mul_term(sub_exponents(lcm, ef), 1 / cf)
            - g.mul_term(sub_exponents(lcm, eg), 1 / cg))


def _update_pairs(basis_leads, pairs, new_index):
    """Gebauer-Moeller pair update when basis element new_index is appended."""
    t = new_index
    lead_t = basis_leads[t]

    def lcm(i, j):
        return exponent_lcm(basis_leads[i], basis_leads[j])

    kept = set()
    for (i, j) in pairs:
        l = lcm(i, j)
        if (not exponent_divides(lead_t, l)
                or lcm(i, t) == l or lcm(j, t) == l):
            kept.add((i, j))
    new_pairs = {}
    for i in range(t):
        new_pairs.setdefault(lcm(i, t), []).append(i)
    minimal = []
    for l in sorted(new_pairs, key=lambda e: (total_degree(e), e)):
        if all(not exponent_divides(m, l) for m in minimal):
            minimal.append(l)
    result = set(kept)
    for l in minimal:
        members = new_pairs[l]
        if any(add_exponents(basis_leads[i], lead_t) == l for i in members):
            continue  # coprime criterion
        result.add((min(members), t))
    return result


def buchberger(ideal, order, caps=DEFAULT_CAPS):
    """Reduced Groebner basis of the ideal for the given monomial order."""
    if not isinstance(order, MonomialOrder):
        raise TypeError("order must be a MonomialOrder")
    if not order_admissible_for(ideal, order):
        raise OrderNotAdmissible(
            "composite order needs nonpositive weight columns or an ideal "
            "homogeneous for a positive grading")
    basis = []
    leads = []
    pairs = set()
    heap = []
    seed = sorted(ideal.generators,
                  key=lambda g: order.key(leading_exponent(g, order)))
    for g in seed:
        g = _monic(g, order)
        basis.append(g)
        leads.append(leading_exponent(g, order))
        pairs = _update_pairs(leads, pairs, len(basis) - 1)
    for (i, j) in pairs:
        heappush(heap, (order.key(exponent_lcm(leads[i], leads[j])), i, j))
    processed = 0
    while pairs:
        key, i, j = heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        processed += 1
        if processed > caps.pairs:
            raise CapExceeded("pairs", caps.pairs)
        s = _s_polynomial(basis[i], basis[j], order)
        if s.is_zero:
            continue
        _check_degree(s, caps)
        r = reduce_by(s, basis, leads, order, caps)
        if r.is_zero:
            continue
        r = _monic(r, order)
        basis.append(r)
        leads.append(leading_exponent(r, order))
        new_pairs = _update_pairs(leads, pairs, len(basis) - 1)
        for p in new_pairs - pairs:
            heappush(heap, (order.key(
                exponent_lcm(leads[p[0]], leads[p[1]])), p[0], p[1]))
        pairs = new_pairs
    reduced = _interreduce(basis, order, caps)
    return GroebnerContext(ideal, order, reduced)


def _monic(poly, order):
    e, c = leading_exponent(poly, order), None
    c = poly.terms[e]
    return poly if c == 1 else poly.scale(1 / c)


def _interreduce(basis, order, caps):
    """Minimalize then fully reduce: the canonical reduced basis."""
    keyed = sorted(basis, key=lambda g: order.key(leading_exponent(g, order)))
    minimal = []
    for g in keyed:
        lead = leading_exponent(g, order)
        if any(exponent_divides(leading_exponent(h, order), lead)
               for h in minimal):
            continue
        minimal.append(g)
    out = []
    leads = [leading_exponent(g, order) for g in minimal]
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        other_leads = leads[:idx] + leads[idx + 1:]
        r = reduce_by(g, others, other_leads, order, caps)
        if not r.is_zero:
            out.append(_monic(r, order))
    out.sort(key=lambda g: order.key(leading_exponent(g, order)))
    return out


def normal_form(f, ctx, caps=DEFAULT_CAPS):
    """Remainder of f modulo the reduced basis; supported on standard monomials."""
    if not ctx.reduced:
        raise ValueError("context must hold a reduced basis")
    if f.variables != ctx.ideal.variables:
        raise VariableMismatch("polynomial/context variable mismatch")
    return reduce_by(f, ctx.basis, ctx.leading_exponents, ctx.order, caps)


def standard_monomials(ctx, degree_bound):
    """Exponents of total degree <= bound outside the leading-term ideal."""
    n = len(ctx.ideal.variables)
    leads = ctx.leading_exponents
    out = []
    if n == 0:
        return [()]
    for d in range(degree_bound + 1):
        stratum = []

        def gen(prefix, remaining, pos):
            if pos == n - 1:
                stratum.append(prefix + (remaining,))
                return
            for k in range(remaining + 1):
                gen(prefix + (k,), remaining - k, pos + 1)

        gen((), d, 0)
        for cand in stratum:
            if not any(exponent_divides(l, cand) for l in leads):
                out.append(cand)
    return out


def is_unit_ideal(ctx):
    return len(ctx.basis) == 1 and ctx.basis[0].degree() == 0


def ideal_equal(a, b, caps=DEFAULT_CAPS):
    """True iff the two ideals coincide (canonical degrevlex bases compared)."""
    if a.variables != b.variables:
        raise VariableMismatch("ideal variable lists differ")
    ga = buchberger(a, DEGREVLEX, caps)
    gb = buchberger(b, DEGREVLEX, caps)
    return list(ga.basis) == list(gb.basis)


def _fresh_name(variables, stem):
    name = stem
    k = 0
    while name in variables:
        k += 1
        name = f"{stem}{k}"
    return name


def _lift_poly(poly, new_variables, offset):
    """Reinterpret poly in a variable list extended by `offset` leading slots."""
    pad = (0,) * offset
    return Polynomial(new_variables,
                      {pad + e: c for e, c in poly.terms.items()})


def saturate(ideal, g, caps=DEFAULT_CAPS):
    """The saturation (I : g^infinity), computed by eliminating t from
    I + <t*g - 1> under a block order."""
    if g.is_zero:
        raise ValueError("cannot saturate by zero")
    if g.variables != ideal.variables:
        raise VariableMismatch("saturand variable mismatch")
    aux = _fresh_name(ideal.variables, "t")
    new_vars = (aux,) + ideal.variables
    lifted = [_lift_poly(p, new_vars, 1) for p in ideal.generators]
    t = Polynomial.variable(new_vars, aux)
    lifted.append(t * _lift_poly(g, new_vars, 1)
                  - Polynomial.constant(new_vars, 1))
    ctx = buchberger(Ideal(new_vars, lifted), EliminationOrder(1), caps)
    kept = []
    for p in ctx.basis:
        if all(e[0] == 0 for e in p.terms):
            kept.append(Polynomial(ideal.variables,
                                   {e[1:]: c for e, c in p.terms.items()}))
    return Ideal(ideal.variables, kept)


def homogenize(ideal, caps=DEFAULT_CAPS):
    """Homogenization I_h, adding a degree variable in front.

    Homogenizes a degrevlex Groebner basis of I (homogenizing only the
    given generators does not produce I_h in general).
    """
    ctx = buchberger(ideal, DEGREVLEX, caps)
    aux = _fresh_name(ideal.variables, "x0")
    new_vars = (aux,) + ideal.variables
    gens = []
    for g in ctx.basis:
        d = g.degree()
        terms = {}
        for e, c in g.terms.items():
            terms[(d - total_degree(e),) + e] = c
        gens.append(Polynomial(new_vars, terms))
    return Ideal(new_vars, gens)


def dehomogenize(ideal):
    """Set the first variable to 1 and drop it."""
    new_vars = ideal.variables[1:]
    gens = []
    for g in ideal.generators:
        terms = {}
        for e, c in g.terms.items():
            key = e[1:]
            terms[key] = terms.get(key, Fraction(0)) + c
        gens.append(Polynomial(new_vars, terms))
    return Ideal(new_vars, gens)


def ideal_membership(f, ideal, caps=DEFAULT_CAPS):
    ctx = buchberger(ideal, DEGREVLEX, caps)
    return normal_form(f, ctx, caps).is_zero
