"""Desk-scale primality for ideals over Q, as a sound tri-state.

Prime certificates:
  * zero ideal;
  * ideals generated by a subset of the variables;
  * pure-difference binomial ideals equal to the lattice ideal of a
    saturated lattice (toric; geometrically prime);
  * principal ideals with a generator irreducible over Q (Kronecker
    substitution to one variable plus exact univariate factorization).

NotPrime certificates:
  * an explicit factorization of a generator;
  * a homogeneous form in two effective variables of degree >= 2, which
    splits into linear factors over the algebraic closure;
  * a zero-divisor pair f*g in I with f, g outside I.

Anything else is Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import factor as uf
from .groebner import (DEFAULT_CAPS, Ideal, buchberger, ideal_equal,
                       is_unit_ideal, normal_form, saturate,
                       standard_monomials)
from .orders import DEGREVLEX
from .poly import Polynomial

MULTIVARIATE_DEGREE_CAP = 24
SUBSET_CAP = 2 ** 16

CLOSED_FIELD_NOTE = ("toric and binary-form certificates are geometric: "
                     "they certify primality/non-primality over an "
                     "algebraically closed base field")


@dataclass
class PrimalityResult:
    status: str  # "Prime", "NotPrime", "Unknown"
    certificate: dict = field(default_factory=dict)
    notes: str = ""

    def __eq__(self, other):
        if isinstance(other, str):
            return self.status == other
        if isinstance(other, PrimalityResult):
            return self.status == other.status and \
                self.certificate == other.certificate
        return NotImplemented


def _monomial_content(poly):
    """Largest monomial dividing every term."""
    exps = list(poly.terms)
    out = list(exps[0])
    for e in exps[1:]:
        out = [min(a, b) for a, b in zip(out, e)]
    return tuple(out)


def _effective_variables(poly):
    n = len(poly.variables)
    used = [False] * n
    for e in poly.terms:
        for i in range(n):
            if e[i]:
                used[i] = True
    return [i for i in range(n) if used[i]]


def _strip_monomial(poly):
    m = _monomial_content(poly)
    if not any(m):
        return None, poly
    stripped = Polynomial(
        poly.variables,
        {tuple(a - b for a, b in zip(e, m)): c for e, c in poly.terms.items()})
    return m, stripped


def _to_integer_poly(poly):
    denom = 1
    for c in poly.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return poly.scale(denom)


def kronecker_encode(poly):
    """Map a multivariate integer polynomial injectively to Z[t].

    Mixed-radix substitution x_i -> t^(prod of earlier degree bounds);
    valid for testing factorizations because per-variable degrees of
    factors are bounded by those of the input.
    """
    maxdeg = poly.max_degree_per_variable()
    radices = [d + 1 for d in maxdeg]
    weights = []
    acc = 1
    for r in radices:
        weights.append(acc)
        acc *= r
    coeffs = [0] * acc
    for e, c in poly.terms.items():
        idx = sum(ei * w for ei, w in zip(e, weights))
        coeffs[idx] += int(c)
    return uf.trim(coeffs), radices


def kronecker_decode(coeffs, radices, variables):
    terms = {}
    for idx, c in enumerate(coeffs):
        if c == 0:
            continue
        e = []
        rest = idx
        for r in radices:
            e.append(rest % r)
            rest //= r
        if rest:
            return None  # exponent outside the box; not a valid preimage
        terms[tuple(e)] = Fraction(c)
    return Polynomial(variables, terms)


def divide_exact(f, g, caps=DEFAULT_CAPS):
    """Quotient f/g if g divides f, else None (single-divisor division)."""
    if g.is_zero:
        return None
    order = DEGREVLEX
    from .orders import leading_exponent
    from .poly import exponent_divides, sub_exponents
    lead = leading_exponent(g, order)
    lc = g.terms[lead]
    quotient = {}
    p = f
    while p:
        e = leading_exponent(p, order)
        if not exponent_divides(lead, e):
            return None
        c = p.terms[e] / lc
        q = sub_exponents(e, lead)
        quotient[q] = c
        p = p - g.mul_term(q, c)
    return Polynomial(f.variables, quotient)


def irreducible_over_q(poly):
    """(verdict, witness): verdict True/False/None, witness a factor pair.

    poly must be nonconstant with no monomial factor.
    """
    work = _to_integer_poly(poly)
    if work.degree() > MULTIVARIATE_DEGREE_CAP:
        return None, None
    coeffs, radices = kronecker_encode(work)
    if uf.degree(coeffs) < 1:
        return None, None
    try:
        _content, factors = uf.factor_z(coeffs)
    except uf.TooManyFactors:
        return None, None
    expanded = []
    for irr, mult in factors:
        expanded.extend([irr] * mult)
    if len(expanded) == 1:
        return True, None
    # every multivariate split maps to a subset split of the Kronecker image
    total = 2 ** len(expanded)
    if total > SUBSET_CAP:
        return None, None
    seen = set()
    for size in range(1, len(expanded)):
        for subset in combinations(range(len(expanded)), size):
            prod = [1]
            for i in subset:
                prod = uf.mul(prod, expanded[i])
            key = tuple(prod)
            if key in seen:
                continue
            seen.add(key)
            cand = kronecker_decode(prod, radices, poly.variables)
            if cand is None or cand.degree() < 1:
                continue
            quotient = divide_exact(work, cand)
            if quotient is not None and quotient.degree() >= 1:
                return False, (cand, quotient)
    return True, None


def _is_pure_difference_binomial(poly):
    """x^a - x^b with unit coefficients (after monic scaling)."""
    if len(poly.terms) != 2:
        return None
    (e1, c1), (e2, c2) = sorted(poly.terms.items())
    if c1 + c2 != 0:
        return None
    return (e1, e2)


def _binary_form_certificate(poly):
    """Nonprimality of a homogeneous form in <= 2 effective variables."""
    eff = _effective_variables(poly)
    if len(eff) != 2 or poly.degree() < 2:
        return None
    if not poly.is_homogeneous():
        return None
    i, j = eff
    return {"kind": "binary_form",
            "variables": [poly.variables[i], poly.variables[j]],
            "degree": poly.degree(),
            "reason": "a binary form of degree >= 2 splits into linear "
                      "factors over the algebraic closure"}


def _toric_certificate(ctx, caps):
    """Prime via saturated-lattice (toric) structure, if the reduced basis
    consists of pure-difference binomials."""
    lattice_rows = []
    for g in ctx.basis:
        pair = _is_pure_difference_binomial(g)
        if pair is None:
            return None
        e1, e2 = pair
        lattice_rows.append([a - b for a, b in zip(e1, e2)])
    from .linalg import lattice_is_saturated
    if not lattice_is_saturated(lattice_rows):
        return None
    ideal = Ideal(ctx.ideal.variables, list(ctx.basis))
    prod_vars = Polynomial.monomial(
        ideal.variables, (1,) * len(ideal.variables))
    saturated = saturate(ideal, prod_vars, caps)
    if not ideal_equal(ideal, saturated, caps):
        return None
    return {"kind": "toric",
            "lattice": [list(map(int, row)) for row in lattice_rows]}


def _zero_divisor_search(ctx, caps, degree_bound=6, max_pairs=200):
    """Look for standard-monomial products that land in the ideal."""
    cands = [e for e in standard_monomials(ctx, degree_bound) if any(e)]
    cands.sort(key=lambda e: (sum(e), e))
    tried = 0
    variables = ctx.ideal.variables
    for i in range(len(cands)):
        for j in range(i, len(cands)):
            if sum(cands[i]) + sum(cands[j]) > degree_bound:
                continue
            tried += 1
            if tried > max_pairs:
                return None
            f = Polynomial.monomial(variables, cands[i])
            g = Polynomial.monomial(variables, cands[j])
            if normal_form(f * g, ctx, caps).is_zero:
                return (f, g)
    return None


def is_prime_desk(ideal, caps=DEFAULT_CAPS):
    """Tri-state primality with sound certificates (see module docstring)."""
    ctx = buchberger(ideal, DEGREVLEX, caps)
    if not ctx.basis:
        return PrimalityResult("Prime", {"kind": "zero_ideal"})
    if is_unit_ideal(ctx):
        return PrimalityResult("NotPrime", {"kind": "unit_ideal"},
                               notes="the unit ideal is not prime")

    # monomial factors of basis elements give zero divisors or variable gens
    monomial_gens = []
    for g in ctx.basis:
        if len(g.terms) == 1:
            (e,) = g.terms
            if sum(e) == 1:
                monomial_gens.append(g)
                continue
            # a composite monomial: x_i * (rest), both outside the ideal
            i = next(k for k, v in enumerate(e) if v)
            f1 = Polynomial.variable(ideal.variables, ideal.variables[i])
            f2 = divide_exact(g, f1, caps)
            if not normal_form(f1, ctx, caps).is_zero and \
                    not normal_form(f2, ctx, caps).is_zero:
                return PrimalityResult(
                    "NotPrime",
                    {"kind": "zero_divisor_pair",
                     "factors": [str(f1), str(f2)]},
                    notes="monomial generator splits")
            continue
        m, stripped = _strip_monomial(g)
        if m is not None:
            mono = Polynomial.monomial(ideal.variables, m)
            if not normal_form(mono, ctx, caps).is_zero and \
                    not normal_form(stripped, ctx, caps).is_zero:
                return PrimalityResult(
                    "NotPrime",
                    {"kind": "zero_divisor_pair",
                     "factors": [str(mono), str(stripped)]},
                    notes="generator has a monomial factor")

    if monomial_gens and len(monomial_gens) == len(ctx.basis):
        return PrimalityResult("Prime", {"kind": "variable_ideal"})

    # toric route
    toric = _toric_certificate(ctx, caps)
    if toric is not None:
        return PrimalityResult("Prime", toric, notes=CLOSED_FIELD_NOTE)

    # principal routes
    if len(ctx.basis) == 1:
        g = ctx.basis[0]
        binary = _binary_form_certificate(g)
        if binary is not None:
            return PrimalityResult("NotPrime", binary,
                                   notes=CLOSED_FIELD_NOTE)
        verdict, witness = irreducible_over_q(g)
        if verdict is True:
            return PrimalityResult(
                "Prime", {"kind": "irreducible_generator"},
                notes="irreducibility certified over Q; absolute "
                      "irreducibility is not checked beyond the binary-form "
                      "test")
        if verdict is False:
            f1, f2 = witness
            return PrimalityResult(
                "NotPrime",
                {"kind": "zero_divisor_pair", "factors": [str(f1), str(f2)]},
                notes="explicit factorization of the generator")

    pair = _zero_divisor_search(ctx, caps)
    if pair is not None:
        return PrimalityResult(
            "NotPrime",
            {"kind": "zero_divisor_pair",
             "factors": [str(pair[0]), str(pair[1])]},
            notes="zero-divisor pair found by standard-monomial search")
    return PrimalityResult("Unknown", {},
                           notes="no certificate found at desk scale")


def replay_zero_divisor(ideal, factors_text, caps=DEFAULT_CAPS):
    """Check a stored zero-divisor witness: product in I, factors outside."""
    from .poly import parse_polynomial
    ctx = buchberger(ideal, DEGREVLEX, caps)
    f = parse_polynomial(factors_text[0], ideal.variables)
    g = parse_polynomial(factors_text[1], ideal.variables)
    return (normal_form(f * g, ctx, caps).is_zero
            and not normal_form(f, ctx, caps).is_zero
            and not normal_form(g, ctx, caps).is_zero)
