"""Weight quasivaluations with adapted standard-monomial bases; subduction,
Khovanskii testing and completion; value semigroups; the bridges between
prime cones and valuations.

Two kinds of context are supported:

* presentation mode: the algebra is k[x]/I, weighted by a matrix M whose
  composite order supplies a standard-monomial basis; the quasivaluation
  of f is the minimum weight over the support of its normal form;
* SAGBI mode: the algebra is a subalgebra of a polynomial ring generated
  by explicit polynomials, with the minimum-term valuation of an ambient
  monomial order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import (CapExceeded, DEFAULT_CAPS, Ideal, buchberger,
                       ideal_equal, normal_form, saturate,
                       standard_monomials)
from .initial import (PreconditionError, equivalence_cone, initial_ideal,
                      rank1_representative)
from .linalg import integer_kernel, solve_strict_system
from .orders import (Composite, DEGREVLEX, LEX, MonomialOrder,
                     leading_exponent, weight_of_monomial)
from .poly import Polynomial
from .primality import is_prime_desk
from .tropical import contraction, in_tropical_variety_rank_r


class ValuationContext:
    """Holds everything needed to evaluate one weight or minimum-term
    (quasi)valuation."""

    def __init__(self):
        raise TypeError("use ValuationContext.presentation or .sagbi")

    @classmethod
    def presentation(cls, ideal, matrix, tiebreak=DEGREVLEX,
                     caps=DEFAULT_CAPS):
        self = object.__new__(cls)
        self.mode = "presentation"
        self.ideal = ideal
        self.matrix = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        n = len(ideal.variables)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("weight matrix width mismatch")
        self.tiebreak = tiebreak
        self.caps = caps
        self.order = Composite(self.matrix, tiebreak)
        self.gb = buchberger(ideal, self.order, caps)
        self._iota = None
        self.generators = tuple(
            Polynomial.variable(ideal.variables, v) for v in ideal.variables)
        return self

    @classmethod
    def sagbi(cls, generators, ambient_order=LEX, caps=DEFAULT_CAPS):
        self = object.__new__(cls)
        self.mode = "sagbi"
        generators = tuple(generators)
        if not generators:
            raise ValueError("need at least one generator")
        variables = generators[0].variables
        for g in generators:
            if g.variables != variables:
                raise ValueError("generators share one variable list")
            if g.is_zero or g.degree() == 0:
                raise ValueError("generators must be nonconstant")
        if not isinstance(ambient_order, MonomialOrder) or \
                isinstance(ambient_order, Composite):
            raise ValueError("ambient order must be a plain monomial order")
        self.ambient_variables = variables
        self.sagbi_generators = generators
        self.ambient_order = ambient_order
        self.caps = caps
        self.homogeneous = all(g.is_homogeneous() for g in generators)
        return self

    # --- common helpers ----------------------------------------------------

    def value_key(self, value):
        """Sort key realizing the group order on values (ascending)."""
        if self.mode == "presentation":
            return value
        return self.ambient_order.key(value)

    @property
    def iota(self):
        if self.mode != "presentation":
            raise PreconditionError("contraction applies to presentation mode")
        if self._iota is None:
            self._iota = tuple(
                tuple(row) for row in contraction(self.matrix, self.ideal,
                                                  self.caps))
        return self._iota

    def min_term(self, f):
        """Exponent and coefficient of the order-minimal term (SAGBI mode)."""
        e = min(f.terms, key=self.ambient_order.key)
        return e, f.terms[e]

    def value_matrix(self):
        """Columns are the values of the generators."""
        if self.mode == "presentation":
            return self.iota
        exps = [self.min_term(g)[0] for g in self.sagbi_generators]
        m = len(self.ambient_variables)
        return tuple(tuple(Fraction(exps[i][k])
                           for i in range(len(exps))) for k in range(m))

    def __repr__(self):
        if self.mode == "presentation":
            return f"ValuationContext<presentation; {len(self.matrix)} rows>"
        return f"ValuationContext<sagbi; {len(self.sagbi_generators)} gens>"


def evaluate(f, ctx):
    """The (quasi)valuation of a nonzero algebra element."""
    if ctx.mode == "presentation":
        nf = normal_form(f, ctx.gb, ctx.caps)
        if nf.is_zero:
            raise PreconditionError(
                "element lies in the ideal; the valuation of zero is "
                "undefined")
        return min(weight_of_monomial(ctx.matrix, e) for e in nf.terms)
    if f.is_zero:
        raise PreconditionError("valuation of zero is undefined")
    return ctx.min_term(f)[0]


def vector_space_subduction(f, ctx):
    """Standard-monomial expansion of f, minimum weight first."""
    if ctx.mode != "presentation":
        raise PreconditionError("expansion needs a presentation context")
    nf = normal_form(f, ctx.gb, ctx.caps)
    if nf.is_zero:
        raise PreconditionError("element lies in the ideal")
    items = []
    for e, c in nf.terms.items():
        items.append((weight_of_monomial(ctx.matrix, e), e, c))
    items.sort(key=lambda t: (t[0], DEGREVLEX.key(t[1])))
    return [(e, c) for _w, e, c in items]


@dataclass
class SubductionTrace:
    steps: list  # (value, expression in generator symbols)
    outcome: str  # "Exact", "CapExceeded", "NotExpressible"
    residual: Polynomial
    symbols: tuple

    @property
    def exact(self):
        return self.outcome == "Exact"


def _match_monomial(target, gen_exps):
    """Lexicographically-first nonnegative integer solution of
    sum a_i * gen_exps[i] = target, or None."""
    m = len(target)

    def rec(idx, remaining, acc):
        if all(r == 0 for r in remaining):
            return acc + [0] * (len(gen_exps) - idx)
        if idx == len(gen_exps):
            return None
        v = gen_exps[idx]
        bound = min((remaining[j] // v[j] for j in range(m) if v[j] > 0),
                    default=0)
        for a in range(bound + 1):
            nxt = [remaining[j] - a * v[j] for j in range(m)]
            if any(x < 0 for x in nxt):
                break
            hit = rec(idx + 1, nxt, acc + [a])
            if hit is not None:
                return hit
        return None

    return rec(0, list(target), [])


def subduction(f, ctx, cap=None):
    """Rewrite f by generator products of matching lowest value; the value
    strictly increases each step."""
    if cap is None:
        cap = ctx.caps.subduction
    if ctx.mode == "presentation":
        return _subduction_presentation(f, ctx)
    return _subduction_sagbi(f, ctx, cap)


def _subduction_presentation(f, ctx):
    symbols = ctx.ideal.variables
    nf = normal_form(f, ctx.gb, ctx.caps)
    if nf.is_zero:
        raise PreconditionError("element lies in the ideal")
    buckets = {}
    for e, c in nf.terms.items():
        buckets.setdefault(weight_of_monomial(ctx.matrix, e), {})[e] = c
    steps = []
    for w in sorted(buckets):
        steps.append((w, Polynomial(symbols, buckets[w])))
    return SubductionTrace(steps=steps, outcome="Exact",
                           residual=Polynomial.zero(symbols),
                           symbols=symbols)


def _subduction_sagbi(f, ctx, cap):
    gens = ctx.sagbi_generators
    symbols = tuple(f"g{i+1}" for i in range(len(gens)))
    gen_exps = [ctx.min_term(g)[0] for g in gens]
    gen_lcs = [ctx.min_term(g)[1] for g in gens]
    current = f
    steps = []
    count = 0
    last_key = None
    while not current.is_zero:
        count += 1
        if not ctx.homogeneous and count > cap:
            return SubductionTrace(steps=steps, outcome="CapExceeded",
                                   residual=current, symbols=symbols)
        e, c = ctx.min_term(current)
        key = ctx.value_key(e)
        if last_key is not None and not key > last_key:
            raise RuntimeError("subduction value failed to increase")
        last_key = key
        match = _match_monomial(e, gen_exps)
        if match is None:
            return SubductionTrace(steps=steps, outcome="NotExpressible",
                                   residual=current, symbols=symbols)
        coeff = c
        for a, lc in zip(match, gen_lcs):
            coeff /= lc ** a
        product = Polynomial.constant(ctx.ambient_variables, 1)
        for a, g in zip(match, gens):
            if a:
                product = product * g ** a
        expr = Polynomial.monomial(symbols, tuple(match), coeff)
        steps.append((e, expr))
        current = current - product.scale(coeff)
    return SubductionTrace(steps=steps, outcome="Exact",
                           residual=Polynomial.zero(ctx.ambient_variables),
                           symbols=symbols)


def replay_subduction(trace, ctx, f):
    """Check that the accumulated expression plus residual reproduces f."""
    if ctx.mode == "presentation":
        total = Polynomial.zero(ctx.ideal.variables)
        for _w, expr in trace.steps:
            total = total + expr
        return normal_form(f - total, ctx.gb, ctx.caps).is_zero
    total = Polynomial.zero(ctx.ambient_variables)
    for _w, expr in trace.steps:
        for exp, c in expr.terms.items():
            prod = Polynomial.constant(ctx.ambient_variables, c)
            for a, g in zip(exp, ctx.sagbi_generators):
                if a:
                    prod = prod * g ** a
            total = total + prod
    return (f - total - trace.residual).is_zero


@dataclass
class AxiomReport:
    trials: int
    additive_failures: list
    superadditive_failures: list
    strict_witnesses: list
    scalar_failures: list

    @property
    def ok(self):
        return not (self.additive_failures or self.superadditive_failures
                    or self.scalar_failures)


def _random_element(ctx, rng, degree=3):
    if ctx.mode == "presentation":
        variables = ctx.ideal.variables
        basis = [e for e in standard_monomials(ctx.gb, degree)]
    else:
        variables = ctx.ambient_variables
        n = len(variables)
        basis = []
        for d in range(degree + 1):
            def gen(prefix, remaining, pos):
                if pos == n - 1:
                    basis.append(prefix + (remaining,))
                    return
                for k in range(remaining + 1):
                    gen(prefix + (k,), remaining - k, pos + 1)
            gen((), d, 0)
    terms = {}
    for e in rng.sample(basis, min(len(basis), rng.randint(1, 3))):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[e] = Fraction(c)
    return Polynomial(variables, terms)


def _value_min(a, b, ctx):
    return a if not ctx.value_key(a) > ctx.value_key(b) else b


def _value_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def quasivaluation_axioms_check(ctx, trials=100, seed=0):
    """Randomized check of the quasivaluation axioms; strict superadditivity
    witnesses are collected, genuine failures reported."""
    rng = random.Random(seed)
    report = AxiomReport(0, [], [], [], [])
    pairs = []
    gens = (ctx.generators if ctx.mode == "presentation"
            else ctx.sagbi_generators)
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            pairs.append((gens[i], gens[j]))
    while len(pairs) < trials:
        pairs.append((_random_element(ctx, rng), _random_element(ctx, rng)))

    def value_or_none(h):
        try:
            return evaluate(h, ctx)
        except PreconditionError:
            return None

    for f, g in pairs[:trials]:
        vf, vg = value_or_none(f), value_or_none(g)
        if vf is None or vg is None:
            continue
        report.trials += 1
        c = Fraction(rng.choice([2, 3, 5, -2]))
        if evaluate(f.scale(c), ctx) != vf:
            report.scalar_failures.append((f, c))
        vsum = value_or_none(f + g)
        if vsum is not None:
            low = _value_min(vf, vg, ctx)
            if ctx.value_key(vsum) < ctx.value_key(low):
                report.additive_failures.append((f, g, vsum))
        vprod = value_or_none(f * g)
        if vprod is not None:
            expected = _value_add(vf, vg)
            if ctx.value_key(vprod) < ctx.value_key(expected):
                report.superadditive_failures.append((f, g, vprod))
            elif ctx.value_key(vprod) > ctx.value_key(expected):
                report.strict_witnesses.append((f, g, vf, vg, vprod))
    return report


def is_valuation(ctx):
    """Yes iff the initial ideal of the presentation is certified prime."""
    if ctx.mode != "presentation":
        raise PreconditionError("is_valuation needs a presentation context")
    verdict = is_prime_desk(initial_ideal(ctx.ideal, ctx.matrix, ctx.caps),
                            ctx.caps)
    return {"Prime": "Yes", "NotPrime": "No"}.get(verdict.status, "Unknown")


def toric_ideal(value_matrix, variables=None, caps=DEFAULT_CAPS):
    """Kernel of the monomial map x_i -> t^(column i): binomials of the
    lattice kernel, saturated at the product of the variables."""
    rows = [list(map(int, row)) for row in value_matrix]
    if not rows:
        raise ValueError("empty value matrix")
    n = len(rows[0])
    if variables is None:
        variables = tuple(f"x{i+1}" for i in range(n))
    kernel = integer_kernel(rows, n)
    gens = []
    for vec in kernel:
        plus = tuple(max(v, 0) for v in vec)
        minus = tuple(max(-v, 0) for v in vec)
        gens.append(Polynomial(variables, {plus: Fraction(1),
                                           minus: Fraction(-1)}))
    ideal = Ideal(variables, gens)
    if ideal.is_zero:
        return ideal
    prod = Polynomial.monomial(variables, (1,) * n)
    return saturate(ideal, prod, caps)


def khovanskii_test(ctx):
    """Do the generators generate the associated graded algebra?

    Presentation mode reduces to the contraction fixed point; SAGBI mode
    subducts the relations of the value semigroup.
    """
    if ctx.mode == "presentation":
        return ctx.iota == ctx.matrix
    value_cols = ctx.value_matrix()
    relations = toric_ideal(value_cols, caps=ctx.caps)
    if relations.is_zero:
        return True
    rel_ctx = buchberger(relations, DEGREVLEX, ctx.caps)
    for g in rel_ctx.basis:
        h = _evaluate_symbols(g, ctx.sagbi_generators, ctx.ambient_variables)
        if h.is_zero:
            continue
        trace = subduction(h, ctx)
        if trace.outcome == "CapExceeded":
            raise CapExceeded("subduction", ctx.caps.subduction)
        if trace.outcome == "NotExpressible":
            return False
    return True


def _evaluate_symbols(sym_poly, generators, ambient_variables):
    total = Polynomial.zero(ambient_variables)
    for exp, c in sym_poly.terms.items():
        prod = Polynomial.constant(ambient_variables, c)
        for a, g in zip(exp, generators):
            if a:
                prod = prod * g ** a
        total = total + prod
    return total


@dataclass
class CompletionResult:
    basis: list
    completed: bool
    rounds: int
    value_history: list = field(default_factory=list)


def khovanskii_complete(generators, ctx, round_cap=6):
    """Iteratively enlarge a SAGBI generating set until the value-semigroup
    relations all subduct to zero, or the round cap is hit."""
    if ctx.mode != "sagbi":
        raise PreconditionError(
            "completion applies to SAGBI contexts; a presentation context "
            "with contraction fixed point is already complete")
    basis = list(generators)
    history = []
    for round_no in range(1, round_cap + 1):
        round_ctx = ValuationContext.sagbi(basis, ctx.ambient_order, ctx.caps)
        cols = round_ctx.value_matrix()
        history.append(sorted({tuple(int(cols[k][i]) for k in range(len(cols)))
                               for i in range(len(basis))}))
        relations = toric_ideal(cols, caps=ctx.caps)
        additions = []
        if not relations.is_zero:
            rel_ctx = buchberger(relations, DEGREVLEX, ctx.caps)
            for g in rel_ctx.basis:
                h = _evaluate_symbols(g, tuple(basis),
                                      round_ctx.ambient_variables)
                if h.is_zero:
                    continue
                trace = subduction(h, round_ctx)
                if trace.outcome == "Exact":
                    continue
                if trace.outcome == "CapExceeded":
                    return CompletionResult(basis, False, round_no, history)
                residual = trace.residual
                _e, c = round_ctx.min_term(residual)
                residual = residual.scale(1 / c)
                if residual not in basis and residual not in additions:
                    additions.append(residual)
        if not additions:
            return CompletionResult(basis, True, round_no, history)
        basis.extend(additions)
    return CompletionResult(basis, False, round_cap, history)


class SemigroupView:
    """Value semigroup: generators plus an exact membership test."""

    def __init__(self, generators):
        gens = [tuple(Fraction(x) for x in g) for g in generators]
        self.generators = [g for g in gens if any(x != 0 for x in g)]
        self._functional = None
        if self.generators:
            r = len(self.generators[0])
            constraints = [(tuple(-x for x in g), True)
                           for g in self.generators]
            self._functional = solve_strict_system(constraints, r)

    def contains(self, target, max_multiplicity=None):
        target = tuple(Fraction(x) for x in target)
        if all(x == 0 for x in target):
            return True
        if not self.generators:
            return False
        if self._functional is not None:
            w = self._functional
            score = sum(a * b for a, b in zip(w, target))
            steps = [-sum(a * b for a, b in zip(w, g))
                     for g in self.generators]
            min_step = min(steps)
            if score > 0 or min_step <= 0:
                return False
            depth = int((-score) / min_step) + 1
        elif max_multiplicity is not None:
            depth = max_multiplicity * len(self.generators)
        else:
            raise PreconditionError(
                "semigroup is not pointed; pass max_multiplicity")

        gens = self.generators

        def rec(idx, remaining, budget):
            if all(x == 0 for x in remaining):
                return True
            if idx == len(gens) or budget <= 0:
                return False
            g = gens[idx]
            k = 0
            current = remaining
            while k <= budget:
                if rec(idx + 1, current, budget - k):
                    return True
                current = tuple(a - b for a, b in zip(current, g))
                k += 1
                if self._functional is not None:
                    s = sum(a * b for a, b in zip(self._functional, current))
                    if s > 0:
                        break
            return False

        return rec(0, target, depth)

    def level_values(self, level):
        """All semigroup elements whose first coordinate equals `level`
        (graded case: every generator has first coordinate -1)."""
        if not all(g[0] == -1 for g in self.generators):
            raise PreconditionError("level enumeration needs degree-graded "
                                    "generators (first coordinate -1)")
        n = -int(level)
        if n < 0:
            return []
        current = {(Fraction(0),) * len(self.generators[0])}
        for _ in range(n):
            nxt = set()
            for v in current:
                for g in self.generators:
                    nxt.add(tuple(a + b for a, b in zip(v, g)))
            current = nxt
        return sorted(current)


def value_semigroup(ctx):
    """Generators (the contraction columns) and membership test."""
    if not khovanskii_test(ctx):
        raise PreconditionError("not a Khovanskii basis: the value "
                                "semigroup is not generated by the columns")
    if ctx.mode == "presentation":
        iota = ctx.iota
        cols = [tuple(iota[k][j] for k in range(len(iota)))
                for j in range(len(ctx.ideal.variables))]
    else:
        vm = ctx.value_matrix()
        cols = [tuple(vm[k][j] for k in range(len(vm)))
                for j in range(len(ctx.sagbi_generators))]
    seen = []
    for c in cols:
        if c not in seen:
            seen.append(c)
    return SemigroupView(seen)


def one_dim_leaves_check(ctx, degree_bound):
    """True iff no two standard monomials of degree <= bound share a value."""
    if ctx.mode != "presentation":
        raise PreconditionError("leaf check needs a presentation context")
    if not khovanskii_test(ctx):
        raise PreconditionError("not a Khovanskii basis")
    seen = {}
    for e in standard_monomials(ctx.gb, degree_bound):
        w = weight_of_monomial(ctx.matrix, e)
        if w in seen and seen[w] != e:
            return False
        seen[w] = e
    return True


def prime_cone_from_valuation(ctx):
    """A rank-1 weight u and the cone of weights sharing its initial ideal;
    the construction is certified by an initial-ideal comparison and a
    tropical membership check on the generator values."""
    if ctx.mode != "presentation":
        raise PreconditionError("needs a presentation context")
    if is_valuation(ctx) != "Yes":
        raise PreconditionError("the weight quasivaluation is not a "
                                "certified valuation")
    u = rank1_representative(ctx.ideal, ctx.matrix, ctx.caps)
    cone = equivalence_cone([u], ctx.ideal, ctx.order, ctx.caps)
    if not ideal_equal(initial_ideal(ctx.ideal, [u], ctx.caps),
                       initial_ideal(ctx.ideal, ctx.matrix, ctx.caps),
                       ctx.caps):
        raise RuntimeError("rank-1 representative certification failed")
    if not in_tropical_variety_rank_r(ctx.iota, ctx.ideal, ctx.caps):
        raise RuntimeError("generator value matrix escaped the tropical "
                           "variety")
    return u, cone
