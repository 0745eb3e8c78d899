"""Monomial comparators: lex, degrevlex, matrix-weight composite, elimination.

Every order exposes a `key` function mapping an exponent tuple to a
sortable tuple; the division pivot of a polynomial is always its
key-maximal monomial.  A Composite order ranks a monomial higher when its
weight vector M*alpha is lexicographically *smaller* (MIN convention for
weights), breaking ties with the embedded tiebreak order.  With that
orientation the pivot of f lies in the support of the weight-initial form
of f, which is exactly what the initial-ideal machinery needs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .poly import total_degree


class OrderNotAdmissible(ValueError):
    """Raised when a composite order cannot guarantee terminating division."""


class MonomialOrder:
    name = "order"

    def key(self, alpha):
        raise NotImplementedError

    def compare(self, alpha, beta):
        """-1, 0 or 1 as alpha <, =, > beta in this order."""
        ka, kb = self.key(alpha), self.key(beta)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    name = "lex"

    def key(self, alpha):
        return alpha


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, alpha):
        return (sum(alpha), tuple(-e for e in reversed(alpha)))


LEX = Lex()
DEGREVLEX = DegRevLex()


class EliminationOrder(MonomialOrder):
    """Block order: total degree in the first `block` variables, then degrevlex.

    Any monomial involving a block variable outranks every monomial free of
    them, so the block variables can be eliminated from a Groebner basis.
    """

    def __init__(self, block):
        self.block = block
        self.name = f"elim({block})"

    def key(self, alpha):
        return (sum(alpha[:self.block]), sum(alpha),
                tuple(-e for e in reversed(alpha)))


def _scale_row_to_int(row):
    """Scale a rational row by a positive rational so entries are coprime ints."""
    row = [Fraction(x) for x in row]
    denom = 1
    for x in row:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


class Composite(MonomialOrder):
    """Weight-matrix order >_M: smaller M*alpha (lex in Q^r) ranks higher."""

    def __init__(self, matrix, tiebreak=DEGREVLEX):
        if isinstance(tiebreak, Composite):
            raise ValueError("tiebreak must not itself be composite")
        self.matrix = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if not self.matrix:
            raise ValueError("weight matrix needs at least one row")
        width = len(self.matrix[0])
        if any(len(row) != width for row in self.matrix):
            raise ValueError("ragged weight matrix")
        self.tiebreak = tiebreak
        # comparisons only see each row up to positive scaling
        self._int_rows = tuple(_scale_row_to_int(row) for row in self.matrix)
        self.name = f"composite({len(self.matrix)}x{width};{tiebreak.name})"

    def key(self, alpha):
        weights = tuple(
            -sum(m * a for m, a in zip(row, alpha)) for row in self._int_rows)
        return (weights, self.tiebreak.key(alpha))

    def columns_nonpositive(self):
        """True if every column of M is <= 0 in the lex order on Q^r.

        Then >_M is a genuine monomial well-order (1 is minimal), so
        division terminates on arbitrary input.
        """
        ncols = len(self.matrix[0])
        for j in range(ncols):
            col = [row[j] for row in self.matrix]
            for entry in col:
                if entry < 0:
                    break
                if entry > 0:
                    return False
        return True


def weight_of_monomial(matrix, alpha):
    """Exact weight vector M*alpha as a tuple of Fractions."""
    matrix = [tuple(Fraction(x) for x in row) for row in matrix]
    if any(len(row) != len(alpha) for row in matrix):
        raise ValueError("weight matrix width != exponent length")
    return tuple(sum(m * a for m, a in zip(row, alpha)) for row in matrix)


def weight_compare(matrix, alpha, beta):
    """Compare M*alpha vs M*beta lexicographically: -1, 0 or 1."""
    wa = weight_of_monomial(matrix, alpha)
    wb = weight_of_monomial(matrix, beta)
    if wa < wb:
        return -1
    if wa > wb:
        return 1
    return 0


def compare(order, alpha, beta):
    if len(alpha) != len(beta):
        raise ValueError("exponent length mismatch")
    return order.compare(tuple(alpha), tuple(beta))


def leading_exponent(poly, order):
    """Pivot monomial of a nonzero polynomial: the order-maximal exponent."""
    if poly.is_zero:
        raise ValueError("zero polynomial has no leading term")
    return max(poly.terms, key=order.key)


def leading_term(poly, order):
    e = leading_exponent(poly, order)
    return e, poly.terms[e]
