"""Sparse multivariate polynomials over Q.

A polynomial is a map from exponent tuples to nonzero Fraction
coefficients, together with an ordered tuple of variable names.  All
arithmetic is exact; zero coefficients are never stored.

Text grammar (whitespace insignificant)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coeff | var ('^' posint)? | '(' poly ')'
    coeff  := int | int '/' posint

Formatting a polynomial and parsing it back is the identity.
"""

from __future__ import annotations

from fractions import Fraction

# Exponents are kept below 2**31; additions beyond that fail loudly
# instead of producing degrees no downstream computation could handle.
EXPONENT_LIMIT = 2**31 - 1


class PolynomialError(ValueError):
    pass


class VariableMismatch(PolynomialError):
    pass


class ExponentOverflow(PolynomialError):
    pass


class ParseError(PolynomialError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def add_exponents(a, b):
    """Componentwise sum of two exponent tuples, with overflow check."""
    out = tuple(x + y for x, y in zip(a, b))
    if any(e > EXPONENT_LIMIT for e in out):
        raise ExponentOverflow(f"exponent exceeds {EXPONENT_LIMIT}")
    return out


def sub_exponents(a, b):
    out = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in out):
        raise PolynomialError("negative exponent in monomial quotient")
    return out


def exponent_divides(a, b):
    """True if x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def exponent_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def total_degree(a):
    return sum(a)


class Polynomial:
    """Immutable sparse polynomial over Q in a fixed variable list."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        object.__setattr__(self, "variables", tuple(variables))
        clean = {}
        n = len(self.variables)
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise VariableMismatch(
                        f"exponent length {len(exp)} != variable count {n}")
                if any(e < 0 for e in exp):
                    raise PolynomialError("negative exponent")
                c = Fraction(coeff)
                if c != 0:
                    prev = clean.get(exp)
                    c = c if prev is None else prev + c
                    if c == 0:
                        del clean[exp]
                    else:
                        clean[exp] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, value):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, variables, exp, coeff=1):
        return cls(variables, {tuple(exp): Fraction(coeff)})

    def _check(self, other):
        if self.variables != other.variables:
            raise VariableMismatch(
                f"variable lists differ: {self.variables} vs {other.variables}")

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(total_degree(e) for e in self.terms)

    def is_homogeneous(self):
        degrees = {total_degree(e) for e in self.terms}
        return len(degrees) <= 1

    def __add__(self, other):
        self._check(other)
        res = dict(self.terms)
        for exp, c in other.terms.items():
            s = res.get(exp, 0) + c
            if s == 0:
                res.pop(exp, None)
            else:
                res[exp] = s
        return Polynomial(self.variables, res)

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add_exponents(e1, e2)
                s = res.get(e, 0) + c1 * c2
                if s == 0:
                    res.pop(e, None)
                else:
                    res[e] = s
        return Polynomial(self.variables, res)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.variables)
        return Polynomial(self.variables, {e: k * c for e, k in self.terms.items()})

    def mul_term(self, exp, coeff):
        """Multiply by coeff * x^exp."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return Polynomial.zero(self.variables)
        return Polynomial(
            self.variables,
            {add_exponents(e, exp): c * coeff for e, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise PolynomialError("negative power")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def support(self):
        return list(self.terms.keys())

    def max_degree_per_variable(self):
        n = len(self.variables)
        out = [0] * n
        for e in self.terms:
            for i in range(n):
                if e[i] > out[i]:
                    out[i] = e[i]
        return tuple(out)

    def __str__(self):
        if not self.terms:
            return "0"
        # canonical display: degrevlex descending
        def key(e):
            return (total_degree(e), tuple(-x for x in reversed(e)))
        parts = []
        for exp in sorted(self.terms, key=key, reverse=True):
            coeff = self.terms[exp]
            monos = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    monos.append(name)
                elif e > 1:
                    monos.append(f"{name}^{e}")
            abs_c = abs(coeff)
            if not monos:
                body = _format_rational(abs_c)
            elif abs_c == 1:
                body = "*".join(monos)
            else:
                body = _format_rational(abs_c) + "*" + "*".join(monos)
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self})"


def _format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_rational(q):
    """Render a Fraction as "n" or "p/q" (the wire encoding)."""
    return _format_rational(q)


def parse_rational(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


# --- parser ---------------------------------------------------------------

class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_number(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def take_name(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected variable name", start)
        return self.text[start:self.pos]


class _Parser:
    def __init__(self, text, variables):
        self.tok = _Tokenizer(text)
        self.variables = tuple(variables)

    def parse(self):
        poly = self.parse_poly()
        self.tok.skip_ws()
        if self.tok.pos != len(self.tok.text):
            raise ParseError("trailing input", self.tok.pos)
        return poly

    def parse_poly(self):
        sign = 1
        ch = self.tok.peek()
        if ch in ("+", "-"):
            self.tok.pos += 1
            sign = -1 if ch == "-" else 1
        result = self.parse_term().scale(sign)
        while True:
            ch = self.tok.peek()
            if ch not in ("+", "-"):
                break
            self.tok.pos += 1
            term = self.parse_term()
            result = result + (term if ch == "+" else -term)
        return result

    def parse_term(self):
        result = self.parse_factor()
        while self.tok.peek() == "*":
            self.tok.pos += 1
            result = result * self.parse_factor()
        return result

    def parse_factor(self):
        ch = self.tok.peek()
        if ch is None:
            raise ParseError("unexpected end of input", self.tok.pos)
        if ch == "(":
            self.tok.pos += 1
            inner = self.parse_poly()
            if self.tok.peek() != ")":
                raise ParseError("expected ')'", self.tok.pos)
            self.tok.pos += 1
            return self._maybe_power(inner)
        if ch.isdigit():
            num = self.tok.take_number()
            if self.tok.peek() == "/":
                self.tok.pos += 1
                den = self.tok.take_number()
                if den == 0:
                    raise ParseError("zero denominator", self.tok.pos)
                return Polynomial.constant(self.variables, Fraction(num, den))
            return Polynomial.constant(self.variables, num)
        if ch.isalpha() or ch == "_":
            pos = self.tok.pos
            name = self.tok.take_name()
            if name not in self.variables:
                raise ParseError(f"unknown variable '{name}'", pos)
            return self._maybe_power(Polynomial.variable(self.variables, name))
        raise ParseError(f"unexpected character '{ch}'", self.tok.pos)

    def _maybe_power(self, base):
        if self.tok.peek() == "^":
            self.tok.pos += 1
            pos = self.tok.pos
            if self.tok.peek() == "-":
                raise ParseError("negative exponent", pos)
            exp = self.tok.take_number()
            return base ** exp
        return base


def parse_polynomial(text, variables):
    """Parse `text` into a Polynomial over the given variable list."""
    return _Parser(text, variables).parse()
