"""Univariate factorization over Z: squarefree split, Berlekamp mod p,
multifactor Hensel lifting, Zassenhaus recombination.

Polynomials are dense integer coefficient lists, index = degree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)
MAX_MODULAR_FACTORS = 20


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def neg(f):
    return [-c for c in f]


def add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                 for i in range(n)])


def sub(f, g):
    return add(f, neg(g))


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def mul_scalar(f, c):
    if c == 0:
        return []
    return [a * c for a in f]


def derivative(f):
    return trim([i * f[i] for i in range(1, len(f))])


def content(f):
    g = 0
    for c in f:
        g = gcd(g, abs(c))
    return g


def primitive(f):
    c = content(f)
    if c <= 1:
        return list(f)
    return [x // c for x in f]


def divmod_q(f, g):
    """Quotient and remainder over Q (exact Fractions)."""
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    lc = g[-1]
    while len(f) >= len(g) and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) < len(g):
            break
        k = len(f) - len(g)
        factor = f[-1] / lc
        q[k] = factor
        for i in range(len(g)):
            f[k + i] -= factor * g[i]
        f.pop()
    while f and f[-1] == 0:
        f.pop()
    while q and q[-1] == 0:
        q.pop()
    return q, f


def divides_z(g, f):
    """True with quotient if g divides f over Q (hence over Z for primitives)."""
    if not g:
        return None
    q, r = divmod_q(f, g)
    if r:
        return None
    if any(c.denominator != 1 for c in q):
        return None
    return [int(c) for c in q]


def gcd_z(f, g):
    """Primitive gcd over Z with positive leading coefficient."""
    a = [Fraction(c) for c in f]
    b = [Fraction(c) for c in g]
    while b:
        _, r = divmod_q(a, b)
        a, b = b, r
    if not a:
        return []
    denom = 1
    for c in a:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = primitive([int(c * denom) for c in a])
    if ints[-1] < 0:
        ints = neg(ints)
    return ints


# --- arithmetic mod m -------------------------------------------------------

def truncate_sym(f, m):
    """Reduce coefficients into the symmetric range (-m/2, m/2]."""
    out = []
    half = m // 2
    for c in f:
        c %= m
        if c > half:
            c -= m
        out.append(c)
    return trim(out)


def mod_p(f, p):
    return trim([c % p for c in f])


def gf_divmod(f, g, p):
    f = list(f)
    q = [0] * max(len(f) - len(g) + 1, 1)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        while f and f[-1] % p == 0:
            f.pop()
        if len(f) < len(g):
            break
        k = len(f) - len(g)
        factor = (f[-1] * inv) % p
        q[k] = factor
        for i in range(len(g)):
            f[k + i] = (f[k + i] - factor * g[i]) % p
        f.pop()
    return trim([c % p for c in q]), trim([c % p for c in f])


def gf_gcd(f, g, p):
    a, b = mod_p(f, p), mod_p(g, p)
    while b:
        _, r = gf_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def gf_gcdex(f, g, p):
    """s, t with s*f + t*g = 1 mod p (f, g coprime mod p)."""
    r0, r1 = mod_p(f, p), mod_p(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, trim([c % p for c in sub(s0, mul(q, s1))])
        t0, t1 = t1, trim([c % p for c in sub(t0, mul(q, t1))])
    if degree(r0) != 0:
        raise ValueError("polynomials not coprime mod p")
    inv = pow(r0[0], -1, p)
    return ([(c * inv) % p for c in s0], [(c * inv) % p for c in t0])


def gf_pow_mod(f, e, mod_poly, p):
    result = [1]
    base = gf_divmod(f, mod_poly, p)[1]
    while e:
        if e & 1:
            result = gf_divmod(mul(result, base), mod_poly, p)[1]
        base = gf_divmod(mul(base, base), mod_poly, p)[1]
        e >>= 1
    return result


def _gf_nullspace(mat, p, n):
    """Row-style nullspace of an n x n matrix over F_p."""
    a = [row[:] for row in mat]
    pivots = {}
    row = 0
    for col in range(n):
        pr = None
        for i in range(row, n):
            if a[i][col] % p != 0:
                pr = i
                break
        if pr is None:
            continue
        a[row], a[pr] = a[pr], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(x * inv) % p for x in a[row]]
        for i in range(n):
            if i != row and a[i][col] % p != 0:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[row])]
        pivots[col] = row
        row += 1
    basis = []
    for col in range(n):
        if col in pivots:
            continue
        vec = [0] * n
        vec[col] = 1
        for pc, pr in pivots.items():
            vec[pc] = (-a[pr][col]) % p
        basis.append(vec)
    return basis


def berlekamp(f, p):
    """Monic irreducible factors of a monic squarefree f over F_p."""
    n = degree(f)
    if n <= 1:
        return [list(f)]
    # Frobenius matrix rows: coordinates of x^{ip} mod f
    rows = []
    xp = gf_pow_mod([0, 1], p, f, p)
    current = [1]
    for i in range(n):
        rows.append([current[j] if j < len(current) else 0 for j in range(n)])
        current = gf_divmod(mul(current, xp), f, p)[1]
    mat = [[(rows[i][j] - (1 if i == j else 0)) % p for j in range(n)]
           for i in range(n)]
    # kernel of v -> v*(Q - I); transpose for row reduction
    matt = [[mat[i][j] for i in range(n)] for j in range(n)]
    kernel = _gf_nullspace(matt, p, n)
    r = len(kernel)
    factors = [mod_p(f, p)]
    if r == 1:
        return factors
    for vec in kernel:
        v = trim(list(vec))
        if degree(v) < 1:
            continue
        next_factors = []
        for u in factors:
            if degree(u) <= 1:
                next_factors.append(u)
                continue
            pieces = []
            rem = u
            for s in range(p):
                g = gf_gcd(rem, sub(v, [s]), p)
                if 0 < degree(g) < degree(rem):
                    pieces.append(g)
                    rem = gf_divmod(rem, g, p)[0]
                if degree(rem) == 0:
                    break
            if degree(rem) > 0:
                pieces.append(rem)
            next_factors.extend(pieces if pieces else [u])
        factors = next_factors
        if len(factors) == r:
            break
    return sorted(factors)


# --- Hensel lifting ---------------------------------------------------------

def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m)
    to the same equations mod m**2."""
    M = m * m
    e = truncate_sym(sub(f, mul(g, h)), M)
    q, r = _divmod_mod(mul(s, e), h, M)
    g1 = truncate_sym(add(add(g, mul(t, e)), mul(q, g)), M)
    h1 = truncate_sym(add(h, r), M)
    b = truncate_sym(sub(add(mul(s, g1), mul(t, h1)), [1]), M)
    c, d = _divmod_mod(mul(s, b), h1, M)
    s1 = truncate_sym(sub(s, d), M)
    t1 = truncate_sym(sub(sub(t, mul(t, b)), mul(c, g1)), M)
    return g1, h1, s1, t1


def _divmod_mod(f, g, m):
    """Division mod m; leading coefficient of g must be invertible mod m."""
    f = [c % m for c in f]
    g = [c % m for c in g]
    trim(g)
    inv = pow(g[-1], -1, m)
    q = [0] * max(len(f) - len(g) + 1, 1)
    work = list(f)
    while True:
        while work and work[-1] % m == 0:
            work.pop()
        if len(work) < len(g):
            break
        k = len(work) - len(g)
        factor = (work[-1] * inv) % m
        q[k] = factor
        for i in range(len(g)):
            work[k + i] = (work[k + i] - factor * g[i]) % m
        work.pop()
    return truncate_sym(q, m), truncate_sym(work, m)


def hensel_lift(p, f, factors, l):
    """Lift monic factors of f mod p to factors mod p**l (symmetric coeffs)."""
    r = len(factors)
    lc = f[-1]
    if r == 1:
        inv = pow(lc % p ** l, -1, p ** l)
        return [truncate_sym(mul_scalar(f, inv), p ** l)]
    k = r // 2
    g = [lc % p]
    for fac in factors[:k]:
        g = mod_p(mul(g, fac), p)
    h = [1]
    for fac in factors[k:]:
        h = mod_p(mul(h, fac), p)
    s, t = gf_gcdex(g, h, p)
    g, h = truncate_sym(g, p), truncate_sym(h, p)
    s, t = truncate_sym(s, p), truncate_sym(t, p)
    m = p
    while m < p ** l:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m *= m
    g = truncate_sym(g, p ** l)
    h = truncate_sym(h, p ** l)
    return hensel_lift(p, g, factors[:k], l) + hensel_lift(p, h, factors[k:], l)


# --- Zassenhaus --------------------------------------------------------------

class TooManyFactors(RuntimeError):
    pass


def _pick_prime(f):
    best = None
    tried = 0
    for p in PRIMES:
        if f[-1] % p == 0:
            continue
        fp = mod_p(f, p)
        if degree(gf_gcd(fp, derivative(fp), p)) != 0:
            continue
        monic = mul_scalar(fp, pow(fp[-1], -1, p))
        monic = mod_p(monic, p)
        factors = berlekamp(monic, p)
        if best is None or len(factors) < len(best[1]):
            best = (p, factors)
        tried += 1
        if len(factors) == 1 or tried >= 4:
            break
    if best is None:
        raise RuntimeError("no usable prime found")
    return best


def zassenhaus(f):
    """Irreducible factors over Z of a primitive squarefree f, lc(f) > 0."""
    n = degree(f)
    if n <= 1:
        return [list(f)]
    p, modular = _pick_prime(f)
    if len(modular) == 1:
        return [list(f)]
    if len(modular) > MAX_MODULAR_FACTORS:
        raise TooManyFactors(f"{len(modular)} modular factors")
    norm = isqrt(sum(c * c for c in f)) + 1
    bound = 2 ** n * norm * abs(f[-1])
    l = 1
    while p ** l <= 2 * bound:
        l += 1
    lifted = hensel_lift(p, list(f), modular, l)
    pl = p ** l
    result = []
    remaining = list(range(len(lifted)))
    current = list(f)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in combinations(remaining, size):
            cand = [current[-1]]
            for i in subset:
                cand = truncate_sym(mul(cand, lifted[i]), pl)
            cand = primitive(cand)
            quotient = divides_z(cand, current)
            if quotient is not None:
                result.append(cand if cand[-1] > 0 else neg(cand))
                current = quotient if quotient[-1] > 0 else neg(quotient)
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            size += 1
    if degree(current) > 0:
        result.append(current)
    return sorted(result)


def squarefree_decomposition(f):
    """Yun decomposition of a primitive f: list of (g_i, multiplicity i)."""
    out = []
    g = gcd_z(f, derivative(f))
    if degree(g) == 0:
        return [(list(f), 1)]
    w = divides_z(g, f)
    y = divides_z(g, derivative(f))
    i = 1
    while True:
        z = sub(y, derivative(w))
        if not z:
            if degree(w) > 0:
                out.append((w, i))
            break
        h = gcd_z(w, z)
        if degree(h) > 0:
            out.append((h, i))
        w = divides_z(h, w)
        y = divides_z(h, z)
        i += 1
    return out


def factor_z(f):
    """Full factorization over Z: (content_sign, [(irreducible, mult), ...])."""
    f = trim(list(f))
    if not f:
        raise ValueError("cannot factor zero")
    c = content(f)
    unit = 1 if f[-1] > 0 else -1
    prim = primitive(f)
    if prim[-1] < 0:
        prim = neg(prim)
    factors = []
    for part, mult in squarefree_decomposition(prim):
        if part[-1] < 0:
            part = neg(part)
        for irr in zassenhaus(part):
            factors.append((irr, mult))
    factors.sort()
    return unit * c, factors
