"""Exact linear algebra helpers: rational elimination, integer lattices,
Fourier-Motzkin strict feasibility."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def rref(rows):
    """Reduced row echelon form over Q. Returns (rref_rows, pivot_columns)."""
    mat = [list(map(Fraction, row)) for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows, ncols=None):
    """Basis of the rational kernel of the given row matrix.

    Basis vectors are scaled to coprime integers, in a deterministic
    (free-column) order.
    """
    rows = [list(map(Fraction, row)) for row in rows]
    if ncols is None:
        if not rows:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(scale_to_int(vec))
    return basis


def scale_to_int(vec):
    """Scale a rational vector by a positive rational to coprime integers."""
    vec = [Fraction(x) for x in vec]
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


# --- integer lattices -----------------------------------------------------

def smith_normal_form(mat):
    """Smith normal form of an integer matrix.

    Returns (diag, U, V) with U*mat*V = D, U and V unimodular, and diag the
    list of diagonal entries of D (nonnegative, each dividing the next).
    """
    a = [list(map(int, row)) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # find smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] != 0:
                q = -(a[i][t] // a[t][t])
                add_row(t, i, q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j] != 0:
                q = -(a[t][j] // a[t][t])
                add_col(t, j, q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # divisibility fix-up: pivot must divide the rest of the block
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
            t += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, u, v


def integer_kernel(mat, ncols=None):
    """Lattice basis of {a in Z^n : mat * a = 0} via Smith normal form."""
    mat = [list(map(int, row)) for row in mat]
    if ncols is None:
        if not mat:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(mat[0])
    if not mat:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    diag, _u, v = smith_normal_form(mat)
    rank = sum(1 for d in diag if d != 0)
    # kernel = columns of V beyond the rank
    basis = []
    for j in range(rank, ncols):
        basis.append(tuple(v[i][j] for i in range(ncols)))
    return basis


def lattice_is_saturated(basis_rows):
    """True if Z-span of the rows is saturated in Z^n (elementary divisors 1)."""
    rows = [list(map(int, r)) for r in basis_rows if any(r)]
    if not rows:
        return True
    diag, _u, _v = smith_normal_form(rows)
    return all(d in (0, 1) for d in diag)


def saturate_direction_lattice(vectors, ncols):
    """Basis of (Q-span of vectors) intersected with Z^n."""
    rows = [list(map(Fraction, v)) for v in vectors]
    red, pivots = rref(rows)
    if not red:
        return []
    # The saturation is the integer kernel of the kernel of the span.
    comp = nullspace(red, ncols)
    if not comp:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    return integer_kernel([list(v) for v in comp], ncols)


# --- Fourier-Motzkin strict feasibility ------------------------------------

def _eliminate(constraints, idx):
    """Eliminate variable idx from constraints (a, strict) meaning a.v > 0 or >= 0."""
    pos, neg, rest = [], [], []
    for a, strict in constraints:
        c = a[idx]
        if c > 0:
            pos.append((a, strict))
        elif c < 0:
            neg.append((a, strict))
        else:
            rest.append((a, strict))
    out = list(rest)
    for ap, sp in pos:
        for an, sn in neg:
            # ap[idx] * an - an[idx] * ap has zero idx coefficient,
            # scaled to keep the inequality direction
            coeff = [ap[idx] * x - an[idx] * y for x, y in zip(an, ap)]
            coeff[idx] = Fraction(0)
            out.append((tuple(coeff), sp or sn))
    return out


def solve_strict_system(constraints, nvars):
    """Find v in Q^nvars satisfying homogeneous constraints a.v > 0 / >= 0.

    Returns the lexicographically smallest solution obtainable by greedy
    coordinate choice (strict lower bounds get a unit slack, clipped to the
    midpoint when an upper bound interferes), or None if infeasible.
    """
    constraints = [(tuple(Fraction(x) for x in a), bool(s)) for a, s in constraints]
    for a, s in constraints:
        if len(a) != nvars:
            raise ValueError("constraint width mismatch")
    solution = []
    for i in range(nvars):
        current = []
        for a, strict in constraints:
            const = sum(a[j] * solution[j] for j in range(i))
            current.append((const, a, strict))
        reduced = [(tuple([const] + list(a[i:])), strict)
                   for const, a, strict in current]
        # eliminate all variables after position i (entries 2..)
        work = reduced
        for k in range(len(reduced[0][0]) - 1 if reduced else 0, 1, -1):
            work = _eliminate(work, k)
        # remaining constraints involve const (index 0) and v_i (index 1)
        lower = None  # (value, strict)
        upper = None
        feasible = True
        for a, strict in work:
            const, coeff = a[0], a[1]
            if coeff == 0:
                if const < 0 or (const == 0 and strict):
                    feasible = False
                continue
            bound = -const / coeff
            if coeff > 0:
                if lower is None or bound > lower[0] or (
                        bound == lower[0] and strict):
                    lower = (bound, strict)
            else:
                if upper is None or bound < upper[0] or (
                        bound == upper[0] and strict):
                    upper = (bound, strict)
        if not feasible:
            return None
        if lower is not None and upper is not None:
            if lower[0] > upper[0]:
                return None
            if lower[0] == upper[0] and (lower[1] or upper[1]):
                return None
        if lower is None:
            value = Fraction(0) if upper is None else min(Fraction(0), upper[0] - 1)
            if upper is not None and upper[1] and value >= upper[0]:
                value = upper[0] - 1
        elif not lower[1]:
            value = lower[0]
        else:
            value = lower[0] + 1
            if upper is not None and (value > upper[0] or
                                      (value == upper[0] and upper[1])):
                value = (lower[0] + upper[0]) / 2
        solution.append(value)
    # final verification
    for a, strict in constraints:
        total = sum(x * v for x, v in zip(a, solution))
        if total < 0 or (strict and total == 0):
            return None
    return tuple(solution)


def strictly_positive_combination(basis):
    """Find a strictly positive vector in the row span of basis, or None."""
    if not basis:
        return None
    n = len(basis[0])
    k = len(basis)
    constraints = []
    for j in range(n):
        constraints.append((tuple(Fraction(basis[i][j]) for i in range(k)), True))
    coeffs = solve_strict_system(constraints, k)
    if coeffs is None:
        return None
    return tuple(sum(coeffs[i] * Fraction(basis[i][j]) for i in range(k))
                 for j in range(n))
