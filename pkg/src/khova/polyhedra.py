"""Exact rational cones and polytopes: double description in both
directions, lattice-normalized volume, Hilbert functions, Newton-Okounkov
cone and body, compactification polytopes, Rees graded dimensions.

Dimensions are capped at 8; everything here is desk scale.
"""

from __future__ import annotations

from fractions import Fraction

from .groebner import standard_monomials
from .initial import PreconditionError
from .linalg import rref, saturate_direction_lattice, scale_to_int
from .orders import weight_of_monomial
from .poly import format_rational

DIMENSION_CAP = 8


def _dot(a, b):
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


def double_description(inequalities, equalities, dim):
    """Extreme rays and lineality of {x : A x >= 0, E x = 0}.

    Incremental Motzkin construction.  Tight-constraint sets are
    recomputed exactly after every step, which keeps the combinatorial
    adjacency test sound at desk scale.
    """
    if dim > DIMENSION_CAP + 1:
        raise PreconditionError(f"dimension {dim} exceeds cap {DIMENSION_CAP}")
    lineality = [tuple(Fraction(int(i == j)) for j in range(dim))
                 for i in range(dim)]
    rays = []
    tights = []
    constraints = [(tuple(Fraction(x) for x in e), True) for e in equalities]
    constraints += [(tuple(Fraction(x) for x in a), False)
                    for a in inequalities]
    for idx, (a, is_eq) in enumerate(constraints):
        pivot = None
        for l in lineality:
            if _dot(a, l) != 0:
                pivot = l
                break
        if pivot is not None:
            scale = _dot(a, pivot)
            scaled = tuple(x / scale for x in pivot)  # a . scaled = 1
            lineality = [tuple(x - _dot(a, l) * y for x, y in zip(l, scaled))
                         for l in lineality if l is not pivot]
            lineality = [l for l in lineality if any(x != 0 for x in l)]
            new_rays = [tuple(x - _dot(a, r) * y for x, y in zip(r, scaled))
                        for r in rays]
            if not is_eq:
                new_rays.append(scaled)
            rays = new_rays
        else:
            plus = [i for i, r in enumerate(rays) if _dot(a, r) > 0]
            zero = [i for i, r in enumerate(rays) if _dot(a, r) == 0]
            minus = [i for i, r in enumerate(rays) if _dot(a, r) < 0]
            combined = []
            for ip in plus:
                for im in minus:
                    common = tights[ip] & tights[im]
                    blocked = any(
                        k != ip and k != im and common <= tights[k]
                        for k in range(len(rays)))
                    if blocked:
                        continue
                    rp, rm = rays[ip], rays[im]
                    ap, am = _dot(a, rp), _dot(a, rm)
                    combined.append(tuple(ap * x - am * y
                                          for x, y in zip(rm, rp)))
            keep = zero if is_eq else plus + zero
            rays = [rays[i] for i in keep] + combined
        # normalize, dedupe, recompute tight sets exactly
        seen = []
        for r in rays:
            key = scale_to_int(r)
            if any(key) and key not in seen:
                seen.append(key)
        rays = [tuple(Fraction(x) for x in k) for k in seen]
        tights = [frozenset(j for j in range(idx + 1)
                            if _dot(constraints[j][0], r) == 0)
                  for r in rays]
    ray_vecs = sorted(scale_to_int(r) for r in rays)
    lin_vecs = sorted(scale_to_int(l) for l in lineality
                      if any(x != 0 for x in l))
    return ray_vecs, lin_vecs


def _canonical_form(normal, rhs):
    vec = scale_to_int(list(normal) + [rhs])
    return tuple(vec[:-1]), Fraction(vec[-1])


def _h_to_v(inequalities, equalities, dim):
    """Vertices, rays and lineality of {x : A x >= b, E x = c}."""
    cone_ineq = [(Fraction(1),) + (Fraction(0),) * dim]
    for normal, rhs in inequalities:
        cone_ineq.append((Fraction(-rhs),) +
                         tuple(Fraction(x) for x in normal))
    cone_eq = []
    for normal, rhs in equalities:
        cone_eq.append((Fraction(-rhs),) + tuple(Fraction(x) for x in normal))
    rays, lin = double_description(cone_ineq, cone_eq, dim + 1)
    vertices, rec_rays, lineality = [], [], []
    for r in rays:
        if r[0] > 0:
            vertices.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        elif r[0] == 0:
            rec_rays.append(tuple(Fraction(x) for x in r[1:]))
    for l in lin:
        if l[0] != 0:
            raise RuntimeError("lineality escaped the t >= 0 halfspace")
        lineality.append(tuple(Fraction(x) for x in l[1:]))
    return vertices, rec_rays, lineality


def _v_to_h(points, rays, lineality, dim):
    """Facet inequalities and affine-hull equalities of a V-polyhedron."""
    generators = [(Fraction(1),) + tuple(Fraction(x) for x in p)
                  for p in points]
    generators += [(Fraction(0),) + tuple(Fraction(x) for x in r)
                   for r in rays]
    lin_lift = [(Fraction(0),) + tuple(Fraction(x) for x in l)
                for l in lineality]
    dual_rays, dual_lin = double_description(generators, lin_lift, dim + 1)
    ineqs, eqs = [], []
    for c in dual_rays:
        normal = tuple(Fraction(x) for x in c[1:])
        if not any(x != 0 for x in normal):
            continue  # the trivial 0 >= -c0 facet of the lifted cone
        ineqs.append(_canonical_form(normal, -Fraction(c[0])))
    for c in dual_lin:
        normal = tuple(Fraction(x) for x in c[1:])
        if not any(x != 0 for x in normal):
            continue
        eqs.append(_canonical_form(normal, -Fraction(c[0])))
    return sorted(set(ineqs)), sorted(set(eqs))


class RationalPolyhedron:
    """A polyhedron carrying both a vertex/ray and an inequality description.

    Inequalities read normal . x >= rhs; equalities normal . x = rhs.
    Both representations are recomputed canonically on construction.
    """

    __slots__ = ("dim", "vertices", "rays", "lineality",
                 "inequalities", "equalities", "empty")

    @classmethod
    def from_h(cls, inequalities, equalities=(), dim=None):
        if dim is None:
            if inequalities:
                dim = len(inequalities[0][0])
            elif equalities:
                dim = len(equalities[0][0])
            else:
                raise ValueError("dimension required for a free polyhedron")
        vertices, rays, lineality = _h_to_v(inequalities, equalities, dim)
        return cls._assemble(dim, vertices, rays, lineality)

    @classmethod
    def from_v(cls, points=(), rays=(), lineality=()):
        points = [tuple(Fraction(x) for x in p) for p in points]
        rays = [tuple(Fraction(x) for x in r) for r in rays]
        lineality = [tuple(Fraction(x) for x in l) for l in lineality]
        if not points:
            dims = {len(v) for v in list(rays) + list(lineality)}
            dim = dims.pop() if dims else 0
            return cls._assemble(dim, [], [], [])
        dim = len(points[0])
        # canonicalize through the facet description
        ineqs, eqs = _v_to_h(points, rays, lineality, dim)
        if not ineqs and not eqs:
            return cls._whole_space(dim)
        vertices, crays, clin = _h_to_v(ineqs, eqs, dim)
        return cls._assemble(dim, vertices, crays, clin, ineqs, eqs)

    @classmethod
    def _whole_space(cls, dim):
        self = object.__new__(cls)
        self.dim = dim
        self.empty = False
        self.vertices = ((Fraction(0),) * dim,)
        self.rays = ()
        self.lineality = tuple(
            tuple(Fraction(int(i == j)) for j in range(dim))
            for i in range(dim))
        self.inequalities = ()
        self.equalities = ()
        return self

    @classmethod
    def _assemble(cls, dim, vertices, rays, lineality, ineqs=None, eqs=None):
        self = object.__new__(cls)
        self.dim = dim
        if not vertices:
            self.empty = True
            self.vertices = ()
            self.rays = ()
            self.lineality = ()
            self.inequalities = ()
            self.equalities = ()
            return self
        self.empty = False
        self.vertices = tuple(sorted(tuple(Fraction(x) for x in v)
                                     for v in vertices))
        self.rays = tuple(sorted(tuple(Fraction(x) for x in r)
                                 for r in rays))
        self.lineality = tuple(sorted(tuple(Fraction(x) for x in l)
                                      for l in lineality))
        if ineqs is None:
            ineqs, eqs = _v_to_h(self.vertices, self.rays, self.lineality,
                                 dim)
        self.inequalities = tuple(ineqs)
        self.equalities = tuple(eqs)
        return self

    @property
    def is_bounded(self):
        return not self.empty and not self.rays and not self.lineality

    def contains(self, x, strict=False):
        x = tuple(Fraction(v) for v in x)
        for normal, rhs in self.equalities:
            if _dot(normal, x) != rhs:
                return False
        for normal, rhs in self.inequalities:
            val = _dot(normal, x)
            if val < rhs or (strict and val == rhs):
                return False
        return not self.empty

    def affine_dimension(self):
        if self.empty:
            return -1
        base = self.vertices[0]
        dirs = [tuple(v[i] - base[i] for i in range(self.dim))
                for v in self.vertices[1:]]
        dirs += [tuple(r) for r in self.rays]
        dirs += [tuple(l) for l in self.lineality]
        if not dirs:
            return 0
        red, pivots = rref(dirs)
        return len(pivots)

    def __eq__(self, other):
        if not isinstance(other, RationalPolyhedron):
            return NotImplemented
        return (self.dim == other.dim and self.empty == other.empty
                and sorted(self.vertices) == sorted(other.vertices)
                and sorted(self.rays) == sorted(other.rays)
                and sorted(self.lineality) == sorted(other.lineality))

    def to_json(self):
        return {
            "vertices": [[format_rational(x) for x in v]
                         for v in sorted(self.vertices)],
            "rays": [[format_rational(x) for x in r]
                     for r in sorted(self.rays)],
            "lineality": [[format_rational(x) for x in l]
                          for l in sorted(self.lineality)],
            "inequalities": [{"normal": [format_rational(x) for x in n],
                              "rhs": format_rational(b)}
                             for n, b in self.inequalities],
            "equalities": [{"normal": [format_rational(x) for x in n],
                            "rhs": format_rational(b)}
                           for n, b in self.equalities],
        }

    def __repr__(self):
        if self.empty:
            return "RationalPolyhedron<empty>"
        return (f"RationalPolyhedron<{len(self.vertices)} vertices, "
                f"{len(self.rays)} rays, dim {self.dim}>")


def _affine_coordinates(points):
    """Coordinates of the points in a rational basis of their affine span."""
    base = points[0]
    dirs = [tuple(Fraction(p[i]) - Fraction(base[i]) for i in range(len(base)))
            for p in points[1:]]
    red, pivots = rref(dirs)
    basis = red  # rows span the direction space
    coords = []
    for p in points:
        diff = [Fraction(p[i]) - Fraction(base[i]) for i in range(len(base))]
        # solve sum c_k basis_k = diff via the pivot columns
        c = [diff[pc] for pc in pivots]
        coords.append(tuple(c))
    return coords, basis, pivots


def triangulate(points):
    """Index triangulation of the convex hull of the given points."""
    points = [tuple(Fraction(x) for x in p) for p in points]
    uniq = sorted(set(points))
    if len(uniq) == 1:
        return [(0,)], uniq
    coords, _basis, _pivots = _affine_coordinates(uniq)
    q = len(coords[0])
    simplices = _triangulate_coords(coords)
    return simplices, uniq


def _triangulate_coords(coords):
    q = len(coords[0]) if coords else 0
    n = len(coords)
    if q == 0:
        return [(0,)]
    if n == q + 1:
        return [tuple(range(n))]
    hull = RationalPolyhedron.from_v(points=coords)
    apex = 0
    out = []
    for normal, rhs in hull.inequalities:
        if _dot(normal, coords[apex]) == rhs:
            continue  # facet contains the apex
        facet_idx = [i for i in range(n)
                     if _dot(normal, coords[i]) == rhs]
        facet_pts = [coords[i] for i in facet_idx]
        sub_coords, _b, _p = _affine_coordinates(facet_pts)
        for simplex in _triangulate_coords(sub_coords):
            out.append(tuple(sorted([facet_idx[i] for i in simplex] + [apex])))
    return sorted(set(out))


def _det(mat):
    mat = [list(map(Fraction, row)) for row in mat]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if mat[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for r in range(c + 1, n):
            if mat[r][c] != 0:
                f = mat[r][c] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
    return det


def normalized_volume(poly, lattice_dim):
    """Lattice-normalized volume (a unimodular simplex has volume 1).

    Equals lattice_dim! times the Euclidean volume measured in the
    intrinsic lattice of the affine span.
    """
    if poly.empty:
        return Fraction(0)
    if not poly.is_bounded:
        raise PreconditionError("volume needs a bounded polytope")
    q_actual = poly.affine_dimension()
    if lattice_dim == 0:
        return Fraction(1) if q_actual == 0 else Fraction(0)
    if q_actual < lattice_dim:
        return Fraction(0)
    if q_actual > lattice_dim:
        raise PreconditionError(
            f"polytope dimension {q_actual} exceeds requested {lattice_dim}")
    verts = list(poly.vertices)
    base = verts[0]
    dirs = [tuple(v[i] - base[i] for i in range(poly.dim))
            for v in verts[1:]]
    lattice = saturate_direction_lattice(dirs, poly.dim)
    # coordinates of each vertex in the intrinsic lattice basis
    lat_rows = [list(map(Fraction, l)) for l in lattice]
    coords = []
    for v in verts:
        diff = [v[i] - base[i] for i in range(poly.dim)]
        coords.append(_solve_in_span(lat_rows, diff))
    simplices, uniq = triangulate(coords)
    index = {p: i for i, p in enumerate(uniq)}
    total = Fraction(0)
    for simplex in simplices:
        pts = [uniq[i] for i in simplex]
        mat = [[pts[k][i] - pts[0][i] for i in range(len(pts[0]))]
               for k in range(1, len(pts))]
        total += abs(_det(mat))
    return total


def _solve_in_span(basis_rows, target):
    """Coefficients expressing target in the rows of basis_rows."""
    k = len(basis_rows)
    n = len(target)
    aug = [[basis_rows[i][j] for i in range(k)] + [Fraction(target[j])]
           for j in range(n)]
    red, pivots = rref(aug)
    coeffs = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        if pc == k:
            raise ValueError("target outside the span")
        coeffs[pc] = red[r][k]
    return tuple(coeffs)


def euclidean_volume(poly, lattice_dim):
    nv = normalized_volume(poly, lattice_dim)
    fact = 1
    for i in range(2, lattice_dim + 1):
        fact *= i
    return nv / fact


# --- algebra-facing operations ---------------------------------------------

def _require_khovanskii(ctx):
    from .valuation import khovanskii_test
    if not khovanskii_test(ctx):
        raise PreconditionError("context is not a Khovanskii basis; the "
                                "cone over the generator values is wrong")


def newton_okounkov_cone(ctx):
    """Cone over the generator value vectors (columns of the contraction)."""
    _require_khovanskii(ctx)
    cols = _value_columns(ctx)
    r = len(cols[0])
    origin = (Fraction(0),) * r
    return RationalPolyhedron.from_v(points=[origin], rays=cols)


def _value_columns(ctx):
    vm = ctx.value_matrix() if ctx.mode == "sagbi" else ctx.iota
    ncols = len(vm[0])
    return [tuple(vm[k][j] for k in range(len(vm))) for j in range(ncols)]


def newton_okounkov_body(ctx):
    """Slice of the cone at first coordinate -1, projected to the rest."""
    _require_khovanskii(ctx)
    cols = _value_columns(ctx)
    if any(col[0] != -1 for col in cols):
        raise PreconditionError(
            "body needs degree-1 generators: every value column must have "
            "first coordinate -1")
    pts = [col[1:] for col in cols]
    return RationalPolyhedron.from_v(points=pts)


def hilbert_function(ctx, max_degree):
    """Dimensions of the graded pieces, by standard-monomial count."""
    if ctx.mode != "presentation":
        raise PreconditionError("Hilbert function needs a presentation")
    if not all(g.is_homogeneous() for g in ctx.gb.basis):
        raise PreconditionError("ideal is not homogeneous")
    counts = [0] * (max_degree + 1)
    for e in standard_monomials(ctx.gb, max_degree):
        counts[sum(e)] += 1
    return counts


def compactification_body(ctx, delta):
    """The region of the value cone squeezed between 0 and delta."""
    cone = newton_okounkov_cone(ctx)
    delta = tuple(Fraction(x) for x in delta)
    r = cone.dim
    if len(delta) != r:
        raise PreconditionError("delta has the wrong length")
    if not cone.contains(delta, strict=True):
        raise PreconditionError("delta must lie in the relative interior "
                                "of the value cone")
    ineqs = list(cone.inequalities)
    eqs = list(cone.equalities)
    for i in range(r):
        unit = tuple(Fraction(int(j == i)) for j in range(r))
        ineqs.append((tuple(-x for x in unit), Fraction(0)))  # r_i <= 0
        ineqs.append((unit, delta[i]))                         # r_i >= delta_i
    return RationalPolyhedron.from_h(ineqs, eqs, r)


def compactification_semigroup_contains(ctx, delta, level, vector):
    """Membership in the Rees-type semigroup: vector in S and >= level*delta."""
    from .valuation import value_semigroup
    sg = value_semigroup(ctx)
    delta = tuple(Fraction(x) for x in delta)
    vector = tuple(Fraction(x) for x in vector)
    if any(v < level * d for v, d in zip(vector, delta)):
        return False
    return sg.contains(vector)


def hat_polytope(ctx, delta):
    """{a >= 0 : (contraction matrix) a >= delta}; bounded by construction
    when the degree row is all -1."""
    _require_khovanskii(ctx)
    vm = ctx.value_matrix() if ctx.mode == "sagbi" else ctx.iota
    delta = tuple(Fraction(x) for x in delta)
    if len(delta) != len(vm):
        raise PreconditionError("delta has the wrong length")
    cone = newton_okounkov_cone(ctx)
    if not cone.contains(delta, strict=True):
        raise PreconditionError("delta must lie in the relative interior "
                                "of the value cone")
    n = len(vm[0])
    ineqs = []
    for i in range(n):
        unit = tuple(Fraction(int(j == i)) for j in range(n))
        ineqs.append((unit, Fraction(0)))
    for k in range(len(vm)):
        ineqs.append((tuple(Fraction(x) for x in vm[k]), delta[k]))
    poly = RationalPolyhedron.from_h(ineqs, (), n)
    if not poly.is_bounded:
        raise PreconditionError("hat polytope is unbounded: the weight "
                                "matrix does not bound the orthant")
    return poly


def rees_graded_dims(ctx, sigma, levels, degree_bound=8):
    """Counts of standard monomials with prescribed row values.

    For each level vector r' (indexed by the rows in sigma) the W count is
    the number of standard monomials alpha of degree <= degree_bound with
    row_i . alpha = r'_i for all i in sigma; the F count uses >= instead.
    """
    if ctx.mode != "presentation":
        raise PreconditionError("graded dimensions need a presentation")
    sigma = list(sigma)
    rows = [ctx.matrix[i] for i in sigma]
    table = {}
    monomials = standard_monomials(ctx.gb, degree_bound)
    for level in levels:
        level = tuple(Fraction(x) for x in level)
        if len(level) != len(sigma):
            raise PreconditionError("level length must match sigma")
        w_count = 0
        f_count = 0
        for e in monomials:
            vals = tuple(weight_of_monomial([row], e)[0] for row in rows)
            if vals == level:
                w_count += 1
            if all(v >= l for v, l in zip(vals, level)):
                f_count += 1
        table[level] = {"W": w_count, "F": f_count}
    return table
