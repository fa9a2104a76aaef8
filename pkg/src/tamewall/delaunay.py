"""Delaunay machinery: circumscribed quadrics, exact cell verification,
cell location by cutting planes, simplex volumes, the two triangulations
of a circuit, level vectors, and lattice perturbations that isolate a
chosen sub-polytope of a cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import kernels, linalg, lp
from .enumeration import closest_vectors, lattice_points_in_ellipsoid
from .forms import QuadraticForm
from .linalg import RationalMatrix, _frac
from .vecset import canonical_set, dot, sub


class NonGenericPointError(ValueError):
    """Query point lies on a face of the tiling; carries the face's vertices."""

    def __init__(self, face_vertices):
        super().__init__(
            "non-generic point: it lies on a face with vertices "
            + ", ".join(str(v) for v in face_vertices)
        )
        self.face_vertices = tuple(face_vertices)


@dataclass(frozen=True)
class CircumscribedQuadric:
    status: str  # 'ok' | 'inconsistent'
    center: tuple | None = None
    r2: Fraction | None = None
    underdetermined: bool = False


@dataclass(frozen=True)
class DelaunayCertificate:
    """Exact verdict that a point set is a full Delaunay cell of a form."""

    vertices: tuple
    center: tuple | None
    r2: Fraction | None
    verdict: bool
    cospherical: bool = True
    offending_interior: tuple | None = None
    missing_boundary: tuple | None = None
    proper_subface: bool = False

    def to_json(self):
        def frac(x):
            return f"{x.numerator}/{x.denominator}" if x is not None else None

        return {
            "vertices": [list(v) for v in self.vertices],
            "center": [frac(c) for c in self.center] if self.center else None,
            "r2": frac(self.r2),
            "verdict": self.verdict,
            "cospherical": self.cospherical,
            "offending_interior": list(self.offending_interior) if self.offending_interior else None,
            "missing_boundary": list(self.missing_boundary) if self.missing_boundary else None,
            "proper_subface": self.proper_subface,
        }


@dataclass(frozen=True)
class InhomogeneousQuadratic:
    """phi(x) = x.A.x + b.x + c with exact rational coefficients."""

    quadratic: QuadraticForm
    linear: tuple
    constant: Fraction

    def evaluate(self, x):
        return (
            self.quadratic.evaluate(x)
            + sum(b * xi for b, xi in zip(self.linear, x))
            + self.constant
        )

    def completed_square(self):
        """(center m, r2) with phi(x) = A(x - m) - r2."""
        g = self.quadratic.gram
        sol = linalg.solve(g, [-b / 2 for b in self.linear])
        if not sol.is_unique:
            raise ValueError("quadratic part is singular")
        m = sol.particular
        r2 = self.quadratic.evaluate(m) - self.constant
        return m, r2

    @classmethod
    def from_circumsphere(cls, f: QuadraticForm, center, r2):
        center = tuple(_frac(c) for c in center)
        gc = f.gram.matvec(center)
        linear = tuple(-2 * x for x in gc)
        const = f.evaluate(center) - _frac(r2)
        return cls(f, linear, const)


@dataclass(frozen=True)
class PerturbationReport:
    phi: InhomogeneousQuadratic | None
    verdict: bool
    boundary: tuple
    interior: tuple
    failure_reason: str | None = None
    level_vectors: dict | None = None


@dataclass(frozen=True)
class RadonTriangulations:
    """The two triangulations of a circuit on n+2 points."""

    dependence: tuple  # primitive integer coefficients, input order
    plus_part: tuple
    minus_part: tuple
    cells_plus: tuple  # triangulation indexed by the plus part
    cells_minus: tuple
    volumes_plus: tuple
    volumes_minus: tuple


def _affine_rank(points):
    pts = [tuple(p) for p in points]
    base = pts[0]
    rows = [list(sub(p, base)) for p in pts[1:]]
    if not rows:
        return 0
    return linalg.rank(RationalMatrix(rows))


def circumscribed_quadric(f: QuadraticForm, points) -> CircumscribedQuadric:
    """Center and squared radius of the quadric through the points, if any.

    Solves 2(v_i - v_0).G.c = f(v_i) - f(v_0) exactly; an overdetermined
    inconsistent system is a reported outcome, not an error.
    """
    pts = canonical_set(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    v0 = pts[0]
    rows = []
    rhs = []
    f0 = f.evaluate(v0)
    for v in pts[1:]:
        d = sub(v, v0)
        rows.append([2 * x for x in f.gram.matvec(d)])
        rhs.append(f.evaluate(v) - f0)
    sol = linalg.solve(RationalMatrix(rows), rhs)
    if sol.kind == "inconsistent":
        return CircumscribedQuadric("inconsistent")
    center = sol.particular
    r2 = f.evaluate([a - b for a, b in zip(v0, center)])
    return CircumscribedQuadric("ok", tuple(center), r2, underdetermined=sol.kind == "affine")


def is_delaunay_cell(f: QuadraticForm, points, allow_large=False) -> DelaunayCertificate:
    """Exact Delaunay-cell certificate.

    True iff the points are co-spherical under f, the circumscribed
    ellipsoid is empty, and the point list is the complete boundary set.
    A strict subset of the boundary is flagged as a proper subface.
    """
    pts = canonical_set(points)
    n = f.n
    if _affine_rank(pts) != n:
        raise ValueError("point set must affinely span the space")
    quad = circumscribed_quadric(f, pts)
    if quad.status != "ok":
        return DelaunayCertificate(pts, None, None, False, cospherical=False)
    report = lattice_points_in_ellipsoid(f, quad.center, quad.r2, allow_large=allow_large)
    if report.interior:
        return DelaunayCertificate(
            pts, quad.center, quad.r2, False, offending_interior=report.interior[0]
        )
    boundary = set(report.boundary)
    missing = sorted(boundary - set(pts))
    if missing:
        return DelaunayCertificate(
            pts,
            quad.center,
            quad.r2,
            False,
            missing_boundary=missing[0],
            proper_subface=set(pts) < boundary,
        )
    return DelaunayCertificate(pts, quad.center, quad.r2, True)


def relative_volume(points) -> int:
    """|det| of the edge matrix of a lattice simplex on n+1 points."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    if len(pts) != n + 1:
        raise ValueError(f"a simplex in dimension {n} needs exactly {n + 1} points")
    base = pts[0]
    rows = [list(sub(p, base)) for p in pts[1:]]
    return abs(kernels.det_int(rows))


def delaunay_cell_containing(f: QuadraticForm, point, allow_large=False):
    """Vertex set of the Delaunay cell of f containing a generic point.

    Cutting planes: maximize l(t) over affine l with l(v) <= f(v) for all
    lattice v, generating violated constraints through the closest-vector
    oracle.  The LP is seeded with the corners of the unit box around the
    point, which makes it bounded from the first iteration.  A query point
    on a lower-dimensional face raises NonGenericPointError carrying the
    face's vertex set.
    """
    n = f.n
    t = tuple(_frac(c) for c in point)
    if len(t) != n:
        raise ValueError("point dimension mismatch")
    if n > 10 and not allow_large:
        raise ValueError("cell location uses 2^n seed constraints; pass allow_large=True beyond n=10")
    ginv = linalg.inverse(f.gram)

    base = [c.numerator // c.denominator for c in t]
    constraints = {}
    for corner in itertools.product((0, 1), repeat=n):
        v = tuple(b + d for b, d in zip(base, corner))
        constraints[v] = None
    while True:
        rows = []
        for v in constraints:
            rows.append(([*map(Fraction, v), Fraction(1)], f.evaluate(v)))
        res = lp.lp_solve(objective=[*t, Fraction(1)], less_equal=rows, num_vars=n + 1)
        assert res.status == "optimal", f"cell LP unexpectedly {res.status}"
        g = res.witness[:n]
        h = res.witness[n]
        m = ginv.matvec([x / 2 for x in g])
        d2, pts = closest_vectors(f, m, allow_large=allow_large)
        mu = d2 - (f.evaluate(m) + h)
        if mu < 0:
            new = [p for p in pts if p not in constraints]
            assert new, "separation oracle failed to add a violated constraint"
            for p in new:
                constraints[p] = None
            continue
        assert mu == 0, "optimal support function must touch the lattice lift"
        vertices = canonical_set(pts)
        break

    if _affine_rank(vertices) != n or not _in_relative_interior(vertices, t):
        raise NonGenericPointError(_minimal_face(vertices, t))
    return vertices


def _in_relative_interior(vertices, t):
    """t admits a convex representation with all weights positive."""
    k = len(vertices)
    n = len(t)
    eqs = [([Fraction(v[i]) for v in vertices], t[i]) for i in range(n)]
    eqs.append(([Fraction(1)] * k, Fraction(1)))
    # maximize delta with lambda_u >= delta: variables (lambda_1..k, delta)
    eqs = [(row + [Fraction(0)], rhs) for row, rhs in eqs]
    leqs = []
    for idx in range(k):
        row = [Fraction(0)] * (k + 1)
        row[idx] = Fraction(-1)
        row[k] = Fraction(1)
        leqs.append((row, Fraction(0)))
    obj = [Fraction(0)] * k + [Fraction(1)]
    res = lp.lp_solve(objective=obj, equalities=eqs, less_equal=leqs, num_vars=k + 1)
    return res.status == "optimal" and res.optimum > 0


def _minimal_face(vertices, t):
    """Vertices that can carry positive weight in a convex representation."""
    k = len(vertices)
    n = len(t)
    eqs = [([Fraction(v[i]) for v in vertices], t[i]) for i in range(n)]
    eqs.append(([Fraction(1)] * k, Fraction(1)))
    nonneg = []
    for idx in range(k):
        row = [Fraction(0)] * k
        row[idx] = Fraction(-1)
        nonneg.append((row, Fraction(0)))
    face = []
    for idx in range(k):
        obj = [Fraction(0)] * k
        obj[idx] = Fraction(1)
        res = lp.lp_solve(objective=obj, equalities=eqs, less_equal=nonneg, num_vars=k)
        if res.status == "optimal" and res.optimum > 0:
            face.append(vertices[idx])
    return tuple(face)


def radon_triangulations(points) -> RadonTriangulations:
    """The two triangulations T_+ and T_- of a circuit on n+2 points.

    Computes the unique affine dependence, splits the points by its sign,
    and triangulates by dropping one point of the respective part.
    """
    pts = [tuple(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    n = len(pts[0])
    if len(pts) != n + 2:
        raise ValueError(f"a circuit in dimension {n} needs exactly {n + 2} points")
    if _affine_rank(pts) != n:
        raise ValueError("points must affinely span the space")
    rows = [[Fraction(p[i]) for p in pts] for i in range(n)]
    rows.append([Fraction(1)] * len(pts))
    kernel = linalg.nullspace(RationalMatrix(rows))
    if len(kernel) != 1:
        raise ValueError("points do not form a circuit (dependence not unique)")
    mult = lcm(*(x.denominator for x in kernel[0]))
    lam = [int(x * mult) for x in kernel[0]]
    g = gcd(*(abs(x) for x in lam))
    lam = [x // g for x in lam]
    first = next((x for x in lam if x != 0), 0)
    if first < 0:
        lam = [-x for x in lam]
    if any(x == 0 for x in lam):
        raise ValueError("points do not form a circuit (a point is affinely redundant)")

    plus = [pts[i] for i in range(len(pts)) if lam[i] > 0]
    minus = [pts[i] for i in range(len(pts)) if lam[i] < 0]

    def triangulate(part):
        cells = []
        vols = []
        for drop in part:
            cell = tuple(p for p in pts if p != drop)
            cells.append(cell)
            vols.append(relative_volume(cell))
        return tuple(cells), tuple(vols)

    cells_p, vols_p = triangulate(plus)
    cells_m, vols_m = triangulate(minus)
    return RadonTriangulations(
        tuple(lam), tuple(plus), tuple(minus), cells_p, cells_m, vols_p, vols_m
    )


_LEVEL_CACHE = {}


def _level_dfs(diffs, n, box):
    """First integer p in a small-magnitude-first order with all products
    in [1, 2]; products are integers, so the range forces {1, 2}."""
    suffix = []
    for d in diffs:
        s = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            s[i] = s[i + 1] + abs(d[i])
        suffix.append(s)
    candidates = [0]
    for mag in range(1, box + 1):
        candidates += [mag, -mag]
    p = [0] * n

    def rec(i, partial):
        if i == n:
            return all(1 <= s <= 2 for s in partial)
        for cand in candidates:
            nxt = []
            ok = True
            for k, d in enumerate(diffs):
                s = partial[k] + d[i] * cand
                slack = box * suffix[k][i + 1]
                if s + slack < 1 or s - slack > 2:
                    ok = False
                    break
                nxt.append(s)
            if ok:
                p[i] = cand
                if rec(i + 1, nxt):
                    return True
        p[i] = 0
        return False

    if rec(0, [0] * len(diffs)):
        return tuple(p)
    return None


def _level_via_lp_box(diffs, n, box_limit):
    """Authoritative fallback: exact LP bounds on each coordinate of the
    relaxed polytope {1 <= d.p <= 2}, then an exhaustive integer scan of
    the (clamped) box."""
    rows = []
    for d in diffs:
        rows.append(([Fraction(x) for x in d], Fraction(2)))  # d.p <= 2
        rows.append(([Fraction(-x) for x in d], Fraction(-1)))  # d.p >= 1
    lo = [0] * n
    hi = [0] * n
    for i in range(n):
        obj = [Fraction(0)] * n
        obj[i] = Fraction(1)
        res_max = lp.lp_solve(objective=obj, less_equal=rows, num_vars=n)
        if res_max.status == "infeasible":
            return None
        res_min = lp.lp_solve(objective=obj, less_equal=rows, num_vars=n, maximize=False)
        hi[i] = min(_floor(res_max.optimum), box_limit) if res_max.status == "optimal" else box_limit
        lo[i] = max(_ceil(res_min.optimum), -box_limit) if res_min.status == "optimal" else -box_limit
        if lo[i] > hi[i]:
            return None
    box = max(box_limit, *(abs(x) for x in lo), *(abs(x) for x in hi))
    return _level_dfs(diffs, n, box)


def find_level_vector(v, cell, box_limit=8):
    """Integer p with (u - v).p in {1, 2} for every other cell vertex u.

    A propagation-pruned integer search over growing boxes finds small
    solutions quickly; if it misses, exact LP bounds on the relaxation
    delimit the final exhaustive box.  Returns the first solution in a
    deterministic small-magnitude-first order, or None (reported
    honestly; existence is only asserted for the two-distance cell).
    """
    v = tuple(v)
    cell_pts = canonical_set(cell)
    if v not in cell_pts:
        raise ValueError("vertex must belong to the cell")
    key = (v, cell_pts, box_limit)
    if key in _LEVEL_CACHE:
        return _LEVEL_CACHE[key]
    diffs = sorted({sub(u, v) for u in cell_pts if u != v})
    if not diffs:
        raise ValueError("cell has no other vertex")
    n = len(v)
    result = _level_dfs(diffs, n, 2)
    if result is None and box_limit > 2:
        result = _level_dfs(diffs, n, min(4, box_limit))
    if result is None:
        result = _level_via_lp_box(diffs, n, box_limit)
    _LEVEL_CACHE[key] = result
    return result


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def perturbation_check(
    f: QuadraticForm,
    phi_const: InhomogeneousQuadratic,
    cell,
    subset,
    alpha,
    level_vectors=None,
    allow_large=False,
) -> PerturbationReport:
    """Perturb a vanishing quadratic so a chosen sub-polytope becomes a cell.

    phi = phi_const + alpha * sum over excluded vertices v of
    ((x - v).p_v - 1)((x - v).p_v - 2).  Each term is nonnegative on the
    lattice and vanishes on every cell vertex except v, so the zero set
    of phi on the lattice should shrink to exactly the subset; that is
    verified by exact enumeration, and the verdict reports it.
    """
    alpha = _frac(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    cell_pts = canonical_set(cell)
    sub_pts = canonical_set(subset)
    if not sub_pts:
        raise ValueError("subset must be nonempty")
    if not set(sub_pts) <= set(cell_pts):
        raise ValueError("subset must consist of cell vertices")
    if phi_const.quadratic.gram != f.gram:
        raise ValueError("phi_const must have the given form as quadratic part")
    bad = [u for u in cell_pts if phi_const.evaluate(u) != 0]
    if bad:
        raise ValueError(f"phi_const does not vanish on cell vertex {bad[0]}")

    n = f.n
    outside = [u for u in cell_pts if u not in set(sub_pts)]
    levels = dict(level_vectors or {})
    for u in outside:
        if u not in levels:
            levels[u] = find_level_vector(u, cell_pts)
        if levels[u] is None:
            return PerturbationReport(
                None, False, (), (), failure_reason=f"no level vector for vertex {u}"
            )

    gram_rows = [list(r) for r in f.gram.rows()]
    linear = list(phi_const.linear)
    const = phi_const.constant
    for u in outside:
        p = levels[u]
        pv = dot(p, u)
        for i in range(n):
            if p[i]:
                for j in range(n):
                    if p[j]:
                        gram_rows[i][j] += alpha * p[i] * p[j]
        coeff = -2 * pv - 3
        for i in range(n):
            linear[i] += alpha * coeff * p[i]
        const += alpha * (pv * pv + 3 * pv + 2)

    phi = InhomogeneousQuadratic(QuadraticForm(RationalMatrix(gram_rows)), tuple(linear), const)
    if not phi.quadratic.is_positive_definite:
        return PerturbationReport(phi, False, (), (), failure_reason="quadratic part not PD")
    center, r2 = phi.completed_square()
    if r2 < 0:
        return PerturbationReport(phi, False, (), (), failure_reason="empty sublevel set")
    report = lattice_points_in_ellipsoid(phi.quadratic, center, r2, allow_large=allow_large)
    verdict = not report.interior and report.boundary == sub_pts
    return PerturbationReport(
        phi, verdict, report.boundary, report.interior, level_vectors={u: levels[u] for u in outside}
    )
