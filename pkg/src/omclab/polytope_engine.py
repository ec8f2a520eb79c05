"""Exact V-polytope machinery over Q.

Polytopes are given by exact rational vertex lists.  Facet enumeration is
an exhaustive search over vertex subsets spanning candidate hyperplanes
inside the affine hull; it is dependency-free and exact, and is meant for
desk-scale instances (dimension up to ~6, a few dozen vertices), not for
general-purpose convex-hull performance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, comb, floor, lcm
from typing import Iterable, Sequence

from .errors import GuardError
from .exact_core import (
    RatMatrix,
    affine_solution_space,
    kernel_basis_ints,
    primitive_inequality,
    solve_linear,
)
from .oriented_matroid import CircuitSet

__all__ = [
    "VPolytope",
    "HRep",
    "FaceRecord",
    "EhrhartData",
    "omc_polytope",
    "certify_vertices",
    "dimension",
    "facets",
    "face_lattice",
    "f_vector",
    "lattice_count",
    "ehrhart",
    "polar_dual",
    "fixed_subpolytope",
    "is_centrally_symmetric",
    "zonotope",
    "extreme_points",
    "DEFAULT_FACE_DIM_LIMIT",
]

DEFAULT_FACE_DIM_LIMIT = 6

Point = tuple[Fraction, ...]


def _pt(values: Sequence) -> Point:
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in values)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


class VPolytope:
    """Polytope given by an irredundant list of exact rational vertices.

    Constructors in this module only list true vertices; certify_vertices
    and the facet machinery can re-check that claim.
    """

    __slots__ = ("ambient_dim", "vertices", "_frame", "_facet_cache")

    def __init__(self, ambient_dim: int, vertices: Iterable[Sequence]) -> None:
        vs = sorted({_pt(v) for v in vertices})
        if not vs:
            raise ValueError("a polytope needs at least one vertex")
        if any(len(v) != ambient_dim for v in vs):
            raise ValueError("vertex length does not match ambient dimension")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "vertices", tuple(vs))
        object.__setattr__(self, "_frame", None)
        object.__setattr__(self, "_facet_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("VPolytope is immutable; caches are internal")

    def _set_cache(self, name, value):
        object.__setattr__(self, name, value)

    @property
    def vertex_set(self) -> frozenset[Point]:
        return frozenset(self.vertices)

    def dimension(self) -> int:
        return len(_frame_of(self).basis)

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def __eq__(self, other) -> bool:
        return (isinstance(other, VPolytope)
                and self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self) -> str:
        return f"VPolytope(dim={self.dimension()}, {len(self.vertices)} vertices in R^{self.ambient_dim})"


@dataclass(frozen=True)
class HRep:
    """Exact halfspace description: a.x <= b inequalities plus equations."""

    ambient_dim: int
    inequalities: tuple[tuple[tuple[int, ...], Fraction], ...]
    equations: tuple[tuple[tuple[int, ...], Fraction], ...]

    def contains(self, point: Sequence) -> bool:
        p = _pt(point)
        if len(p) != self.ambient_dim:
            return False
        return (all(_dot(a, p) == b for a, b in self.equations)
                and all(_dot(a, p) <= b for a, b in self.inequalities))


@dataclass(frozen=True)
class FaceRecord:
    """A face, by dimension and the indices of the vertices lying on it."""

    dim: int
    vertex_indices: tuple[int, ...]


@dataclass(frozen=True)
class EhrhartData:
    """Lattice counts of dilates, the interpolating polynomial, and h*."""

    counts: tuple[int, ...]
    polynomial: tuple[Fraction, ...]
    h_star: tuple[int, ...]

    def evaluate(self, t: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.polynomial):
            acc = acc * t + c
        return acc


@dataclass(frozen=True)
class _Frame:
    """Affine-hull data: origin, spanning basis, equations, scaled local coords."""

    origin: Point
    basis: tuple[Point, ...]
    equations: tuple[tuple[tuple[int, ...], Fraction], ...]
    local_scaled: tuple[tuple[int, ...], ...]
    scale: int


def _invert_square(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


def _frame_of(P: VPolytope) -> _Frame:
    if P._frame is not None:
        return P._frame
    d = P.ambient_dim
    v0 = P.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, v0)) for v in P.vertices[1:]]

    echelon: list[tuple[int, list[Fraction]]] = []
    basis: list[Point] = []
    for dvec in diffs:
        row = list(dvec)
        for pc, erow in echelon:
            if row[pc]:
                f = row[pc]
                row = [a - f * b for a, b in zip(row, erow)]
        pivot = next((i for i, x in enumerate(row) if x), None)
        if pivot is not None:
            inv = 1 / row[pivot]
            echelon.append((pivot, [x * inv for x in row]))
            basis.append(dvec)
    k = len(basis)

    if diffs:
        den = [lcm(*(x.denominator for x in row)) for row in diffs]
        int_rows = [[int(x * m) for x in row] for row, m in zip(diffs, den)]
        normals = kernel_basis_ints(int_rows, d)
    else:
        normals = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    equations = tuple((a, Fraction(_dot(a, v0))) for a in normals)

    if k:
        # invert a k x k block of independent coordinate rows of the basis
        brows = [[basis[j][i] for j in range(k)] for i in range(d)]
        chosen: list[int] = []
        ech2: list[tuple[int, list[Fraction]]] = []
        for i, row in enumerate(brows):
            work = list(row)
            for pc, erow in ech2:
                if work[pc]:
                    f = work[pc]
                    work = [a - f * b for a, b in zip(work, erow)]
            pivot = next((j for j, x in enumerate(work) if x), None)
            if pivot is not None:
                inv = 1 / work[pivot]
                ech2.append((pivot, [x * inv for x in work]))
                chosen.append(i)
                if len(chosen) == k:
                    break
        binv = _invert_square([[basis[j][i] for j in range(k)] for i in chosen])
        local = []
        for v in P.vertices:
            rhs = [v[i] - v0[i] for i in chosen]
            local.append(tuple(_dot(binv[r], rhs) for r in range(k)))
    else:
        local = [() for _ in P.vertices]

    scale = lcm(*(y.denominator for pt in local for y in pt)) if k else 1
    local_scaled = tuple(tuple(int(y * scale) for y in pt) for pt in local)
    frame = _Frame(v0, tuple(basis), equations, local_scaled, scale)
    P._set_cache("_frame", frame)
    return frame


def dimension(P: VPolytope) -> int:
    """Dimension of the polytope: rank of the vertex difference set."""
    return P.dimension()


def _local_facets(points: Sequence[tuple[int, ...]], k: int):
    """Facets of conv(points) in k-dim integer coordinates.

    Candidate hyperplanes are spanned by affinely independent k-subsets;
    a candidate is a facet exactly when every point lies weakly on one
    side.  Returns (outward normal, offset, tight index set) triples.
    """
    m = len(points)
    seen: set[tuple[tuple[int, ...], int]] = set()
    out = []
    for S in combinations(range(m), k):
        base = points[S[0]]
        rows = [[p - q for p, q in zip(points[s], base)] for s in S[1:]]
        kern = kernel_basis_ints(rows, k)
        if len(kern) != 1:
            continue
        a = kern[0]
        b = _dot(a, base)
        if (a, b) in seen:
            continue
        seen.add((a, b))
        vals = [_dot(a, p) for p in points]
        if all(v <= b for v in vals):
            normal, offset = a, b
        elif all(v >= b for v in vals):
            normal, offset = tuple(-x for x in a), -b
        else:
            continue
        tight = frozenset(i for i, v in enumerate(vals) if v == b)
        out.append((normal, offset, tight))
    return out


def _facet_data(P: VPolytope):
    """Ambient facet inequalities with their tight vertex index sets."""
    if P._facet_cache is not None:
        return P._facet_cache
    frame = _frame_of(P)
    k = len(frame.basis)
    if k < 1:
        raise ValueError("facet enumeration requires dimension >= 1")
    local = _local_facets(frame.local_scaled, k)

    d = P.ambient_dim
    bt = RatMatrix.from_rows([[frame.basis[j][i] for i in range(d)] for j in range(k)])
    data = []
    for a_loc, b_loc, tight in local:
        ambient = solve_linear(bt, a_loc)
        if ambient is None:  # cannot happen: basis rows are independent
            raise AssertionError("facet normal lift failed")
        offset = _dot(ambient, frame.origin) + Fraction(b_loc, frame.scale)
        a_int, b = primitive_inequality(ambient, offset)
        data.append((a_int, b, tight))
    data.sort(key=lambda item: (item[0], item[1]))
    P._set_cache("_facet_cache", tuple(data))
    return P._facet_cache


def facets(P: VPolytope) -> HRep:
    """Exact halfspace description: affine-hull equations plus one primitive
    integer inequality per facet."""
    data = _facet_data(P)
    frame = _frame_of(P)
    ineqs = tuple((a, b) for a, b, _ in data)
    eqs = tuple(sorted(frame.equations))
    return HRep(P.ambient_dim, ineqs, eqs)


def omc_polytope(C: CircuitSet) -> VPolytope:
    """Convex hull of the signed incidence vectors of all circuits.

    Every incidence vector is a vertex, so no hull reduction is needed.
    """
    if len(C) == 0:
        raise ValueError("no circuits: the circuit polytope needs a nonempty circuit set")
    return VPolytope(C.ground_size, [X.sign_vector() for X in C])


def certify_vertices(P: VPolytope) -> bool:
    """Certify each listed point as a vertex using the point itself as the
    maximizing functional; complete for circuit polytopes."""
    for i, v in enumerate(P.vertices):
        vv = _dot(v, v)
        for j, w in enumerate(P.vertices):
            if i != j and _dot(v, w) >= vv:
                return False
    return True


def is_centrally_symmetric(P: VPolytope) -> bool:
    """True iff the vertex set is closed under negation."""
    vs = P.vertex_set
    return all(tuple(-x for x in v) in vs for v in vs)


def face_lattice(P: VPolytope, max_dim: int | None = None) -> list[FaceRecord]:
    """All nonempty faces, including P itself, as vertex index sets.

    Faces are generated by closing the facet-vertex incidence sets under
    intersection.  Guarded to dimension max_dim (default 6).
    """
    limit = DEFAULT_FACE_DIM_LIMIT if max_dim is None else max_dim
    k = P.dimension()
    if k > limit:
        raise GuardError(f"face lattice guarded to dimension <= {limit}, got {k}")
    everything = frozenset(range(len(P.vertices)))
    if k == 0:
        return [FaceRecord(0, (0,))]
    tights = [t for _, _, t in _facet_data(P)]
    faces = {everything}
    queue = [everything]
    while queue:
        current = queue.pop()
        for t in tights:
            meet = current & t
            if meet and meet not in faces:
                faces.add(meet)
                queue.append(meet)

    frame = _frame_of(P)
    records = []
    for face in faces:
        idx = sorted(face)
        base = frame.local_scaled[idx[0]]
        rows = [[a - b for a, b in zip(frame.local_scaled[i], base)] for i in idx[1:]]
        dim = k - len(kernel_basis_ints(rows, k)) if rows else 0
        records.append(FaceRecord(dim, tuple(idx)))
    records.sort(key=lambda r: (r.dim, r.vertex_indices))
    return records


def f_vector(P: VPolytope, max_dim: int | None = None) -> tuple[int, ...]:
    """Face counts by dimension, including P itself as its top face."""
    records = face_lattice(P, max_dim)
    counts = [0] * (P.dimension() + 1)
    for r in records:
        counts[r.dim] += 1
    return tuple(counts)


def lattice_count(P: VPolytope, t: int) -> int:
    """Number of integer points in the dilate tP, counted exactly.

    The affine-hull equations are triangularized so that only the free
    coordinates are scanned over the integer bounding box; pivot
    coordinates are back-substituted and checked for integrality, then the
    facet inequalities are tested exactly.
    """
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    if t == 0:
        return 1
    d = P.ambient_dim
    if P.dimension() == 0:
        v = P.vertices[0]
        return 1 if all((t * x).denominator == 1 for x in v) else 0
    hrep = facets(P)

    eq_rows = [list(a) for a, _ in hrep.equations]
    eq_rhs = [t * b for _, b in hrep.equations]
    if eq_rows:
        solved = _triangular_equations(eq_rows, eq_rhs, d)
        if solved is None:
            return 0
        pivots, exprs = solved
    else:
        pivots, exprs = [], {}
    free = [j for j in range(d) if j not in pivots]

    bounds = []
    for j in free:
        values = [v[j] for v in P.vertices]
        lo = ceil(t * min(values))
        hi = floor(t * max(values))
        if lo > hi:
            return 0
        bounds.append(range(lo, hi + 1))

    ineqs = [(a, t * b) for a, b in hrep.inequalities]
    count = 0
    point = [Fraction(0)] * d
    for assignment in product(*bounds):
        for j, val in zip(free, assignment):
            point[j] = val
        ok = True
        for p in pivots:
            const, lincoef = exprs[p]
            val = const
            for j, c in lincoef:
                if c:
                    val += c * point[j]
            if isinstance(val, Fraction) and val.denominator != 1:
                ok = False
                break
            point[p] = val
        if not ok:
            continue
        if all(_dot(a, point) <= b for a, b in ineqs):
            count += 1
    return count


def _triangular_equations(rows: list[list], rhs: list, d: int):
    """RREF the equation system; returns (pivot columns, expressions) where
    each pivot variable is an affine function of the free variables."""
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    m = len(aug)
    pivots: list[int] = []
    r = 0
    for c in range(d):
        k = next((i for i in range(r, m) if aug[i][c]), None)
        if k is None:
            continue
        aug[r], aug[k] = aug[k], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][d]:
            return None  # inconsistent
    pivot_set = set(pivots)
    exprs = {}
    for i, p in enumerate(pivots):
        lin = [(j, -aug[i][j]) for j in range(d) if j not in pivot_set and aug[i][j]]
        exprs[p] = (aug[i][d], lin)
    return pivots, exprs


def ehrhart(P: VPolytope) -> EhrhartData:
    """Ehrhart counts at t = 0..dim, the interpolating polynomial, and h*.

    Requires a lattice polytope; fixed subpolytopes with fractional
    vertices are refused rather than treated quasi-polynomially.
    """
    if not P.is_lattice():
        raise ValueError("Ehrhart interpolation requires integer vertices")
    d = P.dimension()
    counts = [lattice_count(P, t) for t in range(d + 1)]
    if counts[0] != 1:
        raise AssertionError("lattice count at t=0 must be 1")
    poly = _lagrange(counts)
    h_star = []
    for j in range(d + 1):
        h = sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(j + 1))
        h_star.append(h)
    while len(h_star) > 1 and h_star[-1] == 0:
        h_star.pop()
    return EhrhartData(tuple(counts), poly, tuple(h_star))


def _lagrange(values: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients of the unique polynomial with p(i) = values[i]."""
    n = len(values)
    coeffs = [Fraction(0)] * n
    for i, val in enumerate(values):
        num = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            # multiply num by (x - j)
            nxt = [Fraction(0)] * (len(num) + 1)
            for p, c in enumerate(num):
                nxt[p] -= c * j
                nxt[p + 1] += c
            num = nxt
            den *= i - j
        f = Fraction(val) / den
        for p, c in enumerate(num):
            coeffs[p] += f * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def polar_dual(P: VPolytope) -> VPolytope:
    """Polar dual within the linear span of P.

    Requires the origin strictly inside P relative to its span: every
    facet offset must be positive and every affine-hull equation must
    pass through the origin.
    """
    hrep = facets(P)
    if any(b != 0 for _, b in hrep.equations):
        raise ValueError("origin is not in the affine hull of the polytope")
    if any(b <= 0 for _, b in hrep.inequalities):
        raise ValueError("origin is not strictly interior to the polytope")
    frame = _frame_of(P)
    basis = frame.basis
    k = len(basis)
    gram = [[_dot(basis[i], basis[j]) for j in range(k)] for i in range(k)]
    ginv = _invert_square([[Fraction(x) for x in row] for row in gram])
    duals = []
    for a, b in hrep.inequalities:
        rhs = [_dot(basis[i], a) for i in range(k)]
        coeffs = [_dot(ginv[i], rhs) for i in range(k)]
        proj = [sum(coeffs[i] * basis[i][j] for i in range(k)) for j in range(P.ambient_dim)]
        duals.append(tuple(x / b for x in proj))
    return VPolytope(P.ambient_dim, duals)


def fixed_subpolytope(P: VPolytope, M: RatMatrix) -> VPolytope:
    """The subpolytope of points fixed by the linear map M.

    M must map P into itself (checked on vertices).  The fixed polytope is
    P intersected with ker(M - I); its vertices are enumerated by brute
    force over tight facet subsets and need not be lattice points.
    """
    d = P.ambient_dim
    if M.rows != d or M.cols != d:
        raise ValueError("action matrix must be square of the ambient dimension")
    if P.dimension() == 0:
        v = P.vertices[0]
        if M.matvec(v) != v:
            raise ValueError("matrix does not map the polytope into itself")
        return P
    hrep = facets(P)
    for v in P.vertices:
        if not hrep.contains(M.matvec(v)):
            raise ValueError("matrix does not map the polytope into itself")

    rows = [list(a) for a, _ in hrep.equations]
    rhs = [b for _, b in hrep.equations]
    for i in range(d):
        rows.append([M.entry(i, j) - (1 if i == j else 0) for j in range(d)])
        rhs.append(Fraction(0))
    solved = affine_solution_space(rows, rhs, d)
    if solved is None:
        raise ValueError("the fixed subspace does not meet the polytope's affine hull")
    x0, kernel = solved
    f = len(kernel)

    reduced = []
    for a, b in hrep.inequalities:
        a_loc = tuple(_dot(a, n) for n in kernel)
        b_loc = b - _dot(a, x0)
        if any(a_loc):
            reduced.append((a_loc, b_loc))
        elif b_loc < 0:
            raise ValueError("the fixed subspace does not meet the polytope")

    def to_ambient(y: Sequence[Fraction]) -> Point:
        return tuple(x0[j] + sum(y[i] * kernel[i][j] for i in range(f)) for j in range(d))

    if f == 0:
        return VPolytope(d, [x0])

    found: set[Point] = set()
    for chosen in combinations(range(len(reduced)), f):
        sub_rows = [list(reduced[i][0]) for i in chosen]
        sub_rhs = [reduced[i][1] for i in chosen]
        solution = affine_solution_space(sub_rows, sub_rhs, f)
        if solution is None or solution[1]:
            continue  # inconsistent or not a unique point
        y = solution[0]
        if all(_dot(a, y) <= b for a, b in reduced):
            found.add(to_ambient(y))
    if not found:
        raise ValueError("the fixed subspace does not meet the polytope")
    return VPolytope(d, found)


def extreme_points(points: Iterable[Sequence]) -> list[Point]:
    """Extreme points of the convex hull of a finite point set.

    A point is kept exactly when the facet normals tight at it span the
    full local dimension, so the result is certified vertex by vertex.
    """
    pts = sorted({_pt(p) for p in points})
    if len(pts) == 1:
        return pts
    probe = VPolytope(len(pts[0]), pts)  # only used for its affine frame
    frame = _frame_of(probe)
    k = len(frame.basis)
    if k == 0:
        return [pts[0]]
    local = frame.local_scaled
    facet_list = _local_facets(local, k)
    keep = []
    for i, p in enumerate(pts):
        normals = [a for a, _, tight in facet_list if i in tight]
        if len(normals) < k:
            continue
        if not kernel_basis_ints([list(a) for a in normals], k):
            keep.append(p)  # tight normals span locally: p is a vertex
    return keep


def zonotope(generators: Sequence[Sequence]) -> VPolytope:
    """Zonotope of the given generators: the sum of segments [0, g].

    Vertices are the extreme points among all 0/1 subset sums; guarded to
    16 generators.
    """
    gens = [_pt(g) for g in generators]
    if not gens:
        raise ValueError("zonotope needs at least one generator")
    if len(gens) > 16:
        raise GuardError("zonotope enumeration guarded to <= 16 generators")
    d = len(gens[0])
    if any(len(g) != d for g in gens):
        raise ValueError("generators must share one ambient dimension")
    sums: set[Point] = {tuple(Fraction(0) for _ in range(d))}
    for g in gens:
        sums |= {tuple(a + b for a, b in zip(p, g)) for p in sums}
    return VPolytope(d, extreme_points(sums))
