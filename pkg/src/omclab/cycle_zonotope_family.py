"""Closed forms for the cocircuit polytope of the complete graph.

The cocircuit polytope of the complete graph on n nodes lives in
R^(n choose 2) with one vertex per proper nonempty node subset; dropping
to the n-1 coordinates indexed by edges (i, n) gives a lattice-preserving
projection whose image is the zonotope of e_1, ..., e_(n-1), -(1,...,1).
This module provides the vertex coordinates, the projection, the affine
map onto the graphic zonotope of the n-cycle, the subset-pair face
bijection, and the f-, Eulerian and Ehrhart polynomials, each of which the
generic engine can cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .exact_core import RatMatrix
from .oriented_matroid import Digraph
from .polynomials import IntPolynomial
from .polytope_engine import FaceRecord, VPolytope, extreme_points

__all__ = [
    "SubsetLabel",
    "FaceLabel",
    "FamilyFacePoset",
    "lex_edges",
    "edge_position",
    "vertex_u_hat",
    "projection_matrix",
    "project_pi",
    "family_labels",
    "u_vector",
    "build_family_polytope",
    "affine_hull_equations",
    "phi_to_graphic_zonotope",
    "cycle_graph",
    "graphic_zonotope",
    "sep_complete_graph",
    "face_from_label",
    "face_lattice_poset",
    "flat_orientation_pair",
    "f_polynomial",
    "eulerian_polynomial",
    "family_ehrhart",
]


@dataclass(frozen=True)
class SubsetLabel:
    """A vertex label: a proper nonempty subset of the nodes 1..n."""

    n: int
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        if not members or len(members) >= self.n:
            raise ValueError("label must be a proper nonempty subset")
        if any(not 1 <= a <= self.n for a in members):
            raise ValueError("label elements outside 1..n")

    def sort_key(self) -> tuple:
        return (len(self.members), tuple(sorted(self.members)))

    def complement(self) -> "SubsetLabel":
        return SubsetLabel(self.n, frozenset(range(1, self.n + 1)) - self.members)


@dataclass(frozen=True)
class FaceLabel:
    """A face label (S, T) with {} != S subset T != [n]; dimension |T \\ S|."""

    n: int
    S: frozenset[int]
    T: frozenset[int]

    def __post_init__(self):
        S = frozenset(self.S)
        T = frozenset(self.T)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        if not S or not S <= T or len(T) >= self.n:
            raise ValueError("need nonempty S contained in T, T proper in [n]")
        if any(not 1 <= a <= self.n for a in T):
            raise ValueError("elements outside 1..n")

    @property
    def dim(self) -> int:
        return len(self.T - self.S)


def lex_edges(n: int) -> list[tuple[int, int]]:
    """Edges of the complete graph in lexicographic order 12, 13, ..., (n-1)n."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def edge_position(n: int, i: int, j: int) -> int:
    """0-based position of edge (i, j), i < j, in lexicographic order."""
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    return (i - 1) * (2 * n - i) // 2 + (j - i) - 1


def vertex_u_hat(label: SubsetLabel) -> tuple[int, ...]:
    """Vertex coordinates in R^(n choose 2): the edge (i, j) coordinate is
    +1 when i is inside the subset and j outside, -1 the other way round,
    and 0 otherwise."""
    inside = label.members
    coords = []
    for i, j in lex_edges(label.n):
        if i in inside and j not in inside:
            coords.append(1)
        elif j in inside and i not in inside:
            coords.append(-1)
        else:
            coords.append(0)
    return tuple(coords)


def projection_matrix(n: int) -> RatMatrix:
    """The (n-1) x (n choose 2) projection keeping the x_in coordinates;
    row i selects the column at position i*n - C(i+1, 2) (1-based)."""
    m = n * (n - 1) // 2
    rows = []
    for i in range(1, n):
        target = i * n - comb(i + 1, 2)  # 1-based column index
        rows.append([1 if j == target else 0 for j in range(1, m + 1)])
    return RatMatrix.from_rows(rows)


def _nodes_from_pair_count(m: int) -> int:
    n = int((1 + (1 + 8 * m) ** 0.5) / 2 + 0.5)
    if n * (n - 1) // 2 != m:
        raise ValueError(f"{m} is not a binomial coefficient C(n, 2)")
    return n


def project_pi(vector: Sequence) -> tuple:
    """Project a vector of R^(n choose 2) to (x_1n, ..., x_(n-1)n)."""
    n = _nodes_from_pair_count(len(vector))
    return projection_matrix(n).matvec(vector)


def family_labels(n: int) -> list[SubsetLabel]:
    """All 2^n - 2 vertex labels in canonical order (size, then elements)."""
    if n < 2:
        raise ValueError("need n >= 2")
    labels = []
    for size in range(1, n):
        for members in combinations(range(1, n + 1), size):
            labels.append(SubsetLabel(n, frozenset(members)))
    return labels


def u_vector(n: int, members: Iterable[int]) -> tuple[Fraction, ...]:
    """Projected coordinates of the subset vertex, for any subset of 1..n.

    The empty set and the full set both give the origin, so this extends
    the labels to the generators needed by fixed polytopes.
    """
    subset = frozenset(members)
    if not subset or len(subset) == n:
        return tuple(Fraction(0) for _ in range(n - 1))
    return tuple(map(Fraction, project_pi(vertex_u_hat(SubsetLabel(n, subset)))))


def build_family_polytope(n: int, embedded: bool = False) -> VPolytope:
    """The complete-graph cocircuit polytope with its 2^n - 2 labelled
    vertices, in projected coordinates R^(n-1) (or, with embedded=True, in
    the ambient R^(n choose 2))."""
    labels = family_labels(n)
    if embedded:
        return VPolytope(n * (n - 1) // 2, [vertex_u_hat(lb) for lb in labels])
    return VPolytope(n - 1, [u_vector(n, lb.members) for lb in labels])


def affine_hull_equations(n: int) -> list[tuple[tuple[int, ...], Fraction]]:
    """The C(n-1, 2) equations x_ij - x_in + x_jn = 0 over R^(n choose 2)."""
    if n < 3:
        raise ValueError("need n >= 3")
    m = n * (n - 1) // 2
    eqs = []
    for i in range(1, n):
        for j in range(i + 1, n):
            row = [0] * m
            row[edge_position(n, i, j)] = 1
            row[edge_position(n, i, n)] = -1
            row[edge_position(n, j, n)] = 1
            eqs.append((tuple(row), Fraction(0)))
    return eqs


def phi_to_graphic_zonotope(vector: Sequence) -> tuple:
    """Affine map R^(n-1) -> R^n identifying the projected polytope with the
    graphic zonotope of the n-cycle: x -> (1-x_1, x_1-x_2+1, ..., x_(n-1)+1)."""
    xs = [x if isinstance(x, Fraction) else Fraction(x) for x in vector]
    out = [1 - xs[0]]
    out.extend(xs[i] - xs[i + 1] + 1 for i in range(len(xs) - 1))
    out.append(xs[-1] + 1)
    return tuple(out)


def cycle_graph(n: int) -> Digraph:
    """The n-cycle with edges (1,2), (2,3), ..., (n-1,n), (n,1)."""
    if n < 3:
        raise ValueError("need n >= 3")
    edges = [(i, i + 1) for i in range(1, n)] + [(n, 1)]
    return Digraph(n, tuple(edges))


def graphic_zonotope(G: Digraph) -> VPolytope:
    """Graphic zonotope: the Minkowski sum of the segments [e_u, e_v] over
    the edges; computed as extreme points of all endpoint-choice sums."""
    d = G.node_count
    points: set[tuple[Fraction, ...]] = {tuple(Fraction(0) for _ in range(d))}
    for t, h in G.edges:
        nxt = set()
        for p in points:
            for node in (t, h):
                q = list(p)
                q[node - 1] += 1
                nxt.add(tuple(q))
        points = nxt
    return VPolytope(d, extreme_points(points))


def sep_complete_graph(n: int) -> VPolytope:
    """Symmetric edge polytope of the complete graph, materialized
    full-dimensionally in R^(n-1) by dropping the last coordinate of
    +/-(e_i - e_j)."""
    if n < 2:
        raise ValueError("need n >= 2")
    verts = []
    for i, j in lex_edges(n):
        v = [0] * (n - 1)
        if i < n:
            v[i - 1] += 1
        if j < n:
            v[j - 1] -= 1
        verts.append(tuple(v))
        verts.append(tuple(-x for x in v))
    return VPolytope(n - 1, verts)


def face_from_label(fl: FaceLabel) -> FaceRecord:
    """The face of the projected polytope with vertex set
    {u_J : S subset J subset T}, indexed into build_family_polytope(n).vertices."""
    P = build_family_polytope(fl.n)
    index = {v: i for i, v in enumerate(P.vertices)}
    between = sorted(fl.T - fl.S)
    idx = []
    for size in range(len(between) + 1):
        for extra in combinations(between, size):
            idx.append(index[u_vector(fl.n, fl.S | frozenset(extra))])
    return FaceRecord(fl.dim, tuple(sorted(idx)))


def flat_orientation_pair(fl: FaceLabel) -> tuple[frozenset[int], dict[int, str]]:
    """Read-only view of a face label as a flat/orientation pair of the
    n-cycle (edge j joins nodes j and j+1 mod n): the flat keeps the edges
    indexed by T - S, and each remaining edge is oriented counterclockwise
    exactly when its index lies in S.  The face bijection itself goes from
    (S, T) straight to vertex sets; this is the combinatorial cross-walk."""
    flat = frozenset(fl.T - fl.S)
    orientation = {j: ("counterclockwise" if j in fl.S else "clockwise")
                   for j in range(1, fl.n + 1) if j not in flat}
    return flat, orientation


class FamilyFacePoset:
    """The proper faces as subset pairs, ordered by T growing and S shrinking."""

    def __init__(self, n: int) -> None:
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        ground = list(range(1, n + 1))
        labels = []
        for t_size in range(1, n):
            for T in combinations(ground, t_size):
                T_set = frozenset(T)
                for s_size in range(1, t_size + 1):
                    for S in combinations(T, s_size):
                        labels.append(FaceLabel(n, frozenset(S), T_set))
        labels.sort(key=lambda fl: (fl.dim, tuple(sorted(fl.T)), tuple(sorted(fl.S))))
        self.labels = tuple(labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    @staticmethod
    def leq(a: FaceLabel, b: FaceLabel) -> bool:
        return a.T <= b.T and b.S <= a.S


def face_lattice_poset(n: int) -> FamilyFacePoset:
    """All proper faces of the projected polytope as labelled subset pairs."""
    return FamilyFacePoset(n)


def f_polynomial(n: int) -> IntPolynomial:
    """Face-count polynomial: t^(n-1) + sum_i (2^(n-i) - 2) C(n, i) t^i."""
    if n < 2:
        raise ValueError("need n >= 2")
    coeffs = [(2 ** (n - i) - 2) * comb(n, i) for i in range(n - 1)]
    coeffs.append(1)
    return IntPolynomial(coeffs)


def eulerian_polynomial(k: int) -> IntPolynomial:
    """Descent-generating polynomial of the permutations of 1..k."""
    if k < 1:
        raise ValueError("need k >= 1")
    row = [1]
    for length in range(2, k + 1):
        prev = row
        row = [0] * length
        for i in range(length):
            if i < len(prev):
                row[i] += (i + 1) * prev[i]
            if 0 <= i - 1 < len(prev):
                row[i] += (length - i) * prev[i - 1]
        while row and row[-1] == 0:
            row.pop()
    return IntPolynomial(row)


def family_ehrhart(n: int) -> IntPolynomial:
    """Lattice-point count of the t-th dilate: (t+1)^n - t^n."""
    if n < 2:
        raise ValueError("need n >= 2")
    return IntPolynomial([comb(n, i) for i in range(n)])
