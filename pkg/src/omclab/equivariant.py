"""Symmetric-group action on the complete-graph cocircuit polytope.

A permutation of the n nodes permutes the 2^n - 2 subset-labelled
vertices; in the projected coordinates the action is the integer matrix
with a 1 in row i, column j when sigma(j) = i, a -1 throughout column j
when sigma(j) = n, and 0 elsewhere.  Fixed polytopes, their Ehrhart
polynomials and the equivariant H*-series all have closed forms in the
cycle decomposition, and each is checked here against a second route.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _all_perms
from math import comb

from .errors import OracleMismatchError, ParseError
from .exact_core import RatMatrix
from .cycle_zonotope_family import (
    SubsetLabel,
    eulerian_polynomial,
    family_labels,
    u_vector,
)
from .polynomials import IntPolynomial, geometric_sum, one_minus_z_power
from .polytope_engine import VPolytope, zonotope

__all__ = [
    "Permutation",
    "HStarSeries",
    "action_matrix",
    "orbits",
    "fixed_polytope",
    "fixed_ehrhart",
    "character_det",
    "hstar_series",
    "symmetric_group",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n in one-line notation (images[j-1] = sigma(j))."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        images = list(range(1, n + 1))
        for cycle in cycles:
            cycle = [int(a) for a in cycle]
            if any(not 1 <= a <= n for a in cycle) or len(set(cycle)) != len(cycle):
                raise ValueError(f"bad cycle {cycle} for n={n}")
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation like '(2 4)(1 3)' or one-line '1 4 3 2'."""
        text = text.strip()
        if not text or text.lower() in ("e", "id", "()"):
            return cls.identity(n)
        if text.startswith("("):
            chunks = re.findall(r"\(([^()]*)\)", text)
            if not chunks or re.sub(r"[()\s,\d]", "", text):
                raise ParseError(f"bad cycle notation: {text!r}")
            cycles = []
            for chunk in chunks:
                parts = [p for p in re.split(r"[,\s]+", chunk.strip()) if p]
                if parts:
                    cycles.append([int(p) for p in parts])
            seen: set[int] = set()
            for cycle in cycles:
                if seen & set(cycle):
                    raise ParseError(f"cycles are not disjoint in {text!r}")
                seen |= set(cycle)
            try:
                return cls.from_cycles(n, cycles)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        parts = [p for p in re.split(r"[,\s]+", text) if p]
        try:
            images = tuple(int(p) for p in parts)
            if len(images) != n:
                raise ValueError(f"expected {n} images, got {len(images)}")
            return cls(images)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles with fixed points explicit; each cycle starts at
        its smallest element and the cycle containing n comes last."""
        seen: set[int] = set()
        cycles = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            cycles.append(tuple(cycle))
        cycles.sort(key=lambda c: (self.n in c, min(c)))
        return cycles

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def label(self) -> str:
        return "".join(
            "(" + " ".join(str(a) for a in c) + ")" for c in self.cycles()
        )


@dataclass(frozen=True)
class HStarSeries:
    """The equivariant H*-series data of one permutation.

    The lattice-point character series sums to
    chi_numerator / (1-z)^denominator_exponent, and the H*-series itself
    is the polynomial `numerator` (equal to (1-z) det(I - M z) times that
    sum, which on this family is always a polynomial with nonnegative
    coefficients).
    """

    sigma: Permutation
    numerator: IntPolynomial
    chi_numerator: IntPolynomial
    denominator_exponent: int

    @property
    def hstar(self) -> IntPolynomial:
        return self.numerator


def action_matrix(sigma: Permutation) -> RatMatrix:
    """The (n-1) x (n-1) matrix of the node permutation on projected
    coordinates: entry (i, j) is 1 when sigma(j) = i, -1 when sigma(j) = n."""
    n = sigma.n
    if n < 2:
        raise ValueError("need n >= 2")
    rows = []
    for i in range(1, n):
        row = []
        for j in range(1, n):
            img = sigma(j)
            row.append(1 if img == i else (-1 if img == n else 0))
        rows.append(row)
    return RatMatrix.from_rows(rows)


def act_on_label(sigma: Permutation, label: SubsetLabel) -> SubsetLabel:
    return SubsetLabel(label.n, frozenset(sigma(a) for a in label.members))


def orbits(n: int) -> list[list[SubsetLabel]]:
    """Orbits of the vertex labels under the whole symmetric group,
    computed by closure under adjacent transpositions."""
    labels = family_labels(n)
    index = {lb.members: i for i, lb in enumerate(labels)}
    gens = [Permutation.from_cycles(n, [(i, i + 1)]) for i in range(1, n)]
    parent = list(range(len(labels)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, lb in enumerate(labels):
        for g in gens:
            j = index[act_on_label(g, lb).members]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[rj] = ri
    groups: dict[int, list[SubsetLabel]] = {}
    for i, lb in enumerate(labels):
        groups.setdefault(find(i), []).append(lb)
    out = [sorted(members, key=SubsetLabel.sort_key) for members in groups.values()]
    out.sort(key=lambda orbit: orbit[0].sort_key())
    return out


def fixed_polytope(sigma: Permutation) -> VPolytope:
    """Fixed subpolytope in projected coordinates: the zonotope generated
    by the subset vertices of the cycle supports."""
    n = sigma.n
    if n < 2:
        raise ValueError("need n >= 2")
    gens = [u_vector(n, cycle) for cycle in sigma.cycles()]
    return zonotope(gens)


def fixed_ehrhart(sigma: Permutation) -> IntPolynomial:
    """Lattice-point count of the dilated fixed polytope: (t+1)^k - t^k
    where k is the number of cycles (fixed points included)."""
    k = len(sigma.cycles())
    return IntPolynomial([comb(k, j) for j in range(k)])


def character_det(sigma: Permutation) -> IntPolynomial:
    """det(I - M z) for the projected action matrix M, as a polynomial in z.

    Expanded exactly by the Leibniz formula; times (1-z) this equals the
    product of (1 - z^len) over the cycles.
    """
    M = action_matrix(sigma)
    m = M.rows
    entries = [[_entry_poly(M, i, j) for j in range(m)] for i in range(m)]
    total = IntPolynomial.zero()
    for perm in _all_perms(range(m)):
        if any(not entries[i][perm[i]] for i in range(m)):
            continue
        term = IntPolynomial.one()
        for i in range(m):
            term = term * entries[i][perm[i]]
        total = total + (term if _parity(perm) else term.scaled(-1))
    return total


def _entry_poly(M: RatMatrix, i: int, j: int) -> IntPolynomial:
    c = M.entry(i, j)
    const = 1 if i == j else 0
    return IntPolynomial([const, -int(c)])


def _parity(perm: tuple[int, ...]) -> bool:
    seen = [False] * len(perm)
    even = True
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            even = not even
    return even


def hstar_series(sigma: Permutation) -> HStarSeries:
    """The equivariant H*-series of the permutation, computed two ways.

    (a) Closed form: the Eulerian polynomial of the cycle count times the
        product of 1 + z + ... + z^(len-1) over the cycles.
    (b) (1-z) det(I - M z) times the character series, where the series
        sum_t L(t) z^t is carried exactly as a rational function
        chi_numerator / (1-z)^k.

    The two routes must agree; a mismatch raises, since it can only mean
    an implementation bug.
    """
    cycles = sigma.cycles()
    k = len(cycles)
    closed = eulerian_polynomial(k)
    for cycle in cycles:
        closed = closed * geometric_sum(len(cycle))

    ehr = fixed_ehrhart(sigma)
    chi_num_coeffs = []
    for j in range(k):
        chi_num_coeffs.append(
            sum((-1) ** i * comb(k, i) * ehr(j - i) for i in range(j + 1))
        )
    chi_numerator = IntPolynomial(chi_num_coeffs)

    det = character_det(sigma)
    raw = det * chi_numerator * one_minus_z_power(1)
    try:
        resolved = raw.divide_exact(one_minus_z_power(k))
    except ValueError as exc:
        raise OracleMismatchError(
            f"H*-series of {sigma.label()} is not a polynomial: {exc}"
        ) from exc
    if resolved != closed:
        raise OracleMismatchError(
            f"H*-series mismatch for {sigma.label()}: closed form "
            f"{closed.coeffs} vs determinant route {resolved.coeffs}"
        )
    return HStarSeries(sigma, closed, chi_numerator, k)


def symmetric_group(n: int):
    """All permutations of 1..n, identity first."""
    return [Permutation(images) for images in _all_perms(range(1, n + 1))]
