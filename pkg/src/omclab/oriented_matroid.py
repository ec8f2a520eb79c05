"""Signed sets, circuits and cocircuits of rational matrices and digraphs.

Ground-set elements are 1-based, matching the column order of the matrix
or the edge-list order of the digraph.  Circuits always come in opposite
pairs; the canonical member of a pair is the one whose smallest support
element is positive.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import ParseError
from .exact_core import RatMatrix, kernel_basis, rank, solve_in_rowspace

__all__ = [
    "SignedSet",
    "CircuitSet",
    "Digraph",
    "AxiomReport",
    "validate_circuit_axioms",
    "circuits_from_matrix",
    "cocircuits_from_matrix",
    "circuits_from_digraph",
    "cocircuits_from_digraph",
    "reorient",
    "direct_sum",
    "signed_sets_orthogonal",
]


@dataclass(frozen=True)
class SignedSet:
    """A subset of [m] partitioned into positive and negative parts."""

    ground_size: int
    positive: frozenset[int]
    negative: frozenset[int]

    def __post_init__(self):
        pos = frozenset(self.positive)
        neg = frozenset(self.negative)
        object.__setattr__(self, "positive", pos)
        object.__setattr__(self, "negative", neg)
        if pos & neg:
            raise ValueError("positive and negative parts must be disjoint")
        for e in pos | neg:
            if not 1 <= e <= self.ground_size:
                raise ValueError(f"element {e} outside ground set [{self.ground_size}]")

    @classmethod
    def from_vector(cls, vec: Sequence) -> "SignedSet":
        """Signed support of a rational vector (1-based positions)."""
        pos = frozenset(i + 1 for i, x in enumerate(vec) if x > 0)
        neg = frozenset(i + 1 for i, x in enumerate(vec) if x < 0)
        return cls(len(vec), pos, neg)

    @property
    def support(self) -> frozenset[int]:
        return self.positive | self.negative

    def opposite(self) -> "SignedSet":
        return SignedSet(self.ground_size, self.negative, self.positive)

    def sign(self, e: int) -> int:
        if e in self.positive:
            return 1
        if e in self.negative:
            return -1
        return 0

    def sign_vector(self) -> tuple[int, ...]:
        return tuple(self.sign(e) for e in range(1, self.ground_size + 1))

    def sign_string(self) -> str:
        glyphs = {1: "+", -1: "-", 0: "0"}
        return "(" + ",".join(glyphs[s] for s in self.sign_vector()) + ")"

    def set_notation(self) -> str:
        """Compact form like '(134|2)'; sides are space-joined past 9 elements."""
        sep = "" if self.ground_size <= 9 else " "
        pos = sep.join(str(e) for e in sorted(self.positive))
        neg = sep.join(str(e) for e in sorted(self.negative))
        return f"({pos}|{neg})"

    def is_canonical(self) -> bool:
        sup = self.support
        return not sup or min(sup) in self.positive

    def canonical(self) -> "SignedSet":
        return self if self.is_canonical() else self.opposite()

    def sort_key(self) -> tuple:
        sup = tuple(sorted(self.support))
        return (len(sup), sup, 0 if self.is_canonical() else 1, self.sign_vector())

    def flipped(self, elements: Iterable[int]) -> "SignedSet":
        """Swap positive/negative membership of the given elements."""
        flip = set(elements)
        pos = (self.positive - flip) | (self.negative & flip)
        neg = (self.negative - flip) | (self.positive & flip)
        return SignedSet(self.ground_size, frozenset(pos), frozenset(neg))

    def shifted(self, offset: int, new_ground: int) -> "SignedSet":
        return SignedSet(
            new_ground,
            frozenset(e + offset for e in self.positive),
            frozenset(e + offset for e in self.negative),
        )


class CircuitSet:
    """A deduplicated collection of signed sets over a common ground set.

    The container itself imposes no axioms; run validate_circuit_axioms to
    certify that a collection is the circuit set of an oriented matroid.
    Constructors in this module always emit axiom-valid sets.
    """

    __slots__ = ("ground_size", "circuits")

    def __init__(self, ground_size: int, circuits: Iterable[SignedSet]) -> None:
        seen = set()
        ordered = []
        for c in circuits:
            if c.ground_size != ground_size:
                raise ValueError("circuit ground size mismatch")
            key = (c.positive, c.negative)
            if key not in seen:
                seen.add(key)
                ordered.append(c)
        ordered.sort(key=SignedSet.sort_key)
        object.__setattr__(self, "ground_size", ground_size)
        object.__setattr__(self, "circuits", tuple(ordered))

    def __setattr__(self, name, value):
        raise AttributeError("CircuitSet is immutable")

    def __iter__(self) -> Iterator[SignedSet]:
        return iter(self.circuits)

    def __len__(self) -> int:
        return len(self.circuits)

    def __contains__(self, item: SignedSet) -> bool:
        return item in self.as_set()

    def as_set(self) -> frozenset[SignedSet]:
        return frozenset(self.circuits)

    def canonical_representatives(self) -> list[SignedSet]:
        return [c for c in self.circuits if c.is_canonical() and c.support]

    def __eq__(self, other) -> bool:
        return (isinstance(other, CircuitSet)
                and self.ground_size == other.ground_size
                and self.as_set() == other.as_set())

    def __hash__(self) -> int:
        return hash((self.ground_size, self.as_set()))

    def __repr__(self) -> str:
        body = ", ".join(c.set_notation() for c in self.circuits)
        return f"CircuitSet(m={self.ground_size}: {body})"


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on nodes 1..n; loops and parallel edges allowed.

    The edge-list order fixes the ground-set coordinates.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        object.__setattr__(self, "edges", edges)
        for t, h in edges:
            if not (1 <= t <= self.node_count and 1 <= h <= self.node_count):
                raise ValueError(f"edge ({t},{h}) outside nodes [{self.node_count}]")

    @classmethod
    def from_json_obj(cls, obj) -> "Digraph":
        if (not isinstance(obj, dict) or "nodes" not in obj or "edges" not in obj
                or not isinstance(obj["edges"], list)):
            raise ParseError('digraph JSON must look like {"nodes": n, "edges": [[t,h],...]}')
        try:
            return cls(int(obj["nodes"]), tuple((int(t), int(h)) for t, h in obj["edges"]))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad digraph JSON: {exc}") from exc

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def incidence_matrix(self) -> RatMatrix:
        """Node-by-edge matrix; the column of edge (t, h) is e_t - e_h."""
        cols = []
        for t, h in self.edges:
            col = [0] * self.node_count
            col[t - 1] += 1
            col[h - 1] -= 1
            cols.append(col)
        if not cols:
            return RatMatrix(self.node_count, 0, [])
        return RatMatrix.from_cols(cols)

    def neighbors(self) -> dict[int, set[int]]:
        """Underlying-graph adjacency, ignoring loops and multiplicities."""
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.node_count + 1)}
        for t, h in self.edges:
            if t != h:
                adj[t].add(h)
                adj[h].add(t)
        return adj

    def connected_components(self) -> list[frozenset[int]]:
        adj = self.neighbors()
        seen: set[int] = set()
        comps = []
        for start in range(1, self.node_count + 1):
            if start in seen:
                continue
            stack = [start]
            comp = {start}
            seen.add(start)
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in comp:
                        comp.add(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def induces_connected(self, nodes: frozenset[int] | set[int]) -> bool:
        """True iff the subgraph induced on the given nodes is connected."""
        if not nodes:
            return False
        adj = self.neighbors()
        start = min(nodes)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in nodes and w not in comp:
                    comp.add(w)
                    stack.append(w)
        return comp == set(nodes)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the circuit-axiom validator, with a witness on failure."""

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_circuit_axioms(C: CircuitSet) -> AxiomReport:
    """Check axioms C0 (no empty set), C1 (negation closure), C2 (support
    incomparability) and C3 (weak elimination) exhaustively."""
    circuits = list(C.circuits)
    for X in circuits:
        if not X.support:
            return AxiomReport(False, "C0", (X,), "the empty signed set is listed")

    keys = {(X.positive, X.negative) for X in circuits}
    for X in circuits:
        if (X.negative, X.positive) not in keys:
            return AxiomReport(False, "C1", (X,), f"missing opposite of {X.set_notation()}")

    masks = [(_mask(X.positive), _mask(X.negative)) for X in circuits]
    supports = [p | n for p, n in masks]
    for i, X in enumerate(circuits):
        for j, Y in enumerate(circuits):
            if i == j:
                continue
            if supports[i] & ~supports[j]:
                continue  # support(X) not within support(Y)
            same = masks[i] == masks[j]
            opp = masks[i] == (masks[j][1], masks[j][0])
            if not (same or opp):
                return AxiomReport(
                    False, "C2", (X, Y),
                    f"support of {X.set_notation()} lies inside {Y.set_notation()}",
                )

    for i, X in enumerate(circuits):
        for j, Y in enumerate(circuits):
            if masks[i] == (masks[j][1], masks[j][0]):
                continue  # X == -Y is excluded
            both = X.positive & Y.negative
            for e in both:
                bit = 1 << e
                allowed_pos = (masks[i][0] | masks[j][0]) & ~bit
                allowed_neg = (masks[i][1] | masks[j][1]) & ~bit
                found = any(
                    zp & ~allowed_pos == 0 and zn & ~allowed_neg == 0
                    for zp, zn in masks
                )
                if not found:
                    return AxiomReport(
                        False, "C3", (X, Y, e),
                        f"no eliminating circuit for {X.set_notation()}, "
                        f"{Y.set_notation()} at element {e}",
                    )
    return AxiomReport(True)


def _mask(elements: frozenset[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def circuits_from_matrix(M: RatMatrix) -> CircuitSet:
    """Circuits as sign patterns of minimal linear dependencies of the columns.

    Enumerates column subsets of size at most rank+1 in increasing size,
    pruning supersets of circuits already found; a surviving dependent
    subset is minimal, so its kernel is one-dimensional with full support.
    """
    n = M.cols
    r = rank(M)
    found_masks: list[int] = []
    circuits: list[SignedSet] = []
    for size in range(1, min(n, r + 1) + 1):
        for subset in combinations(range(n), size):
            smask = 0
            for c in subset:
                smask |= 1 << c
            if any(f & ~smask == 0 for f in found_masks):
                continue
            basis = kernel_basis(M.select_cols(subset))
            if not basis:
                continue
            vec = basis[0]
            if len(basis) != 1 or not all(vec):
                raise AssertionError("pruned subset should be a minimal dependence")
            found_masks.append(smask)
            pos = frozenset(subset[i] + 1 for i, x in enumerate(vec) if x > 0)
            neg = frozenset(subset[i] + 1 for i, x in enumerate(vec) if x < 0)
            X = SignedSet(n, pos, neg)
            circuits.append(X)
            circuits.append(X.opposite())
    return CircuitSet(n, circuits)


def cocircuits_from_matrix(M: RatMatrix) -> CircuitSet:
    """Circuits of the dual: minimal nonempty signed supports of the row space.

    Candidate vectors come from row-space solves that vanish on (rank-1)-
    subsets of columns; every support-minimal row-space vector arises this
    way, and the inclusion-minimality filter removes the rest.
    """
    n = M.cols
    r = rank(M)
    if r == 0:
        return CircuitSet(n, [])
    candidates: dict[tuple[int, ...], int] = {}
    for subset in combinations(range(n), r - 1):
        u = solve_in_rowspace(M, subset)
        if u is None:
            continue
        if u not in candidates:
            mask = 0
            for j, x in enumerate(u):
                if x:
                    mask |= 1 << j
            candidates[u] = mask
    minimal = []
    for u, mask in sorted(candidates.items(), key=lambda kv: (bin(kv[1]).count("1"), kv[0])):
        if any(kept & ~mask == 0 for _, kept in minimal):
            continue
        minimal.append((u, mask))
    circuits = []
    for u, _ in minimal:
        X = SignedSet.from_vector(u)
        circuits.append(X)
        circuits.append(X.opposite())
    return CircuitSet(n, circuits)


def _vertex_cycles(G: Digraph) -> list[tuple[int, ...]]:
    """Simple cycles of length >= 3 in the underlying graph.

    Each cycle is reported once, rooted at its smallest node, with the
    direction fixed by second node < last node.
    """
    adj = G.neighbors()
    cycles: list[tuple[int, ...]] = []

    def extend(path: list[int], members: set[int]) -> None:
        v = path[-1]
        root = path[0]
        for w in sorted(adj[v]):
            if w == root and len(path) >= 3:
                if path[1] < path[-1]:
                    cycles.append(tuple(path))
            elif w > root and w not in members:
                path.append(w)
                members.add(w)
                extend(path, members)
                members.remove(w)
                path.pop()

    for start in range(1, G.node_count + 1):
        extend([start], {start})
    return cycles


def circuits_from_digraph(G: Digraph) -> CircuitSet:
    """Circuits from simple cycles of the underlying graph.

    Loops count as 1-cycles and parallel-edge pairs as 2-cycles; each
    traversal direction yields one member of the opposite pair.
    """
    m = G.edge_count
    circuits: list[SignedSet] = []

    def emit(pos: set[int], neg: set[int]) -> None:
        X = SignedSet(m, frozenset(pos), frozenset(neg))
        circuits.append(X)
        circuits.append(X.opposite())

    parallel: dict[frozenset[int], list[int]] = defaultdict(list)
    for idx, (t, h) in enumerate(G.edges, start=1):
        if t == h:
            emit({idx}, set())
        else:
            parallel[frozenset((t, h))].append(idx)

    for pair, idxs in parallel.items():
        u, v = min(pair), max(pair)
        for i, j in combinations(idxs, 2):
            # traverse u -> v along edge i, then v -> u along edge j
            pos, neg = set(), set()
            (pos if G.edges[i - 1] == (u, v) else neg).add(i)
            (pos if G.edges[j - 1] == (v, u) else neg).add(j)
            emit(pos, neg)

    for cycle in _vertex_cycles(G):
        steps = list(zip(cycle, cycle[1:] + cycle[:1]))
        options = [parallel[frozenset(step)] for step in steps]
        for choice in product(*options):
            pos, neg = set(), set()
            for (a, b), idx in zip(steps, choice):
                (pos if G.edges[idx - 1] == (a, b) else neg).add(idx)
            emit(pos, neg)
    return CircuitSet(m, circuits)


def cocircuits_from_digraph(G: Digraph) -> CircuitSet:
    """Cocircuits from minimal cuts (bonds) of the underlying graph.

    Within each connected component, a node bipartition whose sides both
    induce connected subgraphs is a bond; edges crossing from the first
    side to the second are positive.
    """
    m = G.edge_count
    circuits: list[SignedSet] = []
    for comp in G.connected_components():
        if len(comp) < 2:
            continue
        nodes = sorted(comp)
        anchor, rest = nodes[0], nodes[1:]
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                side1 = frozenset((anchor, *extra))
                side2 = comp - side1
                if not side2:
                    continue
                if not (G.induces_connected(side1) and G.induces_connected(side2)):
                    continue
                pos, neg = set(), set()
                for idx, (t, h) in enumerate(G.edges, start=1):
                    if t in side1 and h in side2:
                        pos.add(idx)
                    elif t in side2 and h in side1:
                        neg.add(idx)
                X = SignedSet(m, frozenset(pos), frozenset(neg))
                circuits.append(X)
                circuits.append(X.opposite())
    return CircuitSet(m, circuits)


def reorient(C: CircuitSet, elements: Iterable[int]) -> CircuitSet:
    """Reverse the orientation of the given ground elements in every circuit."""
    flip = set(elements)
    for e in flip:
        if not 1 <= e <= C.ground_size:
            raise ValueError(f"element {e} outside ground set")
    return CircuitSet(C.ground_size, [X.flipped(flip) for X in C])


def direct_sum(C1: CircuitSet, C2: CircuitSet) -> CircuitSet:
    """Circuits of the direct sum: C1 on the first block, C2 shifted after it."""
    m = C1.ground_size + C2.ground_size
    merged = [X.shifted(0, m) for X in C1]
    merged += [X.shifted(C1.ground_size, m) for X in C2]
    return CircuitSet(m, merged)


def signed_sets_orthogonal(X: SignedSet, Y: SignedSet) -> bool:
    """Sign-vector orthogonality: supports are disjoint, or the products
    of signs over the common support take both values +1 and -1."""
    common = X.support & Y.support
    if not common:
        return True
    prods = {X.sign(e) * Y.sign(e) for e in common}
    return 1 in prods and -1 in prods
