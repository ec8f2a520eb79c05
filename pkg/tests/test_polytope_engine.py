"""Generic polytope machinery against hand-checked and closed-form data."""

import json
from fractions import Fraction

import pytest

from omclab import (
    Digraph,
    RatMatrix,
    VPolytope,
    certify_vertices,
    circuits_from_digraph,
    circuits_from_matrix,
    cocircuits_from_digraph,
    dimension,
    ehrhart,
    f_vector,
    face_lattice,
    facets,
    fixed_subpolytope,
    is_centrally_symmetric,
    lattice_count,
    matrix_from_json_obj,
    omc_polytope,
    polar_dual,
    zonotope,
)
from omclab.errors import GuardError
from omclab.oriented_matroid import CircuitSet
from omclab.cycle_zonotope_family import (
    build_family_polytope,
    cycle_graph,
    graphic_zonotope,
    sep_complete_graph,
)
from omclab.equivariant import Permutation, action_matrix
from omclab.fixtures import path

from oracles import box_count, connected_graph_corpus


def load_digraph(name):
    return Digraph.from_json_obj(json.loads(path(name).read_text()))


K3 = load_digraph("k3.json")
K4 = load_digraph("k4.json")
HEXAGON = omc_polytope(cocircuits_from_digraph(K3))


class TestConstruction:
    def test_a2_segment(self):
        P = omc_polytope(circuits_from_digraph(K3))
        assert P.vertex_set == {(1, -1, 1), (-1, 1, -1)}
        assert dimension(P) == 1

    def test_hexagon(self):
        assert len(HEXAGON.vertices) == 6
        assert dimension(HEXAGON) == 2

    def test_bouquet_cross_polytope(self):
        bouquet = Digraph(1, ((1, 1), (1, 1), (1, 1)))
        P = omc_polytope(circuits_from_digraph(bouquet))
        assert P.vertex_set == {
            (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}
        assert f_vector(P) == (6, 12, 8, 1)

    def test_empty_circuit_set_rejected(self):
        with pytest.raises(ValueError, match="no circuits"):
            omc_polytope(CircuitSet(3, []))

    def test_product_of_two_loop_matroids_is_square(self):
        from omclab import direct_sum
        loop = circuits_from_digraph(Digraph(1, ((1, 1),)))
        P = omc_polytope(direct_sum(loop, loop))
        assert P.vertex_set == {(1, 0), (-1, 0), (0, 1), (0, -1)}


class TestCertifyVertices:
    def test_omc_polytopes_certify(self):
        for C in (circuits_from_digraph(K3), cocircuits_from_digraph(K3),
                  cocircuits_from_digraph(K4)):
            assert certify_vertices(omc_polytope(C))

    def test_corpus_sweep(self):
        for G in connected_graph_corpus(10):
            circuits = circuits_from_digraph(G)
            if len(circuits):
                assert certify_vertices(omc_polytope(circuits))
            assert certify_vertices(omc_polytope(cocircuits_from_digraph(G)))

    def test_midpoint_fails(self):
        P = VPolytope(2, [(0, 0), (2, 0), (1, 0), (0, 2)])
        assert not certify_vertices(P)

    def test_hexagon_certificates(self):
        assert certify_vertices(HEXAGON)


class TestDimension:
    def test_k4_primal_and_dual(self):
        assert dimension(omc_polytope(circuits_from_digraph(K4))) == 3  # E - V + 1
        assert dimension(omc_polytope(cocircuits_from_digraph(K4))) == 3  # V - 1

    def test_b3_both_nine(self):
        M = matrix_from_json_obj(json.loads(path("b3_positive_roots.json").read_text()))
        from omclab import circuits_from_matrix, cocircuits_from_matrix
        assert dimension(omc_polytope(circuits_from_matrix(M))) == 9
        assert dimension(omc_polytope(cocircuits_from_matrix(M))) == 9

    def test_dimension_sum_is_edge_count(self):
        for G in connected_graph_corpus(12):
            d1 = dimension(omc_polytope(circuits_from_digraph(G))) \
                if len(circuits_from_digraph(G)) else 0
            d2 = dimension(omc_polytope(cocircuits_from_digraph(G)))
            assert d1 + d2 == G.edge_count

    def test_disconnected_graph_uses_component_count(self):
        G = Digraph(5, ((1, 2), (2, 3), (1, 3), (4, 5)))
        assert dimension(omc_polytope(circuits_from_digraph(G))) == 4 - 5 + 2
        assert dimension(omc_polytope(cocircuits_from_digraph(G))) == 5 - 2


class TestFacets:
    def test_segment(self):
        P = VPolytope(3, [(1, -1, 1), (-1, 1, -1)])
        hrep = facets(P)
        assert len(hrep.equations) == 2
        assert len(hrep.inequalities) == 2
        assert all(hrep.contains(v) for v in P.vertices)

    def test_hexagon_has_six_facets(self):
        assert len(facets(HEXAGON).inequalities) == 6

    def test_k4_minus_edge_14_facets_8_triangles(self):
        G = load_digraph("k4_minus_24.json")
        P = omc_polytope(cocircuits_from_digraph(G))
        from omclab.polytope_engine import _facet_data
        data = _facet_data(P)
        assert len(data) == 14
        assert sum(1 for _, _, tight in data if len(tight) == 3) == 8

    def test_facets_tight_sets_have_facet_dimension(self):
        from omclab.exact_core import RatMatrix, rank
        for P in (HEXAGON, build_family_polytope(4)):
            hrep = facets(P)
            k = dimension(P)
            for a, b in hrep.inequalities:
                tight = [v for v in P.vertices if sum(x * y for x, y in zip(a, v)) == b]
                assert all(sum(x * y for x, y in zip(a, v)) <= b for v in P.vertices)
                diffs = [[x - y for x, y in zip(v, tight[0])] for v in tight[1:]]
                assert rank(RatMatrix.from_rows(diffs)) == k - 1


class TestFaceLattice:
    def test_hexagon_f_vector(self):
        assert f_vector(HEXAGON) == (6, 6, 1)

    def test_family_n4_f_vector(self):
        assert f_vector(build_family_polytope(4)) == (14, 24, 12, 1)

    def test_euler_alternating_sum_is_one(self):
        for P in (HEXAGON, build_family_polytope(4),
                  omc_polytope(cocircuits_from_digraph(load_digraph("k4_minus_24.json")))):
            fv = f_vector(P)
            assert sum((-1) ** i * c for i, c in enumerate(fv)) == 1

    def test_dimension_guard(self):
        from omclab import direct_sum
        loop = circuits_from_digraph(Digraph(1, ((1, 1),)))
        C = loop
        for _ in range(6):
            C = direct_sum(C, loop)
        P = omc_polytope(C)  # 7-dimensional cross-polytope
        with pytest.raises(GuardError):
            face_lattice(P)
        assert f_vector(P, max_dim=7)[0] == 14


class TestLatticeCount:
    def test_t0_is_one(self):
        assert lattice_count(HEXAGON, 0) == 1

    def test_hexagon_counts(self):
        assert lattice_count(HEXAGON, 1) == 7
        assert lattice_count(HEXAGON, 2) == 19

    def test_matches_box_scan_oracle(self):
        G = load_digraph("k4_minus_24.json")
        cases = [
            omc_polytope(circuits_from_digraph(K3)),
            HEXAGON,
            build_family_polytope(4),
            omc_polytope(cocircuits_from_digraph(G)),
        ]
        for P in cases:
            for t in range(4):
                assert lattice_count(P, t) == box_count(P, t)

    def test_point_polytope(self):
        P = VPolytope(2, [(Fraction(1, 2), 0)])
        assert lattice_count(P, 1) == 0
        assert lattice_count(P, 2) == 1

    def test_negative_dilate_rejected(self):
        with pytest.raises(ValueError):
            lattice_count(HEXAGON, -1)


class TestEhrhart:
    def test_unit_segment(self):
        P = VPolytope(1, [(0,), (1,)])
        data = ehrhart(P)
        assert data.polynomial == (1, 1)
        assert data.h_star == (1,)

    def test_hexagon(self):
        data = ehrhart(HEXAGON)
        assert data.counts == (1, 7, 19)
        assert data.polynomial == (1, 3, 3)
        assert data.h_star == (1, 4, 1)

    def test_family_n4(self):
        data = ehrhart(build_family_polytope(4))
        assert data.polynomial == (1, 4, 6, 4)
        assert data.h_star == (1, 11, 11, 1)

    def test_counts_reproduced_by_polynomial(self):
        data = ehrhart(build_family_polytope(4))
        for t, c in enumerate(data.counts):
            assert data.evaluate(t) == c

    def test_leading_coefficient_is_volume(self):
        # hexagon area 3 within its plane
        assert ehrhart(HEXAGON).polynomial[-1] == 3

    def test_non_lattice_refused(self):
        P = VPolytope(1, [(0,), (Fraction(1, 2),)])
        with pytest.raises(ValueError, match="integer vertices"):
            ehrhart(P)

    def test_h_star_nonnegative_on_small_corpus(self):
        for G in connected_graph_corpus(8):
            P = omc_polytope(cocircuits_from_digraph(G))
            if dimension(P) <= 3:
                assert all(h >= 0 for h in ehrhart(P).h_star)

    def test_cycle_zonotope_counts_subtrees(self):
        # the graphic zonotope of the n-cycle counts k-edge subtrees: C(n, k)
        from omclab.cycle_zonotope_family import family_ehrhart
        Z = graphic_zonotope(cycle_graph(4))
        assert ehrhart(Z).polynomial == tuple(
            Fraction(c) for c in family_ehrhart(4).coeffs)


class TestPolarDual:
    def test_square_to_cross_polytope(self):
        square = VPolytope(2, [(1, 1), (1, -1), (-1, 1), (-1, -1)])
        assert polar_dual(square).vertex_set == {(1, 0), (-1, 0), (0, 1), (0, -1)}

    def test_sep_duals_give_family(self):
        for n in (3, 4):
            assert polar_dual(sep_complete_graph(n)).vertex_set == \
                build_family_polytope(n).vertex_set

    def test_double_dual_is_identity_on_reflexive(self):
        for n in (3, 4):
            S = sep_complete_graph(n)
            assert polar_dual(polar_dual(S)) == S

    def test_duality_runs_both_ways(self):
        for n in (3, 4):
            assert polar_dual(build_family_polytope(n)).vertex_set == \
                sep_complete_graph(n).vertex_set

    def test_origin_must_be_interior(self):
        shifted = VPolytope(2, [(0, 0), (1, 0), (0, 1)])
        with pytest.raises(ValueError, match="interior"):
            polar_dual(shifted)


class TestFixedSubpolytope:
    def test_identity_returns_whole_polytope(self):
        P = build_family_polytope(3)
        assert fixed_subpolytope(P, RatMatrix.identity(2)) == P

    def test_transposition_gives_segment(self):
        P = build_family_polytope(3)
        sigma = Permutation.parse("(2 3)", 3)
        Q = fixed_subpolytope(P, action_matrix(sigma))
        assert Q.vertex_set == {(1, 0), (-1, 0)}

    def test_cycle_zonotope_node_swap(self):
        Z = graphic_zonotope(cycle_graph(4))
        perm = RatMatrix.from_rows(
            [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
        Q = fixed_subpolytope(Z, perm)
        assert len(Q.vertices) == 4

    def test_fixed_points_are_fixed(self):
        P = build_family_polytope(4)
        sigma = Permutation.parse("(1 2)(3 4)", 4)
        M = action_matrix(sigma)
        Q = fixed_subpolytope(P, M)
        for v in Q.vertices:
            assert M.matvec(v) == v

    def test_non_preserving_matrix_rejected(self):
        P = build_family_polytope(3)
        stretch = RatMatrix.from_rows([[2, 0], [0, 2]])
        with pytest.raises(ValueError, match="into itself"):
            fixed_subpolytope(P, stretch)


class TestSymmetryAndZonotopes:
    def test_omc_polytopes_centrally_symmetric(self):
        for C in (circuits_from_digraph(K4), cocircuits_from_digraph(K4)):
            assert is_centrally_symmetric(omc_polytope(C))

    def test_simplex_not_centrally_symmetric(self):
        assert not is_centrally_symmetric(VPolytope(2, [(0, 0), (1, 0), (0, 1)]))

    def test_unit_square(self):
        Z = zonotope([(1, 0), (0, 1)])
        assert Z.vertex_set == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_hexagon_generators(self):
        Z = zonotope([(1, 0), (0, 1), (-1, -1)])
        assert Z.vertex_set == build_family_polytope(3).vertex_set

    def test_embedded_family_zonotope(self):
        from omclab import SubsetLabel, vertex_u_hat
        gens = [vertex_u_hat(SubsetLabel(4, frozenset({i}))) for i in range(1, 5)]
        Z = zonotope(gens)
        assert Z.vertex_set == build_family_polytope(4, embedded=True).vertex_set

    def test_generator_guard(self):
        with pytest.raises(GuardError):
            zonotope([(1,)] * 17)


class TestVPolytopeValidation:
    def test_needs_a_vertex(self):
        with pytest.raises(ValueError):
            VPolytope(2, [])

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            VPolytope(2, [(1, 2, 3)])

    def test_duplicates_collapse(self):
        P = VPolytope(1, [(0,), (0,), (1,)])
        assert len(P.vertices) == 2
