"""Symmetric-group action, fixed polytopes and the equivariant H*-series."""

import pytest

from omclab import (
    IntPolynomial,
    Permutation,
    action_matrix,
    build_family_polytope,
    character_det,
    eulerian_polynomial,
    family_labels,
    fixed_ehrhart,
    fixed_polytope,
    fixed_subpolytope,
    hstar_series,
    lattice_count,
    orbits,
    symmetric_group,
    u_vector,
)
from omclab.errors import ParseError
from omclab.polynomials import geometric_sum, one_minus_z_power


def perm(text, n):
    return Permutation.parse(text, n)


class TestPermutation:
    def test_parse_forms(self):
        assert perm("(2 4)", 4).images == (1, 4, 3, 2)
        assert perm("1 4 3 2", 4).images == (1, 4, 3, 2)
        assert perm("(1 2)(3 4)", 4).images == (2, 1, 4, 3)
        assert perm("()", 3).images == (1, 2, 3)

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            perm("(1 5)", 4)
        with pytest.raises(ParseError):
            perm("(1 2)(2 3)", 4)
        with pytest.raises(ParseError):
            perm("1 2", 4)

    def test_cycles_convention(self):
        sigma = perm("(1 3)(2 4)", 4)
        # fixed points explicit, cycle containing n last
        assert sigma.cycles() == [(1, 3), (2, 4)]
        assert perm("(1 2)", 4).cycles() == [(1, 2), (3,), (4,)]
        assert perm("(3 4)", 4).cycles() == [(1,), (2,), (3, 4)]
        assert sigma.cycle_type() == (2, 2)


class TestActionMatrix:
    def test_identity(self):
        from omclab.exact_core import RatMatrix
        assert action_matrix(Permutation.identity(4)) == RatMatrix.identity(3)

    def test_transposition_23_in_s3(self):
        M = action_matrix(perm("(2 3)", 3))
        u1, u2, u3 = u_vector(3, {1}), u_vector(3, {2}), u_vector(3, {3})
        u23 = u_vector(3, {2, 3})
        assert M.matvec(u1) == u1
        assert M.matvec(u23) == u23
        assert M.matvec(u2) == u3 and M.matvec(u3) == u2

    def test_action_permutes_labels_exhaustively(self):
        for n in (2, 3, 4, 5):
            labels = family_labels(n)
            for sigma in symmetric_group(n):
                M = action_matrix(sigma)
                for lb in labels:
                    image = frozenset(sigma(a) for a in lb.members)
                    assert M.matvec(u_vector(n, lb.members)) == u_vector(n, image)


class TestOrbits:
    def test_orbit_sizes(self):
        assert [len(o) for o in orbits(2)] == [2]
        assert [len(o) for o in orbits(3)] == [3, 3]
        assert [len(o) for o in orbits(4)] == [4, 6, 4]

    def test_orbits_are_size_classes(self):
        for n in (2, 3, 4, 5):
            for orbit in orbits(n):
                sizes = {len(lb.members) for lb in orbit}
                assert len(sizes) == 1
                from math import comb
                assert len(orbit) == comb(n, sizes.pop())


class TestFixedPolytopes:
    def test_transposition_segment(self):
        Q = fixed_polytope(perm("(2 3)", 3))
        assert Q.vertex_set == {(1, 0), (-1, 0)}

    def test_24_gives_hexagon(self):
        Q = fixed_polytope(perm("(2 4)", 4))
        assert len(Q.vertices) == 6

    def test_full_cycle_gives_origin(self):
        Q = fixed_polytope(perm("(1 2 3 4)", 4))
        assert Q.vertex_set == {(0, 0, 0)}

    def test_matches_generic_oracle_on_s4(self):
        family = build_family_polytope(4)
        for sigma in symmetric_group(4):
            generic = fixed_subpolytope(family, action_matrix(sigma))
            assert fixed_polytope(sigma).vertex_set == generic.vertex_set

    def test_lattice_counts_match_closed_form(self):
        for sigma in symmetric_group(4):
            Q = fixed_polytope(sigma)
            k = len(sigma.cycles())
            for t in range(4):
                assert lattice_count(Q, t) == (t + 1) ** k - t ** k


class TestFixedEhrhart:
    def test_table_values(self):
        assert fixed_ehrhart(perm("(1 2)", 4)).coeffs == (1, 3, 3)     # type (2,1,1)
        assert fixed_ehrhart(perm("(1 2)(3 4)", 4)).coeffs == (1, 2)   # type (2,2)
        assert fixed_ehrhart(perm("(1 2 3)", 4)).coeffs == (1, 2)      # type (3,1)
        assert fixed_ehrhart(Permutation.identity(4)).coeffs == (1, 4, 6, 4)

    def test_equals_whole_polytope_count_at_identity(self):
        for n in (2, 3, 4):
            poly = fixed_ehrhart(Permutation.identity(n))
            for t in range(4):
                assert poly(t) == (t + 1) ** n - t ** n


class TestCharacterDet:
    def test_identity(self):
        assert character_det(Permutation.identity(4)) == one_minus_z_power(3)

    def test_four_cycle(self):
        # eigenvalues of the 4-cycle on the projection are the nontrivial
        # 4th roots of unity: det(I - Mz) = (1 - z^4)/(1 - z)
        assert character_det(perm("(1 2 3 4)", 4)).coeffs == (1, 1, 1, 1)

    def test_product_formula_with_reduction(self):
        # (1 - z) det(I - Mz) equals the product of (1 - z^len) over cycles
        for n in (3, 4, 5):
            for sigma in symmetric_group(n):
                product = IntPolynomial([1])
                for cycle in sigma.cycles():
                    product = product * IntPolynomial(
                        [1] + [0] * (len(cycle) - 1) + [-1])
                lhs = one_minus_z_power(1) * character_det(sigma)
                assert lhs == product


class TestHStarSeries:
    def test_table_rows(self):
        cases = {
            "(1 2)": (1, 5, 5, 1),
            "(1 2)(3 4)": (1, 3, 3, 1),
            "(1 2 3)": (1, 2, 2, 1),
            "(1 2 3 4)": (1, 1, 1, 1),
        }
        for text, coeffs in cases.items():
            assert hstar_series(perm(text, 4)).numerator.coeffs == coeffs
        assert hstar_series(Permutation.identity(4)).numerator.coeffs == (1, 11, 11, 1)

    def test_identity_gives_h_star_of_family(self):
        from omclab import ehrhart
        for n in (2, 3, 4):
            series = hstar_series(Permutation.identity(n))
            assert series.numerator.coeffs == ehrhart(build_family_polytope(n)).h_star

    def test_closed_form_structure(self):
        for n in (3, 4, 5):
            for sigma in symmetric_group(n):
                series = hstar_series(sigma)
                k = len(sigma.cycles())
                expected = eulerian_polynomial(k)
                for cycle in sigma.cycles():
                    expected = expected * geometric_sum(len(cycle))
                assert series.numerator == expected
                assert series.denominator_exponent == k

    def test_class_function_with_degree_and_constant_term(self):
        for n in (3, 4, 5):
            by_type = {}
            for sigma in symmetric_group(n):
                series = hstar_series(sigma)
                assert series.numerator.degree == n - 1
                assert series.numerator.coeffs[0] == 1
                key = sigma.cycle_type()
                if key in by_type:
                    assert by_type[key] == series.numerator
                else:
                    by_type[key] = series.numerator

    def test_chi_numerator_is_eulerian(self):
        for sigma in symmetric_group(4):
            series = hstar_series(sigma)
            k = len(sigma.cycles())
            assert series.chi_numerator == eulerian_polynomial(k)
