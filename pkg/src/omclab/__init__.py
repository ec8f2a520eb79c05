"""Exact-arithmetic toolkit for oriented matroid circuit polytopes.

Builds oriented matroids from rational matrices and directed graphs,
forms the polytopes spanned by their signed circuit incidence vectors,
and computes dimensions, faces, Ehrhart data, polar duals and fixed
subpolytopes, all over exact rationals.  The complete-graph family and
its symmetric-group action come with closed forms that the generic
machinery cross-checks.
"""

from .errors import GuardError, OmclabError, OracleMismatchError, ParseError
from .exact_core import (
    RatMatrix,
    Rational,
    kernel_basis,
    matrix_from_csv_text,
    matrix_from_json_obj,
    parse_rational,
    rank,
    solve_in_rowspace,
)
from .oriented_matroid import (
    AxiomReport,
    CircuitSet,
    Digraph,
    SignedSet,
    circuits_from_digraph,
    circuits_from_matrix,
    cocircuits_from_digraph,
    cocircuits_from_matrix,
    direct_sum,
    reorient,
    signed_sets_orthogonal,
    validate_circuit_axioms,
)
from .polynomials import IntPolynomial
from .polytope_engine import (
    EhrhartData,
    FaceRecord,
    HRep,
    VPolytope,
    certify_vertices,
    dimension,
    ehrhart,
    f_vector,
    face_lattice,
    facets,
    fixed_subpolytope,
    is_centrally_symmetric,
    lattice_count,
    omc_polytope,
    polar_dual,
    zonotope,
)
from .cycle_zonotope_family import (
    FaceLabel,
    FamilyFacePoset,
    SubsetLabel,
    affine_hull_equations,
    build_family_polytope,
    eulerian_polynomial,
    f_polynomial,
    face_from_label,
    face_lattice_poset,
    family_ehrhart,
    family_labels,
    graphic_zonotope,
    phi_to_graphic_zonotope,
    project_pi,
    sep_complete_graph,
    u_vector,
    vertex_u_hat,
)
from .equivariant import (
    HStarSeries,
    Permutation,
    action_matrix,
    character_det,
    fixed_ehrhart,
    fixed_polytope,
    hstar_series,
    orbits,
    symmetric_group,
)

__version__ = "0.1.0"
