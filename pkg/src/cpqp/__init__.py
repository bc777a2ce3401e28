"""Cyclopermutohedra, their reflection quotients and polygon moduli complexes."""

from .bicyclopermutohedron import (
    BiCyclicCell,
    QpCriticalCell,
    ascending_representative,
    build_qp,
    build_qp_matching,
    classify_critical_qp,
    higher,
    qp_homology_mod2,
    reflection_sign,
    sgn,
    verify_qp_path_theorem,
    xi,
)
from .complex_core import (
    ChainComplex,
    CheckReport,
    ComplexError,
    SparseIntMatrix,
    euler_characteristic,
    solve_incidence_signs,
    verify_boundary_squared,
    verify_diamond,
)
from .cp_morse import CpCriticalCell, build_cp_matching, classify_critical_cp, verify_cp_path_lemma
from .cyclopermutohedron import (
    PrincipalVertexFrame,
    ResourceGuardError,
    build_cp,
    good_triple_sign,
    incidence_cp,
    principal_vertex,
)
from .discrete_morse import (
    Matching,
    MorseComplex,
    check_acyclic,
    enumerate_gradient_paths,
    morse_boundary,
    path_weight,
    validate_matching,
)
from .homology import HomologyResult, homology_mod2, homology_z, smith_normal_form
from .linkage import (
    LengthVector,
    build_moduli_complex,
    build_reduced_moduli,
    is_generic,
    is_short,
    parse_lengths,
)
from .partitions import (
    ClassPair,
    PartitionError,
    class_of,
    codim1_faces,
    format_cell,
    is_ascending,
    is_refinement,
    normalize_cyclic,
    parse_cell,
    reflect,
)

__version__ = "0.1.0"
