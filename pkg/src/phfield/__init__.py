"""Persistence diagrams over exact coefficient fields, plus a one-pass
integer check for whether the diagram depends on the field choice."""

__version__ = "0.1.0"

from .analysis import (
    ComparisonResult,
    PersistentBettiTable,
    PowerFunctional,
    TableFunctional,
    betti_table,
    coarsen_diagram,
    convex_sum,
    diagrams_equal,
    multiplicity,
    wasserstein_to_empty,
)
from .boundary import SparseBoundaryMatrix, build_boundary_matrix, low
from .diagram import Diagram
from .domains import Q, Z, IntegerRing, PrimeField, RationalField, parse_field_spec
from .filtration import (
    Cell,
    Filtration,
    explicit_cell,
    parse_filtration,
    simplex,
    write_filtration,
)
from .generators import (
    Pointcloud,
    RandomProcessSpec,
    cap,
    linial_meshulam_process,
    loop_pointcloud,
    mobius_filtration,
    p_fold_annulus,
    parse_pointcloud,
    rips_filtration,
    uniform_pointcloud,
    write_pointcloud,
)
from .oracle import (
    IntegerHomology,
    ScanResult,
    SmithNormalForm,
    rank_betti,
    relative_homology,
    smith_normal_form,
    torsion_scan,
)
from .reduction import ReducedMatrix, compute_diagram, extract_diagram, reduce
from .torsion import (
    FieldVerdict,
    check_field_independence,
    check_field_independence_upto,
    pivot_prime_factors,
)
