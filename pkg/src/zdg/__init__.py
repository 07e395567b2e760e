"""Zero-divisor graphs of Z_n: block adjacency, spectra, energy, Wiener index."""

from .graph import (
    AdjacencyMatrix,
    Block,
    BlockSpec,
    Convention,
    adjacency_oracle,
    build_adjacency,
    check_block_form,
    export,
)
from .jacobi import jacobi_eigenvalues
from .spectra import (
    Mode,
    QuarticCoefficients,
    ReducedClassMatrix,
    Spectrum,
    Variant,
    closed_eigenvalues_p3,
    energy_closed_p3,
    quartic_p2q,
    reduced_class_matrix,
    spectrum,
    verify_quartic,
)
from .wiener import (
    DistanceMatrix,
    WienerReport,
    bfs_distances,
    class_distance_table,
    wiener_closed_p3,
    wiener_from_class_table,
    wiener_index,
    wiener_paper_p2q,
    wiener_report,
)
from .zmod import (
    ClassStructure,
    FactoredModulus,
    General,
    PCubed,
    PSquaredQ,
    class_partition,
    factorize,
    zero_divisors,
)

__version__ = "0.1.0"
