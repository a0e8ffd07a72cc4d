"""Quasiconformal lower bounds for the principal Dirichlet-Laplacian eigenvalue.

Evaluates the map families (ellipse, rose petal, epicycloid) on the unit
disc, computes the ratio and growth-gap eigenvalue bounds they induce, and
verifies every bound against a built-in P1 finite-element reference solver.
"""

__version__ = "0.1.0"

from .analysis import (  # noqa: F401
    PolarGrid,
    QcAnalysis,
    analyze_family,
    global_distortion,
    image_area,
    jacobian_beta_integral,
    jacobian_sup_norm,
)
from .bounds import (  # noqa: F401
    a22_from_lambda,
    bessel_j0_first_zero,
    crossover_vs_hersch,
    ellipse_vs_hersch,
    faber_krahn_bound,
    growth_gap_bound,
    hersch_bound,
    makai_bound,
    qc_lower_bound,
    sobolev_constant_upper,
    weighted_sobolev_constant,
)
from .fem import EigenResult, SparseMatrix, assemble_p1, principal_eigenvalue, smallest_eigenpair  # noqa: F401
from .maps import (  # noqa: F401
    Ellipse,
    Epicycloid,
    Identity,
    MapFamily,
    RosePetal,
    WirtingerEval,
    evaluate_map,
    jacobian,
    pointwise_distortion,
    wirtinger_derivatives,
)
from .mesh import Mesh, pushforward_mesh, rectangle_mesh, unit_disc_mesh  # noqa: F401
from .report import analyze_report, paper_table, sweep, verify_report  # noqa: F401
