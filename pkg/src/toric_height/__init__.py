"""Exact canonical heights of projective toric varieties.

Quick start::

    >>> from toric_height import canonical_height
    >>> canonical_height([(0,), (1,), (2,)], (2, 1, 1)).value
    LogLinearNumber(log(2))
"""

from .arrangement import (CurrentMeasure, TropicalHyperplane, TropicalVertex,
                          build_hyperplanes, current_measure,
                          enumerate_vertices, enumerate_vertices_from_pairs)
from .engine import (ChainStep, HeightReport, HeightValue, alpha_basis,
                     build_chain, canonical_height, evaluate_step,
                     vertex_contribution)
from .errors import *  # noqa: F401,F403
from .geometry import (LatticePolytope, convex_hull, normalized_volume,
                       toric_degree)
from .lattice import (extend_to_unimodular_basis, hermite_normal_form,
                      saturated_kernel_basis, solve_integer_row)
from .loglinear import ApproxLogNumber, LogLinearNumber, log_abs, sign_of
from .oracle import (MCEstimate, mahler_hypersurface_height, mass_probe,
                     mc_polycircle, run_checks)
from .toric import (Binomial, PointConfig, SectionData, binomial_generators,
                    is_irreducible_binomial, lift_config, membership,
                    parametrize, retraction_check, section_data,
                    section_polynomial, validate_config)

__version__ = "0.1.0"
