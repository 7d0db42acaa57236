"""Numerical period mapping from circle diffeomorphisms to the Siegel disc."""

from .beltrami import (BeltramiCoefficient, MomentSequence, beltrami_to_vector,
                       disc_moments, rauch_first_variation)
from .diffeo import (CircleDiffeo, MobiusParams, NotADiffeomorphism, compose,
                     fit_mobius, flow, identity, invert, make_diffeo,
                     mobius_boundary, rotation)
from .fourier import (CircleSeries, VectorField, analyze, apply_J, basis_vector,
                      hermitian_pairing, project_minus, project_plus,
                      symplectic_form, synthesize)
from .period import (ConditioningError, PeriodPoint, mobius_act, period_matrix,
                     siegel_membership)
from .segal import SymplecticBlocks, blocks, check_symplectic, compose_blocks
from .tangent import (TangentHom, d_pi, holomorphy_check, isometry_ratio,
                      schottky_residual, schottky_tangent, siegel_metric,
                      wp_metric)

__version__ = "0.1.0"
