"""spinsurf: conformal and Lagrangian surfaces in R^4 from spinor data.

A numerical realization of the Weierstrass-type representation: complex
calculus on rectangular grids, Dirac-type spinor systems, integration of
the closed representation 1-forms into immersions, and an equivalent
quaternionic formulation used as a cross-check.
"""

from ._backend import BACKEND
from .calculus import (IntegrationResult, d_dx, d_dy, d_dz, d_dzbar,
                       exterior_derivative, gradient_form, integrate_form)
from .dirac import (LeftSpinor, Potential, RightSpinor, canonical_right_spinor,
                    constant_p_left_family, constant_potential, left_dirac_residual,
                    potential_from_beta, right_dirac_residual, solve_left_dirac)
from .errors import (ConfigError, DivergenceError, GridMismatchError, ParseError,
                     SpinsurfError, StencilError, UnsupportedDomainError, ValidationError)
from .expressions import parse_expression, to_string
from .fields import BasePoint, ComplexField, Grid, OneForm
from .immersion import (GeometryReport, Immersion4, conformal_factor,
                        conformality_defect, geometry_report, integrate_immersion,
                        konopelchenko_oneforms, lagrangian_defect, lagrangian_oneforms,
                        to_lagrangian_coordinates)
from .quaternions import (Quaternion, QuaternionField, QuaternionOneForm, embed_left,
                          embed_right, equivalence_check, exterior_derivative_q,
                          integrate_q, left_dzbar, product_form,
                          quaternionic_dirac_residual, right_dzbar)

__version__ = "0.1.0"
