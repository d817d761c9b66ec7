"""Faber polynomials of matrices on convex sets, disk cuts and lenses."""
from .bounds import (BoundReport, convex_check, corollary_bound, elman_limit_check, est6bis_bound,
                     gmres_bounds, lemma3_bound, theorem_check)
from .conformal import ExteriorMap, build_map, elman_gamma, gamma, lens_gamma_closed_form
from .errors import (ConfigurationError, ConvergenceError, DomainContainsOrigin, FaberkitError,
                     SpectrumTooClose, UnsupportedDomain)
from .faber import FaberPolynomial, faber_coeffs, faber_eval_matrix, faber_eval_scalar, laurent_of_psi
from .geometry import Disk, DiskCut, Ellipse, HullPolygon, Lens, boundary_quadrature, domain_from_dict, v_of
from .krylov import gmres_run
from .spectral import numerical_radius, numerical_range

__version__ = "0.1.0"
