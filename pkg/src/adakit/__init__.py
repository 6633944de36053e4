"""Left and right parts of module categories of bound quiver algebras."""

from .algebra import BoundAlgebra, algebra_from_text, build_algebra, load_algebra
from .analysis import Analysis, analyze, classify
from .filtration import happel_check, maximal_filtration, simple_connectedness
from .hochschild import hochschild_record, pi1_export
from .homology import ext_dim, global_dimension, inj_dim, proj_dim
from .knit import ARWindow, knit
from .parts import Membership, l_membership, r_membership, sigma_sets
from .report import build_report, render_dot
from .rep import Representation, injective, projective, simple

__version__ = "0.1.0"

__all__ = [
    "BoundAlgebra", "algebra_from_text", "build_algebra", "load_algebra",
    "Analysis", "analyze", "classify",
    "happel_check", "maximal_filtration", "simple_connectedness",
    "hochschild_record", "pi1_export",
    "ext_dim", "global_dimension", "inj_dim", "proj_dim",
    "ARWindow", "knit",
    "Membership", "l_membership", "r_membership", "sigma_sets",
    "build_report", "render_dot",
    "Representation", "injective", "projective", "simple",
]
