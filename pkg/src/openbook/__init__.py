"""Combinatorial calculus of abstract open books.

Pages are one-vertex ribbon graphs, curves and arcs are reduced edge paths,
monodromies are words in Dehn twists.  On top of that sit stabilization,
Murasugi sums, page surgery, first homology of the carried 3-manifold and
two contact-topological certificates.
"""

from .books import (HomologyPresentation, OpenBook, connect_binding, destabilize, disk_book,
                    first_homology, homology_matrix, hopf_band, is_homology_sphere,
                    make_open_book, murasugi_sum, page_surgery, stabilize)
from .certificates import (ConventionError, FillabilityReport, NegativeStabilization,
                           OvertwistedCertificate, Rejection, SteinCertificate,
                           check_positive_factorization, check_sobering,
                           detect_negative_stabilization, fillability_report,
                           search_sobering_arc, search_stein_certificate)
from .curves import (ArcClass, CurveClass, IsotopicArcs, SignData, algebraic_intersection,
                     apply_twist, cut_pieces, geometric_intersection, i_boundary,
                     is_boundary_parallel, is_separating, is_simple, minimal_position_signs,
                     neighborhood_boundary, reduce, self_intersection)
from .dsl import DslError, Script, parse
from .mcg import (Letter, TwistWord, act_on, compose, conjugate_push, equal, homology_action,
                  identity, intersection_form, inverse, is_identity, negative_normal_form,
                  positify, transvection, twist, verify_relation)
from .surface import FatGraph, NamedCurveSystem, Surface, euler_characteristic, make_surface, \
    standard_curves

__version__ = "0.1.0"

__all__ = [
    "ArcClass",
    "ConventionError",
    "CurveClass",
    "DslError",
    "FatGraph",
    "FillabilityReport",
    "HomologyPresentation",
    "IsotopicArcs",
    "Letter",
    "NamedCurveSystem",
    "NegativeStabilization",
    "OpenBook",
    "OvertwistedCertificate",
    "Rejection",
    "Script",
    "SignData",
    "SteinCertificate",
    "Surface",
    "TwistWord",
    "act_on",
    "algebraic_intersection",
    "apply_twist",
    "check_positive_factorization",
    "check_sobering",
    "compose",
    "conjugate_push",
    "connect_binding",
    "cut_pieces",
    "destabilize",
    "detect_negative_stabilization",
    "disk_book",
    "equal",
    "euler_characteristic",
    "fillability_report",
    "first_homology",
    "geometric_intersection",
    "homology_action",
    "homology_matrix",
    "hopf_band",
    "i_boundary",
    "identity",
    "intersection_form",
    "inverse",
    "is_boundary_parallel",
    "is_homology_sphere",
    "is_identity",
    "is_separating",
    "is_simple",
    "make_open_book",
    "make_surface",
    "minimal_position_signs",
    "murasugi_sum",
    "negative_normal_form",
    "neighborhood_boundary",
    "page_surgery",
    "parse",
    "positify",
    "reduce",
    "search_sobering_arc",
    "search_stein_certificate",
    "self_intersection",
    "stabilize",
    "standard_curves",
    "transvection",
    "twist",
    "verify_relation",
]
