"""Exact workbench for Briancon-Skoda type containments.

Polynomial rings and their quotients, Groebner bases, L-complexes, blowup
charts with Cech complexes, integral-closure certificates, and the checks
that tie them together.
"""

from .blowup import (BlowupModel, CechComplex, build_blowup, cech_complex, exceptional_power_membership,
                     rees_presentation)
from .bs import bs_matrix, koszul, l_complex, twisted_chart_complex
from .closure import (ClosureVerdict, certify_member, certify_via, closure_generators, closure_verdict,
                      power_certificate, recheck, reduction_member)
from .complexes import (FreeComplex, TotalComplexSystem, Witness, check_d_squared, class_vanishes_in_H0,
                        homology_is_zero_at)
from .errors import (CertificateError, ParseError, PreconditionError, ResourceCapExceeded, SkodaError,
                     UnknownVariableError)
from .field import QQ, Field
from .gbcore import Caps, caps_scope
from .ideal import (Ideal, colon, eliminate, groebner_basis, ideal_equal, ideal_member, ideal_power,
                    ideal_product, ideal_sum, intersect, saturate)
from .modules import ModuleMatrix, image_contains, module_solve, syzygies
from .monomial import MonomialIdeal, monomial_integral_closure, newton_hull_member
from .orders import MonomialOrder
from .parse import parse_list, parse_poly
from .ring import Poly, RingMap, RingPresentation, make_ring, ring_quotient
from .workbench import (BsReport, bir_preclosure_member, bs_check, chart_level_check, counterexample_suite,
                        main_theorem_verify)

__version__ = "0.1.0"
