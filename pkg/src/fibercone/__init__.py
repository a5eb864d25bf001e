"""Blowup-algebra invariants of m-primary ideals.

Computes, for an ideal I primary to the maximal ideal of a localized
(quotient of a) polynomial ring and a minimal reduction J: reduction
numbers, the classical length-sum families, Hilbert series of the
associated graded ring G(I) and the fiber cone F(I), Cohen-Macaulayness
tests, certified depth lower bounds, and a checklist of depth statements
evaluated on the instance.
"""

from .poly import (GREVLEX, LEX, ArityError, MonomialOrder, PolyParseError,
                   Polynomial, poly_parse, poly_str)
from .groebner import (DEFAULT_DEGREE_CAP, DegreeCapExceeded,
                       DimensionalityError, ReducedGB, buchberger,
                       count_standard_monomials, is_zero_dimensional,
                       krull_dimension, normalform, standard_monomials)
from .ideals import (CACHE_DIR_ENV, ContextMismatch, DegenerateDivisor,
                     Ideal, NotASubmodule, NotLocallyFinite, RingContext)
from .invariants import (FAMILIES, HilbertSeries, InternalConsistencyError,
                         LengthTable, NotAReductionWithinCap, ReductionData,
                         WindowTooSmall, fiber_layer_length,
                         hilbert_coefficients, hilbert_series_f,
                         hilbert_series_g, length_quotient, length_sum,
                         mingens, minimal_reduction_check, reduction_data)
from .depth import (STATEMENT_IDS, ChecklistVerdict, DepthCertificate,
                    FiberCMReport, InstanceInvariants, NotAMinimalGenerator,
                    RegularityEvidence, check_cortadellas_zarzuela,
                    check_o_regular, check_star_regular,
                    check_valabrega_valla, cm_test_fiber, depth_lower_bound,
                    good_element_witness, theorem_checklist)
from .session import (Report, SessionAST, SessionConfig, SessionSyntaxError,
                      emit_report, parse_session, pretty_print, report_tree,
                      run_session)
from .corpus import CORPUS, check_example

__version__ = "0.1.0"
