"""Exact computations for Dehn surgery on the (-2, 3, 2s+1) pretzel knots.

Submodules: ``poly`` (integer polynomials and root counts), ``words``
(free-group words and presentations), ``prover`` (the order-fact
certificate calculus), ``edgepaths`` (boundary slopes) and ``cli``.
"""

from .edgepaths import count_type23_slope_values, seifert_system, slope_table, type1_scan
from .poly import (IntPoly, alexander_minus2_pretzel, bracket, count_unit_circle_roots,
                   pretzel_q, salem_profile, strip_cyclotomic)
from .words import (SurgeryContext, Word, h1_order, homology_class, longitude, parse_word,
                    relator, surgery_presentation)

__version__ = "0.1.0"

__all__ = [
    "count_type23_slope_values", "seifert_system", "slope_table", "type1_scan",
    "IntPoly", "alexander_minus2_pretzel", "bracket", "count_unit_circle_roots", "pretzel_q",
    "salem_profile", "strip_cyclotomic",
    "SurgeryContext", "Word", "h1_order", "homology_class", "longitude", "parse_word",
    "relator", "surgery_presentation",
]
