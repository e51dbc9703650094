"""Exact tools for the asymptotic Fermat criterion over imaginary quadratic fields.

Modules: ``quad_field`` (arithmetic in Q(sqrt(-d))), ``sunit`` (the S-unit
equation), ``frey`` (Frey curve invariants), ``criterion`` (verdicts),
``density`` (squarefree counts, C', Mersenne statistics) and ``cli``.
"""

from .quad_field import Element, make_field
from .criterion import Outcome, SearchBounds, check_criterion

__version__ = "0.1.0"
__all__ = ["Element", "make_field", "Outcome", "SearchBounds", "check_criterion"]
