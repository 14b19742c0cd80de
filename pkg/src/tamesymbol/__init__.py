"""Tame symbols on curves over finite fields, with exact verification campaigns.

Layers, bottom up: finite fields and polynomials (``fields``, ``polynomials``),
finite abelian groups and pairings (``abelian``, ``extensions``,
``orthogonality``), truncated Laurent series (``local``), curves, functions and
divisor classes (``curves``, ``functions``, ``picard``), ideles and the global
pairing (``ideles``, ``theorem``), and the campaign runners behind the CLI.
"""

from .curves import ProjectiveLine, WeierstrassCurve, load_curve, parse_curve
from .fields import make_field
from .functions import Divisor, RationalFunction, divisor_of, is_principal
from .ideles import Idele, global_tame_symbol, in_U, load_idele, weil_reciprocity_check
from .local import LocalElement, in_local_kernel, tame_symbol
from .theorem import pairing_matrix_three_ways, separating_witness, verify_theorem_finite

__version__ = "0.1.0"
