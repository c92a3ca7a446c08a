"""Cohen-Macaulay versus conic divisor classes of Segre-product semigroup rings."""

from .cm import classify_segre3, classify_veronese2, cm_region_segre3, cm_set_veronese2, count_formulas, sv_test
from .expr import PolyRing, Segre, Shift, Veronese, parse_expr, series_of
from .families import Segre3Params, Veronese2Params, bezout_pair
from .geometry import class_group, conic_classes_generic, conic_set_segre3, conic_set_veronese2, presentation
from .series import HilbertSeries, LaurentPolynomial, a_invariant, coefficient, initial_degree, multiplicity

__version__ = "0.1.0"
