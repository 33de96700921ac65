"""Exact invariant measures for piecewise fractional linear interval maps.

Construct Moebius-branch interval maps and their flipped relatives,
decide existence of natural dual maps, synthesize closed-form invariant
densities, verify the transfer-operator fixed-point identity exactly,
transport densities across semiconjugacies, and cross-validate
numerically.
"""

from .polys import Polynomial, Q, RationalFunction, qstr, parse_q
from .branches import MoebiusBranch
from .maps import (CountableMap, ParamTriple, PiecewiseMap, compose_maps,
                   family_T, flip_family, gauss_map, intro_one_step_map,
                   map_from_json, named_map, shift_ratio_map, times_a_map)
from .duality import (CONDITIONS, NaturalInterval, IntervalUnion, ProjQ, PsiMap,
                      SameMeasure, SingularPoint, common_fixed_point,
                      condition_eval, condition_from_determinant,
                      density_from_dual, dual_interval, exceptional_dual_verify,
                      kuzmin_check_exact, natural_dual_solve, same_measure,
                      transfer_apply)
from .transport import (SeriesDensity, kuzmin_check_series, series_eval,
                        transport_density)
from .numlab import (EmpiricalDensity, NonIntegrableDensity, birkhoff_histogram,
                     l1_compare, ulam_stationary)
from .catalog import catalog_export, catalog_get, catalog_list

__version__ = "0.1.0"
