"""
toricchow: exact Chow groups, Minkowski weights and log Chow classes of toric fans.
"""

from .blowup import (MonoidIdeal, Subdivision, ToricMorphism, barycentric, common_refinement,
                     ideal_blowup, resolve, star_subdivision)
from .chow import (CycleRep, MinkowskiWeight, chow_presentation, cup, cycle_of_weight,
                   gysin_subdivision, minkowski_weight_basis, pushforward_subdivision,
                   weight_of_cycle, weight_pullback)
from .errors import ToricError
from .fan import Cone, Fan, load_fan, make_cone, make_fan
from .logchow import (LogCycleClass, PolytopeClass, act, equals, log_flat_pullback,
                      log_pushforward, poincare_pair)

__version__ = '1.0.0'
