"""This file contains all constant definitions

Physical constants are CODATA exact values. Caps and tolerances can be
overridden per call where the owning function takes a ``cap=`` or
``tolerance=`` keyword.
"""

BOLTZMANN_CONSTANT = 1.380649e-23
"""Boltzmann constant, in joules per kelvin"""

ELECTRON_VOLT = 1.602176634e-19
"""One electron volt, in joules"""

ROOM_TEMPERATURE = 300.0
"""Temperature used for "T = T_room", in kelvin"""

EXPLICIT_SUPPORT_CAP = 2 ** 24
"""Largest number of outcomes an :class:`.ExplicitDistribution` may hold"""

NORMALIZATION_TOLERANCE = 1e-9
"""Allowed deviation of a distribution's total mass from 1"""

MIXTURE_WEIGHT_TOLERANCE = 1e-12
"""Allowed deviation of mixture weights' sum from 1"""

UNIFORMITY_TOLERANCE = 1e-12
"""Distance from 1/2 below which a bit marginal counts as uniform"""

LAMBDA_RELATIVE_TOLERANCE = 1e-12
"""Relative tolerance on the cut level found by the type-class bisection"""

LAMBDA_MAX_ITERATIONS = 200
"""Iteration cap of the type-class cut-level bisection"""

EXACT_COUNT_MAX_N = 4096
"""Largest number of boxes for which type-class sizes are kept as exact
integers; above it support sizes are carried in the log domain"""

EXHAUSTIVE_BET_MAX_N = 16
"""Largest number of boxes for which gambler bets are searched exhaustively"""

ORACLE_MAX_SUPPORT = 20
"""Largest support the brute-force smoothing oracles accept"""

ORACLE_MAX_N = 20
"""Largest number of boxes the exhaustive game evaluator accepts"""

STRATEGY_SEARCH_MAX_N = 3
"""Largest number of boxes the exhaustive strategy search accepts"""

ORACLE_SAMPLES = 10000
"""Grid points and random ball members tried by the min-entropy oracle"""

DEFAULT_EPSILON = 1e-3
"""Smoothing parameter used when none is given"""

TABLE1_EPSILON = 2e-4
"""Smoothing parameter reproducing the second row of the work-value table"""

DEFAULT_SAMPLES = 10 ** 5
"""Number of Monte Carlo plays used when none is given"""

DEFAULT_SEED = 143
"""Seed used when none is given"""

MONTE_CARLO_BATCH_SIZE = 4096
"""Plays per :class:`~szilardsim.events.BatchPrepared` event; fixed so the
splitting of a run into random streams never depends on scheduling"""

SIGNIFICANT_DIGITS = 6
"""Significant digits used when numbers are rendered as text"""

EPSILON_SCAN_LOW = 5e-5
"""Smallest smoothing parameter of the default scan grid"""

EPSILON_SCAN_HIGH = 1e-3
"""Largest smoothing parameter of the default scan grid"""

EPSILON_SCAN_POINTS = 10
"""Number of log-spaced points of the default scan grid"""

SENSITIVITY_TEMPERATURES = (290.0, 295.0, 300.0)
"""Temperatures, in kelvin, of the room-temperature sensitivity report"""

FIGURE3_BIAS = 0.7
"""Left-probability of the i.i.d. boxes in the entropy-convergence data"""

FIGURE3_SIZES = (100, 200, 400, 800, 1600)
"""Box counts of the entropy-convergence data"""

TABLE1_BOXES = 1000
"""Box count of the work-value table"""
