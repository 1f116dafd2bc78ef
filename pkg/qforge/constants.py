"""
Constants and configuration for qforge.
Defaults can be overridden from the environment where noted.
"""

import os

# ============================================================================
# RESOURCE LIMITS
# ============================================================================

# Largest number of words (dim V)^k any single degree may touch.
DEFAULT_RESOURCE_CAP = 10**6
RESOURCE_CAP_ENV = "QFORGE_RESOURCE_CAP"

# Slices are searched up to this degree when looking for a top degree.
MAX_TOP_DEGREE_SEARCH = 64

# Localization corner: m is doubled at most this many times.
STABILIZATION_ATTEMPTS = 4


def resource_cap() -> int:
    """Word-count cap, honouring the QFORGE_RESOURCE_CAP override."""
    raw = os.environ.get(RESOURCE_CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_RESOURCE_CAP
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_RESOURCE_CAP
    return value if value > 0 else DEFAULT_RESOURCE_CAP


# ============================================================================
# NAMING
# ============================================================================

# Dual generators toggle this suffix: x -> x_d -> x.
DUAL_SUFFIX = "_d"

# Fresh generators added by trivial extensions and branched covers: v1, v2, ...
FRESH_PREFIX = "v"
FRESH_NAME_LIMIT = 1000

UNIT_LABEL = "1"

# ============================================================================
# HYPOTHESES AND DEFAULTS
# ============================================================================

KOSZUL_CHECK_DEGREE = 6

ASSERTION_FLAGS = ("koszul", "as-regular", "gldim>=2")

# ============================================================================
# CLI / REPORTS
# ============================================================================

EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_INPUT_ERROR = 2

CONVENTIONS = {
    'word_order': 'deglex',
    'pairing': 'untwisted',
    'complement': 'non-pivot words of the echelon basis',
    'frobenius_functional': 'dual of the unique top-degree normal word',
}

FIELD_NAMES = {
    'Q': 'Rationals',
    'Qi': 'GaussianRationals',
}
