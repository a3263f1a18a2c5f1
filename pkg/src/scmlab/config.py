"""Global toggles.

CHECK_MODE turns on expensive self-verification inside core operations
(Buchberger post-checks, colon monotonicity, exactness of syzygies).  The
test suite enables it; production runs leave it off.
"""

CHECK_MODE = False

# Default coefficient field: a large prime keeps random "general position"
# choices reliable and arithmetic fast.
DEFAULT_PRIME = 32003

# Attempt caps for randomized constructions.
DEFAULT_ATTEMPTS = 8

# Pair-queue criteria for syzygy-mode Groebner runs can be disabled for
# debugging; both settings must give identical module spans.
SYZ_CHAIN_CRITERION = True


def check_mode_on():
    global CHECK_MODE
    CHECK_MODE = True


def check_mode_off():
    global CHECK_MODE
    CHECK_MODE = False
