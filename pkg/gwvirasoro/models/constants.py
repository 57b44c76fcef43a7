"""Constants used throughout the application."""

DEFAULT_T_MAX = 8
DEFAULT_D_MAX = 4

MIN_T_MAX = 3
MAX_T_MAX = 40
MAX_D_MAX = 12

MAX_DHOMOG_FIELDS = 4

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

BUILTIN_PREFIX = "builtin:"
BUILTIN_NAMES = ("point", "p1", "p2")

REPORT_FORMATS = ("json", "text")

# Genus 0 and genus 1 invariants of the projective plane with only point insertions.
P2_GENUS0_NUMBERS = (1, 1, 12, 620, 87304)
P2_GENUS1_NUMBERS = (0, 0, 1, 225, 87192)
