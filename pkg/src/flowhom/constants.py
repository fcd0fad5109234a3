"""
flowhom constants.

Central source of truth for defaults, file names and the CLI exit-code contract.
"""

# ============================================================================
# COMPUTATION DEFAULTS
# ============================================================================

# Highest Betti dimension reported unless the caller raises it
DEFAULT_P_MAX = 3

# Hard cap on |A_p| before a computation aborts with a truncation report
DEFAULT_PATH_LIMIT = 5_000_000

# Prime for the optional modular field (2^31 - 1)
DEFAULT_PRIME = 2_147_483_647

# Oracle guard rails (dense matrices grow like |V|^p)
ORACLE_MAX_VERTICES = 10
ORACLE_MAX_P = 5

# Family enumeration guard: n=7 means 15^6 labelled candidates
ENUMERATE_MIN_N = 3
ENUMERATE_MAX_N = 7
ENUMERATE_DEFAULT_MAX_N = 6

# Worker threads for corpus fan-out
DEFAULT_WORKERS = 4

# ============================================================================
# CORPUS DEFAULTS
# ============================================================================

DEFAULT_PRODUCTIONS = 20
DEFAULT_GOTOS = 16
DEFAULT_GOTO_LINES = 17

# ============================================================================
# LABELS
# ============================================================================

# Fresh vertex made by loop_transform: "<v>__loop<k>"
LOOP_LABEL = "{vertex}__loop{k}"

# Suspension poles for step i (1-based)
POLE_NORTH = "pole{step}_N"
POLE_SOUTH = "pole{step}_S"

# Prefix applied to colliding labels of the second operand of series_compose
SERIES_PREFIX = "g2."

# ============================================================================
# FILES
# ============================================================================

CONFIG_FILE = "flowhom.json"
EDGE_LIST_SUFFIX = ".edges"
DOT_SUFFIX = ".dot"
SKELETON_SUFFIX = ".skel"
MANIFEST_FILE = "manifest.jsonl"
SUMMARY_FILE = "summary.json"

# ============================================================================
# EXIT CODES
# ============================================================================

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_USAGE = 2
EXIT_TRUNCATED = 3
EXIT_CLAIM_FAILED = 4
