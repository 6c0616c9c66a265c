"""Constants for the zlift verification toolkit"""
from enum import Enum, IntEnum
from typing import Dict, Tuple

TOOLKIT_VERSION = "0.1.0"


class CheckStatus(str, Enum):
    """Outcome of a single verification check"""
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"


class ExitCode(IntEnum):
    """Process exit codes of the verify command"""
    OK = 0
    FAIL = 1
    CONFIG = 2


class Classification(str, Enum):
    """Coalgebra type of an element"""
    GROUPLIKE = "GROUPLIKE"
    PRIMITIVE = "PRIMITIVE"
    NEITHER = "NEITHER"


class FamilyKind(str, Enum):
    """How the coproduct acts on the letters of a generator family"""
    STRUCTURAL = "structural"   # Delta(g_a) = sum over b <= a of g_b (x) g_(a-b)
    PRIMITIVE = "primitive"     # Delta(g) = g (x) 1 + 1 (x) g


class CombineMode(str, Enum):
    """Curve combination modes"""
    MUL = "MUL"
    SUBSTITUTE_POWER = "SUBSTITUTE_POWER"
    SCALE = "SCALE"


class ModeKind(str, Enum):
    """Operator families with mode matrices on Fock pieces"""
    HEISENBERG = "HEISENBERG"
    VERTEX = "VERTEX"
    DIV_TRANSLATION = "DIV_TRANSLATION"
    H_GEN = "H_GEN"


class Membership(str, Enum):
    """Result of an integral-form membership query"""
    MEMBER = "MEMBER"
    NOT_IN_LATTICE = "NOT_IN_LATTICE"
    DENOMINATOR = "DENOMINATOR"


class ErrorCode(str, Enum):
    """Error kinds raised by the toolkit"""
    NOT_FINITE = "NOT_FINITE"
    NOT_SUBLATTICE = "NOT_SUBLATTICE"
    UNKNOWN_GENERATOR = "UNKNOWN_GENERATOR"
    NON_INTEGRAL = "NON_INTEGRAL"
    BAD_CONSTANT = "BAD_CONSTANT"
    ORDER_MISMATCH = "ORDER_MISMATCH"
    ORACLE_FAILURE = "ORACLE_FAILURE"
    NOT_GROUPLIKE = "NOT_GROUPLIKE"
    NOT_PRIMITIVE = "NOT_PRIMITIVE"
    NOT_HOMOGENEOUS = "NOT_HOMOGENEOUS"
    NO_INTEGRAL_SOLUTION = "NO_INTEGRAL_SOLUTION"
    DEGREE_OVERFLOW = "DEGREE_OVERFLOW"
    NON_INTEGER_EXPONENT = "NON_INTEGER_EXPONENT"
    ODD_LATTICE = "ODD_LATTICE"
    OUT_OF_WINDOW = "OUT_OF_WINDOW"
    WINDOW_OVERFLOW = "WINDOW_OVERFLOW"
    NOT_STABILIZED = "NOT_STABILIZED"
    INTEGRALITY_VIOLATION = "INTEGRALITY_VIOLATION"
    NOT_AUTOMORPHISM = "NOT_AUTOMORPHISM"
    SINGULAR_REPRESENTATION = "SINGULAR_REPRESENTATION"
    EMPTY_WINDOW = "EMPTY_WINDOW"
    DEGENERATE = "DEGENERATE"
    CONFIG_INVALID = "CONFIG_INVALID"
    PARSE_ERROR = "PARSE_ERROR"
    CACHE_CORRUPT = "CACHE_CORRUPT"


class StatusColors:
    """Color definitions for report rendering"""
    PASS = "green"
    FAIL = "red"
    SKIP = "yellow"
    INFO = "blue"
    NEUTRAL = "grey70"
    HIGHLIGHT = "cyan"

    @classmethod
    def for_status(cls, status: CheckStatus) -> str:
        return getattr(cls, CheckStatus(status).value, cls.NEUTRAL)


# Suite id -> (title, description)
SUITES: Dict[str, Tuple[str, str]] = {
    "hopf": ("Hopf structures", "Coproducts, divided powers, Verschiebung, structural bases"),
    "lifting": ("Liftings", "Curve arithmetic, order extension and integral bracket lifts"),
    "necklace": ("Necklace series", "Integrality of the necklace exponential and its product form"),
    "lattice-va": ("Lattice vertex algebra", "Mode identities and integrality of exponential operators"),
    "witt": ("Witt and Virasoro", "Curves on density modules and enveloping algebra indices"),
    "noghost": ("Null descent", "Partition matrices and transverse Gram determinants"),
}

# Default parameters per suite; CLI flags override these
SUITE_DEFAULTS: Dict[str, Dict] = {
    "hopf": {"n": 8, "order": 4, "primes": [2, 3]},
    "lifting": {"order": 4},
    "necklace": {"window": 3, "degree": 6},
    "lattice-va": {"lattice": "II11.cfg", "weight": 3, "order": 3, "window": 1},
    "witt": {"order": 3, "n": 5, "weight": 3},
    "noghost": {"n": 6, "lattice": "II11_II11.cfg"},
}
