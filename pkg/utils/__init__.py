"""Utility functions and constants for zlift"""

from utils.logger import setup_logger, get_console, set_quiet_mode
from utils.errors import VerificationError
from utils.constants import (
    CheckStatus, ExitCode, ErrorCode, Classification, FamilyKind,
    CombineMode, ModeKind, Membership, StatusColors
)

__all__ = [
    'setup_logger',
    'get_console',
    'set_quiet_mode',
    'VerificationError',
    'CheckStatus',
    'ExitCode',
    'ErrorCode',
    'Classification',
    'FamilyKind',
    'CombineMode',
    'ModeKind',
    'Membership',
    'StatusColors',
]
