"""Error type shared by all zlift modules"""
from typing import Any, Dict, Optional

from utils.constants import ErrorCode


class VerificationError(Exception):
    """Raised when an operation cannot produce an exact result"""

    def __init__(self, code: ErrorCode, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(f"{code.value}: {message}")
        self.code = code
        self.message = message
        self.details = details or {}

    def as_witness(self) -> Dict[str, Any]:
        """Serializable form used in report entries"""
        witness = {"error": self.code.value, "message": self.message}
        if self.details:
            witness["details"] = {k: str(v) for k, v in sorted(self.details.items())}
        return witness
