"""Verification report data shared by all suites"""
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from utils.constants import CheckStatus, ExitCode, TOOLKIT_VERSION
from utils.errors import VerificationError


def _jsonable(value: Any) -> Any:
    """Exact values become strings; containers are converted recursively"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


@dataclass
class Check:
    """One verification outcome"""
    id: str
    status: CheckStatus
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "status": self.status.value, "witness": _jsonable(self.witness)}


@dataclass
class Report:
    """Checks of one suite run plus the parameters and versions that produced them"""
    suite: str
    params: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    versions: Dict[str, str] = field(default_factory=lambda: {"toolkit": TOOLKIT_VERSION})
    logger: Optional[logging.Logger] = field(default=None, repr=False, compare=False)

    def add(self, check_id: str, passed: bool, witness: Optional[Dict[str, Any]] = None) -> Check:
        check = Check(check_id, CheckStatus.PASS if passed else CheckStatus.FAIL, witness or {})
        self.checks.append(check)
        if self.logger:
            self.logger.check(check_id, passed)
        return check

    def skip(self, check_id: str, reason: str) -> Check:
        check = Check(check_id, CheckStatus.SKIP, {"reason": reason})
        self.checks.append(check)
        if self.logger:
            self.logger.info(f"[yellow]SKIP[/yellow] {check_id} ({reason})", extra={"markup": True})
        return check

    def run(self, check_id: str, fn: Callable[[], Tuple[bool, Dict[str, Any]]]) -> Check:
        """Record fn's (passed, witness); a VerificationError becomes a FAIL with its witness"""
        try:
            passed, witness = fn()
        except VerificationError as e:
            if self.logger:
                self.logger.error(f"{check_id}: {e}")
            return self.add(check_id, False, e.as_witness())
        return self.add(check_id, passed, witness)

    def merge(self, other: 'Report', prefix: str = ""):
        for check in other.checks:
            self.checks.append(Check(prefix + check.id, check.status, check.witness))

    @property
    def failed(self) -> List[Check]:
        return [c for c in self.checks if c.status is CheckStatus.FAIL]

    @property
    def passed(self) -> bool:
        return not self.failed

    @property
    def exit_code(self) -> ExitCode:
        return ExitCode.OK if self.passed else ExitCode.FAIL

    def counts(self) -> Dict[str, int]:
        out = {s.value: 0 for s in CheckStatus}
        for c in self.checks:
            out[c.status.value] += 1
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "params": _jsonable(self.params),
            "checks": [c.to_dict() for c in self.checks],
            "versions": dict(self.versions),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
