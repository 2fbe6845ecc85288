import json
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List


@dataclass
class CheckResult:
    name: str
    status: str
    residual: float
    tolerance: float
    details: str = ""
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    """
    Outcome of one suite run.

    Serialized with `to_json`; `ok` is true when no check failed (skipped
    checks do not fail a run).
    """
    suite: str
    structure: str
    seed: int
    hbar: List[float]
    grid: Dict[str, float]
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_dict(self) -> Dict:
        payload = asdict(self)
        for check in payload["checks"]:
            # JSON has no NaN/inf
            for key in ("residual", "tolerance"):
                if not math.isfinite(check[key]):
                    check[key] = None
        return payload

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())
