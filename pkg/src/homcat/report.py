"""Check reports: verdicts with reproducible counterexamples."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

MAX_WITNESSES = 10


@dataclass(frozen=True)
class Witness:
    identity: str
    inputs: Tuple[Any, ...]
    lhs: Any
    rhs: Any

    def describe_inputs(self) -> str:
        return "(" + ", ".join(str(x) for x in self.inputs) + ")"

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "witness": [str(x) for x in self.inputs],
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


@dataclass
class CheckReport:
    """Outcome of an axiom check.

    ``failures`` keeps at most ``MAX_WITNESSES`` witnesses per identity, in the
    order the checker enumerated them; ``failure_counts`` has the full tally.
    ``checked`` counts evaluated instances per identity.
    """

    name: str = ""
    failures: List[Witness] = field(default_factory=list)
    checked: Dict[str, int] = field(default_factory=dict)
    failure_counts: Dict[str, int] = field(default_factory=dict)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failure_counts

    def __bool__(self) -> bool:
        return self.passed

    def record(self, identity: str, inputs, lhs, rhs) -> bool:
        """Record one instance; returns True when lhs == rhs."""
        self.checked[identity] = self.checked.get(identity, 0) + 1
        if lhs == rhs:
            return True
        count = self.failure_counts.get(identity, 0)
        self.failure_counts[identity] = count + 1
        if count < MAX_WITNESSES:
            self.failures.append(Witness(identity, tuple(inputs), lhs, rhs))
        return False

    def touch(self, identity: str) -> None:
        self.checked.setdefault(identity, 0)

    def failed(self, identity: str) -> bool:
        return identity in self.failure_counts

    def witnesses(self, identity: str | None = None) -> List[Witness]:
        if identity is None:
            return list(self.failures)
        return [w for w in self.failures if w.identity == identity]

    def merge(self, other: "CheckReport") -> "CheckReport":
        for w in other.failures:
            if sum(1 for x in self.failures if x.identity == w.identity) < MAX_WITNESSES:
                self.failures.append(w)
        for k, v in other.checked.items():
            self.checked[k] = self.checked.get(k, 0) + v
        for k, v in other.failure_counts.items():
            self.failure_counts[k] = self.failure_counts.get(k, 0) + v
        self.notes.update(other.notes)
        return self

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [w.to_dict() for w in self.failures],
            "checked": dict(sorted(self.checked.items())),
            "failure_counts": dict(sorted(self.failure_counts.items())),
            "notes": {k: (v if isinstance(v, (bool, int, str)) else str(v)) for k, v in self.notes.items()},
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.name}".rstrip()]
        for ident in sorted(self.checked):
            bad = self.failure_counts.get(ident, 0)
            lines.append(f"  {ident}: {self.checked[ident] - bad}/{self.checked[ident]} ok")
        for w in self.failures[:3]:
            lines.append(f"  witness {w.identity} {w.describe_inputs()}: lhs={w.lhs} rhs={w.rhs}")
        return "\n".join(lines)
