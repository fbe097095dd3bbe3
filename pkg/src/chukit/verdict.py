"""Truthy check results that carry a counterexample."""

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    ``bool(v)`` is the answer. On failure ``reason`` names the violated
    law and ``witness`` holds the offending indices, in a form that can be
    fed back into the checking operation.
    """
    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self):
        return self.ok

    @classmethod
    def fail(cls, reason, witness=None):
        return cls(False, reason, witness)


PASS = Verdict(True)
