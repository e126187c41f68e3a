"""Three-valued verdicts with evidence.

Checks at a finite horizon can establish a fact, refute it at schedule
level, or run out of data; ``Verdict`` keeps the three outcomes distinct and
always carries something checkable for yes/no.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any


class Status(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Any = None
    detail: str = ""
    horizon: int | None = None

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.NO

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def exit_code(self) -> int:
        return {Status.YES: 0, Status.NO: 1, Status.UNKNOWN: 2}[self.status]


def yes(witness: Any = None, detail: str = "") -> Verdict:
    return Verdict(Status.YES, witness, detail)


def no(witness: Any = None, detail: str = "") -> Verdict:
    return Verdict(Status.NO, witness, detail)


def unknown(detail: str = "", horizon: int | None = None) -> Verdict:
    return Verdict(Status.UNKNOWN, None, detail, horizon)
