"""Verification report types shared by the identity suite and the CLI."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .rationals import format_rational

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass
class Counterexample:
    n: int
    k_or_s: int
    lhs: Fraction
    rhs: Fraction

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k_or_s": self.k_or_s,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


@dataclass
class IdentityReport:
    identity: str
    params: dict
    n_max: int
    s_max: int | None
    status: str
    counterexamples: list[Counterexample] = field(default_factory=list)
    elapsed_ms: int = 0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {
            "identity": self.identity,
            "params": self.params,
            "range": {"n_max": self.n_max, "s_max": self.s_max},
            "status": self.status,
            "counterexamples": [ce.to_dict() for ce in self.counterexamples],
            "elapsed_ms": self.elapsed_ms,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


class _Timer:
    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = int(round((time.perf_counter() - self._t0) * 1000))
        return False


def timer() -> _Timer:
    return _Timer()
