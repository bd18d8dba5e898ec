"""Check reports, error types and the global capacity limits."""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from typing import Any


class ResiduumError(Exception):
    pass


class ConstructionError(ResiduumError):
    """Raised when tables or relations do not describe the requested structure."""


class InconsistentAlgebraError(ResiduumError):
    """The supplied residual tables are not residuals of any product."""


class NonDistributiveError(ResiduumError):
    pass


class CapacityError(ResiduumError):
    def __init__(self, what: str, size: int, limit: int, flag: str):
        self.what, self.size, self.limit, self.flag = what, size, limit, flag
        super().__init__(
            f"{what} has size {size}, exceeding the cap of {limit} (raise it with {flag})"
        )


@dataclass
class CheckReport:
    """Outcome of a universally quantified check.

    ``witness`` is the lexicographically least counterexample tuple (carrier
    indices) when ``ok`` is false, and ``None`` otherwise.
    """

    name: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""
    info: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        s = f"{self.name}: {'pass' if self.ok else 'FAIL'}"
        if self.witness is not None:
            s += f" witness={self.witness}"
        if self.detail:
            s += f" ({self.detail})"
        return s


@dataclass(frozen=True)
class Limits:
    max_carrier: int = 512  # exhaustive triple scans
    max_enum: int = 16  # subalgebra enumeration
    max_magma: int = 9  # powerset blow-up of complex algebras
    max_poset: int = 16  # downset enumeration

    FLAGS = {
        "max_carrier": "--max-carrier",
        "max_enum": "--max-enum",
        "max_magma": "--max-magma",
        "max_poset": "--max-poset",
    }


_limits = Limits()


def limits() -> Limits:
    return _limits


def set_limits(**kw) -> Limits:
    global _limits
    _limits = replace(_limits, **kw)
    return _limits


@contextmanager
def override_limits(**kw):
    global _limits
    saved = _limits
    _limits = replace(_limits, **kw)
    try:
        yield _limits
    finally:
        _limits = saved


def require_within(what: str, size: int, cap: str) -> None:
    limit = getattr(_limits, cap)
    if size > limit:
        raise CapacityError(what, size, limit, Limits.FLAGS[cap])


__all__ = [
    "CapacityError",
    "CheckReport",
    "ConstructionError",
    "InconsistentAlgebraError",
    "Limits",
    "NonDistributiveError",
    "ResiduumError",
    "limits",
    "override_limits",
    "require_within",
    "set_limits",
]
