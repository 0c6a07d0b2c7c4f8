"""Integer intervals with open ends at plus/minus omega.

The canonical internal form is open-open: ``(lo..hi)`` denotes the set of
integers strictly between ``lo`` and ``hi``.  Constructors for the closed
bracket shapes desugar by shifting the closed end one unit outward, so
``[m..n]`` becomes ``(m-1..n+1)``, ``[m..n)`` becomes ``(m-1..n)`` and
``(m..n]`` becomes ``(m..n+1)``.  A closed end at an infinite bound is
rejected.  Negative members are allowed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

OMEGA = float("inf")
NEG_OMEGA = float("-inf")


class IntervalError(ValueError):
    """Raised for malformed interval constructions."""


def _check_bound(value, name: str):
    if value in (OMEGA, NEG_OMEGA):
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise IntervalError(f"{name} bound must be an integer or omega, got {value!r}")
    return value


@dataclass(frozen=True)
class Interval:
    """An integer interval in canonical open-open form.

    ``lo`` is an integer or ``NEG_OMEGA``; ``hi`` is an integer or ``OMEGA``.
    Membership is the pure comparison ``lo < i < hi``.
    """

    lo: object
    hi: object

    def __post_init__(self):
        _check_bound(self.lo, "lower")
        _check_bound(self.hi, "upper")
        if self.lo == OMEGA:
            raise IntervalError("lower bound may not be +omega")
        if self.hi == NEG_OMEGA:
            raise IntervalError("upper bound may not be -omega")

    def __contains__(self, i: int) -> bool:
        return self.lo < i < self.hi

    def invert(self) -> "Interval":
        """Mirror the interval around zero: -(m..n) = (-n..-m)."""
        return Interval(-self.hi, -self.lo)

    @property
    def is_untimed(self) -> bool:
        return self.lo == NEG_OMEGA and self.hi == OMEGA

    @property
    def is_empty(self) -> bool:
        return self.lo + 1 >= self.hi

    # -- bracket-shape constructors (desugar to open-open) ------------------

    @staticmethod
    def open_open(m, n) -> "Interval":
        return Interval(m, n)

    @staticmethod
    def closed_closed(m, n) -> "Interval":
        if m == NEG_OMEGA or n == OMEGA:
            raise IntervalError("closed interval end at omega is not allowed")
        return Interval(m - 1, n + 1)

    @staticmethod
    def closed_open(m, n) -> "Interval":
        if m == NEG_OMEGA:
            raise IntervalError("closed interval end at omega is not allowed")
        return Interval(m - 1, n)

    @staticmethod
    def open_closed(m, n) -> "Interval":
        if n == OMEGA:
            raise IntervalError("closed interval end at omega is not allowed")
        return Interval(m, n + 1)

    @staticmethod
    def at_most(n) -> "Interval":
        """The subscript '<= n', i.e. (-omega..n]."""
        return Interval.open_closed(NEG_OMEGA, n)

    @staticmethod
    def at_least(m) -> "Interval":
        """The subscript '>= m', i.e. [m..omega)."""
        return Interval.closed_open(m, OMEGA)

    @staticmethod
    def singleton(n) -> "Interval":
        return Interval.closed_closed(n, n)

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Concrete DSL text; closed brackets are used for finite ends."""

        def low(v):
            return "(-w" if v == NEG_OMEGA else f"[{v + 1}"

        def high(v):
            return "w)" if v == OMEGA else f"{v - 1}]"

        return f"{low(self.lo)}..{high(self.hi)}"

    def __str__(self) -> str:
        return self.render()


UNTIMED = Interval(NEG_OMEGA, OMEGA)
