"""Direct evaluation of metric temporal formulas on timed HT-traces.

This evaluator implements each metric operator's satisfaction condition
literally (position arithmetic on the time stamps) and never touches path
expressions or accessibility relations, so it serves as an independent
oracle for the compiled core semantics.  Boolean connectives follow the
here-and-there readings: implication is checked in both worlds, negation is
dissatisfaction in the collapsed total trace.
"""

from __future__ import annotations

from .formulas import (
    Always, AlwPast, And, Atom, Bot, Eventually, EvPast, Final, Formula,
    Implies, Initial, Next, Not, Or, Prev, Release, Since, Top, Trigger,
    Until, WNext, WPrev,
)
from .semantics import HERE, THERE, World, _check_position
from .traces import TimedHTTrace, total_of


class MhtEvaluator:
    """Memoizing direct evaluator for one trace (here-world queries)."""

    def __init__(self, trace: TimedHTTrace):
        self.trace = trace
        self.lam = trace.length
        self.tau = trace.tau
        self.here = trace.here
        if trace.is_total:
            self.total = self
        else:
            self.total = MhtEvaluator(total_of(trace))
        self._memo = {}
        self._pin = []

    def sat(self, f: Formula, k: int, world: World = HERE) -> bool:
        if world is THERE:
            return self.total.sat(f, k, HERE)
        key = (id(f), k)
        v = self._memo.get(key)
        if v is None:
            v = self._compute(f, k)
            self._memo[key] = v
            self._pin.append(f)
        return v

    def _compute(self, f: Formula, k: int) -> bool:
        t = type(f)
        sat, tau, lam = self.sat, self.tau, self.lam
        if t is Atom:
            return f.name in self.here[k]
        if t is Bot:
            return False
        if t is Top:
            return True
        if t is And:
            return sat(f.left, k) and sat(f.right, k)
        if t is Or:
            return sat(f.left, k) or sat(f.right, k)
        if t is Implies:
            here_ok = not sat(f.left, k) or sat(f.right, k)
            there_ok = not self.total.sat(f.left, k) or self.total.sat(f.right, k)
            return here_ok and there_ok
        if t is Not:
            return not self.total.sat(f.body, k)
        if t is Initial:
            return k == 0
        if t is Final:
            return k + 1 == lam
        if t is Next:
            return k + 1 < lam and tau[k + 1] - tau[k] in f.interval and sat(f.body, k + 1)
        if t is WNext:
            return k + 1 == lam or tau[k + 1] - tau[k] not in f.interval or sat(f.body, k + 1)
        if t is Prev:
            return k > 0 and tau[k] - tau[k - 1] in f.interval and sat(f.body, k - 1)
        if t is WPrev:
            return k == 0 or tau[k] - tau[k - 1] not in f.interval or sat(f.body, k - 1)
        if t is Eventually:
            return any(tau[i] - tau[k] in f.interval and sat(f.body, i)
                       for i in range(k, lam))
        if t is Always:
            return all(tau[i] - tau[k] not in f.interval or sat(f.body, i)
                       for i in range(k, lam))
        if t is EvPast:
            return any(tau[k] - tau[i] in f.interval and sat(f.body, i)
                       for i in range(k + 1))
        if t is AlwPast:
            return all(tau[k] - tau[i] not in f.interval or sat(f.body, i)
                       for i in range(k + 1))
        if t is Until:
            return any(
                tau[j] - tau[k] in f.interval
                and sat(f.right, j)
                and all(sat(f.left, i) for i in range(k, j))
                for j in range(k, lam)
            )
        if t is Since:
            return any(
                tau[k] - tau[j] in f.interval
                and sat(f.right, j)
                and all(sat(f.left, i) for i in range(j + 1, k + 1))
                for j in range(k + 1)
            )
        if t is Release:
            return all(
                tau[j] - tau[k] not in f.interval
                or sat(f.right, j)
                or any(sat(f.left, i) for i in range(k, j))
                for j in range(k, lam)
            )
        if t is Trigger:
            return all(
                tau[k] - tau[j] not in f.interval
                or sat(f.right, j)
                or any(sat(f.left, i) for i in range(j + 1, k + 1))
                for j in range(k + 1)
            )
        raise ValueError(f"not a metric formula: {type(f).__name__}")


def mht_satisfies(m: TimedHTTrace, k: int, f: Formula, world: World = HERE) -> bool:
    """Direct metric satisfaction; f may use Boolean and metric operators only."""
    _check_position(m, k)
    return MhtEvaluator(m).sat(f, k, world)
