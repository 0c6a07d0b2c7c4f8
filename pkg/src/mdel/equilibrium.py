"""Equilibrium (stable) model checking and bounded enumeration.

A total trace is in equilibrium for a theory when it is a model and no
trace with the same there component and time grid but a strictly smaller
here component is also a model.  The minimality search therefore fixes
there and tau and varies only the here states.  Candidates are examined in
a fixed order: by the number of removed atom occurrences ascending, then
lexicographically by the removed occurrence positions (occurrences listed
position-major with atoms sorted alphabetically); the first blocking model
in that order is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .formulas import Theory, compile_to_core
from .semantics import Evaluator, HERE
from .traces import TimedHTTrace, TraceBounds, enumerate_traces, trace_to_dict


@dataclass(frozen=True)
class EquilibriumResult:
    model: TimedHTTrace
    lam: int
    witnesses_checked: int


@dataclass(frozen=True)
class EquilibriumVerdict:
    status: str  # "equilibrium" | "not-model" | "blocked"
    blocker: Optional[TimedHTTrace]
    witnesses_checked: int


def result_to_dict(r: EquilibriumResult) -> dict:
    doc = trace_to_dict(r.model)
    doc["status"] = "equilibrium"
    return doc


def _compile_theory(theory: Theory):
    return tuple(compile_to_core(f) for f in theory.formulas)


def _models_compiled(ev: Evaluator, compiled) -> bool:
    if ev.lam == 0:
        return not compiled
    return all(ev.sat_mask(f, HERE) & 1 for f in compiled)


def is_model(m: TimedHTTrace, theory: Theory) -> bool:
    """Modelhood: satisfaction of every theory formula at position 0.

    The empty trace has no position 0, so it models only the empty theory.
    """
    return _models_compiled(Evaluator(m), _compile_theory(theory))


def _here_candidates(t: TimedHTTrace):
    """All proper sub-here traces of a total trace, in the documented order."""
    occurrences = [(i, a) for i, state in enumerate(t.there) for a in sorted(state)]
    base = [set(state) for state in t.there]
    for removed in range(1, len(occurrences) + 1):
        for combo in combinations(range(len(occurrences)), removed):
            here = [set(s) for s in base]
            for idx in combo:
                i, a = occurrences[idx]
                here[i].discard(a)
            yield TimedHTTrace(t.alphabet, tuple(frozenset(s) for s in here),
                               t.there, t.tau)


def _equilibrium_check(t: TimedHTTrace, compiled, shared,
                       twin: Optional[Evaluator] = None) -> EquilibriumVerdict:
    twin = Evaluator(t, shared=shared) if twin is None else twin
    if not _models_compiled(twin, compiled):
        return EquilibriumVerdict("not-model", None, 0)
    witnesses = 0
    for candidate in _here_candidates(t):
        witnesses += 1
        ev = Evaluator(candidate, shared=shared, total_twin=twin)
        if _models_compiled(ev, compiled):
            return EquilibriumVerdict("blocked", candidate, witnesses)
    return EquilibriumVerdict("equilibrium", None, witnesses)


def is_equilibrium(t: TimedHTTrace, theory: Theory) -> EquilibriumVerdict:
    """Check a total trace: model first, then exhaustive search for a blocker."""
    if not t.is_total:
        raise ValueError("equilibrium checking is defined on total traces only")
    return _equilibrium_check(t, _compile_theory(theory), {})


def enumerate_equilibrium(theory: Theory, bounds: TraceBounds) -> Iterator[EquilibriumResult]:
    """All equilibrium models within bounds, grouped by ascending length."""
    if not theory.alphabet <= bounds.alphabet:
        raise ValueError("theory alphabet must be contained in the search alphabet")
    compiled = _compile_theory(theory)
    shared = {}
    total_bounds = TraceBounds(bounds.alphabet, bounds.lambda_max,
                               bounds.max_gap, total_only=True)
    for t in enumerate_traces(total_bounds):
        verdict = _equilibrium_check(t, compiled, shared)
        if verdict.status == "equilibrium":
            yield EquilibriumResult(t, t.length, verdict.witnesses_checked)


def iter_models(theory: Theory, bounds: TraceBounds) -> Iterator[TimedHTTrace]:
    """All HT-traces within bounds that model the theory (not just total ones)."""
    compiled = _compile_theory(theory)
    shared = {}
    for m in enumerate_traces(bounds):
        if _models_compiled(Evaluator(m, shared=shared), compiled):
            yield m
