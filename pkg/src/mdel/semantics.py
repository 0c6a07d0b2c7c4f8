"""Satisfaction on timed HT-traces: accessibility relations, the two-world
box rule, classical evaluation on total traces, and bounded tautology search.

The engine works with satisfaction *sets*: for each (sub)formula and world it
computes the bitmask of trace positions where the formula holds.  Relations
are rows of bitmasks (``rows[k]`` holds the successors of position ``k``).
Caches are keyed by node identity and scoped to one Evaluator, which covers
exactly one trace; the there-world of a non-total trace is delegated to a
twin evaluator for the collapsed total trace, so minimality searches that
vary only the here component can share all there-side work.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .formulas import (
    Atom, Bot, Box, Choice, Converse, Diamond, Formula, PathExpr, Seq, Star,
    Step, Test, compile_to_core,
)
from .intervals import Interval
from .traces import TimedHTTrace, TraceBounds, enumerate_traces, total_of


class World(enum.Enum):
    HERE = "here"
    THERE = "there"


HERE = World.HERE
THERE = World.THERE


@dataclass(frozen=True)
class AccessRelation:
    """The denotation of a path expression: a set of position pairs."""

    pairs: frozenset

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __le__(self, other: "AccessRelation") -> bool:
        return self.pairs <= other.pairs


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Evaluator:
    """Satisfaction sets for one trace; create one per trace per session."""

    def __init__(self, trace: TimedHTTrace, shared: Optional[dict] = None,
                 total_twin: Optional["Evaluator"] = None):
        self.trace = trace
        self.lam = trace.length
        self.full = (1 << self.lam) - 1
        self.shared = {} if shared is None else shared
        if trace.is_total:
            self.twin = self
        elif total_twin is not None:
            self.twin = total_twin
        else:
            self.twin = Evaluator(total_of(trace), shared=self.shared)
        self._sat = {}
        self._rel = {}
        self._mdl_sat = {}
        self._mdl_rel = {}
        self._atom_masks = {}
        self._pin = []

    # -- helpers -------------------------------------------------------------

    def _atom_mask(self, name: str) -> int:
        m = self._atom_masks.get(name)
        if m is None:
            m = 0
            for i, state in enumerate(self.trace.here):
                if name in state:
                    m |= 1 << i
            self._atom_masks[name] = m
        return m

    def time_rows(self, iv: Interval) -> Tuple[int, ...]:
        """rows[k] = positions i with tau(i) - tau(k) in the interval."""
        key = (self.trace.tau, iv.lo, iv.hi)
        rows = self.shared.get(key)
        if rows is None:
            tau, lo, hi = self.trace.tau, iv.lo, iv.hi
            rows = tuple(
                sum(1 << i for i, ti in enumerate(tau) if lo < ti - tk < hi)
                for tk in tau
            )
            self.shared[key] = rows
        return rows

    # -- accessibility relations ----------------------------------------------

    def rel_rows(self, rho: PathExpr, world: World = HERE) -> Tuple[int, ...]:
        if world is THERE:
            return self.twin.rel_rows(rho, HERE)
        key = id(rho)
        rows = self._rel.get(key)
        if rows is None:
            rows = self._rel_compute(rho)
            self._rel[key] = rows
            self._pin.append(rho)
        return rows

    def _rel_compute(self, rho: PathExpr) -> Tuple[int, ...]:
        t = type(rho)
        lam = self.lam
        if t is Step:
            return tuple(1 << (k + 1) if k + 1 < lam else 0 for k in range(lam))
        if t is Test:
            m = self.sat_mask(rho.body, HERE)
            return tuple((m >> k & 1) << k for k in range(lam))
        if t is Choice:
            a = self.rel_rows(rho.left)
            b = self.rel_rows(rho.right)
            return tuple(x | y for x, y in zip(a, b))
        if t is Seq:
            a = self.rel_rows(rho.left)
            b = self.rel_rows(rho.right)
            return tuple(self._image(b, row) for row in a)
        if t is Star:
            return self._closure(self.rel_rows(rho.body))
        if t is Converse:
            a = self.rel_rows(rho.body)
            out = [0] * lam
            for k, row in enumerate(a):
                for i in _iter_bits(row):
                    out[i] |= 1 << k
            return tuple(out)
        raise TypeError(f"not a path expression: {rho!r}")

    @staticmethod
    def _image(rows: Tuple[int, ...], sources: int) -> int:
        out = 0
        for j in _iter_bits(sources):
            out |= rows[j]
        return out

    def _closure(self, rows: Tuple[int, ...]) -> Tuple[int, ...]:
        # reflexive-transitive closure; equals the union of all finite powers
        out = [row | (1 << k) for k, row in enumerate(rows)]
        changed = True
        while changed:
            changed = False
            for k in range(self.lam):
                acc = out[k]
                for j in _iter_bits(acc):
                    acc |= out[j]
                if acc != out[k]:
                    out[k] = acc
                    changed = True
        return tuple(out)

    # -- HT satisfaction ---------------------------------------------------------

    def sat_mask(self, f: Formula, world: World = HERE) -> int:
        """Bitmask of positions where the core formula holds in the world."""
        if world is THERE:
            return self.twin.sat_mask(f, HERE)
        key = id(f)
        m = self._sat.get(key)
        if m is None:
            m = self._sat_compute(f)
            self._sat[key] = m
            self._pin.append(f)
        return m

    def _sat_compute(self, f: Formula) -> int:
        t = type(f)
        if t is Atom:
            return self._atom_mask(f.name)
        if t is Bot:
            return 0
        if t is Diamond:
            rows = self.rel_rows(f.path)
            times = self.time_rows(f.interval)
            body = self.sat_mask(f.body)
            m = 0
            for k in range(self.lam):
                if rows[k] & times[k] & body:
                    m |= 1 << k
            return m
        if t is Box:
            # universal condition in this world and, from the here world,
            # also in the collapsed total trace
            times = self.time_rows(f.interval)
            rows = self.rel_rows(f.path)
            body = self.sat_mask(f.body)
            m = 0
            for k in range(self.lam):
                if rows[k] & times[k] & ~body == 0:
                    m |= 1 << k
            if self.twin is not self:
                m &= self.twin.sat_mask(f, HERE)
            return m
        raise TypeError(f"core formula expected, found {type(f).__name__}")

    # -- classical (single-world) satisfaction on total traces --------------------

    def mdl_sat_mask(self, f: Formula) -> int:
        key = id(f)
        m = self._mdl_sat.get(key)
        if m is None:
            m = self._mdl_compute(f)
            self._mdl_sat[key] = m
            self._pin.append(f)
        return m

    def _mdl_compute(self, f: Formula) -> int:
        t = type(f)
        if t is Atom:
            return self._atom_mask(f.name)
        if t is Bot:
            return 0
        rows = self.mdl_rel_rows(f.path)
        times = self.time_rows(f.interval)
        body = self.mdl_sat_mask(f.body)
        m = 0
        if t is Diamond:
            for k in range(self.lam):
                if rows[k] & times[k] & body:
                    m |= 1 << k
            return m
        if t is Box:
            # the classical dual: no reachable in-window position refutes body
            for k in range(self.lam):
                if rows[k] & times[k] & ~body == 0:
                    m |= 1 << k
            return m
        raise TypeError(f"core formula expected, found {type(f).__name__}")

    def mdl_rel_rows(self, rho: PathExpr) -> Tuple[int, ...]:
        key = id(rho)
        rows = self._mdl_rel.get(key)
        if rows is None:
            t = type(rho)
            if t is Test:
                m = self.mdl_sat_mask(rho.body)
                rows = tuple((m >> k & 1) << k for k in range(self.lam))
            elif t is Choice:
                a, b = self.mdl_rel_rows(rho.left), self.mdl_rel_rows(rho.right)
                rows = tuple(x | y for x, y in zip(a, b))
            elif t is Seq:
                a, b = self.mdl_rel_rows(rho.left), self.mdl_rel_rows(rho.right)
                rows = tuple(self._image(b, row) for row in a)
            elif t is Star:
                rows = self._closure(self.mdl_rel_rows(rho.body))
            elif t is Converse:
                a = self.mdl_rel_rows(rho.body)
                out = [0] * self.lam
                for k, row in enumerate(a):
                    for i in _iter_bits(row):
                        out[i] |= 1 << k
                rows = tuple(out)
            else:
                rows = self._rel_compute(rho)  # Step: world-independent
            self._mdl_rel[key] = rows
            self._pin.append(rho)
        return rows


# -- public operations -----------------------------------------------------------


def _check_position(m: TimedHTTrace, k: int):
    if not 0 <= k < m.length:
        raise IndexError(f"position {k} out of range for a trace of length {m.length}")


def accessibility(rho: PathExpr, m: TimedHTTrace, world: World = HERE) -> AccessRelation:
    """The relation a path expression denotes on the trace in the given world."""
    from .formulas import compile_path

    ev = Evaluator(m)
    rows = ev.rel_rows(compile_path(rho), world)
    pairs = frozenset((k, i) for k, row in enumerate(rows) for i in _iter_bits(row))
    return AccessRelation(pairs)


def satisfies(m: TimedHTTrace, k: int, f: Formula, world: World = HERE) -> bool:
    """MDHT satisfaction at position k; surface formulas are compiled first."""
    _check_position(m, k)
    core = compile_to_core(f)
    return bool(Evaluator(m).sat_mask(core, world) >> k & 1)


def satisfies_mdl(m: TimedHTTrace, k: int, f: Formula) -> bool:
    """Classical satisfaction (box as the dual of diamond); total traces only."""
    if not m.is_total:
        raise ValueError("classical satisfaction is defined on total traces only")
    _check_position(m, k)
    core = compile_to_core(f)
    return bool(Evaluator(m).mdl_sat_mask(core) >> k & 1)


# -- bounded tautology and equivalence checking ------------------------------------


@dataclass(frozen=True)
class Verdict:
    valid: bool
    counterexample: Optional[tuple]  # (trace, position)
    traces_checked: int
    positions_checked: int

    def to_dict(self) -> dict:
        from .traces import trace_to_dict

        if self.valid:
            return {"verdict": "valid-up-to-bounds",
                    "traces": self.traces_checked,
                    "positions": self.positions_checked}
        trace, k = self.counterexample
        return {"verdict": "counterexample",
                "trace": trace_to_dict(trace),
                "position": k}


def is_tautology_bounded(f: Formula, bounds: TraceBounds,
                         shared: Optional[dict] = None) -> Verdict:
    """Exhaustively check f at every position of every trace within bounds.

    Returns the first counterexample in enumeration order (trace order, then
    position), or the bounded-validity verdict.
    """
    core = compile_to_core(f)
    shared = {} if shared is None else shared
    traces = 0
    positions = 0
    for m in enumerate_traces(bounds):
        traces += 1
        lam = m.length
        if lam == 0:
            continue
        positions += lam
        mask = Evaluator(m, shared=shared).sat_mask(core, HERE)
        if mask != (1 << lam) - 1:
            missing = ~mask & ((1 << lam) - 1)
            k = (missing & -missing).bit_length() - 1
            return Verdict(False, (m, k), traces, positions)
    return Verdict(True, None, traces, positions)


def iff(f: Formula, g: Formula) -> Formula:
    from .formulas import And, Implies

    return And(Implies(f, g), Implies(g, f))


def equiv_bounded(f: Formula, g: Formula, bounds: TraceBounds,
                  shared: Optional[dict] = None) -> Verdict:
    """Bounded equivalence: tautology check of the biconditional."""
    return is_tautology_bounded(iff(f, g), bounds, shared=shared)
