"""Machine-checked law suites and the formula samplers backing them.

Each suite exhaustively (or by seeded sampling) checks one family of
semantic laws over a bounded trace space and returns :class:`LawReport`
records.  Counterexamples carry a reloadable trace document.  Note that the
``release-naive`` suite checks deliberately false equivalence claims, so its
expected outcome is a failure report exhibiting a counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import formulas as F
from .formulas import (
    Atom, BOT, TOP, And, Or, Not, Implies, Final, Initial,
    Next, WNext, Prev, WPrev, Eventually, Always, EvPast, AlwPast,
    Until, Since, Release, Trigger, Diamond, Box, Test, Choice, Seq, Star,
    Converse, STEP, Formula, PathExpr, Theory, compile_to_core, invert_past,
    pretty_print, formula_path,
)
from .intervals import Interval, IntervalError, NEG_OMEGA, OMEGA, UNTIMED
from .mht import MhtEvaluator
from .semantics import Evaluator, HERE, THERE
from .traces import TimedHTTrace, TraceBounds, enumerate_traces, trace_to_dict

UNARY_METRIC = (Next, WNext, Prev, WPrev, Eventually, Always, EvPast, AlwPast)
PAST_OPS = (Prev, WPrev, EvPast, AlwPast, Since, Trigger)
BINARY_METRIC = (Until, Since, Release, Trigger)


@dataclass
class LawReport:
    law_id: str
    space: str
    verdict: str  # "pass" | "fail"
    checked: int
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        doc = {"law": self.law_id, "space": self.space,
               "verdict": self.verdict, "checked": self.checked}
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        return doc


def _cex(trace: TimedHTTrace, position: int, **extra) -> dict:
    doc = {"trace": trace_to_dict(trace), "position": position}
    doc.update(extra)
    return doc


# -- interval and operator grids -------------------------------------------------


def interval_grid(values: Iterable[int], include_unbounded: bool = True) -> Tuple[Interval, ...]:
    """Every interval the four bracket shapes generate over the given bounds,
    deduplicated by canonical form; optionally plus the half/fully unbounded ones."""
    values = sorted(set(values))
    seen = {}
    shapes = (Interval.closed_closed, Interval.closed_open,
              Interval.open_closed, Interval.open_open)
    for m in values:
        for n in values:
            for shape in shapes:
                iv = shape(m, n)
                seen[(iv.lo, iv.hi)] = iv
    if include_unbounded:
        for m in values:
            for iv in (Interval.closed_open(m, OMEGA), Interval.open_open(m, OMEGA)):
                seen[(iv.lo, iv.hi)] = iv
        for n in values:
            for iv in (Interval.open_closed(NEG_OMEGA, n), Interval.open_open(NEG_OMEGA, n)):
                seen[(iv.lo, iv.hi)] = iv
        seen[(NEG_OMEGA, OMEGA)] = UNTIMED
    return tuple(iv for _, iv in sorted(seen.items()))


def nested_argument_pool(atoms: Sequence[str],
                         intervals: Sequence[Interval] = ()) -> Tuple[Formula, ...]:
    """Depth-one argument formulas: every metric operator appears nested."""
    a = Atom(atoms[0])
    b = Atom(atoms[-1])
    ivs = tuple(intervals) or (UNTIMED, Interval.closed_closed(0, 2))
    pool: List[Formula] = [a, b, TOP, BOT, Final(), Initial(),
                           Not(a), And(a, b), Or(a, b), Implies(a, b)]
    for op in UNARY_METRIC:
        for iv in ivs:
            pool.append(op(iv, a))
            if b is not a:
                pool.append(op(iv, b))
    for op in BINARY_METRIC:
        for iv in ivs:
            pool.append(op(iv, a, b))
    return tuple(pool)


def operator_space(atoms: Sequence[str],
                   future_intervals: Sequence[Interval],
                   past_intervals: Sequence[Interval],
                   unary_args: Sequence[Formula],
                   binary_pairs: Sequence[Tuple[Formula, Formula]]) -> Tuple[Formula, ...]:
    """The product space: every metric operator over every listed interval and
    argument, so each operator occurs at depth one and above every nested arg."""
    out: List[Formula] = [Final(), Initial()]
    for op in UNARY_METRIC:
        ivs = past_intervals if op in PAST_OPS else future_intervals
        for iv in ivs:
            for arg in unary_args:
                out.append(op(iv, arg))
    for op in BINARY_METRIC:
        ivs = past_intervals if op in PAST_OPS else future_intervals
        for iv in ivs:
            for l, r in binary_pairs:
                out.append(op(iv, l, r))
    return tuple(out)


# -- seeded random generation ------------------------------------------------------


def random_interval(rng: random.Random, past: bool = False,
                    untimed_prob: float = 0.25) -> Interval:
    if rng.random() < untimed_prob:
        return UNTIMED
    lo_pool = range(-3, 4) if past else range(0, 4)
    kind = rng.randrange(8)
    try:
        if kind == 0:
            return Interval.closed_open(rng.choice(lo_pool), OMEGA)
        if kind == 1:
            return Interval.open_closed(NEG_OMEGA, rng.choice(lo_pool))
        m, n = rng.choice(lo_pool), rng.choice(lo_pool)
        shape = rng.choice((Interval.closed_closed, Interval.closed_open,
                            Interval.open_closed, Interval.open_open))
        return shape(m, n)
    except IntervalError:
        return UNTIMED


def random_path(rng: random.Random, atoms: Sequence[str], depth: int,
                untimed_only: bool = False) -> PathExpr:
    if depth <= 0:
        c = rng.randrange(3)
        if c == 0:
            return STEP
        if c == 1:
            return Test(Atom(rng.choice(atoms)))
        return formula_path(Atom(rng.choice(atoms)))
    c = rng.randrange(6)
    if c == 0:
        return Choice(random_path(rng, atoms, depth - 1, untimed_only),
                      random_path(rng, atoms, depth - 1, untimed_only))
    if c == 1:
        return Seq(random_path(rng, atoms, depth - 1, untimed_only),
                   random_path(rng, atoms, depth - 1, untimed_only))
    if c == 2:
        return Star(random_path(rng, atoms, depth - 1, untimed_only))
    if c == 3:
        return Converse(random_path(rng, atoms, depth - 1, untimed_only))
    if c == 4:
        return Test(random_formula(rng, atoms, depth - 1, untimed_only=untimed_only))
    return formula_path(random_formula(rng, atoms, depth - 1, untimed_only=untimed_only))


def random_formula(rng: random.Random, atoms: Sequence[str], depth: int,
                   metric: bool = True, dynamic: bool = True,
                   untimed_only: bool = False) -> Formula:
    if depth <= 0:
        leaves = [Atom(rng.choice(atoms)), Atom(rng.choice(atoms)), TOP, BOT]
        if metric:
            leaves += [Final(), Initial()]
        return rng.choice(leaves)

    def sub():
        return random_formula(rng, atoms, depth - 1, metric, dynamic, untimed_only)

    def iv(past: bool = False):
        return UNTIMED if untimed_only else random_interval(rng, past=past)

    choices = ["not", "and", "or", "implies"]
    if metric:
        choices += ["unary", "unary", "binary"]
    if dynamic:
        choices += ["diamond", "box"]
    c = rng.choice(choices)
    if c == "not":
        return Not(sub())
    if c == "and":
        return And(sub(), sub())
    if c == "or":
        return Or(sub(), sub())
    if c == "implies":
        return Implies(sub(), sub())
    if c == "unary":
        op = rng.choice(UNARY_METRIC)
        return op(iv(past=op in PAST_OPS), sub())
    if c == "binary":
        op = rng.choice(BINARY_METRIC)
        return op(iv(past=op in PAST_OPS), sub(), sub())
    path = random_path(rng, atoms, depth - 1, untimed_only)
    ctor = Diamond if c == "diamond" else Box
    return ctor(path, iv(past=True), sub())


def random_theory(rng: random.Random, atoms: Sequence[str],
                  max_formulas: int = 3, depth: int = 2) -> Theory:
    n = rng.randint(1, max_formulas)
    forms = tuple(random_formula(rng, atoms, rng.randint(1, depth)) for _ in range(n))
    return Theory(forms, frozenset(atoms))


# -- combined agreement / persistence / totality scan ------------------------------


@dataclass
class ScanOutcome:
    traces: int = 0
    checks: int = 0
    agreement_violations: List[dict] = field(default_factory=list)
    persistence_violations: List[dict] = field(default_factory=list)
    totality_violations: List[dict] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.agreement_violations or self.persistence_violations
                    or self.totality_violations)


def agreement_scan(formulas: Sequence[Formula], bounds: TraceBounds,
                   check_agreement: bool = True,
                   max_violations: int = 5) -> ScanOutcome:
    """One pass per trace checking, for every formula:

    - oracle agreement: direct metric evaluation equals the compiled core
      semantics, in both worlds (skipped for formulas with raw modalities);
    - persistence: here-satisfaction implies there-satisfaction;
    - totality: on total traces the HT and classical verdicts coincide.
    """
    pairs = [(f, compile_to_core(f), F.is_metric(f)) for f in formulas]
    shared: dict = {}
    out = ScanOutcome()
    for m in enumerate_traces(bounds):
        out.traces += 1
        lam = m.length
        if lam == 0:
            continue
        full = (1 << lam) - 1
        ev = Evaluator(m, shared=shared)
        dm = MhtEvaluator(m) if check_agreement else None
        total = m.is_total
        for surface, core, metric in pairs:
            hm = ev.sat_mask(core, HERE)
            tm = ev.sat_mask(core, THERE)
            out.checks += lam
            if hm & ~tm:
                k = _low_bit(hm & ~tm)
                out.persistence_violations.append(
                    _cex(m, k, formula=pretty_print(surface)))
            if total:
                mm = ev.mdl_sat_mask(core)
                if mm != hm:
                    k = _low_bit(mm ^ hm)
                    out.totality_violations.append(
                        _cex(m, k, formula=pretty_print(surface)))
            if check_agreement and metric:
                om = 0
                tot_dm = dm.total
                otm = 0
                for k in range(lam):
                    if dm.sat(surface, k):
                        om |= 1 << k
                    if tot_dm.sat(surface, k):
                        otm |= 1 << k
                if om != hm or otm != tm:
                    k = _low_bit((om ^ hm) | (otm ^ tm))
                    out.agreement_violations.append(
                        _cex(m, k, formula=pretty_print(surface)))
        if (len(out.agreement_violations) + len(out.persistence_violations)
                + len(out.totality_violations)) >= max_violations:
            break
    return out


def _low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def relation_scan(paths: Sequence[PathExpr], bounds: TraceBounds) -> ScanOutcome:
    """Relation-level laws: here-relation contained in the there-relation,
    and on total traces the HT relation equals the classical one."""
    out = ScanOutcome()
    shared: dict = {}
    paths = [F.compile_path(rho) for rho in paths]
    for m in enumerate_traces(bounds):
        out.traces += 1
        ev = Evaluator(m, shared=shared)
        total = m.is_total
        for rho in paths:
            rows_h = ev.rel_rows(rho, HERE)
            rows_t = ev.rel_rows(rho, THERE)
            out.checks += 1
            if any(h & ~t for h, t in zip(rows_h, rows_t)):
                out.persistence_violations.append(
                    _cex(m, 0, path=F.print_path(rho)))
            if total and rows_h != ev.mdl_rel_rows(rho):
                out.totality_violations.append(
                    _cex(m, 0, path=F.print_path(rho)))
        if out.persistence_violations or out.totality_violations:
            break
    return out


def star_properties(paths: Sequence[PathExpr], bounds: TraceBounds) -> Optional[dict]:
    """Star must be the least reflexive-transitive relation containing its body."""
    shared: dict = {}
    paths = [F.compile_path(rho) for rho in paths]
    for m in enumerate_traces(bounds):
        ev = Evaluator(m, shared=shared)
        lam = m.length
        for rho in paths:
            base = ev.rel_rows(rho, HERE)
            star = ev.rel_rows(Star(rho), HERE)
            reflexive = all(star[k] >> k & 1 for k in range(lam))
            contains = all(not (b & ~s) for b, s in zip(base, star))
            transitive = all(
                not (ev._image(star, star[k]) & ~star[k]) for k in range(lam))
            # least: recompute a closure independently and compare
            least = _naive_closure(base, lam)
            if not (reflexive and contains and transitive and least == star):
                return _cex(m, 0, path=F.print_path(rho))
    return None


def _naive_closure(rows, lam):
    pairs = {(k, i) for k, row in enumerate(rows) for i in range(lam) if row >> i & 1}
    pairs |= {(k, k) for k in range(lam)}
    while True:
        extra = {(k, j) for (k, i) in pairs for (i2, j) in pairs if i == i2} - pairs
        if not extra:
            break
        pairs |= extra
    out = [0] * lam
    for k, i in pairs:
        out[k] |= 1 << i
    return tuple(out)


# -- boolean connective clauses ------------------------------------------------------


def boolean_scan(argument_pairs: Sequence[Tuple[Formula, Formula]],
                 bounds: TraceBounds) -> ScanOutcome:
    """Check the direct here-and-there readings of the Boolean connectives
    against the compiled core, clause for clause."""
    out = ScanOutcome()
    shared: dict = {}
    compiled = [
        (l, r, compile_to_core(l), compile_to_core(r),
         compile_to_core(And(l, r)), compile_to_core(Or(l, r)),
         compile_to_core(Implies(l, r)), compile_to_core(Not(l)))
        for l, r in argument_pairs
    ]
    top_core = compile_to_core(TOP)
    for m in enumerate_traces(bounds):
        out.traces += 1
        lam = m.length
        if lam == 0:
            continue
        full = (1 << lam) - 1
        ev = Evaluator(m, shared=shared)
        if ev.sat_mask(top_core, HERE) != full:
            out.agreement_violations.append(_cex(m, 0, formula="top"))
        for l, r, cl, cr, cand, cor, cimp, cneg in compiled:
            lh, rh = ev.sat_mask(cl, HERE), ev.sat_mask(cr, HERE)
            lt, rt = ev.sat_mask(cl, THERE), ev.sat_mask(cr, THERE)
            want_and = lh & rh
            want_or = lh | rh
            want_imp = (~lh | rh) & (~lt | rt) & full
            want_neg = ~lt & full
            got = (ev.sat_mask(cand, HERE), ev.sat_mask(cor, HERE),
                   ev.sat_mask(cimp, HERE), ev.sat_mask(cneg, HERE))
            out.checks += 4 * lam
            for name, want, have in zip(("and", "or", "implies", "not"),
                                        (want_and, want_or, want_imp, want_neg), got):
                if want != have:
                    out.agreement_violations.append(
                        _cex(m, _low_bit(want ^ have), clause=name,
                             left=pretty_print(l), right=pretty_print(r)))
                    return out
    return out


# -- release / trigger interval table --------------------------------------------------


def release_table_rows(m: int, n: int) -> List[Tuple[str, Formula, Formula]]:
    """The sixteen displayed equivalences, instantiated at bounds m > 0 and n.

    Returns (row id, timed operator form, expanded right-hand side); the
    m = 0 rows ignore the m argument.
    """
    a, b = Atom("a"), Atom("b")

    def rel_tail():
        return Or(a, WNext(UNTIMED, b))

    def trg_tail():
        return Or(a, WPrev(UNTIMED, b))

    r_untimed: Callable[[Formula], Formula] = lambda rhs: Release(UNTIMED, a, rhs)
    t_untimed: Callable[[Formula], Formula] = lambda rhs: Trigger(UNTIMED, a, rhs)
    co, cc, oo, oc = (Interval.closed_open, Interval.closed_closed,
                      Interval.open_open, Interval.open_closed)
    rows = [
        ("R-co-m", Release(co(m, n), a, b),
         Or(Always(co(m, n), b), Eventually(co(0, m), r_untimed(rel_tail())))),
        ("R-co-0", Release(co(0, n), a, b),
         Or(Always(co(0, n), b), r_untimed(b))),
        ("R-cc-m", Release(cc(m, n), a, b),
         Or(Always(cc(m, n), b), Eventually(co(0, m), r_untimed(rel_tail())))),
        ("R-cc-0", Release(cc(0, n), a, b),
         Or(Always(cc(0, n), b), r_untimed(b))),
        ("R-oo-m", Release(oo(m, n), a, b),
         Or(Always(oo(m, n), b), Eventually(cc(0, m), r_untimed(rel_tail())))),
        ("R-oo-0", Release(oo(0, n), a, b),
         Or(Always(oo(0, n), b), r_untimed(rel_tail()))),
        ("R-oc-m", Release(oc(m, n), a, b),
         Or(Always(oc(m, n), b), Eventually(cc(0, m), r_untimed(rel_tail())))),
        ("R-oc-0", Release(oc(0, n), a, b),
         Or(Always(oc(0, n), b), r_untimed(rel_tail()))),
        ("T-co-m", Trigger(co(m, n), a, b),
         Or(AlwPast(co(m, n), b), EvPast(co(0, m), t_untimed(trg_tail())))),
        ("T-co-0", Trigger(co(0, n), a, b),
         Or(AlwPast(co(0, n), b), t_untimed(b))),
        ("T-cc-m", Trigger(cc(m, n), a, b),
         Or(AlwPast(cc(m, n), b), EvPast(co(0, m), t_untimed(trg_tail())))),
        ("T-cc-0", Trigger(cc(0, n), a, b),
         Or(AlwPast(cc(0, n), b), t_untimed(b))),
        ("T-oo-m", Trigger(oo(m, n), a, b),
         Or(AlwPast(oo(m, n), b), EvPast(cc(0, m), t_untimed(trg_tail())))),
        ("T-oo-0", Trigger(oo(0, n), a, b),
         Or(AlwPast(oo(0, n), b), t_untimed(trg_tail()))),
        ("T-oc-m", Trigger(oc(m, n), a, b),
         Or(AlwPast(oc(m, n), b), EvPast(cc(0, m), t_untimed(trg_tail())))),
        ("T-oc-0", Trigger(oc(0, n), a, b),
         Or(AlwPast(oc(0, n), b), t_untimed(trg_tail()))),
    ]
    return rows


def check_equivalence_dual(lhs: Formula, rhs: Formula, bounds: TraceBounds,
                           shared: Optional[dict] = None) -> Tuple[Optional[dict], int]:
    """Pointwise equivalence in both worlds, with the left side additionally
    evaluated by the direct metric oracle when possible.  Returns the first
    counterexample (or None) and the number of positions checked."""
    core_l, core_r = compile_to_core(lhs), compile_to_core(rhs)
    metric_l = F.is_metric(lhs)
    shared = {} if shared is None else shared
    checked = 0
    for m in enumerate_traces(bounds):
        lam = m.length
        if lam == 0:
            continue
        ev = Evaluator(m, shared=shared)
        lh, rh = ev.sat_mask(core_l, HERE), ev.sat_mask(core_r, HERE)
        lt, rt = ev.sat_mask(core_l, THERE), ev.sat_mask(core_r, THERE)
        checked += lam
        if lh != rh or lt != rt:
            k = _low_bit((lh ^ rh) | (lt ^ rt))
            return _cex(m, k, left=pretty_print(lhs), right=pretty_print(rhs)), checked
        if metric_l:
            dm = MhtEvaluator(m)
            om = sum(1 << k for k in range(lam) if dm.sat(lhs, k))
            if om != lh:
                k = _low_bit(om ^ lh)
                return _cex(m, k, left=pretty_print(lhs),
                            note="direct oracle disagrees with compiled form"), checked
    return None, checked


def check_release_table(bounds: TraceBounds, m_values: Sequence[int] = (1, 2, 3),
                        n_values: Sequence[int] = (0, 1, 2, 3)) -> List[LawReport]:
    """All sixteen rows, instantiated over the given bound grids.

    Both sides are compared pointwise in both worlds under the compiled core
    semantics, and the timed operator is additionally cross-checked against
    the direct metric oracle.  One trace-major pass covers every instance.
    """
    instances: dict = {}
    for mv in m_values:
        if mv <= 0:
            raise ValueError("the general table rows require m > 0")
        for nv in n_values:
            for row_id, lhs, rhs in release_table_rows(mv, nv):
                sig = (lhs.interval.lo, lhs.interval.hi)
                row = instances.setdefault(row_id, {})
                if sig not in row:
                    row[sig] = ((mv, nv), lhs, rhs,
                                compile_to_core(lhs), compile_to_core(rhs))
    shared: dict = {}
    failures = {row_id: None for row_id in instances}
    checked = {row_id: 0 for row_id in instances}
    for m in enumerate_traces(bounds):
        lam = m.length
        if lam == 0:
            continue
        ev = Evaluator(m, shared=shared)
        dm = MhtEvaluator(m)
        for row_id, cases in instances.items():
            if failures[row_id] is not None:
                continue
            for tag, lhs, rhs, cl, cr in cases.values():
                lh, rh = ev.sat_mask(cl, HERE), ev.sat_mask(cr, HERE)
                lt, rt = ev.sat_mask(cl, THERE), ev.sat_mask(cr, THERE)
                om = sum(1 << k for k in range(lam) if dm.sat(lhs, k))
                checked[row_id] += lam
                if lh != rh or lt != rt or om != lh:
                    k = _low_bit((lh ^ rh) | (lt ^ rt) | (om ^ lh))
                    failures[row_id] = _cex(m, k, left=pretty_print(lhs),
                                            right=pretty_print(rhs), bounds=list(tag))
                    break
    return [LawReport(row_id, bounds.describe(),
                      "fail" if failures[row_id] else "pass",
                      checked[row_id], failures[row_id])
            for row_id in sorted(instances)]


def check_release_naive(bounds: TraceBounds,
                        interval: Optional[Interval] = None) -> List[LawReport]:
    """The claims that timed release/trigger equal their naive expansions.

    These are not valid laws; the expected outcome is a counterexample,
    reported as a failure."""
    iv = Interval.closed_closed(3, 5) if interval is None else interval
    a, b = Atom("a"), Atom("b")
    naive_r = Or(Until(iv, b, And(a, b)), Always(iv, b))
    naive_t = Or(Since(iv, b, And(a, b)), AlwPast(iv, b))
    shared: dict = {}
    reports = []
    for law_id, lhs, rhs in (("release-naive-R", Release(iv, a, b), naive_r),
                             ("trigger-naive-T", Trigger(iv, a, b), naive_t)):
        cex, checked = check_equivalence_dual(lhs, rhs, bounds, shared)
        reports.append(LawReport(law_id, bounds.describe(),
                                 "fail" if cex else "pass", checked, cex))
    return reports


# -- excluded middle collapse ----------------------------------------------------------


def em_axioms(alphabet: Iterable[str]) -> Tuple[Formula, ...]:
    """The excluded-middle schema alw(p | !p), one instance per atom."""
    return tuple(Always(UNTIMED, Or(Atom(p), Not(Atom(p)))) for p in sorted(alphabet))


def em_collapse_scan(theories: Sequence[Theory], bounds: TraceBounds) -> ScanOutcome:
    """Every bounded HT-model of a theory extended with the excluded-middle
    schema must be total."""
    out = ScanOutcome()
    shared: dict = {}
    em_core = [compile_to_core(f) for f in em_axioms(bounds.alphabet)]
    all_traces = list(enumerate_traces(bounds))
    for theory in theories:
        compiled = [compile_to_core(f) for f in theory.formulas]
        for m in all_traces:
            out.traces += 1
            if m.length == 0:
                continue
            ev = Evaluator(m, shared=shared)
            if not all(ev.sat_mask(c, HERE) & 1 for c in em_core):
                continue
            if not all(ev.sat_mask(c, HERE) & 1 for c in compiled):
                continue
            out.checks += 1
            if not m.is_total:
                out.agreement_violations.append(
                    _cex(m, 0, theory=[pretty_print(f) for f in theory.formulas]))
                return out
    return out


# -- untimed independence ---------------------------------------------------------------


def tau_independence_scan(formulas: Sequence[Formula], rng: random.Random,
                          bounds: TraceBounds, samples: int) -> ScanOutcome:
    """Interval-free formulas may not distinguish traces differing only in tau."""
    out = ScanOutcome()
    for f in formulas:
        if not F.is_interval_free(f):
            raise ValueError("tau independence requires interval-free formulas")
    compiled = [(f, compile_to_core(f)) for f in formulas]
    atoms = sorted(bounds.alphabet)
    for _ in range(samples):
        lam = rng.randint(1, max(bounds.lambda_max, 1))
        there, here = [], []
        for _ in range(lam):
            t = frozenset(x for x in atoms if rng.random() < 0.5)
            here.append(frozenset(x for x in t if rng.random() < 0.6))
            there.append(t)

        def grid():
            tau = [0]
            for _ in range(lam - 1):
                tau.append(tau[-1] + rng.randint(1, bounds.max_gap + 2))
            return tuple(tau)

        tau1, tau2 = grid(), grid()
        m1 = TimedHTTrace(bounds.alphabet, tuple(here), tuple(there), tau1)
        m2 = TimedHTTrace(bounds.alphabet, tuple(here), tuple(there), tau2)
        ev1, ev2 = Evaluator(m1), Evaluator(m2)
        f, core = compiled[rng.randrange(len(compiled))]
        out.traces += 1
        out.checks += 2 * lam
        for world in (HERE, THERE):
            if ev1.sat_mask(core, world) != ev2.sat_mask(core, world):
                diff = ev1.sat_mask(core, world) ^ ev2.sat_mask(core, world)
                out.agreement_violations.append(
                    _cex(m1, _low_bit(diff), formula=pretty_print(f),
                         other_tau=list(tau2)))
                return out
    return out


# -- past-eventually rewriting ------------------------------------------------------------


def invert_past_scan(formulas: Sequence[Formula], bounds: TraceBounds) -> ScanOutcome:
    """The rewritten formula must have no past surface operator left and agree
    with the direct metric evaluation of the original everywhere."""
    out = ScanOutcome()
    shared: dict = {}
    pairs = []
    for f in formulas:
        g = invert_past(f)
        if any(type(x) in PAST_OPS for x in F.walk(g)):
            out.agreement_violations.append({"formula": pretty_print(f),
                                             "note": "past operator survived"})
            return out
        pairs.append((f, compile_to_core(g)))
    for m in enumerate_traces(bounds):
        out.traces += 1
        lam = m.length
        if lam == 0:
            continue
        ev = Evaluator(m, shared=shared)
        dm = MhtEvaluator(m)
        for f, core in pairs:
            out.checks += lam
            got = ev.sat_mask(core, HERE)
            want = sum(1 << k for k in range(lam) if dm.sat(f, k))
            if got != want:
                out.agreement_violations.append(
                    _cex(m, _low_bit(got ^ want), formula=pretty_print(f)))
                return out
    return out


def bkt_fragment_formulas(rng: random.Random, atoms: Sequence[str],
                          count: int, depth: int = 3) -> List[Formula]:
    """Sampled formulas in the negation/disjunction/eventually fragment with
    future and past metric eventually operators."""

    def gen(d: int) -> Formula:
        if d <= 0:
            return rng.choice([Atom(rng.choice(atoms)), TOP, BOT])
        c = rng.randrange(4)
        if c == 0:
            return Not(gen(d - 1))
        if c == 1:
            return Or(gen(d - 1), gen(d - 1))
        if c == 2:
            return Eventually(random_interval(rng), gen(d - 1))
        return EvPast(random_interval(rng, past=True), gen(d - 1))

    return [gen(rng.randint(1, depth)) for _ in range(count)]


# -- suite registry -------------------------------------------------------------------------


def _default_paths(atoms: Sequence[str]) -> Tuple[PathExpr, ...]:
    a = Atom(atoms[0])
    na = Not(a)
    return (
        STEP, Star(STEP), Converse(Star(STEP)), Converse(STEP),
        Test(a), formula_path(a), Star(formula_path(a)),
        Seq(Star(formula_path(na)), formula_path(na)),
        Choice(Test(a), Seq(STEP, STEP)),
        Star(Star(formula_path(a))), Converse(Star(Seq(STEP, Test(a)))),
    )


def _sampled_formulas(rng: random.Random, atoms: Sequence[str], count: int,
                      **kwargs) -> List[Formula]:
    return [random_formula(rng, atoms, rng.randint(1, 3), **kwargs)
            for _ in range(count)]


def run_suite(name: str, bounds: TraceBounds, seed: int = 0,
              samples: int = 100) -> List[LawReport]:
    """Run one named law suite; raises KeyError for unknown suite names."""
    rng = random.Random(seed)
    atoms = sorted(bounds.alphabet) or ["a"]
    space = bounds.describe() + f" seed={seed}"

    if name == "persistence":
        formulas = _sampled_formulas(rng, atoms, samples)
        out = agreement_scan(formulas, bounds, check_agreement=False)
        rel = relation_scan(_default_paths(atoms), bounds)
        bad = out.persistence_violations + rel.persistence_violations
        return [LawReport("persistence", space, "fail" if bad else "pass",
                          out.checks + rel.checks, bad[0] if bad else None)]
    if name == "totality":
        formulas = _sampled_formulas(rng, atoms, samples)
        total_bounds = TraceBounds(bounds.alphabet, bounds.lambda_max,
                                   bounds.max_gap, total_only=True)
        out = agreement_scan(formulas, total_bounds, check_agreement=False)
        rel = relation_scan(_default_paths(atoms), total_bounds)
        bad = out.totality_violations + rel.totality_violations
        return [LawReport("totality", space, "fail" if bad else "pass",
                          out.checks + rel.checks, bad[0] if bad else None)]
    if name == "boolean":
        args = _sampled_formulas(rng, atoms, max(samples // 4, 8))
        pairs = [(args[i], args[(i * 7 + 3) % len(args)]) for i in range(len(args))]
        out = boolean_scan(pairs, bounds)
        bad = out.agreement_violations
        return [LawReport("boolean-clauses", space, "fail" if bad else "pass",
                          out.checks, bad[0] if bad else None)]
    if name == "mht-agreement":
        formulas = _sampled_formulas(rng, atoms, samples, dynamic=False)
        out = agreement_scan(formulas, bounds)
        bad = (out.agreement_violations + out.persistence_violations
               + out.totality_violations)
        return [LawReport("mht-agreement", space, "fail" if bad else "pass",
                          out.checks, bad[0] if bad else None)]
    if name == "untimed-independence":
        formulas = _sampled_formulas(rng, atoms, max(samples // 2, 10),
                                     untimed_only=True)
        out = tau_independence_scan(formulas, rng, bounds, samples)
        bad = out.agreement_violations
        return [LawReport("untimed-independence", space, "fail" if bad else "pass",
                          out.checks, bad[0] if bad else None)]
    if name == "release-table":
        return check_release_table(bounds)
    if name == "release-naive":
        return check_release_naive(bounds)
    if name == "em-collapse":
        theories = [random_theory(rng, atoms) for _ in range(max(samples // 2, 20))]
        out = em_collapse_scan(theories, bounds)
        bad = out.agreement_violations
        return [LawReport("em-collapse", space, "fail" if bad else "pass",
                          out.checks, bad[0] if bad else None)]
    if name == "invert-past":
        formulas = bkt_fragment_formulas(rng, atoms, samples)
        past_free = [f for f in formulas if not any(type(x) is EvPast for x in F.walk(f))]
        for f in past_free:
            if invert_past(f) != f:
                return [LawReport("invert-past", space, "fail", 0,
                                  {"formula": pretty_print(f),
                                   "note": "not a fixed point on past-free input"})]
        out = invert_past_scan(formulas, bounds)
        bad = out.agreement_violations
        return [LawReport("invert-past", space, "fail" if bad else "pass",
                          out.checks, bad[0] if bad else None)]
    raise KeyError(f"unknown law suite: {name}")


SUITES = ("persistence", "totality", "boolean", "mht-agreement",
          "untimed-independence", "release-table", "release-naive",
          "em-collapse", "invert-past")
