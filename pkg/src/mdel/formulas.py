"""Surface and core ASTs for metric dynamic formulas and path expressions.

The core fragment is ``Atom | Bot | Diamond | Box`` over path expressions
built from the single step constant, tests, choice, sequence, star and
converse.  Every other connective (Boolean, endpoint constants, the metric
temporal operators and timed release/trigger) is a derived surface form that
:func:`compile_to_core` expands away.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .intervals import Interval, UNTIMED


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return pretty_print(self)


class PathExpr:
    __slots__ = ()

    def __str__(self) -> str:
        return print_path(self)


# -- path expressions ---------------------------------------------------------


@dataclass(frozen=True)
class Step(PathExpr):
    """The atomic transition constant."""


@dataclass(frozen=True)
class Test(PathExpr):
    body: Formula

    __test__ = False  # not a test class, despite the name


@dataclass(frozen=True)
class Choice(PathExpr):
    left: PathExpr
    right: PathExpr


@dataclass(frozen=True)
class Seq(PathExpr):
    left: PathExpr
    right: PathExpr


@dataclass(frozen=True)
class Star(PathExpr):
    body: PathExpr


@dataclass(frozen=True)
class Converse(PathExpr):
    body: PathExpr


STEP = Step()


def formula_path(f: Formula) -> PathExpr:
    """A bare formula used in path position abbreviates ``(f? ; step)``."""
    return Seq(Test(f), STEP)


# -- core formulas ------------------------------------------------------------


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Diamond(Formula):
    path: PathExpr
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class Box(Formula):
    path: PathExpr
    interval: Interval
    body: Formula


# -- derived surface formulas -------------------------------------------------


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Final(Formula):
    pass


@dataclass(frozen=True)
class Initial(Formula):
    pass


@dataclass(frozen=True)
class Next(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class WNext(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class Prev(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class WPrev(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class Always(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class EvPast(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class AlwPast(Formula):
    interval: Interval
    body: Formula


@dataclass(frozen=True)
class Until(Formula):
    interval: Interval
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Since(Formula):
    interval: Interval
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    interval: Interval
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Trigger(Formula):
    interval: Interval
    left: Formula
    right: Formula


BOT = Bot()
TOP = Top()

_UNARY_METRIC = (Next, WNext, Prev, WPrev, Eventually, Always, EvPast, AlwPast)
_BINARY_METRIC = (Until, Since, Release, Trigger)
_PAST_SURFACE = (Prev, WPrev, EvPast, AlwPast, Since, Trigger)

CORE_TYPES = (Atom, Bot, Diamond, Box)


def is_core(f: Formula) -> bool:
    """True when f (including formulas nested in path tests) is core."""
    t = type(f)
    if t is Atom or t is Bot:
        return True
    if t is Diamond or t is Box:
        return _path_is_core(f.path) and is_core(f.body)
    return False


def _path_is_core(rho: PathExpr) -> bool:
    t = type(rho)
    if t is Step:
        return True
    if t is Test:
        return is_core(rho.body)
    if t in (Choice, Seq):
        return _path_is_core(rho.left) and _path_is_core(rho.right)
    return _path_is_core(rho.body)


def walk(f: Formula) -> Iterator[Formula]:
    """Yield every formula node, descending into path tests."""
    yield f
    t = type(f)
    if t in (Not, Next, WNext, Prev, WPrev, Eventually, Always, EvPast, AlwPast):
        yield from walk(f.body)
    elif t in (And, Or, Implies, Until, Since, Release, Trigger):
        yield from walk(f.left)
        yield from walk(f.right)
    elif t in (Diamond, Box):
        yield from _walk_path(f.path)
        yield from walk(f.body)


def _walk_path(rho: PathExpr) -> Iterator[Formula]:
    t = type(rho)
    if t is Test:
        yield from walk(rho.body)
    elif t in (Choice, Seq):
        yield from _walk_path(rho.left)
        yield from _walk_path(rho.right)
    elif t in (Star, Converse):
        yield from _walk_path(rho.body)


def atoms_of(f: Formula) -> frozenset:
    return frozenset(g.name for g in walk(f) if type(g) is Atom)


def is_metric(f: Formula) -> bool:
    """True when f uses only Boolean and metric temporal operators."""
    return not any(type(g) in (Diamond, Box) for g in walk(f))


def is_interval_free(f: Formula) -> bool:
    """True when every interval in f is the default (-w..w)."""
    for g in walk(f):
        iv = getattr(g, "interval", None)
        if iv is not None and not iv.is_untimed:
            return False
    return True


@dataclass(frozen=True)
class Theory:
    """A finite, ordered list of formulas over a declared alphabet."""

    formulas: tuple
    alphabet: frozenset

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        for f in self.formulas:
            extra = atoms_of(f) - self.alphabet
            if extra:
                raise ValueError(f"formula uses atoms outside the alphabet: {sorted(extra)}")


# -- compilation to the core fragment -----------------------------------------


def untimed_release(left: Formula, right: Formula) -> Formula:
    """Interval-free release: (r until (l & r)) | alw r."""
    return Or(Until(UNTIMED, right, And(left, right)), Always(UNTIMED, right))


def untimed_trigger(left: Formula, right: Formula) -> Formula:
    """Interval-free trigger: (r since (l & r)) | alwp r."""
    return Or(Since(UNTIMED, right, And(left, right)), AlwPast(UNTIMED, right))


def expand_release(f: Release) -> Formula:
    """Rewrite a timed release into unary metric operators plus untimed release.

    Offsets reached by a future operator are nonnegative, so a lower end
    below -1 is clamped to -1 (the canonical encoding of a closed-at-zero
    end) before choosing the expansion shape.
    """
    iv, l, r = f.interval, f.left, f.right
    lo = max(iv.lo, -1)
    if lo == -1:
        # zero offset inside the interval: plain untimed release tail
        return Or(Always(iv, r), untimed_release(l, r))
    tail = untimed_release(l, Or(l, WNext(UNTIMED, r)))
    if lo == 0:
        return Or(Always(iv, r), tail)
    return Or(Always(iv, r), Eventually(Interval(-1, lo + 1), tail))


def expand_trigger(f: Trigger) -> Formula:
    """Past mirror of :func:`expand_release` (offsets are tau(k)-tau(j) >= 0)."""
    iv, l, r = f.interval, f.left, f.right
    lo = max(iv.lo, -1)
    if lo == -1:
        return Or(AlwPast(iv, r), untimed_trigger(l, r))
    tail = untimed_trigger(l, Or(l, WPrev(UNTIMED, r)))
    if lo == 0:
        return Or(AlwPast(iv, r), tail)
    return Or(AlwPast(iv, r), EvPast(Interval(-1, lo + 1), tail))


# Structurally equal inputs share one compiled object, so identity-keyed
# evaluation caches hit across formulas with common subterms.
_CORE_MEMO: dict = {}
_PATH_MEMO: dict = {}


def compile_path(rho: PathExpr) -> PathExpr:
    out = _PATH_MEMO.get(rho)
    if out is None:
        out = _compile_path(rho)
        _PATH_MEMO[rho] = out
    return out


def _compile_path(rho: PathExpr) -> PathExpr:
    t = type(rho)
    if t is Step:
        return rho
    if t is Test:
        return Test(compile_to_core(rho.body))
    if t is Choice:
        return Choice(compile_path(rho.left), compile_path(rho.right))
    if t is Seq:
        return Seq(compile_path(rho.left), compile_path(rho.right))
    if t is Star:
        return Star(compile_path(rho.body))
    if t is Converse:
        return Converse(compile_path(rho.body))
    raise TypeError(f"not a path expression: {rho!r}")


def compile_to_core(f: Formula) -> Formula:
    """Expand every derived operator, leaving only Atom/Bot/Diamond/Box."""
    out = _CORE_MEMO.get(f)
    if out is None:
        out = _compile_formula(f)
        _CORE_MEMO[f] = out
    return out


def _compile_formula(f: Formula) -> Formula:
    t = type(f)
    if t is Atom or t is Bot:
        return f
    if t is Diamond:
        return Diamond(compile_path(f.path), f.interval, compile_to_core(f.body))
    if t is Box:
        return Box(compile_path(f.path), f.interval, compile_to_core(f.body))
    if t is Top:
        return Box(Test(BOT), UNTIMED, BOT)
    if t is Not:
        return compile_to_core(Implies(f.body, BOT))
    if t is And:
        return Diamond(Test(compile_to_core(f.left)), UNTIMED, compile_to_core(f.right))
    if t is Or:
        return Diamond(
            Choice(Test(compile_to_core(f.left)), Test(compile_to_core(f.right))),
            UNTIMED,
            compile_to_core(TOP),
        )
    if t is Implies:
        return Box(Test(compile_to_core(f.left)), UNTIMED, compile_to_core(f.right))
    if t is Final:
        return Box(STEP, UNTIMED, BOT)
    if t is Initial:
        return Box(Converse(STEP), UNTIMED, BOT)
    if t is Next:
        return Diamond(STEP, f.interval, compile_to_core(f.body))
    if t is WNext:
        return Box(STEP, f.interval, compile_to_core(f.body))
    if t is Prev:
        return Diamond(Converse(STEP), f.interval.invert(), compile_to_core(f.body))
    if t is WPrev:
        return Box(Converse(STEP), f.interval.invert(), compile_to_core(f.body))
    if t is Eventually:
        return Diamond(Star(STEP), f.interval, compile_to_core(f.body))
    if t is Always:
        return Box(Star(STEP), f.interval, compile_to_core(f.body))
    if t is EvPast:
        return Diamond(Converse(Star(STEP)), f.interval.invert(), compile_to_core(f.body))
    if t is AlwPast:
        return Box(Converse(Star(STEP)), f.interval.invert(), compile_to_core(f.body))
    if t is Until:
        return Diamond(
            Star(Seq(Test(compile_to_core(f.left)), STEP)),
            f.interval,
            compile_to_core(f.right),
        )
    if t is Since:
        return Diamond(
            Converse(Star(Seq(STEP, Test(compile_to_core(f.left))))),
            f.interval.invert(),
            compile_to_core(f.right),
        )
    if t is Release:
        return compile_to_core(expand_release(f))
    if t is Trigger:
        return compile_to_core(expand_trigger(f))
    raise TypeError(f"not a formula: {f!r}")


def invert_past(f: Formula) -> Formula:
    """Eliminate past-eventually operators via converse paths.

    Rewrites each past-eventually subformula into a diamond over the
    converse of the step closure with the mirrored interval; everything
    else is preserved.  Formulas containing other past-oriented surface
    operators are outside the supported fragment and rejected.
    """
    t = type(f)
    if t is EvPast:
        return Diamond(Converse(Star(STEP)), f.interval.invert(), invert_past(f.body))
    if t in _PAST_SURFACE:
        raise ValueError(f"{t.__name__} is outside the past-eventually fragment")
    if t in (Atom, Bot, Top, Final, Initial):
        return f
    if t is Not:
        return Not(invert_past(f.body))
    if t in (And, Or, Implies):
        return t(invert_past(f.left), invert_past(f.right))
    if t in (Next, WNext, Eventually, Always):
        return t(f.interval, invert_past(f.body))
    if t in (Until, Release):
        return t(f.interval, invert_past(f.left), invert_past(f.right))
    if t is Diamond or t is Box:
        return t(_invert_past_path(f.path), f.interval, invert_past(f.body))
    raise TypeError(f"not a formula: {f!r}")


def _invert_past_path(rho: PathExpr) -> PathExpr:
    t = type(rho)
    if t is Step:
        return rho
    if t is Test:
        return Test(invert_past(rho.body))
    if t in (Choice, Seq):
        return t(_invert_past_path(rho.left), _invert_past_path(rho.right))
    return t(_invert_past_path(rho.body))


# -- pretty printing -----------------------------------------------------------

_P_IMP, _P_OR, _P_AND, _P_TMP, _P_UN = range(5)

_UNARY_NAMES = {
    Next: "next",
    WNext: "wnext",
    Prev: "prev",
    WPrev: "wprev",
    Eventually: "ev",
    Always: "alw",
    EvPast: "evp",
    AlwPast: "alwp",
}

_BINARY_NAMES = {Until: "until", Since: "since", Release: "release", Trigger: "trigger"}


def _ival(iv: Interval) -> str:
    return "" if iv.is_untimed else iv.render()


def _wrap(text: str, level: int, ctx: int) -> str:
    return f"({text})" if level < ctx else text


def _fmt(f: Formula, ctx: int) -> str:
    t = type(f)
    if t is Atom:
        return f.name
    if t is Bot:
        return "bot"
    if t is Top:
        return "top"
    if t is Final:
        return "final"
    if t is Initial:
        return "initial"
    if t is Not:
        return _wrap("!" + _fmt(f.body, _P_UN), _P_UN, ctx)
    if t is And:
        text = f"{_fmt(f.left, _P_AND)} & {_fmt(f.right, _P_AND + 1)}"
        return _wrap(text, _P_AND, ctx)
    if t is Or:
        text = f"{_fmt(f.left, _P_OR)} | {_fmt(f.right, _P_OR + 1)}"
        return _wrap(text, _P_OR, ctx)
    if t is Implies:
        text = f"{_fmt(f.left, _P_IMP + 1)} -> {_fmt(f.right, _P_IMP)}"
        return _wrap(text, _P_IMP, ctx)
    if t in _BINARY_NAMES:
        op = _BINARY_NAMES[t] + _ival(f.interval)
        text = f"{_fmt(f.left, _P_TMP + 1)} {op} {_fmt(f.right, _P_TMP)}"
        return _wrap(text, _P_TMP, ctx)
    if t in _UNARY_NAMES:
        text = f"{_UNARY_NAMES[t]}{_ival(f.interval)} {_fmt(f.body, _P_UN)}"
        return _wrap(text, _P_UN, ctx)
    if t is Diamond:
        text = f"<{print_path(f.path)}>{_ival(f.interval)} {_fmt(f.body, _P_UN)}"
        return _wrap(text, _P_UN, ctx)
    if t is Box:
        text = f"[{print_path(f.path)}]{_ival(f.interval)} {_fmt(f.body, _P_UN)}"
        return _wrap(text, _P_UN, ctx)
    raise TypeError(f"not a formula: {f!r}")


_R_CHOICE, _R_SEQ, _R_POST = range(3)


def _fmt_path(rho: PathExpr, ctx: int) -> str:
    t = type(rho)
    if t is Step:
        return "step"
    if t is Test:
        return _fmt(rho.body, _P_UN) + "?"
    if t is Choice:
        text = f"{_fmt_path(rho.left, _R_CHOICE)} + {_fmt_path(rho.right, _R_CHOICE + 1)}"
        return _wrap(text, _R_CHOICE, ctx)
    if t is Seq:
        text = f"{_fmt_path(rho.left, _R_SEQ)} ; {_fmt_path(rho.right, _R_SEQ + 1)}"
        return _wrap(text, _R_SEQ, ctx)
    if t is Star:
        return _fmt_path(rho.body, _R_POST) + "*"
    if t is Converse:
        return _fmt_path(rho.body, _R_POST) + "^-"
    raise TypeError(f"not a path expression: {rho!r}")


def pretty_print(f: Formula) -> str:
    """Render a formula in the concrete DSL; inverse of the parser."""
    return _fmt(f, 0)


def print_path(rho: PathExpr) -> str:
    return _fmt_path(rho, 0)
