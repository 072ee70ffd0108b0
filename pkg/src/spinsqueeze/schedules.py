"""Compile twisting pulse schedules from Trotter-Suzuki product formulas.

A schedule describes one period as a time-ordered list of free z^2-twisting
segments and instantaneous +/- pi/2 pulses about x or y, repeated n_cycles
times.  Supported constructions:

* order 1 ("liu1"): one twist block, pulses at delta_t and 3*delta_t;
* order 2 ("schemeA"): the symmetrized block, pulses at delta_t/2 and 5*delta_t/2;
* order 3/4 ("schemeB"): three nested blocks merged into 7 free segments and 6 pulses;
* any even order ("general"): recursive triplet expansion, with negative
  coefficients realized by swapping the twisting axis instead of reversing time.
"""

from __future__ import annotations

from dataclasses import dataclass

# Splitting parameter of the third-order construction, 1/(2 - 2^(1/3)).
S_PARAM = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))

MAX_ORDER = 20


@dataclass(frozen=True)
class Segment:
    kind: str  # "free" | "pulse"
    duration: float = 0.0
    axis: str = ""
    sign: int = 0


def free(duration: float) -> Segment:
    if duration < 0:
        raise ValueError(f"free segment duration must be >= 0, got {duration}")
    return Segment("free", duration=duration)


def pulse(axis: str, sign: int) -> Segment:
    if axis not in ("x", "y") or sign not in (1, -1):
        raise ValueError(f"pulse must be ('x'|'y', +1|-1), got ({axis!r}, {sign!r})")
    return Segment("pulse", axis=axis, sign=sign)


@dataclass(frozen=True)
class Schedule:
    """One compiled period plus its repetition count."""

    scheme: str
    order: int
    segments: tuple[Segment, ...]
    delta_t: float
    t_c: float
    n_cycles: int
    pulses_per_period: int
    strength_divisor: float


@dataclass(frozen=True)
class TsCoefficients:
    """Signed block coefficients of the recursive even-order product formula.

    ``leaves`` are the time-ordered factors at the second-order base level;
    ``level_params`` holds the splitting parameter used at each recursion
    level, innermost first (the first entry is always the third-order one).
    """

    order: int
    level_params: tuple[float, ...]
    leaves: tuple[float, ...]

    @property
    def s(self) -> float:
        return S_PARAM


def level_param(m: int) -> float:
    """Splitting coefficient for the recursion step from order 2m-2 to 2m."""
    return 1.0 / (2.0 - 2.0 ** (1.0 / (2 * m - 1)))


def ts_coefficients(order: int) -> TsCoefficients:
    if order % 2 != 0 or order < 2:
        raise ValueError(f"Trotter-Suzuki order must be a positive even integer, got {order}")
    if order > MAX_ORDER:
        raise ValueError(
            f"order {order} exceeds {MAX_ORDER}; block coefficients grow too large to be useful"
        )
    leaves = [1.0]
    params = []
    for m in range(order // 2, 1, -1):
        k = level_param(m)
        params.append(k)
        expanded = []
        for c in leaves:
            expanded.extend((k * c, (1.0 - 2.0 * k) * c, k * c))
        leaves = expanded
    return TsCoefficients(order, tuple(reversed(params)), tuple(leaves))


def _validate_args(delta_t: float, n_cycles: int) -> None:
    if not delta_t > 0:
        raise ValueError(f"delta_t must be positive, got {delta_t}")
    if not isinstance(n_cycles, (int,)) or isinstance(n_cycles, bool) or n_cycles < 1:
        raise ValueError(f"n_cycles must be a positive integer, got {n_cycles!r}")


def _block(coefficient: float, delta_t: float) -> list[Segment]:
    """Second-order block for one signed coefficient.

    Positive coefficients twist about x (y pulses around the long segment);
    negative ones twist about y (x pulses), which realizes the sign flip
    without negative evolution times.
    """
    c = abs(coefficient)
    axis = "y" if coefficient > 0 else "x"
    return [
        free(c * delta_t / 2.0),
        pulse(axis, 1),
        free(2.0 * c * delta_t),
        pulse(axis, -1),
        free(c * delta_t / 2.0),
    ]


def _normalize(segments: list[Segment]) -> list[Segment]:
    """Merge adjacent free segments and cancel adjacent inverse pulse pairs."""
    segs = list(segments)
    changed = True
    while changed:
        changed = False
        out: list[Segment] = []
        for seg in segs:
            if out:
                prev = out[-1]
                if seg.kind == "free" and prev.kind == "free":
                    out[-1] = free(prev.duration + seg.duration)
                    changed = True
                    continue
                if (
                    seg.kind == "pulse"
                    and prev.kind == "pulse"
                    and seg.axis == prev.axis
                    and seg.sign == -prev.sign
                ):
                    out.pop()
                    changed = True
                    continue
            out.append(seg)
        segs = out
    return segs


def _finish(scheme: str, order: int, segments: list[Segment], delta_t: float, n_cycles: int) -> Schedule:
    t_c = sum(s.duration for s in segments if s.kind == "free")
    n_p = sum(1 for s in segments if s.kind == "pulse")
    return Schedule(
        scheme=scheme,
        order=order,
        segments=tuple(segments),
        delta_t=delta_t,
        t_c=t_c,
        n_cycles=n_cycles,
        pulses_per_period=n_p,
        strength_divisor=t_c / delta_t,
    )


def compile_order1(delta_t: float, n_cycles: int) -> Schedule:
    """First-order split: one twist block per period, pulses at delta_t and 3*delta_t."""
    _validate_args(delta_t, n_cycles)
    segments = [
        free(delta_t),
        pulse("y", 1),
        free(2.0 * delta_t),
        pulse("y", -1),
    ]
    return _finish("liu1", 1, segments, delta_t, n_cycles)


def compile_scheme_a(delta_t: float, n_cycles: int) -> Schedule:
    """Symmetrized second-order period: pulses at delta_t/2 and 5*delta_t/2."""
    _validate_args(delta_t, n_cycles)
    segments = [
        free(delta_t / 2.0),
        pulse("y", 1),
        free(2.0 * delta_t),
        pulse("y", -1),
        free(delta_t / 2.0),
    ]
    return _finish("schemeA", 2, segments, delta_t, n_cycles)


def compile_scheme_b(delta_t: float, n_cycles: int) -> Schedule:
    """Third/fourth-order period: 7 free segments t_i = t_{8-i}, 6 pulses.

    The middle block twists about y (bracketed by x pulses); the outer two
    twist about x (y pulses).  Period length (12s - 3) * delta_t.
    """
    _validate_args(delta_t, n_cycles)
    s = S_PARAM
    t1 = s * delta_t / 2.0
    t2 = 2.0 * s * delta_t
    t3 = (3.0 * s - 1.0) * delta_t / 2.0
    t4 = 2.0 * (2.0 * s - 1.0) * delta_t
    segments = [
        free(t1),
        pulse("y", 1),
        free(t2),
        pulse("y", -1),
        free(t3),
        pulse("x", 1),
        free(t4),
        pulse("x", -1),
        free(t3),
        pulse("y", 1),
        free(t2),
        pulse("y", -1),
        free(t1),
    ]
    return _finish("schemeB", 4, segments, delta_t, n_cycles)


def compile_general(order: int, delta_t: float, n_cycles: int) -> Schedule:
    """Compile any even order by recursive triplet expansion of second-order blocks."""
    _validate_args(delta_t, n_cycles)
    coeffs = ts_coefficients(order)
    segments: list[Segment] = []
    for leaf in coeffs.leaves:
        segments.extend(_block(leaf, delta_t))
    segments = _normalize(segments)
    return _finish("general", order, segments, delta_t, n_cycles)


_COMPILERS = {
    "liu1": lambda dt, nc, order: compile_order1(dt, nc),
    "schemeA": lambda dt, nc, order: compile_scheme_a(dt, nc),
    "schemeB": lambda dt, nc, order: compile_scheme_b(dt, nc),
    "general": lambda dt, nc, order: compile_general(order, dt, nc),
}


def compile_scheme(scheme: str, delta_t: float, n_cycles: int, order: int = 2) -> Schedule:
    if scheme not in _COMPILERS:
        raise ValueError(f"unknown pulse scheme {scheme!r}")
    return _COMPILERS[scheme](delta_t, n_cycles, order)


def period_in_delta_t_units(scheme: str, order: int = 2) -> float:
    """Period length divided by delta_t; also the effective-strength divisor."""
    if scheme in ("liu1", "schemeA"):
        return 3.0
    if scheme == "schemeB":
        return 12.0 * S_PARAM - 3.0
    if scheme == "general":
        return 3.0 * sum(abs(c) for c in ts_coefficients(order).leaves)
    raise ValueError(f"unknown pulse scheme {scheme!r}")


def delta_t_for(scheme: str, t_total: float, n_cycles: int, order: int = 2) -> float:
    """Solve for the step delta_t that fits n_cycles periods into t_total."""
    if not t_total > 0:
        raise ValueError(f"t_total must be positive, got {t_total}")
    return t_total / (n_cycles * period_in_delta_t_units(scheme, order))


@dataclass(frozen=True)
class ScheduleStats:
    t_c: float
    pulses_per_period: int
    total_pulses: int
    effective_strength_factor: float


def schedule_stats(schedule: Schedule) -> ScheduleStats:
    return ScheduleStats(
        t_c=schedule.t_c,
        pulses_per_period=schedule.pulses_per_period,
        total_pulses=schedule.pulses_per_period * schedule.n_cycles,
        effective_strength_factor=schedule.strength_divisor,
    )


def schedule_to_text(schedule: Schedule) -> str:
    """Line-oriented serialization: header, then one FREE/PULSE line per segment."""
    lines = [
        f"# scheme={schedule.scheme} order={schedule.order}"
        f" delta_t={schedule.delta_t:.17g} t_c={schedule.t_c:.17g}"
        f" n_cycles={schedule.n_cycles}"
    ]
    for seg in schedule.segments:
        if seg.kind == "free":
            lines.append(f"FREE {seg.duration:.17g}")
        else:
            lines.append(f"PULSE {seg.axis} {seg.sign:+d}")
    return "\n".join(lines) + "\n"
