"""Synthetic signal generators: chaotic attractor traces and compound signals
with injected rare patterns plus their ground-truth windows."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_positive_int
from .exceptions import NumericError
from .ingest import TimeSeries

# Canonical chaotic parameter sets.
LORENZ_PARAMS = {"sigma": 10.0, "rho": 28.0, "beta": 8.0 / 3.0}
ROSSLER_PARAMS = {"a": 0.2, "b": 0.2, "c": 5.7}


def _rk4_trace(deriv, steps: int, dt: float, initial, name: str) -> TimeSeries:
    """Fixed-step RK4 integration, returning the x-coordinate trace.

    The trace includes the initial state, so its length equals ``steps``.
    """
    steps = check_positive_int(steps, "steps", minimum=2)
    if dt < 0:
        raise ValueError(f"dt must be >= 0, got {dt}")
    state = np.asarray(initial, dtype=np.float64)
    if state.shape != (3,):
        raise ValueError(f"initial state must be a 3-vector, got shape {state.shape}")
    xs = np.empty(steps, dtype=np.float64)
    xs[0] = state[0]
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, steps):
            k1 = deriv(state)
            k2 = deriv(state + 0.5 * dt * k1)
            k3 = deriv(state + 0.5 * dt * k2)
            k4 = deriv(state + dt * k3)
            state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(state)):
                raise NumericError(f"{name} state became non-finite at step {i} (dt={dt})")
            xs[i] = state[0]
    return TimeSeries(values=xs, name=name)


def lorenz(steps: int, dt: float = 0.01, initial=(1.0, 1.0, 1.0),
           sigma: float = LORENZ_PARAMS["sigma"], rho: float = LORENZ_PARAMS["rho"],
           beta: float = LORENZ_PARAMS["beta"]) -> TimeSeries:
    """x-coordinate trace of the Lorenz system under fixed-step RK4."""

    def deriv(s):
        x, y, z = s
        return np.array([sigma * (y - x), x * (rho - z) - y, x * y - beta * z])

    return _rk4_trace(deriv, steps, dt, initial, name="lorenz")


def rossler(steps: int, dt: float = 0.05, initial=(1.0, 1.0, 1.0),
            a: float = ROSSLER_PARAMS["a"], b: float = ROSSLER_PARAMS["b"],
            c: float = ROSSLER_PARAMS["c"]) -> TimeSeries:
    """x-coordinate trace of the Roessler system under fixed-step RK4."""

    def deriv(s):
        x, y, z = s
        return np.array([-y - z, x + a * y, b + z * (x - c)])

    return _rk4_trace(deriv, steps, dt, initial, name="rossler")


@dataclass
class RarePattern:
    """One rare-pattern injection over the half-open window [start, end).

    ``kind`` selects the replacement shape:

    - ``"flat"``: constant at ``level``
    - ``"highfreq"``: sine with its own (short) ``period`` and ``amplitude``
    - ``"spike"``: impulses of height ``level`` every ``every`` samples,
      base value elsewhere in the window
    - ``"scale"``: the base signal multiplied by ``level``
    """

    kind: str
    start: int
    end: int
    level: float = 0.0
    period: float = 5.0
    amplitude: float = 1.0
    every: int = 8

    def validate(self, n: int) -> "RarePattern":
        if self.kind not in ("flat", "highfreq", "spike", "scale"):
            raise ValueError(f"unknown rare-pattern kind {self.kind!r}")
        if not (0 <= self.start < self.end <= n):
            raise ValueError(
                f"injection window [{self.start}, {self.end}) falls outside [0, {n})"
            )
        return self


@dataclass
class CompoundSpec:
    """A periodic base signal plus rare-pattern injections.

    The base is a sine wave ``amplitude * sin(2*pi*t/period + phase)``
    sampled at t = 0..n-1. Injections must not overlap.
    """

    n: int = 500
    period: float = 50.0
    amplitude: float = 1.0
    phase: float = 0.0
    rare: list[RarePattern] = field(default_factory=list)

    @classmethod
    def from_dict(cls, raw: dict) -> "CompoundSpec":
        """Build a spec from the documented key-value config form."""
        rare = [RarePattern(**entry) for entry in raw.get("rare", [])]
        keys = {"n", "period", "amplitude", "phase"}
        base = {k: raw[k] for k in keys if k in raw}
        return cls(rare=rare, **base)


def compound(spec: CompoundSpec) -> tuple[TimeSeries, list[tuple[int, int]]]:
    """Generate a compound signal and the ground-truth injection windows.

    Returns
    -------
    (TimeSeries, list of (start, end))
        The series, and the injected windows sorted ascending. An empty
        injection list yields the pure base signal.

    Raises
    ------
    ValueError
        If any two injection windows overlap.
    """
    n = check_positive_int(spec.n, "n", minimum=2)
    t = np.arange(n, dtype=np.float64)
    values = spec.amplitude * np.sin(2.0 * np.pi * t / spec.period + spec.phase)

    windows = sorted((p.start, p.end) for p in spec.rare)
    for (s0, e0), (s1, _) in zip(windows, windows[1:]):
        if s1 < e0:
            raise ValueError(
                f"injection windows overlap: [{s0}, {e0}) and starting at {s1}"
            )

    for pattern in sorted(spec.rare, key=lambda p: p.start):
        pattern.validate(n)
        sl = slice(pattern.start, pattern.end)
        local = t[sl]
        if pattern.kind == "flat":
            values[sl] = pattern.level
        elif pattern.kind == "highfreq":
            values[sl] = pattern.amplitude * np.sin(2.0 * np.pi * local / pattern.period)
        elif pattern.kind == "spike":
            hit = (local - pattern.start) % max(pattern.every, 1) == 0
            values[sl] = np.where(hit, pattern.level, values[sl])
        elif pattern.kind == "scale":
            values[sl] = values[sl] * pattern.level

    series = TimeSeries(values=values, name="compound")
    return series, windows
