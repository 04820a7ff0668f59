"""Monotone integrator functions with exact one-sided limits.

A MonotoneFn is a continuous piecewise-linear nondecreasing part plus finitely
many positive jumps (atoms).  Evaluation follows the normalized convention:

* alpha(a) = 0 after normalization,
* alpha is right-continuous at every atom strictly inside (a, b],
* an atom sitting at the left endpoint a is the one deliberate exception:
  alpha(a) stays 0 and the jump only shows up for x > a.  Without this
  exception the point evaluation functional at a would have no monotone
  representative.

The right limit at b is defined to be alpha(b).
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError
from .intervals import ClosedInterval, CompactSet, cantor_approx

RIGHT = "right"
LEFT = "left"


class OneSidedValues(NamedTuple):
    left: float
    value: float
    right: float


@dataclass(frozen=True)
class MonotoneFn:
    """Nondecreasing integrator on a hull [a, b].

    knots    -- (x, y) vertices of the continuous piecewise-linear part;
                x strictly increasing from a to b, y nondecreasing.
    atoms    -- (location, weight) jumps, weights > 0, locations strictly
                increasing within [a, b].
    offset   -- constant added to every value; nonzero only for raw,
                un-normalized functions.
    atom_side -- jump convention: "right" (canonical) makes alpha(c) include
                the atom at c; "left" defers it to x > c.  normalize()
                rewrites "left" as "right"; the two agree at every
                continuity point.
    """

    hull: ClosedInterval
    knots: tuple[tuple[float, float], ...]
    atoms: tuple[tuple[float, float], ...] = ()
    offset: float = 0.0
    atom_side: str = RIGHT

    def __post_init__(self) -> None:
        a, b = self.hull.lo, self.hull.hi
        if len(self.knots) < 2:
            raise ValueError("need at least the two endpoint knots")
        xs = [x for x, _ in self.knots]
        ys = [y for _, y in self.knots]
        if xs[0] != a or xs[-1] != b:
            raise ValueError(f"knots must span the hull exactly: {xs[0]}..{xs[-1]} vs [{a}, {b}]")
        if any(u >= v for u, v in zip(xs, xs[1:])):
            raise ValueError("knot positions must be strictly increasing")
        if any(u > v for u, v in zip(ys, ys[1:])):
            raise ValueError("knot values must be nondecreasing")
        locs = [c for c, _ in self.atoms]
        if any(w <= 0 for _, w in self.atoms):
            raise ValueError("atom weights must be strictly positive")
        if any(u >= v for u, v in zip(locs, locs[1:])):
            raise ValueError("atom locations must be strictly increasing")
        if locs and (locs[0] < a or locs[-1] > b):
            raise ValueError("atom locations must lie within the hull")
        if self.atom_side not in (RIGHT, LEFT):
            raise ValueError(f"unknown atom_side {self.atom_side!r}")
        if self.atom_side == LEFT and locs and locs[-1] == b:
            raise ValueError("left-continuous convention cannot host an atom at b")

    # -- factories ---------------------------------------------------------

    @staticmethod
    def from_knots(points: Iterable[tuple[float, float]],
                   atoms: Iterable[tuple[float, float]] = (),
                   offset: float = 0.0,
                   atom_side: str = RIGHT) -> "MonotoneFn":
        pts = tuple((float(x), float(y)) for x, y in points)
        hull = ClosedInterval(pts[0][0], pts[-1][0])
        return MonotoneFn(hull, pts, tuple((float(c), float(w)) for c, w in atoms),
                          float(offset), atom_side)

    @staticmethod
    def identity(hull: ClosedInterval) -> "MonotoneFn":
        return MonotoneFn(hull, ((hull.lo, 0.0), (hull.hi, hull.hi - hull.lo)))

    @staticmethod
    def constant(hull: ClosedInterval) -> "MonotoneFn":
        return MonotoneFn(hull, ((hull.lo, 0.0), (hull.hi, 0.0)))

    @staticmethod
    def pure_atoms(hull: ClosedInterval, atoms: Iterable[tuple[float, float]]) -> "MonotoneFn":
        return MonotoneFn(hull, ((hull.lo, 0.0), (hull.hi, 0.0)), tuple(atoms))

    # -- cached arrays -----------------------------------------------------

    @cached_property
    def _kx(self) -> np.ndarray:
        return np.array([x for x, _ in self.knots])

    @cached_property
    def _ky(self) -> np.ndarray:
        return np.array([y for _, y in self.knots])

    @cached_property
    def _slopes(self) -> np.ndarray:
        return np.diff(self._ky) / np.diff(self._kx)

    @cached_property
    def _atom_locs(self) -> np.ndarray:
        return np.array([c for c, _ in self.atoms])

    @cached_property
    def _atom_cum(self) -> np.ndarray:
        return np.cumsum([w for _, w in self.atoms])

    # -- evaluation --------------------------------------------------------

    def _continuous(self, x):
        """Exact piecewise-linear part; hits knot values bit-for-bit."""
        kx, ky = self._kx, self._ky
        xs = np.asarray(x, dtype=float)
        seg = np.clip(np.searchsorted(kx, xs, side="right") - 1, 0, len(kx) - 2)
        on_right_knot = xs == kx[seg + 1]
        val = np.where(on_right_knot, ky[seg + 1],
                       ky[seg] + self._slopes[seg] * (xs - kx[seg]))
        return val if xs.ndim else float(val)

    def _atom_mass(self, x, side: str):
        if not self.atoms:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        xs = np.asarray(x, dtype=float)
        idx = np.searchsorted(self._atom_locs, xs, side=side)
        cum = np.concatenate(([0.0], self._atom_cum))
        out = cum[idx]
        return out if xs.ndim else float(out)

    def __call__(self, x):
        """alpha(x) under this function's conventions; accepts scalars or arrays."""
        xs = np.asarray(x, dtype=float)
        a, b = self.hull.lo, self.hull.hi
        if np.any(xs < a) or np.any(xs > b):
            raise DomainError(f"evaluation outside hull [{a}, {b}]")
        side = "right" if self.atom_side == RIGHT else "left"
        val = self.offset + self._continuous(xs) + self._atom_mass(xs, side)
        if self.atom_side == RIGHT and self.atoms and self.atoms[0][0] == a:
            val = np.where(xs == a, val - self.atoms[0][1], val)
        return val if xs.ndim else float(val)

    def value_at(self, x: float) -> float:
        return float(self(x))

    @property
    def is_normalized(self) -> bool:
        return (self.offset == 0.0 and self.knots[0][1] == 0.0
                and self.atom_side == RIGHT)


def eval_with_limits(alpha: MonotoneFn, x: float) -> OneSidedValues:
    """(alpha(x-), alpha(x), alpha(x+)); limits at the hull ends fall back to the value.

    Always left <= value <= right, and right - left equals the weight of an
    atom at x (zero when there is none).
    """
    a, b = alpha.hull.lo, alpha.hull.hi
    if not (a <= x <= b):
        raise DomainError(f"point {x} outside hull [{a}, {b}]")
    cont = alpha._continuous(x)
    base = alpha.offset + cont
    value = float(alpha(x))
    left = value if x == a else base + alpha._atom_mass(x, "left")
    right = value if x == b else base + alpha._atom_mass(x, "right")
    return OneSidedValues(float(left), value, float(right))


def normalize(alpha: MonotoneFn) -> MonotoneFn:
    """Shift so alpha(a) = 0 and rewrite jumps right-continuously; idempotent.

    The result agrees with alpha - alpha(a) at every continuity point; only
    the values taken exactly at jump locations can move.
    """
    if alpha.is_normalized:
        return alpha
    y0 = alpha.knots[0][1]
    knots = tuple((x, y - y0) for x, y in alpha.knots)
    return replace(alpha, knots=knots, offset=0.0, atom_side=RIGHT)


def total_variation(alpha: MonotoneFn) -> float:
    """alpha(b) - alpha(a): continuous rise plus all atom weights."""
    rise = alpha.knots[-1][1] - alpha.knots[0][1]
    return rise + float(sum(w for _, w in alpha.atoms))


def is_constant_on(alpha: MonotoneFn, span: tuple[float, float]) -> bool:
    """True iff alpha carries no mass on the open interval (u, v).

    Exact test: the continuous part has equal one-sided limits at the ends
    and no atom sits strictly inside.
    """
    u, v = span
    a, b = alpha.hull.lo, alpha.hull.hi
    if not (a <= u < v <= b):
        raise ValueError(f"({u}, {v}) is not a valid open subinterval of [{a}, {b}]")
    locs = [c for c, _ in alpha.atoms]
    if bisect_left(locs, v) - bisect_right(locs, u) > 0:
        return False
    return float(alpha._continuous(v)) - float(alpha._continuous(u)) == 0.0


def devil_staircase(depth: int, hull: ClosedInterval) -> MonotoneFn:
    """Piecewise-linear Cantor-function approximant.

    Rises by 2^-depth across each part of cantor_approx(depth, hull) and is
    exactly constant on every gap; no atoms; total variation exactly 1.
    """
    parts = cantor_approx(depth, hull).parts
    step = 2.0 ** (-depth)
    knots: list[tuple[float, float]] = []
    for i, p in enumerate(parts):
        lo_y = i * step
        hi_y = (i + 1) * step
        if not knots or knots[-1][0] != p.lo:
            knots.append((p.lo, lo_y))
        knots.append((p.hi, hi_y))
    return MonotoneFn(hull, tuple(knots))
