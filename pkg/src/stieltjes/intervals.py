"""Compact subsets of the real line as finite unions of disjoint closed intervals.

A compact set is kept in canonical form (sorted, strictly separated parts)
inside an ambient hull [a, b].  Its complement within the hull decomposes into
finitely many gaps; gaps touching a hull endpoint are half-open on that side
and carry an explicit flag, because they measure differently from interior
gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError

MAX_CANTOR_DEPTH = 20


@dataclass(frozen=True, slots=True)
class ClosedInterval:
    """[lo, hi] with lo <= hi; a single point when lo == hi."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "ClosedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True, slots=True)
class Gap:
    """One connected component of hull \\ K.

    Interior gaps are open on both sides.  A gap that starts at the hull's
    left endpoint includes it (closed_lo), and symmetrically on the right;
    those endpoints belong to the complement because they are not in K.
    """

    lo: float
    hi: float
    closed_lo: bool = False
    closed_hi: bool = False

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"gap must have positive width, got ({self.lo}, {self.hi})")

    @property
    def length(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class CompactSet:
    """Finite union of disjoint closed intervals inside a hull."""

    parts: tuple[ClosedInterval, ...]
    hull: ClosedInterval

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("compact set needs at least one interval")
        for p in self.parts:
            if not self.hull.contains_interval(p):
                raise ValueError(f"part [{p.lo}, {p.hi}] outside hull [{self.hull.lo}, {self.hull.hi}]")
        for a, b in zip(self.parts, self.parts[1:]):
            if not a.hi < b.lo:
                raise ValueError(f"parts not strictly separated: [{a.lo}, {a.hi}] and [{b.lo}, {b.hi}]")

    @cached_property
    def _los(self) -> np.ndarray:
        return np.array([p.lo for p in self.parts])

    @cached_property
    def _his(self) -> np.ndarray:
        return np.array([p.hi for p in self.parts])

    def contains(self, x: float) -> bool:
        return bool(distance(x, self) == 0.0)

    @property
    def total_length(self) -> float:
        return float(sum(p.length for p in self.parts))


@dataclass(frozen=True)
class GapDecomposition:
    """The ordered gaps of hull \\ K; empty when K fills the hull."""

    hull: ClosedInterval
    gaps: tuple[Gap, ...]

    @property
    def total_length(self) -> float:
        return float(sum(g.length for g in self.gaps))


SetLike = Union[CompactSet, Sequence[ClosedInterval]]


def make_compact(intervals: Iterable[ClosedInterval], hull: ClosedInterval) -> CompactSet:
    """Canonicalize a list of closed intervals into a CompactSet.

    Overlapping or touching intervals are merged, the result is sorted.
    Raises on empty input or an interval escaping the hull.
    """
    items = sorted(intervals, key=lambda p: (p.lo, p.hi))
    if not items:
        raise ValueError("compact set needs at least one interval")
    for p in items:
        if not hull.contains_interval(p):
            raise ValueError(f"interval [{p.lo}, {p.hi}] outside hull [{hull.lo}, {hull.hi}]")
    merged: list[ClosedInterval] = [items[0]]
    for p in items[1:]:
        last = merged[-1]
        if p.lo <= last.hi:  # overlap or touch: merge
            if p.hi > last.hi:
                merged[-1] = ClosedInterval(last.lo, p.hi)
        else:
            merged.append(p)
    return CompactSet(tuple(merged), hull)


def gaps(compact: CompactSet) -> GapDecomposition:
    """Connected components of hull \\ K, with hull-endpoint gaps flagged."""
    hull = compact.hull
    out: list[Gap] = []
    first = compact.parts[0]
    if hull.lo < first.lo:
        out.append(Gap(hull.lo, first.lo, closed_lo=True))
    for left, right in zip(compact.parts, compact.parts[1:]):
        out.append(Gap(left.hi, right.lo))
    last = compact.parts[-1]
    if last.hi < hull.hi:
        out.append(Gap(last.hi, hull.hi, closed_hi=True))
    return GapDecomposition(hull, tuple(out))


def _part_arrays(target: SetLike) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(target, CompactSet):
        return target._los, target._his
    parts = sorted(target, key=lambda p: p.lo)
    if not parts:
        raise ValueError("distance to an empty set is undefined")
    return np.array([p.lo for p in parts]), np.array([p.hi for p in parts])


def distance(x, target: SetLike):
    """inf over y in the set of |x - y|; 1-Lipschitz in x, zero iff x is a member.

    Accepts a scalar or an ndarray of query points.
    """
    los, his = _part_arrays(target)
    xs = np.asarray(x, dtype=float)
    idx = np.searchsorted(los, xs, side="right") - 1
    below = idx < 0
    idx_c = np.clip(idx, 0, len(los) - 1)
    d_left = np.where(below, np.inf, xs - his[idx_c])  # >0 only when x is past part idx
    nxt = np.clip(idx + 1, 0, len(los) - 1)
    d_right = np.where(idx + 1 < len(los), los[nxt] - xs, np.inf)
    d_right = np.where(below, los[0] - xs, d_right)
    d = np.maximum(np.minimum(d_left, d_right), 0.0)
    if xs.ndim == 0:
        return float(d)
    return d


def cantor_approx(depth: int, hull: ClosedInterval) -> CompactSet:
    """Depth-n middle-thirds approximant: 2^depth closed intervals.

    Each part has length (hull length)/3^depth; depth n+1 refines depth n.
    """
    if depth < 0 or depth > MAX_CANTOR_DEPTH:
        raise ValueError(f"cantor depth must be in [0, {MAX_CANTOR_DEPTH}], got {depth}")
    parts = [(hull.lo, hull.hi)]
    for _ in range(depth):
        nxt = []
        for lo, hi in parts:
            third = (hi - lo) / 3.0
            nxt.append((lo, lo + third))
            nxt.append((hi - third, hi))
        parts = nxt
    return CompactSet(tuple(ClosedInterval(lo, hi) for lo, hi in parts), hull)


def require_inside_hull(x: float, hull: ClosedInterval) -> None:
    if not hull.contains(x):
        raise DomainError(f"point {x} outside hull [{hull.lo}, {hull.hi}]")
