"""Rectangular windows and labeled root sets.

A LabeledRootSet is the currency passed between the root finder, the
oracle, and the tracker: a parameter value a together with the roots of
z + e^z = a in some region, each carrying a persistent integer label.
Labels are what monodromy permutations act on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PreconditionError

SEPARATION_FLOOR = 1e-8
NEAR_MERGE_RADIUS = 1e-4
REAL_AXIS_TOL = 1e-9


@dataclass(frozen=True)
class Window:
    """Closed axis-aligned rectangle in the z-plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        for v in (self.re_min, self.re_max, self.im_min, self.im_max):
            if not math.isfinite(v):
                raise PreconditionError(f"window bounds must be finite, got {self}")
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise PreconditionError(f"degenerate window {self}")

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return (
            self.re_min - margin <= z.real <= self.re_max + margin
            and self.im_min - margin <= z.imag <= self.im_max + margin
        )

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    def corners(self) -> list[complex]:
        """Corners in counterclockwise order starting at the lower left."""
        return [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]

    def expand(self, d: float) -> "Window":
        return Window(self.re_min - d, self.re_max + d, self.im_min - d, self.im_max + d)

    def split4(self, cx: float | None = None, cy: float | None = None) -> list["Window"]:
        cx = self.center.real if cx is None else cx
        cy = self.center.imag if cy is None else cy
        if not (self.re_min < cx < self.re_max and self.im_min < cy < self.im_max):
            raise PreconditionError("split point outside window interior")
        return [
            Window(self.re_min, cx, self.im_min, cy),
            Window(cx, self.re_max, self.im_min, cy),
            Window(self.re_min, cx, cy, self.im_max),
            Window(cx, self.re_max, cy, self.im_max),
        ]

    def to_json(self) -> dict:
        return {
            "re_min": self.re_min,
            "re_max": self.re_max,
            "im_min": self.im_min,
            "im_max": self.im_max,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Window":
        return cls(d["re_min"], d["re_max"], d["im_min"], d["im_max"])


@dataclass(frozen=True)
class RootEntry:
    label: int
    z: complex
    multiplicity: int = 1


@dataclass(frozen=True)
class LabeledRootSet:
    """Roots of z + e^z = a with persistent labels.

    Entries closer together than SEPARATION_FLOOR must appear in
    near_merge_pairs (producers flag everything below NEAR_MERGE_RADIUS,
    which subsumes the floor).  Entries with multiplicity > 1 mark
    unresolved clusters at, or numerically indistinguishable from, a
    critical value.
    """

    a: complex
    entries: tuple[RootEntry, ...]
    near_merge_pairs: tuple[tuple[int, int], ...] = ()
    window: Window | None = field(default=None, compare=False)

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if not isinstance(e.label, int) or e.label < 1:
                raise PreconditionError(f"labels must be positive ints, got {e.label!r}")
            if e.label in seen:
                raise PreconditionError(f"duplicate label {e.label}")
            if e.multiplicity < 1:
                raise PreconditionError(f"multiplicity must be >= 1, got {e.multiplicity}")
            if not (math.isfinite(e.z.real) and math.isfinite(e.z.imag)):
                raise PreconditionError(f"non-finite root for label {e.label}")
            seen.add(e.label)
        if self.window is not None:
            for e in self.entries:
                if not self.window.contains(e.z):
                    raise PreconditionError(
                        f"root {e.z!r} (label {e.label}) lies outside the "
                        f"declared window {self.window}"
                    )
        flagged = {tuple(sorted(p)) for p in self.near_merge_pairs}
        es = self.entries
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                d = abs(es[i].z - es[j].z)
                pair = tuple(sorted((es[i].label, es[j].label)))
                if d <= SEPARATION_FLOOR and pair not in flagged:
                    raise PreconditionError(
                        f"labels {pair} are {d:.3g} apart, below the separation "
                        f"floor, and not flagged as near-merge"
                    )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(e.label for e in self.entries))

    def position(self, label: int) -> complex:
        for e in self.entries:
            if e.label == label:
                return e.z
        raise PreconditionError(f"no entry with label {label}")

    def positions(self) -> list[complex]:
        """Positions ordered by label."""
        return [e.z for e in sorted(self.entries, key=lambda e: e.label)]

    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def has_near_merge(self) -> bool:
        return bool(self.near_merge_pairs) or any(e.multiplicity > 1 for e in self.entries)

    def min_pairwise_distance(self) -> float:
        es = self.entries
        best = math.inf
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                best = min(best, abs(es[i].z - es[j].z))
        return best

    def validate_residuals(self, family, tol: float = 1e-10) -> float:
        """Worst residual |f(z) - a| over simple entries; raises if any exceeds tol."""
        from .errors import NumericalError

        worst = 0.0
        for e in self.entries:
            if e.multiplicity > 1:
                continue
            r = abs(family.eval(e.z) - self.a)
            worst = max(worst, r)
            if r >= tol:
                raise NumericalError(f"label {e.label} residual {r:.3g} >= {tol:g}")
        return worst

    def to_json(self) -> dict:
        d = {
            "a": [self.a.real, self.a.imag],
            "roots": [
                {
                    "label": e.label,
                    "z": [e.z.real, e.z.imag],
                    "multiplicity": e.multiplicity,
                }
                for e in sorted(self.entries, key=lambda e: e.label)
            ],
            "near_merge_pairs": [list(p) for p in self.near_merge_pairs],
        }
        if self.window is not None:
            d["window"] = self.window.to_json()
        return d


def match_positions(ps, qs, tol: float) -> tuple[bool, float]:
    """Greedy 1-1 matching between two complex position lists.

    Returns (ok, worst matched distance).  ok is False when the lengths
    differ or some position has no partner within tol.
    """
    ps = [complex(p) for p in ps]
    qs = [complex(q) for q in qs]
    if len(ps) != len(qs):
        return False, math.inf
    remaining = list(range(len(qs)))
    worst = 0.0
    for p in ps:
        if not remaining:
            return False, math.inf
        j = min(remaining, key=lambda j: abs(p - qs[j]))
        d = abs(p - qs[j])
        if d > tol:
            return False, d
        worst = max(worst, d)
        remaining.remove(j)
    return True, worst


def _near_merge_pairs(entries) -> tuple[tuple[int, int], ...]:
    out = []
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            if abs(entries[i].z - entries[j].z) < NEAR_MERGE_RADIUS:
                out.append(tuple(sorted((entries[i].label, entries[j].label))))
    return tuple(out)


def canonical_root_set(
    a: complex,
    positions,
    *,
    multiplicities=None,
    window: Window | None = None,
) -> LabeledRootSet:
    """Label roots canonically: sort by (im, re), count from 1, then swap
    label 1 onto the real root if one is present.

    A root counts as real when |im z| < REAL_AXIS_TOL, which for this
    family forces a to be (numerically) real as well.
    """
    a = complex(a)
    pos = [complex(z) for z in positions]
    if multiplicities is None:
        multiplicities = [1] * len(pos)
    if len(multiplicities) != len(pos):
        raise PreconditionError("multiplicities length mismatch")
    order = sorted(range(len(pos)), key=lambda i: (pos[i].imag, pos[i].real))
    entries = [
        RootEntry(label=rank + 1, z=pos[i], multiplicity=multiplicities[i])
        for rank, i in enumerate(order)
    ]
    real_idx = [i for i, e in enumerate(entries) if abs(e.z.imag) < REAL_AXIS_TOL]
    if len(real_idx) > 1:
        raise PreconditionError("more than one numerically real root in the set")
    if real_idx and entries[real_idx[0]].label != 1:
        r = real_idx[0]
        one = next(i for i, e in enumerate(entries) if e.label == 1)
        entries[r], entries[one] = (
            RootEntry(1, entries[r].z, entries[r].multiplicity),
            RootEntry(entries[r].label, entries[one].z, entries[one].multiplicity),
        )
    entries_t = tuple(entries)
    return LabeledRootSet(
        a=a,
        entries=entries_t,
        near_merge_pairs=_near_merge_pairs(entries_t),
        window=window,
    )
