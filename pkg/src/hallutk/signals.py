"""Core tensor types and region-of-interest seminorms.

Signals are immutable dense tensors over R or C. Distances between them are
measured with the ``(p, q, regions)`` family: an l^q norm inside each region
of interest, aggregated across regions with an l^p norm, optionally dividing
each region's contribution by its pixel count. Finite sets of signals are
compared with the Hausdorff distance these seminorms induce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ShapeError",
    "RegionError",
    "Signal",
    "Measurement",
    "RegionSet",
    "SeminormSpec",
    "FiniteSet",
    "full_region",
    "roi_seminorm",
    "hausdorff",
    "point_to_set",
    "set_diameter",
]


class ShapeError(ValueError):
    """Operands disagree in shape or scalar field."""


class RegionError(ValueError):
    """A region is empty or falls outside the tensor it is applied to."""


_REAL_DTYPES = (np.float32, np.float64)
_COMPLEX_DTYPES = (np.complex64, np.complex128)


@dataclass(frozen=True)
class Signal:
    """Immutable dense tensor with an explicit real/complex field tag.

    The backing array is copied on construction and marked read-only, so a
    Signal can be shared freely between threads.
    """

    data: np.ndarray
    field: str = "real"

    def __post_init__(self):
        arr = np.asarray(self.data)
        if self.field == "real":
            if np.iscomplexobj(arr):
                raise ShapeError("complex data in a signal tagged real")
            arr = arr.astype(np.float64) if arr.dtype not in _REAL_DTYPES else arr.copy()
        elif self.field == "complex":
            arr = arr.astype(np.complex128) if arr.dtype not in _COMPLEX_DTYPES else arr.copy()
        else:
            raise ValueError(f"field must be 'real' or 'complex', got {self.field!r}")
        if arr.size == 0:
            raise ShapeError("empty tensor")
        if not np.all(np.isfinite(arr)):
            raise ShapeError("non-finite entries in signal data")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @classmethod
    def zeros(cls, shape: Sequence[int], field: str = "real") -> "Signal":
        dtype = np.float64 if field == "real" else np.complex128
        return cls(np.zeros(tuple(shape), dtype=dtype), field)

    def __add__(self, other: "Signal") -> "Signal":
        _check_same_shape(self, other)
        return Signal(self.data + other.data, _join_fields(self.field, other.field))

    def __sub__(self, other: "Signal") -> "Signal":
        _check_same_shape(self, other)
        return Signal(self.data - other.data, _join_fields(self.field, other.field))

    def __mul__(self, scalar: float) -> "Signal":
        return Signal(self.data * scalar, self.field)

    def allclose(self, other: "Signal", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        return self.shape == other.shape and np.allclose(
            self.data, other.data, rtol=rtol, atol=atol)


# Measurements live in the measurement space K^{d2} but carry no extra
# structure beyond a Signal; the alias keeps call signatures readable.
Measurement = Signal


def _join_fields(a: str, b: str) -> str:
    return "complex" if "complex" in (a, b) else "real"


def _check_same_shape(a: Signal, b: Signal) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


Box = tuple[tuple[int, int], ...]  # ((start, stop), ...) one pair per axis


def _validate_box(box: Box, shape: tuple[int, ...]) -> None:
    if len(box) != len(shape):
        raise RegionError(f"region has {len(box)} axes, tensor has {len(shape)}")
    for (start, stop), extent in zip(box, shape):
        if not (0 <= start < stop <= extent):
            raise RegionError(f"region slab [{start}, {stop}) out of bounds for axis "
                              f"of extent {extent}")


def _box_slices(box: Box) -> tuple[slice, ...]:
    return tuple(slice(start, stop) for start, stop in box)


def box_size(box: Box) -> int:
    return math.prod(stop - start for start, stop in box)


@dataclass(frozen=True)
class RegionSet:
    """Non-empty list of axis-aligned index boxes.

    ``normalize`` divides each region's q-norm by the region's element count,
    the per-pixel variant used when comparing details of different extents.
    """

    regions: tuple[Box, ...]
    normalize: bool = False

    def __post_init__(self):
        if not self.regions:
            raise RegionError("a RegionSet needs at least one region")
        canon = []
        for box in self.regions:
            box = tuple((int(s), int(e)) for s, e in box)
            for start, stop in box:
                if stop <= start:
                    raise RegionError(f"empty region slab [{start}, {stop})")
            canon.append(box)
        object.__setattr__(self, "regions", tuple(canon))

    def validate_for(self, shape: tuple[int, ...]) -> None:
        for box in self.regions:
            _validate_box(box, shape)

    def covers(self, shape: tuple[int, ...]) -> bool:
        """True when the union of regions is the whole index set."""
        self.validate_for(shape)
        mask = np.zeros(shape, dtype=bool)
        for box in self.regions:
            mask[_box_slices(box)] = True
        return bool(mask.all())


def full_region(shape: Sequence[int], normalize: bool = False) -> RegionSet:
    """Single region covering the whole tensor."""
    return RegionSet((tuple((0, int(n)) for n in shape),), normalize=normalize)


@dataclass(frozen=True)
class SeminormSpec:
    """The (p, q, regions) seminorm family; p or q may be ``inf``."""

    p: float = 2.0
    q: float = 2.0
    regions: RegionSet | None = None  # None = full tensor at evaluation time

    def __post_init__(self):
        for name, value in (("p", self.p), ("q", self.q)):
            if not (value >= 1.0):  # also rejects NaN
                raise ValueError(f"{name} must be >= 1 or inf, got {value}")

    def regions_for(self, shape: tuple[int, ...]) -> RegionSet:
        if self.regions is None:
            return full_region(shape)
        self.regions.validate_for(shape)
        return self.regions

    def is_norm_on(self, shape: tuple[int, ...]) -> bool:
        """Whether the spec separates points of this shape (regions cover it).

        When False the value is only a seminorm; feasible-set convergence
        guarantees are stated for norms, so callers surface this flag.
        """
        return self.regions_for(shape).covers(shape)


def _lq(values: np.ndarray, q: float) -> float:
    # values is the flattened modulus of a region; q >= 1 or inf
    if values.size == 0:
        return 0.0
    if math.isinf(q):
        return float(values.max(initial=0.0))
    if q == 1.0:
        return float(values.sum())
    if q == 2.0:
        return float(np.sqrt(np.square(values).sum()))
    return float(np.power(np.power(values, q).sum(), 1.0 / q))


def _lp_aggregate(parts: list[float], p: float) -> float:
    if math.isinf(p):
        return max(parts, default=0.0)
    if p == 1.0:
        return float(sum(parts))
    return float(np.power(np.power(np.asarray(parts), p).sum(), 1.0 / p))


def roi_seminorm(a: Signal, b: Signal, spec: SeminormSpec) -> float:
    """Region-wise l^q distances between a and b, aggregated with l^p.

    Complex inputs are reduced to their modulus before the norms are taken.
    With ``normalize`` set on the region set, each region's l^q value is
    divided by the region's element count.
    """
    _check_same_shape(a, b)
    diff = np.abs(a.data - b.data)
    regions = spec.regions_for(a.shape)
    parts = []
    for box in regions.regions:
        value = _lq(diff[_box_slices(box)].ravel(), spec.q)
        if regions.normalize:
            value /= box_size(box)
        parts.append(value)
    return _lp_aggregate(parts, spec.p)


def norm(a: Signal, spec: SeminormSpec) -> float:
    """Seminorm of a single signal, i.e. its distance to zero."""
    return roi_seminorm(a, Signal.zeros(a.shape, a.field), spec)


@dataclass(frozen=True)
class FiniteSet:
    """Non-empty finite set of same-shaped signals (a decoder's output)."""

    elements: tuple[Signal, ...]

    def __post_init__(self):
        if not self.elements:
            raise ShapeError("FiniteSet must be non-empty")
        ref = self.elements[0]
        for el in self.elements[1:]:
            if el.shape != ref.shape:
                raise ShapeError("FiniteSet elements disagree in shape")
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.elements[0].shape

    @classmethod
    def of(cls, *elements: Signal) -> "FiniteSet":
        return cls(tuple(elements))


def _cross_distances(A: FiniteSet, B: FiniteSet, spec: SeminormSpec) -> np.ndarray:
    out = np.empty((len(A), len(B)))
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            out[i, j] = roi_seminorm(a, b, spec)
    return out


def hausdorff(A: FiniteSet, B: FiniteSet, spec: SeminormSpec) -> float:
    """Hausdorff distance max(sup_a inf_b, sup_b inf_a) between finite sets."""
    if A.shape != B.shape:
        raise ShapeError(f"set shape mismatch: {A.shape} vs {B.shape}")
    d = _cross_distances(A, B, spec)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def point_to_set(x: Signal, B: FiniteSet, spec: SeminormSpec) -> float:
    """Worst-case distance sup_{u in B} ||u - x||.

    This is the Hausdorff distance between {x} and B: the reconstruction set
    is judged by its farthest member, so one bad reconstruction cannot hide
    behind good ones.
    """
    if x.shape != B.shape:
        raise ShapeError(f"shape mismatch: {x.shape} vs {B.shape}")
    return max(roi_seminorm(u, x, spec) for u in B)


def min_to_set(x: Signal, B: FiniteSet, spec: SeminormSpec) -> float:
    """Best-case distance min_{u in B} ||u - x|| (set membership up to tol)."""
    if x.shape != B.shape:
        raise ShapeError(f"shape mismatch: {x.shape} vs {B.shape}")
    return min(roi_seminorm(u, x, spec) for u in B)


def set_diameter(B: FiniteSet, spec: SeminormSpec) -> float:
    """max_{u,v in B} ||u - v||; zero for singletons."""
    best = 0.0
    els = B.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            best = max(best, roi_seminorm(els[i], els[j], spec))
    return best
