"""Exact measure arithmetic for finitely supported distributions on the integers.

Everything here is exact: masses are `fractions.Fraction` values, so equality
of measures and of computed probabilities is decidable and checked as
identity, never up to tolerance.  Measures on the infinite product space are
truncated: a `ProductMeasureSpec` lists the first d coordinate measures
explicitly, and a tail policy says what every later coordinate carries.
Operations that would need coordinates the spec cannot resolve raise
`UnsupportedDepthError` instead of guessing.

All values are immutable once constructed and all functions are pure, so
they can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iter_product
from typing import Iterator, Mapping, Optional, Sequence, Union

__all__ = [
    "UnsupportedDepthError",
    "FiniteMeasureZ",
    "UniformTail",
    "PointMassTail",
    "TailPolicy",
    "ProductMeasureSpec",
    "CylinderSet",
    "uniform",
    "dirac",
    "convolve",
    "translate_measure",
    "uniform_product_spec",
    "materialize",
    "measure_of",
    "translate_set",
    "support_box",
    "box_measure",
    "box_intersection_measure",
    "lattice_points",
]

Box = tuple[tuple[int, int], ...]


class UnsupportedDepthError(Exception):
    """A computation needs coordinates beyond the resolvable depth of a spec."""


def _check_int(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class FiniteMeasureZ:
    """A probability measure on Z with finite support.

    Canonical form: zero-mass points are dropped, every remaining mass is a
    positive `Fraction`, and the masses sum to exactly 1.  The support is the
    key set of `weights`; treat the mapping as read-only.
    """

    weights: Mapping[int, Fraction]

    def __post_init__(self):
        clean: dict[int, Fraction] = {}
        for point, mass in self.weights.items():
            _check_int(point, "support point")
            mass = mass if isinstance(mass, Fraction) else Fraction(mass)
            if mass < 0:
                raise ValueError(f"negative mass {mass} at point {point}")
            if mass != 0:
                clean[point] = mass
        if not clean:
            raise ValueError("a probability measure needs nonempty support")
        total = sum(clean.values())
        if total != 1:
            raise ValueError(f"total mass is {total}, expected exactly 1")
        object.__setattr__(self, "weights", clean)

    def __hash__(self):
        return hash(tuple(sorted(self.weights.items())))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.weights))

    @property
    def min_support(self) -> int:
        return min(self.weights)

    @property
    def max_support(self) -> int:
        return max(self.weights)

    def mass(self, point: int) -> Fraction:
        return self.weights.get(point, Fraction(0))

    def interval_mass(self, lo: int, hi: int) -> Fraction:
        """Total mass of the integer interval [lo, hi]."""
        return sum(
            (m for z, m in self.weights.items() if lo <= z <= hi), Fraction(0)
        )


def uniform(k: int) -> FiniteMeasureZ:
    """The uniform measure on {0, ..., k}, mass 1/(k+1) per point."""
    if k < 0:
        raise ValueError(f"uniform size must be >= 0, got {k}")
    w = Fraction(1, k + 1)
    return FiniteMeasureZ({z: w for z in range(k + 1)})


def dirac(z: int) -> FiniteMeasureZ:
    """The point mass at z."""
    return FiniteMeasureZ({_check_int(z, "point"): Fraction(1)})


def convolve(p: FiniteMeasureZ, q: FiniteMeasureZ) -> FiniteMeasureZ:
    """Distribution of X + Y for independent X ~ p and Y ~ q.

    result(z) = sum over x + y = z of p(x) * q(y); the support is the
    Minkowski sum of the two supports and the total mass stays exactly 1.
    """
    out: dict[int, Fraction] = {}
    for x, px in p.weights.items():
        for y, qy in q.weights.items():
            z = x + y
            out[z] = out.get(z, Fraction(0)) + px * qy
    return FiniteMeasureZ(out)


def translate_measure(p: FiniteMeasureZ, shift: int) -> FiniteMeasureZ:
    """Pullback of p under the map X -> X + shift: result(z) = p(z + shift)."""
    _check_int(shift, "shift")
    return FiniteMeasureZ({z - shift: m for z, m in p.weights.items()})


@dataclass(frozen=True)
class UniformTail:
    """Every coordinate beyond the prefix carries uniform({0..k})."""

    k: int

    def __post_init__(self):
        _check_int(self.k, "tail size")
        if self.k < 0:
            raise ValueError(f"tail size must be >= 0, got {self.k}")

    def resolve(self) -> FiniteMeasureZ:
        return uniform(self.k)


@dataclass(frozen=True)
class PointMassTail:
    """Every coordinate beyond the prefix carries the point mass at z."""

    z: int

    def __post_init__(self):
        _check_int(self.z, "tail point")

    def resolve(self) -> FiniteMeasureZ:
        return dirac(self.z)


TailPolicy = Optional[Union[UniformTail, PointMassTail]]


@dataclass(frozen=True)
class ProductMeasureSpec:
    """A product measure given by an explicit depth-d prefix plus a tail policy.

    The prefix determines the measure of every cylinder of depth <= d
    exactly.  A tail policy extends that to arbitrary depth; `tail=None`
    means the measure is only pinned down to depth d and deeper queries
    raise `UnsupportedDepthError`.
    """

    prefix: tuple[FiniteMeasureZ, ...]
    tail: TailPolicy = None

    def __post_init__(self):
        entries = tuple(self.prefix)
        for i, m in enumerate(entries):
            if not isinstance(m, FiniteMeasureZ):
                raise ValueError(f"prefix entry {i} is not a FiniteMeasureZ")
        if self.tail is not None and not isinstance(
            self.tail, (UniformTail, PointMassTail)
        ):
            raise ValueError(f"unknown tail policy {self.tail!r}")
        object.__setattr__(self, "prefix", entries)

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def resolvable_to(self, depth: int) -> bool:
        return depth <= self.depth or self.tail is not None

    def coordinate(self, n: int) -> FiniteMeasureZ:
        """The measure carried by coordinate n, resolving the tail if needed."""
        if n < 0:
            raise ValueError(f"coordinate index must be >= 0, got {n}")
        if n < len(self.prefix):
            return self.prefix[n]
        if self.tail is None:
            raise UnsupportedDepthError(
                f"coordinate {n} lies beyond prefix depth {self.depth} "
                "and the spec declares no tail policy"
            )
        return self.tail.resolve()


def uniform_product_spec(
    sizes: Sequence[int], tail: TailPolicy = None
) -> ProductMeasureSpec:
    """Product of uniform({0..sizes[n]}) coordinate measures."""
    return ProductMeasureSpec(tuple(uniform(k) for k in sizes), tail)


def materialize(spec: ProductMeasureSpec, depth: int) -> ProductMeasureSpec:
    """Extend the explicit prefix to `depth` by resolving the tail policy."""
    if depth <= spec.depth:
        return spec
    extra = tuple(spec.coordinate(n) for n in range(spec.depth, depth))
    return ProductMeasureSpec(spec.prefix + extra, spec.tail)


@dataclass(frozen=True)
class CylinderSet:
    """A finite union of depth-d cylinders, one per listed prefix tuple.

    Canonical form: prefixes are sorted and deduplicated, so structural
    equality is set equality.  The empty prefix family denotes the empty
    set; depth 0 with the single empty tuple denotes the whole space.
    """

    depth: int
    prefixes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_int(self.depth, "depth")
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        canon = set()
        for s in self.prefixes:
            t = tuple(_check_int(v, "prefix entry") for v in s)
            if len(t) != self.depth:
                raise ValueError(
                    f"prefix {t} has length {len(t)}, expected depth {self.depth}"
                )
            canon.add(t)
        object.__setattr__(self, "prefixes", tuple(sorted(canon)))

    @classmethod
    def empty(cls, depth: int) -> "CylinderSet":
        return cls(depth, ())

    @classmethod
    def whole_space(cls) -> "CylinderSet":
        return cls(0, ((),))

    @property
    def is_empty(self) -> bool:
        return not self.prefixes

    @property
    def size(self) -> int:
        return len(self.prefixes)

    def translate(self, x: Sequence[int]) -> "CylinderSet":
        return translate_set(self, x)

    def union(self, other: "CylinderSet") -> "CylinderSet":
        self._check_same_depth(other)
        return CylinderSet(self.depth, self.prefixes + other.prefixes)

    def intersect(self, other: "CylinderSet") -> "CylinderSet":
        self._check_same_depth(other)
        common = set(self.prefixes) & set(other.prefixes)
        return CylinderSet(self.depth, tuple(common))

    def expand(self, windows: Box) -> "CylinderSet":
        """Refine every cylinder over the given per-coordinate windows.

        Appends one coordinate per window entry, enumerating all integer
        values in [lo, hi].  Refinement is exact on any set whose relevant
        coordinates are confined to the windows; it is meant for small
        windows (the prefix count multiplies by the window volume).
        """
        new = [s + w for s in self.prefixes for w in lattice_points(windows)]
        return CylinderSet(self.depth + len(windows), tuple(new))

    def _check_same_depth(self, other: "CylinderSet") -> None:
        if self.depth != other.depth:
            raise ValueError(
                f"depth mismatch: {self.depth} vs {other.depth}; "
                "refine to a common depth first"
            )


def translate_set(cyl: CylinderSet, x: Sequence[int]) -> CylinderSet:
    """Shift every prefix coordinatewise by x (length must equal the depth)."""
    shift = tuple(_check_int(v, "shift entry") for v in x)
    if len(shift) != cyl.depth:
        raise ValueError(
            f"shift length {len(shift)} does not match depth {cyl.depth}"
        )
    moved = tuple(
        tuple(s[i] + shift[i] for i in range(cyl.depth)) for s in cyl.prefixes
    )
    return CylinderSet(cyl.depth, moved)


def measure_of(spec: ProductMeasureSpec, cyl: CylinderSet) -> Fraction:
    """Exact measure of a cylinder set under a product measure spec.

    The cylinders in a canonical `CylinderSet` are pairwise disjoint, so the
    value is the sum over prefixes of the product of per-coordinate point
    masses.  Raises `UnsupportedDepthError` if the set is deeper than the
    spec can resolve.
    """
    if not spec.resolvable_to(cyl.depth):
        raise UnsupportedDepthError(
            f"cylinder depth {cyl.depth} exceeds prefix depth {spec.depth} "
            "and the spec declares no tail policy"
        )
    coords = [spec.coordinate(n) for n in range(cyl.depth)]
    total = Fraction(0)
    for s in cyl.prefixes:
        f = Fraction(1)
        for n, v in enumerate(s):
            f *= coords[n].mass(v)
            if f == 0:
                break
        total += f
    return total


def support_box(spec: ProductMeasureSpec) -> Box:
    """Per-coordinate [min support, max support] of the prefix measures."""
    return tuple((m.min_support, m.max_support) for m in spec.prefix)


def box_measure(spec: ProductMeasureSpec, box: Box) -> Fraction:
    """Measure of the box cylinder {y : y(n) in [lo_n, hi_n] for n < len(box)}."""
    if not spec.resolvable_to(len(box)):
        raise UnsupportedDepthError(
            f"box depth {len(box)} exceeds prefix depth {spec.depth} "
            "and the spec declares no tail policy"
        )
    f = Fraction(1)
    for n, (lo, hi) in enumerate(box):
        f *= spec.coordinate(n).interval_mass(lo, hi)
        if f == 0:
            break
    return f


def box_intersection_measure(
    spec: ProductMeasureSpec, cyl: CylinderSet, box: Box
) -> Fraction:
    """Exact measure of cyl intersected with the box cylinder over `box`.

    Works without materializing the intersection: each cylinder [s] meets
    the box in the set that pins the first |s| coordinates to s (when those
    lie inside the box) and ranges over the box intervals on the remaining
    coordinates, so its measure factors per coordinate.  The box must be at
    least as deep as the cylinder set.
    """
    if cyl.depth > len(box):
        raise ValueError(
            f"cylinder depth {cyl.depth} exceeds box depth {len(box)}"
        )
    if not spec.resolvable_to(len(box)):
        raise UnsupportedDepthError(
            f"box depth {len(box)} exceeds prefix depth {spec.depth} "
            "and the spec declares no tail policy"
        )
    coords = [spec.coordinate(n) for n in range(len(box))]
    tail_factor = Fraction(1)
    for n in range(cyl.depth, len(box)):
        lo, hi = box[n]
        tail_factor *= coords[n].interval_mass(lo, hi)
    total = Fraction(0)
    for s in cyl.prefixes:
        f = tail_factor
        for n, v in enumerate(s):
            lo, hi = box[n]
            f *= coords[n].mass(v) if lo <= v <= hi else Fraction(0)
            if f == 0:
                break
        total += f
    return total


def lattice_points(box: Box) -> Iterator[tuple[int, ...]]:
    """All integer tuples inside the box, in lexicographic order."""
    ranges = [range(lo, hi + 1) for lo, hi in box]
    return _iter_product(*ranges)
