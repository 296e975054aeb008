"""Finite lattice geometries, site regions, and the two entropy partitions.

Sites are integer pairs (x, y).  A Geometry is a finite patch with an
independent periodicity flag per axis: plane patch (both open), cylinder
(periodic in y, the circumference direction), torus (both periodic).

Partitions come in two styles.  The rectangular style is a square annulus
A|B|C around a hole D inside the frame [0,3L)^2.  The concave style bends
region D through the annulus inside the frame [0,3L) x [0,5L), making the
A/C interface concave.  Coordinates are half-open boxes in units of L.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .codes import CodeSpec
from .pauli import GeometryError

__all__ = [
    "Geometry",
    "Region",
    "Partition",
    "rectangular_partition",
    "concave_partition",
    "enumerate_generators",
]


@dataclass(frozen=True)
class Geometry:
    """A finite site patch, optionally wrapped along each axis."""

    ex: int
    ey: int
    periodic_x: bool
    periodic_y: bool

    def __post_init__(self) -> None:
        if self.ex < 1 or self.ey < 1:
            raise GeometryError("extents must be positive")

    @classmethod
    def plane(cls, ex: int, ey: int) -> "Geometry":
        return cls(ex=ex, ey=ey, periodic_x=False, periodic_y=False)

    @classmethod
    def cylinder(cls, length_x: int, circumference: int) -> "Geometry":
        return cls(ex=length_x, ey=circumference, periodic_x=False, periodic_y=True)

    @classmethod
    def torus(cls, lx: int, ly: int) -> "Geometry":
        return cls(ex=lx, ey=ly, periodic_x=True, periodic_y=True)

    @property
    def kind(self) -> str:
        if self.periodic_x and self.periodic_y:
            return "torus"
        if self.periodic_x or self.periodic_y:
            return "cylinder"
        return "plane"

    @property
    def n_sites(self) -> int:
        return self.ex * self.ey

    def sites(self) -> Iterator[tuple[int, int]]:
        for m in range(self.ey):
            for n in range(self.ex):
                yield (n, m)

    def site_index(self, n: int, m: int) -> int:
        if self.periodic_x:
            n %= self.ex
        elif not (0 <= n < self.ex):
            raise GeometryError(f"x coordinate {n} outside open axis [0, {self.ex})")
        if self.periodic_y:
            m %= self.ey
        elif not (0 <= m < self.ey):
            raise GeometryError(f"y coordinate {m} outside open axis [0, {self.ey})")
        return m * self.ex + n


@dataclass(frozen=True)
class Region:
    """An explicit finite set of sites."""

    sites: frozenset[tuple[int, int]]

    @classmethod
    def from_box(cls, x_lo: int, x_hi: int, y_lo: int, y_hi: int) -> "Region":
        """Half-open box [x_lo, x_hi) x [y_lo, y_hi)."""
        return cls(frozenset((n, m) for n in range(x_lo, x_hi) for m in range(y_lo, y_hi)))

    @classmethod
    def empty(cls) -> "Region":
        return cls(frozenset())

    @classmethod
    def union_of(cls, regions: Iterable["Region"]) -> "Region":
        acc: frozenset = frozenset()
        for r in regions:
            acc |= r.sites
        return cls(acc)

    def __or__(self, other: "Region") -> "Region":
        return Region(self.sites | other.sites)

    def __and__(self, other: "Region") -> "Region":
        return Region(self.sites & other.sites)

    def __sub__(self, other: "Region") -> "Region":
        return Region(self.sites - other.sites)

    def __contains__(self, site: tuple[int, int]) -> bool:
        return site in self.sites

    def __len__(self) -> int:
        return len(self.sites)

    def is_empty(self) -> bool:
        return not self.sites

    def isdisjoint(self, other: "Region") -> bool:
        return self.sites.isdisjoint(other.sites)

    def issubset(self, other: "Region") -> bool:
        return self.sites <= other.sites

    def translate(self, dx: int, dy: int) -> "Region":
        return Region(frozenset((n + dx, m + dy) for n, m in self.sites))

    def dilate(self, radius: int, geom: Optional[Geometry] = None) -> "Region":
        """All sites within Chebyshev distance `radius` of the region.

        With a geometry, periodic axes wrap and open axes clip to the patch.
        """
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        out = set()
        for n, m in self.sites:
            for dx in range(-radius, radius + 1):
                for dy in range(-radius, radius + 1):
                    x, y = n + dx, m + dy
                    if geom is not None:
                        if geom.periodic_x:
                            x %= geom.ex
                        elif not (0 <= x < geom.ex):
                            continue
                        if geom.periodic_y:
                            y %= geom.ey
                        elif not (0 <= y < geom.ey):
                            continue
                    out.add((x, y))
        return Region(frozenset(out))

    def bounding_box(self) -> Optional[tuple[int, int, int, int]]:
        if not self.sites:
            return None
        xs = [n for n, _ in self.sites]
        ys = [m for _, m in self.sites]
        return (min(xs), max(xs), min(ys), max(ys))

    def site_indices(self, geom: Geometry) -> frozenset[int]:
        return frozenset(geom.site_index(n, m) for n, m in self.sites)


@dataclass(frozen=True)
class Partition:
    """Named regions of an annulus-style entropy partition."""

    L: int
    style: str
    a: Region
    b: Region
    c: Region
    d: Region

    @property
    def abc(self) -> Region:
        return self.a | self.b | self.c

    @property
    def ab(self) -> Region:
        return self.a | self.b

    @property
    def bc(self) -> Region:
        return self.b | self.c

    def frame_box(self) -> tuple[int, int, int, int]:
        """(x_lo, x_hi, y_lo, y_hi) of the full frame A|B|C|D tiles."""
        if self.style == "rectangular":
            return (0, 3 * self.L, 0, 3 * self.L)
        return (0, 3 * self.L, 0, 5 * self.L)

    def frame(self) -> Region:
        return Region.from_box(*self.frame_box())

    def e_within(self, box: tuple[int, int, int, int]) -> Region:
        """The exterior region, materialized inside the given box."""
        return Region.from_box(*box) - self.abc - self.d

    def d_in(self, margin: int) -> Region:
        """The core of D left after shrinking it by `margin` on every side."""
        L = self.L
        if self.style == "rectangular":
            return Region.from_box(L + margin, 2 * L - margin, L + margin, 2 * L - margin)
        return Region.from_box(L + margin, 2 * L - margin, L + margin, 4 * L - margin)

    def classify(self, site: tuple[int, int]) -> str:
        if site in self.a:
            return "A"
        if site in self.b:
            return "B"
        if site in self.c:
            return "C"
        if site in self.d:
            return "D"
        return "E"

    def render_text(self, pad: int = 1) -> str:
        """Character grid of the partition, top row = largest y."""
        x_lo, x_hi, y_lo, y_hi = self.frame_box()
        lines = []
        for m in range(y_hi - 1 + pad, y_lo - 1 - pad, -1):
            row = [self.classify((n, m)) for n in range(x_lo - pad, x_hi + pad)]
            lines.append("".join(ch if ch != "E" else "." for ch in row))
        return "\n".join(lines)

    def to_csv_rows(self, pad: int = 0) -> list[tuple[int, int, str]]:
        x_lo, x_hi, y_lo, y_hi = self.frame_box()
        rows = []
        for m in range(y_lo - pad, y_hi + pad):
            for n in range(x_lo - pad, x_hi + pad):
                rows.append((n, m, self.classify((n, m))))
        return rows


def rectangular_partition(L: int) -> Partition:
    """Square annulus of arm width L around the hole D = [L,2L)^2."""
    if L < 1:
        raise ValueError("L must be at least 1")
    a = Region.from_box(0, L, L, 2 * L)
    c = Region.from_box(2 * L, 3 * L, L, 2 * L)
    b = Region.from_box(0, 3 * L, 0, L) | Region.from_box(0, 3 * L, 2 * L, 3 * L)
    d = Region.from_box(L, 2 * L, L, 2 * L)
    return Partition(L=L, style="rectangular", a=a, b=b, c=c, d=d)


def concave_partition(L: int) -> Partition:
    """Annulus variant whose hole D runs vertically through the frame.

    A and C sit at mid height on either side of D, so the boundary of
    A relative to its complement turns a concave corner around D.
    """
    if L < 1:
        raise ValueError("L must be at least 1")
    a = Region.from_box(0, L, 2 * L, 3 * L)
    c = Region.from_box(2 * L, 3 * L, 2 * L, 3 * L)
    d = Region.from_box(L, 2 * L, L, 4 * L)
    b = Region.union_of(
        [
            Region.from_box(0, 3 * L, 0, L),
            Region.from_box(0, 3 * L, 4 * L, 5 * L),
            Region.from_box(0, L, L, 2 * L),
            Region.from_box(0, L, 3 * L, 4 * L),
            Region.from_box(2 * L, 3 * L, L, 2 * L),
            Region.from_box(2 * L, 3 * L, 3 * L, 4 * L),
        ]
    )
    return Partition(L=L, style="concave", a=a, b=b, c=c, d=d)


def _support_offsets(code: CodeSpec, mu: int) -> list[tuple[int, int]]:
    seen = set()
    for comp in code.generators[mu].comps:
        for mono, _ in comp.terms:
            seen.add((mono.xexp, mono.yexp))
    return sorted(seen)


def _axis_translation_range(
    lo: int, hi: int, extent: int, periodic: bool
) -> range:
    # lo/hi: min/max support coordinate of the generator on this axis
    if periodic:
        return range(extent)
    start = -lo
    stop = extent - hi
    return range(start, max(start, stop))


def enumerate_generators(
    code: CodeSpec, geom: Geometry, window: Region
) -> list[tuple[tuple[int, int], int]]:
    """All generator translates that fit in the geometry and touch the window.

    Returns ((n, m), mu) pairs: generator mu translated by (n, m).  On open
    axes only translates whose full support fits the patch are considered.
    """
    out: list[tuple[tuple[int, int], int]] = []
    win = window.sites
    for mu in range(code.num_generators):
        offsets = _support_offsets(code, mu)
        xs = [dx for dx, _ in offsets]
        ys = [dy for _, dy in offsets]
        for n in _axis_translation_range(min(xs), max(xs), geom.ex, geom.periodic_x):
            for m in _axis_translation_range(min(ys), max(ys), geom.ey, geom.periodic_y):
                hit = False
                for dx, dy in offsets:
                    sx = (n + dx) % geom.ex if geom.periodic_x else n + dx
                    sy = (m + dy) % geom.ey if geom.periodic_y else m + dy
                    if (sx, sy) in win:
                        hit = True
                        break
                if hit:
                    out.append(((n, m), mu))
    return out
