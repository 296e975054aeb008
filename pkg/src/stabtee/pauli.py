"""Translation-invariant Pauli operators as symplectic polynomial vectors.

A Pauli operator on a 2D lattice of q-qudit sites, up to phase, is encoded
as a vector of 2q Laurent polynomials over GF(p): components [0, q) hold the
X exponents per qudit and components [q, 2q) the Z exponents.  A monomial
x^n y^m in component i places that exponent on qudit i of site (n, m).

The symplectic pairing of two such vectors is the constant coefficient of
``pairing_poly``, which itself packages the pairings of one operator with
every translate of the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence

from .laurent import LaurentPoly, Window

if TYPE_CHECKING:  # pragma: no cover
    from .lattice import Geometry

__all__ = [
    "GeometryError",
    "PauliVector",
    "SyndromeVector",
    "pairing_poly",
    "sympl_pair",
    "syndrome",
    "compose",
    "instantiate",
    "instantiate_bits",
    "finite_sympl",
]


class GeometryError(ValueError):
    """Operator support does not fit the target geometry."""


def _union_box(boxes: Sequence[Optional[tuple[int, int, int, int]]]):
    live = [b for b in boxes if b is not None]
    if not live:
        return None
    return (
        min(b[0] for b in live),
        max(b[1] for b in live),
        min(b[2] for b in live),
        max(b[3] for b in live),
    )


@dataclass(frozen=True)
class PauliVector:
    """A Pauli operator (mod phase) as 2q Laurent polynomial components."""

    p: int
    q: int
    comps: tuple[LaurentPoly, ...]

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError("need at least one qudit per site")
        if len(self.comps) != 2 * self.q:
            raise ValueError(f"expected {2 * self.q} components, got {len(self.comps)}")
        for c in self.comps:
            if c.p != self.p:
                raise ValueError("component modulus differs from vector modulus")

    @classmethod
    def zero(cls, p: int, q: int) -> "PauliVector":
        return cls(p=p, q=q, comps=tuple(LaurentPoly.zero(p) for _ in range(2 * q)))

    @classmethod
    def from_comps(cls, p: int, q: int, comps: Sequence[LaurentPoly]) -> "PauliVector":
        return cls(p=p, q=q, comps=tuple(comps))

    def x_part(self, i: int) -> LaurentPoly:
        return self.comps[i]

    def z_part(self, i: int) -> LaurentPoly:
        return self.comps[self.q + i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __add__(self, other: "PauliVector") -> "PauliVector":
        self._check(other)
        return PauliVector(self.p, self.q, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "PauliVector") -> "PauliVector":
        self._check(other)
        return PauliVector(self.p, self.q, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "PauliVector":
        return self.scale(self.p - 1)

    def scale(self, c: int) -> "PauliVector":
        return PauliVector(self.p, self.q, tuple(comp.scale(c) for comp in self.comps))

    def mul_poly(self, f: LaurentPoly) -> "PauliVector":
        """Module action of a Laurent polynomial (formal sum of translates)."""
        return PauliVector(self.p, self.q, tuple(f * comp for comp in self.comps))

    def translate(self, xshift: int, yshift: int) -> "PauliVector":
        return PauliVector(self.p, self.q, tuple(c.shift(xshift, yshift) for c in self.comps))

    def antipode(self) -> "PauliVector":
        return PauliVector(self.p, self.q, tuple(c.antipode() for c in self.comps))

    def reflect_y(self) -> "PauliVector":
        return PauliVector(self.p, self.q, tuple(c.reflect_y() for c in self.comps))

    def project(self, window: Window) -> "PauliVector":
        return PauliVector(self.p, self.q, tuple(c.project(window) for c in self.comps))

    def support_box(self) -> Optional[tuple[int, int, int, int]]:
        """Tight (xmin, xmax, ymin, ymax) over all components, or None."""
        return _union_box([c.support_box() for c in self.comps])

    def _check(self, other: "PauliVector") -> None:
        if (self.p, self.q) != (other.p, other.q):
            raise ValueError("incompatible Pauli vectors")

    def __str__(self) -> str:
        xs = "; ".join(str(c) for c in self.comps[: self.q])
        zs = "; ".join(str(c) for c in self.comps[self.q :])
        return f"({xs} | {zs})"


@dataclass(frozen=True)
class SyndromeVector:
    """Commutation phases of one operator against all generator translates."""

    p: int
    comps: tuple[LaurentPoly, ...]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __str__(self) -> str:
        return "(" + "; ".join(str(c) for c in self.comps) + ")"


def pairing_poly(u: PauliVector, v: PauliVector) -> LaurentPoly:
    """Generating function of symplectic pairings of v with translates of u.

    The coefficient of x^n y^m is the pairing of v with u translated by
    (n, m).  Two translation-invariant operator families commute in full iff
    this polynomial vanishes identically.
    """
    u._check(v)
    q = u.q
    acc = LaurentPoly.zero(u.p)
    for i in range(q):
        acc = acc + u.comps[i].antipode() * v.comps[q + i]
        acc = acc - u.comps[q + i].antipode() * v.comps[i]
    return acc


def sympl_pair(u: PauliVector, v: PauliVector) -> int:
    """Symplectic pairing of the two operators themselves (no translates)."""
    return pairing_poly(u, v).const()


def syndrome(generators: Sequence[PauliVector], v: PauliVector) -> SyndromeVector:
    """Pairing polynomials of v against each generator family."""
    if not generators:
        raise ValueError("no generators")
    return SyndromeVector(p=v.p, comps=tuple(pairing_poly(g, v) for g in generators))


def compose(coeffs: Sequence[LaurentPoly], generators: Sequence[PauliVector]) -> PauliVector:
    """Combine generator translates: sum over mu of coeffs[mu] . g[mu]."""
    if len(coeffs) != len(generators):
        raise ValueError("coefficient count does not match generator count")
    if not generators:
        raise ValueError("no generators")
    acc = PauliVector.zero(generators[0].p, generators[0].q)
    for f, g in zip(coeffs, generators):
        acc = acc + g.mul_poly(f)
    return acc


def _site_index(geom: "Geometry", n: int, m: int) -> int:
    if geom.periodic_x:
        n %= geom.ex
    elif not (0 <= n < geom.ex):
        raise GeometryError(f"x coordinate {n} outside open axis [0, {geom.ex})")
    if geom.periodic_y:
        m %= geom.ey
    elif not (0 <= m < geom.ey):
        raise GeometryError(f"y coordinate {m} outside open axis [0, {geom.ey})")
    return m * geom.ex + n


def instantiate(v: PauliVector, geom: "Geometry") -> tuple[int, ...]:
    """Expand a polynomial vector to a concrete GF(p) vector on a finite patch.

    Layout: index = block * N + site with N = ex * ey sites, site = y * ex + x,
    and 2q blocks ordered as in the polynomial vector.  Exponents wrap on
    periodic axes and must already lie in range on open axes.
    """
    n_sites = geom.ex * geom.ey
    out = [0] * (2 * v.q * n_sites)
    for block, comp in enumerate(v.comps):
        base = block * n_sites
        for mono, c in comp.terms:
            idx = base + _site_index(geom, mono.xexp, mono.yexp)
            out[idx] = (out[idx] + c) % v.p
    return tuple(out)


def instantiate_bits(v: PauliVector, geom: "Geometry") -> int:
    """GF(2) fast path: the instantiated vector packed as a single bit row."""
    if v.p != 2:
        raise ValueError("bit packing requires p = 2")
    n_sites = geom.ex * geom.ey
    out = 0
    for block, comp in enumerate(v.comps):
        base = block * n_sites
        for mono, _ in comp.terms:
            out ^= 1 << (base + _site_index(geom, mono.xexp, mono.yexp))
    return out


def finite_sympl(p: int, q: int, n_sites: int, u: Sequence[int], v: Sequence[int]) -> int:
    """Symplectic product of two instantiated vectors in the block layout."""
    if len(u) != 2 * q * n_sites or len(v) != len(u):
        raise ValueError("vector length does not match layout")
    total = 0
    for i in range(q):
        xs = i * n_sites
        zs = (q + i) * n_sites
        for s in range(n_sites):
            total += u[xs + s] * v[zs + s] - u[zs + s] * v[xs + s]
    return total % p
