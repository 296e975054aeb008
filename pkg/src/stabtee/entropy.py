"""Entanglement entropy and topological entanglement entropy computations.

All quantities are exact.  Entropies are reported in dits, i.e. multiples
of log(base) where base is the qudit dimension, as rational numbers.

The central primitive is ``log_group_size``: the log-cardinality m_R of the
subgroup of stabilizers supported inside a region R, computed from ranks of
instantiated generator matrices.  Entropies of maximally mixed stabilizer
states, conditional mutual informations, and the Levin-Wen combination are
all differences of m_R values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from . import fp_linalg
from .codes import CodeSpec
from .fp_linalg import FpMatrix, IntMatrix, smith_normal_form
from .laurent import LaurentPoly
from .lattice import Geometry, Partition, Region, enumerate_generators
from .pauli import (
    GeometryError,
    compose,
    finite_sympl,
    instantiate,
    instantiate_bits,
)

__all__ = [
    "EntropyValue",
    "BufferPolicy",
    "ConvergenceError",
    "log_group_size",
    "stabilizer_basis_in_region",
    "entropy_region",
    "entropy_pure",
    "levin_wen_gamma",
    "is_divisible",
    "stee",
    "cylinder_entropy",
    "torus_logical_dimension",
    "scan_cylinder",
]


class ConvergenceError(RuntimeError):
    """A size-doubling computation failed to stabilize within its cap."""


@dataclass(frozen=True)
class EntropyValue:
    """An exact entropy in dits (multiples of log base)."""

    value: Fraction
    base: int

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if self.value.denominator not in (1, 2):
            raise ValueError(f"entropy {self.value} is not a half-integer")

    def _check(self, other: "EntropyValue") -> None:
        if self.base != other.base:
            raise ValueError("mixed entropy bases")

    def __add__(self, other: "EntropyValue") -> "EntropyValue":
        self._check(other)
        return EntropyValue(self.value + other.value, self.base)

    def __sub__(self, other: "EntropyValue") -> "EntropyValue":
        self._check(other)
        return EntropyValue(self.value - other.value, self.base)

    def scale(self, k: Union[int, Fraction]) -> "EntropyValue":
        return EntropyValue(self.value * k, self.base)

    def __lt__(self, other: "EntropyValue") -> bool:
        self._check(other)
        return self.value < other.value

    def __le__(self, other: "EntropyValue") -> bool:
        self._check(other)
        return self.value <= other.value

    def __str__(self) -> str:
        return f"{self.value} dits (base {self.base})"


@dataclass(frozen=True)
class BufferPolicy:
    """How the finite truncation of the infinite plane is chosen.

    auto: start at `beta` (default twice the code footprint) and double the
    buffer until the computed group sizes agree at consecutive sizes.
    fixed: use `beta` as given, no stabilization check.
    strict: use the analytic locality bound for the buffer (can be huge).
    """

    mode: str = "auto"
    beta: Optional[int] = None
    max_doublings: int = 5

    def __post_init__(self) -> None:
        if self.mode not in ("auto", "fixed", "strict"):
            raise ValueError(f"unknown buffer mode {self.mode!r}")
        if self.mode == "fixed" and self.beta is None:
            raise ValueError("fixed buffer policy needs beta")

    def start(self, code: CodeSpec) -> int:
        if self.mode == "strict":
            return strict_buffer(code)
        if self.beta is not None:
            return self.beta
        return max(2, 2 * code.footprint())


def strict_buffer(code: CodeSpec) -> int:
    """Analytic separation length sufficient for locality of trivial anyons."""
    r = code.reach()
    return 8 * r**3 * code.q**4 + 6 * r


def strict_partition_size(code: CodeSpec) -> int:
    """Analytic partition scale at which the concave result is guaranteed."""
    r = code.reach()
    q = code.q
    return 32 * r**3 * q**4 + 2 * r**4 + 27 * r + 1


# ---------------------------------------------------------------------------
# group-size counting


def _block_mask_bits(geom: Geometry, q: int, site_idx: frozenset[int]) -> int:
    mask = 0
    n_sites = geom.n_sites
    for b in range(2 * q):
        base = b * n_sites
        for s in site_idx:
            mask |= 1 << (base + s)
    return mask


def _region_cols(geom: Geometry, q: int, site_idx: frozenset[int]) -> list[int]:
    n_sites = geom.n_sites
    return [b * n_sites + s for b in range(2 * q) for s in sorted(site_idx)]


def _gather_rows(code: CodeSpec, geom: Geometry, window: Region):
    """Instantiate every generator translate that fits geom and meets window."""
    placements = enumerate_generators(code, geom, window)
    if code.p == 2:
        rows = [
            instantiate_bits(code.generators[mu].translate(n, m), geom)
            for (n, m), mu in placements
        ]
    else:
        rows = [
            instantiate(code.generators[mu].translate(n, m), geom)
            for (n, m), mu in placements
        ]
    return rows


def _rank_rows(p: int, rows) -> int:
    if not rows:
        return 0
    if p == 2:
        return fp_linalg.gf2_rank(list(rows))
    return fp_linalg.rank(FpMatrix.from_rows(p, [list(r) for r in rows]))


def _check_region_fits(geom: Geometry, region: Region) -> None:
    for n, m in region.sites:
        geom.site_index(n, m)


def log_group_size(code: CodeSpec, geom: Geometry, region: Region, beta: int) -> int:
    """log_base of the number of stabilizers supported inside the region.

    Considers every generator translate that fits the geometry and meets the
    region fattened by beta; counts independent products that vanish outside
    the region.  Deterministic for fixed arguments.
    """
    if region.is_empty():
        return 0
    _check_region_fits(geom, region)
    window = region.dilate(beta, geom)
    rows = _gather_rows(code, geom, window)
    if not rows:
        return 0
    inside = region.site_indices(geom)
    n_sites = geom.n_sites
    ncols = 2 * code.q * n_sites
    if code.p == 2:
        outside_mask = _block_mask_bits(geom, code.q, inside) ^ ((1 << ncols) - 1)
        full = fp_linalg.gf2_rank(rows)
        out = fp_linalg.gf2_rank([r & outside_mask for r in rows])
        return full - out
    inside_cols = set(_region_cols(geom, code.q, inside))
    outside_cols = [c for c in range(ncols) if c not in inside_cols]
    mat = FpMatrix.from_rows(code.p, [list(r) for r in rows])
    full = fp_linalg.rank(mat)
    out = fp_linalg.rank(mat.select_columns(outside_cols))
    return full - out


def stabilizer_basis_in_region(
    code: CodeSpec, geom: Geometry, region: Region, beta: int
):
    """Instantiated spanning set of the stabilizers supported in the region.

    Returns bit rows for base 2, coefficient tuples otherwise.  The span has
    dimension log_group_size(...); the rows themselves need not be
    independent.
    """
    if region.is_empty():
        return []
    _check_region_fits(geom, region)
    window = region.dilate(beta, geom)
    rows = _gather_rows(code, geom, window)
    if not rows:
        return []
    inside = region.site_indices(geom)
    n_sites = geom.n_sites
    ncols = 2 * code.q * n_sites
    if code.p == 2:
        outside_mask = _block_mask_bits(geom, code.q, inside) ^ ((1 << ncols) - 1)
        kernel = fp_linalg.gf2_left_kernel([r & outside_mask for r in rows])
        out = []
        for combo in kernel:
            v = 0
            k = combo
            while k:
                i = (k & -k).bit_length() - 1
                v ^= rows[i]
                k &= k - 1
            if v:
                out.append(v)
        return out
    inside_cols = set(_region_cols(geom, code.q, inside))
    outside_cols = [c for c in range(ncols) if c not in inside_cols]
    mat = FpMatrix.from_rows(code.p, [list(r) for r in rows])
    kernel = fp_linalg.kernel_basis(mat.select_columns(outside_cols)).rows
    p = code.p
    out = []
    for combo in kernel:
        v = [0] * ncols
        for i, coeff in enumerate(combo):
            if coeff:
                row = rows[i]
                for j in range(ncols):
                    v[j] = (v[j] + coeff * row[j]) % p
        if any(v):
            out.append(tuple(v))
    return out


def entropy_region(
    code: CodeSpec, geom: Geometry, region: Region, beta: int
) -> EntropyValue:
    """Entropy of a region in the maximally mixed stabilizer state, in dits."""
    m_r = log_group_size(code, geom, region, beta)
    return EntropyValue(Fraction(code.q * len(region) - m_r), code.p)


# ---------------------------------------------------------------------------
# pure-state bipartition entropy (the only place composite base is allowed)


def _log_base_exact(n: int, base: int) -> Fraction:
    """log_base(n) as an exact rational; raises if it is irrational."""
    if n < 1 or base < 2:
        raise ValueError("need n >= 1 and base >= 2")
    if n == 1:
        return Fraction(0)

    def factor(k: int) -> dict[int, int]:
        out: dict[int, int] = {}
        d = 2
        while d * d <= k:
            while k % d == 0:
                out[d] = out.get(d, 0) + 1
                k //= d
            d += 1
        if k > 1:
            out[k] = out.get(k, 0) + 1
        return out

    fn = factor(n)
    fb = factor(base)
    if set(fn) - set(fb):
        raise ValueError(f"log_{base}({n}) is irrational")
    ratios = {Fraction(fn[prime], fb[prime]) for prime in fn}
    missing = set(fb) - set(fn)
    if len(ratios) > 1 or (missing and ratios and ratios != {Fraction(0)}):
        raise ValueError(f"log_{base}({n}) is irrational")
    return ratios.pop()


def entropy_pure(
    d: int,
    q: int,
    n_sites: int,
    gens: Sequence[Sequence[int]],
    region_site_indices: frozenset[int],
) -> EntropyValue:
    """Bipartition entropy of the pure state fixed by a full generator set.

    Generators are concrete vectors in the `instantiate` layout over Z_d
    (d may be composite here).  The count must equal the qudit count q * N
    so the stabilized state is pure.  The entropy is half the log-size of
    the commutant defect of the region-truncated generators: for prime d
    half the GF(d) rank of the truncated pairing matrix, in general half of
    log_d of the product of d / gcd(d, lambda) over its elementary divisors.
    """
    n_qudits = q * n_sites
    if len(gens) != n_qudits:
        raise ValueError(
            f"pure state needs exactly {n_qudits} generators, got {len(gens)}"
        )
    for g in gens:
        if len(g) != 2 * n_qudits:
            raise ValueError("generator vector has wrong length")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if finite_sympl(d, q, n_sites, gens[i], gens[j]) != 0:
                raise ValueError(f"generators {i} and {j} do not commute")

    cols = sorted(region_site_indices)
    for s in cols:
        if not (0 <= s < n_sites):
            raise ValueError(f"site index {s} out of range")

    def truncated(g: Sequence[int]) -> list[int]:
        out = [0] * (2 * n_qudits)
        for b in range(2 * q):
            base = b * n_sites
            for s in cols:
                out[base + s] = g[base + s]
        return out

    trunc = [truncated(g) for g in gens]
    n = len(gens)
    pairing = [
        [finite_sympl(d, q, n_sites, trunc[j], trunc[k]) for k in range(n)]
        for j in range(n)
    ]
    if fp_linalg.is_prime(d):
        r = fp_linalg.rank(FpMatrix.from_rows(d, pairing))
        # independence of the full generator set, prime case only
        full = FpMatrix.from_rows(d, [list(g) for g in gens])
        if fp_linalg.rank(full) != n:
            raise ValueError("generator set is dependent; state not pure")
        return EntropyValue(Fraction(r, 2), d)
    diag, _, _ = smith_normal_form(IntMatrix.from_rows(pairing))
    total = 1
    for lam in diag.diagonal():
        total *= d // gcd(d, lam % d if lam % d else d)
    return EntropyValue(_log_base_exact(total, d) / 2, d)


# ---------------------------------------------------------------------------
# Levin-Wen combination on a partition


def _partition_geometry(part: Partition, beta: int) -> tuple[Geometry, int, int]:
    x_lo, x_hi, y_lo, y_hi = part.frame_box()
    dx = beta - x_lo
    dy = beta - y_lo
    geom = Geometry.plane(x_hi - x_lo + 2 * beta, y_hi - y_lo + 2 * beta)
    return geom, dx, dy


def _gamma_at(code: CodeSpec, part: Partition, beta: int) -> tuple[Fraction, tuple]:
    geom, dx, dy = _partition_geometry(part, beta)
    regions = {
        "abc": part.abc.translate(dx, dy),
        "ab": part.ab.translate(dx, dy),
        "bc": part.bc.translate(dx, dy),
        "b": part.b.translate(dx, dy),
    }
    ms = {k: log_group_size(code, geom, r, beta) for k, r in regions.items()}
    gamma = Fraction(ms["abc"] + ms["b"] - ms["ab"] - ms["bc"], 2)
    return gamma, (ms["abc"], ms["ab"], ms["bc"], ms["b"])


def levin_wen_gamma(
    code: CodeSpec, part: Partition, policy: BufferPolicy = BufferPolicy()
) -> EntropyValue:
    """Topological entanglement entropy combination on an annulus partition.

    gamma = (m_ABC + m_B - m_AB - m_BC) / 2 in dits.
    """
    beta = policy.start(code)
    gamma, ms = _gamma_at(code, part, beta)
    if policy.mode in ("fixed", "strict"):
        return EntropyValue(gamma, code.p)
    for _ in range(policy.max_doublings):
        beta *= 2
        gamma2, ms2 = _gamma_at(code, part, beta)
        if ms2 == ms:
            return EntropyValue(gamma2, code.p)
        gamma, ms = gamma2, ms2
    raise ConvergenceError(
        f"group sizes did not stabilize up to buffer {beta} for {code.name}"
    )


def stee(
    code: CodeSpec,
    L: Optional[int] = None,
    policy: BufferPolicy = BufferPolicy(),
    max_growth: int = 4,
) -> tuple[EntropyValue, EntropyValue, EntropyValue, int]:
    """Spurious TEE: gamma on the rectangular minus gamma on the concave cut.

    With L unset, grows L from the code footprint until both gammas agree at
    consecutive sizes.  Returns (delta, gamma_rect, gamma_concave, L_used).
    """
    from .lattice import concave_partition, rectangular_partition

    def both(L: int) -> tuple[EntropyValue, EntropyValue]:
        return (
            levin_wen_gamma(code, rectangular_partition(L), policy),
            levin_wen_gamma(code, concave_partition(L), policy),
        )

    if L is not None:
        gr, gc = both(L)
        return (gr - gc, gr, gc, L)
    L = max(2, code.footprint())
    prev = both(L)
    for _ in range(max_growth):
        cur = both(L + 1)
        if cur == prev:
            gr, gc = cur
            return (gr - gc, gr, gc, L + 1)
        prev = cur
        L += 1
    raise ConvergenceError(f"gamma did not stabilize in L for {code.name}")


# ---------------------------------------------------------------------------
# divisibility of a stabilizer across the partition


def is_divisible(
    code: CodeSpec,
    coeffs: Sequence[LaurentPoly],
    part: Partition,
    beta: Optional[int] = None,
) -> bool:
    """Whether the composed stabilizer splits into AB-supported times
    BC-supported stabilizers.

    The composed operator must be supported inside A|B|C.
    """
    w = compose(coeffs, code.generators)
    abc = part.abc
    for comp in w.comps:
        for mono, _ in comp.terms:
            if (mono.xexp, mono.yexp) not in abc:
                raise ValueError(
                    f"composed operator touches ({mono.xexp}, {mono.yexp}) outside A|B|C"
                )
    if beta is None:
        beta = max(2, 2 * code.footprint())
    geom, dx, dy = _partition_geometry(part, beta)
    ab = part.ab.translate(dx, dy)
    bc = part.bc.translate(dx, dy)
    rows = list(stabilizer_basis_in_region(code, geom, ab, beta))
    rows += list(stabilizer_basis_in_region(code, geom, bc, beta))
    target_vec = w.translate(dx, dy)
    if code.p == 2:
        target = instantiate_bits(target_vec, geom)
        return fp_linalg.gf2_solve(rows, target) is not None
    target = list(instantiate(target_vec, geom))
    if not rows:
        return not any(target)
    mat = FpMatrix.from_rows(code.p, [list(r) for r in rows])
    return fp_linalg.solve(mat, target) is not None


# ---------------------------------------------------------------------------
# cylinder and torus


def _cylinder_value(code: CodeSpec, circumference: int, half_len: int) -> Fraction:
    # Wrap a 2*half_len-by-circumference torus and take the half strip A.
    # The reduced state on A of the maximally mixed code state has entropy
    # q|A| - dim(commutant restricted to A) / ... collapsed to the closed
    # form (rank(T|_A) - q|A|) / 2 where T carries the Z block negated into
    # the X slot, so T v = symplectic pairing with v.  String operators
    # winding the circumference sit in the commutant and are counted with
    # no explicit construction.
    geom = Geometry.torus(2 * half_len, circumference)
    full = Region.from_box(0, 2 * half_len, 0, circumference)
    a_region = Region.from_box(0, half_len, 0, circumference)
    rows = _gather_rows(code, geom, full)
    q, n_sites = code.q, geom.n_sites
    half = q * n_sites
    n_a = len(a_region)
    if code.p == 2:
        low = (1 << half) - 1
        twisted = [((r & low) << half) | (r >> half) for r in rows]
        amask = _block_mask_bits(geom, q, a_region.site_indices(geom))
        rank = fp_linalg.gf2_rank([t & amask for t in twisted])
    else:
        p = code.p
        twisted_rows = [
            [(p - 1) * r[half + i] % p for i in range(half)] + list(r[:half])
            for r in rows
        ]
        cols = _region_cols(geom, q, a_region.site_indices(geom))
        mat = FpMatrix.from_rows(p, twisted_rows).select_columns(cols)
        rank = fp_linalg.rank(mat)
    return Fraction(rank - q * n_a, 2)


def cylinder_entropy(
    code: CodeSpec,
    circumference: int,
    start_half_len: Optional[int] = None,
    max_doublings: int = 6,
) -> EntropyValue:
    """Entanglement entropy across one circular cut of an infinite cylinder.

    Evaluated on finite torus windows of half-length T and T+1; the window
    doubles until both agree, which guards against values that drift with
    T mod circumference.
    """
    if circumference < 1:
        raise ValueError("circumference must be positive")
    half = start_half_len or max(2, 2 * code.footprint())
    for _ in range(max_doublings + 1):
        val = _cylinder_value(code, circumference, half)
        if val == _cylinder_value(code, circumference, half + 1):
            return EntropyValue(val, code.p)
        half *= 2
    raise ConvergenceError(
        f"cylinder entropy did not stabilize by half-length {half} for {code.name}"
    )


def torus_logical_dimension(code: CodeSpec, lx: int, ly: int) -> int:
    """Number of logical qudits of the code wrapped on an lx-by-ly torus."""
    geom = Geometry.torus(lx, ly)
    full = Region.from_box(0, lx, 0, ly)
    rows = _gather_rows(code, geom, full)
    return code.q * lx * ly - _rank_rows(code.p, rows)


def scan_cylinder(
    code: CodeSpec,
    l_min: int,
    l_max: int,
    torus_x: Optional[int] = None,
) -> list[tuple[int, EntropyValue, int]]:
    """Tabulate (circumference, half-cylinder entropy, torus logical count).

    The torus column uses extents (torus_x or l) by l.
    """
    out = []
    for l in range(l_min, l_max + 1):
        s = cylinder_entropy(code, l)
        k = torus_logical_dimension(code, torus_x if torus_x is not None else l, l)
        out.append((l, s, k))
    return out
