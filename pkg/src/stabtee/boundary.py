"""Half-plane analysis: bulk stabilizers, boundary gauge operators, anyon tests.

Cutting the plane along a horizontal line leaves a half-plane system.  Each
side is analyzed in its own outward frame: rows y >= 0 with row 0 on the
cut, realized numerically as a strip of width w (periodic across the cut
direction) and height H.  Three spaces drive everything here:

* the half-plane stabilizer group: finite products of full-plane generator
  translates whose total support lies in y >= 0, including products of
  translates crossing the cut whose crossing parts cancel.  A reduced module
  basis under the maximal-height term order, computed in the mirrored frame
  and reflected back, turns exactly these cancellations into explicit
  generators, so the group is spanned by translates that never cross the cut;
* truncations: full-plane stabilizers cut at y = 0, keeping the upper part;
* boundary gauge operators: operators supported in a probe strip 0 <= y < h
  that commute with the whole half-plane stabilizer group.

Truncations landing inside the probe strip are the "primary" boundary gauge
operators; the secondary count is the dimension of the quotient of the
probe-strip gauge group by the primary span.  A count is accepted only when
it agrees at two coprime widths and two probe heights, each stable under
doubling the analysis window, so finite-size artifacts are caught rather
than reported.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from . import fp_linalg
from .codes import CodeSpec, normalized
from .entropy import ConvergenceError
from .fp_linalg import FpMatrix
from .groebner import GroebnerBasis, TermOrder, buchberger
from .lattice import Geometry
from .laurent import LaurentPoly, Window
from .pauli import PauliVector, SyndromeVector, instantiate, instantiate_bits

__all__ = [
    "BoundaryError",
    "HalfPlaneContext",
    "BGOReport",
    "HeightBoundReport",
    "interleaved_positions",
    "half_plane_order",
    "reflected_code",
    "decomposition_height_bound",
    "anyon_search_bound",
    "bulk_stabilizer_basis",
    "half_plane_group_generators",
    "is_boundary_gauge",
    "classify_bgo",
    "secondary_bgo_dimension",
    "bgo_report",
    "solve_trivial_anyon",
    "verify_height_bound",
]

_MAX_DOUBLINGS = 6


class BoundaryError(ValueError):
    """Invalid half-plane input: bad support, unmet precondition, bad side."""


def interleaved_positions(q: int) -> tuple[int, ...]:
    """Component priority X1 < Z1 < X2 < Z2 < ... for the module order."""
    out: list[int] = []
    for i in range(q):
        out.append(i)
        out.append(q + i)
    return tuple(out)


def half_plane_order(q: int) -> TermOrder:
    """Module order whose leading terms sit at maximal height.

    Reduction under this order cancels top rows first and never raises the
    height of anything it touches, so the reduced basis it produces
    generates, by translates confined to y <= c, every product of generators
    supported in y <= c.  Seen from the other side of the cut that is
    exactly half-plane generation.
    """
    return TermOrder(
        poly_order="ymax-first",
        module_style="TOP",
        position_order=interleaved_positions(q),
    )


@functools.lru_cache(maxsize=None)
def reflected_code(code: CodeSpec) -> CodeSpec:
    """The code seen from the other side of a horizontal cut (y -> -y)."""
    gens = tuple(normalized(g.reflect_y()) for g in code.generators)
    return replace(code, name=code.name + "|y-reflected", generators=gens)


def decomposition_height_bound(code: CodeSpec, probe_height: int) -> int:
    """Window height guaranteeing truncation decompositions are found.

    A boundary gauge operator of height h that is a product of bulk and
    truncated stabilizers always admits such a product with every factor
    below this height.  Windows at least this tall make the primary
    membership test conclusive rather than merely monotone.
    """
    r = max(code.reach(), 1)
    return 8 * r**3 * code.q**4 + 5 * r + 3 * probe_height


def anyon_search_bound(code: CodeSpec, seed_side: int) -> int:
    """Side length of the largest box solve_trivial_anyon searches.

    A syndrome pattern fitting a seed_side x seed_side box that can be
    created at all can be created inside this concentric box.
    """
    r = max(code.reach(), 1)
    return 2 * seed_side + 8 * r**3 * code.q**4 + 2 * r


@dataclass(frozen=True)
class HalfPlaneContext:
    """One half-plane analysis setup.

    width is the periodic strip circumference and height the number of rows
    kept on the analyzed side; None fields resolve to code-derived defaults.
    Operators handed to the operations live in the side's own outward frame:
    rows y >= 0 away from the cut, whichever side is analyzed.  A height
    below decomposition_height_bound(code, h) is allowed; the primary
    membership test then only certifies positives.
    """

    code: CodeSpec
    side: str = "upper"
    width: Optional[int] = None
    height: Optional[int] = None

    def __post_init__(self) -> None:
        if self.side not in ("upper", "lower"):
            raise BoundaryError(f"side must be 'upper' or 'lower', got {self.side!r}")
        fp = self.code.footprint()
        if self.width is None:
            object.__setattr__(self, "width", max(2 * self.code.reach(), 2))
        if self.height is None:
            object.__setattr__(self, "height", 6 * fp + 4)
        if self.width < max(2 * self.code.reach(), 2):
            raise BoundaryError(
                f"width {self.width} below twice the code reach {self.code.reach()}"
            )
        if self.height < 2 * fp + 2:
            raise BoundaryError(f"height {self.height} leaves no room above the cut")

    def oriented_code(self) -> CodeSpec:
        """The code in this side's outward frame (kept rows at y >= 0)."""
        return reflected_code(self.code) if self.side == "upper" else self.code

    def default_probe_height(self) -> int:
        return max(2 * self.code.footprint(), 4)


def bulk_stabilizer_basis(ctx: HalfPlaneContext) -> GroebnerBasis:
    """Generating set for all stabilizer products supported in the half-plane.

    The reduced module basis of the generators under the maximal-height
    order with interleaved component priorities, coefficient tracking on.
    It is computed in the mirror of the side's outward frame (for
    side=upper that is the code as given), where cancellations outside the
    kept half show up as leading-term cancellations; reflected into the
    outward frame, its translates at y >= 0 span every product of generator
    translates supported in the kept half-plane.
    """
    mirror = reflected_code(ctx.oriented_code())
    gens = [g.comps for g in mirror.generators]
    return buchberger(gens, half_plane_order(mirror.q), track=True)


@functools.lru_cache(maxsize=None)
def _group_family(code: CodeSpec, side: str) -> tuple[PauliVector, ...]:
    """Generators of the half-plane group, in the side's outward frame."""
    ctx = HalfPlaneContext(code, side=side)
    oriented = ctx.oriented_code()
    basis = bulk_stabilizer_basis(ctx)
    family = [normalized(g) for g in oriented.generators]
    for elem in basis.elements:
        v = PauliVector(p=oriented.p, q=oriented.q, comps=elem)
        family.append(normalized(v.reflect_y()))
    seen = set()
    out = []
    for v in family:
        if v.comps not in seen and v.support_box() is not None:
            seen.add(v.comps)
            out.append(v)
    return tuple(out)


def half_plane_group_generators(ctx: HalfPlaneContext) -> tuple[PauliVector, ...]:
    """Outward-frame families whose y >= 0 translates span the bulk group."""
    return _group_family(ctx.code, ctx.side)


# ---------------------------------------------------------------------------
# Strip frames: instantiated translate rows plus the linear algebra on them.
# ---------------------------------------------------------------------------


def _swap_halves_bits(row: int, half: int) -> int:
    low = (1 << half) - 1
    return ((row & low) << half) | (row >> half)


def _swap_halves_tuple(row: Sequence[int], half: int, p: int) -> tuple[int, ...]:
    x_part = row[:half]
    z_part = row[half:]
    return tuple((p - 1) * c % p for c in z_part) + tuple(x_part)


def _rank(p: int, rows: list) -> int:
    rows = [r for r in rows if (r if p == 2 else any(r))]
    if not rows:
        return 0
    if p == 2:
        return fp_linalg.gf2_rank(rows)
    return fp_linalg.rank(FpMatrix.from_rows(p, [list(r) for r in rows]))


def _combos_vanishing_on(p: int, rows: list, cols_or_mask, ncols: int) -> list:
    """Independent combinations of rows that vanish on the given columns."""
    if not rows:
        return []
    if p == 2:
        kernel = fp_linalg.gf2_left_kernel([r & cols_or_mask for r in rows])
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
    mat = FpMatrix.from_rows(p, [list(r) for r in rows], ncols=ncols)
    kernel = fp_linalg.kernel_basis(mat.select_columns(sorted(cols_or_mask))).rows
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


class _Frame:
    """Concrete strip at (outward-frame code, group family, width, height).

    group_rows are the y >= 0 translates of the half-plane group family;
    trunc_rows are the y >= 0 truncations of every generator translate that
    meets the window without poking out of its top.
    """

    def __init__(
        self,
        code: CodeSpec,
        family: tuple[PauliVector, ...],
        width: int,
        height: int,
    ) -> None:
        self.code = code
        self.w = width
        self.H = height
        self.geom = Geometry(ex=width, ey=height, periodic_x=True, periodic_y=False)
        self.n_sites = self.geom.n_sites
        self.ncols = 2 * code.q * self.n_sites
        self.half = code.q * self.n_sites
        self._build_rows(family)

    def _instantiate(self, v: PauliVector):
        if self.code.p == 2:
            return instantiate_bits(v, self.geom)
        return instantiate(v, self.geom)

    def _build_rows(self, family: tuple[PauliVector, ...]) -> None:
        group_rows = []
        for g in family:
            box = g.support_box()
            if box is None:
                continue
            _, _, ymin, ymax = box
            for n in range(self.w):
                gx = g.translate(n, 0)
                for m in range(-ymin, self.H - ymax):
                    group_rows.append(self._instantiate(gx.translate(0, m)))
        self.group_rows = group_rows
        trunc_rows = []
        trunc_meta = []
        upper = Window(None, None, 0, None)
        for mu, g in enumerate(self.code.generators):
            box = g.support_box()
            if box is None:
                continue
            _, _, ymin, ymax = box
            for n in range(self.w):
                gx = g.translate(n, 0)
                for m in range(-ymax, self.H - ymax):
                    t = gx.translate(0, m).project(upper)
                    if t.support_box() is None:
                        continue
                    trunc_rows.append(self._instantiate(t))
                    trunc_meta.append((mu, n, m, m + ymin < 0))
        self.trunc_rows = trunc_rows
        self.trunc_meta = trunc_meta

    # -- column masks --------------------------------------------------------

    def _sites_rows(self, y_lo: int, y_hi: int) -> range:
        return range(y_lo * self.w, y_hi * self.w)

    def _mask_rows(self, y_lo: int, y_hi: int) -> int:
        sites = self._sites_rows(y_lo, y_hi)
        if not sites:
            return 0
        block = ((1 << len(sites)) - 1) << sites.start
        mask = 0
        for b in range(2 * self.code.q):
            mask |= block << (b * self.n_sites)
        return mask

    def _cols_rows(self, y_lo: int, y_hi: int) -> list[int]:
        sites = self._sites_rows(y_lo, y_hi)
        return [b * self.n_sites + s for b in range(2 * self.code.q) for s in sites]

    # -- pairing functionals ---------------------------------------------------

    def _pair_row(self, row):
        if self.code.p == 2:
            return _swap_halves_bits(row, self.half)
        return _swap_halves_tuple(row, self.half, self.code.p)

    def pairs_to_zero(self, row) -> bool:
        """Does the instantiated operator commute with the whole group span?"""
        func = self._pair_row(row)
        if self.code.p == 2:
            return all((func & g).bit_count() % 2 == 0 for g in self.group_rows)
        p = self.code.p
        return all(sum(a * b for a, b in zip(func, g)) % p == 0 for g in self.group_rows)

    # -- dimensions --------------------------------------------------------------

    def gauge_dimension(self, h: int) -> int:
        """dim of operators on rows [0, h) commuting with the group."""
        nprobe = 2 * self.code.q * len(self._sites_rows(0, h))
        if self.code.p == 2:
            probe = self._mask_rows(0, h)
            constraints = _rank(2, [self._pair_row(g) & probe for g in self.group_rows])
        else:
            cols = self._cols_rows(0, h)
            funcs = [self._pair_row(g) for g in self.group_rows]
            if funcs:
                mat = FpMatrix.from_rows(self.code.p, [list(f) for f in funcs])
                constraints = fp_linalg.rank(mat.select_columns(cols))
            else:
                constraints = 0
        return nprobe - constraints

    def primary_in_probe_dimension(self, h: int) -> int:
        """dim of the truncation span's slice supported on rows [0, h)."""
        if not self.trunc_rows:
            return 0
        if self.code.p == 2:
            above = self._mask_rows(h, self.H)
            return _rank(2, list(self.trunc_rows)) - _rank(
                2, [r & above for r in self.trunc_rows]
            )
        cols = self._cols_rows(h, self.H)
        mat = FpMatrix.from_rows(self.code.p, [list(r) for r in self.trunc_rows])
        return fp_linalg.rank(mat) - fp_linalg.rank(mat.select_columns(cols))

    def secondary_dimension(self, h: int) -> int:
        return self.gauge_dimension(h) - self.primary_in_probe_dimension(h)

    # -- membership ---------------------------------------------------------------

    def _solve_over(self, rows: list, target) -> Optional[tuple[int, ...]]:
        if not rows:
            zero = target == 0 if self.code.p == 2 else not any(target)
            return () if zero else None
        if self.code.p == 2:
            mask = fp_linalg.gf2_solve(list(rows), target)
            if mask is None:
                return None
            return tuple((mask >> i) & 1 for i in range(len(rows)))
        mat = FpMatrix.from_rows(self.code.p, [list(r) for r in rows], ncols=self.ncols)
        return fp_linalg.solve(mat, list(target))

    def in_group_span(self, row) -> Optional[tuple[int, ...]]:
        return self._solve_over(list(self.group_rows), row)

    def in_truncation_span(self, row) -> Optional[tuple[int, ...]]:
        return self._solve_over(list(self.trunc_rows), row)

    # -- probe-space bases and reconstruction ---------------------------------------

    def gauge_probe_basis(self, h: int) -> list:
        """Basis of the probe-strip gauge space as probe-column vectors."""
        cols = self._cols_rows(0, h)
        p = self.code.p
        funcs = [self._pair_row(g) for g in self.group_rows]
        if p == 2:
            if not funcs:
                return [1 << i for i in range(len(cols))]
            transposed = []
            for c in cols:
                col_bits = 0
                for i, f in enumerate(funcs):
                    if (f >> c) & 1:
                        col_bits |= 1 << i
                transposed.append(col_bits)
            return list(fp_linalg.gf2_left_kernel(transposed))
        if not funcs:
            basis = []
            for i in range(len(cols)):
                v = [0] * len(cols)
                v[i] = 1
                basis.append(tuple(v))
            return basis
        transposed_rows = [[f[c] for f in funcs] for c in cols]
        mat = FpMatrix.from_rows(p, transposed_rows, ncols=len(funcs))
        return [tuple(r) for r in fp_linalg.kernel_basis(mat).rows]

    def primary_probe_basis(self, h: int) -> list:
        """Truncation-span slice on the probe, as probe-column vectors."""
        if self.code.p == 2:
            above = self._mask_rows(h, self.H)
            inside = _combos_vanishing_on(2, list(self.trunc_rows), above, self.ncols)
            return [self._restrict_bits(v, h) for v in inside]
        cols_above = self._cols_rows(h, self.H)
        inside = _combos_vanishing_on(
            self.code.p, list(self.trunc_rows), cols_above, self.ncols
        )
        cols = self._cols_rows(0, h)
        return [tuple(v[c] for c in cols) for v in inside]

    def _restrict_bits(self, row: int, h: int) -> int:
        out = 0
        for j, c in enumerate(self._cols_rows(0, h)):
            if (row >> c) & 1:
                out |= 1 << j
        return out

    def probe_vector_to_operator(self, vec, h: int) -> PauliVector:
        """Rebuild a PauliVector (outward-frame coordinates) from probe columns."""
        p, q = self.code.p, self.code.q
        cols = self._cols_rows(0, h)
        comps = [LaurentPoly.zero(p) for _ in range(2 * q)]
        for j, c in enumerate(cols):
            coeff = (vec >> j) & 1 if p == 2 else vec[j]
            if not coeff:
                continue
            b, s = divmod(c, self.n_sites)
            y, x = divmod(s, self.w)
            comps[b] = comps[b] + LaurentPoly.monomial(p, x, y, coeff)
        return PauliVector(p=p, q=q, comps=tuple(comps))


@functools.lru_cache(maxsize=64)
def _frame_for(code: CodeSpec, side: str, width: int, height: int) -> _Frame:
    oriented = HalfPlaneContext(code, side=side, width=width, height=height).oriented_code()
    return _Frame(oriented, _group_family(code, side), width, height)


def _ctx_frame(ctx: HalfPlaneContext, width: Optional[int] = None, height: Optional[int] = None) -> _Frame:
    return _frame_for(ctx.code, ctx.side, width or ctx.width, height or ctx.height)


def _op_row(frame: _Frame, op: PauliVector):
    """Instantiate an operator given in the outward frame, or complain."""
    code = frame.code
    if op.p != code.p or op.q != code.q:
        raise BoundaryError("operator base or species count does not match the code")
    box = op.support_box()
    if box is None:
        return 0 if code.p == 2 else tuple([0] * frame.ncols)
    _, _, ymin, ymax = box
    top = frame.H - code.footprint()
    if ymin < 0 or ymax >= top:
        raise BoundaryError(
            f"operator support rows [{ymin}, {ymax}] leave the strip [0, {top})"
        )
    return frame._instantiate(op)


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def is_boundary_gauge(ctx: HalfPlaneContext, op: PauliVector) -> bool:
    """Does op commute with every half-plane stabilizer near its support?

    op is given in the side's outward frame: rows y >= 0, row 0 on the cut.
    Support outside the context window is a BoundaryError.
    """
    frame = _ctx_frame(ctx)
    row = _op_row(frame, op)
    return frame.pairs_to_zero(row)


def classify_bgo(ctx: HalfPlaneContext, op: PauliVector) -> str:
    """Sort a boundary gauge operator into bulk | primary | secondary.

    bulk: inside the half-plane stabilizer group itself.  primary: inside
    the span of truncated full-plane stabilizers within the context window.
    secondary: neither.  The verdict "secondary" is conclusive only when
    ctx.height >= decomposition_height_bound(code, op height); positives
    are conclusive at any window.
    """
    if not is_boundary_gauge(ctx, op):
        raise BoundaryError("operator is not a boundary gauge operator")
    frame = _ctx_frame(ctx)
    row = _op_row(frame, op)
    if frame.in_group_span(row) is not None:
        return "bulk"
    if frame.in_truncation_span(row) is not None:
        return "primary"
    return "secondary"


@dataclass(frozen=True)
class BGOReport:
    """Converged secondary boundary-gauge count for one half-plane side."""

    side: str
    probe_height: int
    dimension: int
    width: int
    window_height: int
    gauge_dimension: int
    primary_dimension: int
    representatives: tuple[PauliVector, ...] = ()

    def __str__(self) -> str:
        return (
            f"{self.side}: {self.dimension} secondary type(s) "
            f"(probe h={self.probe_height}, strip w={self.width}, "
            f"window H={self.window_height}, gauge dim {self.gauge_dimension}, "
            f"primary dim {self.primary_dimension})"
        )


def _stable_count(ctx: HalfPlaneContext, w: int, h: int, h0: int):
    """Secondary dimension at (w, h), stabilized by doubling the window."""
    H = h0
    frame = _frame_for(ctx.code, ctx.side, w, H)
    prev = frame.secondary_dimension(h)
    for _ in range(_MAX_DOUBLINGS):
        H *= 2
        frame = _frame_for(ctx.code, ctx.side, w, H)
        cur = frame.secondary_dimension(h)
        if cur == prev:
            return cur, frame
        prev = cur
    raise ConvergenceError(
        f"secondary count at width {w} kept changing up to window {H}"
    )


def bgo_report(
    ctx: HalfPlaneContext,
    probe_height: Optional[int] = None,
    with_representatives: bool = True,
) -> BGOReport:
    """Converged BGO count with representatives of the secondary quotient.

    The count must agree at widths (w, w+1) and probe heights (h, h+1), each
    stabilized under doubling the analysis window; the probe is doubled and
    the whole check rerun on disagreement.  ConvergenceError past caps.
    """
    h = probe_height if probe_height is not None else ctx.default_probe_height()
    fp = ctx.code.footprint()
    for _ in range(_MAX_DOUBLINGS):
        h0 = max(ctx.height, h + 2 * fp + 2)
        count, frame = _stable_count(ctx, ctx.width, h, h0)
        count_h1, _ = _stable_count(ctx, ctx.width, h + 1, h0 + 1)
        count_w1, _ = _stable_count(ctx, ctx.width + 1, h, h0)
        if count == count_h1 == count_w1:
            reps: tuple[PauliVector, ...] = ()
            if with_representatives:
                reps = _secondary_representatives(frame, h, count)
            return BGOReport(
                side=ctx.side,
                probe_height=h,
                dimension=count,
                width=ctx.width,
                window_height=frame.H,
                gauge_dimension=frame.gauge_dimension(h),
                primary_dimension=frame.primary_in_probe_dimension(h),
                representatives=reps,
            )
        h *= 2
    raise ConvergenceError(
        f"secondary count for {ctx.code.name!r} did not stabilize across widths/probes"
    )


def _secondary_representatives(frame: _Frame, h: int, count: int) -> tuple[PauliVector, ...]:
    """Gauge-space vectors extending the primary span, as operators."""
    if count == 0:
        return ()
    p = frame.code.p
    primary = frame.primary_probe_basis(h)
    gauge = frame.gauge_probe_basis(h)
    reps = []
    if p == 2:
        span = [v for v in primary if v]
        base = fp_linalg.gf2_rank(span) if span else 0
        for v in gauge:
            r = fp_linalg.gf2_rank(span + [v])
            if r > base:
                span.append(v)
                base = r
                reps.append(v)
            if len(reps) == count:
                break
    else:
        span = [list(v) for v in primary]
        base = _rank(p, list(span))
        for v in gauge:
            cand = span + [list(v)]
            r = _rank(p, list(cand))
            if r > base:
                span, base = cand, r
                reps.append(v)
            if len(reps) == count:
                break
    return tuple(frame.probe_vector_to_operator(v, h) for v in reps)


def secondary_bgo_dimension(
    ctx: HalfPlaneContext, probe_height: Optional[int] = None
) -> int:
    """Number of independent secondary boundary-gauge types on one side."""
    return bgo_report(ctx, probe_height, with_representatives=False).dimension


def solve_trivial_anyon(
    code: CodeSpec,
    target: SyndromeVector,
    max_box_side: Optional[int] = None,
) -> Optional[PauliVector]:
    """Find an operator creating the given syndrome, or None within the cap.

    Searches concentric boxes of doubling size around the syndrome's support,
    ending with the guarantee box (anyon_search_bound for the seed side, or
    the explicit max_box_side cap).  A linear solve runs per box; the first
    solution is returned.  None means the pattern cannot be created by any
    operator inside the cap box, certifying a nontrivial excitation when the
    cap is at least the guarantee size.
    """
    if len(target.comps) != len(code.generators):
        raise BoundaryError("syndrome length does not match the generator count")
    if target.is_zero():
        return PauliVector.zero(code.p, code.q)
    boxes = [c.support_box() for c in target.comps if c.support_box() is not None]
    x_lo = min(b[0] for b in boxes)
    x_hi = max(b[1] for b in boxes)
    y_lo = min(b[2] for b in boxes)
    y_hi = max(b[3] for b in boxes)
    seed = max(x_hi - x_lo + 1, y_hi - y_lo + 1)
    cx, cy = (x_lo + x_hi) // 2, (y_lo + y_hi) // 2
    cap = max_box_side if max_box_side is not None else anyon_search_bound(code, seed)
    side = seed
    tried_cap = False
    while True:
        if side >= cap:
            side = cap
            tried_cap = True
        v = _solve_in_box(code, target, cx, cy, side)
        if v is not None:
            return v
        if tried_cap:
            return None
        side = min(2 * side + 1, cap)


def _solve_in_box(
    code: CodeSpec, target: SyndromeVector, cx: int, cy: int, side: int
) -> Optional[PauliVector]:
    """One linear solve: operator confined to the side x side box around (cx, cy)."""
    p, q = code.p, code.q
    half = side // 2
    xs = range(cx - half, cx - half + side)
    ys = range(cy - half, cy - half + side)
    sites = [(x, y) for y in ys for x in xs]
    site_pos = {s: i for i, s in enumerate(sites)}
    nvars = 2 * q * len(sites)

    def var(b: int, x: int, y: int) -> int:
        return b * len(sites) + site_pos[(x, y)]

    equations: list[list[int]] = []
    rhs: list[int] = []
    for mu, g in enumerate(code.generators):
        gbox = g.support_box()
        if gbox is None:
            continue
        xmin, xmax, ymin, ymax = gbox
        placements = {
            (n, m)
            for n in range(xs.start - xmax, xs.stop - xmin)
            for m in range(ys.start - ymax, ys.stop - ymin)
        }
        placements.update((mon.xexp, mon.yexp) for mon, _ in target.comps[mu].terms)
        for (n, m) in sorted(placements):
            # pairing of the (n, m)-translate with the unknown operator
            eq = [0] * nvars
            for i in range(q):
                for mon, c in g.comps[i].terms:
                    sx, sy = mon.xexp + n, mon.yexp + m
                    if (sx, sy) in site_pos:
                        j = var(q + i, sx, sy)
                        eq[j] = (eq[j] + c) % p
                for mon, c in g.comps[q + i].terms:
                    sx, sy = mon.xexp + n, mon.yexp + m
                    if (sx, sy) in site_pos:
                        j = var(i, sx, sy)
                        eq[j] = (eq[j] - c) % p
            target_val = target.comps[mu].coeff(n, m) % p
            if not any(eq) and target_val == 0:
                continue
            equations.append(eq)
            rhs.append(target_val)
    if not equations:
        return None
    transposed = [[equations[r][c] for r in range(len(equations))] for c in range(nvars)]
    mat = FpMatrix.from_rows(p, transposed, ncols=len(equations))
    sol = fp_linalg.solve(mat, rhs)
    if sol is None:
        return None
    comps = [LaurentPoly.zero(p) for _ in range(2 * q)]
    for b in range(2 * q):
        for i, (x, y) in enumerate(sites):
            c = sol[b * len(sites) + i]
            if c:
                comps[b] = comps[b] + LaurentPoly.monomial(p, x, y, c)
    return PauliVector(p=p, q=q, comps=tuple(comps))


@dataclass(frozen=True)
class HeightBoundReport:
    """Outcome of hunting the smallest window that decomposes an operator."""

    op_height: int
    bound_height: int
    found_height: Optional[int]
    within_bound: bool
    contributors: tuple[tuple[str, int, int, int, int], ...] = ()

    def __str__(self) -> str:
        if self.found_height is None:
            return (
                f"no decomposition up to window {self.bound_height} "
                f"(operator height {self.op_height}); secondary"
            )
        verdict = "within" if self.within_bound else "ABOVE"
        return (
            f"decomposed at window {self.found_height}, {verdict} the "
            f"guarantee {self.bound_height} ({len(self.contributors)} factors)"
        )


def verify_height_bound(
    ctx: HalfPlaneContext, op: PauliVector, probe_height: Optional[int] = None
) -> HeightBoundReport:
    """Find the smallest window height whose truncation span contains op.

    Grows the window by doubling up to the guarantee height (then once past
    it, to detect violations), then bisects down to the exact minimal
    height.  Reports the decomposition found: (kind, generator, n, m, coeff)
    per contributing translate, kind "truncated" or "fitting".
    """
    box = op.support_box()
    op_h = 0 if box is None else box[3] + 1
    h = probe_height if probe_height is not None else op_h
    code = ctx.oriented_code()
    bound = decomposition_height_bound(code, h)
    fp = code.footprint()

    def member_at(H: int) -> Optional[tuple]:
        frame = _frame_for(ctx.code, ctx.side, ctx.width, H)
        row = _op_row(frame, op)
        combo = frame.in_truncation_span(row)
        if combo is None:
            return None
        return frame, combo

    min_window = max(op_h + fp, 2 * fp + 2)
    H = min_window
    hit = None
    while True:
        hit = member_at(H)
        if hit is not None:
            break
        if H > bound:
            return HeightBoundReport(
                op_height=op_h, bound_height=bound, found_height=None, within_bound=False
            )
        H = min(2 * H, bound + fp + 1) if 2 * H <= bound else bound + fp + 1
    # bisect the minimal working height in (min_window - 1, H]
    good_frame, good_combo = hit
    lo_fail, hi_ok = min_window - 1, H
    while hi_ok - lo_fail > 1:
        mid = (lo_fail + hi_ok) // 2
        trial = member_at(mid)
        if trial is None:
            lo_fail = mid
        else:
            hi_ok = mid
            good_frame, good_combo = trial
    contributors = []
    for i, c in enumerate(good_combo):
        if c:
            mu, n, m, truncated = good_frame.trunc_meta[i]
            kind = "truncated" if truncated else "fitting"
            contributors.append((kind, mu, n, m, int(c)))
    return HeightBoundReport(
        op_height=op_h,
        bound_height=bound,
        found_height=hi_ok,
        within_bound=hi_ok <= bound,
        contributors=tuple(contributors),
    )
