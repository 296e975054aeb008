"""Buchberger's algorithm over GF(p)[x, y] for ideals and free-module submodules.

Module elements are tuples of Laurent polynomials whose exponents must be
nonnegative.  Inputs with negative exponents are shift-normalized one
generator at a time (multiplying a generator by a monomial leaves the
Laurent-module span unchanged) and the shifts are recorded on the result.

Monomial orders
---------------
``lex-xy``      lexicographic, x dominant
``lex-yx``      lexicographic, y dominant
``grlex``       total degree first, ties broken lex-xy
``ymax-first``  the term of largest y exponent leads, ties to larger x
``ymin-first``  the term of smallest y exponent leads, ties to larger x

The first four are well-orders on polynomial monomials, so division and
Buchberger terminate unconditionally.  ``ymin-first`` is not (1 has no
minimum below it but y, y^2, ... descend forever), yet it is the order whose
division controls the lowest row a decomposition may touch; it is admitted
for bounded-support inputs only, and any computation whose intermediate
degrees run past a cap raises ``TermOrderError`` instead of looping.

Module orders extend a monomial order by a component-position priority,
either term-over-position (TOP: compare monomials first) or
position-over-term (POT).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .laurent import LaurentPoly, Monomial

__all__ = [
    "TermOrder",
    "TermOrderError",
    "GroebnerBasis",
    "DegreeBoundReport",
    "POLY_ORDERS",
    "leading_term",
    "s_vector",
    "reduce_vector",
    "buchberger",
    "membership",
    "ideal_degree_bound",
    "module_degree_bound",
    "check_degree_bound",
]

ModuleVector = tuple[LaurentPoly, ...]

POLY_ORDERS = ("lex-xy", "lex-yx", "grlex", "ymax-first", "ymin-first")


class TermOrderError(ValueError):
    """Raised for invalid orders or for runaway non-well-order divisions."""


def _mono_key(order: str, m: Monomial) -> tuple[int, int]:
    if order == "lex-xy":
        return (m.xexp, m.yexp)
    if order in ("lex-yx", "ymax-first"):
        return (m.yexp, m.xexp)
    if order == "grlex":
        return (m.xexp + m.yexp, m.xexp)
    if order == "ymin-first":
        return (-m.yexp, m.xexp)
    raise TermOrderError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class TermOrder:
    """A module monomial order: polynomial part, style, position priority.

    ``position_order`` lists component indices from lowest to highest
    priority; ``None`` means natural order (last component wins ties).
    """

    poly_order: str = "lex-yx"
    module_style: str = "TOP"
    position_order: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.poly_order not in POLY_ORDERS:
            raise TermOrderError(
                f"unknown monomial order {self.poly_order!r}; choose from {POLY_ORDERS}"
            )
        if self.module_style not in ("TOP", "POT"):
            raise TermOrderError("module style must be TOP or POT")
        if self.position_order is not None:
            n = len(self.position_order)
            if sorted(self.position_order) != list(range(n)):
                raise TermOrderError("position order must be a permutation of 0..m-1")

    @property
    def well_ordered(self) -> bool:
        """Whether 1 is the least monomial, so division always terminates."""
        return self.poly_order != "ymin-first"

    def _rank(self, ncomps: int) -> tuple[int, ...]:
        if self.position_order is None:
            return tuple(range(ncomps))
        if len(self.position_order) != ncomps:
            raise TermOrderError(
                f"position order over {len(self.position_order)} components "
                f"applied to vectors with {ncomps}"
            )
        rank = [0] * ncomps
        for priority, comp in enumerate(self.position_order):
            rank[comp] = priority
        return tuple(rank)

    def key(self, comp: int, mono: Monomial, ncomps: int):
        """Sort key for module monomials; larger key = larger monomial."""
        rank = self._rank(ncomps)
        mk = _mono_key(self.poly_order, mono)
        if self.module_style == "TOP":
            return (mk, rank[comp])
        return (rank[comp], mk)


class LeadingTerm(NamedTuple):
    component: int
    monomial: Monomial
    coeff: int


def _iter_terms(v: ModuleVector):
    for comp, poly in enumerate(v):
        for mono, c in poly.terms:
            yield comp, mono, c


def _is_zero(v: ModuleVector) -> bool:
    return all(poly.is_zero() for poly in v)


def _zero_like(v: ModuleVector) -> ModuleVector:
    return tuple(LaurentPoly.zero(poly.p) for poly in v)


def _add(u: ModuleVector, v: ModuleVector) -> ModuleVector:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: ModuleVector, v: ModuleVector) -> ModuleVector:
    return tuple(a - b for a, b in zip(u, v))


def _mul_term(v: ModuleVector, mono: Monomial, coeff: int) -> ModuleVector:
    f = LaurentPoly.monomial(v[0].p, mono.xexp, mono.yexp, coeff)
    return tuple(f * poly for poly in v)


def _max_total_degree(v: ModuleVector) -> int:
    return max((poly.total_degree() for poly in v), default=-1)


def _require_polynomial(v: ModuleVector) -> None:
    for poly in v:
        box = poly.support_box()
        if box is not None and (box[0] < 0 or box[2] < 0):
            raise TermOrderError(
                "module computations need nonnegative exponents; "
                "shift-normalize the input first"
            )


def leading_term(v: ModuleVector, order: TermOrder) -> LeadingTerm:
    """The largest term of ``v`` under ``order``; error on the zero vector."""
    best = None
    best_key = None
    n = len(v)
    for comp, mono, c in _iter_terms(v):
        k = order.key(comp, mono, n)
        if best_key is None or k > best_key:
            best_key = k
            best = LeadingTerm(comp, mono, c)
    if best is None:
        raise ValueError("the zero vector has no leading term")
    return best


def _monic(v: ModuleVector, order: TermOrder) -> ModuleVector:
    lt = leading_term(v, order)
    if lt.coeff == 1:
        return v
    inv = pow(lt.coeff, v[0].p - 2, v[0].p)
    return tuple(poly.scale(inv) for poly in v)


def s_vector(u: ModuleVector, v: ModuleVector, order: TermOrder) -> Optional[ModuleVector]:
    """The S-vector of the pair, or None when leading components differ."""
    lu = leading_term(u, order)
    lv = leading_term(v, order)
    if lu.component != lv.component:
        return None
    p = u[0].p
    lcm = Monomial(max(lu.monomial.xexp, lv.monomial.xexp), max(lu.monomial.yexp, lv.monomial.yexp))
    cu = pow(lu.coeff, p - 2, p)
    cv = pow(lv.coeff, p - 2, p)
    left = _mul_term(u, lcm.quotient(lu.monomial), cu)
    right = _mul_term(v, lcm.quotient(lv.monomial), cv)
    return _sub(left, right)


def _default_cap(vectors: Sequence[ModuleVector]) -> int:
    degrees = [_max_total_degree(v) for v in vectors if not _is_zero(v)]
    d = max(degrees, default=0)
    m = len(vectors[0]) if vectors else 1
    bound = module_degree_bound(d, m)
    return 4 * (int(bound) + 1) + 16


def _reduce_impl(
    v: ModuleVector,
    elements: Sequence[ModuleVector],
    order: TermOrder,
    max_degree: Optional[int],
    track: bool,
):
    leads = [leading_term(g, order) for g in elements]
    p = v[0].p if v else 2
    quotients = [LaurentPoly.zero(p) for _ in elements] if track else None
    cap = max_degree
    if cap is None and not order.well_ordered:
        cap = _default_cap(list(elements) + [v])
    work = v
    n = len(v)
    remainder_keys: set = set()
    while not _is_zero(work):
        # largest term not yet banked as irreducible remainder
        candidates = [
            (order.key(comp, mono, n), comp, mono, c)
            for comp, mono, c in _iter_terms(work)
            if (comp, mono) not in remainder_keys
        ]
        if not candidates:
            break
        key, comp, mono, c = max(candidates, key=lambda t: t[0])
        hit = None
        for j, lt in enumerate(leads):
            if lt.component == comp and lt.monomial.divides(mono):
                hit = j
                break
        if hit is None:
            remainder_keys.add((comp, mono))
            continue
        lt = leads[hit]
        factor = (c * pow(lt.coeff, p - 2, p)) % p
        quot = mono.quotient(lt.monomial)
        work = _sub(work, _mul_term(elements[hit], quot, factor))
        if track:
            quotients[hit] = quotients[hit] + LaurentPoly.monomial(p, quot.xexp, quot.yexp, factor)
        if cap is not None and _max_total_degree(work) > cap:
            raise TermOrderError(
                f"division under {order.poly_order!r} exceeded total degree {cap}; "
                "the order is not a well-order, refusing to continue"
            )
    return work, quotients


def reduce_vector(
    v: ModuleVector,
    elements: Sequence[ModuleVector],
    order: TermOrder,
    max_degree: Optional[int] = None,
) -> ModuleVector:
    """Full normal form: no term of the result is divisible by a basis lead."""
    _require_polynomial(v)
    nf, _ = _reduce_impl(v, elements, order, max_degree, track=False)
    return nf


def reduce_tracked(
    v: ModuleVector,
    elements: Sequence[ModuleVector],
    order: TermOrder,
    max_degree: Optional[int] = None,
) -> tuple[ModuleVector, list[LaurentPoly]]:
    """Normal form plus quotients: v == sum(q_j * elements[j]) + remainder."""
    _require_polynomial(v)
    return _reduce_impl(v, elements, order, max_degree, track=True)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced module basis together with its provenance.

    ``input_shifts[k]`` is the monomial multiplier applied to input k to make
    it polynomial.  When tracked, ``expressions[i]`` writes element i as a
    combination of the shifted inputs.
    """

    order: TermOrder
    elements: tuple[ModuleVector, ...]
    reduced: bool
    input_shifts: tuple[tuple[int, int], ...] = ()
    expressions: Optional[tuple[tuple[LaurentPoly, ...], ...]] = None

    @property
    def max_total_degree(self) -> int:
        return max((_max_total_degree(g) for g in self.elements), default=-1)

    def leading_terms(self) -> list[LeadingTerm]:
        return [leading_term(g, self.order) for g in self.elements]


def normalize_inputs(
    generators: Sequence[ModuleVector],
) -> tuple[list[ModuleVector], list[tuple[int, int]]]:
    """Shift each generator by a monomial so all exponents are nonnegative."""
    out: list[ModuleVector] = []
    shifts: list[tuple[int, int]] = []
    for g in generators:
        boxes = [poly.support_box() for poly in g]
        xs = [b[0] for b in boxes if b is not None]
        ys = [b[2] for b in boxes if b is not None]
        dx = max(0, -min(xs)) if xs else 0
        dy = max(0, -min(ys)) if ys else 0
        out.append(tuple(poly.shift(dx, dy) for poly in g))
        shifts.append((dx, dy))
    return out, shifts


def _normal_pair(
    pairs: set[tuple[int, int]], basis: Sequence[ModuleVector], order: TermOrder
) -> tuple[int, int]:
    # normal selection strategy: smallest lcm total degree, ties by index
    def lcm_degree(pair: tuple[int, int]) -> tuple[int, int, int]:
        i, j = pair
        li = leading_term(basis[i], order)
        lj = leading_term(basis[j], order)
        if li.component != lj.component:
            deg = -1
        else:
            deg = max(li.monomial.xexp, lj.monomial.xexp) + max(
                li.monomial.yexp, lj.monomial.yexp
            )
        return (deg, i, j)

    return min(pairs, key=lcm_degree)


def buchberger(
    generators: Sequence[ModuleVector],
    order: TermOrder,
    track: bool = False,
    max_degree: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule the generators span.

    With ``track=True`` the result carries, for every basis element, its
    expression over the shift-normalized inputs.
    """
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    width = len(gens[0])
    if any(len(g) != width for g in gens):
        raise ValueError("generators have mismatched component counts")
    normed, shifts = normalize_inputs(gens)
    p = normed[0][0].p

    basis: list[ModuleVector] = []
    exprs: list[tuple[LaurentPoly, ...]] = []
    for k, g in enumerate(normed):
        if _is_zero(g):
            continue
        basis.append(g)
        exprs.append(
            tuple(
                LaurentPoly.constant(p, 1) if i == k else LaurentPoly.zero(p)
                for i in range(len(normed))
            )
        )

    if not basis:
        return GroebnerBasis(order, (), True, tuple(shifts), () if track else None)

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        i, j = _normal_pair(pairs, basis, order)
        pairs.discard((i, j))
        s = s_vector(basis[i], basis[j], order)
        if s is None or _is_zero(s):
            continue
        nf, quot = _reduce_impl(s, basis, order, max_degree, track=True)
        if _is_zero(nf):
            continue
        if track:
            li = leading_term(basis[i], order)
            lj = leading_term(basis[j], order)
            lcm = Monomial(
                max(li.monomial.xexp, lj.monomial.xexp),
                max(li.monomial.yexp, lj.monomial.yexp),
            )
            ci = pow(li.coeff, p - 2, p)
            cj = pow(lj.coeff, p - 2, p)
            ti = LaurentPoly.monomial(p, *_mono_pair(lcm.quotient(li.monomial)), ci)
            tj = LaurentPoly.monomial(p, *_mono_pair(lcm.quotient(lj.monomial)), cj)
            expr = [ti * a - tj * b for a, b in zip(exprs[i], exprs[j])]
            for k, qk in enumerate(quot):
                if not qk.is_zero():
                    expr = [a - qk * b for a, b in zip(expr, exprs[k])]
            exprs.append(tuple(expr))
        new_index = len(basis)
        basis.append(nf)
        pairs.update((k, new_index) for k in range(new_index))

    return _reduce_basis(basis, exprs if track else None, order, shifts, max_degree)


def _mono_pair(m: Monomial) -> tuple[int, int]:
    return m.xexp, m.yexp


def _reduce_basis(
    basis: list[ModuleVector],
    exprs: Optional[list[tuple[LaurentPoly, ...]]],
    order: TermOrder,
    shifts: list[tuple[int, int]],
    max_degree: Optional[int],
) -> GroebnerBasis:
    # minimize: drop i when some other lead strictly divides its lead, or an
    # earlier element has the identical lead (transitivity keeps this sound)
    keep: list[int] = []
    leads = [leading_term(g, order) for g in basis]
    for i in range(len(basis)):
        li = leads[i]
        redundant = False
        for j in range(len(basis)):
            if i == j:
                continue
            lj = leads[j]
            if lj.component == li.component and lj.monomial.divides(li.monomial):
                if lj.monomial != li.monomial or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(i)
    minimal = [basis[i] for i in keep]
    min_exprs = [exprs[i] for i in keep] if exprs is not None else None

    # inter-reduce until every element is in normal form against the others
    p = minimal[0][0].p
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = minimal[:i] + minimal[i + 1 :]
            nf, quot = _reduce_impl(minimal[i], others, order, max_degree, track=True)
            if nf != minimal[i]:
                changed = True
                if _is_zero(nf):
                    del minimal[i]
                    if min_exprs is not None:
                        del min_exprs[i]
                    break
                if min_exprs is not None:
                    expr = list(min_exprs[i])
                    other_exprs = min_exprs[:i] + min_exprs[i + 1 :]
                    for k, qk in enumerate(quot):
                        if not qk.is_zero():
                            expr = [a - qk * b for a, b in zip(expr, other_exprs[k])]
                    min_exprs[i] = tuple(expr)
                minimal[i] = nf

    final = []
    final_exprs = []
    for i, g in enumerate(minimal):
        lt = leading_term(g, order)
        if lt.coeff != 1:
            inv = pow(lt.coeff, p - 2, p)
            g = tuple(poly.scale(inv) for poly in g)
            if min_exprs is not None:
                min_exprs[i] = tuple(e.scale(inv) for e in min_exprs[i])
        final.append(g)
        if min_exprs is not None:
            final_exprs.append(min_exprs[i])

    n = len(final[0]) if final else 0
    order_key = lambda idx: order.key(
        leading_term(final[idx], order).component,
        leading_term(final[idx], order).monomial,
        n,
    )
    ranking = sorted(range(len(final)), key=order_key, reverse=True)
    elements = tuple(final[i] for i in ranking)
    expressions = (
        tuple(final_exprs[i] for i in ranking) if min_exprs is not None else None
    )
    return GroebnerBasis(order, elements, True, tuple(shifts), expressions)


def membership(v: ModuleVector, basis: GroebnerBasis) -> bool:
    """Whether ``v`` reduces to zero against the basis (polynomial module)."""
    normed, _ = normalize_inputs([v])
    return _is_zero(reduce_vector(normed[0], basis.elements, basis.order))


# ---------------------------------------------------------------------------
# Degree bounds


def ideal_degree_bound(input_degree: int) -> Fraction:
    """Worst-case basis degree for ideals in two variables: D^2 (D+2)^2 / 2."""
    d = max(0, input_degree)
    return Fraction(d * d * (d + 2) ** 2, 2)


def module_degree_bound(input_degree: int, ncomps: int) -> Fraction:
    """Worst-case basis degree for rank-m submodules: (D + m)^4 / 8."""
    d = max(0, input_degree)
    return Fraction((d + ncomps) ** 4, 8)


@dataclass(frozen=True)
class DegreeBoundReport:
    kind: str
    input_degree: int
    basis_degree: int
    bound: Fraction
    within: bool

    def __str__(self) -> str:
        verdict = "within" if self.within else "EXCEEDS"
        return (
            f"{self.kind} degree bound: basis degree {self.basis_degree} "
            f"{verdict} {self.bound} (inputs of degree {self.input_degree})"
        )


def check_degree_bound(
    basis: GroebnerBasis, input_degree: int, ncomps: Optional[int] = None
) -> DegreeBoundReport:
    """Compare the basis degree against the applicable worst-case bound."""
    if ncomps is None:
        ncomps = len(basis.elements[0]) if basis.elements else 1
    if ncomps == 1:
        bound = ideal_degree_bound(input_degree)
        kind = "ideal"
    else:
        bound = module_degree_bound(input_degree, ncomps)
        kind = "module"
    deg = max(basis.max_total_degree, 0)
    return DegreeBoundReport(kind, input_degree, deg, bound, Fraction(deg) <= bound)
