"""Laurent polynomials in two variables with coefficients in GF(p).

A polynomial is a finite formal sum ``sum c_{n,m} x^n y^m`` with integer
exponents of either sign and coefficients in [1, p).  Zero coefficients are
never stored.  Terms are kept in a canonical order, ascending by
``(yexp, xexp)``, so equal polynomials compare and serialize identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .fp_linalg import is_prime

__all__ = ["Monomial", "Window", "LaurentPoly", "parse_poly"]


@dataclass(frozen=True, order=True)
class Monomial:
    """A single monomial x^xexp y^yexp (exponents may be negative)."""

    xexp: int
    yexp: int

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(self.xexp + other.xexp, self.yexp + other.yexp)

    def antipode(self) -> "Monomial":
        return Monomial(-self.xexp, -self.yexp)

    def divides(self, other: "Monomial") -> bool:
        """Whole-ring divisibility for nonnegative exponents."""
        return self.xexp <= other.xexp and self.yexp <= other.yexp

    def quotient(self, other: "Monomial") -> "Monomial":
        return Monomial(self.xexp - other.xexp, self.yexp - other.yexp)

    def total_degree(self) -> int:
        return self.xexp + self.yexp

    def __str__(self) -> str:
        parts = []
        if self.xexp:
            parts.append("x" if self.xexp == 1 else f"x^{self.xexp}")
        if self.yexp:
            parts.append("y" if self.yexp == 1 else f"y^{self.yexp}")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Window:
    """A half-open axis-aligned window [x_lo, x_hi) x [y_lo, y_hi).

    ``None`` for a bound means unbounded on that side.
    """

    x_lo: Optional[int] = None
    x_hi: Optional[int] = None
    y_lo: Optional[int] = None
    y_hi: Optional[int] = None

    def contains(self, n: int, m: int) -> bool:
        if self.x_lo is not None and n < self.x_lo:
            return False
        if self.x_hi is not None and n >= self.x_hi:
            return False
        if self.y_lo is not None and m < self.y_lo:
            return False
        if self.y_hi is not None and m >= self.y_hi:
            return False
        return True

    def intersect(self, other: "Window") -> "Window":
        def lo(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return max(a, b)

        def hi(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return min(a, b)

        return Window(
            x_lo=lo(self.x_lo, other.x_lo),
            x_hi=hi(self.x_hi, other.x_hi),
            y_lo=lo(self.y_lo, other.y_lo),
            y_hi=hi(self.y_hi, other.y_hi),
        )


TermsLike = Union[Mapping[Monomial, int], Iterable[tuple[Monomial, int]]]


@dataclass(frozen=True)
class LaurentPoly:
    """Immutable Laurent polynomial over GF(p)."""

    p: int
    terms: tuple[tuple[Monomial, int], ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        prev = None
        for mono, c in self.terms:
            if not (1 <= c < self.p):
                raise ValueError(f"coefficient {c} out of range for GF({self.p})")
            key = (mono.yexp, mono.xexp)
            if prev is not None and key <= prev:
                raise ValueError("terms not in canonical order")
            prev = key

    @classmethod
    def from_terms(cls, p: int, terms: TermsLike) -> "LaurentPoly":
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            acc[mono] = (acc.get(mono, 0) + c) % p
        kept = [(m, c) for m, c in acc.items() if c]
        kept.sort(key=lambda mc: (mc[0].yexp, mc[0].xexp))
        return cls(p=p, terms=tuple(kept))

    @classmethod
    def zero(cls, p: int) -> "LaurentPoly":
        return cls(p=p, terms=())

    @classmethod
    def constant(cls, p: int, c: int) -> "LaurentPoly":
        return cls.from_terms(p, [(Monomial(0, 0), c)])

    @classmethod
    def monomial(cls, p: int, xexp: int, yexp: int, c: int = 1) -> "LaurentPoly":
        return cls.from_terms(p, [(Monomial(xexp, yexp), c)])

    @cached_property
    def _map(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, xexp: int, yexp: int) -> int:
        return self._map.get(Monomial(xexp, yexp), 0)

    def const(self) -> int:
        """Coefficient of the constant monomial x^0 y^0."""
        return self.coeff(0, 0)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        return LaurentPoly.from_terms(self.p, list(self.terms) + list(other.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + other.scale(self.p - 1)

    def __neg__(self) -> "LaurentPoly":
        return self.scale(self.p - 1)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        acc: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mono = m1.mul(m2)
                acc[mono] = (acc.get(mono, 0) + c1 * c2) % self.p
        return LaurentPoly.from_terms(self.p, acc)

    def scale(self, c: int) -> "LaurentPoly":
        c %= self.p
        if c == 0:
            return LaurentPoly.zero(self.p)
        return LaurentPoly.from_terms(self.p, [(m, (co * c) % self.p) for m, co in self.terms])

    def shift(self, xexp: int, yexp: int) -> "LaurentPoly":
        """Multiply by the monomial x^xexp y^yexp."""
        if xexp == 0 and yexp == 0:
            return self
        return LaurentPoly(
            p=self.p,
            terms=tuple((Monomial(m.xexp + xexp, m.yexp + yexp), c) for m, c in self.terms),
        )

    def antipode(self) -> "LaurentPoly":
        """The exponent-negation map x -> x^-1, y -> y^-1."""
        return LaurentPoly.from_terms(self.p, [(m.antipode(), c) for m, c in self.terms])

    def reflect_y(self) -> "LaurentPoly":
        """Negate only the y exponents (y -> y^-1)."""
        return LaurentPoly.from_terms(self.p, [(Monomial(m.xexp, -m.yexp), c) for m, c in self.terms])

    def project(self, window: Window) -> "LaurentPoly":
        """Keep only the terms whose monomial lies inside the window.

        Idempotent, and projecting onto W then W' equals projecting onto
        the intersection of W and W'.
        """
        kept = tuple((m, c) for m, c in self.terms if window.contains(m.xexp, m.yexp))
        if len(kept) == len(self.terms):
            return self
        return LaurentPoly(p=self.p, terms=kept)

    def support_box(self) -> Optional[tuple[int, int, int, int]]:
        """Tight bounding box (xmin, xmax, ymin, ymax) of the support, or None."""
        if not self.terms:
            return None
        xs = [m.xexp for m, _ in self.terms]
        ys = [m.yexp for m, _ in self.terms]
        return (min(xs), max(xs), min(ys), max(ys))

    def total_degree(self) -> int:
        """Max of xexp + yexp over terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m.total_degree() for m, _ in self.terms)

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            if c == 1 and (m.xexp or m.yexp):
                parts.append(str(m))
            elif m.xexp or m.yexp:
                parts.append(f"{c}*{m}")
            else:
                parts.append(str(c))
        return " + ".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<coeff>\d+)|(?P<var>[xy])(?:\^(?P<exp>-?\d+))?|(?P<op>[+*-]))"
)


def parse_poly(p: int, text: str) -> LaurentPoly:
    """Parse expressions like ``"x^3 + y + y^2"`` or ``"2*x*y^-1 + 1"``.

    Supported syntax: terms joined by + or -, each term a product (with *)
    of an optional integer coefficient and powers of x and y.  Exponents may
    be negative.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    terms: list[tuple[Monomial, int]] = []
    pos = 0
    sign = 1
    cur_coeff: Optional[int] = None
    cur_x = 0
    cur_y = 0
    in_term = False

    def flush():
        nonlocal cur_coeff, cur_x, cur_y, in_term, sign
        if not in_term:
            raise ValueError(f"dangling operator in polynomial: {text!r}")
        c = 1 if cur_coeff is None else cur_coeff
        terms.append((Monomial(cur_x, cur_y), sign * c))
        cur_coeff, cur_x, cur_y, in_term, sign = None, 0, 0, False, 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        pos = m.end()
        if m.group("coeff") is not None:
            if in_term and cur_coeff is not None:
                raise ValueError(f"two coefficients in one term: {text!r}")
            cur_coeff = int(m.group("coeff"))
            in_term = True
        elif m.group("var") is not None:
            e = int(m.group("exp")) if m.group("exp") is not None else 1
            if m.group("var") == "x":
                cur_x += e
            else:
                cur_y += e
            in_term = True
        elif m.group("op") == "*":
            if not in_term:
                raise ValueError(f"misplaced '*' in {text!r}")
        else:
            if in_term:
                flush()
            elif terms:
                raise ValueError(f"consecutive operators in {text!r}")
            if m.group("op") == "-":
                sign = -1
    flush()
    return LaurentPoly.from_terms(p, [(mono, c % p) for mono, c in terms])
