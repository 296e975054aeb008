"""Shared fixtures, strategies, and random-code factories."""

from __future__ import annotations

import random
from typing import Optional

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stabtee.codes import CodeSpec, get_code
from stabtee.laurent import LaurentPoly, Monomial
from stabtee.pauli import PauliVector

settings.register_profile(
    "suite",
    settings(
        max_examples=40,
        deadline=None,
        suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
    ),
)
settings.load_profile("suite")


# ---------------------------------------------------------------------------
# hypothesis strategies

def monomials(span: int = 2):
    e = st.integers(min_value=-span, max_value=span)
    return st.builds(Monomial, e, e)


def laurent_polys(p: int = 2, span: int = 2, max_terms: int = 4):
    coeff = st.integers(min_value=1, max_value=p - 1)
    return st.lists(
        st.tuples(monomials(span), coeff), min_size=0, max_size=max_terms
    ).map(lambda terms: LaurentPoly.from_terms(p, terms))


def pauli_vectors(p: int = 2, q: int = 1, span: int = 2):
    return st.lists(
        laurent_polys(p, span), min_size=2 * q, max_size=2 * q
    ).map(lambda comps: PauliVector(p=p, q=q, comps=tuple(comps)))


# ---------------------------------------------------------------------------
# deterministic random codes

def random_poly(rng: random.Random, p: int, max_terms: int = 3, span: int = 2) -> LaurentPoly:
    n = rng.randint(1, max_terms)
    terms = [
        (Monomial(rng.randint(0, span), rng.randint(0, span)), rng.randint(1, p - 1))
        for _ in range(n)
    ]
    return LaurentPoly.from_terms(p, terms)


def random_commuting_pair(rng: random.Random, p: int = 2) -> tuple[PauliVector, PauliVector]:
    """Two-species cross-paired generators; they commute for any a, b.

    gx = (a, b | 0, 0) and gz = (0, 0 | antipode(b), -antipode(a)) give
    pairing a*~b - b*~a = 0 identically, independent of the choice.
    """
    while True:
        a = random_poly(rng, p)
        b = random_poly(rng, p)
        if not a.is_zero() or not b.is_zero():
            break
    zero = LaurentPoly.zero(p)
    za = a.antipode() if p == 2 else a.antipode().scale(p - 1)
    gx = PauliVector(p=p, q=2, comps=(a, b, zero, zero))
    gz = PauliVector(p=p, q=2, comps=(zero, zero, b.antipode(), za))
    return gx, gz


def random_commuting_code(rng: random.Random, p: int = 2, name: str = "random") -> CodeSpec:
    gx, gz = random_commuting_pair(rng, p)
    return CodeSpec(name=name, p=p, q=2, generators=(gx, gz))


# ---------------------------------------------------------------------------
# fixtures

@pytest.fixture(scope="session")
def toric() -> CodeSpec:
    return get_code("toric")


@pytest.fixture(scope="session")
def trivial() -> CodeSpec:
    return get_code("trivial")


@pytest.fixture(scope="session")
def wen() -> CodeSpec:
    return get_code("wen")


@pytest.fixture(scope="session")
def bb33() -> CodeSpec:
    return get_code("bb33")
