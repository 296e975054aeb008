"""Group counting, annulus combinations, cylinder spectra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import enumerated_log_group_size, group_count_cylinder_entropy
from stabtee.codes import get_code, resolve_code
from stabtee.entropy import (
    BufferPolicy,
    ConvergenceError,
    EntropyValue,
    cylinder_entropy,
    entropy_pure,
    entropy_region,
    levin_wen_gamma,
    log_group_size,
    scan_cylinder,
    stee,
    strict_buffer,
    torus_logical_dimension,
)
from stabtee.lattice import Geometry, Region, concave_partition, rectangular_partition
from stabtee.pauli import instantiate


def test_entropy_value_arithmetic():
    a = EntropyValue(Fraction(3, 2), 2)
    b = EntropyValue(Fraction(1, 2), 2)
    assert (a + b).value == 2
    assert (a - b).value == 1
    assert a.scale(2).value == 3
    assert b < a and b <= a
    assert str(a) == "3/2 dits (base 2)"


def test_entropy_value_rejects_mixed_base():
    a = EntropyValue(Fraction(1), 2)
    b = EntropyValue(Fraction(1), 3)
    with pytest.raises(ValueError):
        _ = a + b


def test_entropy_value_rejects_non_half_integer():
    with pytest.raises(ValueError):
        EntropyValue(Fraction(1, 3), 2)


def test_log_group_size_empty_region(toric):
    geom = Geometry.torus(6, 6)
    assert log_group_size(toric, geom, Region.empty(), beta=4) == 0


def test_log_group_size_full_torus(toric):
    # full torus: all q*N generators independent up to the two global
    # relations, so the group has size 2^(N-1) per species pairing
    geom = Geometry.torus(4, 4)
    full = Region.from_box(0, 4, 0, 4)
    m = log_group_size(toric, geom, full, beta=2)
    k = torus_logical_dimension(toric, 4, 4)
    assert m == toric.q * 16 - k
    assert k == 2


def test_entropy_region_single_site(toric):
    geom = Geometry.torus(6, 6)
    r = Region.from_box(2, 3, 2, 3)
    # no stabilizer fits in one site; entropy is maximal
    s = entropy_region(toric, geom, r, beta=4)
    assert s.value == toric.q


def test_log_group_size_matches_enumeration_oracle(toric):
    geom = Geometry.torus(3, 3)
    for x_lo in range(3):
        for w in (1, 2):
            r = Region.from_box(x_lo, x_lo + w, 0, 2)
            got = log_group_size(toric, geom, r, beta=3)
            want = enumerated_log_group_size(toric, geom, r)
            assert got == want


def test_gamma_toric(toric):
    gr = levin_wen_gamma(toric, rectangular_partition(2))
    gc = levin_wen_gamma(toric, concave_partition(2))
    assert gr.value == 1
    assert gc.value == 1


def test_gamma_trivial(trivial):
    assert levin_wen_gamma(trivial, rectangular_partition(2)).value == 0
    assert levin_wen_gamma(trivial, concave_partition(2)).value == 0


def test_stee_shifted_toric():
    code = get_code("shifted_toric", h=1)
    delta, gr, gc, _ = stee(code)
    assert gr.value == 2
    assert gc.value == 1
    assert delta.value == 1


def test_stee_fixed_partition_size(toric):
    delta, gr, gc, used = stee(toric, L=3)
    assert used == 3
    assert delta.value == 0
    assert gr.value == gc.value == 1


def test_fixed_policy_agrees_with_auto(toric):
    loose = levin_wen_gamma(toric, rectangular_partition(2))
    fixed = levin_wen_gamma(
        toric, rectangular_partition(2), BufferPolicy(mode="fixed", beta=6)
    )
    assert loose.value == fixed.value
    # the analytic buffer dominates anything the doubling loop would reach
    assert strict_buffer(toric) >= 2 * toric.reach()


def test_buffer_policy_validation():
    with pytest.raises(ValueError):
        BufferPolicy(mode="bogus")
    with pytest.raises(ValueError):
        BufferPolicy(mode="fixed")


def _pure_completion(code, geom):
    """All independent generator translates plus commuting centralizer picks."""
    import stabtee.fp_linalg as fl
    from stabtee.lattice import enumerate_generators
    from stabtee.pauli import finite_sympl

    full = Region.from_box(0, geom.ex, 0, geom.ey)
    n_qudits = code.q * geom.n_sites
    width = 2 * n_qudits

    def pack(vec):
        out = 0
        for j, v in enumerate(vec):
            if v:
                out |= 1 << j
        return out

    def unpack(bits):
        return tuple((bits >> j) & 1 for j in range(width))

    indep_bits: list[int] = []
    for (n, m), mu in enumerate_generators(code, geom, full):
        bits = pack(instantiate(code.generators[mu].translate(n, m), geom))
        if fl.gf2_rank(indep_bits + [bits]) > len(indep_bits):
            indep_bits.append(bits)
    # centralizer: v with sympl(g, v) = 0 for every generator; the
    # constraint row for g swaps its X and Z blocks
    constraint_cols = []
    for j in range(width):
        col = 0
        for i, g in enumerate(indep_bits):
            swapped = ((g >> n_qudits) | (g << n_qudits)) & ((1 << width) - 1)
            if (swapped >> j) & 1:
                col |= 1 << i
        constraint_cols.append(col)
    central = fl.gf2_left_kernel(constraint_cols)
    chosen = list(indep_bits)
    vecs = [unpack(b) for b in chosen]
    for cand_bits in central:
        if len(chosen) == n_qudits:
            break
        if fl.gf2_rank(chosen + [cand_bits]) == len(chosen):
            continue
        cand = unpack(cand_bits)
        if all(
            finite_sympl(2, code.q, geom.n_sites, cand, v) == 0 for v in vecs
        ):
            chosen.append(cand_bits)
            vecs.append(cand)
    assert len(chosen) == n_qudits
    return vecs


def test_pure_state_complement_symmetry(toric):
    # S_A = S_complement for any pure stabilizer state
    geom = Geometry.torus(3, 3)
    full_gens = _pure_completion(toric, geom)
    for region in [
        frozenset({geom.site_index(0, 0), geom.site_index(1, 0)}),
        frozenset({geom.site_index(0, 0)}),
        frozenset(
            {geom.site_index(0, 0), geom.site_index(1, 1), geom.site_index(2, 2)}
        ),
    ]:
        comp = frozenset(range(geom.n_sites)) - region
        sa = entropy_pure(2, toric.q, geom.n_sites, full_gens, region)
        sb = entropy_pure(2, toric.q, geom.n_sites, full_gens, comp)
        assert sa.value == sb.value


def test_cylinder_entropy_toric(toric):
    for l in range(3, 7):
        assert cylinder_entropy(toric, l).value == l - 1


def test_cylinder_entropy_matches_group_count_oracle(toric):
    for l in (3, 4, 5):
        got = cylinder_entropy(toric, l)
        assert got.value == group_count_cylinder_entropy(toric, l, 2 * l)


def _bb33_branch(l: int) -> tuple[int, int]:
    # (entropy, torus logical count) keyed by gcd(circumference, 12)
    import math

    g = math.gcd(l, 12)
    if g == 12:
        return 3 * l - 8, 16
    if g == 6:
        return 3 * l - 6, 12
    if g == 3:
        return 3 * l - 4, 8
    return 3 * l, 0


def test_scan_cylinder_bb33_branches():
    code = get_code("bb33")
    for l, s, k in scan_cylinder(code, 3, 8):
        want_s, want_k = _bb33_branch(l)
        assert s.value == want_s, (l, s.value)
        assert k == want_k, (l, k)


def test_scan_cylinder_torus_column(toric):
    rows = scan_cylinder(toric, 3, 5)
    for l, s, k in rows:
        assert k == 2
        assert s.value == l - 1


def test_convergence_error_raised(trivial):
    with pytest.raises(ConvergenceError):
        # a window that may never double: force zero doublings with a tiny cap
        cylinder_entropy(get_code("bb33"), 5, start_half_len=2, max_doublings=0)


def test_entropy_pure_rejects_incomplete(toric):
    geom = Geometry.torus(3, 3)
    with pytest.raises(ValueError):
        entropy_pure(2, toric.q, geom.n_sites, [], frozenset({0}))
