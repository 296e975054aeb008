"""Half-plane groups, boundary gauge operators, anyon solving."""

import pytest

from stabtee.boundary import (
    BoundaryError,
    HalfPlaneContext,
    anyon_search_bound,
    bgo_report,
    bulk_stabilizer_basis,
    classify_bgo,
    decomposition_height_bound,
    half_plane_group_generators,
    half_plane_order,
    interleaved_positions,
    is_boundary_gauge,
    reflected_code,
    secondary_bgo_dimension,
    solve_trivial_anyon,
    verify_height_bound,
)
from stabtee.codes import CodeSpec, get_code, resolve_code
from stabtee.laurent import LaurentPoly, parse_poly
from stabtee.pauli import PauliVector, syndrome


def _pv(p, q, *srcs):
    return PauliVector(p=p, q=q, comps=tuple(parse_poly(p, s) for s in srcs))


def test_interleaved_positions():
    assert interleaved_positions(1) == (0, 1)
    assert interleaved_positions(2) == (0, 2, 1, 3)
    assert interleaved_positions(3) == (0, 3, 1, 4, 2, 5)


def test_half_plane_order_shape():
    order = half_plane_order(2)
    assert order.poly_order == "ymax-first"
    assert order.module_style == "TOP"
    assert order.position_order == (0, 2, 1, 3)


def test_reflected_code_involution(toric):
    twice = reflected_code(reflected_code(toric))
    assert tuple(g.comps for g in twice.generators) == tuple(
        g.comps for g in toric.generators
    )


def test_context_rejects_bad_side(toric):
    with pytest.raises(BoundaryError):
        HalfPlaneContext(toric, side="left")
    with pytest.raises(BoundaryError):
        HalfPlaneContext(toric, width=1)
    with pytest.raises(BoundaryError):
        HalfPlaneContext(toric, height=1)


def test_bounds_grow_with_inputs(toric):
    assert decomposition_height_bound(toric, 4) > decomposition_height_bound(toric, 2)
    assert anyon_search_bound(toric, 5) > anyon_search_bound(toric, 1)


def test_bulk_basis_matches_module_example():
    # four-component worked example, wired through the half-plane path
    code = CodeSpec(
        name="worked-example",
        p=2,
        q=2,
        generators=(
            _pv(2, 2, "1", "x", "x*y", "x^2*y"),
            _pv(2, 2, "x + x*y", "x^2", "y", "x + x*y"),
        ),
    )
    basis = bulk_stabilizer_basis(HalfPlaneContext(code, side="upper"))
    expected = {
        tuple(parse_poly(2, s) for s in ("1 + x^2 + x^2*y", "x + x^3", "0", "x^2")),
        tuple(parse_poly(2, s) for s in ("x + x*y", "x^2", "y", "x + x*y")),
    }
    assert set(basis.elements) == expected
    assert basis.reduced


def test_half_plane_family_is_bulk(toric):
    ctx = HalfPlaneContext(toric, side="upper")
    family = half_plane_group_generators(ctx)
    assert family
    for g in family:
        assert is_boundary_gauge(ctx, g)
        assert classify_bgo(ctx, g) == "bulk"


def test_fitting_translate_is_bulk(toric):
    ctx = HalfPlaneContext(toric, side="upper")
    g = toric.generators[0].translate(0, 1)
    assert classify_bgo(ctx, g) == "bulk"


def test_truncated_star_is_primary(toric):
    # drop the below-cut rows of a straddling generator translate
    ctx = HalfPlaneContext(toric, side="upper")
    op = _pv(2, 2, "0", "x", "0", "0")
    assert is_boundary_gauge(ctx, op)
    assert classify_bgo(ctx, op) == "primary"


def test_non_gauge_operator_rejected(toric):
    ctx = HalfPlaneContext(toric, side="upper")
    op = _pv(2, 2, "1", "0", "0", "0")
    assert not is_boundary_gauge(ctx, op)
    with pytest.raises(BoundaryError):
        classify_bgo(ctx, op)


@pytest.mark.parametrize(
    "source,expected",
    [
        ("builtin:toric", 0),
        ("builtin:wen", 0),
        ("builtin:cluster2d", 0),
        ("cluster2d_paper", 1),
        ("cnot_tc_case1", 1),
    ],
)
def test_secondary_dimension_per_side(source, expected):
    code = resolve_code(source)
    for side in ("upper", "lower"):
        assert secondary_bgo_dimension(HalfPlaneContext(code, side=side)) == expected


@pytest.mark.parametrize("h", [1, 2])
def test_secondary_dimension_tracks_displacement(h):
    code = get_code("shifted_toric", h=h)
    for side in ("upper", "lower"):
        assert secondary_bgo_dimension(HalfPlaneContext(code, side=side)) == h


@pytest.mark.slow
def test_secondary_dimension_displacement_three():
    code = get_code("shifted_toric", h=3)
    for side in ("upper", "lower"):
        assert secondary_bgo_dimension(HalfPlaneContext(code, side=side)) == 3


@pytest.mark.slow
def test_secondary_dimension_qudit():
    code = get_code("qudit_toric", p=3)
    for side in ("upper", "lower"):
        assert secondary_bgo_dimension(HalfPlaneContext(code, side=side)) == 0


def test_case3_report_and_representatives():
    code = resolve_code("cnot_tc_case3")
    ctx = HalfPlaneContext(code, side="upper")
    report = bgo_report(ctx)
    assert report.dimension == 2
    assert report.gauge_dimension - report.primary_dimension == 2
    assert len(report.representatives) == 2
    for rep in report.representatives:
        assert classify_bgo(ctx, rep) == "secondary"
    # the two types are single-species operators one row apart
    comps = {rep.comps for rep in report.representatives}
    assert comps == {
        tuple(parse_poly(2, s) for s in ("1", "0", "0", "0")),
        tuple(parse_poly(2, s) for s in ("y", "0", "0", "0")),
    }


def test_report_str_mentions_counts():
    code = resolve_code("cnot_tc_case1")
    report = bgo_report(HalfPlaneContext(code, side="lower"))
    text = str(report)
    assert "lower" in text
    assert "1 secondary" in text


def test_solve_zero_syndrome(toric):
    target = tuple(LaurentPoly.zero(2) for _ in toric.generators)
    sol = solve_trivial_anyon(toric, target)
    assert sol is not None
    assert sol.is_zero()


def test_solve_adjacent_pair(toric):
    probe = _pv(2, 2, "0", "0", "1", "0")
    target = syndrome(toric.generators, probe)
    sol = solve_trivial_anyon(toric, target)
    assert sol is not None
    assert syndrome(toric.generators, sol) == target
    assert sol == probe


def test_solutions_respect_search_bound(toric, wen):
    # any syndrome produced by a small operator is solved inside the
    # guarantee box around it
    for code, op in [
        (toric, _pv(2, 2, "1 + x*y", "0", "y", "0")),
        (wen, _pv(2, 1, "1 + x", "y")),
    ]:
        target = syndrome(code.generators, op)
        sol = solve_trivial_anyon(code, target)
        assert sol is not None
        box = sol.support_box()
        if box is None:
            continue
        side = max(box[1] - box[0] + 1, box[3] - box[2] + 1)
        seed_box = op.support_box()
        seed = max(seed_box[1] - seed_box[0] + 1, seed_box[3] - seed_box[2] + 1)
        assert side <= anyon_search_bound(code, seed)


def test_single_violation_unsolvable_wen(wen):
    target = (LaurentPoly.constant(2, 1),)
    assert solve_trivial_anyon(wen, target) is None


@pytest.mark.slow
def test_single_violation_unsolvable_toric_capped(toric):
    target = (LaurentPoly.constant(2, 1), LaurentPoly.zero(2))
    assert solve_trivial_anyon(toric, target, max_box_side=31) is None


def test_height_bound_on_truncation(toric):
    ctx = HalfPlaneContext(toric, side="upper")
    op = _pv(2, 2, "0", "x", "0", "0")
    report = verify_height_bound(ctx, op)
    assert report.found_height is not None
    assert report.within_bound
    assert report.found_height <= report.bound_height
    assert report.contributors
    for kind, mu, n, m, coeff in report.contributors:
        assert kind in ("truncated", "fitting")
        assert 0 <= mu < toric.num_generators
        assert coeff % 2 == 1


def test_height_bound_secondary_reports_none():
    code = resolve_code("cnot_tc_case3")
    ctx = HalfPlaneContext(code, side="upper")
    rep = _pv(2, 2, "1", "0", "0", "0")
    report = verify_height_bound(ctx, rep)
    assert report.found_height is None
    assert not report.within_bound
    assert "secondary" in str(report)
