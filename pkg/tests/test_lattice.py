"""Geometries, regions, partitions, generator enumeration."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabtee.codes import get_code
from stabtee.lattice import (
    Geometry,
    Partition,
    Region,
    concave_partition,
    enumerate_generators,
    rectangular_partition,
)
def test_site_index_plane_layout():
    geom = Geometry.plane(4, 3)
    assert geom.n_sites == 12
    seen = {geom.site_index(n, m) for n, m in geom.sites()}
    assert seen == set(range(12))


def test_site_index_wraps_torus():
    geom = Geometry.torus(4, 3)
    assert geom.site_index(4, 0) == geom.site_index(0, 0)
    assert geom.site_index(-1, 2) == geom.site_index(3, 2)
    assert geom.site_index(2, 3) == geom.site_index(2, 0)
    assert geom.site_index(2, -1) == geom.site_index(2, 2)


def test_site_index_cylinder_wraps_only_y():
    geom = Geometry.cylinder(5, 3)
    assert geom.site_index(1, 3) == geom.site_index(1, 0)
    with pytest.raises(ValueError):
        geom.site_index(5, 0)
    with pytest.raises(ValueError):
        geom.site_index(-1, 0)


def test_plane_rejects_out_of_range():
    geom = Geometry.plane(3, 3)
    with pytest.raises(ValueError):
        geom.site_index(0, 3)


boxes = st.tuples(
    st.integers(-3, 3), st.integers(1, 4), st.integers(-3, 3), st.integers(1, 4)
).map(lambda t: (t[0], t[0] + t[1], t[2], t[2] + t[3]))


@given(boxes, boxes)
def test_region_algebra(b1, b2):
    r1, r2 = Region.from_box(*b1), Region.from_box(*b2)
    u = r1 | r2
    i = r1 & r2
    assert len(u) + len(i) == len(r1) + len(r2)
    assert (r1 - r2).isdisjoint(r2)
    assert i.issubset(r1) and i.issubset(r2)
    assert r1.issubset(u)


@given(boxes, st.integers(-2, 2), st.integers(-2, 2))
def test_region_translate_preserves_size(b, dx, dy):
    r = Region.from_box(*b)
    t = r.translate(dx, dy)
    assert len(t) == len(r)
    assert t.translate(-dx, -dy) == r


def test_region_dilate_grows_box():
    r = Region.from_box(0, 1, 0, 1)
    d = r.dilate(1)
    assert d == Region.from_box(-1, 2, -1, 2)
    assert r.dilate(0) == r


def test_region_dilate_respects_geometry_bounds():
    geom = Geometry.plane(3, 3)
    r = Region.from_box(0, 1, 0, 1)
    d = r.dilate(2, geom)
    for site in [(-1, 0), (0, -1), (3, 0)]:
        assert site not in d
    assert (2, 2) in d


def test_empty_region():
    e = Region.empty()
    assert e.is_empty()
    assert len(e) == 0
    assert e.bounding_box() is None


@pytest.mark.parametrize("L", [1, 2, 3])
def test_rectangular_partition_tiles_frame(L):
    part = rectangular_partition(L)
    frame = part.frame()
    tiles = [part.a, part.b, part.c, part.d]
    for i in range(len(tiles)):
        for j in range(i + 1, len(tiles)):
            assert tiles[i].isdisjoint(tiles[j])
    assert Region.union_of(tiles) == frame
    assert len(frame) == 9 * L * L
    assert len(part.a) == len(part.c) == L * L
    assert len(part.d) == L * L


@pytest.mark.parametrize("L", [1, 2, 3])
def test_concave_partition_tiles_frame(L):
    part = concave_partition(L)
    frame = part.frame()
    tiles = [part.a, part.b, part.c, part.d]
    for i in range(len(tiles)):
        for j in range(i + 1, len(tiles)):
            assert tiles[i].isdisjoint(tiles[j])
    assert Region.union_of(tiles) == frame
    assert len(frame) == 15 * L * L
    # hole is a tall bar: touching A along one side but wrapping two corners
    assert len(part.d) == 3 * L * L


def test_partition_combined_regions():
    part = rectangular_partition(2)
    assert part.abc == part.a | part.b | part.c
    assert part.ab == part.a | part.b
    assert part.bc == part.b | part.c
    assert part.classify((0, 0)) == "B"
    assert part.classify((2, 2)) == "D"
    assert part.classify((0, 2)) == "A"
    assert part.classify((7, 7)) == "E"


def test_partition_render_shapes():
    rect = rectangular_partition(1).render_text(pad=0)
    assert rect.splitlines() == ["BBB", "ADC", "BBB"]
    conc = concave_partition(1)
    # D spans three rows in the middle column
    col = [conc.classify((1, m)) for m in range(5)]
    assert col == ["B", "D", "D", "D", "B"]
    sides = [conc.classify((0, m)) for m in range(5)]
    assert sides == ["B", "B", "A", "B", "B"]


def test_enumerate_generators_counts():
    code = get_code("toric")
    geom = Geometry.torus(4, 4)
    window = Region.from_box(0, 4, 0, 4)
    rows = enumerate_generators(code, geom, window)
    assert len(rows) == code.num_generators * 16


def test_site_indices_region():
    geom = Geometry.torus(3, 3)
    r = Region.from_box(0, 2, 0, 1)
    assert r.site_indices(geom) == frozenset(
        {geom.site_index(0, 0), geom.site_index(1, 0)}
    )
