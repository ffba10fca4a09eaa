from fractions import Fraction as F

import pytest

from visipoly import QueryOutsidePolygon, locate, prepare
from visipoly.exact import orient
from visipoly.expansion import InFace, OnEdge, OnVertex
from visipoly.polygon import signed_area2
from visipoly.scenarios import gen_comb, gen_random_simple, gen_random_with_holes, lattice_polygon


def _check_domain(poly, delaunay=True):
    dom = prepare(poly, delaunay)
    tris = dom.interior_triangles()
    assert len(tris) == dom.interior_count == poly.n + 2 * poly.h - 2
    assert all(orient(*t) > 0 for t in tris)
    # interior triangles tile P exactly
    assert sum(signed_area2(t) for t in tris) == poly.area2()
    return dom


def test_square_counts(square, holed):
    assert _check_domain(square).interior_count == 2
    assert _check_domain(holed).interior_count == 8


@pytest.mark.parametrize("k", [1, 4])
def test_comb_counts(k):
    _check_domain(gen_comb(k).polygon)


@pytest.mark.parametrize("delaunay", [True, False])
@pytest.mark.parametrize("seed", range(4))
def test_random_domains(seed, delaunay):
    _check_domain(gen_random_simple(40, seed), delaunay)
    _check_domain(gen_random_with_holes(30, 3, seed), delaunay)
    _check_domain(lattice_polygon(30, seed), delaunay)


def test_prepare_is_deterministic():
    p = gen_random_with_holes(40, 4, 11)
    assert prepare(p).snapshot() == prepare(p).snapshot()


def test_locate(square, holed):
    dom = prepare(square)
    assert isinstance(locate(dom, (F(1, 2), F(1, 4))), InFace)
    # (1/2, 1/2) is the midpoint of the square's only diagonal
    assert isinstance(locate(dom, (F(1, 2), F(1, 2))), OnEdge)
    assert isinstance(locate(dom, (0, 0)), OnVertex)
    with pytest.raises(QueryOutsidePolygon):
        locate(prepare(holed), (3, 3))
