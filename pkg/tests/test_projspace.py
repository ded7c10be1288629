import numpy as np
import pytest

from hermsurf.projspace import GeometryError, ProjectiveSpace, ProjLine, ProjPlane, ProjPoint

from conftest import ctx_for


def space(q):
    return ProjectiveSpace(ctx_for(q))


@pytest.mark.parametrize("q,points,lines", [(2, 85, 357), (3, 820, 7462)])
def test_enumeration_counts(q, points, lines):
    sp = space(q)
    pts = list(sp.enumerate_points())
    assert len(pts) == len(set(pts)) == points
    ls = list(sp.enumerate_lines())
    assert len(ls) == len(set(ls)) == lines == sp.num_lines
    assert all(len(set(sp.line_points(L))) == sp.s + 1 for L in ls[:: max(1, len(ls) // 200)])


def test_first_point_and_plane():
    sp = space(2)
    assert next(sp.enumerate_points()) == ProjPoint((1, 0, 0, 0))
    assert next(sp.enumerate_planes()) == ProjPlane((1, 0, 0, 0))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_duality_and_plane_sizes(q):
    sp = space(q)
    planes = list(sp.enumerate_planes())
    assert len(planes) == sp.num_points
    for pl in planes[:: max(1, len(planes) // 20)]:
        assert len(set(sp.plane_points(pl))) == sp.s ** 2 + sp.s + 1


def test_index_roundtrip():
    sp = space(3)
    for i, P in enumerate(sp.enumerate_points()):
        assert sp.index(P) == i
        assert sp.coords_at(i) == P.coords
    arr = sp.points_array
    assert (sp.index_array(arr) == np.arange(len(arr))).all()


def test_line_through_examples():
    sp = space(2)
    L = sp.line_through(sp.point([1, 0, 0, 0]), sp.point([0, 1, 0, 0]))
    assert L == sp.line_of_planes([0, 0, 1, 0], [0, 0, 0, 1])
    L2 = sp.line_through(sp.point([1, 1, 0, 0]), sp.point([0, 0, 1, 1]))
    assert L2.basis == ((1, 1, 0, 0), (0, 0, 1, 1))
    with pytest.raises(GeometryError):
        sp.line_through(sp.point([1, 0, 0, 0]), sp.point([1, 0, 0, 0]))


def test_plane_through_examples():
    sp = space(2)
    L = sp.line_of_planes([0, 0, 1, 0], [0, 0, 0, 1])
    assert sp.plane_through(L, sp.point([0, 0, 1, 0])) == ProjPlane((0, 0, 0, 1))
    assert sp.plane_through(L, sp.point([0, 0, 0, 1])) == ProjPlane((0, 0, 1, 0))
    with pytest.raises(GeometryError):
        sp.plane_through(L, sp.point([1, 1, 0, 0]))


def test_meet_planes_examples():
    sp = space(2)
    assert sp.meet_planes(sp.plane([0, 0, 1, 0]), sp.plane([0, 0, 0, 1])) == \
        sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    assert sp.meet_planes(sp.plane([1, 0, 0, 0]), sp.plane([0, 1, 0, 0])) == \
        sp.line([[0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(GeometryError):
        sp.meet_planes(sp.plane([1, 0, 0, 0]), sp.plane([1, 0, 0, 0]))


@pytest.mark.parametrize("q,size", [(2, 5), (3, 10)])
def test_book_of_planes(q, size):
    sp = space(q)
    L = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    book = sp.book_of_planes(L)
    assert len(book) == len(set(book)) == size
    assert all(pl.dual[0] == pl.dual[1] == 0 for pl in book)
    for a in book[1:]:
        assert sp.meet_planes(book[0], a) == L


def test_every_line_in_s_plus_one_planes_q2():
    sp = space(2)
    planes = list(sp.enumerate_planes())
    for L in sp.enumerate_lines():
        n = sum(sp.line_in_plane(L, pl) for pl in planes)
        assert n == 5


def test_every_pair_of_planes_meets_in_a_line_q2():
    sp = space(2)
    planes = list(sp.enumerate_planes())
    for i in range(0, len(planes), 7):
        for j in range(i + 1, len(planes)):
            L = sp.meet_planes(planes[i], planes[j])
            assert sp.line_in_plane(L, planes[i]) and sp.line_in_plane(L, planes[j])


def test_adapted_coords_images():
    sp = space(3)
    rng = np.random.default_rng(0)
    e01 = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    e23 = sp.line([[0, 0, 1, 0], [0, 0, 0, 1]])
    for _ in range(50):
        M = sp.random_projectivity(rng)
        L = sp.apply_line(M, e01)
        L2 = sp.apply_line(M, e23)
        A = sp.adapted_coords(L, L2)
        assert sp.apply_line(A, e01) == L
        assert sp.apply_line(A, e23) == L2
        for r in ((1, 0, 0, 0), (0, 1, 0, 0)):
            assert sp.on_line(sp.apply(A, ProjPoint(r)), L)
        assert sp.apply_line(sp.adapted_coords(L), e01) == L


def test_adapted_coords_swap_and_error():
    sp = space(2)
    e01 = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    e23 = sp.line([[0, 0, 1, 0], [0, 0, 0, 1]])
    A = sp.adapted_coords(e23, e01)
    assert sp.apply_line(A, e01) == e23
    meeting = sp.line([[1, 0, 0, 0], [0, 0, 1, 0]])
    with pytest.raises(GeometryError):
        sp.adapted_coords(e01, meeting)


def test_canonicalization_idempotent():
    sp = space(4)
    rng = np.random.default_rng(1)
    for _ in range(100):
        v = rng.integers(0, sp.s, size=4)
        if not v.any():
            continue
        P = sp.point(v.tolist())
        assert sp.point(P.coords) == P
        pl = sp.plane(v.tolist())
        assert sp.plane(pl.dual) == pl
        rows = rng.integers(0, sp.s, size=(2, 4)).tolist()
        try:
            L = sp.line(rows)
        except GeometryError:
            continue
        assert sp.line(L.basis) == L
        lam = int(rng.integers(1, sp.s))
        scaled = [[sp.ctx.mul(lam, x) for x in rows[0]], rows[1]]
        assert sp.line(scaled) == L


def test_lines_through_point_and_in_plane():
    sp = space(3)
    P = sp.point([1, 2, 0, 1])
    lines = sp.lines_through_point(P)
    assert len(set(lines)) == 91 and all(sp.on_line(P, L) for L in lines)
    pl = sp.plane_through(lines[0], sp.point([0, 0, 1, 0]) if not sp.on_line(sp.point([0, 0, 1, 0]), lines[0])
                          else sp.point([0, 0, 0, 1]))
    inplane = sp.lines_through_point_in_plane(P, pl)
    assert len(set(inplane)) == 10 and all(sp.line_in_plane(L, pl) for L in inplane)


def test_projectivity_rejects_singular():
    sp = space(2)
    with pytest.raises(GeometryError):
        sp.projectivity([[1, 0, 0, 0]] * 4)


def test_bad_coordinates():
    sp = space(2)
    with pytest.raises(GeometryError):
        sp.point([0, 0, 0, 0])
    with pytest.raises(ValueError):
        sp.point([7, 0, 0, 0])
    with pytest.raises(GeometryError):
        sp.line([[1, 0, 0, 0], [1, 0, 0, 0]])
