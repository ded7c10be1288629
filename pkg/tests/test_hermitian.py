import numpy as np
import pytest

from hermsurf.forms import HomogeneousForm
from hermsurf.hermitian import (DegenerateSurfaceError, HermitianError, HermitianMatrix,
                                HermitianSurface, LineClass, canonical_surface)
from hermsurf.projspace import GeometryError, ProjPlane

from conftest import ctx_for, surface_for


def brute_count(S):
    """Oracle: evaluate x^T A x^(q) point by point."""
    ctx = S.ctx
    n = 0
    for P in S.space.enumerate_points():
        acc = 0
        for i in range(4):
            for j in range(4):
                a = S.matrix.entries[i][j]
                acc = ctx.add(acc, ctx.mul(a, ctx.mul(P.coords[i], ctx.conj(P.coords[j]))))
        n += acc == 0
    return n


@pytest.mark.parametrize("q,n", [(2, 45), (3, 280)])
def test_canonical_surface_size_oracle(q, n):
    S = surface_for(q)
    assert len(S) == brute_count(S) == n == (q ** 3 + 1) * (q ** 2 + 1)


def test_rank_one_is_plane():
    S = canonical_surface(ctx_for(2), rank=1)
    assert len(S) == 21
    assert S.rank == 1
    with pytest.raises(DegenerateSurfaceError):
        S.classify_line(S.space.line([[1, 0, 0, 0], [0, 1, 0, 0]]))
    with pytest.raises(ValueError):
        canonical_surface(ctx_for(2), rank=5)


def test_contains_examples(S2):
    sp = S2.space
    assert S2.contains(sp.point([1, 1, 0, 0]))
    assert not S2.contains(sp.point([1, 0, 0, 0]))
    assert S2.contains(sp.point([1, 1, 1, 1]))


def test_contains_scale_invariant(S3):
    rng = np.random.default_rng(0)
    ctx = S3.ctx
    for _ in range(200):
        v = rng.integers(0, ctx.s, size=4).tolist()
        if not any(v):
            continue
        lam = int(rng.integers(1, ctx.s))
        w = [ctx.mul(lam, x) for x in v]
        assert (S3.value(v) == 0) == (S3.value(w) == 0)


def test_classify_line_examples(S2):
    sp = S2.space
    gen = sp.line_through(sp.point([1, 1, 0, 0]), sp.point([0, 0, 1, 1]))
    assert S2.classify_line(gen) is LineClass.GENERATOR
    assert S2.classify_line(sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])) is LineClass.SECANT
    tan = sp.line_through(sp.point([1, 1, 0, 0]), sp.point([0, 0, 1, 0]))
    assert S2.classify_line(tan) is LineClass.TANGENT


def test_polar_plane_examples(S2):
    sp = S2.space
    P = sp.point([1, 1, 0, 0])
    pl = S2.polar_plane(P)
    assert pl == ProjPlane((1, 1, 0, 0))
    assert S2.plane_count(pl) == 13
    gens = [L for L in S2.generators if sp.line_in_plane(L, pl)]
    assert len(gens) == 3 and all(sp.on_line(P, L) for L in gens)


def test_classify_plane_examples(S2, S3):
    sp = S2.space
    c = S2.classify_plane(sp.plane([1, 1, 0, 0]), check=True)
    assert c.tangent and c.point == sp.point([1, 1, 0, 0]) and c.count == 13
    c = S2.classify_plane(sp.plane([1, 0, 0, 0]), check=True)
    assert not c.tangent and c.count == 9
    assert S3.classify_plane(S3.space.plane([1, 0, 0, 0]), check=True).count == 28


@pytest.mark.parametrize("q", [2, 3])
def test_full_line_and_plane_spectrum(q):
    S = surface_for(q)
    sp = S.space
    counts = {S.line_count(L) for L in sp.enumerate_lines()}
    assert counts == {1, q + 1, q * q + 1}
    for pl in sp.enumerate_planes():
        S.classify_plane(pl, check=True)


def test_book_profiles(S2):
    sp = S2.space
    gen = S2.generators[0]
    assert S2.book_profile(gen) == (5, 0)
    tan = sp.line_through(sp.point([1, 1, 0, 0]), sp.point([0, 0, 1, 0]))
    assert S2.book_profile(tan) == (1, 4)
    assert S2.book_profile(sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])) == (3, 2)


@pytest.mark.parametrize("q,n", [(2, 27), (3, 112)])
def test_generators_match_full_scan(q, n):
    S = surface_for(q)
    scan = sorted((L for L in S.space.enumerate_lines() if S.line_count(L) == q * q + 1),
                  key=lambda L: L.basis)
    assert S.generators == scan and len(scan) == n
    for L in scan[:10]:
        assert S.book_profile(L) == (q * q + 1, 0)


@pytest.mark.parametrize("q", [2, 3])
def test_tangent_point_tally(q):
    S = surface_for(q)
    for P in S.points[:5]:
        g, t, s = S.tangent_point_line_tally(P)
        assert (g, t) == (q + 1, q * q - q)
        assert g + t + s == q ** 4 + q ** 2 + 1
    with pytest.raises(GeometryError):
        S.tangent_point_line_tally(S.space.point([1, 0, 0, 0]))


@pytest.mark.parametrize("q", [2, 3])
def test_secant_book_reconstructs_surface(q):
    total = (q + 1) * (q ** 3 + q ** 2 - q) + (q * q - q) * (q ** 3 - q) + (q + 1)
    assert total == (q ** 3 + 1) * (q ** 2 + 1)
    S = surface_for(q)
    sp = S.space
    L = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    pts_on_L = S.line_count(L)
    measured = pts_on_L + sum(S.plane_count(pl) - pts_on_L for pl in sp.book_of_planes(L))
    assert measured == len(S)


def test_hermitian_matrix_validation():
    ctx = ctx_for(3)
    t = ctx.parse("t")
    ok = [[1, t, 0, 0], [ctx.conj(t), 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    M = HermitianMatrix(ctx, ok)
    S = HermitianSurface(M)
    assert S.rank in (3, 4)
    bad = [row[:] for row in ok]
    bad[1][0] = t
    with pytest.raises(HermitianError, match=r"\(0,1\) and \(1,0\)"):
        HermitianMatrix(ctx, bad)
    with pytest.raises(HermitianError):
        HermitianMatrix(ctx, [[0] * 4 for _ in range(4)])
    diag = [[t, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(HermitianError):
        HermitianMatrix(ctx, diag)  # t is not in GF(3)


@pytest.mark.parametrize("q", [2, 3])
def test_transformed_surface_is_nondegenerate_and_same_size(q):
    S = surface_for(q)
    rng = np.random.default_rng(q)
    for _ in range(3):
        M = S.space.random_projectivity(rng)
        T = S.transform(M)
        assert T.rank == 4 and len(T) == len(S)
        assert len(T.generators) == len(S.generators)


def test_intersection_count_rejects_zero_form(S2):
    from hermsurf.forms import ZeroFormError
    with pytest.raises(ZeroFormError):
        S2.intersection_count(HomogeneousForm.zero(S2.ctx, 2))
