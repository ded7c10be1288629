import itertools

import numpy as np
import pytest

from hermsurf.forms import (BinaryForm, HomogeneousForm, PointSetEvaluator, ZeroFormError,
                            find_double_lines, line_multiplicity, line_on_form, linear_factors,
                            linear_form, monomials, product_of_planes, random_form,
                            restrict_to_line, restrict_to_plane)
from hermsurf.projspace import GeometryError, ProjPlane

from conftest import ctx_for, surface_for


def mono(ctx, exps, c=1):
    return HomogeneousForm.monomial(ctx, exps, c)


def x(ctx, i):
    return mono(ctx, [int(j == i) for j in range(4)])


def test_monomial_count_and_order():
    assert len(monomials(4, 3)) == 20
    assert monomials(4, 1) == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    assert len(monomials(2, 5)) == 6


def test_evaluate_examples():
    ctx = ctx_for(2)
    F = mono(ctx, [3, 0, 0, 0])
    assert F.evaluate((0, 1, 0, 0)) == 0
    assert F.evaluate((1, 0, 0, 0)) == 1
    assert mono(ctx, [1, 1, 1, 0]).evaluate((1, 1, 1, 1)) == 1


@pytest.mark.parametrize("q", [2, 3, 4])
def test_evaluate_many_matches_evaluate(q):
    ctx = ctx_for(q)
    rng = np.random.default_rng(q)
    F = random_form(ctx, 3, rng)
    pts = rng.integers(0, ctx.s, size=(50, 4))
    vals = F.evaluate_many(pts)
    assert [F.evaluate(tuple(int(v) for v in p)) for p in pts] == vals.tolist()


def test_zero_status_scale_invariant():
    ctx = ctx_for(3)
    rng = np.random.default_rng(5)
    for _ in range(100):
        F = random_form(ctx, 3, rng)
        v = rng.integers(0, ctx.s, size=4).tolist()
        lam = int(rng.integers(1, ctx.s))
        assert (F.evaluate(v) == 0) == (F.evaluate([ctx.mul(lam, a) for a in v]) == 0)


def test_intersection_count_examples(S2, S3):
    ctx = S2.ctx
    assert S2.intersection_count(x(ctx, 0) + x(ctx, 1)) == 13
    assert S2.intersection_count(x(ctx, 0)) == 9


def test_restrict_to_plane_examples():
    ctx = ctx_for(2)
    from hermsurf.projspace import ProjectiveSpace
    sp = ProjectiveSpace(ctx)
    G = random_form(ctx, 2, 3)
    assert restrict_to_plane(x(ctx, 0) * G, sp.plane([1, 0, 0, 0]), sp).is_zero()
    R = restrict_to_plane(mono(ctx, [0, 3, 0, 0]), sp.plane([1, 0, 0, 0]), sp)
    assert not R.is_zero() and R.degree == 3 and R.nvars == 3


@pytest.mark.parametrize("q", [2, 3])
def test_restriction_compatibility(q):
    S = surface_for(q)
    sp = S.space
    rng = np.random.default_rng(10 + q)
    planes = list(sp.enumerate_planes())
    for _ in range(10):
        F = random_form(S.ctx, 3, rng)
        pl = planes[int(rng.integers(0, len(planes)))]
        R = restrict_to_plane(F, pl, sp)
        k = next(i for i, c in enumerate(pl.dual) if c)
        for P in list(sp.plane_points(pl))[:30]:
            pre = [c for i, c in enumerate(P.coords) if i != k]
            assert R.evaluate(pre) == F.evaluate(P)


def test_linear_factors_examples():
    ctx = ctx_for(2)
    from hermsurf.projspace import ProjectiveSpace
    sp = ProjectiveSpace(ctx)
    F = mono(ctx, [2, 1, 0, 0])
    assert linear_factors(F, sp) == [(ProjPlane((1, 0, 0, 0)), 2), (ProjPlane((0, 1, 0, 0)), 1)]
    G = sum((mono(ctx, [3 * (i == j) for j in range(4)]) for i in range(1, 4)), mono(ctx, [3, 0, 0, 0]))
    assert linear_factors(G, sp) == []


def _scan_factors(F, sp):
    """Oracle: test every plane by restriction and count multiplicity by division."""
    out = []
    for pl in sp.enumerate_planes():
        if restrict_to_plane(F, pl, sp).is_zero():
            h, G, m = linear_form(F.ctx, pl), F, 0
            while G.degree and G.divmod(h)[1].is_zero():
                G, m = G.exact_div(h), m + 1
            out.append((pl, m))
    return out


@pytest.mark.parametrize("q", [2, 3])
def test_linear_factors_match_full_scan(q):
    S = surface_for(q)
    sp = S.space
    rng = np.random.default_rng(q)
    planes = list(sp.enumerate_planes())
    for trial in range(6):
        H = linear_form(S.ctx, planes[int(rng.integers(0, len(planes)))])
        G = random_form(S.ctx, 2, rng) if trial % 2 else H * H
        F = H * G
        assert linear_factors(F, sp) == _scan_factors(F, sp)
    F = random_form(S.ctx, 3, rng)
    assert linear_factors(F, sp) == _scan_factors(F, sp)


@pytest.mark.parametrize("q", [2, 3])
def test_divisibility_soundness(q):
    S = surface_for(q)
    sp = S.space
    rng = np.random.default_rng(100 + q)
    planes = list(sp.enumerate_planes())
    for _ in range(30):
        pl = planes[int(rng.integers(0, len(planes)))]
        F = linear_form(S.ctx, pl) * random_form(S.ctx, 2, rng)
        mult = dict(linear_factors(F, sp))
        assert mult.get(pl, 0) >= 1


def test_line_on_form_examples():
    ctx = ctx_for(3)
    from hermsurf.projspace import ProjectiveSpace
    sp = ProjectiveSpace(ctx)
    L = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    F = mono(ctx, [2, 0, 1, 0]) + mono(ctx, [0, 2, 0, 1])
    assert line_on_form(F, L)
    assert not line_on_form(mono(ctx, [3, 0, 0, 0]), L)
    book = sp.book_of_planes(L)
    assert line_on_form(product_of_planes(ctx, book[:3]), L)


@pytest.mark.parametrize("q", [2, 3])
def test_line_on_form_agrees_with_points(q):
    S = surface_for(q)
    sp = S.space
    rng = np.random.default_rng(7)
    lines = list(itertools.islice(sp.enumerate_lines(), 0, None, 37))
    for _ in range(5):
        F = random_form(S.ctx, 3, rng)
        for L in lines:
            on_pts = all(F.evaluate(P) == 0 for P in sp.line_points(L))
            assert line_on_form(F, L) == on_pts
    # forms vanishing on a given line: products through it
    for L in lines[:10]:
        book = sp.book_of_planes(L)
        F = product_of_planes(S.ctx, book[:1]) * random_form(S.ctx, 2, rng)
        assert line_on_form(F, L) and all(F.evaluate(P) == 0 for P in sp.line_points(L))


def test_line_multiplicity_examples():
    ctx = ctx_for(3)
    from hermsurf.projspace import ProjectiveSpace
    sp = ProjectiveSpace(ctx)
    L = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    D = mono(ctx, [0, 0, 2, 0]) + mono(ctx, [0, 0, 1, 1])
    E = mono(ctx, [0, 0, 0, 2], 2)
    two = ctx.from_int(2)
    F = (D * x(ctx, 0)).scale(two) + (E * x(ctx, 1)).scale(two)
    assert line_multiplicity(F, L, sp) == 2
    assert L in find_double_lines(F, sp)
    G = mono(ctx, [2, 0, 1, 0]) + mono(ctx, [0, 2, 0, 1])
    assert line_multiplicity(G, L, sp) == 1
    H = mono(ctx, [1, 0, 2, 0]) + mono(ctx, [0, 0, 0, 3])
    assert line_multiplicity(H, L, sp) == 2
    with pytest.raises(GeometryError):
        line_multiplicity(mono(ctx, [3, 0, 0, 0]), L, sp)


def test_line_multiplicity_independent_of_adapted_map():
    S = surface_for(3)
    sp = S.space
    rng = np.random.default_rng(3)
    L = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    H = mono(S.ctx, [1, 0, 2, 0]) + mono(S.ctx, [0, 0, 0, 3])
    for _ in range(5):
        M = sp.random_projectivity(rng)
        G = H.pullback(sp.inverse(M))
        L2 = sp.apply_line(M, L)
        assert line_multiplicity(G, L2, sp) == 2


def test_pullback_identity_and_inverse():
    S = surface_for(3)
    sp = S.space
    rng = np.random.default_rng(1)
    F = random_form(S.ctx, 3, rng)
    ident = sp.projectivity([[int(i == j) for j in range(4)] for i in range(4)])
    assert F.pullback(ident) == F
    M = sp.random_projectivity(rng)
    assert F.pullback(M).pullback(sp.inverse(M)) == F


def test_pullback_count_invariance():
    S = surface_for(2)
    sp = S.space
    rng = np.random.default_rng(2)
    for _ in range(10):
        F = random_form(S.ctx, 3, rng)
        M = sp.random_projectivity(rng)
        T = S.transform(M)
        assert S.intersection_count(F) == T.intersection_count(F.pullback(M))


def test_random_form_contract():
    ctx = ctx_for(4)
    assert random_form(ctx, 3, 42) == random_form(ctx, 3, 42)
    F = random_form(ctx, 3, 42)
    assert len(F.coefficient_vector()) == 20 and not F.is_zero()
    assert random_form(ctx, 3, 43) != F


def test_zero_form_rejected(S2):
    with pytest.raises(ZeroFormError):
        HomogeneousForm.zero(S2.ctx, 3).require_nonzero()
    with pytest.raises(ZeroFormError):
        linear_factors(HomogeneousForm.zero(S2.ctx, 3), S2.space)


def test_terms_invariants():
    ctx = ctx_for(2)
    with pytest.raises(ValueError):
        HomogeneousForm(ctx, 2, {(1, 0, 0, 0): 1})
    F = HomogeneousForm(ctx, 1, {(1, 0, 0, 0): 0, (0, 1, 0, 0): 1})
    assert list(F.terms) == [(0, 1, 0, 0)]


def test_arithmetic_identities():
    ctx = ctx_for(3)
    rng = np.random.default_rng(0)
    for _ in range(10):
        F, G = random_form(ctx, 2, rng), random_form(ctx, 1, rng)
        P = F * G
        assert P.exact_div(G) == F
        assert (F - F).is_zero()
        pt = rng.integers(0, ctx.s, size=4).tolist()
        assert P.evaluate(pt) == ctx.mul(F.evaluate(pt), G.evaluate(pt))


def test_restrict_to_line_binary():
    ctx = ctx_for(2)
    from hermsurf.projspace import ProjectiveSpace
    sp = ProjectiveSpace(ctx)
    L = sp.line([[1, 0, 0, 0], [0, 1, 0, 0]])
    R = restrict_to_line(mono(ctx, [2, 1, 0, 0]), L)
    assert isinstance(R, BinaryForm) and R == BinaryForm(ctx, 3, {(2, 1): 1})


@pytest.mark.parametrize("q", [2, 3])
def test_serre_bound(q):
    """Zeros in PG(3, s) of a degree-d form with d <= s number at most d s^2 + s + 1."""
    S = surface_for(q)
    s = S.ctx.s
    ev = PointSetEvaluator(S.ctx, S.space.points_array)
    rng = np.random.default_rng(20 + q)
    for d in range(1, min(q, 3) + 1):
        for _ in range(20):
            F = random_form(S.ctx, d, rng)
            assert ev.count_zeros(F) <= d * s * s + s + 1
        # attained by d planes through a line
        book = S.space.book_of_planes(S.space.line([[1, 0, 0, 0], [0, 1, 0, 0]]))
        assert ev.count_zeros(product_of_planes(S.ctx, book[:d])) == d * s * s + s + 1
