import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermsurf.field import (FieldCtx, FieldElement, FieldMismatchError, MODULI, add, conj,
                            inv, is_irreducible, least_irreducible, mul, norm, prime_power)

from conftest import ctx_for

QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def gf4():
    return ctx_for(2)


def gf9():
    return ctx_for(3)


def test_moduli_match_spec_examples():
    assert gf4().modulus_str() == "t^2+t+1"
    assert gf9().modulus_str() == "t^2+1"


@pytest.mark.parametrize("key", sorted(MODULI))
def test_shipped_moduli_are_least_irreducible(key):
    p, e = key
    assert MODULI[key] == least_irreducible(p, 2 * e)
    assert is_irreducible(list(MODULI[key]) + [1], p)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldCtx(2, 1, modulus=(1, 0))  # t^2 + 1 = (t+1)^2


def test_ceiling():
    with pytest.raises(ValueError):
        FieldCtx(2, 9)
    with pytest.raises(ValueError):
        FieldCtx.from_q(6)


def test_add_examples():
    k = gf4()
    t = k.parse("t")
    assert k.add(t, t) == 0
    k9 = gf9()
    assert k9.add(k9.parse("t+1"), k9.parse("2t+2")) == 0
    for a in range(9):
        assert k9.add(a, 0) == a


def test_mul_inv_examples():
    k = gf4()
    t, t1 = k.parse("t"), k.parse("t+1")
    assert k.mul(t, t1) == 1
    assert k.inv(t) == t1
    assert k.inv(1) == 1
    k9 = gf9()
    t = k9.parse("t")
    assert k9.format(k9.mul(t, t)) == "2"
    assert k9.inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        k9.inv(0)


def test_conj_examples():
    k = gf4()
    assert k.format(k.conj(k.parse("t"))) == "t+1"
    assert k.conj(0) == 0 and k.conj(1) == 1
    k9 = gf9()
    assert k9.format(k9.conj(k9.parse("t"))) == "2t"


def test_norm_examples():
    k = gf4()
    assert all(k.norm(a) == 1 for a in range(1, 4))
    assert k.norm(0) == 0
    k9 = gf9()
    t = k9.parse("t")
    # oracle: repeated squaring without tables
    assert k9.pow_schoolbook(t, 4) == 1
    assert k9.norm(t) == 1


def test_enumerate_order_and_counts():
    assert [str(x) for x in gf4().enumerate()] == ["0", "1", "t", "t+1"]
    assert len(list(gf9().enumerate())) == 9
    assert len(list(ctx_for(8).enumerate())) == 64


@pytest.mark.parametrize("q", QS)
def test_tables_agree_with_schoolbook(q):
    k = ctx_for(q)
    rng = np.random.default_rng(q)
    for a, b in rng.integers(0, k.s, size=(300, 2)):
        assert k.mul(int(a), int(b)) == k._mul_schoolbook(int(a), int(b))
    for a in range(k.s):
        assert k.conj(a) == k.pow_schoolbook(a, q)


@pytest.mark.parametrize("q", QS)
def test_field_axioms_random(q):
    k = ctx_for(q)
    rng = np.random.default_rng(100 + q)
    for a, b, c in rng.integers(0, k.s, size=(1000, 3)).tolist():
        assert k.mul(a, k.mul(b, c)) == k.mul(k.mul(a, b), c)
        assert k.add(a, k.add(b, c)) == k.add(k.add(a, b), c)
        assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
        assert k.add(a, k.neg(a)) == 0
        if a:
            assert k.mul(a, k.inv(a)) == 1


@pytest.mark.parametrize("q", QS)
def test_conj_is_involutive_automorphism(q):
    k = ctx_for(q)
    rng = np.random.default_rng(200 + q)
    for a, b in rng.integers(0, k.s, size=(500, 2)).tolist():
        assert k.conj(k.mul(a, b)) == k.mul(k.conj(a), k.conj(b))
        assert k.conj(k.add(a, b)) == k.add(k.conj(a), k.conj(b))
        assert k.conj(k.conj(a)) == a
        assert k.conj(k.norm(a)) == k.norm(a)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_fixed_field_and_norm_surjective(q):
    k = ctx_for(q)
    fixed = k.subfield()
    assert len(fixed) == q
    assert {k.norm(a) for a in range(1, k.s)} == set(fixed) - {0}


@pytest.mark.parametrize("q", QS)
def test_vectorized_matches_scalar(q):
    k = ctx_for(q)
    rng = np.random.default_rng(300 + q)
    a = rng.integers(0, k.s, size=200)
    b = rng.integers(0, k.s, size=200)
    assert k.vmul(a, b).tolist() == [k.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert k.vadd(a, b).tolist() == [k.add(int(x), int(y)) for x, y in zip(a, b)]
    assert k.vconj(a).tolist() == [k.conj(int(x)) for x in a]


@pytest.mark.parametrize("q", QS)
def test_format_parse_roundtrip(q):
    k = ctx_for(q)
    for a in range(k.s):
        assert k.parse(k.format(a)) == a


@pytest.mark.parametrize("bad", ["", "t^9", "x", "1++t", "+"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        gf9().parse(bad)


def test_element_wrapper_and_mismatch():
    k = gf9()
    t = k.element("t")
    assert str(t * t) == "2"
    assert str(conj(t)) == "2t"
    assert int(norm(t)) == 1
    assert inv(t) * t == k.element(1)
    assert add(t, -t) == k.element(0)
    assert mul(t, k.element(1)) == t
    with pytest.raises(FieldMismatchError):
        t + gf4().element(1)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        prime_power(12)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([4, 8, 9]), st.data())
def test_frobenius_power_property(q, data):
    k = ctx_for(q)
    a = data.draw(st.integers(0, k.s - 1))
    e = data.draw(st.integers(0, 3 * k.s))
    assert k.pow(a, e) == k.pow_schoolbook(a, e)


def test_pickle_roundtrip():
    import pickle
    k = ctx_for(8)
    assert pickle.loads(pickle.dumps(k)) == k
