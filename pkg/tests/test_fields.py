import random

import pytest

from heartproof import fields
from heartproof.fields import ExtField, PrimeField, ZeroInverse, field_inv, sqrt_mod_p


def test_field_inv_examples():
    assert field_inv(3, 7) == 5
    assert field_inv(1, 13) == 1
    assert field_inv(4, 11) == 3


def test_field_inv_zero():
    with pytest.raises(ZeroInverse):
        field_inv(0, 7)
    with pytest.raises(ZeroInverse):
        field_inv(14, 7)


def test_prime_field_validation():
    PrimeField(3)
    with pytest.raises(fields.NotPrime):
        PrimeField(9)
    with pytest.raises(fields.NotPrime):
        PrimeField(2)


def test_sqrt_examples():
    assert sqrt_mod_p(5, 11) == 4
    assert sqrt_mod_p(0, 13) == 0
    assert sqrt_mod_p(5, 7) is None
    # squares mod 7 are {0, 1, 2, 4}
    assert {a for a in range(7) if sqrt_mod_p(a, 7) is not None} == {0, 1, 2, 4}


@pytest.mark.parametrize("p", [3, 7, 11, 13, 17, 29, 101, 10007])
def test_sqrt_property(p):
    # present iff a^((p-1)/2) in {0, 1}; square of result is a
    for a in range(min(p, 60)):
        r = sqrt_mod_p(a, p)
        euler = pow(a, (p - 1) // 2, p)
        if euler in (0, 1):
            assert r is not None and r * r % p == a % p
        else:
            assert r is None


def test_is_prime():
    assert [n for n in range(2, 40) if fields.is_prime(n)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert fields.is_prime(2**31 - 1)
    assert not fields.is_prime(2**31 - 3)
    assert not fields.is_prime(65541)


def test_lowest_irreducible_pinned():
    # reproducible moduli, ascending coefficients
    assert fields.lowest_irreducible(2, 2) == [1, 1, 1]       # x^2+x+1
    assert fields.lowest_irreducible(2, 3) == [1, 1, 0, 1]    # x^3+x+1
    assert fields.lowest_irreducible(2, 4) == [1, 1, 0, 0, 1]  # x^4+x+1
    assert fields.lowest_irreducible(3, 2) == [1, 0, 1]       # x^2+1


@pytest.mark.parametrize("ell,r", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_extfield_laws_exhaustive(ell, r):
    f = ExtField(ell, r)
    q = f.q
    els = list(f.elements())
    for a in els:
        for b in els:
            assert f.mul(a, b) == f.mul(b, a)
            assert f.add(a, b) == f.add(b, a)
    for a in els:
        for b in els:
            for c in els:
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("ell,r", [(5, 2), (3, 3), (2, 5), (7, 2), (2, 6)])
def test_extfield_laws_sampled(ell, r):
    f = ExtField(ell, r)
    rng = random.Random(0)
    for _ in range(2000):
        a, b, c = (rng.randrange(f.q) for _ in range(3))
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


@pytest.mark.parametrize("ell,r", [(2, 2), (3, 2), (2, 4), (5, 2)])
def test_extfield_inverses(ell, r):
    f = ExtField(ell, r)
    for a in range(1, f.q):
        assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ZeroInverse):
        f.inv(0)
