import random

import pytest

from heartproof import probe
from heartproof.probe import (
    BadReduction,
    NotSquarefree,
    PolyZ,
    classify_galois,
    discriminant,
    discriminant_crt,
    factor_degrees_mod_p,
    is_squarefree,
    parse_poly,
    verify_evidence,
)


def test_parse_forms():
    f = parse_poly("x^5 - x - 1")
    assert f.coeffs == (-1, -1, 0, 0, 0, 1)
    assert parse_poly("[-1, -1, 0, 0, 0, 1]") == f
    assert parse_poly("x^2+1").coeffs == (1, 0, 1)
    assert parse_poly("2*x^3 - 4x + 7").coeffs == (7, -4, 0, 2)
    assert parse_poly("x").coeffs == (0, 1)
    assert parse_poly("-x^2 + 3").coeffs == (3, 0, -1)
    with pytest.raises(ValueError):
        parse_poly("x^2 + + 3")
    with pytest.raises(ValueError):
        parse_poly("y^2 - 1")


def test_squarefree():
    assert not is_squarefree(parse_poly("x^2"))
    assert is_squarefree(parse_poly("x^5 - x - 1"))
    # (x-1)^2 (x+2) = x^3 - 3x + 2
    assert not is_squarefree(parse_poly("x^3 - 3*x + 2"))


def test_discriminants():
    assert discriminant(parse_poly("x^5 - x - 1")) == 2869
    assert discriminant(parse_poly("x^5 + 20*x + 16")) == 2**16 * 5**6
    assert discriminant(parse_poly("x^2 + 1")) == -4
    assert discriminant(parse_poly("x^3 - 1")) == -27


def test_discriminant_two_routes_agree():
    rng = random.Random(5)
    checked = 0
    while checked < 50:
        deg = rng.randrange(2, 7)
        coeffs = [rng.randrange(-9, 10) for _ in range(deg)] + [rng.randrange(1, 10)]
        f = PolyZ(tuple(coeffs))
        try:
            f.derivative()
        except ValueError:
            continue
        assert discriminant(f) == discriminant_crt(f), f
        checked += 1


def test_factor_degrees_examples():
    f = parse_poly("x^5 - x - 1")
    assert factor_degrees_mod_p(f, 2) == [2, 3]
    assert factor_degrees_mod_p(parse_poly("x^2+1"), 3) == [2]
    assert factor_degrees_mod_p(parse_poly("x^2+1"), 5) == [1, 1]
    assert sum(factor_degrees_mod_p(f, 7)) == 5


def test_bad_reduction():
    with pytest.raises(BadReduction):
        factor_degrees_mod_p(parse_poly("x^2 - 3"), 3)  # x^2 mod 3
    with pytest.raises(BadReduction):
        factor_degrees_mod_p(parse_poly("3*x^2 + x + 1"), 3)  # lc drops


def test_classify_sn():
    ev = classify_galois(parse_poly("x^5 - x - 1"), 40, 0)
    assert ev.conclusion == "proven_sn"
    assert ev.resolved_group == "symmetric"
    assert ev.irreducible_witness is not None
    assert not ev.disc_is_square
    assert verify_evidence(ev)


def test_classify_an():
    ev = classify_galois(parse_poly("x^5 + 20*x + 16"), 40, 0)
    assert ev.conclusion == "proven_an_or_sn"
    assert ev.disc_is_square
    assert ev.resolved_group == "alternating"
    assert verify_evidence(ev)


def test_classify_x4_plus_1():
    ev = classify_galois(parse_poly("x^4 + 1"), 40, 0)
    patterns = [p for p, _ in ev.cycle_types]
    assert (4,) not in patterns  # splits mod every odd prime
    assert ev.conclusion == "unknown"
    assert ev.resolved_group is None


def test_classify_deterministic():
    f = parse_poly("x^6 - 2*x^4 + 3*x - 7")
    a = classify_galois(f, 25, 0)
    b = classify_galois(f, 25, 0)
    assert a == b


def test_classify_rejects_repeated_roots():
    with pytest.raises(NotSquarefree):
        classify_galois(parse_poly("x^2"), 10, 0)


def test_degree_multisets_sum_to_n():
    f = parse_poly("x^6 - 2*x^4 + 3*x - 7")
    for p in probe.sample_primes(f, 15):
        assert sum(factor_degrees_mod_p(f, p)) == 6


def test_composite_degree_needs_primitivity_certificate():
    # degree 6 with Galois group S_6: certification goes through the
    # 5-cycle primitivity argument, never the bare pattern rule
    ev = classify_galois(parse_poly("x^6 + x^4 + x - 5"), 40, 0)
    assert ev.conclusion == "proven_sn"
    assert any("primitive" in reason for reason in ev.reasons)
    assert (1, 5) in [pat for pat, _ in ev.cycle_types]
    assert verify_evidence(ev)
