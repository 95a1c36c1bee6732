import random
from pathlib import Path

import numpy as np
import pytest

from heartproof import linalg, modules, perm
from heartproof.groups import PermGroup, alternating_group, mathieu_group, symmetric_group
from heartproof.modules import (
    GroupMismatch,
    commutant_dim,
    heart,
    heart_matrix,
    is_irreducible,
    module_iso,
    permutation_module,
    tensor,
)

GOLDEN = Path(__file__).parent / "golden"


def cyclic5():
    return PermGroup([perm.parse_perm("(0 1 2 3 4)")], 5)


def assert_invariant(witness, mats, p):
    rk = linalg.rank(witness, p)
    assert 0 < rk < mats[0].shape[0]
    for m in mats:
        stacked, piv = linalg.rref(np.vstack([witness, (witness @ m) % p]), p)
        assert len(piv) == rk, "claimed invariant subspace is not invariant"


def test_permutation_module_traces():
    pm = permutation_module(symmetric_group(3), 5)
    assert pm.dim == 3
    assert int(np.trace(pm.gen_matrices[0])) == 1  # transposition fixes one point
    trivial = permutation_module(PermGroup([], degree=4), 7)
    assert trivial.gen_matrices == []
    a5 = permutation_module(alternating_group(5), 7)
    five_cycle = a5.gen_matrices[1]  # (0 1 2 3 4) image
    assert int(np.trace(five_cycle)) == 0


def test_heart_dimension_law():
    for n in range(5, 13):
        for p in (3, 5, 7, 11, 13):
            h = heart(symmetric_group(n), p)
            assert h.dim == (n - 2 if n % p == 0 else n - 1)
            assert h.kind == ("quotient" if n % p == 0 else "hyperplane")


def test_heart_examples():
    assert heart(alternating_group(5), 7).dim == 4
    assert heart(symmetric_group(7), 7).dim == 5
    assert heart(mathieu_group(11), 5).dim == 10


def test_heart_warns_intransitive():
    g = PermGroup([perm.parse_perm("(0 1)", 5)], 5)
    with pytest.warns(UserWarning):
        heart(g, 3)


def test_word_relation_soundness():
    rng = random.Random(3)
    g = alternating_group(6)
    for p in (5, 7):
        h = heart(g, p)
        for _ in range(100):
            word = [rng.randrange(len(g.generators)) for _ in range(rng.randrange(1, 9))]
            assert np.array_equal(h.word_matrix(word), heart_matrix(h.word_perm(word), p))


def test_meataxe_irreducible_heart():
    r = is_irreducible(heart(alternating_group(5), 7))
    assert r.irreducible
    assert r.certificate["nullity"] == len(r.certificate["factor"]) - 1


def test_meataxe_reducible_permutation_module():
    pm = permutation_module(alternating_group(5), 7)
    r = is_irreducible(pm)
    assert not r.irreducible
    w = r.invariant_subspace
    assert_invariant(w, pm.gen_matrices, 7)
    # the witness is inside the zero-sum hyperplane or is the constants line
    sums = w.sum(axis=1) % 7
    assert np.all(sums == 0) or w.shape[0] == 1


def test_meataxe_cyclic_heart_split():
    # 11 = 1 mod 5: the cyclic heart splits into eigenlines
    h = heart(cyclic5(), 11)
    r = is_irreducible(h)
    assert not r.irreducible
    assert_invariant(r.invariant_subspace, h.gen_matrices, 11)
    assert commutant_dim(h) == 4


def test_cyclic_heart_f7_is_simple_not_absolutely():
    # 7 has order 4 mod 5, so the quartic cyclotomic factor stays irreducible
    h = heart(cyclic5(), 7)
    assert is_irreducible(h).irreducible
    assert commutant_dim(h) == 4


def test_commutant_examples():
    assert commutant_dim(heart(symmetric_group(5), 7)) == 1
    ident = modules.GModule(cyclic5(), 5, 3, [linalg.identity(3)])
    assert commutant_dim(ident) == 9


def test_meataxe_seed_determinism():
    h = heart(mathieu_group(11), 5)
    a = is_irreducible(h, seed=1)
    b = is_irreducible(h, seed=1)
    assert a.irreducible and b.irreducible and a.certificate == b.certificate


def test_tensor():
    g = alternating_group(5)
    h = heart(g, 7)
    one = modules.GModule(g, 7, 1, [linalg.identity(1) for _ in g.generators])
    t = tensor(h, one)
    assert t.dim == h.dim
    x = module_iso(t, h)
    assert x is not None
    t2 = tensor(h, h)
    assert t2.dim == 16
    rng = random.Random(4)
    for _ in range(20):
        word = [rng.randrange(2) for _ in range(rng.randrange(1, 6))]
        ta = int(np.trace(t2.word_matrix(word))) % 7
        tb = int(np.trace(h.word_matrix(word))) % 7
        assert ta == tb * tb % 7
    with pytest.raises(GroupMismatch):
        tensor(h, heart(symmetric_group(5), 7))


def test_module_iso():
    g = alternating_group(5)
    h = heart(g, 7)
    x = module_iso(h, h)
    assert x is not None and linalg.is_invertible(x, 7)
    pm = permutation_module(g, 7)
    assert module_iso(h, pm) is None  # dims differ
    # same dim, different trace profile: heart vs 4-dim direct sum of trivials
    quad_triv = modules.GModule(g, 7, 4, [linalg.identity(4) for _ in g.generators])
    assert module_iso(h, quad_triv) is None


def test_odd_prime_required():
    with pytest.raises(ValueError):
        heart(symmetric_group(5), 4)
    with pytest.raises(ValueError):
        permutation_module(symmetric_group(5), 2)


def test_module_validate():
    assert heart(alternating_group(6), 5).validate()
    assert permutation_module(symmetric_group(5), 7).validate()
    bad = modules.GModule(alternating_group(5), 7, 2,
                          [linalg.asmat([[1, 1], [1, 1]], 7), linalg.identity(2)])
    assert not bad.validate()


def test_dump_roundtrip_and_golden():
    h = heart(alternating_group(5), 7)
    text = modules.dumps(h)
    assert text == (GOLDEN / "heart_a5_f7.dump").read_text()
    back = modules.loads(text)
    assert back.p == 7 and back.dim == 4
    assert all(np.array_equal(a, b) for a, b in zip(back.gen_matrices, h.gen_matrices))
