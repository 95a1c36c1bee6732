"""F_p[G]-modules as matrix representations of permutation groups.

Modules act on row vectors from the right, so the matrix of a word equals
the product of the generator matrices in the same order. The permutation
module sends g to the matrix with a 1 in position (i, g[i]); the heart is
its zero-sum hyperplane, quotiented by the constants when p divides the
degree.

Irreducibility is decided by the MeatAxe: a randomized search for an
algebra element with an irreducible charpoly factor of minimal nullity,
combined with spin-up in the module and its dual (Norton's criterion).
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import gfpoly, linalg, perm
from .fields import sqrt_mod_p
from .groups import PermGroup, subgroup_classes, coset_action
from .linalg import identity, kernel_basis, mat_mul
from .perm import Perm


class GroupMismatch(ValueError):
    """Raised when combining modules over different groups or primes."""


class RandomnessExhausted(RuntimeError):
    """MeatAxe ran out of attempts; retry with a different seed."""


class BadCongruence(ValueError):
    """Raised when p is not +-1 mod 5 where that congruence is required."""


def _require_odd_prime(p: int):
    from .fields import is_prime

    if p < 3 or not is_prime(p):
        raise ValueError(f"p = {p} must be an odd prime")


@dataclass
class GModule:
    """Matrix representation: one invertible matrix per group generator."""

    group: PermGroup | None
    p: int
    dim: int
    gen_matrices: list[np.ndarray]
    label: str = ""

    def word_matrix(self, word: list[int]) -> np.ndarray:
        out = identity(self.dim)
        for i in word:
            out = mat_mul(out, self.gen_matrices[i], self.p)
        return out

    def word_perm(self, word: list[int]) -> Perm:
        g = perm.identity(self.group.degree)
        for i in word:
            g = perm.mult(g, self.group.generators[i])
        return g

    def validate(self, words: int = 20, seed: int = 0) -> bool:
        """Check the type invariants: invertible matrices and, when the
        group is available, agreement of sampled word relations."""
        for m in self.gen_matrices:
            if not linalg.is_invertible(m, self.p):
                return False
        if self.group is None or not self.gen_matrices:
            return True
        rng = random.Random(seed)
        ngens = len(self.gen_matrices)
        for _ in range(words):
            w = [rng.randrange(ngens) for _ in range(rng.randrange(1, 6))]
            left = self.word_matrix(w + w)
            right = mat_mul(self.word_matrix(w), self.word_matrix(w), self.p)
            if not np.array_equal(left, right):
                return False
        return True


@dataclass
class HeartModule(GModule):
    n: int = 0
    kind: str = "hyperplane"  # or "quotient" when p | n


def permutation_matrix(g: Perm, p: int) -> np.ndarray:
    n = len(g)
    m = linalg.zeros(n, n)
    for i, j in enumerate(g):
        m[i, j] = 1 % p
    return m


def permutation_module(g: PermGroup, p: int) -> GModule:
    """The natural module F_p^B; the trace of any element counts its fixed points."""
    _require_odd_prime(p)
    mats = [permutation_matrix(x, p) for x in g.generators] or []
    return GModule(g, p, g.degree, mats, label=f"perm(dim {g.degree})")


def heart_matrix(g: Perm, p: int) -> np.ndarray:
    """Matrix of g on the heart, in the pinned basis.

    For p not dividing n the basis is {e_i - e_{n-1} : i < n-1}; for p | n
    that hyperplane is further reduced modulo the constants by substituting
    the last basis vector with minus the sum of the others.
    """
    n = len(g)
    m = n - 1
    h = linalg.zeros(m, m)
    gn = g[n - 1]
    for i in range(m):
        gi = g[i]
        if gi != n - 1:
            h[i, gi] += 1
        if gn != n - 1:
            h[i, gn] -= 1
    h %= p
    if n % p != 0:
        return h
    return (h[: m - 1, : m - 1] - h[: m - 1, m - 1][:, None]) % p


def heart(g: PermGroup, p: int) -> HeartModule:
    """The heart of the permutation representation of g over F_p."""
    _require_odd_prime(p)
    if not g.is_transitive():
        warnings.warn("heart of an intransitive action; dimension laws still apply", stacklevel=2)
    n = g.degree
    kind = "quotient" if n % p == 0 else "hyperplane"
    dim = n - 2 if kind == "quotient" else n - 1
    mats = [heart_matrix(x, p) for x in g.generators]
    return HeartModule(g, p, dim, mats, label=f"heart(n={n})", n=n, kind=kind)


def spin(vectors: list[np.ndarray], mats: list[np.ndarray], p: int) -> np.ndarray:
    """Row-echelon basis of the smallest invariant subspace containing the rows."""
    dim = mats[0].shape[0] if mats else len(vectors[0])
    basis = linalg.rref(np.array([v % p for v in vectors]), p)[0]
    basis = basis[~np.all(basis == 0, axis=1)]
    queue = list(basis)
    while queue:
        v = queue.pop(0)
        for m in mats:
            w = (v @ m) % p
            stacked, _ = linalg.rref(np.vstack([basis, w]), p)
            stacked = stacked[~np.all(stacked == 0, axis=1)]
            if stacked.shape[0] > basis.shape[0]:
                basis = stacked
                # enqueue the raw image: the last echelon row need not be
                # the new direction after pivot reordering
                queue.append(w)
                if basis.shape[0] == dim:
                    return basis
    return basis


@dataclass
class IrreducibilityResult:
    irreducible: bool
    # For reducible modules: echelonized basis rows of an invariant subspace.
    invariant_subspace: np.ndarray | None = None
    # For irreducible modules: the singular-element data behind the verdict.
    certificate: dict = field(default_factory=dict)


def _random_algebra_element(mats: list[np.ndarray], p: int, rng: random.Random) -> np.ndarray:
    dim = mats[0].shape[0]
    a = linalg.zeros(dim, dim)
    for _ in range(rng.randrange(2, 4)):
        term = identity(dim)
        for _ in range(rng.randrange(1, 4)):
            term = mat_mul(term, mats[rng.randrange(len(mats))], p)
        a = (a + rng.randrange(1, p) * term) % p
    return a


def is_irreducible(module: GModule, seed: int = 0, budget: int = 200) -> IrreducibilityResult:
    """MeatAxe with Norton's criterion.

    Reducible verdicts carry an explicit invariant subspace. Irreducible
    verdicts require an algebra element A and an irreducible charpoly
    factor f with nullity(f(A)) = deg f whose null vector spins up to the
    whole module in both the module and its dual.
    """
    p, dim, mats = module.p, module.dim, module.gen_matrices
    if dim < 1:
        raise ValueError("module dimension must be >= 1")
    if dim == 1:
        return IrreducibilityResult(True, certificate={"reason": "dimension 1"})
    if not mats:
        return IrreducibilityResult(False, invariant_subspace=identity(dim)[:1])
    mats_t = [m.T.copy() for m in mats]
    rng = random.Random(seed)
    candidates = list(mats)
    for attempt in range(budget):
        a = candidates[attempt] if attempt < len(candidates) else _random_algebra_element(mats, p, rng)
        cp = linalg.charpoly(a, p)
        factors = gfpoly.factor_squarefree(gfpoly.squarefree_part(cp, p), p, seed=seed)
        for f in sorted(factors, key=lambda f: (len(f), f)):
            fa = linalg.poly_of_matrix(f, a, p)
            null_rows = kernel_basis(fa.T, p)
            if not null_rows:
                continue
            v = null_rows[0]
            w_basis = spin([v], mats, p)
            if w_basis.shape[0] < dim:
                return IrreducibilityResult(False, invariant_subspace=w_basis)
            dual_null = kernel_basis(fa, p)
            w = dual_null[0]
            dual_basis = spin([w], mats_t, p)
            if dual_basis.shape[0] < dim:
                sub = np.array(kernel_basis(dual_basis, p))
                return IrreducibilityResult(False, invariant_subspace=linalg.rref(sub, p)[0])
            if len(null_rows) == len(f) - 1:
                cert = {
                    "attempt": attempt,
                    "factor": [int(c) for c in f],
                    "nullity": len(null_rows),
                    "element": [[int(x) for x in row] for row in a],
                }
                return IrreducibilityResult(True, certificate=cert)
    raise RandomnessExhausted(f"no singular element of minimal nullity in {budget} attempts")


def commutant_dim(module: GModule) -> int:
    """Dimension of {X : X M(g) = M(g) X for all generators g} over F_p."""
    p, d = module.p, module.dim
    if not module.gen_matrices:
        return d * d
    blocks = []
    eye = identity(d)
    for m in module.gen_matrices:
        blocks.append(np.kron(eye, m.T) - np.kron(m, eye))
    big = np.vstack(blocks) % p
    return d * d - linalg.rank(big, p)


def is_absolutely_irreducible(module: GModule, seed: int = 0) -> bool:
    return is_irreducible(module, seed=seed).irreducible and commutant_dim(module) == 1


def tensor(m1: GModule, m2: GModule) -> GModule:
    """Tensor product over F_p: Kronecker products generator by generator."""
    if m1.p != m2.p:
        raise GroupMismatch("tensor factors live over different primes")
    g1, g2 = m1.group, m2.group
    same = g1 is g2 or (g1 is not None and g2 is not None and g1.generators == g2.generators)
    if not same:
        raise GroupMismatch("tensor factors are modules over different groups")
    mats = [np.kron(a, b) % m1.p for a, b in zip(m1.gen_matrices, m2.gen_matrices)]
    return GModule(g1, m1.p, m1.dim * m2.dim, mats, label=f"{m1.label}(x){m2.label}")


def hom_space(m1: GModule, m2: GModule) -> list[np.ndarray]:
    """Basis of {X : M1(g) X = X M2(g) for all g}, i.e. of Hom_G(m1, m2)."""
    p = m1.p
    d1, d2 = m1.dim, m2.dim
    if not m1.gen_matrices:
        return [e.reshape(d1, d2) for e in np.eye(d1 * d2, dtype=np.int64)]
    blocks = []
    for a, b in zip(m1.gen_matrices, m2.gen_matrices):
        blocks.append(np.kron(a, identity(d2)) - np.kron(identity(d1), b.T))
    big = np.vstack(blocks) % p
    return [v.reshape(d1, d2) for v in kernel_basis(big, p)]


def module_iso(m1: GModule, m2: GModule, seed: int = 0, budget: int = 200) -> np.ndarray | None:
    """An invertible X with M1(g) X = X M2(g) for all g, or None.

    Quick rejection by word traces (sampled, seeded), then a search of the
    intertwiner space: single basis elements first, then random combinations.
    """
    if m1.p != m2.p or m1.dim != m2.dim:
        return None
    if len(m1.gen_matrices) != len(m2.gen_matrices):
        return None
    p = m1.p
    rng = random.Random(seed)
    ngens = len(m1.gen_matrices)
    for _ in range(30):
        word = [rng.randrange(ngens) for _ in range(rng.randrange(1, 6))] if ngens else []
        if int(np.trace(m1.word_matrix(word)) % p) != int(np.trace(m2.word_matrix(word)) % p):
            return None
    basis = hom_space(m1, m2)
    if not basis:
        return None
    for x in basis:
        if linalg.is_invertible(x, p):
            return x
    for _ in range(budget):
        coeffs = [rng.randrange(p) for _ in basis]
        x = sum(c * b for c, b in zip(coeffs, basis)) % p
        if linalg.is_invertible(x, p):
            return x
    return None


def dumps(module: GModule) -> str:
    """Text dump: header 'p dim ngens', then matrices row-major in decimal."""
    lines = [f"{module.p} {module.dim} {len(module.gen_matrices)}"]
    for m in module.gen_matrices:
        for row in m:
            lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def loads(text: str) -> GModule:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    p, dim, ngens = (int(t) for t in lines[0].split())
    mats = []
    pos = 1
    for _ in range(ngens):
        rows = [[int(t) for t in lines[pos + i].split()] for i in range(dim)]
        mats.append(linalg.asmat(rows, p))
        pos += dim
    return GModule(None, p, dim, mats)


# ---------------------------------------------------------------------------
# The two 2-dimensional representations of SL(2, F_5) over F_p, p = +-1 mod 5
# ---------------------------------------------------------------------------

def _sl2_elements_with_trace(p: int, tr: int):
    """SL(2, F_p) elements (a, b, c, d) of the given trace, ascending lex."""
    for a in range(p):
        d = (tr - a) % p
        need = (a * d - 1) % p  # bc must equal ad - 1
        for b in range(p):
            if b == 0:
                if need == 0:
                    for c in range(p):
                        yield (a, 0, c, d)
            else:
                yield (a, b, need * pow(b, -1, p) % p, d)


def _mat2_mult(x, y, p):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _closure2(gens, p, limit=130):
    seen = {(1, 0, 0, 1)}
    queue = [(1, 0, 0, 1)]
    while queue:
        x = queue.pop()
        for g in gens:
            y = _mat2_mult(x, g, p)
            if y not in seen:
                if len(seen) >= limit:
                    return None
                seen.add(y)
                queue.append(y)
    return seen


def _binary_icosahedral_pair(p: int, t_traces: list[int]) -> tuple[tuple, tuple]:
    """First (s, t) in lex order with tr s = 1, tr t in t_traces, tr st = 0,
    |<s, t>| = 120.

    The trace conditions already force s^3 = t^5 = (st)^2 = -1 by
    Cayley-Hamilton, so every candidate pair satisfies the binary
    icosahedral presentation; the order check pins the faithful image.
    """
    t_candidates = sorted(
        x for tr in set(t_traces) for x in _sl2_elements_with_trace(p, tr)
    )
    for s in _sl2_elements_with_trace(p, 1):
        sa, sb, sc, sd = s
        for t in t_candidates:
            ta, tb, tc, td = t
            if (sa * ta + sb * tc + sc * tb + sd * td) % p != 0:
                continue
            if _closure2([s, t], p) is not None and len(_closure2([s, t], p)) == 120:
                return s, t
    raise RandomnessExhausted("no binary icosahedral pair found")  # unreachable for valid p


def _mat2_to_array(m, p):
    a, b, c, d = m
    return linalg.asmat([[a, b], [c, d]], p)


def _vector_action_perm(m, ell: int) -> Perm:
    """Permutation of the nonzero row vectors of F_ell^2 under v -> v m."""
    a, b, c, d = m
    pts = [(x, y) for x in range(ell) for y in range(ell) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(pts)}
    images = []
    for x, y in pts:
        images.append(index[((x * a + y * c) % ell, (x * b + y * d) % ell)])
    return tuple(images)


def _projective_action_perm(m, ell: int) -> Perm:
    """Permutation of P^1(F_ell) (finite points 0..ell-1, infinity last)."""
    a, b, c, d = m
    inf = ell
    images = []
    for z in range(ell):
        den = (c * z + d) % ell
        num = (a * z + b) % ell
        images.append(inf if den == 0 else num * pow(den, -1, ell) % ell)
    images.append(inf if c % ell == 0 else a * pow(c, -1, ell) % ell)
    return tuple(images)


@dataclass
class Sl2F5Pair:
    """The two 2-dim modules of abstract SL(2, F_5) over F_p and their context."""

    group: PermGroup          # SL(2, F_5) on the 24 nonzero vectors of F_5^2
    v1: GModule
    v2: GModule
    pullback_heart: GModule   # heart of the degree-5 quotient action, same generators
    quotient_degree5: PermGroup


def sl2f5_two_dim_reps(p: int, seed: int = 0) -> Sl2F5Pair:
    """Two non-isomorphic absolutely irreducible 2-dim modules over F_p.

    Requires p = +-1 mod 5 and p > 5, so that the golden-ratio traces
    (1 +- sqrt 5)/2 exist in F_p. The generator pair satisfies the binary
    icosahedral presentation over F_5 and over F_p, with the two modules
    separated by the trace of the order-10 generator.
    """
    if p <= 5 or p % 5 not in (1, 4):
        raise BadCongruence(f"p = {p} is not +-1 mod 5 (or not > 5)")
    root5 = sqrt_mod_p(5, p)
    inv2 = pow(2, -1, p)
    r1, r2 = sorted(((1 + root5) * inv2 % p, (1 - root5) * inv2 % p))

    # canonical generators of SL(2, F_5) satisfying the same presentation
    tau5 = 3  # double root of x^2 - x - 1 over F_5
    s0, t0 = _binary_icosahedral_pair(5, [tau5])
    group = PermGroup(
        [_vector_action_perm(s0, 5), _vector_action_perm(t0, 5)], degree=24
    )
    if group.order != 120:
        raise AssertionError("SL(2,5) vector action has wrong order")

    s, t = _binary_icosahedral_pair(p, [r1, r2])
    got = (t[0] + t[3]) % p
    other = r2 if got == r1 else r1
    s2, t2 = _binary_icosahedral_pair(p, [other])
    v1 = GModule(group, p, 2, [_mat2_to_array(s, p), _mat2_to_array(t, p)], label="V1")
    v2 = GModule(group, p, 2, [_mat2_to_array(s2, p), _mat2_to_array(t2, p)], label="V2")

    # degree-5 quotient: projective action mod +-1, then cosets of the first
    # index-5 subgroup of the resulting PSL(2, 5)
    h6 = PermGroup([_projective_action_perm(s0, 5), _projective_action_perm(t0, 5)], degree=6)
    if h6.order != 60:
        raise AssertionError("PSL(2,5) projective action has wrong order")
    classes = sorted(
        (r for r in subgroup_classes(h6) if r.order == 12),
        key=lambda r: sorted(r.elements),
    )
    sub = PermGroup(list(classes[0].gens), degree=6)
    act5 = coset_action(h6, sub)
    if act5.degree != 5 or not act5.is_doubly_transitive():
        raise AssertionError("degree-5 quotient action is not doubly transitive")
    mats = [heart_matrix(g, p) for g in act5.generators]
    pull = GModule(group, p, 4, mats, label="pullback-heart")
    return Sl2F5Pair(group, v1, v2, pull, act5)
