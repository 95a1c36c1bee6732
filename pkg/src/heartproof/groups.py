"""Permutation groups given by generators.

Order and membership come from a deterministic Schreier-Sims stabilizer
chain built eagerly at construction. Named constructors cover the families
the verdict engine quantifies over: S_n, A_n, the five Mathieu groups
(from bundled generator data), and PSL(2, q) acting on the projective line.

Group files list one generator per line in 0-indexed cycle notation with
'#' comments.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from functools import cache
from math import factorial, gcd

from . import perm
from .fields import ExtField, is_prime
from .perm import Perm


class UnsupportedDegree(ValueError):
    """Raised for Mathieu degrees outside {11, 12, 22, 23, 24}."""


class InvalidField(ValueError):
    """Raised when a field parameter is not a prime power as required."""


class NotSubgroup(ValueError):
    """Raised when a claimed subgroup is not contained in the group."""


class TooLarge(ValueError):
    """Raised when a group exceeds the exhaustive-search threshold."""


SUBGROUP_ENUM_THRESHOLD = 20000

MATHIEU_ORDERS = {
    11: 7920,
    12: 95040,
    22: 443520,
    23: 10200960,
    24: 244823040,
}


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def pgl2_order(q: int) -> int:
    return q * (q * q - 1)


def psl3_order(q: int) -> int:
    return q**3 * (q**3 - 1) * (q * q - 1) // gcd(3, q - 1)


def psu3_order(q: int) -> int:
    return q**3 * (q**3 + 1) * (q * q - 1) // gcd(3, q + 1)


@dataclass(frozen=True)
class GroupTag:
    """Named family a group belongs to, or 'custom' for anonymous groups.

    kind is one of symmetric / alternating / mathieu / psl2 / psu3 / custom.
    psu3 is table-only: no concrete permutation group is ever built for it.
    """

    kind: str
    n: int | None = None
    ell: int | None = None
    r: int | None = None

    @property
    def q(self) -> int | None:
        if self.ell is None:
            return None
        return self.ell ** (self.r or 1)

    @staticmethod
    def symmetric(n: int) -> "GroupTag":
        return GroupTag("symmetric", n=n)

    @staticmethod
    def alternating(n: int) -> "GroupTag":
        return GroupTag("alternating", n=n)

    @staticmethod
    def mathieu(n: int) -> "GroupTag":
        return GroupTag("mathieu", n=n)

    @staticmethod
    def psl2(ell: int, r: int = 1) -> "GroupTag":
        return GroupTag("psl2", n=ell**r + 1, ell=ell, r=r)

    @staticmethod
    def psu3(ell: int, r: int = 1) -> "GroupTag":
        return GroupTag("psu3", n=(ell**r) ** 3 + 1, ell=ell, r=r)

    @staticmethod
    def custom(n: int | None = None) -> "GroupTag":
        return GroupTag("custom", n=n)

    def describe(self) -> str:
        if self.kind == "symmetric":
            return f"S{self.n}"
        if self.kind == "alternating":
            return f"A{self.n}"
        if self.kind == "mathieu":
            return f"M{self.n}"
        if self.kind == "psl2":
            return f"PSL2({self.ell}^{self.r})" if (self.r or 1) > 1 else f"PSL2({self.ell})"
        if self.kind == "psu3":
            return f"U3({self.q})"
        return "custom"

    def family_order(self) -> int | None:
        """Known order from the family parameters, None for custom."""
        if self.kind == "symmetric":
            return factorial(self.n)
        if self.kind == "alternating":
            return factorial(self.n) // 2
        if self.kind == "mathieu":
            return MATHIEU_ORDERS[self.n]
        if self.kind == "psl2":
            return psl2_order(self.q)
        if self.kind == "psu3":
            return psu3_order(self.q)
        return None


class _Level:
    __slots__ = ("base", "gens", "transversal", "verified")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {base: perm.identity(degree)}
        # Schreier pairs (orbit point, generator) already sifted clean; the
        # chain only grows, so a clean sift can never be invalidated.
        self.verified: set[tuple[int, Perm]] = set()


class StabilizerChain:
    """Deterministic Schreier-Sims chain.

    Strong generators live at the deepest level whose earlier base points
    they all fix; the generating set of the k-th stabilizer subgroup is the
    union of the generator lists at levels >= k. Levels are completed
    bottom-up, dropping back whenever a Schreier residue inserts a new
    strong generator.

    base_order 'increasing' picks the smallest moved point as each new base
    point, 'decreasing' the largest; the two settings give independent
    chains for cross-checking orders.
    """

    def __init__(self, generators: list[Perm], degree: int, base_order: str = "increasing"):
        self.degree = degree
        self.base_order = base_order
        self.levels: list[_Level] = []
        for g in generators:
            if not perm.is_identity(g):
                self._insert(g)
        self._complete()

    def _choose_base(self, g: Perm) -> int:
        points = range(self.degree) if self.base_order == "increasing" else range(self.degree - 1, -1, -1)
        for i in points:
            if g[i] != i:
                return i
        raise AssertionError("identity has no moved point")

    def _insert(self, g: Perm) -> int:
        """Store g at the deepest level whose earlier bases it fixes."""
        j = 0
        while j < len(self.levels) and g[self.levels[j].base] == self.levels[j].base:
            j += 1
        if j == len(self.levels):
            self.levels.append(_Level(self._choose_base(g), self.degree))
        self.levels[j].gens.append(g)
        return j

    def _gens_for(self, k: int) -> list[Perm]:
        return [g for lv in self.levels[k:] for g in lv.gens]

    def _extend_orbit(self, k: int):
        """Grow the orbit at level k, never changing existing representatives.

        Keeping representatives stable makes the verified-pair cache sound:
        a clean Schreier sift refers to the same element forever.
        """
        lv = self.levels[k]
        gens = self._gens_for(k)
        t = lv.transversal
        queue = list(t)
        while queue:
            x = queue.pop(0)
            tx = t[x]
            for g in gens:
                y = g[x]
                if y not in t:
                    t[y] = perm.mult(tx, g)
                    queue.append(y)

    def strip(self, g: Perm, start: int = 0) -> tuple[int, Perm]:
        """Sift g through the chain; returns (failure level, residue)."""
        for k in range(start, len(self.levels)):
            lv = self.levels[k]
            x = g[lv.base]
            if x not in lv.transversal:
                return k, g
            g = perm.mult(g, perm.inverse(lv.transversal[x]))
        return len(self.levels), g

    def _complete(self):
        up = len(self.levels) - 1
        while up >= 0:
            self._extend_orbit(up)
            lv = self.levels[up]
            gens = self._gens_for(up)
            inserted_at = None
            for x in sorted(lv.transversal):
                tx = lv.transversal[x]
                for h in gens:
                    if (x, h) in lv.verified:
                        continue
                    schreier = perm.mult(perm.mult(tx, h), perm.inverse(lv.transversal[h[x]]))
                    _, residue = self.strip(schreier, up + 1)
                    if perm.is_identity(residue):
                        lv.verified.add((x, h))
                    else:
                        inserted_at = self._insert(residue)
                        break
                if inserted_at is not None:
                    break
            if inserted_at is None:
                up -= 1
            else:
                up = inserted_at

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            return False
        _, residue = self.strip(g)
        return perm.is_identity(residue)


class PermGroup:
    """Immutable permutation group with an eagerly built stabilizer chain."""

    def __init__(self, generators, degree: int | None = None, tag: GroupTag | None = None):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a trivial group")
            degree = max(len(g) for g in gens)
        gens = [perm.extend(g, degree) for g in gens]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {g}")
        self.degree = degree
        self.generators = tuple(g for g in gens if not perm.is_identity(g))
        self.tag = tag or GroupTag.custom(n=degree)
        self.chain = StabilizerChain(list(self.generators), degree)
        self.order = self.chain.order()
        self._elements: tuple[Perm, ...] | None = None

    def __contains__(self, g) -> bool:
        return self.chain.contains(tuple(g))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, tag={self.tag.describe()})"

    def order_with_base(self, base_order: str) -> int:
        """Recompute the order with an independent stabilizer chain."""
        return StabilizerChain(list(self.generators), self.degree, base_order).order()

    def elements(self, limit: int = SUBGROUP_ENUM_THRESHOLD) -> tuple[Perm, ...]:
        """All elements, deterministically ordered, for small groups only."""
        if self._elements is None:
            if self.order > limit:
                raise TooLarge(f"group of order {self.order} exceeds element limit {limit}")
            self._elements = tuple(sorted(_closure(self.generators, self.degree)))
        return self._elements

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        while queue:
            x = queue.pop(0)
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for i in range(self.degree):
            if i not in seen:
                orb = self.orbit(i)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree >= 1 and len(self.orbit(0)) == self.degree

    def is_doubly_transitive(self) -> bool:
        """Orbit count on ordered pairs of distinct points equals 1."""
        n = self.degree
        if n < 2:
            return False
        start = (0, 1)
        seen = {start}
        queue = [start]
        while queue:
            a, b = queue.pop(0)
            for g in self.generators:
                pair = (g[a], g[b])
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
        return len(seen) == n * (n - 1)

    def point_stabilizer_order(self, point: int) -> int:
        return self.order // len(self.orbit(point))


def _closure(gens, degree: int, limit: int | None = None) -> set[Perm]:
    e = perm.identity(degree)
    seen = {e}
    queue = [e]
    while queue:
        x = queue.pop()
        for g in gens:
            y = perm.mult(x, g)
            if y not in seen:
                if limit is not None and len(seen) >= limit:
                    raise TooLarge(f"closure exceeded {limit} elements")
                seen.add(y)
                queue.append(y)
    return seen


def group_order(g: PermGroup) -> int:
    return g.order


def is_doubly_transitive(g: PermGroup) -> bool:
    return g.is_doubly_transitive()


@cache
def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return PermGroup([], degree=1, tag=GroupTag.symmetric(1))
    gens = [perm.parse_perm("(0 1)", n)]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return PermGroup(gens, degree=n, tag=GroupTag.symmetric(n))


@cache
def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=max(n, 1), tag=GroupTag.alternating(n))
    three = perm.parse_perm("(0 1 2)", n)
    if n % 2 == 1:
        big = tuple(list(range(1, n)) + [0])
    else:
        big = tuple([0] + list(range(2, n)) + [1])
    return PermGroup([three, big], degree=n, tag=GroupTag.alternating(n))


@cache
def _load_mathieu_data() -> dict[int, list[str]]:
    text = importlib.resources.files("heartproof.data").joinpath("mathieu_generators.txt").read_text()
    out: dict[int, list[str]] = {}
    current: int | None = None
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[M") and line.endswith("]"):
            current = int(line[2:-1])
            out[current] = []
        else:
            if current is None:
                raise ValueError("generator line before group header in mathieu data")
            out[current].append(line)
    return out


@cache
def mathieu_group(n: int) -> PermGroup:
    """Mathieu group M_n from the bundled generator data, order-checked."""
    if n not in MATHIEU_ORDERS:
        raise UnsupportedDegree(f"no Mathieu group of degree {n}")
    data = _load_mathieu_data()
    gens = [perm.parse_perm(line, n) for line in data[n]]
    g = PermGroup(gens, degree=n, tag=GroupTag.mathieu(n))
    if g.order != MATHIEU_ORDERS[n]:
        raise AssertionError(
            f"bundled M{n} generators produce order {g.order}, expected {MATHIEU_ORDERS[n]}"
        )
    return g


@cache
def psl2_group(ell: int, r: int = 1) -> PermGroup:
    """PSL(2, q) acting by fractional-linear maps on P^1(F_q), q = ell^r >= 4.

    Points are indexed 0..q-1 by the canonical field-element encoding, with
    infinity last at index q. Generators are the unit transvections, plus
    transvections by the field generator when r > 1; the constructor checks
    the resulting order against q(q^2 - 1)/gcd(2, q - 1).
    """
    if not is_prime(ell):
        raise InvalidField(f"{ell} is not prime")
    field = ExtField(ell, r)
    q = field.q
    if q < 4:
        raise ValueError("q must be at least 4")
    inf = q

    def act(a: int, b: int, c: int, d: int) -> Perm:
        images = []
        for z in range(q):
            den = field.add(field.mul(c, z), d)
            num = field.add(field.mul(a, z), b)
            images.append(inf if den == 0 else field.mul(num, field.inv(den)))
        images.append(inf if c == 0 else field.mul(a, field.inv(c)))
        return tuple(images)

    one = 1
    gens = [act(one, one, 0, one), act(one, 0, one, one)]
    if r > 1:
        alpha = field._encode([0, 1])
        gens.append(act(one, alpha, 0, one))
        gens.append(act(one, 0, alpha, one))
    g = PermGroup(gens, degree=q + 1, tag=GroupTag.psl2(ell, r))
    expected = psl2_order(q)
    if g.order != expected:
        raise AssertionError(f"PSL(2,{q}) construction has order {g.order}, expected {expected}")
    return g


def parse_group_file(text: str, tag: GroupTag | None = None) -> PermGroup:
    """One generator per line in cycle notation; '#' starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("no generators in group file")
    perms = [perm.parse_perm(line) for line in lines]
    degree = max(len(p) for p in perms)
    return PermGroup([perm.extend(p, degree) for p in perms], degree=degree, tag=tag)


def format_group_file(g: PermGroup) -> str:
    return "\n".join(perm.format_perm(p) for p in g.generators) + "\n"


# ---------------------------------------------------------------------------
# Subgroup search
# ---------------------------------------------------------------------------

@dataclass
class SubgroupClass:
    """One conjugacy class of subgroups: a representative and its size."""

    elements: frozenset
    gens: tuple[Perm, ...]
    class_size: int

    @property
    def order(self) -> int:
        return len(self.elements)


def subgroup_classes(g: PermGroup, limit: int = SUBGROUP_ENUM_THRESHOLD) -> list[SubgroupClass]:
    """All subgroups up to conjugacy, by bottom-up cyclic extension.

    Every subgroup arises as <H, x> from some already-found H, so extending
    class representatives by right-coset representatives reaches every
    conjugacy class. Feasible for |G| <= the enumeration threshold.
    """
    if g.order > limit:
        raise TooLarge(f"|G| = {g.order} exceeds enumeration threshold {limit}")
    cached = getattr(g, "_subgroup_classes", None)
    if cached is not None:
        return cached
    elements = list(g.elements(limit))
    degree = g.degree
    ident = perm.identity(degree)

    seen: set[frozenset] = set()
    reps: list[SubgroupClass] = []

    def register(elems: frozenset, gens: tuple[Perm, ...]) -> bool:
        if elems in seen:
            return False
        # close the conjugacy class orbit under the group generators
        cls = {elems}
        queue = [elems]
        while queue:
            s = queue.pop()
            for c in g.generators:
                t = frozenset(perm.conjugate(x, c) for x in s)
                if t not in cls:
                    cls.add(t)
                    queue.append(t)
        seen.update(cls)
        reps.append(SubgroupClass(elems, gens, len(cls)))
        return True

    register(frozenset({ident}), ())
    for x in elements:
        if perm.is_identity(x):
            continue
        cyc = frozenset(_closure([x], degree))
        register(cyc, (x,))

    i = 0
    while i < len(reps):
        rep = reps[i]
        i += 1
        if rep.order == g.order:
            continue
        covered = set(rep.elements)
        for x in elements:
            if x in covered:
                continue
            coset = {perm.mult(s, x) for s in rep.elements}
            covered.update(coset)
            new_gens = rep.gens + (x,)
            closure = frozenset(_closure(list(new_gens), degree))
            register(closure, new_gens)
            if len(seen) > 200000:
                raise TooLarge("subgroup lattice too large to enumerate")
    g._subgroup_classes = reps
    return reps


def exists_subgroup_of_index_dividing(
    g_or_tag, n_bound: int, limit: int = SUBGROUP_ENUM_THRESHOLD
) -> tuple[bool, str]:
    """Is there a proper subgroup of index d with 1 < d and d | n_bound?

    Family tags answer from minimal-index tables; otherwise the subgroup
    lattice is enumerated (|G| <= threshold), else TooLarge is raised.
    Index 1 never counts. Returns (answer, witness text).
    """
    tag = g_or_tag.tag if isinstance(g_or_tag, PermGroup) else g_or_tag
    divisors = [d for d in range(2, n_bound + 1) if n_bound % d == 0]
    if not divisors:
        return False, "no divisor of the bound exceeds 1"

    table = _family_index_table(tag)
    if table is not None:
        known, min_other = table
        hits = sorted(set(divisors) & known)
        if hits:
            return True, f"{tag.describe()} has a subgroup of index {hits[0]} (family table)"
        if all(d < min_other for d in divisors):
            return False, (
                f"every proper subgroup of {tag.describe()} has index in "
                f"{sorted(known) or '{}'} or >= {min_other}; no divisor of {n_bound} qualifies"
            )
        # divisors at or above the minimal index: table alone cannot decide

    if isinstance(g_or_tag, PermGroup):
        if g_or_tag.order > limit:
            raise TooLarge(
                f"|G| = {g_or_tag.order} exceeds enumeration threshold and no table applies"
            )
        for rep in sorted(subgroup_classes(g_or_tag, limit), key=lambda r: -r.order):
            if rep.order == g_or_tag.order:
                continue
            index = g_or_tag.order // rep.order
            if index in divisors:
                gens = ", ".join(perm.format_perm(p) for p in rep.gens) or "()"
                return True, f"subgroup of order {rep.order}, index {index}, generated by {gens}"
        return False, f"exhaustive enumeration: no proper subgroup index divides {n_bound}"
    raise TooLarge("no concrete group available and the family table is inconclusive")


def _family_index_table(tag: GroupTag) -> tuple[set[int], int] | None:
    """(known small indices, minimal index of any other proper subgroup).

    Sources: S_n splits as index 2 plus index >= n; A_n and M_n have minimal
    index n; PSL(2, q) with q > 11 has minimal index q + 1 (Suzuki's subgroup
    list, as cited); U_3(q) with q not in {2, 5} has minimal index q^3 + 1
    (Mitchell's subgroup list, as cited, recorded but not re-derived).
    """
    if tag.kind == "symmetric" and tag.n >= 5:
        return {2}, tag.n
    if tag.kind == "alternating" and tag.n >= 5:
        return set(), tag.n
    if tag.kind == "mathieu" and tag.n in MATHIEU_ORDERS:
        return set(), tag.n
    if tag.kind == "psl2" and tag.q > 11:
        return set(), tag.q + 1
    if tag.kind == "psu3" and tag.q not in (2, 5):
        return set(), tag.q**3 + 1
    return None


def coset_action(g: PermGroup, h: PermGroup) -> PermGroup:
    """Action of g on the cosets of the subgroup h, kernel = core of h.

    Cosets are indexed in discovery order from the identity coset; the
    canonical key of a coset is its lexicographically smallest element, so
    the construction is deterministic.
    """
    for x in h.generators:
        if perm.extend(x, g.degree) not in g:
            raise NotSubgroup("claimed subgroup generator lies outside the group")
    h_elems = [perm.extend(x, g.degree) for x in h.elements()]

    def coset_key(x: Perm) -> Perm:
        return min(perm.mult(s, x) for s in h_elems)

    ident = perm.identity(g.degree)
    start = coset_key(ident)
    index = {start: 0}
    reps = [start]
    queue = [start]
    while queue:
        x = queue.pop(0)
        for gen in g.generators:
            y = coset_key(perm.mult(x, gen))
            if y not in index:
                index[y] = len(reps)
                reps.append(y)
                queue.append(y)
    images = []
    for gen in g.generators:
        images.append(tuple(index[coset_key(perm.mult(x, gen))] for x in reps))
    return PermGroup(images, degree=len(reps), tag=GroupTag.custom(n=len(reps)))
