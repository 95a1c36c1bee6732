"""Closed-form arithmetic: genus, weight multiplicity profiles, cyclotomic
polynomial factorization, and the cyclotomic-module rank h_E.

Everything here is exact integer arithmetic; no group computation is
involved. The standing hypothesis is that either p does not divide n or
q = p^r divides n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .fields import is_prime


class HypothesisViolated(ValueError):
    """p | n but q does not divide n: outside the standing hypothesis."""


class NotApplicable(ValueError):
    """Requested quantity has no closed form in this branch."""


class NotDivisible(ValueError):
    """phi(q) does not divide 2*dim: the cyclotomic rank is not integral."""


def euler_phi_prime_power(p: int, i: int) -> int:
    return (p - 1) * p ** (i - 1)


@dataclass(frozen=True)
class CurveParams:
    """Degree n >= 4, odd prime p, exponent r >= 1; q = p^r."""

    n: int
    p: int
    r: int = 1

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("degree n must be >= 4")
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p = {self.p} must be an odd prime")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.n % self.p == 0 and self.n % self.q != 0:
            raise HypothesisViolated(
                f"p = {self.p} divides n = {self.n} but q = {self.q} does not"
            )

    @property
    def q(self) -> int:
        return self.p**self.r


def genus(params: CurveParams) -> int:
    """(q-1)(n-1)/2 when p does not divide n, (q-1)(n-2)/2 when q | n."""
    n, q = params.n, params.q
    if n % params.p != 0:
        return (q - 1) * (n - 1) // 2
    return (q - 1) * (n - 2) // 2


def heart_dim(n: int, p: int) -> int:
    return n - 2 if n % p == 0 else n - 1


@dataclass(frozen=True)
class WeightProfile:
    """Multiplicities i -> floor(n*i/q) over 1 <= i < q with p not dividing i.

    gcd treats absent/zero entries as neutral (gcd(0, x) = x); support
    counts the nonzero multiplicities. The multiplicities sum to
    phi(q)(n-1)/2, the dimension of the abelian subvariety they grade;
    for r = 1 that number coincides with the curve genus.
    """

    params: CurveParams
    mults: tuple[tuple[int, int], ...]  # (i, multiplicity), i ascending

    @property
    def genus(self) -> int:
        """Genus of the curve itself, (q-1)(n-1)/2 here since p never divides n."""
        return genus(self.params)

    @property
    def dimension(self) -> int:
        """Sum of the multiplicities: phi(q)(n-1)/2."""
        return sum(m for _, m in self.mults)

    @property
    def gcd(self) -> int:
        g = 0
        for _, m in self.mults:
            g = gcd(g, m)
        return g

    @property
    def support(self) -> int:
        return sum(1 for _, m in self.mults if m != 0)

    @property
    def h_E(self) -> int:
        return h_E(self.dimension, self.params.p, self.params.r)

    def table(self) -> str:
        lines = ["i, n_sigma_i"]
        for i, m in self.mults:
            lines.append(f"{i}, {m}")
        lines.append(f"genus {self.genus} gcd {self.gcd} support {self.support}")
        return "\n".join(lines) + "\n"


def weight_profile(params: CurveParams) -> WeightProfile:
    """The closed-form profile; only stated when p does not divide n."""
    if params.n % params.p == 0:
        raise NotApplicable("multiplicity formula requires p not dividing n")
    q = params.q
    mults = tuple(
        (i, params.n * i // q) for i in range(1, q) if i % params.p != 0
    )
    return WeightProfile(params, mults)


def csa_constraints(profile: WeightProfile, candidate_d: int) -> bool:
    """Can a central simple algebra of dimension candidate_d^2 act?

    Requires candidate_d to divide every nonzero multiplicity and
    candidate_d * support <= genus; used contrapositively to exclude
    dimensions.
    """
    if candidate_d < 1:
        raise ValueError("candidate_d must be >= 1")
    for _, m in profile.mults:
        if m != 0 and m % candidate_d != 0:
            return False
    return candidate_d * profile.support <= profile.genus


def cyclotomic_poly_prime_power(p: int, i: int) -> list[int]:
    """Phi_{p^i}(t) = sum_{j<p} t^(j * p^(i-1)), ascending coefficients."""
    step = p ** (i - 1)
    out = [0] * ((p - 1) * step + 1)
    for j in range(p):
        out[j * step] = 1
    return out


def _poly_mul_z(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


@dataclass(frozen=True)
class CyclotomicData:
    p: int
    r: int
    factors: tuple[tuple[int, ...], ...]  # Phi_{p^i} for i = 1..r
    product: tuple[int, ...]              # their product = (t^q - 1)/(t - 1)

    @property
    def total_degree(self) -> int:
        return len(self.product) - 1


def cyclotomic_data(p: int, r: int) -> CyclotomicData:
    """Phi_{p^i} for 1 <= i <= r and their product (t^q - 1)/(t - 1).

    Degrees phi(p^i) sum to q - 1.
    """
    factors = [cyclotomic_poly_prime_power(p, i) for i in range(1, r + 1)]
    prod = [1]
    for f in factors:
        prod = _poly_mul_z(prod, f)
    return CyclotomicData(p, r, tuple(tuple(f) for f in factors), tuple(prod))


def h_E(dim_z: int, p: int, r: int) -> int:
    """2*dim / phi(q): the rank of a cyclotomic module on a dim-dimensional
    abelian variety; NotDivisible signals the freeness hypothesis fails."""
    phi = euler_phi_prime_power(p, r)
    if (2 * dim_z) % phi != 0:
        raise NotDivisible(f"phi({p}^{r}) = {phi} does not divide 2*{dim_z}")
    return 2 * dim_z // phi
