"""Dense univariate polynomial arithmetic over F_p.

Polynomials are lists of ints in ascending degree order with coefficients
reduced mod p; the zero polynomial is []. Factorization follows the usual
squarefree / distinct-degree / equal-degree pipeline.
"""

from __future__ import annotations

import random


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce(f: list[int], p: int) -> list[int]:
    return trim([c % p for c in f])


def degree(f: list[int]) -> int:
    """Degree with deg 0 = -1 for the zero polynomial."""
    return len(f) - 1


def add(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def scale(f: list[int], c: int, p: int) -> list[int]:
    return trim([a * c % p for a in f])


def divmod_poly(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = degree(g)
    lg_inv = pow(g[-1], -1, p)
    quot = [0] * max(0, len(f) - dg)
    while degree(f) >= dg:
        shift = degree(f) - dg
        c = f[-1] * lg_inv % p
        quot[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        trim(f)
    return trim(quot), f


def monic(f: list[int], p: int) -> list[int]:
    if not f:
        return []
    return scale(f, pow(f[-1], -1, p), p)


def gcd(f: list[int], g: list[int], p: int) -> list[int]:
    while g:
        f, g = g, divmod_poly(f, g, p)[1]
    return monic(f, p)


def derivative(f: list[int], p: int) -> list[int]:
    return trim([i * c % p for i, c in enumerate(f)][1:])


def pow_mod(f: list[int], e: int, mod: list[int], p: int) -> list[int]:
    """f^e reduced mod the polynomial `mod`."""
    result = [1]
    base = divmod_poly(f, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, base, p), mod, p)[1]
        base = divmod_poly(mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_squarefree(f: list[int], p: int) -> bool:
    return degree(gcd(f, derivative(f, p), p)) <= 0


def squarefree_part(f: list[int], p: int) -> list[int]:
    """Product of the distinct irreducible factors of f.

    Handles the p-th power collapse (f' = 0) that occurs in characteristic p.
    """
    f = monic(f, p)
    if degree(f) <= 0:
        return f
    d = derivative(f, p)
    if not d:
        # f is a p-th power: f(x) = h(x^p) = h(x)^p over F_p.
        h = [f[i] for i in range(0, len(f), p)]
        return squarefree_part(h, p)
    g = gcd(f, d, p)
    w = divmod_poly(f, g, p)[0]
    if degree(g) == 0:
        return w
    # The factors of g not already in w are p-th power contributions.
    rest = g
    while True:
        c = gcd(rest, w, p)
        if degree(c) == 0:
            break
        rest = divmod_poly(rest, c, p)[0]
    if degree(rest) == 0:
        return w
    return mul(w, squarefree_part(rest, p), p)


def distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Distinct-degree splitting of a squarefree monic f.

    Returns pairs (g, d) where g is the product of all irreducible factors
    of degree exactly d, with d increasing.
    """
    f = monic(f, p)
    out = []
    h = [0, 1]  # x
    d = 0
    while degree(f) > 0:
        d += 1
        if 2 * d > degree(f):
            out.append((f, degree(f)))
            break
        h = pow_mod(h, p, f, p)
        g = gcd(sub(h, [0, 1], p), f, p)
        if degree(g) > 0:
            out.append((g, d))
            f = divmod_poly(f, g, p)[0]
            h = divmod_poly(h, f, p)[1]
    return out


def factor_degrees(f: list[int], p: int) -> list[int]:
    """Sorted multiset of irreducible factor degrees of a squarefree f."""
    degs = []
    for g, d in distinct_degree(f, p):
        degs.extend([d] * (degree(g) // d))
    return sorted(degs)


def is_irreducible(f: list[int], p: int) -> bool:
    f = monic(f, p)
    n = degree(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if not is_squarefree(f, p):
        return False
    dd = distinct_degree(f, p)
    return len(dd) == 1 and dd[0][1] == n


def _split_equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus split of a product f of degree-d irreducibles, p odd."""
    n = degree(f)
    if n == d:
        return [f]
    e = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)] + [1]
        a = divmod_poly(a, f, p)[1]
        if degree(a) <= 0:
            continue
        g = gcd(a, f, p)
        if 0 < degree(g) < n:
            pass
        else:
            b = pow_mod(a, e, f, p)
            g = gcd(sub(b, [1], p), f, p)
            if not 0 < degree(g) < n:
                continue
        left = _split_equal_degree(g, d, p, rng)
        right = _split_equal_degree(divmod_poly(f, g, p)[0], d, p, rng)
        return left + right


def factor_squarefree(f: list[int], p: int, seed: int = 0) -> list[list[int]]:
    """Monic irreducible factors of a squarefree f over F_p, p odd, sorted.

    Equal-degree splitting is randomized; the seed makes runs reproducible.
    """
    if p == 2:
        raise NotImplementedError("equal-degree splitting implemented for odd p only")
    rng = random.Random(seed)
    factors = []
    for g, d in distinct_degree(f, p):
        factors.extend(_split_equal_degree(g, d, p, rng))
    return sorted(factors)
