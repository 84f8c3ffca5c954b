"""Polynomial arithmetic over F_p.

Polynomials are lists of ints (coefficient of t^i at index i) with no
trailing zeros; the zero polynomial is [].  Only what the decomposition
machinery needs: gcd/xgcd, modular powering, irreducibility, and finding a
nontrivial factor of a squarefree polynomial.
"""

from __future__ import annotations

import random


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: list[int]) -> int:
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def sub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def scale(f, c, p):
    c %= p
    return trim([a * c % p for a in f])


def monic(f, p):
    if not f:
        return []
    return scale(f, pow(f[-1], p - 2, p), p)


def divmod_poly(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], p - 2, p)
    while len(f) >= len(g) and trim(list(f)):
        f = trim(f)
        if len(f) < len(g):
            break
        c = f[-1] * inv % p
        d = len(f) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = (f[d + i] - c * b) % p
        f = trim(f)
    return trim(q), trim(f)


def mod_poly(f, g, p):
    return divmod_poly(f, g, p)[1]


def gcd_poly(f, g, p):
    f, g = trim(list(f)), trim(list(g))
    while g:
        f, g = g, mod_poly(f, g, p)
    return monic(f, p)


def xgcd_poly(f, g, p):
    """Return (d, u, v) with u*f + v*g = d = gcd(f, g), d monic."""
    r0, r1 = trim(list(f)), trim(list(g))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    c = pow(r0[-1], p - 2, p)
    return scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)


def powmod(f, e: int, m, p):
    """f^e mod m."""
    result = [1]
    base = mod_poly(f, m, p)
    while e:
        if e & 1:
            result = mod_poly(mul(result, base, p), m, p)
        e >>= 1
        base = mod_poly(mul(base, base, p), m, p)
    return result


def is_irreducible(f, p) -> bool:
    """Rabin's test: f irreducible over F_p."""
    f = monic(list(f), p)
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^n) == x mod f
    h = x
    for _ in range(n):
        h = powmod(h, p, f, p)
    if trim(sub(h, x, p)):
        return False
    for q in _prime_divisors(n):
        h = x
        for _ in range(n // q):
            h = powmod(h, p, f, p)
        if deg(gcd_poly(sub(h, x, p), f, p)) != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def nontrivial_factor(f, p, rng: random.Random) -> list[int] | None:
    """A proper monic factor of a squarefree reducible f, or None if irreducible."""
    f = monic(list(f), p)
    n = deg(f)
    if n <= 1:
        return None
    x = [0, 1]
    h = x
    for d in range(1, n // 2 + 1):
        h = powmod(h, p, f, p)
        g = gcd_poly(sub(h, x, p), f, p)
        if 0 < deg(g) < n:
            return g
        if deg(g) == n:
            # all irreducible factors have degree exactly d
            return _equal_degree_split(f, d, p, rng)
    return None


def _equal_degree_split(f, d: int, p: int, rng: random.Random) -> list[int]:
    """Cantor-Zassenhaus split of f = product of distinct degree-d irreducibles."""
    n = deg(f)
    assert n > d and n % d == 0
    for _ in range(200):
        r = trim([rng.randrange(p) for _ in range(n)])
        if deg(r) < 1:
            continue
        g = gcd_poly(r, f, p)
        if 0 < deg(g) < n:
            return g
        if p == 2:
            t = list(r)
            acc = list(r)
            for _ in range(d - 1):
                t = powmod(mul(t, t, p), 1, f, p)
                acc = add(acc, t, p)
            g = gcd_poly(acc, f, p)
        else:
            e = (p**d - 1) // 2
            g = gcd_poly(sub(powmod(r, e, f, p), [1], p), f, p)
        if 0 < deg(g) < n:
            return g
    raise RuntimeError("equal-degree splitting failed within retry budget")
