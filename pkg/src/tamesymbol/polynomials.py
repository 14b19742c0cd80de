"""Univariate polynomials over a ``FiniteField``.

A polynomial is a tuple of field encodings, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  All functions take the field
as first argument.
"""

import random

from .errors import ZeroInput
from .fields import embedding, make_field


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def degree(a):
    return len(a) - 1


def const(c):
    return (c,) if c else ()


X = (0, 1)


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return trim(out)


def neg(F, a):
    return tuple(F.neg(c) for c in a)


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if not c:
        return ()
    return tuple(F.mul(x, c) for x in a)


def mul(F, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    fm, fa = F.mul, F.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fa(out[i + j], fm(x, y))
    return trim(out)


def power(F, a, e):
    result = (1,)
    while e:
        if e & 1:
            result = mul(F, result, a)
        a = mul(F, a, a)
        e >>= 1
    return result


def divmod_(F, a, b):
    if not b:
        raise ZeroInput("polynomial division by zero")
    a = list(a)
    inv = F.inv(b[-1])
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    while len(a) > db and a:
        c = F.mul(a[-1], inv)
        shift = len(a) - 1 - db
        quot[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, y))
        a = list(trim(a))
    return trim(quot), tuple(a)


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """(g, s, t) with s a + t b = g monic."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
        t0, t1 = t1, sub(F, t0, mul(F, qt, t1))
    if not r0:
        return (), (), ()
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        k = i % F.p
        term = 0
        for _ in range(k):
            term = F.add(term, c)
        out.append(term)
    return trim(out)


def map_coeffs(f, a):
    return trim(f(c) for c in a)


def powmod(F, a, e, m):
    result = (1,)
    a = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, a), m)
        a = mod(F, mul(F, a, a), m)
        e >>= 1
    return result


def taylor_shift(F, a, c):
    """Coefficients of a(c + s) as a polynomial in s."""
    coeffs = list(a)
    n = len(coeffs)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            coeffs[j] = F.add(coeffs[j], F.mul(c, coeffs[j + 1]))
    return trim(coeffs)


def reverse(a, d=None):
    """s^d a(1/s) with d = deg a by default."""
    if d is None:
        d = len(a) - 1
    out = [0] * (d + 1)
    for i, c in enumerate(a):
        out[d - i] = c
    return trim(out)


def from_roots(F, roots):
    out = (1,)
    for r in roots:
        out = mul(F, out, (F.neg(r), 1))
    return out


def compose_powers(F, a, m):
    """a(t)^ -> a(t^m)."""
    out = [0] * ((len(a) - 1) * m + 1) if a else []
    for i, c in enumerate(a):
        out[i * m] = c
    return trim(out)


# ---------------------------------------------------------------------------
# factorization (squarefree, distinct degree, Cantor-Zassenhaus)


def _pth_root(F, a):
    p = F.p
    out = []
    for i in range(0, len(a), p):
        out.append(F.pow(a[i], F.q // p))
    return trim(out)


def squarefree_factorization(F, f):
    """List of (g, e) with f = lc * prod g^e, each g squarefree and monic."""
    f = monic(F, f)
    out = []
    if len(f) <= 1:
        return out
    d = derivative(F, f)
    if not d:
        for g, e in squarefree_factorization(F, _pth_root(F, f)):
            out.append((g, e * F.p))
        return out
    c = gcd(F, f, d)
    w = divmod_(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if len(z) > 1:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if len(c) > 1:
        for g, e in squarefree_factorization(F, _pth_root(F, c)):
            out.append((g, e * F.p))
    return out


def distinct_degree_factorization(F, f):
    out = []
    h = X
    d = 0
    f = monic(F, f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, X))
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree_factorization(F, f, d, rng):
    n = len(f) - 1
    if n == d:
        return [monic(F, f)]
    while True:
        a = trim(rng.randrange(F.q) for _ in range(n))
        if len(a) < 2:
            continue
        if F.p == 2:
            t = a
            cur = a
            for _ in range(F.n * d - 1):
                cur = mod(F, mul(F, cur, cur), f)
                t = add(F, t, cur)
            b = t
        else:
            b = sub(F, powmod(F, a, (F.q ** d - 1) // 2, f), (1,))
        g = gcd(F, f, b)
        if 1 < len(g) < len(f):
            return (equal_degree_factorization(F, g, d, rng)
                    + equal_degree_factorization(F, divmod_(F, f, g)[0], d, rng))


def factor(F, f, seed=0):
    """Factor f into (leading coefficient, [(monic irreducible, multiplicity), ...]).

    The factor list is sorted by (degree, coefficients) so the output is
    deterministic.
    """
    if not f:
        raise ZeroInput("cannot factor the zero polynomial")
    rng = random.Random(seed)
    lc = f[-1]
    factors = {}
    for g, e in squarefree_factorization(F, f):
        for h, d in distinct_degree_factorization(F, g):
            for irr in equal_degree_factorization(F, h, d, rng):
                factors[irr] = factors.get(irr, 0) + e
    return lc, sorted(factors.items(), key=lambda it: (len(it[0]), it[0]))


def is_irreducible(F, f):
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(F, f)
    if sub(F, powmod(F, X, F.q ** n, f), X):
        return False
    from .fields import prime_factors
    for r in prime_factors(n):
        h = sub(F, powmod(F, X, F.q ** (n // r), f), X)
        if len(gcd(F, f, h)) != 1:
            return False
    return True


def roots(F, f, seed=0):
    """All roots of f lying in F, sorted by encoding."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    g = gcd(F, f, sub(F, powmod(F, X, F.q, f), X))
    if len(g) <= 1:
        return []
    rng = random.Random(seed)
    lin = equal_degree_factorization(F, g, 1, rng)
    return sorted(F.neg(h[0]) for h in lin)


def roots_in_extension(base, f, d, seed=0):
    """Roots in F_{q^d} of f over base = F_q, with the field and embedding used."""
    big = make_field(base.p, base.n * d)
    emb = embedding(base, big)
    return roots(big, map_coeffs(emb, f), seed), big, emb


def minimal_polynomial(emb, alpha):
    """Minimal polynomial over emb.small of alpha in emb.big (monic, small encodings)."""
    conj = []
    cur = alpha
    while True:
        conj.append(cur)
        cur = emb.frobenius(cur)
        if cur == alpha:
            break
    big_poly = from_roots(emb.big, conj)
    return tuple(emb.pullback(c) for c in big_poly)
