"""Seeded random finite pairing models for the orthogonality engine.

A model is A = C + D with C = + Z/c_i, D = + Z/e_i, c_i = gcd(e_i, m), and a
pairing that is hyperbolic between C and D ((C_i, D_i) = u_i m/c_i with u_i a
unit), zero on C x C and random on D x D.  Then alpha: C -> Hom(A/C, Z/m) is
an isomorphism by construction.  A fraction of models carry an extra radical
summand, or a proper subgroup as C, so that hypothesis (i) fails; when some
e_i does not divide m hypothesis (ii) can fail as well.  B is either a random
isotropic subgroup grown greedily, a coordinate Lagrangian C_S + D_T, or a
subgroup of C.
"""

import json
import math
import random

from .orthogonality import PairingModel

MODULI = (2, 3, 4, 5, 6, 8, 9, 12)


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _unit(rng, n):
    if n == 1:
        return 0
    while True:
        u = rng.randrange(1, n)
        if math.gcd(u, n) == 1:
            return u


def random_model(rng, max_order=4096):
    """Return (PairingModel, B generators, C generators, metadata)."""
    while True:
        m = rng.choice(MODULI)
        k = rng.choice((1, 1, 2, 2, 3))
        es = []
        for _ in range(k):
            e = rng.choice([d for d in _divisors(m) if d > 1])
            if rng.random() < 0.2:
                e *= 2
            es.append(e)
        cs = [math.gcd(e, m) for e in es]
        radical = []
        if rng.random() < 0.1:
            radical = [rng.choice([d for d in _divisors(m) if d > 1])]
        mods = cs + es + radical
        if math.prod(mods) <= max_order:
            break
    symmetry = "antisymmetric" if rng.random() < 0.8 else "symmetric"
    sign = -1 if symmetry == "antisymmetric" else 1
    r = len(mods)
    G = [[0] * r for _ in range(r)]
    mode = rng.choice(("greedy", "greedy", "lagrangian", "inside"))
    S = {i for i in range(k) if rng.random() < 0.5}
    for i in range(k):
        v = _unit(rng, cs[i]) * (m // cs[i])
        G[i][k + i] = v % m
        G[k + i][i] = (sign * v) % m
    for i in range(k):
        for j in range(i, k):
            if i == j and symmetry == "antisymmetric":
                continue
            if mode == "lagrangian" and i not in S and j not in S:
                continue
            g = math.gcd(math.gcd(es[i], es[j]), m)
            v = rng.randrange(g) * (m // g)
            G[k + i][k + j] = v % m
            G[k + j][k + i] = (sign * v) % m
    P = PairingModel(mods, m, G, symmetry)
    unit = [tuple(int(a == b) for b in range(r)) for a in range(r)]
    C = [unit[i] for i in range(k)]
    if rng.random() < 0.1 and k:
        j = rng.randrange(k)
        C[j] = tuple(v * rng.choice([d for d in _divisors(cs[j])]) for v in C[j])
    if mode == "lagrangian":
        B = [unit[i] for i in S] + [unit[k + j] for j in range(k) if j not in S]
    elif mode == "inside":
        B = [tuple((rng.randrange(m) * v) % d for v, d in zip(c, mods)) for c in C]
    else:
        B = _greedy_isotropic(P, rng, rng.randint(1, 3))
    meta = {"mode": mode, "radical": bool(radical), "symmetry": symmetry}
    return P, B, C, meta


def _greedy_isotropic(P, rng, tries):
    B = []
    for _ in range(tries * 4):
        x = tuple(rng.randrange(d) for d in P.mods)
        if P.pair(x, x) == 0 and all(P.pair(x, b) == 0 and P.pair(b, x) == 0 for b in B):
            B.append(x)
        if len(B) >= tries:
            break
    return B


def model_stream(seed, count, max_order=4096):
    """Deterministic stream: model i uses the sub-seed (seed, i)."""
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        yield (i,) + random_model(rng, max_order)


def dump_models(models, path):
    data = [{"model": P.to_dict(), "B": [list(b) for b in B], "C": [list(c) for c in C]}
            for P, B, C in models]
    with open(path, "w") as fh:
        json.dump({"format": "tamesymbol-models/1", "models": data}, fh, indent=1)


def load_models(path):
    with open(path) as fh:
        data = json.load(fh)
    out = []
    for item in data["models"]:
        P = PairingModel.from_dict(item["model"])
        out.append((P, [tuple(b) for b in item["B"]], [tuple(c) for c in item["C"]]))
    return out
