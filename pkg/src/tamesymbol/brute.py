"""Enumeration oracle for finite pairing models.

Everything here works on explicit element lists (numpy arrays of coordinate
rows) and boolean membership masks, independent of the lattice code in
``abelian``.  Isomorphism types are read off torsion counts |G[n]|.
"""

import math

import numpy as np

from .abelian import invariants_from_torsion


class Enumerated:
    """All elements of A = + Z/d_i with index arithmetic."""

    def __init__(self, mods):
        self.mods = np.array(mods, dtype=np.int64)
        self.r = len(mods)
        self.size = int(math.prod(mods))
        grids = np.indices(tuple(mods)).reshape(self.r, -1).T if self.r else np.zeros((1, 0), np.int64)
        self.elems = grids.astype(np.int64)
        radix = [1] * self.r
        for i in range(self.r - 2, -1, -1):
            radix[i] = radix[i + 1] * int(mods[i + 1])
        self.radix = np.array(radix, dtype=np.int64)

    def index(self, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.r) % self.mods
        return rows @ self.radix if self.r else np.zeros(len(rows), np.int64)

    def mask_of(self, rows):
        m = np.zeros(self.size, bool)
        m[self.index(rows)] = True
        return m

    def span(self, gens):
        """Mask of the subgroup generated by ``gens``."""
        mask = np.zeros(self.size, bool)
        mask[0] = True
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        while True:
            cur = self.elems[mask]
            new = mask.copy()
            for g in gens:
                new[self.index(cur + g)] = True
            if new.sum() == mask.sum():
                return mask
            mask = new

    def sum_masks(self, a, b):
        ea = self.elems[a]
        eb = self.elems[b]
        out = np.zeros(self.size, bool)
        for row in eb:
            out[self.index(ea + row)] = True
        return out

    def quotient_invariants(self, X, Y):
        """Invariants of X/Y for masks Y <= X."""
        ex = self.elems[X]
        ny = int(Y.sum())
        order = int(X.sum()) // ny

        def count(n):
            return int(Y[self.index(ex * n)].sum()) // ny

        return invariants_from_torsion(count, order)


def orth_mask(En, gram, m, gens):
    """Mask of {a : (a, g) = 0 for every g in gens}."""
    if not len(gens):
        return np.ones(En.size, bool)
    G = np.array(gram, dtype=np.int64)
    vals = (En.elems @ G @ np.array(gens, dtype=np.int64).T) % m
    return ~vals.any(axis=1)


def hom_invariants(invs, m):
    return tuple(g for g in (math.gcd(d, m) for d in invs) if g != 1)


def hom_vectors(mods, m, kill_rows):
    """All v in (Z/m)^r with d_i v_i = 0 and v . k = 0 for every row k."""
    choices = [np.arange(0, m, m // math.gcd(d, m)) for d in mods]
    if not mods:
        return np.zeros((1, 0), np.int64)
    grid = np.stack(np.meshgrid(*choices, indexing="ij"), -1).reshape(-1, len(mods))
    if len(kill_rows):
        vals = (grid @ np.array(kill_rows, dtype=np.int64).T) % m
        grid = grid[~vals.any(axis=1)]
    return grid


def vector_quotient_invariants(m, H, I):
    """Invariants of H/I for explicit sets of vectors in (Z/m)^r (I <= H)."""
    iset = {tuple(v) for v in I}
    order = len(H) // len(iset)

    def count(n):
        return sum(1 for v in H if tuple((n * v) % m) in iset) // len(iset)

    return invariants_from_torsion(count, order)


def oracle_report(P, B, C):
    """Prop/Cor statements evaluated purely by enumeration."""
    En = Enumerated(P.mods)
    m = P.m
    Bm = En.span(B.gens)
    Cm = En.span(C.gens)
    BnC = Bm & Cm
    BpC = En.span(list(B.gens) + list(C.gens))
    Bperp = orth_mask(En, P.gram, m, B.gens)
    Ap = orth_mask(En, P.gram, m, En.elems[BnC])
    Apperp = orth_mask(En, P.gram, m, En.elems[Ap])
    A = np.ones(En.size, bool)
    out = {"B^perp_order": int(Bperp.sum()), "A'_order": int(Ap.sum())}

    # condition (i): alpha injective and |C| = |Hom(A/C, N)|
    AC = En.quotient_invariants(A, Cm)
    G = np.array(P.gram, dtype=np.int64)
    cvals = (En.elems[Cm] @ G.T) % m  # rows: ((e_i, c))_i
    inj = int((~cvals.any(axis=1)).sum()) == 1
    out["i"] = inj and int(Cm.sum()) == math.prod(hom_invariants(AC, m))
    # condition (ii): |Hom(A/(B+C))| / |Hom(A/A')| = |Hom(A'/(B+C))|
    Q = En.quotient_invariants(Ap, BpC)
    hA = math.prod(hom_invariants(En.quotient_invariants(A, BpC), m))
    hAp = math.prod(hom_invariants(En.quotient_invariants(A, Ap), m))
    out["ii"] = hA // hAp == math.prod(hom_invariants(Q, m))
    out["Q"] = Q

    F1num = En.sum_masks(Bperp & Cm, Bm)
    F2num = En.sum_masks(Apperp & Cm, Bm)
    out["F0/F1"] = En.quotient_invariants(Bperp, F1num)
    out["F1/F2"] = En.quotient_invariants(F1num, F2num)
    out["F2"] = En.quotient_invariants(F2num, Bm)
    out["Im(B^perp)"] = En.quotient_invariants(En.sum_masks(Bperp, BpC), BpC)
    out["Hom(Q,N)"] = hom_invariants(Q, m)
    # Coker(beta) inside Hom(A/A', N) realized as value vectors on e_i
    Hvec = hom_vectors(P.mods, m, En.elems[Ap])
    Ivec = np.unique((En.elems[BnC] @ G.T) % m, axis=0)
    out["Coker(beta)"] = vector_quotient_invariants(m, Hvec, Ivec)
    out["beta_injective"] = int((~((En.elems[BnC] @ G.T) % m).any(axis=1)).sum()) == 1
    out["B_equals_Bperp"] = bool((Bm == Bperp).all())
    out["image_of_Bperp_order"] = int(En.sum_masks(Bperp, BpC).sum()) // int(BpC.sum())
    return out
