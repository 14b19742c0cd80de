"""Orthogonals of isotropic subgroups for a bilinear pairing A x A -> Z/m.

Given isotropic B, C <= A put A' = (B n C)^perp.  The module computes the
filtration B^perp/B = F0 > F1 > F2 with

    F1 = image of B^perp n C,   F2 = image of A'^perp n C,

and checks each adjoint quotient against its description through an explicit
natural map: F0/F1 against the image of B^perp in A'/(B+C), F1/F2 against
Hom(A'/(B+C), Z/m), F2 against the cokernel of beta.  It also covers the
equality B = B^perp under unimodularity, the extension-valued map gamma and
the description of F0/F1 as its kernel when A/A' splits off.

Every finite group here is in invariant form ``A = Z/d_1 + ... + Z/d_r``; a
general presentation is converted by ``PairingModel.from_presentation``.
"""

import math

from .abelian import (FgAbGroup, HomGroup, Subgroup, Subquotient, elementary_divisors,
                      map_kernel_image, solve_integer)
from .errors import HypothesisFailed, NotInAPrime, NotIsotropic
from .extensions import ExtensionClass, _add, _elements

SYMMETRIES = ("symmetric", "antisymmetric", "none")


class PairingModel:
    """A finite group A = + Z/d_i with a Z/m-valued bilinear pairing given by ``gram``."""

    def __init__(self, mods, m, gram, symmetry="antisymmetric"):
        self.mods = tuple(int(d) for d in mods)
        self.m = int(m)
        r = len(self.mods)
        self.gram = [[int(gram[i][j]) % self.m for j in range(r)] for i in range(r)]
        if symmetry not in SYMMETRIES:
            raise ValueError(f"symmetry must be one of {SYMMETRIES}")
        self.symmetry = symmetry
        self._validate()

    def _validate(self):
        r, m, G = len(self.mods), self.m, self.gram
        for i in range(r):
            for j in range(r):
                if (self.mods[i] * G[i][j]) % m or (G[i][j] * self.mods[j]) % m:
                    raise ValueError(f"gram entry ({i},{j}) is incompatible with the relations")
                if self.symmetry == "symmetric" and G[i][j] != G[j][i]:
                    raise ValueError("gram is not symmetric")
                if self.symmetry == "antisymmetric" and (G[i][j] + G[j][i]) % m:
                    raise ValueError("gram is not antisymmetric")

    @classmethod
    def from_presentation(cls, group, m, gram, symmetry="antisymmetric"):
        """Transport a gram matrix on the generators of an FgAbGroup to invariant form."""
        if not group.is_finite:
            raise ValueError("pairing models need a finite group")
        gens = group.canonical_generators()
        g2 = [[sum(a * gram[i][j] * b for i, a in enumerate(u) for j, b in enumerate(v)) % m
               for v in gens] for u in gens]
        return cls(group.invariants, m, g2, symmetry)

    @property
    def order(self):
        return math.prod(self.mods)

    def pair(self, x, y):
        G = self.gram
        return sum(x[i] * G[i][j] * y[j] for i in range(len(x)) if x[i]
                   for j in range(len(y)) if y[j]) % self.m

    def row(self, x):
        """Values (x, e_j) for the standard generators e_j."""
        r = len(self.mods)
        return tuple(sum(x[i] * self.gram[i][j] for i in range(r)) % self.m for j in range(r))

    def col(self, y):
        """Values (e_i, y)."""
        r = len(self.mods)
        return tuple(sum(self.gram[i][j] * y[j] for j in range(r)) % self.m for i in range(r))

    def subgroup(self, gens):
        return Subgroup(self.mods, gens)

    def whole(self):
        return Subgroup.whole(self.mods)

    def zero(self):
        return Subgroup.zero(self.mods)

    def to_dict(self):
        return {"mods": list(self.mods), "m": self.m, "gram": self.gram,
                "symmetry": self.symmetry}

    @classmethod
    def from_dict(cls, d):
        return cls(d["mods"], d["m"], d["gram"], d.get("symmetry", "antisymmetric"))


def orthogonal(E, P):
    """E^perp = {a in A : (a, e) = 0 for all e in E}."""
    r = len(P.mods)
    units = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    if not E.gens:
        return P.whole()
    cols = [P.col(e) for e in E.gens]
    images = [tuple(c[i] for c in cols) for i in range(r)]
    kernel, _ = map_kernel_image(P.mods, units, images, P.m)
    return kernel


def is_isotropic(E, P):
    return all(P.pair(x, y) == 0 for x in E.gens for y in E.gens)


def _hom_values(P, elems, quotient):
    """Map c -> (lift_j, c)_j into Hom(quotient, Z/m), for each c in elems."""
    return [tuple(P.pair(l, c) for l in quotient.lifts) for c in elems]


def induced_map(P, S, quotient):
    """c -> ([a] -> (a, c)) from S into Hom(quotient, Z/m).

    Returns (kernel subgroup of A, image subgroup inside the Hom group's
    ambient (Z/m)^k, HomGroup).
    """
    hom = HomGroup(quotient.invariants, P.m)
    images = _hom_values(P, S.gens, quotient)
    kernel, image = map_kernel_image(P.mods, S.gens, images, P.m, hom.as_subgroup)
    return kernel, image, hom


def alpha_map(B, C, P):
    """alpha: C -> Hom(A/C, Z/m); returns a dict with the map data and iso flags."""
    if not is_isotropic(C, P):
        raise NotIsotropic("C is not contained in its orthogonal")
    Q = Subquotient(P.whole(), C)
    kernel, image, hom = induced_map(P, C, Q)
    injective = kernel.order == 1
    surjective = image.order == hom.order
    return {"injective": injective, "surjective": surjective,
            "iso": injective and surjective, "kernel": kernel, "image_order": image.order,
            "hom_order": hom.order, "quotient": Q,
            "matrix": _hom_values(P, C.gens, Q)}


def restriction_surjective(P, big, small_quotient):
    """Is Hom(A/(B+C), N) -> Hom(A'/(B+C), N) onto?  Checked on explicit bases."""
    hom_big = HomGroup(big.invariants, P.m)
    hom_small = HomGroup(small_quotient.invariants, P.m)
    restricted = []
    coords = [big.canonical(l) for l in small_quotient.lifts]
    for j, g in enumerate(hom_big.gcds):
        v = P.m // g
        restricted.append(tuple((c[j] * v) % P.m for c in coords))
    if not hom_small.source:
        return True, 1, 1
    image = Subgroup((P.m,) * len(hom_small.source), restricted)
    return image.order == hom_small.order, image.order, hom_small.order


class Setup:
    """The groups attached to (A, B, C, pairing), computed once."""

    def __init__(self, P, B, C):
        if not is_isotropic(B, P):
            raise NotIsotropic("B is not isotropic")
        if not is_isotropic(C, P):
            raise NotIsotropic("C is not isotropic")
        self.P, self.B, self.C = P, B, C
        self.A = P.whole()
        self.BnC = B & C
        self.BpC = B + C
        self.Ap = orthogonal(self.BnC, P)
        self.Bperp = orthogonal(B, P)
        self.Apperp = orthogonal(self.Ap, P)
        self.Q = Subquotient(self.Ap, self.BpC)          # A'/(B+C)
        self.A_mod_BC = Subquotient(self.A, self.BpC)   # A/(B+C)
        self.A_mod_Ap = Subquotient(self.A, self.Ap)    # A/A'


def _check_iso(name, left_invariants, right_invariants, natural_ok, detail):
    same = tuple(elementary_divisors(left_invariants)) == tuple(elementary_divisors(right_invariants))
    return {"name": name, "left": list(left_invariants), "right": list(right_invariants),
            "natural_map_bijective": natural_ok, "invariants_agree": same,
            "ok": natural_ok and same, **detail}


def beta_map(S):
    """beta: B n C -> Hom(A/A', Z/m)."""
    kernel, image, hom = induced_map(S.P, S.BnC, S.A_mod_Ap)
    return {"injective": kernel.order == 1, "kernel": kernel, "image": image, "hom": hom}


def filtration(P, B, C, strict=True):
    """F0 > F1 > F2 on B^perp/B with the three adjoint-quotient checks.

    Hypotheses (i) alpha iso and (ii) surjectivity of restriction of Hom are
    evaluated first.  When one fails and ``strict`` is set, HypothesisFailed is
    raised with the report attached; the isomorphism checks are then not run.
    """
    S = Setup(P, B, C)
    alpha = alpha_map(B, C, P)
    surj, img, tot = restriction_surjective(P, S.A_mod_BC, S.Q)
    F1num = (S.Bperp & C) + B
    F2num = (S.Apperp & C) + B
    report = {
        "orders": {"A": P.order, "B": B.order, "C": C.order, "B^perp": S.Bperp.order,
                   "A'": S.Ap.order, "A'/(B+C)": S.Q.order},
        "F0": Subquotient(S.Bperp, B).invariants,
        "F1": Subquotient(F1num, B).invariants,
        "F2": Subquotient(F2num, B).invariants,
        "hypothesis_i": alpha["iso"],
        "hypothesis_ii": surj,
        "checks": [],
    }
    beta = beta_map(S)
    report["beta_injective"] = beta["injective"]
    report["setup"] = S
    if not alpha["iso"]:
        if strict:
            raise HypothesisFailed("i", report)
        return report
    if not surj:
        if strict:
            raise HypothesisFailed("ii", report)
        return report

    # F0/F1 = B^perp / (B + B^perp n C) against Im(B^perp -> A'/(B+C))
    kernel_of_zeta = S.Bperp & S.BpC
    natural = kernel_of_zeta == F1num
    left = Subquotient(S.Bperp, F1num).invariants
    right = Subquotient(S.Bperp + S.BpC, S.BpC).invariants
    report["checks"].append(_check_iso("F0/F1 ~ Im(B^perp -> A'/(B+C))", left, right, natural,
                                       {"kernel_equality": natural}))

    # F1/F2 = (B^perp n C)/(A'^perp n C) against Hom(A'/(B+C), N)
    BpnC = S.Bperp & C
    kernel, image, hom = induced_map(P, BpnC, S.Q)
    natural = kernel == (S.Apperp & C) and image.order == hom.order
    left = Subquotient(F1num, F2num).invariants
    report["checks"].append(_check_iso("F1/F2 ~ Hom(A'/(B+C), N)", left, hom.invariants, natural,
                                       {"image_order": image.order, "hom_order": hom.order}))

    # F2 = (A'^perp n C)/(B n C) against Coker(beta)
    ApnC = S.Apperp & C
    kernel, image, hom = induced_map(P, ApnC, S.A_mod_Ap)
    natural = image.order == hom.order and kernel <= S.BnC
    coker = Subquotient(hom.as_subgroup, beta["image"]).invariants if hom.source else ()
    left = Subquotient(F2num, B).invariants
    report["checks"].append(_check_iso("F2 ~ Coker(beta)", left, coker, natural,
                                       {"beta_image_order": beta["image"].order}))
    return report


def pairing_unimodular(P, G, H_quotient):
    """Is (g, [a]) -> (a, g) on G x (A/H) unimodular?  G a subgroup, H_quotient = A/H.

    Both induced maps are materialized and tested for bijectivity.
    """
    k1, im1, hom1 = induced_map(P, G, H_quotient)
    left = k1.order == 1 and im1.order == hom1.order
    # [a] -> (a, g_j) over the canonical generators of G
    Gq = Subquotient(G, Subgroup.zero(P.mods))
    hom2 = HomGroup(Gq.invariants, P.m)
    images = [tuple(P.pair(l, g) for g in Gq.lifts) for l in H_quotient.lifts]
    Qinv = H_quotient.invariants
    if Qinv:
        # kernel on Z^k coordinates of A/H, with q_i e_i automatically killed
        units = [tuple(int(i == j) for j in range(len(Qinv))) for i in range(len(Qinv))]
        k2, im2 = map_kernel_image(Qinv, units, images, P.m)
        right = k2.order == 1 and im2.order == hom2.order
    else:
        right = hom2.order == 1
    return left and right


def unimodular_matrix(row_invariants, col_invariants, matrix, m):
    """Unimodularity of G x H -> Z/m given by values on standard generators.

    G = + Z/row_invariants, H = + Z/col_invariants.  Both maps G -> Hom(H, Z/m)
    and H -> Hom(G, Z/m) must be bijective.
    """
    def side(src, dst, mat):
        hom = HomGroup(dst, m)
        if not src:
            return hom.order == 1
        units = [tuple(int(i == j) for j in range(len(src))) for i in range(len(src))]
        kernel, image = map_kernel_image(tuple(src), units, [tuple(r) for r in mat], m)
        return kernel.order == 1 and image.order == hom.order

    t = [list(c) for c in zip(*matrix)] if matrix else [[] for _ in col_invariants]
    return side(row_invariants, col_invariants, matrix) and side(col_invariants, row_invariants, t)


def check_cor_key(P, B, C):
    """Under (i) and unimodularity of (B n C) x A/(B+C), assert B = B^perp."""
    S = Setup(P, B, C)
    alpha = alpha_map(B, C, P)
    uni = pairing_unimodular(P, S.BnC, S.A_mod_BC)
    out = {"condition_i": alpha["iso"], "condition_ii": uni}
    if not alpha["iso"]:
        out.update(verdict="CONDITION_FAILED", failed="i")
    elif not uni:
        out.update(verdict="CONDITION_FAILED", failed="ii")
    else:
        ok = S.Bperp == B
        out.update(verdict="PASS" if ok else "FAIL", B_order=B.order, Bperp_order=S.Bperp.order)
    return out


def _decompose(S, z):
    """Split z in B + C as b + c; returns b."""
    gens = S.B.gens + S.C.gens
    n = Subgroup(S.P.mods, gens).coefficients(z) if gens else []
    if n is None:
        raise NotInAPrime(f"{z} is not in B + C")
    b = [0] * len(S.P.mods)
    for coef, g in zip(n[:len(S.B.gens)], S.B.gens):
        for j in range(len(b)):
            b[j] += coef * g[j]
    return tuple(v % d for v, d in zip(b, S.P.mods))


def gamma_invariant(S, a):
    """gamma[a] in + Z/gcd(q_j, m) via q_j l_j = b_j + c_j."""
    if not S.Ap.contains(a):
        raise NotInAPrime("a pairs nontrivially with B n C")
    out = []
    for q, l in zip(S.Q.invariants, S.Q.lifts):
        b = _decompose(S, tuple(q * v for v in l))
        out.append(S.P.pair(a, b) % math.gcd(q, S.P.m))
    return tuple(out)


def gamma_cocycle(S, a):
    """Push-out cocycle of 0 -> B/(BnC) -> A'/C -> A'/(B+C) -> 0 along lambda_a.

    With the section s(x) = sum x_j l_j, s(x) + s(y) - s(x+y) lies in B + C;
    writing it b + c gives the cocycle value (a, b).
    """
    if not S.Ap.contains(a):
        raise NotInAPrime("a pairs nontrivially with B n C")
    invs = S.Q.invariants
    mods = S.P.mods
    section = {x: S.Q.lift(x) for x in _elements(invs)}
    cache = {}
    table = {}
    for x, sx in section.items():
        for y, sy in section.items():
            z = tuple((u + v - w) % d for u, v, w, d in zip(sx, sy, section[_add(invs, x, y)], mods))
            if z not in cache:
                cache[z] = S.P.pair(a, _decompose(S, z))
            table[(x, y)] = cache[z]
    return ExtensionClass(invs, S.P.m, table)


def gamma_map(P, B, C, a, check_representative=True, rng=None):
    """gamma[a] as an ExtensionClass, with the well-definedness check.

    The cocycle is recomputed from a + b + c for random b in B, c in C and the
    two must be cohomologous.
    """
    import random
    S = Setup(P, B, C)
    ext = gamma_cocycle(S, a)
    out = {"class": ext.coordinates(), "invariant_formula": gamma_invariant(S, a), "cocycle": ext}
    if check_representative:
        rng = rng or random.Random(0)
        b = _random_element(B, rng)
        c = _random_element(C, rng)
        a2 = tuple((x + y + z) % d for x, y, z, d in zip(a, b, c, P.mods))
        other = gamma_cocycle(S, a2)
        out["representative_independent"] = ext.cohomologous(other)
    return out


def _random_element(H, rng):
    out = [0] * len(H.mods)
    for g in H.gens:
        k = rng.randrange(max(H.mods) if H.mods else 1)
        for j in range(len(out)):
            out[j] += k * g[j]
    return tuple(v % d for v, d in zip(out, H.mods))


def quotient_splits(S):
    """Does A/A' split off A?  Returns (explicit section found, invariants agree)."""
    quot = S.A_mod_Ap
    explicit = True
    for o, g in zip(quot.invariants, quot.lifts):
        # need a' in A' with o (g - a') = 0
        target = tuple((o * v) for v in g)
        gens = S.Ap.gens
        mods = S.P.mods
        M = [[o * gg[c] for gg in gens] + [mods[c] if c == i else 0 for i in range(len(mods))]
             for c in range(len(mods))]
        if not gens:
            explicit = explicit and all(t % d == 0 for t, d in zip(target, mods))
            continue
        if solve_integer(M, list(target)) is None:
            explicit = False
            break
    lhs = elementary_divisors(S.P.mods)
    rhs = sorted(elementary_divisors(S.Ap.invariants()) + elementary_divisors(quot.invariants))
    return explicit, [d for d in lhs if d != 1] == [d for d in rhs if d != 1]


def check_cor_split(P, B, C):
    """Under (i) and splitting of A/A', compare Im(B^perp -> A'/(B+C)) with Ker(gamma)."""
    S = Setup(P, B, C)
    alpha = alpha_map(B, C, P)
    explicit, by_invariants = quotient_splits(S)
    out = {"condition_i": alpha["iso"], "condition_ii": explicit,
           "splitting_routes_agree": explicit == by_invariants}
    if not alpha["iso"] or not explicit:
        out["verdict"] = "CONDITION_FAILED"
        out["failed"] = "i" if not alpha["iso"] else "ii"
        return out
    image = _image_in_quotient(S)
    kernel = set()
    for x in S.Q.elements():
        a = S.Q.lift(x)
        if not any(gamma_invariant(S, a)):
            kernel.add(tuple(x))
    ok = image == kernel
    out.update(verdict="PASS" if ok else "FAIL", image_order=len(image), kernel_order=len(kernel),
               F0_mod_F1_order=Subquotient(S.Bperp, (S.Bperp & C) + B).order)
    if Subquotient(S.Bperp, (S.Bperp & C) + B).order != len(kernel):
        out["verdict"] = "FAIL"
    return out


def _image_in_quotient(S):
    """Image of B^perp in A'/(B+C) as a set of coordinate tuples."""
    if not S.Q.invariants:
        return {()}
    return Subgroup(S.Q.invariants, [S.Q.canonical(g) for g in S.Bperp.gens]).elements()
