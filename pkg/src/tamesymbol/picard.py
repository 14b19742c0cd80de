"""Point groups, Picard data, Weil pairing and the kappa pairing on torsion.

On a Weierstrass curve Pic^0 is identified with E(F_q) by P -> [P - O].
Torsion computations run on E(L) for the smallest L = F_{q^M} (M found by
scanning) that contains the full n-torsion, n = q - 1, and division points
m~ with n m~ = m for every rational m.

The Weil pairing follows e_n(A, B) = f_B(D_A) / f_A(D_B), with D_A the
shifted divisor (A + R) - (R) and div f_A = n D_A.  Two independent routes
compute f_A: Miller accumulation evaluated pointwise, and a Riemann-Roch
solve for div g = n(A) - n(O) over L corrected by (v_{A+R} / l_{A,R})^n.
"""

import math
import random

from . import mutations
from .abelian import FgAbGroup
from .curves import ProjectiveLine
from .errors import CapExceeded, DegenerateEvaluation
from .fields import FIELD_CAP, embedding, make_field, prime_factors
from .functions import (Divisor, RationalFunction, function_from_vector, is_principal,
                        riemann_roch_solve)

RETRY_CAP = 32


def point_order(E, L, P, N):
    """Order of P in a group of exponent dividing N."""
    if P is None:
        return 1
    order = N
    for r in sorted(set(prime_factors(N))):
        while order % r == 0 and E.mul(L, order // r, P) is None:
            order //= r
    return order


def point_group(E, L):
    """(invariants, generators, coordinate table) of E(L).

    Invariants n1 | n2 (ones dropped); generators match the invariants;
    the table maps each point to its coordinates.
    """
    pts = E.points(L)
    N = len(pts)
    best, n2 = None, 1
    for P in pts:
        o = point_order(E, L, P, N)
        if o > n2:
            best, n2 = P, o
            if o == N:
                break
    n1 = N // n2
    if n1 == 1:
        gens, invs = ([best], (n2,)) if n2 > 1 else ([], ())
        table = {}
        cur = None
        for b in range(n2):
            table[cur] = (b,) if invs else ()
            cur = E.add(L, cur, best)
        return invs, gens, table
    cyc = set()
    cur = None
    for _ in range(n2):
        cyc.add(cur)
        cur = E.add(L, cur, best)
    Q = None
    for R in pts:
        if R is None or E.mul(L, n1, R) is not None:
            continue
        multiples = [E.mul(L, a, R) for a in range(1, n1)]
        if all(M not in cyc for M in multiples):
            Q = R
            break
    table = {}
    aQ = None
    for a in range(n1):
        cur = aQ
        for b in range(n2):
            table[cur] = (a, b)
            cur = E.add(L, cur, best)
        aQ = E.add(L, aQ, Q)
    if len(table) != N:
        raise AssertionError("point group decomposition failed")
    return (n1, n2), [Q, best], table


class PicardData:
    """Pic^0 of the curve as an abstract group with explicit point bijection."""

    def __init__(self, curve):
        self.curve = curve
        if isinstance(curve, ProjectiveLine):
            self.invariants, self.generators, self.table = (), [], {None: ()}
            self.base_place = curve.infinity
        else:
            self.invariants, self.generators, self.table = point_group(curve, curve.base)
            self.base_place = curve.O
        self.pic0 = FgAbGroup.from_invariants(self.invariants)
        self.points = {c: P for P, c in self.table.items()}

    @property
    def order(self):
        return math.prod(self.invariants)

    def coords(self, P):
        return self.table[P]

    def point(self, coords):
        return self.points[tuple(c % d for c, d in zip(coords, self.invariants))]

    def class_of(self, D):
        """Coordinates of [D - deg(D) x0] in Pic^0."""
        if isinstance(self.curve, ProjectiveLine):
            return ()
        E, F = self.curve, self.curve.base
        total = None
        for P, k in D.coeffs.items():
            if P.kind == "O":
                continue
            L = P.residue_field
            trace = None
            for pt in E.geometric_points(P):
                trace = E.add(L, trace, pt)
            if trace is not None:
                emb = embedding(F, L)
                trace = (emb.pullback(trace[0]), emb.pullback(trace[1]))
            total = E.add(F, total, E.mul(F, k, trace))
        return self.table[total]


def picard_group(curve):
    return PicardData(curve)


def frobenius_pushforward(E, L, P, k=1):
    """[P] -> [P^(q^k)]; the frobenius-direction mutation uses the inverse power."""
    if P is None:
        return None
    M = L.n // E.base.n
    if mutations.active("frobenius-direction"):
        k = (-k) % M
    return E.frobenius(L, P, k)


# ---------------------------------------------------------------------------
# torsion data


class TorsionData:
    """Pic^0[n], Pic^0/n and the torsion field for n = q - 1."""

    def __init__(self, curve, n, pic, kernel_gens, kernel_orders, cot_gens, cot_orders,
                 degree=None, field=None, torsion_points=None, division=None):
        self.curve = curve
        self.n = n
        self.pic = pic
        self.kernel_gens = kernel_gens
        self.kernel_orders = kernel_orders
        self.cot_gens = cot_gens
        self.cot_orders = cot_orders
        self.degree = degree
        self.field = field
        self.torsion_points = torsion_points or []
        self._division = division or {}

    @property
    def trivial(self):
        return not self.kernel_orders and not self.cot_orders

    def lift(self, P):
        """Embed a rational point into the torsion field."""
        if P is None:
            return None
        emb = embedding(self.curve.base, self.field)
        return (emb(P[0]), emb(P[1]))

    def division_point(self, P, other=False):
        """m~ in E(L) with n m~ = m; ``other`` returns a second choice m~ + T."""
        choices = self._division[self.lift(P)]
        return choices[-1] if other else choices[0]

    def kernel_elements(self):
        return _span_points(self.curve, self.curve.base, self.kernel_gens, self.kernel_orders)

    def cot_elements(self):
        return _span_points(self.curve, self.curve.base, self.cot_gens, self.cot_orders)

    def summary(self):
        return {"n": self.n, "Pic0[n]": list(self.kernel_orders), "Pic0/n": list(self.cot_orders),
                "torsion_field_degree": self.degree}


def _span_points(E, L, gens, orders):
    out = [(None, ())]
    for g, o in zip(gens, orders):
        new = []
        for P, c in out:
            cur = P
            for a in range(o):
                new.append((cur, c + (a,)))
                cur = E.add(L, cur, g)
        out = new
    return out


def torsion_and_cotorsion(curve, n=None, max_degree=None):
    n = n or curve.q - 1
    pic = PicardData(curve)
    if isinstance(curve, ProjectiveLine):
        return TorsionData(curve, n, pic, [], (), [], ())
    E, F = curve, curve.base
    kg, ko, cg, co = [], [], [], []
    for g, d in zip(pic.generators, pic.invariants):
        k = math.gcd(d, n)
        if k > 1:
            kg.append(E.mul(F, d // k, g))
            ko.append(k)
            cg.append(g)
            co.append(k)
    if not ko or n == 1:
        return TorsionData(curve, n, pic, kg, tuple(ko), cg, tuple(co))
    rational = [P for P in E.points(F) if P is not None]
    M = 1
    while True:
        if curve.q ** M > FIELD_CAP or (max_degree and M > max_degree):
            raise CapExceeded(f"full {n}-torsion needs F_(q^m) beyond the cap; stopped at m = {M}")
        L = make_field(F.p, F.n * M)
        size = len(E.points(L))
        if size % (n * n) == 0:
            tors = []
            division = {}
            for R in E.points(L):
                nR = E.mul(L, n, R)
                if nR is None:
                    tors.append(R)
                division.setdefault(nR, []).append(R)
            emb = embedding(F, L)
            lifted = [(emb(P[0]), emb(P[1])) for P in rational]
            if len(tors) == n * n and all(P in division for P in lifted):
                return TorsionData(curve, n, pic, kg, tuple(ko), cg, tuple(co), M, L, tors,
                                   division)
        M += 1


# ---------------------------------------------------------------------------
# Miller functions and the Weil pairing


def _line_value(E, L, U, V, X):
    """(l_{U,V}(X), v_{U+V}(X)) for affine U, V and an affine point X."""
    x, y = X
    line = E.line_through(L, U, V)
    if line is None:
        num = L.sub(x, U[0])
        den = 1
    else:
        lam, nu = line
        num = L.sub(L.sub(y, L.mul(lam, x)), nu)
        W = E.add(L, U, V)
        den = L.sub(x, W[0])
    if num == 0 or den == 0:
        raise DegenerateEvaluation("evaluation point on a Miller line")
    return num, den


def miller_value(E, L, T, n, X):
    """f_{n,T}(X), div f_{n,T} = n(T) - ([n]T) - (n - 1)(O)."""
    num, den = 1, 1
    acc = T
    for bit in _miller_steps(n):
        if acc is None:
            raise DegenerateEvaluation("intermediate multiple is O")
        a, b = _line_value(E, L, acc, acc, X)
        num = L.mul(L.mul(num, num), a)
        den = L.mul(L.mul(den, den), b)
        acc = E.add(L, acc, acc)
        if bit == "1":
            if acc is None:
                raise DegenerateEvaluation("intermediate multiple is O")
            a, b = _line_value(E, L, acc, T, X)
            num = L.mul(num, a)
            den = L.mul(den, b)
            acc = E.add(L, acc, T)
    return L.div(num, den)


def _miller_steps(n):
    return bin(n)[3:]


def miller_function(E, T, n, field=None):
    """The function f_{n,T} over the field of T's coordinates (default: base field).

    When the order o of T divides n the result is f_{o,T}^(n/o), with divisor n(T) - n(O).
    """
    F = field or E.base
    o = point_order(E, F, T, n) if E.mul(F, n, T) is None else None
    if o is not None and o < n:
        return miller_function(E, T, o, F) ** (n // o)
    one = RationalFunction.constant(E, 1, F)

    def line(U, V):
        ln = E.line_through(F, U, V)
        if ln is None:
            lnum = RationalFunction(E, (F.neg(U[0]), 1), (), (1,), F)
            return lnum, one
        lam, nu = ln
        lnum = RationalFunction(E, (F.neg(nu), F.neg(lam)), (1,), (1,), F)
        W = E.add(F, U, V)
        return lnum, RationalFunction(E, (F.neg(W[0]), 1), (), (1,), F)

    f = one
    acc = T
    for bit in _miller_steps(n):
        if acc is None:
            raise DegenerateEvaluation("intermediate multiple is O")
        a, b = line(acc, acc)
        f = f * f * a / b
        acc = E.add(F, acc, acc)
        if bit == "1":
            if acc is None:
                raise DegenerateEvaluation("intermediate multiple is O")
            a, b = line(acc, T)
            f = f * a / b
            acc = E.add(F, acc, T)
    return f


def _shift_value_miller(E, L, A, R, n, X):
    """f_{D_A}(X) where div f_{D_A} = n(A + R) - n(R)."""
    AR = E.add(L, A, R)
    if AR is None:
        raise DegenerateEvaluation("A + R = O")
    return L.div(miller_value(E, L, AR, n, X), miller_value(E, L, R, n, X))


def _division_function_rr(E, L, A, n):
    """g over L with div g = n(A) - n(O), by a Riemann-Roch solve."""
    basis, _, kern = riemann_roch_solve(E, n, [(L, A, 0, [0] * n)], field=L)
    if len(kern) != 1:
        raise AssertionError(f"expected a one-dimensional solution space, got {len(kern)}")
    return function_from_vector(E, basis, kern[0], field=L)


def _shift_value_rr(E, L, A, R, n, X, cache):
    """f_{D_A}(X) = g_A(X) (v_{A+R}(X) / l_{A,R}(X))^n."""
    key = (A, n)
    if key not in cache:
        cache[key] = _division_function_rr(E, L, A, n)
    g = cache[key]
    gv = g.evaluate(L, X)
    l, v = _line_value(E, L, A, R, X)
    return L.mul(gv, L.pow(L.div(v, l), n))


def weil_pairing(E, L, A, B, n, seed=0, route="miller"):
    """e_n(A, B) in mu_n of L; both arguments in E(L)[n]."""
    if A is None or B is None or A == B:
        return 1
    rng = random.Random(f"weil:{seed}:{A}:{B}:{n}")
    pts = [P for P in E.points(L) if P is not None]
    cache = {}
    for _ in range(RETRY_CAP):
        R = rng.choice(pts)
        S = rng.choice(pts)
        try:
            AR, BS = E.add(L, A, R), E.add(L, B, S)
            support_a = {AR, R}
            support_b = {BS, S}
            if None in support_a or None in support_b or support_a & support_b:
                continue
            if route == "miller":
                def fa(X):
                    return _shift_value_miller(E, L, A, R, n, X)

                def fb(X):
                    return _shift_value_miller(E, L, B, S, n, X)
            else:
                def fa(X):
                    return _shift_value_rr(E, L, A, R, n, X, cache)

                def fb(X):
                    return _shift_value_rr(E, L, B, S, n, X, cache)
            top = L.div(fb(AR), fb(R))
            bottom = L.div(fa(BS), fa(S))
            return L.div(top, bottom)
        except DegenerateEvaluation:
            continue
    raise DegenerateEvaluation(f"no admissible auxiliary points after {RETRY_CAP} tries")


def weil_pairing_base(T, A, B, route="miller", seed=0):
    """e_n on E[n] of the torsion field, pulled back into k* = mu_{q-1}."""
    E, L, n = T.curve, T.field, T.n
    val = weil_pairing(E, L, A, B, n, seed, route)
    if L.pow(val, n) != 1:
        raise AssertionError("Weil pairing value is not an n-th root of unity")
    return embedding(E.base, L).pullback(val)


def kappa(T, ell, m, route="miller", other=False, seed=0):
    """kappa(l, [m]) = e_n(l, Fr(m~) - m~) for l in Pic^0[n], m a rational point."""
    if T.trivial:
        return 1
    E, L = T.curve, T.field
    mt = T.division_point(m, other)
    diff = E.sub(L, frobenius_pushforward(E, L, mt), mt)
    return weil_pairing_base(T, T.lift(ell), diff, route, seed)


def kappa_table(T, route="miller"):
    """Values on generator pairs, as exponents of the fixed generator of k*."""
    from .fields import discrete_log, FieldElement
    F = T.curve.base
    g = FieldElement(F, F.generator)
    rows = []
    for ell in T.kernel_gens:
        row = []
        for m in T.cot_gens:
            v = kappa(T, ell, m, route)
            row.append(discrete_log(FieldElement(F, v), g))
        rows.append(row)
    return rows


def kappa_unimodular(T, route="miller"):
    from .orthogonality import unimodular_matrix
    return unimodular_matrix(T.kernel_orders, T.cot_orders, kappa_table(T, route), T.n)


def frobenius_lemma_check(curve, T=None):
    """Ker(Fr - 1) = Pic^0[n] and Pic^0/n -> Coker(Fr - 1) bijective on E(L)[n]."""
    T = T or torsion_and_cotorsion(curve)
    if T.trivial:
        return {"verdict": "VACUOUS", "reason": "Pic^0[n] and Pic^0/n are trivial", **T.summary()}
    E, L = T.curve, T.field
    tors = T.torsion_points
    image = {E.sub(L, frobenius_pushforward(E, L, P), P) for P in tors}
    kernel = [P for P in tors if frobenius_pushforward(E, L, P) == P]
    rational_n = {T.lift(P) for P, _ in T.kernel_elements()}
    kernel_ok = set(kernel) == rational_n
    # coset of each element of E[n] modulo the image
    coset = {}
    reps = []
    for P in tors:
        if P in coset:
            continue
        idx = len(reps)
        reps.append(P)
        for I in image:
            coset[E.add(L, P, I)] = idx
    cot = T.cot_elements()
    classes = []
    well_defined = True
    for m, _ in cot:
        if m is None:
            mt_choices = [None]
        else:
            mt_choices = [T.division_point(m), T.division_point(m, other=True)]
        vals = {coset[E.sub(L, frobenius_pushforward(E, L, mt), mt)] for mt in mt_choices}
        well_defined &= len(vals) == 1
        classes.append(vals.pop())
    bijective = len(set(classes)) == len(cot) == len(reps)
    from .abelian import invariants_from_torsion
    coker_invariants = invariants_from_torsion(
        lambda k: sum(1 for r in reps if coset[E.mul(L, k, r)] == coset[None]), len(reps))
    ok = kernel_ok and well_defined and bijective
    return {"verdict": "PASS" if ok else "FAIL", "kernel_order": len(kernel),
            "kernel_is_rational_torsion": kernel_ok, "cokernel_order": len(reps),
            "cokernel_invariants": list(coker_invariants), "map_well_defined": well_defined,
            "map_bijective": bijective, **T.summary()}


def gcd_of_place_degrees(curve, bound, degrees=None):
    """gcd of the degrees of all places of degree <= bound; ``degrees`` restricts (diagnostic)."""
    g = 0
    for d in range(1, bound + 1):
        if degrees is not None and d not in degrees:
            continue
        if curve.places_of_degree(d):
            g = math.gcd(g, d)
    return g


def principal_divisor_check(curve, D):
    """Cross-check class_of against is_principal on one degree-0 divisor."""
    pic = PicardData(curve)
    zero = pic.class_of(D) == tuple(0 for _ in pic.invariants)
    f = is_principal(curve, D)
    return zero, f


__all__ = ["PicardData", "picard_group", "point_group", "TorsionData", "torsion_and_cotorsion",
           "weil_pairing", "weil_pairing_base", "kappa", "kappa_table", "kappa_unimodular",
           "frobenius_lemma_check", "miller_function",
           "gcd_of_place_degrees", "frobenius_pushforward", "Divisor"]
