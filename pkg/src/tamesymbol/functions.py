"""Rational functions, divisors and local expansions.

A function on a Weierstrass curve is stored as (A(x) + B(x) y) / C(x) with
A, B, C polynomials over a coefficient field (normally the base field), C
monic and gcd(A, B, C) = 1.  On P^1 the same class is used with B = 0.
Multiplication reduces y^2 = f(x) - h(x) y where h = a1 x + a3 and
f = x^3 + a2 x^2 + a4 x + a6.
"""

import random

from . import polynomials as poly
from .curves import ProjectiveLine, coordinate_expansions
from .errors import (DegenerateEvaluation, DegreeNonzero, InsufficientPrecision,
                     NotASubfield, ZeroFunction, ZeroInput)
from .fields import embedding
from .local import DEFAULT_PRECISION, PRECISION_CAP, LocalElement


class Divisor:
    """Finite formal sum of places with integer coefficients."""

    def __init__(self, coeffs=None):
        self.coeffs = {P: k for P, k in (coeffs or {}).items() if k}

    def degree(self):
        return sum(P.degree * k for P, k in self.coeffs.items())

    def support(self):
        return sorted(self.coeffs)

    def __getitem__(self, P):
        return self.coeffs.get(P, 0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for P, k in other.coeffs.items():
            out[P] = out.get(P, 0) + k
        return Divisor(out)

    def __neg__(self):
        return Divisor({P: -k for P, k in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Divisor({P: k * v for P, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{k}*{P!r}" for P, k in sorted(self.coeffs.items())) + ")"


class RationalFunction:
    """(A + B y) / C over ``field`` (default: the base field of the curve)."""

    __slots__ = ("curve", "field", "A", "B", "C")

    def __init__(self, curve, A, B=(), C=(1,), field=None, normalize=True):
        self.curve = curve
        self.field = field or curve.base
        A, B, C = poly.trim(A), poly.trim(B), poly.trim(C)
        if isinstance(curve, ProjectiveLine) and B:
            raise ValueError("functions on P^1 have no y-part")
        if not C:
            raise ZeroFunction("zero denominator")
        if not A and not B:
            raise ZeroFunction("the zero function has no divisor")
        if normalize:
            F = self.field
            g = poly.gcd(F, poly.gcd(F, A, B) if B else A, C)
            if len(g) > 1:
                A = poly.divmod_(F, A, g)[0]
                B = poly.divmod_(F, B, g)[0] if B else ()
                C = poly.divmod_(F, C, g)[0]
            lc = C[-1]
            if lc != 1:
                s = F.inv(lc)
                A, B, C = poly.scale(F, A, s), poly.scale(F, B, s), poly.scale(F, C, s)
        self.A, self.B, self.C = tuple(A), tuple(B), tuple(C)

    # constructors

    @classmethod
    def constant(cls, curve, c, field=None):
        return cls(curve, (c,), (), (1,), field)

    @classmethod
    def x(cls, curve, field=None):
        return cls(curve, (0, 1), (), (1,), field)

    @classmethod
    def y(cls, curve, field=None):
        return cls(curve, (), (1,), (1,), field)

    @classmethod
    def polynomial(cls, curve, A, field=None):
        return cls(curve, A, (), (1,), field)

    def _hf(self):
        F = self.field
        if isinstance(self.curve, ProjectiveLine):
            return (), ()
        a1, a2, a3, a4, a6 = self.curve.coeffs_in(F)
        return poly.trim((a3, a1)), (a6, a4, a2, 1)

    def _same(self, other):
        if isinstance(other, int):
            return RationalFunction.constant(self.curve, self.field.from_coeffs([other]), self.field)
        if other.curve is not self.curve or other.field is not self.field:
            raise NotASubfield("functions on different curves or coefficient fields")
        return other

    def __mul__(self, other):
        other = self._same(other)
        F = self.field
        h, f = self._hf()
        A1, B1, C1 = self.A, self.B, self.C
        A2, B2, C2 = other.A, other.B, other.C
        BB = poly.mul(F, B1, B2)
        A = poly.add(F, poly.mul(F, A1, A2), poly.mul(F, BB, f))
        B = poly.sub(F, poly.add(F, poly.mul(F, A1, B2), poly.mul(F, A2, B1)), poly.mul(F, BB, h))
        return RationalFunction(self.curve, A, B, poly.mul(F, C1, C2), F)

    __rmul__ = __mul__

    def norm_poly(self):
        """A^2 - A B h - B^2 f, the norm of the numerator down to F(x)."""
        F = self.field
        h, f = self._hf()
        A, B = self.A, self.B
        out = poly.mul(F, A, A)
        if B:
            out = poly.sub(F, out, poly.mul(F, poly.mul(F, A, B), h))
            out = poly.sub(F, out, poly.mul(F, poly.mul(F, B, B), f))
        return out

    def inverse(self):
        F = self.field
        h, _ = self._hf()
        N = self.norm_poly()
        A = poly.mul(F, self.C, poly.sub(F, self.A, poly.mul(F, self.B, h)))
        B = poly.neg(F, poly.mul(F, self.C, self.B))
        return RationalFunction(self.curve, A, B, N, F)

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = RationalFunction.constant(self.curve, 1, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __add__(self, other):
        other = self._same(other)
        F = self.field
        A = poly.add(F, poly.mul(F, self.A, other.C), poly.mul(F, other.A, self.C))
        B = poly.add(F, poly.mul(F, self.B, other.C), poly.mul(F, other.B, self.C))
        return RationalFunction(self.curve, A, B, poly.mul(F, self.C, other.C), F)

    def __neg__(self):
        F = self.field
        return RationalFunction(self.curve, poly.neg(F, self.A), poly.neg(F, self.B), self.C, F)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __eq__(self, other):
        return (isinstance(other, RationalFunction) and self.curve is other.curve
                and self.field is other.field
                and (self.A, self.B, self.C) == (other.A, other.B, other.C))

    def __hash__(self):
        return hash((self.A, self.B, self.C))

    def is_constant(self):
        return not self.B and len(self.A) == 1 and len(self.C) == 1

    def __repr__(self):
        return f"RationalFunction(A={self.A}, B={self.B}, C={self.C})"

    # evaluation at a point of E(L) or an element of L (P^1)

    def evaluate(self, L, P):
        """Value at a geometric point; DegenerateEvaluation at zeros, poles or 0/0."""
        F = self.field
        emb = embedding(F, L) if F is not L else None

        def ev(a, x):
            if emb is not None:
                a = poly.map_coeffs(emb, a)
            return poly.evaluate(L, a, x)

        if P is None:
            raise DegenerateEvaluation("evaluation at the point at infinity")
        if isinstance(self.curve, ProjectiveLine):
            x, y = P, 0
        else:
            x, y = P
        num = L.add(ev(self.A, x), L.mul(ev(self.B, x), y))
        den = ev(self.C, x)
        if num == 0 or den == 0:
            raise DegenerateEvaluation("point lies in the support of the divisor")
        return L.div(num, den)

    # degrees at infinity

    def pole_bound(self):
        """An upper bound on the total zero order of the numerator A + B y."""
        if isinstance(self.curve, ProjectiveLine):
            return len(self.A) - 1
        return max(2 * (len(self.A) - 1), 2 * (len(self.B) - 1) + 3 if self.B else 0)


def _poly_at(L, coeffs, xl):
    """Value of a polynomial (coefficients in L) at a LocalElement; None for zero."""
    acc = None
    for c in reversed(coeffs):
        if acc is not None:
            acc = acc * xl
        if c:
            if acc is None:
                acc = LocalElement.constant(L, c)
            else:
                try:
                    acc = acc + LocalElement.constant(L, c)
                except ZeroInput:
                    acc = None
    return acc


def local_expansion(f, place, precision=DEFAULT_PRECISION, choice=0):
    """Laurent expansion of f at a place in its canonical uniformizer.

    ``choice`` picks the geometric point above the place (root index on P^1,
    Frobenius power on a Weierstrass curve).
    """
    curve = f.curve
    if f.field is not curve.base:
        raise NotASubfield("local expansions are defined for functions over the base field")
    pts = curve.geometric_points(place)
    pt = pts[choice % len(pts)]
    L = place.residue_field
    return expansion_at_point(f, L, pt, precision)


def expansion_at_point(f, L, pt, precision=DEFAULT_PRECISION):
    curve = f.curve
    emb = embedding(f.field, L)
    A = poly.map_coeffs(emb, f.A)
    B = poly.map_coeffs(emb, f.B)
    C = poly.map_coeffs(emb, f.C)
    if isinstance(curve, ProjectiveLine):
        return _p1_expansion(L, A, C, pt, precision)
    slack = f.pole_bound() + 2 * (len(C) - 1) + 2
    N = precision + slack
    while True:
        try:
            xl, yl = coordinate_expansions(curve, L, pt, N)
            num = _poly_at(L, A, xl)
            if B:
                term = _poly_at(L, B, xl) * yl
                num = term if num is None else num + term
            den = _poly_at(L, C, xl)
            out = num * den.inverse(N)
            return out.truncate(precision)
        except InsufficientPrecision:
            if N >= PRECISION_CAP + slack:
                raise
            N *= 2


def _p1_expansion(L, A, C, alpha, precision):
    if alpha is None:
        na = LocalElement.exact(L, -(len(A) - 1), tuple(reversed(A)))
        nc = LocalElement.exact(L, -(len(C) - 1), tuple(reversed(C)))
    else:
        na = _shifted(L, A, alpha)
        nc = _shifted(L, C, alpha)
    return (na * nc.inverse(precision)).truncate(precision)


def _shifted(L, a, alpha):
    s = poly.taylor_shift(L, a, alpha)
    v = next(i for i, c in enumerate(s) if c)
    return LocalElement.exact(L, v, s[v:])


def valuation_at(f, place):
    return local_expansion(f, place, 1).valuation


def divisor_of(f):
    """div(f) as a Divisor; asserts degree 0."""
    curve = f.curve
    F = f.field
    if F is not curve.base:
        raise NotASubfield("divisors are computed for functions over the base field")
    out = {}
    if isinstance(curve, ProjectiveLine):
        for P_, sign in ((f.A, 1), (f.C, -1)):
            if len(P_) > 1:
                for irr, e in poly.factor(F, P_)[1]:
                    pl = curve.place_of_poly(irr)
                    out[pl] = out.get(pl, 0) + sign * e
        out[curve.infinity] = (len(f.C) - 1) - (len(f.A) - 1)
    else:
        cand = poly.mul(F, f.norm_poly(), f.C)
        for pl in _places_above(curve, cand):
            out[pl] = valuation_at(f, pl)
        # A + B y has pole order max(2 deg A, 2 deg B + 3); C has 2 deg C
        out[curve.O] = -f.pole_bound() + 2 * (len(f.C) - 1)
    D = Divisor(out)
    if D.degree() != 0:
        raise DegreeNonzero(f"divisor of {f} has degree {D.degree()}")
    return D


def _places_above(E, g):
    """Places of E whose x-coordinate is a root of g (g over the base field)."""
    F = E.base
    found = set()
    if len(g) <= 1:
        return found
    for irr, _ in poly.factor(F, g)[1]:
        e = len(irr) - 1
        rts, L, emb = poly.roots_in_extension(F, irr, e)
        x0 = rts[0]
        ys = E.y_roots(L, x0)
        if ys:
            for y0 in ys:
                found.add(E.place_of_point(L, (x0, y0)))
        else:
            L2 = E.field_of_degree(2 * e)
            emb2 = embedding(L, L2)
            x2 = emb2(x0)
            for y0 in E.y_roots(L2, x2):
                found.add(E.place_of_point(L2, (x2, y0)))
    return found


def random_function(curve, rng, max_degree=3):
    """A random nonzero function over the base field."""
    F = curve.base

    def rp(d):
        return tuple(rng.randrange(F.q) for _ in range(d + 1))

    while True:
        A = rp(rng.randint(0, max_degree))
        C = list(rp(rng.randint(0, max_degree)))
        if not any(C):
            continue
        C = poly.trim(C)
        C = poly.monic(F, C)
        B = () if isinstance(curve, ProjectiveLine) else rp(rng.randint(0, max(max_degree - 2, 0)))
        if not poly.trim(A) and not poly.trim(B):
            continue
        return RationalFunction(curve, A, B, C)


# ---------------------------------------------------------------------------
# linear algebra over a finite field and Riemann-Roch spaces


def row_reduce(F, rows, ncols):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(v, inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [F.sub(a, F.mul(k, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def solve_linear(F, rows, rhs, ncols):
    """(particular solution or None, kernel basis) for rows . v = rhs over F."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = row_reduce(F, aug, ncols + 1)
    if ncols in piv:
        return None, _kernel(F, red, [c for c in piv if c < ncols], ncols)
    part = [0] * ncols
    for row, c in zip(red, piv):
        part[c] = row[ncols]
    return part, _kernel(F, red, piv, ncols)


def _kernel(F, red, piv, ncols):
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, c in zip(red, piv):
            if c < ncols:
                v[c] = F.neg(row[fc])
        basis.append(v)
    return basis


def monomial_basis(curve, N):
    """Basis of L(N * infinity): t^i on P^1, x^i y^e (2i + 3e <= N) on a cubic."""
    if N < 0:
        return []
    if isinstance(curve, ProjectiveLine):
        return [(i, 0) for i in range(N + 1)]
    return sorted(((i, e) for e in (0, 1) for i in range(N // 2 + 1) if 2 * i + 3 * e <= N),
                  key=lambda m: 2 * m[0] + 3 * m[1])


def function_from_vector(curve, basis, vec, field=None):
    F = field or curve.base
    A = [0] * (max((i for i, e in basis), default=0) + 1)
    B = list(A)
    for (i, e), c in zip(basis, vec):
        if e:
            B[i] = F.add(B[i], c)
        else:
            A[i] = F.add(A[i], c)
    return RationalFunction(curve, A, B, (1,), F)


def monomial_expansions(curve, L, pt, basis, N):
    """LocalElements of each basis monomial at pt in E(L) (or alpha in L on P^1)."""
    if isinstance(curve, ProjectiveLine):
        if pt is None:
            xl = LocalElement.exact(L, -1, (1,))
        elif pt:
            xl = LocalElement.exact(L, 0, (pt, 1))
        else:
            xl = LocalElement.uniformizer(L)
        yl = None
    else:
        xl, yl = coordinate_expansions(curve, L, pt, N)
    out = []
    for i, e in basis:
        m = LocalElement.constant(L, 1)
        if i:
            m = m * (xl ** i)
        if e:
            m = m * yl
        out.append(m)
    return out


def conditions_to_rows(curve, basis, conditions, field, precision_extra=8):
    """Linear equations over ``field`` for prescribed Laurent coefficients.

    Each condition is (L, pt, start, targets): the coefficient of t^(start+k)
    at pt must equal targets[k].  When L is larger than ``field`` every
    equation over L becomes [L : field] equations through trace functionals.
    """
    rows, rhs = [], []
    for L, pt, start, targets in conditions:
        if not targets:
            continue
        emb = embedding(field, L)
        N = abs(start) + len(targets) + 2 * len(basis) + precision_extra
        exps = monomial_expansions(curve, L, pt, basis, N)
        theta = [L.pow(L.generator, i) for i in range(emb.degree)] if emb.degree > 1 else [1]
        for k, target in enumerate(targets):
            coeffs = [m.coefficient(start + k) for m in exps]
            for th in theta:
                if emb.degree > 1:
                    rows.append([emb.trace(L.mul(th, c)) for c in coeffs])
                    rhs.append(emb.trace(L.mul(th, target)))
                else:
                    rows.append([emb.pullback(c) for c in coeffs])
                    rhs.append(emb.pullback(target))
    return rows, rhs


def riemann_roch_solve(curve, N, conditions, field=None):
    """Functions in L(N * infinity) meeting the conditions.

    Returns (basis, particular vector or None, kernel vectors).
    """
    F = field or curve.base
    basis = monomial_basis(curve, N)
    rows, rhs = conditions_to_rows(curve, basis, conditions, F)
    if not rows:
        return basis, [0] * len(basis), [[int(i == j) for j in range(len(basis))]
                                         for i in range(len(basis))]
    part, kern = solve_linear(F, rows, rhs, len(basis))
    return basis, part, kern


def is_principal(curve, D):
    """A function f with div f = D, or None when the class of D is nonzero."""
    if D.degree() != 0:
        raise DegreeNonzero(f"divisor has degree {D.degree()}")
    F = curve.base
    if isinstance(curve, ProjectiveLine):
        num, den = (1,), (1,)
        for P, k in D.coeffs.items():
            if P.kind == "inf":
                continue
            if k > 0:
                num = poly.mul(F, num, poly.power(F, P.data, k))
            else:
                den = poly.mul(F, den, poly.power(F, P.data, -k))
        return RationalFunction(curve, num, (), den)
    # clear affine poles with Delta(x), then solve for g = f Delta in L(N O)
    delta = (1,)
    for P, k in D.coeffs.items():
        if P.kind == "pt" and k < 0:
            pts = curve.geometric_points(P)
            L = P.residue_field
            emb = embedding(F, L)
            mp = poly.minimal_polynomial(emb, pts[0][0])
            delta = poly.mul(F, delta, poly.power(F, mp, -k))
    Dl = RationalFunction.polynomial(curve, delta)
    div_delta = divisor_of(Dl)
    target = D + div_delta
    N = -target[curve.O]
    conditions = []
    for P in set(D.coeffs) | set(div_delta.coeffs):
        if P.kind == "O":
            continue
        need = target[P]
        if need > 0:
            L = P.residue_field
            conditions.append((L, curve.geometric_points(P)[0], 0, [0] * need))
    basis, part, kern = riemann_roch_solve(curve, N, conditions)
    if not kern:
        return None
    g = function_from_vector(curve, basis, kern[0])
    f = g / Dl
    if divisor_of(f) != D:
        return None
    return f


def random_seeded(seed):
    return random.Random(seed)
