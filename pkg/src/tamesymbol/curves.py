"""Curve models over F_q: the projective line and Weierstrass cubics.

Closed points are ``Place`` objects.  On P^1 a finite place is a monic
irreducible polynomial in t and the geometric point used for expansions is
its smallest root.  On a Weierstrass curve a place is a Frobenius orbit of
points, stored through its lexicographically smallest member with coordinates
in the residue field F_{q^d}; the point at infinity is ``O``.

Local parameters: t - alpha on P^1 and 1/t at infinity; on a Weierstrass
curve x - x(P) when the y-partial derivative is nonzero at P, else y - y(P),
and x/y at O.
"""

import functools

from . import polynomials as poly
from .errors import CapExceeded, FixtureError, NotASubfield
from .fields import FIELD_CAP, embedding, make_field
from .local import EXACT, LocalElement


class Place:
    """A closed point.  ``kind`` is one of 'inf', 'poly' (P^1) or 'O', 'pt' (Weierstrass)."""

    __slots__ = ("kind", "degree", "data", "_p", "_n")

    def __init__(self, kind, degree, data, p, n):
        self.kind = kind
        self.degree = degree
        self.data = data
        self._p = p
        self._n = n

    @property
    def residue_field(self):
        return make_field(self._p, self._n * self.degree)

    def _key(self):
        return (self.degree, self.kind, self.data)

    def __eq__(self, other):
        return isinstance(other, Place) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        order = {"O": 0, "inf": 0, "poly": 1, "pt": 1}
        return (self.degree, order[self.kind], self.data) < (other.degree, order[other.kind], other.data)

    def __repr__(self):
        if self.kind in ("inf", "O"):
            return "Place(inf)" if self.kind == "inf" else "Place(O)"
        from .fields import format_element
        F = self.residue_field
        if self.kind == "poly":
            base = make_field(self._p, self._n)
            return "Place(" + ", ".join(format_element(base, c) for c in self.data) + ")"
        x, y = self.data
        return f"Place({format_element(F, x)} ; {format_element(F, y)})"


class CurveModel:
    kind = None

    def __init__(self, base):
        self.base = base
        self.p = base.p
        self.n = base.n
        self.q = base.q

    def field_of_degree(self, d):
        if self.q ** d > FIELD_CAP:
            raise CapExceeded(f"F_(q^{d}) with q = {self.q} exceeds the field cap")
        return make_field(self.p, self.n * d)

    def embed(self, d):
        return embedding(self.base, self.field_of_degree(d))

    def places_up_to_degree(self, D):
        out = []
        for d in range(1, D + 1):
            out.extend(self.places_of_degree(d))
        return out


def _frobenius_orbit_size(F, base_q, x):
    """Size of the orbit of x under the base_q-power map in F."""
    k = 1
    y = F.pow(x, base_q)
    while y != x:
        y = F.pow(y, base_q)
        k += 1
    return k


class ProjectiveLine(CurveModel):
    kind = "p1"

    def __init__(self, base):
        super().__init__(base)
        self.infinity = Place("inf", 1, (), self.p, self.n)

    def describe(self):
        return {"kind": "p1", "q": self.q}

    def __repr__(self):
        return f"ProjectiveLine(F_{self.q})"

    def place_of_poly(self, f):
        f = poly.monic(self.base, f)
        if not poly.is_irreducible(self.base, f):
            raise FixtureError(f"{f} is not irreducible")
        return Place("poly", len(f) - 1, tuple(f), self.p, self.n)

    def places_of_degree(self, d):
        if d == 1:
            out = [self.infinity]
        else:
            out = []
        L = self.field_of_degree(d)
        emb = embedding(self.base, L)
        seen = set()
        for a in range(L.q):
            if d > 1 and _frobenius_orbit_size(L, self.q, a) != d:
                continue
            if a in seen:
                continue
            orbit = emb.conjugates(a) if d > 1 else [a]
            seen.update(orbit)
            out.append(Place("poly", d, tuple(poly.minimal_polynomial(emb, a)) if d > 1
                             else (self.base.neg(a), 1), self.p, self.n))
        return sorted(out)

    def geometric_points(self, place):
        """Roots (in the residue field) of the place polynomial, smallest first."""
        if place.kind == "inf":
            return [None]
        L = place.residue_field
        emb = embedding(self.base, L)
        return poly.roots(L, poly.map_coeffs(emb, place.data))

    def rational_points(self):
        return [None] + list(range(self.q))


class WeierstrassCurve(CurveModel):
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``base``."""

    kind = "weierstrass"

    def __init__(self, base, a1=0, a2=0, a3=0, a4=0, a6=0):
        super().__init__(base)
        self.a = (a1, a2, a3, a4, a6)
        self.O = Place("O", 1, (), self.p, self.n)
        if self.discriminant() == 0:
            raise FixtureError("singular Weierstrass equation (discriminant 0)")

    def describe(self):
        from .fields import format_element
        return {"kind": "weierstrass", "q": self.q,
                "a": [format_element(self.base, c) for c in self.a]}

    def __repr__(self):
        names = ("a1", "a2", "a3", "a4", "a6")
        terms = ", ".join(f"{k}={v}" for k, v in zip(names, self.a) if v)
        return f"WeierstrassCurve(F_{self.q}; {terms})"

    def discriminant(self):
        F = self.base
        a1, a2, a3, a4, a6 = self.a
        m, ad, sb = F.mul, F.add, F.sub

        def c(k):
            return F.from_coeffs([k % F.p])

        b2 = ad(m(a1, a1), m(c(4), a2))
        b4 = ad(m(c(2), a4), m(a1, a3))
        b6 = ad(m(a3, a3), m(c(4), a6))
        b8 = sb(ad(m(m(a1, a1), a6), m(c(4), m(a2, a6))), m(m(a1, a3), a4))
        b8 = sb(ad(b8, m(m(a2, a3), a3)), m(a4, a4))
        d = F.neg(m(m(b2, b2), b8))
        d = sb(d, m(c(8), m(b4, m(b4, b4))))
        d = sb(d, m(c(27), m(b6, b6)))
        d = ad(d, m(c(9), m(b2, m(b4, b6))))
        return d

    @functools.lru_cache(maxsize=None)
    def coeffs_in(self, L):
        emb = embedding(self.base, L)
        return tuple(emb(c) for c in self.a)

    # curve equation pieces over an extension L

    def h_at(self, L, x):
        a1, _, a3, _, _ = self.coeffs_in(L)
        return L.add(L.mul(a1, x), a3)

    def f_at(self, L, x):
        _, a2, _, a4, a6 = self.coeffs_in(L)
        return L.add(L.mul(L.add(L.mul(L.add(x, a2), x), a4), x), a6)

    def on_curve(self, L, P):
        if P is None:
            return True
        x, y = P
        lhs = L.add(L.mul(y, y), L.mul(self.h_at(L, x), y))
        return lhs == self.f_at(L, x)

    def fy(self, L, P):
        """Partial derivative in y of y^2 + h(x) y - f(x) at P."""
        x, y = P
        return L.add(L.add(y, y), self.h_at(L, x))

    def y_roots(self, L, x):
        """All y in L with (x, y) on the curve."""
        h = self.h_at(L, x)
        f = self.f_at(L, x)
        return poly.roots(L, poly.trim((L.neg(f), h, 1)))

    @functools.lru_cache(maxsize=None)
    def points(self, L):
        """All points of E(L), O first (as None), affine points sorted."""
        tables = _solve_tables(L)
        out = [None]
        for x in range(L.q):
            out.extend((x, y) for y in _y_solutions(self, L, x, tables))
        return tuple(out)

    def places_of_degree(self, d):
        L = self.field_of_degree(d)
        out = [self.O] if d == 1 else []
        seen = set()
        for P in self.points(L):
            if P is None or P in seen:
                continue
            orb = self.frobenius_orbit(L, P)
            seen.update(orb)
            if len(orb) == d:
                out.append(self.place_of_point(L, P))
        return sorted(out)

    def frobenius_orbit(self, L, P, power=None):
        power = power or self.q
        orbit = [P]
        cur = (L.pow(P[0], power), L.pow(P[1], power))
        while cur != P:
            orbit.append(cur)
            cur = (L.pow(cur[0], power), L.pow(cur[1], power))
        return orbit

    def place_of_point(self, L, P):
        """The closed point below P in E(L)."""
        if P is None:
            return self.O
        d = len(self.frobenius_orbit(L, P))
        K = self.field_of_degree(d)
        if K is not L:
            emb = embedding(K, L)
            P = (emb.pullback(P[0]), emb.pullback(P[1]))
        rep = min(self.frobenius_orbit(K, P))
        return Place("pt", d, rep, self.p, self.n)

    def geometric_points(self, place):
        if place.kind == "O":
            return [None]
        K = place.residue_field
        return self.frobenius_orbit(K, place.data)

    def rational_points(self):
        return list(self.points(self.base))

    # group law over L

    def neg(self, L, P):
        if P is None:
            return None
        x, y = P
        return (x, L.sub(L.neg(y), self.h_at(L, x)))

    def line_through(self, L, P, Q):
        """(lambda, nu) of the line y = lambda x + nu through P, Q; None if vertical."""
        a1, a2, a3, a4, a6 = self.coeffs_in(L)
        x1, y1 = P
        x2, y2 = Q
        if x1 != x2:
            lam = L.div(L.sub(y2, y1), L.sub(x2, x1))
        else:
            den = self.fy(L, P)
            if y1 != y2 or den == 0:
                return None
            three = L.from_coeffs([3 % L.p])
            two = L.from_coeffs([2 % L.p])
            num = L.add(L.add(L.mul(three, L.mul(x1, x1)), L.mul(L.mul(two, a2), x1)), a4)
            num = L.sub(num, L.mul(a1, y1))
            lam = L.div(num, den)
        nu = L.sub(y1, L.mul(lam, x1))
        return lam, nu

    def add(self, L, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        line = self.line_through(L, P, Q)
        if line is None:
            return None
        lam, nu = line
        a1, a2, a3, _, _ = self.coeffs_in(L)
        x3 = L.sub(L.sub(L.sub(L.add(L.mul(lam, lam), L.mul(a1, lam)), a2), P[0]), Q[0])
        y3 = L.sub(L.sub(L.neg(L.mul(L.add(lam, a1), x3)), nu), a3)
        return (x3, y3)

    def sub(self, L, P, Q):
        return self.add(L, P, self.neg(L, Q))

    def mul(self, L, k, P):
        if k < 0:
            return self.mul(L, -k, self.neg(L, P))
        result = None
        while k:
            if k & 1:
                result = self.add(L, result, P)
            P = self.add(L, P, P)
            k >>= 1
        return result

    def order_of(self, L, P):
        k = 1
        Q = P
        while Q is not None:
            Q = self.add(L, Q, P)
            k += 1
        return k

    def frobenius(self, L, P, k=1):
        """q^k-power map on coordinates."""
        if P is None:
            return None
        e = self.q ** k
        return (L.pow(P[0], e), L.pow(P[1], e))


@functools.lru_cache(maxsize=None)
def _solve_tables(L):
    """Lookup tables to solve quadratics in L: square roots (odd p) or z^2+z (p = 2)."""
    if L.p == 2:
        table = {}
        for z in range(L.q):
            table.setdefault(L.add(L.mul(z, z), z), []).append(z)
        return table
    table = {}
    for z in range(L.q):
        table.setdefault(L.mul(z, z), []).append(z)
    return table


def _y_solutions(E, L, x, tables):
    h = E.h_at(L, x)
    f = E.f_at(L, x)
    if L.p != 2:
        # (2y + h)^2 = h^2 + 4 f
        four = L.from_coeffs([4 % L.p])
        disc = L.add(L.mul(h, h), L.mul(four, f))
        inv2 = L.inv(L.from_coeffs([2]))
        return sorted(L.mul(L.sub(s, h), inv2) for s in tables.get(disc, ()))
    if h == 0:
        return [L.pow(f, L.q // 2)]
    # y = h z, z^2 + z = f / h^2
    target = L.div(f, L.mul(h, h))
    return sorted(L.mul(h, z) for z in tables.get(target, ()))


# ---------------------------------------------------------------------------
# expansions of the coordinate functions


def _series_mul(L, a, b, n):
    from .local import _conv
    return _conv(L, a, b, n)


@functools.lru_cache(maxsize=4096)
def coordinate_expansions(E, L, P, N):
    """(x, y) as LocalElements at P in E(L) with relative precision N."""
    if P is None:
        return _expansion_at_O(E, L, N)
    x0, y0 = P
    a1, a2, a3, a4, a6 = E.coeffs_in(L)
    if E.fy(L, P) != 0:
        # t = x - x0; y = sum c_k t^k
        fx = poly.taylor_shift(L, (a6, a4, a2, 1), x0)
        fx = list(fx) + [0] * (N + 2)
        denom_inv = L.inv(E.fy(L, P))
        c = [y0]
        for k in range(1, N):
            acc = L.sub(fx[k], L.mul(a1, c[k - 1]))
            for i in range(1, k):
                acc = L.sub(acc, L.mul(c[i], c[k - i]))
            c.append(L.mul(acc, denom_inv))
        xl = LocalElement.exact(L, 0, (x0, 1)) if x0 else LocalElement.exact(L, 1, (1,))
        yl = LocalElement.from_series(L, 0, c, N)
        return xl, yl
    # t = y - y0; x = sum e_k t^k
    three = L.from_coeffs([3 % L.p])
    two = L.from_coeffs([2 % L.p])
    dphi = L.sub(L.add(L.add(L.mul(three, L.mul(x0, x0)), L.mul(L.mul(two, a2), x0)), a4),
                 L.mul(a1, y0))
    dinv = L.inv(dphi)
    ys = [y0, 1] + [0] * N
    e = [x0] + [0] * (N - 1)
    for k in range(1, N):
        X = e[:k] + [0] * (N - k)
        X2 = _series_mul(L, X, X, k + 1)
        X3 = _series_mul(L, X2, X, k + 1)
        XY = _series_mul(L, X, ys, k + 1)
        Y2 = _series_mul(L, ys, ys, k + 1)
        r = X3[k]
        r = L.add(r, L.mul(a2, X2[k]))
        r = L.add(r, L.mul(a4, X[k]))
        r = L.sub(r, L.mul(a1, XY[k]))
        r = L.sub(r, Y2[k])
        r = L.sub(r, L.mul(a3, ys[k]))
        e[k] = L.neg(L.mul(r, dinv))
    xl = LocalElement.from_series(L, 0, e, N) if any(e) else None
    yl = LocalElement.exact(L, 0, (y0, 1)) if y0 else LocalElement.exact(L, 1, (1,))
    return xl, yl


def _expansion_at_O(E, L, N):
    """x = t^-2 / u(-t), y = t^-3 / u(-t) where w(z) = z^3 u(z) and t = x/y."""
    a1, a2, a3, a4, a6 = E.coeffs_in(L)
    K = N + 3
    w = [0] * (K + 3)
    w[3] = 1
    for k in range(4, K + 3):
        acc = 0
        # a1 z w + a2 z^2 w
        acc = L.add(acc, L.mul(a1, w[k - 1]))
        acc = L.add(acc, L.mul(a2, w[k - 2]))
        w2 = _series_mul(L, w, w, k + 1)
        acc = L.add(acc, L.mul(a3, w2[k]))
        acc = L.add(acc, L.mul(a4, w2[k - 1]))
        w3 = _series_mul(L, w2, w, k + 1)
        acc = L.add(acc, L.mul(a6, w3[k]))
        w[k] = acc
    u = w[3:3 + N]
    # substitute z = -t
    u_neg = [c if i % 2 == 0 else L.neg(c) for i, c in enumerate(u)]
    from .local import _series_inverse
    inv = _series_inverse(L, u_neg, N)
    xl = LocalElement(L, -2, inv, N)
    yl = LocalElement(L, -3, inv, N)
    return xl, yl


def parse_curve(text):
    """Curve from ``key = value`` lines: kind, p, n, and a1..a6 for Weierstrass models."""
    from .fields import parse_element
    data = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FixtureError(f"expected 'key = value', got {raw!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        data[k] = v
    try:
        kind = data["kind"]
        p = int(data["p"])
        n = int(data.get("n", "1"))
    except (KeyError, ValueError) as exc:
        raise FixtureError(f"curve fixture needs kind, p and n: {exc}") from exc
    try:
        base = make_field(p, n)
    except Exception as exc:
        raise FixtureError(str(exc)) from exc
    if kind == "p1":
        return ProjectiveLine(base)
    if kind != "weierstrass":
        raise FixtureError(f"unknown curve kind {kind!r}")
    coeffs = []
    for key in ("a1", "a2", "a3", "a4", "a6"):
        coeffs.append(parse_element(data.get(key, "0"), base).value)
    return WeierstrassCurve(base, *coeffs)


def load_curve(path):
    with open(path) as fh:
        return parse_curve(fh.read())


def place_embedding_check(place, L):
    if place.residue_field is not L:
        raise NotASubfield("local element does not live in the residue field of the place")


__all__ = ["Place", "ProjectiveLine", "WeierstrassCurve", "coordinate_expansions", "parse_curve",
           "load_curve", "EXACT"]
