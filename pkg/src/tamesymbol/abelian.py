"""Finitely generated abelian groups through integer matrices.

Two representations are used.  ``FgAbGroup`` is a presentation
``Z^rank / (column span of relations)``; it is what users hand in and what
fixture files store.  Inside the subgroup machinery every finite group is first
brought to invariant form ``A = Z/d_1 + ... + Z/d_r``; ``Subgroup`` is then a
subgroup of such an ``A`` stored as the full-rank lattice it spans together
with ``d_i e_i``, and ``Subquotient`` is ``X/Y`` for subgroups ``Y <= X``.
"""

import itertools
import math
import os
from functools import reduce

from .errors import CapExceeded, GeneratorNotInGroup, InfiniteGroup

CHECK_SNF = bool(os.environ.get("TAMESYMBOL_CHECK_SNF"))


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] if bt else [0] * cols
            for row in a]


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def _snf_full(M):
    """Smith normal form with transforms and their inverses.

    Returns (D, U, V, Uinv, Vinv) with U M V = D.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, Uinv = identity(m), identity(m)
    V, Vinv = identity(n), identity(n)

    def row_add(dst, src, k):  # row_dst += k row_src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]
        for row in Uinv:  # column op on the inverse
            row[src] -= k * row[dst]

    def col_add(dst, src, k):  # col_dst += k col_src
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]
        Vinv[src] = [x - k * y for x, y in zip(Vinv[src], Vinv[dst])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            piv = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // piv))
                    if A[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // piv))
                    if A[t][j]:
                        moved = True
            if moved:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, "r")
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), j, "c")
                if best[2] == "r" and best[1] != t:
                    row_swap(best[1], t)
                elif best[2] == "c" and best[1] != t:
                    col_swap(best[1], t)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    if CHECK_SNF:
        _verify_snf(M, A, U, V, Uinv, Vinv)
    return A, U, V, Uinv, Vinv


def _verify_snf(M, D, U, V, Uinv, Vinv):
    m = len(M)
    n = len(M[0]) if m else 0
    if m and n:
        assert matmul(matmul(U, M), V) == D, "SNF transform check failed"
    assert matmul(U, Uinv) == identity(m) and matmul(V, Vinv) == identity(n)
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            assert i == j or D[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0), "divisibility chain broken"


def smith_normal_form(M):
    """(D, U, V) with U M V = D diagonal, d_1 | d_2 | ..., U and V unimodular."""
    D, U, V, _, _ = _snf_full(M)
    return D, U, V


def snf_diagonal(M):
    D = _snf_full(M)[0]
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_kernel(M, ncols=None):
    """Basis (list of vectors) of {v in Z^n : M v = 0}."""
    if not M:
        return [list(r) for r in identity(ncols or 0)]
    D, U, V, _, _ = _snf_full(M)
    n = len(M[0])
    rank = sum(1 for i in range(min(len(M), n)) if D[i][i])
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


def solve_integer(M, b):
    """Some v in Z^n with M v = b, or None."""
    m = len(M)
    n = len(M[0]) if m else 0
    D, U, V, _, _ = _snf_full(M)
    c = [sum(u * x for u, x in zip(row, b)) for row in U]
    w = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d:
            if c[i] % d:
                return None
            w[i] = c[i] // d
        elif c[i]:
            return None
    return [sum(V[i][j] * w[j] for j in range(n)) for i in range(n)]


def hermite_rows(rows, ncols):
    """Row-style Hermite normal form (echelon, positive pivots, reduced above)."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while rows and col < ncols:
        live = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            new = [piv]
            for r in live[1:]:
                k = r[col] // piv[col]
                r = [x - k * y for x, y in zip(r, piv)]
                if r[col]:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            live = new
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for i, r in enumerate(out):
            k = r[col] // piv[col]
            if k:
                out[i] = [x - k * y for x, y in zip(r, piv)]
        out.append(piv)
        rows = rest
        col += 1
    return out


def elementary_divisors(invariants):
    """Prime-power decomposition of a list of invariant factors (0 kept as 0)."""
    from .fields import prime_factors
    out = []
    for d in invariants:
        if d == 0:
            out.append(0)
            continue
        for p in prime_factors(d):
            e = 1
            while d % (e * p) == 0:
                e *= p
            out.append(e)
    return sorted(out)


def invariants_from_elementary(divs):
    """Invariant factors d_1 | d_2 | ... from prime-power divisors, 1s dropped."""
    from .fields import prime_factors
    free = sum(1 for d in divs if d == 0)
    by_prime = {}
    for d in divs:
        if d > 1:
            p = prime_factors(d)[0]
            by_prime.setdefault(p, []).append(d)
    k = max((len(v) for v in by_prime.values()), default=0)
    inv = [1] * k
    for v in by_prime.values():
        v.sort(reverse=True)
        for i, d in enumerate(v):
            inv[k - 1 - i] *= d
    return inv + [0] * free


class FgAbGroup:
    """Z^rank modulo the column span of ``relations`` (a rank x k integer matrix)."""

    def __init__(self, rank, relations=()):
        rel = [list(map(int, row)) for row in relations] if relations else []
        if rel and len(rel) != rank:
            raise ValueError("relations must have one row per generator")
        if not rel:
            rel = [[] for _ in range(rank)]
        self.rank = rank
        self.relations = rel
        k = len(rel[0]) if rank else 0
        if rank and k:
            D, U, _, Uinv, _ = _snf_full(rel)
            diag = [D[i][i] if i < k else 0 for i in range(rank)]
        else:
            U, Uinv = identity(rank), identity(rank)
            diag = [0] * rank
        self._U = U
        self._Uinv = Uinv
        self._diag = diag
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        self.invariants = tuple(diag[i] for i in self._keep)

    @classmethod
    def from_invariants(cls, invariants):
        invariants = [int(d) for d in invariants]
        r = len(invariants)
        rel = [[d if i == j else 0 for j in range(r)] for i, d in enumerate(invariants)]
        return cls(r, rel if r else ())

    @property
    def is_finite(self):
        return all(d != 0 for d in self.invariants)

    @property
    def order(self):
        """Group order, or None for an infinite group."""
        if not self.is_finite:
            return None
        return math.prod(self.invariants)

    def canonical(self, x):
        """Coordinates of x (a vector in Z^rank) in the invariant decomposition."""
        if len(x) != self.rank:
            raise GeneratorNotInGroup(f"expected {self.rank} coordinates, got {len(x)}")
        y = [sum(u * xi for u, xi in zip(self._U[i], x)) for i in self._keep]
        return tuple(v % d if d else v for v, d in zip(y, self.invariants))

    def lift(self, y):
        """A vector in Z^rank with canonical coordinates y."""
        full = [0] * self.rank
        for i, v in zip(self._keep, y):
            full[i] = v
        return [sum(self._Uinv[r][c] * full[c] for c in range(self.rank))
                for r in range(self.rank)]

    def canonical_generators(self):
        """Images in Z^rank of the standard generators of the invariant decomposition."""
        return [[self._Uinv[r][i] for r in range(self.rank)] for i in self._keep]

    def is_zero(self, x):
        return not any(self.canonical(x))

    def elements(self, cap=1 << 16):
        """All elements as canonical coordinate tuples (finite groups only)."""
        if not self.is_finite:
            raise InfiniteGroup("cannot enumerate an infinite group")
        if self.order > cap:
            raise CapExceeded(f"group of order {self.order} exceeds enumeration cap")
        return itertools.product(*[range(d) for d in self.invariants])

    def __repr__(self):
        if not self.invariants:
            return "FgAbGroup(0)"
        parts = ["Z" if d == 0 else f"Z/{d}" for d in self.invariants]
        return "FgAbGroup(" + " + ".join(parts) + ")"


def _coords_in_triangular(x, basis):
    """c with c . basis = x for an upper-triangular full-rank basis, or None."""
    x = list(x)
    c = []
    for i, row in enumerate(basis):
        piv = row[i]
        if x[i] % piv:
            return None
        k = x[i] // piv
        c.append(k)
        if k:
            for j in range(i, len(x)):
                x[j] -= k * row[j]
    return c


class Subgroup:
    """Subgroup of A = Z/d_1 + ... + Z/d_r generated by ``gens``."""

    def __init__(self, mods, gens=()):
        self.mods = tuple(int(d) for d in mods)
        r = len(self.mods)
        if any(d <= 0 for d in self.mods):
            raise InfiniteGroup("subgroups are only supported in finite groups")
        cleaned = []
        for g in gens:
            if len(g) != r:
                raise GeneratorNotInGroup(f"generator {g} has wrong length for ambient of rank {r}")
            g = tuple(int(v) % d for v, d in zip(g, self.mods))
            if any(g) and g not in cleaned:
                cleaned.append(g)
        self.gens = cleaned
        diag = [[d if i == j else 0 for j in range(r)] for i, d in enumerate(self.mods)]
        self.basis = hermite_rows([list(g) for g in cleaned] + diag, r)
        self._index = math.prod(row[i] for i, row in enumerate(self.basis))
        self.order = math.prod(self.mods) // self._index

    @classmethod
    def whole(cls, mods):
        r = len(mods)
        return cls(mods, [tuple(int(i == j) for j in range(r)) for i in range(r)])

    @classmethod
    def zero(cls, mods):
        return cls(mods, ())

    def reduce(self, x):
        return tuple(int(v) % d for v, d in zip(x, self.mods))

    def contains(self, x):
        return _coords_in_triangular(x, self.basis) is not None

    def __contains__(self, x):
        return self.contains(x)

    def __le__(self, other):
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.mods == other.mods and self.basis == other.basis

    def __hash__(self):
        return hash((self.mods, tuple(map(tuple, self.basis))))

    def __add__(self, other):
        return Subgroup(self.mods, self.gens + other.gens)

    def intersect(self, other):
        r = len(self.mods)
        b1, b2 = self.basis, other.basis
        # u b1 = w b2  <=>  [b1^T | -b2^T] (u, w) = 0
        M = [[b1[i][c] for i in range(r)] + [-b2[i][c] for i in range(r)] for c in range(r)]
        gens = []
        for v in integer_kernel(M):
            u = v[:r]
            gens.append(tuple(sum(u[i] * b1[i][c] for i in range(r)) for c in range(r)))
        return Subgroup(self.mods, gens)

    __and__ = intersect

    def coefficients(self, x):
        """Integers n with x = sum n_i gens[i] in A, or None when x is not in the subgroup."""
        r = len(self.mods)
        k = len(self.gens)
        M = [[self.gens[j][c] for j in range(k)] + [self.mods[c] if c == i else 0 for i in range(r)]
             for c in range(r)]
        sol = solve_integer(M, list(x))
        return None if sol is None else sol[:k]

    def multiple(self, n):
        return Subgroup(self.mods, [tuple(n * v for v in g) for g in self.gens])

    def invariants(self):
        return Subquotient(self, Subgroup.zero(self.mods)).invariants

    def elements(self):
        """Enumerate all elements (breadth-first closure); for oracles and small groups."""
        zero = tuple(0 for _ in self.mods)
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = tuple((a + b) % d for a, b, d in zip(x, g, self.mods))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={self.gens})"


class Subquotient:
    """The group X/Y for subgroups Y <= X of a common finite ambient group."""

    def __init__(self, X, Y):
        if X.mods != Y.mods:
            raise GeneratorNotInGroup("subgroups live in different ambient groups")
        if not Y <= X:
            raise GeneratorNotInGroup("denominator is not contained in numerator")
        self.X, self.Y = X, Y
        T = [_coords_in_triangular(row, X.basis) for row in Y.basis]
        D, _, V, _, Vinv = _snf_full(T)
        r = len(X.mods)
        self._V = V
        self._diag = [D[i][i] for i in range(r)]
        self._keep = [i for i, d in enumerate(self._diag) if d != 1]
        self.invariants = tuple(self._diag[i] for i in self._keep)
        self.order = math.prod(self.invariants)
        self.lifts = []
        for i in self._keep:
            c = Vinv[i]
            self.lifts.append(tuple(sum(c[k] * X.basis[k][j] for k in range(r)) % X.mods[j]
                                    for j in range(r)))

    def canonical(self, x):
        """Coordinates of the class of x (an element of X) in the invariant decomposition."""
        c = _coords_in_triangular(x, self.X.basis)
        if c is None:
            raise GeneratorNotInGroup(f"{x} is not in the numerator subgroup")
        r = len(c)
        out = []
        for i, d in zip(self._keep, self.invariants):
            out.append(sum(c[k] * self._V[k][i] for k in range(r)) % d)
        return tuple(out)

    def lift(self, y):
        mods = self.X.mods
        out = [0] * len(mods)
        for v, g in zip(y, self.lifts):
            for j in range(len(mods)):
                out[j] += v * g[j]
        return tuple(v % d for v, d in zip(out, mods))

    def elements(self):
        return itertools.product(*[range(d) for d in self.invariants])

    def image_subgroup(self, elems):
        """Subgroup of the invariant-form quotient generated by the classes of ``elems``."""
        return Subgroup(self.invariants, [self.canonical(e) for e in elems]) if self.invariants \
            else Subgroup((), ())

    def __repr__(self):
        return f"Subquotient({'+'.join(f'Z/{d}' for d in self.invariants) or '0'})"


def hom_invariants(invariants, m):
    """Invariants of Hom(+ Z/d_i, Z/m)."""
    return tuple(g for g in (math.gcd(d, m) for d in invariants) if g != 1)


class HomGroup:
    """Hom(Q, Z/m) for Q given by invariants q_j.

    An element is the vector of values on the standard generators of Q;
    valid vectors satisfy q_j v_j = 0 mod m.
    """

    def __init__(self, invariants, m):
        if any(d == 0 for d in invariants):
            raise InfiniteGroup("Hom is only supported out of finite groups")
        self.source = tuple(invariants)
        self.m = m
        self.gcds = tuple(math.gcd(d, m) for d in self.source)
        self.order = math.prod(self.gcds)
        self.invariants = tuple(g for g in self.gcds if g != 1)
        gens = []
        k = len(self.source)
        for j, g in enumerate(self.gcds):
            gens.append(tuple((m // g) if i == j else 0 for i in range(k)))
        # realized as a subgroup of (Z/m)^k so images can be compared directly
        self.as_subgroup = Subgroup((m,) * k, gens) if k else Subgroup((), ())

    def evaluate(self, values, x):
        return sum(v * c for v, c in zip(values, x)) % self.m

    def is_hom(self, values):
        return all((q * v) % self.m == 0 for q, v in zip(self.source, values))

    def elements(self):
        k = len(self.source)
        for t in itertools.product(*[range(g) for g in self.gcds]):
            yield tuple((t[j] * (self.m // self.gcds[j])) % self.m for j in range(k))

    def coordinates(self, values):
        """Coordinates t_j in + Z/gcd(q_j, m)."""
        return tuple((v // (self.m // g)) % g for v, g in zip(values, self.gcds))


def hom_group(G, m):
    """Hom(G, Z/m) for a finite FgAbGroup (or invariant tuple)."""
    inv = G.invariants if isinstance(G, FgAbGroup) else tuple(G)
    if any(d == 0 for d in inv):
        raise InfiniteGroup("Hom(G, Z/m) needs G finite here")
    return HomGroup(inv, m)


def map_kernel_image(mods, gens, images, m, target=None):
    """Kernel and image of a homomorphism from <gens> (in A) to (Z/m)^k.

    ``images[i]`` is the value vector of ``gens[i]``; the map must be well
    defined.  Returns (kernel Subgroup of A, image Subgroup of (Z/m)^k).
    """
    k = len(images[0]) if images else (len(target.mods) if target else 0)
    s = len(gens)
    if s == 0:
        return Subgroup.zero(mods), Subgroup((m,) * k, ())
    # n in Z^s with sum n_i images_i = 0 mod m  <=>  [images^T | m I] (n, l) = 0
    M = [[images[i][c] for i in range(s)] + [m if j == c else 0 for j in range(k)] for c in range(k)]
    kernel_gens = []
    basis = integer_kernel(M) if k else [[int(i == j) for j in range(s)] for i in range(s)]
    for v in basis:
        n = v[:s]
        kernel_gens.append(tuple(sum(n[i] * gens[i][c] for i in range(s)) for c in range(len(mods))))
    kernel = Subgroup(mods, kernel_gens)
    image = Subgroup((m,) * k, [tuple(x % m for x in im) for im in images]) if k \
        else Subgroup((), ())
    return kernel, image


def invariants_from_torsion(count, order):
    """Invariant factors of a finite abelian group from its torsion counts.

    ``count(n)`` returns |G[n]|.  For each prime p the number of cyclic
    p-factors of order >= p^j is log_p |G[p^j]| - log_p |G[p^(j-1)]|.
    """
    from .fields import prime_factors
    divs = []
    for p in prime_factors(order) if order > 1 else []:
        prev = 0
        j = 1
        levels = []
        while True:
            c = count(p ** j)
            e = round(math.log(c, p))
            if p ** e != c:
                e = 0
                while p ** (e + 1) <= c:
                    e += 1
            levels.append(e - prev)
            if e == prev:
                break
            prev = e
            j += 1
        # levels[j-1] = number of factors of order >= p^j
        for j in range(len(levels) - 1):
            exact = levels[j] - (levels[j + 1] if j + 1 < len(levels) else 0)
            divs.extend([p ** (j + 1)] * exact)
    return tuple(invariants_from_elementary(divs))


def lcm(*xs):
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)
