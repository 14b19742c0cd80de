"""Extensions of a finite abelian group Q by Z/m, as normalized 2-cocycles.

Elements of Q = Z/q_1 + ... + Z/q_k are coordinate tuples.  A cocycle table is
a dict keyed by pairs of such tuples.  Ext^1(Q, Z/m) is + Z/gcd(q_j, m); the
class of a cocycle f has j-th coordinate sum_{i<q_j} f(i e_j, e_j) mod gcd(q_j, m).
"""

import itertools
import math

from .errors import CapExceeded

EXT_CAP = 1 << 8


def _elements(invs):
    return list(itertools.product(*[range(q) for q in invs]))


def _add(invs, x, y):
    return tuple((a + b) % q for a, b, q in zip(x, y, invs))


def _unit(invs, j):
    return tuple(int(i == j) for i in range(len(invs)))


def carry_cocycle(invs, m, u):
    """Cocycle f(x, y) = sum_j u_j [x_j + y_j >= q_j]; the standard representative."""
    table = {}
    for x in _elements(invs):
        for y in _elements(invs):
            table[(x, y)] = sum(uj for uj, a, b, q in zip(u, x, y, invs) if a + b >= q) % m
    return table


class ExtensionClass:
    """A normalized 2-cocycle Q x Q -> Z/m together with its class coordinates."""

    def __init__(self, invariants, m, table):
        self.invariants = tuple(invariants)
        self.m = m
        self.table = table
        self.gcds = tuple(math.gcd(q, m) for q in self.invariants)

    @classmethod
    def from_class(cls, invariants, m, coords):
        return cls(invariants, m, carry_cocycle(invariants, m, coords))

    @property
    def order_of_quotient(self):
        return math.prod(self.invariants)

    def value(self, x, y):
        return self.table[(tuple(x), tuple(y))]

    def is_normalized(self):
        zero = tuple(0 for _ in self.invariants)
        return all(self.table[(zero, x)] == 0 and self.table[(x, zero)] == 0
                   for x in _elements(self.invariants))

    def is_cocycle(self):
        """Exhaustive check of f(y,z) - f(x+y,z) + f(x,y+z) - f(x,y) = 0."""
        invs, m, f = self.invariants, self.m, self.table
        elems = _elements(invs)
        for x in elems:
            for y in elems:
                xy = _add(invs, x, y)
                fxy = f[(x, y)]
                for z in elems:
                    if (f[(y, z)] - f[(xy, z)] + f[(x, _add(invs, y, z))] - fxy) % m:
                        return False
        return True

    def coordinates(self):
        """Class in + Z/gcd(q_j, m), read off along each cyclic factor."""
        out = []
        zero = tuple(0 for _ in self.invariants)
        for j, (q, g) in enumerate(zip(self.invariants, self.gcds)):
            e = _unit(self.invariants, j)
            x = zero
            total = 0
            for _ in range(q):
                total += self.table[(x, e)]
                x = _add(self.invariants, x, e)
            out.append(total % self.m % g)
        return tuple(out)

    def __add__(self, other):
        """Baer sum: pointwise sum of cocycles."""
        self._check(other)
        return ExtensionClass(self.invariants, self.m,
                              {k: (v + other.table[k]) % self.m for k, v in self.table.items()})

    def __neg__(self):
        return ExtensionClass(self.invariants, self.m,
                              {k: (-v) % self.m for k, v in self.table.items()})

    def _check(self, other):
        if other.invariants != self.invariants or other.m != self.m:
            raise ValueError("extension classes over different groups")

    def is_trivial(self):
        return coboundary_solve(self.invariants, self.m, self.table) is not None

    def cohomologous(self, other):
        self._check(other)
        diff = {k: (v - other.table[k]) % self.m for k, v in self.table.items()}
        return coboundary_solve(self.invariants, self.m, diff) is not None

    def __repr__(self):
        return f"ExtensionClass(Q={self.invariants}, m={self.m}, class={self.coordinates()})"


def coboundary_solve(invs, m, g):
    """h: Q -> Z/m with h(x) + h(y) - h(x+y) = g(x, y), or None.

    Only the equations with y a standard generator are imposed; for a cocycle
    g these force the rest.  h is built along the lexicographic path
    0 -> x_1 e_1 -> x_1 e_1 + x_2 e_2 -> ... with unknowns t_j = h(e_j); each
    remaining equation then reads either 0 = const or q_j t_j = const.
    """
    k = len(invs)
    elems = _elements(invs)
    zero = tuple(0 for _ in invs)
    units = [_unit(invs, j) for j in range(k)]
    # h(x) = sum_j x_j t_j + base[x]
    base = {zero: 0}
    for x in elems:
        if x == zero:
            continue
        j = max(i for i in range(k) if x[i])
        prev = tuple(v - (i == j) for i, v in enumerate(x))
        base[x] = (base[prev] - g[(prev, units[j])]) % m
    need = [None] * k
    for x in elems:
        for j in range(k):
            y = _add(invs, x, units[j])
            # h(x) + t_j - h(y) - g(x, e_j) = carry * q_j t_j + const
            const = (base[x] - base[y] - g[(x, units[j])]) % m
            carry = x[j] + 1 >= invs[j]
            if not carry:
                if const:
                    return None
            else:
                r = (-const) % m
                if need[j] is None:
                    need[j] = r
                elif need[j] != r:
                    return None
    t = []
    for j in range(k):
        r = need[j] or 0
        q = invs[j]
        gq = math.gcd(q, m)
        if r % gq:
            return None
        # solve q t = r mod m
        qq, rr, mm = q // gq, r // gq, m // gq
        t.append((rr * pow(qq, -1, mm)) % mm if mm > 1 else 0)
    return {x: (sum(xj * tj for xj, tj in zip(x, t)) + base[x]) % m for x in elems}


def ext_group(invariants, m):
    """Ext^1(Q, Z/m) with one explicit cocycle per standard generator.

    Returns (class invariants, list of basis ExtensionClass values).
    """
    invs = tuple(invariants)
    if math.prod(invs) > EXT_CAP:
        raise CapExceeded(f"|Q| = {math.prod(invs)} exceeds the cocycle cap {EXT_CAP}")
    gcds = tuple(math.gcd(q, m) for q in invs)
    basis = []
    for j, g in enumerate(gcds):
        if g == 1:
            continue
        u = [0] * len(invs)
        u[j] = 1
        basis.append(ExtensionClass.from_class(invs, m, u))
    return tuple(g for g in gcds if g != 1), basis
