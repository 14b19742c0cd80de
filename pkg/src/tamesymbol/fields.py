"""Finite fields F_{p^n} with explicit subfield embeddings.

Elements are encoded as integers: the residue c_0 + c_1 x + ... + c_{n-1} x^{n-1}
modulo the field's defining polynomial is stored as c_0 + c_1 p + c_2 p^2 + ....
This encoding is also the fixed total order on field elements used for canonical
choices elsewhere (smallest root, canonical orbit representative, ...).

Arithmetic is table driven: every field carries exponential and logarithm
tables with respect to its smallest primitive element, plus a Zech logarithm
table for addition in odd characteristic extension fields.  With the size cap
p^n <= 2^20 the tables are cheap to build and discrete logarithms are lookups.

Hot loops in other modules call the ``FiniteField`` methods directly on the
integer encodings; ``FieldElement`` is the user-facing wrapper.
"""

import functools
import math
import re

from . import mutations
from .errors import (
    CapExceeded,
    FixtureError,
    NotAGenerator,
    NotASubfield,
    NotPrime,
    ZeroInput,
)

FIELD_CAP = 1 << 20


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p as coefficient lists (low to high); used for moduli only


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                     for i in range(n)])


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _fp_trim(a)
    return _fp_trim(q), a


def _fp_powmod(base, e, mod, p):
    result = [1]
    base = _fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _fp_divmod(_fp_mul(result, base, p), mod, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def is_irreducible_fp(f, p):
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _fp_sub(_fp_powmod(x, p ** n, f, p), x, p):
        return False
    for r in prime_factors(n):
        h = _fp_sub(_fp_powmod(x, p ** (n // r), f, p), x, p)
        if len(_fp_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p, n):
    """Monic irreducible of degree n over F_p with the smallest encoding."""
    for e in range(p ** n):
        digits = [(e // p ** i) % p for i in range(n)]
        f = digits + [1]
        if is_irreducible_fp(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


class FiniteField:
    """The field F_{p^n} = F_p[x]/(modulus) acting on integer encodings."""

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(modulus)
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __reduce__(self):
        return (make_field, (self.p, self.n))

    # encoding helpers

    def coeffs(self, a):
        p = self.p
        return tuple((a // p ** i) % p for i in range(self.n))

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            coeffs = [c % self.p for c in _fp_divmod([c % self.p for c in coeffs],
                                                     list(self.modulus), self.p)[1]]
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def _mul_enc(self, a, b):
        p = self.p
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
            m = sum(c << i for i, c in enumerate(self.modulus))
            top = self.n
            for shift in range(r.bit_length() - 1 - top, -1, -1):
                if r >> (shift + top) & 1:
                    r ^= m << shift
            return r
        prod = _fp_mul(list(self.coeffs(a)), list(self.coeffs(b)), p)
        rem = _fp_divmod(prod, list(self.modulus), p)[1] if len(prod) > self.n else prod
        return sum(c * p ** i for i, c in enumerate(rem))

    def _pow_enc(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_enc(r, a)
            a = self._mul_enc(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        q, p = self.q, self.p
        order = q - 1
        factors = prime_factors(order) if order > 1 else []
        gen = None
        for cand in range(1, q):
            if all(self._pow_enc(cand, order // r) != 1 for r in factors):
                gen = cand
                break
        self.generator = gen
        exp = [0] * (2 * order)
        log = [-1] * q
        cur = 1
        for k in range(order):
            exp[k] = cur
            log[cur] = k
            cur = self._mul_enc(cur, gen)
        exp[order:] = exp[:order]
        self._exp = exp
        self._log = log
        self._half = order // 2 if p != 2 else 0
        self._zech = None
        if p != 2 and self.n > 1:
            zech = [-1] * order
            for k in range(order):
                v = exp[k]
                w = v - v % p + (v % p + 1) % p
                zech[k] = log[w] if w else -1
            self._zech = zech

    # arithmetic on encodings

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        d = self._log[b] - la
        if d < 0:
            d += self.q - 1
        z = self._zech[d]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        if self.n == 1:
            return self.p - a
        return self._exp[self._log[a] + self._half]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if not a:
            raise ZeroInput("inverse of zero")
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a, b):
        if not b:
            raise ZeroInput("division by zero")
        if not a:
            return 0
        return self._exp[self._log[a] + self.q - 1 - self._log[b]]

    def pow(self, a, e):
        if not a:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroInput("negative power of zero")
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a):
        """Logarithm with respect to ``self.generator``."""
        if not a:
            raise ZeroInput("logarithm of zero")
        return self._log[a]

    def exp(self, k):
        return self._exp[k % (self.q - 1)]

    def minus_one(self):
        return self.neg(1)

    def frob(self, a, k=1):
        """a^(p^k)."""
        return self.pow(a, self.p ** k)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def order_of(self, a):
        if not a:
            raise ZeroInput("order of zero")
        return (self.q - 1) // math.gcd(self._log[a], self.q - 1)

    def element(self, value):
        """Wrap an encoding (or coefficient sequence) as a ``FieldElement``."""
        if isinstance(value, (list, tuple)):
            value = self.from_coeffs(value)
        return FieldElement(self, value)

    def gen(self):
        return FieldElement(self, self.generator)


def make_field(p, n=1):
    """Return F_{p^n} with the lexicographically smallest monic irreducible modulus."""
    return _make_field(int(p), int(n))


@functools.lru_cache(maxsize=None)
def _make_field(p, n):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** n > FIELD_CAP:
        raise CapExceeded(f"{p}^{n} exceeds the field cap {FIELD_CAP}")
    return FiniteField(p, n, smallest_irreducible(p, n))


def field_of_order(q):
    """F_q for a prime power q."""
    for p in prime_factors(q)[:1]:
        n = round(math.log(q, p))
        if p ** n == q:
            return make_field(p, n)
    raise NotPrime(f"{q} is not a prime power")


class FieldElement:
    """An element of a finite field; wraps the integer encoding."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise NotASubfield(f"{other.field} and {self.field} differ; use an embedding")
            return other.value
        if isinstance(other, int):
            return self.field.from_coeffs([other])
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self):
        return self.field.coeffs(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_coeffs([other])
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.value))

    def __lt__(self, other):
        return self.value < self._other(other)

    def __repr__(self):
        return format_element(self.field, self.value)


# ---------------------------------------------------------------------------
# embeddings, norm, Frobenius, discrete logarithm


class Embedding:
    """The fixed embedding F_q -> F_{q^d}.

    The small field's class of x is sent to the smallest-encoded root of the
    small modulus inside the big field.  Every cross-field operation in the
    package goes through one of these objects.
    """

    def __init__(self, small, big):
        if small.p != big.p or big.n % small.n:
            raise NotASubfield(f"{small} is not a subfield of {big}")
        self.small = small
        self.big = big
        self.degree = big.n // small.n
        Q, q = big.q, small.q
        step = (Q - 1) // (q - 1)
        sub = [0] + [big._exp[j * step] for j in range(q - 1)]
        roots = [r for r in sub if self._eval_modulus(r) == 0]
        self.root = min(roots)
        table = [0] * q
        for a in range(q):
            acc = 0
            for c in reversed(small.coeffs(a)):
                acc = big.add(big.mul(acc, self.root), c)
            table[a] = acc
        self._table = table
        self._inverse = {b: a for a, b in enumerate(table)}
        self._norm_exp = step

    def _eval_modulus(self, r):
        big = self.big
        acc = 0
        for c in reversed(self.small.modulus):
            acc = big.add(big.mul(acc, r), c)
        return acc

    def __repr__(self):
        return f"Embedding({self.small} -> {self.big})"

    def __call__(self, a):
        return self._table[a]

    def contains(self, b):
        return b in self._inverse

    def pullback(self, b):
        try:
            return self._inverse[b]
        except KeyError:
            raise NotASubfield(f"{format_element(self.big, b)} does not lie in {self.small}") from None

    def norm(self, b):
        """Nm_{big/small}(b) as an encoding in the small field."""
        e = self._norm_exp
        if mutations.active("norm-exponent"):
            e = -e
        if not b:
            return 0
        return self.pullback(self.big.pow(b, e))

    def trace(self, b):
        big, q = self.big, self.small.q
        acc, cur = 0, b
        for _ in range(self.degree):
            acc = big.add(acc, cur)
            cur = big.pow(cur, q)
        return self.pullback(acc)

    def frobenius(self, b, k=1):
        """b^(q^k) in the big field."""
        return self.big.pow(b, self.small.q ** k)

    def conjugates(self, b):
        out = [b]
        for _ in range(self.degree - 1):
            out.append(self.big.pow(out[-1], self.small.q))
        return out


@functools.lru_cache(maxsize=None)
def embedding(small, big):
    return Embedding(small, big)


def extension(base, d):
    """The degree-d extension of ``base`` together with its embedding."""
    big = make_field(base.p, base.n * d)
    return big, embedding(base, big)


def norm(a, down_to):
    """Nm_{l/k}(a) for a in l = a.field and k = down_to."""
    emb = embedding(down_to, a.field)
    return FieldElement(down_to, emb.norm(a.value))


def frobenius(a, base):
    """a^q where q = |base|; base must be a subfield of a's field."""
    embedding(base, a.field)
    return FieldElement(a.field, a.field.pow(a.value, base.q))


def discrete_log(a, g):
    """k in [0, q-2] with g^k = a."""
    F = a.field
    if g.field is not F:
        raise NotASubfield("a and g lie in different fields")
    if a.value == 0:
        raise ZeroInput("discrete log of zero")
    order = F.q - 1
    lg = F.log(g.value) if g.value else None
    if lg is None or math.gcd(lg, order) != 1:
        raise NotAGenerator(f"{g!r} does not generate the multiplicative group")
    return F.log(a.value) * pow(lg, -1, order) % order if order > 1 else 0


# ---------------------------------------------------------------------------
# literals: p^n:c0,c1,...

_LITERAL = re.compile(r"^\s*(\d+)\^(\d+):\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*$")


def format_element(field, a):
    return f"{field.p}^{field.n}:" + ",".join(str(c) for c in field.coeffs(a))


def parse_element(text, field=None):
    """Parse ``p^n:c0,c1,...``; a bare integer is accepted when ``field`` is given."""
    text = text.strip()
    m = _LITERAL.match(text)
    if m:
        p, n = int(m.group(1)), int(m.group(2))
        F = make_field(p, n)
        if field is not None and field is not F:
            raise FixtureError(f"literal {text!r} is not in {field}")
        coeffs = [int(c) for c in m.group(3).split(",")]
        if len(coeffs) > n:
            raise FixtureError(f"too many coefficients in {text!r}")
        return FieldElement(F, F.from_coeffs(coeffs))
    if field is not None and re.fullmatch(r"-?\d+", text):
        return FieldElement(field, field.from_coeffs([int(text)]))
    raise FixtureError(f"malformed field literal {text!r}")
