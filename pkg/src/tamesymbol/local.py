"""Truncated Laurent series over a finite residue field and the local tame symbol.

A ``LocalElement`` is ``t^v (c_0 + c_1 t + ... + O(t^N))`` with ``c_0 != 0``:
``v`` is the valuation, ``N`` the relative precision.  Stored coefficient
tuples may be shorter than ``N``; missing coefficients are zero.  Elements
known exactly (for instance expansions of polynomials) use ``N = EXACT``.

Zero is not a ``LocalElement``: only the multiplicative group K_x^* is modelled.
"""

import random

from . import mutations
from .errors import InsufficientPrecision, NotASubfield, ZeroInput
from .fields import FieldElement, embedding, extension, field_of_order

EXACT = 1 << 40
DEFAULT_PRECISION = 16
PRECISION_CAP = 256


def _conv(F, a, b, length):
    """First ``length`` coefficients of the product of two coefficient tuples."""
    out = [0] * length
    if not a or not b:
        return out
    log, exp = F._log, F._exp
    lb = [log[y] if y else -1 for y in b[:length]]
    nb = len(lb)
    p = F.p
    if p == 2:
        for i in range(min(len(a), length)):
            x = a[i]
            if not x:
                continue
            lx = log[x]
            for j in range(min(nb, length - i)):
                ly = lb[j]
                if ly >= 0:
                    out[i + j] ^= exp[lx + ly]
    elif F.n == 1:
        for i in range(min(len(a), length)):
            x = a[i]
            if not x:
                continue
            for j in range(min(nb, length - i)):
                y = b[j]
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    else:
        fadd = F.add
        for i in range(min(len(a), length)):
            x = a[i]
            if not x:
                continue
            lx = log[x]
            for j in range(min(nb, length - i)):
                ly = lb[j]
                if ly >= 0:
                    out[i + j] = fadd(out[i + j], exp[lx + ly])
    return out


def _series_inverse(F, a, length):
    """Inverse of a unit power series (a[0] != 0) to ``length`` terms."""
    inv0 = F.inv(a[0])
    out = [0] * length
    out[0] = inv0
    for k in range(1, length):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j] and out[k - j]:
                acc = F.add(acc, F.mul(a[j], out[k - j]))
        out[k] = F.neg(F.mul(acc, inv0))
    return out


class LocalElement:
    """An element of K_x^* = k(x)((t))^*, truncated at relative precision N."""

    __slots__ = ("field", "valuation", "coeffs", "precision")

    def __init__(self, field, valuation, coeffs, precision=DEFAULT_PRECISION):
        coeffs = tuple(coeffs)
        if not coeffs or coeffs[0] == 0:
            raise ZeroInput("leading coefficient must be nonzero")
        if precision < 1:
            raise InsufficientPrecision("precision must be at least 1")
        if len(coeffs) > precision:
            coeffs = coeffs[:precision]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        self.field = field
        self.valuation = valuation
        self.coeffs = coeffs
        self.precision = precision

    # construction helpers

    @classmethod
    def exact(cls, field, valuation, coeffs):
        return cls(field, valuation, coeffs, EXACT)

    @classmethod
    def constant(cls, field, c):
        return cls(field, 0, (c,), EXACT)

    @classmethod
    def uniformizer(cls, field):
        return cls(field, 1, (1,), EXACT)

    @classmethod
    def from_series(cls, field, start, coeffs, abs_precision):
        """Normalize ``sum coeffs[i] t^(start+i) + O(t^abs_precision)``."""
        limit = min(len(coeffs), abs_precision - start)
        for i in range(max(limit, 0)):
            if coeffs[i]:
                v = start + i
                prec = abs_precision - v if abs_precision < EXACT // 2 else EXACT
                return cls(field, v, coeffs[i:limit], prec)
        if abs_precision >= EXACT // 2:
            raise ZeroInput("series is exactly zero")
        raise InsufficientPrecision(
            f"no nonzero coefficient below t^{abs_precision}; re-expand at higher precision")

    @property
    def is_exact(self):
        return self.precision >= EXACT // 2

    @property
    def abs_precision(self):
        return EXACT if self.is_exact else self.valuation + self.precision

    def unit_value(self):
        """Residue c_0 of the unit part as an encoding."""
        return self.coeffs[0]

    def coefficient(self, k):
        """Coefficient of t^k (absolute index)."""
        i = k - self.valuation
        if i < 0:
            return 0
        if i >= self.precision:
            raise InsufficientPrecision(f"coefficient of t^{k} is beyond the precision")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def _check(self, other):
        if other.field is not self.field:
            raise NotASubfield(f"residue fields differ: {self.field} vs {other.field}")

    # arithmetic

    def __mul__(self, other):
        if isinstance(other, int):
            other = LocalElement.constant(self.field, other)
        self._check(other)
        prec = min(self.precision, other.precision)
        length = min(prec, len(self.coeffs) + len(other.coeffs) - 1)
        out = _conv(self.field, self.coeffs, other.coeffs, length)
        return LocalElement(self.field, self.valuation + other.valuation, out, prec)

    __rmul__ = __mul__

    def inverse(self, precision=None):
        F = self.field
        if len(self.coeffs) == 1:
            return LocalElement(F, -self.valuation, (F.inv(self.coeffs[0]),), self.precision)
        prec = self.precision
        if self.is_exact:
            prec = precision or DEFAULT_PRECISION
        return LocalElement(F, -self.valuation, _series_inverse(F, self.coeffs, prec), prec)

    def __truediv__(self, other):
        return self * other.inverse(None if not self.is_exact else
                                    max(DEFAULT_PRECISION, len(self.coeffs)))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = LocalElement.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __neg__(self):
        F = self.field
        return LocalElement(F, self.valuation, tuple(F.neg(c) for c in self.coeffs),
                            self.precision)

    def _add(self, other, negate):
        self._check(other)
        F = self.field
        start = min(self.valuation, other.valuation)
        abs_prec = min(self.abs_precision, other.abs_precision)
        top = max(self.valuation + len(self.coeffs), other.valuation + len(other.coeffs))
        length = min(abs_prec, top) - start
        out = [0] * max(length, 0)
        for i, c in enumerate(self.coeffs):
            k = self.valuation - start + i
            if k < length:
                out[k] = c
        for i, c in enumerate(other.coeffs):
            k = other.valuation - start + i
            if k < length:
                out[k] = F.sub(out[k], c) if negate else F.add(out[k], c)
        return LocalElement.from_series(F, start, out, abs_prec)

    def __add__(self, other):
        if isinstance(other, int):
            other = LocalElement.constant(self.field, self.field.from_coeffs([other]))
        return self._add(other, False)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LocalElement.constant(self.field, self.field.from_coeffs([other]))
        return self._add(other, True)

    def __rsub__(self, other):
        return (-self) + other

    def one_minus(self):
        return LocalElement.constant(self.field, 1) - self

    def truncate(self, precision):
        return LocalElement(self.field, self.valuation, self.coeffs, min(precision, self.precision))

    def agrees_with(self, other):
        """Equal up to the smaller of the two precisions."""
        if other.field is not self.field or other.valuation != self.valuation:
            return False
        n = min(self.precision, other.precision)
        n = min(n, max(len(self.coeffs), len(other.coeffs)))
        a = self.coeffs + (0,) * n
        b = other.coeffs + (0,) * n
        return a[:n] == b[:n]

    def __eq__(self, other):
        if not isinstance(other, LocalElement):
            return NotImplemented
        return (self.field is other.field and self.valuation == other.valuation
                and self.coeffs == other.coeffs and self.precision == other.precision)

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.precision))

    def __repr__(self):
        from .fields import format_element
        terms = ", ".join(format_element(self.field, c) for c in self.coeffs)
        prec = "exact" if self.is_exact else f"O(t^{self.precision})"
        return f"LocalElement(v={self.valuation}; {terms}; {prec})"


def valuation(f):
    return f.valuation


def tame_symbol_value(f, g):
    """Encoding of (f, g)_x = ((-1)^(v(f)v(g)) f^(-v(g)) g^(v(f)))(x)."""
    F = f.field
    if g.field is not F:
        raise NotASubfield("tame symbol needs a common residue field")
    a, b = f.valuation, g.valuation
    val = F.mul(F.pow(f.coeffs[0], -b), F.pow(g.coeffs[0], a))
    if (a * b) & 1 and not mutations.active("sign"):
        val = F.neg(val)
    return val


def tame_symbol(f, g):
    """The local tame symbol, an element of the residue field k(x)^*."""
    return FieldElement(f.field, tame_symbol_value(f, g))


def normed_symbol(f, g, base):
    """Nm_{k(x)/k} (f, g)_x as an element of ``base`` = k."""
    emb = embedding(base, f.field)
    return FieldElement(base, emb.norm(tame_symbol_value(f, g)))


def in_local_kernel(f, base):
    """Membership of f in U_x = (K_x^*)^(q-1), q = |base|."""
    q = base.q
    if q == 2:
        return True
    if f.valuation % (q - 1):
        return False
    emb = embedding(base, f.field)
    return emb.norm(f.coeffs[0]) == 1


def random_local(field, rng, precision=DEFAULT_PRECISION, vrange=(-6, 6)):
    v = rng.randint(*vrange)
    c0 = rng.randrange(1, field.q)
    rest = [rng.randrange(field.q) for _ in range(precision - 1)]
    return LocalElement(field, v, [c0] + rest, precision)


def random_one_unit_times(field, rng, precision, v, c0):
    rest = [rng.randrange(field.q) for _ in range(precision - 1)]
    return LocalElement(field, v, [c0] + rest, precision)


def _probe_set(field, base, rng, precision, samples):
    t = LocalElement.uniformizer(field)
    theta = LocalElement.constant(field, field.generator)
    u = LocalElement(field, 1, (rng.randrange(1, field.q),), EXACT)
    probes = [("t", t), ("theta", theta), ("1+t*u", u + 1)]
    for i in range(samples):
        probes.append((f"g{i}", random_local(field, rng, precision)))
    return probes


def local_kernel_oracle(q, d, precision=DEFAULT_PRECISION, samples=500, seed=0):
    """Compare ``in_local_kernel`` with pairing against a spanning probe set.

    Half the samples are random elements, half are (q-1)-th powers computed by
    series exponentiation.  Returns a report dict; ``disagreements`` should be
    empty.
    """
    base = field_of_order(q)
    field, _ = extension(base, d)
    rng = random.Random(seed)
    report = {"q": q, "d": d, "precision": precision, "samples": samples, "seed": seed,
              "members": 0, "disagreements": []}
    if q == 2:
        report["verdict"] = "VACUOUS"
        return report
    probes = _probe_set(field, base, rng, precision, samples)
    emb = embedding(base, field)
    for i in range(samples):
        f = random_local(field, rng, precision)
        if i % 2:
            f = random_local(field, rng, precision, (-3, 3)) ** (q - 1)
        claimed = in_local_kernel(f, base)
        report["members"] += claimed
        paired = all(emb.norm(tame_symbol_value(f, g)) == 1 for _, g in probes)
        if claimed != paired:
            report["disagreements"].append({"index": i, "element": repr(f), "claimed": claimed})
    report["verdict"] = "FAIL" if report["disagreements"] else "PASS"
    return report


def exhaustive_local_kernel_check(q, places=3):
    """Exhaustive comparison for d = 1 over unit parts with ``places`` coefficients.

    Three independent descriptions are compared for every f with
    |v| <= 2(q-1): the criterion ``in_local_kernel``, triviality of the pairing
    against t and a generator of k^*, and membership in the set of (q-1)-th
    powers computed by brute force at the same truncation.
    """
    import itertools

    field = field_of_order(q)
    vmax = 2 * (q - 1)
    units = list(field.units())
    shapes = list(itertools.product(units, *[range(q)] * (places - 1)))
    powers = set()
    for v in range(-vmax, vmax + 1):
        for coeffs in shapes:
            h = LocalElement(field, v, coeffs, places)
            hp = h ** (q - 1)
            if abs(hp.valuation) <= vmax:
                powers.add((hp.valuation, hp.coeffs + (0,) * (places - len(hp.coeffs))))
    t = LocalElement.uniformizer(field)
    theta = LocalElement.constant(field, field.generator)
    disagreements = []
    checked = 0
    for v in range(-vmax, vmax + 1):
        for coeffs in shapes:
            f = LocalElement(field, v, coeffs, places)
            a = in_local_kernel(f, field)
            b = tame_symbol_value(f, t) == 1 and tame_symbol_value(f, theta) == 1
            c = (v, tuple(coeffs)) in powers
            checked += 1
            if not (a == b == c):
                disagreements.append((v, coeffs, a, b, c))
    return {"q": q, "places": places, "checked": checked, "disagreements": disagreements}
