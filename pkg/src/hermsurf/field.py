"""Exact arithmetic in GF(q^2), q = p^e, with the conjugation x -> x^q.

Elements are encoded as integers ``0 <= a < p^(2e)``: the base-p digits of
``a`` (least significant first) are the coefficients of the element in the
polynomial basis ``1, t, t^2, ...`` modulo the field's defining polynomial.
Integer order therefore coincides with lexicographic order on coefficient
vectors (constant term varying fastest), so ``range(ctx.s)`` enumerates the
field in the documented order.

GF(q) is not a separate context: it is the fixed subfield of ``conj``.
"""
from __future__ import annotations

from functools import cached_property
import re

import numpy as np

DEFAULT_CEILING = 2 ** 16

# Full s*s addition/multiplication tables are materialized up to this order.
_TABLE_LIMIT = 1024

MODULUS_TABLE_VERSION = "least-irreducible/v1"

# Defining polynomials of GF(p^(2e)) over GF(p), as the low coefficients
# (c_0, ..., c_{2e-1}) of the monic polynomial t^(2e) + ... + c_1 t + c_0.
# Each entry is the least monic irreducible polynomial when the low
# coefficients are read as a base-p integer with c_0 least significant;
# tests re-derive every entry from that rule.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (3, 1): (1, 0),
    (2, 2): (1, 1, 0, 0),
    (5, 1): (2, 0),
    (7, 1): (1, 0),
    (2, 3): (1, 1, 0, 0, 0, 0),
    (3, 2): (2, 1, 0, 0),
    (11, 1): (1, 0),
    (13, 1): (2, 0),
    (2, 4): (1, 1, 0, 1, 1, 0, 0, 0),
}


class FieldMismatchError(ValueError):
    """Raised when elements of different fields are combined."""


# ---------------------------------------------------------------------------
# polynomials over GF(p), as little-endian coefficient lists


def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    """Remainder of a modulo b over GF(p); b must be nonzero."""
    a = _ptrim(a)
    b = _ptrim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _ptrim(a)
    return a


def _monic_polys(degree, p):
    for n in range(p ** degree):
        low = []
        for _ in range(degree):
            low.append(n % p)
            n //= p
        yield low + [1]


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _ptrim(poly)
    n = len(poly) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for f in _monic_polys(d, p):
            if not _pmod(poly, f, p):
                return False
    return True


def least_irreducible(p, n):
    """Low coefficients of the least monic irreducible of degree n over GF(p)."""
    for f in _monic_polys(n, p):
        if is_irreducible(f, p):
            return tuple(f[:-1])
    raise ValueError(f"no irreducible polynomial of degree {n} over GF({p})")


def _is_prime(n):
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def prime_power(q):
    """Return (p, e) with q = p^e, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                break
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q == 1:
                return p, e
            break
    raise ValueError("q must be a prime power")


# ---------------------------------------------------------------------------


class FieldCtx:
    """The field GF(q^2) together with its q-power Frobenius.

    ``FieldCtx(p, e)`` builds GF(p^(2e)). Scalar operations act on integer
    codes; the ``v*`` methods are their numpy-vectorized counterparts.
    Instances are immutable after construction and safe to share.
    """

    def __init__(self, p, e=1, modulus=None, ceiling=DEFAULT_CEILING):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("e must be positive")
        self.p = p
        self.e = e
        self.q = p ** e
        self.n = 2 * e
        self.s = self.q * self.q
        if self.s > ceiling:
            raise ValueError(f"GF({self.s}) exceeds the configured ceiling {ceiling}")
        if modulus is None:
            modulus = MODULI.get((p, e)) or least_irreducible(p, self.n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != self.n:
            raise ValueError(f"modulus needs {self.n} low coefficients")
        if not is_irreducible(list(modulus) + [1], p):
            raise ValueError(f"t^{self.n} + {modulus} is reducible over GF({p})")
        self.modulus = modulus
        self._build_tables()

    @classmethod
    def from_q(cls, q, **kwargs):
        p, e = prime_power(q)
        return cls(p, e, **kwargs)

    def __repr__(self):
        return f"FieldCtx(GF({self.q}^2), modulus={self.modulus_str()})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __reduce__(self):
        return (FieldCtx, (self.p, self.e, self.modulus))

    # -- encoding --------------------------------------------------------

    def coeffs(self, a):
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            coeffs = _pmod(coeffs, list(self.modulus) + [1], self.p)
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + c % self.p
        return a

    def from_int(self, k):
        """Image of the integer k under Z -> GF(p) -> GF(q^2)."""
        return k % self.p

    # -- table construction ------------------------------------------------

    def _mul_schoolbook(self, a, b):
        p, n = self.p, self.n
        x, y = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * n - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % p
        # t^n = -(c_0 + ... + c_{n-1} t^{n-1})
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, mi in enumerate(self.modulus):
                    prod[k - n + i] = (prod[k - n + i] - c * mi) % p
        return self.from_coeffs(prod[:n])

    def _build_tables(self):
        s = self.s
        # exp/log relative to the least primitive element
        order = s - 1
        primes = [r for r in range(2, order + 1) if order % r == 0 and _is_prime(r)]
        for g in range(2, s):
            if all(self.pow_schoolbook(g, order // r) != 1 for r in primes):
                break
        else:
            raise AssertionError("multiplicative group is not cyclic")
        exp = [1]
        for _ in range(order - 1):
            exp.append(self._mul_schoolbook(exp[-1], g))
        self.generator = g
        self._exp = exp + exp
        log = [0] * s
        for i, x in enumerate(exp):
            log[x] = i
        self._log = log

        if self.p == 2:
            self._add_scalar = int.__xor__
        elif s <= _TABLE_LIMIT:
            tab = [self._add_digits(a, b) for a in range(s) for b in range(s)]
            self._add_scalar = lambda a, b: tab[a * s + b]
        else:
            self._add_scalar = self._add_digits
        self._neg = [self._neg_digits(a) for a in range(s)]

        # conj is GF(p)-linear: image of each basis vector t^i under x -> x^q
        self._frob_basis = [self.pow_schoolbook(self.from_coeffs([0] * i + [1]), self.q)
                            for i in range(self.n)]
        self._conj = [self._conj_linear(a) for a in range(s)]

    def _add_digits(self, a, b):
        p = self.p
        out, scale = 0, 1
        for _ in range(self.n):
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def _neg_digits(self, a):
        p = self.p
        out, scale = 0, 1
        for _ in range(self.n):
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def _conj_linear(self, a):
        acc = 0
        for c, img in zip(self.coeffs(a), self._frob_basis):
            for _ in range(c):
                acc = self._add_scalar(acc, img)
        return acc

    def pow_schoolbook(self, a, k):
        """a^k by square-and-multiply on the schoolbook product."""
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mul_schoolbook(result, base)
            base = self._mul_schoolbook(base, base)
            k >>= 1
        return result

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a, b):
        return self._add_scalar(a, b)

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self._add_scalar(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.s - 1 - self._log[a]) % (self.s - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if k == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * k) % (self.s - 1)]

    def conj(self, a):
        return self._conj[a]

    def norm(self, a):
        return self.mul(a, self._conj[a])

    def sum(self, values):
        acc = 0
        for v in values:
            acc = self._add_scalar(acc, v)
        return acc

    def elements(self):
        return range(self.s)

    def subfield(self):
        """The q elements fixed by conj, in increasing order."""
        return [a for a in range(self.s) if self._conj[a] == a]

    def is_square(self, a):
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a):
        """A square root of a (the unique one in characteristic 2)."""
        if a == 0:
            return 0
        k = self._log[a]
        if self.p == 2:
            # squaring is a bijection; s - 1 is odd
            return self._exp[(k * (self.s // 2)) % (self.s - 1)]
        if k % 2:
            raise ValueError("not a square")
        return self._exp[k // 2]

    # -- vectorized arithmetic ----------------------------------------------

    @cached_property
    def _dtype(self):
        return np.int32 if self.s > 255 else np.int16

    @cached_property
    def add_table(self):
        s = self.s
        if self.p == 2:
            a = np.arange(s)
            return (a[:, None] ^ a[None, :]).astype(self._dtype)
        if s > _TABLE_LIMIT:
            raise ValueError("addition table too large")
        return np.array([[self._add_scalar(a, b) for b in range(s)] for a in range(s)],
                        dtype=self._dtype)

    @cached_property
    def mul_table(self):
        if self.s > _TABLE_LIMIT:
            raise ValueError("multiplication table too large")
        s = self.s
        return np.array([[self.mul(a, b) for b in range(s)] for a in range(s)],
                        dtype=self._dtype)

    @cached_property
    def exp_array(self):
        return np.array(self._exp, dtype=np.int64)

    @cached_property
    def log_array(self):
        return np.array(self._log, dtype=np.int64)

    @cached_property
    def neg_array(self):
        return np.array(self._neg, dtype=np.int64)

    @cached_property
    def inv_array(self):
        return np.array([0] + [self.inv(a) for a in range(1, self.s)], dtype=np.int64)

    @cached_property
    def conj_array(self):
        return np.array(self._conj, dtype=np.int64)

    def pow_array(self, k):
        return np.array([self.pow(a, k) for a in range(self.s)], dtype=np.int64)

    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.s <= _TABLE_LIMIT:
            return self.add_table[a, b].astype(np.int64)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.n):
            out += ((a % self.p + b % self.p) % self.p) * scale
            a = a // self.p
            b = b // self.p
            scale *= self.p
        return out

    def vneg(self, a):
        return self.neg_array[a]

    def vsub(self, a, b):
        return self.vadd(a, self.neg_array[b])

    def vmul(self, a, b):
        if self.s <= _TABLE_LIMIT:
            return self.mul_table[a, b].astype(np.int64)
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp_array[self.log_array[a] + self.log_array[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vconj(self, a):
        return self.conj_array[a]

    def vinv(self, a):
        return self.inv_array[a]

    # -- text format -----------------------------------------------------

    def format(self, a):
        """Polynomial string in the generator t, highest power first."""
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts) if parts else "0"

    _TERM = re.compile(r"^(\d*)(t(?:\^(\d+))?)?$")

    def parse(self, text):
        text = str(text).replace(" ", "")
        if not text:
            raise ValueError("empty field element")
        coeffs = [0] * self.n
        for term in text.split("+"):
            m = self._TERM.match(term)
            if not term or not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"malformed field element {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            k = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
            if k >= self.n:
                raise ValueError(f"power t^{k} out of range in {text!r}")
            coeffs[k] = (coeffs[k] + c) % self.p
        return self.from_coeffs(coeffs)

    def modulus_str(self):
        terms = [f"t^{self.n}"]
        for i in range(self.n - 1, -1, -1):
            c = self.modulus[i]
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c}{mono}" if mono and c != 1 else (mono or str(c)))
        return "+".join(terms)

    def element(self, value):
        """Wrap an integer code or a textual element as a FieldElement."""
        if isinstance(value, str):
            value = self.parse(value)
        return FieldElement(self, value)

    def enumerate(self):
        """All elements as FieldElements, in lexicographic coefficient order."""
        return (FieldElement(self, a) for a in range(self.s))


class FieldElement:
    """An element of GF(q^2) bound to its context, with operator overloads."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        if not 0 <= value < ctx.s:
            raise ValueError(f"code {value} outside GF({ctx.s})")
        self.ctx = ctx
        self.value = int(value)

    @property
    def coeffs(self):
        return self.ctx.coeffs(self.value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldMismatchError(f"{self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.ctx, v)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.ctx.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.value))

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        return self._wrap(self.ctx.pow(self.value, k))

    def inv(self):
        return self._wrap(self.ctx.inv(self.value))

    def conj(self):
        return self._wrap(self.ctx.conj(self.value))

    def norm(self):
        return self._wrap(self.ctx.norm(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f"FieldElement({self})"


# module-level wrappers mirroring the operation names
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def conj(a: FieldElement) -> FieldElement:
    return a.conj()


def norm(a: FieldElement) -> FieldElement:
    return a.norm()
