"""Finite fields GF(p^k) with table-driven arithmetic.

Elements are encoded as integers in ``[0, q)``: the polynomial
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` is stored as ``sum(c_i * p**i)``.
The defining modulus is the lexicographically smallest monic irreducible
polynomial of degree ``k`` (coefficients compared low degree first), so
encodings are reproducible across runs and platforms.

All arithmetic methods accept Python ints or integer numpy arrays and
broadcast like numpy ufuncs. Scalars in give scalars out.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import FieldError

SUPPORTED_PRIMES = (2, 3, 5, 7)
MAX_ORDER = 2**16


def _poly_divides(divisor, poly, p):
    """True if the monic ``divisor`` divides ``poly`` over GF(p) (low-first lists)."""
    rem = list(poly)
    d = len(divisor) - 1
    for top in range(len(rem) - 1, d - 1, -1):
        c = rem[top] % p
        if c:
            for j in range(d + 1):
                rem[top - d + j] = (rem[top - d + j] - c * divisor[j]) % p
    return not any(x % p for x in rem[:d])


def is_irreducible(poly, p):
    """Irreducibility of a monic polynomial over GF(p) by trial division.

    ``poly`` lists coefficients low degree first, leading coefficient last.
    """
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_divides(list(low) + [1], poly, p):
                return False
    return True


def smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k (low degree first)."""
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")  # unreachable


class FieldCtx:
    """Arithmetic context for GF(p^k).

    Immutable after construction; instances are cached per ``(p, k)`` by
    :func:`make_field`, so sharing them between threads or pickling them into
    worker processes is cheap.
    """

    __slots__ = ("p", "k", "q", "modulus", "generator", "_exp", "_log", "_inv",
                 "_neg", "_digits", "_powers")

    def __init__(self, p, k, modulus, generator, exp, log, inv, neg, digits):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self.generator = generator
        self._exp = exp
        self._log = log
        self._inv = inv
        self._neg = neg
        self._digits = digits
        self._powers = np.array([p**j for j in range(k)], dtype=np.int64)
        for arr in (exp, log, inv, neg, digits):
            arr.setflags(write=False)

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    @property
    def is_prime_field(self):
        return self.k == 1

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    def check(self, a):
        arr = np.asarray(a)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise FieldError(f"value out of range for {self!r}")
        return a

    # -- arithmetic -----------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (np.add(a, b)) % self.p
        da = self._digits[np.asarray(a)]
        db = self._digits[np.asarray(b)]
        out = ((da + db) % self.p) @ self._powers
        return _like(out, a, b)

    def neg(self, a):
        if self.p == 2:
            return a
        if self.k == 1:
            return np.negative(a) % self.p
        return _like(self._neg[np.asarray(a)], a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return np.multiply(a, b) % self.p
        out = self._exp[self._log[np.asarray(a)] + self._log[np.asarray(b)]]
        return _like(out, a, b)

    def inv(self, a):
        arr = np.asarray(a)
        if np.any(arr == 0):
            raise FieldError("inverse of zero")
        return _like(self._inv[arr], a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """``a**e`` for an integer exponent ``e`` (negative allowed for a != 0)."""
        e = int(e)
        arr = np.asarray(a, dtype=np.int64)
        if e < 0:
            arr = np.asarray(self.inv(arr))
            e = -e
        if e == 0:
            return _like(np.ones_like(arr), a)
        lg = self._log[arr] % (self.q - 1)
        out = np.where(arr == 0, 0, self._exp[(lg * (e % (self.q - 1))) % (self.q - 1)])
        return _like(out, a)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def sum(self, values, axis=None):
        """Field sum of an array along ``axis``."""
        arr = np.asarray(values, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(arr, axis=axis)
        if self.k == 1:
            return arr.sum(axis=axis) % self.p
        dig = self._digits[arr]
        if axis is None:
            dig = dig.reshape(-1, self.k).sum(axis=0)
        else:
            dig = dig.sum(axis=axis - 1 if axis < 0 else axis)
        return _like((dig % self.p) @ self._powers, *([0] if axis is None else [arr]))

    # -- element <-> polynomial ------------------------------------------

    def to_poly(self, a):
        """Coefficient tuple (low degree first) of an element."""
        return tuple(int(c) for c in self._digits[int(a)])

    def from_poly(self, coeffs):
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        if len(coeffs) > self.k:
            raise FieldError("polynomial degree exceeds field degree")
        return int(sum((int(c) % self.p) * self.p**j for j, c in enumerate(coeffs)))

    def from_int(self, n):
        """Image of the integer ``n`` under Z -> GF(q)."""
        return int(n) % self.p


def _like(out, *inputs):
    if all(np.ndim(x) == 0 and not isinstance(x, np.ndarray) for x in inputs):
        return int(out)
    return out


def _mul_by_t_table(digits, modulus, p):
    """Digits of t*x for every element x, given the digit table."""
    top = digits[:, -1:]
    shifted = np.concatenate([np.zeros_like(top), digits[:, :-1]], axis=1)
    mod_low = np.array(modulus[:-1], dtype=np.int64)
    return (shifted - top * mod_low) % p


@lru_cache(maxsize=None)
def make_field(p, k=1):
    """Construct (or fetch the cached) field GF(p^k)."""
    p, k = int(p), int(k)
    if p not in SUPPORTED_PRIMES:
        raise FieldError(f"unsupported characteristic {p}; expected one of {SUPPORTED_PRIMES}")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    q = p**k
    if q > MAX_ORDER:
        raise FieldError(f"field order {q} exceeds {MAX_ORDER}")

    modulus = smallest_irreducible(p, k)
    elems = np.arange(q, dtype=np.int64)
    digits = np.stack([(elems // p**j) % p for j in range(k)], axis=1)
    powers = np.array([p**j for j in range(k)], dtype=np.int64)

    if k == 1:
        mul_by = lambda g: (elems * g) % p  # noqa: E731
    else:
        # x * t^j for all x, then x * g = sum_j g_j (x * t^j)
        t_powers = [digits]
        for _ in range(k - 1):
            t_powers.append(_mul_by_t_table(t_powers[-1], modulus, p))

        def mul_by(g):
            gd = digits[g]
            acc = np.zeros_like(digits)
            for j in range(k):
                if gd[j]:
                    acc = acc + gd[j] * t_powers[j]
            return (acc % p) @ powers

    generator = None
    exp_seq = None
    for g in range(1, q):
        table = mul_by(g)
        seq = [1]
        cur = 1
        for _ in range(q - 2):
            cur = int(table[cur])
            if cur == 1:
                break
            seq.append(cur)
        if len(seq) == q - 1 and int(table[cur]) == 1:
            generator, exp_seq = g, seq
            break
    if generator is None:  # pragma: no cover - every finite field has one
        raise FieldError("no primitive element found")

    # log(0) is a sentinel that lands in the zero-padded tail of exp
    exp = np.zeros(4 * q + 1, dtype=np.int64)
    seq = np.array(exp_seq, dtype=np.int64)
    exp[: q - 1] = seq
    exp[q - 1: 2 * (q - 1)] = seq
    log = np.empty(q, dtype=np.int64)
    log[seq] = np.arange(q - 1)
    log[0] = 2 * q
    inv = np.zeros(q, dtype=np.int64)
    inv[seq] = seq[(-(np.arange(q - 1))) % (q - 1)]
    neg = ((-digits) % p) @ powers
    return FieldCtx(p, k, modulus, generator, exp, log, inv, neg, digits)
