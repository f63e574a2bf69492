"""Exact arithmetic in GF(p^k).

Elements are stored as integers ``0 <= v < q`` whose base-``p`` digits are
the polynomial-basis coefficients (least degree first), so
``v = c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  The prime subfield is
therefore the set of encodings ``0..p-1`` and ``r * 1_F`` is just ``r``.

Two layers are exposed:

* :class:`FieldElement` values with the usual operators, for readable code
  and tests;
* ``v*`` methods on :class:`Field` that act elementwise on numpy integer
  arrays of encodings, used by the linear algebra core.

Multiplication in proper extensions goes through log/exp tables built
from a primitive element, so memory stays O(q).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NonPrimeCharacteristic,
    ReducibleModulus,
)

MAX_ORDER = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), coefficient lists least degree first ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo ``b`` (``b`` nonzero) over GF(p)."""
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterable[tuple[int, ...]]:
    # lexicographic on the low-degree-first coefficient tuple
    for low in itertools.product(range(p), repeat=degree):
        yield low + (1,)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k``."""
    for f in _monic_polys(p, k):
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# --- field ------------------------------------------------------------------

class Field:
    """The finite field GF(p^k) = GF(p)[x] / (modulus).

    Parameters
    ----------
    p : int
        Prime characteristic.
    k : int
        Extension degree, at least 1.
    modulus : sequence of int, optional
        Monic degree-``k`` polynomial, ``k + 1`` coefficients least degree
        first.  Defaults to the lexicographically smallest monic
        irreducible.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p!r} is not prime")
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"extension degree must be a positive integer, got {k!r}")
        if p**k > MAX_ORDER:
            raise FieldTooLarge(f"GF({p}^{k}) exceeds the supported order {MAX_ORDER}")
        if modulus is None:
            modulus = (0, 1) if k == 1 else smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}, got {modulus}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{_poly_str(modulus)} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus: tuple[int, ...] = tuple(modulus)
        self._pows = [p**i for i in range(k)]
        if k > 1:
            self._build_tables()

    # -- construction helpers

    def _digits(self, v: int) -> list[int]:
        out = []
        for _ in range(self.k):
            v, d = divmod(v, self.p)
            out.append(d)
        return out

    def _encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pows))

    def _polymul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._encode(_poly_mod(prod, self.modulus, p) + [0] * k)

    def _times_constant(self, g: int) -> list[int]:
        """``perm[v] = encoding of g * v`` for every encoding ``v``."""
        p, k = self.p, self.k
        v = np.arange(self.q, dtype=np.int64)
        digits = np.stack([(v // w) % p for w in self._pows], axis=1)
        prod = np.zeros((self.q, 2 * k - 1), dtype=np.int64)
        for j, c in enumerate(self._digits(g)):
            if c:
                prod[:, j:j + k] += c * digits
        prod %= p
        for d in range(2 * k - 2, k - 1, -1):
            lead = prod[:, d].copy()
            for i, c in enumerate(self.modulus):
                prod[:, d - k + i] = (prod[:, d - k + i] - lead * c) % p
        return (prod[:, :k] @ np.array(self._pows, dtype=np.int64)).tolist()

    def _polypow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._polymul(result, a)
            a = self._polymul(a, a)
            n >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        cofactors = [(q - 1) // r for r in _prime_factors(q - 1)]
        for g in range(2, q):
            if all(self._polypow(g, c) != 1 for c in cofactors):
                break
        else:  # pragma: no cover - a field always has a primitive element
            raise AssertionError("no primitive element found")
        perm = self._times_constant(g)
        exp = [1]
        cur = perm[1]
        while cur != 1:
            exp.append(cur)
            cur = perm[cur]
        if len(exp) != q - 1:  # pragma: no cover - guarded by the order test
            raise AssertionError(f"{g} is not primitive")
        self.primitive = g
        exp_arr = np.array(exp + exp, dtype=np.int64)
        log_arr = np.zeros(q, dtype=np.int64)
        log_arr[np.array(exp, dtype=np.int64)] = np.arange(q - 1, dtype=np.int64)
        self._exp = exp_arr
        self._log = log_arr
        self._exp_list = exp_arr.tolist()
        self._log_list = log_arr.tolist()

    # -- identity

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}; {_poly_str(self.modulus)})"

    @property
    def spec(self) -> str:
        """Round-trippable field spec string ``p^k/c0,...,ck``."""
        mod = ",".join(str(c) for c in self.modulus)
        return f"{self.p}^{self.k}/{mod}"

    # -- elements

    def __call__(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        if isinstance(value, (int, np.integer)):
            # integers embed through the prime subfield
            return FieldElement(self, int(value) % self.p)
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise ValueError(f"at most {self.k} coefficients expected, got {len(coeffs)}")
        return FieldElement(self, self._encode(coeffs))

    def from_int(self, v: int) -> "FieldElement":
        """Element with encoding ``v`` (not the integer ``v * 1_F``)."""
        if not 0 <= v < self.q:
            raise ValueError(f"encoding {v} out of range for {self!r}")
        return FieldElement(self, int(v))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of ``x``; equals the prime-field root when ``k == 1``."""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def _check(self, *xs: "FieldElement") -> None:
        for x in xs:
            if not isinstance(x, FieldElement) or x.field != self:
                raise FieldMismatch(f"{x!r} is not an element of {self!r}")

    # -- scalar arithmetic on elements

    def add(self, a: "FieldElement", b: "FieldElement") -> "FieldElement":
        self._check(a, b)
        return FieldElement(self, self._add(a.value, b.value))

    def sub(self, a: "FieldElement", b: "FieldElement") -> "FieldElement":
        self._check(a, b)
        return FieldElement(self, self._add(a.value, self._neg(b.value)))

    def neg(self, a: "FieldElement") -> "FieldElement":
        self._check(a)
        return FieldElement(self, self._neg(a.value))

    def mul(self, a: "FieldElement", b: "FieldElement") -> "FieldElement":
        self._check(a, b)
        return FieldElement(self, self._mul(a.value, b.value))

    def inv(self, a: "FieldElement") -> "FieldElement":
        self._check(a)
        return FieldElement(self, self._inv(a.value))

    def div(self, a: "FieldElement", b: "FieldElement") -> "FieldElement":
        self._check(a, b)
        return FieldElement(self, self._mul(a.value, self._inv(b.value)))

    def pow(self, a: "FieldElement", n: int) -> "FieldElement":
        self._check(a)
        return FieldElement(self, self._pow(a.value, n))

    # -- scalar arithmetic on encodings

    def _add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return sum(((x + y) % p) * w for x, y, w in zip(self._digits(a), self._digits(b), self._pows))

    def _neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        return sum(((-x) % p) * w for x, w in zip(self._digits(a), self._pows))

    def _mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def _inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in {self!r}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp_list[(self.q - 1 - self._log_list[a]) % (self.q - 1)]

    def _pow(self, a: int, n: int) -> int:
        if n < 0:
            return self._pow(self._inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, n, self.p)
        return self._exp_list[(self._log_list[a] * n) % (self.q - 1)]

    # -- elementwise arithmetic on numpy arrays of encodings

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for w in self._pows:
            out += (((a // w) % p + (b // w) % p) % p) * w
        return out

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        p = self.p
        out = np.zeros_like(a)
        for w in self._pows:
            out += ((-((a // w) % p)) % p) * w
        return out

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"zero has no inverse in {self!r}")
        if self.k == 1:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()],
                            dtype=np.int64).reshape(a.shape)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def vsum(self, a, axis: int = -1) -> np.ndarray:
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        p = self.p
        out = 0
        for w in self._pows:
            out = out + (((a // w) % p).sum(axis=axis) % p) * w
        return np.asarray(out, dtype=np.int64)

    def power_table(self, max_exp: int) -> np.ndarray:
        """Array ``T`` of shape ``(q, max_exp + 1)`` with ``T[v, j] = v**j``."""
        base = np.arange(self.q, dtype=np.int64)
        table = np.empty((self.q, max_exp + 1), dtype=np.int64)
        table[:, 0] = 1
        for j in range(1, max_exp + 1):
            table[:, j] = self.vmul(table[:, j - 1], base)
        return table


def field_new(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> Field:
    return Field(p, k, modulus)


def enumerate_elements(F: Field) -> list["FieldElement"]:
    """All elements of ``F``, zero first, in order of their encoding."""
    return F.elements()


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: Field
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._digits(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.field.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.field.sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.field.sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.field.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.field.div(self, other)

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, n: int):
        return self.field.pow(self, n)

    def inverse(self) -> "FieldElement":
        return self.field.inv(self)

    def __repr__(self) -> str:
        return _poly_str(self.coeffs)

    __str__ = __repr__


def _poly_str(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


_SPEC_RE = re.compile(r"^\s*(\d+)(?:\^(\d+))?(?:/([\d,\s]+))?\s*$")


def parse_field_spec(text: str) -> Field:
    """Parse ``"p"``, ``"p^k"`` or ``"p^k/c0,c1,...,ck"``.

    The modulus coefficients are listed least degree first and include the
    leading 1.
    """
    match = _SPEC_RE.match(text)
    if not match:
        raise ValueError(f"bad field spec {text!r}; expected p^k or p^k/c0,...,ck")
    p = int(match.group(1))
    k = int(match.group(2) or 1)
    modulus = None
    if match.group(3):
        modulus = [int(c) for c in match.group(3).split(",") if c.strip()]
    return Field(p, k, modulus)
