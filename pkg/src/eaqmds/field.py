"""Finite fields GF(p^e) of odd characteristic backed by exp/log/Zech tables.

Elements are plain integers: the coefficient vector (c_0, ..., c_{e-1}) of
the polynomial representative, read as base-p digits, so ``0`` is the zero
element and ``1`` the unit.  Multiplication, inversion and powers go through
discrete-log tables for a fixed primitive element; addition uses a Zech
table ``zech[k] = log(1 + g^k)``.

Scalar methods take and return ``int``.  The ``*_arr`` methods are the
numpy-broadcasting counterparts used by the linear algebra in
:mod:`eaqmds.codecheck`.
"""

from __future__ import annotations

import functools
from math import gcd
from dataclasses import dataclass, field as dc_field

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

DEFAULT_TABLE_CAP = 2**22


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


class ResourceCapError(RuntimeError):
    """A requested object exceeds the configured size cap."""


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, s)`` with ``q == p**s``, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    ((p, s),) = f.items()
    return p, s


def is_odd_prime_power(q: int) -> bool:
    pp = prime_power(q)
    return pp is not None and pp[0] != 2


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e over GF(p).

    Returned low-degree first: ``(c_0, ..., c_{e-1}, 1)``.  Candidates are
    ordered by the integer ``sum c_i p^i``, which is the lexicographic order
    on ``(c_{e-1}, ..., c_0)``.
    """
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        if low[0] == 0:
            continue  # divisible by x
        high_first = [1] + low[::-1]
        if gf_irreducible_p(high_first, p, ZZ):
            return tuple(low) + (1,)
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")  # pragma: no cover


def _encode(coeffs, p: int) -> int:
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def _decode(value: int, p: int, e: int) -> list[int]:
    return [(value // p**i) % p for i in range(e)]


def _mult_matrix(h: list[int], modulus: tuple[int, ...], p: int) -> np.ndarray:
    """Matrix M over GF(p) with ``vec(h*a) = M @ vec(a)``."""
    e = len(modulus) - 1
    mod_hf = list(modulus[::-1])
    h_hf = h[::-1] or [0]
    cols = []
    for k in range(e):
        prod = gf_rem(gf_mul(h_hf, [1] + [0] * k, p, ZZ), mod_hf, p, ZZ)
        low = [int(c) for c in prod[::-1]]
        cols.append(low + [0] * (e - len(low)))
    return np.array(cols, dtype=np.int64).T


@dataclass(frozen=True, eq=False)
class FieldDescriptor:
    """A concrete GF(p^e).  Build with :func:`make_field`, not directly."""

    p: int
    e: int
    modulus: tuple[int, ...]
    primitive: int
    exp_table: np.ndarray = dc_field(repr=False)
    log_table: np.ndarray = dc_field(repr=False)
    zech_table: np.ndarray = dc_field(repr=False)

    @property
    def order(self) -> int:
        return self.p**self.e

    @property
    def q_sub(self) -> int | None:
        """Order q of the index-2 subfield when the field is GF(q^2)."""
        if self.e % 2:
            return None
        return self.p ** (self.e // 2)

    @property
    def _n(self) -> int:
        return self.order - 1

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldDescriptor):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    # -- scalar arithmetic -------------------------------------------------

    def _check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of {self!r}")
        return a

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("logarithm of zero")
        return int(self.log_table[a])

    def exp(self, k: int) -> int:
        return int(self.exp_table[k % self._n])

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = int(self.log_table[a])
        z = int(self.zech_table[(int(self.log_table[b]) - la) % self._n])
        if z < 0:
            return 0
        return int(self.exp_table[(la + z) % self._n])

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) + self._n // 2) % self._n])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % self._n])

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero")
        return int(self.exp_table[(-int(self.log_table[a])) % self._n])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise FieldError("negative power of zero")
            return 1 if k == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * k) % self._n])

    def arith(self, a: int, b: int | None, op: str) -> int:
        """Dispatch ``op`` in {add, sub, mul, div, inv, neg, pow}; ``b`` is the exponent for pow."""
        a = self._check(a)
        if op in ("inv", "neg"):
            return getattr(self, op)(a)
        if op == "pow":
            return self.pow(a, int(b))
        if op in ("add", "sub", "mul", "div"):
            return getattr(self, op)(a, self._check(b))
        raise FieldError(f"unknown operation {op!r}")

    def conjugate(self, a: int) -> int:
        """``a -> a^q`` for the field viewed as GF(q^2)."""
        q = self.q_sub
        if q is None:
            raise FieldError(f"{self!r} has odd degree; no conjugation over an index-2 subfield")
        return self.pow(a, q)

    def frobenius(self, a: int, k: int = 1) -> int:
        """``a -> a^(p^k)``."""
        return self.pow(a, self.p**k)

    def order_of(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        return self._n // gcd(self._n, int(self.log_table[a]))

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, self._check(value))

    def elements(self) -> range:
        return range(self.order)

    def subfield_elements(self, size: int) -> np.ndarray:
        """Sorted elements of the unique subfield with ``size`` elements."""
        pp = prime_power(size)
        if pp is None or pp[0] != self.p or self.e % pp[1]:
            raise FieldError(f"{self!r} has no subfield of order {size}")
        if size == self.order:
            return np.arange(self.order, dtype=np.int64)
        step = self._n // (size - 1)
        nonzero = self.exp_table[np.arange(0, self._n, step)]
        return np.sort(np.concatenate(([0], nonzero))).astype(np.int64)

    def to_vector(self, a: int) -> list[int]:
        return _decode(a, self.p, self.e)

    # -- vectorized arithmetic ---------------------------------------------

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = self.exp_table[(self.log_table[a] + self.log_table[b]) % self._n]
        return np.where((a == 0) | (b == 0), 0, res)

    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_table[a]
        z = self.zech_table[(self.log_table[b] - la) % self._n]
        res = np.where(z < 0, 0, self.exp_table[(la + z) % self._n])
        res = np.where(a == 0, b, res)
        return np.where(b == 0, a, res)

    def neg_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        res = self.exp_table[(self.log_table[a] + self._n // 2) % self._n]
        return np.where(a == 0, 0, res)

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def pow_arr(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        res = self.exp_table[(self.log_table[a] * k) % self._n]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, res)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("inverse of zero")
        return self.exp_table[(-self.log_table[a]) % self._n]

    def sum_arr(self, a, axis: int = -1) -> np.ndarray:
        """Field sum along ``axis``."""
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self.add_arr(acc, row)
        return acc

    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[-1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return self.sum_arr(self.mul_arr(a[:, :, None], b[None, :, :]), axis=1)


@dataclass(frozen=True)
class FieldElement:
    """Field-tagged element with operator overloading, for interactive use."""

    field: FieldDescriptor
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed-field operands {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.element(other % self.field.p).value
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def conjugate(self) -> FieldElement:
        return FieldElement(self.field, self.field.conjugate(self.value))

    def __int__(self) -> int:
        return self.value


def make_field(p: int, e: int = 1, cap: int = DEFAULT_TABLE_CAP) -> FieldDescriptor:
    """Construct GF(p^e) deterministically.

    Raises FieldError for a non-prime or even p, and ResourceCapError when
    ``p**e`` exceeds ``cap``.
    """
    if not isinstance(p, int) or not isprime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if p == 2:
        raise FieldError("characteristic 2 is not supported")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if p**e > cap:
        raise ResourceCapError(f"GF({p}^{e}) has {p**e} elements, above the table cap {cap}")
    return _build_field(p, e)


@functools.lru_cache(maxsize=32)
def _build_field(p: int, e: int) -> FieldDescriptor:
    modulus = smallest_irreducible(p, e)
    order = p**e
    n = order - 1
    mod_hf = list(modulus[::-1])
    factors = prime_divisors(n) if n > 1 else []

    primitive = None
    for cand in range(1, order):
        c_hf = _decode(cand, p, e)[::-1]
        while len(c_hf) > 1 and c_hf[0] == 0:
            c_hf.pop(0)
        if all(gf_pow_mod(c_hf, n // ell, mod_hf, p, ZZ) != [1] for ell in factors):
            primitive = cand
            break
    assert primitive is not None

    # exp table in blocks: B sequential powers, then whole blocks via the
    # linear map "multiply by g^B" applied to the first block.
    weights = p ** np.arange(e, dtype=np.int64)
    g_mat = _mult_matrix(_decode(primitive, p, e), modulus, p)
    block = max(1, min(n, int(np.ceil(np.sqrt(n)))))
    first = np.zeros((block, e), dtype=np.int64)
    cur = np.zeros(e, dtype=np.int64)
    cur[0] = 1
    for i in range(block):
        first[i] = cur
        cur = (g_mat @ cur) % p
    step_mat = _mult_matrix([int(c) for c in cur], modulus, p)  # g^block
    chunks = []
    chunk = first
    for _ in range(0, n, block):
        chunks.append(chunk @ weights)
        chunk = (chunk @ step_mat.T) % p
    exp_table = np.concatenate(chunks)[:n].astype(np.int64)

    log_table = np.full(order, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(n, dtype=np.int64)
    if log_table[0] != -1 or np.count_nonzero(log_table[1:] < 0):
        raise FieldError(f"table construction failed for GF({p}^{e})")  # pragma: no cover
    # Element 0 gets log 0 so vectorized gathers stay in range; callers mask zeros.
    log_table[0] = 0

    d0 = exp_table % p
    one_plus = exp_table - d0 + (d0 + 1) % p
    zech_table = np.where(one_plus == 0, -1, log_table[one_plus])

    for t in (exp_table, log_table, zech_table):
        t.setflags(write=False)
    return FieldDescriptor(p, e, modulus, primitive, exp_table, log_table, zech_table)


def field_arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Apply ``op`` to field-tagged operands; ``b`` is an integer exponent for pow."""
    F = a.field
    if op == "pow":
        return FieldElement(F, F.pow(a.value, int(b)))
    if op in ("inv", "neg"):
        return FieldElement(F, F.arith(a.value, None, op))
    if not isinstance(b, FieldElement):
        raise FieldError(f"{op} needs a field element operand")
    if b.field != F:
        raise FieldError(f"mixed-field operands {F!r} and {b.field!r}")
    return FieldElement(F, F.arith(a.value, b.value, op))


def conjugate(a: FieldElement) -> FieldElement:
    return a.conjugate()


def primitive_nth_root(F: FieldDescriptor, n: int) -> int:
    """Least power of the primitive element with multiplicative order exactly n."""
    if n < 1 or (F.order - 1) % n:
        raise FieldError(f"n={n} does not divide {F.order - 1}; no primitive n-th root in {F!r}")
    return F.exp((F.order - 1) // n)


def field_for(q: int, degree: int = 2, cap: int = DEFAULT_TABLE_CAP) -> FieldDescriptor:
    """GF(q^degree) for a prime power q."""
    pp = prime_power(q)
    if pp is None:
        raise FieldError(f"{q} is not a prime power")
    p, s = pp
    return make_field(p, s * degree, cap)

