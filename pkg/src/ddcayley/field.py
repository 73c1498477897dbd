"""Table-driven arithmetic in GF(q^r), q = p^e, and its family of hyperplanes.

Elements are plain ints: the base-p encoding of the coefficient vector in the
polynomial basis (digit k is the coefficient of x^k).  ``0`` is zero and ``1``
is one.  Multiplication goes through discrete-log tables, addition through a
Zech-logarithm table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeTooLarge,
    NotAHyperplane,
    NotIrreducible,
    NotPrime,
    NotPrimePower,
    OrbitDegenerate,
)

MAX_ORDER = 2**16
ZERO_LOG = -1


def is_prime(n: int) -> bool:
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


def prime_factors(n: int) -> list[int]:
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


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    p = fs[0]
    return p, round(math.log(q, p))


# --- polynomials over GF(p), little-endian coefficient lists ---------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for k, mk in enumerate(m):
            a[shift + k] = (a[shift + k] - c * mk) % p
        _trim(a)
    return a


def _polymulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _polymod(prod, m, p)


def _polypowmod(a: Sequence[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(a, m, p)
    while k:
        if k & 1:
            result = _polymulmod(result, base, m, p)
        base = _polymulmod(base, base, m, p)
        k >>= 1
    return result


def _monic_polys(degree: int, p: int) -> Iterable[list[int]]:
    """Monic polynomials of a given degree, lexicographically by (c_{d-1}, ..., c_0)."""
    for low in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(low % p)
            low //= p
        yield coeffs + [1]


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _trim([c % p for c in coeffs])
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(d, p):
            if not _polymod(f, g, p):
                return False
    return True


# --- field spec ------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    r: int
    modulus: tuple[int, ...] | None = None

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        return self.p ** (self.e * self.r)

    @classmethod
    def from_qr(cls, q: int, r: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
        p, e = prime_power(q)
        return cls(p, e, r, None if modulus is None else tuple(modulus))

    def to_json(self) -> str:
        d = {"p": self.p, "e": self.e, "r": self.r}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        return json.dumps(d)

    @classmethod
    def from_json(cls, text: str) -> "FieldSpec":
        d = json.loads(text)
        mod = d.get("modulus")
        return cls(int(d["p"]), int(d["e"]), int(d["r"]), None if mod is None else tuple(mod))


@dataclass(frozen=True)
class Hyperplane:
    """An (r-1)-dimensional GF(q)-subspace of GF(q^r), members sorted (zero first)."""

    members: tuple[int, ...]
    index: int

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)


class Field:
    """GF(q^r) with precomputed exp/log/Zech tables.

    ``tau`` is a primitive element and ``theta = tau**(q-1)`` has order ``t``.
    """

    def __init__(self, spec: FieldSpec):
        p, e, r = spec.p, spec.e, spec.r
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if e < 1 or r < 2:
            raise ValueError(f"need e >= 1 and r > 1, got e={e}, r={r}")
        n = e * r
        order = p**n
        if order > MAX_ORDER:
            raise DegreeTooLarge(f"field order {order} exceeds {MAX_ORDER}")
        self.p, self.e, self.r = p, e, r
        self.q = p**e
        self.degree = n
        self.order = order
        self._m = order - 1

        if spec.modulus is None:
            modulus = _search_modulus(n, p)
        else:
            modulus = [c % p for c in spec.modulus]
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise NotIrreducible(f"modulus must be monic of degree {n}")
            if not is_irreducible(modulus, p):
                raise NotIrreducible(f"modulus {list(spec.modulus)} is reducible over GF({p})")
        self.modulus = tuple(modulus)
        self.spec = FieldSpec(p, e, r, self.modulus)

        self.tau = self._choose_primitive()
        self._build_tables()
        self.theta = self.pow(self.tau, self.q - 1)
        self._check_tables()

    # -- construction ------------------------------------------------------

    def encode(self, vec: Sequence[int]) -> int:
        x = 0
        for c in reversed(list(vec)):
            x = x * self.p + (c % self.p)
        return x

    def vec(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def _choose_primitive(self) -> int:
        target = [1]
        for cand in range(2, self.order):
            v = _trim(list(self.vec(cand)))
            if all(
                _polypowmod(v, self._m // ell, self.modulus, self.p) != target
                for ell in prime_factors(self._m)
            ):
                return cand
        raise NotIrreducible("no primitive element found")  # unreachable for a field

    def _build_tables(self) -> None:
        m, p = self._m, self.p
        tau_vec = _trim(list(self.vec(self.tau)))
        exp = [0] * m
        log = [ZERO_LOG] * self.order
        cur = [1]
        for k in range(m):
            x = self.encode(cur + [0] * (self.degree - len(cur)))
            if log[x] != ZERO_LOG:
                raise NotIrreducible("chosen tau is not primitive")
            exp[k] = x
            log[x] = k
            cur = _polymulmod(cur, tau_vec, self.modulus, p)
        self._exp = exp
        self._log = log
        # zech[k] = log(1 + tau^k)
        zech = [ZERO_LOG] * m
        for k in range(m):
            a = exp[k]
            low = a % p
            zech[k] = log[a - low + (low + 1) % p]
        self._zech = zech
        self.exp_table = np.asarray(exp, dtype=np.int64)
        self.log_table = np.asarray(log, dtype=np.int64)
        self.zech_table = np.asarray(zech, dtype=np.int64)
        self.digits = np.asarray([self.vec(x) for x in range(self.order)], dtype=np.int64)
        self._weights = self.p ** np.arange(self.degree, dtype=np.int64)

    def _check_tables(self) -> None:
        if sorted(self._exp) != list(range(1, self.order)):
            raise NotIrreducible("exp table is not a bijection onto the nonzero elements")
        if self.pow(self.tau, self._m) != 1:
            raise NotIrreducible("tau^(order-1) != 1")
        rng = np.random.default_rng(0)
        if self.order <= 64:
            a, b = np.meshgrid(np.arange(self.order), np.arange(self.order))
            a, b = a.ravel(), b.ravel()
        else:
            a = rng.integers(0, self.order, 4096)
            b = rng.integers(0, self.order, 4096)
        if not np.array_equal(self.add_arr(a, b), self.add_digits(a, b)):
            raise NotIrreducible("Zech addition disagrees with vector addition")

    # -- derived constants -------------------------------------------------

    @property
    def t(self) -> int:
        return (self.order - 1) // (self.q - 1)

    @property
    def t1(self) -> int:
        return (self.q ** (self.r - 1) - 1) // (self.q - 1)

    def __repr__(self) -> str:
        return f"Field(GF({self.q}^{self.r}), modulus={list(self.modulus)}, tau={self.tau})"

    # -- scalar arithmetic -------------------------------------------------

    def log(self, x: int) -> int | None:
        k = self._log[x]
        return None if k == ZERO_LOG else k

    def exp(self, k: int) -> int:
        return self._exp[k % self._m]

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % self._m]
        if z == ZERO_LOG:
            return 0
        return self._exp[(la + z) % self._m]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[(self._log[a] + self._m // 2) % self._m]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._m]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % self._m]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % self._m]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        return self._m // gcd(self._m, self._log[a])

    # -- vectorized arithmetic ---------------------------------------------

    def mul_arr(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self.exp_table[(self.log_table[a] + self.log_table[b]) % self._m]
        out[(a == 0) | (b == 0)] = 0
        return out

    def add_arr(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        la, lb = self.log_table[a], self.log_table[b]
        z = self.zech_table[(lb - la) % self._m]
        out = self.exp_table[(la + z) % self._m]
        out[z == ZERO_LOG] = 0
        out = np.where(a == 0, b, out)
        out = np.where(b == 0, a, out)
        return out

    def add_digits(self, a, b) -> np.ndarray:
        """Addition straight from coefficient vectors (independent of the log tables)."""
        s = (self.digits[np.asarray(a)] + self.digits[np.asarray(b)]) % self.p
        return s @ self._weights

    # -- subfield, trace ---------------------------------------------------

    @cached_property
    def subfield(self) -> tuple[int, ...]:
        """GF(q) inside GF(q^r): zero together with the powers of tau^t."""
        gen = self.pow(self.tau, self.t)
        return tuple(sorted({0} | {self.pow(gen, k) for k in range(self.q - 1)}))

    def trace(self, x: int) -> int:
        """Trace from GF(q^r) down to GF(q)."""
        total = 0
        for i in range(self.r):
            total = self.add(total, self.pow(x, self.q**i))
        assert total in self.subfield_set, "trace left the subfield"
        return total

    @cached_property
    def subfield_set(self) -> frozenset[int]:
        return frozenset(self.subfield)

    # -- hyperplanes -------------------------------------------------------

    @cached_property
    def hyperplane_step(self) -> int:
        """Multiplier walking the hyperplane orbit: theta if it acts transitively, else tau."""
        if gcd(self.t, self.q - 1) == 1:
            return self.theta
        return self.tau

    @cached_property
    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        base = [x for x in range(self.order) if self.trace(x) == 0]
        step = self.hyperplane_step
        out = []
        for i in range(1, self.t + 1):
            c = self.pow(step, i)
            out.append(Hyperplane(tuple(sorted(self.mul(x, c) for x in base)), i))
        if len({h.members for h in out}) != self.t:
            raise OrbitDegenerate("hyperplane orbit has repeated members")
        if out[-1].members != tuple(sorted(base)):
            raise OrbitDegenerate("M_t differs from the base hyperplane")
        return tuple(out)

    @cached_property
    def _hyperplane_lookup(self) -> dict[tuple[int, ...], int]:
        return {h.members: h.index for h in self.hyperplanes}

    @cached_property
    def hyperplane_shift(self) -> int:
        """The c with M_j * theta = M_{j+c} (indices mod t)."""
        return (hyperplane_index(self, scale_hyperplane(self, self.hyperplanes[-1], self.theta))) % self.t


def field_build(spec: FieldSpec) -> Field:
    return Field(spec)


def field_for(q: int, r: int, modulus: Sequence[int] | None = None) -> Field:
    return Field(FieldSpec.from_qr(q, r, modulus))


def _search_modulus(n: int, p: int) -> list[int]:
    """Least monic irreducible degree-n polynomial for which x is primitive."""
    m = p**n - 1
    for f in _monic_polys(n, p):
        if f[0] == 0 or not is_irreducible(f, p):
            continue
        if all(_polypowmod([0, 1], m // ell, f, p) != [1] for ell in prime_factors(m)):
            return f
    raise NotIrreducible(f"no primitive polynomial of degree {n} over GF({p})")  # unreachable


def t_value(field: Field) -> int:
    return field.t


def t1_value(field: Field) -> int:
    return field.t1


def trace_to_subfield(field: Field, x: int) -> int:
    return field.trace(x)


def hyperplane_orbit(field: Field) -> list[Hyperplane]:
    return list(field.hyperplanes)


def scale_hyperplane(field: Field, h: Hyperplane | Iterable[int], c: int) -> tuple[int, ...]:
    if c == 0:
        raise ValueError("cannot scale by zero")
    members = h.members if isinstance(h, Hyperplane) else h
    return tuple(sorted(field.mul(x, c) for x in members))


def hyperplane_index(field: Field, members: Iterable[int]) -> int:
    key = tuple(sorted(members))
    try:
        return field._hyperplane_lookup[key]
    except KeyError:
        raise NotAHyperplane(f"not a member of the hyperplane family: {key[:8]}...") from None
