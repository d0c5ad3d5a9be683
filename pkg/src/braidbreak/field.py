"""Exact arithmetic in the prime field F_p with operation counting.

A PrimeField is the shared context (modulus + counters) for everything in a
run: scalars, matrices, protocol transcripts. Residues are canonical ints in
[0, p). Matrix modules work on raw numpy arrays of residues and report their
work in bulk to the same OpCounter that scalar operations feed, so counted
totals always equal the sum of per-operation increments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import FieldMismatchError

# Smallest prime above 2^31. Residue products fit a signed 64-bit word
# ((p-1)^2 < 2^63), which is what keeps the exact numpy kernels fast.
DEFAULT_PRIME = 2147483659

# Largest modulus for which (p-1)^2 < 2^63; beyond this the field falls back
# to object-dtype (python bigint) arrays, exact but much slower.
FAST_PATH_MAX = 3037000499

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases (deterministic for n < 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class OpCounter:
    """Tally of field operations inside one measurement scope.

    Counts only grow; measurement code takes (mul, add, inv) snapshots and
    differences them, so nested scopes need no resets. Not thread-safe:
    concurrent scopes must own independent counters.
    """

    mul_count: int = 0
    add_count: int = 0
    inv_count: int = 0

    def snapshot(self) -> tuple[int, int, int]:
        return (self.mul_count, self.add_count, self.inv_count)

    def delta(self, snap: tuple[int, int, int]) -> tuple[int, int, int]:
        return (
            self.mul_count - snap[0],
            self.add_count - snap[1],
            self.inv_count - snap[2],
        )

    def reset(self) -> None:
        self.mul_count = self.add_count = self.inv_count = 0


class PrimeField:
    """Field context: odd prime modulus, array dtype, operation counter."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if p <= 2 or not is_probable_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p
        self.dtype = np.int64 if p <= FAST_PATH_MAX else object
        self.ops = OpCounter()

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    # -- scalar layer ------------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def inverse_int(self, a: int) -> int:
        """Inverse of the residue a via extended Euclid. a must be nonzero."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        # iterative xgcd on (a, p); gcd is 1 since p is prime
        r0, r1 = a, self.p
        s0, s1 = 1, 0
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        self.ops.inv_count += 1
        return s0 % self.p

    def random_nonzero(self, rng: random.Random) -> "FieldElement":
        """Uniform over [1, p); deterministic for a seeded rng."""
        return FieldElement(self, rng.randrange(1, self.p))

    # -- array layer -------------------------------------------------------

    def asarray(self, data) -> np.ndarray:
        """Canonicalize nested int data into a residue array of this field."""
        a = np.array(data, dtype=object) % self.p
        return a.astype(self.dtype)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def identity_array(self, m: int) -> np.ndarray:
        a = self.zeros((m, m))
        for i in range(m):
            a[i, i] = 1
        return a

    def check_same(self, other: "PrimeField") -> None:
        if self is not other and self.p != other.p:
            raise FieldMismatchError(
                f"modulus mismatch: {self.p} vs {other.p}"
            )


@dataclass(frozen=True)
class FieldElement:
    """Immutable residue in [0, p) tied to its PrimeField context."""

    field: PrimeField = dc_field(repr=False)
    value: int = 0

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            self.field.check_same(other.field)
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        self.field.ops.add_count += 1
        return FieldElement(self.field, (self.value + v) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        self.field.ops.add_count += 1
        return FieldElement(self.field, (self.value - v) % self.field.p)

    def __neg__(self):
        return FieldElement(self.field, (-self.value) % self.field.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        self.field.ops.mul_count += 1
        return FieldElement(self.field, self.value * v % self.field.p)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inverse_int(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    def __str__(self):
        return str(self.value)
