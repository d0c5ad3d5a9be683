"""Dense exact matrix/vector algebra over F_p and incremental RREF.

The ambient vector space of the span machinery is the flattening of the m x m
matrix algebra (dimension m^2). Everything here is exact: on the fast path
(p <= FAST_PATH_MAX) arrays are int64 and matrix products run as four
float64 BLAS multiplies on 16-bit limbs, which is exact because every
intermediate is an integer below 2^53; larger moduli fall back to python
bigint (object-dtype) arrays.

All bulk kernels report their multiplication/addition counts to the owning
field's OpCounter, so counted totals match the scalar-op semantics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError
from .field import PrimeField

_LIMB_MASK = (1 << 16) - 1

# float64-limb GEMM is exact while accumulation depth * 2^32 < 2^53
_MAX_GEMM_DEPTH = 1 << 20


def gemm_mod(field: PrimeField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact (..., k, r) @ (..., r, n) product of residue arrays, mod p.

    Supports broadcasting over leading (batch) axes. Counts k*r*n
    multiplications and k*n*(r-1) additions per batch element.
    """
    p = field.p
    k, r = a.shape[-2], a.shape[-1]
    n = b.shape[-1]
    batch = int(np.prod(a.shape[:-2], dtype=np.int64)) if a.ndim > 2 else 1
    batch = max(batch, int(np.prod(b.shape[:-2], dtype=np.int64)) if b.ndim > 2 else 1)
    field.ops.mul_count += batch * k * r * n
    field.ops.add_count += batch * k * n * max(r - 1, 0)

    if field.dtype is object:
        if a.ndim <= 2 and b.ndim <= 2:
            return np.dot(a, b) % p
        a2, b2 = np.broadcast_arrays(a, b) if a.ndim == b.ndim else (a, b)
        if a.ndim != b.ndim:
            raise ValueError("object-dtype batched gemm needs equal ndim")
        shape = a2.shape[:-2]
        out = np.empty(shape + (k, n), dtype=object)
        for idx in np.ndindex(*shape):
            out[idx] = np.dot(a2[idx], b2[idx]) % p
        return out

    if r > _MAX_GEMM_DEPTH:
        raise ValueError(f"gemm depth {r} exceeds exact float64 limit")
    if a.ndim == 2 and b.ndim == 2 and k == 1:
        # single-row product: elementwise multiply, reduce mod p, then sum
        # (residues < 2^32, so a length-r column sum cannot overflow int64)
        prod = a[0][:, None] * b % p
        return np.add.reduce(prod, axis=0)[None, :] % p
    a1 = (a >> 16).astype(np.float64)
    a0 = (a & _LIMB_MASK).astype(np.float64)
    b1 = (b >> 16).astype(np.float64)
    b0 = (b & _LIMB_MASK).astype(np.float64)
    # each product term is an exact integer < 2^53
    d11 = np.matmul(a1, b1).astype(np.int64) % p
    d10 = np.matmul(a1, b0).astype(np.int64)
    d01 = np.matmul(a0, b1).astype(np.int64)
    d00 = np.matmul(a0, b0).astype(np.int64) % p
    dmid = (d10 + d01) % p
    s32 = (1 << 32) % p
    s16 = (1 << 16) % p
    return (d11 * s32 % p + dmid * s16 % p + d00) % p


@dataclass(frozen=True)
class SquareMatrix:
    """Immutable m x m residue matrix tied to a PrimeField."""

    field: PrimeField
    a: np.ndarray  # shape (m, m), canonical residues, never mutated

    @classmethod
    def from_rows(cls, field: PrimeField, rows) -> "SquareMatrix":
        arr = field.asarray(rows)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"square matrix expected, got shape {arr.shape}")
        return cls(field, arr)

    @classmethod
    def identity(cls, field: PrimeField, m: int) -> "SquareMatrix":
        return cls(field, field.identity_array(m))

    @classmethod
    def zero(cls, field: PrimeField, m: int) -> "SquareMatrix":
        return cls(field, field.zeros((m, m)))

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        self.field.check_same(other.field)
        if self.dim != other.dim:
            raise ValueError(f"dim mismatch: {self.dim} vs {other.dim}")
        return SquareMatrix(self.field, gemm_mod(self.field, self.a, other.a))

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self.field.check_same(other.field)
        self.field.ops.add_count += self.a.size
        return SquareMatrix(self.field, (self.a + other.a) % self.field.p)

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        self.field.check_same(other.field)
        self.field.ops.add_count += self.a.size
        return SquareMatrix(self.field, (self.a - other.a) % self.field.p)

    def scale(self, c: int) -> "SquareMatrix":
        c %= self.field.p
        self.field.ops.mul_count += self.a.size
        return SquareMatrix(self.field, self.a * c % self.field.p)

    def inverse(self) -> "SquareMatrix":
        """Exact inverse via Gauss-Jordan; raises SingularMatrixError."""
        f, p, m = self.field, self.field.p, self.dim
        aug = np.concatenate([self.a.copy(), f.identity_array(m)], axis=1)
        for c in range(m):
            sub = aug[c:, c]
            nz = np.nonzero(sub)[0]
            if len(nz) == 0:
                raise SingularMatrixError(f"singular matrix (rank < {m})")
            r = c + int(nz[0])
            if r != c:
                aug[[c, r]] = aug[[r, c]]
            inv = f.inverse_int(int(aug[c, c]))
            aug[c] = aug[c] * inv % p
            f.ops.mul_count += 2 * m
            col = aug[:, c].copy()
            col[c] = 0
            aug = (aug - col[:, None] * aug[c][None, :]) % p
            f.ops.mul_count += 2 * m * m
            f.ops.add_count += 2 * m * m
        return SquareMatrix(f, aug[:, m:])

    def flatten(self) -> "FlatVector":
        """Row-major flattening; the fixed linear bijection with unflatten."""
        return FlatVector(self.field, self.a.reshape(-1).copy())

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.a, self.field.identity_array(self.dim)))

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.field.p == other.field.p and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.field.p, self.a.tobytes() if self.a.dtype != object else tuple(self.a.reshape(-1))))

    def to_rows(self) -> list[list[str]]:
        """Rows of decimal strings (the serialization form)."""
        return [[str(int(x)) for x in row] for row in self.a]

    def __repr__(self):
        return f"SquareMatrix(dim={self.dim}, p={self.field.p})"


@dataclass(frozen=True)
class FlatVector:
    """Flattened matrix: vector of length dim^2 over the field."""

    field: PrimeField
    v: np.ndarray  # 1-D canonical residues

    @property
    def length(self) -> int:
        return self.v.shape[0]

    def __add__(self, other: "FlatVector") -> "FlatVector":
        self.field.ops.add_count += self.length
        return FlatVector(self.field, (self.v + other.v) % self.field.p)

    def __eq__(self, other):
        if not isinstance(other, FlatVector):
            return NotImplemented
        return self.field.p == other.field.p and np.array_equal(self.v, other.v)

    def __hash__(self):
        return hash((self.field.p, self.length))


def unflatten(field: PrimeField, vec: FlatVector, m: int) -> SquareMatrix:
    if vec.length != m * m:
        raise ValueError(f"length {vec.length} is not {m}^2")
    return SquareMatrix(field, vec.v.reshape(m, m).copy())


class EchelonState:
    """Reduced row-echelon form built one vector at a time.

    Alongside the reduced rows it retains a transformation record: row i is
    stored together with its expression in the originally inserted
    (independent) vectors, which is what coordinate extraction needs.

    Internally rows live in two tiers: "settled" rows are mutually reduced
    (true RREF), while rows accepted since the last settling are only
    reduced against everything before them. Settling batches the mutual
    clearing into a few matrix products; callers never see the split since
    every read path settles first. Single-writer; completed states may be
    read concurrently.
    """

    # flush the per-candidate python loop into one gemm whenever this many
    # rows accumulated since the last block reduction
    _BLOCK = 64

    def __init__(self, field: PrimeField, ambient: int):
        self.field = field
        self.ambient = ambient
        self.pivot_cols: list[int] = []
        self._rows = field.zeros((16, ambient))
        self._tr = field.zeros((16, 16))
        self._settled = 0

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    @property
    def rows(self) -> np.ndarray:
        """Read-only view of the reduced rows (rank x ambient)."""
        self._settle()
        return self._rows[: self.rank]

    def _grow(self, need: int) -> None:
        cap = self._rows.shape[0]
        if need <= cap:
            return
        while cap < need:
            cap *= 2
        rows = self.field.zeros((cap, self.ambient))
        rows[: self.rank] = self._rows[: self.rank]
        tr = self.field.zeros((cap, cap))
        tr[: self.rank, : self.rank] = self._tr[: self.rank, : self.rank]
        self._rows, self._tr = rows, tr

    def _as_vec(self, v) -> np.ndarray:
        if isinstance(v, FlatVector):
            v = v.v
        v = np.asarray(v)
        if v.shape != (self.ambient,):
            raise ValueError(f"expected vector of length {self.ambient}")
        return v

    def _clear_among(self, lo: int, hi: int) -> None:
        """Mutually clear rows[lo:hi] among themselves (backward pass).

        Later rows are already reduced against earlier ones, so clearing the
        pivots back to front leaves the block in mutual RREF. Row updates and
        transform-record updates stay in lockstep.
        """
        f, p = self.field, self.field.p
        for j in range(hi - lo - 1, 0, -1):
            col = self._rows[lo : lo + j, self.pivot_cols[lo + j]].copy()
            if col.any():
                row = self._rows[lo + j]
                self._rows[lo : lo + j] = (
                    self._rows[lo : lo + j] - col[:, None] * row[None, :]
                ) % p
                trow = self._tr[lo + j, :hi]
                self._tr[lo : lo + j, :hi] = (
                    self._tr[lo : lo + j, :hi] - col[:, None] * trow[None, :]
                ) % p
                f.ops.mul_count += j * (self.ambient + hi)
                f.ops.add_count += j * (self.ambient + hi)

    def _settle(self) -> None:
        """Restore the full mutual-clearing invariant."""
        f, p = self.field, self.field.p
        base, r = self._settled, self.rank
        kp = r - base
        if kp == 0:
            return
        self._clear_among(base, r)
        pend = self._rows[base:r]
        pend_tr = self._tr[base:r, :r]
        if base:
            piv = self.pivot_cols[base:]
            coeff = self._rows[:base, piv] % p
            self._rows[:base] = (
                self._rows[:base] - gemm_mod(f, coeff, pend)
            ) % p
            self._tr[:base, :r] = (
                self._tr[:base, :r] - gemm_mod(f, coeff, pend_tr)
            ) % p
            f.ops.add_count += base * (self.ambient + r)
        self._settled = r

    def extend_batch(self, block) -> np.ndarray:
        """Feed candidate rows in order; returns a boolean mask of acceptances.

        Equivalent to calling try_extend row by row, but reduces against the
        pre-existing rows in one matrix product.
        """
        f, p = self.field, self.field.p
        block = np.asarray(block)
        if block.ndim != 2 or block.shape[1] != self.ambient:
            raise ValueError(f"expected (k, {self.ambient}) block")
        self._settle()
        base = self.rank
        orig = block % p
        if base:
            coeff = orig[:, self.pivot_cols]
            red = (orig - gemm_mod(f, coeff, self._rows[:base])) % p
            f.ops.add_count += red.size
        else:
            red = orig.copy()
        k = block.shape[0]
        accepted = np.zeros(k, dtype=bool)
        # coefficients of each candidate against rows accepted this batch
        pend_cf = f.zeros((k, 16))
        fresh: list[int] = []  # batch-local indices not yet block-applied
        for i in range(k):
            v = red[i]
            for j in fresh:
                c = v[self.pivot_cols[base + j]]
                if c:
                    v = (v - int(c) * self._rows[base + j]) % p
                    f.ops.mul_count += self.ambient
                    f.ops.add_count += self.ambient
                pend_cf[i, j] = c
            if not v.any():
                continue
            nb = self.rank - base
            if nb >= pend_cf.shape[1]:
                wider = f.zeros((k, pend_cf.shape[1] * 2))
                wider[:, : pend_cf.shape[1]] = pend_cf
                pend_cf = wider
            self._accept_pending(v, orig[i], pend_cf[i, :nb], base)
            accepted[i] = True
            fresh.append(nb)
            if len(fresh) >= self._BLOCK and i + 1 < k:
                # single-pass coefficient extraction against the block needs
                # the block itself in mutual RREF first
                lo, hi = base + fresh[0], base + fresh[-1] + 1
                self._clear_among(lo, hi)
                piv = self.pivot_cols[lo:hi]
                sub = red[i + 1 :, piv] % p
                pend_cf[i + 1 :, fresh[0] : fresh[-1] + 1] = sub
                red[i + 1 :] = (
                    red[i + 1 :] - gemm_mod(f, sub, self._rows[lo:hi])
                ) % p
                f.ops.add_count += red[i + 1 :].size
                fresh = []
        return accepted

    def _accept_pending(
        self,
        reduced: np.ndarray,
        original: np.ndarray,
        pend_coeff: np.ndarray,
        base: int,
    ) -> None:
        """Append a fully reduced candidate without clearing older rows."""
        f, p, r = self.field, self.field.p, self.rank
        self._grow(r + 1)
        piv = int(np.nonzero(reduced)[0][0])
        lead_inv = f.inverse_int(int(reduced[piv]))
        self._rows[r] = reduced * lead_inv % p
        f.ops.mul_count += self.ambient
        # row = lead_inv * (original - sum coeff_i * row_i); the settled
        # coefficients sit at the settled pivot columns of the original,
        # the batch coefficients were collected during reduction
        t_new = f.zeros(r + 1)
        ct = f.zeros(r)
        if base:
            c_settled = original[self.pivot_cols[:base]] % p
            ct[:r] += gemm_mod(f, c_settled[None, :], self._tr[:base, :r])[0]
        if r > base:
            ct[:r] += gemm_mod(f, pend_coeff[None, :] % p, self._tr[base:r, :r])[0]
        t_new[:r] = (-ct) % p * lead_inv % p
        f.ops.mul_count += r
        f.ops.add_count += r
        t_new[r] = lead_inv
        self._tr[r, : r + 1] = t_new
        self.pivot_cols.append(piv)

    def try_extend(self, v) -> bool:
        """Append v if independent of the current rows; False if dependent."""
        vec = self._as_vec(v)
        return bool(self.extend_batch(vec[None, :])[0])

    def in_span(self, v) -> bool:
        self._settle()
        f = self.field
        vec = self._as_vec(v) % f.p
        if self.rank == 0:
            return not vec.any()
        coeff = vec[self.pivot_cols]
        red = (vec - gemm_mod(f, coeff[None, :], self._rows[: self.rank])[0]) % f.p
        f.ops.add_count += self.ambient
        return not red.any()

    def solve(self, v) -> np.ndarray | None:
        """Coordinates of v in the originally inserted vectors, or None."""
        self._settle()
        f = self.field
        vec = self._as_vec(v) % f.p
        if self.rank == 0:
            return None if vec.any() else f.zeros(0)
        coeff = vec[self.pivot_cols] % f.p
        red = (vec - gemm_mod(f, coeff[None, :], self._rows[: self.rank])[0]) % f.p
        f.ops.add_count += self.ambient
        if red.any():
            return None
        return gemm_mod(f, coeff[None, :], self._tr[: self.rank, : self.rank])[0]


def solve_coordinates(basis: list[FlatVector], target: FlatVector) -> np.ndarray | None:
    """Express target in an independent basis; None when outside the span.

    Coefficients c satisfy sum_i c_i * basis_i = target exactly.
    """
    if not basis:
        raise ValueError("empty basis")
    field = basis[0].field
    state = EchelonState(field, basis[0].length)
    for b in basis:
        if not state.try_extend(b):
            raise ValueError("basis vectors are linearly dependent")
    return state.solve(target)
