"""Braid words, matrix representations over F_p, and commuting subgroups.

Two representation plugins are provided: Lawrence-Krammer (dimension
n(n-1)/2, parameters q and t) and unreduced Burau (dimension n, parameter t).
Constructors hard-validate the braid relations

    s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1},   s_i s_j = s_j s_i  (|i-j| >= 2)

on the generator images, so a transcription slip in the action formulas can
never leak into an experiment. The key-exchange protocols run on these
matrix images; faithfulness is never needed, only the homomorphism property.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import RelationValidationError
from .field import FieldElement, PrimeField
from .matrix import SquareMatrix


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators of B_n.

    Letters are signed indices: +i means s_i, -i means s_i^{-1}. The text
    form is whitespace-separated signed integers ("2 -3 2").
    """

    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for a in self.letters:
            if a == 0 or abs(a) >= self.n:
                raise ValueError(f"letter {a} out of range for {self.n} strands")

    @classmethod
    def from_text(cls, n: int, text: str) -> "BraidWord":
        return cls(n, tuple(int(tok) for tok in text.split()))

    def to_text(self) -> str:
        return " ".join(str(a) for a in self.letters)

    def free_reduce(self) -> "BraidWord":
        """Cancel adjacent inverse pairs until none remain."""
        out: list[int] = []
        for a in self.letters:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
        return BraidWord(self.n, tuple(out))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-a for a in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        return BraidWord(self.n, self.letters + other.letters).free_reduce()

    def __len__(self):
        return len(self.letters)


def sample_word(
    rng: random.Random,
    n: int,
    allowed_indices,
    len_min: int,
    len_max: int,
) -> BraidWord:
    """Random freely reduced word over the given generator indices.

    Pre-reduction length is uniform in [len_min, len_max]; every letter is
    uniform over allowed_indices x {+1, -1}. Deterministic under a seeded rng.
    """
    allowed = sorted(allowed_indices)
    if not allowed:
        raise ValueError("allowed_indices must be nonempty")
    if not (0 <= len_min <= len_max):
        raise ValueError(f"bad length range [{len_min}, {len_max}]")
    length = rng.randint(len_min, len_max)
    letters = tuple(
        rng.choice(allowed) * rng.choice((1, -1)) for _ in range(length)
    )
    return BraidWord(n, letters).free_reduce()


class Representation:
    """Matrix images of the Artin generators, validated at construction.

    gen_images[i-1] holds (image, exact inverse image) of s_i. Construction
    raises RelationValidationError if any image is singular, any stored
    inverse is wrong, or any braid relation fails. Instances are never
    mutated after validation and are safe to share across parallel trials.
    """

    def __init__(
        self,
        field: PrimeField,
        n: int,
        gen_images: list[tuple[SquareMatrix, SquareMatrix]],
        params: tuple[FieldElement | None, FieldElement | None],
        kind: str = "custom",
    ):
        if n < 3:
            raise ValueError(f"need at least 3 strands, got {n}")
        if len(gen_images) != n - 1:
            raise ValueError(f"expected {n - 1} generator images")
        self.field = field
        self.n = n
        self.dim = gen_images[0][0].dim
        self.gen_images = list(gen_images)
        self.params = params
        self.kind = kind
        self._validate()

    def _validate(self) -> None:
        ident = SquareMatrix.identity(self.field, self.dim)
        for i, (m, m_inv) in enumerate(self.gen_images, start=1):
            if m.dim != self.dim or m_inv.dim != self.dim:
                raise RelationValidationError(f"s_{i}: inconsistent dimension")
            if m @ m_inv != ident:
                raise RelationValidationError(f"s_{i}: stored inverse is wrong")
        for i in range(1, self.n - 1):
            a, b = self.gen_images[i - 1][0], self.gen_images[i][0]
            if a @ b @ a != b @ a @ b:
                raise RelationValidationError(
                    f"braid relation fails for (s_{i}, s_{i + 1})"
                )
        for i in range(1, self.n):
            for j in range(i + 2, self.n):
                a, b = self.gen_images[i - 1][0], self.gen_images[j - 1][0]
                if a @ b != b @ a:
                    raise RelationValidationError(
                        f"commutation fails for (s_{i}, s_{j})"
                    )

    def image(self, letter: int) -> SquareMatrix:
        """Image of a signed letter (+i -> s_i, -i -> s_i^{-1})."""
        if letter == 0 or abs(letter) >= self.n:
            raise ValueError(f"letter {letter} out of range")
        mat, inv = self.gen_images[abs(letter) - 1]
        return mat if letter > 0 else inv

    def __repr__(self):
        return f"Representation(kind={self.kind!r}, n={self.n}, dim={self.dim})"


def evaluate(rep: Representation, word: BraidWord) -> SquareMatrix:
    """Image of a braid word: ordered product of generator images."""
    if word.n != rep.n:
        raise ValueError(f"word is on {word.n} strands, rep on {rep.n}")
    out = SquareMatrix.identity(rep.field, rep.dim)
    for a in word.letters:
        out = out @ rep.image(a)
    return out


def _lk_pairs(n: int) -> list[tuple[int, int]]:
    return [(s, u) for s in range(1, n + 1) for u in range(s + 1, n + 1)]


def lk_representation(
    field: PrimeField, n: int, q: FieldElement | int, t: FieldElement | int
) -> Representation:
    """Lawrence-Krammer representation of B_n, dimension n(n-1)/2.

    Basis vectors are indexed by strand pairs (s, u), 1 <= s < u <= n, in
    lexicographic order; s_i acts by Krammer's formulas with the two unit
    parameters specialized to field elements. Requires q not in {0, 1} and
    t != 0 so all images stay invertible.
    """
    p = field.p
    qv = q.value if isinstance(q, FieldElement) else int(q) % p
    tv = t.value if isinstance(t, FieldElement) else int(t) % p
    if n < 3:
        raise ValueError(f"need at least 3 strands, got {n}")
    if qv in (0, 1) or tv == 0:
        raise ValueError("need q not in {0, 1} and t != 0")
    pairs = _lk_pairs(n)
    index = {pr: k for k, pr in enumerate(pairs)}
    m = len(pairs)
    images = []
    for i in range(1, n):
        arr = field.zeros((m, m))
        for (s, u) in pairs:
            col = index[(s, u)]

            def put(pr, c):
                arr[index[pr], col] = (int(arr[index[pr], col]) + c) % p

            if i < s - 1 or i > u:
                put((s, u), 1)
            elif i == s - 1:
                put((s - 1, u), 1)
                put((s, u), (1 - qv) % p)
            elif i == s and s < u - 1:
                put((s, s + 1), tv * qv % p * (qv - 1) % p)
                put((s + 1, u), qv)
            elif i == s and s == u - 1:
                put((s, u), tv * qv % p * qv % p)
            elif s < i < u - 1:
                put((s, u), 1)
                put((i, i + 1), tv * pow(qv, i - s, p) % p * ((qv - 1) ** 2 % p) % p)
            elif i == u - 1:
                put((s, u - 1), 1)
                put((u - 1, u), tv * pow(qv, u - s, p) % p * (qv - 1) % p)
            else:  # i == u
                put((s, u), (1 - qv) % p)
                put((s, u + 1), qv)
        mat = SquareMatrix(field, arr)
        images.append((mat, mat.inverse()))
    return Representation(
        field, n, images, (field.element(qv), field.element(tv)), kind="lk"
    )


def burau_representation(
    field: PrimeField, n: int, t: FieldElement | int
) -> Representation:
    """Unreduced Burau representation of B_n, dimension n.

    s_i acts as the identity outside the 2x2 block [[1-t, t], [1, 0]] at
    strands (i, i+1). t = 1 degenerates to permutation matrices; t = 0 is
    rejected (singular images).
    """
    p = field.p
    tv = t.value if isinstance(t, FieldElement) else int(t) % p
    if n < 3:
        raise ValueError(f"need at least 3 strands, got {n}")
    if tv == 0:
        raise ValueError("need t != 0")
    images = []
    for i in range(1, n):
        arr = field.identity_array(n)
        arr[i - 1, i - 1] = (1 - tv) % p
        arr[i - 1, i] = tv
        arr[i, i - 1] = 1
        arr[i, i] = 0
        mat = SquareMatrix(field, arr)
        images.append((mat, mat.inverse()))
    return Representation(field, n, images, (None, field.element(tv)), kind="burau")


@dataclass(frozen=True)
class LabeledGenerator:
    """A subgroup generator: its Artin index, image, and exact inverse."""

    index: int
    mat: SquareMatrix
    inv: SquareMatrix


@dataclass(frozen=True)
class CommutingPair:
    """Generator matrices of the commuting subgroups A and B.

    A is generated by s_1..s_{split-1}, B by s_{split+1}..s_{n-1}; the index
    gap of 2 makes every cross pair commute, which the constructor verifies
    exactly (a failure would mean a representation bug).
    """

    split: int
    a_gens: tuple[LabeledGenerator, ...]
    b_gens: tuple[LabeledGenerator, ...]


def commuting_subgroups(rep: Representation, split: int) -> CommutingPair:
    """Split the Artin generators into the commuting subgroups A and B."""
    n = rep.n
    if not 2 <= split <= n - 2:
        raise ValueError(f"split must be in [2, {n - 2}] for n={n}, got {split}")
    a_gens = tuple(
        LabeledGenerator(i, *rep.gen_images[i - 1]) for i in range(1, split)
    )
    b_gens = tuple(
        LabeledGenerator(i, *rep.gen_images[i - 1]) for i in range(split + 1, n)
    )
    for ga in a_gens:
        for gb in b_gens:
            for ma in (ga.mat, ga.inv):
                for mb in (gb.mat, gb.inv):
                    if ma @ mb != mb @ ma:
                        raise RelationValidationError(
                            f"s_{ga.index} and s_{gb.index} do not commute"
                        )
    return CommutingPair(split, a_gens, b_gens)


def default_split(n: int) -> int:
    """Balanced split: ceil((n-1)/2)."""
    return n // 2
