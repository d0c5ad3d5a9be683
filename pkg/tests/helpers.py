"""Shared test utilities: cached fixtures and independent oracles."""

import functools
import random

import braidbreak as bb

DEFAULT_SEED = 1234


@functools.lru_cache(maxsize=None)
def field(p: int | None = None) -> bb.PrimeField:
    return bb.PrimeField(p) if p else bb.PrimeField()


@functools.lru_cache(maxsize=None)
def rep(kind: str, n: int, seed: int = DEFAULT_SEED) -> bb.Representation:
    f = field()
    rng = random.Random(seed)
    q = rng.randrange(2, f.p)
    t = rng.randrange(1, f.p)
    if kind == "lk":
        return bb.lk_representation(f, n, q, t)
    return bb.burau_representation(f, n, t)


@functools.lru_cache(maxsize=None)
def honest_run(protocol_id: int, rep_kind: str, n: int, seed: int,
               word_len: tuple[int, int] = (5, 15)) -> bb.HonestRun:
    params = bb.ProtocolParams(
        protocol_id=protocol_id, n=n, rep_kind=rep_kind,
        word_len=word_len, seed=seed,
    )
    return bb.run_protocol(params)


def random_word_matrix(r: bb.Representation, rng: random.Random,
                       lo: int = 4, hi: int = 10) -> bb.SquareMatrix:
    word = bb.sample_word(rng, r.n, range(1, r.n), lo, hi)
    return bb.evaluate(r, word)


def plain_rref_rank(vectors, p: int) -> int:
    """Textbook row reduction over F_p on python ints; oracle-grade.

    Deliberately independent of EchelonState: plain lists, no numpy.
    """
    pivots: list[tuple[int, list[int]]] = []  # (pivot col, unit-pivot row)
    rank = 0
    for vec in vectors:
        row = [int(x) % p for x in vec]
        for col, prow in pivots:
            c = row[col]
            if c:
                row = [(a - c * b) % p for a, b in zip(row, prow)]
        lead = next((j for j, a in enumerate(row) if a), None)
        if lead is None:
            continue
        inv = pow(row[lead], p - 2, p)
        row = [a * inv % p for a in row]
        pivots.append((lead, row))
        rank += 1
    return rank


def assert_span_complexity(basis: bb.DecoratedBasis) -> None:
    """The 50x multiplication ceiling every suite instance must respect."""
    assert basis.build_mul_count <= 50 * basis.bound_value(), (
        f"build used {basis.build_mul_count} muls, "
        f"bound 50*{basis.bound_value()}"
    )
