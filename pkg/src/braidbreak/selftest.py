"""Built-in invariant suites, runnable without pytest via the CLI.

Each suite is a function that raises AssertionError (or any exception) on
failure; run_selftest reports per-suite pass/fail. Seeds are fixed so a
pristine build always passes and any regression names its suite.
"""

from __future__ import annotations

import random
from typing import Callable

from .attack import attack_transcript, verify_against_oracle
from .braid import (
    burau_representation,
    commuting_subgroups,
    evaluate,
    lk_representation,
    sample_word,
)
from .field import PrimeField
from .protocol import ProtocolParams, run_protocol
from .span import SideSpec, build_decorated_basis, express, substitute


def _field() -> PrimeField:
    return PrimeField()


def suite_field_axioms() -> None:
    for p in (101, None):
        f = PrimeField(p) if p else _field()
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (f.element(rng.randrange(f.p)) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
        for _ in range(50):
            a = f.random_nonzero(rng)
            assert a.inverse().inverse() == a
            assert a * a.inverse() == f.one


def suite_braid_relations() -> None:
    f = _field()
    rng = random.Random(11)
    for n in (4, 5):
        q, t = rng.randrange(2, f.p), rng.randrange(1, f.p)
        rep = lk_representation(f, n, q, t)  # constructor validates
        assert rep.dim == n * (n - 1) // 2
    for n in (4, 6):
        rep = burau_representation(f, n, rng.randrange(1, f.p))
        assert rep.dim == n


def suite_commuting_subgroups() -> None:
    f = _field()
    rep = lk_representation(f, 6, 12345, 67890)
    pair = commuting_subgroups(rep, 3)
    for ga in pair.a_gens:
        for gb in pair.b_gens:
            for ma in (ga.mat, ga.inv):
                for mb in (gb.mat, gb.inv):
                    assert ma @ mb == mb @ ma


def suite_span_fixpoint() -> None:
    f = _field()
    rng = random.Random(13)
    rep = lk_representation(f, 4, rng.randrange(2, f.p), rng.randrange(1, f.p))
    pair = commuting_subgroups(rep, 2)
    core = evaluate(rep, sample_word(rng, 4, range(1, 4), 4, 10))
    sides = SideSpec.two_sided(pair.b_gens)
    basis = build_decorated_basis(core, sides)
    for e in basis.entries:
        assert e.left @ basis.core @ e.right == e.value
        for _, g in sides.left:
            assert basis.echelon.in_span((g @ e.value).a.reshape(-1))
        for _, g in sides.right:
            assert basis.echelon.in_span((e.value @ g).a.reshape(-1))
    target = basis.entries[-1].value
    coeffs = express(basis, target)
    assert substitute(basis, coeffs, basis.core) == target


def suite_key_agreement() -> None:
    for protocol_id in (1, 2):
        for rep_kind, n in (("lk", 4), ("burau", 5)):
            params = ProtocolParams(
                protocol_id=protocol_id, n=n, rep_kind=rep_kind, seed=42
            )
            run = run_protocol(params)  # raises internally on disagreement
            assert run.k_alice == run.k_bob


def suite_attack_soundness() -> None:
    cases = [
        (1, "burau", 4), (2, "burau", 4), (1, "lk", 4), (2, "lk", 4),
    ]
    for protocol_id, rep_kind, n in cases:
        params = ProtocolParams(
            protocol_id=protocol_id, n=n, rep_kind=rep_kind, seed=99
        )
        run = run_protocol(params)
        report = attack_transcript(run.transcript)
        assert verify_against_oracle(report, run), (
            f"recovery failed: protocol={protocol_id} rep={rep_kind} n={n}"
        )


SUITES: list[tuple[str, Callable[[], None]]] = [
    ("field_axioms", suite_field_axioms),
    ("braid_relations", suite_braid_relations),
    ("commuting_subgroups", suite_commuting_subgroups),
    ("span_fixpoint", suite_span_fixpoint),
    ("key_agreement", suite_key_agreement),
    ("attack_soundness", suite_attack_soundness),
]


def run_selftest(log=print) -> list[tuple[str, bool, str]]:
    """Run every suite; returns (name, passed, message) triples."""
    results = []
    for name, fn in SUITES:
        try:
            fn()
        except Exception as e:  # noqa: BLE001 - report any failure mode
            results.append((name, False, f"{type(e).__name__}: {e}"))
            log(f"FAIL {name}: {type(e).__name__}: {e}")
        else:
            results.append((name, True, ""))
            log(f"ok   {name}")
    return results
