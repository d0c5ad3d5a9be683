"""Acceptance criteria, one test per criterion, one PASS line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Everything is exact arithmetic: zero tolerance throughout.
"""

import json
import random

import pytest

import braidbreak as bb
from braidbreak.cli import main as cli_main
from braidbreak.protocol import derive_trial_seed

from helpers import plain_rref_rank, random_word_matrix, rep


def _report(num: int, name: str) -> None:
    print(f"\nACCEPTANCE {num} ({name}): PASS")


def _attack_exact(protocol_id, rep_kind, n, seed, word_len=(5, 15)):
    params = bb.ProtocolParams(
        protocol_id=protocol_id, n=n, rep_kind=rep_kind,
        word_len=word_len, seed=seed,
    )
    run = bb.run_protocol(params)
    report = bb.attack_transcript(run.transcript)
    return bb.verify_against_oracle(report, run), report


def test_criterion_1_attack_soundness():
    # 240/240 exact key recoveries: protocols x reps x n in {4,6,8} x 20 seeds
    failures = []
    total = 0
    for protocol_id in (1, 2):
        for rep_kind in ("lk", "burau"):
            for n in (4, 6, 8):
                for trial in range(20):
                    seed = derive_trial_seed(
                        1_000_000 * protocol_id + 1000 * n + (rep_kind == "lk"),
                        trial,
                    )
                    ok, _ = _attack_exact(protocol_id, rep_kind, n, seed)
                    total += 1
                    if not ok:
                        failures.append((protocol_id, rep_kind, n, seed))
    assert total == 240
    assert failures == [], f"recovery failures: {failures}"
    _report(1, "attack soundness 240/240")


def test_criterion_2_honest_protocol_correctness():
    rng = random.Random(2024)
    runs = 0
    for protocol_id in (1, 2):
        for _ in range(250):
            n = rng.choice((4, 5, 6, 7))
            rep_kind = rng.choice(("lk", "burau"))
            params = bb.ProtocolParams(
                protocol_id=protocol_id, n=n, rep_kind=rep_kind,
                seed=rng.randrange(2**63),
            )
            run = bb.run_protocol(params)
            assert run.k_alice == run.k_bob
            runs += 1
    assert runs == 500
    _report(2, "honest key agreement on 500 runs")


def test_criterion_3_representation_validity():
    f = bb.PrimeField()
    rng = random.Random(31337)
    for n in range(3, 9):
        for _ in range(5):
            q = rng.randrange(2, f.p)
            t = rng.randrange(1, f.p)
            lk = bb.lk_representation(f, n, q, t)  # relation-gated constructor
            burau = bb.burau_representation(f, n, t)
            for r in (lk, burau):
                # explicit spot-check on top of the constructor gate
                img = [g[0] for g in r.gen_images]
                for i in range(len(img) - 1):
                    assert img[i] @ img[i + 1] @ img[i] == \
                        img[i + 1] @ img[i] @ img[i + 1]
                if n >= 4:
                    pair = bb.commuting_subgroups(r, bb.default_split(n))
                    for ga in pair.a_gens:
                        for gb in pair.b_gens:
                            for ma in (ga.mat, ga.inv):
                                for mb in (gb.mat, gb.inv):
                                    assert ma @ mb == mb @ ma
    # a deliberately perturbed generator must be rejected at construction
    base = rep("lk", 5)
    images = list(base.gen_images)
    bad = images[0][0].a.copy()
    bad[1, 1] = (int(bad[1, 1]) + 1) % base.field.p
    images[0] = (bb.SquareMatrix(base.field, bad), images[0][1])
    with pytest.raises(bb.RelationValidationError):
        bb.Representation(base.field, 5, images, base.params)
    _report(3, "braid relations, commutation, perturbation gate")


def test_criterion_4_span_engine():
    rng = random.Random(4040)
    # (a) fixpoint property on 100 random (core, sides) instances
    #     (b) substitute-after-express identity on each instance
    instances = 0
    configs = [("burau", 4), ("burau", 5), ("burau", 6), ("lk", 4), ("lk", 5)]
    while instances < 100:
        kind, n = configs[instances % len(configs)]
        r = rep(kind, n)
        pair = bb.commuting_subgroups(r, bb.default_split(n))
        mode = instances % 3
        if mode == 0:
            sides = bb.SideSpec.two_sided(pair.b_gens)
        elif mode == 1:
            sides = bb.SideSpec.mixed(pair.b_gens, pair.a_gens)
        else:
            sides = bb.SideSpec.two_sided(pair.b_gens[:1])
        core = random_word_matrix(r, rng)
        basis = bb.build_decorated_basis(core, sides)
        assert basis.build_mul_count <= 50 * basis.bound_value()
        for e in basis.entries:
            for _, g in sides.left:
                assert basis.echelon.in_span((g @ e.value).a.reshape(-1))
            for _, g in sides.right:
                assert basis.echelon.in_span((e.value @ g).a.reshape(-1))
        target = basis.entries[rng.randrange(basis.dim)].value
        coeffs = bb.express(basis, target)
        assert bb.substitute(basis, coeffs, basis.core) == target
        instances += 1
    # (c) basis dimension vs brute-force word enumeration, 20 instances
    r = rep("lk", 4)
    f = r.field
    sides = bb.SideSpec.two_sided(bb.commuting_subgroups(r, 2).b_gens)
    g, g_inv = r.gen_images[2]
    for _ in range(20):
        core = random_word_matrix(r, rng)
        basis = bb.build_decorated_basis(core, sides)
        prev = -1
        for radius in range(1, 13):
            pows = [bb.SquareMatrix.identity(f, r.dim)]
            negs = [bb.SquareMatrix.identity(f, r.dim)]
            for _ in range(radius):
                pows.append(pows[-1] @ g)
                negs.append(negs[-1] @ g_inv)
            both = pows + negs[1:]
            rank = plain_rref_rank(
                [(a @ core @ b).a.reshape(-1).tolist() for a in both for b in both],
                f.p,
            )
            if rank == prev:
                break
            prev = rank
        assert basis.dim == rank
    _report(4, "span fixpoint, express/substitute identity, brute-force oracle")


def test_criterion_5_complexity_shape():
    # every build stays under 50x its r^3|U|^2 + r|W|^2 bound, and attack
    # cost grows polynomially: fitted log-log slope <= 10 over n in {4,5,6,8}
    muls = {1: [], 2: []}
    dims = {1: [], 2: []}
    for protocol_id in (1, 2):
        for n in (4, 5, 6, 8):
            seed = derive_trial_seed(5_000 + protocol_id, n)
            ok, report = _attack_exact(protocol_id, "lk", n, seed)
            assert ok
            for stage in report.stages:
                assert stage.build_mul_count <= 50 * stage.bound_value, (
                    f"protocol {protocol_id} n={n} stage {stage.stage}: "
                    f"{stage.build_mul_count} > 50*{stage.bound_value}"
                )
            muls[protocol_id].append(report.mul_count)
            dims[protocol_id].append(report.dim)
    import math

    for protocol_id in (1, 2):
        xs = [math.log(d) for d in dims[protocol_id]]
        ys = [math.log(m) for m in muls[protocol_id]]
        xbar = sum(xs) / len(xs)
        ybar = sum(ys) / len(ys)
        slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
            (x - xbar) ** 2 for x in xs
        )
        assert slope <= 10, f"protocol {protocol_id} slope {slope}"
    _report(5, "50x multiplication bound and slope <= 10")


def test_criterion_6_cli_determinism(tmp_path):
    def run_twice(args_fn, names):
        outs = []
        for tag in ("one", "two"):
            d = tmp_path / tag
            d.mkdir(exist_ok=True)
            assert cli_main(args_fn(d)) == 0
            outs.append([(d / name).read_bytes() for name in names])
        assert outs[0] == outs[1]

    run_twice(
        lambda d: ["simulate", "--n", "4", "--seed", "12",
                   "--out", str(d / "t.json"), "--fixture", str(d / "f.json")],
        ["t.json", "f.json"],
    )
    src = tmp_path / "one" / "t.json"
    run_twice(
        lambda d: ["attack", str(src), "--out", str(d / "r.json"),
                   "--dump-bases"],
        ["r.json", "r.bases.json"],
    )
    run_twice(
        lambda d: ["demo", "--n", "4", "--trials", "2", "--seed", "12",
                   "--out", str(d / "demo.json")],
        ["demo.json"],
    )
    run_twice(
        lambda d: ["bench", "--n-list", "4,5", "--seed", "12",
                   "--out", str(d / "bench.json")],
        ["bench.json"],
    )
    _report(6, "byte-identical artifacts across invocations")


def test_criterion_7_information_boundary():
    # the attack succeeds on the serialized public transcript alone
    for protocol_id, rep_kind, n in ((1, "lk", 5), (2, "lk", 5),
                                     (1, "burau", 6), (2, "burau", 6)):
        params = bb.ProtocolParams(
            protocol_id=protocol_id, n=n, rep_kind=rep_kind, seed=70 + n,
        )
        run = bb.run_protocol(params)
        text = bb.write_transcript(run, include_private=False)
        assert '"private"' not in text
        reloaded, fixture = bb.read_transcript(text)
        assert fixture is None
        report = bb.attack_transcript(reloaded)
        assert bb.verify_against_oracle(report, run)
    _report(7, "write -> read -> attack, no private state")
