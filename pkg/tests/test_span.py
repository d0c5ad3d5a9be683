"""Decorated-basis construction, expression, substitution, equivariance."""

import random

import numpy as np
import pytest

import braidbreak as bb

from helpers import (
    assert_span_complexity,
    field,
    honest_run,
    plain_rref_rank,
    random_word_matrix,
    rep,
)


def b_sides(r: bb.Representation, split: int) -> bb.SideSpec:
    return bb.SideSpec.two_sided(bb.commuting_subgroups(r, split).b_gens)


def test_empty_sides_single_entry():
    f = field()
    core = bb.SquareMatrix.from_rows(f, [[4, 1], [0, 3]])
    basis = bb.build_decorated_basis(core, bb.SideSpec((), ()))
    assert basis.dim == 1
    e = basis.entries[0]
    assert e.left.is_identity() and e.right.is_identity()
    assert e.value == core
    assert e.l_word == () and e.r_word == ()
    assert_span_complexity(basis)


def test_scalar_sides_fix_the_line():
    f = field()
    core = bb.SquareMatrix.identity(f, 2)
    c = 7
    scalar = bb.SquareMatrix.from_rows(f, [[c, 0], [0, c]])
    pair = bb.SideSpec.expand(
        [bb.LabeledGenerator(1, scalar, scalar.inverse())]
    )
    basis = bb.build_decorated_basis(core, bb.SideSpec(pair, pair))
    assert basis.dim == 1
    assert_span_complexity(basis)


def test_zero_core_rejected():
    f = field()
    with pytest.raises(ValueError):
        bb.build_decorated_basis(bb.SquareMatrix.zero(f, 3), bb.SideSpec((), ()))


def test_sidespec_validate():
    r = rep("lk", 4)
    spec = bb.SideSpec.two_sided(bb.commuting_subgroups(r, 2).b_gens)
    spec.validate()
    broken = bb.SideSpec(spec.left[:1], spec.right)  # inverse dropped
    with pytest.raises(ValueError):
        broken.validate()


def test_brute_force_word_enumeration_oracle():
    # single-generator B at n=4: closure must match the rank of the
    # exhaustive set {s3^a * core * s3^b}, computed by an independent RREF
    r = rep("lk", 4)
    f = r.field
    sides = b_sides(r, 2)
    g = r.gen_images[2][0]
    g_inv = r.gen_images[2][1]
    rng = random.Random(21)
    for _ in range(20):
        core = random_word_matrix(r, rng)
        basis = bb.build_decorated_basis(core, sides)
        assert_span_complexity(basis)
        prev_rank = -1
        for radius in range(1, 13):
            powers = [bb.SquareMatrix.identity(f, r.dim)]
            for _ in range(radius):
                powers.append(powers[-1] @ g)
            powers_neg = [bb.SquareMatrix.identity(f, r.dim)]
            for _ in range(radius):
                powers_neg.append(powers_neg[-1] @ g_inv)
            all_pows = powers + powers_neg[1:]
            vectors = [
                (a @ core @ b).a.reshape(-1).tolist()
                for a in all_pows
                for b in all_pows
            ]
            rank = plain_rref_rank(vectors, f.p)
            if rank == prev_rank:
                break
            prev_rank = rank
        assert basis.dim == rank, f"closure {basis.dim} != brute force {rank}"


def test_fixpoint_property_random_instances():
    rng = random.Random(22)
    for kind, n in (("burau", 5), ("lk", 4), ("lk", 5)):
        r = rep(kind, n)
        sides = b_sides(r, 2)
        for _ in range(4):
            core = random_word_matrix(r, rng)
            basis = bb.build_decorated_basis(core, sides)
            assert_span_complexity(basis)
            for e in basis.entries:
                for _, g in sides.left:
                    assert basis.echelon.in_span((g @ e.value).a.reshape(-1))
                for _, g in sides.right:
                    assert basis.echelon.in_span((e.value @ g).a.reshape(-1))


def test_provenance_integrity_and_words():
    rng = random.Random(23)
    r = rep("lk", 5)
    sides = bb.SideSpec.mixed(
        bb.commuting_subgroups(r, 2).b_gens,
        bb.commuting_subgroups(r, 2).a_gens,
    )
    core = random_word_matrix(r, rng)
    basis = bb.build_decorated_basis(core, sides)
    left_by_label = dict(sides.left)
    right_by_label = dict(sides.right)
    for e in basis.entries:
        assert e.left @ basis.core @ e.right == e.value
        l_prod = bb.SquareMatrix.identity(r.field, r.dim)
        for lab in e.l_word:
            l_prod = l_prod @ left_by_label[lab]
        assert l_prod == e.left
        r_prod = bb.SquareMatrix.identity(r.field, r.dim)
        for lab in e.r_word:
            r_prod = r_prod @ right_by_label[lab]
        assert r_prod == e.right


def test_express_examples():
    rng = random.Random(24)
    r = rep("lk", 4)
    basis = bb.build_decorated_basis(random_word_matrix(r, rng), b_sides(r, 2))
    k = min(2, basis.dim - 1)
    unit = bb.express(basis, basis.entries[k].value)
    expected = [0] * basis.dim
    expected[k] = 1
    assert list(unit) == expected
    core_coeffs = bb.express(basis, basis.core)
    assert list(core_coeffs) == [1] + [0] * (basis.dim - 1)


def test_express_construction_oracle():
    rng = random.Random(25)
    r = rep("lk", 4)
    f = r.field
    basis = bb.build_decorated_basis(random_word_matrix(r, rng), b_sides(r, 2))
    coeffs = [rng.randrange(f.p) for _ in range(basis.dim)]
    target = np.zeros((r.dim, r.dim), dtype=object)
    for c, e in zip(coeffs, basis.entries):
        target = (target + c * e.value.a.astype(object)) % f.p
    got = bb.express(basis, bb.SquareMatrix.from_rows(f, target.tolist()))
    assert list(got) == coeffs


def test_express_not_in_span():
    rng = random.Random(26)
    r = rep("lk", 4)
    f = r.field
    basis = bb.build_decorated_basis(random_word_matrix(r, rng), b_sides(r, 2))
    assert basis.dim < r.dim * r.dim
    outside = bb.SquareMatrix.from_rows(
        f, [[rng.randrange(f.p) for _ in range(r.dim)] for _ in range(r.dim)]
    )
    assert not basis.echelon.in_span(outside.a.reshape(-1))  # sanity
    with pytest.raises(bb.NotInSpanError):
        bb.express(basis, outside)


def test_substitute_identity_and_zero():
    rng = random.Random(27)
    r = rep("lk", 4)
    basis = bb.build_decorated_basis(random_word_matrix(r, rng), b_sides(r, 2))
    target = basis.entries[-1].value
    coeffs = bb.express(basis, target)
    assert bb.substitute(basis, coeffs, basis.core) == target
    zeros = np.zeros(basis.dim, dtype=np.int64)
    assert bb.substitute(basis, zeros, basis.core) == bb.SquareMatrix.zero(
        r.field, r.dim
    )


def test_substitute_coeff_length_checked():
    rng = random.Random(28)
    r = rep("lk", 4)
    basis = bb.build_decorated_basis(random_word_matrix(r, rng), b_sides(r, 2))
    with pytest.raises(ValueError):
        bb.substitute(basis, np.zeros(basis.dim + 1, dtype=np.int64), basis.core)


def test_substitute_protocol_stage_oracle():
    # stage-1 move on a real protocol-1 run: expanding x over the w-core
    # basis and swapping in u must give d1^-1 x d2^-1
    run = honest_run(1, "burau", 4, seed=31)
    t = run.transcript
    basis = bb.build_decorated_basis(t.w, bb.SideSpec.two_sided(t.b_gens))
    coeffs = bb.express(basis, t.x)
    got = bb.substitute(basis, coeffs, t.u)
    mm = run.private_state.matrices
    want = mm["d1"].inverse() @ t.x @ mm["d2"].inverse()
    assert got == want
    # and that equals the unshielded middle layer c1 h c2
    assert want == mm["c1"] @ mm["h"] @ mm["c2"]


def test_substitution_equivariance():
    # replacement = P core Q with P commuting with left words, Q with right
    rng = random.Random(29)
    r = rep("lk", 6)
    pair = bb.commuting_subgroups(r, 3)
    sides = bb.SideSpec.two_sided(pair.b_gens)
    core = random_word_matrix(r, rng)
    basis = bb.build_decorated_basis(core, sides)
    a_indices = [g.index for g in pair.a_gens]
    for _ in range(3):
        p_mat = bb.evaluate(r, bb.sample_word(rng, 6, a_indices, 3, 8))
        q_mat = bb.evaluate(r, bb.sample_word(rng, 6, a_indices, 3, 8))
        replacement = p_mat @ core @ q_mat
        target = basis.entries[rng.randrange(basis.dim)].value
        coeffs = bb.express(basis, target)
        assert bb.substitute(basis, coeffs, replacement) == p_mat @ target @ q_mat


def test_multi_core_path():
    rng = random.Random(30)
    r = rep("lk", 4)
    f = r.field
    sides = b_sides(r, 2)
    c1 = random_word_matrix(r, rng)
    c2 = random_word_matrix(r, rng)
    basis = bb.build_decorated_basis([c1, c2], sides)
    assert len(basis.cores) == 2
    assert {e.core_index for e in basis.entries} == {0, 1}
    for e in basis.entries:
        assert e.left @ basis.cores[e.core_index] @ e.right == e.value
    assert_span_complexity(basis)
    # a dependent second core contributes no seed entry
    doubled = c1.scale(2)
    basis2 = bb.build_decorated_basis([c1, doubled], sides)
    assert {e.core_index for e in basis2.entries} == {0}
    assert basis2.dim == bb.build_decorated_basis(c1, sides).dim
