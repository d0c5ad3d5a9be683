"""The linear decomposition attack: recover the shared key from a transcript.

Three stages, each one basis build + express + substitute. For protocol 1
every subspace is a two-sided B-module (left and right multipliers from B);
for protocol 2 the left multipliers come from B and the right ones from A.

    stage 1: basis over core w, express x, swap the core for u   -> M1
    stage 2: basis over core h, express y, swap the core for M1  -> M2
    stage 3: basis over core z, express v, swap the core for M2  -> K

Stage 1 works because x is a B-word times w times a B-word (resp. B..A for
protocol 2), so x lies in the built span; u differs from w by outer private
factors from the opposite subgroup, which commute past every basis word and
cancel against the shields on x. Stages 2 and 3 repeat the move on h and z.
Only transcript fields are consumed; the honest run's private state has no
access path into this module.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .errors import MalformedTranscriptError, NotInSpanError
from .matrix import SquareMatrix
from .protocol import SCHEMA_VERSION, Transcript
from .span import DecoratedBasis, SideSpec, build_decorated_basis, express, substitute


@dataclass
class StageReport:
    """One attack stage: its basis size and cost, plus the stage output."""

    stage: int
    basis_dim: int
    u_size: int
    coeff_count: int
    build_mul_count: int
    bound_value: int
    intermediate: SquareMatrix | None
    basis: DecoratedBasis


@dataclass
class AttackReport:
    protocol_id: int
    n: int
    rep_kind: str
    p: int
    dim: int
    recovered_k: SquareMatrix
    stage1: StageReport  # basis dim q (core w)
    stage2: StageReport  # basis dim s (core h)
    stage3: StageReport  # basis dim r (core z)
    op_counts: tuple[int, int, int]  # (mul, add, inv) over the whole attack
    wall_time: float

    @property
    def stages(self) -> tuple[StageReport, StageReport, StageReport]:
        return (self.stage1, self.stage2, self.stage3)

    @property
    def stage_dims(self) -> tuple[int, int, int]:
        """(q, s, r): dims of the w-, h-, z-core bases."""
        return (self.stage1.basis_dim, self.stage2.basis_dim, self.stage3.basis_dim)

    @property
    def mul_count(self) -> int:
        return self.op_counts[0]

    @property
    def bound_value(self) -> int:
        """Sum of the per-stage r^3|U|^2 + r|W|^2 bounds."""
        return sum(s.bound_value for s in self.stages)

    def to_document(self, include_timings: bool = False) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "protocol_id": self.protocol_id,
            "n": self.n,
            "rep_kind": self.rep_kind,
            "p": self.p,
            "dim": self.dim,
            "recovered_k": self.recovered_k.to_rows(),
            "stages": [
                {
                    "stage": s.stage,
                    "basis_dim": s.basis_dim,
                    "u_size": s.u_size,
                    "coeff_count": s.coeff_count,
                    "mul_count": s.build_mul_count,
                    "bound_value": s.bound_value,
                }
                for s in self.stages
            ],
            "op_counts": {
                "mul": self.op_counts[0],
                "add": self.op_counts[1],
                "inv": self.op_counts[2],
            },
        }
        if include_timings:
            doc["wall_time_ms"] = round(self.wall_time * 1000.0, 3)
        return doc

    def to_text(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_document(include_timings), indent=1) + "\n"


def _stage(
    stage_no: int,
    core: SquareMatrix,
    target: SquareMatrix,
    replacement: SquareMatrix,
    sides: SideSpec,
) -> tuple[SquareMatrix, StageReport]:
    basis = build_decorated_basis(core, sides)
    try:
        coeffs = express(basis, target)
    except NotInSpanError as e:
        raise MalformedTranscriptError(
            stage_no, f"stage {stage_no}: {e}"
        ) from e
    out = substitute(basis, coeffs, replacement)
    report = StageReport(
        stage=stage_no,
        basis_dim=basis.dim,
        u_size=basis.u_size,
        coeff_count=int(np.asarray(coeffs).shape[0]),
        build_mul_count=basis.build_mul_count,
        bound_value=basis.bound_value(),
        intermediate=out,
        basis=basis,
    )
    return out, report


def _attack(t: Transcript, sides: SideSpec) -> AttackReport:
    field = t.field
    snap = field.ops.snapshot()
    t0 = time.perf_counter()
    m1, s1 = _stage(1, t.w, t.x, t.u, sides)
    m2, s2 = _stage(2, t.h, t.y, m1, sides)
    key, s3 = _stage(3, t.z, t.v, m2, sides)
    s3.intermediate = None  # stage 3 output is the recovered key itself
    wall = time.perf_counter() - t0
    return AttackReport(
        protocol_id=t.protocol_id,
        n=t.n,
        rep_kind=t.rep_kind,
        p=t.p,
        dim=t.dim,
        recovered_k=key,
        stage1=s1,
        stage2=s2,
        stage3=s3,
        op_counts=field.ops.delta(snap),
        wall_time=wall,
    )


def attack_protocol_1(t: Transcript) -> AttackReport:
    """Recover K from a protocol-1 transcript (two-sided B subspaces)."""
    if t.protocol_id != 1:
        raise ValueError(f"transcript is for protocol {t.protocol_id}, not 1")
    return _attack(t, SideSpec.two_sided(t.b_gens))


def attack_protocol_2(t: Transcript) -> AttackReport:
    """Recover K from a protocol-2 transcript (left B, right A subspaces)."""
    if t.protocol_id != 2:
        raise ValueError(f"transcript is for protocol {t.protocol_id}, not 2")
    return _attack(t, SideSpec.mixed(t.b_gens, t.a_gens))


def attack_transcript(t: Transcript) -> AttackReport:
    return attack_protocol_1(t) if t.protocol_id == 1 else attack_protocol_2(t)


def verify_against_oracle(report: AttackReport, run) -> bool:
    """True iff the recovered key equals the honest run's key, entrywise."""
    honest = run.k_alice if hasattr(run, "k_alice") else run
    if report.recovered_k.dim != honest.dim:
        raise ValueError(
            f"dimension mismatch: recovered {report.recovered_k.dim}, "
            f"honest {honest.dim}"
        )
    return report.recovered_k == honest
