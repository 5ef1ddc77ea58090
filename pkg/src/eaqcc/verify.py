"""End-to-end re-verification of an artifact from its recorded contents only."""

from __future__ import annotations

from dataclasses import dataclass, field

from eaqcc.checkmatrix import GateError, is_commuting
from eaqcc.construction import decode_replay, expected_tier
from eaqcc.oracle import WindowTooSmall, commutation_oracle, compare_syndromes, min_syndrome_window, min_window
from eaqcc.polymatrix import rank, row_equivalent


@dataclass
class VerifyReport:
    checks: dict[str, bool] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> list[str]:
        out = [f"check {k}: {'pass' if v else 'FAIL'}" for k, v in self.checks.items()]
        out.append(f"verdict: {'pass' if self.ok else 'FAIL'}")
        return out + self.details


def verify_artifact(art, window: int = 12, max_shift: int = 5) -> VerifyReport:
    """Run every check; raises WindowTooSmall when ``window`` cannot hold the rows."""
    need = max(min_window(art.full_stabilizer, max_shift),
               min_syndrome_window(art.alice_generators), min_syndrome_window(art.record.source))
    if window < need:
        raise WindowTooSmall(f"window {window} is too small for this artifact; use --window {need} or more")
    d = art.params
    rep = VerifyReport()
    c = rep.checks
    src = art.record.source

    c["c_equals_rank_x"] = d.c == rank(src.x)
    c["stage1_replay"] = art.record.replay() == art.record.big

    try:
        enc = art.unencoded.apply_all(art.encoder_gates)
        replayed = enc.stabilizer.left_multiply(art.row_ops)
        c["encoder_replay"] = replayed == art.full_stabilizer and enc.info == art.info_matrix
        c["replay_commuting"] = is_commuting(replayed)[0]
        c["bob_untouched"] = True
    except GateError as e:
        c["bob_untouched"] = False
        rep.details.append(f"encoder: {e}")

    ok, bad = is_commuting(art.full_stabilizer)
    c["commuting"] = ok and art.full_stabilizer.rows == d.r + d.c
    for i, j, v in bad[:10]:
        rep.details.append(f"symbolic product rows {i},{j} = {v}")

    alice = art.full_stabilizer.select(range(d.c, d.c + d.r)).columns(range(d.c, d.c + d.n))
    tier = row_equivalent(art.alice_generators.as_matrix(), src.as_matrix())
    c["alice_block"] = alice == art.alice_generators
    c["alice_transform"] = src.left_multiply(art.alice_transform) == art.alice_generators
    c["equivalence"] = tier == art.tier == expected_tier(art)
    rep.details.append(f"equivalence tier: {tier.name}")

    try:
        dec = decode_replay(art)
        c["decoder_restores_info"] = dec.info == art.unencoded.info
    except GateError as e:
        c["decoder_restores_info"] = False
        rep.details.append(f"decoder: {e}")
    c["decoder_finite"] = all(g.finite for g in art.decode_gates)
    c["infinite_on_alice_only"] = all(min(g.qubits) >= d.c for g in art.encoder_gates if not g.finite)

    orc = commutation_oracle(art.full_stabilizer, window, max_shift)
    c["oracle"] = orc.ok and not orc.anticommuting
    rep.details += orc.lines()

    syn = compare_syndromes(src, art.alice_generators, art.alice_transform, window)
    c["syndromes"] = syn.ok
    rep.details.append(f"syndromes: errors={syn.errors} classes={syn.classes} "
                       f"partition_equal={syn.partitions_equal} transform_consistent={syn.transform_consistent}")
    return rep
