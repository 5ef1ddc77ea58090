"""Batch experiment: run the full pipeline on random full-rank check matrices.

Prints one summary line per setting plus aggregate counts: invariant
failures, oracle windows used, equivalence tiers, ebit counts and runtime.
"""

from __future__ import annotations

import argparse
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from eaqcc.construction import assemble_encoder, check_artifact
from eaqcc.enhancement import build_piggyback
from eaqcc.oracle import commutation_oracle, compare_syndromes, min_syndrome_window, min_window
from eaqcc.sampling import random_full_rank


@dataclass(frozen=True)
class BatchConfig:
    count: int = 200
    seed: int = 0
    max_n: int = 6
    max_r: int = 4
    max_deg: int = 2
    window: int = 10
    shifts: int = 3
    syndromes: bool = True
    workers: int = 1


def run_one(cfg: BatchConfig, i: int) -> tuple[Counter, Counter, Counter]:
    """Both subcode settings on input i; each input has its own seed so workers do not matter."""
    S = random_full_rank(random.Random(cfg.seed * 1_000_003 + i), cfg.max_n, cfg.max_r, cfg.max_deg)
    stats, tiers, ebits = Counter(), Counter(), Counter()
    for subcode in (True, False):
        art = assemble_encoder(S, subcode_rowops=subcode)
        if not all(check_artifact(art).values()):
            stats["invariant_failures"] += 1
        F = art.full_stabilizer
        W = max(cfg.window, min_window(F, cfg.shifts))
        stats["window_default" if W == cfg.window else "window_widened"] += 1
        rep = commutation_oracle(F, W, cfg.shifts)
        if not rep.ok or rep.anticommuting:
            stats["oracle_failures"] += 1
        if cfg.syndromes:
            Ws = max(12, min_syndrome_window(S), min_syndrome_window(art.alice_generators))
            if not compare_syndromes(S, art.alice_generators, art.alice_transform, Ws).ok:
                stats["syndrome_failures"] += 1
        if art.params.s:
            build_piggyback(art)
            stats["piggybacks"] += 1
        tiers[(subcode, art.tier.name)] += 1
        ebits[(art.params.c, art.params.s)] += 1
    return stats, tiers, ebits


def run(cfg: BatchConfig) -> dict:
    stats, tiers, ebits = Counter(), Counter(), Counter()
    t0 = time.perf_counter()
    idx = range(cfg.count)
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(run_one, [cfg] * cfg.count, idx, chunksize=8))
    else:
        parts = [run_one(cfg, i) for i in idx]
    for a, b, c in parts:
        stats.update(a)
        tiers.update(b)
        ebits.update(c)
    return {
        "config": asdict(cfg),
        "seconds": round(time.perf_counter() - t0, 2),
        "stats": dict(sorted(stats.items())),
        "tiers": {f"subcode={'on' if k[0] else 'off'} {k[1]}": v for k, v in sorted(tiers.items())},
        "ebits_c_s": {f"c={c} s={s}": v for (c, s), v in sorted(ebits.items())},
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(BatchConfig()).items():
        flag = "--" + name.replace("_", "-")
        if isinstance(default, bool):
            ap.add_argument(flag, type=lambda s: s.lower() in ("1", "true", "yes", "on"), default=default)
        else:
            ap.add_argument(flag, type=type(default), default=default)
    res = run(BatchConfig(**vars(ap.parse_args())))
    for k, v in res.items():
        print(f"{k}: {v}")


if __name__ == "__main__":
    main()
