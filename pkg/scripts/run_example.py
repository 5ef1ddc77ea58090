"""Construct, verify and enhance the [[4,2;2]] example, in both Bob frames."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from eaqcc.construction import assemble_encoder
from eaqcc.enhancement import build_piggyback, format_enhanced
from eaqcc.gf4 import import_gf4, parse_gf4
from eaqcc.laurent import parse_poly
from eaqcc.polymatrix import PolyMatrix
from eaqcc.report import params_line
from eaqcc.verify import verify_artifact


@dataclass(frozen=True)
class ExampleConfig:
    generator: str = "1W10|1101"
    window: int = 12
    shifts: int = 5
    reference_frame: bool = True


REFERENCE_E1 = [["D", "0"], ["1+D^-1+D^2", "1+D^-2"]]


def run(cfg: ExampleConfig) -> None:
    S = import_gf4(parse_gf4(cfg.generator))
    print("imported check matrix:")
    print(S.to_text(), end="")
    kw = {}
    if cfg.reference_frame:
        kw = {"bob_order": [1, 0], "e1_target": PolyMatrix([[parse_poly(e) for e in r] for r in REFERENCE_E1])}
    art = assemble_encoder(S, **kw)
    print(params_line(art.params), f"tier={art.tier.name}")
    print(f"finite gates: {len(art.gates_finite)}  infinite: {len(art.gates_infinite)}")
    print("full stabilizer:")
    print(art.full_stabilizer.to_text(), end="")
    rep = verify_artifact(art, cfg.window, cfg.shifts)
    print("\n".join(rep.lines()))
    pb = build_piggyback(art)
    print("\n".join(format_enhanced(art)))
    print("piggyback operators:")
    print(pb.operators.to_text(), end="")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--generator", default=ExampleConfig.generator)
    ap.add_argument("--window", type=int, default=ExampleConfig.window)
    ap.add_argument("--shifts", type=int, default=ExampleConfig.shifts)
    ap.add_argument("--default-frame", action="store_true", help="skip the Bob-frame alignment")
    a = ap.parse_args()
    run(ExampleConfig(a.generator, a.window, a.shifts, not a.default_frame))


if __name__ == "__main__":
    main()
