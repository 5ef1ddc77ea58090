"""``eaqcc import|construct|verify|enhance [flags] <file>``

Exit codes: 0 success, 1 usage, 2 parse, 3 precondition, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from eaqcc.checkmatrix import CheckMatrix, FormatError, parse_checkmatrix
from eaqcc.construction import ConstructionError, assemble_encoder
from eaqcc.enhancement import TRADEOFF_NOTE, EnhancementError, build_piggyback, format_enhanced
from eaqcc.gf4 import GF4ParseError, import_gf4, parse_gf4_file
from eaqcc.laurent import PolyParseError, parse_scalar
from eaqcc.oracle import WindowTooSmall
from eaqcc.polymatrix import PolyMatrix
from eaqcc.report import ReportError, params_line, parse_report, render_structured, render_text
from eaqcc.verify import verify_artifact

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3, 4
PARSE_ERRORS = (FormatError, GF4ParseError, PolyParseError, ReportError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: Path
    window: int = 12
    shifts: int = 5
    subcode_rowops: bool = True
    enhance: bool = True
    out: Path | None = None
    fmt: str = "text"
    bob_order: tuple[int, ...] | None = None
    e1_target: str | None = None

    def validate(self) -> None:
        if self.window < 4:
            raise UsageError("--window must be at least 4")
        if self.shifts < 0:
            raise UsageError("--shifts must be non-negative")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eaqcc", description="Entanglement-assisted quantum convolutional encoder synthesis.")
    p.add_argument("command", choices=["import", "construct", "verify", "enhance"])
    p.add_argument("file", type=Path)
    p.add_argument("--window", type=int, default=12, help="oracle window in frames (default 12)")
    p.add_argument("--shifts", type=int, default=5, help="check relative shifts -j..j (default 5)")
    p.add_argument("--no-subcode-rowops", action="store_true", help="skip the Gamma row premultiplications")
    p.add_argument("--no-enhance", action="store_true", help="omit the enhancement section from construct")
    p.add_argument("--format", choices=["text", "structured"], default="text")
    p.add_argument("--out", type=Path)
    p.add_argument("--bob-order", help="comma-separated Bob qubit for each ebit, e.g. 1,0")
    p.add_argument("--e1-target", help="target unit-ebit block of E1', rows separated by ';'")
    return p


def parse_config(argv) -> RunConfig:
    a = build_parser().parse_args(argv)
    bob = None
    if a.bob_order:
        try:
            bob = tuple(int(x) for x in a.bob_order.split(","))
        except ValueError as e:
            raise UsageError(f"bad --bob-order: {a.bob_order!r}") from e
    cfg = RunConfig(
        a.command, a.file, a.window, a.shifts, not a.no_subcode_rowops, not a.no_enhance,
        a.out, a.format, bob, a.e1_target,
    )
    cfg.validate()
    return cfg


def _read_matrix(text: str) -> CheckMatrix:
    if text.lstrip().startswith("gf4"):
        return import_gf4(parse_gf4_file(text))
    return parse_checkmatrix(text)


def _parse_target(text: str) -> PolyMatrix:
    rows = [[parse_scalar(t) for t in r.split(",")] for r in text.split(";")]
    return PolyMatrix(rows)


def _enhancement_lines(art) -> list[str]:
    pb = build_piggyback(art)
    out = format_enhanced(art)
    out.append(f"note: {TRADEOFF_NOTE}")
    out.append("operators (unencoded frame):")
    out.append(pb.operators.to_text().rstrip("\n"))
    out.append("operators (encoded):")
    out.append(pb.encoded.to_text().rstrip("\n"))
    return out


def cmd_import(cfg: RunConfig, text: str) -> tuple[int, str]:
    S = import_gf4(parse_gf4_file(text))
    if cfg.fmt == "structured":
        doc = {"n": S.n, "rows": S.rows, "checkmatrix": S.to_text(),
               "z": [[str(a) for a in r] for r in S.z], "x": [[str(a) for a in r] for r in S.x]}
        return EXIT_OK, json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return EXIT_OK, S.to_text()


def cmd_construct(cfg: RunConfig, text: str) -> tuple[int, str]:
    S = _read_matrix(text)
    target = _parse_target(cfg.e1_target) if cfg.e1_target else None
    art = assemble_encoder(S, cfg.subcode_rowops, list(cfg.bob_order) if cfg.bob_order else None, e1_target=target)
    sections: list[tuple[str, str]] = []
    try:
        ver = verify_artifact(art, cfg.window, cfg.shifts)
        sections.append(("verification", "\n".join(ver.lines()) + "\n"))
    except WindowTooSmall as e:
        sections.append(("verification", f"skipped: {e}\n"))
    if cfg.enhance:
        if art.params.s:
            sections.append(("enhancement", "\n".join(_enhancement_lines(art)) + "\n"))
        else:
            sections.append(("enhancement", "\n".join(format_enhanced(art)) + "\nno extra-entanglement rows to piggyback on\n"))
    if cfg.fmt == "structured":
        return EXIT_OK, render_structured(art, {"extra": dict(sections)})
    return EXIT_OK, render_text(art, sections)


def cmd_verify(cfg: RunConfig, text: str) -> tuple[int, str]:
    art = parse_report(text)
    rep = verify_artifact(art, cfg.window, cfg.shifts)
    lines = [params_line(art.params)] + rep.lines()
    if cfg.fmt == "structured":
        body = json.dumps({"params": params_line(art.params), "checks": rep.checks, "ok": rep.ok,
                           "details": rep.details}, indent=2, sort_keys=True) + "\n"
    else:
        body = "\n".join(lines) + "\n"
    return (EXIT_OK if rep.ok else EXIT_VERIFY), body


def cmd_enhance(cfg: RunConfig, text: str) -> tuple[int, str]:
    art = parse_report(text)
    lines = _enhancement_lines(art)
    if cfg.fmt == "structured":
        pb = build_piggyback(art)
        (n, k, s, c), tele = pb.enhanced_params, pb.teleport_params
        doc = {
            "enhanced": f"[[{n},{k}:{s};{c}]]",
            "teleport": f"[[{tele[0]},{tele[1]};{tele[2]}]]" if tele else None,
            "operators": pb.operators.to_text(),
            "encoded": pb.encoded.to_text(),
            "note": TRADEOFF_NOTE,
        }
        return EXIT_OK, json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return EXIT_OK, "\n".join(lines) + "\n"


COMMANDS = {"import": cmd_import, "construct": cmd_construct, "verify": cmd_verify, "enhance": cmd_enhance}


def run(argv) -> tuple[int, str, str]:
    """Returns (exit code, stdout text, stderr text)."""
    try:
        cfg = parse_config(argv)
    except UsageError as e:
        return EXIT_USAGE, "", f"usage error: {e}\n{build_parser().format_usage()}"
    try:
        text = cfg.path.read_text()
    except OSError as e:
        return EXIT_USAGE, "", f"cannot read {cfg.path}: {e}\n"
    try:
        code, out = COMMANDS[cfg.command](cfg, text)
    except PARSE_ERRORS as e:
        return EXIT_PARSE, "", f"parse error: {e}\n"
    except (ConstructionError, EnhancementError, WindowTooSmall) as e:
        return EXIT_PRECONDITION, "", f"error: {e}\n"
    if cfg.out:
        cfg.out.write_text(out)
        out = ""
    return code, out, ""


def main(argv=None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
