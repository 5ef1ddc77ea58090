"""Artifact reports: plain text with fenced sections, or one JSON document.

Both forms carry the same fields and parse back into an EncoderArtifact.
"""

from __future__ import annotations

import json
import re

from eaqcc.checkmatrix import TrackedPair, format_gates, parse_checkmatrix, parse_gates
from eaqcc.construction import Blocks, DecompositionRecord, Dims, EncoderArtifact
from eaqcc.laurent import format_poly, parse_poly, parse_scalar
from eaqcc.polymatrix import Equivalence, PolyMatrix


class ReportError(ValueError):
    pass


def params_line(d: Dims) -> str:
    return f"params [[{d.n},{d.k};{d.c}]] s={d.s}"


def matrix_text(M: PolyMatrix) -> str:
    body = "".join(",".join(str(a) for a in row) + "\n" for row in M)
    return f"matrix rows={M.rows} cols={M.cols}\n" + body


def parse_matrix(text: str) -> PolyMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = re.match(r"^matrix rows=(\d+) cols=(\d+)$", lines[0].strip()) if lines else None
    if not m:
        raise ReportError("matrix section needs a 'matrix rows=.. cols=..' header")
    r, c = int(m[1]), int(m[2])
    rows = [[parse_scalar(t) for t in ln.split(",")] for ln in lines[1:]] if c else [[] for _ in range(r)]
    if len(rows) != r or any(len(x) != c for x in rows):
        raise ReportError(f"matrix body does not match {r}x{c}")
    return PolyMatrix(rows, r, c)


def _polys(xs) -> str:
    return " ".join(format_poly(x) for x in xs)


def _parse_polys(text: str):
    return [parse_poly(t) for t in text.split()]


_MATRICES = ("row_transform", "alice_transform", "row_ops", "E1prime", "E22a", "L")
_CHECKS = (
    "source", "big", "unencoded_stabilizer", "unencoded_info", "frame_stabilizer",
    "frame_info", "full_stabilizer", "info_matrix", "alice_generators",
)
_GATES = ("stage1", "encoder", "gates_finite", "gates_infinite", "decode")


def to_fields(art: EncoderArtifact) -> dict:
    d, rec, b = art.params, art.record, art.record.blocks
    f = {
        "params": params_line(d),
        "n": d.n, "k": d.k, "c": d.c, "s": d.s,
        "tier": art.tier.name,
        "subcode_rowops": art.subcode_rowops,
        "bob_order": list(art.bob_order),
        "L_reduced": b.L_reduced,
        "gamma1": _polys(b.gamma1),
        "gamma2": _polys(b.gamma2),
        "gamma": _polys(b.gamma),
        "notes": list(art.notes),
    }
    f["sections"] = {
        "source": rec.source.to_text(),
        "big": rec.big.to_text(),
        "row_transform": matrix_text(rec.row_transform),
        "alice_transform": matrix_text(art.alice_transform),
        "row_ops": matrix_text(art.row_ops),
        "E1prime": matrix_text(b.E1prime),
        "E22a": matrix_text(b.E22a),
        "L": matrix_text(b.L),
        "stage1": format_gates(rec.gates_stage1),
        "encoder": format_gates(art.encoder_gates),
        "gates_finite": format_gates(art.gates_finite),
        "gates_infinite": format_gates(art.gates_infinite),
        "decode": format_gates(art.decode_gates),
        "unencoded_stabilizer": art.unencoded.stabilizer.to_text(),
        "unencoded_info": art.unencoded.info.to_text(),
        "frame_stabilizer": art.frame.stabilizer.to_text(),
        "frame_info": art.frame.info.to_text(),
        "full_stabilizer": art.full_stabilizer.to_text(),
        "info_matrix": art.info_matrix.to_text(),
        "alice_generators": art.alice_generators.to_text(),
    }
    return f


def from_fields(f: dict) -> EncoderArtifact:
    try:
        sec = f["sections"]
        d = Dims(int(f["n"]), int(f["k"]), int(f["c"]), int(f["s"]))
        d.check()
        mats = {k: parse_matrix(sec[k]) for k in _MATRICES}
        chk = {k: parse_checkmatrix(sec[k]) for k in _CHECKS}
        gates = {k: parse_gates(sec[k]) for k in _GATES}
        blocks = Blocks(
            E1prime=mats["E1prime"],
            gamma1=_parse_polys(f["gamma1"]),
            gamma2=_parse_polys(f["gamma2"]),
            E22a=mats["E22a"],
            L=mats["L"],
            gamma=_parse_polys(f["gamma"]),
            L_reduced=bool(f["L_reduced"]),
        )
        rec = DecompositionRecord(chk["source"], d, gates["stage1"], mats["row_transform"], chk["big"], blocks)
        return EncoderArtifact(
            params=d,
            record=rec,
            encoder_gates=gates["encoder"],
            full_stabilizer=chk["full_stabilizer"],
            info_matrix=chk["info_matrix"],
            alice_generators=chk["alice_generators"],
            decode_gates=gates["decode"],
            unencoded=TrackedPair(chk["unencoded_stabilizer"], chk["unencoded_info"], d.c),
            frame=TrackedPair(chk["frame_stabilizer"], chk["frame_info"], d.c),
            row_ops=mats["row_ops"],
            subcode_rowops=bool(f["subcode_rowops"]),
            tier=Equivalence[f["tier"]],
            bob_order=[int(x) for x in f["bob_order"]],
            alice_transform=mats["alice_transform"],
            notes=list(f.get("notes", [])),
        )
    except ReportError:
        raise
    except (KeyError, ValueError, TypeError, IndexError) as e:
        raise ReportError(f"malformed artifact report: {e}") from e


# text form --------------------------------------------------------------------

_SCALARS = ("tier", "subcode_rowops", "bob_order", "L_reduced", "gamma1", "gamma2", "gamma")


def _scalar_text(v) -> str:
    if isinstance(v, bool):
        return "on" if v else "off"
    if isinstance(v, list):
        return " ".join(map(str, v))
    return str(v)


def render_text(art: EncoderArtifact, extra: list[tuple[str, str]] = ()) -> str:
    """Text report.  ``extra`` appends further fenced sections (name, body)."""
    f = to_fields(art)
    out = ["eaqcc artifact", f["params"]]
    for k in _SCALARS:
        out.append(f"{k}: {_scalar_text(f[k])}")
    for note in f["notes"]:
        out.append(f"note: {note}")
    out.append("")
    for name, body in list(f["sections"].items()) + list(extra):
        out.append(f"```{name}")
        out.append(body.rstrip("\n"))
        out.append("```")
    return "\n".join(out) + "\n"


_FENCE = re.compile(r"^```(\w+)\n(.*?)^```$", re.S | re.M)
_PARAMS = re.compile(r"^params \[\[(\d+),(\d+);(\d+)\]\] s=(\d+)$", re.M)


def parse_text(text: str) -> EncoderArtifact:
    if not text.startswith("eaqcc artifact"):
        raise ReportError("not an artifact report (missing 'eaqcc artifact' header)")
    m = _PARAMS.search(text)
    if not m:
        raise ReportError("missing params line")
    head = text.split("```", 1)[0]
    kv = {}
    notes = []
    for ln in head.splitlines():
        if ln.startswith("note: "):
            notes.append(ln[6:])
        elif ": " in ln or ln.endswith(":"):
            k, _, v = ln.partition(":")
            kv[k.strip()] = v.strip()
    f = {"n": m[1], "k": m[2], "c": m[3], "s": m[4], "notes": notes}
    for k in _SCALARS:
        if k not in kv:
            raise ReportError(f"missing field {k!r}")
    f.update(kv)
    f["subcode_rowops"] = kv["subcode_rowops"] == "on"
    f["L_reduced"] = kv["L_reduced"] == "on"
    f["bob_order"] = kv["bob_order"].split()
    f["sections"] = {name: body for name, body in _FENCE.findall(text)}
    return from_fields(f)


def render_structured(art: EncoderArtifact, extra: dict | None = None) -> str:
    f = to_fields(art)
    if extra:
        f.update(extra)
    return json.dumps(f, indent=2, sort_keys=True) + "\n"


def parse_structured(text: str) -> EncoderArtifact:
    try:
        f = json.loads(text)
    except json.JSONDecodeError as e:
        raise ReportError(f"invalid structured report: {e}") from e
    if not isinstance(f, dict):
        raise ReportError("structured report must be an object")
    return from_fields(f)


def parse_report(text: str) -> EncoderArtifact:
    """Accept either report form."""
    return parse_structured(text) if text.lstrip().startswith("{") else parse_text(text)
