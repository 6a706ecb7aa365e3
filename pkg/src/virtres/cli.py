"""Command line interface: ``virtres resolve|diagonal|check``.

Input documents are JSON. A fan is either ``{"rays": [[int]], "max_cones":
[[int]]}`` or ``{"product": [fan, fan]}``. A document holds exactly one of

* ``"fan"``: the identity embedding of that fan,
* ``"embedding"``: ``{"ambient_fan": fan, "domain_rank": int, "p": [[int]]}``,
* ``"diagonal"``: a fan, embedded diagonally in its square,

plus optional ``"options"`` (``oracle_bound``, ``torsion_cap``, ``format``).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

import jsonschema

from .errors import IndexOutOfRange, SchemaError, TorsionClassGroupUnsupported, VirtresError
from .freeres import BettiTable, FreeComplex, betti_table
from .toricdata import Fan, ToricEmbedding, diagonal_embedding, embedding, identity_embedding, \
    product_fan
from .virtualver import (DEFAULT_ORACLE_BOUND, DEFAULT_TORSION_CAP, PipelineResult,
                         VerificationReport, run_pipeline)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILED = 2
EXIT_TORSION = 3

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

INPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "fan": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"rays": _INT_MATRIX, "max_cones": _INT_MATRIX},
                    "required": ["rays", "max_cones"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {"product": {"type": "array", "items": {"$ref": "#/$defs/fan"},
                                               "minItems": 2, "maxItems": 2}},
                    "required": ["product"],
                    "additionalProperties": False,
                },
            ]
        },
    },
    "type": "object",
    "properties": {
        "fan": {"$ref": "#/$defs/fan"},
        "diagonal": {"$ref": "#/$defs/fan"},
        "embedding": {
            "type": "object",
            "properties": {
                "ambient_fan": {"$ref": "#/$defs/fan"},
                "domain_rank": {"type": "integer", "minimum": 0},
                "p": _INT_MATRIX,
            },
            "required": ["ambient_fan", "domain_rank", "p"],
            "additionalProperties": False,
        },
        "options": {
            "type": "object",
            "properties": {
                "oracle_bound": {"type": "integer", "minimum": 0},
                "torsion_cap": {"type": "integer", "minimum": 0},
                "format": {"enum": ["text", "json"]},
            },
            "additionalProperties": False,
        },
    },
    "oneOf": [{"required": ["fan"]}, {"required": ["embedding"]}, {"required": ["diagonal"]}],
    "additionalProperties": False,
}


@dataclass
class InputDocument:
    kind: str  # "fan", "embedding" or "diagonal"
    fan: Fan
    domain_rank: int | None = None
    p: list | None = None
    options: dict = field(default_factory=dict)

    def to_embedding(self) -> ToricEmbedding:
        if self.kind == "fan":
            return identity_embedding(self.fan)
        if self.kind == "diagonal":
            return diagonal_embedding(self.fan)
        return embedding(self.fan, self.domain_rank, self.p)


def _json_path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _build_fan(d: dict, path: str) -> Fan:
    if "product" in d:
        f1 = _build_fan(d["product"][0], path + ".product[0]")
        f2 = _build_fan(d["product"][1], path + ".product[1]")
        return product_fan(f1, f2)
    rays = d["rays"]
    width = len(rays[0]) if rays else 0
    for k, r in enumerate(rays):
        if len(r) != width:
            raise SchemaError(f"{path}.rays[{k}]", f"expected {width} entries, got {len(r)}")
    for k, cone in enumerate(d["max_cones"]):
        for i in cone:
            if not 0 <= i < len(rays):
                raise IndexOutOfRange(f"{path}.max_cones[{k}]",
                                      f"ray index {i} out of range for {len(rays)} rays")
    try:
        return Fan(width, rays, d["max_cones"])
    except VirtresError as exc:
        raise SchemaError(path, str(exc)) from exc


def parse_input(text: str) -> InputDocument:
    """Validate a JSON document and assemble the fan data it describes."""
    if not text.strip():
        raise SchemaError("", "empty document")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from exc
    validator = jsonschema.Draft202012Validator(INPUT_SCHEMA)
    error = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if error is not None:
        raise SchemaError(_json_path(error.absolute_path), error.message)
    options = dict(data.get("options", {}))
    if "fan" in data:
        return InputDocument("fan", _build_fan(data["fan"], ".fan"), options=options)
    if "diagonal" in data:
        return InputDocument("diagonal", _build_fan(data["diagonal"], ".diagonal"), options=options)
    emb = data["embedding"]
    fan = _build_fan(emb["ambient_fan"], ".embedding.ambient_fan")
    rank = emb["domain_rank"]
    p = emb["p"]
    if len(p) != rank:
        raise SchemaError(".embedding.p", f"expected {rank} rows, got {len(p)}")
    for k, row in enumerate(p):
        if len(row) != fan.lattice_rank:
            raise SchemaError(f".embedding.p[{k}]",
                              f"expected {fan.lattice_rank} entries, got {len(row)}")
    return InputDocument("embedding", fan, rank, p, options)


# ---------------------------------------------------------------------------
# rendering


def twist_str(a) -> str:
    vals = a.as_list() if hasattr(a, "as_list") else list(a)
    if not any(vals):
        return "T"
    return "T(" + ",".join(str(-v) for v in vals) + ")"


def betti_lines(b: BettiTable) -> list:
    """One line per homological degree, e.g. ``F1: T(-1,-1) ⊕ T(-2,-1)^2``."""
    lines = []
    for i in range(len(b.total_ranks())):
        row = b.at(i)
        parts = []
        for t in sorted(row, key=lambda t: (sum(t), t)):
            r = row[t]
            parts.append(twist_str(t) + (f"^{r}" if r > 1 else ""))
        lines.append(f"F{i}: " + (" ⊕ ".join(parts) if parts else "0"))
    return lines


_TWIST = re.compile(r"T(?:\(([-\d,]+)\))?(?:\^(\d+))?$")


def parse_betti_lines(lines, width: int) -> BettiTable:
    """Inverse of :func:`betti_lines`; ``width`` is the length of a twist."""
    m = {}
    for line in lines:
        head, _, body = line.partition(":")
        i = int(head.strip()[1:])
        body = body.strip()
        if body == "0":
            continue
        for part in body.split(" ⊕ "):
            match = _TWIST.match(part.strip())
            if not match:
                raise ValueError(f"cannot parse twist {part!r}")
            t = tuple(-int(a) for a in match.group(1).split(",")) if match.group(1) \
                else (0,) * width
            m[(i, t)] = m.get((i, t), 0) + int(match.group(2) or 1)
    return BettiTable.from_mapping(m)


def result_to_dict(res: PipelineResult) -> dict:
    ring = res.embedding.ambient.ring
    group = ring.class_group
    nd = res.normalization
    return {
        "ring": {
            "variables": list(ring.names),
            "degrees": [d.as_list() for d in ring.degrees],
            "class_group": {"free_rank": group.free_rank,
                            "torsion": list(group.torsion_invariants)},
        },
        "ideal": [ring.format(f) for f in res.ideal.groebner()],
        "normalization": {
            "hilbert_basis": [list(h) for h in nd.hilbert_basis],
            "module_generators": [list(c) for c in nd.module_generators],
            "generator_degrees": [d.as_list() for d in nd.generator_degrees],
        },
        "resolution": res.resolution.to_dict(),
        "betti": betti_table(res.resolution).to_dict(),
        "report": res.report.to_dict(),
    }


def render_text(res: PipelineResult) -> str:
    ring = res.embedding.ambient.ring
    group = ring.class_group
    parts = ([f"Z^{group.free_rank}"] if group.free_rank > 1 else ["Z"] * group.free_rank)
    cl = " + ".join(parts + [f"Z/{m}" for m in group.torsion_invariants]) or "0"
    out = [f"ring: k[{', '.join(ring.names)}] graded by Cl = {cl}"]
    out.append("degrees: " + ", ".join(f"{n} {d}" for n, d in zip(ring.names, ring.degrees)))
    out.append("ideal:")
    out += [f"  {ring.format(f)}" for f in res.ideal.groebner()]
    nd = res.normalization
    out.append(f"normalization: {len(nd.module_generators)} module generator(s) of degrees "
               + " ".join(str(d) for d in nd.generator_degrees))
    F = res.resolution
    out.append("resolution:")
    for i in range(1, F.length + 1):
        out.append(f"  d{i}:")
        for row in F.d(i):
            out.append("    [" + ", ".join(ring.format(p) for p in row) + "]")
    out.append("betti:")
    out += ["  " + line for line in betti_lines(betti_table(F))]
    out.append("report:")
    rep = res.report
    for k, v in rep.to_dict().items():
        if k == "notes":
            continue
        out.append(f"  {k}: {json.dumps(v)}")
    for note in rep.notes:
        out.append(f"  note: {note}")
    return "\n".join(out) + "\n"


def render_report_text(rep: VerificationReport) -> str:
    out = [f"{k}: {json.dumps(v)}" for k, v in rep.to_dict().items() if k != "notes"]
    out += [f"note: {n}" for n in rep.notes]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# entry point


def _options(args, doc: InputDocument) -> dict:
    opts = dict(doc.options)
    for name in ("oracle_bound", "torsion_cap", "format"):
        v = getattr(args, name, None)
        if v is not None:
            opts[name] = v
    opts.setdefault("oracle_bound", DEFAULT_ORACLE_BOUND)
    opts.setdefault("torsion_cap", DEFAULT_TORSION_CAP)
    opts.setdefault("format", "text")
    opts["skip_oracle"] = bool(getattr(args, "skip_oracle", False))
    return opts


def _read_document(path: str, as_diagonal: bool) -> InputDocument:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if as_diagonal:
        data = json.loads(text) if text.strip() else None
        if isinstance(data, dict) and ("rays" in data or "product" in data):
            text = json.dumps({"diagonal": data})
        elif isinstance(data, dict) and "fan" in data:
            rest = {k: v for k, v in data.items() if k != "fan"}
            text = json.dumps({"diagonal": data["fan"], **rest})
    return parse_input(text)


def run(doc: InputDocument, command: str, opts: dict, stdout=None) -> int:
    """Run the pipeline and write artifacts; returns the exit code."""
    stdout = stdout or sys.stdout
    res = run_pipeline(doc.to_embedding(), opts["oracle_bound"], opts["torsion_cap"],
                       opts["skip_oracle"])
    if command == "check":
        if opts["format"] == "json":
            text = json.dumps(res.report.to_dict(), indent=2, sort_keys=True) + "\n"
        else:
            text = render_report_text(res.report)
    elif opts["format"] == "json":
        text = json.dumps(result_to_dict(res), indent=2, sort_keys=True) + "\n"
    else:
        text = render_text(res)
    stdout.write(text)
    return EXIT_OK if res.report.ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="virtres",
                                     description="Virtual resolutions of toric subvarieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("resolve", "resolve the normalization of an embedding"),
                           ("diagonal", "resolve the diagonal of a fan"),
                           ("check", "print the verification report only")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--format", choices=["text", "json"], default=None)
        p.add_argument("--oracle-bound", dest="oracle_bound", type=int, default=None)
        p.add_argument("--torsion-cap", dest="torsion_cap", type=int, default=None)
        p.add_argument("--skip-oracle", dest="skip_oracle", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _read_document(args.file, args.command == "diagonal")
        return run(doc, args.command, _options(args, doc))
    except TorsionClassGroupUnsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TORSION
    except (VirtresError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
