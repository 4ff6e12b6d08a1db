"""JSON file formats: group pairs, fixed-point data, reports and tables.

All weights are written in doubled coordinates.  Characters and tables are
sorted by the term order (pairing with rho_G, then coordinates, descending)
so that output is byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .charring import FormalCharacter, sorted_terms
from .errors import InputError
from .fixedpoint import FixedPointSet, ingest
from .quantize import CharacterReport
from .rootsys import RootSystem, SubgroupPair, build_root_system, make_pair

FORMAT_VERSION = 1

_WEIGHT = {"type": "array", "items": {"type": "integer"}, "minItems": 1}

GROUP_SCHEMA = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"type": "string"},
        "k_simple_roots": {"type": "array", "items": _WEIGHT},
    },
}

FIXTURE_SCHEMA = {
    "type": "object",
    "required": ["format", "group", "points"],
    "properties": {
        "format": {"const": FORMAT_VERSION},
        "group": GROUP_SCHEMA,
        "coadjoint_lambda": _WEIGHT,
        "points": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["mu", "tangent_weights"],
                "properties": {
                    "id": {"type": "string"},
                    "mu": _WEIGHT,
                    "tangent_weights": {"type": "array", "items": _WEIGHT, "minItems": 1},
                    "component": {"type": ["string", "null"]},
                },
            },
        },
    },
}


def parse_group_spec(spec: Mapping[str, Any]) -> SubgroupPair:
    try:
        jsonschema.validate(spec, GROUP_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"group spec: {exc.message}") from exc
    rs = build_root_system(spec["type"])
    return make_pair(rs, [tuple(r) for r in spec.get("k_simple_roots", [])])


def group_spec_of(pair: SubgroupPair) -> dict:
    return {"type": pair.g.cartan_type, "k_simple_roots": [list(a) for a in pair.k_simple_roots]}


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def fixture_from_dict(doc: Mapping[str, Any]) -> FixedPointSet:
    try:
        jsonschema.validate(doc, FIXTURE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"fixture: {exc.message}") from exc
    pair = parse_group_spec(doc["group"])
    fps = ingest(pair, doc["points"])
    if "coadjoint_lambda" in doc:
        fps.meta["coadjoint_lambda"] = tuple(doc["coadjoint_lambda"])
    return fps


def load_fixture(path: str | Path) -> FixedPointSet:
    return fixture_from_dict(read_json(path))


def fixture_to_dict(pair: SubgroupPair, points, coadjoint_lambda=None) -> dict:
    doc: dict[str, Any] = {"format": FORMAT_VERSION, "group": group_spec_of(pair)}
    if coadjoint_lambda is not None:
        doc["coadjoint_lambda"] = list(coadjoint_lambda)
    doc["points"] = [
        {
            "id": p.id,
            "mu": list(p.mu),
            "tangent_weights": [list(t) for t in p.tangent_weights],
            **({"component": p.component} if p.component else {}),
        }
        for p in points
    ]
    return doc


def character_to_json(rs: RootSystem, x: FormalCharacter | Mapping) -> list:
    return [[list(k), v] for k, v in sorted_terms(rs, x)]


def report_to_dict(fps: FixedPointSet, report: CharacterReport) -> dict:
    rs = fps.pair.g
    orbits = []
    for o in fps.orbits:
        comps = sorted({fps.point(pid).component for pid in o.members} - {None})
        orbits.append(
            {
                "id": o.id,
                "representative": o.representative.id,
                "mu": list(o.representative.mu),
                "points": sorted(o.members),
                "components": comps,
                "walls": [list(a) for a in o.A],
                "s": o.s,
                "beta_bar": list(o.beta_bar),
                "B_plus_orbit": [list(g) for g in o.B_plus_orbit],
                "C": [list(g) for g in o.C],
                "labels": [[c, list(lab)] for c, lab in report.per_orbit_labels[o.id]],
                "numerator": character_to_json(rs, dict(report.per_orbit_terms)[o.id]),
            }
        )
    return {
        "format": FORMAT_VERSION,
        "group": group_spec_of(fps.pair),
        "half_weight": report.half_weight,
        "denominator_factors": [list(g) for g in report.denominator_factors],
        "orbits": orbits,
        "numerator": character_to_json(rs, report.numerator),
        "character": character_to_json(rs, report.character),
        "dimension": report.character.total(),
        "k_decomposition": [
            {"lambda": k, "multiplicity": v}
            for k, v in character_to_json(rs, report.k_decomposition)
        ],
    }


def spectrum_rows(rs: RootSystem, spectrum: Mapping) -> list[dict]:
    return [{"lambda": k, "multiplicity": v} for k, v in character_to_json(rs, spectrum)]


def _flat(x: Any) -> bool:
    """Scalars, and lists built only from scalars and scalar lists, fit on one line."""
    if isinstance(x, dict):
        return False
    if isinstance(x, list):
        return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and _flat_scalar(v)) for v in x)
    return True


def _flat_scalar(x: list) -> bool:
    return all(not isinstance(v, (dict, list)) for v in x)


def _write(x: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_write(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, list) and x and not _flat(x):
        items = [pad + _write(v, indent + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(x, separators=(", ", ": "))


def dumps(doc: Any) -> str:
    """Indented JSON with weight vectors and [weight, coefficient] pairs kept on one line."""
    return _write(doc, 0) + "\n"


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0])
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in r.items()})
    return buf.getvalue()
