"""Field records: JSON schema, parsing and corpus loading.

A record names a field by its defining polynomial and carries the data the
checks need: discriminant, signature, integral basis, fundamental units,
subfield lattice and optional relative extensions. Rationals are strings
"p/q" so that no binary float ever touches exact data.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .field import FieldDataError, NumberField, parse_field, rationals_field
from .towers import SubfieldLattice, SubfieldNode
from .units import RelativeExtension, UnitSystem, is_relative_unit

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
INT = {"type": "integer"}
SIGNATURE = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2}
POLY = {"type": "array", "items": INT, "minItems": 2}

RECORD_SCHEMA = {
    "type": "object",
    "required": [
        "label",
        "poly",
        "discriminant",
        "signature",
        "integral_basis",
        "torsion_order",
        "fundamental_units",
        "subfields",
        "lattice_edges",
    ],
    "properties": {
        "label": {"type": "string", "minLength": 1},
        "poly": POLY,
        "discriminant": INT,
        "signature": SIGNATURE,
        "integral_basis": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        "torsion_order": {"type": "integer", "minimum": 1},
        "fundamental_units": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        "regulator_hint": {"type": "string", "pattern": r"^[0-9]+(\.[0-9]+)?$"},
        "subfields": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "poly", "discriminant", "signature"],
                "properties": {
                    "label": {"type": "string"},
                    "poly": POLY,
                    "discriminant": INT,
                    "signature": SIGNATURE,
                },
            },
        },
        "lattice_edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
        "extensions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["base_label", "embedding_matrix", "relative_units"],
                "properties": {
                    "base_label": {"type": "string"},
                    "embedding_matrix": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
                    "relative_units": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
                },
            },
        },
        "provenance": {"type": "object"},
    },
}


class CorpusError(ValueError):
    """One or more records failed validation; ``problems`` lists every violation."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("corpus validation failed:\n  " + "\n  ".join(self.problems))


@dataclass
class Extension:
    base_label: str
    ext: RelativeExtension
    relative_units: list
    base_units: UnitSystem | None  # None when the base record is not in the corpus


@dataclass
class FieldRecord:
    label: str
    raw: dict
    field: NumberField
    units: UnitSystem
    lattice: SubfieldLattice
    extensions: list = dc_field(default_factory=list)

    @property
    def regulator_hint(self) -> str | None:
        return self.raw.get("regulator_hint")


def schema_errors(raw) -> list[str]:
    label = raw.get("label", "?") if isinstance(raw, dict) else "?"
    validator = jsonschema.Draft202012Validator(RECORD_SCHEMA)
    out = []
    for err in sorted(validator.iter_errors(raw), key=lambda e: list(map(str, e.absolute_path))):
        where = "/".join(map(str, err.absolute_path)) or "(record)"
        out.append(f"{label}: {where}: {err.message}")
    return out


def _rationals(rows):
    return [[Fraction(x) for x in row] for row in rows]


def build_lattice(raw: dict) -> SubfieldLattice:
    nodes = [
        SubfieldNode(s["label"], len(s["poly"]) - 1, tuple(s["signature"]), abs(int(s["discriminant"])))
        for s in raw["subfields"]
    ]
    nodes.append(SubfieldNode(raw["label"], len(raw["poly"]) - 1, tuple(raw["signature"]), abs(int(raw["discriminant"]))))
    return SubfieldLattice.build(nodes, raw["lattice_edges"], raw["label"])


def parse_record(raw: dict, precision: int | None = None) -> FieldRecord:
    """Parse one record without its extensions; raise CorpusError listing every problem found."""
    problems = schema_errors(raw)
    if problems:
        raise CorpusError(problems)
    label = raw["label"]
    fld = units = lattice = None
    try:
        fld = parse_field(raw, precision)
    except FieldDataError as exc:
        problems.append(f"{label}: field: {exc}")
    if fld is not None:
        try:
            units = UnitSystem(fld, [fld.element(c) for c in _rationals(raw["fundamental_units"])], raw["torsion_order"])
        except (FieldDataError, ValueError) as exc:
            problems.append(f"{label}: fundamental_units: {exc}")
    try:
        lattice = build_lattice(raw)
    except (FieldDataError, ValueError) as exc:
        problems.append(f"{label}: subfields/lattice_edges: {exc}")
    if problems:
        raise CorpusError(problems)
    return FieldRecord(label, raw, fld, units, lattice)


def _attach_extensions(rec: FieldRecord, by_label: dict, precision) -> list[str]:
    problems = []
    for i, e in enumerate(rec.raw.get("extensions", [])):
        where = f"{rec.label}: extensions/{i}"
        base_label = e["base_label"]
        base_units = None
        if base_label == "Q":
            base = rationals_field(precision)
            base_units = UnitSystem(base, [], 2)
        elif base_label in by_label:
            base = by_label[base_label].field
            base_units = by_label[base_label].units
        else:
            problems.append(f"{where}: base field {base_label!r} has no record in the corpus")
            continue
        if base_label not in rec.lattice.nodes:
            problems.append(f"{where}: base field {base_label!r} is not in the subfield lattice")
        try:
            ext = RelativeExtension(base, rec.field, _rationals(e["embedding_matrix"]))
            rel = [rec.field.element(c) for c in _rationals(e["relative_units"])]
            if len(rel) != ext.relative_rank:
                raise FieldDataError(f"{len(rel)} relative units, relative rank is {ext.relative_rank}")
            for j, u in enumerate(rel):
                if not is_relative_unit(ext, u):
                    raise FieldDataError(f"relative unit {j} has non-torsion relative norm")
            rec.extensions.append(Extension(base_label, ext, rel, base_units))
        except (FieldDataError, ValueError) as exc:
            problems.append(f"{where}: {exc}")
    return problems


def load_records(raws: list[dict], precision: int | None = None) -> list[FieldRecord]:
    problems: list[str] = []
    records = []
    seen = set()
    for raw in raws:
        lbl = raw.get("label") if isinstance(raw, dict) else None
        if lbl in seen:
            problems.append(f"{lbl}: duplicate label")
        seen.add(lbl)
        try:
            records.append(parse_record(raw, precision))
        except CorpusError as exc:
            problems.extend(exc.problems)
    by_label = {r.label: r for r in records}
    for rec in records:
        problems.extend(_attach_extensions(rec, by_label, precision))
    if problems:
        raise CorpusError(problems)
    return sorted(records, key=lambda r: r.label)


def read_json_documents(path) -> list[dict]:
    path = Path(path)
    files = sorted(path.glob("*.json")) if path.is_dir() else [path]
    if not files:
        raise CorpusError([f"{path}: no JSON documents found"])
    out, problems = [], []
    for f in files:
        try:
            doc = json.loads(f.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            problems.append(f"{f.name}: {exc}")
            continue
        out.extend(doc if isinstance(doc, list) else [doc])
    if problems:
        raise CorpusError(problems)
    return out


def default_corpus_path() -> Path:
    return Path(str(resources.files("nfreg") / "data" / "corpus"))


def load_corpus(path=None, precision: int | None = None) -> list[FieldRecord]:
    """Parse and validate every record under ``path`` (default: the bundled corpus)."""
    return load_records(read_json_documents(path or default_corpus_path()), precision)
