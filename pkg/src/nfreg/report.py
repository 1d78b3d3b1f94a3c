"""Corpus-wide report document: every check for every field, with a summary."""
from __future__ import annotations

import json
import random

import mpmath

from . import __version__
from .bounds import verify_field
from .corpus import FieldRecord
from .heights import check_lemma51, weil_height_mahler, weil_height_places
from .ideals import verify_prop41
from .reports import FAILED, VERDICTS, MarginReport
from .sampling import random_element, random_vector
from .units import check_combined_bound, check_norm_places, regulator, search_small_units

HINT_TOLERANCE = "1e-25"


def height_agreement(elem) -> MarginReport:
    """|h_places - h_mahler| within the two certified error bounds."""
    a = weil_height_places(elem)
    b = weil_height_mahler(elem)
    with mpmath.workprec(elem.field.working_precision):
        gap = abs(a.value - b.value)
        return MarginReport("height-agreement", gap, mpmath.mpf(0), a.error_bound + b.error_bound)


def regulator_hint_check(rec: FieldRecord) -> MarginReport | None:
    if rec.regulator_hint is None:
        return None
    reg = regulator(rec.units)
    with mpmath.workprec(rec.field.working_precision):
        gap = abs(reg.value - mpmath.mpf(rec.regulator_hint))
        tol = mpmath.mpf(HINT_TOLERANCE) + reg.error_bound
    return MarginReport("regulator-hint", gap, tol, details={"hint": rec.regulator_hint})


def field_checks(rec: FieldRecord, seed: int, box: int, samples: int = 3) -> dict:
    rng = random.Random(f"{seed}:{rec.label}")
    fld = rec.field
    bounds = verify_field(fld, rec.lattice, rec.units)
    heights = [height_agreement(random_element(fld, rng)) for _ in range(samples)]
    if fld.d > 1:
        heights.append(check_lemma51(fld.gen(), fld.d))
    identities = []
    hint = regulator_hint_check(rec)
    if hint is not None:
        identities.append(hint)
    if fld.d <= 4:
        identities.append(verify_prop41(random_vector(fld, rng)))
    if rec.units.rank:
        identities.append(search_small_units(fld, rec.units, box).report("unit-search"))
    for ext in rec.extensions:
        identities.append(check_norm_places(ext.ext, random_element(fld, rng)))
        if ext.ext.relative_rank > 0 and ext.base_units is not None:
            rep = check_combined_bound(ext.ext, ext.base_units, ext.relative_units, rec.units, box)
            rep.details["base"] = ext.base_label
            identities.append(rep)
    return {
        "label": rec.label,
        "bounds": [b.to_dict() for b in bounds],
        "heights": [h.to_dict() for h in heights],
        "identities": [i.to_dict() for i in identities],
    }


def summarize(fields: list[dict]) -> dict:
    counts = {v: 0 for v in VERDICTS}
    for f in fields:
        for group in ("bounds", "heights", "identities"):
            for item in f[group]:
                counts[item["verdict"]] = counts.get(item["verdict"], 0) + 1
    return counts


def build_report(records: list[FieldRecord], precision: int, seed: int = 0, box: int = 5) -> dict:
    fields = [field_checks(rec, seed, box) for rec in sorted(records, key=lambda r: r.label)]
    return {
        "artifact": "nfreg",
        "version": __version__,
        "precision": precision,
        "seed": seed,
        "box": box,
        "fields": fields,
        "summary": summarize(fields),
    }


def render_json(doc: dict) -> str:
    """Canonical form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    lines = [f"nfreg {doc['version']}  precision={doc['precision']}  seed={doc['seed']}  box={doc['box']}"]
    for f in doc["fields"]:
        lines.append(f"[{f['label']}]")
        for b in f["bounds"]:
            lines.append(f"  {b['theorem']:<22} {b['verdict']:<18} bound={b['bound']}  {b['quantity']}={b['value']}")
        for item in f["heights"] + f["identities"]:
            lines.append(f"  {item['check']:<22} {item['verdict']:<18} margin={item['margin']}")
    s = doc["summary"]
    lines.append("summary: " + ", ".join(f"{k}={s[k]}" for k in sorted(s)))
    return "\n".join(lines) + "\n"


def any_failed(doc: dict) -> bool:
    return doc["summary"].get(FAILED, 0) > 0


def load_report(text: str) -> dict:
    return json.loads(text)
