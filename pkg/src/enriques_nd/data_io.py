"""JSON formats for case snapshots and certificate lists.

Case snapshot::

    {"schema_version": 1, "case_id": 145, "basis": "E10-fig1",
     "curves": [{"label": "R0", "coords": [10 ints]},
                {"label": "R2·H2", "coords": [...], "base": 2, "word": [["H2", 1]]}],
     "automorphisms": {"gamma": [[10 ints] x 10]},   # right action
     "notes": "..."}

Certificate list (a bare list of certificates is also accepted)::

    {"schema_version": 1,
     "certificates": [{"case_id": 158, "invariant": "nd", "claimed_bound": 9,
                       "equality_claimed": false,
                       "members": [{"den": 2, "terms": [{"mult": 1, "base": 0, "word": []}]}]}]}
"""
import hashlib
import json
from pathlib import Path

import jsonschema

from .action import GeneratorSet, OrbitWord
from .certificates import Certificate, CertificateEntry
from .curves import CurveSystem
from .errors import CurveSystemError, EnriquesError, SchemaError, ValidationError

SCHEMA_VERSION = 1
BASIS_TAG = "E10-fig1"

_INT = {"type": "integer"}
_WORD = {
    "type": "array",
    "items": {"type": "array", "prefixItems": [{"type": "string", "minLength": 1}, _INT],
              "minItems": 2, "maxItems": 2},
}
_ROW = {"type": "array", "items": _INT, "minItems": 10, "maxItems": 10}

CASE_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "case_id", "basis", "curves", "automorphisms"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "case_id": {"type": "integer", "minimum": 1, "maximum": 184},
        "basis": {"const": BASIS_TAG},
        "curves": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "coords"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "coords": _ROW,
                    "base": {"type": "integer", "minimum": 0},
                    "word": _WORD,
                },
            },
        },
        "automorphisms": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": _ROW, "minItems": 10, "maxItems": 10},
        },
        "notes": {"type": "string"},
    },
}

_MEMBER = {
    "type": "object",
    "required": ["den", "terms"],
    "additionalProperties": False,
    "properties": {
        "den": {"enum": [1, 2]},
        "terms": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["mult", "base", "word"],
                "additionalProperties": False,
                "properties": {
                    "mult": {"type": "integer", "minimum": 1},
                    "base": {"type": "integer", "minimum": 0},
                    "word": _WORD,
                },
            },
        },
    },
}

CERT_SCHEMA = {
    "type": "object",
    "required": ["case_id", "claimed_bound", "equality_claimed", "members"],
    "additionalProperties": False,
    "properties": {
        "case_id": {"type": "integer", "minimum": 1, "maximum": 184},
        "invariant": {"enum": ["nd", "cnd"]},
        "claimed_bound": {"type": "integer", "minimum": 0, "maximum": 10},
        "equality_claimed": {"type": "boolean"},
        "members": {"type": "array", "items": _MEMBER},
    },
}

CERT_FILE_SCHEMA = {
    "oneOf": [
        {"type": "array", "items": CERT_SCHEMA},
        {
            "type": "object",
            "required": ["schema_version", "certificates"],
            "additionalProperties": False,
            "properties": {
                "schema_version": {"const": SCHEMA_VERSION},
                "certificates": {"type": "array", "items": CERT_SCHEMA},
            },
        },
    ]
}


def _validate(doc, schema, source):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise SchemaError(f"{source}:{where}", err.message)


def _read_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(str(path), f"cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc


class CaseData:
    """A loaded snapshot: validated curves and generators plus metadata."""

    def __init__(self, case_id, system, gens, notes=""):
        self.case_id = case_id
        self.system = system
        self.gens = gens
        self.notes = notes

    def __iter__(self):
        # allows ``system, gens = load_case(path)``
        return iter((self.system, self.gens))


def case_from_dict(doc, source="<case>"):
    _validate(doc, CASE_SCHEMA, source)
    words = []
    for i, c in enumerate(doc["curves"]):
        if "word" in c:
            base = c.get("base")
            if base is None:
                raise SchemaError(f"{source}:curves/{i}", "'word' requires 'base'")
            words.append(OrbitWord(base, tuple((n, e) for n, e in c["word"])))
        else:
            words.append(None)
    try:
        system = CurveSystem([c["coords"] for c in doc["curves"]],
                             [c["label"] for c in doc["curves"]], words)
        gens = GeneratorSet({k: v for k, v in sorted(doc["automorphisms"].items())})
    except (CurveSystemError, EnriquesError, ValueError) as exc:
        raise ValidationError(f"{source}: {exc}") from exc
    return CaseData(doc["case_id"], system, gens, doc.get("notes", ""))


def load_case(path):
    return case_from_dict(_read_json(path), str(path))


def case_to_dict(case):
    curves = []
    for label, coords, word in zip(case.system.labels, case.system.vectors, case.system.words):
        entry = {"label": label, "coords": [int(x) for x in coords]}
        if word is not None and word.word:
            entry["base"] = word.base
            entry["word"] = [[n, e] for n, e in word.word]
        curves.append(entry)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "case_id": case.case_id,
        "basis": BASIS_TAG,
        "curves": curves,
        "automorphisms": {n: [[int(x) for x in r] for r in case.gens[n]] for n in case.gens.names},
    }
    if case.notes:
        doc["notes"] = case.notes
    return doc


def certificate_from_dict(doc):
    members = []
    for m in doc["members"]:
        terms = tuple((t["mult"], OrbitWord(t["base"], tuple((n, e) for n, e in t["word"])))
                      for t in m["terms"])
        members.append(CertificateEntry(m["den"], terms))
    return Certificate(doc["case_id"], doc["claimed_bound"], doc["equality_claimed"],
                       tuple(members), doc.get("invariant", "nd"))


def certificate_to_dict(cert):
    return {
        "case_id": cert.case_id,
        "invariant": cert.invariant,
        "claimed_bound": cert.claimed_bound,
        "equality_claimed": cert.equality_claimed,
        "members": [
            {"den": m.denominator,
             "terms": [{"mult": mult, "base": w.base, "word": [[n, e] for n, e in w.word]}
                       for mult, w in m.terms]}
            for m in cert.members
        ],
    }


def certificates_from_json(doc, source="<certificates>"):
    _validate(doc, CERT_FILE_SCHEMA, source)
    items = doc if isinstance(doc, list) else doc["certificates"]
    return [certificate_from_dict(c) for c in items]


def load_certificates(path):
    return certificates_from_json(_read_json(path), str(path))


def certificates_to_json(certs):
    return {"schema_version": SCHEMA_VERSION,
            "certificates": [certificate_to_dict(c) for c in certs]}


def _flat(v):
    if isinstance(v, (list, tuple)):
        return all(isinstance(y, (list, tuple)) and all(not isinstance(z, (dict, list, tuple)) for z in y)
                   or not isinstance(y, (dict, list, tuple)) for y in v) and len(v) <= 3
    return not isinstance(v, dict)


def dumps(obj):
    """Canonical JSON: sorted keys, two-space indent, scalar arrays on one line."""
    def emit(x, ind):
        pad = "  " * ind
        if isinstance(x, dict):
            if not x:
                return "{}"
            if all(_flat(v) for v in x.values()):
                return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {emit(x[k], ind)}"
                                       for k in sorted(x)) + "}"
            items = [f'{pad}  {json.dumps(str(k), ensure_ascii=False)}: {emit(x[k], ind + 1)}'
                     for k in sorted(x)]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(x, (list, tuple)):
            if all(not isinstance(y, (dict, list, tuple)) for y in x):
                return "[" + ", ".join(emit(y, ind) for y in x) + "]"
            if _flat(x):
                return "[" + ", ".join(emit(y, ind) for y in x) + "]"
            rows = [f"{pad}  {emit(y, ind + 1)}" for y in x]
            return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
        if isinstance(x, bool) or x is None:
            return json.dumps(x)
        if isinstance(x, int):
            return str(int(x))
        if isinstance(x, float):
            raise TypeError("floats are not permitted in canonical output")
        return json.dumps(x, ensure_ascii=False)
    return emit(obj, 0) + "\n"


def save_json(obj, path):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def bundled_path(*parts):
    """Filesystem path of a file shipped in ``enriques_nd/data``."""
    return Path(__file__).resolve().parent.joinpath("data", *parts)


def bundled_case(case_id):
    return load_case(bundled_path("cases", f"{case_id}.json"))


def bundled_certificates(name="corpus"):
    return load_certificates(bundled_path("certs", f"{name}.json"))
