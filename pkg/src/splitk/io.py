"""Canonical JSON documents.

Every document is ``{"version": "1", "ring": <ring>, "kind": <kind>, "payload": {...}}``
where ``<ring>`` is ``ZZ``, ``QQ``, ``ZZ/p``, ``ZZ[x]`` or ``ZZ[x]@d``.  Scalars
are always JSON strings in the ring's canonical text form.  Matrices inside a
complex are bare row-major entry lists (rows index the target); degreewise
families are objects keyed by the degree written as a decimal string, with
zero components omitted.  Output uses sorted keys, no whitespace, and a
single trailing LF.

Payloads::

    complex        {"min_degree": int, "objects": [[int]], "differentials": [entries]}
    chain_map      {"source": complex, "target": complex, "components": {deg: entries}}
    null_homotopy  {"complex": complex, "components": {deg: entries}}
    equivalence    {"source": complex, "target": complex,
                    "phi": {...}, "psi": {...}, "H1": {...}, "H2": {...}}
    witness_pair   {"R": matrix, "L": matrix, "k": int, "offset": int}
    matrix         {"source": [int], "target": [int], "entries": entries}
    kclass         {"coefficients": {grading: int}}
    certificate    {"claim": str, "identities": [str],
                    "inputs": {name: {"kind": k, "payload": p}}, "witness": {...}}
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from . import matrix as mx
from .complex import (
    ChainMap,
    Complex,
    HomotopyEquivalence,
    NullHomotopy,
    validate_chain_map,
    validate_complex,
    validate_equivalence,
    validate_null_homotopy,
)
from .errors import JSONSyntaxError, SchemaError, ShapeMismatch, SplitKError, ValidationError
from .grothendieck import KClass
from .scalar import parse_ring
from .witness import WitnessPair

VERSION = "1"
KINDS = ("complex", "chain_map", "null_homotopy", "equivalence", "witness_pair", "kclass", "certificate")
_DEGREE_RE = re.compile(r"-?\d+")


class ValidationFailure(ValidationError):
    """Raised by ``serialize`` for objects that do not satisfy their own identities."""


@dataclass(frozen=True)
class Certificate:
    """Inputs, witness and the names of the identities that were checked on them."""

    claim: str
    identities: tuple = ()
    inputs: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "identities", tuple(self.identities))

    def __hash__(self):
        return hash((self.claim, self.identities))


@dataclass(frozen=True)
class Document:
    ring: object
    kind: str
    payload: object
    version: str = VERSION


def kind_of(obj):
    for cls, kind in ((Complex, "complex"), (ChainMap, "chain_map"), (NullHomotopy, "null_homotopy"),
                      (HomotopyEquivalence, "equivalence"), (WitnessPair, "witness_pair"),
                      (KClass, "kclass"), (Certificate, "certificate")):
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- encoding -----------------------------------------------------------------

def _entries(m):
    fmt = m.ring.format
    return [[fmt(x) for x in row] for row in m.rows]


def _matrix(m):
    return {"source": list(m.source), "target": list(m.target), "entries": _entries(m)}


def _family(maps):
    return {str(j): _entries(m) for j, m in sorted(maps.items())}


def _complex(c):
    return {
        "min_degree": c.min_degree,
        "objects": [list(o) for o in c.objects],
        "differentials": [_entries(d) for d in c.differentials],
    }


def encode(obj):
    kind = kind_of(obj)
    if kind == "complex":
        return _complex(obj)
    if kind == "chain_map":
        return {"source": _complex(obj.source), "target": _complex(obj.target),
                "components": _family(obj.components)}
    if kind == "null_homotopy":
        return {"complex": _complex(obj.complex), "components": _family(obj.components)}
    if kind == "equivalence":
        return {"source": _complex(obj.phi.source), "target": _complex(obj.phi.target),
                "phi": _family(obj.phi.components), "psi": _family(obj.psi.components),
                "H1": _family(obj.H1), "H2": _family(obj.H2)}
    if kind == "witness_pair":
        return {"R": _matrix(obj.R), "L": _matrix(obj.L), "k": obj.k, "offset": obj.offset}
    if kind == "kclass":
        return {"coefficients": {str(g): c for g, c in obj.coefficients.items()}}
    return {
        "claim": obj.claim,
        "identities": list(obj.identities),
        "inputs": {name: {"kind": kind_of(v), "payload": encode(v)} for name, v in obj.inputs.items()},
        "witness": {name: {"kind": kind_of(v), "payload": encode(v)} for name, v in obj.witness.items()},
    }


def check(obj):
    """The validation report for ``obj`` (certificates: first failing item)."""
    kind = kind_of(obj)
    if kind == "complex":
        return validate_complex(obj)
    if kind == "chain_map":
        return validate_chain_map(obj)
    if kind == "null_homotopy":
        return validate_null_homotopy(obj)
    if kind == "equivalence":
        return validate_equivalence(obj)
    if kind == "witness_pair":
        return obj.verify()
    if kind == "certificate":
        for part in (obj.inputs, obj.witness):
            for v in part.values():
                rep = check(v)
                if not rep:
                    return rep
    return None


def serialize(doc):
    rep = check(doc.payload)
    if rep is not None and not rep:
        raise ValidationFailure(f"refusing to serialize an invalid {doc.kind}: {rep}", "payload", rep)
    body = {"version": doc.version, "ring": str(doc.ring), "kind": doc.kind, "payload": encode(doc.payload)}
    return json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def dumps(obj, ring=None):
    if ring is None:
        ring = _ring_of(obj)
    return serialize(Document(ring, kind_of(obj), obj))


def _ring_of(obj):
    if isinstance(obj, Certificate):
        for v in list(obj.inputs.values()) + list(obj.witness.values()):
            r = _ring_of(v)
            if r is not None:
                return r
        return None
    if isinstance(obj, WitnessPair):
        return obj.R.ring
    return getattr(obj, "ring", None)


# -- decoding -----------------------------------------------------------------

def _expect(value, typ, path):
    if typ is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, typ)
    if not ok:
        raise SchemaError(f"expected {typ.__name__}, got {type(value).__name__}", path)
    return value


def _keys(obj, required, path):
    _expect(obj, dict, path)
    missing = [k for k in required if k not in obj]
    extra = sorted(set(obj) - set(required))
    if missing:
        raise SchemaError(f"missing field(s) {', '.join(missing)}", path)
    if extra:
        raise SchemaError(f"unexpected field(s) {', '.join(extra)}", path)
    return obj


def _int_list(value, path):
    _expect(value, list, path)
    return tuple(_expect(v, int, f"{path}[{i}]") for i, v in enumerate(value))


def _decode_entries(ring, value, source, target, path):
    _expect(value, list, path)
    rows = []
    for r, row in enumerate(value):
        _expect(row, list, f"{path}[{r}]")
        out = []
        for c, x in enumerate(row):
            _expect(x, str, f"{path}[{r}][{c}]")
            try:
                out.append(ring.parse(x))
            except ValueError as exc:
                raise SchemaError(str(exc), f"{path}[{r}][{c}]") from None
        rows.append(tuple(out))
    try:
        return mx.Matrix(ring, tuple(source), tuple(target), tuple(rows))
    except ShapeMismatch as exc:
        raise ValidationError(str(exc), path) from None


def _decode_matrix(ring, value, path):
    _keys(value, ("source", "target", "entries"), path)
    src = _int_list(value["source"], f"{path}.source")
    tgt = _int_list(value["target"], f"{path}.target")
    return _decode_entries(ring, value["entries"], src, tgt, f"{path}.entries")


def _decode_complex(ring, value, path):
    _keys(value, ("min_degree", "objects", "differentials"), path)
    lo = _expect(value["min_degree"], int, f"{path}.min_degree")
    objs = [_int_list(o, f"{path}.objects[{i}]") for i, o in enumerate(_expect(value["objects"], list, f"{path}.objects"))]
    raw = _expect(value["differentials"], list, f"{path}.differentials")
    if len(raw) != max(len(objs) - 1, 0):
        raise SchemaError(f"{len(objs)} objects need {max(len(objs) - 1, 0)} differentials", f"{path}.differentials")
    diffs = [_decode_entries(ring, d, objs[i], objs[i + 1], f"{path}.differentials[{i}]") for i, d in enumerate(raw)]
    return Complex(ring, lo, objs, diffs)


def _decode_family(ring, value, source_obj, target_obj, path):
    _expect(value, dict, path)
    out = {}
    for key, entries in value.items():
        if not _DEGREE_RE.fullmatch(key):
            raise SchemaError(f"degree key {key!r} is not an integer", path)
        j = int(key)
        out[j] = _decode_entries(ring, entries, source_obj(j), target_obj(j), f"{path}.{key}")
    return out


def _down(c):
    return lambda j: c.obj(j - 1)


def _fail_if(rep, path):
    if not rep:
        raise ValidationError(str(rep), path, rep)


def decode(ring, kind, value, path="payload"):
    if kind == "complex":
        c = _decode_complex(ring, value, path)
        _fail_if(validate_complex(c), path)
        return c
    if kind == "chain_map":
        _keys(value, ("source", "target", "components"), path)
        s = _decode_complex(ring, value["source"], f"{path}.source")
        t = _decode_complex(ring, value["target"], f"{path}.target")
        f = ChainMap(s, t, _decode_family(ring, value["components"], s.obj, t.obj, f"{path}.components"))
        _fail_if(validate_chain_map(f), path)
        return f
    if kind == "null_homotopy":
        _keys(value, ("complex", "components"), path)
        c = _decode_complex(ring, value["complex"], f"{path}.complex")
        h = NullHomotopy(c, _decode_family(ring, value["components"], c.obj, _down(c), f"{path}.components"))
        _fail_if(validate_null_homotopy(h), path)
        return h
    if kind == "equivalence":
        _keys(value, ("source", "target", "phi", "psi", "H1", "H2"), path)
        a = _decode_complex(ring, value["source"], f"{path}.source")
        b = _decode_complex(ring, value["target"], f"{path}.target")
        e = HomotopyEquivalence(
            ChainMap(a, b, _decode_family(ring, value["phi"], a.obj, b.obj, f"{path}.phi")),
            ChainMap(b, a, _decode_family(ring, value["psi"], b.obj, a.obj, f"{path}.psi")),
            _decode_family(ring, value["H1"], a.obj, _down(a), f"{path}.H1"),
            _decode_family(ring, value["H2"], b.obj, _down(b), f"{path}.H2"),
        )
        _fail_if(validate_equivalence(e), path)
        return e
    if kind == "witness_pair":
        _keys(value, ("R", "L", "k", "offset"), path)
        w = WitnessPair(_decode_matrix(ring, value["R"], f"{path}.R"),
                        _decode_matrix(ring, value["L"], f"{path}.L"),
                        _expect(value["k"], int, f"{path}.k"),
                        _expect(value["offset"], int, f"{path}.offset"))
        _fail_if(w.verify(), path)
        return w
    if kind == "kclass":
        _keys(value, ("coefficients",), path)
        coeffs = _expect(value["coefficients"], dict, f"{path}.coefficients")
        out = {}
        for key, c in coeffs.items():
            if not _DEGREE_RE.fullmatch(key):
                raise SchemaError(f"grading key {key!r} is not an integer", f"{path}.coefficients")
            out[int(key)] = _expect(c, int, f"{path}.coefficients.{key}")
        return KClass(out)
    if kind == "certificate":
        _keys(value, ("claim", "identities", "inputs", "witness"), path)
        ids = _expect(value["identities"], list, f"{path}.identities")
        for i, s in enumerate(ids):
            _expect(s, str, f"{path}.identities[{i}]")
        parts = {}
        for part in ("inputs", "witness"):
            items = _expect(value[part], dict, f"{path}.{part}")
            parts[part] = {}
            for name, item in items.items():
                p = f"{path}.{part}.{name}"
                _keys(item, ("kind", "payload"), p)
                sub = _expect(item["kind"], str, f"{p}.kind")
                if sub not in KINDS or sub == "certificate":
                    raise SchemaError(f"unknown kind {sub!r}", f"{p}.kind")
                parts[part][name] = decode(ring, sub, item["payload"], f"{p}.payload")
        return Certificate(_expect(value["claim"], str, f"{path}.claim"), tuple(ids),
                           parts["inputs"], parts["witness"])
    raise SchemaError(f"unknown kind {kind!r}", "kind")


def parse(text):
    """Parse and validate a document.  Raises ``JSONSyntaxError``, ``SchemaError`` or ``ValidationError``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JSONSyntaxError(exc.msg, line=exc.lineno) from None
    _keys(raw, ("version", "ring", "kind", "payload"), "")
    version = raw["version"]
    if version != VERSION:
        raise SchemaError(f"unsupported version {version!r}", "version")
    try:
        ring = parse_ring(_expect(raw["ring"], str, "ring"))
    except ValueError as exc:
        raise SchemaError(str(exc), "ring") from None
    kind = _expect(raw["kind"], str, "kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}", "kind")
    try:
        payload = decode(ring, kind, raw["payload"])
    except (SchemaError, ValidationError):
        raise
    except SplitKError as exc:
        raise ValidationError(str(exc), "payload") from None
    return Document(ring, kind, payload, version)


def loads(text, kind=None):
    doc = parse(text)
    if kind is not None and doc.kind != kind:
        raise SchemaError(f"expected a {kind} document, got {doc.kind}", "kind")
    return doc.payload
