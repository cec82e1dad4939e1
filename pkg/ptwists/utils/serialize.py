"""
JSON documents for algebras, modules and certificates

Scalars are written as exact strings ('3/7', '12 mod 32003'); basis
elements are referenced by label so documents stay readable. Every
document is emitted with sorted keys and a trailing newline, and written
atomically: a temporary file in the target directory replaced into place.

Functions:
    algebra_to_dict, algebra_from_dict, module_to_dict, module_from_dict,
    spherification_to_dict, parse_algebra_spec, canonical_json,
    write_json_atomic, read_json
"""

import json
import os
import tempfile

from ptwists.config.parameters import VERSION
from ptwists.model.algebra import (
    DgAlgebra,
    build_orthogonal_algebra,
    build_pnk_algebra,
    build_two_object_algebra,
)
from ptwists.model.errors import ConfigurationError, StructuralError
from ptwists.model.linalg import format_scalar, make_field, parse_scalar
from ptwists.model.modules import Generator, SemiFreeModule

ALGEBRA_SCHEMA = "ptwists/algebra"
MODULE_SCHEMA = "ptwists/module"
SCHEMA_VERSION = "1.0"

BUILDERS = {
    "pnk": (build_pnk_algebra, 2),
    "two-object": (build_two_object_algebra, 3),
    "orthogonal": (build_orthogonal_algebra, 2),
}


def _element_to_dict(A: DgAlgebra, x):
    return {A.labels[b]: format_scalar(A.K, c) for b, c in sorted(x.items())}


def _element_from_dict(A_labels, K, data):
    index = {label: i for i, label in enumerate(A_labels)}
    element = {}
    for label, text in data.items():
        if label not in index:
            raise StructuralError(f"unknown basis label '{label}'")
        value = parse_scalar(K, text)
        if value:
            element[index[label]] = value
    return element


def algebra_to_dict(A: DgAlgebra):
    """Structure constants of A keyed by basis labels."""
    return {
        "schema": ALGEBRA_SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "tool_version": VERSION,
        "name": A.name,
        "field": A.field_name,
        "basis": [{"label": label, "degree": d} for label, d in zip(A.labels, A.degrees)],
        "idempotents": [A.labels[e] for e in A.idempotents],
        "products": [
            {"left": A.labels[i], "right": A.labels[j], "value": _element_to_dict(A, value)}
            for (i, j), value in sorted(A.mult.items())
        ],
        "differential": [
            {"source": A.labels[i], "value": _element_to_dict(A, value)}
            for i, value in sorted(A.diff.items())
        ],
        "marked": {name: _element_to_dict(A, value) for name, value in sorted(A.marked.items())},
        "params": dict(A.params),
    }


def algebra_from_dict(data, K=None):
    """
    Rebuild a DgAlgebra from algebra_to_dict output.

    Args:
        K: Field override; defaults to the document's field

    Raises:
        StructuralError: Unknown labels or a malformed document
    """
    if data.get("schema") != ALGEBRA_SCHEMA:
        raise StructuralError(f"not an algebra document (schema {data.get('schema')!r})")
    K = K or make_field(data["field"])
    labels = [entry["label"] for entry in data["basis"]]
    degrees = [entry["degree"] for entry in data["basis"]]
    index = {label: i for i, label in enumerate(labels)}
    try:
        mult = {
            (index[p["left"]], index[p["right"]]): _element_from_dict(labels, K, p["value"])
            for p in data.get("products", [])
        }
        diff = {
            index[d["source"]]: _element_from_dict(labels, K, d["value"])
            for d in data.get("differential", [])
        }
        idempotents = [index[label] for label in data["idempotents"]]
    except KeyError as exc:
        raise StructuralError(f"algebra document references unknown label {exc}") from None
    marked = {name: _element_from_dict(labels, K, value) for name, value in data.get("marked", {}).items()}
    return DgAlgebra(K, labels, degrees, mult, diff, idempotents, marked,
                     data.get("params", {}), name=data.get("name", "algebra"))


def module_to_dict(M: SemiFreeModule):
    A = M.algebra
    return {
        "schema": MODULE_SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "name": M.name,
        "algebra": A.name,
        "field": A.field_name,
        "generators": [
            {"label": g.label, "idempotent": g.idempotent, "degree": g.degree} for g in M.generators
        ],
        "delta": [
            {"row": i, "col": j, "value": _element_to_dict(A, value)}
            for (i, j), value in sorted(M.delta.items())
        ],
    }


def module_from_dict(A: DgAlgebra, data):
    """Rebuild a module over A; the algebra name and field must match."""
    if data.get("schema") != MODULE_SCHEMA:
        raise StructuralError(f"not a module document (schema {data.get('schema')!r})")
    if data.get("field") != A.field_name:
        raise StructuralError(f"module over {data.get('field')} cannot live over {A.field_name}")
    gens = [Generator(g["label"], g["idempotent"], g["degree"]) for g in data["generators"]]
    delta = {
        (d["row"], d["col"]): _element_from_dict(A.labels, A.K, d["value"]) for d in data.get("delta", [])
    }
    M = SemiFreeModule(A, gens, delta, data.get("name", "M"))
    M.check()
    return M


def spherification_to_dict(S):
    """B as an algebra document plus the embedding A -> B and the epsilon offset."""
    document = algebra_to_dict(S.extended)
    document["spherification"] = {
        "base": algebra_to_dict(S.base),
        "k": S.k,
        "h": _element_to_dict(S.base, S.h),
        "embedding": {label: label for label in S.base.labels},
        "epsilon": {label: f"eps.{label}" for label in S.base.labels},
    }
    return document


def parse_algebra_spec(spec, K=None):
    """
    Build the algebra named by a spec string.

    Args:
        spec (str): 'pnk:n,k', 'two-object:n,k,m', 'orthogonal:n,k' or a JSON path

    Raises:
        ConfigurationError: Unknown family, wrong arity or unreadable file
    """
    text = str(spec).strip()
    family, sep, args = text.partition(":")
    if sep and family in BUILDERS:
        builder, arity = BUILDERS[family]
        try:
            values = [int(part) for part in args.split(",")]
        except ValueError:
            raise ConfigurationError(f"algebra spec '{text}' needs integer parameters") from None
        if len(values) != arity:
            raise ConfigurationError(f"algebra family '{family}' takes {arity} parameters, got {len(values)}")
        return builder(*values, K=K)
    if os.path.exists(text):
        return algebra_from_dict(read_json(text), K)
    raise ConfigurationError(
        f"unknown algebra '{text}' (expected {', '.join(f'{f}:...' for f in BUILDERS)} or a JSON file)"
    )


def canonical_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, ValueError) as exc:
        raise ConfigurationError(f"cannot read {path}: {exc}") from exc


def write_json_atomic(path, payload, force=False):
    """
    Write payload (a dict or an already serialized string) atomically.

    Raises:
        ConfigurationError: path exists and force is not set
    """
    text = payload if isinstance(payload, str) else canonical_json(payload)
    if os.path.exists(path) and not force:
        raise ConfigurationError(f"refusing to overwrite existing artifact {path} (use --force)")
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle = tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=directory,
                                         prefix=".ptwists-", suffix=".tmp", delete=False)
    try:
        with handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(handle.name, path)
    except BaseException:
        if os.path.exists(handle.name):
            os.unlink(handle.name)
        raise
    return path
