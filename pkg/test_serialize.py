#!/usr/bin/env python3
"""
Tests for JSON documents: algebras, modules, certificates and atomic writes
"""

import json

import pytest
from sympy.polys.domains import GF

from ptwists.config.parameters import VERSION
from ptwists.model.certificate import (
    CERTIFIED,
    FAILED,
    UNDETERMINED,
    Certificate,
    witness_digest,
)
from ptwists.model.errors import ConfigurationError, StructuralError
from ptwists.model.modules import ModuleMorphism, cone, free_module, is_quasi_isomorphic, shift
from ptwists.utils.serialize import (
    algebra_from_dict,
    algebra_to_dict,
    module_from_dict,
    module_to_dict,
    parse_algebra_spec,
    read_json,
    spherification_to_dict,
    write_json_atomic,
)


def make_certificate(**extra):
    cert = Certificate(mode="abelian", algebra={"name": "two-object(2,2,0)"}, scope="A",
                       word_budget=1, seed=0, config={"field": "QQ"})
    for name, value in extra.items():
        setattr(cert, name, value)
    return cert


# Test 1: algebras

def test_algebra_document_round_trip(pair):
    document = algebra_to_dict(pair)
    assert document["tool_version"] == VERSION
    assert document["idempotents"] == ["e1", "e2"]
    rebuilt = algebra_from_dict(json.loads(json.dumps(document)))
    assert algebra_to_dict(rebuilt) == document


def test_algebra_document_field_override(p22):
    rebuilt = algebra_from_dict(algebra_to_dict(p22), K=GF(7))
    assert rebuilt.field_name == "GF(7)"


def test_algebra_document_rejects_unknown_labels(p22):
    document = algebra_to_dict(p22)
    document["products"].append({"left": "t", "right": "s", "value": {"t": "1"}})
    with pytest.raises(StructuralError):
        algebra_from_dict(document)
    with pytest.raises(StructuralError):
        algebra_from_dict({"schema": "something/else"})


def test_spherification_document(pair_spherification):
    document = spherification_to_dict(pair_spherification)
    assert document["spherification"]["k"] == 2
    assert document["spherification"]["h"] == {"t1": "1", "t2": "1"}
    assert document["spherification"]["epsilon"]["e1"] == "eps.e1"


# Test 2: modules

def test_module_document_round_trip(p22):
    P = free_module(p22, 0)
    C = cone(ModuleMorphism(shift(P, -2), P, 0, {(0, 0): p22.t_element(0)}), name="C")
    rebuilt = module_from_dict(p22, module_to_dict(C))
    assert rebuilt.name == "C"
    assert module_to_dict(rebuilt) == module_to_dict(C)


def test_module_document_field_mismatch(p22):
    document = module_to_dict(free_module(p22, 0))
    document["field"] = "GF(5)"
    with pytest.raises(StructuralError):
        module_from_dict(p22, document)


# Test 3: algebra specs

def test_parse_algebra_spec_families():
    assert parse_algebra_spec("pnk:2,2").name == "pnk(2,2)"
    assert parse_algebra_spec("two-object:2,2,1").num_idempotents == 2
    assert parse_algebra_spec("orthogonal:1,1").params["m"] == 0


@pytest.mark.parametrize("spec", ["pnk:2", "pnk:a,b", "klein:1,2", "missing.json"])
def test_parse_algebra_spec_errors(spec):
    with pytest.raises(ConfigurationError):
        parse_algebra_spec(spec)


def test_parse_algebra_spec_from_file(tmp_path, pair):
    path = tmp_path / "pair.json"
    write_json_atomic(str(path), algebra_to_dict(pair))
    assert parse_algebra_spec(str(path)).dim == pair.dim


# Test 4: certificates

def test_verdicts_and_exit_codes():
    assert make_certificate().verdict == CERTIFIED
    assert make_certificate().exit_code == 0
    assert make_certificate(undetermined=["P1 P2"]).exit_code == 3
    assert make_certificate(conclusive=False).verdict == UNDETERMINED
    failed = make_certificate(failures=["x"], undetermined=["y"])
    assert failed.verdict == FAILED
    assert failed.exit_code == 2


def test_certificate_json_is_deterministic():
    cert = make_certificate(records=[{"word": "P1", "verdict": "distinguished"}],
                            summary={"shift_per_twist": -4})
    text = cert.to_json()
    assert text == make_certificate(records=[{"word": "P1", "verdict": "distinguished"}],
                                    summary={"shift_per_twist": -4}).to_json()
    assert text.endswith("\n")
    assert Certificate.from_dict(json.loads(text)).to_json() == text
    assert json.loads(text)["verdict"] == "certified"


def test_witness_digest(p22):
    P = free_module(p22, 0)
    result = is_quasi_isomorphic(P, P)
    digest = witness_digest(result)
    assert len(digest) == 16
    assert digest == witness_digest(is_quasi_isomorphic(P, P))
    assert witness_digest(is_quasi_isomorphic(P, shift(P, 2))) is None


# Test 5: atomic writes

def test_write_refuses_to_overwrite(tmp_path):
    path = str(tmp_path / "out" / "cert.json")
    write_json_atomic(path, {"a": 1})
    with pytest.raises(ConfigurationError):
        write_json_atomic(path, {"a": 2})
    assert read_json(path) == {"a": 1}
    write_json_atomic(path, {"a": 2}, force=True)
    assert read_json(path) == {"a": 2}
    assert [p.name for p in (tmp_path / "out").iterdir()] == ["cert.json"]


def test_read_json_reports_bad_files(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        read_json(str(path))
