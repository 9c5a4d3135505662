import json

import pytest

from hopfdual.exact import ShapeError
from hopfdual.hopf import sweedler_h4
from hopfdual.io import (InputError, ValidationFailure, algebra_from_json, algebra_to_json, group_from_json,
                         group_to_json, load_group)


def test_group_round_trip(corpus):
    for e in corpus.values():
        obj = json.loads(json.dumps(group_to_json(e.group)))
        h = group_from_json(obj)
        assert h.same_structure(e.group)


def test_algebra_round_trip(corpus):
    e = corpus["cz4"]
    A = e.algebras["translation"]
    B = algebra_from_json(json.loads(json.dumps(algebra_to_json(A))), e.group)
    assert B.mult == A.mult and B.act_tensor == A.act_tensor


def test_float_rejected_with_pointer():
    obj = group_to_json(sweedler_h4())
    obj["mult"][1][3] = 0.5
    with pytest.raises(InputError) as e:
        group_from_json(obj)
    assert e.value.pointer == "/mult/1/3"


def test_missing_field():
    obj = group_to_json(sweedler_h4())
    del obj["counit"]
    with pytest.raises(InputError) as e:
        group_from_json(obj)
    assert "counit" in str(e.value)


def test_non_associative_product_names_witness():
    obj = group_to_json(sweedler_h4())
    # make x^2 = 1 while keeping everything else
    obj["mult"].append([2, 2, 0, 1])
    with pytest.raises(ValidationFailure) as e:
        group_from_json(obj)
    assert e.value.check == "associativity"
    assert e.value.witness is not None


def test_host_dimension_mismatch(corpus):
    obj = algebra_to_json(corpus["cz2"].algebras["translation"])
    with pytest.raises(ShapeError):
        algebra_from_json(obj, corpus["cz3"].group)


def test_index_out_of_range():
    obj = group_to_json(sweedler_h4())
    obj["comult"].append([0, 0, 9, 1])
    with pytest.raises(ShapeError):
        group_from_json(obj)


def test_invalid_json_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text("{ not json")
    with pytest.raises(InputError):
        load_group(p)
