import json

import pytest

from jordanlab.maps import inner_derivation
from jordanlab.specs import SpecError, load_json, map_from_spec, ring_from_spec


def test_ring_kinds():
    assert ring_from_spec({"kind": "zmod", "m": 5}).order == 5
    m2 = ring_from_spec({"kind": "matrix", "base": {"kind": "zmod", "m": 3}, "r": 2})
    assert m2.name == "M2(Z3)"
    blk = ring_from_spec({"kind": "block", "base": {"kind": "zmod", "m": 2}, "r": 3, "partition": [2, 1]})
    assert blk.order == 2**7
    z2 = ring_from_spec({"kind": "tables", "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]], "one": 1})
    assert z2.order == 2 and z2.name == "tables"


@pytest.mark.parametrize(
    "spec",
    [
        [],
        {"kind": "ring"},
        {"kind": "zmod"},
        {"kind": "zmod", "m": 1},
        {"kind": "zmod", "m": "x"},
        {"kind": "matrix", "base": {"kind": "zmod", "m": 3}, "r": 3, "cap": 100},
        {"kind": "block", "base": {"kind": "zmod", "m": 3}, "r": 3, "partition": [1, 1]},
        {"kind": "tables", "add": [[0, 1], [1]], "mul": [[0, 0], [0, 1]], "one": 1},
    ],
)
def test_bad_ring_specs(spec):
    with pytest.raises(SpecError):
        ring_from_spec(spec)


def test_map_specs(t2):
    ad = map_from_spec({"construct": "inner", "a": "E12"}, t2)
    assert ad == inner_derivation(t2, t2.element("E12"))
    assert map_from_spec({"images": [0] * 27}, t2).key() == (0,) * 27
    total = map_from_spec({"construct": "sum", "terms": [{"construct": "identity"}, {"construct": "zero"}]}, t2)
    assert total.key() == tuple(range(27))
    for bad in ({"construct": "nope"}, {"images": [0]}, {"construct": "inner"}, {"construct": "sum", "terms": []},
                {"construct": "scalar", "mu": "E33"}):
        with pytest.raises(SpecError):
            map_from_spec(bad, t2)


def test_load_json(tmp_path):
    good = tmp_path / "a.json"
    good.write_text(json.dumps({"kind": "zmod", "m": 3}))
    assert load_json(good)["m"] == 3
    (tmp_path / "b.json").write_text("{")
    with pytest.raises(SpecError):
        load_json(tmp_path / "b.json")
    with pytest.raises(SpecError):
        load_json(tmp_path / "missing.json")
