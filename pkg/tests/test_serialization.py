import json
from fractions import Fraction

import pytest

from quiverbundles.bundles import validate
from quiverbundles.generators import bundle_spec, gen_bundle, gen_rep, rep_spec
from quiverbundles.polynomials import poly_mat_is_zero
from quiverbundles.serialization import (
    DocumentError,
    InstanceDocument,
    bundle_to_doc,
    dumps,
    instance_to_doc,
    parse_document,
    rep_to_doc,
    schema_errors,
)


def _rep_doc():
    spec = rep_spec(9, seed=0)
    x = gen_rep(spec)
    level = {i: spec.level for i in spec.double.ordinary_vertices}
    return x, level, rep_to_doc(x, level=level, meta={"seed": spec.seed, "preset": spec.preset})


def _bundle_doc():
    e = gen_bundle(bundle_spec(6, seed=3))
    return e, bundle_to_doc(e, meta={"seed": 3, "preset": "chain"})


def test_rep_roundtrip_exact():
    x, level, doc = _rep_doc()
    assert schema_errors(doc) == []
    parsed = parse_document(json.loads(dumps(doc)))
    assert parsed.kind == "rep"
    assert parsed.rep == x
    assert parsed.level == level
    assert parsed.meta["preset"] == "adhm"
    assert dumps(instance_to_doc(parsed)) == dumps(doc)


def test_bundle_roundtrip_exact():
    e, doc = _bundle_doc()
    assert schema_errors(doc) == []
    parsed = parse_document(json.loads(dumps(doc)))
    assert parsed.kind == "bundle"
    assert parsed.bundle == e
    assert validate(parsed.bundle).valid
    assert dumps(instance_to_doc(parsed)) == dumps(doc)
    assert not poly_mat_is_zero(parsed.bundle.phi["e-"])


def test_zero_entries_encode_as_null():
    e, doc = _bundle_doc()
    assert all(entry is None for row in doc["data"]["f-"] for entry in row)


def test_schema_error_pointers():
    _, doc = _bundle_doc()
    bad = json.loads(dumps(doc))
    bad["twist"]["loop+"] = "x"
    (pointer, message) = schema_errors(bad)[0]
    assert pointer == "/twist/loop+"
    assert "integer" in message
    bad = json.loads(dumps(doc))
    bad["version"] = 2
    assert schema_errors(bad)[0][0] == "/version"
    x, _, rdoc = _rep_doc()
    bad = json.loads(dumps(rdoc))
    bad["data"]["loop+"][0][0] = "1/2/3"
    assert schema_errors(bad)[0][0].startswith("/data/loop+/0/0")


def test_parse_rejects_bad_references():
    _, doc = _bundle_doc()
    bad = json.loads(dumps(doc))
    bad["quiver"]["arrows"][0]["head"] = "9"
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/quiver/arrows/0/head"

    bad = json.loads(dumps(doc))
    bad["quiver"]["vertices"][1]["framing"] = True
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/quiver/vertices"

    bad = json.loads(dumps(doc))
    del bad["twist"]["e-"]
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/twist"


def test_parse_rejects_kind_mismatches():
    x, _, rdoc = _rep_doc()
    bad = json.loads(dumps(rdoc))
    del bad["dims"]
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/dims"

    _, doc = _bundle_doc()
    bad = json.loads(dumps(doc))
    bad["dims"] = {"0": 1}
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/dims"

    bad = json.loads(dumps(rdoc))
    bad["lambda"] = {"0": "1"}
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/lambda/0"


def test_parse_rejects_shape_and_entry_problems():
    _, doc = _bundle_doc()
    bad = json.loads(dumps(doc))
    bad["data"]["e-"][0] = []
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/data/e-"

    x, _, rdoc = _rep_doc()
    bad = json.loads(dumps(rdoc))
    bad["data"]["frame+"][0][0] = ["1", "0"]
    with pytest.raises(DocumentError) as err:
        parse_document(bad)
    assert err.value.pointer == "/data/frame+/0/0"


def test_level_survives_and_defaults_empty():
    x, level, doc = _rep_doc()
    assert level and parse_document(doc).level == level
    bare = rep_to_doc(x)
    assert "lambda" not in bare
    assert parse_document(bare).level == {}


def test_instance_document_wrapper():
    e, doc = _bundle_doc()
    item = InstanceDocument("bundle", bundle=e, meta={"seed": 3, "preset": "chain"})
    assert instance_to_doc(item) == doc
