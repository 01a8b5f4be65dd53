import json
import random

import pytest

from dspace import constructors as c
from dspace.documents import DocumentError, as_space, dumps, load, loads, save, save_document
from dspace.simplicial import axiom_check

from helpers import corrupted_s0, space

D12 = {"kind": "poset", "version": 1, "elements": [1, 2, 3, 4, 6, 12],
       "leq": [[a, b] for a in (1, 2, 3, 4, 6, 12) for b in (1, 2, 3, 4, 6, 12) if b % a == 0]}
PARTIAL = {"kind": "partial-monoid", "elements": ["e", "x"], "unit": "e",
           "table": [["e", "e", "e"], ["e", "x", "x"], ["x", "e", "x"]]}
Z3 = {"kind": "group", "elements": [0, 1, 2], "unit": 0,
      "table": [[a, b, (a + b) % 3] for a in range(3) for b in range(3)]}


def shuffled(d, seed):
    rng = random.Random(seed)
    out = {}
    for k, v in d.items():
        if isinstance(v, list):
            v = list(v)
            rng.shuffle(v)
        out[k] = v
    return out


def objects():
    return [("category", c.divisor_poset(12)),
            ("groupoid", c.two_object_aut().core()),
            ("groupoid", space("fat-z2").levels[1]),
            ("simplicial", c.nerve(c.chain(3), 3)),
            ("simplicial", c.fat_nerve(c.z2(), 2)),
            ("semi-simplicial", c.edge_semi(3)),
            ("map", space("interval-1-6", 3))]


@pytest.mark.parametrize("kind,obj", objects(), ids=lambda x: x if isinstance(x, str) else "")
def test_round_trip_is_byte_identical(kind, obj):
    text = save(kind, obj)
    doc = loads(text)
    assert doc.kind == kind
    assert save_document(doc) == text


@pytest.mark.parametrize("d", [D12, PARTIAL, Z3], ids=lambda d: d["kind"])
def test_sugar_documents_are_order_insensitive(d):
    canonical = save_document(loads(json.dumps(d)))
    for seed in range(3):
        assert save_document(loads(json.dumps(shuffled(d, seed)))) == canonical
    assert save_document(loads(canonical)) == canonical


def test_poset_document_gives_category(tmp_path):
    p = tmp_path / "d12.json"
    p.write_text(json.dumps(D12))
    doc = load(p)
    assert doc.kind == "poset" and len(doc.obj.objects) == 6
    X = as_space(doc, 3)
    assert axiom_check(X, "segal")


def test_tuple_ids_survive():
    X = c.nerve(c.z2(), 2)
    back = loads(save("simplicial", X)).obj
    assert set(back.levels[2].objects) == set(X.levels[2].objects)
    assert ("x", "x") in back.levels[2].objects


@pytest.mark.parametrize("text,match", [
    ("{", "JSON parse error"),
    ("[]", "JSON object"),
    ('{"version": 1}', "missing field 'kind'"),
    ('{"kind": "sheaf"}', "unknown kind"),
    ('{"kind": "poset", "version": 7, "elements": [], "leq": []}', "unsupported version"),
    ('{"kind": "poset", "elements": [0, 1]}', "missing field 'leq'"),
    ('{"kind": "poset", "elements": [0, 1], "leq": [[0]]}', r"poset.leq\[0\]"),
    ('{"kind": "poset", "elements": [0.5], "leq": []}', "not a valid id"),
    ('{"kind": "poset", "elements": [0, 1, 2], "leq": [[0, 1], [1, 2]]}', "transitivity"),
])
def test_loader_errors_carry_a_location(text, match):
    with pytest.raises(DocumentError, match=match):
        loads(text)


def test_group_needs_inverses():
    d = {"kind": "group", "elements": [0, 1], "unit": 0,
         "table": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]]}
    with pytest.raises(DocumentError, match="no inverse"):
        loads(json.dumps(d))


def test_broken_simplicial_identity_is_named():
    with pytest.raises(DocumentError, match="d_0 s_0"):
        loads(save("simplicial", corrupted_s0()))


def test_partial_monoid_strong_associativity_on_load():
    d = {"kind": "partial-monoid", "elements": ["e", "a", "b"], "unit": "e",
         "table": [["e", v, v] for v in "eab"] + [["a", "e", "a"], ["b", "e", "b"],
                                                     ["a", "a", "b"], ["b", "a", "b"]]}
    with pytest.raises(DocumentError, match="associativ"):
        loads(json.dumps(d))


def test_map_documents_need_one_component_per_level():
    d = json.loads(save("map", space("interval-1-6", 3)))
    d["components"] = d["components"][:-1]
    with pytest.raises(DocumentError, match="one component"):
        loads(json.dumps(d))


def test_dumps_is_sorted_and_versioned():
    text = dumps("poset", {"leq": [], "elements": []})
    assert json.loads(text) == {"kind": "poset", "version": 1, "leq": [], "elements": []}
    assert text.index('"elements"') < text.index('"kind"') < text.index('"leq"')
