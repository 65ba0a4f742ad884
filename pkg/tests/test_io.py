import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endo import corpus, io, repcat
from endo.errors import SchemaError
from endo.exactla import Matrix
from endo.fincat import validate_functor, walking_arrow
from endo.vbase import FinSetMonoid
from strategies import CATEGORIES, finset_functors, vect_functors


def test_malformed_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "objects": [\n}\n')
    with pytest.raises(io.JSONInputError) as exc:
        io.read_json(p)
    assert (exc.value.lineno, exc.value.colno) == (3, 1)
    assert str(exc.value).startswith(f"{p}:3:1: invalid JSON")


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError):
        io.read_json(tmp_path / "absent.json")


@pytest.mark.parametrize("name", sorted(CATEGORIES))
def test_category_roundtrip(name):
    c = CATEGORIES[name]
    assert io.category_from_json(json.loads(io.dumps(io.category_to_json(c)))) == c


def test_matrix_units_roundtrip():
    c, _ = corpus.matrix_units()
    assert io.category_from_json(io.category_to_json(c)) == c


@given(st.one_of(finset_functors(), vect_functors()))
def test_functor_roundtrip(f):
    doc = json.loads(io.dumps(io.functor_to_json(f)))
    g = io.functor_from_json(doc, f.source)
    assert g.objects == f.objects and g.morphisms == f.morphisms


class TestFunctorSchema:
    def doc(self, **over):
        d = {"base": "finset", "objects": {"a": ["1", "2"], "b": ["1"]},
             "morphisms": {"u": {"1": "1", "2": "1"}}}
        d.update(over)
        return d

    def test_mapping_and_list_agree(self):
        c = walking_arrow()
        a = io.functor_from_json(self.doc(), c)
        b = io.functor_from_json(self.doc(morphisms={"u": ["1", "1"]}), c)
        assert a.morphisms == b.morphisms

    @pytest.mark.parametrize("bad", [
        {"base": "sets"},
        {"objects": {"a": ["1"]}},
        {"morphisms": {"u": ["1"]}},
        {"morphisms": {"u": ["1", "9"]}},
        {"morphisms": {"w": ["1", "1"]}},
        {"morphisms": {"u": {"1": "1"}}},
        {"objects": {"a": "12", "b": ["1"]}},
    ])
    def test_rejects(self, bad):
        with pytest.raises(SchemaError):
            io.functor_from_json(self.doc(**bad), walking_arrow())

    def test_vector_shapes(self):
        c = walking_arrow()
        good = {"base": "qvect", "objects": {"a": 2, "b": 1}, "morphisms": {"u": [["1", "1/2"]]}}
        f = io.functor_from_json(good, c)
        assert f.fmap("u") == Matrix.of([[1, "1/2"]])
        with pytest.raises(SchemaError):
            io.functor_from_json(dict(good, morphisms={"u": [["1"]]}), c)
        with pytest.raises(SchemaError):
            io.functor_from_json(dict(good, objects={"a": -1, "b": 1}), c)
        with pytest.raises(SchemaError):
            io.functor_from_json(good, c, base="finset")


def test_catfunctor_fills_identities():
    c, _ = corpus.matrix_units()
    doc = {"source": {"objects": ["x"], "morphisms": []}, "objects": {"x": "A"}, "morphisms": {}}
    phi = io.catfunctor_from_json(doc, c)
    assert phi.morphism_map == {"id_x": "id_A"} and validate_functor(phi).ok
    with pytest.raises(SchemaError):
        io.catfunctor_from_json(dict(doc, objects={"x": "Z"}), c)


class TestMonoids:
    def test_table_roundtrip(self):
        m = FinSetMonoid.from_table(["e", "z"], [["e", "z"], ["z", "z"]])
        assert io.monoid_from_json(io.monoid_to_json(m)) == m

    @pytest.mark.parametrize("name", sorted(repcat.faithfulness_corpus()))
    def test_algebra_roundtrip(self, name):
        m = repcat.faithfulness_corpus()[name]
        assert io.monoid_from_json(json.loads(io.dumps(io.monoid_to_json(m)))) == m

    @pytest.mark.parametrize("bad", [
        {},
        {"elements": ["e", "e"], "table": [["e", "e"], ["e", "e"]]},
        {"elements": ["e"], "table": [["x"]]},
        {"elements": ["a", "b"], "table": [["a", "a"], ["a", "a"]]},
        {"dim": 1, "structure_constants": [[["1", "2"]]], "unit": ["1"]},
        {"dim": 1, "structure_constants": [[["1"]]], "unit": []},
        {"dim": -1, "structure_constants": [], "unit": []},
        {"dim": 1, "structure_constants": [[["x"]]], "unit": ["1"]},
    ])
    def test_rejects(self, bad):
        with pytest.raises(SchemaError):
            io.monoid_from_json(bad)


def test_dumps_is_canonical():
    doc = {"b": [1, 2], "a": {"x": "1/2"}}
    assert io.dumps(doc) == io.dumps(json.loads(io.dumps(doc)))
    assert io.dumps(doc).endswith("}\n")
