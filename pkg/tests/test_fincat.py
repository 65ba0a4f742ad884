from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endo import corpus
from endo.errors import SchemaError
from endo.fincat import (CatFunctor, FinCategory, compose_functors, empty_category,
                         full_subcategory, identity_functor, morphism_pairs, terminal_category,
                         validate_category, validate_functor, walking_arrow)

CATS = corpus.categories()


def all_functors(src: FinCategory, tgt: FinCategory):
    """Every functor, by filtering all object and morphism assignments."""
    out = []
    for objs in product(tgt.objects, repeat=len(src.objects)):
        omap = dict(zip(src.objects, objs))
        choices = [tgt.hom(omap[m.dom], omap[m.cod]) for m in src.morphisms]
        for ims in product(*choices):
            phi = CatFunctor(src, tgt, omap, {m.name: i for m, i in zip(src.morphisms, ims)})
            if validate_functor(phi).ok:
                out.append(phi)
    return out


def is_category(c: FinCategory):
    """Independent restatement of the axioms."""
    by = {m.name: m for m in c.morphisms}
    comp = c.compose
    pairs = [(g, f) for g in by.values() for f in by.values() if g.dom == f.cod]
    if set(comp) != {(g.name, f.name) for g, f in pairs}:
        return False
    for g, f in pairs:
        h = by.get(comp[(g.name, f.name)])
        if h is None or (h.dom, h.cod) != (f.dom, g.cod):
            return False
    for f in by.values():
        if comp[(c.identities[f.cod], f.name)] != f.name or comp[(f.name, c.identities[f.dom])] != f.name:
            return False
    for h, g, f in product(by.values(), repeat=3):
        if g.dom == f.cod and h.dom == g.cod:
            if comp[(h.name, comp[(g.name, f.name)])] != comp[(comp[(h.name, g.name)], f.name)]:
                return False
    return True


class TestValidateCategory:
    def test_terminal(self):
        assert validate_category(terminal_category()).ok

    def test_walking_arrow(self):
        assert validate_category(walking_arrow()).ok

    def test_unit_failure(self):
        c = FinCategory.build(["a", "b"], [("u", "a", "b"), ("v", "a", "b")])
        table = dict(c.compose)
        table[("id_b", "u")] = "v"
        bad = FinCategory(c.objects, c.morphisms, c.identities, table)
        rep = validate_category(bad)
        assert not rep.ok
        assert (rep.first.axiom, rep.first.witness) == ("unit", ("id_b", "u"))

    def test_missing_pair(self):
        c = walking_arrow()
        table = dict(c.compose)
        del table[("u", "id_a")]
        rep = validate_category(FinCategory(c.objects, c.morphisms, c.identities, table))
        assert rep.first.axiom == "typing"

    @pytest.mark.parametrize("name", sorted(CATS))
    def test_corpus(self, name):
        assert validate_category(CATS[name]).ok

    def test_matrix_units(self):
        cat, _ = corpus.matrix_units()
        assert validate_category(cat).ok
        assert len(cat.morphisms) == 14

    @given(st.sampled_from(sorted(CATS)), st.data())
    def test_agrees_with_restatement(self, name, data):
        c = CATS[name]
        table = dict(c.compose)
        keys = sorted(table)
        if keys:
            for _ in range(data.draw(st.integers(0, 2))):
                k = data.draw(st.sampled_from(keys))
                table[k] = data.draw(st.sampled_from([m.name for m in c.morphisms]))
        mutated = FinCategory(c.objects, c.morphisms, c.identities, table)
        assert validate_category(mutated).ok == is_category(mutated)

    def test_unknown_names(self):
        with pytest.raises(SchemaError):
            FinCategory.build(["a"], [("f", "a", "z")])
        with pytest.raises(SchemaError):
            FinCategory.build(["a"], [("f", "a", "a")], [("f", "g", "f")])
        with pytest.raises(SchemaError):
            FinCategory.build(["a", "a"], [])


class TestFunctors:
    def test_identity(self):
        assert validate_functor(identity_functor(walking_arrow())).ok

    def test_constant_to_terminal(self):
        c, t = walking_arrow(), terminal_category()
        phi = CatFunctor(c, t, {"a": "*", "b": "*"}, {m.name: "id_*" for m in c.morphisms})
        assert validate_functor(phi).ok

    def test_typing_failure(self):
        c = walking_arrow()
        phi = CatFunctor(c, c, {"a": "a", "b": "b"}, {"id_a": "id_a", "id_b": "id_b", "u": "id_a"})
        assert validate_functor(phi).first.axiom == "typing"

    def test_unknown_image(self):
        c = walking_arrow()
        phi = CatFunctor(c, c, {"a": "a", "b": "b"}, {"id_a": "id_a", "id_b": "id_b", "u": "w"})
        with pytest.raises(SchemaError):
            validate_functor(phi)

    def test_composition_with_identities(self):
        c = walking_arrow()
        t = terminal_category()
        phi = CatFunctor(c, t, {"a": "*", "b": "*"}, {m.name: "id_*" for m in c.morphisms})
        assert compose_functors(phi, identity_functor(c)) == phi
        assert compose_functors(identity_functor(t), phi) == phi

    def test_inclusion_then_constant(self):
        c, t = walking_arrow(), terminal_category()
        sub, inc = full_subcategory(c, ["a"])
        const = CatFunctor(c, t, {"a": "*", "b": "*"}, {m.name: "id_*" for m in c.morphisms})
        got = compose_functors(const, inc)
        assert got.object_map == {"a": "*"} and got.morphism_map == {"id_a": "id_*"}
        assert validate_functor(got).ok

    @pytest.mark.parametrize("names", [("arrow", "iso", "split-idempotent"),
                                       ("idempotent", "split-idempotent", "left-zero"),
                                       ("chain", "arrow", "cyclic2")])
    def test_composition_associative(self, names):
        a, b, c = (CATS[n] for n in names)
        fs, gs, hs = all_functors(a, b), all_functors(b, c), all_functors(c, c)
        assert fs and gs and hs
        for f, g, h in product(fs, gs, hs[:4]):
            left = compose_functors(h, compose_functors(g, f))
            right = compose_functors(compose_functors(h, g), f)
            assert left == right
            assert validate_functor(left).ok


class TestMorphismPairs:
    def test_terminal(self):
        assert morphism_pairs(terminal_category()) == [("*", "*", "id_*")]

    def test_arrow(self):
        assert [n for _, _, n in morphism_pairs(walking_arrow())] == ["id_a", "id_b", "u"]

    def test_empty(self):
        assert morphism_pairs(empty_category()) == []

    def test_deterministic(self):
        cat, _ = corpus.matrix_units()
        assert morphism_pairs(cat) == morphism_pairs(cat)
