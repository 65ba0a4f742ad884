"""Finite categories given by total composition tables, and functors
between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import Report, SchemaError


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True)
class FinCategory:
    """A small category.

    ``compose[(g, f)]`` is the name of ``g o f`` (``f`` first).  The table
    must cover exactly the composable pairs, identities included.
    """

    objects: tuple
    morphisms: tuple
    identities: dict = field(hash=False)
    compose: dict = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {m.name: m for m in self.morphisms})

    def morphism(self, name) -> Morphism:
        try:
            return self._by_name[name]
        except KeyError:
            raise SchemaError(f"unknown morphism {name!r}") from None

    def has_morphism(self, name):
        return name in self._by_name

    def dom(self, name):
        return self.morphism(name).dom

    def cod(self, name):
        return self.morphism(name).cod

    def comp(self, g, f):
        """``g o f``."""
        return self.compose[(g, f)]

    def hom(self, x, y):
        return [m.name for m in self.morphisms if m.dom == x and m.cod == y]

    def is_identity(self, name):
        m = self.morphism(name)
        return self.identities.get(m.dom) == name

    def non_identity(self):
        ids = set(self.identities.values())
        return [m for m in self.morphisms if m.name not in ids]

    @classmethod
    def build(cls, objects, morphisms, composition=(), identity_names=None):
        """Assemble a category from non-identity data.

        ``morphisms`` are ``(name, dom, cod)`` triples; ``composition``
        holds ``(first, then, equals)`` triples for the non-identity
        composable pairs.  Identities are added as ``id_<object>``.
        """
        objects = tuple(objects)
        if len(set(objects)) != len(objects):
            raise SchemaError("duplicate object names")
        identity_names = dict(identity_names or {})
        ids = {x: identity_names.get(x, f"id_{x}") for x in objects}
        mors = [Morphism(ids[x], x, x) for x in objects]
        for name, dom, cod in morphisms:
            if dom not in objects or cod not in objects:
                raise SchemaError(f"morphism {name!r} has unknown endpoint")
            mors.append(Morphism(name, dom, cod))
        names = [m.name for m in mors]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate morphism names")
        by_name = {m.name: m for m in mors}
        table = {}
        for m in mors:
            table[(m.name, ids[m.dom])] = m.name
            table[(ids[m.cod], m.name)] = m.name
        for first, then, equals in composition:
            for n in (first, then, equals):
                if n not in by_name:
                    raise SchemaError(f"composition mentions unknown morphism {n!r}")
            table[(then, first)] = equals
        return cls(objects, tuple(mors), ids, table)


def terminal_category(obj="*"):
    return FinCategory.build([obj], [])


def empty_category():
    return FinCategory.build([], [])


def walking_arrow(a="a", b="b", u="u"):
    return FinCategory.build([a, b], [(u, a, b)])


def validate_category(c: FinCategory) -> Report:
    """Typing, unit and associativity axioms; stops at the first failure."""
    rep = Report("category")
    mors = c.morphisms
    names = {m.name for m in mors}
    for x in c.objects:
        i = c.identities.get(x)
        if i is None or i not in names or c.dom(i) != x or c.cod(i) != x:
            rep.fail("identity", (x,), "missing or mistyped identity")
            return rep
    for key in c.compose:
        g, f = key
        if g not in names or f not in names or c.dom(g) != c.cod(f):
            rep.fail("typing", key, "composition entry for a non-composable pair")
            return rep
    for g, f in product(mors, mors):
        if g.dom != f.cod:
            continue
        h = c.compose.get((g.name, f.name))
        if h is None:
            rep.fail("typing", (g.name, f.name), "composable pair missing from table")
            return rep
        if h not in names or c.dom(h) != f.dom or c.cod(h) != g.cod:
            rep.fail("typing", (g.name, f.name), f"composite {h!r} has wrong endpoints")
            return rep
    for f in mors:
        if c.compose[(c.identities[f.cod], f.name)] != f.name:
            rep.fail("unit", (c.identities[f.cod], f.name))
            return rep
        if c.compose[(f.name, c.identities[f.dom])] != f.name:
            rep.fail("unit", (f.name, c.identities[f.dom]))
            return rep
    for h, g, f in product(mors, mors, mors):
        if g.dom != f.cod or h.dom != g.cod:
            continue
        left = c.compose[(h.name, c.compose[(g.name, f.name)])]
        right = c.compose[(c.compose[(h.name, g.name)], f.name)]
        if left != right:
            rep.fail("associativity", (h.name, g.name, f.name), f"{left} != {right}")
            return rep
    return rep


@dataclass(frozen=True)
class CatFunctor:
    source: FinCategory
    target: FinCategory
    object_map: dict = field(hash=False)
    morphism_map: dict = field(hash=False)

    def __call__(self, name):
        return self.morphism_map[name]


def _check_names(phi: CatFunctor):
    for x in phi.source.objects:
        if x not in phi.object_map:
            raise SchemaError(f"object {x!r} has no image")
        if phi.object_map[x] not in phi.target.objects:
            raise SchemaError(f"object image {phi.object_map[x]!r} is not a target object")
    for m in phi.source.morphisms:
        if m.name not in phi.morphism_map:
            raise SchemaError(f"morphism {m.name!r} has no image")
        if not phi.target.has_morphism(phi.morphism_map[m.name]):
            raise SchemaError(f"morphism image {phi.morphism_map[m.name]!r} is not a target morphism")
    extra = set(phi.object_map) - set(phi.source.objects)
    extra |= {n for n in phi.morphism_map if not phi.source.has_morphism(n)}
    if extra:
        raise SchemaError(f"unknown source names {sorted(extra)}")


def validate_functor(phi: CatFunctor) -> Report:
    _check_names(phi)
    rep = Report("functor")
    src, tgt = phi.source, phi.target
    for m in src.morphisms:
        im = tgt.morphism(phi.morphism_map[m.name])
        if im.dom != phi.object_map[m.dom] or im.cod != phi.object_map[m.cod]:
            rep.fail("typing", (m.name,), f"image {im.name} is not {phi.object_map[m.dom]} -> {phi.object_map[m.cod]}")
            return rep
    for x in src.objects:
        if phi.morphism_map[src.identities[x]] != tgt.identities[phi.object_map[x]]:
            rep.fail("identity", (src.identities[x],))
            return rep
    for (g, f), h in src.compose.items():
        if phi.morphism_map[h] != tgt.comp(phi.morphism_map[g], phi.morphism_map[f]):
            rep.fail("composition", (g, f))
            return rep
    return rep


def identity_functor(c: FinCategory) -> CatFunctor:
    return CatFunctor(c, c, {x: x for x in c.objects}, {m.name: m.name for m in c.morphisms})


def compose_functors(phi: CatFunctor, psi: CatFunctor) -> CatFunctor:
    """``phi o psi``: apply ``psi`` first."""
    if psi.target != phi.source:
        raise SchemaError("target of the first functor is not the source of the second")
    return CatFunctor(
        psi.source, phi.target,
        {x: phi.object_map[y] for x, y in psi.object_map.items()},
        {m: phi.morphism_map[n] for m, n in psi.morphism_map.items()},
    )


def full_subcategory(c: FinCategory, objects):
    """The full subcategory on ``objects`` and its inclusion functor."""
    keep = [x for x in c.objects if x in set(objects)]
    mors = tuple(m for m in c.morphisms if m.dom in keep and m.cod in keep)
    names = {m.name for m in mors}
    table = {k: v for k, v in c.compose.items() if k[0] in names and k[1] in names}
    sub = FinCategory(tuple(keep), mors, {x: c.identities[x] for x in keep}, table)
    inc = CatFunctor(sub, c, {x: x for x in keep}, {m.name: m.name for m in mors})
    return sub, inc


def morphism_pairs(c: FinCategory):
    """All ``(dom, cod, name)`` in declaration order of the morphisms."""
    return [(m.dom, m.cod, m.name) for m in c.morphisms]
