"""JSON documents for categories, functors, monoids and algebras.

Rationals are written as ``"p/q"`` (or ``"p"``) strings and matrices as
row-major nested arrays.  Loaders raise ``SchemaError`` on anything that
does not fit the documented shape.
"""

from __future__ import annotations

import json

from .errors import SchemaError, ShapeError
from .exactla import Matrix, format_rat
from .fincat import CatFunctor, FinCategory
from .vbase import FINSET, QVECT, BaseFunctor, FinSetMonoid, FinSetObj, VectMonoid, VectObj


class JSONInputError(SchemaError):
    """Malformed JSON text; carries the position of the problem."""

    def __init__(self, path, exc: json.JSONDecodeError):
        super().__init__(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")
        self.lineno, self.colno = exc.lineno, exc.colno


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JSONInputError(path, exc) from None


def _need(doc, key, kind, where):
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in doc:
        raise SchemaError(f"{where}: missing key {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise SchemaError(f"{where}: {key!r} has the wrong type")
    return val


def read_matrix(nested, rows, cols, where="matrix"):
    if not isinstance(nested, list) or not all(isinstance(r, list) for r in nested):
        raise SchemaError(f"{where}: expected a nested array")
    if rows == 0:
        if nested:
            raise SchemaError(f"{where}: expected 0 rows, got {len(nested)}")
        return Matrix.zeros(0, cols)
    try:
        m = Matrix.of(nested, cols)
    except ShapeError:
        raise SchemaError(f"{where}: rows have unequal lengths") from None
    if m.shape != (rows, cols):
        raise SchemaError(f"{where}: expected {rows}x{cols}, got {m.rows}x{m.cols}")
    return m


def write_matrix(m: Matrix):
    return m.tolist()


# -- categories -------------------------------------------------------------------


def category_from_json(doc) -> FinCategory:
    objects = _need(doc, "objects", list, "category")
    mors = _need(doc, "morphisms", list, "category")
    comp = doc.get("composition", [])
    if not isinstance(comp, list):
        raise SchemaError("category: 'composition' must be a list")
    if not all(isinstance(x, str) for x in objects):
        raise SchemaError("category: object names must be strings")
    triples = []
    for i, m in enumerate(mors):
        w = f"category morphism #{i}"
        triples.append((_need(m, "name", str, w), _need(m, "dom", str, w), _need(m, "cod", str, w)))
    entries = []
    for i, e in enumerate(comp):
        w = f"category composition #{i}"
        entries.append((_need(e, "first", str, w), _need(e, "then", str, w), _need(e, "equals", str, w)))
    ids = doc.get("identities")
    if ids is not None and not isinstance(ids, dict):
        raise SchemaError("category: 'identities' must map objects to names")
    return FinCategory.build(objects, triples, entries, identity_names=ids)


def category_to_json(c: FinCategory) -> dict:
    ids = set(c.identities.values())
    doc = {
        "objects": list(c.objects),
        "morphisms": [{"name": m.name, "dom": m.dom, "cod": m.cod}
                      for m in c.morphisms if m.name not in ids],
        "composition": [{"first": f, "then": g, "equals": h}
                        for (g, f), h in sorted(c.compose.items())
                        if g not in ids and f not in ids],
    }
    custom = {x: n for x, n in c.identities.items() if n != f"id_{x}"}
    if custom:
        doc["identities"] = custom
    return doc


# -- functors into a base -----------------------------------------------------------


def _finset_map(entry, dom: FinSetObj, cod: FinSetObj, where):
    if isinstance(entry, dict):
        if set(entry) != set(dom.elements):
            raise SchemaError(f"{where}: mapping keys must be exactly the domain elements")
        images = [entry[a] for a in dom.elements]
    elif isinstance(entry, list):
        if len(entry) != dom.size:
            raise SchemaError(f"{where}: expected {dom.size} images, got {len(entry)}")
        images = entry
    else:
        raise SchemaError(f"{where}: expected a mapping or a list of images")
    out = []
    for b in images:
        if not isinstance(b, str) or b not in cod.elements:
            raise SchemaError(f"{where}: image {b!r} is not in the codomain")
        out.append(cod.index(b))
    return tuple(out)


def functor_from_json(doc, category: FinCategory, base=None) -> BaseFunctor:
    declared = _need(doc, "base", str, "functor")
    if declared not in (FINSET, QVECT):
        raise SchemaError(f"functor: unknown base {declared!r}")
    if base is not None and base != declared:
        raise SchemaError(f"functor: declared base {declared!r} but {base!r} was requested")
    objs_doc = _need(doc, "objects", dict, "functor")
    mors_doc = _need(doc, "morphisms", dict, "functor")
    objects = {}
    for x, v in objs_doc.items():
        if declared == FINSET:
            if not isinstance(v, list) or not all(isinstance(e, str) for e in v):
                raise SchemaError(f"functor: image of {x!r} must be a list of element names")
            objects[x] = FinSetObj(tuple(v))
        else:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise SchemaError(f"functor: image of {x!r} must be a dimension")
            objects[x] = VectObj(v)
    missing = [x for x in category.objects if x not in objects]
    if missing:
        raise SchemaError(f"functor: object {missing[0]!r} has no image")
    morphisms = {}
    for name, entry in mors_doc.items():
        if not category.has_morphism(name):
            raise SchemaError(f"functor: unknown morphism {name!r}")
        m = category.morphism(name)
        where = f"functor image of {name!r}"
        if declared == FINSET:
            morphisms[name] = _finset_map(entry, objects[m.dom], objects[m.cod], where)
        else:
            morphisms[name] = read_matrix(entry, objects[m.cod].dim, objects[m.dom].dim, where)
    return BaseFunctor.build(category, declared, objects, morphisms)


def functor_to_json(f: BaseFunctor) -> dict:
    ids = set(f.source.identities.values())
    if f.base == FINSET:
        objs = {x: list(f.fobj(x).elements) for x in f.source.objects}
        mors = {m.name: [f.fobj(m.cod).elements[i] for i in f.fmap(m.name)]
                for m in f.source.morphisms if m.name not in ids}
    else:
        objs = {x: f.fobj(x).dim for x in f.source.objects}
        mors = {m.name: f.fmap(m.name).tolist()
                for m in f.source.morphisms if m.name not in ids}
    return {"base": f.base, "objects": objs, "morphisms": mors}


def catfunctor_from_json(doc, target: FinCategory) -> CatFunctor:
    """``{"source": category, "objects": {x: y}, "morphisms": {name: name}}``;
    identity images may be omitted."""
    source = category_from_json(_need(doc, "source", dict, "functor"))
    omap = _need(doc, "objects", dict, "functor")
    mmap = dict(_need(doc, "morphisms", dict, "functor"))
    for x in source.objects:
        if x not in omap:
            raise SchemaError(f"functor: object {x!r} has no image")
        if omap[x] not in target.objects:
            raise SchemaError(f"functor: {omap[x]!r} is not an object of the target")
        mmap.setdefault(source.identities[x], target.identities[omap[x]])
    return CatFunctor(source, target, dict(omap), mmap)


# -- monoids and algebras ---------------------------------------------------------


def monoid_from_json(doc):
    """Finite monoid (``elements`` + ``table``) or algebra (``dim`` +
    ``structure_constants`` + ``unit``)."""
    if not isinstance(doc, dict):
        raise SchemaError("monoid: expected an object")
    if "elements" in doc:
        elements = _need(doc, "elements", list, "monoid")
        table = _need(doc, "table", list, "monoid")
        if len(set(map(str, elements))) != len(elements) or not all(isinstance(e, str) for e in elements):
            raise SchemaError("monoid: elements must be distinct strings")
        if not all(isinstance(r, list) for r in table):
            raise SchemaError("monoid: table must be a list of rows")
        return FinSetMonoid.from_table(elements, table, doc.get("unit"))
    if "dim" in doc:
        dim = _need(doc, "dim", int, "algebra")
        if dim < 0:
            raise SchemaError("algebra: negative dimension")
        consts = _need(doc, "structure_constants", list, "algebra")
        unit = _need(doc, "unit", list, "algebra")
        if len(consts) != dim or any(not isinstance(r, list) or len(r) != dim for r in consts) or \
                any(not isinstance(c, list) or len(c) != dim for r in consts for c in r):
            raise SchemaError("algebra: structure_constants must be a dim x dim x dim array")
        return VectMonoid.from_constants(dim, consts, unit)
    raise SchemaError("monoid: expected 'elements' and 'table', or 'dim'")


def monoid_to_json(m) -> dict:
    if m.base == FINSET:
        return {"elements": list(m.elements),
                "table": [[m.elements[k] for k in row] for row in m.table],
                "unit": m.elements[m.unit]}
    return {"dim": m.dim,
            "structure_constants": [[[format_rat(x) for x in c] for c in row] for row in m.constants()],
            "unit": [format_rat(x) for x in m.unit]}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=True) + "\n"


__all__ = [
    "JSONInputError", "read_json", "read_matrix", "write_matrix",
    "category_from_json", "category_to_json", "functor_from_json", "functor_to_json",
    "catfunctor_from_json", "monoid_from_json", "monoid_to_json", "dumps",
]
