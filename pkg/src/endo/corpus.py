"""Small named categories, functor enumerators and instance generators
used by the CLI examples and the test-suite."""

from __future__ import annotations

from itertools import product

from .errors import SchemaError
from .exactla import Matrix
from .fincat import FinCategory, empty_category, terminal_category, walking_arrow
from .vbase import FINSET, QVECT, BaseFunctor, FinSetObj, VectObj, compose_fn


def _one_object(name, elements, table):
    """Monoid seen as a one-object category; ``elements[0]`` is the identity."""
    others = [(m, "*", "*") for m in elements[1:]]
    comp = [(f, g, table[(g, f)]) for g in elements[1:] for f in elements[1:]]
    return FinCategory.build(["*"], others, comp, identity_names={"*": elements[0]})


def categories():
    """Named categories with at most 4 objects and 8 morphisms."""
    cats = {
        "empty": empty_category(),
        "terminal": terminal_category(),
        "discrete2": FinCategory.build(["a", "b"], []),
        "arrow": walking_arrow(),
        "idempotent": _one_object("idem", ["1", "z"], {("z", "z"): "z"}),
        "cyclic2": _one_object("c2", ["1", "g"], {("g", "g"): "1"}),
        "left-zero": _one_object("lz", ["1", "z1", "z2"], {
            (g, f): g for g in ("z1", "z2") for f in ("z1", "z2")}),
        "parallel": FinCategory.build(["a", "b"], [("u", "a", "b"), ("v", "a", "b")]),
        "chain": FinCategory.build(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("gf", "a", "c")],
                                   [("f", "g", "gf")]),
        "span": FinCategory.build(["a", "b", "c"], [("f", "a", "b"), ("g", "a", "c")]),
        "cospan": FinCategory.build(["a", "b", "c"], [("f", "a", "c"), ("g", "b", "c")]),
        "iso": FinCategory.build(["a", "b"], [("f", "a", "b"), ("g", "b", "a")],
                                 [("f", "g", "id_a"), ("g", "f", "id_b")]),
        "split-idempotent": FinCategory.build(
            ["a", "b"], [("i", "a", "b"), ("r", "b", "a"), ("e", "b", "b")],
            [("i", "r", "id_a"), ("r", "i", "e"), ("e", "e", "e"), ("i", "e", "i"), ("e", "r", "r")]),
        "two-arrows": FinCategory.build(["a", "b", "c", "d"], [("f", "a", "b"), ("g", "c", "d")]),
        "star": FinCategory.build(["a", "b", "c", "d"], [("f", "a", "b"), ("g", "a", "c"), ("h", "a", "d")]),
    }
    return cats


def names(n):
    return tuple(str(i + 1) for i in range(n))


def finset_functors(cat: FinCategory, sizes):
    """Every functor into finite sets with ``|F x| = sizes[x]``."""
    objs = {x: FinSetObj(names(sizes[x])) for x in cat.objects}
    ids = set(cat.identities.values())
    fixed = {cat.identities[x]: tuple(range(sizes[x])) for x in cat.objects}
    free = [m for m in cat.morphisms if m.name not in ids]
    entries = list(cat.compose.items())

    def consistent(assign):
        for (g, f), h in entries:
            if g in assign and f in assign and h in assign:
                if compose_fn(assign[g], assign[f]) != assign[h]:
                    return False
        return True

    def rec(k, assign):
        if k == len(free):
            yield dict(assign)
            return
        m = free[k]
        for fn in product(range(sizes[m.cod]), repeat=sizes[m.dom]):
            assign[m.name] = fn
            if consistent(assign):
                yield from rec(k + 1, assign)
            del assign[m.name]

    for mors in rec(0, dict(fixed)):
        yield BaseFunctor(cat, FINSET, objs, mors)


def size_vectors(cat: FinCategory, max_fiber, limit):
    """Fibre sizes ``0..max_fiber`` with ``prod |F x|^|F x| <= limit``."""
    out = []
    for sz in product(range(max_fiber + 1), repeat=len(cat.objects)):
        cost = 1
        for s in sz:
            cost *= s ** s
        if cost <= limit:
            out.append(dict(zip(cat.objects, sz)))
    return out


def linearize(f: BaseFunctor) -> BaseFunctor:
    """Free vector-space functor on a finite-set functor (0/1 matrices)."""
    if f.base != FINSET:
        raise SchemaError("linearize needs a finite-set functor")
    objs = {x: VectObj(f.fobj(x).size) for x in f.source.objects}
    mors = {}
    for m in f.source.morphisms:
        fn = f.fmap(m.name)
        rows = f.fobj(m.cod).size
        mors[m.name] = Matrix.from_columns(
            [tuple(1 if r == fn[c] else 0 for r in range(rows)) for c in range(len(fn))], rows)
    return BaseFunctor(f.source, QVECT, objs, mors)


def category_from_matrices(dims, matrices):
    """Category and faithful functor from named matrices closed under product.

    ``dims`` maps objects to dimensions; ``matrices`` maps names to
    ``(dom, cod, Matrix)`` and must contain an identity for each object.
    """
    table = {}
    by_key = {}
    for name, (dom, cod, mat) in matrices.items():
        key = (dom, cod, mat)
        if key in by_key:
            raise SchemaError(f"{name} and {by_key[key]} coincide")
        by_key[key] = name
    ident = {}
    for x, d in dims.items():
        key = (x, x, Matrix.identity(d))
        if key not in by_key:
            raise SchemaError(f"identity of {x} missing")
        ident[x] = by_key[key]
    for g, (gd, gc, gm) in matrices.items():
        for f, (fd, fc, fm) in matrices.items():
            if gd != fc:
                continue
            key = (fd, gc, gm @ fm)
            if key not in by_key:
                raise SchemaError(f"{g} o {f} is not in the family")
            table[(g, f)] = by_key[key]
    objects = tuple(dims)
    ids = set(ident.values())
    mors = [(n, d, c) for n, (d, c, _) in matrices.items() if n not in ids]
    comp = [(f, g, h) for (g, f), h in table.items()]
    cat = FinCategory.build(objects, mors, comp, identity_names=ident)
    functor = BaseFunctor.build(cat, QVECT, {x: VectObj(d) for x, d in dims.items()},
                                {n: m for n, (_, _, m) in matrices.items()})
    return cat, functor


def matrix_units():
    """Q^1 and Q^2 with injections, projections, matrix units and zero maps.

    Returns ``(category, inclusion functor)``; the end of the inclusion is
    the scalars.
    """
    M = Matrix.of
    mats = {
        "id_A": ("A", "A", M([[1]])),
        "0_AA": ("A", "A", M([[0]])),
        "id_B": ("B", "B", M([[1, 0], [0, 1]])),
        "i1": ("A", "B", M([[1], [0]])),
        "i2": ("A", "B", M([[0], [1]])),
        "0_AB": ("A", "B", M([[0], [0]])),
        "p1": ("B", "A", M([[1, 0]])),
        "p2": ("B", "A", M([[0, 1]])),
        "0_BA": ("B", "A", M([[0, 0]])),
        "e11": ("B", "B", M([[1, 0], [0, 0]])),
        "e12": ("B", "B", M([[0, 1], [0, 0]])),
        "e21": ("B", "B", M([[0, 0], [1, 0]])),
        "e22": ("B", "B", M([[0, 0], [0, 1]])),
        "0_BB": ("B", "B", M([[0, 0], [0, 0]])),
    }
    return category_from_matrices({"A": 1, "B": 2}, mats)
