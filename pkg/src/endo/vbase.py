"""Concrete enriched bases: finite sets and finite-dimensional rational
vector spaces.

Finite-set conventions: an object has an ordered element list; a map
``X -> Y`` is a tuple of target indices, one per source element; a hom
object lists all ``|Y| ** |X|`` maps in lexicographic order.

Vector conventions: ``Q^n`` has the standard basis; a map is a
``Matrix``; elements of ``[Q^m, Q^n]`` are ``n x m`` matrices, flattened
row-major when they are coordinates of a larger space.  Tensor products
use the Kronecker index pairing ``(i, j) -> i * n + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import BaseMismatch, Report, SchemaError, ShapeError
from .exactla import ONE, ZERO, Matrix, kernel, kron, rat
from .fincat import CatFunctor, FinCategory

FINSET = "finset"
QVECT = "qvect"


@dataclass(frozen=True)
class FinSetObj:
    elements: tuple
    base = FINSET

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise SchemaError(f"duplicate elements in {self.elements}")

    @property
    def size(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, e):
        try:
            return self.elements.index(e)
        except ValueError:
            raise SchemaError(f"{e!r} is not an element of {self.elements}") from None


@dataclass(frozen=True)
class VectObj:
    dim: int
    base = QVECT

    def __post_init__(self):
        if self.dim < 0:
            raise SchemaError("negative dimension")


@dataclass(frozen=True)
class FinSetHom:
    """All maps ``dom -> cod`` as index tuples, in lexicographic order."""

    dom: FinSetObj
    cod: FinSetObj
    base = FINSET

    @property
    def size(self):
        return self.cod.size ** self.dom.size

    def __iter__(self):
        return product(range(self.cod.size), repeat=self.dom.size)

    functions = __iter__

    def index(self, fn):
        idx = 0
        for x in fn:
            idx = idx * self.cod.size + x
        return idx


@dataclass(frozen=True)
class VectHom:
    dom_dim: int
    cod_dim: int
    base = QVECT

    @property
    def dim(self):
        return self.dom_dim * self.cod_dim

    def basis(self):
        """Elementary matrices ordered row-major."""
        out = []
        for k in range(self.dim):
            vec = [ZERO] * self.dim
            vec[k] = ONE
            out.append(Matrix.unflatten(vec, self.cod_dim, self.dom_dim))
        return out


@dataclass(frozen=True)
class ProductSet:
    """Cartesian product with lexicographic element order."""

    factors: tuple
    base = FINSET

    @property
    def size(self):
        n = 1
        for f in self.factors:
            n *= f.size
        return n

    def __iter__(self):
        return product(*[list(f) for f in self.factors])


@dataclass(frozen=True)
class SetMap:
    """A map between finite sets given by a Python function."""

    dom: object
    cod: object
    fn: object = field(compare=False)

    def __call__(self, x):
        return self.fn(x)


def _base_of(x):
    try:
        return x.base
    except AttributeError:
        raise BaseMismatch(f"{x!r} is not a base object") from None


def hom(x, y):
    """The hom object ``[x, y]``."""
    if _base_of(x) != _base_of(y):
        raise BaseMismatch(f"hom between {x.base} and {y.base} objects")
    if x.base == FINSET:
        return FinSetHom(x, y)
    return VectHom(x.dim, y.dim)


def compose_fn(g, f):
    """``g o f`` for index-tuple maps."""
    return tuple(g[i] for i in f)


def identity_fn(n):
    return tuple(range(n))


def internal_compose(h2, h1):
    """Enriched composition ``[Y,Z] x [X,Y] -> [X,Z]`` on elements."""
    if isinstance(h2, Matrix) and isinstance(h1, Matrix):
        return h2 @ h1
    if isinstance(h2, Matrix) or isinstance(h1, Matrix):
        raise BaseMismatch("cannot compose a matrix with a function")
    if any(i >= len(h2) for i in h1):
        raise ShapeError("function codomain does not match domain")
    return compose_fn(h2, h1)


def identity_element(x):
    if x.base == FINSET:
        return identity_fn(x.size)
    return Matrix.identity(x.dim)


def _vdim(o):
    return o.dim


def finite_product(objs, base=None):
    """Product with its projections.

    Finite sets: cartesian product, projections pick coordinates.
    Vectors: direct sum, projections are block matrices.
    The empty product is the terminal object, so ``base`` must then be given.
    """
    objs = list(objs)
    bases = {_base_of(o) for o in objs}
    if base is not None:
        bases.add(base)
    if len(bases) != 1:
        raise BaseMismatch("product needs objects of one base" if bases else "empty product needs a base")
    (base,) = bases
    if base == FINSET:
        carrier = ProductSet(tuple(objs))
        projections = [SetMap(carrier, o, (lambda k: lambda t: t[k])(k)) for k, o in enumerate(objs)]
        return carrier, projections
    dims = [_vdim(o) for o in objs]
    total = sum(dims)
    projections = []
    off = 0
    for d in dims:
        projections.append(Matrix(d, total, tuple(
            tuple(ONE if j == off + i else ZERO for j in range(total)) for i in range(d))))
        off += d
    return VectObj(total), projections


def equalizer(f, g):
    """Equalizer of parallel maps ``f, g``.

    Finite sets: ``(FinSetObj of equalized elements, inclusion SetMap)``.
    Vectors: ``(Subspace ker(f - g), inclusion Matrix)``.
    """
    if isinstance(f, Matrix) and isinstance(g, Matrix):
        if f.shape != g.shape:
            raise ShapeError("equalizer of non-parallel matrices")
        sub = kernel(f - g)
        return sub, sub.inclusion()
    if isinstance(f, SetMap) and isinstance(g, SetMap):
        if f.dom != g.dom or f.cod != g.cod:
            raise ShapeError("equalizer of non-parallel maps")
        sub = FinSetObj(tuple(x for x in f.dom if f(x) == g(x)))
        return sub, SetMap(sub, f.dom, lambda x: x)
    raise BaseMismatch("equalizer of maps from different bases")


# -- monoids --------------------------------------------------------------


@dataclass(frozen=True)
class FinSetMonoid:
    """Monoid on ``elements`` with ``table[i][j]`` the index of ``e_i * e_j``."""

    elements: tuple
    table: tuple
    unit: int
    base = FINSET

    @property
    def size(self):
        return len(self.elements)

    def mul(self, i, j):
        return self.table[i][j]

    def check_axioms(self) -> Report:
        rep = Report("monoid")
        n = self.size
        if len(self.table) != n or any(len(r) != n for r in self.table):
            rep.fail("shape", (n,), "multiplication table is not n x n")
            return rep
        if not 0 <= self.unit < n:
            rep.fail("unit", (self.unit,), "unit out of range")
            return rep
        for i in range(n):
            if self.table[self.unit][i] != i or self.table[i][self.unit] != i:
                rep.fail("unit", (self.elements[i],))
        for i, j, k in product(range(n), repeat=3):
            if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                rep.fail("associativity", (self.elements[i], self.elements[j], self.elements[k]))
        return rep

    @classmethod
    def from_table(cls, elements, table, unit=None):
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        try:
            t = tuple(tuple(idx[x] for x in row) for row in table)
        except KeyError as exc:
            raise SchemaError(f"table entry {exc.args[0]!r} is not an element") from None
        n = len(elements)
        if len(t) != n or any(len(r) != n for r in t):
            raise SchemaError("multiplication table is not n x n")
        if unit is None:
            cands = [u for u in range(n) if all(t[u][i] == i and t[i][u] == i for i in range(n))]
            if not cands:
                raise SchemaError("monoid table has no two-sided unit")
            u = cands[0]
        else:
            u = idx[unit] if unit in idx else None
            if u is None:
                raise SchemaError(f"unit {unit!r} is not an element")
        return cls(elements, t, u)


@dataclass(frozen=True)
class VectMonoid:
    """Unital algebra on Q^dim.

    ``mult`` is ``dim x dim^2``; column ``i * dim + j`` holds the
    coordinates of ``e_i * e_j``.
    """

    dim: int
    mult: Matrix
    unit: tuple
    base = QVECT

    def mul(self, u, v):
        return self.mult.apply(tuple(x * y for x in u for y in v))

    def left_mult(self, a) -> Matrix:
        """Matrix of ``v -> a * v`` for a coordinate vector ``a``."""
        d = self.dim
        cols = []
        for b in range(d):
            e = [ZERO] * d
            e[b] = ONE
            cols.append(self.mul(a, e))
        return Matrix.from_columns(cols, d)

    def basis_vector(self, a):
        return tuple(ONE if i == a else ZERO for i in range(self.dim))

    def check_axioms(self) -> Report:
        rep = Report("algebra")
        d = self.dim
        if self.mult.shape != (d, d * d) or len(self.unit) != d:
            rep.fail("shape", (d,), "structure constants or unit have the wrong size")
            return rep
        e = [self.basis_vector(a) for a in range(d)]
        for a in range(d):
            if self.mul(self.unit, e[a]) != e[a] or self.mul(e[a], self.unit) != e[a]:
                rep.fail("unit", (a,))
        for a, b, c in product(range(d), repeat=3):
            if self.mul(self.mul(e[a], e[b]), e[c]) != self.mul(e[a], self.mul(e[b], e[c])):
                rep.fail("associativity", (a, b, c))
        return rep

    @classmethod
    def from_constants(cls, dim, constants, unit):
        """``constants[i][j][k]`` is the coefficient of ``e_k`` in ``e_i * e_j``."""
        try:
            cols = [tuple(rat(constants[i][j][k]) for k in range(dim))
                    for i in range(dim) for j in range(dim)]
        except (IndexError, TypeError) as exc:
            raise SchemaError("structure constants must be a dim x dim x dim array") from exc
        if len(unit) != dim:
            raise SchemaError("unit vector has the wrong length")
        return cls(dim, Matrix.from_columns(cols, dim), tuple(rat(x) for x in unit))

    def constants(self):
        d = self.dim
        return [[list(self.mult.column(i * d + j)) for j in range(d)] for i in range(d)]


def tensor_monoid_action(m: VectMonoid, x: VectObj):
    """Free representation ``M (x) X``: returns ``(carrier, action)`` where
    ``action = mult (x) id_X : M (x) (M (x) X) -> M (x) X``."""
    if getattr(m, "base", None) != QVECT or getattr(x, "base", None) != QVECT:
        raise BaseMismatch("free representations are only implemented over vector spaces")
    return VectObj(m.dim * x.dim), kron(m.mult, Matrix.identity(x.dim))


# -- functors into a base -----------------------------------------------------


@dataclass(frozen=True)
class BaseFunctor:
    """A functor from a finite category into one of the two bases.

    ``objects`` maps object names to ``FinSetObj``/``VectObj``;
    ``morphisms`` maps every morphism name (identities included) to an
    index tuple or a ``Matrix``.
    """

    source: FinCategory
    base: str
    objects: dict = field(hash=False)
    morphisms: dict = field(hash=False)

    def fobj(self, x):
        return self.objects[x]

    def fmap(self, name):
        return self.morphisms[name]

    def size(self, x):
        o = self.objects[x]
        return o.size if self.base == FINSET else o.dim

    @classmethod
    def build(cls, source, base, objects, morphisms):
        """Fill in identity images and check every name is known."""
        if base not in (FINSET, QVECT):
            raise SchemaError(f"unknown base {base!r}")
        objects = dict(objects)
        for x in source.objects:
            if x not in objects:
                raise SchemaError(f"object {x!r} has no image")
            if _base_of(objects[x]) != base:
                raise BaseMismatch(f"image of {x!r} is not a {base} object")
        mors = dict(morphisms)
        for x in source.objects:
            mors.setdefault(source.identities[x], identity_element(objects[x]))
        for m in source.morphisms:
            if m.name not in mors:
                raise SchemaError(f"morphism {m.name!r} has no image")
        extra = set(objects) - set(source.objects)
        extra |= {n for n in mors if not source.has_morphism(n)}
        if extra:
            raise SchemaError(f"unknown names {sorted(extra)}")
        return cls(source, base, objects, mors)

    def precompose(self, phi: CatFunctor) -> "BaseFunctor":
        """``F o phi``."""
        if phi.target != self.source:
            raise SchemaError("functor does not land in the source of F")
        return BaseFunctor(
            phi.source, self.base,
            {x: self.objects[phi.object_map[x]] for x in phi.source.objects},
            {m.name: self.morphisms[phi.morphism_map[m.name]] for m in phi.source.morphisms},
        )

    def validate(self) -> Report:
        rep = Report("base functor")
        c = self.source
        for m in c.morphisms:
            im = self.morphisms[m.name]
            a, b = self.size(m.dom), self.size(m.cod)
            if self.base == FINSET:
                ok = isinstance(im, tuple) and len(im) == a and all(0 <= v < b for v in im)
            else:
                ok = isinstance(im, Matrix) and im.shape == (b, a)
            if not ok:
                rep.fail("typing", (m.name,), f"image is not a map {m.dom} -> {m.cod}")
                return rep
        for x in c.objects:
            if self.morphisms[c.identities[x]] != identity_element(self.objects[x]):
                rep.fail("identity", (c.identities[x],))
        for (g, f), h in c.compose.items():
            if internal_compose(self.morphisms[g], self.morphisms[f]) != self.morphisms[h]:
                rep.fail("composition", (g, f))
        return rep
