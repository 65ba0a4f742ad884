"""Ends of hom bifunctors: natural-transformation objects, endomorphism
monoids, whiskering maps and (co)endomorphism operads of functors."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import perms
from .errors import BaseMismatch, GuardExceeded, Report, SchemaError, VerificationError
from .exactla import ONE, ZERO, Matrix, Subspace, hstack, kron, kron_all, vstack
from .fincat import CatFunctor, morphism_pairs
from .operadkit import (SymSequence, TruncatedOperad, coend_action, composition_keys,
                        compose_elements, end_action)
from .vbase import (FINSET, QVECT, FinSetMonoid, SetMap, VectMonoid, compose_fn, equalizer,
                    finite_product, hom, identity_element, internal_compose)

DEFAULT_GUARD = 10 ** 6


def default_guard():
    env = os.environ.get("ENDO_GUARD")
    return int(env) if env else DEFAULT_GUARD


@dataclass(frozen=True)
class NatObject:
    """The end of ``[F-, G-]`` as a sub-object of ``prod_X [F X, G X]``.

    Finite sets: ``elements`` lists the natural families (tuples of
    component maps in object order).  Vectors: ``subspace`` holds the
    carrier in product coordinates (each component flattened row-major).
    """

    base: str
    objects: tuple
    factors: tuple
    elements: tuple = None
    subspace: Subspace = None
    offsets: tuple = ()

    @property
    def size(self):
        return len(self.elements) if self.base == FINSET else self.subspace.dim

    def _slot(self, x):
        try:
            return self.objects.index(x)
        except ValueError:
            raise SchemaError(f"unknown object {x!r}") from None

    def projection(self, x):
        """pi_X: a function on elements, or a matrix on carrier coordinates."""
        k = self._slot(x)
        if self.base == FINSET:
            return lambda s: s[k]
        inc = self.subspace.inclusion()
        d = self.factors[k].dim
        return Matrix(d, inc.cols, inc.data[self.offsets[k]:self.offsets[k] + d])

    def component(self, x, element):
        """Component at ``x`` of a carrier element (index or coordinate vector)."""
        k = self._slot(x)
        if self.base == FINSET:
            return self.elements[element][k]
        f = self.factors[k]
        vec = self.family_vector(element)
        return Matrix.unflatten(vec[self.offsets[k]:self.offsets[k] + f.dim], f.cod_dim, f.dom_dim)

    def family_vector(self, coords):
        coords = tuple(coords)
        out = [ZERO] * self.subspace.ambient_dim
        for c, b in zip(coords, self.subspace.basis):
            if c:
                for j, x in enumerate(b):
                    if x:
                        out[j] += c * x
        return tuple(out)

    def family(self, element):
        return {x: self.component(x, element) for x in self.objects}

    def locate(self, family):
        """Carrier index (finite sets) or coordinates (vectors) of a family
        given as a dict or sequence of components; None if not natural."""
        comps = [family[x] for x in self.objects] if isinstance(family, dict) else list(family)
        if self.base == FINSET:
            try:
                return self._index[tuple(comps)]
            except KeyError:
                return None
        vec = tuple(v for c in comps for v in c.flatten())
        return self.subspace.coordinates(vec)

    def __post_init__(self):
        if self.base == FINSET:
            object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})


def _check_pair(f, g):
    if f.base != g.base:
        raise BaseMismatch("functors land in different bases")
    if f.source != g.source:
        raise SchemaError("functors have different source categories")


def nat_object(f, g, guard=None) -> NatObject:
    """Equalizer of ``prod_X [F X, G X] => prod_{u: X -> Y} [F X, G Y]``.

    The first leg post-composes ``G(u)`` on the X coordinate, the second
    pre-composes ``F(u)`` on the Y coordinate.
    """
    _check_pair(f, g)
    guard = default_guard() if guard is None else guard
    c = f.source
    objects = tuple(c.objects)
    slot = {x: k for k, x in enumerate(objects)}
    factors = [hom(f.fobj(x), g.fobj(x)) for x in objects]
    legs = morphism_pairs(c)
    if f.base == FINSET:
        carrier, _ = finite_product(factors, base=FINSET)
        if carrier.size > guard:
            raise GuardExceeded(carrier.size, guard, "product of hom-sets")
        targets, _ = finite_product([hom(f.fobj(x), g.fobj(y)) for x, y, _ in legs], base=FINSET)
        post = SetMap(carrier, targets, lambda s: tuple(
            compose_fn(g.fmap(u), s[slot[x]]) for x, y, u in legs))
        pre = SetMap(carrier, targets, lambda s: tuple(
            compose_fn(s[slot[y]], f.fmap(u)) for x, y, u in legs))
        sub, _ = equalizer(post, pre)
        return NatObject(FINSET, objects, tuple(factors), elements=sub.elements)
    offsets, off = [], 0
    for h in factors:
        offsets.append(off)
        off += h.dim
    total = off
    post_blocks, pre_blocks = [], []
    for x, y, u in legs:
        fx, gy = f.size(x), g.size(y)
        post = kron(g.fmap(u), Matrix.identity(fx))
        pre = kron(Matrix.identity(gy), f.fmap(u).T)
        post_blocks.append(_place(post, offsets[slot[x]], total))
        pre_blocks.append(_place(pre, offsets[slot[y]], total))
    sub, _ = equalizer(vstack(post_blocks, total) if post_blocks else Matrix.zeros(0, total),
                       vstack(pre_blocks, total) if pre_blocks else Matrix.zeros(0, total))
    return NatObject(QVECT, objects, tuple(factors), subspace=sub, offsets=tuple(offsets))


def _place(block: Matrix, offset, total):
    """Widen ``block`` to ``total`` columns starting at ``offset``."""
    left = Matrix.zeros(block.rows, offset)
    right = Matrix.zeros(block.rows, total - offset - block.cols)
    return hstack([left, block, right], block.rows)


@dataclass(frozen=True)
class EndoMonoid:
    """E(F) with unit, multiplication and projections.

    Finite sets: ``table[i][j]`` is the index of ``s_i * s_j`` where
    ``(s * t)_X = s_X o t_X``.  Vectors: ``mult`` holds structure
    constants on the carrier basis, ``unit`` the coordinates of the
    identity family.
    """

    functor: object
    nat: NatObject
    unit: object
    mult: object

    @property
    def base(self):
        return self.nat.base

    @property
    def size(self):
        return self.nat.size

    def projection(self, x):
        return self.nat.projection(x)

    def component(self, x, element):
        return self.nat.component(x, element)

    @property
    def monoid(self):
        if self.base == FINSET:
            return FinSetMonoid(tuple(range(self.size)), self.mult, self.unit)
        return VectMonoid(self.size, self.mult, self.unit)

    def check_axioms(self) -> Report:
        return self.monoid.check_axioms()


def endomorphism_monoid(f, guard=None) -> EndoMonoid:
    nat = nat_object(f, f, guard)
    comps_id = [identity_element(f.fobj(x)) for x in nat.objects]
    if f.base == FINSET:
        unit = nat.locate(comps_id)
        table = []
        for s in nat.elements:
            row = []
            for t in nat.elements:
                k = nat.locate([compose_fn(a, b) for a, b in zip(s, t)])
                if k is None:
                    raise VerificationError("carrier is not closed under composition")
                row.append(k)
            table.append(tuple(row))
        if unit is None:
            raise VerificationError("identity family is not natural")
        return EndoMonoid(f, nat, unit, tuple(table))
    k = nat.size
    unit = nat.locate(comps_id)
    if unit is None:
        raise VerificationError("identity family is not natural")
    basis_comps = [[nat.component(x, _e(k, i)) for x in nat.objects] for i in range(k)]
    cols = []
    for a in range(k):
        for b in range(k):
            prod_ = [internal_compose(p, q) for p, q in zip(basis_comps[a], basis_comps[b])]
            coords = nat.locate(prod_)
            if coords is None:
                raise VerificationError("carrier is not closed under composition")
            cols.append(coords)
    return EndoMonoid(f, nat, unit, Matrix.from_columns(cols, k))


def _e(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


@dataclass(frozen=True)
class WhiskerMap:
    """``Phi^* : E(F) -> E(F o Phi)``; ``table`` (finite sets) or ``matrix``."""

    source: EndoMonoid
    target: EndoMonoid
    table: tuple = None
    matrix: Matrix = None
    report: Report = field(default=None, compare=False)

    @property
    def injective(self):
        if self.table is not None:
            return len(set(self.table)) == len(self.table)
        from .exactla import rank
        return rank(self.matrix) == self.matrix.cols

    @property
    def surjective(self):
        if self.table is not None:
            return set(self.table) == set(range(self.target.size))
        from .exactla import rank
        return rank(self.matrix) == self.matrix.rows

    @property
    def iso(self):
        return self.injective and self.surjective


def whisker_map(e_f: EndoMonoid, phi: CatFunctor, guard=None, e_target=None) -> WhiskerMap:
    """Restriction of natural families along ``phi``."""
    f = e_f.functor
    if phi.target != f.source:
        raise SchemaError("whiskering functor does not land in the source of F")
    fphi = f.precompose(phi)
    tgt = e_target if e_target is not None else endomorphism_monoid(fphi, guard)
    objs = phi.source.objects
    rep = Report("whisker map")
    if e_f.base == FINSET:
        table = []
        for i in range(e_f.size):
            k = tgt.nat.locate([e_f.component(phi.object_map[x], i) for x in objs])
            if k is None:
                raise VerificationError("restricted family is not natural")
            table.append(k)
        table = tuple(table)
        if table[e_f.unit] != tgt.unit:
            rep.fail("unit", (e_f.unit,))
        for i in range(e_f.size):
            for j in range(e_f.size):
                if table[e_f.mult[i][j]] != tgt.mult[table[i]][table[j]]:
                    rep.fail("multiplication", (i, j))
        return WhiskerMap(e_f, tgt, table=table, report=rep)
    cols = []
    for i in range(e_f.size):
        coords = tgt.nat.locate([e_f.component(phi.object_map[x], _e(e_f.size, i)) for x in objs])
        if coords is None:
            raise VerificationError("restricted family is not natural")
        cols.append(coords)
    mat = Matrix.from_columns(cols, tgt.size)
    if mat.apply(e_f.unit) != tuple(tgt.unit):
        rep.fail("unit", ())
    lhs = mat @ e_f.mult
    rhs = tgt.mult @ kron(mat, mat)
    for c in range(lhs.cols):
        if lhs.column(c) != rhs.column(c):
            rep.fail("multiplication", divmod(c, e_f.size))
    return WhiskerMap(e_f, tgt, matrix=mat, report=rep)


def compose_whiskers(second: WhiskerMap, first: WhiskerMap):
    """``second o first`` as a table or matrix."""
    if first.table is not None:
        return tuple(second.table[i] for i in first.table)
    return second.matrix @ first.matrix


# -- operads of functors --------------------------------------------------------


@dataclass(frozen=True)
class FunctorOperad:
    """Truncated (co)endomorphism operad of a functor with its carriers."""

    operad: TruncatedOperad
    carriers: tuple  # Subspace per arity, in product coordinates
    offsets: tuple   # per arity, start of each object block
    objects: tuple
    co: bool

    @property
    def dims(self):
        return self.operad.dims


def _tensor_power(m: Matrix, n):
    return kron_all([m] * n)


def _operad_component(f, n, co):
    """Carrier of arity ``n`` inside ``prod_X <F X^{(x)n}, F X>`` (or the dual)."""
    c = f.source
    objects = tuple(c.objects)
    slot = {x: k for k, x in enumerate(objects)}
    shapes = []
    for x in objects:
        d = f.size(x)
        shapes.append((d ** n, d) if co else (d, d ** n))
    offsets, off = [], 0
    for r, cc in shapes:
        offsets.append(off)
        off += r * cc
    total = off
    post_blocks, pre_blocks = [], []
    for x, y, u in morphism_pairs(c):
        fu = f.fmap(u)
        dx, dy = f.size(x), f.size(y)
        if co:
            # F(u)^{(x)n} o s_X == s_Y o F(u)
            left = kron(_tensor_power(fu, n), Matrix.identity(dx))
            right = kron(Matrix.identity(dy ** n), fu.T)
        else:
            # F(u) o s_X == s_Y o F(u)^{(x)n}
            left = kron(fu, Matrix.identity(dx ** n))
            right = kron(Matrix.identity(dy), _tensor_power(fu, n).T)
        post_blocks.append(_place(left, offsets[slot[x]], total))
        pre_blocks.append(_place(right, offsets[slot[y]], total))
    sub, _ = equalizer(vstack(post_blocks, total) if post_blocks else Matrix.zeros(0, total),
                       vstack(pre_blocks, total) if pre_blocks else Matrix.zeros(0, total))
    return sub, tuple(offsets), shapes


def _split(vec, offsets, shapes):
    out = []
    for off, (r, c) in zip(offsets, shapes):
        out.append(Matrix.unflatten(vec[off:off + r * c], r, c))
    return out


def _coords(sub: Subspace, mats, what):
    vec = tuple(v for m in mats for v in m.flatten())
    coords = sub.coordinates(vec)
    if coords is None:
        raise VerificationError(f"{what} leaves the end")
    return coords


def endomorphism_operad(f, cap, co=False) -> FunctorOperad:
    """Arity-wise ends of ``<F X^{(x)n}, F Y>`` (or ``<F X, F Y^{(x)n}>`` with
    ``co``), with actions and partial compositions computed coordinatewise."""
    if f.base != QVECT:
        raise BaseMismatch("operads of functors need the vector base")
    if cap < 1:
        raise SchemaError("arity cap must be at least 1")
    objects = tuple(f.source.objects)
    dims_x = [f.size(x) for x in objects]
    comps = [_operad_component(f, n, co) for n in range(cap + 1)]
    carriers = [c[0] for c in comps]
    basis = [[_split(b, off, shapes) for b in sub.basis] for sub, off, shapes in comps]
    act = coend_action if co else end_action
    gens = []
    for n in range(cap + 1):
        g = []
        for k in range(n - 1):
            s = perms.transposition(n, k)
            cols = []
            for elem in basis[n]:
                moved = [Matrix.unflatten(act(d, n, s).apply(m.flatten()), m.rows, m.cols)
                         for d, m in zip(dims_x, elem)]
                cols.append(_coords(carriers[n], moved, "symmetric-group action"))
            g.append(Matrix.from_columns(cols, carriers[n].dim))
        gens.append(tuple(g))
    seq = SymSequence(cap, tuple(s.dim for s in carriers), tuple(gens))
    structure = {}
    for m, n, i in composition_keys(cap):
        cols = []
        for mu in basis[m]:
            for nu in basis[n]:
                res = [compose_elements(a, b, i, d, m, co) for a, b, d in zip(mu, nu, dims_x)]
                cols.append(_coords(carriers[m + n - 1], res, "partial composition"))
        structure[(m, n, i)] = Matrix.from_columns(cols, carriers[m + n - 1].dim)
    unit = _coords(carriers[1], [Matrix.identity(d) for d in dims_x], "identity family")
    op = TruncatedOperad(seq, unit, structure)
    return FunctorOperad(op, tuple(carriers), tuple(c[1] for c in comps), objects, co)


def coendomorphism_operad(f, cap) -> FunctorOperad:
    return endomorphism_operad(f, cap, co=True)
