"""Representations of monoids and the Rep -| E adjunction.

A representation ``(X, alpha)`` is stored element-wise: finite sets
keep one index-tuple map per monoid element, vectors keep one matrix
per basis element of the algebra.  ``alpha(m * n) = alpha(m) o alpha(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseMismatch, Report, SchemaError, ShapeError, VerificationError
from .exactla import ONE, ZERO, Matrix, kron, rank
from .vbase import (FINSET, QVECT, FinSetMonoid, VectMonoid, VectObj, compose_fn, identity_element,
                    tensor_monoid_action)


@dataclass(frozen=True)
class Representation:
    monoid: object
    carrier: object
    alpha: tuple

    @property
    def base(self):
        return self.monoid.base

    def act(self, element):
        """``alpha`` at a monoid element (index) or algebra vector."""
        if self.base == FINSET:
            return self.alpha[element]
        d = self.carrier.dim
        out = Matrix.zeros(d, d)
        for c, a in zip(element, self.alpha):
            if c:
                out = out + a.scale(c)
        return out


@dataclass(frozen=True)
class RepMorphism:
    source: Representation
    target: Representation
    f: object


@dataclass(frozen=True)
class MonoidMap:
    """Finite sets: ``map[i]`` is the image index. Vectors: a matrix."""

    source: object
    target: object
    map: object

    def validate(self) -> Report:
        return validate_monoid_map(self)


def validate_monoid_map(psi: MonoidMap) -> Report:
    rep = Report("monoid map")
    m, n = psi.source, psi.target
    if m.base != n.base:
        raise BaseMismatch("monoid map between different bases")
    if m.base == FINSET:
        t = psi.map
        if len(t) != m.size or any(not 0 <= v < n.size for v in t):
            raise ShapeError("map is not a function between the carriers")
        if t[m.unit] != n.unit:
            rep.fail("unit", (m.elements[m.unit],))
        for i in range(m.size):
            for j in range(m.size):
                if t[m.mul(i, j)] != n.mul(t[i], t[j]):
                    rep.fail("multiplication", (m.elements[i], m.elements[j]))
        return rep
    a = psi.map
    if a.shape != (n.dim, m.dim):
        raise ShapeError(f"expected a {n.dim}x{m.dim} matrix")
    if a.apply(m.unit) != tuple(n.unit):
        rep.fail("unit", ())
    lhs = a @ m.mult
    rhs = n.mult @ kron(a, a)
    for c in range(lhs.cols):
        if lhs.column(c) != rhs.column(c):
            rep.fail("multiplication", divmod(c, m.dim))
    return rep


def _check_shapes(r: Representation):
    if r.monoid.base != getattr(r.carrier, "base", None):
        raise BaseMismatch("monoid and carrier live in different bases")
    if r.base == FINSET:
        if len(r.alpha) != r.monoid.size:
            raise ShapeError("one map per monoid element is required")
        n = r.carrier.size
        for a in r.alpha:
            if len(a) != n or any(not 0 <= v < n for v in a):
                raise ShapeError("action map is not an endofunction of the carrier")
    else:
        if len(r.alpha) != r.monoid.dim:
            raise ShapeError("one matrix per algebra basis element is required")
        d = r.carrier.dim
        for a in r.alpha:
            if a.shape != (d, d):
                raise ShapeError(f"action matrix is not {d}x{d}")


def validate_representation(r: Representation) -> Report:
    """``alpha`` preserves the unit and multiplication."""
    _check_shapes(r)
    rep = Report("representation")
    m = r.monoid
    if r.base == FINSET:
        if r.alpha[m.unit] != identity_element(r.carrier):
            rep.fail("unit", (m.elements[m.unit],))
        for i in range(m.size):
            for j in range(m.size):
                if r.alpha[m.mul(i, j)] != compose_fn(r.alpha[i], r.alpha[j]):
                    rep.fail("multiplication", (m.elements[i], m.elements[j]))
        return rep
    if r.act(m.unit) != Matrix.identity(r.carrier.dim):
        rep.fail("unit", ())
    for i in range(m.dim):
        for j in range(m.dim):
            if r.act(m.mult.column(i * m.dim + j)) != r.alpha[i] @ r.alpha[j]:
                rep.fail("multiplication", (i, j))
    return rep


def validate_rep_morphism(h: RepMorphism) -> Report:
    """The square ``f o alpha(m) == beta(m) o f`` for every ``m``."""
    src, tgt = h.source, h.target
    if src.monoid != tgt.monoid:
        raise SchemaError("representations of different monoids")
    rep = Report("representation morphism")
    m = src.monoid
    if src.base == FINSET:
        if len(h.f) != src.carrier.size or any(not 0 <= v < tgt.carrier.size for v in h.f):
            raise ShapeError("map is not a function between the carriers")
        for i in range(m.size):
            if compose_fn(h.f, src.alpha[i]) != compose_fn(tgt.alpha[i], h.f):
                rep.fail("square", (m.elements[i],))
        return rep
    if h.f.shape != (tgt.carrier.dim, src.carrier.dim):
        raise ShapeError("map does not go between the carriers")
    for i in range(m.dim):
        if h.f @ src.alpha[i] != tgt.alpha[i] @ h.f:
            rep.fail("square", (i,))
    return rep


def trivial_monoid(base=FINSET):
    if base == FINSET:
        return FinSetMonoid(("e",), ((0,),), 0)
    return VectMonoid(1, Matrix.of([[1]]), (ONE,))


def _e(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


# -- the adjunction -----------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """Representations ``(F X, alpha_X)`` for every object, plus the
    certificate that every ``F(u)`` is a morphism of representations."""

    reps: dict
    certificate: Report


def _certify(functor, reps) -> Report:
    rep = Report("functoriality certificate")
    for mor in functor.source.morphisms:
        r = validate_rep_morphism(RepMorphism(reps[mor.dom], reps[mor.cod], functor.fmap(mor.name)))
        for fl in r.failures:
            rep.fail("square", (mor.name,) + fl.witness)
    return rep


def adjunction_forward(psi: MonoidMap, e_f) -> Family:
    """``psi : M -> E(F)`` gives the family ``(F X, pi_X o psi)``."""
    psi.validate().raise_if_failed()
    f = e_f.functor
    m = psi.source
    reps = {}
    for x in e_f.nat.objects:
        if m.base == FINSET:
            alpha = tuple(e_f.component(x, psi.map[i]) for i in range(m.size))
        else:
            alpha = tuple(e_f.component(x, psi.map.column(a)) for a in range(m.dim))
        reps[x] = Representation(m, f.fobj(x), alpha)
        validate_representation(reps[x]).raise_if_failed()
    return Family(reps, _certify(f, reps))


def counit(e_f) -> Family:
    """The functor ``D -> Rep(E(F))`` over the base: ``adjunction_forward(id)``."""
    mon = e_f.monoid
    ident = tuple(range(mon.size)) if e_f.base == FINSET else Matrix.identity(mon.dim)
    return adjunction_forward(MonoidMap(mon, mon, ident), e_f)


def adjunction_backward(monoid, reps, e_f) -> MonoidMap:
    """Assemble ``psi : M -> E(F)`` with ``pi_X o psi == alpha_X``."""
    f = e_f.functor
    cert = _certify(f, reps)
    if not cert.ok:
        raise VerificationError(f"family is not functorial over the base: {cert.first}", cert)
    for r in reps.values():
        if r.monoid != monoid:
            raise SchemaError("family mixes representations of different monoids")
    objs = e_f.nat.objects
    if monoid.base == FINSET:
        table = []
        for i in range(monoid.size):
            k = e_f.nat.locate([reps[x].alpha[i] for x in objs])
            if k is None:
                raise VerificationError("assembled family is not natural")
            table.append(k)
        psi = MonoidMap(monoid, e_f.monoid, tuple(table))
    else:
        cols = []
        for a in range(monoid.dim):
            coords = e_f.nat.locate([reps[x].alpha[a] for x in objs])
            if coords is None:
                raise VerificationError("assembled family is not natural")
            cols.append(coords)
        psi = MonoidMap(monoid, e_f.monoid, Matrix.from_columns(cols, e_f.size))
    psi.validate().raise_if_failed()
    return psi


# -- tensored case: modules over M (x) - ------------------------------------


def _need_vect(r):
    if r.base != QVECT:
        raise BaseMismatch("module actions are only implemented over vector spaces")


def to_module_action(r: Representation) -> Matrix:
    """Transpose ``alpha : M -> [X, X]`` to ``M (x) X -> X``."""
    _need_vect(r)
    d = r.carrier.dim
    cols = [a.column(x) for a in r.alpha for x in range(d)]
    return Matrix.from_columns(cols, d)


def from_module_action(monoid: VectMonoid, x: VectObj, action: Matrix) -> Representation:
    d = x.dim
    if action.shape != (d, monoid.dim * d):
        raise ShapeError(f"action must be {d}x{monoid.dim * d}")
    alpha = tuple(Matrix.from_columns([action.column(a * d + j) for j in range(d)], d)
                  for a in range(monoid.dim))
    return Representation(monoid, x, alpha)


def validate_module_action(monoid: VectMonoid, x: VectObj, action: Matrix) -> Report:
    """``act o (mult (x) X) == act o (M (x) act)`` and ``act o (u (x) X) == id``."""
    rep = Report("module")
    d = x.dim
    if action.shape != (d, monoid.dim * d):
        raise ShapeError(f"action must be {d}x{monoid.dim * d}")
    eye = Matrix.identity(d)
    u = Matrix.from_columns([monoid.unit], monoid.dim)
    if action @ kron(u, eye) != eye:
        rep.fail("unit", ())
    lhs = action @ kron(monoid.mult, eye)
    rhs = action @ kron(Matrix.identity(monoid.dim), action)
    for c in range(lhs.cols):
        if lhs.column(c) != rhs.column(c):
            a, rest = divmod(c, monoid.dim * d)
            rep.fail("associativity", (a, rest // d))
    return rep


def validate_module_map(monoid: VectMonoid, act_x: Matrix, act_y: Matrix, f: Matrix) -> Report:
    """``f o act_X == act_Y o (M (x) f)``."""
    rep = Report("module map")
    lhs = f @ act_x
    rhs = act_y @ kron(Matrix.identity(monoid.dim), f)
    for c in range(lhs.cols):
        if lhs.column(c) != rhs.column(c):
            rep.fail("square", divmod(c, f.cols))
    return rep


def free_representation(monoid: VectMonoid, x: VectObj) -> Representation:
    """``M`` acting on ``M (x) X`` by left multiplication."""
    carrier, action = tensor_monoid_action(monoid, x)
    return from_module_action(monoid, carrier, action)


def regular_representation(monoid: VectMonoid) -> Representation:
    return free_representation(monoid, VectObj(1))


@dataclass(frozen=True)
class FaithfulnessReport:
    dim: int
    rank: int
    matrix: Matrix

    @property
    def passed(self):
        return self.rank == self.dim


def faithfulness_probe(monoid: VectMonoid) -> FaithfulnessReport:
    """Rank of ``M -> [M, M]`` induced by the regular representation."""
    monoid.check_axioms().raise_if_failed()
    reg = regular_representation(monoid)
    validate_representation(reg).raise_if_failed()
    mat = Matrix.from_columns([a.flatten() for a in reg.alpha], monoid.dim ** 2)
    return FaithfulnessReport(monoid.dim, rank(mat), mat)


# -- corpus of small algebras ---------------------------------------------------


def algebra(dim, products, unit) -> VectMonoid:
    """Algebra from ``{(i, j): {k: coeff}}`` on basis indices."""
    cols = []
    for i in range(dim):
        for j in range(dim):
            col = [ZERO] * dim
            for k, c in products.get((i, j), {}).items():
                col[k] = ONE * c
            cols.append(tuple(col))
    return VectMonoid(dim, Matrix.from_columns(cols, dim), tuple(ONE * x for x in unit))


def rationals():
    return algebra(1, {(0, 0): {0: 1}}, [1])


def split_pair():
    """Q x Q with idempotent basis."""
    return algebra(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, [1, 1])


def dual_numbers():
    """Q[t]/(t^2) on the basis 1, t."""
    return algebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [1, 0])


def truncated_polynomials(n):
    """Q[t]/(t^n) on 1, t, ..., t^{n-1}."""
    return algebra(n, {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n},
                   [1] + [0] * (n - 1))


def matrix_algebra(n=2):
    """n x n matrices on the units e_ij, ordered row-major."""
    prods = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                prods[(i * n + j, j * n + k)] = {i * n + k: 1}
    return algebra(n * n, prods, [1 if i == j else 0 for i in range(n) for j in range(n)])


def group_algebra_cyclic(n=2):
    return algebra(n, {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)},
                   [1] + [0] * (n - 1))


def upper_triangular():
    """Upper-triangular 2 x 2 matrices on e11, e12, e22."""
    return algebra(3, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}, [1, 0, 1])


def faithfulness_corpus():
    return {
        "Q": rationals(),
        "QxQ": split_pair(),
        "Q[t]/(t^2)": dual_numbers(),
        "M2(Q)": matrix_algebra(2),
        "Q[C2]": group_algebra_cyclic(2),
    }
