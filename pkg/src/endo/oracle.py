"""Brute-force oracles that share no elimination or enumeration code with
the engines they check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .errors import GuardExceeded, Report, VerificationError
from .exactla import Matrix, Subspace
from .vbase import FINSET


@dataclass(frozen=True)
class NaturalFamily:
    """Component maps by object, each a dict of element names."""

    components: dict

    def as_indices(self, f, g):
        """Index-tuple components in object order (the engine's encoding)."""
        out = []
        for x in f.source.objects:
            src, tgt = f.fobj(x).elements, g.fobj(x).elements
            comp = self.components[x]
            out.append(tuple(tgt.index(comp[a]) for a in src))
        return tuple(out)


def _named_map(fn, dom, cod):
    return {a: cod.elements[fn[i]] for i, a in enumerate(dom.elements)}


def enumerate_nat(f, g, guard=10 ** 6):
    """All natural families ``F => G`` by filtering every candidate."""
    objs = list(f.source.objects)
    size = 1
    for x in objs:
        size *= len(g.fobj(x).elements) ** len(f.fobj(x).elements)
    if size > guard:
        raise GuardExceeded(size, guard, "candidate families")
    fmaps = {m.name: _named_map(f.fmap(m.name), f.fobj(m.dom), f.fobj(m.cod))
             for m in f.source.morphisms}
    gmaps = {m.name: _named_map(g.fmap(m.name), g.fobj(m.dom), g.fobj(m.cod))
             for m in g.source.morphisms}
    choices = []
    for x in objs:
        src, tgt = f.fobj(x).elements, g.fobj(x).elements
        choices.append([dict(zip(src, images)) for images in product(tgt, repeat=len(src))])
    out = []
    for cand in product(*choices):
        comp = dict(zip(objs, cand))
        if all(gmaps[m.name][comp[m.dom][a]] == comp[m.cod][fmaps[m.name][a]]
               for m in f.source.morphisms for a in f.fobj(m.dom).elements):
            out.append(NaturalFamily(comp))
    return out


# -- fraction-free elimination ------------------------------------------------


def _integer_rows(rows):
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = lcm(*[x.denominator for x in r]) if r else 1
        out.append([int(x * den) for x in r])
    return out


def bareiss_reduce(rows, ncols):
    """Fraction-free Gauss-Jordan: every step divides exactly by the
    previous pivot.  Returns the integer rows (zero rows dropped) and the
    pivot columns."""
    m = _integer_rows(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(len(m)):
            if i == r:
                continue
            a = m[i][c]
            row = m[i]
            for j in range(ncols):
                num = piv * row[j] - a * m[r][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise VerificationError("inexact division in fraction-free elimination")
                row[j] = q
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _normal_form(vectors, n):
    reduced, pivots = bareiss_reduce(vectors, n)
    basis = []
    for row, c in zip(reduced, pivots):
        basis.append(tuple(Fraction(x, row[c]) for x in row))
    return Subspace(n, tuple(basis))


def bareiss_kernel(a: Matrix) -> Subspace:
    """Kernel of ``a`` in canonical RREF form, via integer elimination."""
    reduced, pivots = bareiss_reduce(a.data, a.cols)
    piv = set(pivots)
    vectors = []
    for j in range(a.cols):
        if j in piv:
            continue
        v = [Fraction(0)] * a.cols
        v[j] = Fraction(1)
        for row, c in zip(reduced, pivots):
            v[c] = Fraction(-row[j], row[c])
        vectors.append(v)
    return _normal_form(vectors, a.cols)


def bareiss_rank(a: Matrix) -> int:
    return len(bareiss_reduce(a.data, a.cols)[1])


# -- adjunction -----------------------------------------------------------------


def _compose(g, f):
    return tuple(g[i] for i in f)


def _monoid_maps_into(m, size, mul, unit, guard):
    """All maps ``M -> N`` of finite monoids, by filtering every function."""
    count = size ** m.size
    if count > guard:
        raise GuardExceeded(count, guard, "candidate monoid maps")
    out = []
    for t in product(range(size), repeat=m.size):
        if t[m.unit] != unit:
            continue
        if all(t[m.mul(i, j)] == mul(t[i], t[j]) for i in range(m.size) for j in range(m.size)):
            out.append(t)
    return out


def _endo_reps(m, n, guard):
    """All monoid maps ``M -> [X, X]`` for ``|X| = n``, as tuples of maps."""
    funcs = list(product(range(n), repeat=n))
    count = len(funcs) ** m.size
    if count > guard:
        raise GuardExceeded(count, guard, "candidate representations")
    ident = tuple(range(n))
    out = []
    for alpha in product(funcs, repeat=m.size):
        if alpha[m.unit] != ident:
            continue
        if all(alpha[m.mul(i, j)] == _compose(alpha[i], alpha[j])
               for i in range(m.size) for j in range(m.size)):
            out.append(alpha)
    return out


def exhaustive_adjunction_check(monoid, functor, guard=10 ** 6) -> Report:
    """Enumerate both sides of ``Mon(M, E(F)) ~ families over the base`` and
    check ``adjunction_forward`` / ``adjunction_backward`` are inverse."""
    from .endcalc import endomorphism_monoid
    from .repcat import MonoidMap, Representation, adjunction_backward, adjunction_forward

    if functor.base != FINSET or monoid.base != FINSET:
        raise VerificationError("exhaustive adjunction check needs the finite-set base")
    rep = Report("adjunction")
    e = endomorphism_monoid(functor, guard)
    emon = e.monoid
    maps = _monoid_maps_into(monoid, emon.size, emon.mul, emon.unit, guard)
    objs = list(functor.source.objects)
    per_object = [_endo_reps(monoid, functor.fobj(x).size, guard) for x in objs]
    total = 1
    for p in per_object:
        total *= len(p)
    if total > guard:
        raise GuardExceeded(total, guard, "candidate families")
    families = []
    for choice in product(*per_object):
        comp = dict(zip(objs, choice))
        if all(_compose(functor.fmap(u.name), comp[u.dom][i]) ==
               _compose(comp[u.cod][i], functor.fmap(u.name))
               for u in functor.source.morphisms for i in range(monoid.size)):
            families.append(choice)
    rep.info["monoid maps"] = len(maps)
    rep.info["families"] = len(families)
    fam_set = set(families)
    for t in maps:
        fam = adjunction_forward(MonoidMap(monoid, emon, t), e)
        if not fam.certificate.ok:
            rep.fail("forward certificate", (t,), str(fam.certificate.first))
            continue
        as_tuple = tuple(fam.reps[x].alpha for x in objs)
        if as_tuple not in fam_set:
            rep.fail("forward image", (t,), "not a functorial family")
            continue
        back = adjunction_backward(monoid, fam.reps, e)
        if back.map != t:
            rep.fail("round trip (maps)", (t,))
    for choice in families:
        reps = {x: Representation(monoid, functor.fobj(x), alpha) for x, alpha in zip(objs, choice)}
        psi = adjunction_backward(monoid, reps, e)
        fwd = adjunction_forward(psi, e)
        if tuple(fwd.reps[x].alpha for x in objs) != choice:
            rep.fail("round trip (families)", (choice,))
    if len(maps) != len(families):
        rep.fail("cardinality", (len(maps), len(families)))
    return rep


# -- ends by direct equations ---------------------------------------------------


def family_product(f, s, t):
    """Coordinatewise composite ``s o t`` of two name-dict families."""
    return NaturalFamily({x: {a: s.components[x][t.components[x][a]] for a in f.fobj(x).elements}
                          for x in f.source.objects})


def enumerate_end_monoid(f, guard=10 ** 6):
    """Families of ``E(F)`` in lexicographic order with the index table of
    coordinatewise composition and the index of the identity family."""
    fams = enumerate_nat(f, f, guard)
    key = {s.as_indices(f, f): i for i, s in enumerate(fams)}

    def index(s):
        return key.get(s.as_indices(f, f))

    table = [[index(family_product(f, s, t)) for t in fams] for s in fams]
    unit = index(NaturalFamily({x: {a: a for a in f.fobj(x).elements} for x in f.source.objects}))
    return fams, table, unit


def linear_nat_equations(f, g):
    """Rows of the naturality system for vector functors, written entry by
    entry: ``(G u . s_X)[r][c] - (s_Y . F u)[r][c] = 0``.

    Unknowns are the entries of every ``s_X`` in object order, row-major.
    """
    objs = list(f.source.objects)
    offset, off = {}, 0
    for x in objs:
        offset[x] = off
        off += g.size(x) * f.size(x)
    rows = []
    for u in f.source.morphisms:
        x, y = u.dom, u.cod
        fu, gu = f.fmap(u.name), g.fmap(u.name)
        fx, gy = f.size(x), g.size(y)
        fy = f.size(y)
        gx = g.size(x)
        for r in range(gy):
            for c in range(fx):
                row = [Fraction(0)] * off
                for k in range(gx):
                    row[offset[x] + k * fx + c] += gu.data[r][k]
                for k in range(fy):
                    row[offset[y] + r * fy + k] -= fu.data[k][c]
                rows.append(row)
    return Matrix(len(rows), off, tuple(tuple(r) for r in rows)), offset


def linear_nat_oracle(f, g) -> Subspace:
    """Carrier of ``Nat(F, G)`` in product coordinates via fraction-free
    elimination."""
    a, _ = linear_nat_equations(f, g)
    return bareiss_kernel(a)
