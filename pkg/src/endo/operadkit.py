"""Truncated symmetric sequences and operads over rational vector spaces.

Sigma_n acts on the right.  An action is given by the matrices of the
adjacent transpositions ``s_k = (k, k+1)``; the matrix of any
permutation ``p`` follows from a word for ``p`` with the rule
``rho(then(p, q)) == rho(q) @ rho(p)`` (see ``perms``).

Partial compositions ``o_i`` use 1-based ``i`` and are stored as
structure-constant matrices ``P(m) (x) P(n) -> P(m + n - 1)`` (Kronecker
order).  Anything whose arity exceeds the cap is dropped, and axiom
instances that would pass through such an arity are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import prod

from . import perms
from .errors import Report, SchemaError, ShapeError
from .exactla import (ONE, ZERO, Matrix, Subspace, direct_sum, format_rat, kron,
                      perm_action_matrix, quotient, rat)


# -- symmetric sequences ------------------------------------------------------


@dataclass(frozen=True)
class SymSequence:
    cap: int
    dims: tuple
    gens: tuple  # gens[n][k] is the matrix of s_k on component n
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.dims) != self.cap + 1 or len(self.gens) != self.cap + 1:
            raise ShapeError("one dimension and one generator list per arity up to the cap")
        for n, (d, g) in enumerate(zip(self.dims, self.gens)):
            if len(g) != max(n - 1, 0) or any(m.shape != (d, d) for m in g):
                raise ShapeError(f"arity {n} needs {max(n - 1, 0)} generator matrices of size {d}")

    def action(self, n, p) -> Matrix:
        p = tuple(p)
        key = (n, p)
        if key not in self._cache:
            m = Matrix.identity(self.dims[n])
            for k in perms.adjacent_word(p):
                m = self.gens[n][k] @ m
            self._cache[key] = m
        return self._cache[key]

    def check(self) -> Report:
        """Coxeter relations for every component."""
        rep = Report("symmetric sequence")
        for n in range(self.cap + 1):
            g = self.gens[n]
            one = Matrix.identity(self.dims[n])
            for k in range(len(g)):
                if g[k] @ g[k] != one:
                    rep.fail("involution", (n, k))
                if k + 1 < len(g):
                    b = g[k] @ g[k + 1]
                    if b @ b @ b != one:
                        rep.fail("braid", (n, k))
                for l in range(k + 2, len(g)):
                    if g[k] @ g[l] != g[l] @ g[k]:
                        rep.fail("commutation", (n, k, l))
        return rep


def trivial_sequence(cap, dims):
    """Every component carries the trivial action."""
    dims = tuple(dims) + (0,) * (cap + 1 - len(dims))
    return SymSequence(cap, dims[:cap + 1], tuple(
        tuple(Matrix.identity(dims[n]) for _ in range(max(n - 1, 0))) for n in range(cap + 1)))


def concentrated(cap, arity, dim, gens=None):
    dims = [0] * (cap + 1)
    dims[arity] = dim
    seq = trivial_sequence(cap, dims)
    if gens is None:
        return seq
    all_gens = list(seq.gens)
    all_gens[arity] = tuple(gens)
    return SymSequence(cap, seq.dims, tuple(all_gens))


def unit_convolution(cap):
    """Unit of the convolution: Q in arity 0."""
    return concentrated(cap, 0, 1)


def unit_circ(cap):
    """Unit of the composition product: Q in arity 1."""
    return concentrated(cap, 1, 1)


def regular_sequence(cap):
    """Q[Sigma_n] with right multiplication, basis in lexicographic order."""
    dims, gens = [], []
    for n in range(cap + 1):
        basis = perms.all_perms(n)
        index = {p: i for i, p in enumerate(basis)}
        dims.append(len(basis))
        g = []
        for k in range(n - 1):
            s = perms.transposition(n, k)
            cols = [_unit_vec(len(basis), index[perms.then(p, s)]) for p in basis]
            g.append(Matrix.from_columns(cols, len(basis)))
        gens.append(tuple(g))
    return SymSequence(cap, tuple(dims), tuple(gens))


def _unit_vec(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


def _check_caps(a, b):
    if a.cap != b.cap:
        raise SchemaError(f"arity caps differ: {a.cap} vs {b.cap}")


def _compositions(k, parts, cap, dims_list):
    """Tuples ``(k_1..k_parts)`` summing to ``k`` with non-zero components."""
    if parts == 0:
        if k == 0:
            yield ()
        return
    for first in range(min(k, cap) + 1):
        if dims_list[0][first] == 0:
            continue
        for rest in _compositions(k - first, parts - 1, cap, dims_list[1:]):
            yield (first,) + rest


def _label_partitions(labels, sizes):
    """Ordered set partitions of ``labels`` with the given block sizes,
    each block sorted, in lexicographic order."""
    if not sizes:
        if not labels:
            yield ()
        return
    for block in combinations(labels, sizes[0]):
        rest = tuple(x for x in labels if x not in block)
        for tail in _label_partitions(rest, sizes[1:]):
            yield (block,) + tail


@dataclass(frozen=True)
class InducedModule:
    """``Ind`` of a tensor product of components to Sigma_k.

    A basis element is ``(ks, blocks, b)``: factor ``j`` sits in arity
    ``ks[j]``, receives the labels ``blocks[j]`` and the basis vector
    ``b[j]``.  This is the induced-representation model of the
    convolution power ``seqs[0] * ... * seqs[-1]`` in arity ``k``.
    """

    seqs: tuple
    k: int
    basis: tuple
    index: dict = field(compare=False, hash=False, repr=False)

    @classmethod
    def build(cls, seqs, k):
        seqs = tuple(seqs)
        cap = seqs[0].cap if seqs else k
        basis = []
        for ks in _compositions(k, len(seqs), cap, [s.dims for s in seqs]):
            for blocks in _label_partitions(tuple(range(k)), ks):
                for b in product(*[range(s.dims[kj]) for s, kj in zip(seqs, ks)]):
                    basis.append((ks, blocks, b))
        return cls(seqs, k, tuple(basis), {key: i for i, key in enumerate(basis)})

    @property
    def dim(self):
        return len(self.basis)

    def right_generator(self, t) -> Matrix:
        """Matrix of the adjacent transposition ``s_t`` of Sigma_k."""
        s = perms.transposition(self.k, t)
        cols = []
        for ks, blocks, b in self.basis:
            new_blocks = tuple(tuple(sorted(s[x] for x in blk)) for blk in blocks)
            factor_cols = []
            for seq, kj, blk, nblk, bj in zip(self.seqs, ks, blocks, new_blocks, b):
                h = tuple(nblk.index(s[x]) for x in blk)
                factor_cols.append(seq.action(kj, h).column(bj))
            col = [ZERO] * self.dim
            for bb in product(*[range(len(c)) for c in factor_cols]):
                coef = prod((c[x] for c, x in zip(factor_cols, bb)), start=ONE)
                if coef:
                    col[self.index[(ks, new_blocks, bb)]] += coef
            cols.append(tuple(col))
        return Matrix.from_columns(cols, self.dim)

    def swap_factors(self, j):
        """Basis permutation exchanging tensor factors ``j`` and ``j + 1``."""
        def sw(t):
            t = list(t)
            t[j], t[j + 1] = t[j + 1], t[j]
            return tuple(t)
        return [self.index[(sw(ks), sw(blocks), sw(b))] for ks, blocks, b in self.basis]


def convolution(a: SymSequence, b: SymSequence) -> SymSequence:
    """Day convolution, truncated at the common cap."""
    _check_caps(a, b)
    dims, gens = [], []
    for n in range(a.cap + 1):
        mod = InducedModule.build((a, b), n)
        dims.append(mod.dim)
        gens.append(tuple(mod.right_generator(t) for t in range(n - 1)))
    return SymSequence(a.cap, tuple(dims), tuple(gens))


@dataclass(frozen=True)
class CoinvariantTerm:
    """``M(n) (x)_{Sigma_n} W`` as a quotient of ``M(n) (x) W``."""

    arity: int
    ambient_dim: int
    dim: int
    projection: Matrix
    section: Matrix


def _coinvariants(m: SymSequence, n, w_dim, factor_gen):
    """Quotient of ``M(n) (x) W`` by ``(m . s) (x) (s . w) - m (x) w``.

    ``factor_gen(j)`` is the matrix of the factor transposition ``j`` on W.
    """
    amb = m.dims[n] * w_dim
    rels = []
    for j in range(n - 1):
        d = kron(m.gens[n][j], factor_gen(j))
        for c in range(amb):
            col = list(d.column(c))
            col[c] -= ONE
            if any(col):
                rels.append(col)
    qdim, proj, sec = quotient(amb, Subspace.span(amb, rels))
    return CoinvariantTerm(n, amb, qdim, proj, sec)


def _perm_matrix_from_images(images, n):
    cols = [_unit_vec(n, images[i]) for i in range(n)]
    return Matrix.from_columns(cols, n)


def circ_component(m: SymSequence, nseq: SymSequence, k):
    """Terms ``(coinvariant term, induced module)`` of ``(M <| N)(k)``."""
    out = []
    for n in range(m.cap + 1):
        if m.dims[n] == 0:
            continue
        mod = InducedModule.build((nseq,) * n, k)
        if mod.dim == 0:
            continue
        term = _coinvariants(m, n, mod.dim,
                             lambda j: _perm_matrix_from_images(mod.swap_factors(j), mod.dim))
        if term.dim:
            out.append((term, mod))
    return out


def circ_product(m: SymSequence, nseq: SymSequence) -> SymSequence:
    """``(M <| N)(k) = sum_n M(n) (x)_{Sigma_n} N^{*n}(k)``."""
    _check_caps(m, nseq)
    dims, gens = [], []
    for k in range(m.cap + 1):
        terms = circ_component(m, nseq, k)
        dims.append(sum(t.dim for t, _ in terms))
        g = []
        for t in range(k - 1):
            blocks = [term.projection @ kron(Matrix.identity(m.dims[term.arity]), mod.right_generator(t))
                      @ term.section for term, mod in terms]
            g.append(direct_sum(*blocks) if blocks else Matrix.zeros(0, 0))
        gens.append(tuple(g))
    return SymSequence(m.cap, tuple(dims), tuple(gens))


@dataclass(frozen=True)
class CircObject:
    dim: int
    terms: tuple  # CoinvariantTerm per contributing arity


def circ_on_object(m: SymSequence, x) -> CircObject:
    """``M <| X = sum_n M(n) (x)_{Sigma_n} X^{(x)n}`` for ``X = Q^d``."""
    d = x if isinstance(x, int) else x.dim
    terms = []
    for n in range(m.cap + 1):
        if m.dims[n] == 0 or d ** n == 0:
            continue
        term = _coinvariants(m, n, d ** n,
                             lambda j: perm_action_matrix(perms.transposition(n, j), d))
        if term.dim:
            terms.append(term)
    return CircObject(sum(t.dim for t in terms), tuple(terms))


# -- operads ------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedOperad:
    seq: SymSequence
    unit: tuple
    comps: dict = field(hash=False)  # (m, n, i) -> Matrix, i 1-based

    @property
    def cap(self):
        return self.seq.cap

    @property
    def dims(self):
        return self.seq.dims

    def compose(self, m, n, i) -> Matrix:
        return self.comps[(m, n, i)]

    def action(self, n, p):
        return self.seq.action(n, p)


def composition_keys(cap):
    return [(m, n, i) for m in range(1, cap + 1) for n in range(0, cap + 1)
            if m + n - 1 <= cap for i in range(1, m + 1)]


def _eye(n):
    return Matrix.identity(n)


def end_action(d, n, p) -> Matrix:
    """Right action of ``p`` on flattened ``Hom(X^{(x)n}, X)``: ``phi -> phi o P_{p^-1}``."""
    return kron(_eye(d), perm_action_matrix(perms.inverse(p), d).T)


def coend_action(d, n, p) -> Matrix:
    """Right action of ``p`` on flattened ``Hom(X, X^{(x)n})``: ``psi -> P_p o psi``."""
    return kron(perm_action_matrix(p, d), _eye(d))


def _basis_matrices(rows, cols):
    out = []
    for r in range(rows):
        for c in range(cols):
            data = [[ZERO] * cols for _ in range(rows)]
            data[r][c] = ONE
            out.append(Matrix(rows, cols, tuple(tuple(x) for x in data)))
    return out


def _object_operad(d, cap, co):
    if cap < 1:
        raise SchemaError("arity cap must be at least 1")
    shape = (lambda n: (d ** n, d)) if co else (lambda n: (d, d ** n))
    act = coend_action if co else end_action
    dims = tuple(d ** (n + 1) for n in range(cap + 1))
    gens = tuple(tuple(act(d, n, perms.transposition(n, k)) for k in range(n - 1))
                 for n in range(cap + 1))
    seq = SymSequence(cap, dims, gens)
    basis = [_basis_matrices(*shape(n)) for n in range(cap + 1)]
    comps = {}
    for m, n, i in composition_keys(cap):
        cols = []
        for mu in basis[m]:
            for nu in basis[n]:
                r = compose_elements(mu, nu, i, d, m, co)
                cols.append(r.flatten())
        comps[(m, n, i)] = Matrix.from_columns(cols, dims[m + n - 1])
    unit = Matrix.identity(d).flatten()
    return TruncatedOperad(seq, unit, comps)


def compose_elements(mu, nu, i, d, m, co=False):
    """``mu o_i nu`` in End(Q^d) (substitution into input ``i``) or, with
    ``co``, in coEnd(Q^d) (applied to output factor ``i``); ``m`` is the
    arity of ``mu``."""
    ins = kron(kron(_eye(d ** (i - 1)), nu), _eye(d ** (m - i)))
    return ins @ mu if co else mu @ ins


def end_operad_of_object(x, cap) -> TruncatedOperad:
    """``End(X)(n) = Hom(X^{(x)n}, X)`` with substitution."""
    return _object_operad(x if isinstance(x, int) else x.dim, cap, co=False)


def coend_operad_of_object(x, cap) -> TruncatedOperad:
    """``coEnd(X)(n) = Hom(X, X^{(x)n})`` with cosubstitution."""
    return _object_operad(x if isinstance(x, int) else x.dim, cap, co=True)


def com_operad(cap) -> TruncatedOperad:
    """Unital commutative operad: Q in every arity, trivial actions."""
    seq = trivial_sequence(cap, [1] * (cap + 1))
    one = Matrix.identity(1)
    return TruncatedOperad(seq, (ONE,), {k: one for k in composition_keys(cap)})


def ass_operad(cap) -> TruncatedOperad:
    """Associative operad: ``Q[Sigma_n]`` for ``n >= 1``, zero in arity 0.

    ``e_sigma`` is the monomial ``x_sigma(1) ... x_sigma(n)``.
    """
    reg = regular_sequence(cap)
    dims = (0,) + reg.dims[1:]
    gens = (tuple(),) + reg.gens[1:]
    seq = SymSequence(cap, dims, gens)
    bases = [perms.all_perms(n) if n else [] for n in range(cap + 1)]
    index = [{p: i for i, p in enumerate(b)} for b in bases]
    comps = {}
    for m, n, i in composition_keys(cap):
        out_dim = dims[m + n - 1]
        cols = []
        for sigma in bases[m]:
            for tau in bases[n]:
                word = []
                for j in sigma:
                    if j < i - 1:
                        word.append(j)
                    elif j == i - 1:
                        word.extend(i - 1 + t for t in tau)
                    else:
                        word.append(j + n - 1)
                cols.append(_unit_vec(out_dim, index[m + n - 1][tuple(word)]))
        comps[(m, n, i)] = Matrix.from_columns(cols, out_dim)
    return TruncatedOperad(seq, _unit_vec(1, 0), comps)


# -- validators ----------------------------------------------------------------


def _first_diff(a: Matrix, b: Matrix):
    for c in range(a.cols):
        if a.column(c) != b.column(c):
            return c
    return None


def validate_operad(p: TruncatedOperad) -> Report:
    """Every in-cap instance of the unit, associativity and equivariance
    axioms; each violated instance is listed."""
    rep = Report("operad")
    rep.extend(p.seq.check())
    cap, dims = p.cap, p.dims
    keys = set(composition_keys(cap))
    if len(p.unit) != dims[1]:
        rep.fail("unit", (1,), "unit is not an element of arity 1")
        return rep
    for k in keys:
        m, n, i = k
        if p.comps.get(k) is None or p.comps[k].shape != (dims[m + n - 1], dims[m] * dims[n]):
            rep.fail("shape", k, "missing or mis-shaped composition")
    if not rep.ok:
        return rep
    u = Matrix.from_columns([p.unit], dims[1])
    # unit laws
    for m in range(1, cap + 1):
        left = p.compose(1, m, 1) @ kron(u, _eye(dims[m]))
        if left != _eye(dims[m]):
            rep.fail("left unit", (m,), f"basis {_first_diff(left, _eye(dims[m]))}")
        for i in range(1, m + 1):
            right = p.compose(m, 1, i) @ kron(_eye(dims[m]), u)
            if right != _eye(dims[m]):
                rep.fail("right unit", (m, i), f"basis {_first_diff(right, _eye(dims[m]))}")
    # sequential and parallel associativity
    for l in range(1, cap + 1):
        for m in range(0, cap + 1):
            for n in range(0, cap + 1):
                if l + m + n - 2 > cap or l + m + n - 2 < 0:
                    continue
                for i in range(1, l + 1):
                    for j in range(1, m + 1):
                        inner = [(l, m, i), (l + m - 1, n, i + j - 1), (m, n, j), (l, m + n - 1, i)]
                        if not all(x in keys for x in inner):
                            continue
                        lhs = p.compose(l + m - 1, n, i + j - 1) @ kron(p.compose(l, m, i), _eye(dims[n]))
                        rhs = p.compose(l, m + n - 1, i) @ kron(_eye(dims[l]), p.compose(m, n, j))
                        if lhs != rhs:
                            rep.fail("sequential associativity", (l, m, n, i, j),
                                     f"basis {_first_diff(lhs, rhs)}")
                    for k in range(i + 1, l + 1):
                        inner = [(l, m, i), (l + m - 1, n, k + m - 1), (l, n, k), (l + n - 1, m, i)]
                        if not all(x in keys for x in inner):
                            continue
                        lhs = p.compose(l + m - 1, n, k + m - 1) @ kron(p.compose(l, m, i), _eye(dims[n]))
                        swap = kron(_eye(dims[l]), _swap_matrix(dims[m], dims[n]))
                        rhs = p.compose(l + n - 1, m, i) @ kron(p.compose(l, n, k), _eye(dims[m])) @ swap
                        if lhs != rhs:
                            rep.fail("parallel associativity", (l, m, n, i, k),
                                     f"basis {_first_diff(lhs, rhs)}")
    # equivariance
    for m, n, i in sorted(keys):
        c = p.compose(m, n, i)
        for tau in perms.all_perms(n):
            lhs = c @ kron(_eye(dims[m]), p.action(n, tau))
            rhs = p.action(m + n - 1, perms.block_insert(tau, i - 1, m)) @ c
            if lhs != rhs:
                rep.fail("equivariance (inner)", (m, n, i, tau), f"basis {_first_diff(lhs, rhs)}")
        for sigma in perms.all_perms(m):
            r = perms.inverse(sigma)[i - 1] + 1
            lhs = c @ kron(p.action(m, sigma), _eye(dims[n]))
            rhs = p.action(m + n - 1, perms.block_expand(sigma, i - 1, n)) @ p.compose(m, n, r)
            if lhs != rhs:
                rep.fail("equivariance (outer)", (m, n, i, sigma), f"basis {_first_diff(lhs, rhs)}")
    return rep


def _swap_matrix(a, b):
    """``Q^a (x) Q^b -> Q^b (x) Q^a``."""
    cols = []
    for x in range(a):
        for y in range(b):
            cols.append(_unit_vec(a * b, y * a + x))
    return Matrix.from_columns(cols, a * b)


def validate_operad_map(p: TruncatedOperad, q: TruncatedOperad, alpha, subject="operad map") -> Report:
    """``alpha[n] : P(n) -> Q(n)`` preserves unit, actions and compositions."""
    rep = Report(subject)
    if p.cap != q.cap:
        raise SchemaError(f"arity caps differ: {p.cap} vs {q.cap}")
    if len(alpha) != p.cap + 1:
        raise ShapeError("one matrix per arity is required")
    for n, a in enumerate(alpha):
        if a.shape != (q.dims[n], p.dims[n]):
            raise ShapeError(f"arity {n}: expected {q.dims[n]}x{p.dims[n]}, got {a.rows}x{a.cols}")
    if alpha[1].apply(p.unit) != tuple(q.unit):
        rep.fail("unit", (1,), "unit is not sent to the identity")
    for n in range(2, p.cap + 1):
        for k in range(n - 1):
            lhs = alpha[n] @ p.seq.gens[n][k]
            rhs = q.seq.gens[n][k] @ alpha[n]
            if lhs != rhs:
                rep.fail("equivariance", (n, f"s{k + 1}"), f"basis {_first_diff(lhs, rhs)}")
    for m, n, i in composition_keys(p.cap):
        lhs = alpha[m + n - 1] @ p.compose(m, n, i)
        rhs = q.compose(m, n, i) @ kron(alpha[m], alpha[n])
        if lhs != rhs:
            c = _first_diff(lhs, rhs)
            w = divmod(c, p.dims[n]) if p.dims[n] else (c,)
            rep.fail("composition", (m, n, i), f"basis pair {w}")
    return rep


def validate_algebra(p: TruncatedOperad, x, alpha) -> Report:
    """``alpha`` is a map of truncated operads ``P -> End(X)``."""
    return validate_operad_map(p, end_operad_of_object(x, p.cap), alpha, "algebra")


def validate_cogebra(p: TruncatedOperad, x, alpha) -> Report:
    """``alpha`` is a map of truncated operads ``P -> coEnd(X)``."""
    return validate_operad_map(p, coend_operad_of_object(x, p.cap), alpha, "cogebra")


# -- JSON ---------------------------------------------------------------------


def operad_to_json(p: TruncatedOperad) -> dict:
    return {
        "cap": p.cap,
        "arities": [
            {"arity": n, "dim": p.dims[n], "generators": [g.tolist() for g in p.seq.gens[n]]}
            for n in range(p.cap + 1)
        ],
        "unit": [format_rat(x) for x in p.unit],
        "compositions": [
            {"m": m, "n": n, "i": i, "constants": p.comps[(m, n, i)].tolist()}
            for m, n, i in composition_keys(p.cap)
        ],
    }


def _matrix(nested, rows, cols):
    if rows == 0 or not nested:
        if nested and any(nested):
            raise SchemaError("non-empty data for an empty matrix")
        return Matrix.zeros(rows, cols)
    m = Matrix.of(nested)
    if m.shape != (rows, cols):
        raise SchemaError(f"expected a {rows}x{cols} matrix, got {m.rows}x{m.cols}")
    return m


def operad_from_json(doc) -> TruncatedOperad:
    try:
        cap = int(doc["cap"])
        ar = sorted(doc["arities"], key=lambda a: a["arity"])
        if [a["arity"] for a in ar] != list(range(cap + 1)):
            raise SchemaError("arities must be listed for 0..cap")
        dims = tuple(int(a["dim"]) for a in ar)
        gens = tuple(tuple(_matrix(g, dims[n], dims[n]) for g in a["generators"])
                     for n, a in enumerate(ar))
        seq = SymSequence(cap, dims, gens)
        comps = {}
        for c in doc["compositions"]:
            m, n, i = int(c["m"]), int(c["n"]), int(c["i"])
            comps[(m, n, i)] = _matrix(c["constants"], dims[m + n - 1], dims[m] * dims[n])
        return TruncatedOperad(seq, tuple(rat(x) for x in doc["unit"]), comps)
    except (KeyError, TypeError, IndexError, ValueError, ShapeError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed operad document: {exc}") from exc
