from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endo import perms
from endo.exactla import Matrix, direct_sum, kron, perm_action_matrix
from endo.operadkit import (SymSequence, ass_operad, circ_on_object, circ_product, com_operad,
                            coend_operad_of_object, composition_keys, concentrated, convolution,
                            end_operad_of_object, operad_from_json, operad_to_json,
                            regular_sequence, trivial_sequence, unit_circ, unit_convolution,
                            validate_algebra, validate_cogebra, validate_operad)
from endo.oracle import bareiss_rank

CAP = 3


def sign_gens(n, dim):
    return tuple(Matrix.identity(dim).scale(-1) for _ in range(n - 1))


def rep_sum(cap, parts):
    """Direct sum per arity of trivial ('t'), sign ('s') and regular ('r') pieces."""
    reg = regular_sequence(cap)
    dims, gens = [], []
    for n in range(cap + 1):
        pieces = []
        for kind in parts[n]:
            if kind == "t":
                pieces.append((1, [Matrix.identity(1)] * (n - 1)))
            elif kind == "s":
                pieces.append((1, [Matrix.identity(1).scale(-1)] * (n - 1)))
            else:
                pieces.append((reg.dims[n], list(reg.gens[n])))
        dims.append(sum(d for d, _ in pieces))
        g = []
        for k in range(n - 1):
            blocks = [gs[k] for _, gs in pieces]
            g.append(direct_sum(*blocks) if blocks else Matrix.zeros(0, 0))
        gens.append(tuple(g))
    return SymSequence(cap, tuple(dims), tuple(gens))


sequences = st.lists(st.lists(st.sampled_from("tsr"), max_size=2), min_size=CAP + 1,
                     max_size=CAP + 1).map(lambda parts: rep_sum(CAP, parts))
# the composition product grows fast; keep its inputs to one small piece per arity
small_sequences = st.tuples(*[st.lists(st.sampled_from("tsr" if n < 3 else "ts"), max_size=1)
                              for n in range(CAP + 1)]).map(lambda parts: rep_sum(CAP, parts))


def symmetrizer_rank(seq, n, d):
    """dim of invariants of M(n) (x) X^{(x)n}: rank of the averaging operator."""
    size = seq.dims[n] * d ** n
    total = Matrix.zeros(size, size)
    for p in perms.all_perms(n):
        total = total + kron(seq.action(n, p), perm_action_matrix(p, d))
    return bareiss_rank(total.scale(Fraction(1, factorial(n))))


class TestSequences:
    def test_regular_coxeter(self):
        assert regular_sequence(4).check().ok
        assert regular_sequence(4).dims == (1, 1, 2, 6, 24)

    def test_broken_coxeter(self):
        bad = concentrated(3, 3, 2, gens=[Matrix.identity(2), Matrix.of([[0, 1], [1, 0]])])
        # s1 s2 has order 2, so the braid relation fails
        assert bad.check().first.axiom == "braid"

    @given(sequences)
    def test_action_is_right_action(self, seq):
        for n in range(CAP + 1):
            for p in perms.all_perms(n):
                for q in perms.all_perms(n):
                    assert seq.action(n, perms.then(p, q)) == seq.action(n, q) @ seq.action(n, p)


class TestConvolution:
    def test_unit_with_unit(self):
        u = unit_convolution(CAP)
        assert convolution(u, u).dims == u.dims

    def test_arity_one_pieces(self):
        for a, b in [(1, 1), (2, 3)]:
            c = convolution(concentrated(CAP, 1, a), concentrated(CAP, 1, b))
            # cosets of S1 x S1 in S2, counted by enumeration
            young = [p for p in perms.all_perms(2) if p[0] < 1 and p[1] >= 1]
            cosets = {frozenset(perms.then(h, g) for h in young) for g in perms.all_perms(2)}
            assert c.dims[2] == len(cosets) * a * b == 2 * a * b
            assert sum(c.dims) == c.dims[2]
            assert c.check().ok

    @given(sequences)
    def test_unit_law(self, b):
        u = unit_convolution(CAP)
        assert convolution(u, b).dims == b.dims
        assert convolution(b, u).dims == b.dims
        assert convolution(u, b).gens == b.gens

    @given(sequences, sequences)
    def test_dims_and_coxeter(self, a, b):
        c = convolution(a, b)
        assert c.check().ok
        for n in range(CAP + 1):
            assert c.dims[n] == sum(comb(n, p) * a.dims[p] * b.dims[n - p] for p in range(n + 1))


class TestCircProduct:
    @given(small_sequences)
    def test_unit_laws(self, n):
        u = unit_circ(CAP)
        left, right = circ_product(u, n), circ_product(n, u)
        assert left.dims == n.dims and right.dims == n.dims
        assert left.check().ok and right.check().ok
        assert left.gens == n.gens

    def test_arity_one(self):
        for a, b in [(1, 1), (2, 3)]:
            c = circ_product(concentrated(CAP, 1, a), concentrated(CAP, 1, b))
            # brute force: M(1) (x) N(1) with nothing to quotient
            assert c.dims[1] == kron(Matrix.identity(a), Matrix.identity(b)).rows
            assert sum(c.dims) == a * b

    def test_commutative_on_arity_one(self):
        com = trivial_sequence(CAP, [1] * (CAP + 1))
        c = circ_product(com, concentrated(CAP, 1, 1))
        assert c.dims == (1, 1, 1, 1)

    @given(small_sequences, small_sequences)
    def test_coxeter(self, m, n):
        assert circ_product(m, n).check().ok


class TestCircOnObject:
    @pytest.mark.parametrize("d", [0, 1, 2, 3])
    def test_unit(self, d):
        assert circ_on_object(unit_circ(CAP), d).dim == d

    def test_com_on_line(self):
        com = trivial_sequence(CAP, [1] * (CAP + 1))
        out = circ_on_object(com, 1)
        assert out.dim == CAP + 1
        assert [t.dim for t in out.terms] == [symmetrizer_rank(com, n, 1) for n in range(CAP + 1)]

    @given(sequences)
    def test_zero_object(self, m):
        assert circ_on_object(m, 0).dim == m.dims[0]

    @given(sequences, st.integers(1, 2))
    def test_coinvariants_equal_invariants(self, m, d):
        out = circ_on_object(m, d)
        by_arity = {t.arity: t.dim for t in out.terms}
        for n in range(CAP + 1):
            assert by_arity.get(n, 0) == symmetrizer_rank(m, n, d)


class TestObjectOperads:
    @pytest.mark.parametrize("d", [1, 2])
    @pytest.mark.parametrize("co", [False, True])
    def test_axioms_and_dims(self, d, co):
        p = (coend_operad_of_object if co else end_operad_of_object)(d, CAP)
        assert p.dims == tuple(d ** (n + 1) for n in range(CAP + 1))
        assert validate_operad(p).ok

    def test_line_is_com(self):
        p = end_operad_of_object(1, CAP)
        com = com_operad(CAP)
        assert p.comps == com.comps and p.unit == com.unit

    def test_unit_is_identity(self):
        p = end_operad_of_object(3, 2)
        assert Matrix.unflatten(p.unit, 3, 3) == Matrix.identity(3)

    def test_coend_arity_one_is_matrix_algebra(self):
        d = 2
        p = coend_operad_of_object(d, 2)
        mult = p.compose(1, 1, 1)
        basis = [Matrix.unflatten(tuple(int(i == j) for j in range(d * d)), d, d) for i in range(d * d)]
        for a, x in enumerate(basis):
            for b, y in enumerate(basis):
                # mu o_1 nu applies nu after mu
                assert mult.column(a * d * d + b) == (y @ x).flatten()

    def test_dimension_eight(self):
        assert coend_operad_of_object(2, 2).dims[2] == 8

    def test_json_roundtrip(self):
        p = end_operad_of_object(2, 2)
        q = operad_from_json(operad_to_json(p))
        assert q.dims == p.dims and q.comps == p.comps and q.unit == p.unit
        assert q.seq.gens == p.seq.gens


class TestCombinatorialOperads:
    def test_com_and_ass_valid(self):
        assert validate_operad(com_operad(CAP)).ok
        a = ass_operad(CAP)
        assert a.dims == (0, 1, 2, 6)
        assert validate_operad(a).ok

    def test_broken_associativity(self):
        p = com_operad(CAP)
        comps = dict(p.comps)
        comps[(2, 2, 1)] = Matrix.of([[2]])
        bad = type(p)(p.seq, p.unit, comps)
        rep = validate_operad(bad)
        assert not rep.ok
        assert {f.axiom for f in rep.failures} & {"sequential associativity", "parallel associativity"}


class TestAlgebras:
    def test_com_on_line(self):
        alpha = [Matrix.identity(1)] * (CAP + 1)
        assert validate_algebra(com_operad(CAP), 1, alpha).ok

    def test_zero_map(self):
        alpha = [Matrix.zeros(1, 1)] * (CAP + 1)
        rep = validate_algebra(com_operad(CAP), 1, alpha)
        assert rep.first.axiom == "unit"

    def test_ass_on_line(self):
        ass = ass_operad(CAP)
        ones = [Matrix.zeros(1, 0)] + [Matrix.of([[1] * ass.dims[n]]) for n in range(1, CAP + 1)]
        assert validate_algebra(ass, 1, ones).ok

    def test_sign_collapse_breaks_equivariance(self):
        ass = ass_operad(CAP)
        signed = [Matrix.zeros(1, 0)] + [
            Matrix.of([[perms.sign(p) for p in perms.all_perms(n)]]) for n in range(1, CAP + 1)]
        rep = validate_algebra(ass, 1, signed)
        # witness found by checking the generator s1 on each basis permutation of arity 2
        witnesses = [(2, "s1") for p in perms.all_perms(2)
                     if perms.sign(perms.then(p, (1, 0))) != perms.sign(p)]
        assert witnesses
        assert rep.first.axiom == "equivariance" and rep.first.witness == witnesses[0]

    def test_cogebra_com_on_line(self):
        alpha = [Matrix.identity(1)] * (CAP + 1)
        assert validate_cogebra(com_operad(CAP), 1, alpha).ok


def test_composition_keys():
    keys = composition_keys(2)
    assert (1, 0, 1) in keys and (2, 1, 2) in keys and (2, 2, 1) not in keys
    assert all(m + n - 1 <= 2 for m, n, _ in keys)
