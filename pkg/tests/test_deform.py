from itertools import product

import pytest

from qforge.clifford import CliffordMap, clifford_map_basis, echelon_values
from qforge.deform import (
    TruncatedQuotient, build_deformation, form_associative, form_homogeneous, frobenius_form,
    pbw_check, strong_grading_check, z2_components,
)
from qforge.errors import DimensionMismatch, NotClifford, NotFrobeniusTop, PBWFailure
from qforge.exactlinear import Tensor, vectors_equal
from qforge.parsers import clifford_from_file
from qforge.quadalg import QuadraticPresentation, multiply

from conftest import Q, load


# Corpus algebras of finite dimension, where E(theta) can be built.
FINITE_CORPUS = ["exterior2", "exterior2_qi", "ex24", "dual_numbers_qi", "jordan", "s2"]


def deformation(name, vector):
    pf, E = load(name)
    return build_deformation(E, clifford_from_file(pf, vector, E))


def corpus_deformations():
    """(label, E, theta) for every named vector and every basis Clifford map."""
    cases = []
    for name in FINITE_CORPUS:
        pf, E = load(name)
        for vector, _ in pf.clifford:
            try:
                cases.append((f"{name}:{vector}", E, clifford_from_file(pf, vector, E)))
            except NotClifford:
                continue
        for k, theta in enumerate(clifford_map_basis(E)):
            cases.append((f"{name}:basis{k}", E, theta))
        cases.append((f"{name}:zero", E, CliffordMap.zero(E)))
    return cases


class TestS2Deformation:
    """x, y, z = 0, 1, 2; a = xz, b = yz, c = xx."""

    @pytest.fixture(scope="class")
    def algebra(self):
        return deformation("s2", "worked")

    def test_dimensions(self, algebra):
        split = z2_components(algebra)
        assert algebra.dim == 8
        assert (split.dim_even, split.dim_odd) == (4, 4)
        assert algebra.degrees == (0, 1, 1, 1, 2, 2, 2, 3)

    def test_laws(self, algebra):
        assert algebra.check_associativity()
        assert algebra.check_unit()
        assert algebra.check_homogeneity()

    def test_even_products(self, algebra):
        A = algebra
        a, b, c = A.word_element((0, 2)), A.word_element((1, 2)), A.word_element((0, 0))
        one = A.one()
        assert vectors_equal(A.multiply(a, b), one)
        assert vectors_equal(A.multiply(b, a), one)
        assert vectors_equal(A.multiply(a, c), A.add(a, b))
        assert vectors_equal(A.multiply(c, a), A.add(a, b))
        assert vectors_equal(A.multiply(b, c), a)
        assert vectors_equal(A.multiply(c, b), a)
        assert vectors_equal(A.multiply(a, a), c)
        assert vectors_equal(A.multiply(b, b), A.sub(c, one))
        assert vectors_equal(A.multiply(c, c), A.add(c, one))

    def test_frobenius_form(self, algebra):
        form = frobenius_form(algebra)
        assert form.top_degree == 3
        assert form.parity == 1
        assert form.rank == 8

    def test_strongly_graded(self, algebra):
        assert strong_grading_check(algebra)


class TestDeformations:

    def test_zero_map_gives_the_algebra(self):
        pf, E = load("exterior2")
        A = build_deformation(E, CliffordMap.zero(E))
        assert A.dim == 4
        x, y = A.word_element((0,)), A.word_element((1,))
        assert vectors_equal(A.multiply(x, x), {})
        assert vectors_equal(A.multiply(x, y), {k: -v for k, v in A.multiply(y, x).items()})

    def test_clifford_algebra_relations(self):
        A = deformation("exterior2", "pp")
        x, y = A.word_element((0,)), A.word_element((1,))
        assert vectors_equal(A.multiply(x, x), A.one())
        assert vectors_equal(A.multiply(y, y), A.one())
        assert vectors_equal(A.add(A.multiply(x, y), A.multiply(y, x)), {})

    def test_raw_values_accepted(self):
        _, E = load("exterior2")
        A = build_deformation(E, (1, 0, 1))
        assert A.dim == 4

    def test_dual_numbers(self):
        A = deformation("dual_numbers_qi", "one")
        x = A.word_element((0,))
        assert A.dim == 2
        assert vectors_equal(A.multiply(x, x), A.one())

    def test_strong_grading(self):
        for name in ("exterior2", "ex24", "dual_numbers_qi"):
            _, E = load(name)
            for theta in clifford_map_basis(E):
                assert strong_grading_check(build_deformation(E, theta))
        _, E = load("exterior2")
        assert not strong_grading_check(build_deformation(E, CliffordMap.zero(E)))


class TestFiltration:

    @pytest.mark.parametrize("name, vector", [("s2", "worked"), ("exterior2", "pp"),
                                              ("dual_numbers_qi", "one")])
    def test_top_component_is_the_graded_product(self, name, vector):
        pf, E = load(name)
        A = build_deformation(E, clifford_from_file(pf, vector, E))
        for i, j in product(range(A.dim), repeat=2):
            degree = A.degrees[i] + A.degrees[j]
            entry = A.table[i][j]
            assert all(A.degrees[k] <= degree for k, _ in entry)
            top = {A.words[k]: c for k, c in entry if A.degrees[k] == degree}
            graded = multiply(E, Tensor.monomial(E.field, A.words[i]),
                              Tensor.monomial(E.field, A.words[j]))
            assert top == graded.coeffs


class TestPBW:

    def test_every_corpus_clifford_map_passes(self):
        for label, E, theta in corpus_deformations():
            report = pbw_check(E, theta)
            assert report.passed, label

    def test_clifford_maps_pass(self):
        _, E = load("exterior2")
        report = pbw_check(E, (1, 1, 0))
        assert report.passed
        assert report.expected_dim == 4
        assert [bound for bound, _ in report.truncated_dims] == [3, 4]

    def test_planted_theta_collapses(self):
        pf, E = load("jordan")
        values = echelon_values(E, pf.relations, pf.clifford_vector("planted"))
        assert not pbw_check(E, values).passed
        with pytest.raises(PBWFailure):
            build_deformation(E, values, precheck=False)
        with pytest.raises(NotClifford):
            build_deformation(E, values)

    def test_wrong_length(self):
        _, E = load("jordan")
        with pytest.raises(DimensionMismatch):
            pbw_check(E, (1, 0))

    def test_truncated_quotient_normal_words(self):
        _, E = load("exterior2")
        quotient = TruncatedQuotient(E, (0, 0, 0), 3).compute()
        assert quotient.dim == 4
        assert set(quotient.normal_words()) == {(), (0,), (1,), (1, 0)}


class TestFrobenius:

    def test_every_corpus_form_is_associative_and_homogeneous(self):
        for label, E, theta in corpus_deformations():
            form = frobenius_form(build_deformation(E, theta))
            assert form.associative, label
            assert form.homogeneous, label
            assert form.valid, label
            assert form.parity == form.top_degree % 2

    def test_checks_reject_other_forms(self):
        A = deformation("exterior2", "pp")
        form = frobenius_form(A)
        assert not form_homogeneous(A, form.gram, 1 - form.parity)
        # <1, 1> = 1 and zero elsewhere: <x x, 1> = 1 but <x, x 1> = 0
        corner = [[Q.one if i == j == 0 else Q.zero for j in range(A.dim)] for i in range(A.dim)]
        assert not form_associative(A, corner)

    def test_exterior(self):
        form = frobenius_form(deformation("exterior2", "px"))
        assert form.top_degree == 2
        assert form.parity == 0
        assert form.rank == 4

    def test_no_unique_top(self):
        words = [(0, 0), (0, 1), (1, 0), (1, 1)]
        E = QuadraticPresentation.create(Q, ["x", "y"], [Tensor.monomial(Q, w) for w in words])
        A = build_deformation(E, CliffordMap.zero(E))
        assert A.dim == 3
        with pytest.raises(NotFrobeniusTop):
            frobenius_form(A)
