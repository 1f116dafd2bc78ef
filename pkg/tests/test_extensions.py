from itertools import product

import pytest

from qforge.clifford import CliffordMap
from qforge.deform import build_deformation
from qforge.errors import FieldLacksI, InputError
from qforge.exactlinear import vectors_equal
from qforge.extensions import (
    double_branched_cover_dual, double_cover_agreement, extend_clifford_map, fresh_name,
    group_algebra_Z2, knorrer_corner_witness, knorrer_semisimple_transfer, tilde_iso_check,
    trivial_extension, twisted_tensor, upsilon_iso_check,
)
from qforge.parsers import clifford_from_file, hypersurface_from_file

from conftest import Q, QI, load


def theta(name, vector):
    pf, E = load(name)
    return E, clifford_from_file(pf, vector, E)


class TestTrivialExtension:

    def test_generators_and_relations(self):
        _, E = load("exterior2")
        extended = trivial_extension(E)
        assert extended.generators == ("x", "y", "v1")
        assert extended.relations.dim == 6

    def test_fresh_name(self):
        assert fresh_name(["x", "y"]) == "v1"
        assert fresh_name(["v1", "x"]) == "v2"

    def test_extended_map(self):
        E, t = theta("exterior2", "pp")
        extended = extend_clifford_map(E, t)
        assert extended.presentation.ngens == 3
        assert sum(1 for v in extended.values if v) == 3

    def test_extended_zero_map_is_nonzero(self):
        _, E = load("exterior2")
        assert not extend_clifford_map(E, CliffordMap.zero(E)).is_zero()


class TestTwistedTensor:

    def test_sign_rule(self):
        G = group_algebra_Z2(Q)
        T = twisted_tensor(G, G)
        A = T.algebra
        left = A.basis_element(T.index(0, 1))
        right = A.basis_element(T.index(1, 0))
        assert vectors_equal(A.multiply(left, right), {T.index(1, 1): Q.neg_one()})
        assert vectors_equal(A.multiply(right, left), {T.index(1, 1): Q.one})

    def test_dimension_and_grading(self):
        G = group_algebra_Z2(Q)
        A = twisted_tensor(G, G).algebra
        assert A.dim == 4
        assert A.parities == (0, 1, 1, 0)
        assert A.check_unit()

    def test_matrix_isomorphism(self):
        assert upsilon_iso_check(QI).valid

    def test_matrix_isomorphism_needs_i(self):
        with pytest.raises(FieldLacksI):
            upsilon_iso_check(Q)


class TestTildeIsomorphism:

    @pytest.mark.parametrize("name, vector", [
        ("exterior2", "pp"),
        ("exterior2", "zero"),
        ("dual_numbers_qi", "one"),
        ("ex24", None),
    ])
    def test_valid(self, name, vector):
        if vector is None:
            _, E = load(name)
            t = CliffordMap.zero(E)
        else:
            E, t = theta(name, vector)
        assert tilde_iso_check(E, t).valid


class TestDoubleCovers:

    @pytest.mark.parametrize("times", [1, 2])
    def test_agreement(self, times):
        pf, S = load("poly2")
        report = double_cover_agreement(hypersurface_from_file(pf, "q", S), times)
        assert report.agrees
        assert len(report.generators) == 2 + times

    def test_cover_generators(self):
        pf, S = load("poly2")
        cover = double_branched_cover_dual(hypersurface_from_file(pf, "q", S), 2)
        assert cover.ambient.generators == ("x", "y", "v1", "v2")

    def test_times_out_of_range(self):
        pf, S = load("poly2")
        with pytest.raises(InputError):
            double_branched_cover_dual(hypersurface_from_file(pf, "q", S), 3)


class TestKnorrer:

    def test_dual_numbers(self):
        E, t = theta("dual_numbers_qi", "zero")
        bundle = knorrer_corner_witness(E, t)
        assert bundle.base_dim == 2
        assert bundle.extended_dim == 8
        assert bundle.corner.corner_dim == 2
        assert bundle.passed

    def test_clifford_algebra(self):
        E, t = theta("exterior2_qi", "pp")
        bundle = knorrer_corner_witness(E, t, strict=False)
        assert bundle.chi.valid
        assert bundle.idempotent.valid
        assert bundle.fullness.valid
        assert bundle.passed

    def test_corner_structure_matches_the_deformation(self):
        E, t = theta("exterior2_qi", "pp")
        A = build_deformation(E, t)
        corner = knorrer_corner_witness(E, t).corner
        assert len(corner.structure) == A.dim
        for i, j in product(range(A.dim), repeat=2):
            assert vectors_equal(dict(corner.structure[i][j]), A.product_of_basis(i, j)), (i, j)

    def test_needs_i(self):
        E, t = theta("exterior2", "pp")
        with pytest.raises(FieldLacksI):
            knorrer_corner_witness(E, t)


class TestTransfer:

    def test_semisimple_pair(self):
        E, t = theta("exterior2_qi", "pp")
        report = knorrer_semisimple_transfer(E, t)
        assert report.status == "pass"
        assert report.base_semisimple and report.extended_semisimple

    def test_degenerate_pair(self):
        E, t = theta("exterior2", "px")
        report = knorrer_semisimple_transfer(E, t)
        assert report.status == "pass"
        assert report.base_semisimple is False
        assert report.extended_semisimple is False

    def test_dual_numbers(self):
        E, t = theta("dual_numbers_qi", "one")
        assert knorrer_semisimple_transfer(E, t).status == "pass"

    def test_zero_map_outside_hypothesis(self):
        E, t = theta("dual_numbers_qi", "zero")
        report = knorrer_semisimple_transfer(E, t)
        assert report.status == "outside-hypothesis"
        assert report.base_semisimple is None
