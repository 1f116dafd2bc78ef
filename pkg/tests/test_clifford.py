import pytest

from qforge.clifford import (
    CliffordMap, HypersurfaceInput, center_correspondence_check, clifford_condition,
    clifford_map_basis, clifford_map_space, echelon_values, exterior_presentation,
    overlap_space, theta_from_central, theta_from_lift, theta_from_quadratic_form,
)
from qforge.errors import DimensionMismatch, NotCentral, NotClifford, ResourceBound, ZeroElement
from qforge.exactlinear import Tensor
from qforge.parsers import build_presentation, load_presentation

from conftest import Q, load, tensor


class TestOverlaps:

    def test_dimensions(self):
        for name, dim in (("s2", 10), ("jordan", 4), ("exterior2", 4)):
            _, E = load(name)
            assert overlap_space(E).dim == dim

    def test_exterior_overlap_basis(self):
        _, E = load("exterior2")
        overlap = overlap_space(E)
        expected = [
            tensor(Q, {(0, 0, 0): 1}),
            tensor(Q, {(1, 1, 1): 1}),
            tensor(Q, {(0, 0, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1}),
            tensor(Q, {(0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1}),
        ]
        for w in expected:
            assert overlap.contains(w)

    def test_presentation_cap_bounds_the_overlap(self):
        pf = load_presentation("exterior2")
        with pytest.raises(ResourceBound):
            overlap_space(build_presentation(pf, word_cap=7))
        assert overlap_space(build_presentation(pf, word_cap=8)).dim == 4


class TestCliffordMaps:

    def test_space_dimensions(self):
        for name, dim in (("jordan", 0), ("exterior2", 3), ("ex24", 2)):
            _, E = load(name)
            assert clifford_map_space(E).dim == dim
            assert len(clifford_map_basis(E)) == dim

    def test_ex24_family(self):
        pf, E = load("ex24")
        for a, b in ((1, 0), (0, 1), (2, -3)):
            values = echelon_values(E, pf.relations, (a, b, 0))
            assert clifford_condition(E, values).holds
        assert not clifford_condition(E, echelon_values(E, pf.relations, (0, 0, 1))).holds
        with pytest.raises(NotClifford):
            CliffordMap.from_relation_values(E, pf.relations, (0, 0, 1))

    def test_jordan_forces_zero(self):
        pf, E = load("jordan")
        assert CliffordMap.from_relation_values(E, pf.relations, (0, 0, 0)).is_zero()
        with pytest.raises(NotClifford):
            CliffordMap.from_relation_values(E, pf.relations, pf.clifford_vector("planted"))

    def test_s2_theta(self):
        pf, E = load("s2")
        theta = CliffordMap.from_relation_values(E, pf.relations, pf.clifford_vector("worked"))
        assert clifford_map_space(E).contains(theta.functional())
        for r, value in zip(pf.relations, pf.clifford_vector("worked")):
            assert theta(r) == value

    def test_wrong_length(self):
        _, E = load("exterior2")
        with pytest.raises(DimensionMismatch):
            CliffordMap(E, (1, 0))

    def test_dependent_listing(self):
        _, E = load("exterior2")
        x2 = Tensor.monomial(Q, (0, 0))
        with pytest.raises(DimensionMismatch):
            echelon_values(E, [x2, x2.scale(Q.convert(2))], (0, 0))

    @pytest.mark.parametrize("name", ["exterior2", "jordan", "s2", "ex24"])
    def test_center_correspondence(self, name):
        _, E = load(name)
        assert center_correspondence_check(E)


class TestThetaFromCentral:

    def test_polynomial_ring(self):
        pf, S = load("poly2")
        for name, values in (("q", (1, 0, 1)), ("sq", (1, 0, 0)), ("xy", (0, 1, 0))):
            H = HypersurfaceInput(S, pf.central_element(name), frozenset(pf.assertions), name)
            theta = theta_from_central(H)
            assert theta.values == tuple(Q.convert(v) for v in values)
            assert theta.presentation.generators == ("x_d", "y_d")

    def test_linear_in_z(self):
        pf, S = load("poly3")
        q, xy = pf.central_element("q"), pf.central_element("xy")
        three = Q.convert(3)

        def theta_of(z):
            return theta_from_central(HypersurfaceInput(S, z)).values

        assert theta_of(q + xy) == tuple(a + b for a, b in zip(theta_of(q), theta_of(xy)))
        assert theta_of(q.scale(three)) == tuple(three * a for a in theta_of(q))
        assert theta_of(xy.scale(-three)) == tuple(-three * a for a in theta_of(xy))

    def test_lift_independence(self):
        _, S = load("poly2")
        first = theta_from_lift(S, Tensor.monomial(Q, (0, 1)))
        second = theta_from_lift(S, Tensor.monomial(Q, (1, 0)))
        assert first.values == second.values

    def test_not_central(self):
        _, S = load("quantum_plane")
        with pytest.raises(NotCentral):
            HypersurfaceInput(S, Tensor.monomial(Q, (1, 0)))

    def test_zero(self):
        _, S = load("poly2")
        with pytest.raises(ZeroElement):
            HypersurfaceInput(S, tensor(Q, {(0, 1): 1, (1, 0): -1}))


class TestQuadraticForms:

    def test_identity_form(self):
        E = exterior_presentation(Q, ["x", "y"])
        theta = theta_from_quadratic_form(E, [[1, 0], [0, 1]])
        assert theta.values == (Q.one, Q.zero, Q.one)

    def test_off_diagonal(self):
        E = exterior_presentation(Q, ["x", "y"])
        theta = theta_from_quadratic_form(E, [[0, 1], [1, 0]])
        assert theta.values == (Q.zero, Q.convert(2), Q.zero)

    def test_shape(self):
        E = exterior_presentation(Q, ["x", "y"])
        with pytest.raises(DimensionMismatch):
            theta_from_quadratic_form(E, [[1]])
