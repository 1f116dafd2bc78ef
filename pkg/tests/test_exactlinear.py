import random

import pytest

from qforge.errors import FieldLacksI, InputError, MixedDegree, NotInSpan, ResourceBound
from qforge.exactlinear import (
    Tensor, all_words, annihilator, echelonize, format_scalar, intersect, nullspace_rows,
    parse_scalar, rank_rows, solve_functional, zero_subspace,
)

from conftest import Q, QI, tensor


def random_tensors(rng, field, ngens, degree, count):
    words = all_words(ngens, degree)
    out = []
    for _ in range(count):
        coeffs = {w: field.convert(rng.randint(-2, 2)) for w in words if rng.random() < 0.5}
        out.append(Tensor.from_dict(field, degree, coeffs))
    return out


class TestScalars:

    @pytest.mark.parametrize("text, field", [
        ("-1/2", Q), ("3", Q), ("1/2+1/3i", QI), ("2i", QI), ("-1i", QI), ("-3/4-5i", QI),
    ])
    def test_canonical_text_is_stable(self, text, field):
        assert format_scalar(parse_scalar(text, field)) == text

    def test_lowest_terms(self):
        assert format_scalar(parse_scalar("4/6", Q)) == "2/3"
        assert format_scalar(parse_scalar("-4/2", Q)) == "-2"

    def test_imaginary_needs_qi(self):
        with pytest.raises(FieldLacksI):
            parse_scalar("2i", Q)
        with pytest.raises(FieldLacksI):
            Q.i()

    def test_zero_denominator(self):
        with pytest.raises(InputError):
            parse_scalar("1/0", Q)

    def test_i_squared(self):
        i = QI.i()
        assert not (i * i + QI.one)

    def test_field_names(self):
        assert Q.value == "Q"
        assert QI.value == "Qi"


class TestTensors:

    def test_addition_cancels(self):
        t = tensor(Q, {(0, 1): 1, (1, 0): -1})
        assert (t - t).is_zero()
        assert not (t - t)

    def test_mixed_degree(self):
        with pytest.raises(MixedDegree):
            tensor(Q, {(0,): 1}) + tensor(Q, {(0, 1): 1})

    def test_concatenation_and_pairing(self):
        x, y = Tensor.monomial(Q, (0,)), Tensor.monomial(Q, (1,))
        xy = x.tensor(y)
        assert xy.words == [(0, 1)]
        assert xy.pair(Tensor.monomial(Q, (0, 1))) == Q.one
        assert not xy.pair(Tensor.monomial(Q, (1, 0)))


class TestSubspaces:
    rng = random.Random(20240611)

    def test_echelon_form_is_canonical(self):
        a = tensor(Q, {(0, 0): 1, (1, 1): 1})
        b = tensor(Q, {(0, 1): 1, (1, 0): 1})
        first = echelonize([a, b], 2)
        second = echelonize([a + b, a - b], 2)
        assert first == second
        for vector in first.basis:
            assert vector.coeff(vector.leading_word) == Q.one

    @pytest.mark.parametrize("ngens, degree", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_double_annihilator(self, ngens, degree):
        rng = random.Random(1000 * ngens + degree)
        size = ngens ** degree
        for _ in range(6):
            vectors = random_tensors(rng, Q, ngens, degree, rng.randint(1, size))
            s = echelonize(vectors, ngens, degree=degree, field=Q)
            assert annihilator(s).dim == size - s.dim
            assert annihilator(annihilator(s)) == s

    @pytest.mark.parametrize("ngens, degree", [(2, 2), (2, 3), (3, 2)])
    def test_echelon_form_ignores_row_order(self, ngens, degree):
        rng = random.Random(7 * ngens + degree)
        for _ in range(5):
            vectors = random_tensors(rng, Q, ngens, degree, rng.randint(2, 6))
            shuffled = list(vectors)
            rng.shuffle(shuffled)
            shuffled.append(shuffled[0] + shuffled[-1])   # redundant row
            expected = echelonize(vectors, ngens, degree=degree, field=Q)
            assert echelonize(shuffled, ngens, degree=degree, field=Q) == expected

    def test_annihilator_respects_cap(self):
        s = echelonize([tensor(Q, {(0, 1): 1})], 2)
        with pytest.raises(ResourceBound):
            annihilator(s, cap=3)
        assert annihilator(s, cap=4).dim == 3

    def test_grassmann_identity(self):
        for _ in range(10):
            a = echelonize(random_tensors(self.rng, Q, 3, 2, 4), 3, degree=2, field=Q)
            b = echelonize(random_tensors(self.rng, Q, 3, 2, 5), 3, degree=2, field=Q)
            meet = intersect(a, b)
            assert a.join(b).dim + meet.dim == a.dim + b.dim
            assert meet.is_subspace_of(a) and meet.is_subspace_of(b)

    def test_intersection_with_zero(self):
        a = echelonize([tensor(Q, {(0, 1): 1})], 2)
        assert intersect(a, zero_subspace(Q, 2, 2)).dim == 0

    def test_coordinates(self):
        s = echelonize([tensor(Q, {(0, 0): 1, (1, 1): 2}), tensor(Q, {(0, 1): 1})], 2)
        v = tensor(Q, {(0, 0): 3, (1, 1): 6, (0, 1): -1})
        assert s.combine(s.coordinates(v)) == v
        assert v in s
        with pytest.raises(NotInSpan):
            s.coordinates(tensor(Q, {(1, 0): 1}))

    def test_gaussian_rational_span(self):
        i = QI.i()
        v = Tensor.from_dict(QI, 2, {(0, 0): QI.one, (1, 1): i})
        s = echelonize([v], 2)
        assert s.contains(v.scale(i))
        assert not s.contains(Tensor.monomial(QI, (0, 0)))


class TestSparseRows:

    def test_rank_and_nullspace(self):
        rows = [{0: Q.one, 1: Q.one}, {1: Q.one, 2: Q.one}, {0: Q.one, 2: Q.neg_one()}]
        assert rank_rows(rows, 3, Q) == 2
        kernel = nullspace_rows(rows, 3, Q)
        assert len(kernel) == 1
        for row in rows:
            assert not sum((row.get(k, Q.zero) * v for k, v in kernel[0].items()), Q.zero)

    def test_solve_functional(self):
        vectors = [tensor(Q, {(0,): 1, (1,): 1}), tensor(Q, {(1,): 1})]
        values = [Q.convert(3), Q.convert(1)]
        f = solve_functional(vectors, values, 2, 1, Q)
        assert [f.pair(v) for v in vectors] == values
