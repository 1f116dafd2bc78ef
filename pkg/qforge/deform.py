"""
Clifford deformations E(theta) = T(V)/(r - theta(r) : r in R).

E(theta) is built inside the truncated tensor algebra T_{<=N}(V): the span J
of u (r - theta(r)) v is row-reduced, one parity block at a time, with the
columns ordered by degree (highest first) and then lexicographically. The
pivots are then the leading words and the surviving words are exactly the
normal words of E when the PBW property holds.
"""

import logging
from itertools import product
from typing import Dict, Iterator, List, Sequence

from .algebra import FiniteGradedAlgebra, algebra_from_products
from .clifford import CliffordMap, ThetaLike, as_clifford_map
from .errors import (
    DimensionMismatch, InputError, NondegeneracyFailure, NotFrobeniusTop, PBWFailure, ResourceBound,
)
from .exactlinear import (
    Scalar, VectorSpan, Word, add_term, all_words, axpy, format_word, rank_rows, rref_rows,
)
from .models import BilinearFormMatrix, PBWReport, Z2Split
from .quadalg import QuadraticPresentation, hilbert_series, top_degree

log = logging.getLogger(__name__)


class TruncatedQuotient:
    """T_{<=N}(V) modulo J = span{u (r - theta(r)) v : |u| + |v| + 2 <= N}."""

    def __init__(self, presentation: QuadraticPresentation, values: Sequence[Scalar],
                 bound: int):
        self.presentation = presentation
        self.values = tuple(presentation.field.convert(v) for v in values)
        self.bound = bound
        self._pivots: Dict[Word, Dict[Word, Scalar]] = {}
        self._dim = None

    def compute(self) -> "TruncatedQuotient":
        E = self.presentation
        n = E.ngens
        total = sum(n ** k for k in range(self.bound + 1))
        if total > E.word_cap:
            raise ResourceBound(f"truncation at degree {self.bound} needs {total} words "
                                f"(cap {E.word_cap})")
        dim = 0
        for parity in (0, 1):
            words = [w for k in range(self.bound, -1, -1) if k % 2 == parity
                     for w in all_words(n, k)]
            column = {w: i for i, w in enumerate(words)}
            rows = list(self._relation_rows(parity, column))
            reduced, pivots = rref_rows(rows, len(words), E.field)
            for row, p in zip(reduced, pivots):
                self._pivots[words[p]] = {words[j]: -v for j, v in row.items() if j != p}
            dim += len(words) - len(pivots)
            log.debug(f"{E.name}: truncation {self.bound}, parity {parity}: "
                      f"{len(words)} words, rank {len(pivots)}")
        self._dim = dim
        return self

    def _relation_rows(self, parity: int, column: Dict[Word, int]) -> Iterator[Dict[int, Scalar]]:
        E = self.presentation
        n = E.ngens
        for k in range(2, self.bound + 1):
            if k % 2 != parity:
                continue
            for i in range(k - 1):
                for u in all_words(n, i):
                    for v in all_words(n, k - 2 - i):
                        for r, t in zip(E.relations.basis, self.values):
                            row: Dict[int, Scalar] = {}
                            for w, c in r.terms:
                                add_term(row, column[u + w + v], c)
                            add_term(row, column[u + v], -t)
                            yield row

    @property
    def dim(self) -> int:
        if self._dim is None:
            self.compute()
        return self._dim

    def reduce_word(self, word: Word) -> Dict[Word, Scalar]:
        """Image of a word of length <= bound in the normal-word basis."""
        if self._dim is None:
            self.compute()
        expansion = self._pivots.get(word)
        if expansion is None:
            return {word: self.presentation.field.one}
        return expansion

    def normal_words(self) -> List[Word]:
        if self._dim is None:
            self.compute()
        n = self.presentation.ngens
        return [w for k in range(self.bound + 1) for w in all_words(n, k)
                if w not in self._pivots]


def _apply(action: Sequence[Dict[int, Scalar]], vec: Dict[int, Scalar]) -> Dict[int, Scalar]:
    acc: Dict[int, Scalar] = {}
    for j, c in vec.items():
        axpy(acc, c, action[j])
    return acc


def build_deformation(E: QuadraticPresentation, theta: ThetaLike,
                      verify: bool = True, precheck: bool = True) -> FiniteGradedAlgebra:
    """
    E(theta) with structure constants on the normal words of E.

    Products are generated from the left actions of the generators only, so
    no product ever leaves the truncation window T_{<=n+1}.

    Args:
        E: Finite-dimensional quadratic algebra
        theta: CliffordMap on E, or raw values against the echelon basis of R
        verify: Check unit, associativity and parity of the finished table
        precheck: Check the Clifford condition first; when off, raw values
            are caught by the truncated dimension count instead

    Returns:
        FiniteGradedAlgebra on the normal words of E, with degrees and words
    """
    if precheck:
        values = as_clifford_map(E, theta).values
    else:
        values = theta.values if isinstance(theta, CliffordMap) else tuple(theta)
        report = pbw_check(E, values)
        if not report.passed:
            raise PBWFailure(f"truncated dimensions {list(report.truncated_dims)}, "
                             f"E has dim {report.expected_dim}")
    n = top_degree(E)
    expected = sum(hilbert_series(E, n))
    quotient = TruncatedQuotient(E, values, n + 1).compute()
    if quotient.dim != expected:
        raise PBWFailure(f"E(theta) truncated at degree {n + 1} has dim {quotient.dim}, "
                         f"E has dim {expected}")
    basis = [w for k in range(n + 1) for w in E.slice(k).basis]
    if set(quotient.normal_words()) != set(basis):
        raise PBWFailure("normal words of E(theta) differ from those of E")

    field = E.field
    one = field.one
    index = {w: i for i, w in enumerate(basis)}
    actions = []
    for a in range(E.ngens):
        actions.append([{index[x]: c for x, c in quotient.reduce_word((a,) + w).items()}
                        for w in basis])
    products = {}
    for i, u in enumerate(basis):
        for j in range(len(basis)):
            vec = {j: one}
            for letter in reversed(u):
                vec = _apply(actions[letter], vec)
            products[(i, j)] = vec

    algebra = algebra_from_products(
        field,
        labels=[format_word(w, E.generators) for w in basis],
        parities=[len(w) % 2 for w in basis],
        products=products,
        unit={0: one},
        name=f"{E.name}(theta)",
        degrees=[len(w) for w in basis],
        words=basis,
    )
    if verify:
        if not (algebra.check_unit() and algebra.check_associativity()
                and algebra.check_homogeneity()):
            raise PBWFailure(f"structure constants of {algebra.name} fail the algebra laws")
    log.debug(f"built {algebra.name}: dim {algebra.dim}, top degree {n}")
    return algebra


def pbw_check(E: QuadraticPresentation, theta: ThetaLike) -> PBWReport:
    """
    Compare dim T_{<=N}(V)/J with dim E at N = n+1 and N = n+2.

    Args:
        E: Finite-dimensional quadratic algebra with top degree n
        theta: Values on R, taken as given; a non-Clifford theta shows up
            as a dimension collapse

    Returns:
        PBWReport with the expected dimension and one (N, dim) pair per bound
    """
    values = theta.values if isinstance(theta, CliffordMap) else tuple(theta)
    if len(values) != E.relations.dim:
        raise DimensionMismatch(f"expected {E.relations.dim} values (dim R), got {len(values)}")
    n = top_degree(E)
    expected = sum(hilbert_series(E, n))
    dims = []
    for bound in (n + 1, n + 2):
        dims.append((bound, TruncatedQuotient(E, values, bound).dim))
    report = PBWReport(expected, n, tuple(dims))
    log.debug(f"{E.name}: PBW {'passes' if report.passed else 'fails'} {dims}")
    return report


def z2_components(A: FiniteGradedAlgebra) -> Z2Split:
    even, odd = A.even_indices(), A.odd_indices()
    return Z2Split(len(even), len(odd), even, odd)


def _form_value(A: FiniteGradedAlgebra, gram, vec, k: int, left: bool) -> Scalar:
    acc = A.field.zero
    for m, c in vec:
        acc += c * (gram[m][k] if left else gram[k][m])
    return acc


def form_associative(A: FiniteGradedAlgebra, gram) -> bool:
    """<b_i b_j, b_k> = <b_i, b_j b_k> on every basis triple."""
    for i, j, k in product(range(A.dim), repeat=3):
        lhs = _form_value(A, gram, A.table[i][j], k, left=True)
        rhs = _form_value(A, gram, A.table[j][k], i, left=False)
        if lhs != rhs:
            log.warning(f"{A.name}: Frobenius form fails associativity on ({i}, {j}, {k})")
            return False
    return True


def form_homogeneous(A: FiniteGradedAlgebra, gram, parity: int) -> bool:
    """<b_i, b_j> = 0 unless p(b_i) + p(b_j) = parity mod 2."""
    return all(not gram[i][j] or (A.parities[i] + A.parities[j]) % 2 == parity
               for i, j in product(range(A.dim), repeat=2))


def frobenius_form(A: FiniteGradedAlgebra) -> BilinearFormMatrix:
    """
    <a, b> = coefficient of the top-degree basis word in a b.

    Associativity and parity compatibility of the form are checked
    exhaustively and recorded on the result.
    """
    if A.degrees is None:
        raise InputError(f"{A.name} carries no degree data")
    n = max(A.degrees)
    top = [i for i, d in enumerate(A.degrees) if d == n]
    if len(top) != 1:
        raise NotFrobeniusTop(f"top degree {n} has dimension {len(top)}")
    t = top[0]
    zero = A.field.zero
    gram = []
    for i in range(A.dim):
        gram.append(tuple(dict(A.table[i][j]).get(t, zero) for j in range(A.dim)))
    rows = [{j: v for j, v in enumerate(row) if v} for row in gram]
    rank = rank_rows(rows, A.dim, A.field)
    if rank != A.dim:
        raise NondegeneracyFailure(f"Frobenius form of {A.name} has rank {rank} < {A.dim}")
    parity = n % 2
    return BilinearFormMatrix(
        gram=tuple(gram),
        parity=parity,
        top_degree=n,
        top_index=t,
        rank=rank,
        associative=form_associative(A, gram),
        homogeneous=form_homogeneous(A, gram, parity),
    )


def _spans_part(A: FiniteGradedAlgebra, vectors: List[Dict[int, Scalar]], part) -> bool:
    allowed = set(part)
    if any(k not in allowed for v in vectors for k in v):
        return False
    return VectorSpan(vectors, A.dim, A.field).dim == len(part)


def strong_grading_check(A: FiniteGradedAlgebra) -> bool:
    """A_1 A_1 = A_0 and A_0 A_1 = A_1."""
    even, odd = A.even_indices(), A.odd_indices()
    if not odd:
        return False
    odd_odd = [A.product_of_basis(i, j) for i in odd for j in odd]
    even_odd = [A.product_of_basis(i, j) for i in even for j in odd]
    return _spans_part(A, odd_odd, even) and _spans_part(A, even_odd, odd)
