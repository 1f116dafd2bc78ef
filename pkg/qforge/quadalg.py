"""
Quadratic algebras T(V)/(R).

Graded components are computed degree by degree: the degree-k slice is
(B_{k-1} (x) V) modulo the image of B_{k-2} (x) R, which is exactly the
image of I_k = sum V^i (x) R (x) V^j in that quotient. Normal words are the
non-pivot candidate words in lexicographic order; pivot words keep their
expansion in normal words (the lift table).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, TypeVar

from .constants import DUAL_SUFFIX, MAX_TOP_DEGREE_SEARCH, resource_cap
from .errors import (
    DimensionMismatch, InputError, MixedField, NameClash, ResourceBound, ZeroElement,
)
from .exactlinear import (
    FieldDescriptor, Scalar, Subspace, Tensor, Word, add_term, all_words, annihilator,
    axpy, echelonize, nullspace_rows, rank_rows, rref_rows, solve_sparse,
)
from .models import DegreeRegularity, KoszulCheck, RegularityReport

log = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class GradedSlice:
    """Degree-k component: normal-word basis plus the reduction of pivot words."""
    degree: int
    basis: Tuple[Word, ...]
    lift: Mapping[Word, Mapping[Word, Scalar]] = field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> Dict[Word, int]:
        return {w: i for i, w in enumerate(self.basis)}


@dataclass(frozen=True)
class QuadraticPresentation:
    """
    T(V)/(R) with V spanned by named degree-1 generators and R an echelonized
    subspace of V (x) V. Slices and derived results (dual, center, Clifford
    data) are cached per instance, write-once.
    """
    field: FieldDescriptor
    generators: Tuple[str, ...]
    relations: Subspace
    name: str = field(default="E", compare=False)
    word_cap: int = field(default_factory=resource_cap, compare=False, repr=False)
    _slices: Dict[int, GradedSlice] = field(default_factory=dict, init=False,
                                            compare=False, repr=False)
    _word_nf: Dict[Word, Dict[Word, Scalar]] = field(default_factory=dict, init=False,
                                                     compare=False, repr=False)
    _memo: Dict[str, Any] = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise NameClash(f"generator names must be distinct: {', '.join(self.generators)}")
        if self.relations.field is not self.field:
            raise MixedField(f"relations over {self.relations.field.value} "
                             f"in a presentation over {self.field.value}")
        if self.relations.degree != 2:
            raise InputError("relations must lie in V (x) V")
        if self.relations.ngens != len(self.generators):
            raise DimensionMismatch(f"relations over {self.relations.ngens} generators, "
                                    f"{len(self.generators)} declared")

    @classmethod
    def create(cls, field: FieldDescriptor, generators: Sequence[str],
               relations: Sequence[Tensor], name: str = "E",
               word_cap: Optional[int] = None) -> "QuadraticPresentation":
        """Presentation from any spanning list of degree-2 relations."""
        gens = tuple(generators)
        subspace = echelonize(list(relations), len(gens), degree=2, field=field)
        cap = resource_cap() if word_cap is None else word_cap
        return cls(field, gens, subspace, name=name, word_cap=cap)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def cached(self, key: str, compute: Callable[[], T]) -> T:
        """compute() once per instance under key."""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def slice(self, k: int) -> GradedSlice:
        if k < 0:
            raise InputError(f"degree must be non-negative, got {k}")
        cached = self._slices.get(k)
        if cached is not None:
            return cached
        computed = self._compute_slice(k)
        return self._slices.setdefault(k, computed)

    def _compute_slice(self, k: int) -> GradedSlice:
        n = self.ngens
        if n ** k > self.word_cap:
            raise ResourceBound(f"degree {k} over {n} generators needs {n ** k} words "
                                f"(cap {self.word_cap})")
        if k == 0:
            return GradedSlice(0, ((),))
        if k == 1:
            return GradedSlice(1, tuple((a,) for a in range(n)))

        previous = self.slice(k - 1)
        candidates = [m + (c,) for m in previous.basis for c in range(n)]
        column = {w: i for i, w in enumerate(candidates)}
        rows = []
        for b in self.slice(k - 2).basis:
            for r in self.relations.basis:
                row: Dict[int, Scalar] = {}
                for (a, c), coeff in r.terms:
                    for m, h in self._reduce_word(b + (a,)).items():
                        add_term(row, column[m + (c,)], coeff * h)
                if row:
                    rows.append(row)
        reduced, pivots = rref_rows(rows, len(candidates), self.field)
        pivot_set = set(pivots)
        basis = tuple(w for i, w in enumerate(candidates) if i not in pivot_set)
        lift = {}
        for row, p in zip(reduced, pivots):
            lift[candidates[p]] = {candidates[j]: -v for j, v in row.items() if j != p}
        log.debug(f"{self.name}: slice {k} has {len(candidates)} candidates, "
                  f"rank {len(pivots)}, dim {len(basis)}")
        return GradedSlice(k, basis, lift)

    def _reduce_word(self, word: Word) -> Dict[Word, Scalar]:
        """Normal form of a word, built letter by letter from its prefix."""
        cached = self._word_nf.get(word)
        if cached is not None:
            return cached
        if len(word) <= 1:
            result = {word: self.field.one}
        else:
            current = self.slice(len(word))
            result: Dict[Word, Scalar] = {}
            last = word[-1]
            for m, a in self._reduce_word(word[:-1]).items():
                candidate = m + (last,)
                expansion = current.lift.get(candidate)
                if expansion is None:
                    add_term(result, candidate, a)
                else:
                    axpy(result, a, expansion)
        self._word_nf[word] = result
        return result

    def normal_form(self, t: Tensor) -> Tensor:
        """Reduction of a homogeneous tensor to normal words."""
        if t.field is not self.field:
            raise MixedField(f"tensor over {t.field.value}, presentation over {self.field.value}")
        acc: Dict[Word, Scalar] = {}
        for word, value in t.terms:
            if word and max(word) >= self.ngens:
                raise DimensionMismatch(f"letter out of range in {word!r}")
            axpy(acc, value, self._reduce_word(word))
        return Tensor.from_dict(self.field, t.degree, acc)

    def derived(self, generators: Sequence[str], relations: Sequence[Tensor],
                name: str) -> "QuadraticPresentation":
        """A new presentation inheriting field and resource cap."""
        return QuadraticPresentation.create(self.field, generators, relations,
                                            name=name, word_cap=self.word_cap)


# ============================================================================
# Operations
# ============================================================================

def degree_component(P: QuadraticPresentation, k: int) -> GradedSlice:
    return P.slice(k)


def normal_form(P: QuadraticPresentation, t: Tensor) -> Tensor:
    return P.normal_form(t)


def ideal_component(P: QuadraticPresentation, k: int) -> Subspace:
    """I_k spanned explicitly by u (x) r (x) v; used to cross-check slices."""
    n = P.ngens
    if n ** k > P.word_cap:
        raise ResourceBound(f"degree {k} over {n} generators exceeds the word cap")
    vectors = []
    for i in range(k - 1):
        for u in all_words(n, i):
            left = Tensor.monomial(P.field, u)
            for v in all_words(n, k - 2 - i):
                right = Tensor.monomial(P.field, v)
                for r in P.relations.basis:
                    vectors.append(left.tensor(r).tensor(right))
    return echelonize(vectors, n, degree=k, field=P.field)


def hilbert_series(P: QuadraticPresentation, max_degree: int) -> List[int]:
    if max_degree < 0:
        raise InputError("max degree must be non-negative")
    return [P.slice(k).dim for k in range(max_degree + 1)]


def multiply(P: QuadraticPresentation, a: Tensor, b: Tensor) -> Tensor:
    """Concatenate representatives and reduce."""
    return P.normal_form(a.tensor(b))


def top_degree(P: QuadraticPresentation) -> int:
    """Largest degree with a nonzero slice, for finite-dimensional P."""
    for k in range(MAX_TOP_DEGREE_SEARCH + 1):
        if P.slice(k).dim == 0:
            return k - 1
    raise ResourceBound(f"{P.name} has no vanishing slice up to degree {MAX_TOP_DEGREE_SEARCH}")


def total_dimension(P: QuadraticPresentation) -> int:
    return sum(hilbert_series(P, top_degree(P)))


def toggle_dual_name(name: str) -> str:
    if name.endswith(DUAL_SUFFIX) and len(name) > len(DUAL_SUFFIX):
        return name[:-len(DUAL_SUFFIX)]
    return name + DUAL_SUFFIX


def quadratic_dual(P: QuadraticPresentation) -> QuadraticPresentation:
    """
    Quadratic dual T(V*)/(R^perp) under the untwisted pairing.

    Generator names and the algebra name toggle the dual suffix, so taking
    the dual twice gives back the original names.

    Args:
        P: Presentation to dualize

    Returns:
        The dual presentation, carrying P's word cap; computed once per P
    """
    return P.cached("dual", lambda: _build_dual(P))


def _build_dual(P: QuadraticPresentation) -> QuadraticPresentation:
    names = tuple(toggle_dual_name(g) for g in P.generators)
    relations = annihilator(P.relations, cap=P.word_cap)
    dual_name = toggle_dual_name(P.name) if P.name else "E" + DUAL_SUFFIX
    log.debug(f"dual of {P.name}: {P.relations.dim} relations -> {relations.dim} relations")
    return QuadraticPresentation(P.field, names, relations, name=dual_name,
                                 word_cap=P.word_cap)


def hypersurface_quotient(P: QuadraticPresentation, r0: Tensor,
                          name: Optional[str] = None) -> QuadraticPresentation:
    """T(V)/(R + k r0)."""
    relations = list(P.relations.basis) + [r0]
    return P.derived(P.generators, relations, name or (P.name + "_quot"))


def _generator(P: QuadraticPresentation, a: int) -> Tensor:
    return Tensor.monomial(P.field, (a,))


def central_degree2(P: QuadraticPresentation) -> Subspace:
    """
    {w in P_2 : w x = x w in P_3 for every generator x}, as normal-form tensors.
    Commuting with the degree-1 generators is full centrality.
    """
    return P.cached("center2", lambda: _center_degree2(P))


def _center_degree2(P: QuadraticPresentation) -> Subspace:
    two = P.slice(2)
    rows: Dict[Tuple[int, Word], Dict[int, Scalar]] = {}
    for j, word in enumerate(two.basis):
        w = Tensor.monomial(P.field, word)
        for a in range(P.ngens):
            x = _generator(P, a)
            commutator = multiply(P, w, x) - multiply(P, x, w)
            for out, value in commutator.terms:
                rows.setdefault((a, out), {})[j] = value
    kernel = nullspace_rows(list(rows.values()), two.dim, P.field)
    vectors = [Tensor.from_dict(P.field, 2, {two.basis[j]: v for j, v in vec.items()})
               for vec in kernel]
    log.debug(f"{P.name}: degree-2 center has dim {len(vectors)} of {two.dim}")
    return echelonize(vectors, P.ngens, degree=2, field=P.field)


def _multiplication_rank(P: QuadraticPresentation, z: Tensor, k: int, left: bool) -> int:
    source = P.slice(k)
    target = P.slice(k + 2)
    rows = []
    for word in source.basis:
        m = Tensor.monomial(P.field, word)
        product = multiply(P, z, m) if left else multiply(P, m, z)
        rows.append({target.index[w]: v for w, v in product.terms})
    return rank_rows(rows, target.dim, P.field)


def regular_upto(P: QuadraticPresentation, z: Tensor, bound: int) -> RegularityReport:
    """Left and right injectivity of z-multiplication P_k -> P_{k+2}, k <= bound."""
    z_nf = P.normal_form(z)
    if z_nf.is_zero():
        raise ZeroElement(f"z is zero in {P.name}")
    degrees = []
    for k in range(bound + 1):
        dim = P.slice(k).dim
        degrees.append(DegreeRegularity(
            degree=k,
            source_dim=dim,
            left_rank=_multiplication_rank(P, z_nf, k, left=True),
            right_rank=_multiplication_rank(P, z_nf, k, left=False),
        ))
    report = RegularityReport(bound, tuple(degrees))
    log.debug(f"{P.name}: {report.summary}")
    return report


def koszul_numeric_check(P: QuadraticPresentation, max_degree: int) -> KoszulCheck:
    """
    Coefficients of H_P(t) H_{P!}(-t) up to max_degree; a nonzero coefficient
    past degree 0 certifies that P is not Koszul.
    """
    if max_degree < 2:
        raise InputError("the Koszul check needs max degree >= 2")
    series = hilbert_series(P, max_degree)
    dual_series = hilbert_series(quadratic_dual(P), max_degree)
    coefficients = []
    first_failure = None
    for m in range(max_degree + 1):
        c = sum(series[i] * (-1) ** (m - i) * dual_series[m - i] for i in range(m + 1))
        coefficients.append(c)
        expected = 1 if m == 0 else 0
        if c != expected and first_failure is None:
            first_failure = m
    return KoszulCheck(max_degree, tuple(series), tuple(dual_series),
                       tuple(coefficients), first_failure)


def slice_coordinates(P: QuadraticPresentation, t: Tensor) -> List[Scalar]:
    """Coordinates of a tensor's normal form against the slice basis."""
    nf = P.normal_form(t)
    sl = P.slice(t.degree)
    return [nf.coeff(w) for w in sl.basis]


def solve_in_slice(P: QuadraticPresentation, vectors: Sequence[Tensor],
                   target: Tensor) -> Optional[List[Scalar]]:
    """Coefficients c with sum c_i vectors[i] = target in P, or None."""
    reduced = [P.normal_form(v).coeffs for v in vectors]
    return solve_sparse(reduced, P.normal_form(target).coeffs, P.field)
