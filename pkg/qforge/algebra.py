"""
Finite-dimensional Z2-graded algebras given by structure constants, and
checking of linear maps between them.

Elements are sparse dicts {basis index: scalar}.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DimensionMismatch, InputError, MixedField
from .exactlinear import (
    FieldDescriptor, Scalar, VectorSpan, Word, add_term, axpy, solve_sparse, vectors_equal,
)
from .models import IsoCertificate, SparseVector, sparse

log = logging.getLogger(__name__)

Element = Dict[int, Scalar]
Table = Tuple[Tuple[SparseVector, ...], ...]

# Failing pairs kept in a certificate.
MAX_REPORTED_FAILURES = 8


@dataclass(frozen=True)
class FiniteGradedAlgebra:
    """
    Basis b_0..b_{d-1} with parities; table[i][j] is b_i b_j as sorted
    (index, coefficient) pairs. ``unit`` is the identity as a sparse vector.
    Algebras built from normal words also record each basis word and degree.
    """
    field: FieldDescriptor
    labels: Tuple[str, ...]
    parities: Tuple[int, ...]
    table: Table = field(repr=False)
    unit: SparseVector = ()
    degrees: Optional[Tuple[int, ...]] = None
    words: Optional[Tuple[Word, ...]] = None
    name: str = field(default="A", compare=False)

    def __post_init__(self):
        d = len(self.labels)
        if len(self.parities) != d or len(self.table) != d:
            raise DimensionMismatch("labels, parities and table disagree on the dimension")
        if any(len(row) != d for row in self.table):
            raise DimensionMismatch("structure table is not square")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def one(self) -> Element:
        return dict(self.unit)

    def basis_element(self, i: int) -> Element:
        return {i: self.field.one}

    def product_of_basis(self, i: int, j: int) -> Element:
        return dict(self.table[i][j])

    def multiply(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Element:
        acc: Element = {}
        for i, a in u.items():
            if not a:
                continue
            row = self.table[i]
            for j, b in v.items():
                ab = a * b
                if not ab:
                    continue
                for k, c in row[j]:
                    add_term(acc, k, ab * c)
        return acc

    def add(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Element:
        return axpy(dict(u), self.field.one, v)

    def sub(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Element:
        return axpy(dict(u), self.field.neg_one(), v)

    def parity_of(self, u: Mapping[int, Scalar]) -> Optional[int]:
        """Parity of a homogeneous element; None when u mixes parities."""
        found = {self.parities[i] for i, v in u.items() if v}
        if not found:
            return 0
        return found.pop() if len(found) == 1 else None

    def even_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == 0)

    def odd_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == 1)

    @cached_property
    def word_index(self) -> Dict[Word, int]:
        if self.words is None:
            raise InputError(f"{self.name} has no word basis")
        return {w: i for i, w in enumerate(self.words)}

    def word_element(self, word: Sequence[int]) -> Element:
        """Evaluate a word of generators (degree-1 basis words) in the algebra."""
        index = self.word_index
        result = self.one()
        for letter in word:
            generator = index.get((letter,))
            if generator is None:
                raise InputError(f"generator {letter} is not a basis word of {self.name}")
            result = self.multiply(result, self.basis_element(generator))
        return result

    def structure_triples(self) -> List[Tuple[int, int, int, Scalar]]:
        return [(i, j, k, c)
                for i, row in enumerate(self.table)
                for j, entry in enumerate(row)
                for k, c in entry]

    # ------------------------------------------------------------------
    # Law checks
    # ------------------------------------------------------------------

    def check_associativity(self) -> bool:
        d = self.dim
        for i, j, k in product(range(d), repeat=3):
            left = self.multiply(self.product_of_basis(i, j), self.basis_element(k))
            right = self.multiply(self.basis_element(i), self.product_of_basis(j, k))
            if not vectors_equal(left, right):
                log.warning(f"{self.name}: associativity fails on ({i}, {j}, {k})")
                return False
        return True

    def check_unit(self) -> bool:
        one = self.one()
        for i in range(self.dim):
            b = self.basis_element(i)
            if not (vectors_equal(self.multiply(one, b), b)
                    and vectors_equal(self.multiply(b, one), b)):
                return False
        return True

    def check_homogeneity(self) -> bool:
        for i, j in product(range(self.dim), repeat=2):
            expected = (self.parities[i] + self.parities[j]) % 2
            if any(self.parities[k] != expected for k, _ in self.table[i][j]):
                return False
        return self.parity_of(self.one()) == 0

    def restrict(self, indices: Sequence[int], name: str,
                 parities: Optional[Sequence[int]] = None) -> "FiniteGradedAlgebra":
        """Subalgebra spanned by a subset of the basis (closure is checked)."""
        position = {old: new for new, old in enumerate(indices)}
        table = []
        for i in indices:
            row = []
            for j in indices:
                entry = []
                for k, c in self.table[i][j]:
                    if k not in position:
                        raise InputError(f"basis subset of {self.name} is not closed "
                                         "under products")
                    entry.append((position[k], c))
                row.append(tuple(sorted(entry)))
            table.append(tuple(row))
        unit = []
        for k, c in self.unit:
            if k not in position:
                raise InputError(f"basis subset of {self.name} does not contain the unit")
            unit.append((position[k], c))
        return FiniteGradedAlgebra(
            field=self.field,
            labels=tuple(self.labels[i] for i in indices),
            parities=tuple(parities) if parities is not None
            else tuple(self.parities[i] for i in indices),
            table=tuple(table),
            unit=tuple(sorted(unit)),
            degrees=tuple(self.degrees[i] for i in indices) if self.degrees else None,
            words=tuple(self.words[i] for i in indices) if self.words else None,
            name=name,
        )


def algebra_from_products(field: FieldDescriptor, labels: Sequence[str], parities: Sequence[int],
                          products: Mapping[Tuple[int, int], Mapping[int, Scalar]],
                          unit: Mapping[int, Scalar], name: str,
                          degrees: Optional[Sequence[int]] = None,
                          words: Optional[Sequence[Word]] = None) -> FiniteGradedAlgebra:
    """Assemble the frozen table from a {(i, j): product} mapping."""
    d = len(labels)
    table = tuple(tuple(sparse(dict(products.get((i, j), {}))) for j in range(d))
                  for i in range(d))
    return FiniteGradedAlgebra(
        field=field,
        labels=tuple(labels),
        parities=tuple(parities),
        table=table,
        unit=sparse(dict(unit)),
        degrees=tuple(degrees) if degrees is not None else None,
        words=tuple(words) if words is not None else None,
        name=name,
    )


def quotient_algebra(A: FiniteGradedAlgebra, ideal: Sequence[Mapping[int, Scalar]],
                     name: Optional[str] = None) -> FiniteGradedAlgebra:
    """
    A/I for a homogeneous two-sided ideal I given by a spanning set.

    The quotient keeps the basis elements of A that are not pivots of the
    row-reduced I; products are reduced modulo I.
    """
    span = VectorSpan(ideal, A.dim, A.field)
    pivots = set(span.pivots)
    kept = [k for k in range(A.dim) if k not in pivots]
    position = {old: new for new, old in enumerate(kept)}

    def project(vec: Mapping[int, Scalar]) -> Element:
        return {position[k]: v for k, v in span.reduce(vec).items() if v}

    products = {(a, b): project(A.product_of_basis(i, j))
                for a, i in enumerate(kept) for b, j in enumerate(kept)}
    return algebra_from_products(
        A.field,
        labels=[A.labels[k] for k in kept],
        parities=[A.parities[k] for k in kept],
        products=products,
        unit=project(A.one()),
        name=name or f"{A.name}/I",
    )


# ============================================================================
# Linear maps between algebras
# ============================================================================

def apply_map(images: Sequence[Mapping[int, Scalar]], u: Mapping[int, Scalar]) -> Element:
    acc: Element = {}
    for i, a in u.items():
        axpy(acc, a, images[i])
    return acc


def preimage(images: Sequence[Mapping[int, Scalar]], y: Mapping[int, Scalar],
             field: FieldDescriptor) -> Optional[Element]:
    """Some u with apply_map(images, u) = y, or None."""
    solution = solve_sparse(list(images), y, field)
    if solution is None:
        return None
    return {i: c for i, c in enumerate(solution) if c}


def map_rank(images: Sequence[Mapping[int, Scalar]], ncols: int, field: FieldDescriptor) -> int:
    return VectorSpan(images, ncols, field).dim


def check_algebra_map(source: FiniteGradedAlgebra, target: FiniteGradedAlgebra,
                      images: Sequence[Mapping[int, Scalar]]) -> IsoCertificate:
    """
    Unit, multiplicativity on every basis pair, bijectivity and parity
    preservation of the linear map b_i -> images[i].
    """
    if source.field is not target.field:
        raise MixedField(f"map between algebras over {source.field.value} and {target.field.value}")
    if len(images) != source.dim:
        raise DimensionMismatch(f"{len(images)} images for a {source.dim}-dimensional source")
    images = [dict(img) for img in images]
    unital = vectors_equal(apply_map(images, source.one()), target.one())

    failures = []
    for i, j in product(range(source.dim), repeat=2):
        mapped = apply_map(images, source.product_of_basis(i, j))
        multiplied = target.multiply(images[i], images[j])
        if not vectors_equal(mapped, multiplied):
            failures.append((i, j))
            if len(failures) >= MAX_REPORTED_FAILURES:
                break

    bijective = (source.dim == target.dim
                 and map_rank(images, target.dim, target.field) == target.dim)
    graded = all(not img or target.parity_of(img) == source.parities[i]
                 for i, img in enumerate(images))
    certificate = IsoCertificate(
        source=source.name,
        target=target.name,
        images=tuple(sparse(img) for img in images),
        unital=unital,
        multiplicative=not failures,
        bijective=bijective,
        graded=graded,
        failures=tuple(failures),
    )
    log.debug(f"map {source.name} -> {target.name}: unital={unital} "
              f"multiplicative={not failures} bijective={bijective} graded={graded}")
    return certificate
