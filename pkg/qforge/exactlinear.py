"""
Exact linear algebra over Q and Q(i).

Scalars are sympy domain elements (``QQ`` / ``QQ_I``), words are tuples of
generator indices, tensors are homogeneous sparse combinations of words and
subspaces are kept in reduced row-echelon form with respect to deglex order.
Row reduction is delegated to sympy's sparse ``DomainMatrix``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .constants import resource_cap
from .errors import (
    DimensionMismatch, FieldLacksI, InputError, MixedDegree, MixedField,
    NotInSpan, ResourceBound,
)

log = logging.getLogger(__name__)

Scalar = Any
Word = Tuple[int, ...]
Vector = Dict[Hashable, Scalar]


# ============================================================================
# Fields and scalars
# ============================================================================

class FieldDescriptor(Enum):
    """The two coefficient fields: Q and Q(i)."""
    RATIONALS = "Q"
    GAUSSIAN_RATIONALS = "Qi"

    @property
    def domain(self):
        return QQ if self is FieldDescriptor.RATIONALS else QQ_I

    @property
    def has_i(self) -> bool:
        return self is FieldDescriptor.GAUSSIAN_RATIONALS

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def i(self) -> Scalar:
        """The imaginary unit; Q has none."""
        if not self.has_i:
            raise FieldLacksI("the field Q has no square root of -1; declare 'field Qi'")
        return QQ_I(0, 1)

    def rational(self, numerator: int, denominator: int = 1) -> Scalar:
        value = QQ(numerator, denominator)
        return value if self is FieldDescriptor.RATIONALS else QQ_I(value, 0)

    def convert(self, value: Any) -> Scalar:
        """Bring an int, a rational or a domain element into this field."""
        domain = self.domain
        if isinstance(value, bool):
            raise InputError("booleans are not scalars")
        if isinstance(value, int):
            return domain(value)
        if isinstance(value, str):
            return parse_scalar(value, self)
        if domain.of_type(value):
            return value
        if QQ.of_type(value):
            return value if domain is QQ else QQ_I(value, 0)
        if QQ_I.of_type(value):
            if value.y:
                raise FieldLacksI(f"scalar {format_scalar(value)} is not rational")
            return value.x
        raise InputError(f"cannot interpret {value!r} as a scalar")

    def neg_one(self) -> Scalar:
        return -self.domain.one

    @classmethod
    def from_name(cls, name: str) -> "FieldDescriptor":
        for member in cls:
            if member.value == name:
                return member
        raise InputError(f"unknown field {name!r} (expected Q or Qi)")


_RATIONAL_RE = re.compile(r'^[+-]?\d+(?:/\d+)?$')


def _parse_rational(text: str) -> Scalar:
    if not _RATIONAL_RE.match(text):
        raise InputError(f"invalid rational {text!r}")
    if '/' in text:
        num, den = text.split('/')
        if int(den) == 0:
            raise InputError(f"zero denominator in {text!r}")
        return QQ(int(num), int(den))
    return QQ(int(text))


def parse_scalar(text: str, field: FieldDescriptor) -> Scalar:
    """Parse canonical scalar text: '3', '-1/2', '2i', '1/2+1/3i', '-1i'."""
    s = text.strip().replace(' ', '')
    if not s:
        raise InputError("empty scalar")
    if not s.endswith('i'):
        return field.convert(_parse_rational(s))
    body = s[:-1]
    split = max(body.rfind('+'), body.rfind('-'))
    if split > 0:
        real_text, imag_text = body[:split], body[split:]
    else:
        real_text, imag_text = '0', body
    if imag_text in ('', '+'):
        imag_text = '1'
    elif imag_text == '-':
        imag_text = '-1'
    real, imag = _parse_rational(real_text), _parse_rational(imag_text)
    if not field.has_i:
        raise FieldLacksI(f"imaginary scalar {text!r} in a Q presentation")
    return QQ_I(real, imag)


def _format_rational(q: Scalar) -> str:
    p, d = int(q.numerator), int(q.denominator)
    return str(p) if d == 1 else f"{p}/{d}"


def format_scalar(a: Scalar) -> str:
    """Canonical text: '-1/2', '1/2+1/3i', '2i'."""
    if QQ_I.of_type(a):
        real, imag = a.x, a.y
        if not imag:
            return _format_rational(real)
        imag_text = _format_rational(imag) + "i"
        if not real:
            return imag_text
        sign = "" if imag_text.startswith("-") else "+"
        return _format_rational(real) + sign + imag_text
    return _format_rational(a)


def is_negative_rational(a: Scalar) -> bool:
    """True for a negative scalar with no imaginary part."""
    if QQ_I.of_type(a):
        return not a.y and a.x < 0
    return a < 0


# ============================================================================
# Sparse vectors
# ============================================================================

def axpy(acc: Dict, coeff: Scalar, vec: Mapping) -> Dict:
    """acc += coeff * vec, dropping cancelled entries. Returns acc."""
    if not coeff:
        return acc
    for key, value in vec.items():
        term = coeff * value
        if key in acc:
            total = acc[key] + term
            if total:
                acc[key] = total
            else:
                del acc[key]
        elif term:
            acc[key] = term
    return acc


def add_term(acc: Dict, key: Hashable, value: Scalar) -> None:
    if not value:
        return
    if key in acc:
        total = acc[key] + value
        if total:
            acc[key] = total
        else:
            del acc[key]
    else:
        acc[key] = value


def scale(vec: Mapping, coeff: Scalar) -> Dict:
    if not coeff:
        return {}
    return {key: coeff * value for key, value in vec.items()}


def vectors_equal(u: Mapping, v: Mapping) -> bool:
    """Equality of sparse vectors ignoring stored zeros."""
    keys = set(u) | set(v)
    for key in keys:
        a, b = u.get(key), v.get(key)
        if a is None:
            if b:
                return False
        elif b is None:
            if a:
                return False
        elif a != b:
            return False
    return True


# ============================================================================
# Row reduction (sympy DomainMatrix)
# ============================================================================

def rref_rows(rows: Sequence[Mapping[int, Scalar]], ncols: int,
              field: FieldDescriptor) -> Tuple[List[Dict[int, Scalar]], List[int]]:
    """
    Reduced row-echelon form of a sparse matrix given as rows {col: value}.

    Returns the nonzero reduced rows (row i has pivot pivots[i], coefficient 1)
    and the pivot column list.
    """
    data = {}
    for row in rows:
        entries = {c: v for c, v in row.items() if v}
        if entries:
            data[len(data)] = entries
    if not data or ncols == 0:
        return [], []
    matrix = DomainMatrix(data, (len(data), ncols), field.domain)
    reduced, pivots = matrix.rref()
    rep = reduced.to_sparse().rep
    out = [dict(rep.get(i, {})) for i in range(len(pivots))]
    return out, list(pivots)


def nullspace_rows(rows: Sequence[Mapping[int, Scalar]], ncols: int,
                   field: FieldDescriptor) -> List[Dict[int, Scalar]]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    reduced, pivots = rref_rows(rows, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: field.one}
        for row, pivot in zip(reduced, pivots):
            value = row.get(free)
            if value:
                vec[pivot] = -value
        basis.append(vec)
    return basis


def rank_rows(rows: Sequence[Mapping[int, Scalar]], ncols: int,
              field: FieldDescriptor) -> int:
    return len(rref_rows(rows, ncols, field)[1])


def solve_sparse(vectors: Sequence[Mapping], target: Mapping,
                 field: FieldDescriptor) -> Optional[List[Scalar]]:
    """
    One solution c of sum_k c_k vectors[k] = target, or None if target is not
    in the span. Free unknowns are set to zero.
    """
    keys = set(target)
    for vec in vectors:
        keys.update(vec)
    index = {key: r for r, key in enumerate(sorted(keys))}
    unknowns = len(vectors)
    rows: List[Dict[int, Scalar]] = [dict() for _ in index]
    for col, vec in enumerate(vectors):
        for key, value in vec.items():
            if value:
                rows[index[key]][col] = value
    for key, value in target.items():
        if value:
            rows[index[key]][unknowns] = value
    reduced, pivots = rref_rows(rows, unknowns + 1, field)
    if unknowns in pivots:
        return None
    solution = [field.zero] * unknowns
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row.get(unknowns, field.zero)
    return solution


class VectorSpan:
    """
    Echelonized span of index-keyed sparse vectors, for algebra-level
    membership and rank questions.
    """

    def __init__(self, vectors: Iterable[Mapping[int, Scalar]], ncols: int,
                 field: FieldDescriptor):
        self.field = field
        self.ncols = ncols
        self.rows, self.pivots = rref_rows(list(vectors), ncols, field)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        acc = {k: v for k, v in vec.items() if v}
        for row, pivot in zip(self.rows, self.pivots):
            value = acc.get(pivot)
            if value:
                axpy(acc, -value, row)
        return acc

    def contains(self, vec: Mapping[int, Scalar]) -> bool:
        return not self.reduce(vec)


# ============================================================================
# Words and tensors
# ============================================================================

def word_key(word: Word) -> Tuple[int, Word]:
    """Deglex sort key."""
    return (len(word), word)


def all_words(ngens: int, degree: int) -> List[Word]:
    """Every word of the given length, in lexicographic order."""
    return list(product(range(ngens), repeat=degree))


def check_word_budget(ngens: int, degree: int, cap: Optional[int] = None) -> None:
    limit = resource_cap() if cap is None else cap
    count = ngens ** degree
    if count > limit:
        raise ResourceBound(
            f"degree {degree} over {ngens} generators needs {count} words (cap {limit})")


def format_word(word: Word, names: Sequence[str], sep: str = "*") -> str:
    if not word:
        return "1"
    return sep.join(names[a] for a in word)


@dataclass(frozen=True)
class Tensor:
    """Homogeneous element of V^{(x)k}: sorted (word, coefficient) pairs."""
    field: FieldDescriptor
    degree: int
    terms: Tuple[Tuple[Word, Scalar], ...] = ()

    @classmethod
    def from_dict(cls, field: FieldDescriptor, degree: int,
                  coeffs: Mapping[Word, Scalar]) -> "Tensor":
        items = []
        for word, value in coeffs.items():
            word = tuple(word)
            if len(word) != degree:
                raise MixedDegree(f"word {word!r} does not have degree {degree}")
            if value:
                items.append((word, value))
        items.sort(key=lambda item: item[0])
        return cls(field, degree, tuple(items))

    @classmethod
    def zero(cls, field: FieldDescriptor, degree: int) -> "Tensor":
        return cls(field, degree, ())

    @classmethod
    def monomial(cls, field: FieldDescriptor, word: Sequence[int],
                 coeff: Optional[Scalar] = None) -> "Tensor":
        word = tuple(word)
        value = field.one if coeff is None else coeff
        return cls.from_dict(field, len(word), {word: value})

    @cached_property
    def coeffs(self) -> Dict[Word, Scalar]:
        return dict(self.terms)

    def coeff(self, word: Sequence[int]) -> Scalar:
        return self.coeffs.get(tuple(word), self.field.zero)

    @property
    def words(self) -> List[Word]:
        return [word for word, _ in self.terms]

    @property
    def leading_word(self) -> Optional[Word]:
        return self.terms[0][0] if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "Tensor") -> None:
        if self.field is not other.field:
            raise MixedField(f"tensors over {self.field.value} and {other.field.value}")
        if self.degree != other.degree:
            raise MixedDegree(f"tensors of degree {self.degree} and {other.degree}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        acc = dict(self.coeffs)
        axpy(acc, self.field.one, other.coeffs)
        return Tensor.from_dict(self.field, self.degree, acc)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        acc = dict(self.coeffs)
        axpy(acc, self.field.neg_one(), other.coeffs)
        return Tensor.from_dict(self.field, self.degree, acc)

    def __neg__(self) -> "Tensor":
        return self.scale(self.field.neg_one())

    def scale(self, coeff: Scalar) -> "Tensor":
        return Tensor.from_dict(self.field, self.degree, scale(self.coeffs, coeff))

    def tensor(self, other: "Tensor") -> "Tensor":
        """Concatenation product self (x) other."""
        if self.field is not other.field:
            raise MixedField(f"tensors over {self.field.value} and {other.field.value}")
        acc: Dict[Word, Scalar] = {}
        for u, a in self.terms:
            for v, b in other.terms:
                add_term(acc, u + v, a * b)
        return Tensor.from_dict(self.field, self.degree + other.degree, acc)

    def pair(self, other: "Tensor") -> Scalar:
        """Untwisted pairing: sum over words of the coefficient products."""
        self._check(other)
        total = self.field.zero
        mine = self.coeffs
        for word, value in other.terms:
            if word in mine:
                total += mine[word] * value
        return total

    def max_letter(self) -> int:
        return max((max(w) for w in self.words if w), default=-1)


def tensor_from_rows(field: FieldDescriptor, degree: int,
                     row: Mapping[int, Scalar], words: Sequence[Word]) -> Tensor:
    return Tensor.from_dict(field, degree, {words[c]: v for c, v in row.items()})


# ============================================================================
# Subspaces
# ============================================================================

@dataclass(frozen=True)
class Subspace:
    """
    Subspace of V^{(x)k} in canonical reduced row-echelon form: pivots are
    the smallest word of each basis vector, carry coefficient 1, and do not
    occur in any other basis vector.
    """
    field: FieldDescriptor
    ngens: int
    degree: int
    basis: Tuple[Tensor, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> Tuple[Word, ...]:
        return tuple(b.leading_word for b in self.basis)

    def _check_vector(self, v: Tensor) -> None:
        if v.field is not self.field:
            raise MixedField(f"vector over {v.field.value}, subspace over {self.field.value}")
        if v.degree != self.degree:
            raise MixedDegree(f"vector of degree {v.degree}, subspace of degree {self.degree}")

    def reduce(self, v: Tensor) -> Tensor:
        """Remainder of v after eliminating every pivot word."""
        self._check_vector(v)
        acc = dict(v.coeffs)
        for b, pivot in zip(self.basis, self.pivots):
            value = acc.get(pivot)
            if value:
                axpy(acc, -value, b.coeffs)
        return Tensor.from_dict(self.field, self.degree, acc)

    def contains(self, v: Tensor) -> bool:
        return self.reduce(v).is_zero()

    def __contains__(self, v: Tensor) -> bool:
        return self.contains(v)

    def coordinates(self, v: Tensor) -> List[Scalar]:
        """Coordinates of v against the echelon basis."""
        if not self.contains(v):
            raise NotInSpan("vector is not in the subspace")
        return [v.coeff(pivot) for pivot in self.pivots]

    def combine(self, coords: Sequence[Scalar]) -> Tensor:
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        acc: Dict[Word, Scalar] = {}
        for b, c in zip(self.basis, coords):
            axpy(acc, c, b.coeffs)
        return Tensor.from_dict(self.field, self.degree, acc)

    def join(self, other: "Subspace") -> "Subspace":
        _check_compatible(self, other)
        return echelonize(self.basis + other.basis, self.ngens,
                          degree=self.degree, field=self.field)

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return all(other.contains(b) for b in self.basis)

    def complement_words(self) -> List[Word]:
        """Non-pivot words: the word-order canonical complement."""
        pivots = set(self.pivots)
        return [w for w in all_words(self.ngens, self.degree) if w not in pivots]


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.field is not b.field:
        raise MixedField(f"subspaces over {a.field.value} and {b.field.value}")
    if a.degree != b.degree:
        raise MixedDegree(f"subspaces of degree {a.degree} and {b.degree}")
    if a.ngens != b.ngens:
        raise DimensionMismatch(f"subspaces over {a.ngens} and {b.ngens} generators")


def echelonize(vectors: Sequence[Tensor], ngens: int, degree: Optional[int] = None,
               field: Optional[FieldDescriptor] = None) -> Subspace:
    """Unique reduced echelon basis of the span of the given tensors."""
    vectors = list(vectors)
    if vectors:
        field = field or vectors[0].field
        degree = vectors[0].degree if degree is None else degree
    if field is None or degree is None:
        raise InputError("echelonize of an empty list needs degree and field")
    for v in vectors:
        if v.field is not field:
            raise MixedField(f"vectors over {field.value} and {v.field.value}")
        if v.degree != degree:
            raise MixedDegree(f"vectors of degree {degree} and {v.degree}")
        if v.max_letter() >= ngens:
            raise DimensionMismatch(f"word letter out of range for {ngens} generators")

    words = sorted({w for v in vectors for w in v.words})
    column = {w: i for i, w in enumerate(words)}
    rows = [{column[w]: c for w, c in v.terms} for v in vectors]
    reduced, _ = rref_rows(rows, len(words), field)
    basis = tuple(tensor_from_rows(field, degree, row, words) for row in reduced)
    log.debug(f"echelonize: {len(vectors)} vectors in degree {degree} -> dim {len(basis)}")
    return Subspace(field, ngens, degree, basis)


def zero_subspace(field: FieldDescriptor, ngens: int, degree: int) -> Subspace:
    return Subspace(field, ngens, degree, ())


def full_subspace(field: FieldDescriptor, ngens: int, degree: int,
                  cap: Optional[int] = None) -> Subspace:
    check_word_budget(ngens, degree, cap)
    basis = tuple(Tensor.monomial(field, w) for w in all_words(ngens, degree))
    return Subspace(field, ngens, degree, basis)


def annihilator(s: Subspace, cap: Optional[int] = None) -> Subspace:
    """
    {f : f(v) = 0 for all v in s} under the untwisted pairing.

    The echelon basis is already reduced over the full word list, so the
    kernel is read off directly: one vector per non-pivot word. ``cap`` bounds
    the number of words (the global resource cap when None).
    """
    check_word_budget(s.ngens, s.degree, cap)
    one = s.field.one
    pivots = s.pivots
    vectors = []
    for free in s.complement_words():
        acc = {free: one}
        for b, pivot in zip(s.basis, pivots):
            value = b.coeffs.get(free)
            if value:
                acc[pivot] = -value
        vectors.append(Tensor.from_dict(s.field, s.degree, acc))
    return echelonize(vectors, s.ngens, degree=s.degree, field=s.field)


def intersect(a: Subspace, b: Subspace, cap: Optional[int] = None) -> Subspace:
    """a ∩ b, computed as the annihilator of ann(a) + ann(b)."""
    _check_compatible(a, b)
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.field, a.ngens, a.degree)
    return annihilator(annihilator(a, cap).join(annihilator(b, cap)), cap)


def solve_coordinates(vectors: Sequence[Tensor], target: Tensor) -> List[Scalar]:
    """Coordinates of target in an independent family of tensors."""
    field = target.field
    solution = solve_sparse([v.coeffs for v in vectors], target.coeffs, field)
    if solution is None:
        raise NotInSpan("tensor is not in the span of the given family")
    return solution


def solve_functional(vectors: Sequence[Tensor], values: Sequence[Scalar],
                     ngens: int, degree: int, field: FieldDescriptor,
                     cap: Optional[int] = None) -> Tensor:
    """
    The functional f on V^{(x)k} (as a tensor over dual words) with
    f(vectors[i]) = values[i]; the vectors must form a basis.
    """
    if len(vectors) != len(values):
        raise DimensionMismatch(f"{len(vectors)} vectors but {len(values)} values")
    check_word_budget(ngens, degree, cap)
    words = all_words(ngens, degree)
    if len(vectors) != len(words):
        raise DimensionMismatch(
            f"{len(vectors)} vectors do not form a basis of a {len(words)}-dimensional space")
    column = {w: i for i, w in enumerate(words)}
    n = len(words)
    rows = []
    for v, value in zip(vectors, values):
        row = {column[w]: c for w, c in v.terms}
        if value:
            row[n] = value
        rows.append(row)
    reduced, pivots = rref_rows(rows, n + 1, field)
    if n in pivots or len(pivots) != n:
        raise DimensionMismatch("the given vectors are not a basis")
    acc = {words[p]: row.get(n, field.zero) for row, p in zip(reduced, pivots)}
    return Tensor.from_dict(field, degree, acc)
