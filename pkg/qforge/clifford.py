"""
Clifford maps of a quadratic algebra E = T(V)/(R).

A linear map theta: R -> k is a Clifford map when (theta (x) 1 - 1 (x) theta)
vanishes on V (x) R  ∩  R (x) V. Maps are stored as values against the echelon
basis of R; the same data, extended by zero off the pivot words, is an element
of V* (x) V* whose class in E^!_2 is central exactly when theta is Clifford.
"""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Sequence, Tuple, Union

from .constants import ASSERTION_FLAGS
from .errors import (
    DimensionMismatch, InputError, MixedField, NotCentral, NotClifford, NotInSpan, ZeroElement,
)
from .exactlinear import (
    FieldDescriptor, Scalar, Subspace, Tensor, Word, echelonize, intersect,
    nullspace_rows, solve_coordinates,
)
from .models import CliffordCheck
from .quadalg import QuadraticPresentation, central_degree2, quadratic_dual

log = logging.getLogger(__name__)


# ============================================================================
# Overlaps
# ============================================================================

def _left_family(E: QuadraticPresentation) -> List[Tensor]:
    """x_a (x) r_i, indexed a * dim R + i."""
    return [Tensor.monomial(E.field, (a,)).tensor(r)
            for a in range(E.ngens) for r in E.relations.basis]


def _right_family(E: QuadraticPresentation) -> List[Tensor]:
    """r_i (x) x_a, indexed i * dim V + a."""
    return [r.tensor(Tensor.monomial(E.field, (a,)))
            for r in E.relations.basis for a in range(E.ngens)]


def overlap_space(E: QuadraticPresentation) -> Subspace:
    """V (x) R  ∩  R (x) V inside V^(x)3."""
    n = E.ngens
    left = echelonize(_left_family(E), n, degree=3, field=E.field)
    right = echelonize(_right_family(E), n, degree=3, field=E.field)
    overlap = intersect(left, right, cap=E.word_cap)
    log.debug(f"{E.name}: overlap dim {overlap.dim} (V(x)R {left.dim}, R(x)V {right.dim})")
    return overlap


def _overlap_decompositions(E: QuadraticPresentation):
    """
    For each overlap basis vector w: coordinates in the x_a (x) r_i family and
    in the r_i (x) x_a family.
    """
    return E.cached("overlap", lambda: _decompose_overlap(E))


def _decompose_overlap(E: QuadraticPresentation):
    overlap = overlap_space(E)
    left, right = _left_family(E), _right_family(E)
    decompositions = []
    for w in overlap.basis:
        decompositions.append((solve_coordinates(left, w), solve_coordinates(right, w)))
    return overlap, tuple(decompositions)


def _residual(E: QuadraticPresentation, left: Sequence[Scalar], right: Sequence[Scalar],
              values: Sequence[Scalar]) -> Tensor:
    """sum theta(r_s) v_s - sum theta(r'_t) v'_t in V."""
    m, n = E.relations.dim, E.ngens
    acc = {}
    for a in range(n):
        total = E.field.zero
        for i in range(m):
            total += left[a * m + i] * values[i] - right[i * n + a] * values[i]
        if total:
            acc[(a,)] = total
    return Tensor.from_dict(E.field, 1, acc)


def _coerce_values(E: QuadraticPresentation, values: Sequence) -> Tuple[Scalar, ...]:
    if len(values) != E.relations.dim:
        raise DimensionMismatch(f"expected {E.relations.dim} values (dim R), got {len(values)}")
    return tuple(E.field.convert(v) for v in values)


def clifford_condition(E: QuadraticPresentation, values: Sequence) -> CliffordCheck:
    """Evaluate theta (x) 1 - 1 (x) theta on every overlap basis vector."""
    theta = _coerce_values(E, values)
    overlap, decompositions = _overlap_decompositions(E)
    violations = []
    for j, (left, right) in enumerate(decompositions):
        residual = _residual(E, left, right, theta)
        if residual:
            violations.append((j, residual))
    return CliffordCheck(not violations, overlap.dim, tuple(violations))


def clifford_map_space(E: QuadraticPresentation) -> Subspace:
    """All Clifford maps, as functionals on V (x) V supported on pivot words."""
    return E.cached("clifford_maps", lambda: _solve_clifford_maps(E))


def _solve_clifford_maps(E: QuadraticPresentation) -> Subspace:
    m, n = E.relations.dim, E.ngens
    _, decompositions = _overlap_decompositions(E)
    rows = []
    for left, right in decompositions:
        for a in range(n):
            row = {}
            for i in range(m):
                value = left[a * m + i] - right[i * n + a]
                if value:
                    row[i] = value
            if row:
                rows.append(row)
    solutions = nullspace_rows(rows, m, E.field)
    pivots = E.relations.pivots
    functionals = [Tensor.from_dict(E.field, 2, {pivots[i]: v for i, v in sol.items()})
                   for sol in solutions]
    space = echelonize(functionals, n, degree=2, field=E.field)
    log.debug(f"{E.name}: Clifford maps form a space of dim {space.dim} (dim R = {m})")
    return space


# ============================================================================
# Clifford maps
# ============================================================================

@dataclass(frozen=True)
class CliffordMap:
    """theta on R, as values against the echelon basis of R."""
    presentation: QuadraticPresentation
    values: Tuple[Scalar, ...]

    def __post_init__(self):
        values = _coerce_values(self.presentation, self.values)
        object.__setattr__(self, 'values', values)
        check = clifford_condition(self.presentation, values)
        if not check.holds:
            raise NotClifford(f"theta violates the Clifford condition on {len(check.violations)} "
                              f"of {check.overlap_dim} overlap vectors")

    @classmethod
    def from_relation_values(cls, E: QuadraticPresentation, relations: Sequence[Tensor],
                             values: Sequence) -> "CliffordMap":
        """
        theta from its values on a listed spanning set of R. The listed
        relations must be independent.
        """
        return cls(E, echelon_values(E, relations, values))

    @classmethod
    def zero(cls, E: QuadraticPresentation) -> "CliffordMap":
        return cls(E, tuple(E.field.zero for _ in range(E.relations.dim)))

    @property
    def field(self) -> FieldDescriptor:
        return self.presentation.field

    def is_zero(self) -> bool:
        return not any(self.values)

    def functional(self) -> Tensor:
        """sum values_i * (dual of pivot word i)."""
        pivots = self.presentation.relations.pivots
        return Tensor.from_dict(self.field, 2, dict(zip(pivots, self.values)))

    def __call__(self, r: Tensor) -> Scalar:
        coords = self.presentation.relations.coordinates(r)
        return sum((c * v for c, v in zip(coords, self.values)), self.field.zero)

    def relation_values(self) -> List[Tuple[Tensor, Scalar]]:
        return list(zip(self.presentation.relations.basis, self.values))


def echelon_values(E: QuadraticPresentation, relations: Sequence[Tensor],
                   values: Sequence) -> Tuple[Scalar, ...]:
    """Values given on an independent list spanning R, moved to the echelon basis."""
    if len(relations) != len(values):
        raise DimensionMismatch(f"{len(relations)} relations but {len(values)} values")
    if len(relations) != E.relations.dim:
        raise DimensionMismatch(f"the {len(relations)} listed relations are not independent "
                                f"(dim R = {E.relations.dim})")
    converted = [E.field.convert(v) for v in values]
    echelon = []
    for b in E.relations.basis:
        try:
            coords = solve_coordinates(relations, b)
        except NotInSpan:
            raise DimensionMismatch("listed relations do not span R")
        echelon.append(sum((c * v for c, v in zip(coords, converted)), E.field.zero))
    return tuple(echelon)


ThetaLike = Union[CliffordMap, Sequence]


def as_clifford_map(E: QuadraticPresentation, theta: ThetaLike) -> CliffordMap:
    """Accept a CliffordMap on E or raw values against the echelon basis of R."""
    if isinstance(theta, CliffordMap):
        if theta.presentation != E:
            raise InputError("theta is defined on a different presentation")
        return theta
    return CliffordMap(E, tuple(theta))


def clifford_map_basis(E: QuadraticPresentation) -> List[CliffordMap]:
    pivots = E.relations.pivots
    return [CliffordMap(E, tuple(f.coeff(p) for p in pivots))
            for f in clifford_map_space(E).basis]


# ============================================================================
# Hypersurfaces and theta_z
# ============================================================================

@dataclass(frozen=True)
class HypersurfaceInput:
    """Ambient S with a nonzero central degree-2 element z (stored in normal form)."""
    ambient: QuadraticPresentation
    z: Tensor
    assertions: FrozenSet[str] = field(default_factory=frozenset)
    name: str = "z"

    def __post_init__(self):
        S = self.ambient
        if self.z.field is not S.field:
            raise MixedField(f"z over {self.z.field.value}, S over {S.field.value}")
        if self.z.degree != 2:
            raise InputError(f"z must have degree 2, got {self.z.degree}")
        unknown = set(self.assertions) - set(ASSERTION_FLAGS)
        if unknown:
            raise InputError(f"unknown assertion flags: {', '.join(sorted(unknown))}")
        z = S.normal_form(self.z)
        if z.is_zero():
            raise ZeroElement(f"{self.name} is zero in {S.name}")
        if not central_degree2(S).contains(z):
            raise NotCentral(f"{self.name} is not central in {S.name}")
        object.__setattr__(self, 'z', z)
        object.__setattr__(self, 'assertions', frozenset(self.assertions))


def theta_from_lift(S: QuadraticPresentation, r0: Tensor) -> CliffordMap:
    """theta(alpha) = alpha(r0) on the echelon basis of R^perp."""
    E = quadratic_dual(S)
    values = tuple(alpha.pair(r0) for alpha in E.relations.basis)
    return CliffordMap(E, values)


def theta_from_central(H: HypersurfaceInput) -> CliffordMap:
    """theta_z on E = S^!, using the normal-form lift of z."""
    theta = theta_from_lift(H.ambient, H.z)
    log.debug(f"theta_{H.name} = {theta.values}")
    return theta


def center_correspondence_check(E: QuadraticPresentation) -> bool:
    """
    Clifford maps of E, viewed in E^!_2, are exactly the degree-2 center of E^!.
    """
    dual = quadratic_dual(E)
    maps = clifford_map_space(E)
    images = [dual.normal_form(f) for f in maps.basis]
    image_space = echelonize(images, E.ngens, degree=2, field=E.field)
    center = central_degree2(dual)
    holds = (image_space.dim == maps.dim
             and image_space.is_subspace_of(center)
             and center.is_subspace_of(image_space))
    log.debug(f"{E.name}: correspondence {'holds' if holds else 'fails'} "
              f"(maps {maps.dim}, center {center.dim})")
    return holds


# ============================================================================
# Quadratic forms
# ============================================================================

def exterior_presentation(field: FieldDescriptor, names: Sequence[str],
                          name: str = "Lambda") -> QuadraticPresentation:
    """Exterior algebra: x_i x_i and x_i x_j + x_j x_i (i < j)."""
    n = len(names)
    relations = _quadratic_form_relations(field, n)
    return QuadraticPresentation.create(field, names, [r for r, _ in relations], name=name)


def _quadratic_form_relations(field: FieldDescriptor, n: int) -> List[Tuple[Tensor, Word]]:
    one = field.one
    out = []
    for i in range(n):
        out.append((Tensor.monomial(field, (i, i)), (i, i)))
        for j in range(i + 1, n):
            out.append((Tensor.from_dict(field, 2, {(i, j): one, (j, i): one}), (i, j)))
    return out


def theta_from_quadratic_form(E: QuadraticPresentation, gram: Sequence[Sequence]) -> CliffordMap:
    """
    theta(x_i x_i) = q_ii and theta(x_i x_j + x_j x_i) = 2 q_ij on an exterior
    presentation, so that E(theta) is the Clifford algebra of q.
    """
    n = E.ngens
    if len(gram) != n or any(len(row) != n for row in gram):
        raise DimensionMismatch(f"Gram matrix must be {n} x {n}")
    q = [[E.field.convert(v) for v in row] for row in gram]
    for i in range(n):
        for j in range(n):
            if q[i][j] != q[j][i]:
                raise InputError("Gram matrix must be symmetric")
    two = E.field.convert(2)
    relations, values = [], []
    for r, (i, j) in _quadratic_form_relations(E.field, n):
        relations.append(r)
        values.append(q[i][i] if i == j else two * q[i][j])
    return CliffordMap.from_relation_values(E, relations, values)
