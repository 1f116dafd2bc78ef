"""
Trivial extensions, the group algebra of Z2, twisted tensor products and the
certificates built from them: the graded matrix isomorphism
kG (x) kG -> M_2(k), the identification of the deformed trivial extension with
E(theta) (x) kG, double branched covers on the dual side, and a full corner
idempotent witnessing periodicity after two extensions.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra import (
    FiniteGradedAlgebra, algebra_from_products, apply_map, check_algebra_map, map_rank, preimage,
)
from .clifford import (
    CliffordMap, HypersurfaceInput, ThetaLike, as_clifford_map, theta_from_central,
)
from .constants import FRESH_NAME_LIMIT, FRESH_PREFIX
from .deform import build_deformation
from .errors import (
    CertificateFailure, FieldLacksI, InputError, MixedField, NameClash, RelationNotKilled,
)
from .exactlinear import FieldDescriptor, Scalar, Tensor, VectorSpan, add_term, axpy, vectors_equal
from .models import (
    CornerCertificate, CoverReport, FullnessCertificate, IdempotentCertificate, IsoCertificate,
    KnorrerBundle, TransferReport, sparse,
)
from .quadalg import QuadraticPresentation
from .structure import graded_semisimple

log = logging.getLogger(__name__)

Element = Dict[int, Scalar]


# ============================================================================
# Trivial extensions
# ============================================================================

def fresh_name(existing: Sequence[str]) -> str:
    taken = set(existing)
    for k in range(1, FRESH_NAME_LIMIT + 1):
        candidate = f"{FRESH_PREFIX}{k}"
        if candidate not in taken:
            return candidate
    raise NameClash("no fresh generator name available")


def _mixed_relations(field: FieldDescriptor, old: int, new: int, sign: int) -> List[Tensor]:
    """x (x) v + sign * v (x) x for each old generator x."""
    one = field.one
    other = one if sign > 0 else -one
    return [Tensor.from_dict(field, 2, {(x, new): one, (new, x): other}) for x in range(old)]


def trivial_extension(E: QuadraticPresentation) -> QuadraticPresentation:
    """E with a new generator z and relations x z + z x, z z."""
    name = fresh_name(E.generators)
    n = E.ngens
    relations = (list(E.relations.basis)
                 + _mixed_relations(E.field, n, n, +1)
                 + [Tensor.monomial(E.field, (n, n))])
    return E.derived(E.generators + (name,), relations, f"{E.name}_ext")


def extend_clifford_map(E: QuadraticPresentation, theta: ThetaLike) -> CliffordMap:
    """theta on R, 0 on the mixed relations, 1 on z z."""
    theta = as_clifford_map(E, theta)
    extended = trivial_extension(E)
    n = E.ngens
    relations = (list(E.relations.basis)
                 + _mixed_relations(E.field, n, n, +1)
                 + [Tensor.monomial(E.field, (n, n))])
    values = list(theta.values) + [E.field.zero] * n + [E.field.one]
    return CliffordMap.from_relation_values(extended, relations, values)


# ============================================================================
# Small graded algebras
# ============================================================================

def group_algebra_Z2(field: FieldDescriptor) -> FiniteGradedAlgebra:
    """k[Z2] with the generator alpha odd."""
    one = field.one
    products = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (1, 1): {0: one}}
    return algebra_from_products(field, ("1", "alpha"), (0, 1), products, {0: one}, name="kG")


# Matrix units E11, E12, E21, E22.
M2_LABELS = ("E11", "E12", "E21", "E22")


def matrix_algebra_M2(field: FieldDescriptor) -> FiniteGradedAlgebra:
    """M_2(k) with the diagonal even and the antidiagonal odd."""
    one = field.one
    products = {}
    for (a, b), (c, d) in product(product((0, 1), repeat=2), repeat=2):
        if b == c:
            products[(2 * a + b, 2 * c + d)] = {2 * a + d: one}
    return algebra_from_products(field, M2_LABELS, (0, 1, 1, 0), products,
                                 {0: one, 3: one}, name="M2")


@dataclass(frozen=True)
class TwistedTensorAlgebra:
    """left (x) right with (a1 (x) b1)(a2 (x) b2) = (-1)^{|b1||a2|} a1 a2 (x) b1 b2."""
    left: FiniteGradedAlgebra
    right: FiniteGradedAlgebra
    algebra: FiniteGradedAlgebra

    def index(self, i: int, j: int) -> int:
        return i * self.right.dim + j

    def pure(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Element:
        acc: Element = {}
        for i, a in u.items():
            for j, b in v.items():
                add_term(acc, self.index(i, j), a * b)
        return acc


def twisted_tensor(A: FiniteGradedAlgebra, B: FiniteGradedAlgebra,
                   verify: bool = True) -> TwistedTensorAlgebra:
    if A.field is not B.field:
        raise MixedField(f"twisted tensor of algebras over {A.field.value} and {B.field.value}")
    field = A.field
    dB = B.dim
    minus = field.neg_one()
    products = {}
    for i1, j1, i2, j2 in product(range(A.dim), range(dB), range(A.dim), range(dB)):
        sign = minus if B.parities[j1] and A.parities[i2] else field.one
        vec: Element = {}
        for k, a in A.table[i1][i2]:
            for l, b in B.table[j1][j2]:
                add_term(vec, k * dB + l, sign * a * b)
        if vec:
            products[(i1 * dB + j1, i2 * dB + j2)] = vec
    labels = [f"{la} (x) {lb}" for la in A.labels for lb in B.labels]
    parities = [(pa + pb) % 2 for pa in A.parities for pb in B.parities]
    unit: Element = {}
    for i, a in A.unit:
        for j, b in B.unit:
            add_term(unit, i * dB + j, a * b)
    algebra = algebra_from_products(field, labels, parities, products, unit,
                                    name=f"{A.name} (x) {B.name}")
    if verify and not algebra.check_associativity():
        raise CertificateFailure(f"twisted tensor {algebra.name} is not associative")
    return TwistedTensorAlgebra(A, B, algebra)


def _upsilon_images(field: FieldDescriptor) -> List[Element]:
    """Images of 1(x)1, 1(x)alpha, alpha(x)1, alpha(x)alpha in M2."""
    one, i = field.one, field.i()
    return [
        {0: one, 3: one},
        {1: one, 2: one},
        {1: i, 2: -i},
        {0: i, 3: -i},
    ]


def upsilon_iso_check(field: FieldDescriptor) -> IsoCertificate:
    """kG (x) kG -> M_2(k) over Q(i)."""
    if not field.has_i:
        raise FieldLacksI("the matrix isomorphism needs a square root of -1; use field Qi")
    G = group_algebra_Z2(field)
    GG = twisted_tensor(G, G)
    return check_algebra_map(GG.algebra, matrix_algebra_M2(field), _upsilon_images(field))


# ============================================================================
# Deformed trivial extension vs E(theta) (x) kG
# ============================================================================

@dataclass(frozen=True)
class _TildeData:
    extended_theta: CliffordMap
    source: FiniteGradedAlgebra          # extension deformed by the extended map
    target: TwistedTensorAlgebra         # E(theta) (x) kG
    images: Tuple[Element, ...]


def _tilde_data(E: QuadraticPresentation, theta: CliffordMap) -> _TildeData:
    """x -> x (x) 1 and z -> 1 (x) alpha, checked on the deformed relations."""
    extended = extend_clifford_map(E, theta)
    Et = extended.presentation
    source = build_deformation(Et, extended)
    base = build_deformation(E, theta)
    G = group_algebra_Z2(E.field)
    target = twisted_tensor(base, G)
    T = target.algebra

    generators = [target.pure(base.word_element((a,)), G.one()) for a in range(E.ngens)]
    generators.append(target.pure(base.one(), G.basis_element(1)))
    for r, t in zip(Et.relations.basis, extended.values):
        value = {k: -t * c for k, c in T.one().items()}
        for (a, b), c in r.terms:
            axpy(value, c, T.multiply(generators[a], generators[b]))
        if {k: v for k, v in value.items() if v}:
            raise RelationNotKilled(f"a deformed relation of {Et.name} does not vanish in {T.name}")

    images = []
    for word in source.words:
        element = T.one()
        for letter in word:
            element = T.multiply(element, generators[letter])
        images.append(element)
    return _TildeData(extended, source, target, tuple(images))


def tilde_iso_check(E: QuadraticPresentation, theta: ThetaLike) -> IsoCertificate:
    data = _tilde_data(E, as_clifford_map(E, theta))
    return check_algebra_map(data.source, data.target.algebra, list(data.images))


# ============================================================================
# Double branched covers
# ============================================================================

def double_branched_cover_dual(H: HypersurfaceInput, times: int = 1) -> HypersurfaceInput:
    """S[v1(, v2)] with commuting new generators and z + v1^2 (+ v2^2)."""
    if times not in (1, 2):
        raise InputError("times must be 1 or 2")
    S = H.ambient
    generators = list(S.generators)
    relations = list(S.relations.basis)
    z = H.z
    for _ in range(times):
        v = len(generators)
        relations.extend(_mixed_relations(S.field, v, v, -1))
        generators.append(fresh_name(generators))
        z = z + Tensor.monomial(S.field, (v, v))
    cover = S.derived(generators, relations, f"{S.name}_cover{times}")
    return HypersurfaceInput(cover, z, H.assertions, name=f"{H.name}_cover{times}")


def double_cover_agreement(H: HypersurfaceInput, times: int = 1) -> CoverReport:
    """theta of the cover against the extended map, after aligning bases."""
    cover = double_branched_cover_dual(H, times)
    theta_cover = theta_from_central(cover)
    extended = theta_from_central(H)
    for _ in range(times):
        extended = extend_clifford_map(extended.presentation, extended)
    relations_agree = theta_cover.presentation.relations == extended.presentation.relations
    values_agree = relations_agree and theta_cover.values == extended.values
    return CoverReport(
        times=times,
        generators=cover.ambient.generators,
        central=cover.z,
        theta_cover=theta_cover.values,
        theta_extended=extended.values,
        relations_agree=relations_agree,
        values_agree=values_agree,
    )


# ============================================================================
# Periodicity witness
# ============================================================================

def _compose(first: Sequence[Mapping[int, Scalar]],
             second: Sequence[Mapping[int, Scalar]]) -> List[Element]:
    """second after first, both given by basis images."""
    return [apply_map(second, img) for img in first]


def knorrer_corner_witness(E: QuadraticPresentation, theta: ThetaLike,
                           strict: bool = True) -> KnorrerBundle:
    """
    chi: twice-extended deformation -> E(theta) (x) M_2, the idempotent
    e = chi^-1(1 (x) E11), the corner isomorphism E(theta) -> e X e and
    fullness of e.

    Args:
        E: Quadratic algebra over Qi
        theta: Clifford map on E
        strict: Raise CertificateFailure when any certificate fails

    Returns:
        KnorrerBundle with one certificate per step
    """
    field = E.field
    if not field.has_i:
        raise FieldLacksI("the periodicity witness needs field Qi")
    theta = as_clifford_map(E, theta)
    base = build_deformation(E, theta)
    once = _tilde_data(E, theta)
    twice = _tilde_data(once.extended_theta.presentation, once.extended_theta)
    X = twice.source
    G = group_algebra_Z2(field)
    nested = twisted_tensor(once.target.algebra, G)
    M2 = matrix_algebra_M2(field)
    target = twisted_tensor(base, M2)

    # chi_once (x) id : once.source (x) kG -> (E(theta) (x) kG) (x) kG
    step1 = []
    for idx in range(twice.target.algebra.dim):
        i, g = divmod(idx, 2)
        step1.append({k * 2 + g: c for k, c in once.images[i].items()})
    # (E(theta) (x) kG) (x) kG = E(theta) (x) (kG (x) kG) -> E(theta) (x) M2
    upsilon = _upsilon_images(field)
    step2 = []
    for idx in range(nested.algebra.dim):
        rest, g2 = divmod(idx, 2)
        a, g1 = divmod(rest, 2)
        step2.append({a * 4 + m: c for m, c in upsilon[g1 * 2 + g2].items()})
    chi_images = _compose(_compose(twice.images, step1), step2)
    chi = check_algebra_map(X, target.algebra, chi_images)

    E11 = M2.basis_element(0)
    e = preimage(chi_images, target.pure(base.one(), E11), field) or {}
    idempotent = IdempotentCertificate(
        element=sparse(e),
        even=X.parity_of(e) == 0,
        idempotent=bool(e) and vectors_equal(X.multiply(e, e), e),
        proper=bool(e) and not vectors_equal(e, X.one()),
    )

    corner_images = []
    for i in range(base.dim):
        corner_images.append(preimage(chi_images, target.pure(base.basis_element(i), E11), field))
    found = all(img is not None for img in corner_images)
    corner_images = [img or {} for img in corner_images]
    multiplicative = found and all(
        vectors_equal(apply_map(corner_images, base.product_of_basis(i, j)),
                      X.multiply(corner_images[i], corner_images[j]))
        for i, j in product(range(base.dim), repeat=2))
    structure = ()
    if found:
        structure = tuple(
            tuple(sparse(preimage(corner_images, X.multiply(corner_images[i], corner_images[j]),
                                  field) or {})
                  for j in range(base.dim))
            for i in range(base.dim))
    corner_span = VectorSpan([X.multiply(X.multiply(e, X.basis_element(k)), e)
                              for k in range(X.dim)], X.dim, field)
    corner = CornerCertificate(
        images=tuple(sparse(img) for img in corner_images),
        unital=found and vectors_equal(apply_map(corner_images, base.one()), e),
        multiplicative=multiplicative,
        injective=found and map_rank(corner_images, X.dim, field) == base.dim,
        onto_corner=found and corner_span.dim == base.dim
        and all(corner_span.contains(img) for img in corner_images),
        corner_dim=corner_span.dim,
        structure=structure,
    )

    ideal = VectorSpan([X.multiply(X.multiply(X.basis_element(i), e), X.basis_element(j))
                        for i in range(X.dim) for j in range(X.dim)], X.dim, field)
    fullness = FullnessCertificate(ideal.dim, X.dim)

    bundle = KnorrerBundle(base.dim, X.dim, chi, idempotent, corner, fullness)
    log.debug(f"{E.name}: periodicity witness {'passes' if bundle.passed else 'fails'}")
    if strict and not bundle.passed:
        raise CertificateFailure(f"periodicity witness failed for {E.name}")
    return bundle


def knorrer_semisimple_transfer(E: QuadraticPresentation, theta: ThetaLike) -> TransferReport:
    """Semisimplicity of E(theta) and of the deformed trivial extension agree."""
    theta = as_clifford_map(E, theta)
    if theta.is_zero():
        return TransferReport(
            status="outside-hypothesis",
            reason="theta = 0 comes from z = 0, which is not regular; "
                   "the extended map is nonzero",
        )
    base = graded_semisimple(build_deformation(E, theta))
    extended_theta = extend_clifford_map(E, theta)
    extended = graded_semisimple(build_deformation(extended_theta.presentation, extended_theta))
    return TransferReport(
        status="pass" if base == extended else "fail",
        base_semisimple=base,
        extended_semisimple=extended,
    )
