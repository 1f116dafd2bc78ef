"""
Structure of Clifford deformations: Jacobson radical, graded semisimplicity,
the isolated-singularity verdict for quadric hypersurfaces, the even part
E(theta)_0, the dual-side data of a hypersurface, and the localization corner
B[z^-1]_0 realized on a stabilized slice of B.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .algebra import FiniteGradedAlgebra, apply_map, map_rank
from .clifford import CliffordMap, HypersurfaceInput, theta_from_central
from .constants import KOSZUL_CHECK_DEGREE, STABILIZATION_ATTEMPTS
from .deform import build_deformation
from .errors import (
    InhomogeneousRadical, NotCentral, NotClifford, NotRegular, NotStabilized,
    WNotCentral, ZeroElement,
)
from .exactlinear import (
    Scalar, Subspace, Tensor, VectorSpan, echelonize, nullspace_rows, solve_coordinates,
    solve_functional, vectors_equal,
)
from .models import (
    HypothesisLedger, LocalizationReport, RadicalReport, SingularityVerdict, sparse,
)
from .quadalg import (
    QuadraticPresentation, central_degree2, hypersurface_quotient,
    koszul_numeric_check, multiply, quadratic_dual, regular_upto, top_degree,
)

log = logging.getLogger(__name__)

Element = Dict[int, Scalar]


# ============================================================================
# Radical
# ============================================================================

def _trace_form_kernel(A: FiniteGradedAlgebra) -> List[Element]:
    """{a : tr(L_a L_b) = 0 for every basis b}; the radical in characteristic 0."""
    d = A.dim
    zero = A.field.zero
    # t_k = tr(L_{b_k})
    traces = []
    for k in range(d):
        total = zero
        for j in range(d):
            for index, c in A.table[k][j]:
                if index == j:
                    total += c
        traces.append(total)
    rows = []
    for i in range(d):
        row = {}
        for j in range(d):
            value = zero
            for k, c in A.table[i][j]:
                value += c * traces[k]
            if value:
                row[j] = value
        rows.append(row)
    return nullspace_rows(rows, d, A.field)


def _is_ideal(A: FiniteGradedAlgebra, span: VectorSpan, basis: Sequence[Element]) -> bool:
    for j in basis:
        for i in range(A.dim):
            b = A.basis_element(i)
            if not (span.contains(A.multiply(b, j)) and span.contains(A.multiply(j, b))):
                return False
    return True


def _nilpotency_index(A: FiniteGradedAlgebra, basis: Sequence[Element]) -> Optional[int]:
    """Smallest m with J^m = 0, or None if the powers stop shrinking."""
    if not basis:
        return 0
    power = VectorSpan(basis, A.dim, A.field)
    vectors = list(basis)
    m = 1
    while power.dim > 0:
        products = [A.multiply(j, p) for j in basis for p in vectors]
        nxt = VectorSpan(products, A.dim, A.field)
        if nxt.dim >= power.dim:
            return None
        vectors = [dict(row) for row in nxt.rows]
        power = nxt
        m += 1
    return m


def _is_homogeneous(A: FiniteGradedAlgebra, span: VectorSpan, basis: Sequence[Element]) -> bool:
    for j in basis:
        even = {k: v for k, v in j.items() if A.parities[k] == 0}
        odd = {k: v for k, v in j.items() if A.parities[k] == 1}
        if not (span.contains(even) and span.contains(odd)):
            return False
    return True


def jacobson_radical(A: FiniteGradedAlgebra) -> RadicalReport:
    basis = _trace_form_kernel(A)
    span = VectorSpan(basis, A.dim, A.field)
    index = _nilpotency_index(A, basis)
    report = RadicalReport(
        basis=tuple(sparse(b) for b in basis),
        dim=len(basis),
        is_ideal=_is_ideal(A, span, basis),
        nilpotent=index is not None,
        nilpotency_index=index,
        homogeneous=_is_homogeneous(A, span, basis),
    )
    if not (report.is_ideal and report.nilpotent):
        log.warning(f"{A.name}: trace-form radical is not a nilpotent ideal")
    log.debug(f"{A.name}: radical dim {report.dim}")
    return report


def graded_semisimple(A: FiniteGradedAlgebra) -> bool:
    report = jacobson_radical(A)
    if not report.homogeneous:
        raise InhomogeneousRadical(f"radical of {A.name} is not Z2-homogeneous")
    return report.semisimple


def even_part_algebra(A: FiniteGradedAlgebra) -> FiniteGradedAlgebra:
    """E(theta)_0 as a trivially graded algebra."""
    even = A.even_indices()
    return A.restrict(even, name=f"{A.name}_0", parities=[0] * len(even))


# ============================================================================
# Verdict
# ============================================================================

def _conclusion(semisimple: bool, ledger: HypothesisLedger) -> str:
    if ledger.verified_ok and ledger.asserted_ok:
        return "isolated singularity" if semisimple else "not an isolated singularity"
    verdict = "an isolated singularity" if semisimple else "not an isolated singularity"
    return f"conditional: {verdict} provided that {'; '.join(ledger.open_items())}"


def singularity_verdict(H: HypersurfaceInput, regularity_bound: Optional[int] = None,
                        koszul_degree: int = KOSZUL_CHECK_DEGREE) -> SingularityVerdict:
    """
    A = S/(z) is an isolated singularity iff E(theta_z) is graded semisimple.

    The answer is unconditional only when the computed checks pass and the
    asserted hypotheses are present; otherwise the conclusion names what is
    still open.

    Args:
        H: Ambient S with a verified nonzero central degree-2 element z
        regularity_bound: Highest source degree for the regularity check
            (2n + 2 for top degree n of S^! when None)
        koszul_degree: Degree bound for the numerical Koszul check

    Returns:
        SingularityVerdict carrying the radical, theta_z and the ledger
    """
    theta = theta_from_central(H)
    E = theta.presentation
    algebra = build_deformation(E, theta)
    radical = jacobson_radical(algebra)
    if not radical.homogeneous:
        raise InhomogeneousRadical(f"radical of {algebra.name} is not Z2-homogeneous")

    bound = regularity_bound if regularity_bound is not None else 2 * top_degree(E) + 2
    ledger = HypothesisLedger(
        centrality_verified=True,
        koszul=koszul_numeric_check(H.ambient, koszul_degree),
        regularity=regular_upto(H.ambient, H.z, bound),
        koszul_asserted="koszul" in H.assertions,
        as_regular_asserted="as-regular" in H.assertions,
        gldim_asserted="gldim>=2" in H.assertions,
    )
    verdict = SingularityVerdict(
        semisimple=radical.semisimple,
        radical_dim=radical.dim,
        deformation_dim=algebra.dim,
        theta=theta.values,
        ledger=ledger,
        conclusion=_conclusion(radical.semisimple, ledger),
    )
    log.info(f"{H.name}: {verdict.conclusion}")
    return verdict


# ============================================================================
# Dual side of a hypersurface
# ============================================================================

@dataclass(frozen=True)
class HypersurfaceDualData:
    """A = S/(z), B = A^!, w in B_2 and E = S^! = B/(w)."""
    hypersurface: HypersurfaceInput
    quotient: QuadraticPresentation      # A
    dual: QuadraticPresentation          # B = A^!
    r0_star: Tensor
    w: Tensor                            # class of r0_star in B_2
    ambient_dual: QuadraticPresentation  # E = S^!
    theta: CliffordMap


def _span(S: QuadraticPresentation, vectors: Sequence[Tensor]) -> Subspace:
    return echelonize(list(vectors), S.ngens, degree=2, field=S.field)


def dual_hypersurface_functional(S: QuadraticPresentation, r0: Tensor,
                                 complement: Optional[Sequence[Tensor]] = None) -> Tensor:
    """
    r0* on V (x) V: 1 on r0, 0 on R and on a complement of R + k r0
    (by default the non-pivot words).
    """
    if complement is None:
        extended = S.relations.join(_span(S, [r0]))
        complement = [Tensor.monomial(S.field, w) for w in extended.complement_words()]
    vectors = [r0] + list(S.relations.basis) + list(complement)
    values = [S.field.one] + [S.field.zero] * (len(vectors) - 1)
    return solve_functional(vectors, values, S.ngens, 2, S.field, cap=S.word_cap)


def hypersurface_dual_data(H: HypersurfaceInput,
                           complement: Optional[Sequence[Tensor]] = None) -> HypersurfaceDualData:
    S = H.ambient
    quotient = hypersurface_quotient(S, H.z, name=f"{S.name}_{H.name}")
    dual = quadratic_dual(quotient)
    r0_star = dual_hypersurface_functional(S, H.z, complement)
    w = dual.normal_form(r0_star)
    if w.is_zero():
        raise ZeroElement(f"w vanishes in {dual.name}")
    if not central_degree2(dual).contains(w):
        raise WNotCentral(f"w is not central in {dual.name}")

    # B/(w) and S^! share generators; equal relation spaces make them equal.
    ambient_dual = quadratic_dual(S)
    if dual.relations.join(_span(S, [r0_star])) != ambient_dual.relations:
        raise WNotCentral(f"{dual.name}/(w) does not recover {ambient_dual.name}")
    log.debug(f"{dual.name}: w = {w.terms}")
    return HypersurfaceDualData(H, quotient, dual, r0_star, w, ambient_dual,
                                theta_from_central(H))


# ============================================================================
# Localization corner
# ============================================================================

def _power(B: QuadraticPresentation, z: Tensor, m: int) -> Tensor:
    result = Tensor.monomial(B.field, ())
    for _ in range(m):
        result = multiply(B, result, z)
    return result


def _z_bijective(B: QuadraticPresentation, z: Tensor, k: int) -> bool:
    source, target = B.slice(k), B.slice(k + 2)
    if source.dim != target.dim:
        return False
    rows = []
    for word in source.basis:
        product = multiply(B, z, Tensor.monomial(B.field, word))
        rows.append({target.index[w]: v for w, v in product.terms})
    return VectorSpan(rows, target.dim, B.field).dim == source.dim


def induced_theta(B: QuadraticPresentation, z: Tensor) -> CliffordMap:
    """On E = B/(z): z -> 1 and R_B -> 0."""
    E = hypersurface_quotient(B, z, name=f"{B.name}/(z)")
    relations = list(B.relations.basis) + [z]
    values = [B.field.zero] * B.relations.dim + [B.field.one]
    return CliffordMap.from_relation_values(E, relations, values)


def localization_corner_report(B: QuadraticPresentation, z: Tensor,
                               theta: Optional[CliffordMap] = None) -> LocalizationReport:
    """
    Realize B[z^-1]_0 on B_{2m} (z acting bijectively from 2m on) and compare
    it with E(theta)_0 through the map b z^-m -> b evaluated in E(theta).
    """
    z = B.normal_form(z)
    if z.is_zero():
        raise ZeroElement(f"z is zero in {B.name}")
    if not central_degree2(B).contains(z):
        raise NotCentral(f"z is not central in {B.name}")
    induced = induced_theta(B, z)
    if theta is not None:
        if (theta.presentation.relations != induced.presentation.relations
                or theta.values != induced.values):
            raise NotClifford("supplied theta is not the map induced by z")
    E = induced.presentation
    algebra = build_deformation(E, induced)
    even = even_part_algebra(algebra)
    position = {old: new for new, old in enumerate(algebra.even_indices())}
    n = top_degree(E)

    m = max(1, (n + 2) // 2)
    attempts = 0
    while True:
        attempts += 1
        regularity = regular_upto(B, z, 4 * m - 2)
        if not regularity.regular:
            raise NotRegular(f"z is not regular in degree {regularity.first_failure}")
        if all(_z_bijective(B, z, 2 * j) for j in range(m, 2 * m)):
            break
        if attempts >= STABILIZATION_ATTEMPTS:
            raise NotStabilized(f"z-multiplication does not stabilize by degree {2 * m}")
        m *= 2
    log.debug(f"{B.name}: localization stabilized at m = {m}")

    slice_2m = B.slice(2 * m)
    words = slice_2m.basis
    zm = _power(B, z, m)

    def realize(coords: Dict[int, Scalar]) -> Dict[int, Scalar]:
        acc: Dict[int, Scalar] = {}
        for i, c in coords.items():
            image = algebra.word_element(words[i])
            for k, v in image.items():
                acc[position[k]] = acc.get(position[k], B.field.zero) + c * v
        return {k: v for k, v in acc.items() if v}

    images = [realize({i: B.field.one}) for i in range(len(words))]
    unit_coords = {i: c for i, c in enumerate(
        solve_coordinates([Tensor.monomial(B.field, w) for w in words], zm)) if c}
    unital = vectors_equal(apply_map(images, unit_coords), even.one())
    bijective = (len(words) == even.dim and map_rank(images, even.dim, B.field) == even.dim)

    shifted = [multiply(B, zm, Tensor.monomial(B.field, w)) for w in words]
    multiplicative = True
    for i, a in enumerate(words):
        for j, b in enumerate(words):
            ab = multiply(B, Tensor.monomial(B.field, a), Tensor.monomial(B.field, b))
            c = {k: v for k, v in enumerate(solve_coordinates(shifted, ab)) if v}
            if not vectors_equal(apply_map(images, c), even.multiply(images[i], images[j])):
                multiplicative = False
                break
        if not multiplicative:
            break

    return LocalizationReport(
        stabilization_degree=m,
        slice_dim=len(words),
        even_dim=even.dim,
        bijective=bijective,
        unital=unital,
        multiplicative=multiplicative,
        attempts=attempts,
    )


def localization_corner_crosscheck(B: QuadraticPresentation, z: Tensor,
                                   theta: Optional[CliffordMap] = None) -> bool:
    return localization_corner_report(B, z, theta).holds
