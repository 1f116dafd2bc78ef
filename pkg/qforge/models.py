"""
Data models for qforge.
Contains the result dataclasses returned by the library and the parsed
presentation file.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .exactlinear import FieldDescriptor, Scalar, Tensor

SparseVector = Tuple[Tuple[int, Scalar], ...]


# ============================================================================
# Presentation files
# ============================================================================

@dataclass(frozen=True)
class PresentationFile:
    """A parsed presentation file, in file order within each section."""
    field: FieldDescriptor
    name: str
    generators: Tuple[str, ...]
    relations: Tuple[Tensor, ...]                                # as listed
    clifford: Tuple[Tuple[str, Tuple[Scalar, ...]], ...] = ()   # values on listed relations
    central: Tuple[Tuple[str, Tensor], ...] = ()
    assertions: Tuple[str, ...] = ()

    def clifford_vector(self, name: str) -> Optional[Tuple[Scalar, ...]]:
        return dict(self.clifford).get(name)

    def central_element(self, name: str) -> Optional[Tensor]:
        return dict(self.central).get(name)


# ============================================================================
# quadalg results
# ============================================================================

@dataclass(frozen=True)
class DegreeRegularity:
    """Injectivity of z-multiplication from degree k to k+2."""
    degree: int
    source_dim: int
    left_rank: int
    right_rank: int

    @property
    def left_injective(self) -> bool:
        return self.left_rank == self.source_dim

    @property
    def right_injective(self) -> bool:
        return self.right_rank == self.source_dim

    @property
    def regular(self) -> bool:
        return self.left_injective and self.right_injective


@dataclass(frozen=True)
class RegularityReport:
    bound: int
    degrees: Tuple[DegreeRegularity, ...]

    @property
    def regular(self) -> bool:
        return all(d.regular for d in self.degrees)

    @property
    def first_failure(self) -> Optional[int]:
        for d in self.degrees:
            if not d.regular:
                return d.degree
        return None

    @property
    def summary(self) -> str:
        failure = self.first_failure
        if failure is None:
            return f"regular up to degree {self.bound}"
        return f"not regular: multiplication fails to be injective in degree {failure}"


@dataclass(frozen=True)
class KoszulCheck:
    """Coefficients of H_P(t) * H_{P!}(-t) up to max_degree."""
    max_degree: int
    series: Tuple[int, ...]
    dual_series: Tuple[int, ...]
    coefficients: Tuple[int, ...]
    first_failure: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.first_failure is None


# ============================================================================
# clifford results
# ============================================================================

@dataclass(frozen=True)
class CliffordCheck:
    holds: bool
    overlap_dim: int
    violations: Tuple[Tuple[int, Tensor], ...] = ()   # (overlap basis index, residual in V)


# ============================================================================
# deform results
# ============================================================================

@dataclass(frozen=True)
class PBWReport:
    expected_dim: int
    top_degree: int
    truncated_dims: Tuple[Tuple[int, int], ...]   # (bound, quotient dim)

    @property
    def passed(self) -> bool:
        return all(dim == self.expected_dim for _, dim in self.truncated_dims)


@dataclass(frozen=True)
class Z2Split:
    dim_even: int
    dim_odd: int
    even: Tuple[int, ...]   # basis indices
    odd: Tuple[int, ...]


@dataclass(frozen=True)
class BilinearFormMatrix:
    """Gram matrix of <a, b> = xi(a b) against the algebra basis."""
    gram: Tuple[Tuple[Scalar, ...], ...]
    parity: int
    top_degree: int
    top_index: int
    rank: int
    associative: bool = True
    homogeneous: bool = True

    @property
    def valid(self) -> bool:
        return self.rank == len(self.gram) and self.associative and self.homogeneous


# ============================================================================
# structure results
# ============================================================================

@dataclass(frozen=True)
class RadicalReport:
    basis: Tuple[SparseVector, ...]
    dim: int
    is_ideal: bool
    nilpotent: bool
    nilpotency_index: Optional[int]
    homogeneous: bool

    @property
    def semisimple(self) -> bool:
        return self.dim == 0

    @property
    def graded_semisimple(self) -> bool:
        return self.homogeneous and self.dim == 0


@dataclass(frozen=True)
class HypothesisLedger:
    """Verified hypotheses next to the ones taken on the user's word."""
    centrality_verified: bool
    koszul: KoszulCheck
    regularity: RegularityReport
    koszul_asserted: bool = False
    as_regular_asserted: bool = False
    gldim_asserted: bool = False

    @property
    def verified_ok(self) -> bool:
        return self.centrality_verified and self.koszul.passed and self.regularity.regular

    @property
    def asserted_ok(self) -> bool:
        return self.as_regular_asserted and self.gldim_asserted

    def open_items(self) -> List[str]:
        items = []
        if not self.koszul.passed:
            items.append(f"numerical Koszul check failed in degree {self.koszul.first_failure}")
        if not self.regularity.regular:
            items.append(f"z is not regular in degree {self.regularity.first_failure}")
        if not self.as_regular_asserted:
            items.append("AS-regularity of S not asserted")
        if not self.gldim_asserted:
            items.append("gldim S >= 2 not asserted")
        return items


@dataclass(frozen=True)
class SingularityVerdict:
    semisimple: bool
    radical_dim: int
    deformation_dim: int
    theta: Tuple[Scalar, ...]
    ledger: HypothesisLedger
    conclusion: str

    @property
    def isolated(self) -> bool:
        return self.conclusion == "isolated singularity"


@dataclass(frozen=True)
class LocalizationReport:
    stabilization_degree: int        # m, working in B_{2m}
    slice_dim: int
    even_dim: int
    bijective: bool
    unital: bool
    multiplicative: bool
    attempts: int = 1

    @property
    def holds(self) -> bool:
        return self.bijective and self.unital and self.multiplicative


# ============================================================================
# extensions results
# ============================================================================

@dataclass(frozen=True)
class IsoCertificate:
    """A linear map between two algebras given by basis images, and its checks."""
    source: str
    target: str
    images: Tuple[SparseVector, ...]
    unital: bool
    multiplicative: bool
    bijective: bool
    graded: bool = True
    failures: Tuple[Tuple[int, int], ...] = ()   # first failing basis pairs

    @property
    def valid(self) -> bool:
        return self.unital and self.multiplicative and self.bijective and self.graded


@dataclass(frozen=True)
class IdempotentCertificate:
    element: SparseVector
    even: bool
    idempotent: bool
    proper: bool

    @property
    def valid(self) -> bool:
        return self.even and self.idempotent and self.proper


@dataclass(frozen=True)
class CornerCertificate:
    """a -> chi^-1(a (x) E11) as an isomorphism of E(theta) onto e X e."""
    images: Tuple[SparseVector, ...]
    unital: bool
    multiplicative: bool
    injective: bool
    onto_corner: bool
    corner_dim: int
    structure: Tuple[Tuple[SparseVector, ...], ...] = ()   # products of images, in image coordinates

    @property
    def valid(self) -> bool:
        return self.unital and self.multiplicative and self.injective and self.onto_corner


@dataclass(frozen=True)
class FullnessCertificate:
    ideal_dim: int
    algebra_dim: int

    @property
    def valid(self) -> bool:
        return self.ideal_dim == self.algebra_dim


@dataclass(frozen=True)
class KnorrerBundle:
    base_dim: int
    extended_dim: int
    chi: IsoCertificate
    idempotent: IdempotentCertificate
    corner: CornerCertificate
    fullness: FullnessCertificate

    @property
    def passed(self) -> bool:
        return (self.chi.valid and self.idempotent.valid
                and self.corner.valid and self.fullness.valid)


@dataclass(frozen=True)
class TransferReport:
    status: str                       # "pass", "fail" or "outside-hypothesis"
    base_semisimple: Optional[bool] = None
    extended_semisimple: Optional[bool] = None
    reason: str = ""


@dataclass(frozen=True)
class CoverReport:
    """Second-cover comparison of theta_from_central with extended maps."""
    times: int
    generators: Tuple[str, ...]
    central: Tensor
    theta_cover: Tuple[Scalar, ...]
    theta_extended: Tuple[Scalar, ...]
    relations_agree: bool
    values_agree: bool

    @property
    def agrees(self) -> bool:
        return self.relations_agree and self.values_agree


@dataclass
class CorpusEntry:
    """A bundled example file."""
    name: str
    path: str
    description: str = ""


def sparse(vec: Dict[int, Scalar]) -> SparseVector:
    """Frozen, sorted form of an index-keyed vector."""
    return tuple(sorted((k, v) for k, v in vec.items() if v))

