"""
Report generation for qforge.

Every command produces a Report. JSON output has sorted keys and exact
scalars as strings; the text output renders the same payload for reading.
"""

import json
from typing import Any, Dict, List, Mapping, Optional, Sequence

from pydantic import BaseModel

from .algebra import FiniteGradedAlgebra
from .constants import CONVENTIONS, FIELD_NAMES
from .exactlinear import FieldDescriptor, Scalar, Tensor, format_scalar, format_word
from .models import (
    HypothesisLedger, IsoCertificate, KnorrerBundle, RadicalReport, SparseVector,
)


# ============================================================================
# Response Models
# ============================================================================

class ConventionsBlock(BaseModel):
    """Conventions every result is stated against."""
    field: str
    field_name: str
    generators: List[str]
    word_order: str
    pairing: str
    complement: str
    frobenius_functional: str


class LedgerResponse(BaseModel):
    """Verified hypotheses next to asserted ones."""
    centrality_verified: bool
    koszul_check_degree: int
    koszul_check_passed: bool
    koszul_first_failure: Optional[int] = None
    regularity_bound: int
    regular: bool
    regularity_first_failure: Optional[int] = None
    koszul_asserted: bool = False
    as_regular_asserted: bool = False
    gldim_asserted: bool = False
    open_items: List[str] = []


class ErrorResponse(BaseModel):
    code: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None


class Report(BaseModel):
    """Result of one command."""
    command: str
    source: str = ""
    conventions: Optional[ConventionsBlock] = None
    result: Dict[str, Any] = {}
    ledger: Optional[LedgerResponse] = None
    passed: Optional[bool] = None
    error: Optional[ErrorResponse] = None


# ============================================================================
# Payload helpers
# ============================================================================

def conventions_block(field: FieldDescriptor, generators: Sequence[str]) -> ConventionsBlock:
    return ConventionsBlock(
        field=field.value,
        field_name=FIELD_NAMES[field.value],
        generators=list(generators),
        **CONVENTIONS,
    )


def scalars(values: Sequence[Scalar]) -> List[str]:
    return [format_scalar(v) for v in values]


def tensor_terms(t: Tensor, names: Sequence[str]) -> List[List[str]]:
    """[[word, coefficient], ...] in deglex order."""
    return [[format_word(w, names), format_scalar(c)] for w, c in t.terms]


def sparse_terms(vec: SparseVector) -> List[List[Any]]:
    return [[k, format_scalar(c)] for k, c in vec]


def element_terms(vec: Mapping[int, Scalar]) -> List[List[Any]]:
    return [[k, format_scalar(vec[k])] for k in sorted(vec) if vec[k]]


def algebra_payload(A: FiniteGradedAlgebra, with_table: bool = True) -> Dict[str, Any]:
    payload = {
        'name': A.name,
        'dim': A.dim,
        'dim_even': len(A.even_indices()),
        'dim_odd': len(A.odd_indices()),
        'labels': list(A.labels),
        'parities': list(A.parities),
        'unit': sparse_terms(A.unit),
    }
    if A.degrees is not None:
        payload['degrees'] = list(A.degrees)
    if with_table:
        payload['structure_constants'] = [[i, j, k, format_scalar(c)]
                                          for i, j, k, c in A.structure_triples()]
    return payload


def ledger_response(ledger: HypothesisLedger) -> LedgerResponse:
    return LedgerResponse(
        centrality_verified=ledger.centrality_verified,
        koszul_check_degree=ledger.koszul.max_degree,
        koszul_check_passed=ledger.koszul.passed,
        koszul_first_failure=ledger.koszul.first_failure,
        regularity_bound=ledger.regularity.bound,
        regular=ledger.regularity.regular,
        regularity_first_failure=ledger.regularity.first_failure,
        koszul_asserted=ledger.koszul_asserted,
        as_regular_asserted=ledger.as_regular_asserted,
        gldim_asserted=ledger.gldim_asserted,
        open_items=ledger.open_items(),
    )


def radical_payload(radical: RadicalReport) -> Dict[str, Any]:
    return {
        'dim': radical.dim,
        'basis': [sparse_terms(v) for v in radical.basis],
        'is_ideal': radical.is_ideal,
        'nilpotent': radical.nilpotent,
        'nilpotency_index': radical.nilpotency_index,
        'homogeneous': radical.homogeneous,
        'semisimple': radical.semisimple,
        'graded_semisimple': radical.graded_semisimple,
    }


def certificate_payload(cert: IsoCertificate) -> Dict[str, Any]:
    return {
        'source': cert.source,
        'target': cert.target,
        'images': [sparse_terms(img) for img in cert.images],
        'unital': cert.unital,
        'multiplicative': cert.multiplicative,
        'bijective': cert.bijective,
        'graded': cert.graded,
        'failures': [list(pair) for pair in cert.failures],
        'valid': cert.valid,
    }


def knorrer_payload(bundle: KnorrerBundle) -> Dict[str, Any]:
    return {
        'base_dim': bundle.base_dim,
        'extended_dim': bundle.extended_dim,
        'chi': certificate_payload(bundle.chi),
        'idempotent': {
            'element': sparse_terms(bundle.idempotent.element),
            'even': bundle.idempotent.even,
            'idempotent': bundle.idempotent.idempotent,
            'proper': bundle.idempotent.proper,
            'valid': bundle.idempotent.valid,
        },
        'corner': {
            'images': [sparse_terms(img) for img in bundle.corner.images],
            'unital': bundle.corner.unital,
            'multiplicative': bundle.corner.multiplicative,
            'injective': bundle.corner.injective,
            'onto_corner': bundle.corner.onto_corner,
            'corner_dim': bundle.corner.corner_dim,
            'valid': bundle.corner.valid,
        },
        'fullness': {
            'ideal_dim': bundle.fullness.ideal_dim,
            'algebra_dim': bundle.fullness.algebra_dim,
            'valid': bundle.fullness.valid,
        },
        'passed': bundle.passed,
    }


# ============================================================================
# Emission
# ============================================================================

def _render(value: Any, indent: int, lines: List[str]) -> None:
    pad = "   " * indent
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            label = key.replace('_', ' ')
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                lines.append(f"{pad}{label}:")
                _render(item, indent + 1, lines)
            else:
                lines.append(f"{pad}{label:24}: {_inline(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _is_flat(item):
                lines.append(f"{pad}-")
                _render(item, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(value)}")


def _is_flat(value: Any) -> bool:
    if isinstance(value, dict):
        return False
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and _is_flat(v))
                   for v in value) and len(value) <= 8
    return True


def _inline(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def generate_text(report: Report) -> str:
    lines = []
    lines.append("=" * 60)
    lines.append(f"  QFORGE {report.command.upper()}")
    if report.source:
        lines.append(f"  {report.source}")
    lines.append("=" * 60)

    if report.error is not None:
        lines.append(f"ERROR [{report.error.code}]: {report.error.message}")
        return "\n".join(lines) + "\n"

    if report.conventions is not None:
        lines.append("")
        lines.append("CONVENTIONS")
        lines.append("-" * 40)
        _render(report.conventions.model_dump(), 0, lines)

    lines.append("")
    lines.append("RESULT")
    lines.append("-" * 40)
    _render(report.result, 0, lines)

    if report.ledger is not None:
        lines.append("")
        lines.append("HYPOTHESES")
        lines.append("-" * 40)
        _render(report.ledger.model_dump(), 0, lines)

    if report.passed is not None:
        lines.append("")
        lines.append("=" * 60)
        lines.append(f"  {'PASSED' if report.passed else 'FAILED'}")
        lines.append("=" * 60)
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "json") -> bytes:
    """
    Serialize a report.

    Args:
        report: Report to emit
        fmt: "json" (sorted keys, scalars as exact strings) or "text"

    Returns:
        UTF-8 encoded output
    """
    if fmt == "json":
        text = json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"
    elif fmt == "text":
        text = generate_text(report)
    else:
        raise ValueError(f"unknown report format: {fmt}")
    return text.encode("utf-8")
