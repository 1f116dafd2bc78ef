"""
Command-line interface for qforge.

Usage:
    python -m qforge check exterior2.alg
    python -m qforge deform s2.alg --theta worked --json
    python -m qforge verdict poly2.alg --central q
    python -m qforge corpus
"""

import argparse
import logging
import sys
import traceback
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import quotient_algebra
from .clifford import (
    CliffordMap, center_correspondence_check, clifford_map_basis, clifford_map_space,
    echelon_values, overlap_space, theta_from_central,
)
from .constants import EXIT_MATH_FAILURE, EXIT_OK, KOSZUL_CHECK_DEGREE
from .deform import build_deformation, frobenius_form, pbw_check, strong_grading_check, z2_components
from .errors import InputError, QForgeError, UnknownName
from .extensions import (
    extend_clifford_map, knorrer_corner_witness, knorrer_semisimple_transfer, tilde_iso_check,
    upsilon_iso_check,
)
from .models import PresentationFile
from .parsers import (
    build_presentation, clifford_from_file, format_presentation, hypersurface_from_file,
    list_corpus, load_presentation, resolve_path,
)
from .quadalg import QuadraticPresentation, central_degree2, hilbert_series, quadratic_dual
from .report import (
    ErrorResponse, Report, algebra_payload, certificate_payload, conventions_block,
    emit_report, knorrer_payload, ledger_response, radical_payload, scalars, tensor_terms,
)
from .structure import (
    even_part_algebra, jacobson_radical, localization_corner_report, singularity_verdict,
)

log = logging.getLogger(__name__)

DEFAULT_HILBERT_DEGREE = 6

# Commands whose text output is the raw file text.
RAW_TEXT_COMMANDS = ("print", "corpus")


@dataclass
class CommandContext:
    """A parsed file and its presentation, shared by the command handlers."""
    args: argparse.Namespace
    pf: PresentationFile
    presentation: QuadraticPresentation


Outcome = Tuple[Dict[str, Any], Optional[Any], Optional[bool]]


# ============================================================================
# Shared pieces
# ============================================================================

def _relations_payload(P: QuadraticPresentation) -> List[List[List[str]]]:
    return [tensor_terms(r, P.generators) for r in P.relations.basis]


def _theta(ctx: CommandContext) -> CliffordMap:
    return clifford_from_file(ctx.pf, ctx.args.theta, ctx.presentation)


def _theta_payload(ctx: CommandContext, theta: CliffordMap) -> Dict[str, Any]:
    """Values as listed in the file and against the echelon basis of R."""
    return {
        'name': ctx.args.theta,
        'listed': scalars(ctx.pf.clifford_vector(ctx.args.theta)),
        'echelon': scalars(theta.values),
    }


def _central_payload(ctx: CommandContext, z) -> Dict[str, Any]:
    return {'name': ctx.args.central, 'normal_form': tensor_terms(z, ctx.presentation.generators)}


# ============================================================================
# Command handlers
# ============================================================================

def cmd_check(ctx: CommandContext) -> Outcome:
    pf, E = ctx.pf, ctx.presentation
    clifford = {}
    for name, _ in pf.clifford:
        clifford[name] = scalars(clifford_from_file(pf, name, E).values)
    central = {}
    for name, _ in pf.central:
        central[name] = tensor_terms(hypersurface_from_file(pf, name, E).z, E.generators)
    return {
        'name': pf.name,
        'relations_listed': len(pf.relations),
        'relations_dim': E.relations.dim,
        'relations': _relations_payload(E),
        'clifford': clifford,
        'central': central,
        'assertions': list(pf.assertions),
    }, None, None


def cmd_hilbert(ctx: CommandContext) -> Outcome:
    args = ctx.args
    maxdeg = args.maxdeg
    if maxdeg is None:
        maxdeg = args.max_degree if args.max_degree is not None else DEFAULT_HILBERT_DEGREE
    series = hilbert_series(ctx.presentation, maxdeg)
    finite = series[-1] == 0
    top = max(k for k, d in enumerate(series) if d) if finite else None
    return {
        'max_degree': maxdeg,
        'series': series,
        'finite': finite,
        'top_degree': top,
        'total_dim': sum(series) if finite else None,
    }, None, None


def cmd_dual(ctx: CommandContext) -> Outcome:
    D = quadratic_dual(ctx.presentation)
    as_file = PresentationFile(D.field, D.name, D.generators, D.relations.basis)
    return {
        'name': D.name,
        'generators': list(D.generators),
        'relations_dim': D.relations.dim,
        'relations': _relations_payload(D),
        'presentation': format_presentation(as_file),
    }, None, None


def cmd_overlap(ctx: CommandContext) -> Outcome:
    E = ctx.presentation
    overlap = overlap_space(E)
    return {
        'dim': overlap.dim,
        'basis': [tensor_terms(w, E.generators) for w in overlap.basis],
    }, None, None


def cmd_clifford_space(ctx: CommandContext) -> Outcome:
    E = ctx.presentation
    space = clifford_map_space(E)
    return {
        'dim': space.dim,
        'relations': _relations_payload(E),
        'basis': [scalars(theta.values) for theta in clifford_map_basis(E)],
        'functionals': [tensor_terms(f, E.generators) for f in space.basis],
        'center_correspondence': center_correspondence_check(E),
    }, None, None


def cmd_center(ctx: CommandContext) -> Outcome:
    if ctx.args.degree != 2:
        raise InputError(f"only the degree-2 center is computed, got --degree {ctx.args.degree}")
    E = ctx.presentation
    center = central_degree2(E)
    return {
        'degree': 2,
        'dim': center.dim,
        'basis': [tensor_terms(w, E.generators) for w in center.basis],
    }, None, None


def cmd_theta_from_central(ctx: CommandContext) -> Outcome:
    H = hypersurface_from_file(ctx.pf, ctx.args.central, ctx.presentation)
    theta = theta_from_central(H)
    dual = theta.presentation
    return {
        'central': _central_payload(ctx, H.z),
        'dual': dual.name,
        'dual_generators': list(dual.generators),
        'dual_relations': _relations_payload(dual),
        'theta': scalars(theta.values),
    }, None, None


def cmd_deform(ctx: CommandContext) -> Outcome:
    E = ctx.presentation
    if ctx.args.unchecked:
        listed = ctx.pf.clifford_vector(ctx.args.theta)
        if listed is None:
            raise UnknownName(f"no clifford vector named {ctx.args.theta!r}")
        # PBWFailure here when the values are not a Clifford map
        build_deformation(E, echelon_values(E, list(ctx.pf.relations), listed), precheck=False)
    theta = _theta(ctx)
    A = build_deformation(E, theta)
    pbw = pbw_check(E, theta)
    split = z2_components(A)
    return {
        'theta': _theta_payload(ctx, theta),
        'algebra': algebra_payload(A),
        'dim_even': split.dim_even,
        'dim_odd': split.dim_odd,
        'pbw': {
            'expected_dim': pbw.expected_dim,
            'top_degree': pbw.top_degree,
            'truncated_dims': [list(pair) for pair in pbw.truncated_dims],
            'passed': pbw.passed,
        },
        'strongly_graded': strong_grading_check(A),
        'even_part': algebra_payload(even_part_algebra(A)),
    }, None, None


def cmd_frobenius(ctx: CommandContext) -> Outcome:
    theta = _theta(ctx)
    A = build_deformation(ctx.presentation, theta)
    form = frobenius_form(A)
    return {
        'theta': _theta_payload(ctx, theta),
        'labels': list(A.labels),
        'gram': [scalars(row) for row in form.gram],
        'parity': form.parity,
        'top_degree': form.top_degree,
        'top_label': A.labels[form.top_index],
        'rank': form.rank,
        'associative': form.associative,
        'homogeneous': form.homogeneous,
    }, None, form.valid


def cmd_semisimple(ctx: CommandContext) -> Outcome:
    theta = _theta(ctx)
    A = build_deformation(ctx.presentation, theta)
    radical = jacobson_radical(A)
    return {
        'theta': _theta_payload(ctx, theta),
        'algebra_dim': A.dim,
        'radical': radical_payload(radical),
        'graded_semisimple': radical.graded_semisimple,
        'quotient_dim': quotient_algebra(A, [dict(b) for b in radical.basis]).dim,
    }, None, None


def cmd_verdict(ctx: CommandContext) -> Outcome:
    args = ctx.args
    H = hypersurface_from_file(ctx.pf, args.central, ctx.presentation)
    context_dim = clifford_map_space(quadratic_dual(H.ambient)).dim
    koszul_degree = args.max_degree if args.max_degree is not None else KOSZUL_CHECK_DEGREE
    verdict = singularity_verdict(H, regularity_bound=args.max_degree, koszul_degree=koszul_degree)
    return {
        'central': _central_payload(ctx, H.z),
        'theta': scalars(verdict.theta),
        'clifford_space_dim': context_dim,
        'deformation_dim': verdict.deformation_dim,
        'radical_dim': verdict.radical_dim,
        'semisimple': verdict.semisimple,
        'isolated': verdict.isolated,
        'conclusion': verdict.conclusion,
    }, ledger_response(verdict.ledger), None


def cmd_even_part(ctx: CommandContext) -> Outcome:
    theta = _theta(ctx)
    even = even_part_algebra(build_deformation(ctx.presentation, theta))
    return {
        'theta': _theta_payload(ctx, theta),
        'even_part': algebra_payload(even),
    }, None, None


def cmd_corner_crosscheck(ctx: CommandContext) -> Outcome:
    z = ctx.pf.central_element(ctx.args.central)
    if z is None:
        raise UnknownName(f"no central element named {ctx.args.central!r}")
    B = ctx.presentation
    report = localization_corner_report(B, z)
    return {
        'central': _central_payload(ctx, B.normal_form(z)),
        'stabilization_degree': report.stabilization_degree,
        'slice_dim': report.slice_dim,
        'even_dim': report.even_dim,
        'bijective': report.bijective,
        'unital': report.unital,
        'multiplicative': report.multiplicative,
        'attempts': report.attempts,
        'holds': report.holds,
    }, None, report.holds


def cmd_ext(ctx: CommandContext) -> Outcome:
    times = ctx.args.times
    if times not in (1, 2):
        raise InputError("--times must be 1 or 2")
    E, theta = ctx.presentation, _theta(ctx)
    base_payload = _theta_payload(ctx, theta)
    levels = []
    for level in range(1, times + 1):
        certificate = tilde_iso_check(E, theta)
        extended = extend_clifford_map(E, theta)
        levels.append({
            'level': level,
            'generators': list(extended.presentation.generators),
            'relations_dim': extended.presentation.relations.dim,
            'theta': scalars(extended.values),
            'certificate': certificate_payload(certificate),
        })
        E, theta = extended.presentation, extended
    passed = all(level['certificate']['valid'] for level in levels)
    return {'theta': base_payload, 'levels': levels}, None, passed


def cmd_knorrer(ctx: CommandContext) -> Outcome:
    E = ctx.presentation
    theta = _theta(ctx)
    bundle = knorrer_corner_witness(E, theta, strict=False)
    upsilon = upsilon_iso_check(E.field)
    result = {
        'theta': _theta_payload(ctx, theta),
        'upsilon': certificate_payload(upsilon),
        'witness': knorrer_payload(bundle),
    }
    return result, None, bundle.passed and upsilon.valid


def cmd_transfer(ctx: CommandContext) -> Outcome:
    theta = _theta(ctx)
    report = knorrer_semisimple_transfer(ctx.presentation, theta)
    passed = {"pass": True, "fail": False}.get(report.status)
    return {
        'theta': _theta_payload(ctx, theta),
        'status': report.status,
        'base_semisimple': report.base_semisimple,
        'extended_semisimple': report.extended_semisimple,
        'reason': report.reason,
    }, None, passed


def cmd_print(ctx: CommandContext) -> Outcome:
    return {'text': format_presentation(ctx.pf)}, None, None


COMMANDS: Dict[str, Callable[[CommandContext], Outcome]] = {
    'check': cmd_check,
    'hilbert': cmd_hilbert,
    'dual': cmd_dual,
    'overlap': cmd_overlap,
    'clifford-space': cmd_clifford_space,
    'center': cmd_center,
    'theta-from-central': cmd_theta_from_central,
    'deform': cmd_deform,
    'frobenius': cmd_frobenius,
    'semisimple': cmd_semisimple,
    'verdict': cmd_verdict,
    'even-part': cmd_even_part,
    'corner-crosscheck': cmd_corner_crosscheck,
    'ext': cmd_ext,
    'knorrer': cmd_knorrer,
    'transfer': cmd_transfer,
    'print': cmd_print,
}


# ============================================================================
# Argument parsing and dispatch
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--max-degree", type=int, default=None,
                        help="degree bound for series, Koszul and regularity checks")
    common.add_argument("--resource-cap", type=int, default=None,
                        help="largest number of words a single degree may touch")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="qforge",
        description="Exact computations with quadratic algebras and their Clifford deformations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="presentation file or bundled corpus name")
        return p

    add("check", "parse and validate a presentation file")
    add("hilbert", "Hilbert series").add_argument("--maxdeg", type=int, default=None)
    add("dual", "quadratic dual")
    add("overlap", "V (x) R intersected with R (x) V")
    add("clifford-space", "all Clifford maps")
    add("center", "degree-2 center").add_argument("--degree", type=int, default=2)
    add("theta-from-central", "theta_z on the dual").add_argument("--central", required=True)
    deform = add("deform", "Clifford deformation E(theta)")
    deform.add_argument("--theta", required=True)
    deform.add_argument("--unchecked", action="store_true",
                        help="skip the Clifford precheck and rely on the PBW dimension count")
    for name, help_text in (("frobenius", "Frobenius form of E(theta)"),
                            ("semisimple", "Jacobson radical of E(theta)"),
                            ("even-part", "even part of E(theta)"),
                            ("knorrer", "periodicity witness (field Qi)"),
                            ("transfer", "semisimplicity of E(theta) vs its extension")):
        add(name, help_text).add_argument("--theta", required=True)
    add("verdict", "isolated-singularity verdict").add_argument("--central", required=True)
    add("corner-crosscheck", "localization corner check").add_argument("--central", required=True)
    ext = add("ext", "trivial extension and its isomorphism certificate")
    ext.add_argument("--theta", required=True)
    ext.add_argument("--times", type=int, default=1)
    add("print", "canonical form of a presentation file")

    corpus = sub.add_parser("corpus", parents=[common], help="list or show bundled examples")
    corpus.add_argument("name", nargs="?", default=None)
    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def execute(args: argparse.Namespace) -> Report:
    if args.command == "corpus":
        return _corpus_report(args)

    path = resolve_path(args.file)
    pf = load_presentation(path)
    presentation = build_presentation(pf, word_cap=args.resource_cap)
    log.info(f"running {args.command} on {pf.name} ({path})")
    ctx = CommandContext(args, pf, presentation)
    result, ledger, passed = COMMANDS[args.command](ctx)
    return Report(
        command=args.command,
        source=args.file,
        conventions=conventions_block(pf.field, pf.generators),
        result=result,
        ledger=ledger,
        passed=passed,
    )


def _corpus_report(args: argparse.Namespace) -> Report:
    if args.name is None:
        entries = [{'name': e.name, 'description': e.description} for e in list_corpus()]
        return Report(command="corpus", result={'entries': entries})
    with open(resolve_path(args.name), encoding="utf-8") as handle:
        text = handle.read()
    return Report(command="corpus", source=args.name, result={'text': text})


def run_command(argv: Sequence[str]) -> Report:
    """
    Parse argv and run one command without writing anything.

    Args:
        argv: Command-line arguments, without the program name

    Returns:
        Report for the command; errors propagate as QForgeError
    """
    return execute(parse_arguments(argv))


def _write(data: str) -> None:
    sys.stdout.write(data)
    sys.stdout.flush()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main function: run one command and return the exit code."""
    args = parse_arguments(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    fmt = "json" if args.json else "text"

    try:
        report = execute(args)
    except QForgeError as exc:
        print(f"ERROR [{exc.code}]: {exc.message}", file=sys.stderr)
        if args.json:
            error = Report(command=args.command, source=getattr(args, "file", None) or "",
                           error=ErrorResponse(**exc.to_dict()))
            _write(emit_report(error, "json").decode("utf-8"))
        return exc.exit_code
    except Exception as exc:
        print(f"Internal error: {exc}", file=sys.stderr)
        traceback.print_exc()
        return EXIT_MATH_FAILURE

    if fmt == "text" and args.command in RAW_TEXT_COMMANDS and 'text' in report.result:
        _write(report.result['text'])
    else:
        _write(emit_report(report, fmt).decode("utf-8"))
    return EXIT_MATH_FAILURE if report.passed is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
