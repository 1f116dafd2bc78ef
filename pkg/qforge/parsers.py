"""
Parser and printer for presentation files, and access to the bundled corpus.

A presentation file looks like::

    # exterior algebra on two generators
    field Q
    algebra Lambda2
    generators x, y
    relations x*x; y*y; x*y + y*x
    clifford pp: 1, 1, 0
    central q: x*x + y*y
    assert koszul

Clifford vectors give theta on the relations in the order listed.
"""

import logging
import os
from typing import Dict, List, Optional, Sequence, Tuple

import lark

from .clifford import CliffordMap, HypersurfaceInput
from .errors import (
    ArityMismatch, DegreeError, FieldLacksI, InputError, PresentationSyntaxError,
    UnknownGenerator, UnknownName,
)
from .exactlinear import (
    FieldDescriptor, QQ_I, Scalar, Tensor, add_term, format_scalar, is_negative_rational,
    parse_scalar,
)
from .models import CorpusEntry, PresentationFile
from .quadalg import QuadraticPresentation

log = logging.getLogger(__name__)

CORPUS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")
CORPUS_SUFFIX = ".alg"

grammar = r"""
start: _NL? field_decl _NL algebra_decl _NL generators_decl _NL relations_decl (_NL extra)* _NL?

field_decl: "field" FIELD
algebra_decl: "algebra" NAME
generators_decl: "generators" NAME ("," NAME)*
relations_decl: "relations" [poly (";" poly)*]

?extra: clifford_decl | central_decl | assert_decl
clifford_decl: "clifford" NAME ":" SCALAR ("," SCALAR)*
central_decl: "central" NAME ":" poly
assert_decl: "assert" FLAG

poly: (term | neg) (plus | minus)*
neg: "-" term
plus: "+" term
minus: "-" term
term: [coeff "*"] NAME ("*" NAME)*
coeff: SCALAR | "(" SCALAR ")"

FIELD: "Qi" | "Q"
FLAG: "koszul" | "as-regular" | "gldim>=2"
SCALAR: /[+-]?\d+(\/\d+)?([+-]\d+(\/\d+)?i|i)?/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/
_NL: (/\r?\n[\t ]*/ | COMMENT)+

%ignore /[\t \f]+/
"""

_lark_parser = lark.Lark(grammar, parser="lalr")


class PresentationParser:
    """
    Parses presentation text into a PresentationFile.
    Errors carry the line and column of the offending token.
    """

    def __init__(self, text: str):
        self.text = text.replace("\r\n", "\n")
        if not self.text.endswith("\n"):
            self.text += "\n"
        self.field: Optional[FieldDescriptor] = None
        self.generators: Tuple[str, ...] = ()
        self._index: Dict[str, int] = {}

    def parse(self) -> PresentationFile:
        try:
            tree = _lark_parser.parse(self.text)
        except lark.exceptions.UnexpectedInput as exc:
            raise self._syntax_error(exc)

        decls = [child for child in tree.children if isinstance(child, lark.Tree)]
        self.field = FieldDescriptor.from_name(str(decls[0].children[0]))
        name = str(decls[1].children[0])
        self._parse_generators(decls[2])
        relations = self._parse_relations(decls[3])

        clifford: List[Tuple[str, Tuple[Scalar, ...]]] = []
        central: List[Tuple[str, Tensor]] = []
        assertions: List[str] = []
        seen = set()
        for decl in decls[4:]:
            if decl.data == "assert_decl":
                flag = str(decl.children[0])
                if flag not in assertions:
                    assertions.append(flag)
                continue
            label = decl.children[0]
            if str(label) in seen:
                raise PresentationSyntaxError(f"duplicate name {str(label)!r}",
                                              label.line, label.column)
            seen.add(str(label))
            if decl.data == "clifford_decl":
                clifford.append((str(label), self._parse_clifford(decl, len(relations))))
            else:
                central.append((str(label), self._parse_poly(decl.children[1])))

        return PresentationFile(
            field=self.field,
            name=name,
            generators=self.generators,
            relations=tuple(relations),
            clifford=tuple(clifford),
            central=tuple(central),
            assertions=tuple(assertions),
        )

    def _syntax_error(self, exc: "lark.exceptions.UnexpectedInput") -> PresentationSyntaxError:
        line = getattr(exc, "line", None)
        column = getattr(exc, "column", None)
        if line is None or line < 0:
            line, column = self.text.count("\n"), None
        if isinstance(exc, lark.exceptions.UnexpectedToken):
            token = str(exc.token)
            message = f"unexpected {token!r}" if token else "unexpected end of input"
        elif isinstance(exc, lark.exceptions.UnexpectedCharacters):
            message = f"unexpected character {exc.char!r}"
        else:
            message = "unexpected end of input"
        return PresentationSyntaxError(message, line, column)

    def _parse_generators(self, decl: lark.Tree) -> None:
        names = []
        for token in decl.children:
            if str(token) in names:
                raise PresentationSyntaxError(f"duplicate generator {str(token)!r}",
                                              token.line, token.column)
            names.append(str(token))
        self.generators = tuple(names)
        self._index = {g: i for i, g in enumerate(names)}

    def _parse_relations(self, decl: lark.Tree) -> List[Tensor]:
        return [self._parse_poly(poly) for poly in decl.children if poly is not None]

    def _parse_poly(self, poly: lark.Tree) -> Tensor:
        acc: Dict[Tuple[int, ...], Scalar] = {}
        for part in poly.children:
            if part.data == "term":
                sign, term = 1, part
            else:
                sign, term = (-1 if part.data in ("neg", "minus") else 1), part.children[0]
            word, coeff = self._parse_term(term)
            add_term(acc, word, coeff if sign > 0 else -coeff)
        return Tensor.from_dict(self.field, 2, acc)

    def _parse_term(self, term: lark.Tree) -> Tuple[Tuple[int, ...], Scalar]:
        coeff_tree, names = term.children[0], term.children[1:]
        if len(names) != 2:
            raise DegreeError(f"term has degree {len(names)}, relations and central elements "
                              "have degree 2", names[0].line, names[0].column)
        word = []
        for token in names:
            if str(token) not in self._index:
                raise UnknownGenerator(f"unknown generator {str(token)!r}", token.line, token.column)
            word.append(self._index[str(token)])
        coeff = self.field.one
        if coeff_tree is not None:
            coeff = self._scalar(coeff_tree.children[0])
        return tuple(word), coeff

    def _parse_clifford(self, decl: lark.Tree, arity: int) -> Tuple[Scalar, ...]:
        label, tokens = decl.children[0], decl.children[1:]
        if len(tokens) != arity:
            raise ArityMismatch(f"clifford vector {str(label)!r} has {len(tokens)} entries "
                                f"for {arity} relations", label.line, label.column)
        return tuple(self._scalar(token) for token in tokens)

    def _scalar(self, token: lark.Token) -> Scalar:
        try:
            return parse_scalar(str(token), self.field)
        except FieldLacksI:
            raise
        except InputError as exc:
            raise PresentationSyntaxError(exc.message, token.line, token.column)


def parse_presentation(text: str) -> PresentationFile:
    """
    Parse presentation-file text.

    Args:
        text: Full file contents

    Returns:
        PresentationFile with relations, clifford vectors and central
        elements in file order; a PresentationError carries the line and
        column of the first problem
    """
    return PresentationParser(text).parse()


# ============================================================================
# Printing
# ============================================================================

def _is_real(value: Scalar) -> bool:
    return not (QQ_I.of_type(value) and value.y)


def format_polynomial(t: Tensor, names: Sequence[str]) -> str:
    """Canonical text of a degree-2 tensor: terms in deglex order."""
    if t.is_zero():
        return f"0*{names[0]}*{names[0]}"
    one = t.field.one
    parts = []
    for word, coeff in t.terms:
        monomial = "*".join(names[a] for a in word)
        if _is_real(coeff):
            negative = is_negative_rational(coeff)
            magnitude = -coeff if negative else coeff
            body = monomial if magnitude == one else f"{format_scalar(magnitude)}*{monomial}"
            sign = "-" if negative else "+"
        else:
            body, sign = f"({format_scalar(coeff)})*{monomial}", "+"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def format_presentation(pf: PresentationFile) -> str:
    lines = [
        f"field {pf.field.value}",
        f"algebra {pf.name}",
        f"generators {', '.join(pf.generators)}",
    ]
    relations = "; ".join(format_polynomial(r, pf.generators) for r in pf.relations)
    lines.append(("relations " + relations) if relations else "relations")
    for label, values in pf.clifford:
        lines.append(f"clifford {label}: {', '.join(format_scalar(v) for v in values)}")
    for label, z in pf.central:
        lines.append(f"central {label}: {format_polynomial(z, pf.generators)}")
    for flag in pf.assertions:
        lines.append(f"assert {flag}")
    return "\n".join(lines) + "\n"


# ============================================================================
# From files to library objects
# ============================================================================

def build_presentation(pf: PresentationFile, word_cap: Optional[int] = None) -> QuadraticPresentation:
    return QuadraticPresentation.create(pf.field, pf.generators, pf.relations,
                                        name=pf.name, word_cap=word_cap)


def clifford_from_file(pf: PresentationFile, name: str,
                       E: Optional[QuadraticPresentation] = None) -> CliffordMap:
    """theta from a named clifford vector, re-expressed on the echelon basis."""
    values = pf.clifford_vector(name)
    if values is None:
        raise UnknownName(f"no clifford vector named {name!r}")
    E = E or build_presentation(pf)
    return CliffordMap.from_relation_values(E, list(pf.relations), values)


def hypersurface_from_file(pf: PresentationFile, name: str,
                           S: Optional[QuadraticPresentation] = None) -> HypersurfaceInput:
    z = pf.central_element(name)
    if z is None:
        raise UnknownName(f"no central element named {name!r}")
    S = S or build_presentation(pf)
    return HypersurfaceInput(S, z, frozenset(pf.assertions), name=name)


# ============================================================================
# Corpus
# ============================================================================

def _description(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line.startswith("#"):
                return line.lstrip("#").strip()
            if line:
                break
    return ""


def list_corpus() -> List[CorpusEntry]:
    entries = []
    for filename in sorted(os.listdir(CORPUS_DIR)):
        if filename.endswith(CORPUS_SUFFIX):
            path = os.path.join(CORPUS_DIR, filename)
            entries.append(CorpusEntry(filename[:-len(CORPUS_SUFFIX)], path, _description(path)))
    return entries


def resolve_path(name_or_path: str) -> str:
    """A file path, or the name of a bundled corpus file (with or without suffix)."""
    if os.path.isfile(name_or_path):
        return name_or_path
    base = os.path.basename(name_or_path)
    if not base.endswith(CORPUS_SUFFIX):
        base += CORPUS_SUFFIX
    candidate = os.path.join(CORPUS_DIR, base)
    if os.path.isfile(candidate):
        return candidate
    raise InputError(f"no such file or corpus entry: {name_or_path}")


def load_presentation(name_or_path: str) -> PresentationFile:
    path = resolve_path(name_or_path)
    log.debug(f"reading {path}")
    with open(path, encoding="utf-8") as handle:
        return parse_presentation(handle.read())
