import pytest

from qforge.errors import (
    ArityMismatch, DegreeError, DimensionMismatch, FieldLacksI, InputError,
    PresentationSyntaxError, UnknownGenerator, UnknownName,
)
from qforge.parsers import (
    build_presentation, clifford_from_file, format_polynomial, format_presentation,
    hypersurface_from_file, list_corpus, load_presentation, parse_presentation, resolve_path,
)

from conftest import Q, QI, tensor

HEADER = "field Q\nalgebra A\ngenerators x, y\n"


class TestParsing:

    def test_s2(self):
        pf = load_presentation("s2")
        assert pf.field is Q
        assert pf.generators == ("x", "y", "z")
        assert len(pf.relations) == 6
        assert pf.clifford_vector("worked") == tuple(Q.convert(v) for v in (0, 0, 1, 1, 1, 1))
        assert pf.relations[2] == tensor(Q, {(0, 0): 1, (1, 1): -1})

    def test_comments_and_blank_lines(self):
        text = "# leading comment\n\nfield Q   # inline\nalgebra A\n\n" \
               "generators x, y\n# between\nrelations x*x; y*y\n"
        pf = parse_presentation(text)
        assert pf.relations == (tensor(Q, {(0, 0): 1}), tensor(Q, {(1, 1): 1}))

    def test_coefficients(self):
        pf = parse_presentation(HEADER + "relations -x*y + 1/2*y*x; 3*x*x - (2)*y*y\n")
        assert pf.relations[0].coeff((0, 1)) == Q.convert(-1)
        assert pf.relations[0].coeff((1, 0)) == Q.rational(1, 2)
        assert pf.relations[1] == tensor(Q, {(0, 0): 3, (1, 1): -2})

    def test_like_terms_combine(self):
        pf = parse_presentation(HEADER + "relations x*y + x*y - y*x\n")
        assert pf.relations[0] == tensor(Q, {(0, 1): 2, (1, 0): -1})

    def test_complex_coefficient(self):
        text = "field Qi\nalgebra A\ngenerators x, y\nrelations (1+2i)*x*y + y*x\n"
        pf = parse_presentation(text)
        assert format_polynomial(pf.relations[0], pf.generators) == "(1+2i)*x*y + y*x"

    def test_imaginary_unit_needs_qi(self):
        with pytest.raises(FieldLacksI):
            parse_presentation(HEADER + "relations 2i*x*y\n")

    def test_empty_relations(self):
        pf = parse_presentation(HEADER + "relations\n")
        assert pf.relations == ()
        assert build_presentation(pf).relations.dim == 0

    def test_sections(self):
        text = HEADER + "relations x*y - y*x\nclifford t: 1\ncentral q: x*x\n" \
                        "assert koszul\nassert koszul\n"
        pf = parse_presentation(text)
        assert pf.clifford_vector("t") == (Q.one,)
        assert pf.central_element("q") == tensor(Q, {(0, 0): 1})
        assert pf.assertions == ("koszul",)


class TestParseErrors:

    def test_degree(self):
        with pytest.raises(DegreeError) as excinfo:
            parse_presentation(HEADER + "relations x*x*y\n")
        assert excinfo.value.line == 4
        assert excinfo.value.code == "DegreeError"

    def test_unknown_generator(self):
        with pytest.raises(UnknownGenerator) as excinfo:
            parse_presentation(HEADER + "relations x*w\n")
        assert excinfo.value.line == 4
        assert "'w'" in excinfo.value.message

    def test_arity(self):
        with pytest.raises(ArityMismatch):
            parse_presentation(HEADER + "relations x*x; y*y\nclifford t: 1, 0, 0\n")

    def test_syntax(self):
        with pytest.raises(PresentationSyntaxError) as excinfo:
            parse_presentation(HEADER + "relations x*x;; y*y\n")
        assert excinfo.value.line == 4
        assert excinfo.value.to_dict()['code'] == "SyntaxError"

    def test_unexpected_character(self):
        with pytest.raises(PresentationSyntaxError) as excinfo:
            parse_presentation(HEADER + "relations x*x @ y*y\n")
        assert excinfo.value.line == 4
        assert "unexpected character '@'" in str(excinfo.value)

    def test_missing_field(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("algebra A\ngenerators x\nrelations x*x\n")

    def test_duplicate_generator(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("field Q\nalgebra A\ngenerators x, x\nrelations\n")

    def test_duplicate_name(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation(HEADER + "relations x*x\nclifford t: 1\ncentral t: y*y\n")


class TestPrinting:

    def test_signs(self):
        t = tensor(Q, {(0, 1): -1, (1, 0): Q.rational(1, 2)})
        assert format_polynomial(t, ("x", "y")) == "-x*y + 1/2*y*x"
        t = tensor(Q, {(0, 0): 1, (1, 1): -3})
        assert format_polynomial(t, ("x", "y")) == "x*x - 3*y*y"

    def test_zero(self):
        assert format_polynomial(tensor(Q, {(0, 0): 0}), ("x", "y")) == "0*x*x"

    def test_canonical_jordan(self):
        text = format_presentation(load_presentation("jordan"))
        assert "relations y*y; x*y + y*x; x*x + y*x\n" in text
        assert text.startswith("field Q\nalgebra J\n")

    def test_round_trip_corpus(self):
        for entry in list_corpus():
            pf = load_presentation(entry.path)
            assert parse_presentation(format_presentation(pf)) == pf


class TestBuilders:

    def test_dependent_relations(self):
        pf = parse_presentation(HEADER + "relations x*x; 2*x*x\nclifford t: 1, 2\n")
        with pytest.raises(DimensionMismatch):
            clifford_from_file(pf, "t")

    def test_unknown_names(self):
        pf = load_presentation("poly2")
        with pytest.raises(UnknownName):
            clifford_from_file(pf, "nope")
        with pytest.raises(UnknownName):
            hypersurface_from_file(pf, "nope")

    def test_hypersurface_assertions(self):
        pf = load_presentation("poly2")
        H = hypersurface_from_file(pf, "q")
        assert H.assertions == frozenset({"koszul", "as-regular", "gldim>=2"})
        assert H.name == "q"


class TestCorpus:

    def test_listing(self):
        names = [entry.name for entry in list_corpus()]
        for expected in ("s2", "jordan", "exterior2", "poly2", "alternating"):
            assert expected in names
        assert names == sorted(names)
        assert all(entry.description for entry in list_corpus())

    def test_resolve(self):
        assert resolve_path("s2") == resolve_path("s2.alg")
        with pytest.raises(InputError):
            resolve_path("no-such-file.alg")

    def test_qi_entries(self):
        assert load_presentation("exterior2_qi").field is QI
