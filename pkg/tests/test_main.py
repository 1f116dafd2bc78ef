import json

import pytest

from qforge.errors import InputError
from qforge.main import build_parser, main, run_command
from qforge.report import Report, emit_report

from conftest import Q


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCommands:

    def test_hilbert(self):
        report = run_command(["hilbert", "s2.alg"])
        assert report.result['series'][:5] == [1, 3, 3, 1, 0]
        assert report.result['top_degree'] == 3
        assert report.result['total_dim'] == 8

    def test_hilbert_maxdeg(self):
        report = run_command(["hilbert", "poly2", "--maxdeg", "3"])
        assert report.result['series'] == [1, 2, 3, 4]
        assert report.result['finite'] is False

    def test_max_degree_zero(self):
        report = run_command(["hilbert", "poly2", "--max-degree", "0"])
        assert report.result['max_degree'] == 0
        assert report.result['series'] == [1]

    def test_frobenius(self):
        report = run_command(["frobenius", "exterior2", "--theta", "pp"])
        assert report.passed is True
        assert report.result['associative'] is True
        assert report.result['homogeneous'] is True
        assert report.result['top_degree'] == 2

    def test_semisimple_quotient(self):
        report = run_command(["semisimple", "exterior2", "--theta", "px"])
        assert report.result['algebra_dim'] == 4
        assert report.result['quotient_dim'] == 2

    def test_check(self):
        report = run_command(["check", "exterior2"])
        assert report.result['relations_dim'] == 3
        assert set(report.result['clifford']) == {"pp", "px", "zero"}
        assert report.conventions.field == "Q"
        assert report.conventions.word_order == "deglex"

    def test_clifford_space(self):
        report = run_command(["clifford-space", "jordan"])
        assert report.result['dim'] == 0
        assert report.result['center_correspondence'] is True

    def test_center_degree(self):
        with pytest.raises(InputError):
            run_command(["center", "poly2", "--degree", "3"])

    def test_verdict(self):
        report = run_command(["verdict", "poly2", "--central", "q"])
        assert report.result['conclusion'] == "isolated singularity"
        assert report.result['theta'] == ["1", "0", "1"]
        assert report.ledger.regular
        assert report.ledger.open_items == []

    def test_transfer_outside_hypothesis(self):
        report = run_command(["transfer", "dual_numbers_qi", "--theta", "zero"])
        assert report.result['status'] == "outside-hypothesis"
        assert report.passed is None

    def test_parser_requires_theta(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["deform", "s2"])


class TestJsonOutput:

    def test_deform_s2(self, capsys):
        code, out, _ = run(capsys, "deform", "s2.alg", "--theta", "worked", "--json")
        assert code == 0
        data = json.loads(out)
        assert data['command'] == "deform"
        assert data['result']['algebra']['dim'] == 8
        assert data['result']['dim_even'] == 4
        assert data['result']['dim_odd'] == 4
        assert data['result']['pbw']['passed'] is True
        for triple in data['result']['algebra']['structure_constants']:
            i, j, k, c = triple
            assert isinstance(i, int) and isinstance(c, str)
        assert list(data) == sorted(data)

    def test_deterministic(self, capsys):
        _, first, _ = run(capsys, "deform", "s2", "--theta", "worked", "--json")
        _, second, _ = run(capsys, "deform", "s2", "--theta", "worked", "--json")
        assert first == second

    def test_error_report(self, capsys):
        code, out, err = run(capsys, "knorrer", "exterior2", "--theta", "pp", "--json")
        assert code == 2
        assert "FieldLacksI" in err
        assert json.loads(out)['error']['code'] == "FieldLacksI"

    def test_scalar_strings(self):
        report = Report(command="x", result={'value': "-1/2"})
        data = json.loads(emit_report(report).decode("utf-8"))
        assert data['result']['value'] == "-1/2"
        assert data['passed'] is None

    def test_text_format(self):
        text = emit_report(Report(command="hilbert", result={'series': [1, 2]}), "text")
        assert b"QFORGE HILBERT" in text
        assert b"RESULT" in text
        with pytest.raises(ValueError):
            emit_report(Report(command="x"), "yaml")


class TestExitCodes:

    def test_knorrer_qi(self, capsys):
        code, _, _ = run(capsys, "knorrer", "exterior2_qi", "--theta", "pp")
        assert code == 0

    def test_planted_theta_unchecked(self, capsys):
        code, _, err = run(capsys, "deform", "jordan", "--theta", "planted", "--unchecked")
        assert code == 1
        assert "PBWFailure" in err

    def test_planted_theta_checked(self, capsys):
        code, _, err = run(capsys, "deform", "jordan", "--theta", "planted")
        assert code == 2
        assert "NotClifford" in err

    def test_transfer_outside_hypothesis(self, capsys):
        code, _, _ = run(capsys, "transfer", "dual_numbers_qi", "--theta", "zero")
        assert code == 0

    def test_corner_crosscheck(self, capsys):
        code, out, _ = run(capsys, "corner-crosscheck", "alternating", "--central", "w", "--json")
        assert code == 0
        assert json.loads(out)['passed'] is True

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "check", "does-not-exist.alg")
        assert code == 2
        assert "InputError" in err

    def test_unknown_theta(self, capsys):
        code, _, err = run(capsys, "deform", "s2", "--theta", "nope")
        assert code == 2
        assert "UnknownName" in err

    def test_syntax_error_file(self, capsys, tmp_path):
        path = tmp_path / "broken.alg"
        path.write_text("field Q\nalgebra A\ngenerators x\nrelations x*x;;\n")
        code, out, err = run(capsys, "check", str(path), "--json")
        assert code == 2
        error = json.loads(out)['error']
        assert error['code'] == "SyntaxError"
        assert error['line'] == 4


class TestRawText:

    def test_print(self, capsys):
        code, out, _ = run(capsys, "print", "jordan")
        assert code == 0
        assert out.startswith("field Q\nalgebra J\ngenerators x, y\n")

    def test_corpus_listing(self, capsys):
        code, out, _ = run(capsys, "corpus", "--json")
        names = [entry['name'] for entry in json.loads(out)['result']['entries']]
        assert code == 0
        assert "s2" in names

    def test_corpus_file(self, capsys):
        code, out, _ = run(capsys, "corpus", "poly2")
        assert code == 0
        assert "central q: x*x + y*y" in out

    def test_dual_presentation(self):
        report = run_command(["dual", "poly2"])
        assert report.result['generators'] == ["x_d", "y_d"]
        assert report.result['presentation'].startswith(f"field {Q.value}\n")
