"""
Testes da interface de linha de comando e do formato de base
"""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from src import config
from src.cli import load_kb, main, parse_kb_text, parse_number
from src.conditional_algebra import make_conditional, unconditional
from src.exceptions import KBFormatError
from src.formula import event_of

BASES_DIR = Path(__file__).resolve().parent.parent / "bases"


def bundled(name: str) -> str:
    return str(BASES_DIR / name)


def write_kb(tmp_path, text, name="base.kb"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out.strip()
    return code, json.loads(out), out


class TestKBFormat:
    def test_single_marginal(self):
        kb = parse_kb_text("vars: a\nP(a) = 0.7")
        assert len(kb) == 1
        assessment = kb.assessments[0]
        assert assessment.cond == unconditional(event_of("a", kb.vocab))
        assert assessment.alpha == Fraction(7, 10)

    def test_penguin_exact_rationals(self):
        kb = load_kb(bundled("penguin.kb"))
        assert kb.vocab.variables == ("f", "b", "p")
        assert [a.alpha for a in kb.assessments] == [Fraction(9, 10), Fraction(1), Fraction(0)]

    def test_numbers(self):
        assert parse_number("0.25") == Fraction(1, 4)
        assert parse_number(" 3/8 ") == Fraction(3, 8)
        assert parse_number(".5") == Fraction(1, 2)
        with pytest.raises(ValueError):
            parse_number("abc")

    def test_extra_top_level_bar(self):
        with pytest.raises(KBFormatError) as info:
            parse_kb_text("vars: a, b, c\nP(a | b | c) = 0.5\n")
        assert info.value.line == 2

    def test_parenthesized_disjunction_in_consequent(self):
        kb = parse_kb_text("vars: a, b, c\nP((a | b) | c) = 0.5\n")
        vocab = kb.vocab
        assert kb.assessments[0].cond == make_conditional(event_of("a | b", vocab), event_of("c", vocab))

    def test_comments_and_evidence(self):
        kb = parse_kb_text(
            "# base de teste\n"
            "vars: a, b, c   # três variáveis\n"
            "\n"
            "P(a | b) = 1/2\n"
            "evidence: b\n"
            "evidence: ~c\n"
        )
        assert len(kb) == 1
        assert kb.evidence == event_of("b & ~c", kb.vocab)

    @pytest.mark.parametrize("text, line", [
        ("vars: a\nvars: b\n", 2),
        ("P(a) = 0.5\n", 1),
        ("vars: a\nP(a) = 1.5\n", 2),
        ("vars: a\nP(z) = 0.5\n", 2),
        ("vars: a\nQ(a) = 0.5\n", 2),
        ("vars: a\nP(a) = meio\n", 2),
        ("vars: a\n\nP(a & ) = 0.5\n", 3),
        ("vars: a, a\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(KBFormatError) as info:
            parse_kb_text(text)
        assert info.value.line == line


class TestCheck:
    def test_consistent(self, capsys):
        assert main(["check", bundled("penguin.kb")]) == 0
        assert "consistente" in capsys.readouterr().out

    def test_inconsistent(self, capsys):
        assert main(["check", bundled("contradictory.kb")]) == 2
        out = capsys.readouterr().out
        assert "certificado" in out
        assert "#2" in out

    def test_json(self, capsys):
        code, payload, _ = run_json(capsys, ["check", bundled("contradictory.kb"), "--exact"])
        assert code == 2
        assert payload["feasible"] is False
        assert payload["infeasibility"] > 0

    def test_missing_file(self, tmp_path):
        assert main(["check", str(tmp_path / "nada.kb")]) == 1

    def test_usage_error(self):
        assert main(["check"]) == 1

    def test_file_not_in_utf8(self, tmp_path, capsys):
        path = tmp_path / "latin1.kb"
        path.write_bytes(b"vars: a\nP(a) = 0.5\n\xff\xfe\n")
        assert main(["check", str(path)]) == 1
        assert "linha 3" in capsys.readouterr().err
        with pytest.raises(KBFormatError) as info:
            load_kb(path)
        assert info.value.line == 3


class TestQuery:
    def test_penguin(self, capsys):
        code, payload, _ = run_json(capsys, ["query", bundled("penguin.kb"), "P(f | b & p)"])
        assert code == 0
        assert payload["lower"] == pytest.approx(0.0, abs=1e-9)
        assert payload["upper"] == pytest.approx(0.0, abs=1e-9)

    def test_marginals_schema(self, capsys):
        code, payload, raw = run_json(capsys, ["query", bundled("marginals.kb"), "P(a|b)", "--exact"])
        assert code == 0
        assert raw.startswith('{"feasible":true,"conditionable":true,"lower":')
        assert list(payload) == ["feasible", "conditionable", "lower", "upper"]
        assert (payload["lower"], payload["upper"]) == (0.4, 1.0)

    def test_float_endpoints_are_snapped(self, capsys):
        code, payload, raw = run_json(capsys, ["query", bundled("marginals.kb"), "P(a|b)"])
        assert code == 0
        assert raw.endswith('"upper":1.0}')
        assert payload["upper"] == 1.0
        assert payload["lower"] == pytest.approx(0.4, abs=1e-9)

    def test_empty_kb(self, tmp_path, capsys):
        path = write_kb(tmp_path, "vars: a\n")
        code, payload, _ = run_json(capsys, ["query", path, "P(a)"])
        assert code == 0
        assert (payload["lower"], payload["upper"]) == (0.0, 1.0)

    def test_exact_text_output(self, capsys):
        assert main(["query", bundled("marginals.kb"), "P(a | b)", "--exact"]) == 0
        out = capsys.readouterr().out
        assert "Limite inferior: 2/5" in out
        assert "Limite superior: 1" in out

    def test_not_conditionable(self, tmp_path, capsys):
        path = write_kb(tmp_path, "vars: a, b\nP(b) = 0\n")
        code, payload, _ = run_json(capsys, ["query", path, "P(a | b)"])
        assert code == 3
        assert payload == {"feasible": True, "conditionable": False, "lower": None, "upper": None}

    def test_infeasible(self, capsys):
        code, payload, _ = run_json(capsys, ["query", bundled("contradictory.kb"), "P(a)"])
        assert code == 2
        assert payload["feasible"] is False

    def test_bad_query(self, capsys):
        assert main(["query", bundled("marginals.kb"), "P(a | b | a)"]) == 1
        assert main(["query", bundled("marginals.kb"), "P(a | zeta)"]) == 1

    def test_degenerate_query(self):
        assert main(["query", bundled("marginals.kb"), "P(a | 0)"]) == 1

    def test_oracle(self, capsys):
        code, payload, _ = run_json(capsys, ["query", bundled("marginals.kb"), "P(a | b)", "--exact", "--oracle", "20"])
        assert code == 0
        assert payload["oracle"]["lower"] == pytest.approx(0.4)
        assert payload["oracle"]["upper"] == pytest.approx(1.0)
        assert payload["oracle"]["samples"] > 0

    def test_oracle_without_grid_point(self, tmp_path, capsys):
        path = write_kb(tmp_path, "vars: a\nP(a) = 1/3\n")
        assert main(["query", path, "P(a)", "--exact", "--oracle", "10"]) == 0
        assert "Oráculo" in capsys.readouterr().out

    @pytest.mark.parametrize("resolution", ["0", "-3", "dez"])
    def test_oracle_resolution_must_be_positive(self, resolution):
        assert main(["query", bundled("marginals.kb"), "P(a | b)", "--oracle", resolution]) == 1

    def test_evidence_file(self, capsys):
        code, payload, _ = run_json(capsys, ["query", bundled("evidence.kb"), "P(f | b)", "--exact"])
        assert code == 0
        assert (payload["lower"], payload["upper"]) == (0.0, 0.0)

    @pytest.mark.parametrize("name, text", [
        ("penguin.kb", "P(f | b & p)"),
        ("birds.kb", "P(f | b)"),
        ("birds.kb", "P(f | b & p)"),
        ("marginals.kb", "P(a | b)"),
        ("conditional_marginal.kb", "P(a)"),
        ("evidence.kb", "P(f | b)"),
        ("contradictory.kb", "P(a)"),
    ])
    def test_exact_and_float_agree_on_bundled_bases(self, capsys, name, text):
        code_float, fast, _ = run_json(capsys, ["query", bundled(name), text])
        code_exact, exact, _ = run_json(capsys, ["query", bundled(name), text, "--exact"])
        assert code_float == code_exact
        assert fast["feasible"] == exact["feasible"]
        assert fast["conditionable"] == exact["conditionable"]
        for key in ("lower", "upper"):
            if exact[key] is None:
                assert fast[key] is None
            else:
                assert fast[key] == pytest.approx(exact[key], abs=1e-6)


class TestCompare:
    def test_widened(self, capsys):
        assert main(["compare", bundled("birds.kb"), "P(f | b)", "p"]) == 0
        out = capsys.readouterr().out
        assert "Veredito: WIDENED" in out
        assert "Nota:" in out

    def test_unchanged(self, capsys):
        code, payload, _ = run_json(capsys, ["compare", bundled("birds.kb"), "P(f | b)", "1"])
        assert code == 0
        assert payload["verdict"] == "UNCHANGED"
        assert payload["base"] == payload["extended"]

    def test_shifted(self, capsys):
        code, payload, _ = run_json(capsys, ["compare", bundled("penguin.kb"), "P(f | b)", "p", "--exact"])
        assert code == 0
        assert payload["verdict"] == "SHIFTED"
        assert (payload["base"]["lower"], payload["base"]["upper"]) == (0.9, 0.9)
        assert (payload["extended"]["lower"], payload["extended"]["upper"]) == (0.0, 0.0)

    def test_undefined(self, capsys):
        code, payload, _ = run_json(capsys, ["compare", bundled("birds.kb"), "P(f | b)", "~b"])
        assert code == 0
        assert payload["verdict"] == "UNDEFINED"
        assert payload["extended"]["conditionable"] is False


class TestLawsCommand:
    def test_single_variable(self, capsys):
        code, payload, _ = run_json(capsys, ["laws", "--k", "1"])
        assert code == 0
        assert not any(payload["violations"].values())
        assert payload["structure"]["associativity_and"] == 0


class TestArtifacts:
    def test_save_and_plot(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(config, "RESULTS_DIR", tmp_path / "resultados")
        assert main(["compare", bundled("penguin.kb"), "P(f | b)", "p", "--exact", "--save", "--plot"]) == 0
        saved = list((tmp_path / "resultados").glob("compare_*.json"))
        assert len(saved) == 1
        data = json.loads(saved[0].read_text(encoding="utf-8"))
        assert data["metadata"]["mode"] == "exact"
        assert data["verdict"] == "SHIFTED"
        assert data["reports"]["extended"]["witness_low"] is not None
        assert list((tmp_path / "resultados").glob("compare_*.png"))
