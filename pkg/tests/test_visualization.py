"""
Testes da visualização de intervalos
"""

from src.cli import parse_kb_text, parse_probability_term
from src.entailment import bounds
from src.visualization import plot_bounds_intervals


def test_plot_writes_file(tmp_path, marginals_kb):
    query = parse_probability_term("P(a | b)", marginals_kb.vocab)
    not_conditionable = parse_kb_text("vars: a, b\nP(b) = 0\n")
    reports = [
        ("P(a | b)", bounds(marginals_kb, query)),
        ("P(a | b), P(b) = 0", bounds(not_conditionable, parse_probability_term("P(a | b)", not_conditionable.vocab))),
    ]
    filename = tmp_path / "intervalos.png"
    assert plot_bounds_intervals(reports, filename, "teste") == filename
    assert filename.stat().st_size > 0


def test_plot_failure_returns_none(tmp_path, marginals_kb):
    query = parse_probability_term("P(a | b)", marginals_kb.vocab)
    missing_dir = tmp_path / "nao_existe" / "x.png"
    assert plot_bounds_intervals([("q", bounds(marginals_kb, query))], missing_dir) is None
