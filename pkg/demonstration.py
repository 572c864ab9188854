#!/usr/bin/env python3
"""
DEMONSTRAÇÃO - LÓGICA CONDICIONAL E ENTAILMENT PROBABILÍSTICO

Percorre o sistema de ponta a ponta:
- álgebra de eventos condicionais e suas leis
- limites de P(a|b) a partir de uma base de avaliações
- não monotonicidade: evidência extra pode deslocar o intervalo
- conferência dos limites pelo oráculo de força bruta

Resultados (JSON e PNG) vão para resultados/.
"""

import json
import os
import sys
from datetime import datetime

# Raiz do projeto no path para importar o pacote src
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import load_kb, parse_probability_term  # noqa: E402
from src.config import BASES_DIR, OUTPUT_CONFIG, ensure_results_dir  # noqa: E402
from src.numeric import EXACT  # noqa: E402


def print_header(title: str, width: int = 80):
    """Imprimir cabeçalho formatado"""
    print("\n" + "=" * width)
    print(f"{' ' * ((width - len(title)) // 2)}{title}")
    print("=" * width)


def demonstrate_algebra(summary: dict) -> bool:
    """Conectivos, ordem e não comparabilidade de (a|b) e (a|bc)"""
    print_header("🧮 ÁLGEBRA DE EVENTOS CONDICIONAIS")

    from src.conditional_algebra import comparable, interval_of, make_conditional, truth_profile
    from src.formula import Vocabulary, event_of, event_to_dnf

    vocab = Vocabulary(("a", "b", "c"))
    a, b, c = (event_of(name, vocab) for name in vocab.variables)
    broad, narrow = make_conditional(a, b), make_conditional(a, b & c)

    interval = interval_of(broad)
    print(f"  • (a|b) = [{event_to_dnf(interval.low)}, {event_to_dnf(interval.high)}]")
    print(f"  • perfil trivalente de (a|b):  {truth_profile(broad)}")
    print(f"  • (a|b)·(a|bc) = {broad & narrow}")
    print(f"  • (a|b) ∨ (a|bc) = {broad | narrow}")

    is_comparable = comparable(broad, narrow)
    mark = "❌ comparáveis" if is_comparable else "✅ não comparáveis"
    print(f"  • (a|b) e (a|bc): {mark}")
    summary["algebra"] = {"comparable_a_b_vs_a_bc": is_comparable}
    return not is_comparable


def demonstrate_laws(summary: dict) -> bool:
    """Varredura exaustiva das leis em k = 2"""
    print_header("📐 LEIS DA ÁLGEBRA (k = 2)")

    from src.oracle import LAWS, algebra_structure_report, exhaustive_law_check

    violations = {law: len(exhaustive_law_check(2, law)) for law in LAWS}
    for law, count in violations.items():
        print(f"  {'✅' if count == 0 else '❌'} {law}: {count} violações")

    structure = algebra_structure_report(2)
    print(f"\n  Estrutura sobre {structure['triples']} triplas:")
    for key, value in structure.items():
        if key not in ("conditionals", "triples"):
            print(f"  • {key}: {value} falhas")

    summary["laws"] = {"violations": violations, "structure": structure}
    return not any(violations.values())


def demonstrate_bounds(summary: dict) -> bool:
    """Limites exatos para as bases de exemplo, conferidos pelo oráculo"""
    print_header("📊 LIMITES DE PROBABILIDADE CONDICIONAL")

    from src.entailment import bounds
    from src.oracle import GridSpec, grid_bounds

    cases = [
        ("marginals.kb", "P(a | b)"),
        ("conditional_marginal.kb", "P(a)"),
        ("birds.kb", "P(f | b & p)"),
        ("penguin.kb", "P(f | b & p)"),
    ]
    summary["bounds"] = {}
    all_match = True
    for name, text in cases:
        kb = load_kb(BASES_DIR / name)
        query = parse_probability_term(text, kb.vocab)
        report = bounds(kb, query, EXACT)
        grid = grid_bounds(kb, query, GridSpec(20, 0), EXACT)
        match = (grid.lower, grid.upper) == (report.lower, report.upper)
        all_match &= match
        print(f"  • {name:<24} {text:<14} LP [{report.lower}, {report.upper}]   "
              f"grade [{grid.lower}, {grid.upper}] {'✅' if match else '⚠️'}")
        summary["bounds"][f"{name} {text}"] = {
            "lower": str(report.lower),
            "upper": str(report.upper),
            "grid_lower": str(grid.lower),
            "grid_upper": str(grid.upper),
        }
    return all_match


def demonstrate_non_monotonicity(summary: dict) -> bool:
    """Aves voam, pinguins não: evidência p desloca P(f|b)"""
    print_header("🐧 NÃO MONOTONICIDADE SOB EVIDÊNCIA")

    from src.entailment import compare, compare_verdict
    from src.formula import event_of
    from src.visualization import plot_bounds_intervals

    reports = []
    verdicts = {}
    for name in ("birds.kb", "penguin.kb"):
        kb = load_kb(BASES_DIR / name)
        query = parse_probability_term("P(f | b)", kb.vocab)
        base, extended = compare(kb, query, event_of("p", kb.vocab), EXACT)
        verdict = compare_verdict(base, extended)
        verdicts[name] = verdict.value
        print(f"  • {name:<12} P(f|b) = [{base.lower}, {base.upper}]   "
              f"P(f|b∧p) = [{extended.lower}, {extended.upper}]   {verdict.value}")
        reports.extend([(f"{name}: P(f | b)", base), (f"{name}: P(f | b ∧ p)", extended)])

    timestamp = datetime.now().strftime(OUTPUT_CONFIG["timestamp_format"])
    filename = ensure_results_dir() / f"demonstration_compare_{timestamp}.png"
    if plot_bounds_intervals(reports, filename, "Evidência extra e o intervalo de P(f | b)"):
        print(f"\n📁 Visualização: {filename}")

    summary["non_monotonicity"] = verdicts
    return verdicts == {"birds.kb": "WIDENED", "penguin.kb": "SHIFTED"}


def main():
    """Executa todas as demonstrações e salva o resumo"""
    print_header("🔗 LÓGICA CONDICIONAL E ENTAILMENT PROBABILÍSTICO")
    print(f"📅 {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")

    summary: dict = {}
    demos = [
        ("Álgebra condicional", demonstrate_algebra),
        ("Leis da álgebra", demonstrate_laws),
        ("Limites por programação linear", demonstrate_bounds),
        ("Não monotonicidade", demonstrate_non_monotonicity),
    ]

    results = {}
    for demo_name, demo_function in demos:
        try:
            print(f"\n🔄 Executando: {demo_name}...")
            results[demo_name] = demo_function(summary)
            print(f"{'✅' if results[demo_name] else '❌'} {demo_name}")
        except Exception as e:
            print(f"❌ {demo_name}: Erro - {e}")
            results[demo_name] = False

    print_header("🏆 RESUMO FINAL")
    successful = sum(results.values())
    print(f"📊 Demonstrações bem-sucedidas: {successful}/{len(results)}")

    summary["results"] = results
    timestamp = datetime.now().strftime(OUTPUT_CONFIG["timestamp_format"])
    filename = ensure_results_dir() / f"demonstration_{timestamp}.json"
    with open(filename, "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=OUTPUT_CONFIG["json_indent"], ensure_ascii=False)
    print(f"💾 Resumo salvo em: {filename}")
    return 0 if successful == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
