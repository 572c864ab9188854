"""
Interface de linha de comando

Formato da base de conhecimento (UTF-8):

    # comentário
    vars: f, b, p
    P(f | b) = 0.9
    P(b | p) = 1
    P(f | p) = 0/1
    P(b) = 1/2            (antecedente 1)
    evidence: b & ~f      (linhas conjugadas entre si)

A barra condicional é a única '|' de nível superior dentro de P(...);
disjunções nesse nível precisam de parênteses.

Códigos de saída: 0 sucesso, 1 uso/E-S/sintaxe, 2 base inviável,
3 consulta não condicionável.
"""

import argparse
import json
import logging
import re
import sys
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .conditional_algebra import ConditionalEvent, make_conditional
from .config import OUTPUT_CONFIG, PLOT_CONFIG, ensure_results_dir
from .entailment import (
    BoundsReport,
    ConditionalAssessment,
    KnowledgeBase,
    Verdict,
    bounds,
    compare,
    compare_verdict,
    feasibility_check,
)
from .exceptions import (
    ConditionalLogicError,
    FormulaSyntaxError,
    KBFormatError,
    NoFeasibleSampleError,
)
from .formula import Vocabulary, event_of, event_to_dnf, split_top_level_bar
from .numeric import NumericBackend, get_backend, to_fraction
from .oracle import LAWS, GridSpec, algebra_structure_report, exhaustive_law_check, grid_bounds

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_NOT_CONDITIONABLE = 3

VARS_LINE = re.compile(r"^vars\s*:(.*)$")
EVIDENCE_LINE = re.compile(r"^evidence\s*:(.*)$")
NUMBER = re.compile(r"^\s*(\d+(\.\d*)?|\.\d+)\s*(/\s*\d+\s*)?$")

CONTRAST_NOTE = (
    "Nota: acrescentar avaliações à base só estreita o intervalo; acrescentar "
    "evidência muda a própria consulta e pode deslocá-lo ou alargá-lo."
)


# ---------------------------------------------------------------------------
# Leitura da base
# ---------------------------------------------------------------------------

def parse_number(text: str) -> Fraction:
    """Decimal ou racional p/q"""
    if not NUMBER.match(text):
        raise ValueError(f"número inválido: '{text.strip()}'")
    return to_fraction(text)


def parse_probability_term(text: str, vocab: Vocabulary) -> ConditionalEvent:
    """'P(f1 | f2)' ou 'P(f1)' como condicional normalizado"""
    stripped = text.strip()
    if not (stripped.startswith("P(") and stripped.endswith(")")):
        raise FormulaSyntaxError("esperado P(<fórmula> | <fórmula>) ou P(<fórmula>)", 0, text)
    inner = stripped[2:-1]
    parts = split_top_level_bar(inner)
    if len(parts) > 2:
        raise FormulaSyntaxError(
            "mais de uma barra '|' de nível superior em P(...); "
            "parentize a disjunção, ex. P((a | b) | c)",
            0,
            text,
        )
    consequent = event_of(parts[0], vocab)
    antecedent = event_of(parts[1], vocab) if len(parts) == 2 else vocab.one()
    return make_conditional(consequent, antecedent)


def parse_kb_text(text: str) -> KnowledgeBase:
    """Converte o texto do arquivo em KnowledgeBase"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))

    vocab: Optional[Vocabulary] = None
    for number, content in lines:
        match = VARS_LINE.match(content)
        if match is None:
            continue
        if vocab is not None:
            raise KBFormatError("declaração 'vars:' duplicada", number)
        names = [name.strip() for name in match.group(1).split(",") if name.strip()]
        try:
            vocab = Vocabulary(tuple(names))
        except ConditionalLogicError as e:
            raise KBFormatError(str(e), number) from e
    if vocab is None:
        raise KBFormatError("declaração 'vars:' ausente", lines[0][0] if lines else 1)

    assessments: List[ConditionalAssessment] = []
    evidence = vocab.one()
    for number, content in lines:
        if VARS_LINE.match(content):
            continue
        try:
            match = EVIDENCE_LINE.match(content)
            if match is not None:
                evidence = evidence & event_of(match.group(1), vocab)
                continue
            if not content.startswith("P(") or "=" not in content:
                raise KBFormatError(f"linha não reconhecida: '{content}'", number)
            term, value = content.rsplit("=", 1)
            try:
                alpha = parse_number(value)
            except (ValueError, ZeroDivisionError) as e:
                raise KBFormatError(str(e), number) from e
            assessments.append(ConditionalAssessment(parse_probability_term(term, vocab), alpha))
        except KBFormatError:
            raise
        except ConditionalLogicError as e:
            raise KBFormatError(str(e), number) from e

    logger.info(f"Base lida: {vocab.size} variáveis, {len(assessments)} avaliações")
    return KnowledgeBase(vocab, tuple(assessments), evidence)


def load_kb(path) -> KnowledgeBase:
    """Lê a base de um arquivo UTF-8"""
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise KBFormatError(f"arquivo não está em UTF-8 (byte {e.start})", raw[:e.start].count(b"\n") + 1) from e
    return parse_kb_text(text)


def positive_int(text: str) -> int:
    """Tipo argparse para resoluções N >= 1"""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"inteiro inválido: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"a resolução deve ser >= 1, recebido {value}")
    return value


# ---------------------------------------------------------------------------
# Saída
# ---------------------------------------------------------------------------

def _dumps(payload) -> str:
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def _interval_text(report: BoundsReport) -> str:
    if not report.feasible:
        return "base inviável"
    if not report.conditionable:
        return "não condicionável"
    return f"[{report.backend.display(report.lower)}, {report.backend.display(report.upper)}]"


def _print_report(label: str, report: BoundsReport) -> None:
    backend = report.backend
    print(f"Consulta: {label}   [modo: {backend.name}]")
    print(f"  Viável: {'✅ sim' if report.feasible else '❌ não'}")
    if report.feasible:
        print(f"  Condicionável: {'✅ sim' if report.conditionable else '❌ não'}")
    if report.has_bounds:
        print(f"  Limite inferior: {backend.display(report.lower)}")
        print(f"  Limite superior: {backend.display(report.upper)}")


def _timestamp() -> str:
    return datetime.now().strftime(OUTPUT_CONFIG["timestamp_format"])


def _save_structured_results(command: str, kb: KnowledgeBase, backend: NumericBackend,
                             reports: Dict[str, BoundsReport], extra: Optional[dict] = None) -> Path:
    """Salva o relatório em JSON estruturado em resultados/"""
    data = {
        "metadata": {
            "timestamp": _timestamp(),
            "version": __version__,
            "command": command,
            "mode": backend.name,
        },
        "knowledge_base": {
            "vars": list(kb.vocab.variables),
            "assessments": [str(a) for a in kb.assessments],
            "evidence": event_to_dnf(kb.evidence),
        },
        "reports": {},
    }
    for name, report in reports.items():
        entry = report.to_dict()
        entry["witness_low"] = report.witness_low.to_pairs() if report.witness_low else None
        entry["witness_high"] = report.witness_high.to_pairs() if report.witness_high else None
        data["reports"][name] = entry
    if extra:
        data.update(extra)
    filename = ensure_results_dir() / f"{command}_{data['metadata']['timestamp']}.json"
    with open(filename, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=OUTPUT_CONFIG["json_indent"], ensure_ascii=False)
    logger.info(f"Resultados salvos em {filename}")
    return filename


def _plot(command: str, reports) -> None:
    from .visualization import plot_bounds_intervals

    filename = ensure_results_dir() / f"{command}_{_timestamp()}.{PLOT_CONFIG['save_format']}"
    if plot_bounds_intervals(reports, filename) is not None:
        print(f"📁 Visualização: {filename}")


def _label(query_text: str, kb: KnowledgeBase) -> str:
    if kb.evidence.is_one:
        return query_text
    return f"{query_text}  (evidência: {event_to_dnf(kb.evidence)})"


# ---------------------------------------------------------------------------
# Comandos
# ---------------------------------------------------------------------------

def cmd_check(path, flags) -> int:
    """Viabilidade da base; 0 se viável, 2 se não"""
    kb = load_kb(path)
    backend = get_backend(flags.exact)
    report = feasibility_check(kb, backend)
    if flags.json:
        print(_dumps({"feasible": report.feasible, "infeasibility": float(report.infeasibility)}))
    else:
        print(f"Base: {path}   [modo: {backend.name}]")
        print(f"  Avaliações: {len(kb)}")
        if report.feasible:
            print("  ✅ Base consistente: existe modelo satisfazendo todas as avaliações")
        else:
            print("  ❌ Base inconsistente")
            print(f"  Valor ótimo da fase 1 (certificado): {backend.display(report.infeasibility)}")
            if report.first_inconsistent is not None:
                culprit = kb.assessments[report.first_inconsistent]
                print(f"  Primeira avaliação em conflito: #{report.first_inconsistent + 1} {culprit}")
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _exit_code(report: BoundsReport) -> int:
    if not report.feasible:
        return EXIT_INFEASIBLE
    if not report.conditionable:
        return EXIT_NOT_CONDITIONABLE
    return EXIT_OK


def cmd_query(path, query_text: str, flags) -> int:
    """Limites de uma consulta P(f1 | f2) sob a base"""
    kb = load_kb(path)
    backend = get_backend(flags.exact)
    query = parse_probability_term(query_text, kb.vocab)
    report = bounds(kb, query, backend)

    oracle, oracle_note = None, None
    if flags.oracle is not None and report.has_bounds:
        spec = GridSpec.for_backend(flags.oracle, backend)
        try:
            oracle = grid_bounds(kb, query, spec, backend, seed=flags.seed)
        except NoFeasibleSampleError as e:
            logger.warning(f"Oráculo sem amostras viáveis: {e}")
            oracle_note = str(e)

    if flags.json:
        payload = report.to_dict()
        if oracle is not None:
            payload["oracle"] = {
                "lower": float(oracle.lower),
                "upper": float(oracle.upper),
                "samples": oracle.sample_count,
            }
        print(_dumps(payload))
    else:
        _print_report(_label(query_text, kb), report)
        if oracle is not None:
            print(f"  Oráculo (N={flags.oracle}): [{backend.display(oracle.lower)}, "
                  f"{backend.display(oracle.upper)}] em {oracle.sample_count} composições viáveis")
        elif oracle_note is not None:
            print(f"  Oráculo (N={flags.oracle}): {oracle_note}")

    if flags.save:
        _save_structured_results("query", kb, backend, {"query": report})
    if flags.plot:
        _plot("query", [(query_text, report)])
    return _exit_code(report)


def cmd_compare(path, base_query: str, extra_formula: str, flags) -> int:
    """Limites de (a|b) e de (a|b ∧ e) lado a lado, com veredito"""
    kb = load_kb(path)
    backend = get_backend(flags.exact)
    query = parse_probability_term(base_query, kb.vocab)
    extra = event_of(extra_formula, kb.vocab)
    base, extended = compare(kb, query, extra, backend)
    verdict = compare_verdict(base, extended)

    if flags.json:
        print(_dumps({"base": base.to_dict(), "extended": extended.to_dict(), "verdict": verdict.value}))
    else:
        extended_label = f"{base_query} ∧ {extra_formula}"
        print(f"Base:      {base_query:<24} {_interval_text(base)}")
        print(f"Estendida: {extended_label:<24} {_interval_text(extended)}")
        print(f"Veredito: {verdict.value}")
        if verdict is not Verdict.UNDEFINED:
            print(CONTRAST_NOTE)

    if flags.save:
        _save_structured_results("compare", kb, backend, {"base": base, "extended": extended},
                                 {"verdict": verdict.value})
    if flags.plot:
        _plot("compare", [(base_query, base), (f"{base_query} ∧ {extra_formula}", extended)])
    return _exit_code(base)


def cmd_laws(flags) -> int:
    """Verificação exaustiva das leis da álgebra condicional"""
    results = {law: len(exhaustive_law_check(flags.k, law, seed=flags.seed)) for law in LAWS}
    structure = algebra_structure_report(flags.k)
    if flags.json:
        print(_dumps({"violations": results, "structure": structure}))
    else:
        print(f"Leis da álgebra condicional (k = {flags.k})")
        for law, count in results.items():
            mark = "✅" if count == 0 else "❌"
            print(f"  {mark} {law}: {count} violações")
        print(f"Estrutura ({structure['triples']} triplas):")
        for key in ("associativity_and", "associativity_or",
                    "distributivity_and_over_or", "distributivity_or_over_and"):
            print(f"  • {key}: {structure[key]} falhas")
    return EXIT_OK if not any(results.values()) else EXIT_USAGE


# ---------------------------------------------------------------------------
# Entrada
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="saída JSON estável")
    common.add_argument("--exact", action="store_true", help="aritmética racional exata")
    common.add_argument("--seed", type=int, default=0, help="semente (u64) para amostragens")
    common.add_argument("--verbose", action="store_true", help="log em nível INFO")

    outputs = argparse.ArgumentParser(add_help=False)
    outputs.add_argument("--save", action="store_true", help="salva JSON em resultados/")
    outputs.add_argument("--plot", action="store_true", help="salva gráfico em resultados/")

    parser = argparse.ArgumentParser(
        prog="logica-condicional",
        description="Limites de probabilidade condicional por programação linear",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="verifica a consistência da base")
    check.add_argument("kb")

    query = sub.add_parser("query", parents=[common, outputs], help="limites de P(a | b)")
    query.add_argument("kb")
    query.add_argument("query")
    query.add_argument("--oracle", type=positive_int, metavar="N", help="confere com a grade de resolução 1/N")

    comp = sub.add_parser("compare", parents=[common, outputs], help="efeito de evidência extra")
    comp.add_argument("kb")
    comp.add_argument("query")
    comp.add_argument("extra")

    laws = sub.add_parser("laws", parents=[common], help="verifica as leis da álgebra condicional")
    laws.add_argument("--k", type=int, default=2, choices=(1, 2))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        if args.command == "check":
            return cmd_check(args.kb, args)
        if args.command == "query":
            return cmd_query(args.kb, args.query, args)
        if args.command == "compare":
            return cmd_compare(args.kb, args.query, args.extra, args)
        return cmd_laws(args)
    except OSError as e:
        logger.error(f"Erro de E/S: {e}")
        print(f"❌ Erro de E/S: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionalLogicError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
