"""
Entailment probabilístico condicional

Dada uma base K de avaliações P(a_i|b_i) = α_i e uma evidência E, calcula
limites justos para P(a|b ∧ E):

1. partição canônica gerada por todos os a_i b_i, b_i e pela consulta;
2. matriz de codificação Π (0, 1 ou α_i conforme c_j ≤ a'_i b_i, a_i b_i
   ou b'_i), equivalente a P(a_i b_i) = α_i P(b_i) pela identidade
   P(a|b) = P(ab) + P(a|b) P(b');
3. o objetivo fracionário P(a*)/P(b*) vira linear com y = Λ / P(b*),
   e o simplex dá mínimo e máximo.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .conditional_algebra import ConditionalEvent, conditional_to_text, make_conditional
from .config import DEFAULT_ENGINE, EngineConfig
from .exceptions import (
    DegenerateQueryError,
    EncodingMismatchError,
    InvalidAssessmentError,
    VocabularyMismatchError,
    ZeroAntecedentError,
)
from .formula import Event, Vocabulary, canonical_partition, leq
from .lp import Constraint, LinearProgram, LPOutcome, LPStatus, solve
from .numeric import FLOAT, Number, NumericBackend, to_fraction
from .probability import ProbabilityModel

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Tipos
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionalAssessment:
    """P(a_i|b_i) = alpha, com alpha guardado como racional exato"""
    cond: ConditionalEvent
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_fraction(self.alpha))
        if not 0 <= self.alpha <= 1:
            raise InvalidAssessmentError(f"alpha = {self.alpha} fora de [0, 1]")
        if self.cond.antecedent.is_zero:
            raise InvalidAssessmentError("avaliação com antecedente identicamente nulo")

    def __str__(self) -> str:
        return f"P{conditional_to_text(self.cond)} = {self.alpha}"


@dataclass(frozen=True)
class KnowledgeBase:
    """Teoria T = <K, E>: avaliações condicionais e evidência conjunta"""
    vocab: Vocabulary
    assessments: Tuple[ConditionalAssessment, ...] = ()
    evidence: Optional[Event] = None

    def __post_init__(self):
        object.__setattr__(self, "assessments", tuple(self.assessments))
        if self.evidence is None:
            object.__setattr__(self, "evidence", self.vocab.one())
        if self.evidence.vocab != self.vocab:
            raise VocabularyMismatchError("evidência fora do vocabulário da base")
        for assessment in self.assessments:
            if assessment.cond.vocab != self.vocab:
                raise VocabularyMismatchError("avaliação fora do vocabulário da base")

    def with_assessment(self, assessment: ConditionalAssessment) -> "KnowledgeBase":
        return replace(self, assessments=self.assessments + (assessment,))

    def with_evidence(self, event: Event) -> "KnowledgeBase":
        return replace(self, evidence=self.evidence & event)

    def prefix(self, count: int) -> "KnowledgeBase":
        return replace(self, assessments=self.assessments[:count])

    def __len__(self) -> int:
        return len(self.assessments)


class PiTag(str, Enum):
    ZERO = "0"
    ONE = "1"
    ALPHA_SLOT = "α"


@dataclass(frozen=True)
class ConstraintSystem:
    """Partição canônica (m células) e matriz de codificação Π (n x m)"""
    cells: Tuple[Event, ...]
    pi: Tuple[Tuple[PiTag, ...], ...]
    alphas: Tuple[Fraction, ...]
    query: ConditionalEvent
    query_tags: Tuple[PiTag, ...]

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def n(self) -> int:
        return len(self.pi)

    def cells_below(self, event: Event) -> List[int]:
        return [j for j, cell in enumerate(self.cells) if leq(cell, event)]

    def pi_matrix(self, backend: NumericBackend = FLOAT) -> list:
        """Π numérico: α_i substitui ALPHA_SLOT"""
        values = {PiTag.ZERO: 0, PiTag.ONE: 1}
        return [
            [backend.number(alpha if tag is PiTag.ALPHA_SLOT else values[tag]) for tag in row]
            for row, alpha in zip(self.pi, self.alphas)
        ]


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    infeasibility: Number
    first_inconsistent: Optional[int] = None
    witness: Optional[ProbabilityModel] = None


class Verdict(str, Enum):
    WIDENED = "WIDENED"
    NARROWED = "NARROWED"
    SHIFTED = "SHIFTED"
    UNCHANGED = "UNCHANGED"
    UNDEFINED = "UNDEFINED"


@dataclass(frozen=True)
class BoundsReport:
    """Limites de P(a*|b*) e os modelos que os atingem"""
    feasible: bool
    conditionable: bool
    lower: Optional[Number] = None
    upper: Optional[Number] = None
    witness_low: Optional[ProbabilityModel] = None
    witness_high: Optional[ProbabilityModel] = None
    backend: NumericBackend = FLOAT
    max_antecedent_mass: Optional[Number] = None
    infeasibility: Number = 0
    query: Optional[ConditionalEvent] = None

    @property
    def has_bounds(self) -> bool:
        return self.lower is not None and self.upper is not None

    def to_dict(self) -> Dict[str, object]:
        """Esquema JSON estável: feasible, conditionable, lower, upper"""
        return {
            "feasible": self.feasible,
            "conditionable": self.conditionable,
            "lower": None if self.lower is None else float(self.lower),
            "upper": None if self.upper is None else float(self.upper),
        }


# ---------------------------------------------------------------------------
# Sistema de restrições
# ---------------------------------------------------------------------------

def _tag_row(cells: Sequence[Event], cond: ConditionalEvent) -> Tuple[PiTag, ...]:
    falsifier = cond.falsifier
    outside = ~cond.antecedent
    tags = []
    for cell in cells:
        if leq(cell, cond.numerator):
            tags.append(PiTag.ONE)
        elif leq(cell, falsifier):
            tags.append(PiTag.ZERO)
        elif leq(cell, outside):
            tags.append(PiTag.ALPHA_SLOT)
        else:
            raise EncodingMismatchError("célula não decomponível para a linha da matriz Π")
    return tuple(tags)


def effective_query(kb: KnowledgeBase, query: ConditionalEvent) -> ConditionalEvent:
    """(a | b ∧ E): a evidência entra no antecedente da consulta"""
    return make_conditional(query.numerator, query.antecedent & kb.evidence)


def build_system(kb: KnowledgeBase, query: ConditionalEvent) -> ConstraintSystem:
    """Partição canônica sobre os 2(n+1) eventos e a matriz Π"""
    if query.vocab != kb.vocab:
        raise VocabularyMismatchError("consulta fora do vocabulário da base")
    if query.antecedent.is_zero:
        raise DegenerateQueryError("antecedente da consulta é identicamente 0")
    target = effective_query(kb, query)
    events: List[Event] = []
    for assessment in kb.assessments:
        events.extend([assessment.cond.numerator, assessment.cond.antecedent])
    events.extend([target.numerator, target.antecedent])
    cells = tuple(canonical_partition(events, kb.vocab))
    pi = tuple(_tag_row(cells, a.cond) for a in kb.assessments)
    logger.info(f"Sistema: {len(kb.assessments)} linhas, {len(cells)} células")
    system = ConstraintSystem(
        cells=cells,
        pi=pi,
        alphas=tuple(a.alpha for a in kb.assessments),
        query=target,
        query_tags=(),
    )
    return replace(system, query_tags=query_row(system))


def query_row(sys: ConstraintSystem) -> Tuple[PiTag, ...]:
    """Linha de Π da consulta, marcada como as linhas da base"""
    return _tag_row(sys.cells, sys.query)


def _mass_over(tags: Sequence[PiTag], masses: Sequence[Number], wanted: Tuple[PiTag, ...]):
    total = 0
    for tag, mass in zip(tags, masses):
        if tag in wanted:
            total = total + mass
    return total


def row_residuals(sys: ConstraintSystem, masses: Sequence[Number], i: int) -> Tuple[Number, Number]:
    """
    Resíduo da linha i nas duas formas: |Σ_j Λ_j Π_ij - α_i| e
    |P(a_i b_i) - α_i P(b_i)|
    """
    if not 0 <= i < sys.n:
        raise IndexError(f"linha {i} fora do intervalo [0, {sys.n})")
    if len(masses) != sys.m:
        raise EncodingMismatchError("vetor de massas com tamanho diferente do número de células")
    tags, alpha = sys.pi[i], sys.alphas[i]
    if not all(isinstance(x, Fraction) for x in masses):
        alpha = float(alpha)
    pi_form = 0
    for tag, mass in zip(tags, masses):
        if tag is PiTag.ONE:
            pi_form = pi_form + mass
        elif tag is PiTag.ALPHA_SLOT:
            pi_form = pi_form + alpha * mass
    pi_form = abs(pi_form - alpha)
    p_ab = _mass_over(tags, masses, (PiTag.ONE,))
    p_b = _mass_over(tags, masses, (PiTag.ONE, PiTag.ZERO))
    product_form = abs(p_ab - alpha * p_b)
    return pi_form, product_form


def row_residual(sys: ConstraintSystem, masses: Sequence[Number], i: int,
                 config: Optional[EngineConfig] = None) -> Number:
    """Resíduo da linha i, com as duas formas conferidas entre si"""
    config = config or DEFAULT_ENGINE
    pi_form, product_form = row_residuals(sys, masses, i)
    exact = all(isinstance(x, Fraction) for x in masses)
    tolerance = 0 if exact else config.identity_tolerance
    if abs(pi_form - product_form) > tolerance:
        raise EncodingMismatchError(
            f"linha {i}: forma Π {pi_form} difere da forma produto {product_form}"
        )
    return product_form


def query_value_from_masses(sys: ConstraintSystem, masses: Sequence[Number]) -> Number:
    """P(a*|b*) para um modelo concreto, pela linha da consulta em Π"""
    numerator = _mass_over(sys.query_tags, masses, (PiTag.ONE,))
    denominator = _mass_over(sys.query_tags, masses, (PiTag.ONE, PiTag.ZERO))
    if denominator <= 0:
        raise ZeroAntecedentError("P(b*) = 0 no modelo")
    return numerator / denominator


# ---------------------------------------------------------------------------
# Programas lineares
# ---------------------------------------------------------------------------

def _homogeneous_rows(sys: ConstraintSystem) -> List[Constraint]:
    """Σ_{ONE} x - α Σ_{ONE ∪ ZERO} x = 0 (vale para Λ e para y)"""
    rows = []
    for tags, alpha in zip(sys.pi, sys.alphas):
        coeffs = []
        for tag in tags:
            if tag is PiTag.ONE:
                coeffs.append(1 - alpha)
            elif tag is PiTag.ZERO:
                coeffs.append(-alpha)
            else:
                coeffs.append(Fraction(0))
        rows.append(Constraint(tuple(coeffs), "=", 0))
    return rows


def _indicator(sys: ConstraintSystem, tags: Sequence[PiTag], wanted: Tuple[PiTag, ...]) -> Tuple[int, ...]:
    return tuple(1 if tag in wanted else 0 for tag in tags)


def _model_from_point(sys: ConstraintSystem, point: Sequence[Number],
                      backend: NumericBackend) -> ProbabilityModel:
    total = backend.total(point)
    masses = [x / total for x in point]
    return ProbabilityModel(sys.cells, tuple(masses), backend)


def _feasibility_lp(sys: ConstraintSystem) -> LinearProgram:
    rows = _homogeneous_rows(sys)
    rows.append(Constraint(tuple([1] * sys.m), "=", 1))
    return LinearProgram(tuple([0] * sys.m), tuple(rows), "min")


def _system_for_kb(kb: KnowledgeBase) -> ConstraintSystem:
    return build_system(kb, make_conditional(kb.vocab.one(), kb.vocab.one()))


def feasibility_check(kb: KnowledgeBase, backend: NumericBackend = FLOAT,
                      config: Optional[EngineConfig] = None,
                      locate: bool = True) -> FeasibilityReport:
    """Fase 1 sobre {Λ >= 0, ΣΛ = 1, P(a_i b_i) = α_i P(b_i)}"""
    sys = _system_for_kb(kb)
    outcome = solve(_feasibility_lp(sys), backend, config)
    if outcome.optimal:
        witness = _model_from_point(sys, outcome.point, backend)
        return FeasibilityReport(True, outcome.infeasibility, None, witness)
    logger.info(f"Base inconsistente (fase 1 = {outcome.infeasibility})")
    first = first_inconsistent_row(kb, backend, config) if locate else None
    return FeasibilityReport(False, outcome.infeasibility, first, None)


def feasible(kb: KnowledgeBase, backend: NumericBackend = FLOAT,
             config: Optional[EngineConfig] = None) -> bool:
    return feasibility_check(kb, backend, config, locate=False).feasible


def first_inconsistent_row(kb: KnowledgeBase, backend: NumericBackend = FLOAT,
                           config: Optional[EngineConfig] = None) -> Optional[int]:
    """Índice da avaliação que torna inconsistente o prefixo da base"""
    for count in range(1, len(kb) + 1):
        if not feasibility_check(kb.prefix(count), backend, config, locate=False).feasible:
            return count - 1
    return None


def _solve_pair(programs: Sequence[LinearProgram], backend: NumericBackend,
                config: EngineConfig) -> List[LPOutcome]:
    if config.parallel_bounds:
        with ThreadPoolExecutor(max_workers=len(programs)) as pool:
            return list(pool.map(lambda lp: solve(lp, backend, config), programs))
    return [solve(lp, backend, config) for lp in programs]


def _clamp(value: Number, backend: NumericBackend, tolerance: float) -> Number:
    """Restringe a [0, 1]; no modo float, valores a menos de tolerance de 0 ou 1 viram o extremo"""
    if backend.exact:
        return value
    value = min(1.0, max(0.0, float(value)))
    if value <= tolerance:
        return 0.0
    if value >= 1.0 - tolerance:
        return 1.0
    return value


def bounds(kb: KnowledgeBase, query: ConditionalEvent, backend: NumericBackend = FLOAT,
           config: Optional[EngineConfig] = None) -> BoundsReport:
    """
    Limites justos de P(a*|b*) sobre os modelos viáveis com P(b*) > 0.

    Com y = Λ / P(b*): linhas homogêneas da base, Σ_{b*} y = 1 e
    Σ_j y_j >= 1; minimiza e maximiza Σ_{a*} y.
    """
    config = config or DEFAULT_ENGINE
    sys = build_system(kb, query)
    target = sys.query

    feasibility = solve(_feasibility_lp(sys), backend, config)
    if not feasibility.optimal:
        logger.info("Base inviável: sem limites")
        return BoundsReport(False, False, backend=backend,
                            infeasibility=feasibility.infeasibility, query=target)

    antecedent = _indicator(sys, sys.query_tags, (PiTag.ONE, PiTag.ZERO))
    numerator = _indicator(sys, sys.query_tags, (PiTag.ONE,))
    kb_rows = _homogeneous_rows(sys)

    mass_lp = LinearProgram(
        antecedent,
        tuple(kb_rows + [Constraint(tuple([1] * sys.m), "=", 1)]),
        "max",
    )
    mass = solve(mass_lp, backend, config)
    max_mass = mass.value if mass.optimal else backend.zero
    threshold = backend.zero if backend.exact else config.float_tolerance
    if not max_mass > threshold:
        logger.info("P(b*) é forçada a 0: consulta não condicionável")
        return BoundsReport(True, False, backend=backend, max_antecedent_mass=max_mass, query=target)

    scaled_rows = tuple(kb_rows + [
        Constraint(antecedent, "=", 1),
        Constraint(tuple([1] * sys.m), ">=", 1),
    ])
    programs = [LinearProgram(numerator, scaled_rows, sense) for sense in ("min", "max")]
    low, high = _solve_pair(programs, backend, config)
    for outcome in (low, high):
        if outcome.status is LPStatus.INFEASIBLE:
            logger.warning("Programa escalado inviável apesar de P(b*) > 0; consulta tratada como não condicionável")
            return BoundsReport(True, False, backend=backend, max_antecedent_mass=max_mass, query=target)
        if outcome.status is LPStatus.UNBOUNDED:
            # o objetivo é limitado por Σ_{b*} y = 1; não deve ocorrer
            logger.warning("Programa escalado ilimitado; usando o intervalo [0, 1]")

    lower = _clamp(low.value, backend, config.float_tolerance) if low.optimal else backend.zero
    upper = _clamp(high.value, backend, config.float_tolerance) if high.optimal else backend.one
    if lower > upper:
        lower = upper
    witness_low = _model_from_point(sys, low.point, backend) if low.optimal else None
    witness_high = _model_from_point(sys, high.point, backend) if high.optimal else None
    logger.info(f"Limites de {conditional_to_text(target)}: [{lower}, {upper}]")
    return BoundsReport(
        feasible=True,
        conditionable=True,
        lower=lower,
        upper=upper,
        witness_low=witness_low,
        witness_high=witness_high,
        backend=backend,
        max_antecedent_mass=max_mass,
        query=target,
    )


def compare(kb: KnowledgeBase, base_query: ConditionalEvent, extra_evidence: Event,
            backend: NumericBackend = FLOAT,
            config: Optional[EngineConfig] = None) -> Tuple[BoundsReport, BoundsReport]:
    """Limites de (a|b) e de (a|b ∧ e): nenhuma inclusão é assumida"""
    base = bounds(kb, base_query, backend, config)
    extended = bounds(kb.with_evidence(extra_evidence), base_query, backend, config)
    return base, extended


def compare_verdict(base: BoundsReport, extended: BoundsReport,
                    tolerance: Optional[Number] = None) -> Verdict:
    """Classifica a mudança do intervalo ao acrescentar evidência"""
    if not (base.has_bounds and extended.has_bounds):
        return Verdict.UNDEFINED
    tol = base.backend.tolerance if tolerance is None else tolerance
    lo1, hi1, lo2, hi2 = base.lower, base.upper, extended.lower, extended.upper
    if abs(lo1 - lo2) <= tol and abs(hi1 - hi2) <= tol:
        return Verdict.UNCHANGED
    if lo2 <= lo1 + tol and hi2 >= hi1 - tol:
        return Verdict.WIDENED
    if lo2 >= lo1 - tol and hi2 <= hi1 + tol:
        return Verdict.NARROWED
    return Verdict.SHIFTED
