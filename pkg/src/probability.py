"""
Modelos de probabilidade sobre uma lista finita de células

Λ_j = P(c_j); P(x) é a soma das massas das células contidas em x. A
identidade P(a|b) = P(ab) + P(a|b)P(b') e a monotonicidade da ordem
condicional são expostas como contratos verificáveis.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .conditional_algebra import ConditionalEvent, interval_of, make_conditional
from .exceptions import NotDecomposableError, VocabularyError, ZeroAntecedentError
from .formula import Event, Vocabulary, event_to_dnf, leq
from .numeric import EXACT, FLOAT, Number, NumericBackend

logger = logging.getLogger(__name__)

# denominador da grade usada por random_model no modo exato
EXACT_SAMPLE_DENOMINATOR = 10 ** 6


@dataclass(frozen=True)
class ProbabilityModel:
    """Partição (células disjuntas de união 1) com massas não negativas"""
    cells: Tuple[Event, ...]
    masses: Tuple[Number, ...]
    backend: NumericBackend = FLOAT

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "masses", tuple(self.backend.number(m) for m in self.masses))
        if not self.cells:
            raise VocabularyError("modelo sem células")
        if len(self.cells) != len(self.masses):
            raise VocabularyError("número de massas difere do número de células")
        vocab = self.cells[0].vocab
        union = 0
        for cell in self.cells:
            if cell.vocab != vocab:
                raise VocabularyError("células de vocabulários diferentes")
            if cell.bits & union:
                raise VocabularyError("células não disjuntas")
            union |= cell.bits
        if union != vocab.full_mask:
            raise VocabularyError("células não cobrem o espaço amostral")
        if any(m < 0 for m in self.masses):
            raise ValueError("massa negativa no modelo")
        total = self.backend.total(self.masses)
        tolerance = Fraction(0) if self.backend.exact else 1e-9
        if abs(total - 1) > tolerance:
            raise ValueError(f"massas somam {total}, não 1")

    @property
    def vocab(self) -> Vocabulary:
        return self.cells[0].vocab

    @classmethod
    def uniform(cls, cells: Sequence[Event], backend: NumericBackend = FLOAT) -> "ProbabilityModel":
        m = len(cells)
        mass = Fraction(1, m) if backend.exact else 1.0 / m
        return cls(tuple(cells), tuple([mass] * m), backend)

    @classmethod
    def from_atoms(cls, vocab: Vocabulary, masses: Sequence, backend: NumericBackend = FLOAT) -> "ProbabilityModel":
        """Modelo com uma célula por átomo"""
        cells = tuple(vocab.atom(j) for j in range(vocab.atom_count))
        return cls(cells, tuple(masses), backend)

    def mass_array(self) -> np.ndarray:
        return self.backend.array(self.masses)

    def to_pairs(self) -> List[Tuple[str, str]]:
        """Serialização: pares (célula em FND, massa)"""
        return [(event_to_dnf(c), self.backend.display(m)) for c, m in zip(self.cells, self.masses)]


def prob(m: ProbabilityModel, x: Event) -> Number:
    """Soma das massas das células contidas em x"""
    total = m.backend.zero
    for cell, mass in zip(m.cells, m.masses):
        if leq(cell, x):
            total += mass
        elif cell.bits & x.bits:
            raise NotDecomposableError("evento não é união de células do modelo")
    return total


def cond_prob(m: ProbabilityModel, ce: ConditionalEvent) -> Number:
    """P(a|b) = P(ab) / P(b)"""
    denominator = prob(m, ce.antecedent)
    if denominator <= 0:
        raise ZeroAntecedentError("P(b) = 0: probabilidade condicional indefinida")
    return prob(m, ce.numerator) / denominator


def interval_probability(m: ProbabilityModel, ce: ConditionalEvent) -> Tuple[Number, Number]:
    """(P(ab), P(b -> a)), que cercam P(a|b) quando P(b) > 0"""
    interval = interval_of(ce)
    return prob(m, interval.low), prob(m, interval.high)


def check_star_identity(m: ProbabilityModel, a: Event, b: Event) -> Number:
    """Resíduo |P(a|b) - P(ab) - P(a|b) P(b')|"""
    p_cond = cond_prob(m, make_conditional(a, b))
    residual = p_cond - prob(m, a & b) - p_cond * prob(m, ~b)
    return abs(residual)


def random_model(cells: Sequence[Event], seed: Optional[int] = None,
                 backend: NumericBackend = FLOAT) -> ProbabilityModel:
    """
    Massas uniformes no simplexo, determinísticas dado o seed.

    Modo float: Dirichlet(1, ..., 1). Modo exato: espaçamentos de pontos
    uniformes na grade 1/10^6, que dão racionais exatos somando 1.
    """
    rng = np.random.default_rng(seed)
    m = len(cells)
    if backend.exact:
        cuts = np.sort(rng.integers(0, EXACT_SAMPLE_DENOMINATOR + 1, size=m - 1))
        bounds = [0] + [int(c) for c in cuts] + [EXACT_SAMPLE_DENOMINATOR]
        masses = [Fraction(hi - lo, EXACT_SAMPLE_DENOMINATOR) for lo, hi in zip(bounds, bounds[1:])]
        return ProbabilityModel(tuple(cells), tuple(masses), EXACT)
    masses = rng.dirichlet(np.ones(m))
    return ProbabilityModel(tuple(cells), tuple(float(x) for x in masses), FLOAT)


def random_models(cells: Sequence[Event], count: int, seed: Optional[int] = None) -> np.ndarray:
    """Matriz (count, m) de massas Dirichlet, para verificações vetorizadas"""
    rng = np.random.default_rng(seed)
    return rng.dirichlet(np.ones(len(cells)), size=count)
