"""
Lógica Condicional e Entailment Probabilístico

Este pacote implementa:
1. A álgebra de eventos condicionais (a|b) sem medida: classes laterais,
   intervalos [ab, b -> a], conectivos e ordem parcial
2. O cálculo de limites justos para P(a|b) dada uma base de avaliações
   P(a_i|b_i) = α_i, via partição canônica, matriz de codificação Π e
   programação linear
3. A demonstração da não monotonicidade do condicionamento sob evidência
   adicional

Características:
- Aritmética racional exata ou ponto flutuante
- Simplex em duas fases próprio (regra de Bland)
- Oráculo de força bruta independente para validação

Versão: 1.0.0
"""

__version__ = "1.0.0"
__author__ = "Sistema de Lógica Condicional"

from .formula import Vocabulary, Event, parse_formula, evaluate, canonical_partition
from .conditional_algebra import (
    ConditionalEvent,
    make_conditional,
    ce_and,
    ce_or,
    ce_not,
    gn_leq,
    comparable,
)
from .probability import ProbabilityModel, prob, cond_prob
from .lp import LinearProgram, Constraint, solve
from .entailment import (
    ConditionalAssessment,
    KnowledgeBase,
    BoundsReport,
    build_system,
    feasible,
    bounds,
    compare,
)
from .oracle import GridSpec, grid_bounds, exhaustive_law_check

__all__ = [
    'Vocabulary', 'Event', 'parse_formula', 'evaluate', 'canonical_partition',
    'ConditionalEvent', 'make_conditional', 'ce_and', 'ce_or', 'ce_not', 'gn_leq', 'comparable',
    'ProbabilityModel', 'prob', 'cond_prob',
    'LinearProgram', 'Constraint', 'solve',
    'ConditionalAssessment', 'KnowledgeBase', 'BoundsReport',
    'build_system', 'feasible', 'bounds', 'compare',
    'GridSpec', 'grid_bounds', 'exhaustive_law_check',
]


def get_system_info():
    """Retorna informações sobre o sistema"""
    import numpy
    import scipy

    from .config import DEFAULT_ENGINE

    return {
        'version': __version__,
        'author': __author__,
        'numpy': numpy.__version__,
        'scipy': scipy.__version__,
        'max_variables': DEFAULT_ENGINE.max_variables,
        'description': 'Álgebra condicional e limites de probabilidade por programação linear',
    }
