"""
Oráculo de força bruta

Valida, de forma independente do simplex, os limites de entailment
(enumeração de todas as composições de N em m partes) e as leis da
álgebra condicional (varredura exaustiva em vocabulários pequenos).
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from .conditional_algebra import (
    ConditionalEvent,
    all_conditionals,
    ce_and,
    ce_not,
    ce_or,
    coset_contains,
    gn_leq,
    unconditional,
)
from .config import DEFAULT_ORACLE, OracleConfig
from .entailment import KnowledgeBase, PiTag, build_system
from .exceptions import GridTooLargeError, NoFeasibleSampleError, UnknownLawError
from .formula import Event, Vocabulary, leq
from .numeric import FLOAT, NumericBackend, to_fraction
from .probability import random_models

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    """Resolução N (massas múltiplas de 1/N) e tolerância η dos resíduos"""
    resolution: int = DEFAULT_ORACLE.resolution
    tolerance: Fraction = Fraction(0)
    fallback: bool = False

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolução N deve ser >= 1")
        object.__setattr__(self, "tolerance", to_fraction(self.tolerance))
        if self.tolerance < 0:
            raise ValueError("tolerância η deve ser >= 0")

    @classmethod
    def for_backend(cls, resolution: int, backend: NumericBackend, fallback: bool = False) -> "GridSpec":
        """η = 0 no modo exato, 1/(2N) no modo float"""
        if resolution < 1:
            raise ValueError("resolução N deve ser >= 1")
        tolerance = Fraction(0) if backend.exact else Fraction(1, 2 * resolution)
        return cls(resolution, tolerance, fallback)


class GridBounds(NamedTuple):
    lower: object
    upper: object
    sample_count: int


def composition_count(total: int, parts: int) -> int:
    return math.comb(total + parts - 1, parts - 1)


def iter_compositions(total: int, parts: int, chunk_size: int = DEFAULT_ORACLE.chunk_size) -> Iterator[np.ndarray]:
    """Blocos (c, parts) de composições de total em partes não negativas"""
    slots = total + parts - 1
    combos = itertools.combinations(range(slots), parts - 1)
    while True:
        block = list(itertools.islice(combos, chunk_size))
        if not block:
            return
        bars = np.array(block, dtype=np.int64).reshape(len(block), parts - 1)
        left = np.full((len(block), 1), -1, dtype=np.int64)
        right = np.full((len(block), 1), slots, dtype=np.int64)
        yield np.diff(np.hstack([left, bars, right]), axis=1) - 1


def _row_arrays(tags, wanted) -> np.ndarray:
    return np.array([1 if tag in wanted else 0 for tag in tags], dtype=np.int64)


def grid_bounds(kb: KnowledgeBase, query: ConditionalEvent, spec: GridSpec = GridSpec(),
                backend: NumericBackend = FLOAT, config: Optional[OracleConfig] = None,
                seed: Optional[int] = None) -> GridBounds:
    """
    Mínimo e máximo de P(a*)/P(b*) sobre as massas Λ = partes/N que
    satisfazem |P(a_i b_i) - α_i P(b_i)| <= η e P(b*) > 0
    """
    config = config or DEFAULT_ORACLE
    sys = build_system(kb, query)
    n_total = spec.resolution
    count = composition_count(n_total, sys.m)
    if count > config.composition_limit:
        if spec.fallback:
            logger.warning(f"Grade com {count} composições; usando amostragem aleatória")
            return sampled_bounds(kb, query, config.fallback_samples, spec.tolerance or Fraction(1, 2 * n_total),
                                  seed, backend)
        raise GridTooLargeError(count, config.composition_limit)
    logger.info(f"Oráculo: {count} composições de {n_total} em {sys.m} partes")

    eta = spec.tolerance
    rows = []
    for tags, alpha in zip(sys.pi, sys.alphas):
        rows.append((
            _row_arrays(tags, (PiTag.ONE,)),
            _row_arrays(tags, (PiTag.ONE, PiTag.ZERO)),
            alpha.numerator,
            alpha.denominator,
        ))
    num_ind = _row_arrays(sys.query_tags, (PiTag.ONE,))
    den_ind = _row_arrays(sys.query_tags, (PiTag.ONE, PiTag.ZERO))

    best_low: Optional[Fraction] = None
    best_high: Optional[Fraction] = None
    kept = 0
    for parts in iter_compositions(n_total, sys.m, config.chunk_size):
        mask = np.ones(len(parts), dtype=bool)
        for one, ant, p, q in rows:
            # |q·#ab - p·#b| <= η·N·q, em inteiros
            gap = np.abs(q * (parts @ one) - p * (parts @ ant))
            mask &= gap * eta.denominator <= eta.numerator * n_total * q
        numerator = parts @ num_ind
        denominator = parts @ den_ind
        mask &= denominator > 0
        if not mask.any():
            continue
        numerator, denominator = numerator[mask], denominator[mask]
        kept += int(mask.sum())
        ratios = numerator / denominator
        i_low, i_high = int(np.argmin(ratios)), int(np.argmax(ratios))
        low = Fraction(int(numerator[i_low]), int(denominator[i_low]))
        high = Fraction(int(numerator[i_high]), int(denominator[i_high]))
        best_low = low if best_low is None else min(best_low, low)
        best_high = high if best_high is None else max(best_high, high)

    if kept == 0:
        raise NoFeasibleSampleError(f"nenhuma composição de resolução 1/{n_total} satisfaz a base")
    logger.info(f"Oráculo: {kept} composições viáveis, razões em [{best_low}, {best_high}]")
    return GridBounds(backend.number(best_low), backend.number(best_high), kept)


def sampled_bounds(kb: KnowledgeBase, query: ConditionalEvent, samples: int, tolerance,
                   seed: Optional[int] = None, backend: NumericBackend = FLOAT) -> GridBounds:
    """Amostragem uniforme no simplexo; aproximação interna grosseira"""
    sys = build_system(kb, query)
    masses = random_models(sys.cells, samples, seed)
    eta = float(to_fraction(tolerance))
    mask = np.ones(samples, dtype=bool)
    for tags, alpha in zip(sys.pi, sys.alphas):
        p_ab = masses @ _row_arrays(tags, (PiTag.ONE,))
        p_b = masses @ _row_arrays(tags, (PiTag.ONE, PiTag.ZERO))
        mask &= np.abs(p_ab - float(alpha) * p_b) <= eta
    numerator = masses @ _row_arrays(sys.query_tags, (PiTag.ONE,))
    denominator = masses @ _row_arrays(sys.query_tags, (PiTag.ONE, PiTag.ZERO))
    mask &= denominator > 0
    if not mask.any():
        raise NoFeasibleSampleError(f"nenhuma das {samples} amostras satisfaz a base com η = {eta}")
    ratios = numerator[mask] / denominator[mask]
    return GridBounds(backend.number(float(ratios.min())), backend.number(float(ratios.max())), int(mask.sum()))


# ---------------------------------------------------------------------------
# Leis da álgebra condicional
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LawViolation:
    law: str
    operands: Tuple
    detail: str = ""


def _law_vocab(k: int) -> Vocabulary:
    if k not in (1, 2):
        raise ValueError("verificação exaustiva restrita a k <= 2")
    return Vocabulary(tuple(f"x{i}" for i in range(k)))


def _pairs(conds: List[ConditionalEvent]):
    return itertools.product(conds, repeat=2)


def _check_demorgan_and(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("demorgan_and", (p, q)) for p, q in _pairs(conds)
            if ce_not(ce_and(p, q)) != ce_or(ce_not(p), ce_not(q))]


def _check_demorgan_or(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("demorgan_or", (p, q)) for p, q in _pairs(conds)
            if ce_not(ce_or(p, q)) != ce_and(ce_not(p), ce_not(q))]


def _check_order_equiv(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("order_equiv", (p, q)) for p, q in _pairs(conds)
            if gn_leq(p, q) != (ce_and(p, q) == p)]


def _check_involution(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("involution", (p,)) for p in conds if ce_not(ce_not(p)) != p]


def _check_idempotence(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("idempotence", (p,)) for p in conds
            if ce_and(p, p) != p or ce_or(p, p) != p]


def _check_commutativity(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("commutativity", (p, q)) for p, q in _pairs(conds)
            if ce_and(p, q) != ce_and(q, p) or ce_or(p, q) != ce_or(q, p)]


def _check_embedding_hom(vocab, conds, **_) -> List[LawViolation]:
    events = [Event(vocab, bits) for bits in range(vocab.full_mask + 1)]
    violations = []
    for a, c in itertools.product(events, repeat=2):
        ea, ec = unconditional(a), unconditional(c)
        if ce_and(ea, ec) != unconditional(a & c):
            violations.append(LawViolation("embedding_hom", (a, c), "and"))
        if ce_or(ea, ec) != unconditional(a | c):
            violations.append(LawViolation("embedding_hom", (a, c), "or"))
        if gn_leq(ea, ec) != leq(a, c):
            violations.append(LawViolation("embedding_hom", (a, c), "order"))
    for a in events:
        if ce_not(unconditional(a)) != unconditional(~a):
            violations.append(LawViolation("embedding_hom", (a,), "complement"))
    return violations


def _check_reflexivity(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("reflexivity", (p,)) for p in conds if not gn_leq(p, p)]


def _check_antisymmetry(vocab, conds, **_) -> List[LawViolation]:
    return [LawViolation("antisymmetry", (p, q)) for p, q in _pairs(conds)
            if gn_leq(p, q) and gn_leq(q, p) and p != q]


def _check_transitivity(vocab, conds, **_) -> List[LawViolation]:
    above = {p: [q for q in conds if gn_leq(p, q)] for p in conds}
    violations = []
    for p in conds:
        for q in above[p]:
            for r in above[q]:
                if not gn_leq(p, r):
                    violations.append(LawViolation("transitivity", (p, q, r)))
    return violations


def _check_coset_interval(vocab, conds, **_) -> List[LawViolation]:
    events = [Event(vocab, bits) for bits in range(vocab.full_mask + 1)]
    violations = []
    for p in conds:
        outside = ~p.antecedent
        coset = {p.numerator | (r & outside) for r in events}
        for x in events:
            if coset_contains(p, x) != (x in coset):
                violations.append(LawViolation("coset_interval", (p, x)))
    return violations


def _check_monotone_p(vocab, conds, models: int = 200, seed: int = 0, **_) -> List[LawViolation]:
    """Para p ≤ q e todo modelo com P(antecedentes) >= 1e-6: P(p) <= P(q)"""
    atoms = [vocab.atom(j) for j in range(vocab.atom_count)]
    masses = random_models(atoms, models, seed)

    def incidence(events) -> np.ndarray:
        return np.array([[(e.bits >> j) & 1 for j in range(vocab.atom_count)] for e in events], dtype=float)

    p_num = incidence([c.numerator for c in conds]) @ masses.T
    p_ant = incidence([c.antecedent for c in conds]) @ masses.T
    index = {c: i for i, c in enumerate(conds)}
    violations = []
    for p, q in _pairs(conds):
        if not gn_leq(p, q):
            continue
        i, j = index[p], index[q]
        usable = (p_ant[i] >= 1e-6) & (p_ant[j] >= 1e-6)
        if not usable.any():
            continue
        lhs = p_num[i, usable] / p_ant[i, usable]
        rhs = p_num[j, usable] / p_ant[j, usable]
        bad = np.flatnonzero(lhs > rhs + 1e-12)
        if bad.size:
            violations.append(LawViolation("monotone_P", (p, q), f"{bad.size} modelos violam"))
    return violations


LAWS: Dict[str, Callable[..., List[LawViolation]]] = {
    "demorgan_and": _check_demorgan_and,
    "demorgan_or": _check_demorgan_or,
    "order_equiv": _check_order_equiv,
    "involution": _check_involution,
    "idempotence": _check_idempotence,
    "commutativity": _check_commutativity,
    "embedding_hom": _check_embedding_hom,
    "reflexivity": _check_reflexivity,
    "antisymmetry": _check_antisymmetry,
    "transitivity": _check_transitivity,
    "coset_interval": _check_coset_interval,
    "monotone_P": _check_monotone_p,
}


def exhaustive_law_check(k: int, law: str, models: int = 200, seed: int = 0) -> List[LawViolation]:
    """Todas as instâncias que violam a lei (lista vazia esperada)"""
    if law not in LAWS:
        raise UnknownLawError(f"lei desconhecida: {law}")
    vocab = _law_vocab(k)
    conds = all_conditionals(vocab)
    violations = LAWS[law](vocab, conds, models=models, seed=seed)
    logger.info(f"Lei {law} (k={k}): {len(conds)} condicionais, {len(violations)} violações")
    return violations


def _and_bits(num_p, ant_p, num_q, ant_q):
    antecedent = (ant_p & ~num_p) | (ant_q & ~num_q) | (ant_p & ant_q)
    return num_p & num_q & antecedent, antecedent


def _or_bits(num_p, ant_p, num_q, ant_q):
    antecedent = num_p | num_q | (ant_p & ant_q)
    return (num_p | num_q) & antecedent, antecedent


def algebra_structure_report(k: int = 2) -> Dict[str, int]:
    """
    Conta falhas de associatividade e distributividade mútua de ce_and e
    ce_or sobre todas as triplas; nenhum algoritmo depende desses números
    """
    vocab = _law_vocab(k)
    conds = all_conditionals(vocab)
    num = np.array([c.numerator.bits for c in conds], dtype=np.int64)
    ant = np.array([c.antecedent.bits for c in conds], dtype=np.int64)
    P = (num[:, None, None], ant[:, None, None])
    Q = (num[None, :, None], ant[None, :, None])
    R = (num[None, None, :], ant[None, None, :])

    def failures(left, right) -> int:
        return int(np.count_nonzero((left[0] != right[0]) | (left[1] != right[1])))

    report = {
        "conditionals": len(conds),
        "triples": len(conds) ** 3,
        "associativity_and": failures(_and_bits(*_and_bits(*P, *Q), *R), _and_bits(*P, *_and_bits(*Q, *R))),
        "associativity_or": failures(_or_bits(*_or_bits(*P, *Q), *R), _or_bits(*P, *_or_bits(*Q, *R))),
        "distributivity_and_over_or": failures(
            _and_bits(*P, *_or_bits(*Q, *R)),
            _or_bits(*_and_bits(*P, *Q), *_and_bits(*P, *R)),
        ),
        "distributivity_or_over_and": failures(
            _or_bits(*P, *_and_bits(*Q, *R)),
            _and_bits(*_or_bits(*P, *Q), *_or_bits(*P, *R)),
        ),
    }
    logger.info(f"Estrutura da álgebra (k={k}): {report}")
    return report
