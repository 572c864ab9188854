"""
Álgebra de eventos condicionais (a|b) sem medida

(a|b) é a classe lateral a + Rb', equivalentemente o intervalo
[ab, b -> a]. Guardamos sempre a forma normalizada (ab|b); a igualdade é
a igualdade estrutural do par normalizado.
"""

import logging
from dataclasses import dataclass
from typing import List

from .exceptions import FormulaSyntaxError, VocabularyError
from .formula import (
    Event,
    Vocabulary,
    event_of,
    event_to_dnf,
    leq,
    split_top_level_bar,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditionalEvent:
    """(a|b) normalizado: numerator = ab, antecedent = b"""
    numerator: Event
    antecedent: Event

    def __post_init__(self):
        if not leq(self.numerator, self.antecedent):
            raise VocabularyError("condicional não normalizado: numerador fora do antecedente")

    @property
    def vocab(self) -> Vocabulary:
        return self.antecedent.vocab

    @property
    def falsifier(self) -> Event:
        """a'b: átomos em que o condicional é falso"""
        return self.antecedent - self.numerator

    def __invert__(self) -> "ConditionalEvent":
        return ce_not(self)

    def __and__(self, other: "ConditionalEvent") -> "ConditionalEvent":
        return ce_and(self, other)

    def __or__(self, other: "ConditionalEvent") -> "ConditionalEvent":
        return ce_or(self, other)

    def __le__(self, other: "ConditionalEvent") -> bool:
        return gn_leq(self, other)

    def __str__(self) -> str:
        return conditional_to_text(self)


@dataclass(frozen=True)
class Interval:
    """[low, high] = [ab, b -> a]"""
    low: Event
    high: Event

    def __post_init__(self):
        if not leq(self.low, self.high):
            raise VocabularyError("intervalo vazio")

    def contains(self, x: Event) -> bool:
        return leq(self.low, x) and leq(x, self.high)


def make_conditional(a: Event, b: Event) -> ConditionalEvent:
    """(a|b) normalizado para (ab|b); b = 0 é permitido na álgebra"""
    return ConditionalEvent(a & b, b)


def unconditional(a: Event) -> ConditionalEvent:
    """Imersão a -> (a|1)"""
    return make_conditional(a, a.vocab.one())


def interval_of(ce: ConditionalEvent) -> Interval:
    return Interval(ce.numerator, ~ce.antecedent | ce.numerator)


def coset_contains(ce: ConditionalEvent, x: Event) -> bool:
    """ab ≤ x ≤ b' ∨ a"""
    return interval_of(ce).contains(x)


def ce_not(p: ConditionalEvent) -> ConditionalEvent:
    """(a|b)' = (a'|b)"""
    return ConditionalEvent(p.antecedent - p.numerator, p.antecedent)


def ce_and(p: ConditionalEvent, q: ConditionalEvent) -> ConditionalEvent:
    """(a|b)·(c|d) = (ac | a'b ∨ c'd ∨ bd)"""
    antecedent = p.falsifier | q.falsifier | (p.antecedent & q.antecedent)
    return ConditionalEvent(p.numerator & q.numerator & antecedent, antecedent)


def ce_or(p: ConditionalEvent, q: ConditionalEvent) -> ConditionalEvent:
    """(a|b) ∨ (c|d) = (a ∨ c | ab ∨ cd ∨ bd)"""
    antecedent = p.numerator | q.numerator | (p.antecedent & q.antecedent)
    return ConditionalEvent((p.numerator | q.numerator) & antecedent, antecedent)


def gn_leq(p: ConditionalEvent, q: ConditionalEvent) -> bool:
    """(a|b) ≤ (c|d) se ab ≤ cd e c'd ≤ a'b"""
    return leq(p.numerator, q.numerator) and leq(q.falsifier, p.falsifier)


def comparable(p: ConditionalEvent, q: ConditionalEvent) -> bool:
    return gn_leq(p, q) or gn_leq(q, p)


def truth_profile(ce: ConditionalEvent) -> str:
    """
    Leitura trivalente por átomo (átomo 0 à direita): '1' em ab, '0' em a'b,
    '?' fora de b
    """
    symbols = []
    for j in range(ce.vocab.atom_count):
        bit = 1 << j
        if ce.numerator.bits & bit:
            symbols.append("1")
        elif ce.antecedent.bits & bit:
            symbols.append("0")
        else:
            symbols.append("?")
    return "".join(reversed(symbols))


def all_conditionals(vocab: Vocabulary) -> List[ConditionalEvent]:
    """Todos os condicionais normalizados: 3^(2^k) pares (ab, b)"""
    result = []
    full = vocab.full_mask
    for b in range(full + 1):
        sub = b
        # enumera os subconjuntos de b
        while True:
            result.append(ConditionalEvent(Event(vocab, sub), Event(vocab, b)))
            if sub == 0:
                break
            sub = (sub - 1) & b
    return result


def parse_conditional(text: str, vocab: Vocabulary) -> ConditionalEvent:
    """Lê '(f1 | f2)' ou '(f1)'; uma única barra de nível superior"""
    stripped = text.strip()
    if not (stripped.startswith("(") and stripped.endswith(")")):
        raise FormulaSyntaxError("condicional deve ter a forma (f1 | f2)", 0, text)
    inner = stripped[1:-1]
    parts = split_top_level_bar(inner)
    if len(parts) > 2:
        raise FormulaSyntaxError(
            "mais de uma barra de nível superior; parentize disjunções, ex. ((a | b) | c)",
            0,
            text,
        )
    a = event_of(parts[0], vocab)
    b = event_of(parts[1], vocab) if len(parts) == 2 else vocab.one()
    return make_conditional(a, b)


def conditional_to_text(ce: ConditionalEvent) -> str:
    """Forma normalizada '(numerador | antecedente)' em FND sobre átomos"""
    return f"({_wrap(event_to_dnf(ce.numerator))} | {_wrap(event_to_dnf(ce.antecedent))})"


def _wrap(dnf: str) -> str:
    return f"({dnf})" if "|" in dnf else dnf
