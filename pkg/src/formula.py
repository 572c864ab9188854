"""
Fórmulas proposicionais e eventos sobre um vocabulário finito

Um evento é um vetor de bits sobre os 2^k átomos do vocabulário (elemento
do anel booleano R). O átomo j atribui à variável i o valor do bit i de j.
Os vetores são guardados como inteiros Python; a partição canônica usa
numpy para agrupar átomos por assinatura.
"""

import logging
import operator
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_ENGINE
from .exceptions import (
    FormulaSyntaxError,
    UnknownVariableError,
    VocabularyError,
    VocabularyMismatchError,
)

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Vocabulary:
    """Sequência ordenada de variáveis proposicionais (gera Ω e R)"""
    variables: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise VocabularyError("o vocabulário precisa de ao menos uma variável")
        for name in self.variables:
            if not IDENTIFIER.match(name):
                raise VocabularyError(f"identificador inválido: '{name}'")
        if len(set(self.variables)) != len(self.variables):
            raise VocabularyError("variáveis repetidas no vocabulário")
        if len(self.variables) > DEFAULT_ENGINE.max_variables:
            raise VocabularyError(
                f"{len(self.variables)} variáveis excedem o limite de "
                f"{DEFAULT_ENGINE.max_variables} (2^{DEFAULT_ENGINE.max_variables} átomos)"
            )

    @property
    def size(self) -> int:
        return len(self.variables)

    @property
    def atom_count(self) -> int:
        return 1 << self.size

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.atom_count) - 1

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def variable_mask(self, name: str) -> int:
        """Átomos em que a variável vale 1: blocos de 2^i zeros e 2^i uns"""
        i = self.index(name)
        half = 1 << i
        period = half << 1
        block = ((1 << half) - 1) << half
        repunit = self.full_mask // ((1 << period) - 1)
        return block * repunit

    def variable_event(self, name: str) -> "Event":
        return Event(self, self.variable_mask(name))

    def zero(self) -> "Event":
        return Event(self, 0)

    def one(self) -> "Event":
        return Event(self, self.full_mask)

    def atom(self, j: int) -> "Event":
        return Event(self, 1 << j)

    def assignment(self, j: int) -> Dict[str, bool]:
        return {name: bool((j >> i) & 1) for i, name in enumerate(self.variables)}


@dataclass(frozen=True)
class Event:
    """Subconjunto de átomos (bit j ligado se o átomo j pertence ao evento)"""
    vocab: Vocabulary
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.vocab.full_mask:
            raise VocabularyError("vetor de bits fora do espaço de átomos")

    def _check(self, other: "Event") -> None:
        if not isinstance(other, Event) or other.vocab != self.vocab:
            raise VocabularyMismatchError("eventos de vocabulários diferentes")

    def __and__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.vocab, self.bits & other.bits)

    def __or__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.vocab, self.bits | other.bits)

    def __xor__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.vocab, self.bits ^ other.bits)

    def __sub__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.vocab, self.bits & ~other.bits)

    def __invert__(self) -> "Event":
        return Event(self.vocab, self.vocab.full_mask ^ self.bits)

    def __le__(self, other: "Event") -> bool:
        return leq(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def is_one(self) -> bool:
        return self.bits == self.vocab.full_mask

    def atoms(self) -> List[int]:
        return [j for j in range(self.vocab.atom_count) if (self.bits >> j) & 1]

    def to_bitstring(self) -> str:
        """Serialização de depuração: átomo 0 mais à direita"""
        return format(self.bits, f"0{self.vocab.atom_count}b")

    def to_array(self) -> np.ndarray:
        return _bits_to_array(self.bits, self.vocab.atom_count)

    def __repr__(self) -> str:
        return f"Event({self.to_bitstring()})"


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

class Formula:
    """Nó da árvore sintática"""
    __slots__ = ()


@dataclass(frozen=True)
class Const(Formula):
    value: int


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Xor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


BINARY_SYMBOLS = {And: "&", Xor: "^", Or: "|", Implies: "->"}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

TOKEN_PATTERN = re.compile(r"->|[A-Za-z_][A-Za-z0-9_]*|[01]|[~&^|()]")


def tokenize(text: str) -> List[Tuple[str, int]]:
    """Divide o texto em (token, posição)"""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise FormulaSyntaxError(f"caractere inesperado '{text[pos]}'", pos, text)
        tokens.append((match.group(), pos))
        pos = match.end()
    return tokens


class _Parser:
    """Descida recursiva; precedência ~ > & > ^ > | > ->"""

    def __init__(self, text: str, vocab: Vocabulary):
        self.text = text
        self.vocab = vocab
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def offset(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text)

    def advance(self) -> str:
        token = self.tokens[self.pos][0]
        self.pos += 1
        return token

    def expect(self, token: str) -> None:
        if self.peek() != token:
            found = self.peek() or "fim do texto"
            raise FormulaSyntaxError(f"esperado '{token}', encontrado '{found}'", self.offset(), self.text)
        self.advance()

    def parse(self) -> Formula:
        if not self.tokens:
            raise FormulaSyntaxError("fórmula vazia", 0, self.text)
        tree = self.implication()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"token inesperado '{self.peek()}'", self.offset(), self.text)
        return tree

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.advance()
            return Implies(left, self.implication())
        return left

    def _left_assoc(self, symbol: str, node, operand: Callable[[], Formula]) -> Formula:
        tree = operand()
        while self.peek() == symbol:
            self.advance()
            tree = node(tree, operand())
        return tree

    def disjunction(self) -> Formula:
        return self._left_assoc("|", Or, self.exclusive)

    def exclusive(self) -> Formula:
        return self._left_assoc("^", Xor, self.conjunction)

    def conjunction(self) -> Formula:
        return self._left_assoc("&", And, self.unary)

    def unary(self) -> Formula:
        if self.peek() == "~":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        token = self.peek()
        if token is None:
            raise FormulaSyntaxError("fim inesperado da fórmula", self.offset(), self.text)
        if token == "(":
            self.advance()
            tree = self.implication()
            self.expect(")")
            return tree
        if token in ("0", "1"):
            self.advance()
            return Const(int(token))
        if IDENTIFIER.match(token):
            if token not in self.vocab.variables:
                raise UnknownVariableError(token)
            self.advance()
            return Var(token)
        raise FormulaSyntaxError(f"token inesperado '{token}'", self.offset(), self.text)


def parse_formula(text: str, vocab: Vocabulary) -> Formula:
    """Converte texto em AST validando os nomes contra o vocabulário"""
    return _Parser(text, vocab).parse()


def to_text(formula: Formula) -> str:
    """Impressão totalmente parentizada (parse(to_text(f)) == f)"""
    if isinstance(formula, Const):
        return str(formula.value)
    if isinstance(formula, Var):
        return formula.name
    if isinstance(formula, Not):
        return "~" + to_text(formula.child)
    symbol = BINARY_SYMBOLS[type(formula)]
    return f"({to_text(formula.left)} {symbol} {to_text(formula.right)})"


def variables_of(formula: Formula) -> List[str]:
    """Variáveis em ordem de primeira ocorrência"""
    seen: List[str] = []

    def visit(node: Formula) -> None:
        if isinstance(node, Var):
            if node.name not in seen:
                seen.append(node.name)
        elif isinstance(node, Not):
            visit(node.child)
        elif not isinstance(node, Const):
            visit(node.left)
            visit(node.right)

    visit(formula)
    return seen


# ---------------------------------------------------------------------------
# Avaliação e operações do anel
# ---------------------------------------------------------------------------

_RING_OPS = {"and": operator.and_, "or": operator.or_, "xor": operator.xor}


def evaluate(formula: Formula, vocab: Vocabulary) -> Event:
    """Compila a fórmula na tabela-verdade sobre os átomos"""
    full = vocab.full_mask

    def bits_of(node: Formula) -> int:
        if isinstance(node, Const):
            return full if node.value else 0
        if isinstance(node, Var):
            return vocab.variable_mask(node.name)
        if isinstance(node, Not):
            return full ^ bits_of(node.child)
        left, right = bits_of(node.left), bits_of(node.right)
        if isinstance(node, And):
            return left & right
        if isinstance(node, Or):
            return left | right
        if isinstance(node, Xor):
            return left ^ right
        # b -> a = b' ∨ a
        return (full ^ left) | right

    return Event(vocab, bits_of(formula))


def event_of(text: str, vocab: Vocabulary) -> Event:
    return evaluate(parse_formula(text, vocab), vocab)


def ring_op(op: str, x: Event, y: Event) -> Event:
    """Operação binária do anel: and (·), or (∨), xor (+)"""
    if op not in _RING_OPS:
        raise ValueError(f"operação desconhecida: {op}")
    x._check(y)
    return Event(x.vocab, _RING_OPS[op](x.bits, y.bits))


def complement(x: Event) -> Event:
    return ~x


def leq(x: Event, y: Event) -> bool:
    """x ≤ y se e somente se xy = x"""
    x._check(y)
    return x.bits & y.bits == x.bits


def event_to_dnf(event: Event) -> str:
    """Forma normal disjuntiva com um termo por átomo"""
    if event.is_zero:
        return "0"
    if event.is_one:
        return "1"
    vocab = event.vocab
    terms = []
    for j in event.atoms():
        literals = [name if (j >> i) & 1 else "~" + name for i, name in enumerate(vocab.variables)]
        terms.append(" & ".join(literals))
    if len(terms) == 1:
        return terms[0]
    if vocab.size == 1:
        return " | ".join(terms)
    return " | ".join(f"({t})" for t in terms)


def split_top_level_bar(text: str) -> List[str]:
    """Divide o texto nas barras '|' fora de parênteses"""
    parts, depth, start = [], 0, 0
    for pos, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "|" and depth == 0:
            parts.append(text[start:pos])
            start = pos + 1
    parts.append(text[start:])
    return parts


# ---------------------------------------------------------------------------
# Partição canônica
# ---------------------------------------------------------------------------

def _bits_to_array(bits: int, length: int) -> np.ndarray:
    raw = bits.to_bytes((length + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length].astype(bool)


def _array_to_bits(array: np.ndarray) -> int:
    return int.from_bytes(np.packbits(array.astype(np.uint8), bitorder="little").tobytes(), "little")


def canonical_partition(events: Sequence[Event], vocab: Optional[Vocabulary] = None) -> List[Event]:
    """
    Células não vazias a_1^{s_1}...a_n^{s_n}: átomos agrupados pela
    assinatura de pertinência aos eventos, ordenadas pelo menor átomo
    """
    if vocab is None:
        if not events:
            raise VocabularyError("partição de sequência vazia exige o vocabulário")
        vocab = events[0].vocab
    for event in events:
        if event.vocab != vocab:
            raise VocabularyMismatchError("eventos de vocabulários diferentes na partição")
    if not events:
        return [vocab.one()]

    membership = np.stack([e.to_array() for e in events], axis=1)
    _, first_atom, inverse = np.unique(membership, axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    order = np.argsort(first_atom, kind="stable")
    cells = [Event(vocab, _array_to_bits(inverse == group)) for group in order]
    logger.debug(f"Partição canônica: {len(events)} eventos -> {len(cells)} células")
    return cells
