"""
Exceções do sistema de lógica condicional

Toda falha da biblioteca deriva de ConditionalLogicError; apenas a CLI
captura e converte em códigos de saída.
"""

from typing import Optional


class ConditionalLogicError(Exception):
    """Erro base do sistema"""


class FormulaSyntaxError(ConditionalLogicError):
    """Erro de sintaxe em uma fórmula proposicional"""

    def __init__(self, message: str, offset: int, text: Optional[str] = None):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} (posição {offset})")


class UnknownVariableError(ConditionalLogicError):
    """Identificador não declarado no vocabulário"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"variável desconhecida: '{name}'")


class VocabularyError(ConditionalLogicError):
    """Vocabulário inválido (identificadores repetidos, tamanho excessivo)"""


class VocabularyMismatchError(ConditionalLogicError):
    """Eventos de vocabulários diferentes combinados"""


class DegenerateQueryError(ConditionalLogicError):
    """Consulta com antecedente identicamente nulo"""


class InvalidAssessmentError(ConditionalLogicError):
    """Avaliação P(a|b) = alpha fora do domínio permitido"""


class ZeroAntecedentError(ConditionalLogicError):
    """P(a|b) indefinida porque P(b) = 0"""


class NotDecomposableError(ConditionalLogicError):
    """Evento não é união de células do modelo"""


class LPDimensionError(ConditionalLogicError):
    """Programa linear com dimensões inconsistentes"""


class LPIterationError(ConditionalLogicError):
    """Limite de pivôs do simplex excedido"""


class EncodingMismatchError(ConditionalLogicError):
    """As duas formas do resíduo de uma linha divergem"""


class GridTooLargeError(ConditionalLogicError):
    """Número de composições excede o limite do oráculo"""

    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"grade com {count} composições excede o limite {limit}")


class NoFeasibleSampleError(ConditionalLogicError):
    """Nenhum ponto da grade satisfaz a base de conhecimento"""


class UnknownLawError(ConditionalLogicError):
    """Lei algébrica não registrada"""


class KBFormatError(ConditionalLogicError):
    """Erro no arquivo de base de conhecimento"""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"linha {line}: {message}")
