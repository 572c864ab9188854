"""
Fixtures compartilhadas: vocabulários e bases canônicas
"""

import os
import sys

import pytest

# Raiz do projeto no path para importar o pacote src
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.cli import parse_kb_text  # noqa: E402
from src.formula import Vocabulary, event_of  # noqa: E402


@pytest.fixture
def vocab_a():
    return Vocabulary(("a",))


@pytest.fixture
def vocab_ab():
    return Vocabulary(("a", "b"))


@pytest.fixture
def vocab_abc():
    return Vocabulary(("a", "b", "c"))


@pytest.fixture
def vocab_fbp():
    return Vocabulary(("f", "b", "p"))


@pytest.fixture
def ev():
    """Atalho: ev(texto, vocab) -> Event"""
    return event_of


@pytest.fixture
def penguin_kb():
    return parse_kb_text("vars: f, b, p\nP(f | b) = 9/10\nP(b | p) = 1\nP(f | p) = 0\n")


@pytest.fixture
def birds_kb():
    return parse_kb_text("vars: f, b, p\nP(f | b) = 0.9\n")


@pytest.fixture
def marginals_kb():
    return parse_kb_text("vars: a, b\nP(a) = 0.7\nP(b) = 0.5\n")


@pytest.fixture
def conditional_marginal_kb():
    return parse_kb_text("vars: a, b\nP(a | b) = 0.9\nP(b) = 0.5\n")


@pytest.fixture
def contradictory_kb():
    return parse_kb_text("vars: a\nP(a) = 0.3\nP(a) = 0.6\n")
