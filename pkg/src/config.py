"""
Configurações do projeto de lógica condicional
"""

from dataclasses import dataclass
from pathlib import Path

# Diretórios
PROJECT_ROOT = Path(__file__).resolve().parent.parent
RESULTS_DIR = PROJECT_ROOT / "resultados"
BASES_DIR = PROJECT_ROOT / "bases"

# Configurações de saída
OUTPUT_CONFIG = {
    "timestamp_format": "%Y%m%d_%H%M%S",
    "json_indent": 2,
}

# Configurações de visualização
PLOT_CONFIG = {
    "figsize": (10, 4),
    "dpi": 150,
    "save_format": "png",
    "colors": ["tab:blue", "tab:red", "tab:green", "tab:orange"],
}


@dataclass(frozen=True)
class EngineConfig:
    """Parâmetros numéricos do motor de limites"""
    float_tolerance: float = 1e-9
    pivot_tolerance: float = 1e-11
    identity_tolerance: float = 1e-12
    max_pivots: int = 100_000
    max_variables: int = 20
    parallel_bounds: bool = False


@dataclass(frozen=True)
class OracleConfig:
    """Parâmetros do oráculo de força bruta"""
    resolution: int = 20
    composition_limit: int = 10_000_000
    chunk_size: int = 50_000
    fallback_samples: int = 200_000


DEFAULT_ENGINE = EngineConfig()
DEFAULT_ORACLE = OracleConfig()


def ensure_results_dir() -> Path:
    """Cria o diretório de resultados se necessário"""
    RESULTS_DIR.mkdir(parents=True, exist_ok=True)
    return RESULTS_DIR
