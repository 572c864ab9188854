"""
Visualização dos intervalos de probabilidade condicional
"""

import logging
from pathlib import Path
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .config import PLOT_CONFIG  # noqa: E402
from .entailment import BoundsReport  # noqa: E402

logger = logging.getLogger(__name__)


def plot_bounds_intervals(reports: Sequence[Tuple[str, BoundsReport]], filename,
                          title: Optional[str] = None) -> Optional[Path]:
    """Desenha um intervalo [inferior, superior] por consulta"""
    try:
        fig, ax = plt.subplots(figsize=PLOT_CONFIG["figsize"])
        ax.set_title(title or "Limites de probabilidade condicional", fontweight="bold")
        colors = PLOT_CONFIG["colors"]

        for row, (label, report) in enumerate(reports):
            color = colors[row % len(colors)]
            if not report.has_bounds:
                status = "inviável" if not report.feasible else "não condicionável"
                ax.text(0.5, row, status, ha="center", va="center", color="gray")
                continue
            lower, upper = float(report.lower), float(report.upper)
            ax.plot([lower, upper], [row, row], color=color, linewidth=6, solid_capstyle="butt")
            ax.plot([lower, upper], [row, row], "o", color=color)
            ax.text(upper, row + 0.15, f"[{lower:.3g}, {upper:.3g}]", ha="right", va="bottom")

        ax.set_yticks(range(len(reports)))
        ax.set_yticklabels([label for label, _ in reports])
        ax.set_xlim(-0.05, 1.05)
        ax.set_ylim(-0.6, len(reports) - 0.4)
        ax.set_xlabel("P(a | b)")
        ax.grid(True, axis="x", alpha=0.3)

        plt.tight_layout()
        plt.savefig(filename, dpi=PLOT_CONFIG["dpi"], bbox_inches="tight")
        plt.close(fig)
        logger.info(f"Visualização salva em {filename}")
        return Path(filename)

    except Exception as e:
        logger.error(f"Erro ao criar visualização: {e}")
        plt.close("all")
        return None
