"""
Programação linear: simplex em duas fases com a regra de Bland

Resolve min/max c·x sujeito a restrições lineares (=, <=, >=) e x >= 0.
O mesmo tableau numpy serve aos dois backends: float64 no modo rápido e
dtype object com Fraction no modo exato (pivoteamento sem erro).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_ENGINE, EngineConfig
from .exceptions import LPDimensionError, LPIterationError
from .numeric import FLOAT, Number, NumericBackend

logger = logging.getLogger(__name__)

RELATIONS = ("=", "<=", ">=")


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: Tuple
    relation: str
    bound: object

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if self.relation not in RELATIONS:
            raise LPDimensionError(f"relação desconhecida: {self.relation}")


@dataclass(frozen=True)
class LinearProgram:
    """min/max objective·x, restrições, x >= 0 implícito"""
    objective: Tuple
    constraints: Tuple[Constraint, ...] = ()
    sense: str = "min"
    variable_count: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.variable_count is None:
            object.__setattr__(self, "variable_count", len(self.objective))
        if self.sense not in ("min", "max"):
            raise LPDimensionError(f"sentido desconhecido: {self.sense}")
        if len(self.objective) != self.variable_count:
            raise LPDimensionError("objetivo com tamanho diferente do número de variáveis")
        for i, constraint in enumerate(self.constraints):
            if len(constraint.coefficients) != self.variable_count:
                raise LPDimensionError(f"restrição {i} com tamanho diferente do número de variáveis")


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    value: Optional[Number] = None
    point: Optional[Tuple[Number, ...]] = None
    infeasibility: Number = 0
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class TwoPhaseSimplex:
    """
    Tableau denso; última linha guarda os custos reduzidos e -valor.

    Colunas: variáveis originais, folgas/excessos, artificiais.
    """

    def __init__(self, backend: NumericBackend = FLOAT, config: Optional[EngineConfig] = None):
        self.backend = backend
        self.config = config or DEFAULT_ENGINE
        if backend.exact:
            self.pivot_tol = backend.zero
            self.feasibility_tol = backend.zero
        else:
            self.pivot_tol = self.config.pivot_tolerance
            self.feasibility_tol = self.config.float_tolerance
        self.pivots = 0

    # ------------------------------------------------------------------
    def _pivot(self, T: np.ndarray, basis: List[int], row: int, col: int) -> None:
        T[row, :] = T[row, :] / T[row, col]
        for r in range(T.shape[0]):
            if r != row and T[r, col] != 0:
                T[r, :] = T[r, :] - T[r, col] * T[row, :]
        if not self.backend.exact:
            T[np.abs(T) < 1e-14] = 0.0
        basis[row] = col
        self.pivots += 1
        if self.pivots > self.config.max_pivots:
            raise LPIterationError(f"mais de {self.config.max_pivots} pivôs")

    def _entering(self, T: np.ndarray, allowed: Sequence[int]) -> int:
        # Bland: menor índice com custo reduzido negativo
        for j in allowed:
            if T[-1, j] < -self.pivot_tol:
                return j
        return -1

    def _leaving(self, T: np.ndarray, basis: List[int], col: int) -> int:
        best_row, best_ratio = -1, None
        for i in range(T.shape[0] - 1):
            a = T[i, col]
            if a > self.pivot_tol:
                ratio = T[i, -1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])):
                    best_row, best_ratio = i, ratio
        return best_row

    def _iterate(self, T: np.ndarray, basis: List[int], allowed: Sequence[int]) -> LPStatus:
        while True:
            col = self._entering(T, allowed)
            if col == -1:
                return LPStatus.OPTIMAL
            row = self._leaving(T, basis, col)
            if row == -1:
                return LPStatus.UNBOUNDED
            self._pivot(T, basis, row, col)

    def _set_objective(self, T: np.ndarray, basis: List[int], cost: np.ndarray) -> None:
        T[-1, :] = self.backend.zeros(T.shape[1])
        T[-1, :-1] = cost
        for i, j in enumerate(basis):
            if cost[j] != 0:
                T[-1, :] = T[-1, :] - cost[j] * T[i, :]

    # ------------------------------------------------------------------
    def solve(self, lp: LinearProgram) -> LPOutcome:
        b = self.backend
        n = lp.variable_count
        rows = []
        for constraint in lp.constraints:
            coeffs = [b.number(v) for v in constraint.coefficients]
            rhs = b.number(constraint.bound)
            relation = constraint.relation
            if rhs < 0:
                coeffs = [-v for v in coeffs]
                rhs = -rhs
                relation = {"<=": ">=", ">=": "<=", "=": "="}[relation]
            rows.append((coeffs, relation, rhs))

        m = len(rows)
        n_slack = sum(1 for _, rel, _ in rows if rel != "=")
        n_art = sum(1 for _, rel, _ in rows if rel != "<=")
        total = n + n_slack + n_art
        art_start = n + n_slack
        T = b.zeros((m + 1, total + 1))
        basis: List[int] = []
        slack, art = n, art_start
        for i, (coeffs, relation, rhs) in enumerate(rows):
            T[i, :n] = coeffs
            T[i, -1] = rhs
            if relation == "<=":
                T[i, slack] = b.one
                basis.append(slack)
                slack += 1
            else:
                if relation == ">=":
                    T[i, slack] = -b.one
                    slack += 1
                T[i, art] = b.one
                basis.append(art)
                art += 1

        self.pivots = 0
        infeasibility = b.zero
        if n_art:
            cost = b.zeros(total)
            cost[art_start:] = b.one
            self._set_objective(T, basis, cost)
            self._iterate(T, basis, range(total))
            infeasibility = -T[-1, -1]
            if infeasibility > self.feasibility_tol:
                logger.debug(f"Fase 1 terminou com {infeasibility}: inviável")
                return LPOutcome(LPStatus.INFEASIBLE, infeasibility=infeasibility, pivots=self.pivots)
            T, basis = self._drive_out_artificials(T, basis, art_start)

        cost = b.zeros(total)
        sign = -1 if lp.sense == "max" else 1
        cost[:n] = [sign * b.number(v) for v in lp.objective]
        self._set_objective(T, basis, cost)
        status = self._iterate(T, basis, range(art_start))
        if status is LPStatus.UNBOUNDED:
            return LPOutcome(LPStatus.UNBOUNDED, infeasibility=infeasibility, pivots=self.pivots)

        point = [b.zero] * n
        for i, j in enumerate(basis):
            if j < n:
                value = T[i, -1]
                if not b.exact and value < -self.feasibility_tol:
                    logger.warning(f"Massa negativa {value:.3g} na variável {j} truncada em 0")
                point[j] = value if b.exact or value > 0 else 0.0
        objective = b.total(b.number(c) * x for c, x in zip(lp.objective, point))
        logger.debug(f"Simplex: ótimo {objective} após {self.pivots} pivôs")
        return LPOutcome(LPStatus.OPTIMAL, objective, tuple(point), infeasibility, self.pivots)

    def _drive_out_artificials(self, T: np.ndarray, basis: List[int], art_start: int):
        """Retira artificiais da base; linhas sem pivô possível são redundantes"""
        redundant = []
        for i, j in enumerate(basis):
            if j < art_start:
                continue
            for col in range(art_start):
                if abs(T[i, col]) > self.pivot_tol:
                    self._pivot(T, basis, i, col)
                    break
            else:
                redundant.append(i)
        if redundant:
            logger.debug(f"Removendo {len(redundant)} restrições redundantes")
            T = np.delete(T, redundant, axis=0)
            basis = [j for i, j in enumerate(basis) if i not in redundant]
        return T, basis


def solve(lp: LinearProgram, backend: NumericBackend = FLOAT,
          config: Optional[EngineConfig] = None) -> LPOutcome:
    """Resolve o programa linear (determinístico, exato no modo racional)"""
    return TwoPhaseSimplex(backend, config).solve(lp)
