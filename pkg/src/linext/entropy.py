"""Graph entropy over the stable polytope, and the Kahn-Kim volume sandwich."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from linext import kernels
from linext.graph import Graph, independence_number, stable_set_matrix
from linext.polytopes import VolumeEstimate

DEFAULT_TOL = 1e-5
DEFAULT_MAX_ITER = 10**6
_LN2 = math.log(2)


class ConvergenceError(RuntimeError):
    def __init__(self, msg, result):
        super().__init__(msg)
        self.result = result


@dataclass
class EntropyResult:
    h: float
    minimizer: np.ndarray
    duality_gap: float
    iterations: int

    @property
    def lower(self) -> float:
        """Certified lower bound on the entropy."""
        return self.h - self.duality_gap

    def to_dict(self) -> dict:
        return {"H_bits": self.h, "gap": self.duality_gap, "minimizer": [float(a) for a in self.minimizer]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def entropy_objective(a) -> float:
    a = np.asarray(a, dtype=float)
    return float(-np.mean(np.log2(a)))


def graph_entropy(
    g: Graph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    raise_on_failure: bool = True,
    backend: str | None = None,
) -> EntropyResult:
    """Minimise ``-(1/n) Σ log2 a_i`` over ``Stab(G)`` by Frank-Wolfe.

    The linear oracle is a maximum-weight stable set with weights ``1/a_i``.
    Iterates start at the barycentre of the singletons and move with the
    classical step ``2/(t+2)``, counting from ``t = 1`` so that no coordinate
    ever reaches zero. Stops once the duality gap, an upper bound on the
    distance to the optimum, drops to ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = g.n
    if n == 0:
        raise ValueError("entropy of the empty vertex set is undefined")
    a, gap, t = kernels.frank_wolfe_entropy(stable_set_matrix(g), tol, max_iter, backend)
    a = np.array(a)
    result = EntropyResult(entropy_objective(a), a, gap, t)
    if gap > tol and raise_on_failure:
        raise ConvergenceError(f"duality gap {gap:.3g} after {t} iterations", result)
    return result


def alpha_entropy_lower(g: Graph) -> float:
    """``log2(n / α(G))``: Jensen applied to the stable-set mass bound."""
    return math.log2(g.n / independence_number(g))


@dataclass(frozen=True)
class KahnKimReport:
    n: int
    log2_volume: float
    log2_left: float  # log2(n^n 2^{-nH}), taken at the certified lower H
    log2_right: float  # log2(n! 2^{-nH}), taken at the upper H
    left_holds: bool
    right_holds: bool

    @property
    def holds(self) -> bool:
        return self.left_holds and self.right_holds


def kahn_kim_check(
    g: Graph,
    vol: Fraction | VolumeEstimate | float,
    h: float | EntropyResult,
    tol: float = DEFAULT_TOL,
    sigmas: float = 4.0,
) -> KahnKimReport:
    """Test ``n^n 2^{-nH} >= n! Vol(Stab) >= n! 2^{-nH}`` in log space.

    ``H`` is only known to lie in ``[h - gap, h]``, and a Monte-Carlo volume
    carries a confidence band; a side is flagged only if it fails for every
    admissible value.
    """
    n = g.n
    if isinstance(h, EntropyResult):
        h_hi, h_lo = h.h, h.h - max(h.duality_gap, 0.0)
    else:
        h_hi, h_lo = h + tol, h - tol
    if isinstance(vol, VolumeEstimate):
        v_mid = vol.estimate
        v_lo = max(vol.estimate - sigmas * vol.std_error, 1e-300)
        v_hi = vol.estimate + sigmas * vol.std_error
    else:
        v_mid = v_lo = v_hi = float(vol)
    log_fact = math.lgamma(n + 1) / _LN2
    log_vol = math.log2(v_mid) + log_fact
    left = n * math.log2(n) - n * h_lo
    right = log_fact - n * h_hi
    slack = 1e-9 * max(1.0, n)
    left_ok = left + slack >= math.log2(v_lo) + log_fact
    right_ok = math.log2(v_hi) + log_fact + slack >= right
    return KahnKimReport(n, log_vol, left, right, left_ok, right_ok)

