"""Reading error-rate curves: where they cross a target, and gaps between them."""

from typing import Optional, Sequence

import numpy as np

from ..errors import ParameterError
from .sweep import PointResult


def _rates(points: Sequence[PointResult], metric: str) -> np.ndarray:
    metric = metric.upper()
    if metric == "FER":
        return np.array([p.fer for p in points])
    if metric == "BER":
        return np.array([p.ber for p in points])
    raise ParameterError(f"metric must be 'FER' or 'BER', got {metric!r}")


def ebn0_at_error_rate(points: Sequence[PointResult], target: float, metric: str = "FER") -> Optional[float]:
    """Eb/N0 where the curve first falls to ``target``, interpolating log10(rate) linearly.

    Points with a zero rate cannot be placed on a log axis and are skipped.
    Returns None when the measured curve never crosses the target.
    """
    if target <= 0:
        raise ParameterError(f"target error rate must be positive, got {target}")
    ordered = sorted(points, key=lambda p: p.ebn0_db)
    rates = _rates(ordered, metric)
    ebn0 = np.array([p.ebn0_db for p in ordered])
    keep = rates > 0
    ebn0, logs = ebn0[keep], np.log10(rates[keep])
    goal = np.log10(target)
    for i in range(len(logs) - 1):
        if logs[i] >= goal >= logs[i + 1] and logs[i] != logs[i + 1]:
            fraction = (logs[i] - goal) / (logs[i] - logs[i + 1])
            return float(ebn0[i] + fraction * (ebn0[i + 1] - ebn0[i]))
    return None


def coding_loss(reference: Sequence[PointResult], other: Sequence[PointResult],
                target: float = 1e-3, metric: str = "FER") -> Optional[float]:
    """Extra Eb/N0 ``other`` needs to reach ``target`` compared to ``reference``."""
    ref = ebn0_at_error_rate(reference, target, metric)
    alt = ebn0_at_error_rate(other, target, metric)
    if ref is None or alt is None:
        return None
    return alt - ref
