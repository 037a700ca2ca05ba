"""Check-node (f) and variable-node (g) pair densities for density evolution."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import DesignError
from .ib import EdgeDistribution, llr_values


@dataclass(frozen=True, eq=False)
class PairDensity:
    """Joint pmf of a bit and a tuple of incoming messages.

    ``joint`` has shape (2, prod(shape)); symbol index is the row-major index
    of the message tuple, so a quantizer mapping reshapes to a table of
    ``shape``. ``llr`` is the nominal LLR of every tuple, used to order
    symbols that carry no mass.
    """

    joint: np.ndarray
    llr: np.ndarray
    shape: Tuple[int, ...]


def _check_alphabets(a: EdgeDistribution, b: EdgeDistribution) -> None:
    if a.size != b.size:
        raise DesignError(f"alphabet mismatch: {a.size} vs {b.size} messages")


def boxplus(la: np.ndarray, lb: np.ndarray) -> np.ndarray:
    """Exact check-node LLR combination 2 atanh(tanh(la/2) tanh(lb/2))."""
    with np.errstate(invalid="ignore", divide="ignore"):
        return 2.0 * np.arctanh(np.tanh(la / 2.0) * np.tanh(lb / 2.0))


def f_density(a: EdgeDistribution, b: EdgeDistribution) -> PairDensity:
    """p(x_f, (t_a, t_b)) with x_f = x_a xor x_b and independent uniform bits."""
    _check_alphabets(a, b)
    a0, a1 = a.joint
    b0, b1 = b.joint
    joint0 = np.outer(a0, b0) + np.outer(a1, b1)
    joint1 = np.outer(a1, b0) + np.outer(a0, b1)
    joint = np.stack([joint0.ravel(), joint1.ravel()])
    la, lb = a.llr_values, b.llr_values
    nominal = boxplus(la[:, None], lb[None, :]).ravel()
    llr = np.where(joint.sum(axis=0) > 0, llr_values(joint), np.nan_to_num(nominal))
    return PairDensity(joint / joint.sum(), llr, (a.size, b.size))


def g_density(a: EdgeDistribution, b: EdgeDistribution) -> PairDensity:
    """p(x_g, (t_a, t_b, u_prev)) where t_a observes u_prev xor x_g and t_b observes x_g.

    The u_prev=1 half is the t_a sign-flip image of the u_prev=0 half.
    """
    _check_alphabets(a, b)
    a0, a1 = a.joint
    b0, b1 = b.joint
    joint = np.zeros((2, a.size, b.size, 2))
    joint[0, :, :, 0] = np.outer(a0, b0)
    joint[1, :, :, 0] = np.outer(a1, b1)
    joint[:, :, :, 1] = joint[:, ::-1, :, 0]
    la, lb = a.llr_values, b.llr_values
    nominal = np.empty((a.size, b.size, 2))
    with np.errstate(invalid="ignore"):
        nominal[:, :, 0] = la[:, None] + lb[None, :]
    nominal[:, :, 1] = nominal[::-1, :, 0]
    joint = joint.reshape(2, -1)
    nominal = np.nan_to_num(nominal.ravel())
    llr = np.where(joint.sum(axis=0) > 0, llr_values(joint), nominal)
    return PairDensity(joint / joint.sum(), llr, (a.size, b.size, 2))


def push_through_table(density: PairDensity, table: np.ndarray, levels: int) -> EdgeDistribution:
    """Exact output distribution of a fixed table applied to a pair density."""
    labels = np.asarray(table).ravel()
    if labels.shape[0] != density.joint.shape[1]:
        raise DesignError("table does not match the pair density")
    out0 = np.bincount(labels, weights=density.joint[0], minlength=levels)
    out1 = np.bincount(labels, weights=density.joint[1], minlength=levels)
    return EdgeDistribution(np.stack([out0, out1]))
