"""Successive-cancellation decoders generic over a message kernel."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .code import DecoderTree, NodeKind, PolarCode, TreeNode, build_tree, polar_transform
from .errors import ParameterError
from .kernels import Kernel, combine, combine_zero_left


@dataclass(frozen=True, eq=False)
class DecodeOutput:
    """Decoder estimates; arrays are 1-D for a single frame, (frames, .) for a batch."""

    codeword: np.ndarray
    message: np.ndarray
    u: np.ndarray

    @property
    def frames(self) -> int:
        return 1 if self.codeword.ndim == 1 else self.codeword.shape[0]


def _as_batch(code: PolarCode, channel_msgs) -> Tuple[np.ndarray, bool]:
    msgs = np.asarray(channel_msgs)
    single = msgs.ndim == 1
    msgs = np.atleast_2d(msgs)
    if msgs.ndim != 2 or msgs.shape[1] != code.N:
        raise ParameterError(
            f"expected {code.N} channel messages per frame, got shape {np.shape(channel_msgs)}"
        )
    return msgs, single


def extract_message(code: PolarCode, codeword) -> np.ndarray:
    """Information positions of a systematic codeword estimate, ascending."""
    codeword = np.asarray(codeword, dtype=np.uint8)
    if codeword.shape[-1] != code.N:
        raise ParameterError(f"codeword must have length {code.N}, got {codeword.shape[-1]}")
    return codeword[..., code.info_indices]


def _finish(code: PolarCode, beta: np.ndarray, single: bool) -> DecodeOutput:
    beta = beta.astype(np.uint8)
    u = polar_transform(beta)
    message = extract_message(code, beta)
    if single:
        return DecodeOutput(beta[0], message[0], u[0])
    return DecodeOutput(beta, message, u)


def decode_sc(code: PolarCode, kernel: Kernel, channel_msgs) -> DecodeOutput:
    """Plain SC over the full tree: f left, g right, leaf decisions, combine upward."""
    msgs, single = _as_batch(code, channel_msgs)
    frozen = code.frozen_mask
    frames = msgs.shape[0]

    def visit(node_id: int, lo: int, hi: int, alpha: np.ndarray) -> np.ndarray:
        if hi - lo == 1:
            if frozen[lo]:
                return np.zeros((frames, 1), dtype=np.uint8)
            return kernel.hard_decision(alpha)
        half = (hi - lo) // 2
        a, b = alpha[:, :half], alpha[:, half:]
        beta_l = visit(2 * node_id, lo, lo + half, kernel.f(a, b, node_id))
        beta_r = visit(2 * node_id + 1, lo + half, hi, kernel.g(a, b, beta_l, node_id))
        return combine(beta_l, beta_r)

    return _finish(code, visit(1, 0, code.N, msgs), single)


def decode_ssc(
    code: PolarCode, tree: Optional[DecoderTree], kernel: Kernel, channel_msgs
) -> DecodeOutput:
    """SSC: Rate0 subtrees give zeros and Rate1 subtrees hard decisions without descending."""
    if tree is None:
        tree = build_tree(code)
    elif tree.N != code.N:
        raise ParameterError(f"tree has N={tree.N}, code has N={code.N}")
    msgs, single = _as_batch(code, channel_msgs)
    frames = msgs.shape[0]

    def visit(node: TreeNode, alpha: np.ndarray) -> np.ndarray:
        if node.kind is NodeKind.RATE0:
            return np.zeros((frames, node.length), dtype=np.uint8)
        if node.kind is NodeKind.RATE1:
            return kernel.hard_decision(alpha)
        half = node.length // 2
        a, b = alpha[:, :half], alpha[:, half:]
        if node.left.kind is NodeKind.RATE0:
            beta_l = None
            zeros = np.zeros((frames, half), dtype=np.uint8)
            alpha_r = kernel.g(a, b, zeros, node.heap_id)
        else:
            beta_l = visit(node.left, kernel.f(a, b, node.heap_id))
            alpha_r = None if node.right.kind is NodeKind.RATE0 else kernel.g(a, b, beta_l, node.heap_id)
        if alpha_r is None:
            beta_r = np.zeros((frames, half), dtype=np.uint8)
        else:
            beta_r = visit(node.right, alpha_r)
        if beta_l is None:
            return combine_zero_left(beta_r)
        return combine(beta_l, beta_r)

    return _finish(code, visit(tree.root, msgs), single)


def decoder_for(algorithm: str):
    """Decoder callable ``(code, tree, kernel, msgs)`` for 'sc' or 'ssc'."""
    algorithm = algorithm.lower()
    if algorithm == "ssc":
        return decode_ssc
    if algorithm == "sc":
        return lambda code, tree, kernel, msgs: decode_sc(code, kernel, msgs)
    raise ParameterError(f"unknown decoding algorithm {algorithm!r}; expected 'sc' or 'ssc'")
