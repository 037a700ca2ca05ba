"""Frame-by-frame cross-checking of two decoders on shared channel realizations."""

from dataclasses import dataclass
from logging import getLogger
from typing import Optional

import numpy as np

from ..code import PolarCode, build_tree
from ..decode import decoder_for
from ..kernels import LutKernel, make_kernel
from ..quantdesign.luts import LutVariant, relabel_lut_set
from .channel import sigma_from_ebn0
from .sweep import DecoderSpec, draw_frames

logger = getLogger(__name__)


@dataclass(frozen=True)
class DivergenceReport:
    label_a: str
    label_b: str
    frames: int
    divergent_frames: int
    first_divergent_frame: Optional[int]

    @property
    def equivalent(self) -> bool:
        return self.divergent_frames == 0

    def describe(self) -> str:
        if self.equivalent:
            return f"{self.label_a} and {self.label_b} agree on all {self.frames} frames"
        return (f"{self.label_a} and {self.label_b} diverge on {self.divergent_frames} of "
                f"{self.frames} frames, first at frame {self.first_divergent_frame}")


def compare_decoders(
    code: PolarCode,
    spec_a: str,
    spec_b: str,
    frames: int,
    seed: int = 0,
    ebn0_db: Optional[float] = None,
    chunk_size: int = 1000,
    levels: int = 16,
) -> DivergenceReport:
    """Run two decoders on identical noise and report where their codewords differ.

    When one side is ms-ib and the other re-ms-ib, the re-ms-ib tables are
    the rho-conjugate of the very ms-ib set used by the other side, and its
    channel labels are the ms-ib labels mapped through rho.
    """
    a = DecoderSpec.parse(spec_a)
    b = DecoderSpec.parse(spec_b)
    kernel_a = make_kernel(a.kernel, code, levels=levels)
    shared = None
    if isinstance(kernel_a, LutKernel):
        if a.kernel == b.kernel:
            shared = kernel_a.lut_set
        elif kernel_a.lut_set.variant is LutVariant.MS_IB and b.kernel == LutVariant.RE_MS_IB.value:
            shared = relabel_lut_set(kernel_a.lut_set)
    kernel_b = make_kernel(b.kernel, code, levels=levels, lut_set=shared)

    ebn0 = code.design_ebn0_db if ebn0_db is None else ebn0_db
    sigma = sigma_from_ebn0(ebn0, code.rate)
    tree = build_tree(code)
    decode_a = decoder_for(a.algorithm)
    decode_b = decoder_for(b.algorithm)

    divergent = 0
    first = None
    for start in range(0, frames, chunk_size):
        stop = min(start + chunk_size, frames)
        _, llr = draw_frames(code, seed, 0, start, stop, sigma)
        out_a = decode_a(code, tree, kernel_a, kernel_a.map_channel(llr))
        out_b = decode_b(code, tree, kernel_b, kernel_b.map_channel(llr))
        differs = np.flatnonzero(np.any(out_a.codeword != out_b.codeword, axis=1))
        divergent += differs.size
        if first is None and differs.size:
            first = start + int(differs[0])
    report = DivergenceReport(a.label, b.label, frames, divergent, first)
    logger.info(report.describe())
    return report
