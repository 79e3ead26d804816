"""Baseline non-shifting sliding-window denoiser.

For each occurring context the rule applied at all of its occurrences is the
one minimizing the accumulated estimated loss of the context's subsequence,
with ties going to the smallest rule index.  This equals the count-based
decision rule applied per position, and is position-invariant within a
context: equal windows always produce equal reconstructions.

The per-context cost is accumulated in occurrence order with the same
cumulative-sum kernel as the switching denoiser, so the zero-shift switching
denoiser reproduces this output bit for bit.
"""

from __future__ import annotations

import numpy as np

from .contexts import build_partition
from .core import ChannelModel, LossMatrix, SymbolSequence
from .estimation import EstimatedLossTable, build_tables
from .switching import _estimated_rows, _fill_boundary


def dude_denoise(
    z: SymbolSequence,
    k: int,
    channel: ChannelModel,
    loss: LossMatrix,
    boundary: int | None = None,
    tables: EstimatedLossTable | None = None,
) -> SymbolSequence:
    """Denoise with the best time-invariant rule per order-k context.

    Boundary positions (t <= k and t > n-k) copy the noisy symbol when the
    reconstruction alphabet is at least as large as the noisy one, else emit
    symbol 0; pass ``boundary`` to override.
    """
    if tables is None:
        tables = build_tables(channel, loss)
    partition = build_partition(z, k)
    loss_rows = _estimated_rows(z, k, tables)
    n = len(z)
    out = np.empty(n, dtype=np.int64)
    z_int = z.symbols[k : n - k]
    for _, idx in partition._groups():
        rule = int(np.argmin(np.cumsum(loss_rows[idx], axis=0)[-1]))
        out[idx + k] = tables.mappings[rule, z_int[idx]]
    _fill_boundary(out, z.symbols, k, tables.channel.noisy_size, tables.loss.recon_size, boundary)
    return SymbolSequence(out, tables.loss.recon_size)
