"""Two-pass switching denoiser: per-context dynamic program over rule schedules.

The schedule class allows, within the occurrence subsequence of each context
c, at most min(n(c), m) shifts between single-symbol rules.  The forward pass
maintains, per interior position t, a matrix M_t of shape (m+1) x (N+1):
M_t(i, j) for j <= N is the minimum unnormalized cumulative estimated loss
over the occurrences of t's context up to and including t, using at most i-1
shifts and currently applying rule j; column N+1 stores the row argmin.  The
backward pass walks each context chain from its last occurrence to its first,
following the stored matrices to recover an optimal schedule, preferring
fewer shifts on exact ties.

Chains for distinct contexts are independent; each chain is processed with
vectorized cumulative sums and running minima, so time and memory are
O(m * n) overall.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .contexts import ContextPartition, build_partition
from .core import ChannelModel, LossMatrix, SymbolSequence
from .errors import RangeError, TooLarge, ValidationError
from .estimation import EstimatedLossTable, build_tables

# Hard cap on the DP state (position x level x rule float64 entries, ~2 GB).
MAX_ARENA_ENTRIES = 250_000_000


@dataclass(frozen=True)
class SwitchingSchedule:
    """Per-position rule assignment with per-context shift counts.

    ``assignment[p]`` is the rule index applied at interior position
    t = p + k + 1 (1-based).
    """

    n: int
    k: int
    m: int
    assignment: np.ndarray
    per_context_switches: dict[int, int] = field(repr=False)

    def __post_init__(self):
        self.assignment.flags.writeable = False

    def denoiser_at(self, t: int) -> int:
        """Rule index at 1-based interior position t."""
        if not self.k + 1 <= t <= self.n - self.k:
            raise RangeError(f"position {t} outside interior {self.k + 1}..{self.n - self.k}")
        return int(self.assignment[t - self.k - 1])

    @property
    def total_switches(self) -> int:
        return sum(self.per_context_switches.values())


@dataclass(eq=False)
class DPState:
    """Forward-pass output: the stored per-position DP matrices.

    ``values`` has shape (n - 2k, m + 1, N + 1); the last column holds the
    per-row argmin (as a float).  ``forward_min`` is the unnormalized minimum
    cumulative estimated loss over the schedule class.  ``last_occurrence``
    maps each occurring context id to its final 1-based interior position
    (the state of the time pointer after the pass).
    """

    n: int
    k: int
    m: int
    partition: ContextPartition
    loss_rows: np.ndarray
    values: np.ndarray
    forward_min: float
    last_occurrence: dict[int, int]

    @property
    def num_rules(self) -> int:
        return self.loss_rows.shape[1]

    def matrix_at(self, t: int) -> np.ndarray:
        """Copy of M_t (rows: allowed shifts + 1; last column: row argmin)."""
        if not self.k + 1 <= t <= self.n - self.k:
            raise RangeError(f"position {t} outside interior {self.k + 1}..{self.n - self.k}")
        return self.values[t - self.k - 1].copy()


def _forward_chain(w: np.ndarray, levels: int) -> tuple[np.ndarray, np.ndarray]:
    """DP values along one context chain.

    w holds the per-occurrence loss rows (length L, one entry per rule).
    Returns (M, argm) with M of shape (levels, L, N) and argm the per-row
    argmin indices.  Row i of M allows at most i shifts.  The recursion per
    level i >= 1 is, at a repeat occurrence,
        M[i, p] = w[p] + min(M[i, p-1], min_j M[i-1, p-1, j])
    and M[i, 0] = w[0]; it is evaluated through cumulative sums S and the
    shifted running minimum of min_j M[i-1] - S, which reproduces the
    recursion while keeping every chain pass a vectorized scan.
    """
    L = w.shape[0]
    S = np.cumsum(w, axis=0)
    M = np.empty((levels,) + w.shape, dtype=np.float64)
    M[0] = S
    if levels > 1:
        best_prev = M[0].min(axis=1)
        for i in range(1, levels):
            level = M[i]
            level[0] = w[0]
            if L > 1:
                floor = np.minimum.accumulate(best_prev[: L - 1, None] - S[: L - 1], axis=0)
                level[1:] = S[1:] + np.minimum(0.0, floor)
            best_prev = level.min(axis=1)
    return M, M.argmin(axis=2)


def _backward_chain(M: np.ndarray, argm: np.ndarray) -> tuple[np.ndarray, int]:
    """Recover one chain's optimal rule run from its forward values.

    Walking from the last occurrence toward the first with current row r and
    rule q, a shift is recorded at occurrence p exactly when the forward
    recursion's shift branch was strictly better there:
    M[r-1, p-1, best] < M[r, p-1, q].  Both quantities are stored forward
    values, so the test reproduces the forward decisions bit for bit (a
    subtraction of the current loss would reintroduce rounding and could
    turn exact ties into spurious shifts).  Ties keep the current rule, so
    the schedule uses as few shifts as possible.  Runs between shifts are
    located with one vector comparison per shift.
    """
    levels, L, _ = M.shape
    assign = np.empty(L, dtype=np.int64)
    r = levels - 1
    q = int(argm[r, L - 1])
    upper = L - 1
    switches = 0
    while upper > 0 and r > 0:
        switch_branch = M[r - 1, :upper, :].min(axis=1)
        stay_branch = M[r, :upper, q]
        hits = np.nonzero(switch_branch < stay_branch)[0]
        if hits.size == 0:
            break
        p = int(hits[-1]) + 1
        assign[p : upper + 1] = q
        r -= 1
        q = int(argm[r, p - 1])
        upper = p - 1
        switches += 1
    assign[: upper + 1] = q
    return assign, switches


def _run_forward(
    partition: ContextPartition, loss_rows: np.ndarray, m: int, levels: int | None = None
) -> tuple[np.ndarray, float, dict[int, int]]:
    """Fill the DP arena for every context chain; return (arena, min, T-map)."""
    n_int, num_rules = loss_rows.shape
    if levels is None:
        levels = m + 1
    if n_int * levels * (num_rules + 1) > MAX_ARENA_ENTRIES:
        raise TooLarge("DP arena exceeds the memory budget; reduce m or the rule count")
    values = np.empty((n_int, levels, num_rules + 1), dtype=np.float64)
    mins = []
    last_occurrence = {}
    for cid, idx in partition._groups():
        M, argm = _forward_chain(loss_rows[idx], levels)
        values[idx, :, :num_rules] = M.transpose(1, 0, 2)
        values[idx, :, num_rules] = argm.T
        mins.append(float(M[-1, -1].min()))
        last_occurrence[cid] = int(idx[-1]) + partition.k + 1
    return values, math.fsum(mins), last_occurrence


def _run_backward(
    partition: ContextPartition, values: np.ndarray, loss_rows: np.ndarray
) -> tuple[np.ndarray, dict[int, int]]:
    n_int, num_rules = loss_rows.shape
    assignment = np.empty(n_int, dtype=np.int64)
    per_context = {}
    for cid, idx in partition._groups():
        block = values[idx]
        M = np.ascontiguousarray(block[:, :, :num_rules].transpose(1, 0, 2))
        argm = block[:, :, num_rules].T.astype(np.int64)
        assign, switches = _backward_chain(M, argm)
        assignment[idx] = assign
        per_context[cid] = switches
    return assignment, per_context


def _run_fused(
    partition: ContextPartition, loss_rows: np.ndarray, m: int, levels: int | None = None
) -> tuple[np.ndarray, dict[int, int], float]:
    """Both passes per context chain, skipping the per-position matrix arena.

    Produces exactly the schedule and minimum that forward_pass followed by
    backward_pass produce; the chains are simply consumed one at a time
    instead of being staged in the shared arena.
    """
    n_int, num_rules = loss_rows.shape
    if levels is None:
        levels = m + 1
    if n_int * levels * (num_rules + 1) > MAX_ARENA_ENTRIES:
        raise TooLarge("DP state exceeds the memory budget; reduce m or the rule count")
    assignment = np.empty(n_int, dtype=np.int64)
    per_context = {}
    mins = []
    for cid, idx in partition._groups():
        M, argm = _forward_chain(loss_rows[idx], levels)
        mins.append(float(M[-1, -1].min()))
        assign, switches = _backward_chain(M, argm)
        assignment[idx] = assign
        per_context[cid] = switches
    return assignment, per_context, math.fsum(mins)


def _check_m(m: int, n_int: int) -> None:
    if not isinstance(m, (int, np.integer)) or not 0 <= m <= n_int // 2:
        raise RangeError(f"shift budget m must satisfy 0 <= m <= {n_int // 2}, got {m!r}")


def _estimated_rows(z: SymbolSequence, k: int, tables: EstimatedLossTable) -> np.ndarray:
    if z.alphabet_size != tables.channel.noisy_size:
        raise ValidationError("sequence alphabet does not match the channel's noisy alphabet")
    return tables.ell[z.symbols[k : len(z) - k]]


def forward_pass(z: SymbolSequence, k: int, m: int, tables: EstimatedLossTable) -> DPState:
    """First pass: fill the per-position DP matrices for the estimated loss."""
    partition = build_partition(z, k)
    _check_m(m, partition.num_interior)
    loss_rows = _estimated_rows(z, k, tables)
    values, forward_min, last_occurrence = _run_forward(partition, loss_rows, m)
    return DPState(
        n=len(z),
        k=int(k),
        m=int(m),
        partition=partition,
        loss_rows=loss_rows,
        values=values,
        forward_min=forward_min,
        last_occurrence=last_occurrence,
    )


def backward_pass(
    state: DPState,
    z: SymbolSequence | None = None,
    k: int | None = None,
    m: int | None = None,
    tables: EstimatedLossTable | None = None,
) -> SwitchingSchedule:
    """Second pass: extract an optimal schedule from the stored matrices.

    The state is self-contained; the optional arguments are consistency
    checks against the inputs the forward pass was run with.
    """
    if z is not None and len(z) != state.n:
        raise ValidationError("sequence length does not match the forward pass")
    if k is not None and k != state.k:
        raise ValidationError("k does not match the forward pass")
    if m is not None and m != state.m:
        raise ValidationError("m does not match the forward pass")
    if tables is not None and tables.ell.shape[1] != state.num_rules:
        raise ValidationError("tables do not match the forward pass")
    assignment, per_context = _run_backward(state.partition, state.values, state.loss_rows)
    return SwitchingSchedule(
        n=state.n,
        k=state.k,
        m=state.m,
        assignment=assignment,
        per_context_switches=per_context,
    )


def _fill_boundary(
    out: np.ndarray, z: np.ndarray, k: int, noisy: int, recon: int, boundary: int | None
) -> None:
    """Boundary positions copy the noisy symbol when index-compatible, else 0.

    An explicit boundary symbol overrides the default.
    """
    if k == 0:
        return
    n = out.shape[0]
    if boundary is None:
        if recon >= noisy:
            out[:k] = z[:k]
            out[n - k :] = z[n - k :]
        else:
            out[:k] = 0
            out[n - k :] = 0
    else:
        if not 0 <= boundary < recon:
            raise RangeError(f"boundary symbol {boundary} outside the reconstruction alphabet")
        out[:k] = boundary
        out[n - k :] = boundary


def sdude_denoise(
    z: SymbolSequence,
    k: int,
    m: int,
    channel: ChannelModel,
    loss: LossMatrix,
    boundary: int | None = None,
    tables: EstimatedLossTable | None = None,
) -> tuple[SymbolSequence, SwitchingSchedule, float]:
    """Denoise with the best context-wise schedule of at most m shifts.

    Returns the reconstruction, the schedule, and the normalized minimum
    cumulative estimated loss it attains (which may be negative).  With
    m = 0 the output coincides with the non-shifting sliding-window denoiser.
    """
    if tables is None:
        tables = build_tables(channel, loss)
    partition = build_partition(z, k)
    _check_m(m, partition.num_interior)
    loss_rows = _estimated_rows(z, k, tables)
    assignment, per_context, _ = _run_fused(partition, loss_rows, m)
    schedule = SwitchingSchedule(
        n=len(z), k=int(k), m=int(m), assignment=assignment, per_context_switches=per_context
    )
    n, n_int = len(z), partition.num_interior
    z_int = z.symbols[k : n - k]
    out = np.empty(n, dtype=np.int64)
    out[k : n - k] = tables.mappings[schedule.assignment, z_int]
    _fill_boundary(out, z.symbols, k, tables.channel.noisy_size, tables.loss.recon_size, boundary)
    estimated = math.fsum(loss_rows[np.arange(n_int), schedule.assignment]) / n_int
    return (
        SymbolSequence(out, tables.loss.recon_size),
        schedule,
        estimated,
    )
