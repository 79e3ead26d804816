"""Exact smoothing posteriors for a Markov chain with known parameter switches.

Given the noisy sequence, a tiling of 1..n into segments each carrying its
own transition matrix, and the channel, the normalized forward and backward
recursions produce the exact per-position posterior of the hidden state
given the whole observation.  The chain is initialized from the first
segment's stationary law; the transition used for the step t -> t+1 is the
matrix of the segment containing t+1, so a new segment's dynamics apply
already on the step entering it.  Per-step renormalization keeps the
recursions stable for sequences of millions of symbols.
"""

from __future__ import annotations

import numpy as np

from .core import ChannelModel, LossMatrix, SymbolSequence
from .errors import ValidationError
from .sources import stationary_distribution


def _validate_segments(segments, n: int, num_states: int) -> list[tuple[int, int, np.ndarray]]:
    cleaned = []
    expected_start = 1
    for start, end, transition in segments:
        start, end = int(start), int(end)
        p = np.asarray(transition, dtype=np.float64)
        if start != expected_start or end < start:
            raise ValidationError("segments must tile 1..n in order without gaps")
        if p.shape != (num_states, num_states):
            raise ValidationError("each transition matrix must be square over the clean alphabet")
        if p.min() < 0 or np.max(np.abs(p.sum(axis=1) - 1.0)) > 1e-9:
            raise ValidationError("transition matrix rows must be distributions")
        cleaned.append((start, end, p))
        expected_start = end + 1
    if expected_start != n + 1:
        raise ValidationError(f"segments must tile 1..{n} exactly")
    return cleaned


def _binary_posteriors(z, segments, pi, initial):
    """Scalar-arithmetic forward-backward for two hidden states."""
    n = z.shape[0]
    e0 = pi[0, z].tolist()
    e1 = pi[1, z].tolist()
    alpha = np.empty((n, 2))
    a0 = initial[0] * e0[0]
    a1 = initial[1] * e1[0]
    s = a0 + a1
    if s <= 0.0:
        raise ValidationError("observation has zero probability under the model")
    a0 /= s
    a1 /= s
    alpha[0, 0] = a0
    alpha[0, 1] = a1
    seg_iter = [(start, end, p) for start, end, p in segments]
    si = 0
    for t in range(1, n):
        while t + 1 > seg_iter[si][1]:
            si += 1
        p = seg_iter[si][2]
        b0 = (a0 * p[0, 0] + a1 * p[1, 0]) * e0[t]
        b1 = (a0 * p[0, 1] + a1 * p[1, 1]) * e1[t]
        s = b0 + b1
        if s <= 0.0:
            raise ValidationError("observation has zero probability under the model")
        a0, a1 = b0 / s, b1 / s
        alpha[t, 0] = a0
        alpha[t, 1] = a1
    beta = np.empty((n, 2))
    b0 = b1 = 1.0
    beta[n - 1, 0] = beta[n - 1, 1] = 1.0
    si = len(seg_iter) - 1
    for t in range(n - 2, -1, -1):
        while t + 2 < seg_iter[si][0]:
            si -= 1
        p = seg_iter[si][2]
        w0 = e0[t + 1] * b0
        w1 = e1[t + 1] * b1
        c0 = p[0, 0] * w0 + p[0, 1] * w1
        c1 = p[1, 0] * w0 + p[1, 1] * w1
        s = c0 + c1
        b0, b1 = c0 / s, c1 / s
        beta[t, 0] = b0
        beta[t, 1] = b1
    post = alpha * beta
    post /= post.sum(axis=1, keepdims=True)
    return post


def fb_posteriors(z: SymbolSequence, segments, channel: ChannelModel) -> np.ndarray:
    """Posterior P(X_t = x | z) for every position, shape (n, clean_size).

    ``segments`` is a list of (start, end, transition_matrix) with 1-based
    inclusive bounds tiling 1..n.
    """
    n = len(z)
    if z.alphabet_size != channel.noisy_size:
        raise ValidationError("sequence alphabet does not match the channel's noisy alphabet")
    num_states = channel.clean_size
    segs = _validate_segments(segments, n, num_states)
    initial = stationary_distribution(segs[0][2])
    zs = z.symbols
    if num_states == 2:
        return _binary_posteriors(zs, segs, channel.pi, initial)
    return _generic_posteriors(zs, segs, channel.pi, initial)


def _generic_posteriors(z, segments, pi, initial):
    n = z.shape[0]
    num_states = pi.shape[0]
    emissions = pi[:, z].T  # (n, states)
    alpha = np.empty((n, num_states))
    a = initial * emissions[0]
    s = a.sum()
    if s <= 0.0:
        raise ValidationError("observation has zero probability under the model")
    alpha[0] = a / s
    si = 0
    for t in range(1, n):
        while t + 1 > segments[si][1]:
            si += 1
        a = (alpha[t - 1] @ segments[si][2]) * emissions[t]
        s = a.sum()
        if s <= 0.0:
            raise ValidationError("observation has zero probability under the model")
        alpha[t] = a / s
    beta = np.empty((n, num_states))
    beta[n - 1] = 1.0
    si = len(segments) - 1
    for t in range(n - 2, -1, -1):
        while t + 2 < segments[si][0]:
            si -= 1
        b = segments[si][2] @ (emissions[t + 1] * beta[t + 1])
        beta[t] = b / b.sum()
    post = alpha * beta
    post /= post.sum(axis=1, keepdims=True)
    return post


def map_denoise(posteriors: np.ndarray, loss: LossMatrix) -> SymbolSequence:
    """Loss-minimizing reconstruction per position, ties to the smallest symbol."""
    posteriors = np.asarray(posteriors, dtype=np.float64)
    if posteriors.ndim != 2 or posteriors.shape[1] != loss.clean_size:
        raise ValidationError("posteriors must have one row per position over the clean alphabet")
    costs = posteriors @ loss.lam
    return SymbolSequence(np.argmin(costs, axis=1), loss.recon_size)
