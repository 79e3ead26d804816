"""Independent brute-force oracles used to pin expected values in tests.

Everything here recomputes results from first principles (full enumeration,
direct linear solves) without touching the library's dynamic programs, so a
shared bug between implementation and test is structurally impossible.
"""

from itertools import product

import numpy as np


def schedule_min_by_product(loss_rows, context_ids, m):
    """Exact minimum total loss over all rule schedules with <= min(n(c), m)
    switches inside each context chain, by full product enumeration.

    loss_rows: (n_int, N) per-position losses; context_ids: (n_int,) ints.
    Only usable for tiny chains (N**L candidates per context).
    """
    total = 0.0
    for cid in np.unique(context_ids):
        idx = np.nonzero(context_ids == cid)[0]
        w = loss_rows[idx]
        length, num_rules = w.shape
        budget = min(length, m)
        best = np.inf
        for assign in product(range(num_rules), repeat=length):
            switches = sum(a != b for a, b in zip(assign, assign[1:]))
            if switches > budget:
                continue
            cost = sum(w[p, assign[p]] for p in range(length))
            if cost < best:
                best = cost
        total += best
    return total


def hmm_posteriors_by_enumeration(z, transitions_per_step, initial, pi):
    """Smoothing posteriors by summation over all hidden state paths.

    transitions_per_step[t] is the matrix governing the step t -> t+1
    (0-based), so its length is n-1.  Only usable for n <= ~12.
    """
    n = len(z)
    num_states = pi.shape[0]
    post = np.zeros((n, num_states))
    total = 0.0
    for path in product(range(num_states), repeat=n):
        p = initial[path[0]] * pi[path[0], z[0]]
        for t in range(1, n):
            p *= transitions_per_step[t - 1][path[t - 1], path[t]] * pi[path[t], z[t]]
        total += p
        for t in range(n):
            post[t, path[t]] += p
    return post / total


def solve_right_inverse_2x2(pi):
    """H = pi^T (pi pi^T)^{-1} for a 2x2 channel via the explicit adjugate."""
    a, b = pi[0]
    c, d = pi[1]
    det = a * d - b * c
    inv = np.array([[d, -b], [-c, a]]) / det
    return inv
