"""Straight-line reference transcriptions of the two stage-wise boosters.

Deliberately written as flat loops with no shared code beyond the weak
learner and the elementwise numpy primitives, so they serve as an
independent dual implementation for fidelity checks.  Both return the
per-round (epsilon, omega) sequences and every intermediate weight
array.
"""

import numpy as np

from mcboost.weak import BinaryProblem


def straight_fixed_code(X, y, entries, learner, T):
    """Fixed-code booster: one hypothesis per code column per round."""
    n = X.shape[0]
    L = entries.shape[1]
    bits = entries[y - 1, :].astype(float)
    u = np.full((n, L), 1.0 / (n * L))
    eps_seq, omega_seq, u_seq = [], [], []
    for _ in range(T):
        u = u / np.sum(u)
        hyps = []
        for l in range(L):
            hyps.append(learner(BinaryProblem(X, bits[:, l].astype(int),
                                              u[:, l])))
        H = np.column_stack([h.predict(X) for h in hyps]).astype(float)
        eps = float(np.sum(u * (bits != H)))
        eps = min(max(eps, 1e-10), 1.0 - 1e-10)
        omega = 0.5 * np.log((1.0 - eps) / eps)
        u = u * np.exp(-omega * bits * H)
        eps_seq.append(eps)
        omega_seq.append(omega)
        u_seq.append(u.copy())
    return eps_seq, omega_seq, u_seq


def straight_incremental_code(X, y, stream, learner, T):
    """Incremental-code booster: one random column per round."""
    n = X.shape[0]
    C = stream.num_classes
    u = np.full((n, C), 1.0 / (n * (C - 1)))
    u[np.arange(n), y - 1] = 0.0
    eps_seq, omega_seq, u_seq = [], [], []
    for _ in range(T):
        col = stream.next_column()
        bits_y = col[y - 1].astype(float)
        differs = (col[None, :] != col[y - 1][:, None])
        u = u / np.sum(u)
        d = np.sum(u * differs, axis=1)
        total = np.sum(d)
        if total > 0:
            d = d / total
        else:
            d = np.full(n, 1.0 / n)
        h = learner(BinaryProblem(X, bits_y.astype(int), d))
        pred = h.predict(X).astype(float)
        eps = float(np.sum(d * (bits_y != pred)))
        eps = min(max(eps, 1e-10), 1.0 - 1e-10)
        omega = 0.25 * np.log((1.0 - eps) / eps)
        u = u * np.exp(-omega * (bits_y[:, None] - col[None, :].astype(float))
                       * pred[:, None])
        eps_seq.append(eps)
        omega_seq.append(omega)
        u_seq.append(u.copy())
    return eps_seq, omega_seq, u_seq
