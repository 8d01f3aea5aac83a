"""Maximum-weight perfect matching between two index sets."""

import numpy as np
from scipy.optimize import linear_sum_assignment


def hungarian(score):
    """Permutation ``sigma`` maximizing ``sum_i score[i, sigma[i]]``.

    Thin wrapper over SciPy's Kuhn-Munkres solver (Jonker-Volgenant variant).
    """
    score = np.asarray(score, dtype=float)
    if score.ndim != 2 or score.shape[0] != score.shape[1]:
        raise ValueError(f"score matrix must be square, got shape {score.shape}")
    if not np.all(np.isfinite(score)):
        raise ValueError("score matrix has non-finite entries")
    rows, cols = linear_sum_assignment(score, maximize=True)
    sigma = np.empty(score.shape[0], dtype=int)
    sigma[rows] = cols
    return sigma
