"""Nonnegative matrix factorization solvers.

All solvers are block coordinate descent methods whose every block update
is an exact minimization, so the recorded objective never increases:

* :func:`symnmf` -- ``min ||S - F F^T||^2`` by cyclic coordinate descent; each
  entry update minimizes a quartic in closed form.
* :func:`nmf` -- ``min ||X - U M^T||^2`` by HALS (column-wise updates).
* :func:`jnmf` / :func:`jsnmf` -- joint objectives with coupling penalties,
  also solved column-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp


@dataclass
class FactorizationResult:
    factors: dict
    objective_trace: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False

    def __getitem__(self, name):
        return self.factors[name]

    @property
    def objective(self):
        return self.objective_trace[-1]


def _dense(A):
    return A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)


def _check_nonneg(A, name):
    data = A.data if sp.issparse(A) else A
    if np.any(data < 0):
        raise ValueError(f"{name} has negative entries")
    if not np.all(np.isfinite(data)):
        raise ValueError(f"{name} has non-finite entries")


def _check_k(k, limit):
    if not 1 <= k <= limit:
        raise ValueError(f"rank k={k} out of range (1..{limit})")


def init_factor(rng, shape, scale_source, k):
    """Uniform(0, 1) entries scaled by ``sqrt(mean(source) / k)``."""
    if sp.issparse(scale_source):
        mean = scale_source.sum() / (scale_source.shape[0] * scale_source.shape[1])
    else:
        mean = float(np.mean(scale_source)) if np.size(scale_source) else 0.0
    return rng.uniform(0.0, 1.0, size=shape) * math.sqrt(max(mean, 0.0) / k)


def _converged(trace, tol):
    prev, cur = trace[-2], trace[-1]
    if cur == 0.0:
        return True
    return abs(prev - cur) <= tol * max(abs(prev), np.finfo(float).tiny)


# ---------------------------------------------------------------------------
# SymNMF


def _quartic_argmin(p, q):
    """Minimizer over x >= 0 of ``x^4/4 + p x^2/2 + q x``."""
    h = lambda x: x**4 / 4 + p * x * x / 2 + q * x  # noqa: E731
    candidates = [0.0]
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if disc >= 0:
        r = math.sqrt(disc)
        candidates.append(np.cbrt(-q / 2 + r) + np.cbrt(-q / 2 - r))
    else:
        m = 2 * math.sqrt(-p / 3)
        arg = 3 * q / (p * m)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3
        candidates.extend(m * math.cos(theta - 2 * math.pi * j / 3) for j in range(3))
    best = 0.0
    for x in candidates:
        if x > 0 and h(x) < h(best):
            best = x
    return best


def _symnmf_objective(S, F):
    R = S - F @ F.T
    return float(np.einsum("ij,ij->", R, R))


def symnmf(S, k, seed=0, max_iter=500, tol=1e-5, F0=None):
    """Symmetric NMF ``S ~= F F^T`` with ``F >= 0`` of shape ``(n, k)``.

    Stops when the relative objective decrease falls below ``tol`` or after
    ``max_iter`` sweeps.
    """
    S = _dense(S)
    n = S.shape[0]
    if S.shape != (n, n):
        raise ValueError("S must be square")
    if np.abs(S - S.T).max(initial=0.0) > 1e-10:
        raise ValueError("S must be symmetric")
    _check_nonneg(S, "S")
    _check_k(k, n)
    rng = np.random.default_rng(seed)
    F = init_factor(rng, (n, k), S, k) if F0 is None else np.array(F0, dtype=float)
    G = F.T @ F
    diagS = np.diag(S).copy()
    trace = [_symnmf_objective(S, F)]
    converged = trace[0] == 0.0
    it = 0
    while not converged and it < max_iter:
        it += 1
        for i in range(n):
            Fi = F[i]
            Si = S[i]
            for l in range(k):
                x0 = Fi[l]
                norm_i = Fi @ Fi
                col_rest = G[l, l] - x0 * x0
                p = (norm_i - x0 * x0) - diagS[i] + col_rest
                s_term = Si @ F[:, l] - diagS[i] * x0
                a_term = G[l] @ Fi - x0 * norm_i - x0 * col_rest
                q = -(s_term - a_term)
                x = _quartic_argmin(p, q)
                if x != x0:
                    delta = x - x0
                    Fi[l] = x
                    G[l] += delta * Fi
                    G[:, l] += delta * Fi
                    G[l, l] += x * x - x0 * x0 - 2 * delta * x
        trace.append(_symnmf_objective(S, F))
        converged = _converged(trace, tol)
    return FactorizationResult({"F": F}, trace, it, converged)


# ---------------------------------------------------------------------------
# HALS machinery


def _hals_update(Fac, AtB, BtB, extra_num=None, extra_den=0.0):
    """One pass of exact column updates for ``Fac`` in place.

    Minimizes ``||A - Fac B^T||^2 + (terms folded into extra_num/extra_den)``
    column by column, where ``extra_num`` is a callable returning the extra
    linear term for column ``l`` and ``extra_den`` a per-column array of the
    extra quadratic coefficients.
    """
    k = Fac.shape[1]
    extra_den = np.broadcast_to(np.asarray(extra_den, dtype=float), (k,))
    for l in range(k):
        num = AtB[:, l] - Fac @ BtB[:, l] + Fac[:, l] * BtB[l, l]
        den = BtB[l, l]
        if extra_num is not None:
            num = num + extra_num(l)
            den = den + extra_den[l]
        if den > 0:
            Fac[:, l] = np.maximum(num / den, 0.0)


def _fro2_residual(X, U, M, xnorm2):
    """``||X - U M^T||_F^2`` without forming the product."""
    cross = float(np.sum((X @ M) * U))
    val = xnorm2 - 2.0 * cross + float(np.sum((U.T @ U) * (M.T @ M)))
    return max(val, 0.0)


def _fro2(X):
    if sp.issparse(X):
        return float(np.sum(X.data**2))
    return float(np.sum(X * X))


def nmf(X, k, seed=0, max_iter=500, tol=1e-5):
    """NMF ``X ~= U M^T`` with ``U`` of shape ``(rows, k)``, ``M`` of ``(cols, k)``."""
    X = _as_matrix(X)
    if X.ndim != 2 or min(X.shape) == 0:
        raise ValueError("empty input matrix")
    _check_nonneg(X, "X")
    m, n = X.shape
    _check_k(k, min(m, n))
    rng = np.random.default_rng(seed)
    U = init_factor(rng, (m, k), X, k)
    M = init_factor(rng, (n, k), X, k)
    return _jnmf_core(X, None, U, M, M.copy(), 0.0, 0.0, max_iter, tol, names=("U", "M"))


# ---------------------------------------------------------------------------
# Joint factorizations


def default_joint_params(X, S, k):
    """Heuristic penalties balancing both data terms at initialization.

    ``gamma = ||X||^2 / ||S||^2``, ``beta = 0.1 * gamma * ||S||^2 / k`` and
    ``alpha = gamma``; all zero when ``S`` is zero.
    """
    xs, ss = _fro2(X), _fro2(S)
    if ss == 0:
        return {"alpha": 0.0, "gamma": 0.0, "beta": 0.0}
    gamma = xs / ss
    beta = 0.1 * gamma * ss / k
    return {"alpha": gamma, "gamma": gamma, "beta": beta}


def _check_penalties(**kw):
    for name, val in kw.items():
        if not (val >= 0 and np.isfinite(val)):
            raise ValueError(f"{name} must be a finite nonnegative number, got {val}")


def _jnmf_objective(X, xnorm2, S, snorm2, Z, M, Mt, gamma, beta):
    val = _fro2_residual(X, Z, M, xnorm2)
    if S is not None:
        val += gamma * _fro2_residual(S, M, Mt, snorm2)
    val += beta * float(np.sum((M - Mt) ** 2))
    return val


def _jnmf_core(X, S, Z, M, Mt, gamma, beta, max_iter, tol, names=("Z", "M", "Mt")):
    xnorm2 = _fro2(X)
    snorm2 = _fro2(S) if S is not None else 0.0
    trace = [_jnmf_objective(X, xnorm2, S, snorm2, Z, M, Mt, gamma, beta)]
    converged = trace[0] == 0.0
    it = 0
    while not converged and it < max_iter:
        it += 1
        _hals_update(Z, X @ M, M.T @ M)
        if S is None and beta == 0:
            _hals_update(M, X.T @ Z, Z.T @ Z)
        else:
            SMt = S @ Mt if S is not None else np.zeros_like(M)
            MtMt = Mt.T @ Mt
            extra = lambda l: gamma * (SMt[:, l] - M @ MtMt[:, l] + M[:, l] * MtMt[l, l]) + beta * Mt[:, l]  # noqa: E731
            _hals_update(M, X.T @ Z, Z.T @ Z, extra, gamma * np.diag(MtMt) + beta)
            SM = S @ M if S is not None else np.zeros_like(M)
            _hals_update(Mt, gamma * SM, gamma * (M.T @ M), lambda l: beta * M[:, l], beta)
        trace.append(_jnmf_objective(X, xnorm2, S, snorm2, Z, M, Mt, gamma, beta))
        converged = _converged(trace, tol)
    factors = dict(zip(names, (Z, M, Mt)))
    return FactorizationResult(factors, trace, it, converged)


def _as_matrix(A):
    return sp.csr_array(A, dtype=float) if sp.issparse(A) else np.asarray(A, dtype=float)


def jnmf(X, S, k, gamma=None, beta=None, seed=0, max_iter=500, tol=1e-5):
    """Joint NMF: ``||X - Z M^T||^2 + gamma ||S - M Mt^T||^2 + beta ||M - Mt||^2``.

    ``X`` is ``(m, n)``, ``S`` is symmetric ``(n, n)``; ``M`` and ``Mt`` are
    ``(n, k)``. With ``gamma = beta = 0`` this runs exactly the iterations of
    :func:`nmf` on ``X`` (``Z`` playing ``U``). Penalties left as ``None``
    come from :func:`default_joint_params`.
    """
    X, S = _as_matrix(X), _as_matrix(S)
    m, n = X.shape
    if S.shape != (n, n):
        raise ValueError(f"S has shape {S.shape}, expected {(n, n)}")
    _check_nonneg(X, "X")
    _check_nonneg(S, "S")
    _check_k(k, min(m, n))
    defaults = default_joint_params(X, S, k)
    gamma = defaults["gamma"] if gamma is None else float(gamma)
    beta = defaults["beta"] if beta is None else float(beta)
    _check_penalties(gamma=gamma, beta=beta)
    rng = np.random.default_rng(seed)
    Z = init_factor(rng, (m, k), X, k)
    M = init_factor(rng, (n, k), X, k)
    use_S = S if (gamma > 0 or beta > 0) else None
    return _jnmf_core(X, use_S, Z, M, M.copy(), gamma, beta, max_iter, tol)


def _jsnmf_objective(C, cnorm2, S, snorm2, M, Mh, Mt, alpha, gamma, beta):
    val = _fro2_residual(C, M, Mh, cnorm2) + alpha * float(np.sum((M - Mh) ** 2))
    val += gamma * _fro2_residual(S, M, Mt, snorm2) + beta * float(np.sum((M - Mt) ** 2))
    return val


def jsnmf(C, S, k, alpha=None, gamma=None, beta=None, seed=0, max_iter=500, tol=1e-5,
          init="symnmf"):
    """Joint symmetric NMF.

    Minimizes ``||C - M Mh^T||^2 + alpha ||M - Mh||^2 + gamma ||S - M Mt^T||^2
    + beta ||M - Mt||^2`` over nonnegative ``M, Mh, Mt`` of shape ``(n, k)``.

    ``init="symnmf"`` starts all three factors from a SymNMF of ``C`` (same
    seed); large ``alpha`` otherwise pins ``M`` to ``Mh`` and stalls progress
    from a random start. ``init="random"`` uses a scaled uniform start.
    """
    C, S = _dense(C), _as_matrix(S)
    n = C.shape[0]
    if C.shape != (n, n) or S.shape != (n, n):
        raise ValueError(f"C {C.shape} and S {S.shape} must both be {(n, n)}")
    if np.abs(C - C.T).max(initial=0.0) > 1e-10:
        raise ValueError("C must be symmetric")
    _check_nonneg(C, "C")
    _check_nonneg(S, "S")
    _check_k(k, n)
    defaults = default_joint_params(C, S, k)
    alpha = defaults["alpha"] if alpha is None else float(alpha)
    gamma = defaults["gamma"] if gamma is None else float(gamma)
    beta = defaults["beta"] if beta is None else float(beta)
    _check_penalties(alpha=alpha, gamma=gamma, beta=beta)
    if init == "symnmf":
        M = symnmf(C, k, seed=seed, max_iter=max_iter, tol=tol)["F"]
    elif init == "random":
        M = init_factor(np.random.default_rng(seed), (n, k), C, k)
    else:
        raise ValueError(f"unknown init {init!r}")
    Mh, Mt = M.copy(), M.copy()
    cnorm2, snorm2 = _fro2(C), _fro2(S)
    trace = [_jsnmf_objective(C, cnorm2, S, snorm2, M, Mh, Mt, alpha, gamma, beta)]
    converged = trace[0] == 0.0
    it = 0
    while not converged and it < max_iter:
        it += 1
        CMh, MhMh = C @ Mh, Mh.T @ Mh
        SMt, MtMt = S @ Mt, Mt.T @ Mt
        extra = lambda l: alpha * Mh[:, l] + gamma * (SMt[:, l] - M @ MtMt[:, l] + M[:, l] * MtMt[l, l]) + beta * Mt[:, l]  # noqa: E731
        _hals_update(M, CMh, MhMh, extra, alpha + gamma * np.diag(MtMt) + beta)
        _hals_update(Mh, C.T @ M, M.T @ M, lambda l: alpha * M[:, l], alpha)
        SM, MM = S @ M, M.T @ M
        _hals_update(Mt, gamma * SM, gamma * MM, lambda l: beta * M[:, l], beta)
        trace.append(_jsnmf_objective(C, cnorm2, S, snorm2, M, Mh, Mt, alpha, gamma, beta))
        converged = _converged(trace, tol)
    return FactorizationResult({"M": M, "Mh": Mh, "Mt": Mt}, trace, it, converged)
