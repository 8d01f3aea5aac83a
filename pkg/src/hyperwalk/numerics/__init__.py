"""Numerical kernels: eigensolvers, k-means, matching and NMF solvers."""

from .assignment import hungarian
from .eigen import EigResult, symmetric_eigs, truncated_svd
from .kmeans import KMeansResult, kmeans
from .nmf import FactorizationResult, default_joint_params, jnmf, jsnmf, nmf, symnmf

__all__ = [
    "EigResult",
    "FactorizationResult",
    "KMeansResult",
    "default_joint_params",
    "hungarian",
    "jnmf",
    "jsnmf",
    "kmeans",
    "nmf",
    "symmetric_eigs",
    "symnmf",
    "truncated_svd",
]
