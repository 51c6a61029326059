"""Product quadrature rules for disk integrals in polar coordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = ["QuadratureSpec", "gauss_legendre_01", "trapezoid_periodic", "trapezoid_closed"]


@dataclass(frozen=True)
class QuadratureSpec:
    """Radial Gauss-Legendre order and angular trapezoid order."""

    n_r: int = 64
    n_phi: int = 512

    def __post_init__(self):
        if self.n_r < 1 or self.n_phi < 1:
            raise DomainError("quadrature orders must be positive")


@lru_cache(maxsize=None)
def gauss_legendre_01(n: int):
    """Gauss-Legendre nodes and weights mapped to [0, 1]; exact to degree 2n-1."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


@lru_cache(maxsize=None)
def trapezoid_periodic(n: int):
    """n equispaced nodes on [0, 2pi) with uniform weights 2pi/n.

    Exact for trigonometric polynomials of degree < n.
    """
    nodes = 2.0 * math.pi * np.arange(n) / n
    weights = np.full(n, 2.0 * math.pi / n)
    return nodes, weights


@lru_cache(maxsize=None)
def trapezoid_closed(n: int, a: float = 0.0, b: float = math.pi):
    """Composite trapezoid on [a, b] with n subintervals (n+1 nodes)."""
    nodes = np.linspace(a, b, n + 1)
    h = (b - a) / n
    weights = np.full(n + 1, h)
    weights[0] = weights[-1] = h / 2.0
    return nodes, weights
