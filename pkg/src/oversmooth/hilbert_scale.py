"""Diagonal Hilbert scales on truncated sequence spaces.

Every element of the sequence space is a plain length-``N`` float array.
A :class:`DiagonalScale` stores the eigenvalues ``b_n`` of the generator
``B`` together with the degree of ill-posedness ``a``; the scale norms
``||u||_tau = ||B^tau u||`` and the smoothing operator
``G = B^{-(2a+2)}`` are all coordinate-wise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SeqVector = np.ndarray


@dataclass(frozen=True, eq=False)
class DiagonalScale:
    """Generator ``B = diag(multipliers)`` of a Hilbert scale.

    Parameters
    ----------
    multipliers : array
        Eigenvalues ``b_n`` of ``B``; strictly positive.
    degree_a : float
        Degree of ill-posedness ``a > 0``.
    """

    multipliers: np.ndarray
    degree_a: float

    def __post_init__(self):
        b = np.asarray(self.multipliers, dtype=float)
        if b.ndim != 1 or b.size == 0:
            raise ValueError("multipliers must be a non-empty 1-d array")
        if not np.all(np.isfinite(b)) or np.any(b <= 0):
            raise ValueError("multipliers must be finite and strictly positive")
        if not self.degree_a > 0:
            raise ValueError("degree_a must be positive")
        b.setflags(write=False)
        object.__setattr__(self, "multipliers", b)
        object.__setattr__(self, "_log_b", np.log(b))

    @classmethod
    def natural(cls, n: int, degree_a: float = 1.0) -> "DiagonalScale":
        """Scale with ``b_n = n`` for ``n = 1..N``."""
        return cls(np.arange(1, n + 1, dtype=float), degree_a)

    @property
    def size(self) -> int:
        return self.multipliers.size

    @property
    def lower_bound(self) -> float:
        """The constant ``m`` in ``||B u|| >= m ||u||``."""
        return float(self.multipliers.min())

    @property
    def smoothing_exponent(self) -> float:
        """``2a + 2``, so that ``G = B^{-smoothing_exponent}``."""
        return 2.0 * self.degree_a + 2.0

    def power(self, tau: float) -> np.ndarray:
        """Diagonal of ``B^tau``, evaluated in log space."""
        return np.exp(tau * self._log_b)

    def g_eigenvalues(self) -> np.ndarray:
        """Diagonal of ``G = B^{-(2a+2)}``."""
        return self.power(-self.smoothing_exponent)

    def g_power(self, theta: float) -> np.ndarray:
        """Diagonal of ``G^theta``."""
        return self.power(-self.smoothing_exponent * theta)


def _check_vector(scale: DiagonalScale, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (scale.size,):
        raise ValueError(f"expected a vector of length {scale.size}, got shape {u.shape}")
    return u


def apply_B_power(scale: DiagonalScale, u: SeqVector, tau: float) -> SeqVector:
    """Coordinate-wise ``(b_n^tau u_n)``."""
    u = _check_vector(scale, u)
    with np.errstate(over="ignore", invalid="ignore"):
        out = scale.power(tau) * u
    if not np.all(np.isfinite(out)):
        raise OverflowError(f"B^{tau} u is not finite")
    return out


def norm_tau(scale: DiagonalScale, u: SeqVector, tau: float) -> float:
    """Scale norm ``||u||_tau = (sum_n b_n^{2 tau} u_n^2)^{1/2}``."""
    v = apply_B_power(scale, u, tau)
    with np.errstate(over="ignore"):
        value = float(np.linalg.norm(v))
    if not np.isfinite(value):
        raise OverflowError(f"||u||_{tau} is not finite")
    return value


def filter_factors(scale: DiagonalScale, alpha: float) -> np.ndarray:
    """Tikhonov filter ``g_n / (g_n + alpha)`` of ``G``; each lies in (0, 1)."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    g = scale.g_eigenvalues()
    return g / (g + alpha)


def apply_G_filter(scale: DiagonalScale, u: SeqVector, alpha: float) -> SeqVector:
    """``G (G + alpha I)^{-1} u``, computed per coordinate."""
    u = _check_vector(scale, u)
    return filter_factors(scale, alpha) * u
