"""Diagonal forward operators, the l2 model problem and noisy data."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .hilbert_scale import DiagonalScale, SeqVector, norm_tau

MODEL_N = 6000
MODEL_Q = 2.31
MODEL_KAPPA = 1.8
MODEL_RHO = 3.0
MODEL_COEFFICIENT = 7.0


class Kind(enum.Enum):
    DIAGONAL_QUADRATIC = "quadratic"
    DIAGONAL_LINEAR = "linear"


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """A diagonal operator equation ``F(u) = f`` posed on a ball.

    For ``DIAGONAL_QUADRATIC`` the forward map is
    ``F(u)_n = a_n (c u_n + u_n^2)`` with ``c = linear_coefficient``;
    for ``DIAGONAL_LINEAR`` it is ``F(u)_n = a_n u_n``.
    The domain of ``F`` is the closed ball ``||u|| <= domain_radius``.
    ``c_a`` and ``c_b`` are the two-sided constants in
    ``c_a ||u - u_exact||_{-a} <= ||F(u) - F(u_exact)|| <= c_b ||u - u_exact||_{-a}``.
    """

    kind: Kind
    forward_multipliers: np.ndarray
    linear_coefficient: float
    domain_radius: float
    exact_solution: np.ndarray
    initial_guess: np.ndarray
    scale: DiagonalScale
    c_a: float
    c_b: float

    def __post_init__(self):
        n = self.scale.size
        for name in ("forward_multipliers", "exact_solution", "initial_guess"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"{name} must have length {n}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not 0 < self.c_a <= self.c_b:
            raise ValueError(f"need 0 < c_a <= c_b, got {self.c_a}, {self.c_b}")
        if not np.linalg.norm(self.exact_solution) < self.domain_radius:
            raise ValueError("exact solution must be an interior point of the domain ball")
        if not np.linalg.norm(self.initial_guess) <= self.domain_radius:
            raise ValueError("initial guess must lie in the domain ball")
        # raises OverflowError if the initial guess is not in D(B)
        norm_tau(self.scale, self.initial_guess, 1.0)

    @property
    def size(self) -> int:
        return self.scale.size

    @property
    def degree_a(self) -> float:
        return self.scale.degree_a

    @property
    def rate_exponent(self) -> float:
        """``a / (2a + 2)``."""
        a = self.degree_a
        return a / (2 * a + 2)

    @cached_property
    def exact_data(self) -> np.ndarray:
        """``f = F(u_exact)``."""
        f = forward(self, self.exact_solution)
        f.setflags(write=False)
        return f

    def in_domain(self, u: SeqVector, rtol: float = 1e-12) -> bool:
        return float(np.linalg.norm(u)) <= self.domain_radius * (1 + rtol)


def forward(p: ProblemSpec, u: SeqVector) -> SeqVector:
    """Evaluate ``F(u)`` coordinate-wise."""
    u = np.asarray(u, dtype=float)
    if p.kind is Kind.DIAGONAL_QUADRATIC:
        return p.forward_multipliers * (p.linear_coefficient * u + u * u)
    return p.forward_multipliers * u


def log_source_solution(n: int, q: float = MODEL_Q) -> np.ndarray:
    """``u_1 = 1`` and ``u_n = 1 / (sqrt(n) (ln n)^q)`` for ``n >= 2``."""
    idx = np.arange(1, n + 1, dtype=float)
    u = np.ones(n)
    tail = idx[1:]
    u[1:] = 1.0 / (np.sqrt(tail) * np.log(tail) ** q)
    return u


def log_source_element(n: int, q: float = MODEL_Q, kappa: float = MODEL_KAPPA,
                       smoothing_exponent: float = 4.0) -> np.ndarray:
    """Source element ``w`` with ``u_n = phi(g_n) w_n`` for ``n >= 2``.

    With ``g_n = n^{-s}`` and ``phi(t) = (-ln t)^{-kappa}`` one has
    ``phi(g_n) = (s ln n)^{-kappa}``, hence
    ``w_n = s^kappa / (sqrt(n) (ln n)^{q - kappa})``. ``w_1`` is set to zero
    because ``g_1 = 1`` lies outside the range where ``phi`` is used.
    """
    idx = np.arange(2, n + 1, dtype=float)
    w = np.zeros(n)
    w[1:] = smoothing_exponent**kappa / (np.sqrt(idx) * np.log(idx) ** (q - kappa))
    return w


def build_model_problem(n: int = MODEL_N, q: float = MODEL_Q, rho: float = MODEL_RHO,
                        coefficient: float = MODEL_COEFFICIENT) -> ProblemSpec:
    """The quadratic l2 model: ``a_n = 1/n``, ``b_n = n``, ``a = 1``, zero initial guess.

    Since ``(F(u) - F(v))_n = a_n (u_n - v_n)(c + u_n + v_n)`` and
    ``|u_n|, |v_n| <= rho`` on the ball, the structural constants are
    ``c_a = c - 2 rho`` and ``c_b = c + 2 rho`` (1 and 13 by default).
    """
    if n < 2:
        raise ValueError("N must be at least 2")
    if not coefficient > 2 * rho:
        raise ValueError("linear coefficient must exceed 2*rho for the lower bound to hold")
    idx = np.arange(1, n + 1, dtype=float)
    return ProblemSpec(
        kind=Kind.DIAGONAL_QUADRATIC,
        forward_multipliers=1.0 / idx,
        linear_coefficient=coefficient,
        domain_radius=rho,
        exact_solution=log_source_solution(n, q),
        initial_guess=np.zeros(n),
        scale=DiagonalScale(idx, 1.0),
        c_a=coefficient - 2 * rho,
        c_b=coefficient + 2 * rho,
    )


def build_linear_problem(forward_multipliers, scale: DiagonalScale, exact_solution,
                         initial_guess=None, domain_radius: float = np.inf) -> ProblemSpec:
    """Diagonal linear problem ``A = diag(forward_multipliers)``.

    The structural constants are the extreme values of ``a_n b_n^a``.
    """
    a_n = np.asarray(forward_multipliers, dtype=float)
    ratio = np.abs(a_n) * scale.power(scale.degree_a)
    if initial_guess is None:
        initial_guess = np.zeros(scale.size)
    return ProblemSpec(
        kind=Kind.DIAGONAL_LINEAR,
        forward_multipliers=a_n,
        linear_coefficient=0.0,
        domain_radius=domain_radius,
        exact_solution=exact_solution,
        initial_guess=initial_guess,
        scale=scale,
        c_a=float(ratio.min()),
        c_b=float(ratio.max()),
    )


@dataclass(frozen=True, eq=False)
class NoisySample:
    """Perturbed data ``f_delta`` with ``||f_delta - f|| <= delta``."""

    data: np.ndarray
    delta: float
    seed: int
    distribution: str = "uniform"


NOISE_DISTRIBUTIONS = ("uniform", "signs")


def generate_noise(p: ProblemSpec, delta: float, seed: int, distribution: str = "uniform") -> NoisySample:
    """Perturb ``F(u_exact)`` coordinate-wise with ``|Delta_n| <= delta/sqrt(N)``.

    ``"uniform"`` draws ``Delta_n`` i.i.d. uniform on
    ``[-delta/sqrt(N), delta/sqrt(N)]``; ``"signs"`` draws
    ``Delta_n = +-delta/sqrt(N)`` with equally likely signs, so that
    ``||f_delta - f|| = delta`` exactly.
    """
    if not delta >= 0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    if distribution not in NOISE_DISTRIBUTIONS:
        raise ValueError(f"unknown noise distribution {distribution!r}")
    f = p.exact_data
    if delta == 0:
        data = f.copy()
    else:
        bound = delta / np.sqrt(p.size)
        rng = np.random.default_rng(seed)
        if distribution == "uniform":
            data = f + rng.uniform(-bound, bound, size=p.size)
        else:
            data = f + bound * rng.choice((-1.0, 1.0), size=p.size)
    data.setflags(write=False)
    return NoisySample(data=data, delta=float(delta), seed=int(seed), distribution=distribution)


def structural_ratio(p: ProblemSpec, u: SeqVector) -> float:
    """``||F(u) - f|| / ||u - u_exact||_{-a}``."""
    diff = np.asarray(u, dtype=float) - p.exact_solution
    denom = norm_tau(p.scale, diff, -p.degree_a)
    if denom == 0:
        raise ZeroDivisionError("u coincides with the exact solution")
    return float(np.linalg.norm(forward(p, u) - p.exact_data)) / denom


def random_ball_point(p: ProblemSpec, rng: np.random.Generator) -> np.ndarray:
    """Random element of the domain ball with finite ``||.||_1``.

    Coordinates are uniform on [-1, 1], damped by ``b_n^{-1.5}`` so the
    ``||.||_1`` norm stays bounded as ``N`` grows, then rescaled to a
    uniform random radius inside the ball.
    """
    v = rng.uniform(-1.0, 1.0, p.size) * p.scale.power(-1.5)
    radius = p.domain_radius if np.isfinite(p.domain_radius) else 1.0
    return v * (radius * rng.uniform(0.0, 1.0) / np.linalg.norm(v))


def verify_norm_equivalence(p: ProblemSpec, samples: int, seed: int) -> tuple[float, float]:
    """Empirical range of :func:`structural_ratio` over random ball points."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(samples):
        u = random_ball_point(p, rng)
        if np.array_equal(u, p.exact_solution):
            continue
        ratios.append(structural_ratio(p, u))
    if not ratios:
        raise ValueError("no usable samples")
    return min(ratios), max(ratios)
