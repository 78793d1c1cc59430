"""Vectorized real roots of monic cubics ``x^3 + c2 x^2 + c1 x + c0``."""
from __future__ import annotations

import numpy as np

_EPS = np.finfo(float).eps


def _value(x, c2, c1, c0):
    return ((x + c2) * x + c1) * x + c0


def _size(x, c2, c1, c0):
    ax = np.abs(x)
    return ((ax + np.abs(c2)) * ax + np.abs(c1)) * ax + np.abs(c0)


def _polish(x, c2, c1, c0, steps):
    # Newton steps, kept only where they reduce |p(x)|
    for _ in range(steps):
        val = _value(x, c2, c1, c0)
        der = (3.0 * x + 2.0 * c2) * x + c1
        ok = np.isfinite(x) & (der != 0)
        with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
            trial = x - val / np.where(ok, der, 1.0)
            better = ok & (np.abs(_value(trial, c2, c1, c0)) < np.abs(val))
        x = np.where(better, trial, x)
    return x


def _dominant_root(c2, c1, c0):
    """One real root of the (scaled) cubic, the largest in modulus if there are three."""
    shift = c2 / 3.0
    # depressed cubic t^3 + p t + q with x = t - shift
    p = c1 - c2 * shift
    q = (2.0 * shift * shift - c1) * shift + c0
    half_q = 0.5 * q
    third_p = p / 3.0
    disc = half_q * half_q + third_p * third_p * third_p

    root = np.empty_like(c2)
    one = disc > 0
    if np.any(one):
        hq, tp, d = half_q[one], third_p[one], disc[one]
        sgn = np.where(hq >= 0, 1.0, -1.0)
        big = -sgn * np.cbrt(np.abs(hq) + np.sqrt(d))
        t = np.where(big != 0, big - tp / np.where(big == 0, 1.0, big), 0.0)
        root[one] = t - shift[one]
    three = ~one
    if np.any(three):
        hq, tp = half_q[three], third_p[three]
        r = np.sqrt(np.maximum(-tp, 0.0))
        with np.errstate(invalid="ignore", divide="ignore"):
            cos_arg = np.where(r > 0, -hq / (r * r * r), 0.0)
        phi = np.arccos(np.clip(cos_arg, -1.0, 1.0))
        cands = np.stack([2.0 * r * np.cos((phi - 2.0 * np.pi * k) / 3.0) - shift[three]
                          for k in range(3)], axis=1)
        root[three] = cands[np.arange(cands.shape[0]), np.argmax(np.abs(cands), axis=1)]
    return root


def real_cubic_roots(c2, c1, c0, polish_steps: int = 1) -> np.ndarray:
    """Real roots of ``x^3 + c2 x^2 + c1 x + c0`` for arrays of coefficients.

    Returns an ``(M, 3)`` array; slots without a real root hold NaN, and a
    double root fills two slots.

    The variable is first rescaled so the coefficients are of order one.
    A dominant root ``r1`` comes from the cancellation-free Cardano form
    (one real root) or the trigonometric form (three), polished by Newton.
    The other two solve ``x^2 - S x + P`` with ``P = -c0/r1`` and
    ``S = (c1 - P)/r1`` when ``r1`` dominates, ``S = -c2 - r1`` otherwise,
    which keeps clustered roots accurate.
    Every root then gets ``polish_steps`` further Newton steps.
    """
    c2, c1, c0 = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (c2, c1, c0)))
    c2_in, c1_in, c0_in = (np.atleast_1d(c).ravel() for c in (c2, c1, c0))
    # x = s y with s the root-size scale keeps everything clear of over/underflow
    s = np.maximum.reduce([np.abs(c2_in), np.sqrt(np.abs(c1_in)), np.cbrt(np.abs(c0_in))])
    # a power of two, so the rescaling itself is exact
    s = np.where(s > 0, np.exp2(np.ceil(np.log2(np.where(s > 0, s, 1.0)))), 1.0)
    c2, c1, c0 = c2_in / s, c1_in / s / s, c0_in / s / s / s

    r1 = _polish(_dominant_root(c2, c1, c0), c2, c1, c0, 3)
    roots = np.full((c2.size, 3), np.nan)
    roots[:, 0] = r1

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        zero = r1 == 0
        safe = np.where(zero, 1.0, r1)
        # r1 = 0 forces c0 = 0, leaving x^2 + c2 x + c1
        prod = np.where(zero, c1, -c0 / safe)
        # the sum of the other two roots, in whichever Vieta form does not cancel
        dominant = r1 * r1 >= np.abs(prod)
        total = np.where(dominant & ~zero, (c1 - prod) / safe, -c2 - r1)
        disc = total * total - 4.0 * prod
        # a double root can round to a slightly negative discriminant; the
        # error inherited from r1 grows with r1's condition number
        der = np.abs((3.0 * r1 + 2.0 * c2) * r1 + c1)
        cond = np.where(der * np.abs(r1) > 0, _size(r1, c2, c1, c0) / (der * np.abs(safe)), 1.0)
        tol = 16 * _EPS * (total * total + 4.0 * np.abs(prod)) * np.maximum(cond, 1.0)
        real = np.isfinite(disc) & (disc >= -tol)
        sq = np.sqrt(np.maximum(disc, 0.0))
        big = 0.5 * (total + np.where(total >= 0, sq, -sq))
        small = np.where(big != 0, prod / np.where(big == 0, 1.0, big), 0.0)
    roots[real, 1] = big[real]
    roots[real, 2] = small[real]

    if polish_steps:
        roots = np.stack([_polish(roots[:, k], c2, c1, c0, polish_steps) for k in range(3)], axis=1)
    # drop double-root candidates that sat next to a complex pair
    resid = np.abs(_value(roots, c2[:, None], c1[:, None], c0[:, None]))
    spurious = resid > 1e-8 * _size(roots, c2[:, None], c1[:, None], c0[:, None])
    spurious[:, 0] = False
    roots[spurious] = np.nan
    return roots * s[:, None]
