"""Limiting spectral density of the Beta matrix and a quadrature oracle.

The continuous part of the limiting law lives on ``(x_l, x_r)``; point masses
at 0 and 1 (present when ``y1 > 1`` or ``y2 > 1``) are excluded, exactly as
the trimmed statistics exclude the structural eigenvalues.  Integrating a
kernel against this density therefore reproduces the closed-form
per-eigenvalue limits ``ell`` in every regime and serves as an
independent check on them.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .exceptions import OracleError

QUAD_EPSABS = 1e-9

LOG_X = "log-x"
FULL_LRT_KERNEL = "full-lrt-kernel"
KERNELS = (LOG_X, FULL_LRT_KERNEL)


@dataclass(frozen=True)
class SupportInterval:
    x_l: float
    x_r: float


def support(r):
    y1, y2, h = r.y1, r.y2, r.h
    s2 = (y1 + y2) ** 2
    return SupportInterval(y2 * (h - y1) ** 2 / s2, y2 * (h + y1) ** 2 / s2)


def limiting_density(r, x):
    """Density of the continuous part at ``x`` (scalar or array); zero off the support."""
    sup = support(r)
    x = np.asarray(x, dtype=np.float64)
    inside = (x > sup.x_l) & (x < sup.x_r)
    xs = np.where(inside, x, 0.5 * (sup.x_l + sup.x_r))
    val = (r.alpha + 1) * np.sqrt((sup.x_r - xs) * (xs - sup.x_l)) / (2 * math.pi * r.y1 * xs * (1 - xs))
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


def _kernel(r, kernel):
    if kernel == LOG_X:
        return math.log
    if kernel == FULL_LRT_KERNEL:
        c1, c2 = r.c1, r.c2
        return lambda x: c1 * math.log(x) + c2 * math.log1p(-x)
    if callable(kernel):
        return kernel
    raise ValueError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")


def integrate_density(r, kernel=None):
    """Integrate ``kernel`` (default: 1) against the continuous limiting density.

    Uses ``x = x_l + (x_r - x_l) sin^2(t)``, which turns the square-root
    endpoint behaviour of the density into a smooth integrand on ``(0, pi/2)``.
    """
    sup = support(r)
    width = sup.x_r - sup.x_l
    scale = (r.alpha + 1) / (2 * math.pi * r.y1)
    f = (lambda x: 1.0) if kernel is None else _kernel(r, kernel)

    def integrand(t):
        s, c = math.sin(t), math.cos(t)
        x = sup.x_l + width * s * s
        if x <= 0.0 or x >= 1.0:
            return 0.0
        # sqrt((x_r-x)(x-x_l)) dx = 2 width^2 s^2 c^2 dt
        return f(x) * scale * 2 * width * width * s * s * c * c / (x * (1 - x))

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(integrand, 0.0, math.pi / 2, epsabs=QUAD_EPSABS,
                                        epsrel=1e-12, limit=400)
        except integrate.IntegrationWarning as exc:
            raise OracleError(f"quadrature did not converge: {exc}") from exc
    if not math.isfinite(value) or err > 10 * QUAD_EPSABS:
        raise OracleError(f"quadrature error estimate {err:g} exceeds tolerance")
    return value


def quadrature_centering(r, kernel=LOG_X):
    """Per-eigenvalue limit by numerical integration.

    ``kernel="log-x"`` targets the lite statistic's ``ell``;
    ``kernel="full-lrt-kernel"`` (``c1 log x + c2 log(1-x)``) the full one.
    """
    return integrate_density(r, kernel)
