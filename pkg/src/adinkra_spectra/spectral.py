"""Test-function pairs and the trace-formula spectral actions.

The pair convention follows the compact-support side: h is even, real,
supported in [-1, 1]; the spectral-side function is f(r) = integral of
h(t) e^{irt} dt, evaluated by Gauss-Legendre quadrature (so f is exact
only for |r| up to roughly the node count).  All identity terms reduce
the half-line integrals to an exact h-side first moment

    T = int_0^inf r f(r) dr = -int_{-1}^{1} h'(t)/t dt

plus an exponentially convergent correction, which keeps conditionally
convergent tails (C^1 windows decay like 1/r^2) out of the quadrature.

Actions implemented, with Lambda the cutoff scale and all sums truncated
exactly by supp h:

* Laplace, geodesic form: Lambda^2 (g-1) int_0^inf r f(r) tanh(Lambda pi r) dr
  + Lambda * sum over closed geodesics of length <= 1/Lambda of
  lam(gamma) / (N^1/2 - N^-1/2) * h(Lambda log N).
* Laplace, conjugacy-class form: the same sum regrouped over primitive
  classes P and powers l with 2 l arccosh(t_P/2) <= 1/Lambda.
* Dirac: coth identity kernel and character weights chi(P^l).
* Supersymmetric (supertrace): G_Lambda built from h_Lambda(t) =
  Lambda e^{-t(Lambda-1)/2} h(Lambda t) (lambda_scaled variant) or
  Lambda-scaled arguments of the unscaled G (r_scaled variant).

The supertrace identity integrand f(ir + 1/2) grows exponentially for
compact-support pairs, so that integral is evaluated over a documented
symmetric window (``identity_window``); see the README note.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .hyperbolic import GeodesicClass, SpectrumResult

_BUILTIN_KINDS = ("smooth_bump", "cosine_window", "polynomial")


def _bump(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1.0
    out = np.zeros_like(t)
    w = np.clip(1.0 - t[inside] ** 2, 1e-300, None)
    out[inside] = np.exp(-1.0 / w)
    return out


def _bump_deriv(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1.0
    out = np.zeros_like(t)
    w = np.clip(1.0 - t[inside] ** 2, 1e-300, None)
    out[inside] = np.exp(-1.0 / w) * (-2.0 * t[inside]) / w ** 2
    return out


def _coswin(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.where(np.abs(t) <= 1.0, np.cos(np.pi * t / 2.0), 0.0)


def _coswin_deriv(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.where(np.abs(t) <= 1.0, -(np.pi / 2.0) * np.sin(np.pi * t / 2.0), 0.0)


def _poly(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.where(np.abs(t) <= 1.0, (1.0 - t ** 2) ** 2, 0.0)


def _poly_deriv(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.where(np.abs(t) <= 1.0, -4.0 * t * (1.0 - t ** 2), 0.0)


@dataclass(frozen=True)
class TestFunctionPair:
    """Even compactly supported h with its Fourier transform f.

    ``f(r)`` is the quadrature transform (cosine form, exactly even);
    ``f_complex(z)`` analytically continues the quadrature integrand
    e^{izt} h(t), which is what the supertrace identity term evaluates at
    z = i r + 1/2.  ``radial_first_moment`` is the exact h-side value of
    int_0^inf r f(r) dr.
    """

    name: str
    h: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    dh: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    nodes: int = 200
    support_radius: float = 1.0
    _quad: tuple = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        x, w = np.polynomial.legendre.leggauss(self.nodes)
        ht = np.asarray(self.h(x), dtype=float)
        object.__setattr__(self, "_quad", (x, w, ht))

    def f(self, r) -> np.ndarray | float:
        x, w, ht = self._quad
        rr = np.atleast_1d(np.asarray(r, dtype=float))
        vals = (w * ht) @ np.cos(np.outer(x, rr))
        return vals if np.ndim(r) else float(vals[0])

    def f_complex(self, z: complex) -> complex:
        x, w, ht = self._quad
        return complex(np.sum(w * ht * np.exp(1j * z * x)))

    def h_at(self, t) -> np.ndarray | float:
        vals = self.h(np.atleast_1d(np.asarray(t, dtype=float)))
        return vals if np.ndim(t) else float(vals[0])

    def radial_first_moment(self) -> float:
        x, w, _ht = self._quad
        return -float(np.sum(w * self.dh(x) / x))

    def with_nodes(self, nodes: int) -> "TestFunctionPair":
        return TestFunctionPair(self.name, self.h, self.dh, nodes, self.support_radius)


def _check_user_pair(h, grid_tol: float = 1e-12) -> None:
    grid = np.linspace(0.0, 0.999, 211)
    ha = np.asarray(h(grid), dtype=float)
    hb = np.asarray(h(-grid), dtype=float)
    if np.max(np.abs(ha - hb)) > grid_tol:
        raise ValueError("user test function is not even")
    outside = np.array([1.0 + 1e-9, 1.25, 2.0, 5.0])
    if np.max(np.abs(np.asarray(h(outside), dtype=float))) > grid_tol:
        raise ValueError("user test function has support outside [-1, 1]")
    if abs(float(np.asarray(h(np.array([1.0])))[0])) > grid_tol:
        raise ValueError("user test function must vanish at the support endpoints")


def make_test_pair(
    kind: str,
    quadrature_nodes: int = 200,
    h: Callable | None = None,
    dh: Callable | None = None,
) -> TestFunctionPair:
    """Built-in or user-supplied test pair.

    Built-ins: ``smooth_bump`` exp(-1/(1-t^2)), C-infinity; ``cosine_window``
    cos(pi t/2), C^0 with f ~ 1/r^2; ``polynomial`` (1-t^2)^2, C^1 with
    f ~ 1/r^3.  User pairs are checked for evenness and support on a grid;
    a derivative callable is used when given, else a central difference.
    """
    if kind == "smooth_bump":
        return TestFunctionPair("smooth_bump", _bump, _bump_deriv, quadrature_nodes)
    if kind == "cosine_window":
        return TestFunctionPair("cosine_window", _coswin, _coswin_deriv, quadrature_nodes)
    if kind == "polynomial":
        return TestFunctionPair("polynomial", _poly, _poly_deriv, quadrature_nodes)
    if kind == "user_sampled":
        if h is None:
            raise ValueError("user_sampled pair needs an h callable")
        _check_user_pair(h)
        if dh is None:
            step = 1e-6

            def dh_num(t, _h=h, _s=step):
                t = np.asarray(t, dtype=float)
                return (np.asarray(_h(t + _s)) - np.asarray(_h(t - _s))) / (2 * _s)

            dh = dh_num
        return TestFunctionPair("user_sampled", h, dh, quadrature_nodes)
    raise ValueError(f"unknown test function kind {kind!r}; builtins: {_BUILTIN_KINDS}")


@dataclass(frozen=True)
class ActionResult:
    """Identity + geodesic split of one spectral-action evaluation."""

    identity_term: float | complex
    geodesic_term: float | complex
    total: float | complex
    contributing_class_count: int
    lam: float
    imag_residual: float = 0.0
    flagged: bool = False

    def to_json(self) -> dict:
        def enc(x):
            return [x.real, x.imag] if isinstance(x, complex) else x

        return {
            "identity_term": enc(self.identity_term),
            "geodesic_term": enc(self.geodesic_term),
            "total": enc(self.total),
            "contributing_class_count": self.contributing_class_count,
            "lambda": self.lam,
            "imag_residual": self.imag_residual,
            "flagged": self.flagged,
        }


def _result(identity, geodesic, count, lam, imag_residual=0.0, flagged=False) -> ActionResult:
    return ActionResult(identity, geodesic, identity + geodesic, count, lam,
                        imag_residual, flagged)


def _gl_panel_integral(fn, lo: float, hi: float, panels: int, nodes: int) -> float:
    """Composite Gauss-Legendre over [lo, hi] with geometric panel growth."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.geomspace(1.0, 2.0 ** panels, panels + 1) - 1.0
    edges = lo + (hi - lo) * edges / edges[-1]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = (a + b) / 2.0, (b - a) / 2.0
        total += half * float(np.sum(w * fn(mid + half * x)))
    return total


def _identity_tanh(pair, lam: float, quad_nodes: int = 64) -> float:
    """int_0^inf r f(r) tanh(Lambda pi r) dr, via the exact first moment
    minus the exponentially small (1 - tanh) correction."""
    t_moment = pair.radial_first_moment()
    cut = 45.0 / (2.0 * lam * math.pi)

    def integrand(r):
        return -2.0 * r * pair.f(r) / (np.exp(2.0 * lam * math.pi * r) + 1.0)

    corr = _gl_panel_integral(integrand, 0.0, cut, panels=8, nodes=quad_nodes)
    return t_moment + corr


def _identity_coth(pair, lam: float, quad_nodes: int = 64) -> float:
    """int_R r f(r) coth(Lambda pi r) dr = 2 [T + int_0^inf 2 r f(r) /
    (e^{2 Lambda pi r} - 1) dr]; the integrand extends continuously to
    f(0)/(Lambda pi) at r = 0."""
    t_moment = pair.radial_first_moment()
    cut = 45.0 / (2.0 * lam * math.pi)

    def integrand(r):
        r = np.asarray(r, dtype=float)
        x = 2.0 * lam * math.pi * r
        return 2.0 * r * pair.f(r) / np.expm1(x)

    corr = _gl_panel_integral(integrand, 0.0, cut, panels=8, nodes=quad_nodes)
    return 2.0 * (t_moment + corr)


def _coerce_spectrum(spectrum, lam: float, need_below: float):
    if isinstance(spectrum, SpectrumResult):
        if not spectrum.converged or spectrum.certified_below < min(need_below, spectrum.l_max):
            raise ValueError(
                "spectrum is flagged possibly incomplete below the cutoff "
                f"1/Lambda = {need_below:g}; refusing to drop geodesic terms"
            )
        if spectrum.l_max < need_below - 1e-12:
            raise ValueError(
                f"spectrum only reaches length {spectrum.l_max}, need {need_below:g}"
            )
        return spectrum.classes
    return tuple(spectrum)


def laplace_action_geodesic(
    genus: int,
    spectrum: Sequence[GeodesicClass] | SpectrumResult,
    pair: TestFunctionPair,
    lam: float,
    quad_nodes: int = 64,
) -> ActionResult:
    """Laplace spectral action, oriented-geodesic form.

    The spectrum must contain every closed geodesic (primitives and
    powers) of length <= 1/Lambda; entries beyond the cutoff contribute
    exactly zero and are skipped.
    """
    if genus < 2:
        raise ValueError("hyperbolic trace formula needs genus >= 2")
    if lam <= 0:
        raise ValueError("Lambda must be positive")
    cutoff = pair.support_radius / lam
    classes = _coerce_spectrum(spectrum, lam, cutoff)
    identity = lam * lam * (genus - 1) * _identity_tanh(pair, lam, quad_nodes)
    geodesic = 0.0
    count = 0
    for c in classes:
        if c.length > cutoff + 1e-15:
            continue
        weight = c.primitive_length / (2.0 * math.sinh(c.length / 2.0))
        geodesic += c.multiplicity * weight * float(pair.h_at(lam * c.length))
        count += c.multiplicity
    geodesic *= lam
    return _result(identity, geodesic, count, lam)


def laplace_action_conjugacy(
    genus: int,
    primitive_classes: Sequence[GeodesicClass] | SpectrumResult,
    pair: TestFunctionPair,
    lam: float,
    quad_nodes: int = 64,
) -> ActionResult:
    """Laplace spectral action, primitive-conjugacy-class form.

    Powers are generated internally over the finite sets
    S_Lambda(P) = {l : 2 l arccosh(t_P/2) <= 1/Lambda}.
    """
    if genus < 2:
        raise ValueError("hyperbolic trace formula needs genus >= 2")
    if lam <= 0:
        raise ValueError("Lambda must be positive")
    cutoff = pair.support_radius / lam
    classes = _coerce_spectrum(primitive_classes, lam, cutoff)
    identity = lam * lam * (genus - 1) * _identity_tanh(pair, lam, quad_nodes)
    geodesic = 0.0
    count = 0
    for c in classes:
        if not c.primitive:
            raise ValueError("conjugacy form expects primitive classes only")
        half = c.half_trace_arccosh  # arccosh(t_P/2) = primitive length / 2
        ell = 1
        while 2.0 * ell * half <= cutoff + 1e-15:
            geodesic += (
                c.multiplicity
                * half
                * float(pair.h_at(lam * 2.0 * ell * half))
                / math.sinh(ell * half)
            )
            count += c.multiplicity
            ell += 1
    geodesic *= lam
    return _result(identity, geodesic, count, lam)


def dirac_action(
    genus: int,
    primitive_classes: Sequence[GeodesicClass] | SpectrumResult,
    chi: Sequence[complex],
    pair: TestFunctionPair,
    lam: float,
    quad_nodes: int = 64,
) -> ActionResult:
    """Dirac spectral action with spin-character weights.

    ``chi`` lists chi(P) per primitive class, in order; the geodesic term
    weights each power by chi(P)^l, so chi == 1 reproduces the Laplace
    conjugacy-form geodesic term.  The identity kernel is r f(r)
    coth(Lambda pi r) over the whole line.
    """
    if genus < 2:
        raise ValueError("hyperbolic trace formula needs genus >= 2")
    if lam <= 0:
        raise ValueError("Lambda must be positive")
    cutoff = pair.support_radius / lam
    classes = _coerce_spectrum(primitive_classes, lam, cutoff)
    if len(chi) != len(classes):
        raise ValueError(
            f"need one character value per class: got {len(chi)} for {len(classes)}"
        )
    identity = lam * lam * (genus - 1) * _identity_coth(pair, lam, quad_nodes)
    geodesic = 0.0 + 0.0j
    count = 0
    for c, chi_p in zip(classes, chi):
        if not c.primitive:
            raise ValueError("Dirac action expects primitive classes only")
        half = c.half_trace_arccosh
        ell = 1
        while 2.0 * ell * half <= cutoff + 1e-15:
            geodesic += (
                c.multiplicity
                * (chi_p ** ell)
                * half
                * float(pair.h_at(lam * 2.0 * ell * half))
                / math.sinh(ell * half)
            )
            count += c.multiplicity
            ell += 1
    geodesic *= lam
    if abs(geodesic.imag) < 1e-14 * max(1.0, abs(geodesic.real)):
        geodesic = geodesic.real
    return _result(identity, geodesic, count, lam)


def supertrace_g(x: float, chi: complex, h_fn) -> complex:
    """G(x, chi) = h(x) + h(-x) - chi (e^{-x/2} h(x) + e^{x/2} h(-x))."""
    hp = h_fn(x)
    hm = h_fn(-x)
    return hp + hm - chi * (math.exp(-x / 2.0) * hp + math.exp(x / 2.0) * hm)


def super_action(
    genus: int,
    primitive_classes: Sequence[GeodesicClass] | SpectrumResult,
    chi: Sequence[complex],
    pair: TestFunctionPair,
    lam: float,
    variant: str = "lambda_scaled",
    identity_window: float = 12.0,
    quad_nodes: int = 64,
    imag_tol: float = 1e-9,
) -> ActionResult:
    """Supersymmetric (supertrace) spectral action.

    ``lambda_scaled`` uses G built from h_Lambda(t) = Lambda
    e^{-t(Lambda-1)/2} h(Lambda t); ``r_scaled`` uses Lambda G(Lambda x)
    with the unscaled h.  Both reduce to the same unscaled supertrace sum
    at Lambda = 1.  The identity term i Lambda (g-1) int f(ir+1/2)
    tanh(Lambda pi r) dr is integrated over [-identity_window,
    identity_window] (the compact-support continuation grows like e^|r|,
    so the window is part of the definition here); its imaginary part
    cancels by symmetry and the residual is reported, flagged above
    ``imag_tol``.
    """
    if genus < 2:
        raise ValueError("hyperbolic trace formula needs genus >= 2")
    if lam <= 0:
        raise ValueError("Lambda must be positive")
    if variant not in ("lambda_scaled", "r_scaled"):
        raise ValueError(f"unknown variant {variant!r}")
    cutoff = pair.support_radius / lam
    classes = _coerce_spectrum(primitive_classes, lam, cutoff)
    if len(chi) != len(classes):
        raise ValueError(
            f"need one character value per class: got {len(chi)} for {len(classes)}"
        )

    # identity term: symmetric panels so Im cancels to rounding
    x, w = np.polynomial.legendre.leggauss(quad_nodes)
    edges = np.linspace(0.0, identity_window, 17)
    total = 0.0 + 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = (a + b) / 2.0, (b - a) / 2.0
        for sign in (+1.0, -1.0):
            pts = sign * (mid + half * x)
            vals = np.array([pair.f_complex(1j * r + 0.5) for r in pts])
            total += half * np.sum(w * vals * np.tanh(lam * math.pi * pts))
    identity_c = 1j * lam * (genus - 1) * complex(total)
    imag_residual = float(abs(identity_c.imag))
    identity = float(identity_c.real)

    def h_lambda(t: float) -> float:
        return lam * math.exp(-t * (lam - 1.0) / 2.0) * float(pair.h_at(lam * t))

    geodesic = 0.0 + 0.0j
    count = 0
    for c, chi_p in zip(classes, chi):
        if not c.primitive:
            raise ValueError("super action expects primitive classes only")
        k = 1
        while k * c.length <= cutoff + 1e-15:
            x_arg = k * c.length
            weight = c.primitive_length / (2.0 * math.sinh(x_arg / 2.0))
            if variant == "lambda_scaled":
                term = supertrace_g(x_arg, chi_p ** k, h_lambda)
            else:
                term = lam * supertrace_g(lam * x_arg, chi_p ** k,
                                          lambda t: float(pair.h_at(t)))
            geodesic += c.multiplicity * weight * term
            count += c.multiplicity
            k += 1
    if abs(geodesic.imag) < 1e-14 * max(1.0, abs(geodesic.real)):
        geodesic = geodesic.real
    return _result(identity, geodesic, count, lam,
                   imag_residual=imag_residual, flagged=bool(imag_residual > imag_tol))


@dataclass(frozen=True)
class ZetaTestFunction:
    """Lorentzian-difference test function tied to the Selberg zeta data.

    f(lam) = (lam^2 + (s - 1/2)^2)^-1 - (lam^2 + (sigma - 1/2)^2)^-1 and
    its analytic inverse transform h(t) = e^{-a|t|}/(2a) - e^{-b|t|}/(2b)
    with a = s - 1/2, b = sigma - 1/2.  Not compactly supported: the
    effective support radius is where h decays below 1e-18.
    """

    s: complex
    sigma: complex

    def __post_init__(self):
        if self.s.real <= 1.0 or self.sigma.real <= 1.0:
            raise ValueError("need Re(s) > 1 and Re(sigma) > 1")

    @property
    def decay_rates(self) -> tuple[complex, complex]:
        return self.s - 0.5, self.sigma - 0.5

    def f(self, lam_value):
        a, b = self.decay_rates
        v = np.asarray(lam_value, dtype=complex)
        out = 1.0 / (v ** 2 + a ** 2) - 1.0 / (v ** 2 + b ** 2)
        return out if np.ndim(lam_value) else complex(out)

    def h(self, t):
        a, b = self.decay_rates
        tt = np.abs(np.asarray(t, dtype=float))
        out = np.exp(-a * tt) / (2.0 * a) - np.exp(-b * tt) / (2.0 * b)
        return out if np.ndim(t) else complex(out)

    @property
    def support_radius(self) -> float:
        rate = min(self.decay_rates[0].real, self.decay_rates[1].real)
        return 42.0 / rate


def zeta_test_function(s: complex, sigma: complex) -> ZetaTestFunction:
    """The trace-formula test function whose geodesic side assembles the
    logarithmic derivative of the Selberg zeta function at s minus sigma."""
    return ZetaTestFunction(complex(s), complex(sigma))


def selberg_zeta_log_product(
    primitive_classes: Sequence[GeodesicClass],
    s: complex,
    chi: Sequence[complex] | None = None,
    ell_max: int = 60,
) -> complex:
    """log of the truncated Selberg zeta product over supplied classes.

    NOTE: the product is evaluated with the convergent sign convention
    (1 - chi(P) e^{-L_P (s + ell)}); the printed positive exponent
    diverges and is documented as a recorded sign question.  Truncated in
    both the class list and ell; intended for experiments, not claims of
    completeness.
    """
    if chi is None:
        chi = [1.0 + 0j] * len(primitive_classes)
    out = 0.0 + 0.0j
    for c, chi_p in zip(primitive_classes, chi):
        l_p = c.length
        for ell in range(ell_max):
            out += c.multiplicity * np.log1p(-chi_p * np.exp(-l_p * (s + ell)))
    return complex(out)
