"""Period-matrix eigenvalue families for branched covers of elliptic
curves (origami curves): cover condition, primitive-differential
coefficients, solution sets, and the lattice-sum spectral action with a
Poisson-summation cross-check.

Conventions fixed here (validated by the flat-torus gate at genus 1):
the coefficient vector of the primitive differential is

    c = pi * Im(Omega)^{-1} (m - conj(Omega)^T n),

and the normalization constant is A = (1/2) c* Im(Omega) c, the Riemann
bilinear value of (i/4) int omega ^ conj(omega).  Eigenvalues come in
pairs rho = +-sqrt(lambda); sums treat the test function as even and
enumerate each lattice index once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class PeriodData:
    """Period matrix with a marked integer vector pair (n, m)."""

    omega: np.ndarray = field(compare=False)
    n: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=complex)
        if om.ndim != 2 or om.shape[0] != om.shape[1]:
            raise ValueError("period matrix must be square")
        if np.max(np.abs(om - om.T)) > 1e-10:
            raise ValueError("period matrix must be symmetric")
        try:
            np.linalg.cholesky(om.imag)
        except np.linalg.LinAlgError:
            raise ValueError("Im(Omega) must be positive definite") from None
        object.__setattr__(self, "omega", om)
        g = om.shape[0]
        if len(self.n) != g or len(self.m) != g:
            raise ValueError("n and m must have one entry per handle")
        if not any(self.n) and not any(self.m):
            raise ValueError("(n, m) must be nonzero")

    @property
    def genus(self) -> int:
        return self.omega.shape[0]

    def to_json(self) -> dict:
        return {
            "g": self.genus,
            "omega": [[[z.real, z.imag] for z in row] for row in self.omega],
            "n": list(self.n),
            "m": list(self.m),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PeriodData":
        om = np.array(
            [[complex(re, im) for re, im in row] for row in obj["omega"]], dtype=complex
        )
        return cls(om, tuple(int(x) for x in obj["n"]), tuple(int(x) for x in obj["m"]))


@dataclass(frozen=True)
class CoverConditionResult:
    """Ratio matrix N with v_i = N_ij v_j, or a structural failure."""

    ok: bool
    matrix: np.ndarray | None = field(compare=False, default=None)
    residual: float = math.inf
    v: np.ndarray | None = field(compare=False, default=None)
    reason: str = ""


def _deficiency(pd: PeriodData, n=None, m=None) -> np.ndarray:
    """v_i = m_i - sum_k Omega_ik n_k (the cover-condition vector)."""
    nv = np.asarray(n if n is not None else pd.n, dtype=float)
    mv = np.asarray(m if m is not None else pd.m, dtype=float)
    return mv - pd.omega @ nv


def check_cover_condition(pd: PeriodData, tol: float = 1e-9) -> CoverConditionResult:
    """Ratio matrix N_ij = v_i / v_j with multiplicative consistency.

    Fails structurally when some v_j vanishes while another component
    does not (the ratio system has no solution); at genus 1 the matrix
    is always [[1]].
    """
    v = _deficiency(pd)
    zero = np.abs(v) < 1e-14
    if zero.any():
        if zero.all():
            return CoverConditionResult(False, None, math.inf, v, "v = 0")
        return CoverConditionResult(
            False, None, math.inf, v,
            f"v_{int(np.argmax(zero))} = 0 while v has nonzero components",
        )
    matrix = v[:, None] / v[None, :]
    g = pd.genus
    residual = 0.0
    for i in range(g):
        for j in range(g):
            for k in range(g):
                residual = max(residual, abs(matrix[i, j] * matrix[j, k] - matrix[i, k]))
    return CoverConditionResult(residual < tol, matrix, residual, v)


def primitive_coefficients(pd: PeriodData, n=None, m=None) -> tuple[np.ndarray, float]:
    """(c, A): differential coefficients and the bilinear normalization.

    c = pi Im(Omega)^{-1} (m - conj(Omega)^T n); A = (1/2) c* Im(Omega) c
    is real and positive (it is (i/4) int omega ^ conj(omega) by the
    bilinear relations for the normalized basis).
    """
    nv = np.asarray(n if n is not None else pd.n, dtype=float)
    mv = np.asarray(m if m is not None else pd.m, dtype=float)
    u = mv - np.conj(pd.omega).T @ nv
    c = math.pi * np.linalg.solve(pd.omega.imag, u)
    a_complex = 0.5 * np.vdot(c, pd.omega.imag @ c)
    if abs(a_complex.imag) > 1e-12 * max(1.0, abs(a_complex.real)):
        raise ArithmeticError(f"normalization came out non-real: {a_complex}")
    return c, float(a_complex.real)


@dataclass(frozen=True)
class SpectrumEntry:
    """One solution (n', m') with its eigenvalue data."""

    n: tuple[int, ...]
    m: tuple[int, ...]
    c_ratio: complex
    lam: float
    rho: float  # positive branch; -rho is the partner

    def to_row(self) -> str:
        ns = " ".join(str(x) for x in self.n)
        ms = " ".join(str(x) for x in self.m)
        return f"{ns},{ms},{self.lam!r},{self.rho!r}"


def solution_set(pd: PeriodData, box_bound: int, tol: float = 1e-9) -> list[SpectrumEntry]:
    """All (n', m') in [-B, B]^{2g} \\ {0} with omega_{n',m'} parallel to
    omega_{n,m}, each with lambda = 2 A |ratio|^2 and rho = sqrt(lambda).

    The multiples (k n, k m) always qualify; the box search may find more
    for special period matrices (no completeness claim beyond the box).
    """
    if box_bound < 1:
        raise ValueError("box bound must be >= 1")
    _c0, a0 = primitive_coefficients(pd)
    base = _u_vector(pd, pd.n, pd.m)
    norm0 = np.linalg.norm(base)
    g = pd.genus
    entries = []
    rng = [range(-box_bound, box_bound + 1)] * (2 * g)
    for idx in itertools.product(*rng):
        nv, mv = idx[:g], idx[g:]
        if not any(nv) and not any(mv):
            continue
        u = _u_vector(pd, nv, mv)
        w = np.vdot(base, u) / (norm0 ** 2)
        if np.linalg.norm(u - w * base) > tol * max(1.0, np.linalg.norm(u)):
            continue
        lam = 2.0 * a0 * abs(w) ** 2
        entries.append(SpectrumEntry(nv, mv, complex(w), float(lam), math.sqrt(lam)))
    entries.sort(key=lambda e: (e.lam, e.n, e.m))
    return entries


def _u_vector(pd: PeriodData, n, m) -> np.ndarray:
    return np.asarray(m, dtype=float) - np.conj(pd.omega).T @ np.asarray(n, dtype=float)


def gaussian(width: float = 1.0) -> Callable[[np.ndarray], np.ndarray]:
    """Even Gaussian test function exp(-(x / width)^2 / 2)."""
    if width <= 0:
        raise ValueError("width must be positive")

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-0.5 * (x / width) ** 2)

    return f


@dataclass(frozen=True)
class OrigamiActionResult:
    value: float
    entry_count: int
    box_bound: int
    tail_estimate: float
    lam: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "entry_count": self.entry_count,
            "box": self.box_bound,
            "tail_estimate": self.tail_estimate,
            "lambda": self.lam,
        }


def _is_even_callable(f) -> bool:
    probe = np.array([0.3, 1.7, 2.9])
    return bool(np.max(np.abs(np.asarray(f(probe)) - np.asarray(f(-probe)))) < 1e-12)


def origami_action(
    pd: PeriodData,
    f,
    lam: float = 1.0,
    box_bound: int = 30,
) -> OrigamiActionResult:
    """Partial lattice sum of f(rho / Lambda) over the solution set.

    ``f`` may be a callable or a test-pair object with an ``f`` attribute;
    it must be even (both rho branches carry the same value, and each
    lattice index is counted once).  The tail estimate extrapolates the
    outermost shell's decay geometrically; for positive f the partial
    sums increase monotonically in the box bound.
    """
    fn = getattr(f, "f", f)
    if not _is_even_callable(fn):
        raise ValueError("test function must be even")
    entries = solution_set(pd, box_bound)
    rhos = np.array([e.rho for e in entries])
    vals = np.asarray(fn(rhos / lam), dtype=float)
    value = float(vals.sum())

    # shell decay estimate from the outermost two shells
    def shell_sum(b: int) -> float:
        mask = [max(max(abs(x) for x in e.n), max(abs(x) for x in e.m)) == b for e in entries]
        return float(vals[np.asarray(mask)].sum()) if any(mask) else 0.0

    s_last = abs(shell_sum(box_bound))
    s_prev = abs(shell_sum(box_bound - 1)) if box_bound > 1 else 0.0
    if s_prev > 0 and s_last > 0 and s_last < s_prev:
        ratio = s_last / s_prev
        tail = s_last * ratio / (1.0 - ratio)
    else:
        tail = s_last
    return OrigamiActionResult(value, len(entries), box_bound, tail, lam)


@dataclass(frozen=True)
class PoissonResult:
    direct: float
    dual: float

    @property
    def discrepancy(self) -> float:
        return abs(self.direct - self.dual)


def _gram_matrix(pd: PeriodData) -> np.ndarray:
    """Gram matrix Q with lambda(n', m') = (n', m') Q (n', m')^T at genus 1."""
    if pd.genus != 1:
        raise ValueError("the Poisson reference is a genus-1 oracle only")
    tau = complex(pd.omega[0, 0])
    _c, a0 = primitive_coefficients(pd)
    u0 = abs(complex(_u_vector(pd, pd.n, pd.m)[0])) ** 2
    scale = 2.0 * a0 / u0
    # |m' - conj(tau) n'|^2 = m'^2 - 2 Re(tau) n' m' + |tau|^2 n'^2
    return scale * np.array([
        [abs(tau) ** 2, -tau.real],
        [-tau.real, 1.0],
    ])


def direct_theta_sum(mat: np.ndarray, box_bound: int) -> float:
    """sum over Z^2 (boxed) of exp(-pi v^T M v)."""
    idx = np.arange(-box_bound, box_bound + 1)
    p, q = np.meshgrid(idx, idx, indexing="ij")
    quad = (mat[0, 0] * p ** 2 + 2.0 * mat[0, 1] * p * q + mat[1, 1] * q ** 2)
    return float(np.exp(-math.pi * quad).sum())


def dual_theta_sum(mat: np.ndarray, box_bound: int) -> float:
    """det(M)^{-1/2} times the direct sum for M^{-1} (2D Poisson identity)."""
    inv = np.linalg.inv(mat)
    det = float(np.linalg.det(mat))
    return direct_theta_sum(inv, box_bound) / math.sqrt(det)


def poisson_reference(
    pd: PeriodData,
    width: float = 1.0,
    lam: float = 1.0,
    box_bound: int = 50,
) -> PoissonResult:
    """Both sides of the 2D Poisson identity for the genus-1 lattice sum.

    The Gaussian exp(-(rho / (lam width))^2 / 2) turns the full lattice
    sum (zero mode included) into a theta value for the quadratic form
    Q / (2 pi lam^2 width^2); the dual side is the transformed theta.
    """
    if width <= 0 or lam <= 0:
        raise ValueError("width and Lambda must be positive")
    gram = _gram_matrix(pd) / (2.0 * math.pi * (lam * width) ** 2)
    return PoissonResult(
        direct_theta_sum(gram, box_bound), dual_theta_sum(gram, box_bound)
    )


def spectrum_to_csv(entries: Sequence[SpectrumEntry]) -> str:
    rows = ["n,m,lambda,rho"]
    rows += [e.to_row() for e in entries]
    return "\n".join(rows) + "\n"
