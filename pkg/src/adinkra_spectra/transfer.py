"""Ruelle transfer operators from boundary branch systems, by Chebyshev
collocation, with the coset extension for finite-index subgroups and
Fredholm determinants.

A branch system lists pairwise disjoint intervals E_s and Moebius maps
g_s (the inverse branches: g_s maps the phase interval into E_s).  The
operator is

    (L_beta f)(x) = sum_s |g_s'(x)|^beta f(g_s x),

the local-determination form of the pullback sum over F-preimages (each
|F'(y)|^-beta at y = g_s x equals |g_s'(x)|^beta).  Functions are sampled
on Chebyshev-Lobatto grids per interval; applying the matrix to samples
interpolates barycentrically at the mapped points, so analytic branch
maps converge spectrally in the node count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np


@dataclass(frozen=True)
class Branch:
    """One inverse branch: interval E_s and the Moebius matrix of g_s."""

    lo: float
    hi: float
    matrix: np.ndarray = field(compare=False)  # 2x2, normalized |det| = 1
    label: str = ""

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"branch interval [{self.lo}, {self.hi}] is empty")
        m = np.asarray(self.matrix, dtype=float)
        det = float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
        if abs(det) < 1e-14:
            raise ValueError("branch matrix is singular")
        object.__setattr__(self, "matrix", m / math.sqrt(abs(det)))

    def apply(self, x: np.ndarray) -> np.ndarray:
        a, b, c, d = self.matrix.ravel()
        return (a * x + b) / (c * x + d)

    def deriv_abs(self, x: np.ndarray) -> np.ndarray:
        _a, _b, c, d = self.matrix.ravel()
        return 1.0 / (c * x + d) ** 2  # |det| = 1


@dataclass(frozen=True)
class BranchSystem:
    """Finite family of inverse branches covering the boundary coding."""

    branches: tuple[Branch, ...]

    def __post_init__(self):
        ivs = sorted((b.lo, b.hi) for b in self.branches)
        for (l1, h1), (l2, h2) in zip(ivs[:-1], ivs[1:]):
            if l2 < h1 - 1e-12:
                raise ValueError(f"branch intervals overlap: [{l1},{h1}] and [{l2},{h2}]")
        lo, hi = self.hull
        for b in self.branches:
            c, d = b.matrix[1]
            # the weight |g'(x)|^beta must stay finite on the phase interval
            if c != 0.0 and lo - 1e-12 <= -d / c <= hi + 1e-12:
                raise ValueError(
                    f"branch {b.label or b.matrix.tolist()} has a derivative "
                    f"singularity at x = {-d / c:.6g} inside the phase interval"
                )

    @property
    def hull(self) -> tuple[float, float]:
        return min(b.lo for b in self.branches), max(b.hi for b in self.branches)

    def labels(self) -> list[str]:
        return [b.label for b in self.branches]

    def to_json(self) -> dict:
        return {
            "intervals": [[b.lo, b.hi] for b in self.branches],
            "maps": [b.matrix.tolist() for b in self.branches],
            "labels": [b.label for b in self.branches],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BranchSystem":
        labels = obj.get("labels") or [""] * len(obj["intervals"])
        return cls(tuple(
            Branch(float(lo), float(hi), np.array(m, dtype=float), lab)
            for (lo, hi), m, lab in zip(obj["intervals"], obj["maps"], labels)
        ))


def gauss_branch_system(n_max: int) -> BranchSystem:
    """Truncated Gauss-map system: g_n(x) = 1/(x+n) onto [1/(n+1), 1/n]."""
    return BranchSystem(tuple(
        Branch(1.0 / (n + 1), 1.0 / n, np.array([[0.0, 1.0], [1.0, float(n)]]), str(n))
        for n in range(1, n_max + 1)
    ))


def _cheb_nodes(lo: float, hi: float, k: int) -> np.ndarray:
    j = np.arange(k)
    x = np.cos(np.pi * j / (k - 1))  # Chebyshev-Lobatto, descending
    return lo + (hi - lo) * (x + 1.0) / 2.0


def _bary_weights(k: int) -> np.ndarray:
    w = np.ones(k)
    w[1::2] = -1.0
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _cardinal_matrix(nodes: np.ndarray, weights: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Rows: evaluation points; columns: Lagrange cardinal functions."""
    diff = pts[:, None] - nodes[None, :]
    exact = np.abs(diff) < 1e-14
    with np.errstate(divide="ignore", invalid="ignore"):
        tmp = weights[None, :] / diff
        den = tmp.sum(axis=1)
        card = tmp / den[:, None]
    hit = exact.any(axis=1)
    card[hit] = 0.0
    card[exact] = 1.0
    return card


@dataclass(frozen=True)
class TransferMatrix:
    """Collocation matrix of the transfer operator.

    Grid index is (coset, interval, node), cosets outermost; with degree 1
    this is exactly the base discretization.
    """

    beta: complex
    system: BranchSystem
    nodes_per_interval: int
    coset_degree: int
    matrix: np.ndarray = field(compare=False)
    grids: tuple = field(compare=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def all_nodes(self) -> np.ndarray:
        return np.concatenate(self.grids)

    def apply_to_samples(self, samples: np.ndarray) -> np.ndarray:
        return self.matrix @ samples

    def sample(self, fn) -> np.ndarray:
        """Sample a function on the grid (tiled over cosets)."""
        base = np.concatenate([fn(g) for g in self.grids])
        return np.tile(base, self.coset_degree)

    def direct_apply(self, fn, x: np.ndarray) -> np.ndarray:
        """Pointwise (L f)(x) from the defining sum, for cross-checks."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(len(x), dtype=complex)
        for b in self.system.branches:
            out += b.deriv_abs(x) ** self.beta * np.asarray(fn(b.apply(x)), dtype=complex)
        return out

    def eigenvalues(self) -> np.ndarray:
        vals = np.linalg.eigvals(self.matrix)
        return vals[np.argsort(-np.abs(vals))]

    def leading_eigenvalues(self, k: int = 2) -> np.ndarray:
        if self.size <= max(8, k + 2):
            return self.eigenvalues()[:k]
        import scipy.sparse.linalg as spla

        vals = spla.eigs(self.matrix, k=k, which="LM", return_eigenvectors=False,
                         maxiter=10000, tol=1e-13)
        return vals[np.argsort(-np.abs(vals))]


def _weight_and_cardinals(
    sys: BranchSystem, beta: complex, grids: Sequence[np.ndarray],
    bweights: np.ndarray, allx: np.ndarray
) -> list[np.ndarray]:
    """Per branch: the (all nodes) x (branch grid) weighted cardinal block."""
    blocks = []
    for s, b in enumerate(sys.branches):
        y = b.apply(allx)
        wt = b.deriv_abs(allx) ** beta
        card = _cardinal_matrix(grids[s], bweights, y)
        blocks.append(wt[:, None] * card)
    return blocks


def build_transfer_matrix(
    sys: BranchSystem, beta: complex, nodes_per_interval: int = 32
) -> TransferMatrix:
    """Collocation discretization of the transfer operator at parameter beta."""
    if nodes_per_interval < 2:
        raise ValueError("need at least 2 nodes per interval")
    grids = tuple(_cheb_nodes(b.lo, b.hi, nodes_per_interval) for b in sys.branches)
    bweights = _bary_weights(nodes_per_interval)
    allx = np.concatenate(grids)
    blocks = _weight_and_cardinals(sys, beta, grids, bweights, allx)
    matrix = np.concatenate(blocks, axis=1)
    if np.iscomplexobj(matrix) and np.all(matrix.imag == 0.0):
        matrix = matrix.real
    return TransferMatrix(beta, sys, nodes_per_interval, 1, matrix, grids)


def extend_to_coset(
    sys: BranchSystem,
    perms: Mapping[str, Sequence[int]],
    beta: complex,
    nodes_per_interval: int = 32,
) -> TransferMatrix:
    """Transfer operator on the boundary times a coset space.

    The branch labelled s acts on cosets by its permutation; the extended
    operator reads (L f)(x, a) = sum_s |g_s'(x)|^beta f(g_s x, g_s a), so
    the (a, b) block carries branch s's weights iff b = g_s a.  Degree 1
    reproduces the base matrix entry-for-entry.
    """
    labels = sys.labels()
    missing = [l for l in labels if l not in perms]
    if missing:
        raise ValueError(f"no coset permutation for branch labels {missing}")
    degree = len(next(iter(perms.values())))
    for l, p in perms.items():
        if sorted(p) != list(range(degree)):
            raise ValueError(f"perm for branch {l!r} is not a permutation of 0..{degree - 1}")
    grids = tuple(_cheb_nodes(b.lo, b.hi, nodes_per_interval) for b in sys.branches)
    bweights = _bary_weights(nodes_per_interval)
    allx = np.concatenate(grids)
    blocks = _weight_and_cardinals(sys, beta, grids, bweights, allx)
    n_base = len(allx)
    k = nodes_per_interval
    big = np.zeros((n_base * degree, n_base * degree), dtype=blocks[0].dtype)
    for a in range(degree):
        for s, _b in enumerate(sys.branches):
            target = perms[labels[s]][a]
            big[a * n_base:(a + 1) * n_base,
                target * n_base + s * k: target * n_base + (s + 1) * k] = blocks[s]
    return TransferMatrix(beta, sys, nodes_per_interval, degree, big, grids)


@dataclass(frozen=True)
class FredholmResult:
    """det(1 - L) with spectral diagnostics."""

    value: complex
    spectral_radius: float
    singular: bool
    eigenvalues_used: int
    truncation_order: int | None

    def to_json(self) -> dict:
        return {
            "det": [self.value.real, self.value.imag],
            "log_abs_det": math.log(abs(self.value)) if self.value != 0 else None,
            "spectral_radius": self.spectral_radius,
            "singular": self.singular,
            "eigenvalues_used": self.eigenvalues_used,
            "truncation_order": self.truncation_order,
        }


def fredholm_det(
    tm: TransferMatrix | np.ndarray,
    truncation_order: int | None = None,
    singular_tol: float = 1e-12,
) -> FredholmResult:
    """det(1 - L) as a product over eigenvalues of the discretized operator.

    ``truncation_order`` keeps only the largest-modulus eigenvalues (the
    nuclear truncation); an eigenvalue within ``singular_tol`` of 1 marks
    a zeta zero/pole candidate via ``singular`` rather than failing.
    """
    matrix = tm.matrix if isinstance(tm, TransferMatrix) else np.asarray(tm)
    vals = np.linalg.eigvals(matrix)
    vals = vals[np.argsort(-np.abs(vals))]
    used = vals if truncation_order is None else vals[:truncation_order]
    det = complex(np.prod(1.0 - used))
    radius = float(np.abs(vals[0])) if len(vals) else 0.0
    singular = bool(np.any(np.abs(1.0 - vals) < singular_tol))
    return FredholmResult(det, radius, singular, len(used), truncation_order)


def fredholm_ratio(
    numerator: TransferMatrix | np.ndarray,
    denominator: TransferMatrix | np.ndarray,
    truncation_order: int | None = None,
) -> complex:
    """det(1 - L_s) / det(1 - K_s) for a supplied operator pair."""
    num = fredholm_det(numerator, truncation_order)
    den = fredholm_det(denominator, truncation_order)
    if den.value == 0:
        raise ZeroDivisionError("denominator determinant vanishes")
    return num.value / den.value


def neville_extrapolate(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Polynomial extrapolation to x = 0 (Richardson in the truncation size)."""
    n = len(xs)
    tab = list(map(float, ys))
    for j in range(1, n):
        for i in range(n - j):
            tab[i] = tab[i] + (tab[i] - tab[i + 1]) * xs[i] / (xs[i + j] - xs[i])
    return tab[0]


def gauss_leading_pair(
    n_values: Sequence[int] = (12, 16, 20, 24, 28, 32, 36, 40),
    nodes: int = 32,
    beta: float = 1.0,
) -> tuple[float, float]:
    """(lambda_1, lambda_2) of the full Gauss operator by truncation sweep.

    The truncated n_max-branch operator's eigenvalues converge like a
    power series in 1/n_max; Neville extrapolation over the sweep recovers
    the infinite-branch values (1 and the Gauss-Kuzmin-Wirsing constant
    -0.30366... at beta = 1).
    """
    l1s, l2s = [], []
    for n in n_values:
        tm = build_transfer_matrix(gauss_branch_system(n), beta, nodes)
        lead = tm.leading_eigenvalues(2)
        l1s.append(float(lead[0].real))
        l2s.append(float(lead[1].real))
    xs = [1.0 / n for n in n_values]
    return neville_extrapolate(xs, l1s), neville_extrapolate(xs, l2s)
