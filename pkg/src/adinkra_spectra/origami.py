"""Origami (square-tiled surface) graphs: validation, monodromy, genus,
and the doubled-edge embedding count for Adinkras.

An origami graph is a finite directed multigraph with edges labeled x or y
such that every vertex has exactly one outgoing and one incoming edge of
each label; equivalently a pair of permutations (sigma_x, sigma_y) of the
squares, up to simultaneous conjugation.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .adinkra import Chromotopology
from .errors import ResourceBoundError

LabeledEdge = tuple[int, int, str]  # (tail, head, "x"|"y"); parallel edges allowed


@dataclass(frozen=True)
class OrigamiGraph:
    """Directed labeled multigraph on d vertices (squares)."""

    d: int
    edges: tuple[LabeledEdge, ...]

    def __post_init__(self):
        for u, v, lab in self.edges:
            if lab not in ("x", "y"):
                raise ValueError(f"edge label {lab!r} must be 'x' or 'y'")
            if not (0 <= u < self.d and 0 <= v < self.d):
                raise ValueError(f"edge ({u},{v}) references missing vertex")


@dataclass(frozen=True)
class Monodromy:
    """Permutation pair on 0-based squares; sigma[i] is the image of i."""

    sigma_x: tuple[int, ...]
    sigma_y: tuple[int, ...]

    def __post_init__(self):
        d = len(self.sigma_x)
        if len(self.sigma_y) != d:
            raise ValueError("sigma_x and sigma_y act on different sets")
        for s in (self.sigma_x, self.sigma_y):
            if sorted(s) != list(range(d)):
                raise ValueError(f"not a permutation: {s}")

    @property
    def degree(self) -> int:
        return len(self.sigma_x)

    def to_json(self) -> dict:
        return {
            "d": self.degree,
            "sigma_x": [i + 1 for i in self.sigma_x],
            "sigma_y": [i + 1 for i in self.sigma_y],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Monodromy":
        d = int(obj["d"])
        sx = tuple(int(i) - 1 for i in obj["sigma_x"])
        sy = tuple(int(i) - 1 for i in obj["sigma_y"])
        if len(sx) != d or len(sy) != d:
            raise ValueError("permutation arrays do not match d")
        return cls(sx, sy)


@dataclass(frozen=True)
class OrigamiReport:
    ok: bool
    issues: tuple[str, ...]
    connected: bool

    def to_json(self) -> dict:
        return {"ok": self.ok, "connected": self.connected, "issues": list(self.issues)}


def validate_origami_graph(graph: OrigamiGraph) -> OrigamiReport:
    """Per-vertex out/in counts for each label, plus connectivity."""
    issues = []
    out_x = [0] * graph.d
    out_y = [0] * graph.d
    in_x = [0] * graph.d
    in_y = [0] * graph.d
    for u, v, lab in graph.edges:
        if lab == "x":
            out_x[u] += 1
            in_x[v] += 1
        else:
            out_y[u] += 1
            in_y[v] += 1
    for v in range(graph.d):
        for name, cnt in (("outgoing x", out_x[v]), ("outgoing y", out_y[v]),
                          ("incoming x", in_x[v]), ("incoming y", in_y[v])):
            if cnt != 1:
                issues.append(f"vertex {v}: {cnt} {name} edges (expected 1)")
    adj: list[list[int]] = [[] for _ in range(graph.d)]
    for u, v, _lab in graph.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0} if graph.d else set()
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    connected = len(seen) == graph.d
    if not connected:
        issues.append(f"graph is disconnected: reached {len(seen)} of {graph.d} vertices")
    return OrigamiReport(not issues, tuple(issues), connected)


def monodromy(graph: OrigamiGraph) -> tuple[Monodromy, int]:
    """(sigma_x, sigma_y) read off the out-edges, and the surface genus.

    Genus comes from the square-complex Euler count: vertices of the
    complex are the cycles of the commutator, E = 2d, F = d, so
    g = 1 + (d - #commutator cycles) / 2.
    """
    report = validate_origami_graph(graph)
    if not report.ok:
        raise ValueError("invalid origami graph: " + "; ".join(report.issues))
    sx = [0] * graph.d
    sy = [0] * graph.d
    for u, v, lab in graph.edges:
        if lab == "x":
            sx[u] = v
        else:
            sy[u] = v
    m = Monodromy(tuple(sx), tuple(sy))
    return m, genus_from_monodromy(m)


def _cycle_count(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


def _inverse(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def commutator(m: Monodromy) -> tuple[int, ...]:
    sx, sy = m.sigma_x, m.sigma_y
    return _compose(_compose(sx, sy), _compose(_inverse(sx), _inverse(sy)))


def genus_from_monodromy(m: Monodromy) -> int:
    d = m.degree
    v = _cycle_count(commutator(m))
    if (d - v) % 2:
        raise ValueError(f"non-integral genus: d={d}, commutator cycles={v}")
    return 1 + (d - v) // 2


def is_transitive(m: Monodromy) -> bool:
    seen = {0}
    queue = deque(seen)
    while queue:
        i = queue.popleft()
        for j in (m.sigma_x[i], m.sigma_y[i], _inverse(m.sigma_x)[i], _inverse(m.sigma_y)[i]):
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == m.degree


def origami_from_monodromy(m: Monodromy) -> OrigamiGraph:
    edges = [(i, m.sigma_x[i], "x") for i in range(m.degree)]
    edges += [(i, m.sigma_y[i], "y") for i in range(m.degree)]
    return OrigamiGraph(m.degree, tuple(edges))


def _bfs_relabel(m: Monodromy, start: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    order = {start: 0}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in (m.sigma_x[i], m.sigma_y[i]):
            if j not in order:
                order[j] = len(order)
                queue.append(j)
    relabel = [0] * m.degree
    inv = [0] * m.degree
    for old, new in order.items():
        relabel[old] = new
        inv[new] = old
    sx = tuple(relabel[m.sigma_x[inv[i]]] for i in range(m.degree))
    sy = tuple(relabel[m.sigma_y[inv[i]]] for i in range(m.degree))
    return sx, sy


def canonical_monodromy(m: Monodromy) -> Monodromy:
    """Conjugation-canonical form: BFS relabeling (x before y), minimized
    over the choice of start square.

    A single fixed start is not conjugation invariant (conjugation moves
    it), so the lexicographically smallest relabeled pair over all starts
    is taken; two transitive origamis are equivalent iff their canonical
    forms are equal.
    """
    if not is_transitive(m):
        raise ValueError("monodromy is not transitive")
    best = min(_bfs_relabel(m, start) for start in range(m.degree))
    return Monodromy(*best)


def origamis_equivalent(m1: Monodromy, m2: Monodromy) -> bool:
    if m1.degree != m2.degree:
        return False
    return canonical_monodromy(m1) == canonical_monodromy(m2)


@dataclass(frozen=True)
class MOrigamiEmbeddings:
    """Embedding count of an Adinkra into its M-origami curve.

    The doubled graph replaces each edge by a pair of parallel edges; an
    embedding picks one copy per edge (bitmask over edge indices), so the
    count is exactly 2^#E as a big integer.
    """

    count: int
    n_edges: int
    mode: str
    embeddings: tuple[int, ...] | None = None
    sample_seed: int | None = None

    def selected_edges(self, graph: Chromotopology, mask: int) -> list[tuple[int, int, int, int]]:
        """(u, v, color, copy) per edge for one embedding bitmask."""
        return [
            (u, v, c, mask >> e & 1) for e, (u, v, c) in enumerate(graph.edges)
        ]


def m_origami_embeddings(
    graph: Chromotopology,
    mode: str = "count",
    limit: int = 1 << 16,
    seed: int | None = None,
    n_samples: int = 0,
) -> MOrigamiEmbeddings:
    """Count (and optionally list or sample) Adinkra embeddings in the
    M-origami curve: one choice of each doubled parallel edge pair."""
    n = graph.edge_count
    count = 1 << n
    if mode == "count":
        return MOrigamiEmbeddings(count, n, mode)
    if mode == "enumerate":
        if count > limit:
            raise ResourceBoundError(
                f"2^{n} embeddings exceed the enumeration limit {limit}; "
                "use mode='sample' with an explicit seed"
            )
        return MOrigamiEmbeddings(count, n, mode, tuple(range(count)))
    if mode == "sample":
        if seed is None:
            raise ValueError("sampling requires an explicit seed")
        rng = random.Random(seed)
        picks = tuple(rng.getrandbits(n) for _ in range(n_samples))
        return MOrigamiEmbeddings(count, n, mode, picks, seed)
    raise ValueError(f"unknown mode {mode!r}")
