"""Adinkra chromotopologies: code quotients, rankings, dashings, dimers,
Kasteleyn orientations.

A chromotopology is an N-regular bipartite graph with edges colored by
1..N, one edge of each color per vertex, and every 2-colored subgraph a
disjoint union of 4-cycles.  Quotients of the N-cube by a binary code are
built with :func:`build_quotient`; validation is report-style, never an
exception, so the code-property iff statements stay testable.

Dashings are stored per edge index; exhaustive sweeps work on int bitmasks
over edge indices (bit e = edge ``graph.edges[e]`` dashed).
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .codes import BinaryCode, analyze_code, coordinate_mask, enumerate_cosets, format_word, weight
from .errors import ResourceBoundError

BOSON, FERMION = 0, 1

# exhaustive dashing sweeps refuse above this many dashings
DASH_ENUMERATION_LIMIT = 1 << 20

Edge = tuple[int, int, int]  # (u index, v index, color in 1..N); u <= v


def label_text(label: Hashable, n_colors: int) -> str:
    """Render a vertex label: ints as bit-strings, product labels nested."""
    if isinstance(label, int):
        return format_word(label, n_colors)
    if isinstance(label, tuple):
        return "(" + ",".join(str(part) for part in label) + ")"
    return str(label)


@dataclass(frozen=True)
class Chromotopology:
    """Colored bipartite graph skeleton of an Adinkra.

    ``vertices`` hold opaque labels (ints for code quotients, pairs for
    products, strings after JSON ingestion); edges refer to vertex indices.
    ``warnings`` carries construction-time defect notes (loops, parallel
    edges, non-doubly-even code), never validation results.
    """

    n_colors: int
    vertices: tuple[Hashable, ...]
    edges: tuple[Edge, ...]
    bipartition: tuple[int, ...]
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.bipartition) != len(self.vertices):
            raise ValueError("bipartition length mismatch")
        for u, v, c in self.edges:
            if not (0 <= u < len(self.vertices) and 0 <= v < len(self.vertices)):
                raise ValueError(f"edge ({u},{v}) references missing vertex")
            if not 1 <= c <= self.n_colors:
                raise ValueError(f"edge color {c} out of range 1..{self.n_colors}")

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def vertex_index(self) -> dict:
        return {label: i for i, label in enumerate(self.vertices)}

    @cached_property
    def incidence(self) -> tuple[dict[int, list[tuple[int, int]]], ...]:
        """Per vertex: color -> list of (edge index, other endpoint)."""
        inc: list[dict[int, list[tuple[int, int]]]] = [dict() for _ in self.vertices]
        for e, (u, v, c) in enumerate(self.edges):
            inc[u].setdefault(c, []).append((e, v))
            if v != u:
                inc[v].setdefault(c, []).append((e, u))
        return tuple(inc)

    @cached_property
    def incident_edge_masks(self) -> tuple[int, ...]:
        masks = [0] * self.vertex_count
        for e, (u, v, _c) in enumerate(self.edges):
            masks[u] |= 1 << e
            masks[v] |= 1 << e
        return tuple(masks)

    def neighbor(self, v: int, color: int) -> int:
        """The unique color-neighbor of vertex index v; raises if not unique."""
        slots = self.incidence[v].get(color, [])
        if len(slots) != 1:
            raise ValueError(f"vertex {v} has {len(slots)} edges of color {color}")
        return slots[0][1]

    def edge_of(self, v: int, color: int) -> int:
        slots = self.incidence[v].get(color, [])
        if len(slots) != 1:
            raise ValueError(f"vertex {v} has {len(slots)} edges of color {color}")
        return slots[0][0]

    def edges_of_color(self, color: int) -> list[int]:
        if not 1 <= color <= self.n_colors:
            raise ValueError(f"color {color} out of range 1..{self.n_colors}")
        return [e for e, (_u, _v, c) in enumerate(self.edges) if c == color]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        queue = deque([0])
        adj: list[list[int]] = [[] for _ in self.vertices]
        for u, v, _c in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.vertex_count

    def label_texts(self) -> tuple[str, ...]:
        return tuple(label_text(l, self.n_colors) for l in self.vertices)


@dataclass(frozen=True)
class Ranking:
    """Integer height per vertex index (bosons even, fermions odd)."""

    values: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.values[i]


@dataclass(frozen=True)
class Dashing:
    """Solid/dashed assignment per edge index (0 solid, 1 dashed)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if set(self.bits) - {0, 1}:
            raise ValueError("dashing bits must be 0 or 1")

    @classmethod
    def solid(cls, n_edges: int) -> "Dashing":
        return cls((0,) * n_edges)

    @classmethod
    def from_mask(cls, mask: int, n_edges: int) -> "Dashing":
        return cls(tuple(mask >> e & 1 for e in range(n_edges)))

    @property
    def mask(self) -> int:
        m = 0
        for e, b in enumerate(self.bits):
            m |= b << e
        return m

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class Face:
    """A 2-colored 4-cycle with a stored cyclic orientation.

    ``vertices[j]`` to ``vertices[j+1]`` runs along ``edge_indices[j]``;
    edge colors alternate ``colors[0], colors[1]`` starting at the lowest
    vertex index on the cycle.
    """

    vertices: tuple[int, int, int, int]
    edge_indices: tuple[int, int, int, int]
    colors: tuple[int, int]

    @property
    def edge_mask(self) -> int:
        m = 0
        for e in self.edge_indices:
            m |= 1 << e
        return m


@dataclass(frozen=True)
class Orientation:
    """Total edge orientation, stored as the head vertex index per edge."""

    heads: tuple[int, ...]


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Axiom-by-axiom result; connectivity is informational only."""

    checks: tuple[AxiomCheck, ...]
    connected: bool

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "connected": self.connected,
            "checks": [
                {"axiom": c.name, "passed": c.passed, "witness": c.witness}
                for c in self.checks
            ],
        }


@dataclass(frozen=True)
class Adinkra:
    """Chromotopology with its ranking and dashing."""

    graph: Chromotopology
    ranking: Ranking
    dashing: Dashing


def build_quotient(n: int, code: BinaryCode) -> Chromotopology:
    """Quotient chromotopology A_N / L of the N-cube by a binary code.

    Vertices are the cosets (labelled by lexicographically smallest
    members, sorted); color i joins [v] and [v + e_i].  Codes that are not
    doubly-even still build: the defects (loops for weight-1 words,
    parallel edges for weight-2, odd words breaking the bipartition) are
    recorded in ``warnings`` and surface in validation.
    """
    if code.length != n:
        raise ValueError(f"code length {code.length} != n = {n}")
    reps = enumerate_cosets(code)
    index = {r: i for i, r in enumerate(reps)}
    words = code.codewords()

    def rep_of(x: int) -> int:
        return min(x ^ c for c in words)

    warnings: list[str] = []
    report = analyze_code(code)
    if not report.is_even:
        warnings.append("code is not even: quotient is not bipartite")
    elif not report.is_doubly_even:
        warnings.append("code is even but not doubly-even: quotient admits no well-dashing")

    edge_set = {}
    for i, v in enumerate(reps):
        for color in range(1, n + 1):
            w = rep_of(v ^ coordinate_mask(n, color))
            j = index[w]
            if j == i:
                warnings.append(f"loop: color {color} fixes coset {format_word(v, n)}")
            key = (min(i, j), max(i, j), color)
            edge_set[key] = None
    edges = tuple(sorted(edge_set, key=lambda e: (e[2], e[0], e[1])))

    pair_counts = Counter((u, v) for u, v, _c in edges if u != v)
    for (u, v), cnt in sorted(pair_counts.items()):
        if cnt > 1:
            warnings.append(
                f"parallel edges: {cnt} colors join {format_word(reps[u], n)} "
                f"and {format_word(reps[v], n)}"
            )

    bipartition = tuple(weight(r) & 1 for r in reps)
    return Chromotopology(n, tuple(reps), edges, bipartition, tuple(warnings))


def _walk_four_cycles(graph: Chromotopology, first: int, second: int) -> list[tuple[int, int, int, int]]:
    """Cycles of the {first, second}-colored subgraph as 4-tuples of vertices.

    Raises ValueError (with a witness) when the subgraph is not a disjoint
    union of 4-cycles; cycle starts at its lowest vertex index, first step
    along ``first``.
    """
    seen = [False] * graph.vertex_count
    cycles = []
    for v0 in range(graph.vertex_count):
        if seen[v0]:
            continue
        v1 = graph.neighbor(v0, first)
        v2 = graph.neighbor(v1, second)
        v3 = graph.neighbor(v2, first)
        back = graph.neighbor(v3, second)
        quad = (v0, v1, v2, v3)
        if back != v0 or len(set(quad)) != 4:
            raise ValueError(
                f"colors ({first},{second}) do not close a 4-cycle at vertex {v0}: "
                f"walk {quad} returns to {back}"
            )
        for x in quad:
            if seen[x]:
                raise ValueError(
                    f"colors ({first},{second}): vertex {x} lies on two cycles"
                )
            seen[x] = True
        # start the stored cycle at its minimal vertex with the first step on
        # color `first`: even rotations keep the color pattern, odd positions
        # need the reversed traversal (which also starts on `first`)
        start = quad.index(min(quad))
        if start == 1:
            quad = (v1, v0, v3, v2)
        elif start == 2:
            quad = (v2, v3, v0, v1)
        elif start == 3:
            quad = (v3, v2, v1, v0)
        cycles.append(quad)
    return cycles


def _face_from_quad(graph: Chromotopology, quad: tuple[int, int, int, int], first: int, second: int) -> Face:
    v0, v1, v2, v3 = quad
    e0 = graph.edge_of(v0, first)
    e1 = graph.edge_of(v1, second)
    e2 = graph.edge_of(v2, first)
    e3 = graph.edge_of(v3, second)
    return Face((v0, v1, v2, v3), (e0, e1, e2, e3), (first, second))


def two_colored_four_cycles(
    graph: Chromotopology, pairs: Iterable[tuple[int, int]] | None = None
) -> tuple[Face, ...]:
    """All 2-colored 4-cycles, one Face per cycle per color pair.

    ``pairs`` defaults to every unordered color pair {i, j}; the
    well-dashed predicate quantifies over exactly these.
    """
    if pairs is None:
        n = graph.n_colors
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    faces = []
    for first, second in pairs:
        for quad in _walk_four_cycles(graph, first, second):
            faces.append(_face_from_quad(graph, quad, first, second))
    return tuple(faces)


def validate_chromotopology(graph: Chromotopology) -> ValidationReport:
    """Check the chromotopology axioms, reporting witnesses for failures."""
    checks = []

    loops = [(e, graph.edges[e]) for e in range(graph.edge_count) if graph.edges[e][0] == graph.edges[e][1]]
    checks.append(AxiomCheck(
        "simple: no loops", not loops,
        "" if not loops else f"edge {loops[0][0]} loops at vertex {loops[0][1][0]}"))

    pair_counts = Counter((u, v) for u, v, _c in graph.edges if u != v)
    parallel = [(p, c) for p, c in sorted(pair_counts.items()) if c > 1]
    checks.append(AxiomCheck(
        "simple: no parallel edges", not parallel,
        "" if not parallel else f"vertices {parallel[0][0]} joined by {parallel[0][1]} edges"))

    degrees = [0] * graph.vertex_count
    for u, v, _c in graph.edges:
        degrees[u] += 1
        degrees[v] += 1
    bad_deg = [(i, d) for i, d in enumerate(degrees) if d != graph.n_colors]
    checks.append(AxiomCheck(
        f"{graph.n_colors}-regular", not bad_deg,
        "" if not bad_deg else f"vertex {bad_deg[0][0]} has degree {bad_deg[0][1]}"))

    cross = [(u, v) for u, v, _c in graph.edges
             if graph.bipartition[u] == graph.bipartition[v]]
    checks.append(AxiomCheck(
        "bipartite: edges cross the bipartition", not cross,
        "" if not cross else f"edge {cross[0]} joins same-class vertices"))

    color_bad = None
    for v in range(graph.vertex_count):
        for color in range(1, graph.n_colors + 1):
            slots = graph.incidence[v].get(color, [])
            if len(slots) != 1:
                color_bad = (v, color, len(slots))
                break
        if color_bad:
            break
    checks.append(AxiomCheck(
        "one edge of each color per vertex", color_bad is None,
        "" if color_bad is None else
        f"vertex {color_bad[0]} has {color_bad[2]} edges of color {color_bad[1]}"))

    cycle_witness = ""
    cycles_ok = True
    if color_bad is None and not loops:
        try:
            two_colored_four_cycles(graph)
        except ValueError as exc:
            cycles_ok = False
            cycle_witness = str(exc)
    else:
        cycles_ok = False
        cycle_witness = "skipped: per-color incidence ill-defined"
    checks.append(AxiomCheck("2-colored subgraphs are unions of 4-cycles", cycles_ok, cycle_witness))

    return ValidationReport(tuple(checks), graph.is_connected())


def default_ranking(graph: Chromotopology) -> Ranking:
    """Rank by graph distance from the zero coset.

    For cube quotients this is the minimal Hamming weight over the coset
    (equal to # of 1's in a weight-minimal representative), which keeps
    every edge a unit step.  Raises when the parity of the distance
    disagrees with the stored bipartition (odd codes).
    """
    start = graph.vertex_index.get(0, 0)
    dist = [-1] * graph.vertex_count
    dist[start] = 0
    queue = deque([start])
    adj: list[list[int]] = [[] for _ in graph.vertices]
    for u, v, _c in graph.edges:
        adj[u].append(v)
        adj[v].append(u)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    if min(dist) < 0:
        raise ValueError("graph is disconnected: ranking undefined")
    for i, d in enumerate(dist):
        if d & 1 != graph.bipartition[i]:
            raise ValueError(
                f"bipartition inconsistency at vertex {i}: distance {d} vs "
                f"class {graph.bipartition[i]} (odd code?)"
            )
    return Ranking(tuple(dist))


def validate_ranking(graph: Chromotopology, ranking: Ranking) -> list[str]:
    """Issues with a ranking: parity per class, |dh| = 1 across edges."""
    issues = []
    for i, h in enumerate(ranking.values):
        if h & 1 != graph.bipartition[i]:
            issues.append(f"vertex {i}: rank {h} parity mismatches class {graph.bipartition[i]}")
    for u, v, c in graph.edges:
        if abs(ranking.values[u] - ranking.values[v]) != 1:
            issues.append(f"edge ({u},{v},{c}): rank step {ranking.values[u]}->{ranking.values[v]}")
    return issues


def _check_faces(graph: Chromotopology, faces: Sequence[Face]) -> None:
    for f in faces:
        for e in f.edge_indices:
            if not 0 <= e < graph.edge_count:
                raise ValueError(f"face references missing edge {e}")


def well_dashed(graph: Chromotopology, faces: Sequence[Face], dashing: Dashing) -> bool:
    """True iff every given 2-colored 4-cycle has an odd number of dashes."""
    _check_faces(graph, faces)
    mask = dashing.mask
    return all((mask & f.edge_mask).bit_count() & 1 for f in faces)


def vertex_change(graph: Chromotopology, dashing: Dashing, v: Hashable) -> Dashing:
    """Flip the dash bit of every edge incident to the vertex labelled v."""
    if v not in graph.vertex_index:
        raise ValueError(f"unknown vertex {v!r}")
    m = graph.incident_edge_masks[graph.vertex_index[v]]
    return Dashing.from_mask(dashing.mask ^ m, graph.edge_count)


def _vertex_change_basis(graph: Chromotopology) -> list[int]:
    """GF(2) echelon basis of the span of vertex-change masks (cut space)."""
    basis: list[int] = []
    for m in graph.incident_edge_masks:
        r = m
        for b in basis:
            if r >> (b.bit_length() - 1) & 1:
                r ^= b
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def _reduce_mask(mask: int, basis: Sequence[int]) -> int:
    r = mask
    for b in basis:
        if r >> (b.bit_length() - 1) & 1:
            r ^= b
    return r


def dashing_class(graph: Chromotopology, dashing: Dashing) -> int:
    """Canonical identifier of the vertex-change equivalence class.

    Two dashings are equivalent iff their XOR lies in the GF(2) span of
    the vertex-change masks; the identifier is the residue of the dashing
    mask after reduction by that span (membership in the incidence image,
    not a BFS over moves).
    """
    return _reduce_mask(dashing.mask, _vertex_change_basis(graph))


def dimer_from_color(graph: Chromotopology, color: int) -> tuple[int, ...]:
    """Edges of one color as a perfect matching (validated)."""
    edges = graph.edges_of_color(color)
    touched = Counter()
    for e in edges:
        u, v, _c = graph.edges[e]
        touched[u] += 1
        touched[v] += 1
    if set(touched) != set(range(graph.vertex_count)) or set(touched.values()) != {1}:
        raise ValueError(f"color {color} edges are not a perfect matching")
    return tuple(edges)


def kasteleyn_parities(graph: Chromotopology, faces: Sequence[Face]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(base opposition parity, edge mask) per face for the solid orientation.

    The solid (all-boson-to-fermion) orientation opposes some number of
    edges on each stored face cycle; dashing an edge toggles its direction,
    so the Kasteleyn parity of a dashing mask d on face f is
    ``base[f] ^ popcount(d & mask[f])``.
    """
    _check_faces(graph, faces)
    base = []
    masks = []
    heads_solid = _heads(graph, Dashing.solid(graph.edge_count))
    for f in faces:
        opp = 0
        for j in range(4):
            tail = f.vertices[j]
            e = f.edge_indices[j]
            if heads_solid[e] == tail:
                opp ^= 1
        base.append(opp)
        masks.append(f.edge_mask)
    return tuple(base), tuple(masks)


def _heads(graph: Chromotopology, dashing: Dashing) -> tuple[int, ...]:
    heads = []
    for e, (u, v, _c) in enumerate(graph.edges):
        bu, bv = graph.bipartition[u], graph.bipartition[v]
        if bu == bv:
            raise ValueError(f"edge ({u},{v}) does not cross the bipartition")
        head = v if bv == FERMION else u
        if dashing.bits[e]:
            head = u if head == v else v
        heads.append(head)
    return tuple(heads)


def dashing_to_kasteleyn(
    graph: Chromotopology, faces: Sequence[Face], dashing: Dashing
) -> tuple[Orientation, bool]:
    """Orientation induced by a dashing, plus the Kasteleyn predicate.

    Fixed map: orient boson -> fermion, reversed iff the edge is dashed.
    ``kasteleyn_ok`` is true iff every face, traversed in its stored cyclic
    order, opposes an odd number of edge directions.
    """
    if not faces:
        raise ValueError("no faces supplied")
    _check_faces(graph, faces)
    heads = _heads(graph, dashing)
    ok = True
    for f in faces:
        opp = 0
        for j in range(4):
            if heads[f.edge_indices[j]] == f.vertices[j]:
                opp ^= 1
        if not opp:
            ok = False
            break
    return Orientation(heads), ok


def _require_enumerable(graph: Chromotopology, limit: int) -> None:
    if (1 << graph.edge_count) > limit:
        raise ResourceBoundError(
            f"2^{graph.edge_count} dashings exceed the enumeration gate "
            f"({limit}); use sample_well_dashed or count_well_dashed_exact"
        )


def well_dashed_masks(
    graph: Chromotopology,
    faces: Sequence[Face] | None = None,
    limit: int = DASH_ENUMERATION_LIMIT,
    workers: int = 1,
) -> list[int]:
    """All well-dashed dashing masks, by exhaustive sweep (gated)."""
    if faces is None:
        faces = two_colored_four_cycles(graph)
    _require_enumerable(graph, limit)
    fmasks = [f.edge_mask for f in faces]
    total = 1 << graph.edge_count

    def scan(lo: int, hi: int) -> list[int]:
        out = []
        for m in range(lo, hi):
            for fm in fmasks:
                if not (m & fm).bit_count() & 1:
                    break
            else:
                out.append(m)
        return out

    if workers <= 1 or total < (1 << 12):
        return scan(0, total)
    from concurrent.futures import ThreadPoolExecutor

    chunk = total // workers + 1
    spans = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda s: scan(*s), spans)
    return [m for part in parts for m in part]


def count_well_dashed(
    graph: Chromotopology,
    faces: Sequence[Face] | None = None,
    limit: int = DASH_ENUMERATION_LIMIT,
    workers: int = 1,
) -> int:
    return len(well_dashed_masks(graph, faces, limit, workers))


def count_well_dashed_exact(graph: Chromotopology, faces: Sequence[Face] | None = None) -> int:
    """Exact well-dashed count by solving the odd-parity system over GF(2).

    The constraints ``popcount(d & face) odd`` are affine; the count is
    2^(E - rank) when consistent, 0 otherwise.  No enumeration, so this
    works beyond the sweep gate (e.g. the 32-edge 4-cube).
    """
    if faces is None:
        faces = two_colored_four_cycles(graph)
    rows = [(f.edge_mask, 1) for f in faces]
    basis: list[tuple[int, int]] = []
    for vec, rhs in rows:
        for bvec, brhs in basis:
            if vec >> (bvec.bit_length() - 1) & 1:
                vec ^= bvec
                rhs ^= brhs
        if vec == 0:
            if rhs:
                return 0
            continue
        basis.append((vec, rhs))
        basis.sort(reverse=True)
    return 1 << (graph.edge_count - len(basis))


def sample_well_dashed(
    graph: Chromotopology,
    seed: int,
    n_samples: int,
    faces: Sequence[Face] | None = None,
) -> tuple[int, int]:
    """(hits, n_samples) for uniformly sampled dashings; explicit seed."""
    if faces is None:
        faces = two_colored_four_cycles(graph)
    fmasks = [f.edge_mask for f in faces]
    rng = random.Random(seed)
    hits = 0
    for _ in range(n_samples):
        m = rng.getrandbits(graph.edge_count)
        if all((m & fm).bit_count() & 1 for fm in fmasks):
            hits += 1
    return hits, n_samples


def well_dashed_class_ids(
    graph: Chromotopology,
    faces: Sequence[Face] | None = None,
    limit: int = DASH_ENUMERATION_LIMIT,
) -> dict[int, int]:
    """Map vertex-change class id -> count over all well-dashed dashings.

    With ``faces`` = the embedded (consecutively colored) 2-cells, the
    classes are the spin structures of the surface, 2^(2g) of them; the
    default (every 2-colored 4-cycle) is the strict well-dashed notion.
    """
    basis = _vertex_change_basis(graph)
    counts: Counter = Counter()
    for m in well_dashed_masks(graph, faces=faces, limit=limit):
        counts[_reduce_mask(m, basis)] += 1
    return dict(counts)


def graph_to_json(graph: Chromotopology, dashing: Dashing | None = None) -> dict:
    d = dashing.bits if dashing is not None else (0,) * graph.edge_count
    obj = {
        "n": graph.n_colors,
        "vertices": list(graph.label_texts()),
        "edges": [
            {"u": u, "v": v, "color": c, "dash": d[e]}
            for e, (u, v, c) in enumerate(graph.edges)
        ],
        "bipartition": list(graph.bipartition),
    }
    if graph.warnings:
        obj["warnings"] = list(graph.warnings)
    return obj


def graph_from_json(obj: dict) -> tuple[Chromotopology, Dashing]:
    edges = tuple((int(e["u"]), int(e["v"]), int(e["color"])) for e in obj["edges"])
    graph = Chromotopology(
        int(obj["n"]),
        tuple(obj["vertices"]),
        edges,
        tuple(int(b) for b in obj["bipartition"]),
        tuple(obj.get("warnings", ())),
    )
    dashing = Dashing(tuple(int(e["dash"]) for e in obj["edges"]))
    return graph, dashing
