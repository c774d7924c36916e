"""Fuchsian triangle groups: generators in SL(2,R), breadth-first element
enumeration, primitive geodesic length spectra, finite covers via coset
actions, and unitary characters.

Conventions.  Generators a, b, c are counterclockwise rotations by
2*pi/p, 2*pi/q, 2*pi/r about the vertices of a geodesic triangle with
angles pi/p, pi/q, pi/r, normalized so a*b*c = +-1.  Words are strings
over a/b/c with uppercase for inverses.  A hyperbolic element of absolute
trace t > 2 translates along its axis by l = 2*arccosh(t/2); its conjugacy
class is detected numerically by trace bucketing plus conjugation-orbit
closure inside a matrix-norm ball, which depth-stability tests guard.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

DET_TOL = 1e-12
TRACE_GAP = 1e-9  # elements this close to |tr| = 2 are flagged near-parabolic

_LETTERS = ("a", "A", "b", "B", "c", "C")


def _rot_half(alpha: float) -> np.ndarray:
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, s], [-s, c]])


def _mover(z: complex) -> np.ndarray:
    r = math.sqrt(z.imag)
    return np.array([[r, z.real / r], [0.0, 1.0 / r]])


def mobius(m: np.ndarray, z: complex) -> complex:
    a, b, c, d = m.ravel()
    return (a * z + b) / (c * z + d)


def rotation_about(z: complex, angle: float) -> np.ndarray:
    """SL(2,R) elliptic element rotating the tangent space at z by +angle."""
    mv = _mover(z)
    return mv @ _rot_half(angle / 2.0) @ np.linalg.inv(mv)


@dataclass(frozen=True)
class GroupElement:
    """Group element with its matrix (det renormalized to 1) and a word."""

    matrix: np.ndarray = field(compare=False)
    word: str

    @property
    def trace(self) -> float:
        return float(self.matrix[0, 0] + self.matrix[1, 1])

    def det_defect(self) -> float:
        return abs(float(np.linalg.det(self.matrix)) - 1.0)


@dataclass(frozen=True)
class TriangleGroup:
    p: int
    q: int
    r: int
    generators: dict[str, np.ndarray] = field(compare=False)
    vertices: tuple[complex, complex, complex]
    relation_residual: float

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def letter_matrix(self, letter: str) -> np.ndarray:
        base = self.generators[letter.lower()]
        return base if letter.islower() else np.linalg.inv(base)

    def word_matrix(self, word: str) -> np.ndarray:
        m = np.eye(2)
        for letter in word:
            m = m @ self.letter_matrix(letter)
        return _renorm(m)


def _renorm(m: np.ndarray) -> np.ndarray:
    return m / math.sqrt(abs(float(np.linalg.det(m))))


def triangle_generators(p: int, q: int, r: int) -> TriangleGroup:
    """Rotation generators of the (p, q, r) triangle group.

    The triangle is placed with the order-p vertex at i, the order-q vertex
    up the imaginary axis at hyperbolic distance given by the angle cosine
    rule, and the order-r vertex rotated off the axis; the defining product
    a*b*c = +-1 is verified to 1e-10 and its residual stored.
    """
    if 1.0 / p + 1.0 / q + 1.0 / r >= 1.0 - 1e-12:
        raise ValueError(f"signature ({p},{q},{r}) is not hyperbolic")
    al, be, ga = math.pi / p, math.pi / q, math.pi / r
    cosh_c = (math.cos(al) * math.cos(be) + math.cos(ga)) / (math.sin(al) * math.sin(be))
    cosh_b = (math.cos(al) * math.cos(ga) + math.cos(be)) / (math.sin(al) * math.sin(ga))
    side_c = math.acosh(cosh_c)
    side_b = math.acosh(cosh_b)
    va = 1j
    vb = 1j * math.e ** side_c
    vc = mobius(rotation_about(va, al), 1j * math.e ** side_b)
    gen_a = rotation_about(va, 2 * al)
    gen_b = rotation_about(vb, 2 * be)
    gen_c = rotation_about(vc, 2 * ga)
    prod = gen_a @ gen_b @ gen_c
    residual = min(
        float(np.abs(prod - np.eye(2)).max()), float(np.abs(prod + np.eye(2)).max())
    )
    if residual > 1e-10:
        raise ValueError(f"triangle relation residual {residual:.2e} exceeds 1e-10")
    return TriangleGroup(p, q, r, {"a": gen_a, "b": gen_b, "c": gen_c},
                         (va, complex(vb), vc), residual)


def _sign_canonical(m: np.ndarray) -> np.ndarray:
    flat = m.ravel()
    for x in flat:
        if abs(x) > 1e-8:
            return m if x > 0 else -m
    return m


def _key(m: np.ndarray, digits: int = 8) -> tuple[int, int, int, int]:
    s = _sign_canonical(m)
    scale = 10.0 ** digits
    return tuple(int(round(float(x) * scale)) for x in s.ravel())


@dataclass(frozen=True)
class GeodesicClass:
    """Primitive-power conjugacy class data for the trace formula."""

    trace: float
    length: float
    primitive_length: float
    multiplicity: int = 1
    word: str = ""
    primitive: bool = True

    @property
    def norm(self) -> float:
        return math.exp(self.length)

    @property
    def half_trace_arccosh(self) -> float:
        return math.acosh(self.trace / 2.0)


@dataclass(frozen=True)
class SpectrumResult:
    """Primitive length spectrum with completeness diagnostics."""

    classes: tuple[GeodesicClass, ...]
    l_max: float
    certified_below: float
    converged: bool
    depth: int
    element_count: int
    elliptic_count: int
    near_parabolic_count: int

    def __iter__(self):
        return iter(self.classes)


def length_of_trace(t: float) -> float:
    return 2.0 * math.acosh(abs(t) / 2.0)


class _Ball:
    """Breadth-first ball in the group, deduped by sign-canonical matrix."""

    def __init__(self, group: TriangleGroup):
        self.group = group
        self.letters = {l: group.letter_matrix(l) for l in _LETTERS}
        ident = np.eye(2)
        self.elements: dict[tuple, tuple[np.ndarray, str]] = {_key(ident): (ident, "")}
        self.frontier = [(ident, "")]
        self.depth = 0

    def grow(self, max_norm: float = 1e8) -> int:
        new_frontier = []
        added = 0
        for mat, word in self.frontier:
            last = word[-1] if word else ""
            for letter, gm in self.letters.items():
                if last and letter.swapcase() == last:
                    continue
                nm = _renorm(mat @ gm)
                if float(np.abs(nm).max()) > max_norm:
                    continue
                k = _key(nm)
                if k in self.elements:
                    continue
                self.elements[k] = (nm, word + letter)
                new_frontier.append((nm, word + letter))
                added += 1
        self.frontier = new_frontier
        self.depth += 1
        return added


class _Classifier:
    """Numerical conjugacy detection by canonical minimal representatives.

    Each element is conjugated greedily toward smaller matrix norm (with
    two-letter lookahead to step over plateaus); from the local minimum a
    bounded shell of conjugates is searched and the smallest rounded
    matrix key found is the class identifier.  Keys along the way are
    memoized, so repeat members of a class resolve instantly.
    """

    SHELL_FACTOR = 2.0
    SHELL_NODE_CAP = 50_000

    def __init__(self, group: TriangleGroup):
        conjugators = []
        for l1 in _LETTERS:
            conjugators.append(group.letter_matrix(l1))
        for l1 in _LETTERS:
            for l2 in _LETTERS:
                if l2 != l1.swapcase():
                    conjugators.append(group.letter_matrix(l1) @ group.letter_matrix(l2))
        self.pairs = [(g, np.linalg.inv(g)) for g in conjugators]
        self.single_pairs = self.pairs[: len(_LETTERS)]
        self.memo: dict[tuple, tuple] = {}

    @staticmethod
    def _rank(m: np.ndarray) -> tuple[float, tuple]:
        return (round(float(np.abs(m).max()), 9), _key(m))

    def class_key(self, m: np.ndarray) -> tuple:
        path = []
        cur = _renorm(m)
        cur_rank = self._rank(cur)
        while True:
            k = cur_rank[1]
            if k in self.memo:
                cls = self.memo[k]
                for pk in path:
                    self.memo[pk] = cls
                return cls
            path.append(k)
            best = None
            for g, gi in self.pairs:
                cm = _renorm(g @ cur @ gi)
                r = self._rank(cm)
                if r < cur_rank and (best is None or r < best[0]):
                    best = (r, cm)
            if best is None:
                break
            cur_rank, cur = best
        # bounded search around the local minimum for the true class minimum
        cap = max(3.0, self.SHELL_FACTOR * cur_rank[0])
        seen = {cur_rank[1]}
        queue = deque([cur])
        best_key = cur_rank[1]
        while queue and len(seen) < self.SHELL_NODE_CAP:
            x = queue.popleft()
            for g, gi in self.single_pairs:
                cm = _renorm(g @ x @ gi)
                if float(np.abs(cm).max()) > cap:
                    continue
                k = _key(cm)
                if k in seen:
                    continue
                seen.add(k)
                queue.append(cm)
                if k in self.memo:
                    cls = self.memo[k]
                    for pk in path:
                        self.memo[pk] = cls
                    for pk in seen:
                        self.memo[pk] = cls
                    return cls
                if k < best_key:
                    best_key = k
        cls = best_key
        for pk in path:
            self.memo[pk] = cls
        for pk in seen:
            self.memo[pk] = cls
        return cls


def _conjugacy_partition(
    group: TriangleGroup, hyperbolics: list[tuple[np.ndarray, str]]
) -> dict[tuple, list[tuple[np.ndarray, str]]]:
    """Group hyperbolic (matrix, word) pairs into conjugacy classes."""
    classifier = _Classifier(group)
    classes: dict[tuple, list[tuple[np.ndarray, str]]] = {}
    for m, w in hyperbolics:
        classes.setdefault(classifier.class_key(m), []).append((m, w))
    return classes


def length_spectrum(
    group: TriangleGroup,
    l_max: float,
    dedupe_tol: float = 1e-9,
    max_depth: int = 24,
    max_elements: int = 400_000,
    stable_rounds: int = 1,
) -> SpectrumResult:
    """Primitive geodesic classes with length <= l_max, with multiplicity.

    Words are expanded breadth-first with matrix dedupe up to sign; the
    expansion deepens until the class multiset below l_max is unchanged
    for ``stable_rounds`` consecutive depths (then the spectrum is
    reported converged and certified below l_max) or the element budget
    runs out (reported not converged, certified only below the last
    length at which the two final rounds agreed).

    Classes at equal length within ``dedupe_tol`` are merged into one
    entry with their count as multiplicity; elliptic and near-parabolic
    elements are excluded and counted separately.
    """
    if l_max <= 0:
        raise ValueError("l_max must be positive")
    ball = _Ball(group)
    previous: dict | None = None
    last_two: tuple[dict | None, dict | None] = (None, None)
    stable = 0
    result_classes: dict | None = None
    elliptic = 0
    near_parabolic = 0
    converged = False
    while ball.depth < max_depth:
        added = ball.grow()
        if added == 0:
            converged = True
            break
        hyperbolics = []
        elliptic = 0
        near_parabolic = 0
        for mat, word in ball.elements.values():
            if not word:
                continue  # identity
            t = abs(float(mat[0, 0] + mat[1, 1]))
            if t <= 2.0 - TRACE_GAP:
                elliptic += 1
                continue
            if t <= 2.0 + TRACE_GAP:
                near_parabolic += 1
                continue
            if length_of_trace(t) <= l_max + 1e-12:
                hyperbolics.append((mat, word))
        partition = _conjugacy_partition(group, hyperbolics)
        signature: dict[int, int] = {}
        for members in partition.values():
            t = abs(float(members[0][0][0, 0] + members[0][0][1, 1]))
            bucket = int(round(length_of_trace(t) / max(dedupe_tol, 1e-12)))
            signature[bucket] = signature.get(bucket, 0) + 1
        if previous is not None and signature == previous:
            stable += 1
            if stable >= stable_rounds:
                result_classes = partition
                converged = True
                break
        else:
            stable = 0
        last_two = (previous, signature)
        previous = signature
        result_classes = partition
        if len(ball.elements) > max_elements:
            break
    classes = _classes_from_partition(group, result_classes or {}, dedupe_tol)
    if converged:
        certified = l_max
    else:
        # budget ran out: certify only below the first length bucket on
        # which the final two depths disagreed
        prev_sig, last_sig = last_two
        certified = 0.0
        if prev_sig is not None and last_sig is not None:
            disagree = [b for b in set(prev_sig) | set(last_sig)
                        if prev_sig.get(b) != last_sig.get(b)]
            certified = (min(disagree) * max(dedupe_tol, 1e-12)) if disagree else l_max
    return SpectrumResult(
        classes,
        l_max,
        certified,
        converged,
        ball.depth,
        len(ball.elements),
        elliptic,
        near_parabolic,
    )


def _classes_from_partition(
    group: TriangleGroup,
    partition: dict[tuple, list[tuple[np.ndarray, str]]],
    dedupe_tol: float,
) -> tuple[GeodesicClass, ...]:
    """Turn raw conjugacy classes into GeodesicClass entries.

    Primitivity: a class of length l is a power iff some class of length
    l/m (m >= 2) has a representative whose m-th power lands in it;
    checked with the same classifier, ascending in length.
    """
    classifier = _Classifier(group)
    raw = []
    for members in partition.values():
        mat, word = min(members, key=lambda mw: (len(mw[1]), mw[1]))
        t = abs(float(mat[0, 0] + mat[1, 1]))
        raw.append((length_of_trace(t), t, mat, word))
    raw.sort(key=lambda r: (r[0], r[3]))
    keys = [classifier.class_key(mat) for _l, _t, mat, _w in raw]
    prim_len: list[float] = []
    primitive: list[bool] = []
    for i, (l, _t, _mat, _w) in enumerate(raw):
        base_len = l
        is_prim = True
        for j in range(i):
            lj = raw[j][0]
            m = l / lj
            mi = round(m)
            if mi >= 2 and abs(m - mi) < 1e-7:
                power = np.linalg.matrix_power(raw[j][2], mi)
                if classifier.class_key(_renorm(power)) == keys[i]:
                    base_len = prim_len[j]
                    is_prim = False
                    break
        prim_len.append(base_len)
        primitive.append(is_prim)

    merged: list[GeodesicClass] = []
    for i, (l, t, _mat, w) in enumerate(raw):
        if not primitive[i]:
            continue
        if merged and abs(merged[-1].length - l) <= dedupe_tol:
            prev = merged[-1]
            merged[-1] = replace(prev, multiplicity=prev.multiplicity + 1)
        else:
            merged.append(GeodesicClass(t, l, prim_len[i], 1, w, True))
    return tuple(merged)


def power_closure(classes: list[GeodesicClass] | tuple[GeodesicClass, ...], l_max: float) -> list[GeodesicClass]:
    """Close a primitive spectrum under powers up to length l_max.

    The k-th power of a primitive class of length l has length k*l, trace
    2*cosh(k*l/2), and inherits the primitive length and multiplicity.
    """
    out: list[GeodesicClass] = []
    for cls in classes:
        if not cls.primitive:
            raise ValueError("power_closure expects primitive classes")
        k = 1
        while k * cls.length <= l_max + 1e-12:
            out.append(
                GeodesicClass(
                    2.0 * math.cosh(k * cls.length / 2.0),
                    k * cls.length,
                    cls.length,
                    cls.multiplicity,
                    cls.word if k == 1 else f"{cls.word}^{k}",
                    k == 1,
                )
            )
            k += 1
    out.sort(key=lambda c: c.length)
    return out


@dataclass(frozen=True)
class CosetAction:
    """Permutation representation on the cosets of a finite-index subgroup.

    ``perms`` maps each generator letter to a 0-based permutation tuple;
    the action must be transitive (connected cover).
    """

    degree: int
    perms: dict[str, tuple[int, ...]] = field(compare=False)

    def __post_init__(self):
        for letter, p in self.perms.items():
            if sorted(p) != list(range(self.degree)):
                raise ValueError(f"perm for {letter!r} is not a permutation of degree {self.degree}")
        if not self.is_transitive():
            raise ValueError("coset action is not transitive")

    def is_transitive(self) -> bool:
        seen = {0}
        queue = deque(seen)
        inv = {l: _perm_inverse(p) for l, p in self.perms.items()}
        while queue:
            i = queue.popleft()
            for p in list(self.perms.values()) + list(inv.values()):
                if p[i] not in seen:
                    seen.add(p[i])
                    queue.append(p[i])
        return len(seen) == self.degree

    def word_permutation(self, word: str) -> tuple[int, ...]:
        """Image of a word: left-to-right letters compose left-to-right."""
        out = tuple(range(self.degree))
        for letter in word:
            base = self.perms.get(letter.lower())
            if base is None:
                raise ValueError(f"no permutation for generator {letter.lower()!r}")
            p = base if letter.islower() else _perm_inverse(base)
            out = tuple(out[p[i]] for i in range(self.degree))
        return out

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "perms": {l: [i + 1 for i in p] for l, p in sorted(self.perms.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CosetAction":
        return cls(
            int(obj["degree"]),
            {l: tuple(int(i) - 1 for i in p) for l, p in obj["perms"].items()},
        )


def _perm_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _cycle_lengths(p: tuple[int, ...]) -> list[int]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            c = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                c += 1
            out.append(c)
    return out


def cover_length_spectrum(
    base: list[GeodesicClass] | tuple[GeodesicClass, ...] | SpectrumResult,
    action: CosetAction,
) -> list[GeodesicClass]:
    """Lift a primitive base spectrum to the degree-d cover given by a
    coset action: each cycle of length c of the class's permutation image
    contributes one primitive class upstairs of length c * l.

    An entry with multiplicity > 1 (equal-length classes merged by
    ``length_spectrum``) is lifted through its representative word; when
    inequivalent equal-length classes could act with different cycle
    types, supply them as separate entries instead.
    """
    classes = base.classes if isinstance(base, SpectrumResult) else base
    out: list[GeodesicClass] = []
    for cls in classes:
        sigma = action.word_permutation(cls.word)
        counts: dict[int, int] = {}
        for c in _cycle_lengths(sigma):
            counts[c] = counts.get(c, 0) + 1
        for c, cnt in sorted(counts.items()):
            out.append(
                GeodesicClass(
                    2.0 * math.cosh(c * cls.length / 2.0),
                    c * cls.length,
                    c * cls.length,
                    cls.multiplicity * cnt,
                    f"{cls.word}|cycle{c}",
                    True,
                )
            )
    out.sort(key=lambda c: c.length)
    return out


@dataclass(frozen=True)
class SpinCharacter:
    """U(1) character given on generator letters, extended multiplicatively.

    The lift convention chi(-1) = -1 is recorded; relation defects (e.g.
    chi(a)^p vs chi(-1)) are reported by :meth:`relation_defects`, not
    enforced, because the trace formula consumes only chi on classes.
    """

    values: dict[str, complex] = field(compare=False)
    central_sign: int = -1

    def __post_init__(self):
        for letter, v in self.values.items():
            if abs(abs(v) - 1.0) > 1e-12:
                raise ValueError(f"character value for {letter!r} is not unimodular")

    def value(self, word: str) -> complex:
        out = complex(1.0)
        for letter in word:
            base = self.values.get(letter.lower())
            if base is None:
                raise ValueError(f"no character value for generator {letter.lower()!r}")
            out *= base if letter.islower() else base.conjugate()
        return out

    def relation_defects(self, group: TriangleGroup) -> dict[str, float]:
        sign = complex(self.central_sign)
        return {
            "a^p": abs(self.value("a") ** group.p - sign),
            "b^q": abs(self.value("b") ** group.q - sign),
            "c^r": abs(self.value("c") ** group.r - sign),
            "abc": abs(self.value("abc") - sign),
        }


def character_value(chi: SpinCharacter, class_word: str, power: int = 1) -> complex:
    """chi(P^power) = chi(P)^power by multiplicativity."""
    return chi.value(class_word) ** power


def trivial_character() -> SpinCharacter:
    return SpinCharacter({"a": 1.0 + 0j, "b": 1.0 + 0j, "c": 1.0 + 0j}, central_sign=1)


def spectrum_to_csv(classes) -> str:
    """CSV per the length-spectrum interface: one class per row."""
    rows = ["length,trace,multiplicity,word,primitive_flag"]
    items = classes.classes if isinstance(classes, SpectrumResult) else classes
    for c in items:
        rows.append(
            f"{c.length!r},{c.trace!r},{c.multiplicity},{c.word},{int(c.primitive)}"
        )
    return "\n".join(rows) + "\n"


def spectrum_from_csv(text: str) -> list[GeodesicClass]:
    lines = [l for l in text.strip().splitlines() if l]
    if not lines or not lines[0].startswith("length"):
        raise ValueError("missing length-spectrum CSV header")
    out = []
    for line in lines[1:]:
        length_s, trace_s, mult_s, word, prim_s = line.split(",")
        length = float(length_s)
        out.append(
            GeodesicClass(
                float(trace_s),
                length,
                length,
                int(mult_s),
                word,
                bool(int(prim_s)),
            )
        )
    return out
