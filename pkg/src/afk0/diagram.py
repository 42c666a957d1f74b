"""Bratteli diagrams, ordered Bratteli diagrams, and nest realizations.

A diagram is a finite prefix of an infinite direct system; every
limit-level question elsewhere in the package carries an explicit
depth.  Ordered diagrams store one edge ordering per vertex (a
sequence of source labels); their multiplicity matrices are derived
from the orderings, never stored separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .exact import IntMatrix, matrix
from .fdcsl import (
    MatrixUnitEmbedding,
    PreorderAlgebra,
    compose as compose_embeddings,
    direct_sum,
    embedding,
    upper_triangular,
)


@dataclass(frozen=True)
class BratteliDiagram:
    """Level sizes plus multiplicity matrices between consecutive levels.

    multiplicities[k] maps level k+1 to level k+2 (0-based storage) and
    has shape len(level_sizes[k+1]) x len(level_sizes[k]).  The order
    unit is the level-1 size vector.
    """

    level_sizes: tuple[tuple[int, ...], ...]
    multiplicities: tuple[IntMatrix, ...]
    stationary_generator: IntMatrix | None = None

    @property
    def depth(self) -> int:
        return len(self.level_sizes)

    @property
    def order_unit(self) -> tuple[int, ...]:
        return self.level_sizes[0]

    @property
    def is_stationary(self) -> bool:
        return self.stationary_generator is not None

    def step(self, k: int) -> IntMatrix:
        """Multiplicity matrix from level k to level k+1 (1-based levels)."""
        if self.is_stationary:
            return self.stationary_generator
        if not 1 <= k < self.depth:
            raise ValueError(f"no step from level {k}")
        return self.multiplicities[k - 1]

    def sizes(self, k: int) -> tuple[int, ...]:
        """Summand sizes at level k; stationary diagrams extend past depth."""
        if 1 <= k <= self.depth:
            return self.level_sizes[k - 1]
        if self.is_stationary:
            v = self.level_sizes[-1]
            for _ in range(k - self.depth):
                v = self.stationary_generator.apply(v)
            return v
        raise ValueError(f"level {k} beyond depth {self.depth}")

    def validate(self) -> list[str]:
        problems = []
        for k, m in enumerate(self.multiplicities, start=1):
            if m.rows != len(self.level_sizes[k]) or m.cols != len(self.level_sizes[k - 1]):
                problems.append(
                    f"step {k}: matrix is {m.rows}x{m.cols}, expected "
                    f"{len(self.level_sizes[k])}x{len(self.level_sizes[k - 1])}"
                )
                continue
            if not m.is_nonnegative:
                problems.append(f"step {k}: negative multiplicity")
            if m.apply(self.level_sizes[k - 1]) != self.level_sizes[k]:
                problems.append(f"step {k}: level sizes are not unital (sizes != M * previous)")
        for k, sizes in enumerate(self.level_sizes, start=1):
            if any(s <= 0 for s in sizes):
                problems.append(f"level {k}: nonpositive summand size")
        return problems


def stationary(x: IntMatrix, unit: Sequence[int], depth: int) -> BratteliDiagram:
    """Diagram with constant multiplicity x unrolled to `depth` levels
    (depth 0 degenerates to a single level)."""
    if not x.is_square:
        raise ValueError("stationary generator must be square")
    if not x.is_nonnegative:
        raise ValueError("stationary generator must be nonnegative")
    if len(unit) != x.cols:
        raise ValueError(f"unit length {len(unit)} != matrix size {x.cols}")
    levels = max(depth, 1)
    sizes = [tuple(unit)]
    for _ in range(levels - 1):
        sizes.append(x.apply(sizes[-1]))
    return BratteliDiagram(tuple(sizes), tuple([x] * (levels - 1)), x)


def telescope(d: "BratteliDiagram | OrderedBratteliDiagram", selection: Sequence[int]):
    """Compose steps along an increasing stage selection starting at 1."""
    sel = list(selection)
    if not sel or sel[0] != 1 or any(a >= b for a, b in zip(sel, sel[1:])):
        raise ValueError("selection must be increasing and start at 1")
    if isinstance(d, OrderedBratteliDiagram):
        return _telescope_ordered(d, sel)
    if sel[-1] > d.depth:
        raise ValueError(f"selection reaches level {sel[-1]} beyond depth {d.depth}")
    sizes = tuple(d.sizes(k) for k in sel)
    mats = []
    for a, b in zip(sel, sel[1:]):
        m = d.step(a)
        for k in range(a + 1, b):
            m = d.step(k) * m
        mats.append(m)
    gen = None
    if mats and all(m == mats[0] for m in mats):
        gen = mats[0] if d.is_stationary else None
    return BratteliDiagram(sizes, tuple(mats), gen)


@dataclass(frozen=True)
class OrderedBratteliDiagram:
    """Ordered Bratteli diagram: level-1 sizes plus, for every vertex at
    each later level, the ordered sequence of source labels (one per
    incoming edge)."""

    unit: tuple[int, ...]
    orderings: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def depth(self) -> int:
        return len(self.orderings) + 1

    def vertex_count(self, k: int) -> int:
        return len(self.unit) if k == 1 else len(self.orderings[k - 2])

    def ordering(self, k: int, v: int) -> tuple[int, ...]:
        """Edge ordering at vertex v of level k (k >= 2), 1-based."""
        return self.orderings[k - 2][v - 1]

    @cached_property
    def underlying(self) -> BratteliDiagram:
        """Forget the orderings; multiplicities are the label counts."""
        sizes = [self.unit]
        mats = []
        for step in self.orderings:
            prev = len(sizes[-1])
            m = matrix([
                [ordering.count(w) for w in range(1, prev + 1)]
                for ordering in step
            ])
            mats.append(m)
            sizes.append(m.apply(sizes[-1]))
        gen = None
        if (
            mats
            and mats[0].is_square
            and all(m == mats[0] for m in mats)
            and all(step == self.orderings[0] for step in self.orderings)
        ):
            gen = mats[0]
        return BratteliDiagram(tuple(sizes), tuple(mats), gen)

    def sizes(self, k: int) -> tuple[int, ...]:
        return self.underlying.sizes(k)

    def validate(self) -> list[str]:
        problems = []
        if any(s <= 0 for s in self.unit):
            problems.append("level 1: nonpositive summand size")
        prev = len(self.unit)
        for k, step in enumerate(self.orderings, start=2):
            for v, ordering in enumerate(step, start=1):
                if not ordering:
                    problems.append(f"level {k}, vertex {v}: missing edge ordering")
                for w in ordering:
                    if not 1 <= w <= prev:
                        problems.append(
                            f"level {k}, vertex {v}: source label {w} out of range 1..{prev}"
                        )
            prev = len(step)
        return problems


def stationary_ordered(
    orderings: Sequence[Sequence[int]], unit: Sequence[int], depth: int
) -> OrderedBratteliDiagram:
    """Ordered diagram repeating one step's vertex orderings."""
    step = tuple(tuple(o) for o in orderings)
    if len(step) != len(unit):
        raise ValueError("stationary ordered diagram needs one ordering per vertex")
    levels = max(depth, 1)
    return OrderedBratteliDiagram(tuple(unit), tuple([step] * (levels - 1)))


def _expand_ordering(d: OrderedBratteliDiagram, lo: int, hi: int, v: int) -> tuple[int, ...]:
    """Ordering of vertex v at level hi over level-lo labels, composed by
    substituting each label with its own ordered sequence."""
    if hi == lo:
        return (v,)
    out: list[int] = []
    for w in d.ordering(hi, v):
        out.extend(_expand_ordering(d, lo, hi - 1, w))
    return tuple(out)


def _telescope_ordered(d: OrderedBratteliDiagram, sel: list[int]) -> OrderedBratteliDiagram:
    if sel[-1] > d.depth:
        raise ValueError(f"selection reaches level {sel[-1]} beyond depth {d.depth}")
    steps = []
    for a, b in zip(sel, sel[1:]):
        steps.append(tuple(
            _expand_ordering(d, a, b, v) for v in range(1, d.vertex_count(b) + 1)
        ))
    return OrderedBratteliDiagram(d.unit, tuple(steps))


# ---------------------------------------------------------------------------
# Realization as nest-algebra direct systems


@dataclass(frozen=True)
class NestStage:
    """One stage of a realized ordered diagram: a direct sum of upper
    triangular summands plus the embedding into the next stage."""

    algebra: PreorderAlgebra
    vertex_sizes: tuple[int, ...]
    embedding: MatrixUnitEmbedding | None

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.vertex_sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    def index(self, vertex: int, pos: int) -> int:
        """Global diagonal index of position `pos` in summand `vertex`."""
        return self.offsets[vertex - 1] + pos


def _stage_algebra(sizes: Sequence[int]) -> PreorderAlgebra:
    return direct_sum(*(upper_triangular(s) for s in sizes))


def realize_nest_system(d: OrderedBratteliDiagram) -> list[NestStage]:
    """Each vertex becomes an upper triangular summand; each edge
    ordering lays the source summands consecutively along the target
    summand's diagonal, which fixes the superdiagonal unit images."""
    problems = d.validate()
    if problems:
        raise ValueError("invalid ordered diagram: " + "; ".join(problems))
    all_sizes = [d.sizes(k) for k in range(1, d.depth + 1)]
    stages: list[NestStage] = []
    next_algebras = [_stage_algebra(s) for s in all_sizes]
    for k in range(d.depth, 0, -1):
        sizes = all_sizes[k - 1]
        algebra = next_algebras[k - 1]
        if k == d.depth:
            stages.append(NestStage(algebra, sizes, None))
        else:
            tgt_sizes = all_sizes[k]
            tgt_algebra = next_algebras[k]
            tgt_offsets = NestStage(tgt_algebra, tgt_sizes, None).offsets
            src_offsets = NestStage(algebra, sizes, None).offsets
            copies: dict[int, list[int]] = {v: [] for v in range(1, len(sizes) + 1)}
            for w in range(1, len(tgt_sizes) + 1):
                chunk = tgt_offsets[w - 1]
                for label in d.ordering(k + 1, w):
                    copies[label].append(chunk)
                    chunk += sizes[label - 1]
            images = []
            for v in range(1, len(sizes) + 1):
                for t in range(1, sizes[v - 1] + 1):
                    images.append(tuple(sorted(base + t for base in copies[v])))
            pairings = {}
            for v in range(1, len(sizes) + 1):
                for t in range(1, sizes[v - 1] + 1):
                    for u in range(t + 1, sizes[v - 1] + 1):
                        i = src_offsets[v - 1] + t
                        j = src_offsets[v - 1] + u
                        pairings[(i, j)] = [
                            (base + t, base + u) for base in copies[v]
                        ]
            emb = embedding(algebra, tgt_algebra, images, pairings)
            stages.append(NestStage(algebra, sizes, emb))
    stages.reverse()
    return stages


def composed_realization(stages: Sequence[NestStage], lo: int, hi: int) -> MatrixUnitEmbedding:
    """Composite embedding from stage lo to stage hi (1-based)."""
    if not 1 <= lo < hi <= len(stages):
        raise ValueError("bad stage range")
    e = stages[lo - 1].embedding
    for k in range(lo + 1, hi):
        e = compose_embeddings(stages[k - 1].embedding, e)
    return e


def twisted_refinement_stage(n: int) -> MatrixUnitEmbedding:
    """T_{2^n} -> T_{2^{n+1}}, equal to the refinement embedding except
    on the last column of matrix units, whose two halves are embedded
    with reversed orientation.  Fails the strong regularity check while
    its diagonal restriction equals the refinement's."""
    if n < 1:
        raise ValueError("n must be at least 1")
    size = 2 ** n
    src, tgt = upper_triangular(size), upper_triangular(2 * size)
    images = [(2 * i - 1, 2 * i) for i in range(1, size + 1)]
    pairings = {}
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            if j < size:
                pairings[(i, j)] = [(2 * i - 1, 2 * j - 1), (2 * i, 2 * j)]
            else:
                pairings[(i, j)] = [(2 * i, 2 * size - 1), (2 * i - 1, 2 * size)]
    return embedding(src, tgt, images, pairings)


# Shared ordered systems used across the package and its test corpus.

def fibonacci_theta(depth: int) -> OrderedBratteliDiagram:
    """Two-summand stationary system x + y -> y + (x + y)."""
    return stationary_ordered([(2,), (1, 2)], (1, 1), depth)


def fibonacci_psi(depth: int) -> OrderedBratteliDiagram:
    """Two-summand stationary system x + y -> y + (y + x)."""
    return stationary_ordered([(2,), (2, 1)], (1, 1), depth)


def single_vertex_diagram(multiplicity: int, depth: int) -> OrderedBratteliDiagram:
    """Single-vertex ordered diagram: the tower T_1 -> T_m -> T_{m^2} ...

    Under the consecutive-copy realization convention this is the
    standard-embedding tower (each stage repeated along the diagonal).
    """
    return stationary_ordered([tuple([1] * multiplicity)], (1,), depth)
