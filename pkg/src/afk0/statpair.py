"""Stationary pairs D inside B and their intermediate algebras.

A stationary pair is an n x n nonnegative matrix X with a symmetric
partition (k_1, ..., k_r) whose partial column sums are constant; the
sums form the r x r quotient matrix Y, and summing coordinates along
the partition gives the homomorphism S between the two stationary
dimension groups (S X = Y S exactly).

Intermediate algebras between D and B are generated by preorders on
the vertices of one grouped partition block: the stage algebra keeps
D's summands and adjoins the matrix units whose grouped-vertex
positions lie in the preorder.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import algord
from .algord import LimitOrderVerdict, LimitSystem, stationary_system
from .diagram import BratteliDiagram, stationary
from .dimgroup import InducedMap, LimitElement, induced_map
from .exact import IntMatrix, det, matrix
from .fdcsl import PreorderAlgebra, preorder

INTERMEDIATE_SIZE_GUARD = 5


@dataclass(frozen=True)
class StationaryPair:
    x: IntMatrix
    partition: tuple[int, ...]
    unit: tuple[int, ...]
    y: IntMatrix

    @cached_property
    def summation(self) -> IntMatrix:
        """The block-summation matrix S with S X = Y S."""
        rows = []
        start = 0
        for k in self.partition:
            rows.append([1 if start <= j < start + k else 0 for j in range(self.x.cols)])
            start += k
        return matrix(rows)

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Vertex indices (1-based) of each partition block."""
        out = []
        start = 1
        for k in self.partition:
            out.append(tuple(range(start, start + k)))
            start += k
        return tuple(out)

    def d_system(self, depth: int = 1) -> BratteliDiagram:
        return stationary(self.x, self.unit, depth)

    def b_system(self, depth: int = 1) -> BratteliDiagram:
        return stationary(self.y, self.summation.apply(self.unit), depth)


def derive_pair(x: IntMatrix, partition: Sequence[int], unit: Sequence[int]) -> StationaryPair:
    """Validate the partial-column-sum condition and build the pair."""
    if not x.is_square:
        raise ValueError("stationary pair matrix must be square")
    if not x.is_nonnegative:
        raise ValueError("stationary pair matrix must be nonnegative")
    n = x.rows
    partition = tuple(int(k) for k in partition)
    if sum(partition) != n or any(k <= 0 for k in partition):
        raise ValueError(f"partition {partition} does not sum to {n}")
    if len(unit) != n:
        raise ValueError(f"unit length {len(unit)} != {n}")
    blocks = []
    start = 0
    for k in partition:
        blocks.append(range(start, start + k))
        start += k
    rows = []
    for i, bi in enumerate(blocks):
        row = []
        for j, bj in enumerate(blocks):
            cols = list(bj)
            sums = [sum(x[(a, c)] for a in bi) for c in cols]
            for c, s in zip(cols[1:], sums[1:]):
                if s != sums[0]:
                    raise ValueError(
                        f"partial column sums differ within block pair ({i + 1}, {j + 1}): "
                        f"column {cols[0] + 1} gives {sums[0]}, column {c + 1} gives {s}"
                    )
            row.append(sums[0])
        rows.append(row)
    return StationaryPair(x, partition, tuple(int(u) for u in unit), matrix(rows))


def s_infinity(p: StationaryPair, depth: int = 1) -> InducedMap:
    """The level-wise summation map between the two stationary systems."""
    m = induced_map(p.d_system(depth), p.b_system(depth), [p.summation], constant=True)
    return m


@dataclass(frozen=True)
class UnimodularityReport:
    det_x: int
    det_y: int
    divides: bool
    x_unimodular: bool
    y_unimodular: bool


def unimodularity_check(p: StationaryPair) -> UnimodularityReport:
    dx, dy = det(p.x), det(p.y)
    divides = (dx % dy == 0) if dy != 0 else dx == 0
    return UnimodularityReport(dx, dy, divides, abs(dx) == 1, abs(dy) == 1)


# ---------------------------------------------------------------------------
# Intermediate algebras


@dataclass(frozen=True)
class IntermediateSpec:
    """A preorder on the grouped vertices of one partition block,
    generating a candidate intermediate system D <= E <= B."""

    pair: StationaryPair
    grouped_block: int  # 1-based partition block index
    relation: PreorderAlgebra  # on the block's vertices, locally 1-based


def enumerate_preorders(m: int) -> list[PreorderAlgebra]:
    """All reflexive transitive relations on {1..m}, by pruned search
    over off-diagonal pairs in a fixed order."""
    pairs = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if i != j]
    index = {p: k for k, p in enumerate(pairs)}
    out: list[PreorderAlgebra] = []
    chosen: set[tuple[int, int]] = set()

    def addable(i: int, j: int, k: int) -> bool:
        # compositions with chosen pairs must not force a pair that was
        # already passed over
        for a, b in chosen:
            forced = None
            if b == i:
                forced = (a, j)
            elif a == j:
                forced = (i, b)
            if forced and forced != (i, j) and forced not in chosen and index[forced] < k:
                return False
        return True

    def forced_in(i: int, j: int) -> bool:
        return any(
            (i, b) in chosen and (b, j) in chosen
            for b in range(1, m + 1)
            if b not in (i, j)
        )

    def rec(k: int) -> None:
        if k == len(pairs):
            a = preorder(m, chosen)
            if a.violation is None:
                out.append(a)
            return
        i, j = pairs[k]
        if not forced_in(i, j):
            rec(k + 1)
        if addable(i, j, k):
            chosen.add((i, j))
            rec(k + 1)
            chosen.discard((i, j))

    rec(0)
    return out


def enumerate_intermediates(p: StationaryPair, grouped_block: int) -> list[IntermediateSpec]:
    """All candidate intermediates from preorders on one grouped block."""
    if not 1 <= grouped_block <= len(p.partition):
        raise ValueError(f"no partition block {grouped_block}")
    m = p.partition[grouped_block - 1]
    if m > INTERMEDIATE_SIZE_GUARD:
        raise ValueError(f"grouped block size {m} over the guard {INTERMEDIATE_SIZE_GUARD}")
    return [
        IntermediateSpec(p, grouped_block, rel)
        for rel in enumerate_preorders(m)
    ]


def intermediate_system(spec: IntermediateSpec) -> LimitSystem:
    """The stage system of an intermediate: slots are the D-vertices,
    the grouped block carries the preorder, everything else is diagonal."""
    p = spec.pair
    block = p.blocks[spec.grouped_block - 1]
    rel_pairs = [
        (block[a - 1], block[b - 1])
        for a, b in spec.relation.rel
        if a != b
    ]
    shape = preorder(p.x.rows, rel_pairs)
    return stationary_system(shape, p.x, p.unit)


def stage_relation(spec: IntermediateSpec) -> PreorderAlgebra:
    """Slot-level relation of every stage of the generated system."""
    return intermediate_system(spec).shape(1)


def collapse_detect(specs: Sequence[IntermediateSpec], depth: int) -> list[list[int]]:
    """Group spec indices whose generated stage algebras coincide for all
    stages up to the depth.

    For these stationary constructions the stage algebra is determined by
    the slot relation together with the stage dimensions, and both repeat
    stationarily, so classes coincide exactly when the slot relations do;
    equality beyond the compared depth is not claimed.
    """
    keys: dict[tuple, list[int]] = {}
    for idx, spec in enumerate(specs):
        sys = intermediate_system(spec)
        key = tuple(
            (sys.shape(k).rel, sys.sizes(k)) for k in range(1, depth + 1)
        )
        keys.setdefault(hash(key) and key, []).append(idx)
    return [group for group in keys.values()]


def intermediate_order_oracle(
    spec: IntermediateSpec,
    p: LimitElement,
    q: LimitElement,
    depth: int = algord.DEFAULT_DEPTH,
) -> LimitOrderVerdict:
    """The algebraic-order oracle of the generated intermediate system."""
    return algord.limit_order_holds(intermediate_system(spec), p, q, depth)
