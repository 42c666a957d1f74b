"""The algebraic order on scales of limit algebras.

A limit system presents an algebra as a chain of preorder-algebra
stages: each stage is a slot-level relation with slot capacities, and
consecutive stages are joined by slot-multiplicity matrices (with
explicit matrix-unit embeddings available for realized nest systems).
The order oracle pushes a pair of classes forward and runs the
finite-stage matching at every stage up to a depth; refutations come
from the enveloping system's K_0.

Direction convention: limit_order_holds(sys, p, q) decides [p] S [q],
i.e. some partial isometry v in the limit algebra has v*v = q and
vv* = p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from . import dimgroup
from .diagram import (
    BratteliDiagram,
    NestStage,
    OrderedBratteliDiagram,
    composed_realization,
    realize_nest_system,
)
from .dimgroup import LimitElement, element
from .exact import IntMatrix, matrix
from .fdcsl import (
    BudgetExceeded,
    MatrixUnitEmbedding,
    PreorderAlgebra,
    _Budget,
    are_conjugate,
    check_star_extendible,
    compose,
    direct_sum,
    enumerate_star_extendible,
    flow_matching,
    full_matrix,
    nest_order_formula,
    preorder,
)

DEFAULT_DEPTH = 12


@dataclass(frozen=True)
class Stage:
    """One finite stage: slot-level relation plus slot capacities."""

    algebra: PreorderAlgebra
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class LimitSystem:
    """Presented direct system of preorder-algebra stages.

    For stationary presentations `generator` repeats forever and only
    the first stage shape is stored; realized nest systems store every
    stage with its matrix-unit embedding.
    """

    shapes: tuple[PreorderAlgebra, ...]
    unit: tuple[int, ...]
    steps: tuple[IntMatrix, ...]
    generator: IntMatrix | None = None
    embeddings: tuple[MatrixUnitEmbedding, ...] | None = None
    source: OrderedBratteliDiagram | None = None

    @property
    def is_stationary(self) -> bool:
        return self.generator is not None

    @property
    def max_stage(self) -> int | None:
        return None if self.is_stationary else len(self.shapes)

    def shape(self, k: int) -> PreorderAlgebra:
        if self.is_stationary:
            return self.shapes[0]
        return self.shapes[k - 1]

    def step(self, k: int) -> IntMatrix:
        if self.is_stationary:
            return self.generator
        return self.steps[k - 1]

    def sizes(self, k: int) -> tuple[int, ...]:
        return self.slot_diagram.sizes(k)

    @cached_property
    def slot_diagram(self) -> BratteliDiagram:
        """The slot-level K_0 system (equals K_0 of the diagonal)."""
        if self.is_stationary:
            from .diagram import stationary

            return stationary(self.generator, self.unit, 1)
        sizes = [tuple(self.unit)]
        for m in self.steps:
            sizes.append(m.apply(sizes[-1]))
        return BratteliDiagram(tuple(sizes), self.steps)

    @cached_property
    def envelope(self) -> tuple[BratteliDiagram, tuple[IntMatrix, ...]]:
        """Component-level enveloping system plus the per-stage
        summation maps (i_* at each stage)."""
        projections = []
        env_steps = []
        count = len(self.shapes) if not self.is_stationary else 1
        comps = [self.shape(k + 1).components for k in range(count)]
        for k in range(count):
            shape = self.shape(k + 1)
            proj = matrix([
                [1 if (s + 1) in comp else 0 for s in range(shape.n)]
                for comp in comps[k]
            ])
            projections.append(proj)
        n_steps = 1 if self.is_stationary else len(self.steps)
        for k in range(n_steps):
            step = self.step(k + 1)
            src_comps = comps[0] if self.is_stationary else comps[k]
            tgt_comps = comps[0] if self.is_stationary else comps[k + 1]
            rows = []
            for tc in tgt_comps:
                row = []
                for sc in src_comps:
                    vals = {
                        sum(step[(b - 1, a - 1)] for b in tc)
                        for a in sc
                    }
                    if len(vals) != 1:
                        raise ValueError(
                            "envelope undefined: component column sums are not constant"
                        )
                    row.append(vals.pop())
                rows.append(row)
            env_steps.append(matrix(rows))
        env_unit = projections[0].apply(self.unit)
        if self.is_stationary:
            from .diagram import stationary

            return stationary(env_steps[0], env_unit, 1), tuple(projections)
        env_sizes = [tuple(env_unit)]
        for m in env_steps:
            env_sizes.append(m.apply(env_sizes[-1]))
        return (
            BratteliDiagram(tuple(env_sizes), tuple(env_steps)),
            tuple(projections),
        )

    def project_to_envelope(self, e: LimitElement) -> LimitElement:
        _, projections = self.envelope
        proj = projections[0] if self.is_stationary else projections[e.stage - 1]
        return LimitElement(e.stage, proj.apply(e.vector))

    def expanded_stage(self, k: int, limit: int = 64) -> tuple[PreorderAlgebra, tuple[int, ...]] | None:
        """Index-level algebra at stage k (slots blown up to their full
        matrix blocks), with the slot of each index; None above `limit`."""
        shape = self.shape(k)
        sizes = self.sizes(k)
        total = sum(sizes)
        if total > limit:
            return None
        offsets = [0]
        for s in sizes:
            offsets.append(offsets[-1] + s)
        slot_of = tuple(
            s + 1 for s in range(shape.n) for _ in range(sizes[s])
        )
        rel = set()
        for i in range(1, total + 1):
            for j in range(1, total + 1):
                if (slot_of[i - 1], slot_of[j - 1]) in shape.rel:
                    rel.add((i, j))
        return PreorderAlgebra(total, frozenset(rel)), slot_of


def nest_system(d: OrderedBratteliDiagram) -> LimitSystem:
    """Index-level system realized from an ordered Bratteli diagram."""
    stages = realize_nest_system(d)
    shapes = tuple(s.algebra for s in stages)
    steps = []
    for s in stages[:-1]:
        e = s.embedding
        rows = [[0] * e.source.n for _ in range(e.target.n)]
        for i in range(1, e.source.n + 1):
            for b in e.image_of(i):
                rows[b - 1][i - 1] = 1
        steps.append(matrix(rows))
    return LimitSystem(
        shapes=shapes,
        unit=tuple([1] * shapes[0].n),
        steps=tuple(steps),
        embeddings=tuple(s.embedding for s in stages[:-1]),
        source=d,
    )


def stationary_system(shape: PreorderAlgebra, generator: IntMatrix, unit: Sequence[int]) -> LimitSystem:
    """Stationary slot-level system with a fixed stage shape."""
    if generator.rows != shape.n or generator.cols != shape.n:
        raise ValueError("generator size does not match the stage shape")
    if len(unit) != shape.n:
        raise ValueError("unit length does not match the stage shape")
    return LimitSystem(
        shapes=(shape,),
        unit=tuple(unit),
        steps=(),
        generator=generator,
    )


def slot_system(shapes: Sequence[PreorderAlgebra], steps: Sequence[IntMatrix], unit: Sequence[int]) -> LimitSystem:
    """Non-stationary slot-level system with explicit stage shapes."""
    shapes = tuple(shapes)
    steps = tuple(steps)
    if len(steps) != len(shapes) - 1:
        raise ValueError("need one step matrix between consecutive stages")
    return LimitSystem(shapes=shapes, unit=tuple(unit), steps=steps)


# ---------------------------------------------------------------------------
# The limit order oracle


@dataclass(frozen=True)
class LimitOrderVerdict:
    status: str  # "holds" | "refuted" | "inconclusive"
    stage: int | None = None
    moves: tuple[tuple[int, int, int], ...] | None = None  # slot-level matching
    reason: str | None = None
    depth_used: int | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def _push_vec(sys: LimitSystem, e: LimitElement, to_stage: int) -> tuple[int, ...]:
    v = e.vector
    for k in range(e.stage, to_stage):
        v = sys.step(k).apply(v)
    return v


def limit_order_holds(
    sys: LimitSystem,
    p: LimitElement,
    q: LimitElement,
    depth: int = DEFAULT_DEPTH,
) -> LimitOrderVerdict:
    """Decide [p] S [q] in the limit algebra (see module docstring).

    Holds at any stage pushes forward, so a single-stage matching is a
    certificate.  Refutation requires a stage-independent obstruction:
    distinct images in the enveloping system's K_0.  Otherwise the
    verdict is inconclusive at the given depth.
    """
    start = max(p.stage, q.stage)
    cap = sys.max_stage
    horizon = start + depth if cap is None else min(cap, start + depth)
    pv = _push_vec(sys, p, start)
    qv = _push_vec(sys, q, start)
    for k in range(start, horizon + 1):
        # classes are projection-represented at a stage only once their
        # pushed coordinates are entrywise nonnegative
        if all(x >= 0 for x in pv) and all(x >= 0 for x in qv):
            shape = sys.shape(k)
            allowed = frozenset((i - 1, j - 1) for i, j in shape.rel)
            moves = flow_matching(allowed, pv, qv)
            if moves is not None:
                return LimitOrderVerdict("holds", stage=k, moves=moves)
        if k < horizon:
            step = sys.step(k)
            pv = step.apply(pv)
            qv = step.apply(qv)
    env, _ = sys.envelope
    verdict = dimgroup.equal(env, sys.project_to_envelope(p), sys.project_to_envelope(q), depth)
    if verdict == "distinct":
        return LimitOrderVerdict(
            "refuted", reason="distinct classes in the enveloping K0", depth_used=depth
        )
    return LimitOrderVerdict("inconclusive", depth_used=depth)


def element_in_scale(sys: LimitSystem, e: LimitElement, depth: int = DEFAULT_DEPTH) -> str:
    """Scale membership via the slot-level K_0 system."""
    return dimgroup.in_scale(sys.slot_diagram, e, depth).status


# ---------------------------------------------------------------------------
# Closed-form reference oracles


def closed_form_nest(sizes: Sequence[int], a: Sequence[int], b: Sequence[int]) -> bool:
    """Block upper triangular order: equal sums plus tail-sum inequalities."""
    return nest_order_formula(sizes, a, b)


def closed_form_t2_tensor(p: LimitElement, q: LimitElement) -> bool:
    """Order for the T_2-tensor tower (generator [[3,1],[1,3]]): equal
    total trace and monotone second coordinate, computed from the exact
    normalised coordinates a = (v1+v2)/2*4^(k-1), b = (v2-v1)/2^k."""
    def coords(e: LimitElement) -> tuple[Fraction, Fraction]:
        v1, v2 = e.vector
        k = e.stage
        return (
            Fraction(v1 + v2, 2 * 4 ** (k - 1)),
            Fraction(v2 - v1, 2 ** k),
        )

    (ap, bp), (aq, bq) = coords(p), coords(q)
    return ap == aq and bp <= bq


def closed_form_golden(p: Sequence[int], q: Sequence[int]) -> bool:
    """Order for the golden triple system: third coordinates equal,
    first-two sums equal, middle coordinate monotone."""
    (l, m, n), (qq, r, s) = tuple(p), tuple(q)
    return n == s and l + m == qq + r and m <= r


def _sqrt5_sign(p: int, c: int) -> int:
    """Exact sign of p*sqrt(5) + c using integer arithmetic only."""
    if p == 0:
        return (c > 0) - (c < 0)
    if p > 0:
        if c >= 0:
            return 1
        return (5 * p * p > c * c) - (5 * p * p < c * c)
    if c <= 0:
        return -1
    return (c * c > 5 * p * p) - (c * c < 5 * p * p)


def golden_cone_member(l: int, m: int, n: int) -> bool:
    """Closed-form positivity for the golden triple system, derived from
    the generator's eigenstructure: zero, or conserved coordinate
    nonnegative and the enveloping Fibonacci class strictly positive
    ((l+m)*alpha + n > 0 with alpha the golden mean)."""
    if l == 0 and m == 0 and n == 0:
        return True
    if l < 0:
        return False
    big_m, big_n = l + m, n
    # sign of big_m * alpha + big_n = (big_m + 2*big_n + big_m*sqrt5)/2
    return _sqrt5_sign(big_m, big_m + 2 * big_n) > 0


# ---------------------------------------------------------------------------
# Fibers of the envelope map


@dataclass(frozen=True)
class FiberReport:
    ok: bool
    containment_violations: tuple[tuple[LimitElement, LimitElement], ...]
    fibers: tuple[tuple[int, ...], ...]  # index groups of the sample
    connected: tuple[bool, ...]


def fiber_equivalence_check(
    sys: LimitSystem,
    sample: Sequence[LimitElement],
    depth: int = DEFAULT_DEPTH,
) -> FiberReport:
    """Check that the order-generated equivalence sits inside the fibers
    of the envelope map, and that each sampled fiber is connected by
    chains of decided order relations."""
    sample = list(sample)
    n = len(sample)
    env, _ = sys.envelope
    related = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                related[i][j] = limit_order_holds(sys, sample[i], sample[j], depth).holds
    violations = []
    same_fiber = [[False] * n for _ in range(n)]
    for i in range(n):
        same_fiber[i][i] = True
        for j in range(i + 1, n):
            eq = dimgroup.equal(
                env, sys.project_to_envelope(sample[i]), sys.project_to_envelope(sample[j]), depth
            ) == "equal"
            same_fiber[i][j] = same_fiber[j][i] = eq
            if (related[i][j] or related[j][i]) and not eq:
                violations.append((sample[i], sample[j]))
    # fibers and connectivity under the symmetrised decided relation
    seen: set[int] = set()
    fibers: list[tuple[int, ...]] = []
    connected: list[bool] = []
    for i in range(n):
        if i in seen:
            continue
        fiber = tuple(j for j in range(n) if same_fiber[i][j])
        seen.update(fiber)
        fibers.append(fiber)
        comp = {fiber[0]}
        frontier = [fiber[0]]
        while frontier:
            x = frontier.pop()
            for y in fiber:
                if y not in comp and (related[x][y] or related[y][x]):
                    comp.add(y)
                    frontier.append(y)
        connected.append(comp == set(fiber))
    return FiberReport(not violations and all(connected), tuple(violations), tuple(fibers), tuple(connected))


# ---------------------------------------------------------------------------
# The ordered-diagram special point


@dataclass(frozen=True)
class SpecialPointVerdict:
    status: str  # "exists" | "none" | "inconclusive"
    witness: tuple[int, ...] | None = None  # diagonal index per stage
    failures: tuple[str, ...] = ()


def _stage_layouts(d: OrderedBratteliDiagram, depth: int) -> list[NestStage]:
    if d.depth < depth:
        raise ValueError(f"diagram depth {d.depth} below requested depth {depth}")
    return realize_nest_system(d)[:depth]


def special_point_exists(
    d: OrderedBratteliDiagram,
    depth: int = DEFAULT_DEPTH,
    candidates: str = "rightmost",
) -> SpecialPointVerdict:
    """Search for a maximal point of the diagonal spectrum.

    The witness is the nested sequence of right-most minimal diagonal
    projections of the last summand at every stage ("rightmost", the
    default); a candidate must be a genuine germ (each position a child
    of the previous one) and must pass the maximality test against every
    other germ: no stage admits orthogonal diagonal projections moving
    the other germ's support onto the candidate's.  With
    candidates="extremal" any germ through last-of-summand positions
    qualifies as a candidate; "all" enumerates every germ.
    """
    stages = _stage_layouts(d, depth)
    children: list[dict[int, tuple[int, ...]]] = []
    for s in stages[:-1]:
        e = s.embedding
        children.append({i: e.image_of(i) for i in range(1, e.source.n + 1)})

    def is_last_of_summand(stage: NestStage, idx: int) -> bool:
        offs = stage.offsets
        return any(idx == offs[v] + stage.vertex_sizes[v] for v in range(len(stage.vertex_sizes)))

    def global_last(stage: NestStage) -> int:
        return sum(stage.vertex_sizes)

    germs: list[tuple[int, ...]] = []
    if candidates == "rightmost":
        path = [global_last(stages[0])]
        ok = True
        for k in range(len(stages) - 1):
            nxt = global_last(stages[k + 1])
            if nxt not in children[k][path[-1]]:
                ok = False
                break
            path.append(nxt)
        if ok:
            germs.append(tuple(path))
    else:
        def extend(path: list[int]) -> Iterator[tuple[int, ...]]:
            k = len(path) - 1
            if k == len(stages) - 1:
                yield tuple(path)
                return
            for c in children[k][path[-1]]:
                if candidates == "all" or is_last_of_summand(stages[k + 1], c):
                    path.append(c)
                    yield from extend(path)
                    path.pop()

        starts = (
            range(1, stages[0].algebra.n + 1)
            if candidates == "all"
            else [i for i in range(1, stages[0].algebra.n + 1) if is_last_of_summand(stages[0], i)]
        )
        for s0 in starts:
            germs.extend(extend([s0]))

    failures = []
    for germ in germs:
        reason = _maximality_failure(stages, germ)
        if reason is None:
            return SpecialPointVerdict("exists", witness=germ)
        failures.append(reason)
    if candidates == "rightmost" and not germs:
        failures.append("the right-most projections of the right summands are not nested")
    return SpecialPointVerdict("none", failures=tuple(failures))


def _maximality_failure(
    stages: Sequence[NestStage],
    germ: tuple[int, ...],
) -> str | None:
    """None if no other germ can move a disjoint projection onto the
    candidate's support; else a witness description.

    A witness needs strict in-flow into the candidate's position: a
    matching onto a projection containing x_k must cover x_k from some
    distinct index, so it suffices to scan relation pairs (x_k, s)."""
    for k, stage in enumerate(stages):
        x = germ[k]
        rel = stage.algebra.rel
        if any(s != x and (x, s) in rel for s in range(1, stage.algebra.n + 1)):
            s = next(s for s in range(1, stage.algebra.n + 1) if s != x and (x, s) in rel)
            return f"stage {k + 1}: unit at index {s} moves onto the candidate index {x}"
    return None


# ---------------------------------------------------------------------------
# Star realisation of finite relations


@dataclass(frozen=True)
class RelationSpec:
    """Finite reflexive transitive relation with a designated projection
    class (a limit element) per node."""

    relation: PreorderAlgebra
    classes: tuple[LimitElement, ...]


@dataclass(frozen=True)
class RealizationResult:
    status: str  # "found" | "exhausted" | "budget"
    stage: int | None = None
    embedding: MatrixUnitEmbedding | None = None
    assignment: tuple[tuple[int, ...], ...] | None = None


def realize_relation(
    sys: LimitSystem,
    spec: RelationSpec,
    stage_budget: int = 4,
    node_budget: int = 10**6,
    expand_limit: int = 64,
) -> RealizationResult:
    """Find orthogonal projections with the designated classes and
    normalising partial isometries realizing the relation so that the
    induced map of the relation's algebra is star-extendible.

    Within a slot all minimal diagonal projections are equivalent, so
    representatives are assigned canonically (consecutive indices per
    slot); any other choice is conjugate by a block-diagonal unitary.
    """
    if spec.relation.violation is not None:
        raise ValueError(f"relation is not a preorder: {spec.relation.violation}")
    budget = _Budget(node_budget)
    cap = sys.max_stage
    last = stage_budget if cap is None else min(cap, stage_budget)
    start = max(e.stage for e in spec.classes)
    hit_budget = False
    for k in range(start, last + 1):
        expanded = sys.expanded_stage(k, expand_limit)
        if expanded is None:
            continue
        stage_algebra, slot_of = expanded
        shape = sys.shape(k)
        vectors = [_push_vec(sys, e, k) for e in spec.classes]
        caps = sys.sizes(k)
        if any(sum(v[s] for v in vectors) > caps[s] for s in range(shape.n)):
            continue
        # canonical representatives: consecutive indices per slot
        next_free = [0] * shape.n
        slot_indices = [
            [i for i in range(1, stage_algebra.n + 1) if slot_of[i - 1] == s + 1]
            for s in range(shape.n)
        ]
        images = []
        feasible = True
        for v in vectors:
            if any(x < 0 for x in v):
                feasible = False
                break
            img = []
            for s in range(shape.n):
                take = v[s]
                img.extend(slot_indices[s][next_free[s]: next_free[s] + take])
                next_free[s] += take
            if not img:
                feasible = False
                break
            images.append(tuple(sorted(img)))
        if not feasible:
            continue
        try:
            for e in enumerate_star_extendible(spec.relation, stage_algebra, images, budget):
                return RealizationResult("found", stage=k, embedding=e, assignment=tuple(images))
        except BudgetExceeded:
            hit_budget = True
            break
    return RealizationResult("budget" if hit_budget else "exhausted")


# ---------------------------------------------------------------------------
# Bounded isomorphism search (Elliott-style intertwining)


@dataclass(frozen=True)
class IsoLink:
    side: str  # "A->B" | "B->A"
    source_stage: int
    target_stage: int
    embedding: MatrixUnitEmbedding


@dataclass(frozen=True)
class IsoCertificate:
    links: tuple[IsoLink, ...]

    def validate(self, sys_a: "LimitSystem", sys_b: "LimitSystem") -> bool:
        """Every triangle commutes up to a block permutation unitary."""
        stages_a = realize_nest_system(sys_a.source)
        stages_b = realize_nest_system(sys_b.source)
        for prev, nxt in zip(self.links, self.links[1:]):
            if prev.target_stage != nxt.source_stage or prev.side == nxt.side:
                return False
            comp = compose(nxt.embedding, prev.embedding)
            stages = stages_a if prev.side == "A->B" else stages_b
            if prev.source_stage == nxt.target_stage:
                given = _identity_embedding(stages[prev.source_stage - 1].algebra)
            else:
                given = composed_realization(stages, prev.source_stage, nxt.target_stage)
            if comp.images != given.images:
                return False
            if not are_conjugate(comp, given):
                return False
        return True


def _identity_embedding(a: PreorderAlgebra) -> MatrixUnitEmbedding:
    from .fdcsl import embedding as mk

    return mk(
        a, a,
        [(i,) for i in range(1, a.n + 1)],
        {(i, j): [(i, j)] for i, j in a.rel if i != j},
    )


@dataclass(frozen=True)
class IsoResult:
    status: str  # "found" | "exhausted" | "budget"
    certificate: IsoCertificate | None = None
    nodes: int = 0


def _unital_assignments(
    src: PreorderAlgebra,
    tgt: PreorderAlgebra,
    pools: Sequence[Sequence[int]],
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Unital diagonal assignments: a partition of the target's indices
    with images[i] drawn from pools[i], nonempty, and of equal size
    across each connected component of the source."""
    n = src.n
    comp_of = {}
    for ci, comp in enumerate(src.components):
        for x in comp:
            comp_of[x] = ci

    pool_sets = [tuple(sorted(p)) for p in pools]
    universe = sorted({x for p in pool_sets for x in p})
    if len(universe) != tgt.n or any(len(p) == 0 for p in pool_sets):
        return

    comp_sizes: dict[int, int] = {}

    def rec(i: int, used: set[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == n:
            if len(used) == tgt.n:
                yield tuple(acc)
            return
        avail = [x for x in pool_sets[i] if x not in used]
        ci = comp_of[i + 1]
        sizes = [comp_sizes[ci]] if ci in comp_sizes else range(1, len(avail) + 1)
        for size in sizes:
            if size > len(avail):
                continue
            for combo in itertools.combinations(avail, size):
                fixed = ci not in comp_sizes
                if fixed:
                    comp_sizes[ci] = size
                acc.append(tuple(combo))
                used.update(combo)
                yield from rec(i + 1, used)
                used.difference_update(combo)
                acc.pop()
                if fixed:
                    del comp_sizes[ci]

    acc: list[tuple[int, ...]] = []
    yield from rec(0, set())


def _stage_embeddings(
    src: PreorderAlgebra,
    tgt: PreorderAlgebra,
    pools: Sequence[Sequence[int]],
    budget: _Budget,
) -> Iterator[MatrixUnitEmbedding]:
    for images in _unital_assignments(src, tgt, pools):
        yield from enumerate_star_extendible(src, tgt, images, budget)


def iso_search(
    sys_a: LimitSystem,
    sys_b: LimitSystem,
    depth: int = 4,
    links: int = 4,
    node_budget: int = 10**7,
) -> IsoResult:
    """Bounded Elliott-style intertwining search between two realized
    nest systems.

    Builds alternating unital star-extendible embeddings
    A_1 -> B_{n_1} -> A_{m_1} -> ... with every triangle commuting with
    the given system embeddings up to a diagonal (block permutation)
    unitary.  Stage indices are bounded by `depth` and the chain carries
    `links` maps.  "exhausted" certifies that no such chain exists in
    the bounded search space; "budget" means the node limit was hit.
    """
    if sys_a.source is None or sys_b.source is None:
        raise ValueError("iso_search needs realized nest systems (ordered diagrams)")
    stages_a = realize_nest_system(sys_a.source)[:depth]
    stages_b = realize_nest_system(sys_b.source)[:depth]
    budget = _Budget(node_budget)

    def given(stages: list[NestStage], a: int, b: int) -> MatrixUnitEmbedding:
        if a == b:
            return _identity_embedding(stages[a - 1].algebra)
        return composed_realization(stages, a, b)

    def extend(chain: list[IsoLink]) -> IsoCertificate | None:
        if len(chain) == links:
            return IsoCertificate(tuple(chain))
        prev = chain[-1]
        from_b = prev.side == "A->B"
        own_stages = stages_b if from_b else stages_a
        other_stages = stages_a if from_b else stages_b
        src_stage = prev.target_stage
        src_alg = own_stages[src_stage - 1].algebra
        # the triangle fixes the composite with the previous link exactly:
        # choose the next stage and constrain the diagonal by the given map.
        # stages advance strictly on each side, as in a genuine intertwining
        prev_src_stages = stages_a if prev.side == "A->B" else stages_b
        for tgt_stage in range(prev.source_stage + 1, len(other_stages) + 1):
            tgt_alg = other_stages[tgt_stage - 1].algebra
            iota = given(prev_src_stages, prev.source_stage, tgt_stage)
            # pools: index x of src_alg lies in prev.embedding.image_of(a)
            # for a unique a; its image must sit inside iota.image_of(a)
            owner = {}
            for a in range(1, prev.embedding.source.n + 1):
                for x in prev.embedding.image_of(a):
                    owner[x] = a
            if len(owner) != src_alg.n:
                continue  # previous link not unital; cannot close a triangle
            pools = [iota.image_of(owner[x]) for x in range(1, src_alg.n + 1)]
            try:
                for e in _stage_embeddings(src_alg, tgt_alg, pools, budget):
                    comp = compose(e, prev.embedding)
                    if comp.images != iota.images:
                        continue
                    if not are_conjugate(comp, iota, budget):
                        continue
                    chain.append(IsoLink(
                        "B->A" if from_b else "A->B", src_stage, tgt_stage, e,
                    ))
                    result = extend(chain)
                    if result is not None:
                        return result
                    chain.pop()
            except BudgetExceeded:
                raise
        return None

    try:
        for n1 in range(1, len(stages_b) + 1):
            tgt_alg = stages_b[n1 - 1].algebra
            src_alg = stages_a[0].algebra
            pools = [tuple(range(1, tgt_alg.n + 1))] * src_alg.n
            for phi1 in _stage_embeddings(src_alg, tgt_alg, pools, budget):
                chain = [IsoLink("A->B", 1, n1, phi1)]
                result = extend(chain)
                if result is not None:
                    return IsoResult("found", result, budget.nodes)
    except BudgetExceeded:
        return IsoResult("budget", None, budget.nodes)
    return IsoResult("exhausted", None, budget.nodes)
