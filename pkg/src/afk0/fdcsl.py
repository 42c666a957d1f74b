"""Finite-dimensional CSL (preorder) algebras with a diagonal masa.

A preorder algebra on indices 1..n is the span of the matrix units
e_ij with (i, j) in a reflexive transitive relation.  Scales, the
algebraic order via a matching oracle, matrix-unit embeddings, and
bounded searches for regular embeddings and conjugacy live here.

Direction convention used by every oracle in this package:
order_holds(a, p, q) decides [p] <= [q], i.e. there is a partial
isometry v in the algebra with v*v = q and vv* = p.  Concretely each
unit of q at diagonal index j moves to a unit of p at index i with
(i, j) in the relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

SCALE_GUARD = 10**6

CONVENTION = "order_holds(a, p, q) means [p] S [q]: some v in the algebra has v*v = q, vv* = p"


# ---------------------------------------------------------------------------
# Preorder algebras


@dataclass(frozen=True)
class PreorderAlgebra:
    """Relation on diagonal indices 1..n; reflexive and transitive when valid."""

    n: int
    rel: frozenset[tuple[int, int]]

    @cached_property
    def violation(self) -> str | None:
        for i, j in self.rel:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                return f"pair ({i}, {j}) out of range 1..{self.n}"
        for i in range(1, self.n + 1):
            if (i, i) not in self.rel:
                return f"reflexivity fails at ({i}, {i})"
        rel = self.rel
        for i, j in rel:
            for k, l in rel:
                if j == k and (i, l) not in rel:
                    return f"transitivity fails: ({i}, {j}) and ({j}, {l}) without ({i}, {l})"
        return None

    @property
    def is_valid(self) -> bool:
        return self.violation is None

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Equivalence classes of rel & rel^-1, sorted by least element."""
        seen: set[int] = set()
        out = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cls = tuple(
                j for j in range(1, self.n + 1)
                if (i, j) in self.rel and (j, i) in self.rel
            )
            seen.update(cls)
            out.append(cls)
        return tuple(out)

    @cached_property
    def block_index(self) -> dict[int, int]:
        return {i: b for b, cls in enumerate(self.blocks) for i in cls}

    @cached_property
    def capacities(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.blocks)

    @cached_property
    def block_rel(self) -> frozenset[tuple[int, int]]:
        """(bi, bj) iff units may move from block bj to block bi."""
        bi = self.block_index
        return frozenset((bi[i], bi[j]) for i, j in self.rel)

    @cached_property
    def is_triangular(self) -> bool:
        """Antisymmetric relation: every block is a single index."""
        return all(len(c) == 1 for c in self.blocks)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the undirected relation graph."""
        adj: dict[int, set[int]] = {i: set() for i in range(1, self.n + 1)}
        for i, j in self.rel:
            adj[i].add(j)
            adj[j].add(i)
        seen: set[int] = set()
        comps = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            stack, comp = [i], []
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                comp.append(x)
                stack.extend(adj[x] - seen)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def is_nest(self) -> bool:
        """Total preorder: any two indices comparable."""
        return all(
            (i, j) in self.rel or (j, i) in self.rel
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
        )

    @cached_property
    def is_nest_sum(self) -> bool:
        """Each connected component is totally preordered."""
        return all(
            (i, j) in self.rel or (j, i) in self.rel
            for comp in self.components
            for i in comp for j in comp if i < j
        )


def preorder(n: int, pairs: Sequence[tuple[int, int]] = ()) -> PreorderAlgebra:
    """Algebra with the given off-diagonal pairs plus the diagonal."""
    rel = frozenset(pairs) | frozenset((i, i) for i in range(1, n + 1))
    return PreorderAlgebra(n, rel)


def full_matrix(n: int) -> PreorderAlgebra:
    return PreorderAlgebra(n, frozenset((i, j) for i in range(1, n + 1) for j in range(1, n + 1)))


def upper_triangular(n: int) -> PreorderAlgebra:
    """T_n: the full upper triangular algebra."""
    return PreorderAlgebra(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i, n + 1)))


def block_upper_triangular(sizes: Sequence[int]) -> PreorderAlgebra:
    """T(n_1, ..., n_r): block upper triangular with full diagonal blocks."""
    n = sum(sizes)
    bounds = list(itertools.accumulate(sizes))
    starts = [0] + bounds[:-1]

    def blk(i: int) -> int:
        return next(b for b, hi in enumerate(bounds) if i <= hi)

    rel = frozenset((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if blk(i) <= blk(j))
    _ = starts
    return PreorderAlgebra(n, rel)


def direct_sum(*algebras: PreorderAlgebra) -> PreorderAlgebra:
    n = 0
    rel: set[tuple[int, int]] = set()
    for a in algebras:
        rel.update((i + n, j + n) for i, j in a.rel)
        n += a.n
    return PreorderAlgebra(n, frozenset(rel))


def tensor(a: PreorderAlgebra, b: PreorderAlgebra) -> PreorderAlgebra:
    """Tensor product; index (i1, i2) becomes (i1-1)*b.n + i2."""
    def fuse(i1: int, i2: int) -> int:
        return (i1 - 1) * b.n + i2

    rel = frozenset(
        (fuse(i1, i2), fuse(j1, j2))
        for i1, j1 in a.rel for i2, j2 in b.rel
    )
    return PreorderAlgebra(a.n * b.n, rel)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problem: str | None
    blocks: tuple[tuple[int, ...], ...]
    triangular: bool
    nest: bool
    nest_sum: bool


def validate(a: PreorderAlgebra) -> ValidationReport:
    """Confirm reflexivity/transitivity or name the violating pair."""
    problem = a.violation
    if problem is not None:
        return ValidationReport(False, problem, (), False, False, False)
    return ValidationReport(True, None, a.blocks, a.is_triangular, a.is_nest, a.is_nest_sum)


# ---------------------------------------------------------------------------
# Scale vectors


def check_scale_vector(a: PreorderAlgebra, v: Sequence[int]) -> tuple[int, ...]:
    caps = a.capacities
    if len(v) != len(caps):
        raise ValueError(f"scale vector length {len(v)} != block count {len(caps)}")
    for x, c in zip(v, caps):
        if not 0 <= x <= c:
            raise ValueError(f"scale vector {tuple(v)} violates capacities {caps}")
    return tuple(v)


def scale_enumerate(a: PreorderAlgebra) -> list[tuple[int, ...]]:
    """The full product lattice of per-block counts."""
    caps = a.capacities
    total = 1
    for c in caps:
        total *= c + 1
    if total > SCALE_GUARD:
        raise ValueError(f"scale has {total} elements, over the {SCALE_GUARD} guard")
    return [tuple(v) for v in itertools.product(*(range(c + 1) for c in caps))]


def indices_to_scale_vector(a: PreorderAlgebra, indices: Sequence[int]) -> tuple[int, ...]:
    """Per-block counts of a diagonal projection given by its support."""
    counts = [0] * len(a.blocks)
    for i in indices:
        counts[a.block_index[i]] += 1
    return tuple(counts)


# ---------------------------------------------------------------------------
# Matching oracle


@dataclass(frozen=True)
class OrderCertificate:
    """Matching that realises [p] S [q]: (i, j, count) moves `count`
    units of q sitting in block j onto p-units in block i."""

    moves: tuple[tuple[int, int, int], ...]

    def validate(self, a: PreorderAlgebra, p: Sequence[int], q: Sequence[int]) -> bool:
        supply = list(q)
        demand = list(p)
        for i, j, c in self.moves:
            if c <= 0 or (i, j) not in a.block_rel:
                return False
            demand[i] -= c
            supply[j] -= c
        return all(x == 0 for x in supply) and all(x == 0 for x in demand)


def flow_matching(
    allowed: frozenset[tuple[int, int]] | set[tuple[int, int]],
    demand: Sequence[int],
    supply: Sequence[int],
) -> tuple[tuple[int, int, int], ...] | None:
    """Max-flow feasibility: move `supply` units onto `demand` slots.

    `allowed` holds pairs (i, j) meaning slot j may feed slot i.  Returns
    the move list or None.  Edmonds-Karp with deterministic ordering;
    capacities may be arbitrarily large integers.
    """
    total = sum(supply)
    if total != sum(demand):
        return None
    if total == 0:
        return ()
    ns, nd = len(supply), len(demand)
    # node ids: 0 = source, 1 = sink, 2..2+ns-1 supply, 2+ns.. demand
    src, snk = 0, 1
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {src: [], snk: []}

    def add_edge(u: int, v: int, c: int) -> None:
        if (u, v) not in cap:
            cap[(u, v)] = 0
            cap[(v, u)] = 0
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        cap[(u, v)] += c

    for j in range(ns):
        if supply[j]:
            add_edge(src, 2 + j, supply[j])
    for i in range(nd):
        if demand[i]:
            add_edge(2 + ns + i, snk, demand[i])
    for i, j in sorted(allowed):
        if i < nd and j < ns and supply[j] and demand[i]:
            add_edge(2 + j, 2 + ns + i, total)

    flow = 0
    while flow < total:
        # BFS for a shortest augmenting path
        parent = {src: src}
        queue = [src]
        while queue and snk not in parent:
            nxt = []
            for u in queue:
                for v in sorted(adj.get(u, ())):
                    if v not in parent and cap.get((u, v), 0) > 0:
                        parent[v] = u
                        nxt.append(v)
            queue = nxt
        if snk not in parent:
            return None
        # bottleneck
        path = []
        v = snk
        while v != src:
            u = parent[v]
            path.append((u, v))
            v = u
        aug = min(cap[(u, v)] for u, v in path)
        for u, v in path:
            cap[(u, v)] -= aug
            cap[(v, u)] += aug
        flow += aug

    moves = []
    for i in range(nd):
        for j in range(ns):
            used = cap.get((2 + ns + i, 2 + j), 0)
            if (2 + j, 2 + ns + i) in cap and used > 0:
                moves.append((i, j, used))
    return tuple(sorted(moves))


def order_holds(
    a: PreorderAlgebra, p: Sequence[int], q: Sequence[int]
) -> OrderCertificate | None:
    """Decide [p] S(A) [q] by block-level max-flow; see CONVENTION."""
    p = check_scale_vector(a, p)
    q = check_scale_vector(a, q)
    moves = flow_matching(a.block_rel, p, q)
    if moves is None:
        return None
    return OrderCertificate(moves)


def nest_order_formula(sizes: Sequence[int], a: Sequence[int], b: Sequence[int]) -> bool:
    """Closed form for T(n_1..n_r): equal sums and all tail-sum inequalities."""
    r = len(sizes)
    if len(a) != r or len(b) != r:
        raise ValueError("vector length does not match the composition")
    for v in (a, b):
        for x, c in zip(v, sizes):
            if not 0 <= x <= c:
                raise ValueError(f"{tuple(v)} outside the scale of {tuple(sizes)}")
    if sum(a) != sum(b):
        return False
    return all(sum(b[k:]) >= sum(a[k:]) for k in range(r))


def strong_order_holds(
    a: PreorderAlgebra, p: Sequence[int], q: Sequence[int]
) -> OrderCertificate | None:
    """Strong order S_1 for direct sums of nest algebras.

    Sorts the minimal subprojections of p and q along each nest and
    matches them positionally; for nests this coincides with order_holds.
    """
    if not a.is_nest_sum:
        raise ValueError("strong order oracle requires nest structure (sums of nests)")
    p = check_scale_vector(a, p)
    q = check_scale_vector(a, q)
    moves: list[tuple[int, int, int]] = []
    bi = a.block_index
    for comp in a.components:
        comp_blocks = sorted(
            {bi[i] for i in comp},
            key=lambda b: sum(1 for c in range(len(a.blocks)) if (b, c) in a.block_rel),
            reverse=True,
        )
        # comp_blocks now runs top (most successors) to bottom of the nest
        p_units = [b for b in comp_blocks for _ in range(p[b])]
        q_units = [b for b in comp_blocks for _ in range(q[b])]
        if len(p_units) != len(q_units):
            return None
        pair_counts: dict[tuple[int, int], int] = {}
        for pb, qb in zip(p_units, q_units):
            if (pb, qb) not in a.block_rel:
                return None
            pair_counts[(pb, qb)] = pair_counts.get((pb, qb), 0) + 1
        moves.extend((i, j, c) for (i, j), c in pair_counts.items())
    return OrderCertificate(tuple(sorted(moves)))


# ---------------------------------------------------------------------------
# Matrix unit embeddings


@dataclass(frozen=True)
class MatrixUnitEmbedding:
    """Star-extendible-checkable embedding given on matrix units.

    images[i] lists the target diagonal indices carrying source index
    i+1.  pairings maps each off-diagonal source pair (i, j) to the
    bijection (a, b) pairs, a in images of i, b in images of j: the
    image of e_ij is the sum of the target units e_ab.
    """

    source: PreorderAlgebra
    target: PreorderAlgebra
    images: tuple[tuple[int, ...], ...]
    pairings: tuple[tuple[tuple[int, int], tuple[tuple[int, int], ...]], ...]

    @cached_property
    def pairing_map(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        m = {k: v for k, v in self.pairings}
        for i in range(1, self.source.n + 1):
            m.setdefault((i, i), tuple((a, a) for a in self.images[i - 1]))
        return m

    def image_of(self, i: int) -> tuple[int, ...]:
        return self.images[i - 1]

    @cached_property
    def problem(self) -> str | None:
        src, tgt = self.source, self.target
        if len(self.images) != src.n:
            return "image list length mismatch"
        seen: set[int] = set()
        for i, img in enumerate(self.images, start=1):
            if not img:
                return f"index {i} has empty image (embedding not injective)"
            for a in img:
                if not 1 <= a <= tgt.n:
                    return f"image index {a} out of target range"
                if a in seen:
                    return f"images overlap at target index {a}"
                seen.add(a)
        offdiag = {(i, j) for i, j in src.rel if i != j}
        given = {k for k, _ in self.pairings}
        if given != offdiag:
            missing = offdiag - given
            extra = given - offdiag
            if missing:
                return f"missing pairing for source pair {sorted(missing)[0]}"
            return f"pairing given for non-relation pair {sorted(extra)[0]}"
        for (i, j), pairs in self.pairings:
            li, lj = set(self.image_of(i)), set(self.image_of(j))
            if len(pairs) != len(li) or len(li) != len(lj):
                return f"pairing for ({i}, {j}) is not a bijection"
            a_seen, b_seen = set(), set()
            for a, b in pairs:
                if a not in li or b not in lj:
                    return f"pairing for ({i}, {j}) uses indices outside the images"
                if a in a_seen or b in b_seen:
                    return f"pairing for ({i}, {j}) repeats an index"
                a_seen.add(a)
                b_seen.add(b)
                if (a, b) not in tgt.rel:
                    return f"image unit ({a}, {b}) of source unit ({i}, {j}) is not in the target algebra"
        return None

    @property
    def is_unital(self) -> bool:
        return sum(len(img) for img in self.images) == self.target.n

    def pairing_fn(self, i: int, j: int) -> dict[int, int]:
        """The bijection b -> a for the source pair (i, j)."""
        return {b: a for a, b in self.pairing_map[(i, j)]}


def embedding(
    source: PreorderAlgebra,
    target: PreorderAlgebra,
    images: Sequence[Sequence[int]],
    pairings: Mapping[tuple[int, int], Sequence[tuple[int, int]]],
) -> MatrixUnitEmbedding:
    return MatrixUnitEmbedding(
        source,
        target,
        tuple(tuple(sorted(img)) for img in images),
        tuple(sorted((tuple(k), tuple(sorted(v))) for k, v in pairings.items())),
    )


def refinement_embedding(n: int, m: int) -> MatrixUnitEmbedding:
    """rho: T_n -> T_nm, a |-> a (x) 1: index i lands on the m-block
    (i-1)m+1 .. im and pairings align the blocks in order."""
    src, tgt = upper_triangular(n), upper_triangular(n * m)
    images = [tuple(range((i - 1) * m + 1, i * m + 1)) for i in range(1, n + 1)]
    pairings = {
        (i, j): [((i - 1) * m + k, (j - 1) * m + k) for k in range(1, m + 1)]
        for i in range(1, n + 1) for j in range(i + 1, n + 1)
    }
    return embedding(src, tgt, images, pairings)


def standard_embedding(m: int, n: int) -> MatrixUnitEmbedding:
    """sigma: T_m -> T_nm, a |-> 1 (x) a = a + ... + a (n copies)."""
    src, tgt = upper_triangular(m), upper_triangular(n * m)
    images = [tuple(i + c * m for c in range(n)) for i in range(1, m + 1)]
    pairings = {
        (i, j): [(i + c * m, j + c * m) for c in range(n)]
        for i in range(1, m + 1) for j in range(i + 1, m + 1)
    }
    return embedding(src, tgt, images, pairings)


def compose(outer: MatrixUnitEmbedding, inner: MatrixUnitEmbedding) -> MatrixUnitEmbedding:
    if inner.target.rel != outer.source.rel or inner.target.n != outer.source.n:
        raise ValueError("composition target/source mismatch")
    images = [
        tuple(b for t in inner.image_of(i) for b in outer.image_of(t))
        for i in range(1, inner.source.n + 1)
    ]
    pairings = {}
    for i, j in inner.source.rel:
        if i == j:
            continue
        pairs = []
        for a, b in inner.pairing_map[(i, j)]:
            pairs.extend(outer.pairing_map[(a, b)])
        pairings[(i, j)] = pairs
    return embedding(inner.source, outer.target, images, pairings)


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    violation: str | None = None
    witness: tuple | None = None


def check_star_extendible(e: MatrixUnitEmbedding) -> EmbeddingCheck:
    """Do the unit images extend to a C*-homomorphism of envelopes?

    Verified by anchoring each source component: pick a base index,
    transport its image ordering along a spanning tree of relation
    edges, then confirm every relation edge's pairing agrees with the
    transported identifications (all composition cycles close)."""
    if e.problem is not None:
        return EmbeddingCheck(False, e.problem)
    src = e.source
    offdiag = [(i, j) for i, j in sorted(src.rel) if i != j]
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, src.n + 1)}
    for i, j in offdiag:
        adj[i].append((i, j))
        adj[j].append((i, j))
    sigma: dict[int, dict[int, int]] = {}
    for comp in src.components:
        base = comp[0]
        sigma[base] = {a: a for a in e.image_of(base)}
        frontier = [base]
        while frontier:
            x = frontier.pop(0)
            for (i, j) in adj[x]:
                other = j if x == i else i
                if other in sigma:
                    continue
                beta = e.pairing_fn(i, j)  # image(j) -> image(i)
                if x == i:
                    sigma[other] = {b: sigma[x][a] for b, a in beta.items()}
                else:
                    sigma[other] = {a: sigma[x][b] for b, a in beta.items()}
                frontier.append(other)
    for i, j in offdiag:
        beta = e.pairing_fn(i, j)
        for b, a in beta.items():
            if sigma[i][a] != sigma[j][b]:
                return EmbeddingCheck(
                    False,
                    f"pairings do not compose around source pair ({i}, {j})",
                    ((i, j), (a, b)),
                )
    return EmbeddingCheck(True)


def check_strongly_regular(e: MatrixUnitEmbedding) -> EmbeddingCheck:
    """Does every unit image normalise the target order strongly?

    The image of a source unit e_ij conjugates diagonal subprojections
    of its initial space; it must carry order-related pairs to
    order-related pairs in both directions, i.e. its pairing must be an
    isomorphism between the induced relations on the two image sets."""
    star = check_star_extendible(e)
    if not star.ok:
        return star
    tgt_rel = e.target.rel
    for (i, j), pairs in sorted(e.pairing_map.items()):
        if i == j:
            continue
        beta = {b: a for a, b in pairs}
        lj = sorted(beta)
        for b1 in lj:
            for b2 in lj:
                fwd = (b1, b2) in tgt_rel
                img = (beta[b1], beta[b2]) in tgt_rel
                if fwd != img:
                    return EmbeddingCheck(
                        False,
                        f"image of source unit ({i}, {j}) does not preserve the order: "
                        f"pair ({b1}, {b2}) maps to ({beta[b1]}, {beta[b2]})",
                        ((i, j), (b1, b2)),
                    )
    return EmbeddingCheck(True)


# ---------------------------------------------------------------------------
# Searches


class _Budget:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.nodes = 0

    def spend(self) -> bool:
        self.nodes += 1
        return self.nodes <= self.limit


def _pairing_candidates(
    tgt: PreorderAlgebra, li: Sequence[int], lj: Sequence[int]
) -> Iterator[tuple[tuple[int, int], ...]]:
    """All bijections image(j) -> image(i) landing inside the target
    relation, in lexicographic order."""
    li, lj = list(li), list(lj)
    if len(li) != len(lj):
        return
    allowed = {b: [a for a in li if (a, b) in tgt.rel] for b in lj}

    def rec(k: int, used: set[int], acc: list[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
        if k == len(lj):
            yield tuple(sorted(acc))
            return
        b = lj[k]
        for a in allowed[b]:
            if a not in used:
                acc.append((a, b))
                used.add(a)
                yield from rec(k + 1, used, acc)
                used.discard(a)
                acc.pop()

    yield from rec(0, set(), [])


def enumerate_star_extendible(
    src: PreorderAlgebra,
    tgt: PreorderAlgebra,
    diagonal_images: Sequence[Sequence[int]],
    budget: _Budget | None = None,
) -> Iterator[MatrixUnitEmbedding]:
    """All star-extendible embeddings with the given diagonal images,
    in a fixed lexicographic order.  Raises _BudgetExceeded via the
    budget object when the node limit is hit."""
    images = tuple(tuple(img) for img in diagonal_images)
    offdiag = [(i, j) for i, j in sorted(src.rel) if i != j]
    comp_of = {}
    for ci, comp in enumerate(src.components):
        for x in comp:
            comp_of[x] = ci
    if any(len(images[i - 1]) != len(images[j - 1]) for i, j in offdiag):
        return

    assignments: dict[tuple[int, int], dict[int, int]] = {}

    def consistent(i: int, j: int, beta: dict[int, int]) -> bool:
        # compose with already-assigned neighbours; transitivity of the
        # source relation guarantees the composite pair is in rel.
        for (a, b), gamma in assignments.items():
            if a == j:  # (i,j) then (j, b2): composite (i, b2)
                comp = {x: beta[gamma[x]] for x in gamma}
                known = assignments.get((i, b))
                if known is not None and known != comp:
                    return False
            if b == i:  # (a, i) then (i, j): composite (a, j)
                gam = assignments[(a, b)]
                comp = {x: gam[beta[x]] for x in beta}
                known = assignments.get((a, j))
                if known is not None and known != comp:
                    return False
        return True

    def rec(k: int) -> Iterator[MatrixUnitEmbedding]:
        if budget is not None and not budget.spend():
            raise BudgetExceeded
        if k == len(offdiag):
            pairings = {
                pair: tuple(sorted((a, b) for b, a in beta.items()))
                for pair, beta in assignments.items()
            }
            e = embedding(src, tgt, images, pairings)
            if check_star_extendible(e).ok:
                yield e
            return
        i, j = offdiag[k]
        for pairs in _pairing_candidates(tgt, images[i - 1], images[j - 1]):
            beta = {b: a for a, b in pairs}
            if not consistent(i, j, beta):
                continue
            assignments[(i, j)] = beta
            yield from rec(k + 1)
            del assignments[(i, j)]

    yield from rec(0)


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "none" | "budget"
    embedding: MatrixUnitEmbedding | None = None
    nodes: int = 0


def search_regular_embedding(
    src: PreorderAlgebra,
    tgt: PreorderAlgebra,
    diagonal_images: Sequence[Sequence[int]],
    budget: int = 10**6,
) -> SearchResult:
    """First star-extendible regular embedding inducing the given
    diagonal assignment, or a certified `none` by exhaustion.

    Status "budget" means the node limit was hit: inconclusive, and
    explicitly distinct from "none".
    """
    b = _Budget(budget)
    try:
        for e in enumerate_star_extendible(src, tgt, diagonal_images, b):
            return SearchResult("found", e, b.nodes)
    except BudgetExceeded:
        return SearchResult("budget", None, b.nodes)
    return SearchResult("none", None, b.nodes)


def _conjugating_cells(
    tgt: PreorderAlgebra, images: Sequence[Sequence[int]]
) -> list[list[int]]:
    """Cells preserved by an allowed conjugating permutation: the
    intersections of target blocks with each diagonal image set."""
    cells = []
    covered: set[int] = set()
    for img in images:
        s = set(img)
        covered |= s
        for blk in tgt.blocks:
            cell = sorted(s & set(blk))
            if cell:
                cells.append(cell)
    return cells


def are_conjugate(
    e1: MatrixUnitEmbedding, e2: MatrixUnitEmbedding, budget: _Budget | None = None
) -> bool:
    """Conjugacy by a unitary in the target diagonal algebra, at the
    combinatorial level: a permutation preserving every target block
    and every diagonal image set that carries one pairing to the other."""
    if e1.images != e2.images or e1.target.rel != e2.target.rel:
        return False
    cells = _conjugating_cells(e1.target, e1.images)
    keys = sorted(e1.pairing_map)
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        if budget is not None and not budget.spend():
            raise BudgetExceeded
        pi: dict[int, int] = {}
        for cell, perm in zip(cells, choice):
            pi.update(zip(cell, perm))
        ok = True
        for k in keys:
            b1 = e1.pairing_fn(*k)
            b2 = e2.pairing_fn(*k)
            if any(b2.get(pi.get(b, b)) != pi.get(a, a) for b, a in b1.items()):
                ok = False
                break
        if ok:
            return True
    return False


@dataclass(frozen=True)
class ConjugacyReport:
    verdict: str  # "holds" | "counterexample" | "inconclusive"
    embeddings_found: int
    witness: tuple[MatrixUnitEmbedding, MatrixUnitEmbedding] | None = None


def conjugacy_check(
    src: PreorderAlgebra,
    tgt: PreorderAlgebra,
    diagonal_images: Sequence[Sequence[int]],
    budget: int = 10**6,
) -> ConjugacyReport:
    """Are all star-extendible embeddings with this diagonal pairwise
    conjugate by a diagonal (block-permutation) unitary?"""
    b = _Budget(budget)
    found: list[MatrixUnitEmbedding] = []
    try:
        for e in enumerate_star_extendible(src, tgt, diagonal_images, b):
            for prev in found:
                if not are_conjugate(prev, e, b):
                    return ConjugacyReport("counterexample", len(found) + 1, (prev, e))
            found.append(e)
    except BudgetExceeded:
        return ConjugacyReport("inconclusive", len(found))
    return ConjugacyReport("holds", len(found))
