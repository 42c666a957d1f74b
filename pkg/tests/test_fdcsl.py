import itertools

import pytest

from afk0.fdcsl import (
    ConjugacyReport,
    block_upper_triangular,
    check_star_extendible,
    check_strongly_regular,
    conjugacy_check,
    direct_sum,
    embedding,
    compose,
    full_matrix,
    indices_to_scale_vector,
    nest_order_formula,
    order_holds,
    preorder,
    refinement_embedding,
    scale_enumerate,
    search_regular_embedding,
    standard_embedding,
    strong_order_holds,
    tensor,
    upper_triangular,
    validate,
)


def brute_order_holds(a, p, q):
    """Independent oracle: exhaustive unit-level matching."""
    p_units = [b for b, c in enumerate(p) for _ in range(c)]
    q_units = [b for b, c in enumerate(q) for _ in range(c)]
    if len(p_units) != len(q_units):
        return False
    for perm in itertools.permutations(range(len(q_units))):
        if all(
            (p_units[k], q_units[perm[k]]) in a.block_rel
            for k in range(len(p_units))
        ):
            return True
    return False


def all_preorders(n):
    """All reflexive transitive relations on {1..n} (dumb filter)."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        chosen = [p for p, b in zip(pairs, bits) if b]
        a = preorder(n, chosen)
        if a.is_valid:
            yield a


# --- validation -------------------------------------------------------------

def test_validate_full_matrix():
    rep = validate(full_matrix(4))
    assert rep.ok and rep.blocks == ((1, 2, 3, 4),)
    assert not rep.triangular and rep.nest


def test_validate_t3():
    rep = validate(upper_triangular(3))
    assert rep.ok and rep.triangular and rep.nest
    assert rep.blocks == ((1,), (2,), (3,))


def test_validate_transitivity_violation():
    a = preorder(3, [(1, 2), (2, 3)])
    rep = validate(a)
    assert not rep.ok
    assert "transitivity" in rep.problem and "(1, 3)" in rep.problem


def test_block_structure():
    a = block_upper_triangular([2, 1])
    assert a.blocks == ((1, 2), (3,))
    assert a.capacities == (2, 1)
    assert a.is_nest and not a.is_triangular


# --- scales -----------------------------------------------------------------

def test_scale_enumerate():
    t11 = block_upper_triangular([1, 1])
    assert sorted(scale_enumerate(t11)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    t21 = block_upper_triangular([2, 1])
    assert len(scale_enumerate(t21)) == 6
    m2 = full_matrix(2)
    assert scale_enumerate(m2) == [(0,), (1,), (2,)]


def test_scale_guard():
    big = direct_sum(*[full_matrix(9) for _ in range(7)])
    with pytest.raises(ValueError):
        scale_enumerate(big)


# --- matching oracle ---------------------------------------------------------

def test_order_holds_t11():
    a = block_upper_triangular([1, 1])
    cert = order_holds(a, (1, 0), (0, 1))
    assert cert is not None and cert.validate(a, (1, 0), (0, 1))
    assert order_holds(a, (0, 1), (1, 0)) is None


def test_order_holds_reflexive():
    a = block_upper_triangular([2, 3, 1])
    for p in scale_enumerate(a):
        cert = order_holds(a, p, p)
        assert cert is not None and cert.validate(a, p, p)


def test_order_holds_matches_bruteforce():
    for a in [
        block_upper_triangular([1, 2]),
        block_upper_triangular([2, 2]),
        preorder(3, [(1, 2)]),
        preorder(4, [(1, 2), (3, 4), (1, 4), (3, 2)]),
        tensor(upper_triangular(2), upper_triangular(2)),
    ]:
        for p in scale_enumerate(a):
            for q in scale_enumerate(a):
                got = order_holds(a, p, q)
                want = brute_order_holds(a, p, q)
                assert (got is not None) == want, (a.rel, p, q)
                if got is not None:
                    assert got.validate(a, p, q)


def test_order_transitive_and_antisymmetric_small():
    # antisymmetry on triangular algebras, exhaustive for n <= 4
    for n in (2, 3):
        for a in all_preorders(n):
            scale = scale_enumerate(a)
            holds = {
                (p, q) for p in scale for q in scale
                if order_holds(a, p, q) is not None
            }
            for (p, q) in holds:
                for (q2, r) in holds:
                    if q == q2:
                        assert (p, r) in holds
            if a.is_triangular:
                for (p, q) in holds:
                    if (q, p) in holds:
                        assert p == q


def test_murray_von_neumann_symmetrization():
    # mutual order implies equal per-block counts
    for a in [preorder(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
              tensor(upper_triangular(2), upper_triangular(2))]:
        scale = scale_enumerate(a)
        for p in scale:
            for q in scale:
                if order_holds(a, p, q) and order_holds(a, q, p):
                    assert p == q


# --- nest formula and strong order -------------------------------------------

def test_nest_order_formula():
    assert nest_order_formula((2, 2), (1, 1), (0, 2)) is True
    assert nest_order_formula((2, 2), (1, 1), (1, 1)) is True
    assert nest_order_formula((2, 2), (0, 2), (1, 1)) is False


def test_nest_formula_equals_matching():
    # oracle equivalence over all compositions with small total
    for total in range(1, 6):
        for cuts in itertools.product((0, 1), repeat=total - 1):
            sizes = []
            run = 1
            for c in cuts:
                if c:
                    sizes.append(run)
                    run = 1
                else:
                    run += 1
            sizes.append(run)
            a = block_upper_triangular(sizes)
            for p in scale_enumerate(a):
                for q in scale_enumerate(a):
                    assert (order_holds(a, p, q) is not None) == nest_order_formula(sizes, p, q)


def test_strong_order_requires_nest():
    grid = tensor(upper_triangular(2), upper_triangular(2))
    with pytest.raises(ValueError, match="nest"):
        strong_order_holds(grid, (0, 0, 0, 0), (0, 0, 0, 0))


def test_strong_order_t3():
    t3 = upper_triangular(3)
    cert = strong_order_holds(t3, (1, 0, 0), (0, 0, 1))
    assert cert is not None and cert.validate(t3, (1, 0, 0), (0, 0, 1))
    assert strong_order_holds(t3, (0, 0, 1), (1, 0, 0)) is None


def test_strong_equals_order_on_nest_sums():
    cases = [
        block_upper_triangular([2, 1]),
        direct_sum(upper_triangular(2), upper_triangular(2)),
        direct_sum(block_upper_triangular([1, 2]), full_matrix(2)),
    ]
    for a in cases:
        for p in scale_enumerate(a):
            for q in scale_enumerate(a):
                s = strong_order_holds(a, p, q)
                o = order_holds(a, p, q)
                assert (s is None) == (o is None), (a.rel, p, q)
                if s is not None:
                    assert s.validate(a, p, q)


def test_indices_to_scale_vector():
    a = block_upper_triangular([2, 1])
    assert indices_to_scale_vector(a, [1, 3]) == (1, 1)
    assert indices_to_scale_vector(a, [1, 2]) == (2, 0)


# --- embeddings ---------------------------------------------------------------

def displayed_t2_t4():
    """The regular star-extendible T_2 -> T_4 embedding that splits the
    off-diagonal unit onto positions (1,4) and (2,3)."""
    return embedding(
        upper_triangular(2),
        upper_triangular(4),
        [(1, 2), (3, 4)],
        {(1, 2): [(1, 4), (2, 3)]},
    )


def test_refinement_and_standard_are_star_extendible():
    for n, m in [(2, 2), (2, 3), (3, 2), (1, 4)]:
        assert check_star_extendible(refinement_embedding(n, m)).ok
        assert check_star_extendible(standard_embedding(n, m)).ok


def test_displayed_embedding_star_extendible_not_strongly_regular():
    e = displayed_t2_t4()
    assert check_star_extendible(e).ok
    chk = check_strongly_regular(e)
    assert not chk.ok
    assert chk.witness is not None


def test_star_extendibility_violation_on_chain():
    # T_3 with mismatched composition: (1,2) and (2,3) pairings compose
    # to the opposite of the declared (1,3) pairing.
    src, tgt = upper_triangular(3), upper_triangular(6)
    e = embedding(
        src, tgt,
        [(1, 2), (3, 4), (5, 6)],
        {
            (1, 2): [(1, 3), (2, 4)],
            (2, 3): [(3, 5), (4, 6)],
            (1, 3): [(1, 6), (2, 5)],
        },
    )
    chk = check_star_extendible(e)
    assert not chk.ok and "compose" in chk.violation


def test_strongly_regular_refinement_standard_all_small():
    for n in range(1, 4):
        for m in range(1, 4):
            if n * m <= 6:
                assert check_strongly_regular(refinement_embedding(n, m)).ok
                assert check_strongly_regular(standard_embedding(n, m)).ok


def test_compose_refinements():
    r1 = refinement_embedding(2, 2)
    r2 = refinement_embedding(4, 2)
    c = compose(r2, r1)
    want = refinement_embedding(2, 4)
    assert c.images == want.images
    assert dict(c.pairings) == dict(want.pairings)


# --- searches -----------------------------------------------------------------

def test_search_finds_refinement():
    res = search_regular_embedding(
        upper_triangular(2), upper_triangular(4), [(1, 2), (3, 4)]
    )
    assert res.status == "found"
    assert check_star_extendible(res.embedding).ok


def test_search_none_when_no_edges():
    # target relation has no pair from block of 3.. into 1..: source needs one
    src = upper_triangular(2)
    tgt = preorder(4)  # diagonal only
    res = search_regular_embedding(src, tgt, [(1, 2), (3, 4)])
    assert res.status == "none"


def remark_3_3_instance():
    """Grid algebra T_2 (x) T_2 and the 8-dimensional triangular target
    admitting no regular embedding with diagonal c -> c (x) I_2."""
    src = tensor(upper_triangular(2), upper_triangular(2))
    tgt = preorder(8, [
        (1, 3), (1, 5), (1, 7), (1, 8),
        (2, 4), (2, 6), (2, 7), (2, 8),
        (3, 7), (4, 8), (5, 8), (6, 7),
    ])
    diag = [(1, 2), (3, 4), (5, 6), (7, 8)]
    return src, tgt, diag


def test_remark_3_3_target_is_valid_preorder():
    _, tgt, _ = remark_3_3_instance()
    assert validate(tgt).ok and tgt.is_triangular


def test_search_regular_embedding_negative_instance():
    src, tgt, diag = remark_3_3_instance()
    res = search_regular_embedding(src, tgt, diag)
    assert res.status == "none"


def test_search_budget_is_distinct_from_none():
    src, tgt, diag = remark_3_3_instance()
    res = search_regular_embedding(src, tgt, diag, budget=1)
    assert res.status == "budget"


def test_conjugacy_two_orientations():
    # both orientations of T_2 -> T_4 with the refinement diagonal exist
    # and are not diagonally conjugate
    rep = conjugacy_check(upper_triangular(2), upper_triangular(4), [(1, 2), (3, 4)])
    assert rep.verdict == "counterexample"
    assert rep.witness is not None


def test_conjugacy_holds_nest_to_nest_standard_diagonal():
    # T_2 -> T_4 with the standard (interleaved) diagonal: the pairing
    # is forced, so the conjugacy property holds trivially
    rep = conjugacy_check(upper_triangular(2), upper_triangular(4), [(1, 3), (2, 4)])
    assert rep.verdict == "holds"
    assert rep.embeddings_found == 1


def t2_into_t2m4_diagonal():
    """T_2 -> T_2 (x) M_4 with one x-copy inside the second big block."""
    tgt = block_upper_triangular([4, 4])
    diag = [(1, 2, 3, 5), (4, 6, 7, 8)]
    return upper_triangular(2), tgt, diag


def test_conjugacy_holds_t2_tensor_instance():
    src, tgt, diag = t2_into_t2m4_diagonal()
    rep = conjugacy_check(src, tgt, diag)
    assert rep.verdict == "holds"
    assert rep.embeddings_found > 1


def test_conjugacy_budget():
    src, tgt, diag = t2_into_t2m4_diagonal()
    rep = conjugacy_check(src, tgt, diag, budget=2)
    assert rep.verdict == "inconclusive"
