import pytest

from afk0.diagram import (
    BratteliDiagram,
    OrderedBratteliDiagram,
    composed_realization,
    fibonacci_psi,
    fibonacci_theta,
    realize_nest_system,
    single_vertex_diagram,
    stationary,
    stationary_ordered,
    telescope,
    twisted_refinement_stage,
)
from afk0.exact import matrix
from afk0.fdcsl import (
    check_star_extendible,
    check_strongly_regular,
    compose,
    refinement_embedding,
)

FIB = matrix([[1, 1], [1, 0]])


def test_stationary_sizes():
    d = stationary(matrix([[3, 1], [1, 3]]), (1, 1), 3)
    assert d.level_sizes == ((1, 1), (4, 4), (16, 16))
    d2 = stationary(matrix([[2]]), (1,), 3)
    assert d2.level_sizes == ((1,), (2,), (4,))
    d0 = stationary(FIB, (1, 1), 0)
    assert d0.level_sizes == ((1, 1),)


def test_stationary_extends_past_depth():
    d = stationary(FIB, (1, 1), 2)
    assert d.sizes(4) == (5, 3)


def test_validate_ok_fibonacci():
    d = stationary(FIB, (1, 1), 4)
    assert d.validate() == []


def test_validate_shape_mismatch():
    d = BratteliDiagram(((1, 1), (2, 1, 1)), (matrix([[1, 1], [1, 0]]),))
    problems = d.validate()
    assert problems and "expected" in problems[0]


def test_validate_ordered_missing_ordering():
    d = OrderedBratteliDiagram((1, 1), (((2,), ()),))
    assert any("missing edge ordering" in p for p in d.validate())


def test_telescope_composes_matrices():
    d = stationary(FIB, (1, 1), 4)
    t = telescope(d, [1, 3])
    assert t.multiplicities[0] == matrix([[2, 1], [1, 1]])
    assert t.level_sizes == ((1, 1), (3, 2))
    t2 = telescope(stationary(matrix([[2]]), (1,), 5), [1, 3, 5])
    assert t2.multiplicities == (matrix([[4]]), matrix([[4]]))


def test_telescope_identity_selection():
    d = stationary(FIB, (1, 1), 3)
    t = telescope(d, [1, 2, 3])
    assert t.level_sizes == d.level_sizes
    assert t.multiplicities == d.multiplicities


def test_telescope_bad_selection():
    d = stationary(FIB, (1, 1), 3)
    with pytest.raises(ValueError):
        telescope(d, [2, 3])
    with pytest.raises(ValueError):
        telescope(d, [1, 1])


def test_ordered_underlying_fibonacci():
    d = fibonacci_theta(4)
    u = d.underlying
    assert u.stationary_generator == matrix([[0, 1], [1, 1]])
    assert u.level_sizes == ((1, 1), (1, 2), (2, 3), (3, 5))


def test_realize_stage_shapes():
    stages = realize_nest_system(fibonacci_theta(4))
    assert [s.vertex_sizes for s in stages] == [(1, 1), (1, 2), (2, 3), (3, 5)]
    assert stages[-1].embedding is None
    for s in stages[:-1]:
        assert s.embedding is not None


def test_realize_theta_images():
    # x + y -> y + (x + y): at stage 2 (T_1 + T_2) -> stage 3 (T_2 + T_3):
    # index 1 (x) lands at the top of the second summand, y fills both
    stages = realize_nest_system(fibonacci_theta(3))
    e = stages[1].embedding
    assert e.image_of(1) == (3,)       # x-copy: first slot of summand 2
    assert e.image_of(2) == (1, 4)     # y: summand 1 and tail of summand 2
    assert e.image_of(3) == (2, 5)


def test_realize_psi_images():
    # x + y -> y + (y + x): x-copy goes to the tail of the second summand
    stages = realize_nest_system(fibonacci_psi(3))
    e = stages[1].embedding
    assert e.image_of(1) == (5,)
    assert e.image_of(2) == (1, 3)
    assert e.image_of(3) == (2, 4)


def test_realize_embeddings_strongly_regular():
    for d in (fibonacci_theta(5), fibonacci_psi(5), single_vertex_diagram(2, 5)):
        for s in realize_nest_system(d)[:-1]:
            assert check_star_extendible(s.embedding).ok
            assert check_strongly_regular(s.embedding).ok


def test_realize_single_vertex_is_standard_tower():
    stages = realize_nest_system(single_vertex_diagram(2, 4))
    e = stages[2].embedding  # T_4 -> T_8
    assert e.image_of(1) == (1, 5)
    assert e.pairing_map[(1, 2)] == ((1, 2), (5, 6))


def test_telescope_then_realize_commutes():
    # realizing a telescope equals composing realized embeddings
    for d in (fibonacci_theta(5), fibonacci_psi(5), single_vertex_diagram(2, 5),
              stationary_ordered([(2, 1), (1, 2, 2)], (1, 2), 5)):
        sel = [1, 3, 5]
        t = telescope(d, sel)
        stages_t = realize_nest_system(t)
        stages_d = realize_nest_system(d)
        for i, (a, b) in enumerate(zip(sel, sel[1:])):
            want = composed_realization(stages_d, a, b)
            got = stages_t[i].embedding
            assert got.source.rel == want.source.rel
            assert got.images == want.images
            assert dict(got.pairings) == dict(want.pairings)


def test_ordered_telescope_roundtrip_sizes():
    d = fibonacci_theta(6)
    t = telescope(d, [1, 4, 6])
    assert t.sizes(2) == d.sizes(4)
    assert t.sizes(3) == d.sizes(6)


def test_twisted_refinement_formula():
    e = twisted_refinement_stage(1)
    # e_12 -> e_{2,3} + e_{1,4}
    assert e.pairing_map[(1, 2)] == ((1, 4), (2, 3))
    assert e.images == ((1, 2), (3, 4))
    assert e.image_of(1) == refinement_embedding(2, 2).image_of(1)


def test_twisted_refinement_star_extendible_not_strongly_regular():
    for n in range(1, 5):
        e = twisted_refinement_stage(n)
        assert e.problem is None
        assert check_star_extendible(e).ok
        chk = check_strongly_regular(e)
        assert not chk.ok and chk.witness is not None


def test_twisted_composes_with_refinement():
    # two twisted stages compose to a star-extendible T_2 -> T_8 map
    c = compose(twisted_refinement_stage(2), twisted_refinement_stage(1))
    assert check_star_extendible(c).ok
    assert not check_strongly_regular(c).ok
