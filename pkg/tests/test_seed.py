"""Seeds, variable mutation, exploration, change of cluster.

Frozen expected clusters below were derived by hand from the exchange
relation x_k * x_k' = p+ + p-; the type-A counts (pentagon: 5 clusters
and 5 variables; three vertices in a path: 14 clusters, 9 variables)
follow from the classical formulas C_{n+2} seeds and n(n+3)/2 variables
and double as an independent check on the walker.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clusterfrob import (GF, QQ, LaurentPoly, NotLaurentError, Seed, budgets,
                         cluster_substitution, corpus, explore,
                         express_in_cluster, express_rational, initial_seed,
                         upper_membership_sample)


def lp(field, n, terms):
    return LaurentPoly.from_terms(field, n, terms)


def seed_for(name, field=QQ):
    return initial_seed(corpus.load(name), field)


# -- construction ------------------------------------------------------------


def test_initial_seed_variables_are_coordinates():
    s = seed_for("a2")
    assert s.vars == (LaurentPoly.variable(QQ, 2, 0),
                      LaurentPoly.variable(QQ, 2, 1))
    assert s.is_initial
    assert s.path == ()


def test_seed_validates_var_count():
    q = corpus.load("a2")
    with pytest.raises(ValueError):
        Seed(q, (LaurentPoly.one(QQ, 2),))


def test_seed_rejects_zero_variable():
    q = corpus.load("a2")
    with pytest.raises(ValueError):
        Seed(q, (LaurentPoly.zero(QQ, 2), LaurentPoly.one(QQ, 2)))


# -- single mutations ---------------------------------------------------------


def test_mutate_a2_first_vertex():
    s = seed_for("a2").mutate(0)
    assert s.vars[0].terms == {(-1, 1): Fraction(1), (-1, 0): Fraction(1)}
    assert s.vars[1] == LaurentPoly.variable(QQ, 2, 1)
    assert s.path == (0,)


def test_mutate_a3_middle():
    # arrows 1 -> 2 -> 3: at the middle, p+ = x1, p- = x3
    s = seed_for("a3").mutate(1)
    assert s.vars[1].terms == {(1, -1, 0): Fraction(1),
                               (0, -1, 1): Fraction(1)}


def test_mutate_markov_vertex():
    s = initial_seed(corpus.load("markov"), QQ).mutate(0)
    assert s.vars[0].terms == {(-1, 2, 0): Fraction(1),
                               (-1, 0, 2): Fraction(1)}


def test_exchange_identity():
    s = seed_for("a3")
    for k in range(3):
        plus, minus = s.exchange_monomials(k)
        m = s.mutate(k)
        assert m.vars[k] * s.vars[k] == plus + minus


def test_mutation_involution_on_state():
    s = seed_for("a3")
    twice = s.mutate(1).mutate(1)
    assert twice.same_state(s)
    assert twice.path == (1, 1)
    # is_initial looks at the state, not the path taken to reach it
    assert twice.is_initial


def test_frozen_variables_never_change():
    s = seed_for("cycle3-frozen")
    m = s.mutate(0).mutate(2).mutate(0)
    assert m.vars[1] == s.vars[1]


def test_mutate_path():
    s = seed_for("a2")
    assert s.mutate_path([0, 1, 0]).path == (0, 1, 0)


@given(st.lists(st.integers(min_value=0, max_value=1), min_size=1,
                max_size=5))
def test_laurentness_along_random_a2_paths(path):
    s = seed_for("a2")
    for k in path:
        s = s.mutate(k)  # would raise LaurentViolationError on failure
    for v in s.vars:
        assert not v.is_zero()


# -- exploration --------------------------------------------------------------


def test_pentagon_exactly_five_variables():
    result = explore(seed_for("a2"), 4)
    assert result.seed_count == 5
    assert result.variable_count == 5
    assert result.closed
    expected = {
        lp(QQ, 2, [((1, 0), 1)]),
        lp(QQ, 2, [((0, 1), 1)]),
        lp(QQ, 2, [((-1, 1), 1), ((-1, 0), 1)]),
        lp(QQ, 2, [((-1, -1), 1), ((0, -1), 1), ((-1, 0), 1)]),
        lp(QQ, 2, [((1, -1), 1), ((0, -1), 1)]),
    }
    assert set(result.variables) == expected


def test_pentagon_not_closed_too_shallow():
    result = explore(seed_for("a2"), 2)
    assert result.seed_count == 5
    assert not result.closed


def test_a3_counts():
    result = explore(seed_for("a3"), 9)
    assert result.closed
    assert result.seed_count == 14
    assert result.variable_count == 9


def test_explore_depth_zero():
    result = explore(seed_for("a2"), 0)
    assert result.seed_count == 1
    assert result.variable_count == 2
    assert not result.closed


def test_explore_seed_budget():
    from clusterfrob import BudgetExceededError
    with budgets.limits(max_seeds=3):
        with pytest.raises(BudgetExceededError):
            explore(seed_for("a3"), 9)


def test_explore_frozen_vertex_skipped():
    result = explore(seed_for("mixed-pair"), 3)
    # one mutable vertex: two seeds total, x2 never mutated
    assert result.seed_count == 2
    assert result.closed
    assert result.variable_count == 3


# -- change of cluster --------------------------------------------------------


def test_cluster_substitution_a2():
    s = seed_for("a2")
    subs = cluster_substitution(s, (0,))
    # x1 = (1 + z2) / z1 in the new chart, x2 unchanged
    assert subs[0] == lp(QQ, 2, [((-1, 1), 1), ((-1, 0), 1)])
    assert subs[1] == LaurentPoly.variable(QQ, 2, 1)


def test_express_variable_in_adjacent_cluster():
    s = seed_for("a2")
    g = LaurentPoly.variable(QQ, 2, 0)
    out = express_in_cluster(g, s, (0,))
    assert out.terms == {(-1, 1): Fraction(1), (-1, 0): Fraction(1)}


def test_express_roundtrip_through_involution():
    s = seed_for("a3")
    g = lp(QQ, 3, [((1, -1, 2), 3), ((0, 0, 0), 1)])
    assert express_in_cluster(g, s, (1, 1)) == g


def test_express_detects_non_laurent():
    s = seed_for("a2")
    g = LaurentPoly.monomial(QQ, 2, (-1, 0), 1)  # 1/x1
    with pytest.raises(NotLaurentError) as err:
        express_in_cluster(g, s, (0,))
    assert err.value.path == (0,)


def test_express_rational_identity():
    s = seed_for("a2")
    subs = cluster_substitution(s, ())
    g = lp(QQ, 2, [((2, -1), 1), ((0, 0), 5)])
    assert express_rational(g, subs).as_laurent() == g


def test_markov_invariant_element():
    s = initial_seed(corpus.load("markov"), QQ)
    m = lp(QQ, 3, [((1, -1, -1), 1), ((-1, 1, -1), 1), ((-1, -1, 1), 1)])
    for path in [(0,), (1,), (2,), (0, 1)]:
        assert express_in_cluster(m, s, path) == m


# -- membership sampling -------------------------------------------------------


def test_membership_initial_variable_passes():
    s = seed_for("a2")
    verdict = upper_membership_sample(LaurentPoly.variable(QQ, 2, 0), s, 2)
    assert verdict.ok
    assert verdict.failing_path is None
    assert verdict.clusters_checked > 1


def test_membership_reciprocal_fails_on_first_step():
    s = seed_for("a2")
    bad = LaurentPoly.monomial(QQ, 2, (-1, 0), 1)
    verdict = upper_membership_sample(bad, s, 2)
    assert not verdict.ok
    assert verdict.failing_path == (0,)


def test_membership_skips_immediate_backtrack():
    s = seed_for("a2")
    verdict = upper_membership_sample(LaurentPoly.one(QQ, 2), s, 3)
    # paths never contain k,k adjacent; depth-3 walk on 2 vertices
    # alternates, so the count is 1 + 2 + 2 + 2
    assert verdict.clusters_checked == 7
    assert verdict.ok


def test_membership_gf():
    s = seed_for("a2", GF(5))
    verdict = upper_membership_sample(s.vars[1], s, 2)
    assert verdict.ok


# -- seed keys ----------------------------------------------------------------


def test_pentagon_keys_identify_clusters():
    s = seed_for("a2")
    keys = {s.mutate(0).mutate(1).key(), s.mutate(0).mutate(1).key()}
    assert len(keys) == 1
    assert s.key() != s.mutate(0).key()


def test_same_state_ignores_path():
    s = seed_for("a2")
    assert s.mutate(0).mutate(0).same_state(s)
    assert not s.mutate(0).same_state(s)
