"""Randomized invariants.  Hypothesis drives the seeds; props holds the checks."""
import random

from hypothesis import given, settings, strategies as st

from polymat.gf import field_make
from polymat.polymatroid import DiscretePolymatroid, rank_from_vectors, rank_validate

import props

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_exchange_axiom(seed):
    D = props.random_dpm(random.Random(seed))
    props.check_exchange(D)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_basis_sums_equal(seed):
    props.check_bases(props.random_dpm(random.Random(seed)))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_vectors_round_trip(seed):
    props.check_round_trip(props.random_dpm(random.Random(seed)))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_thm5_equivalence(seed):
    props.check_thm5(random.Random(seed))


@settings(max_examples=300, deadline=None)
@given(seeds, st.sampled_from([(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]), st.integers(1, 6), st.integers(1, 6))
def test_rref_invariants(seed, pk, rows, cols):
    props.check_matrix(random.Random(seed), field_make(*pk), rows, cols)


@st.composite
def vector_families(draw):
    r = draw(st.integers(1, 4))
    vs = draw(st.lists(st.tuples(*[st.integers(0, 3)] * r), min_size=1, max_size=6))
    return vs


@settings(max_examples=150, deadline=None)
@given(vector_families())
def test_rank_from_any_vectors_is_valid(vs):
    # the downward closure of the vectors need not be a polymatroid, but
    # the table always stays monotone and zero on the empty set
    t = rank_from_vectors(vs)
    r = len(vs[0])
    assert t[0] == 0
    assert all(t[m] <= t[m | 1 << i] for m in range(1 << r) for i in range(r))
    v = rank_validate(r, t)
    if v is None:
        D = DiscretePolymatroid(r, t)
        assert all(D.contains(u) for u in vs)


def test_acceptance_property_run_is_deterministic():
    assert props.run_all(seed=3, n_dpm=5, n_thm5=10, n_mat=50) == props.run_all(seed=3, n_dpm=5, n_thm5=10, n_mat=50)
