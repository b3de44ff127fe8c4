from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psetdisc.config import BudgetError, Caps
from psetdisc.discrepancy import (_closed_local_value, box_counts,
                                  local_discrepancy, star_discrepancy_exact,
                                  star_discrepancy_sampled_lb,
                                  weighted_local_discrepancy,
                                  weighted_star_discrepancy_exact)
from psetdisc.pointset import PSetKind, RationalPointSet, generate, project
from psetdisc.weights import GeneralWeights, GeometricTail, ProductWeights, gamma_of

from oracles import naive_dstar, naive_local, naive_weighted_dstar, sieve_primes

HALVING = ProductWeights(gammas=(0.5, 0.25), tail=GeometricTail(0.5))


def _point_set(modulus, rows):
    return RationalPointSet(modulus=modulus, dim=len(rows[0]),
                            numerators=np.array(rows, dtype=np.int64))


@st.composite
def small_point_sets(draw):
    m = draw(st.integers(2, 9))
    s = draw(st.integers(1, 3))
    n = draw(st.integers(1, 7))
    rows = draw(st.lists(st.tuples(*[st.integers(0, m - 1)] * s),
                         min_size=n, max_size=n))
    return _point_set(m, rows)


# ---------------------------------------------------------------- local


def test_local_discrepancy_examples():
    origin = _point_set(2, [(0, 0)])
    assert local_discrepancy(origin, (0.5, 0.5)) == pytest.approx(0.75)
    p51 = generate(PSetKind.KOROBOV_P, 5, 1)
    assert local_discrepancy(p51, (0.3,)) == pytest.approx(0.1)


def test_local_discrepancy_full_box_is_zero():
    for kind in PSetKind:
        ps = generate(kind, 3, 2)
        assert local_discrepancy(ps, (1, 1)) == 0.0


def test_local_discrepancy_zero_coordinate():
    ps = generate(PSetKind.KOROBOV_P, 5, 2)
    assert local_discrepancy(ps, (0.0, 0.7)) == 0.0


def test_local_discrepancy_dimension_mismatch():
    ps = generate(PSetKind.KOROBOV_P, 5, 2)
    with pytest.raises(ValueError):
        local_discrepancy(ps, (0.5,))
    with pytest.raises(ValueError):
        local_discrepancy(ps, (0.5, 1.5))


@given(small_point_sets(),
       st.lists(st.fractions(0, 1), min_size=1, max_size=3))
@settings(max_examples=100)
def test_local_discrepancy_matches_oracle(ps, zs):
    z = tuple((zs * 3)[: ps.dim])
    got = local_discrepancy(ps, z)
    want = float(naive_local(ps.rows(), ps.modulus, z))
    assert got == pytest.approx(want, abs=1e-15)


def test_box_counts_multiset():
    ps = _point_set(4, [(0, 0), (0, 0), (2, 1)])
    assert box_counts(ps, (0.5, 0.5)) == (2, 3)


# ---------------------------------------------------------------- exact


def test_equispaced_exact_value():
    for p in sieve_primes(97):
        res = star_discrepancy_exact(generate(PSetKind.KOROBOV_P, p, 1))
        assert res.exact == Fraction(1, p)


def test_single_origin_point():
    res = star_discrepancy_exact(_point_set(2, [(0, 0)]))
    assert res.exact == 1
    assert res.side == "closed"
    assert res.witness == (Fraction(0), Fraction(0))


def test_p52_exact_frozen():
    # brute-force corner oracle gives 11/25 at corner (4/5, 1/5), closed side
    res = star_discrepancy_exact(generate(PSetKind.KOROBOV_P, 5, 2))
    assert res.exact == Fraction(11, 25)
    assert res.witness == (Fraction(4, 5), Fraction(1, 5))
    assert res.side == "closed"


def test_q22_r22_exact_frozen():
    assert star_discrepancy_exact(generate(PSetKind.KOROBOV_Q, 2, 2)).exact == Fraction(13, 16)
    assert star_discrepancy_exact(generate(PSetKind.HUA_WANG_R, 2, 2)).exact == Fraction(3, 4)


@given(small_point_sets())
@settings(max_examples=100, deadline=None)
def test_exact_matches_bruteforce_oracle(ps):
    want = naive_dstar(ps.rows(), ps.modulus)
    assert star_discrepancy_exact(ps).exact == want
    assert star_discrepancy_exact(ps, method="python").exact == want


@given(small_point_sets())
@settings(max_examples=60, deadline=None)
def test_numpy_and_python_paths_agree_fully(ps):
    a = star_discrepancy_exact(ps, method="numpy")
    b = star_discrepancy_exact(ps, method="python")
    assert (a.exact, a.witness, a.side) == (b.exact, b.witness, b.side)


@given(small_point_sets())
@settings(max_examples=80, deadline=None)
def test_witness_reproduces_value(ps):
    res = star_discrepancy_exact(ps)
    if res.side == "closed":
        recomputed = _closed_local_value(ps, res.witness)
    else:
        recomputed = -local_discrepancy(ps, res.witness)
    assert recomputed == pytest.approx(res.value, abs=1e-12)


@given(small_point_sets())
@settings(max_examples=60, deadline=None)
def test_dstar_bounds(ps):
    v = star_discrepancy_exact(ps).exact
    assert 0 < v <= 1


def test_pset_lower_bound_one_over_n():
    # origin membership forces D* >= 1/N for every p-set family
    for kind in PSetKind:
        ps = generate(kind, 5, 2)
        assert star_discrepancy_exact(ps).exact >= Fraction(1, ps.n)


def test_corner_budget():
    ps = generate(PSetKind.KOROBOV_P, 13, 3)
    with pytest.raises(BudgetError):
        star_discrepancy_exact(ps, caps=Caps(max_corners=100))


def test_empty_point_set_rejected():
    ps = _point_set(3, [(1,)])
    object.__setattr__(ps, "numerators", ps.numerators[:0])
    with pytest.raises(ValueError):
        star_discrepancy_exact(ps)


# ---------------------------------------------------------------- sampled


def test_sampled_lb_validation():
    ps = generate(PSetKind.KOROBOV_P, 5, 2)
    with pytest.raises(ValueError):
        star_discrepancy_sampled_lb(ps, trials=0)


@given(small_point_sets(), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_sampled_lb_never_exceeds_exact(ps, seed):
    exact = star_discrepancy_exact(ps)
    lb = star_discrepancy_sampled_lb(ps, trials=64, seed=seed)
    assert lb <= exact.value + 1e-15


def test_sampled_lb_close_on_p72():
    ps = generate(PSetKind.KOROBOV_P, 7, 2)
    exact = star_discrepancy_exact(ps).value
    lb = star_discrepancy_sampled_lb(ps, trials=10**5, seed=7)
    assert lb <= exact + 1e-15
    assert exact - lb < 1e-2


def test_sampled_lb_deterministic():
    ps = generate(PSetKind.KOROBOV_Q, 3, 2)
    a = star_discrepancy_sampled_lb(ps, trials=500, seed=11)
    b = star_discrepancy_sampled_lb(ps, trials=500, seed=11)
    assert a == b


# ---------------------------------------------------------------- weighted


@given(small_point_sets(), st.sets(st.integers(1, 3), min_size=1))
@settings(max_examples=60, deadline=None)
def test_projection_monotonicity(ps, u):
    u = sorted(j for j in u if j <= ps.dim) or [1]
    full = star_discrepancy_exact(ps).exact
    assert star_discrepancy_exact(project(ps, u)).exact <= full


@given(small_point_sets())
@settings(max_examples=40, deadline=None)
def test_unit_weights_reduce_to_classical(ps):
    ones = ProductWeights(gammas=(1.0,) * ps.dim)
    res = weighted_star_discrepancy_exact(ps, ones)
    classical = star_discrepancy_exact(ps)
    assert res.value == classical.value
    # the full subset attains the max (projections can tie, never exceed)
    assert res.per_subset[tuple(range(1, ps.dim + 1))] == classical.value


def test_weighted_single_projection_general():
    ps = generate(PSetKind.KOROBOV_P, 7, 2)
    w = GeneralWeights(entries={(1,): 1.0})
    res = weighted_star_discrepancy_exact(ps, w)
    assert res.value == pytest.approx(1 / 7)
    assert res.subset == (1,)


def test_weighted_p52_frozen():
    res = weighted_star_discrepancy_exact(generate(PSetKind.KOROBOV_P, 5, 2), HALVING)
    assert res.value == pytest.approx(0.1)  # gamma_1 * D*(first coordinate)
    assert res.subset == (1,)
    assert res.witness[1] == 1  # free coordinate pinned at 1


@given(small_point_sets())
@settings(max_examples=40, deadline=None)
def test_weighted_matches_subset_oracle(ps):
    got = weighted_star_discrepancy_exact(ps, HALVING).value
    want = naive_weighted_dstar(ps.rows(), ps.modulus, lambda j: 2.0**-j)
    assert got == pytest.approx(want, abs=1e-12)


@given(small_point_sets(), st.floats(0.25, 4.0))
@settings(max_examples=40, deadline=None)
def test_weighted_scales_linearly(ps, lam):
    base = weighted_star_discrepancy_exact(ps, HALVING)
    # scale every subset weight uniformly via general weights
    entries = {u: lam * gamma_of(HALVING, u) for u in base.per_subset}
    if not entries:
        return
    scaled = weighted_star_discrepancy_exact(ps, GeneralWeights(entries=entries))
    assert scaled.value == pytest.approx(lam * base.value, rel=1e-12)
    if base.subset:
        assert scaled.subset == base.subset


def test_weighted_zero_weights():
    ps = generate(PSetKind.KOROBOV_P, 5, 2)
    res = weighted_star_discrepancy_exact(ps, ProductWeights(gammas=(0.0, 0.0)))
    assert res.value == 0.0
    assert res.subset == ()


def test_weighted_subset_cap():
    ps = generate(PSetKind.KOROBOV_P, 3, 2)
    with pytest.raises(BudgetError):
        weighted_star_discrepancy_exact(ps, HALVING, caps=Caps(max_subset_dim=1))


def test_weighted_general_out_of_range_subset():
    ps = generate(PSetKind.KOROBOV_P, 5, 2)
    with pytest.raises(ValueError):
        weighted_star_discrepancy_exact(ps, GeneralWeights(entries={(3,): 1.0}))


def test_weighted_local_example_frozen():
    ps = generate(PSetKind.KOROBOV_P, 5, 2)
    assert weighted_local_discrepancy(ps, HALVING, (0.3, 0.3)) == pytest.approx(0.075)


def test_weighted_local_unit_weights_full_box():
    ps = generate(PSetKind.KOROBOV_P, 5, 2)
    ones = ProductWeights(gammas=(1.0, 1.0))
    assert weighted_local_discrepancy(ps, ones, (1, 1)) == 0.0


@given(small_point_sets(), st.lists(st.floats(0, 1), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_weighted_local_matches_direct_counting(ps, zraw):
    z = tuple(zraw[: ps.dim])
    got = weighted_local_discrepancy(ps, HALVING, z)
    best = 0.0
    for mask in range(1, 1 << ps.dim):
        u = [j + 1 for j in range(ps.dim) if mask >> j & 1]
        zu = [z[j - 1] if j in u else 1 for j in range(1, ps.dim + 1)]
        g = 1.0
        for j in u:
            g *= 2.0**-j
        best = max(best, g * abs(float(naive_local(ps.rows(), ps.modulus, zu))))
    assert got == pytest.approx(best, abs=1e-12)
