"""Coefficient vectors, growth envelopes, and the bilinear pairing."""
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmc.errors import (
    BudgetExceeded,
    EnvelopeViolation,
    PreconditionError,
    UnpairedDistributions,
)
from gmc.vectors import (
    CoefficientVector,
    GrowthClass,
    GrowthEnvelope,
    IndexDomain,
    Tail,
    fitted_decay_exponent,
    pair,
    steepen_envelope,
    vector_from_prefix,
)
from gmc import torus as tr


def test_envelope_rejects_nonpositive_constant():
    with pytest.raises(ValueError):
        GrowthEnvelope(0.0, 1.0)
    with pytest.raises(ValueError):
        GrowthEnvelope(-2.0, 1.0)


def test_envelope_violation_detected_at_construction():
    with pytest.raises(EnvelopeViolation):
        CoefficientVector(
            IndexDomain.INTEGERS,
            -1,
            np.array([1.0, 5.0, 1.0]),
            GrowthEnvelope(1.0, 0.0),
            GrowthClass.POLYNOMIAL_GROWTH,
        )


def test_naturals_cannot_start_negative():
    with pytest.raises(PreconditionError):
        CoefficientVector(
            IndexDomain.NATURALS,
            -2,
            np.array([1.0]),
            GrowthEnvelope(1.0, 0.0),
            GrowthClass.RAPID_DECAY,
        )


def test_prefix_is_immutable():
    v = tr.unit(3)
    with pytest.raises(ValueError):
        v.prefix[0] = 2.0


def test_coeff_lookup_prefix_tail_and_zero():
    v = tr.comb(extent=4)
    assert v.coeff(0) == 1
    assert v.coeff(4) == 1
    assert v.coeff(100) == 1  # tail formula
    u = tr.unit(2)
    assert u.coeff(2) == 1
    assert u.coeff(3) == 0


# --- pairing ---------------------------------------------------------------


def test_pair_unit_vectors():
    assert pair(tr.unit(3), tr.unit(3)) == 1
    assert pair(tr.unit(3), tr.unit(4)) == 0


def test_pair_comb_with_exponential_decay():
    # closed-form geometric series: sum_n e^{-|n|} = (1+e^{-1})/(1-e^{-1})
    expected = (1 + math.exp(-1)) / (1 - math.exp(-1))
    got = pair(tr.comb(), tr.geometric(math.exp(-1)))
    assert abs(got - expected) < 1e-12


def test_pair_rejects_two_distributions():
    with pytest.raises(UnpairedDistributions):
        pair(tr.comb(), tr.poly(2))


def test_pair_domain_mismatch():
    from gmc import heisenberg as hb

    with pytest.raises(PreconditionError):
        pair(tr.comb(), hb.unit_vector(0))


def test_pair_budget_error_reports_bound():
    # an envelope pair whose product degree cannot certify convergence
    slow = CoefficientVector(
        IndexDomain.INTEGERS,
        0,
        np.array([1.0]),
        GrowthEnvelope(1.0, -0.8),
        GrowthClass.SQUARE_SUMMABLE,
        Tail.formula("shifted_power", -0.8),
    )
    with pytest.raises(BudgetExceeded):
        pair(tr.comb(), slow)


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
    beta=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
    seed=st.integers(0, 2**16),
)
def test_pair_bilinearity(alpha, beta, seed):
    g = np.random.default_rng(seed)
    a1 = vector_from_prefix(
        IndexDomain.INTEGERS, -5, g.normal(size=11) + 1j * g.normal(size=11),
        GrowthClass.POLYNOMIAL_GROWTH, degree=0.5,
    )
    a2 = vector_from_prefix(
        IndexDomain.INTEGERS, -5, g.normal(size=11) + 1j * g.normal(size=11),
        GrowthClass.POLYNOMIAL_GROWTH, degree=0.5,
    )
    v = tr.geometric(0.4, extent=16)
    combo = vector_from_prefix(
        IndexDomain.INTEGERS,
        -5,
        alpha * a1.prefix + beta * a2.prefix,
        GrowthClass.POLYNOMIAL_GROWTH,
        degree=0.5,
    )
    lhs = pair(combo, v)
    rhs = alpha * pair(a1, v) + beta * pair(a2, v)
    assert abs(lhs - rhs) < 1e-10


def test_pair_deterministic():
    a, v = tr.comb(), tr.geometric(0.5)
    assert pair(a, v) == pair(a, v)


def test_square_summable_cauchy():
    u = tr.inverse_quadratic(1)
    sums = u.norm_sq_partial([16, 32, 64])
    assert abs(sums[2] - sums[1]) < abs(sums[1] - sums[0])
    assert abs(sums[2] - sums[1]) < 1e-4


def test_steepen_envelope_certifies_sampled_bound():
    v = tr.geometric(0.5)
    env = steepen_envelope(v, -12.0)
    assert env.degree == -12.0
    for k in (0, 3, 10, 40):
        assert abs(v.coeff(k)) <= env.bound(k) * (1 + 1e-6)


def test_fitted_decay_exponent_on_geometric():
    v = tr.geometric(0.2, extent=24)
    assert fitted_decay_exponent(v) < -4.0


# --- serialization -----------------------------------------------------------


def test_json_round_trip():
    v = tr.geometric(0.5, extent=8)
    payload = json.loads(json.dumps(v.to_json()))
    w = CoefficientVector.from_json(payload)
    assert w.domain == v.domain and w.start == v.start
    assert np.allclose(w.prefix, v.prefix)
    assert w.coeff(30) == v.coeff(30)
    assert w.growth == v.growth
    assert w.envelope.all_orders == v.envelope.all_orders
    assert w.envelope.degree == v.envelope.degree


def test_concurrent_evaluation_is_safe():
    # pure operations on immutable values: identical results from many threads
    from concurrent.futures import ThreadPoolExecutor

    a, v = tr.comb(), tr.geometric(0.5)
    expected = pair(a, v)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: pair(a, v), range(32)))
    assert all(r == expected for r in results)


def test_json_rejects_derived_tails():
    v = tr.act_group(0.3, tr.comb())
    with pytest.raises(PreconditionError):
        v.to_json()
