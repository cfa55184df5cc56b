import pytest
from hypothesis import given, strategies as st
from sympy import isprime, prime, primerange

from ogglab.ogg import (
    NEITHER,
    NotApplicable,
    OGG_PRIMES,
    P_SIDE,
    Q_SIDE,
    classify_eisenstein_prime,
    counterexample_candidates,
    eisenstein_primes,
    flagged_primes,
    group_orders,
    kernel_report,
    numerator_m,
    ogg_report,
    predicted_kernel,
    valuation_hypotheses,
)

primes = st.integers(1, 80).map(prime)


def test_numerator_m():
    assert numerator_m(13) == 7
    assert numerator_m(11) == 1
    assert numerator_m(193) == 97


def test_predicted_kernel_examples():
    assert predicted_kernel(5, 13).kernel_shape == (7,)
    k = predicted_kernel(7, 11)
    assert k.M == 1 and k.kernel_shape == (2,)
    k = predicted_kernel(13, 5)
    assert k.M == 1 and k.kernel_shape == (7,)
    assert predicted_kernel(13, 83).kernel_shape == (7, 7)  # 84/12 = 7
    with pytest.raises(NotApplicable):
        predicted_kernel(11, 193)


def test_group_orders_examples():
    g = group_orders(5, 13)
    assert g.cuspidal == (48, 72, 56)
    assert (g.shimura_subgroup, g.phi_q, g.shimura_curve_component_q) == (48, 12, 14)
    assert group_orders(2, 3).cuspidal == (2, 6, 4)
    assert group_orders(13, 5).phi_q == 4 and group_orders(5, 13).phi_q == 12


def test_classify_examples():
    r = classify_eisenstein_prime(5, 13, 7)
    assert r.condition == Q_SIDE
    assert r.ideal_generators == ("T_5 - 1", "T_13 + 1", "E", "7")
    assert r.variant == "m-+" and r.theorem_applies
    assert classify_eisenstein_prime(5, 13, 5).condition == NEITHER
    r = classify_eisenstein_prime(11, 193, 97)
    assert r.condition == Q_SIDE  # 97 | 194, 97 does not divide 10 or 12
    assert flagged_primes(5, 13) == [7]


def test_valuation_examples():
    assert valuation_hypotheses(7, 13, 5, 2).all_hold
    assert not valuation_hypotheses(7, 5, 13, 2).all_hold
    rec = valuation_hypotheses(5, 7, 11, 2)
    assert rec.val1 == 0 and not rec.val1_ok and not rec.all_hold


def test_kernel_report_branches():
    rep = kernel_report(5, 13, 7, True)
    assert rep.status == "conclusion" and "Z/7" in rep.conclusion
    assert any("J^new/J^new[m]" in a for a in rep.assumptions)
    assert kernel_report(5, 13, 7, False).status == "no-certificate"
    assert kernel_report(5, 13, 7, False).conclusion is None
    assert kernel_report(5, 13, 2, True).status == "out-of-scope"


def test_counterexample_candidates():
    assert 701 in [q for q, _ in counterexample_candidates(7, range(690, 710))]
    assert 571 in [q for q, _ in counterexample_candidates(13, range(560, 580))]
    assert counterexample_candidates(7, range(0)) == []
    assert all(isprime(q) and q != 5 for q, _ in counterexample_candidates(5, range(1, 60)))


def test_ogg_report_schema():
    rep = ogg_report(5, 13)
    assert set(rep) == {"p", "q", "M", "kernelShape", "groupOrders", "eisensteinPrimes", "report"}
    assert rep["kernelShape"] == [7]
    assert ogg_report(11, 193)["kernelShape"] is None


@given(st.sampled_from([2, 3, 5]), primes)
def test_kernel_divides_component_order(p, q):
    if q == p:
        return
    k = predicted_kernel(p, q)
    assert (q + 1) % k.order == 0


@given(primes, primes, st.integers(3, 40).map(prime))
def test_conditions_exclusive_and_consistent(p, q, ell):
    if p == q:
        return
    r = classify_eisenstein_prime(p, q, ell)
    assert r.condition in (P_SIDE, Q_SIDE, NEITHER)
    if r.condition != NEITHER:
        orders = group_orders(p, q).cuspidal
        assert sum(1 for n in orders if n % ell == 0) == 1


def test_every_ogg_prime_has_prediction():
    for p in OGG_PRIMES:
        for q in primerange(2, 50):
            if q != p:
                assert predicted_kernel(p, q).applicable
