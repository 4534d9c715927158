"""Smoke tests for the compiled module: known values and error mapping."""

import math

import pytest

import _nsleak as ns


def asymmetric():
    return ns.JointRange(["x", "y"], [("x1", "y1"), ("x2", "y1"), ("x3", "y2")])


def test_ranges():
    jr = asymmetric()
    assert len(jr) == 3
    assert ns.marginal_range(jr, "x") == [("x1",), ("x2",), ("x3",)]
    assert ns.conditional_range(jr, "x", "y", ("y1",)) == [("x1",), ("x2",)]
    assert ns.conditional_range(jr, "x", "y", "y2") == [("x3",)]
    assert not ns.is_unrelated(jr, "x", "y")


def test_entropies():
    jr = asymmetric()
    assert ns.hartley_entropy(jr, "x") == pytest.approx(math.log2(3))
    assert ns.conditional_hartley_entropy(jr, "x", "y") == 1.0
    assert ns.zero_mutual_information(jr, "x", "y") == pytest.approx(math.log2(3) - 1)
    assert ns.hartley_entropy(jr, "x", base="e") == pytest.approx(math.log(3))


def test_leakage_measures():
    jr = asymmetric()
    assert ns.maximal_leakage(jr, "x", "y")["leakage"] == pytest.approx(math.log2(3))
    assert ns.maximal_leakage(jr, "y", "x")["leakage"] == 1.0

    oracle = ns.maximal_leakage_oracle(jr, "x", "y")
    assert oracle["leakage"] == pytest.approx(math.log2(3))
    assert oracle["partitions_checked"] == 5

    blocks = ns.worst_case_attribute(jr, "x", "y")
    report = ns.guessing_leakage(jr, blocks, "x", "y")
    assert report["leakage"] == pytest.approx(math.log2(3))
    assert report["min_posterior_cost"] == 1

    assert ns.is_epsilon_identifiable(jr, blocks, "x", "y", 2.0)
    assert not ns.is_epsilon_identifiable(jr, blocks, "x", "y", 1.0)


def test_overlap_and_maximin():
    jr = ns.JointRange(
        ["x", "y"],
        [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)],
    )
    part = ns.overlap_partition(jr, "x", "y")
    assert part["blocks"] == [[(1,), (2,), (3,)], [(4,)]]
    assert part["block_of"][(4,)] == 1
    assert ns.maximin_information(jr, "x", "y") == 1.0
    assert ns.one_shot_sup_oracle(jr, "x", "y")["value"] == 1.0


def test_vote_table():
    rows = ns.vote_table(5)
    assert [r["l_individual"] for r in rows] == [1, 1, 0, 0, 0]
    assert rows[2]["l_star"] == pytest.approx(2.32192809488736)
    assert all(r["i_star"] == 1.0 for r in rows)

    fixture = ns.majority_vote_fixture(3)
    attr = ns.majority_vote_bit_attribute(3, 1)
    assert ns.guessing_leakage(fixture, attr, "x", "y")["leakage"] == 0.0


def test_stochastic():
    ej = ns.EmpiricalJoint.from_pairs([("a", 0), ("a", 0), ("b", 1)])
    assert ej.total == 3
    assert ej.counts[("a", 0)] == 2
    assert ns.sibson_infinity_leakage(ej) == 1.0

    assert ns.guessing_entropy([0.5, 0.3, 0.2]) == pytest.approx(1.7)
    assert ns.guessing_entropy([0.25] * 4) == 2.5

    mirror = ns.EmpiricalJoint.from_pairs([(x, x) for x in range(4)])
    assert ns.stochastic_guessing_leakage(mirror) == 1.5


def test_conversions():
    l = ns.convert_leakage_maximal(293, 8.13442632022093, "maximal_to_leakage")
    assert l == pytest.approx(4.49431713628116, abs=1e-9)
    back = ns.convert_leakage_maximal(293, l, "leakage_to_maximal")
    assert back == pytest.approx(8.13442632022093, abs=1e-9)
    assert ns.identifiability_bound(4, 1.0) == pytest.approx(math.log2(3))


def test_quantizer():
    assert ns.uniform_quantize(157, 10) == 155.0
    assert ns.uniform_quantize(-3, 2) == -3.0
    assert ns.max_distortion([0, 1, 2, 3], 2) == 1.0


def test_errors_map_to_value_error():
    jr = asymmetric()
    with pytest.raises(ns.SelectorError):
        ns.marginal_range(jr, "nope")
    with pytest.raises(ns.EmptyConditionError):
        ns.conditional_range(jr, "x", "y", ("y9",))
    with pytest.raises(ns.DomainError):
        ns.guessing_entropy([0.5, 0.6])
    with pytest.raises(ns.OracleCapError):
        ns.maximal_leakage_oracle(ns.majority_vote_fixture(4), "x", "y")
    with pytest.raises(ValueError):
        ns.uniform_quantize(1.0, 0.0)
