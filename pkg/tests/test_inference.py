"""Inference engine tests.

The two-node chain (P(A=yes)=0.01, P(B=yes|A=yes)=0.9, P(B=yes|A=no)=0.001)
carries hand-computed expectations; random networks cross-check variable
elimination against the brute-force oracle; small networks cross-check the
oracle itself against literal summation of joint_probability.
"""

import itertools
import random

import numpy as np
import pytest

import skg
from skg import (
    BayesianNetwork,
    Evidence,
    InferenceError,
    NodeSpec,
    apply_virtual_evidence,
    enumerate_posterior,
    joint_probability,
    map_assignment,
    ve_posterior,
    virtual_child_id,
)

from conftest import make_chain, random_evidence, random_network

# Bayes by hand: P(A=yes | B=yes) = 0.009 / (0.009 + 0.00099).
CHAIN_POSTERIOR_A_YES = 0.009 / (0.009 + 0.99 * 0.001)


class TestJointProbability:
    def test_product_of_two_entries(self):
        bn = make_chain()
        assert joint_probability(bn, {"A": "yes", "B": "yes"}) == pytest.approx(
            0.009, abs=1e-15
        )

    def test_hand_product(self):
        bn = make_chain()
        assert joint_probability(bn, {"A": "no", "B": "yes"}) == pytest.approx(
            0.99 * 0.001, abs=1e-15
        )

    def test_deterministic_zero_annihilates(self):
        bn = BayesianNetwork(
            [
                NodeSpec(id="A", states=("no", "yes"), cpt=(1.0, 0.0)),
                NodeSpec(
                    id="B", states=("no", "yes"), parents=("A",), cpt=(0.5, 0.5, 0.5, 0.5)
                ),
            ]
        )
        assert joint_probability(bn, {"A": "yes", "B": "no"}) == 0.0

    def test_incomplete_assignment(self):
        with pytest.raises(InferenceError, match="missing"):
            joint_probability(make_chain(), {"A": "yes"})

    def test_sums_to_one_over_all_assignments(self):
        rng = random.Random(7)
        for _ in range(10):
            bn = random_network(rng, max_nodes=6, max_card=3)
            states = [bn.node(i).states for i in bn.node_ids()]
            total = sum(
                joint_probability(bn, dict(zip(bn.node_ids(), combo)))
                for combo in itertools.product(*states)
            )
            assert total == pytest.approx(1.0, abs=1e-9)


class TestEnumeratePosterior:
    def test_chain_bayes_rule(self):
        bn = make_chain()
        post = enumerate_posterior(bn, Evidence(hard={"B": "yes"}), ["A"])
        assert post.marginal("A")["yes"] == pytest.approx(
            CHAIN_POSTERIOR_A_YES, abs=1e-12
        )

    def test_no_evidence_gives_prior(self):
        bn = make_chain()
        post = enumerate_posterior(bn, Evidence(), ["A"])
        assert post.marginal("A") == {
            "no": pytest.approx(0.99),
            "yes": pytest.approx(0.01),
        }

    def test_impossible_evidence(self):
        bn = BayesianNetwork(
            [
                NodeSpec(id="A", states=("no", "yes"), cpt=(1.0, 0.0)),
                NodeSpec(
                    id="B",
                    states=("no", "yes"),
                    parents=("A",),
                    cpt=(1.0, 0.0, 0.0, 1.0),
                ),
            ]
        )
        with pytest.raises(InferenceError, match="impossible evidence"):
            enumerate_posterior(bn, Evidence(hard={"B": "yes"}), ["A"])

    def test_matches_literal_summation(self):
        # The numpy full-joint oracle against the most literal possible
        # computation: loop every assignment, call joint_probability.
        rng = random.Random(11)
        for _ in range(5):
            bn = random_network(rng, max_nodes=5, max_card=3)
            evidence = random_evidence(rng, bn)
            query = [bn.node_ids()[0]]
            post = enumerate_posterior(bn, evidence, query)
            states = [bn.node(i).states for i in bn.node_ids()]
            weights = {s: 0.0 for s in bn.node(query[0]).states}
            for combo in itertools.product(*states):
                assignment = dict(zip(bn.node_ids(), combo))
                if any(assignment[k] != v for k, v in evidence.hard.items()):
                    continue
                w = joint_probability(bn, assignment)
                for node_id, vec in evidence.virtual.items():
                    w *= vec[bn.state_index(node_id, assignment[node_id])]
                weights[assignment[query[0]]] += w
            total = sum(weights.values())
            for state, w in weights.items():
                assert post.marginal(query[0])[state] == pytest.approx(
                    w / total, abs=1e-12
                )

    def test_state_space_guard(self):
        nodes = [
            NodeSpec(id=f"n{i:02d}", states=("a", "b"), cpt=(0.5, 0.5))
            for i in range(23)
        ]
        bn = BayesianNetwork(nodes)
        with pytest.raises(InferenceError, match="enumeration limit"):
            enumerate_posterior(bn, Evidence(), ["n00"])


class TestVariableElimination:
    def test_agrees_with_oracle_on_fixture(self, sound_bn):
        evidence = Evidence(hard={"sensor:mic1": "glass_sound"})
        query = ["entity:Attacker"]
        ve = ve_posterior(sound_bn, evidence, query)
        brute = enumerate_posterior(sound_bn, evidence, query)
        assert np.allclose(ve.table, brute.table, atol=1e-9)

    def test_query_of_evidence_node_is_point_mass(self):
        bn = make_chain()
        post = ve_posterior(bn, Evidence(hard={"B": "yes"}), ["B"])
        assert post.marginal("B") == {"no": 0.0, "yes": 1.0}

    def test_untouched_subgraph_keeps_its_prior(self):
        chain = make_chain()
        lone = NodeSpec(id="Z", states=("u", "v", "w"), cpt=(0.2, 0.3, 0.5))
        bn = BayesianNetwork(list(chain.nodes) + [lone])
        post = ve_posterior(bn, Evidence(hard={"B": "yes"}), ["Z"])
        assert post.marginal("Z") == {
            "u": pytest.approx(0.2),
            "v": pytest.approx(0.3),
            "w": pytest.approx(0.5),
        }

    def test_joint_query(self):
        bn = make_chain()
        post = ve_posterior(bn, Evidence(), ["A", "B"])
        assert post.probability({"A": "yes", "B": "yes"}) == pytest.approx(0.009)
        assert post.probability({"A": "no", "B": "yes"}) == pytest.approx(0.00099)

    def test_hundred_random_networks(self):
        rng = random.Random(2024)
        for _ in range(100):
            bn = random_network(rng)
            evidence = random_evidence(rng, bn)
            free = [i for i in bn.node_ids() if i not in evidence.hard]
            query = rng.sample(free or list(bn.node_ids()), min(2, len(free) or 1))
            ve = ve_posterior(bn, evidence, query)
            brute = enumerate_posterior(bn, evidence, query)
            assert ve.nodes == brute.nodes
            assert np.abs(ve.table - brute.table).max() < 1e-9

    def test_posterior_is_distribution(self, building_bn):
        post = ve_posterior(
            building_bn,
            Evidence(hard={"sensor:mic1": "glass_sound"}),
            ["entity:Attacker", "entity:Employee"],
        )
        assert float(post.table.sum()) == pytest.approx(1.0, abs=1e-9)
        assert (post.table >= 0).all() and (post.table <= 1).all()

    def test_impossible_evidence(self):
        bn = BayesianNetwork(
            [
                NodeSpec(id="A", states=("no", "yes"), cpt=(1.0, 0.0)),
                NodeSpec(
                    id="B",
                    states=("no", "yes"),
                    parents=("A",),
                    cpt=(1.0, 0.0, 0.0, 1.0),
                ),
            ]
        )
        with pytest.raises(InferenceError, match="impossible evidence"):
            ve_posterior(bn, Evidence(hard={"B": "yes"}), ["A"])


class TestEvidenceValidation:
    def test_unknown_node(self):
        with pytest.raises(InferenceError, match="unknown node"):
            ve_posterior(make_chain(), Evidence(hard={"X": "yes"}), ["A"])

    def test_unknown_state(self):
        with pytest.raises(InferenceError, match="no state"):
            ve_posterior(make_chain(), Evidence(hard={"B": "maybe"}), ["A"])

    def test_hard_and_virtual_disjoint(self):
        evidence = Evidence(hard={"B": "yes"}, virtual={"B": (0.5, 0.5)})
        with pytest.raises(InferenceError, match="both hard and virtual"):
            ve_posterior(make_chain(), evidence, ["A"])

    def test_virtual_dimension(self):
        evidence = Evidence(virtual={"B": (0.5, 0.5, 0.5)})
        with pytest.raises(InferenceError, match="entries"):
            ve_posterior(make_chain(), evidence, ["A"])

    def test_virtual_all_zero(self):
        evidence = Evidence(virtual={"B": (0.0, 0.0)})
        with pytest.raises(InferenceError, match="all zero"):
            ve_posterior(make_chain(), evidence, ["A"])


class TestMapAssignment:
    def test_chain_map(self):
        bn = make_chain()
        assignment, p = map_assignment(bn, Evidence(hard={"B": "yes"}), ["A"])
        assert assignment == {"A": "yes"}
        assert p == pytest.approx(CHAIN_POSTERIOR_A_YES, abs=1e-12)

    def test_prior_argmax(self):
        bn = make_chain()
        assignment, p = map_assignment(bn, Evidence(), ["A"])
        assert assignment == {"A": "no"}
        assert p == pytest.approx(0.99)

    def test_exact_tie_takes_lexicographically_first_state(self):
        bn = BayesianNetwork(
            [NodeSpec(id="A", states=("yes", "no"), cpt=(0.5, 0.5))]
        )
        assignment, p = map_assignment(bn, Evidence(), ["A"])
        assert assignment == {"A": "no"}  # label order, not state order
        assert p == 0.5

    def test_probability_matches_oracle_at_assignment(self):
        rng = random.Random(5)
        for _ in range(10):
            bn = random_network(rng, max_nodes=7)
            evidence = random_evidence(rng, bn)
            over = list(bn.node_ids())[:3]
            assignment, p = map_assignment(bn, evidence, over)
            brute = enumerate_posterior(bn, evidence, over)
            assert p == pytest.approx(brute.probability(assignment), abs=1e-12)

    def test_node_limit(self):
        nodes = [
            NodeSpec(id=f"n{i:02d}", states=("a", "b"), cpt=(0.5, 0.5))
            for i in range(21)
        ]
        bn = BayesianNetwork(nodes)
        with pytest.raises(InferenceError, match="limit"):
            map_assignment(bn, Evidence(), bn.node_ids())


class TestVirtualEvidence:
    def test_uniform_vector_changes_nothing(self):
        bn = make_chain()
        bn2 = apply_virtual_evidence(bn, "B", [0.5, 0.5])
        child = virtual_child_id(bn, "B")
        base = ve_posterior(bn, Evidence(), ["A"])
        with_virtual = ve_posterior(bn2, Evidence(hard={child: "on"}), ["A"])
        assert np.abs(base.table - with_virtual.table).max() < 1e-12

    def test_one_hot_vector_equals_hard_evidence(self):
        bn = make_chain()
        bn2 = apply_virtual_evidence(bn, "B", [0.0, 1.0])
        child = virtual_child_id(bn, "B")
        soft = ve_posterior(bn2, Evidence(hard={child: "on"}), ["A"])
        hard = ve_posterior(bn, Evidence(hard={"B": "yes"}), ["A"])
        assert np.abs(soft.table - hard.table).max() < 1e-12

    def test_weighted_bayes_by_hand(self):
        # Likelihood (0.97 for no, 0.03 for yes) on B:
        # P(A=yes | v) = 0.01*(0.1*0.97 + 0.9*0.03)
        #              / (0.01*(...) + 0.99*(0.999*0.97 + 0.001*0.03))
        bn = make_chain()
        expected_yes = (0.01 * (0.1 * 0.97 + 0.9 * 0.03)) / (
            0.01 * (0.1 * 0.97 + 0.9 * 0.03)
            + 0.99 * (0.999 * 0.97 + 0.001 * 0.03)
        )
        post = ve_posterior(bn, Evidence(virtual={"B": (0.97, 0.03)}), ["A"])
        assert post.marginal("A")["yes"] == pytest.approx(expected_yes, abs=1e-12)
        brute = enumerate_posterior(bn, Evidence(virtual={"B": (0.97, 0.03)}), ["A"])
        assert np.abs(post.table - brute.table).max() < 1e-12

    def test_child_construction_route_matches_inline_route(self):
        bn = make_chain()
        vec = [0.2, 0.7]
        bn2 = apply_virtual_evidence(bn, "B", vec)
        child = virtual_child_id(bn, "B")
        constructed = ve_posterior(bn2, Evidence(hard={child: "on"}), ["A"])
        inline = ve_posterior(bn, Evidence(virtual={"B": tuple(vec)}), ["A"])
        assert np.abs(constructed.table - inline.table).max() < 1e-12

    def test_original_network_unchanged(self):
        bn = make_chain()
        before = bn.to_json()
        apply_virtual_evidence(bn, "B", [0.5, 0.5])
        assert bn.to_json() == before

    def test_repeated_children_get_distinct_ids(self):
        bn = make_chain()
        bn2 = apply_virtual_evidence(bn, "B", [0.5, 0.5])
        bn3 = apply_virtual_evidence(bn2, "B", [0.4, 0.6])
        names = [n.id for n in bn3.nodes]
        assert names.count("virtual:B") == 1
        assert "virtual:B#2" in names

    def test_rejects_bad_vectors(self):
        bn = make_chain()
        with pytest.raises(InferenceError):
            apply_virtual_evidence(bn, "B", [0.5])
        with pytest.raises(InferenceError):
            apply_virtual_evidence(bn, "B", [0.0, 0.0])
        with pytest.raises(InferenceError):
            apply_virtual_evidence(bn, "B", [-0.1, 0.5])
