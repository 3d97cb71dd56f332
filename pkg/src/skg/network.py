"""Discrete Bayesian network container and its JSON wire format.

JSON schema (normative, golden-file stable): a top-level `nodes` array in
topological order; each node carries `id`, `states`, `parents` and `cpt`.
The cpt is a flat row-major array: rows are ordered by parent assignments
counted with the FIRST parent most significant, and each row lists
probabilities in `states` order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

ROW_SUM_TOLERANCE = 1e-9

_ROLE_PREFIXES = {
    "entity": "entity-present",
    "action": "action-occurs",
    "signal": "signal-emitted",
    "sensor": "sensor-output",
}


def role_for_node_id(node_id: str) -> str:
    """Role implied by the compiler's id scheme; "" for foreign networks."""
    prefix = node_id.split(":", 1)[0]
    return _ROLE_PREFIXES.get(prefix, "")


@dataclass(frozen=True)
class NodeSpec:
    """One discrete variable: states, ordered parents, flat row-major CPT."""

    id: str
    states: tuple[str, ...]
    parents: tuple[str, ...] = ()
    cpt: tuple[float, ...] = ()
    role: str = ""


class BayesianNetwork:
    """Immutable network; nodes must arrive in a valid topological order."""

    def __init__(self, nodes: list[NodeSpec] | tuple[NodeSpec, ...]):
        self.nodes: tuple[NodeSpec, ...] = tuple(nodes)
        self.index: dict[str, int] = {}
        for pos, node in enumerate(self.nodes):
            if node.id in self.index:
                raise ValueError(f"duplicate node id {node.id!r}")
            self.index[node.id] = pos
        for node in self.nodes:
            self._check_node(node)

    def _check_node(self, node: NodeSpec) -> None:
        if not node.states:
            raise ValueError(f"node {node.id!r} has no states")
        if len(set(node.states)) != len(node.states):
            raise ValueError(f"node {node.id!r} has duplicate states")
        rows = 1
        for parent in node.parents:
            if parent not in self.index:
                raise ValueError(f"node {node.id!r}: unknown parent {parent!r}")
            if self.index[parent] >= self.index[node.id]:
                raise ValueError(
                    f"node {node.id!r}: parent {parent!r} does not precede it"
                )
            rows *= len(self.nodes[self.index[parent]].states)
        if len(node.cpt) != rows * len(node.states):
            raise ValueError(
                f"node {node.id!r}: cpt has {len(node.cpt)} entries, "
                f"expected {rows * len(node.states)}"
            )
        for r in range(rows):
            row = node.cpt[r * len(node.states) : (r + 1) * len(node.states)]
            if any(p < 0 for p in row):
                raise ValueError(f"node {node.id!r}: negative probability in row {r}")
            if not math.isclose(sum(row), 1.0, abs_tol=ROW_SUM_TOLERANCE, rel_tol=0.0):
                raise ValueError(
                    f"node {node.id!r}: cpt row {r} sums to {sum(row)!r}, not 1"
                )

    def node(self, node_id: str) -> NodeSpec:
        return self.nodes[self.index[node_id]]

    def card(self, node_id: str) -> int:
        return len(self.node(node_id).states)

    def state_index(self, node_id: str, state: str) -> int:
        node = self.node(node_id)
        try:
            return node.states.index(state)
        except ValueError:
            raise ValueError(f"node {node_id!r} has no state {state!r}") from None

    def cpt_row(self, node_id: str, parent_states: dict[str, str]) -> tuple[float, ...]:
        """CPT row selected by the given parent states (labels)."""
        node = self.node(node_id)
        row = 0
        for parent in node.parents:
            row = row * self.card(parent) + self.state_index(parent, parent_states[parent])
        k = len(node.states)
        return node.cpt[row * k : (row + 1) * k]

    def node_ids(self) -> tuple[str, ...]:
        return tuple(node.id for node in self.nodes)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BayesianNetwork) and self.nodes == other.nodes

    def __hash__(self) -> int:
        return hash(self.nodes)

    def __repr__(self) -> str:
        return f"BayesianNetwork({len(self.nodes)} nodes)"

    # -- JSON wire format -------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "nodes": [
                {
                    "id": node.id,
                    "states": list(node.states),
                    "parents": list(node.parents),
                    "cpt": list(node.cpt),
                }
                for node in self.nodes
            ]
        }
        return json.dumps(doc, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "BayesianNetwork":
        doc = json.loads(text)
        nodes = [
            NodeSpec(
                id=raw["id"],
                states=tuple(raw["states"]),
                parents=tuple(raw.get("parents", ())),
                cpt=tuple(float(p) for p in raw["cpt"]),
                role=role_for_node_id(raw["id"]),
            )
            for raw in doc["nodes"]
        ]
        return BayesianNetwork(nodes)
