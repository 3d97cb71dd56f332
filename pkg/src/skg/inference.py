"""Exact inference over discrete Bayesian networks.

Two independent routes compute posteriors:

* enumerate_posterior materializes the full joint table (brute force,
  guarded at 2^22 states) and sums it down to the query.
* ve_posterior runs variable elimination with a min-degree ordering
  (ties broken by node id), never touching the full joint.

Both accept hard evidence (observed state labels) and virtual evidence
(a likelihood vector per node, for soft classifier scores). Hard and
virtual evidence enter as extra indicator/likelihood factors, so querying
an evidence node simply returns a point mass on the observed state.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InferenceError
from .network import BayesianNetwork, NodeSpec

ENUMERATION_STATE_LIMIT = 2**22
MAP_NODE_LIMIT = 20
_Z_FLOOR = 0.0  # normalizer must be strictly positive


@dataclass(frozen=True)
class Evidence:
    """Observed states (hard) and likelihood vectors (virtual) per node."""

    hard: Mapping[str, str] = dataclass_field(default_factory=dict)
    virtual: Mapping[str, tuple[float, ...]] = dataclass_field(default_factory=dict)

    def check_against(self, bn: BayesianNetwork) -> None:
        overlap = set(self.hard) & set(self.virtual)
        if overlap:
            raise InferenceError(
                f"nodes with both hard and virtual evidence: {sorted(overlap)}"
            )
        for node_id, state in self.hard.items():
            if node_id not in bn.index:
                raise InferenceError(f"evidence on unknown node {node_id!r}")
            if state not in bn.node(node_id).states:
                raise InferenceError(
                    f"node {node_id!r} has no state {state!r} "
                    f"(states: {', '.join(bn.node(node_id).states)})"
                )
        for node_id, vec in self.virtual.items():
            if node_id not in bn.index:
                raise InferenceError(f"virtual evidence on unknown node {node_id!r}")
            if len(vec) != bn.card(node_id):
                raise InferenceError(
                    f"virtual evidence on {node_id!r} has {len(vec)} entries, "
                    f"expected {bn.card(node_id)}"
                )
            if any(v < 0 for v in vec):
                raise InferenceError(f"virtual evidence on {node_id!r} is negative")
            if not any(v > 0 for v in vec):
                raise InferenceError(f"virtual evidence on {node_id!r} is all zero")


@dataclass(frozen=True, eq=False)
class Factor:
    """A nonnegative table over an ordered scope of nodes (row-major)."""

    scope: tuple[str, ...]
    table: np.ndarray

    def __post_init__(self):
        if self.table.ndim != len(self.scope):
            raise ValueError("factor table rank does not match scope")


def factor_product(a: Factor, b: Factor) -> Factor:
    scope = list(a.scope) + [v for v in b.scope if v not in a.scope]
    pos = {v: i for i, v in enumerate(scope)}

    def aligned(f: Factor) -> np.ndarray:
        order = sorted(range(len(f.scope)), key=lambda i: pos[f.scope[i]])
        arr = f.table.transpose(order)
        shape = [1] * len(scope)
        for i in order:
            shape[pos[f.scope[i]]] = f.table.shape[i]
        return arr.reshape(shape)

    scope.sort(key=lambda v: pos[v])  # already in pos order; keep explicit
    return Factor(tuple(scope), aligned(a) * aligned(b))


def factor_sum_out(f: Factor, var: str) -> Factor:
    axis = f.scope.index(var)
    scope = f.scope[:axis] + f.scope[axis + 1 :]
    return Factor(scope, f.table.sum(axis=axis))


@dataclass(frozen=True, eq=False)
class Posterior:
    """Normalized joint distribution over the queried nodes."""

    nodes: tuple[str, ...]
    states: tuple[tuple[str, ...], ...]
    table: np.ndarray  # axes follow `nodes`

    def marginal(self, node_id: str) -> dict[str, float]:
        axis = self.nodes.index(node_id)
        other = tuple(i for i in range(len(self.nodes)) if i != axis)
        values = self.table.sum(axis=other) if other else self.table
        return {s: float(p) for s, p in zip(self.states[axis], values)}

    def probability(self, assignment: Mapping[str, str]) -> float:
        idx = tuple(
            self.states[i].index(assignment[node]) for i, node in enumerate(self.nodes)
        )
        return float(self.table[idx])

    def items(self) -> Iterable[tuple[dict[str, str], float]]:
        """(assignment, probability) pairs in row-major state order."""
        for flat_index, p in enumerate(self.table.reshape(-1)):
            idx = np.unravel_index(flat_index, self.table.shape)
            yield (
                {node: self.states[i][j] for i, (node, j) in enumerate(zip(self.nodes, idx))},
                float(p),
            )


def _check_query(bn: BayesianNetwork, query: Sequence[str]) -> tuple[str, ...]:
    if not query:
        raise InferenceError("query must name at least one node")
    if len(set(query)) != len(query):
        raise InferenceError("query nodes must be distinct")
    for node_id in query:
        if node_id not in bn.index:
            raise InferenceError(f"query of unknown node {node_id!r}")
    return tuple(query)


def _node_cpt_array(bn: BayesianNetwork, node: NodeSpec) -> Factor:
    shape = tuple(bn.card(p) for p in node.parents) + (len(node.states),)
    table = np.asarray(node.cpt, dtype=float).reshape(shape)
    return Factor(node.parents + (node.id,), table)


def _evidence_factors(bn: BayesianNetwork, evidence: Evidence) -> list[Factor]:
    factors = []
    for node_id, state in evidence.hard.items():
        vec = np.zeros(bn.card(node_id))
        vec[bn.state_index(node_id, state)] = 1.0
        factors.append(Factor((node_id,), vec))
    for node_id, vec in evidence.virtual.items():
        factors.append(Factor((node_id,), np.asarray(vec, dtype=float)))
    return factors


def joint_probability(bn: BayesianNetwork, assignment: Mapping[str, str]) -> float:
    """Probability of one full assignment: product of selected CPT entries."""
    missing = [n.id for n in bn.nodes if n.id not in assignment]
    if missing:
        raise InferenceError(f"assignment is missing nodes: {missing}")
    p = 1.0
    for node in bn.nodes:
        row = bn.cpt_row(node.id, {par: assignment[par] for par in node.parents})
        p *= row[bn.state_index(node.id, assignment[node.id])]
    return p


def _full_joint(bn: BayesianNetwork, evidence: Evidence) -> np.ndarray:
    size = 1
    for node in bn.nodes:
        size *= len(node.states)
        if size > ENUMERATION_STATE_LIMIT:
            raise InferenceError(
                f"state space exceeds enumeration limit 2^22 ({len(bn.nodes)} nodes)"
            )
    shape = tuple(len(node.states) for node in bn.nodes)
    joint = np.ones(shape)
    n = len(bn.nodes)
    for i, node in enumerate(bn.nodes):
        axes = [bn.index[p] for p in node.parents] + [i]
        arr = np.asarray(node.cpt, dtype=float).reshape(
            tuple(shape[a] for a in axes)
        )
        order = sorted(range(len(axes)), key=lambda k: axes[k])
        arr = arr.transpose(order)
        broadcast = [1] * n
        for a in axes:
            broadcast[a] = shape[a]
        joint *= arr.reshape(broadcast)
    for f in _evidence_factors(bn, evidence):
        axis = bn.index[f.scope[0]]
        broadcast = [1] * n
        broadcast[axis] = shape[axis]
        joint *= f.table.reshape(broadcast)
    return joint


def enumerate_posterior(
    bn: BayesianNetwork, evidence: Evidence, query: Sequence[str]
) -> Posterior:
    """Brute-force posterior: sum the full joint over non-query nodes.

    Guarded to networks of at most 2^22 joint states. Serves as the oracle
    for variable elimination.
    """
    query = _check_query(bn, query)
    evidence.check_against(bn)
    joint = _full_joint(bn, evidence)
    query_axes = [bn.index[q] for q in query]
    other = tuple(i for i in range(len(bn.nodes)) if i not in query_axes)
    marg = joint.sum(axis=other) if other else joint
    # Axes of marg follow network order; reorder to the query order.
    current = sorted(query_axes)
    perm = [current.index(a) for a in query_axes]
    marg = marg.transpose(perm)
    z = float(marg.sum())
    if z <= _Z_FLOOR:
        raise InferenceError("impossible evidence (zero probability)")
    return Posterior(
        nodes=query,
        states=tuple(bn.node(q).states for q in query),
        table=marg / z,
    )


def _min_degree_order(factors: list[Factor], eliminate: set[str]) -> list[str]:
    """Greedy min-degree elimination order; ties broken by node id."""
    scopes = [set(f.scope) for f in factors]
    order = []
    remaining = set(eliminate)
    while remaining:
        degree: dict[str, set[str]] = {v: set() for v in remaining}
        for scope in scopes:
            for v in scope:
                if v in degree:
                    degree[v] |= scope - {v}
        var = min(remaining, key=lambda v: (len(degree[v]), v))
        order.append(var)
        remaining.discard(var)
        merged: set[str] = set()
        new_scopes = []
        for scope in scopes:
            if var in scope:
                merged |= scope - {var}
            else:
                new_scopes.append(scope)
        new_scopes.append(merged)
        scopes = new_scopes
    return order


def ve_posterior(
    bn: BayesianNetwork, evidence: Evidence, query: Sequence[str]
) -> Posterior:
    """Posterior over `query` by variable elimination.

    Equal to enumerate_posterior within 1e-9 wherever the oracle is
    feasible; does not materialize the full joint.
    """
    query = _check_query(bn, query)
    evidence.check_against(bn)
    factors = [_node_cpt_array(bn, node) for node in bn.nodes]
    factors.extend(_evidence_factors(bn, evidence))

    eliminate = set(bn.index) - set(query)
    for var in _min_degree_order(factors, eliminate):
        involved = [f for f in factors if var in f.scope]
        if not involved:
            continue
        product = involved[0]
        for f in involved[1:]:
            product = factor_product(product, f)
        factors = [f for f in factors if var not in f.scope]
        factors.append(factor_sum_out(product, var))

    result = factors[0]
    for f in factors[1:]:
        result = factor_product(result, f)
    # Scalars from fully-summed factors leave rank-0 residue only if the
    # query were empty, which _check_query forbids.
    order = [result.scope.index(q) for q in query]
    table = result.table.transpose(order)
    z = float(table.sum())
    if z <= _Z_FLOOR:
        raise InferenceError("impossible evidence (zero probability)")
    return Posterior(
        nodes=query,
        states=tuple(bn.node(q).states for q in query),
        table=table / z,
    )


def map_assignment(
    bn: BayesianNetwork, evidence: Evidence, over: Sequence[str]
) -> tuple[dict[str, str], float]:
    """Most probable joint state of `over` given the evidence.

    Ties resolve to the lexicographically smallest state-label vector. The
    returned probability is the normalized posterior of that assignment.
    """
    over = _check_query(bn, over)
    if len(over) > MAP_NODE_LIMIT:
        raise InferenceError(
            f"MAP over {len(over)} nodes exceeds the limit of {MAP_NODE_LIMIT}"
        )
    posterior = ve_posterior(bn, evidence, over)
    best = float(posterior.table.max())
    candidates = []
    for flat_index in np.flatnonzero(posterior.table.reshape(-1) == best):
        idx = np.unravel_index(int(flat_index), posterior.table.shape)
        labels = tuple(posterior.states[i][j] for i, j in enumerate(idx))
        candidates.append(labels)
    winner = min(candidates)
    return dict(zip(over, winner)), best


def virtual_child_id(bn: BayesianNetwork, node_id: str) -> str:
    """Id the next virtual-evidence child of `node_id` will receive."""
    base = f"virtual:{node_id}"
    if base not in bn.index:
        return base
    k = 2
    while f"{base}#{k}" in bn.index:
        k += 1
    return f"{base}#{k}"


def apply_virtual_evidence(
    bn: BayesianNetwork, node_id: str, likelihood: Sequence[float]
) -> BayesianNetwork:
    """Materialize virtual evidence as an observed binary child.

    Appends a child with states (off, on) and P(on | state i) proportional
    to likelihood[i], scaled so the maximum is 1. Condition on the child
    being "on" (see virtual_child_id) to apply the evidence; the original
    network is unchanged.
    """
    if node_id not in bn.index:
        raise InferenceError(f"virtual evidence on unknown node {node_id!r}")
    vec = [float(v) for v in likelihood]
    if len(vec) != bn.card(node_id):
        raise InferenceError(
            f"virtual evidence on {node_id!r} has {len(vec)} entries, "
            f"expected {bn.card(node_id)}"
        )
    if any(v < 0 for v in vec):
        raise InferenceError(f"virtual evidence on {node_id!r} is negative")
    top = max(vec)
    if top <= 0:
        raise InferenceError(f"virtual evidence on {node_id!r} is all zero")
    scaled = [v / top for v in vec]
    cpt = []
    for v in scaled:
        cpt.extend((1.0 - v, v))
    child = NodeSpec(
        id=virtual_child_id(bn, node_id),
        states=("off", "on"),
        parents=(node_id,),
        cpt=tuple(cpt),
        role="",
    )
    return BayesianNetwork(bn.nodes + (child,))
