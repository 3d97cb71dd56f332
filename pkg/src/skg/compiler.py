"""Lowering a resolved knowledge graph to a discrete Bayesian network.

Generated structure, with the deterministic node id scheme:

  entity:<id>          [absent, present]   prior from the behaviour model
  action:<id>@<place>  [no, yes]           parent entity, plus the stimulus
                                           signal node at the same site for
                                           relayed actions
  signal:<class>@<place> [no, yes]         noisy-OR over the actions that
                                           emit that class at that site
  sensor:<id>          classes + [none]    false-alarm row when nothing is
                                           in range; otherwise the strongest
                                           active candidate's detection
                                           distribution

Actions with several matching places expand into one node per site, with
the behaviour probability split by normalized place weights. Output order
is topological and deterministic: ready nodes are emitted entity-first,
then by id.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .errors import CompileError
from .model import Action, Emission, KnowledgeGraph, NO_DETECTION, Place, Sensor
from .network import BayesianNetwork, NodeSpec
from .propagation import (
    detection_distribution,
    false_alarm_distribution,
    received_strength,
    resolve_classifier_class,
)

DETECTION_PRUNE_THRESHOLD = 1e-9
MAX_SENSOR_FAN_IN = 20

_ROLE_RANK = {"entity-present": 0, "action-occurs": 1, "signal-emitted": 2, "sensor-output": 3}


@dataclass(frozen=True)
class ActionSite:
    """An (action, place) pair with its normalized share of the action."""

    action: str
    place: str
    weight: float


@dataclass(frozen=True)
class Candidate:
    """An (emission, site) a sensor could plausibly detect."""

    emission: Emission
    site: ActionSite
    strength: float
    resolved_class: str

    @property
    def node_id(self) -> str:
        return f"signal:{self.emission.signal}@{self.site.place}"


def entity_node_id(entity_id: str) -> str:
    return f"entity:{entity_id}"


def action_node_id(action_id: str, place_id: str) -> str:
    return f"action:{action_id}@{place_id}"


def signal_node_id(signal_class: str, place_id: str) -> str:
    return f"signal:{signal_class}@{place_id}"


def sensor_node_id(sensor_id: str) -> str:
    return f"sensor:{sensor_id}"


def noisy_or(probs: list[float]) -> float:
    """Probability that at least one independent cause triggers."""
    p = 1.0
    for q in probs:
        p *= 1.0 - q
    return 1.0 - p


def enumerate_action_sites(kg: KnowledgeGraph) -> list[ActionSite]:
    """Expand each action over its matching places.

    Weights are normalized per action (weight_i / sum of weights), so only
    ratios matter. Ordered by (action id, place id).
    """
    sites: list[ActionSite] = []
    for action in sorted(kg.actions, key=lambda a: a.id):
        matching = sorted(kg.places_matching(action.location_class), key=lambda p: p.id)
        total = sum(p.weight for p in matching)
        for place in matching:
            sites.append(ActionSite(action.id, place.id, place.weight / total))
    return sites


def candidate_emissions_for_sensor(kg: KnowledgeGraph, sensor: Sensor) -> list[Candidate]:
    """Every (emission, site) this sensor could detect, pruned for range.

    A candidate survives when the emission's kind matches the sensor's
    classifier, the signal resolves into the classifier's vocabulary, and
    the detection ramp at the received strength exceeds the pruning
    threshold.
    """
    classifier = kg.classifier(sensor.classifier)
    sites_by_action: dict[str, list[ActionSite]] = {}
    for site in enumerate_action_sites(kg):
        sites_by_action.setdefault(site.action, []).append(site)

    walls = list(kg.walls)
    out: list[Candidate] = []
    for emission in kg.emissions:  # already sorted by (action, signal)
        signal = kg.signal(emission.signal)
        if signal.kind != classifier.kind:
            continue
        resolved = resolve_classifier_class(signal, classifier, kg)
        if resolved is None:
            continue
        kind = kg.kind(signal.kind)
        curve = classifier.curves.get(resolved)
        if curve is None:
            continue
        for site in sites_by_action.get(emission.action, []):
            strength = received_strength(
                kind, emission.intensity, kg.place(site.place).position,
                sensor.position, walls,
            )
            if curve.p_detect(strength) > DETECTION_PRUNE_THRESHOLD:
                out.append(Candidate(emission, site, strength, resolved))
    return out


def sensor_cpt(
    kg: KnowledgeGraph, sensor: Sensor, candidates: list[Candidate]
) -> tuple[tuple[str, ...], tuple[str, ...], tuple[float, ...]]:
    """(parents, states, flat cpt) for one sensor node.

    Parents are the distinct signal nodes of the candidates. For each joint
    parent assignment: no active parent yields the false-alarm row;
    otherwise the active candidate with maximum strength wins (ties go to
    the lexicographically smallest node id) and contributes its detection
    distribution.
    """
    classifier = kg.classifier(sensor.classifier)
    states = tuple(classifier.classes) + (NO_DETECTION,)
    parents = tuple(sorted({c.node_id for c in candidates}))
    if len(parents) > MAX_SENSOR_FAN_IN:
        raise CompileError(
            f"sensor fan-in too large: {sensor.id!r} has {len(parents)} "
            f"in-range signals (limit {MAX_SENSOR_FAN_IN})"
        )

    fa_row = false_alarm_distribution(classifier)
    cpt: list[float] = []
    for assignment in itertools.product((0, 1), repeat=len(parents)):
        active = {p for p, bit in zip(parents, assignment) if bit == 1}
        live = [c for c in candidates if c.node_id in active]
        if not live:
            row = fa_row
        else:
            best = min(
                live,
                key=lambda c: (-c.strength, c.node_id, c.emission.action, c.emission.signal),
            )
            row = detection_distribution(classifier, best.resolved_class, best.strength)
        cpt.extend(row[s] for s in states)
    return parents, states, tuple(cpt)


def _entity_nodes(kg: KnowledgeGraph) -> list[NodeSpec]:
    return [
        NodeSpec(
            id=entity_node_id(e.id),
            states=("absent", "present"),
            parents=(),
            cpt=(1.0 - e.prior, e.prior),
            role="entity-present",
        )
        for e in kg.entities
    ]


def _action_nodes(
    kg: KnowledgeGraph, sites: list[ActionSite], signal_ids: set[str]
) -> list[NodeSpec]:
    nodes = []
    for site in sites:
        action: Action = kg.action(site.action)
        parents = [entity_node_id(action.actor)]
        stimulus_parent = None
        impossible = False
        if action.stimulus is not None:
            stimulus_parent = signal_node_id(action.stimulus, site.place)
            if stimulus_parent in signal_ids:
                parents.append(stimulus_parent)
            else:
                # Nothing emits the stimulus at this site: the relayed
                # action can never trigger here.
                impossible = True
        p_yes = 0.0 if impossible else action.prob * site.weight
        rows = []
        for assignment in itertools.product((0, 1), repeat=len(parents)):
            p = p_yes if all(bit == 1 for bit in assignment) else 0.0
            rows.extend((1.0 - p, p))
        nodes.append(
            NodeSpec(
                id=action_node_id(site.action, site.place),
                states=("no", "yes"),
                parents=tuple(parents),
                cpt=tuple(rows),
                role="action-occurs",
            )
        )
    return nodes


def _signal_nodes(kg: KnowledgeGraph, sites: list[ActionSite]) -> list[NodeSpec]:
    # (signal class, place) -> emitting action nodes with emission probs.
    emitters: dict[str, dict[str, float]] = {}
    for emission in kg.emissions:
        for site in sites:
            if site.action != emission.action:
                continue
            node_id = signal_node_id(emission.signal, site.place)
            emitters.setdefault(node_id, {})[
                action_node_id(emission.action, site.place)
            ] = emission.prob
    nodes = []
    for node_id in sorted(emitters):
        parent_probs = emitters[node_id]
        parents = tuple(sorted(parent_probs))
        rows = []
        for assignment in itertools.product((0, 1), repeat=len(parents)):
            p = noisy_or(
                [parent_probs[p] for p, bit in zip(parents, assignment) if bit == 1]
            )
            rows.extend((1.0 - p, p))
        nodes.append(
            NodeSpec(
                id=node_id,
                states=("no", "yes"),
                parents=parents,
                cpt=tuple(rows),
                role="signal-emitted",
            )
        )
    return nodes


def _toposort(nodes: list[NodeSpec]) -> list[NodeSpec]:
    """Deterministic Kahn ordering: ready nodes emitted by (role, id)."""
    by_id = {n.id: n for n in nodes}
    children: dict[str, list[str]] = {n.id: [] for n in nodes}
    missing = [
        (n.id, p) for n in nodes for p in n.parents if p not in by_id
    ]
    if missing:
        node_id, parent = missing[0]
        raise CompileError(f"node {node_id!r} references unknown parent {parent!r}")
    indegree = {n.id: len(n.parents) for n in nodes}
    for n in nodes:
        for p in n.parents:
            children[p].append(n.id)
    ready = [
        (_ROLE_RANK.get(n.role, 9), n.id) for n in nodes if indegree[n.id] == 0
    ]
    heapq.heapify(ready)
    ordered: list[NodeSpec] = []
    while ready:
        _, node_id = heapq.heappop(ready)
        node = by_id[node_id]
        ordered.append(node)
        for child in children[node_id]:
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(ready, (_ROLE_RANK.get(by_id[child].role, 9), child))
    if len(ordered) != len(nodes):
        stuck = sorted(set(by_id) - {n.id for n in ordered})
        raise CompileError(f"cyclic stimulus chain involving {', '.join(stuck)}")
    return ordered


def compile_graph(kg: KnowledgeGraph) -> BayesianNetwork:
    """Compile a resolved knowledge graph into a Bayesian network.

    Deterministic: identical graphs produce byte-identical JSON networks.
    """
    sites = enumerate_action_sites(kg)
    signal_nodes = _signal_nodes(kg, sites)
    signal_ids = {n.id for n in signal_nodes}
    nodes = _entity_nodes(kg) + _action_nodes(kg, sites, signal_ids) + signal_nodes
    for sensor in kg.sensors:
        candidates = candidate_emissions_for_sensor(kg, sensor)
        parents, states, cpt = sensor_cpt(kg, sensor, candidates)
        nodes.append(
            NodeSpec(
                id=sensor_node_id(sensor.id),
                states=states,
                parents=parents,
                cpt=cpt,
                role="sensor-output",
            )
        )
    return BayesianNetwork(_toposort(nodes))
