"""Posterior reports over observation windows, and ranked explanations.

All probabilities come straight from the inference engine; this module
only assembles them. The alarm decision is a pure threshold on the
designated entities' presence posteriors, and the location distribution
is the posterior of each designated entity's action-site nodes being
active, renormalized over those sites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .compiler import (
    action_node_id,
    entity_node_id,
    enumerate_action_sites,
    sensor_node_id,
)
from .errors import InferenceError
from .inference import Evidence, ve_posterior
from .model import KnowledgeGraph
from .network import BayesianNetwork
from .sampling import ObservationRecord

DEFAULT_THRESHOLD = 0.5

# Window id used when an observation file contains no rows at all: the
# report still carries one unobserved window so posteriors equal priors.
EMPTY_WINDOW_ID = "-"


@dataclass(frozen=True)
class WindowReport:
    window_id: str
    posteriors: dict[str, float]  # entity id -> P(present | evidence)
    location: dict[str, float]  # "action@place" -> share of attack mass
    alarm: bool


@dataclass(frozen=True)
class PosteriorReport:
    entities: tuple[str, ...]
    threshold: float
    windows: tuple[WindowReport, ...]

    def any_alarm(self) -> bool:
        return any(w.alarm for w in self.windows)

    def to_json(self) -> str:
        doc = {
            "entities": list(self.entities),
            "threshold": self.threshold,
            "windows": [
                {
                    "window_id": w.window_id,
                    "posteriors": w.posteriors,
                    "location": w.location,
                    "alarm": w.alarm,
                }
                for w in self.windows
            ],
        }
        return json.dumps(doc, indent=2) + "\n"

    def render_text(self) -> str:
        lines = []
        for w in self.windows:
            posts = "  ".join(
                f"P({e} present)={p:.6f}" for e, p in w.posteriors.items()
            )
            lines.append(
                f"window {w.window_id}: {posts}  alarm={'YES' if w.alarm else 'no'}"
            )
            for site, p in w.location.items():
                lines.append(f"  location {site}: {p:.6f}")
        return "\n".join(lines) + "\n"


def evidence_windows(
    bn: BayesianNetwork,
    observations: list[ObservationRecord],
    virtual: dict[str, list[float]] | None = None,
) -> list[tuple[str, Evidence]]:
    """Group observation rows into per-window Evidence, sorted by window id.

    A missing sensor row means "unobserved"; an explicit `none` row is
    informative negative evidence. The virtual mapping (sensor id ->
    likelihood vector in state order) applies to every window.
    """
    by_window: dict[str, dict[str, str]] = {}
    for row_no, rec in enumerate(observations, start=1):
        node_id = sensor_node_id(rec.sensor_id)
        if node_id not in bn.index:
            raise InferenceError(
                f"observation row {row_no}: unknown sensor {rec.sensor_id!r}"
            )
        if rec.observed_class not in bn.node(node_id).states:
            raise InferenceError(
                f"observation row {row_no}: sensor {rec.sensor_id!r} "
                f"has no class {rec.observed_class!r}"
            )
        window = by_window.setdefault(rec.window_id, {})
        if node_id in window:
            raise InferenceError(
                f"observation row {row_no}: duplicate observation for "
                f"{rec.sensor_id!r} in window {rec.window_id!r}"
            )
        window[node_id] = rec.observed_class

    virtual_map: dict[str, tuple[float, ...]] = {}
    for sensor_id, vec in (virtual or {}).items():
        node_id = sensor_node_id(sensor_id)
        if node_id not in bn.index:
            raise InferenceError(f"virtual evidence for unknown sensor {sensor_id!r}")
        virtual_map[node_id] = tuple(float(v) for v in vec)

    if not by_window:
        by_window[EMPTY_WINDOW_ID] = {}

    out = []
    for window_id in sorted(by_window):
        hard = by_window[window_id]
        clash = set(hard) & set(virtual_map)
        if clash:
            raise InferenceError(
                f"window {window_id!r}: sensors with both observed class and "
                f"virtual evidence: {sorted(clash)}"
            )
        out.append((window_id, Evidence(hard=hard, virtual=dict(virtual_map))))
    return out


def _designated_sites(kg: KnowledgeGraph, entities: tuple[str, ...]) -> list[str]:
    sites = []
    for site in enumerate_action_sites(kg):
        if kg.action(site.action).actor in entities:
            sites.append(action_node_id(site.action, site.place))
    return sites


def build_report(
    kg: KnowledgeGraph,
    bn: BayesianNetwork,
    windows: list[tuple[str, Evidence]],
    entities: tuple[str, ...],
    threshold: float = DEFAULT_THRESHOLD,
) -> PosteriorReport:
    """Per-window presence posteriors, location distribution and alarm."""
    for entity_id in entities:
        if entity_node_id(entity_id) not in bn.index:
            raise InferenceError(f"unknown entity {entity_id!r}")
    site_nodes = _designated_sites(kg, entities)

    reports = []
    for window_id, evidence in windows:
        posteriors = {}
        for entity_id in entities:
            posterior = ve_posterior(bn, evidence, [entity_node_id(entity_id)])
            posteriors[entity_id] = posterior.marginal(entity_node_id(entity_id))[
                "present"
            ]
        site_mass = {}
        for node_id in site_nodes:
            posterior = ve_posterior(bn, evidence, [node_id])
            site_mass[node_id.split(":", 1)[1]] = posterior.marginal(node_id)["yes"]
        total = sum(site_mass.values())
        if total > 0:
            location = {site: p / total for site, p in site_mass.items()}
        else:
            location = {site: 0.0 for site in site_mass}
        alarm = max(posteriors.values()) > threshold
        reports.append(WindowReport(window_id, posteriors, location, alarm))
    return PosteriorReport(entities, threshold, tuple(reports))


def explain(
    bn: BayesianNetwork, evidence: Evidence, top: int = 3
) -> list[tuple[dict[str, str], float]]:
    """Top-k joint cause assignments (entities and action sites) by
    posterior probability, descending; ties in lexicographic state order."""
    cause_nodes = [
        n.id for n in bn.nodes if n.role in ("entity-present", "action-occurs")
    ]
    if not cause_nodes:
        raise InferenceError("network has no cause nodes to explain")
    if len(cause_nodes) > 20:
        raise InferenceError(
            f"explain over {len(cause_nodes)} cause nodes exceeds the limit of 20"
        )
    posterior = ve_posterior(bn, evidence, cause_nodes)
    ranked = sorted(
        posterior.items(),
        key=lambda item: (-item[1], tuple(item[0][n] for n in cause_nodes)),
    )
    return [(assignment, p) for assignment, p in ranked[: max(top, 0)]]
