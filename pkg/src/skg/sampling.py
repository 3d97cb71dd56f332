"""Forward simulation and calibration checking.

Sampling uses SplitMix64 as the normative generator so datasets reproduce
bit-for-bit across runs, platforms and implementations. Each time window
draws one independent world from its own stream, seeded with
(seed XOR window-index); output ordering is by window index no matter how
trials are scheduled.

CSV formats (UTF-8, LF):
  observations: sensor_id,window_id,observed_class
  ground truth: window_id,node_id,state
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .compiler import compile_graph
from .errors import InferenceError
from .inference import Evidence, ve_posterior
from .model import KnowledgeGraph
from .network import BayesianNetwork

_MASK64 = (1 << 64) - 1

OBSERVATIONS_HEADER = ("sensor_id", "window_id", "observed_class")
GROUND_TRUTH_HEADER = ("window_id", "node_id", "state")

CALIBRATION_Z_LIMIT = 3.0


class SplitMix64:
    """The reference SplitMix64 sequence; normative for reproducibility."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 bits of resolution."""
        return (self.next_u64() >> 11) * 2.0**-53


@dataclass(frozen=True)
class ObservationRecord:
    sensor_id: str
    window_id: str
    observed_class: str


@dataclass(frozen=True)
class GroundTruthRecord:
    """True entity/action/signal states behind one window's observations."""

    window_id: str
    assignment: tuple[tuple[str, str], ...]  # (node id, state), in node order


class Dataset(NamedTuple):
    observations: tuple[ObservationRecord, ...]
    ground_truth: tuple[GroundTruthRecord, ...]


def ancestral_sample(bn: BayesianNetwork, rng: SplitMix64) -> dict[str, str]:
    """Draw one full assignment, each node from its CPT row in topological
    order. The same generator state always yields the same assignment."""
    assignment: dict[str, str] = {}
    for node in bn.nodes:
        row = bn.cpt_row(node.id, {p: assignment[p] for p in node.parents})
        u = rng.next_float()
        cumulative = 0.0
        chosen = len(node.states) - 1
        for i, p in enumerate(row):
            cumulative += p
            if u < cumulative:
                chosen = i
                break
        assignment[node.id] = node.states[chosen]
    return assignment


def simulate_dataset(kg: KnowledgeGraph, trials: int, seed: int) -> Dataset:
    """Compile the graph and draw `trials` independent windows w0..w{n-1}."""
    bn = compile_graph(kg)
    sensor_nodes = [n for n in bn.nodes if n.role == "sensor-output"]
    truth_nodes = [
        n for n in bn.nodes
        if n.role in ("entity-present", "action-occurs", "signal-emitted")
    ]
    observations: list[ObservationRecord] = []
    ground_truth: list[GroundTruthRecord] = []
    for i in range(trials):
        rng = SplitMix64(seed ^ i)
        assignment = ancestral_sample(bn, rng)
        window_id = f"w{i}"
        for node in sensor_nodes:
            sensor_id = node.id.split(":", 1)[1]
            observations.append(
                ObservationRecord(sensor_id, window_id, assignment[node.id])
            )
        ground_truth.append(
            GroundTruthRecord(
                window_id,
                tuple((n.id, assignment[n.id]) for n in truth_nodes),
            )
        )
    return Dataset(tuple(observations), tuple(ground_truth))


# ---------------------------------------------------------------------------
# CSV I/O


def observations_csv(records: Iterable[ObservationRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(OBSERVATIONS_HEADER)
    for r in records:
        writer.writerow((r.sensor_id, r.window_id, r.observed_class))
    return out.getvalue()


def ground_truth_csv(records: Iterable[GroundTruthRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(GROUND_TRUTH_HEADER)
    for r in records:
        for node_id, state in r.assignment:
            writer.writerow((r.window_id, node_id, state))
    return out.getvalue()


def parse_observations_csv(text: str) -> list[ObservationRecord]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or tuple(rows[0]) != OBSERVATIONS_HEADER:
        raise InferenceError(
            f"observations CSV must start with header "
            f"{','.join(OBSERVATIONS_HEADER)}"
        )
    records = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise InferenceError(f"observations CSV row {line_no}: expected 3 columns")
        records.append(ObservationRecord(row[0], row[1], row[2]))
    return records


def parse_ground_truth_csv(text: str) -> list[GroundTruthRecord]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or tuple(rows[0]) != GROUND_TRUTH_HEADER:
        raise InferenceError(
            f"ground truth CSV must start with header {','.join(GROUND_TRUTH_HEADER)}"
        )
    grouped: dict[str, list[tuple[str, str]]] = {}
    order: list[str] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise InferenceError(f"ground truth CSV row {line_no}: expected 3 columns")
        window_id, node_id, state = row
        if window_id not in grouped:
            grouped[window_id] = []
            order.append(window_id)
        grouped[window_id].append((node_id, state))
    return [GroundTruthRecord(w, tuple(grouped[w])) for w in order]


# ---------------------------------------------------------------------------
# Calibration


@dataclass(frozen=True)
class CalibrationRow:
    node_id: str
    state: str
    expected: float  # exact marginal from the network
    frequency: float  # empirical frequency over the dataset
    z: float
    flagged: bool


def calibration_report(dataset: Dataset, bn: BayesianNetwork) -> list[CalibrationRow]:
    """Compare empirical state frequencies against exact marginals.

    z = (freq - p) / sqrt(p (1-p) / n); rows with |z| > 3 are flagged.
    Degenerate marginals (p of 0 or 1) report z = 0 on an exact match and
    are flagged otherwise.
    """
    observations, ground_truth = dataset
    n = len(ground_truth)
    if n == 0:
        raise InferenceError("calibration requires a non-empty dataset")

    counts: dict[str, dict[str, int]] = {}
    windows_seen: dict[str, int] = {}

    def bump(node_id: str, state: str) -> None:
        if node_id not in bn.index:
            raise InferenceError(f"records reference unknown node {node_id!r}")
        if state not in bn.node(node_id).states:
            raise InferenceError(f"node {node_id!r} has no state {state!r}")
        counts.setdefault(node_id, {})[state] = (
            counts.setdefault(node_id, {}).get(state, 0) + 1
        )
        windows_seen[node_id] = windows_seen.get(node_id, 0) + 1

    for record in ground_truth:
        for node_id, state in record.assignment:
            bump(node_id, state)
    for obs in observations:
        bump(f"sensor:{obs.sensor_id}", obs.observed_class)

    for node_id, seen in windows_seen.items():
        if seen != n:
            raise InferenceError(
                f"node {node_id!r} appears in {seen} windows, expected {n}"
            )

    rows: list[CalibrationRow] = []
    for node_id in sorted(counts):
        exact = ve_posterior(bn, Evidence(), [node_id]).marginal(node_id)
        for state in bn.node(node_id).states:
            p = exact[state]
            freq = counts[node_id].get(state, 0) / n
            if p in (0.0, 1.0):
                z = 0.0 if freq == p else float("inf")
            else:
                z = (freq - p) / (p * (1.0 - p) / n) ** 0.5
            rows.append(
                CalibrationRow(
                    node_id, state, p, freq, z, abs(z) > CALIBRATION_Z_LIMIT
                )
            )
    return rows
