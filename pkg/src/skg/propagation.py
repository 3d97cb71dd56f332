"""Deterministic propagation and summarisation mathematics.

Receiver model: how a source signal's strength transforms on its way to a
sensor. Distance is clamped below at the kind's reference distance, which
avoids the d -> 0 singularity of both falloff laws (physical near-field
limit).

Sound uses the decibel-level convention: distance d contributes
-20*log10(d/d_ref) to the level, and every crossed wall subtracts its
attenuation. Vision strength is apparent extent (object extent / distance),
a proxy for angular size; it drops to zero without line of sight when the
kind requires one. `none` falloff (digital signals) ignores geometry
entirely.

Summarisation model: a classifier's chance of reporting each class given
the received strength, as a piecewise-linear ramp plus confusion mass and
per-window false alarms.
"""

from __future__ import annotations

import math

from .errors import InferenceError
from .geometry import Point2D, WallSegment, line_of_sight, wall_crossings
from .model import (
    FALLOFF_INVERSE_LINEAR,
    FALLOFF_INVERSE_SQUARE_DB,
    FALLOFF_NONE,
    NO_DETECTION,
    ClassifierModel,
    KnowledgeGraph,
    SignalClass,
    SignalKindSpec,
)


def received_strength(
    kind: SignalKindSpec,
    intensity: float,
    source: Point2D,
    sensor: Point2D,
    walls: list[WallSegment],
) -> float:
    """Strength of a signal of `kind` at `sensor`, emitted at `source`.

    Units follow the intensity domain: dB for inverse_square_db (may go
    negative), extent-per-metre for inverse_linear, unchanged for none.
    """
    if kind.falloff == FALLOFF_NONE:
        return intensity

    d = max(source.distance_to(sensor), kind.ref_distance_m)
    if kind.falloff == FALLOFF_INVERSE_SQUARE_DB:
        level = intensity - 20.0 * math.log10(d / kind.ref_distance_m)
        by_id = {w.id: w for w in walls}
        for wall_id in wall_crossings(source, sensor, walls):
            level -= by_id[wall_id].sound_attenuation_db
        return level

    if kind.falloff == FALLOFF_INVERSE_LINEAR:
        if kind.requires_line_of_sight and not line_of_sight(source, sensor, walls):
            return 0.0
        return intensity * kind.ref_distance_m / d

    raise ValueError(f"unknown falloff {kind.falloff!r}")


def resolve_classifier_class(
    signal: SignalClass, classifier: ClassifierModel, kg: KnowledgeGraph
) -> str | None:
    """Map a source signal onto the classifier's vocabulary.

    Walks the signal, then its broader ancestors, returning the first id
    the classifier lists; None means the classifier cannot detect this
    signal at all. Broader chains are validated acyclic, so the walk
    terminates.
    """
    vocabulary = set(classifier.classes)
    current: SignalClass | None = signal
    while current is not None:
        if current.id in vocabulary:
            return current.id
        current = kg.signal(current.broader) if current.broader else None
    return None


def detection_distribution(
    classifier: ClassifierModel, resolved_class: str, strength: float
) -> dict[str, float]:
    """Distribution over classes + `none` given a present signal.

    The ramp yields p_detect; confusion fractions split that detection mass
    among other classes, and `none` absorbs the rest.
    """
    if resolved_class not in classifier.classes:
        raise InferenceError(
            f"class {resolved_class!r} is not in classifier {classifier.id!r}"
        )
    curve = classifier.curves.get(resolved_class)
    p_detect = curve.p_detect(strength) if curve is not None else 0.0

    confusion = classifier.confusion_from(resolved_class)
    out = {c: 0.0 for c in classifier.classes}
    out[resolved_class] = p_detect * (1.0 - sum(confusion.values()))
    for other, frac in confusion.items():
        out[other] += p_detect * frac
    out[NO_DETECTION] = 1.0 - p_detect
    return out


def false_alarm_distribution(classifier: ClassifierModel) -> dict[str, float]:
    """Distribution over classes + `none` with no signal present."""
    out = {c: classifier.false_alarm.get(c, 0.0) for c in classifier.classes}
    out[NO_DETECTION] = 1.0 - sum(out.values())
    return out
