"""Domain types of the signal ontology.

A resolved :class:`KnowledgeGraph` aggregates everything a scene declares:
signal kinds (how a signal propagates), signal classes (what a signal is),
entities and the actions they may produce, emissions (action -> source
signal), classifier models (on-device summarisation), sensors, places,
walls, and named override profiles.

All types are immutable after construction; cross-references are stored as
ids and resolved through the graph's lookup helpers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .geometry import Point2D, WallSegment

FALLOFF_INVERSE_SQUARE_DB = "inverse_square_db"
FALLOFF_INVERSE_LINEAR = "inverse_linear"
FALLOFF_NONE = "none"
FALLOFFS = (FALLOFF_INVERSE_SQUARE_DB, FALLOFF_INVERSE_LINEAR, FALLOFF_NONE)

# Reserved terminal state of every sensor: "no detection this window".
NO_DETECTION = "none"


@dataclass(frozen=True)
class SignalKindSpec:
    """How one family of signals (sound, vision, digital...) propagates."""

    id: str
    falloff: str
    ref_distance_m: float = 1.0
    requires_line_of_sight: bool = False


@dataclass(frozen=True)
class SignalClass:
    """A signal type, optionally grouped under a broader category."""

    id: str
    kind: str
    broader: str | None = None


@dataclass(frozen=True)
class Entity:
    id: str
    prior: float  # P(entity present in the scene this time window)


@dataclass(frozen=True)
class Action:
    """Something an entity may do, at one of a class of places.

    `prob` is P(action occurs | actor present), before the per-site location
    split. A relayed action (e.g. a bystander tweeting about what they saw)
    names the signal class that must be present at the site as `stimulus`.
    """

    id: str
    actor: str
    prob: float
    location_class: str
    stimulus: str | None = None


@dataclass(frozen=True)
class Emission:
    """An action producing a source signal with some probability.

    `intensity` is kind-dependent: dB at the reference distance for sound,
    object extent in metres for vision, 1.0 for digital signals.
    """

    action: str
    signal: str
    prob: float
    intensity: float


@dataclass(frozen=True)
class DetectionCurve:
    """Piecewise-linear detection ramp over received signal strength."""

    lo: float
    hi: float
    p_max: float

    def p_detect(self, strength: float) -> float:
        if strength <= self.lo:
            return 0.0
        if strength >= self.hi:
            return self.p_max
        return self.p_max * (strength - self.lo) / (self.hi - self.lo)


@dataclass(frozen=True)
class ClassifierModel:
    """Characteristic curves of an on-device class
    (never the classifier itself, only its behaviour).

    classes: the vocabulary, in declared order; the implicit terminal state
        `none` (no detection) is appended by the compiler.
    curves: per detectable class, strength-dependent detection ramp. A class
        without a curve is never detected directly (it can still appear as a
        confusion target or a false alarm).
    confusion: fraction of detections of a true class reported as another.
    false_alarm: per class, probability of a spurious detection per window.
    """

    id: str
    kind: str
    classes: tuple[str, ...]
    curves: Mapping[str, DetectionCurve] = field(default_factory=dict)
    confusion: Mapping[tuple[str, str], float] = field(default_factory=dict)
    false_alarm: Mapping[str, float] = field(default_factory=dict)

    def confusion_from(self, true_class: str) -> dict[str, float]:
        return {
            other: frac
            for (tc, other), frac in self.confusion.items()
            if tc == true_class
        }


@dataclass(frozen=True)
class Sensor:
    id: str
    position: Point2D
    classifier: str


@dataclass(frozen=True)
class Place:
    """A concrete site where actions of a matching location_class occur.

    Weights express where an action is most plausible; they are normalized
    per action over its matching places, so only ratios matter.
    """

    id: str
    position: Point2D
    location_class: str
    weight: float = 1.0


@dataclass(frozen=True)
class Override:
    """One profile entry: dotted path (declaration kind, id, field) -> value."""

    path: tuple[str, str, str]
    value: object


@dataclass(frozen=True)
class Profile:
    id: str
    overrides: tuple[Override, ...] = ()


@dataclass(frozen=True)
class KnowledgeGraph:
    """Resolved aggregate of all declarations, sorted by id per kind."""

    kinds: tuple[SignalKindSpec, ...] = ()
    signals: tuple[SignalClass, ...] = ()
    entities: tuple[Entity, ...] = ()
    actions: tuple[Action, ...] = ()
    emissions: tuple[Emission, ...] = ()
    classifiers: tuple[ClassifierModel, ...] = ()
    sensors: tuple[Sensor, ...] = ()
    places: tuple[Place, ...] = ()
    walls: tuple[WallSegment, ...] = ()
    profiles: tuple[Profile, ...] = ()

    @cached_property
    def _kinds(self) -> dict[str, SignalKindSpec]:
        return {k.id: k for k in self.kinds}

    @cached_property
    def _signals(self) -> dict[str, SignalClass]:
        return {s.id: s for s in self.signals}

    @cached_property
    def _entities(self) -> dict[str, Entity]:
        return {e.id: e for e in self.entities}

    @cached_property
    def _actions(self) -> dict[str, Action]:
        return {a.id: a for a in self.actions}

    @cached_property
    def _classifiers(self) -> dict[str, ClassifierModel]:
        return {c.id: c for c in self.classifiers}

    @cached_property
    def _places(self) -> dict[str, Place]:
        return {p.id: p for p in self.places}

    @cached_property
    def _profiles(self) -> dict[str, Profile]:
        return {p.id: p for p in self.profiles}

    def kind(self, id: str) -> SignalKindSpec:
        return self._kinds[id]

    def signal(self, id: str) -> SignalClass:
        return self._signals[id]

    def entity(self, id: str) -> Entity:
        return self._entities[id]

    def action(self, id: str) -> Action:
        return self._actions[id]

    def classifier(self, id: str) -> ClassifierModel:
        return self._classifiers[id]

    def place(self, id: str) -> Place:
        return self._places[id]

    def profile(self, id: str) -> Profile:
        return self._profiles[id]

    def places_matching(self, location_class: str) -> tuple[Place, ...]:
        return tuple(p for p in self.places if p.location_class == location_class)
