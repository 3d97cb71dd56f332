"""Canonical `.skg` serializer.

Canonical form: statements sorted by (declaration kind, id) with fields in
a fixed per-kind order, every optional field written explicitly, and
numbers rendered shortest-round-trip. Re-parsing and re-validating the
output yields a graph equal to the input, and serializing twice yields
identical text.
"""

from __future__ import annotations

from .geometry import Point2D, WallSegment
from .model import (
    Action,
    ClassifierModel,
    Emission,
    Entity,
    KnowledgeGraph,
    Place,
    Profile,
    Sensor,
    SignalClass,
    SignalKindSpec,
)

_DECL_ORDER = (
    "entity",
    "action",
    "signal",
    "emission",
    "kind",
    "classifier",
    "sensor",
    "place",
    "wall",
    "profile",
)


def _num(x: float) -> str:
    return repr(float(x))


def _value(v: object) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _num(v)
    if isinstance(v, str):
        return v
    if isinstance(v, Point2D):
        return f"({_num(v.x)}, {_num(v.y)})"
    if isinstance(v, tuple):
        if len(v) == 2 and all(isinstance(c, float) for c in v):
            return f"({_num(v[0])}, {_num(v[1])})"
        return "[" + ", ".join(_value(item) for item in v) + "]"
    raise TypeError(f"cannot serialize {v!r}")


def _line(keyword: str, name: str, arrow: str | None, fields: list[tuple[str, object]]) -> str:
    head = f"{keyword} {name}"
    if arrow is not None:
        head += f" -> {arrow}"
    body = ", ".join(f"{k}: {_value(v)}" for k, v in fields)
    return f"{head} {{ {body} }}"


def _entity(e: Entity) -> str:
    return _line("entity", e.id, None, [("prior", e.prior)])


def _action(a: Action) -> str:
    fields: list[tuple[str, object]] = [
        ("actor", a.actor),
        ("prob", a.prob),
        ("location_class", a.location_class),
    ]
    if a.stimulus is not None:
        fields.append(("stimulus", a.stimulus))
    return _line("action", a.id, None, fields)


def _signal(s: SignalClass) -> str:
    return _line("signal", s.id, s.broader, [("kind", s.kind)])


def _emission(e: Emission) -> str:
    return _line(
        "emission", e.action, e.signal, [("prob", e.prob), ("intensity", e.intensity)]
    )


def _kind(k: SignalKindSpec) -> str:
    return _line(
        "kind",
        k.id,
        None,
        [
            ("falloff", k.falloff),
            ("ref_distance", k.ref_distance_m),
            ("requires_line_of_sight", k.requires_line_of_sight),
        ],
    )


def _classifier(c: ClassifierModel) -> str:
    lines = [f"classifier {c.id} {{"]
    lines.append(f"  kind: {c.kind},")
    lines.append(f"  classes: {_value(tuple(c.classes))},")
    for cls in sorted(c.curves):
        curve = c.curves[cls]
        lines.append(
            f"  curve {cls} {{ lo: {_num(curve.lo)}, hi: {_num(curve.hi)}, "
            f"p_max: {_num(curve.p_max)} }}"
        )
    for true_cls, other in sorted(c.confusion):
        lines.append(
            f"  confusion {true_cls} -> {other}: {_num(c.confusion[(true_cls, other)])}"
        )
    for cls in sorted(c.false_alarm):
        lines.append(f"  false_alarm {cls}: {_num(c.false_alarm[cls])}")
    lines.append("}")
    return "\n".join(lines)


def _sensor(s: Sensor) -> str:
    return _line(
        "sensor", s.id, None, [("position", s.position), ("classifier", s.classifier)]
    )


def _place(p: Place) -> str:
    return _line(
        "place",
        p.id,
        None,
        [
            ("position", p.position),
            ("location_class", p.location_class),
            ("weight", p.weight),
        ],
    )


def _wall(w: WallSegment) -> str:
    return _line(
        "wall",
        w.id,
        None,
        [
            ("from", w.start),
            ("to", w.end),
            ("sound_attenuation", w.sound_attenuation_db),
            ("opaque", w.opaque),
        ],
    )


def _profile(p: Profile) -> str:
    if not p.overrides:
        return f"profile {p.id} {{ }}"
    lines = [f"profile {p.id} {{"]
    for ov in p.overrides:
        lines.append(f"  set {'.'.join(ov.path)}: {_value(ov.value)}")
    lines.append("}")
    return "\n".join(lines)


def serialize(kg: KnowledgeGraph) -> str:
    """Render a resolved graph as canonical `.skg` text."""
    groups: list[list[str]] = []
    by_kind = {
        "entity": [_entity(e) for e in sorted(kg.entities, key=lambda x: x.id)],
        "action": [_action(a) for a in sorted(kg.actions, key=lambda x: x.id)],
        "signal": [_signal(s) for s in sorted(kg.signals, key=lambda x: x.id)],
        "emission": [
            _emission(e) for e in sorted(kg.emissions, key=lambda x: (x.action, x.signal))
        ],
        "kind": [_kind(k) for k in sorted(kg.kinds, key=lambda x: x.id)],
        "classifier": [_classifier(c) for c in sorted(kg.classifiers, key=lambda x: x.id)],
        "sensor": [_sensor(s) for s in sorted(kg.sensors, key=lambda x: x.id)],
        "place": [_place(p) for p in sorted(kg.places, key=lambda x: x.id)],
        "wall": [_wall(w) for w in sorted(kg.walls, key=lambda x: x.id)],
        "profile": [_profile(p) for p in sorted(kg.profiles, key=lambda x: x.id)],
    }
    for kind in _DECL_ORDER:
        if by_kind[kind]:
            groups.append(by_kind[kind])
    if not groups:
        return ""
    return "\n\n".join("\n".join(group) for group in groups) + "\n"
