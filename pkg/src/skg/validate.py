"""Validation: raw Document -> resolved KnowledgeGraph, plus profiles.

Validation reports every violation it can find, not just the first, since
graphs are hand-authored. Each diagnostic points at the most specific
source position available (the offending value, falling back to the
declaration name).

The same semantic checks run again when a profile is applied, so an
override can never smuggle an invalid value into a resolved graph.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import Diagnostic, ProfileError, ValidationError
from .geometry import Point2D, WallSegment
from .model import (
    FALLOFFS,
    NO_DETECTION,
    Action,
    ClassifierModel,
    DetectionCurve,
    Emission,
    Entity,
    KnowledgeGraph,
    Override,
    Place,
    Profile,
    Sensor,
    SignalClass,
    SignalKindSpec,
)
from .parser import Document, FieldNode, Statement, SubStmt, ValueNode

# ---------------------------------------------------------------------------
# Field schemas


@dataclass(frozen=True)
class FieldSpec:
    type: str  # number | ident | bool | point | ident_list
    required: bool = False
    default: object = None


_SCHEMAS: dict[str, dict[str, FieldSpec]] = {
    "entity": {"prior": FieldSpec("number", required=True)},
    "action": {
        "actor": FieldSpec("ident", required=True),
        "prob": FieldSpec("number", required=True),
        "location_class": FieldSpec("ident", required=True),
        "stimulus": FieldSpec("ident"),
    },
    "signal": {"kind": FieldSpec("ident", required=True)},
    "emission": {
        "prob": FieldSpec("number", required=True),
        "intensity": FieldSpec("number", required=True),
    },
    "kind": {
        "falloff": FieldSpec("ident", required=True),
        "ref_distance": FieldSpec("number", default=1.0),
        "requires_line_of_sight": FieldSpec("bool", default=False),
    },
    "classifier": {
        "kind": FieldSpec("ident", required=True),
        "classes": FieldSpec("ident_list", required=True),
    },
    "sensor": {
        "position": FieldSpec("point", required=True),
        "classifier": FieldSpec("ident", required=True),
    },
    "place": {
        "position": FieldSpec("point", required=True),
        "location_class": FieldSpec("ident", required=True),
        "weight": FieldSpec("number", default=1.0),
    },
    "wall": {
        "from": FieldSpec("point", required=True),
        "to": FieldSpec("point", required=True),
        "sound_attenuation": FieldSpec("number", default=0.0),
        "opaque": FieldSpec("bool", default=True),
    },
    "profile": {},
}

# Declaration kinds that can take / must take an arrow head.
_ARROW_OPTIONAL = {"signal"}  # signal X -> broader
_ARROW_REQUIRED = {"emission"}  # emission action -> signal

# Declaration kinds whose statements may carry substatements.
_SUBS_ALLOWED = {"classifier": ("curve", "confusion", "false_alarm"), "profile": ("set",)}

# DSL field name -> model attribute, per declaration kind (None: same name).
_ATTR_NAMES = {
    "kind": {"ref_distance": "ref_distance_m"},
    "wall": {"from": "start", "to": "end", "sound_attenuation": "sound_attenuation_db"},
}

_CURVE_FIELDS = {
    "lo": FieldSpec("number", required=True),
    "hi": FieldSpec("number", required=True),
    "p_max": FieldSpec("number", required=True),
}


def _raw_value(v: ValueNode) -> object:
    if v.kind == "list":
        return tuple(_raw_value(item) for item in v.value)
    return v.value


def _coerce(raw: object, type_name: str) -> tuple[bool, object]:
    """Type-check a raw literal against a field type; returns (ok, value)."""
    if type_name == "number":
        return isinstance(raw, float), raw
    if type_name == "ident":
        return isinstance(raw, str), raw
    if type_name == "bool":
        if raw in ("true", "false"):
            return True, raw == "true"
        if isinstance(raw, bool):
            return True, raw
        return False, None
    if type_name == "point":
        ok = isinstance(raw, tuple) and len(raw) == 2 and all(
            isinstance(c, float) for c in raw
        )
        return ok, raw
    if type_name == "ident_list":
        ok = isinstance(raw, tuple) and all(isinstance(c, str) for c in raw)
        return ok, raw
    raise AssertionError(type_name)


_TYPE_LABEL = {
    "number": "a number",
    "ident": "an identifier",
    "bool": "true or false",
    "point": "a coordinate tuple",
    "ident_list": "a list of identifiers",
}


# ---------------------------------------------------------------------------
# Building


class _Builder:
    def __init__(self) -> None:
        self.diags: list[Diagnostic] = []
        self.pos: dict[tuple[str, str, str], tuple[int, int]] = {}
        self.items: dict[str, list] = {
            kind: [] for kind in (
                "entity", "action", "signal", "emission", "kind",
                "classifier", "sensor", "place", "wall", "profile",
            )
        }
        self._seen_ids: dict[str, set] = {k: set() for k in self.items}

    def error(self, message: str, line: int, column: int) -> None:
        self.diags.append(Diagnostic("error", message, line, column))

    def record(self, key: tuple[str, str, str], line: int, column: int) -> None:
        self.pos.setdefault(key, (line, column))

    def position(self, key: tuple[str, str, str]) -> tuple[int, int]:
        if key in self.pos:
            return self.pos[key]
        whole = (key[0], key[1], "")
        return self.pos.get(whole, (1, 1))

    # -- statement handling ---------------------------------------------

    def run(self, doc: Document) -> None:
        for stmt in doc.statements:
            self.statement(stmt)

    def statement(self, stmt: Statement) -> None:
        kw = stmt.keyword
        decl_id = stmt.name if kw != "emission" else f"{stmt.name}->{stmt.arrow}"
        self.record((kw, decl_id, ""), stmt.name_line, stmt.name_column)

        if stmt.arrow is None and kw in _ARROW_REQUIRED:
            self.error(
                f"{kw} declaration requires '-> <signal>'",
                stmt.name_line,
                stmt.name_column,
            )
            return
        if stmt.arrow is not None and kw not in (_ARROW_OPTIONAL | _ARROW_REQUIRED):
            self.error(
                f"{kw} declaration does not take '->'",
                stmt.arrow_line,
                stmt.arrow_column,
            )
        if decl_id in self._seen_ids[kw]:
            label = (
                f"duplicate emission {stmt.name} -> {stmt.arrow}"
                if kw == "emission"
                else f"duplicate {kw} id {stmt.name!r}"
            )
            self.error(label, stmt.name_line, stmt.name_column)
            return
        self._seen_ids[kw].add(decl_id)

        fields = self.collect_fields(kw, decl_id, stmt.fields, _SCHEMAS[kw], stmt)
        subs_allowed = _SUBS_ALLOWED.get(kw, ())
        for sub in stmt.subs:
            if sub.keyword not in subs_allowed:
                self.error(
                    f"'{sub.keyword}' entry is not allowed in a {kw} declaration",
                    sub.line,
                    sub.column,
                )

        build = getattr(self, f"_build_{kw}")
        build(stmt, decl_id, fields)

    def collect_fields(
        self,
        kw: str,
        decl_id: str,
        nodes: tuple[FieldNode, ...],
        schema: dict[str, FieldSpec],
        stmt: Statement,
        key_prefix: str = "",
    ) -> dict[str, object]:
        out: dict[str, object] = {}
        seen: set[str] = set()
        for node in nodes:
            if node.name not in schema:
                self.error(
                    f"unknown field {node.name!r} in {kw} declaration",
                    node.line,
                    node.column,
                )
                continue
            if node.name in seen:
                self.error(f"duplicate field {node.name!r}", node.line, node.column)
                continue
            seen.add(node.name)
            self.record(
                (kw, decl_id, key_prefix + node.name), node.value.line, node.value.column
            )
            spec = schema[node.name]
            ok, value = _coerce(_raw_value(node.value), spec.type)
            if not ok:
                self.error(
                    f"field {node.name!r} expects {_TYPE_LABEL[spec.type]}",
                    node.value.line,
                    node.value.column,
                )
                continue
            out[node.name] = value
        for name, spec in schema.items():
            if name in out:
                continue
            if spec.required:
                self.error(
                    f"missing required field {name!r} in {kw} {stmt.name!r}",
                    stmt.name_line,
                    stmt.name_column,
                )
                out[name] = None
            else:
                out[name] = spec.default
        return out

    # -- per-kind builders ------------------------------------------------

    def _ok(self, fields: dict[str, object], *names: str) -> bool:
        return all(fields.get(n) is not None for n in names)

    def _build_entity(self, stmt, decl_id, fields):
        if self._ok(fields, "prior"):
            self.items["entity"].append(Entity(stmt.name, fields["prior"]))

    def _build_action(self, stmt, decl_id, fields):
        if self._ok(fields, "actor", "prob", "location_class"):
            self.items["action"].append(
                Action(
                    stmt.name,
                    fields["actor"],
                    fields["prob"],
                    fields["location_class"],
                    fields["stimulus"],
                )
            )

    def _build_signal(self, stmt, decl_id, fields):
        if stmt.arrow is not None:
            self.record(("signal", stmt.name, "broader"), stmt.arrow_line, stmt.arrow_column)
        if self._ok(fields, "kind"):
            self.items["signal"].append(SignalClass(stmt.name, fields["kind"], stmt.arrow))

    def _build_emission(self, stmt, decl_id, fields):
        self.record(("emission", decl_id, "signal"), stmt.arrow_line, stmt.arrow_column)
        if self._ok(fields, "prob", "intensity"):
            self.items["emission"].append(
                Emission(stmt.name, stmt.arrow, fields["prob"], fields["intensity"])
            )

    def _build_kind(self, stmt, decl_id, fields):
        if self._ok(fields, "falloff"):
            self.items["kind"].append(
                SignalKindSpec(
                    stmt.name,
                    fields["falloff"],
                    fields["ref_distance"],
                    fields["requires_line_of_sight"],
                )
            )

    def _build_classifier(self, stmt, decl_id, fields):
        curves: dict[str, DetectionCurve] = {}
        confusion: dict[tuple[str, str], float] = {}
        false_alarm: dict[str, float] = {}
        for sub in stmt.subs:
            if sub.keyword == "curve":
                cls = sub.head[0]
                key = f"curve.{cls}"
                self.record(("classifier", decl_id, key), sub.line, sub.column)
                if sub.value is not None:
                    self.error("'curve' takes a { lo, hi, p_max } block", sub.line, sub.column)
                    continue
                if cls in curves:
                    self.error(f"duplicate curve for class {cls!r}", sub.line, sub.column)
                    continue
                cf = self.collect_fields(
                    "classifier", decl_id, sub.fields, _CURVE_FIELDS, stmt, key + "."
                )
                if self._ok(cf, "lo", "hi", "p_max"):
                    curves[cls] = DetectionCurve(cf["lo"], cf["hi"], cf["p_max"])
            elif sub.keyword == "confusion":
                true_cls, other = sub.head
                self.record(("classifier", decl_id, f"confusion.{true_cls}"), sub.line, sub.column)
                self.record(
                    ("classifier", decl_id, f"confusion.{true_cls}.{other}"), sub.line, sub.column
                )
                if sub.value is None or sub.value.kind != "number":
                    self.error("'confusion' takes a numeric value", sub.line, sub.column)
                    continue
                if (true_cls, other) in confusion:
                    self.error(
                        f"duplicate confusion {true_cls} -> {other}", sub.line, sub.column
                    )
                    continue
                confusion[(true_cls, other)] = sub.value.value
            elif sub.keyword == "false_alarm":
                cls = sub.head[0]
                self.record(("classifier", decl_id, "false_alarm"), sub.line, sub.column)
                self.record(("classifier", decl_id, f"false_alarm.{cls}"), sub.line, sub.column)
                if sub.value is None or sub.value.kind != "number":
                    self.error("'false_alarm' takes a numeric value", sub.line, sub.column)
                    continue
                if cls in false_alarm:
                    self.error(f"duplicate false_alarm for {cls!r}", sub.line, sub.column)
                    continue
                false_alarm[cls] = sub.value.value
        if self._ok(fields, "kind", "classes"):
            self.items["classifier"].append(
                ClassifierModel(
                    stmt.name, fields["kind"], fields["classes"], curves, confusion, false_alarm
                )
            )

    def _build_sensor(self, stmt, decl_id, fields):
        if self._ok(fields, "position", "classifier"):
            self.items["sensor"].append(
                Sensor(stmt.name, Point2D(*fields["position"]), fields["classifier"])
            )

    def _build_place(self, stmt, decl_id, fields):
        if self._ok(fields, "position", "location_class"):
            self.items["place"].append(
                Place(
                    stmt.name,
                    Point2D(*fields["position"]),
                    fields["location_class"],
                    fields["weight"],
                )
            )

    def _build_wall(self, stmt, decl_id, fields):
        if not self._ok(fields, "from", "to"):
            return
        start = Point2D(*fields["from"])
        end = Point2D(*fields["to"])
        if start == end:
            self.error(
                "wall endpoints must differ", *self.position(("wall", decl_id, "to"))
            )
            return
        if fields["sound_attenuation"] < 0:
            self.error(
                "sound_attenuation must be >= 0",
                *self.position(("wall", decl_id, "sound_attenuation")),
            )
            return
        self.items["wall"].append(
            WallSegment(stmt.name, start, end, fields["sound_attenuation"], fields["opaque"])
        )

    def _build_profile(self, stmt, decl_id, fields):
        # Overrides are stored sorted by path. Each path may appear once, so
        # application order cannot matter and canonical ordering is safe.
        overrides: list[Override] = []
        seen_paths: set[tuple[str, ...]] = set()
        for sub in stmt.subs:
            if sub.keyword != "set":
                continue
            path = tuple(sub.head)
            self.record(("profile", decl_id, f"set.{'.'.join(path)}"), sub.line, sub.column)
            if sub.value is None:
                self.error("'set' takes ': <value>'", sub.line, sub.column)
                continue
            if path in seen_paths:
                self.error(f"duplicate override for {'.'.join(path)}", sub.line, sub.column)
                continue
            seen_paths.add(path)
            overrides.append(Override(path, _raw_value(sub.value)))
        overrides.sort(key=lambda ov: ov.path)
        self.items["profile"].append(Profile(stmt.name, tuple(overrides)))

    def graph(self) -> KnowledgeGraph:
        return KnowledgeGraph(
            kinds=tuple(sorted(self.items["kind"], key=lambda x: x.id)),
            signals=tuple(sorted(self.items["signal"], key=lambda x: x.id)),
            entities=tuple(sorted(self.items["entity"], key=lambda x: x.id)),
            actions=tuple(sorted(self.items["action"], key=lambda x: x.id)),
            emissions=tuple(sorted(self.items["emission"], key=lambda x: (x.action, x.signal))),
            classifiers=tuple(sorted(self.items["classifier"], key=lambda x: x.id)),
            sensors=tuple(sorted(self.items["sensor"], key=lambda x: x.id)),
            places=tuple(sorted(self.items["place"], key=lambda x: x.id)),
            walls=tuple(sorted(self.items["wall"], key=lambda x: x.id)),
            profiles=tuple(sorted(self.items["profile"], key=lambda x: x.id)),
        )


# ---------------------------------------------------------------------------
# Semantic checks over a (possibly partially resolved) graph


def _probability_violations(kg: KnowledgeGraph):
    for e in kg.entities:
        if not 0.0 <= e.prior <= 1.0:
            yield ("entity", e.id, "prior"), f"probability out of range: {e.prior!r}"
    for a in kg.actions:
        if not 0.0 <= a.prob <= 1.0:
            yield ("action", a.id, "prob"), f"probability out of range: {a.prob!r}"
    for em in kg.emissions:
        em_id = f"{em.action}->{em.signal}"
        if not 0.0 <= em.prob <= 1.0:
            yield ("emission", em_id, "prob"), f"probability out of range: {em.prob!r}"
        if em.intensity < 0:
            yield ("emission", em_id, "intensity"), "intensity must be >= 0"


def _reference_violations(kg: KnowledgeGraph):
    for s in kg.signals:
        if s.kind not in kg._kinds:
            yield ("signal", s.id, "kind"), f"unknown kind {s.kind!r}"
        if s.broader is not None and s.broader not in kg._signals:
            yield ("signal", s.id, "broader"), f"unknown signal class {s.broader!r}"
    for a in kg.actions:
        if a.actor not in kg._entities:
            yield ("action", a.id, "actor"), f"unknown entity {a.actor!r}"
        if a.stimulus is not None and a.stimulus not in kg._signals:
            yield ("action", a.id, "stimulus"), f"unknown signal class {a.stimulus!r}"
        if not kg.places_matching(a.location_class):
            yield (
                ("action", a.id, "location_class"),
                f"no place matches location class {a.location_class!r}",
            )
    for em in kg.emissions:
        em_id = f"{em.action}->{em.signal}"
        if em.action not in kg._actions:
            yield ("emission", em_id, ""), f"unknown action {em.action!r}"
        if em.signal not in kg._signals:
            yield ("emission", em_id, "signal"), f"unknown signal class {em.signal!r}"
    for c in kg.classifiers:
        if c.kind not in kg._kinds:
            yield ("classifier", c.id, "kind"), f"unknown kind {c.kind!r}"
    for s in kg.sensors:
        if s.classifier not in kg._classifiers:
            yield ("sensor", s.id, "classifier"), f"unknown classifier {s.classifier!r}"


def _signal_taxonomy_violations(kg: KnowledgeGraph):
    for s in kg.signals:
        if s.broader is None or s.broader not in kg._signals:
            continue
        parent = kg.signal(s.broader)
        if parent.kind != s.kind:
            yield (
                ("signal", s.id, "broader"),
                f"broader class {parent.id!r} has kind {parent.kind!r}, expected {s.kind!r}",
            )
        # Cycle detection by chain walking with a visited set.
        visited = {s.id}
        current = s
        while current.broader is not None and current.broader in kg._signals:
            if current.broader in visited:
                yield ("signal", s.id, "broader"), f"broader cycle involving {s.id!r}"
                break
            visited.add(current.broader)
            current = kg.signal(current.broader)


def _classifier_violations(kg: KnowledgeGraph):
    for c in kg.classifiers:
        seen: set[str] = set()
        for cls in c.classes:
            if cls == NO_DETECTION:
                yield (
                    ("classifier", c.id, "classes"),
                    f"'{NO_DETECTION}' is the reserved no-detection state",
                )
                continue
            if cls in seen:
                yield ("classifier", c.id, "classes"), f"duplicate class {cls!r}"
            seen.add(cls)
            if cls not in kg._signals:
                yield ("classifier", c.id, "classes"), f"unknown signal class {cls!r}"
            elif c.kind in kg._kinds and kg.signal(cls).kind != c.kind:
                yield (
                    ("classifier", c.id, "classes"),
                    f"class {cls!r} has kind {kg.signal(cls).kind!r}, "
                    f"but classifier {c.id!r} observes {c.kind!r}",
                )
        for cls, curve in c.curves.items():
            key = ("classifier", c.id, f"curve.{cls}")
            if cls not in seen:
                yield key, f"curve for class {cls!r} not in classes"
            if not curve.lo < curve.hi:
                yield key, f"curve lo must be < hi (got lo={curve.lo!r}, hi={curve.hi!r})"
            if not 0.0 <= curve.p_max <= 1.0:
                yield key, f"probability out of range: {curve.p_max!r}"
        confusion_sums: dict[str, float] = {}
        for (true_cls, other), frac in c.confusion.items():
            key = ("classifier", c.id, f"confusion.{true_cls}.{other}")
            for name in (true_cls, other):
                if name not in seen:
                    yield key, f"confusion class {name!r} not in classes"
            if true_cls == other:
                yield key, f"class {true_cls!r} confused with itself"
            if not 0.0 <= frac <= 1.0:
                yield key, f"probability out of range: {frac!r}"
            confusion_sums[true_cls] = confusion_sums.get(true_cls, 0.0) + frac
        for true_cls, total in confusion_sums.items():
            if total > 1.0 + 1e-12:
                yield (
                    ("classifier", c.id, f"confusion.{true_cls}"),
                    f"confusion fractions for {true_cls!r} sum to {total!r} > 1",
                )
        fa_total = 0.0
        for cls, p in c.false_alarm.items():
            key = ("classifier", c.id, f"false_alarm.{cls}")
            if cls not in seen:
                yield key, f"false_alarm class {cls!r} not in classes"
            if not 0.0 <= p <= 1.0:
                yield key, f"probability out of range: {p!r}"
            fa_total += p
        if fa_total > 1.0 + 1e-12:
            yield (
                ("classifier", c.id, "false_alarm"),
                f"false_alarm probabilities sum to {fa_total!r} > 1",
            )


def _misc_violations(kg: KnowledgeGraph):
    for k in kg.kinds:
        if k.falloff not in FALLOFFS:
            yield (
                ("kind", k.id, "falloff"),
                f"falloff must be one of {', '.join(FALLOFFS)}",
            )
        if k.ref_distance_m <= 0:
            yield ("kind", k.id, "ref_distance"), "ref_distance must be > 0"
    for p in kg.places:
        if p.weight <= 0:
            yield ("place", p.id, "weight"), "weight must be > 0"


def _profile_violations(kg: KnowledgeGraph):
    for prof in kg.profiles:
        for ov in prof.overrides:
            key = ("profile", prof.id, f"set.{'.'.join(ov.path)}")
            problem = _override_problem(kg, ov)
            if problem is not None:
                yield key, problem


_ADDRESSABLE = {
    "entity": "entities",
    "action": "actions",
    "signal": "signals",
    "kind": "kinds",
    "classifier": "classifiers",
    "sensor": "sensors",
    "place": "places",
    "wall": "walls",
}


def _override_problem(kg: KnowledgeGraph, ov: Override) -> str | None:
    decl_kind, target_id, field_name = ov.path
    if decl_kind not in _ADDRESSABLE:
        return f"overrides cannot address {decl_kind!r} declarations"
    items = getattr(kg, _ADDRESSABLE[decl_kind])
    if not any(item.id == target_id for item in items):
        return f"no {decl_kind} named {target_id!r}"
    spec = _SCHEMAS[decl_kind].get(field_name)
    if spec is None:
        return f"{decl_kind} has no field {field_name!r}"
    ok, _ = _coerce(ov.value, spec.type)
    if not ok:
        return f"field {field_name!r} expects {_TYPE_LABEL[spec.type]}"
    return None


def graph_violations(kg: KnowledgeGraph) -> list[tuple[tuple[str, str, str], str]]:
    """All semantic violations in a graph, as (position key, message)."""
    out: list[tuple[tuple[str, str, str], str]] = []
    for gen in (
        _probability_violations,
        _reference_violations,
        _signal_taxonomy_violations,
        _classifier_violations,
        _misc_violations,
        _profile_violations,
    ):
        out.extend(gen(kg))
    return out


# ---------------------------------------------------------------------------
# Entry points


def validate(doc: Document) -> KnowledgeGraph:
    """Resolve a Document into a KnowledgeGraph.

    Raises ValidationError carrying one diagnostic per violation; on
    success the returned graph satisfies every invariant the compiler
    relies on.
    """
    builder = _Builder()
    builder.run(doc)
    kg = builder.graph()
    for key, message in graph_violations(kg):
        line, column = builder.position(key)
        builder.error(message, line, column)
    if builder.diags:
        ordered = sorted(builder.diags, key=lambda d: (d.line, d.column, d.message))
        raise ValidationError(ordered)
    return kg


def _apply_override(kg: KnowledgeGraph, ov: Override) -> KnowledgeGraph:
    problem = _override_problem(kg, ov)
    if problem is not None:
        raise ProfileError(f"override {'.'.join(ov.path)}: {problem}")
    decl_kind, target_id, field_name = ov.path
    collection = _ADDRESSABLE[decl_kind]
    spec = _SCHEMAS[decl_kind][field_name]
    _, value = _coerce(ov.value, spec.type)
    if spec.type == "point":
        value = Point2D(*value)
    attr = _ATTR_NAMES.get(decl_kind, {}).get(field_name, field_name)
    items = list(getattr(kg, collection))
    for i, item in enumerate(items):
        if item.id == target_id:
            try:
                items[i] = dataclasses.replace(item, **{attr: value})
            except ValueError as exc:  # geometry invariants enforce themselves
                raise ProfileError(f"override {'.'.join(ov.path)}: {exc}") from exc
            break
    return dataclasses.replace(kg, **{collection: tuple(items)})


def apply_profile(kg: KnowledgeGraph, profile_id: str) -> KnowledgeGraph:
    """Return a new graph with the named profile's overrides applied.

    The base graph is never mutated. The overridden graph is re-validated;
    any invariant violation aborts with ProfileError.
    """
    if profile_id not in kg._profiles:
        raise ProfileError(f"unknown profile {profile_id!r}")
    out = kg
    for ov in kg.profile(profile_id).overrides:
        out = _apply_override(out, ov)
    violations = graph_violations(out)
    if violations:
        raise ProfileError(
            "; ".join(f"{'.'.join(key)}: {msg}" for key, msg in violations)
        )
    return out
