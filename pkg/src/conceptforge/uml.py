"""Forward and reverse translation between frame models and UML class models.

Forward: concepts become plain classifiers, predicates become stereotyped
classifiers with one role-named association per argument concept, constants
become instances. A characteristic predicate over a single argument (plus an
optional result) folds into an attribute on the argument's classifier; folded
attributes are tagged so the reverse mapping can unfold them.

Reverse: synthesizes fresh variables (one per predicate/role group, typed by
every association target for that role) and lays nodes out on a fixed grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import errors
from .core import (
    Arc,
    ConceptDef,
    ConstantNode,
    Geometry,
    Model,
    PredicateKind,
    PredicateNode,
    Role,
    VariableNode,
    validate_model,
)

# Grid used when synthesizing layout for reverse-translated models.
GRID_STEP_X = 200
GRID_STEP_Y = 120
GRID_COLUMNS = 5
NODE_WIDTH = 100
NODE_HEIGHT = 50

_STEREOTYPE_KINDS = {
    "event": PredicateKind.EVENT,
    "function": PredicateKind.FUNCTION,
    "characteristic": PredicateKind.CHARACTERISTIC,
}
_KIND_STEREOTYPES = {v: k for k, v in _STEREOTYPE_KINDS.items()}

# Attribute type used when a folded characteristic has no result argument.
PLAIN_ATTRIBUTE_TYPE = "string"


@dataclass(frozen=True)
class Attribute:
    name: str
    type_name: str
    folded: bool = False
    role: str | None = None  # long role denotation of the folded argument


@dataclass(frozen=True)
class Classifier:
    name: str
    stereotype: str = "none"
    attributes: tuple[Attribute, ...] = ()


@dataclass(frozen=True)
class Association:
    source: str
    target: str
    role: str  # long denotation


@dataclass(frozen=True)
class Instance:
    name: str
    classifier: str


@dataclass
class UMLModel:
    classifiers: list[Classifier] = field(default_factory=list)
    associations: list[Association] = field(default_factory=list)
    instances: list[Instance] = field(default_factory=list)

    def __post_init__(self):
        self.classifiers.sort(key=lambda c: c.name)
        self.associations.sort(key=lambda a: (a.source, a.role, a.target))
        self.instances.sort(key=lambda i: (i.classifier, i.name))

    def classifier(self, name: str) -> Classifier:
        for c in self.classifiers:
            if c.name == name:
                return c
        raise errors.UnknownClassifier(f"no classifier named {name!r}")


def grid_geometry(index: int) -> Geometry:
    col, row = index % GRID_COLUMNS, index // GRID_COLUMNS
    return Geometry(20 + col * GRID_STEP_X, 20 + row * GRID_STEP_Y,
                    NODE_WIDTH, NODE_HEIGHT)


def _argument_concepts(m: Model, target_id: int) -> list[str]:
    """Concept names an argument node admits, sorted."""
    constants = {c.id: c for c in m.constants}
    concepts = {c.id: c.name for c in m.concepts}
    if target_id in constants:
        name = concepts.get(constants[target_id].concept)
        return [name] if name is not None else []
    names = set()
    for a in m.arcs:
        if a.is_type_arc and a.source == target_id and a.target in concepts:
            names.add(concepts[a.target])
    return sorted(names)


def _foldable(m: Model, p: PredicateNode) -> tuple[str, str, str] | None:
    """If the characteristic predicate folds to an attribute, return
    (owner concept, role long, attribute type); else None."""
    if p.kind is not PredicateKind.CHARACTERISTIC:
        return None
    plain = [a for a in m.arcs
             if not a.is_type_arc and a.source == p.id and a.role is not Role.RESULT]
    result = [a for a in m.arcs
              if not a.is_type_arc and a.source == p.id and a.role is Role.RESULT]
    if len(plain) != 1:
        return None
    owners = _argument_concepts(m, plain[0].target)
    if len(owners) != 1:
        return None
    if not result:
        return owners[0], plain[0].role.long, PLAIN_ATTRIBUTE_TYPE
    result_concepts = _argument_concepts(m, result[0].target)
    if len(result_concepts) != 1:
        return None
    return owners[0], plain[0].role.long, result_concepts[0]


def to_uml(m: Model) -> UMLModel:
    """Translate a valid model to its UML class model."""
    diags = validate_model(m)
    if diags:
        raise errors.InvalidModel(diags)

    concepts = {c.id: c.name for c in m.concepts}
    folded: dict[int, tuple[str, str, str]] = {}
    for p in m.predicates:
        fold = _foldable(m, p)
        if fold is not None:
            folded[p.id] = fold

    attributes: dict[str, list[Attribute]] = {name: [] for name in concepts.values()}
    for p in m.predicates:
        if p.id in folded:
            owner, role_long, type_name = folded[p.id]
            attributes[owner].append(
                Attribute(p.name, type_name, folded=True, role=role_long))

    classifiers = [
        Classifier(name, "none", tuple(sorted(attributes[name], key=lambda a: a.name)))
        for name in concepts.values()
    ]
    seen = set(concepts.values())
    for p in m.predicates:
        if p.id in folded:
            continue
        if p.name in seen:
            raise errors.NameCollision(
                f"predicate {p.name!r} collides with another classifier name")
        seen.add(p.name)
        classifiers.append(Classifier(p.name, _KIND_STEREOTYPES[p.kind]))

    associations = []
    for p in m.predicates:
        if p.id in folded:
            continue
        for a in m.arcs:
            if a.is_type_arc or a.source != p.id:
                continue
            for concept_name in _argument_concepts(m, a.target):
                associations.append(Association(p.name, concept_name, a.role.long))

    instances = [Instance(c.name, concepts[c.concept]) for c in m.constants]
    return UMLModel(classifiers, associations, instances)


def render_uml_text(u: UMLModel) -> str:
    """Deterministic PlantUML class-diagram text for a UML model."""
    lines = ["@startuml"]
    for c in u.classifiers:
        stereo = f" <<{c.stereotype}>>" if c.stereotype != "none" else ""
        if c.attributes:
            lines.append(f"class {c.name}{stereo} {{")
            for attr in c.attributes:
                lines.append(f"  {attr.name} : {attr.type_name}")
            lines.append("}")
        else:
            lines.append(f"class {c.name}{stereo}")
    for a in u.associations:
        lines.append(f"{a.source} --> {a.target} : {a.role}")
    for i in u.instances:
        lines.append(f"' instance {i.name} : {i.classifier}")
    lines.append("@enduml")
    return "\n".join(lines) + "\n"


class _ModelBuilder:
    """Accumulates elements with sequential ids and grid layout."""

    def __init__(self):
        self.model = Model()
        self._next_id = 1
        self._placed = 0

    def _take(self, place: bool) -> int:
        eid = self._next_id
        self._next_id += 1
        if place:
            self.model.geometry[eid] = grid_geometry(self._placed)
            self._placed += 1
        else:
            self.model.geometry[eid] = Geometry(0, 0)
        return eid

    def concept(self, name: str) -> int:
        eid = self._take(place=True)
        self.model.concepts.append(ConceptDef(eid, name))
        return eid

    def constant(self, name: str, concept: int) -> int:
        eid = self._take(place=True)
        self.model.constants.append(ConstantNode(eid, name, concept))
        return eid

    def variable(self, name: str) -> int:
        eid = self._take(place=True)
        self.model.variables.append(VariableNode(eid, name))
        return eid

    def predicate(self, name: str, kind: PredicateKind) -> int:
        eid = self._take(place=True)
        self.model.predicates.append(PredicateNode(eid, name, kind))
        return eid

    def arc(self, source: int, target: int, role: Role | None = None) -> int:
        eid = self._take(place=False)
        self.model.arcs.append(Arc(eid, source, target, role))
        return eid

    def finish(self) -> Model:
        return Model(**{f: getattr(self.model, f) for f in (
            "concepts", "constants", "variables", "predicates", "arcs",
            "frames", "geometry", "descriptions", "extras")})


def from_uml(u: UMLModel) -> Model:
    """Rebuild a frame model from a UML class model (inverse of to_uml up to
    layout, ids, and variable names)."""
    b = _ModelBuilder()
    concept_ids: dict[str, int] = {}
    predicate_ids: dict[str, int] = {}
    var_counter = 0

    plain = [c for c in u.classifiers if c.stereotype == "none"]
    stereotyped = [c for c in u.classifiers if c.stereotype != "none"]
    for c in stereotyped:
        if c.stereotype not in _STEREOTYPE_KINDS:
            raise errors.UnknownClassifier(
                f"classifier {c.name!r} has unknown stereotype {c.stereotype!r}")

    for c in plain:
        concept_ids[c.name] = b.concept(c.name)
    for c in stereotyped:
        predicate_ids[c.name] = b.predicate(c.name, _STEREOTYPE_KINDS[c.stereotype])

    def typed_variable(role_long: str, concept_names: list[str]) -> int:
        nonlocal var_counter
        var_counter += 1
        vid = b.variable(f"{role_long}_{var_counter}")
        for name in concept_names:
            if name not in concept_ids:
                raise errors.UnknownClassifier(
                    f"association targets unknown classifier {name!r}")
            b.arc(vid, concept_ids[name])
        return vid

    # Associations with the same (predicate, role) came from one variable
    # with several type arcs; merge them back.
    groups: dict[tuple[str, str], list[str]] = {}
    for a in u.associations:
        if a.source not in predicate_ids:
            raise errors.UnknownClassifier(
                f"association source {a.source!r} is not a predicate classifier")
        role = Role.from_long(a.role)
        groups.setdefault((a.source, role.long), []).append(a.target)

    for (pred_name, role_long), targets in sorted(groups.items()):
        vid = typed_variable(role_long, sorted(set(targets)))
        b.arc(predicate_ids[pred_name], vid, Role.from_long(role_long))

    # Unfold tagged attributes back into characteristic predicates.
    for c in plain:
        for attr in c.attributes:
            if not attr.folded:
                continue
            role = Role.from_long(attr.role) if attr.role else Role.OBJECT
            pid = b.predicate(attr.name, PredicateKind.CHARACTERISTIC)
            vid = typed_variable(role.long, [c.name])
            b.arc(pid, vid, role)
            if attr.type_name != PLAIN_ATTRIBUTE_TYPE:
                rid = typed_variable(Role.RESULT.long, [attr.type_name])
                b.arc(pid, rid, Role.RESULT)

    for i in u.instances:
        if i.classifier not in concept_ids:
            raise errors.UnknownClassifier(
                f"instance {i.name!r} has unknown classifier {i.classifier!r}")
        b.constant(i.name, concept_ids[i.classifier])

    return b.finish()
