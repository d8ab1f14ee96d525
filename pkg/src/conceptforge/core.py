"""Frame metamodel: nodes, arcs, frames, validation, binding, and evaluation.

All operations are pure: they never mutate their inputs and may be called
concurrently. Broken models are representable; ``validate_model`` reports
problems as diagnostics instead of raising.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum

from . import errors

# Default for the Description field of stored elements.
DEFAULT_DESCRIPTION = "No Description"


class Role(Enum):
    """The five event-frame argument roles (short and long denotations)."""

    AGENT = ("a", "agent")
    OBJECT = ("o", "object")
    SOURCE = ("s", "source")
    DESTINATION = ("d", "destination")
    RESULT = ("r", "result")

    @property
    def short(self) -> str:
        return self.value[0]

    @property
    def long(self) -> str:
        return self.value[1]

    @classmethod
    def from_short(cls, s: str) -> "Role":
        for role in cls:
            if role.short == s:
                return role
        raise errors.UnknownRole(f"unknown role denotation {s!r}")

    @classmethod
    def from_long(cls, s: str) -> "Role":
        for role in cls:
            if role.long == s:
                return role
        raise errors.UnknownRole(f"unknown role name {s!r}")


class PredicateKind(Enum):
    """Predicate subdivision; the value doubles as the storage Type tag."""

    EVENT = "Event"
    FUNCTION = "Func"
    CHARACTERISTIC = "Char"


@dataclass(frozen=True)
class Geometry:
    """Pixel bounding box of an element on the canvas."""

    left: int
    top: int
    width: int = 100
    height: int = 50


@dataclass(frozen=True)
class ConceptDef:
    """A primary concept: a named type interpreted as a set of instances."""

    id: int
    name: str


@dataclass(frozen=True)
class ConstantNode:
    """A named individual of a primary concept; ``concept`` is its type."""

    id: int
    name: str
    concept: int


@dataclass(frozen=True)
class VariableNode:
    id: int
    name: str


@dataclass(frozen=True)
class PredicateNode:
    id: int
    name: str
    kind: PredicateKind = PredicateKind.EVENT


@dataclass(frozen=True)
class Arc:
    """Directed arc. ``role`` is ``None`` for type ("t") arcs and a
    :class:`Role` for role arcs."""

    id: int
    source: int
    target: int
    role: Role | None = None

    @property
    def is_type_arc(self) -> bool:
        return self.role is None


@dataclass(frozen=True)
class Frame:
    """A grouping of nodes and arcs representing one knowledge unit."""

    id: int
    name: str
    members: frozenset[int] = frozenset()
    simple: bool = True


@dataclass
class Model:
    """The complete element graph plus per-element layout and descriptions.

    Element ids share one namespace across every collection. Collections are
    kept sorted by id so structural equality is order-insensitive.
    """

    concepts: list[ConceptDef] = field(default_factory=list)
    constants: list[ConstantNode] = field(default_factory=list)
    variables: list[VariableNode] = field(default_factory=list)
    predicates: list[PredicateNode] = field(default_factory=list)
    arcs: list[Arc] = field(default_factory=list)
    frames: list[Frame] = field(default_factory=list)
    geometry: dict[int, Geometry] = field(default_factory=dict)
    descriptions: dict[int, str] = field(default_factory=dict)
    # Unknown stored child tags, preserved verbatim per element.
    extras: dict[int, tuple[tuple[str, str], ...]] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("concepts", "constants", "variables", "predicates", "arcs", "frames"):
            getattr(self, name).sort(key=lambda e: e.id)

    # -- lookup helpers -------------------------------------------------

    def nodes(self):
        """All non-arc, non-frame elements."""
        return [*self.concepts, *self.constants, *self.variables, *self.predicates]

    def elements(self):
        return [*self.nodes(), *self.arcs, *self.frames]

    def element(self, element_id: int):
        for e in self.elements():
            if e.id == element_id:
                return e
        return None

    def frame(self, frame_id: int) -> Frame:
        for f in self.frames:
            if f.id == frame_id:
                return f
        raise errors.NotFound(f"no frame with id {frame_id}")

    def description(self, element_id: int) -> str:
        return self.descriptions.get(element_id, DEFAULT_DESCRIPTION)

    def copy(self) -> "Model":
        return Model(
            concepts=list(self.concepts),
            constants=list(self.constants),
            variables=list(self.variables),
            predicates=list(self.predicates),
            arcs=list(self.arcs),
            frames=list(self.frames),
            geometry=dict(self.geometry),
            descriptions=dict(self.descriptions),
            extras=dict(self.extras),
        )


@dataclass
class Binding:
    """Variable-to-constant assignments used to instantiate a template."""

    assignments: dict[int, int] = field(default_factory=dict)


@dataclass
class Interpretation:
    """Finite extensional interpretation of a model.

    ``concept_extents`` assigns each concept its set of instance identifiers,
    ``constant_instances`` binds each constant to one instance, and ``facts``
    holds, per predicate name, the role-binding tuples that are true.
    """

    concept_extents: dict[int, frozenset[str]] = field(default_factory=dict)
    constant_instances: dict[int, str] = field(default_factory=dict)
    facts: dict[str, list[dict[Role, str]]] = field(default_factory=dict)


class DiagnosticCode(str, Enum):
    UNTYPED_VARIABLE = "UNTYPED_VARIABLE"
    DANGLING_ARC = "DANGLING_ARC"
    BAD_ARC_ENDPOINTS = "BAD_ARC_ENDPOINTS"
    DUPLICATE_ID = "DUPLICATE_ID"
    DUPLICATE_CONCEPT = "DUPLICATE_CONCEPT"
    SELF_ARC = "SELF_ARC"
    NONSIMPLE_MARKED_SIMPLE = "NONSIMPLE_MARKED_SIMPLE"
    FUNCTION_RESULT_ARITY = "FUNCTION_RESULT_ARITY"
    DUPLICATE_ROLE = "DUPLICATE_ROLE"
    EMPTY_PREDICATE = "EMPTY_PREDICATE"


@dataclass(frozen=True)
class Diagnostic:
    code: DiagnosticCode
    subject: int
    message: str


def _sorted_diagnostics(diags: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=lambda d: (d.subject, d.code.value))


def validate_model(m: Model) -> list[Diagnostic]:
    """Check every structural invariant; return all violations.

    Never raises: arbitrary broken models are acceptable input. The result is
    deterministically ordered by (subject id, code name) and is empty exactly
    when the model is valid.
    """
    diags: list[Diagnostic] = []
    by_id: dict[int, object] = {}
    seen_dup: set[int] = set()
    for e in m.elements():
        if e.id in by_id and e.id not in seen_dup:
            seen_dup.add(e.id)
            diags.append(Diagnostic(
                DiagnosticCode.DUPLICATE_ID, e.id,
                f"id {e.id} is used by more than one element"))
        by_id.setdefault(e.id, e)

    node_ids = {n.id for n in m.nodes()}
    concept_ids = {c.id for c in m.concepts}
    variable_ids = {v.id for v in m.variables}
    constant_ids = {c.id for c in m.constants}
    predicate_ids = {p.id for p in m.predicates}

    seen_names: dict[str, int] = {}
    for c in m.concepts:
        if c.name in seen_names:
            diags.append(Diagnostic(
                DiagnosticCode.DUPLICATE_CONCEPT, c.id,
                f"concept name {c.name!r} already used by id {seen_names[c.name]}"))
        else:
            seen_names[c.name] = c.id

    for c in m.constants:
        if c.concept not in by_id:
            diags.append(Diagnostic(
                DiagnosticCode.DANGLING_ARC, c.id,
                f"constant {c.name!r} references missing concept id {c.concept}"))
        elif c.concept not in concept_ids:
            diags.append(Diagnostic(
                DiagnosticCode.BAD_ARC_ENDPOINTS, c.id,
                f"constant {c.name!r} is typed by non-concept element {c.concept}"))

    for a in m.arcs:
        if a.source == a.target:
            diags.append(Diagnostic(
                DiagnosticCode.SELF_ARC, a.id, f"arc {a.id} loops on element {a.source}"))
            continue
        dangling = [x for x in (a.source, a.target) if x not in by_id]
        if dangling:
            diags.append(Diagnostic(
                DiagnosticCode.DANGLING_ARC, a.id,
                f"arc {a.id} references missing element(s) {dangling}"))
            continue
        if a.is_type_arc:
            ok = a.source in variable_ids and a.target in concept_ids
        else:
            ok = a.source in predicate_ids and (
                a.target in variable_ids or a.target in constant_ids)
        if not ok:
            kind = "type arc" if a.is_type_arc else "role arc"
            diags.append(Diagnostic(
                DiagnosticCode.BAD_ARC_ENDPOINTS, a.id,
                f"{kind} {a.id} has endpoints of the wrong kind "
                f"({a.source} -> {a.target})"))

    typed = {a.source for a in m.arcs if a.is_type_arc and a.source != a.target}
    for v in m.variables:
        if v.id not in typed:
            diags.append(Diagnostic(
                DiagnosticCode.UNTYPED_VARIABLE, v.id,
                f"variable {v.name!r} has no type arc"))

    for p in m.predicates:
        role_arcs = [a for a in m.arcs
                     if not a.is_type_arc and a.source == p.id and a.source != a.target]
        if not role_arcs:
            diags.append(Diagnostic(
                DiagnosticCode.EMPTY_PREDICATE, p.id,
                f"predicate {p.name!r} has no role arcs"))
        seen_roles: set[Role] = set()
        duplicated: set[Role] = set()
        for a in role_arcs:
            if a.role in seen_roles and a.role not in duplicated:
                duplicated.add(a.role)
                diags.append(Diagnostic(
                    DiagnosticCode.DUPLICATE_ROLE, p.id,
                    f"predicate {p.name!r} has multiple {a.role.long!r} arcs"))
            seen_roles.add(a.role)
        if p.kind is PredicateKind.FUNCTION:
            n_result = sum(1 for a in role_arcs if a.role is Role.RESULT)
            if n_result != 1:
                diags.append(Diagnostic(
                    DiagnosticCode.FUNCTION_RESULT_ARITY, p.id,
                    f"function {p.name!r} has {n_result} result arcs, needs exactly 1"))

    frame_ids = {f.id for f in m.frames}
    for f in m.frames:
        missing = sorted(x for x in f.members if x not in by_id)
        if missing:
            diags.append(Diagnostic(
                DiagnosticCode.DANGLING_ARC, f.id,
                f"frame {f.name!r} references missing member(s) {missing}"))
        if f.simple and any(x in frame_ids for x in f.members):
            diags.append(Diagnostic(
                DiagnosticCode.NONSIMPLE_MARKED_SIMPLE, f.id,
                f"frame {f.name!r} is marked simple but contains sub-frames"))

    return _sorted_diagnostics(diags)


# -- frame-level operations ---------------------------------------------


def _frame_role_arcs(m: Model, frame: Frame) -> list[Arc]:
    """Role arcs of the frame's predicates, in arc-id order."""
    preds = {p.id for p in m.predicates if p.id in frame.members}
    return [a for a in m.arcs if not a.is_type_arc and a.source in preds]


def _variable_concepts(m: Model, variable_id: int) -> dict[int, str]:
    """Concepts assigned to a variable by its type arcs, id -> name."""
    concepts = {c.id: c.name for c in m.concepts}
    out: dict[int, str] = {}
    for a in m.arcs:
        if a.is_type_arc and a.source == variable_id and a.target in concepts:
            out[a.target] = concepts[a.target]
    return out


def frame_variables(m: Model, frame: Frame) -> list[VariableNode]:
    """Variables serving as predicate arguments inside the frame."""
    ids = {a.target for a in _frame_role_arcs(m, frame)}
    return [v for v in m.variables if v.id in ids]


def is_template(m: Model, frame_id: int) -> bool:
    """True when any predicate argument in the frame is still a variable."""
    frame = m.frame(frame_id)
    variable_ids = {v.id for v in m.variables}
    return any(a.target in variable_ids for a in _frame_role_arcs(m, frame))


def instantiate(m: Model, frame_id: int, b: Binding) -> Model:
    """Substitute bound constants for the frame's variables.

    Returns a new model in which every role arc that targeted a bound
    variable targets the assigned constant instead; the input is untouched.
    """
    frame = m.frame(frame_id)
    constants = {c.id: c for c in m.constants}
    concepts = {c.id: c.name for c in m.concepts}

    for v in frame_variables(m, frame):
        if v.id not in b.assignments:
            raise errors.PartialBinding(v.id, v.name)
        const = constants.get(b.assignments[v.id])
        if const is None:
            raise errors.NotFound(
                f"binding for {v.name!r} references missing constant "
                f"{b.assignments[v.id]}")
        admitted = _variable_concepts(m, v.id)
        if const.concept not in admitted:
            raise errors.TypeMismatch(
                v.name, sorted(admitted.values()),
                concepts.get(const.concept, f"#{const.concept}"))

    bound = {v.id: b.assignments[v.id] for v in frame_variables(m, frame)}
    out = m.copy()
    out.arcs = [
        dataclasses.replace(a, target=bound[a.target])
        if (not a.is_type_arc and a.target in bound) else a
        for a in m.arcs
    ]
    return out


def evaluate(m: Model, frame_id: int, i: Interpretation) -> bool:
    """Truth value of a fully instantiated frame under an interpretation.

    Each predicate's role tuple must be a member of the predicate's fact set;
    a frame with several predicates is the conjunction.
    """
    frame = m.frame(frame_id)
    if is_template(m, frame_id):
        raise errors.NotFullyInstantiated(
            f"frame {frame.name!r} still has variable arguments")
    constants = {c.id: c for c in m.constants}

    fact_index: dict[str, set[frozenset]] = {
        name: {frozenset((role, inst) for role, inst in t.items()) for t in tuples}
        for name, tuples in i.facts.items()
    }

    for p in (p for p in m.predicates if p.id in frame.members):
        tuple_items = set()
        for a in m.arcs:
            if a.is_type_arc or a.source != p.id:
                continue
            const = constants.get(a.target)
            if const is None:
                continue
            if const.id not in i.constant_instances:
                raise errors.UnboundConstant(
                    f"constant {const.name!r} has no instance in the interpretation")
            tuple_items.add((a.role, i.constant_instances[const.id]))
        if frozenset(tuple_items) not in fact_index.get(p.name, set()):
            return False
    return True


def roles_of(p: PredicateNode, m: Model) -> dict[Role, int]:
    """Role -> argument element id induced by the predicate's role arcs."""
    out: dict[Role, int] = {}
    for a in m.arcs:
        if not a.is_type_arc and a.source == p.id and a.source != a.target:
            out[a.role] = a.target
    return out


def interpretation_warnings(m: Model, i: Interpretation) -> list[str]:
    """Soft checks on an interpretation against a model.

    Flags constants whose instance falls outside their concept's extent and
    function predicates whose facts are not functional in the result role.
    """
    warnings: list[str] = []
    constants = {c.id: c for c in m.constants}
    for cid, inst in sorted(i.constant_instances.items()):
        const = constants.get(cid)
        if const is None:
            continue
        extent = i.concept_extents.get(const.concept, frozenset())
        if inst not in extent:
            warnings.append(
                f"constant {const.name!r}: instance {inst!r} is outside its "
                f"concept's extent")
    for p in m.predicates:
        if p.kind is not PredicateKind.FUNCTION:
            continue
        seen: dict[frozenset, str] = {}
        for t in i.facts.get(p.name, []):
            args = frozenset((r, v) for r, v in t.items() if r is not Role.RESULT)
            result = t.get(Role.RESULT)
            if args in seen and seen[args] != result:
                warnings.append(
                    f"function {p.name!r}: facts disagree on result for the "
                    f"same arguments")
                break
            seen[args] = result
    return warnings
