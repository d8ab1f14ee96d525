"""Reader/writer for the element-record XML storage format (``.cmx`` files).

Every element (node, arc, frame) is one ``Elements`` record under the
``NewDataSet`` root, with child tags in the fixed order Id, Type, Name, Left,
Top, Width, Height, Prev, Next, Description. Arcs reuse Prev/Next as
source/target ids; nodes and frames reuse Prev as owning-frame id (0 = top
level); constant records reuse Next as their concept id. Output is canonical:
2-space indent, LF endings, UTF-8, records sorted by id.

Parsing is permissive (dangling references load fine and are reported later
by ``validate_model``); unknown child tags are preserved and re-emitted.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from . import errors
from .core import (
    DEFAULT_DESCRIPTION,
    Arc,
    ConceptDef,
    ConstantNode,
    Frame,
    Geometry,
    Model,
    PredicateKind,
    PredicateNode,
    Role,
    VariableNode,
)

XML_DECLARATION = '<?xml version="1.0" standalone="yes" ?>'

# Child tags with dedicated record fields, in serialization order.
_FIXED_TAGS = ("Id", "Type", "Name", "Left", "Top", "Width", "Height",
               "Prev", "Next", "Description")

_NODE_TAGS = {"Concept", "Const", "Var", "Event", "Func", "Char"}
_KNOWN_TAGS = _NODE_TAGS | {"TArc", "RoleArc", "Frame"}

_KIND_BY_TAG = {k.value: k for k in PredicateKind}


@dataclass
class ElementRecord:
    """Field-for-field mirror of one stored ``Elements`` record."""

    id: int
    type: str
    name: str = ""
    left: int = 0
    top: int = 0
    width: int = 100
    height: int = 50
    prev: int = 0
    next: int = 0
    description: str = DEFAULT_DESCRIPTION
    extra: tuple[tuple[str, str], ...] = ()

    def to_json(self) -> dict:
        d = {
            "id": self.id, "type": self.type, "name": self.name,
            "left": self.left, "top": self.top,
            "width": self.width, "height": self.height,
            "prev": self.prev, "next": self.next,
            "description": self.description,
        }
        if self.extra:
            d["extra"] = [list(pair) for pair in self.extra]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ElementRecord":
        try:
            return cls(
                id=int(d["id"]), type=str(d["type"]), name=str(d.get("name", "")),
                left=int(d.get("left", 0)), top=int(d.get("top", 0)),
                width=int(d.get("width", 100)), height=int(d.get("height", 50)),
                prev=int(d.get("prev", 0)), next=int(d.get("next", 0)),
                description=str(d.get("description", DEFAULT_DESCRIPTION)),
                extra=tuple((str(t), str(v)) for t, v in d.get("extra", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise errors.ParseError(f"bad element record: {exc}", 1, 1)


# -- Model <-> records ---------------------------------------------------


def model_to_records(m: Model) -> list[ElementRecord]:
    """Flatten a model into its canonical record list (sorted by id)."""
    owner: dict[int, int] = {}
    for f in sorted(m.frames, key=lambda f: f.id):
        for member in f.members:
            owner.setdefault(member, f.id)

    records: list[ElementRecord] = []

    def geom(eid: int) -> Geometry:
        return m.geometry.get(eid, Geometry(0, 0))

    def base(eid: int, type_tag: str, name: str, prev: int, next_: int,
             extra: tuple = ()) -> ElementRecord:
        g = geom(eid)
        return ElementRecord(
            id=eid, type=type_tag, name=name,
            left=g.left, top=g.top, width=g.width, height=g.height,
            prev=prev, next=next_,
            description=m.descriptions.get(eid, DEFAULT_DESCRIPTION),
            extra=m.extras.get(eid, ()) + extra,
        )

    for c in m.concepts:
        records.append(base(c.id, "Concept", c.name, owner.get(c.id, 0), 0))
    for c in m.constants:
        records.append(base(c.id, "Const", c.name, owner.get(c.id, 0), c.concept))
    for v in m.variables:
        records.append(base(v.id, "Var", v.name, owner.get(v.id, 0), 0))
    for p in m.predicates:
        records.append(base(p.id, p.kind.value, p.name, owner.get(p.id, 0), 0))
    for a in m.arcs:
        if a.is_type_arc:
            records.append(base(a.id, "TArc", "t", a.source, a.target))
        else:
            records.append(base(a.id, "RoleArc", a.role.short, a.source, a.target))
    for f in m.frames:
        records.append(base(f.id, "Frame", f.name, owner.get(f.id, 0), 0,
                            extra=(("Simple", "1" if f.simple else "0"),)))

    records.sort(key=lambda r: r.id)
    return records


def records_to_model(records: list[ElementRecord]) -> Model:
    """Rebuild a model from records; permissive about broken references."""
    m = Model()
    frame_members: dict[int, set[int]] = {}
    frame_simple: dict[int, bool] = {}
    node_owner: dict[int, int] = {}

    for r in records:
        extra = r.extra
        if r.type in _NODE_TAGS or r.type == "Frame":
            node_owner[r.id] = r.prev
        if r.type == "Concept":
            m.concepts.append(ConceptDef(r.id, r.name))
        elif r.type == "Const":
            m.constants.append(ConstantNode(r.id, r.name, r.next))
        elif r.type == "Var":
            m.variables.append(VariableNode(r.id, r.name))
        elif r.type in _KIND_BY_TAG:
            m.predicates.append(PredicateNode(r.id, r.name, _KIND_BY_TAG[r.type]))
        elif r.type == "TArc":
            m.arcs.append(Arc(r.id, r.prev, r.next))
        elif r.type == "RoleArc":
            m.arcs.append(Arc(r.id, r.prev, r.next, Role.from_short(r.name)))
        elif r.type == "Frame":
            simple = True
            kept = []
            for tag, value in extra:
                if tag == "Simple":
                    simple = value != "0"
                else:
                    kept.append((tag, value))
            extra = tuple(kept)
            frame_members[r.id] = set()
            frame_simple[r.id] = simple
        else:
            raise errors.UnknownElementType(
                f"record {r.id} has unknown Type {r.type!r}")
        m.geometry[r.id] = Geometry(r.left, r.top, r.width, r.height)
        if r.description != DEFAULT_DESCRIPTION:
            m.descriptions[r.id] = r.description
        if extra:
            m.extras[r.id] = extra

    frame_names = {r.id: r.name for r in records if r.type == "Frame"}
    for eid, prev in node_owner.items():
        if prev in frame_members:
            frame_members[prev].add(eid)
    # Arc membership is derived: an arc belongs to a frame when both its
    # endpoints do.
    for a in m.arcs:
        for members in frame_members.values():
            if a.source in members and a.target in members:
                members.add(a.id)
    for fid in sorted(frame_members):
        m.frames.append(Frame(fid, frame_names[fid],
                              frozenset(frame_members[fid]), frame_simple[fid]))
    return Model(**{f: getattr(m, f) for f in (
        "concepts", "constants", "variables", "predicates", "arcs", "frames",
        "geometry", "descriptions", "extras")})


# -- XML text <-> records ------------------------------------------------


def parse_records(document: str) -> list[ElementRecord]:
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        line, col = exc.position
        raise errors.ParseError(f"malformed XML: {exc.msg.split(':')[0]}",
                                line, col + 1)
    if root.tag != "NewDataSet":
        raise errors.ParseError(f"expected root NewDataSet, got {root.tag}", 1, 1)

    records: list[ElementRecord] = []
    for elem in root:
        if elem.tag != "Elements":
            raise errors.ParseError(f"unexpected element {elem.tag!r}", 1, 1)
        fields: dict[str, str] = {}
        extra: list[tuple[str, str]] = []
        for child in elem:
            text = child.text or ""
            if child.tag in _FIXED_TAGS:
                fields[child.tag] = text
            else:
                extra.append((child.tag, text))
        try:
            record = ElementRecord(
                id=int(fields.get("Id", "0")),
                type=fields.get("Type", ""),
                name=fields.get("Name", ""),
                left=int(fields.get("Left", "0")),
                top=int(fields.get("Top", "0")),
                width=int(fields.get("Width", "100")),
                height=int(fields.get("Height", "50")),
                prev=int(fields.get("Prev", "0")),
                next=int(fields.get("Next", "0")),
                description=fields.get("Description", DEFAULT_DESCRIPTION),
                extra=tuple(extra),
            )
        except ValueError as exc:
            raise errors.ParseError(f"bad record value: {exc}", 1, 1)
        if record.type not in _KNOWN_TAGS:
            raise errors.UnknownElementType(
                f"record {record.id} has unknown Type {record.type!r}")
        records.append(record)
    return records


def serialize_records(records: list[ElementRecord]) -> str:
    lines = [XML_DECLARATION, "<NewDataSet>"]
    for r in sorted(records, key=lambda r: r.id):
        lines.append("  <Elements>")
        values = (r.id, r.type, r.name, r.left, r.top, r.width, r.height,
                  r.prev, r.next, r.description)
        for tag, value in zip(_FIXED_TAGS, values):
            lines.append(f"    <{tag}>{escape(str(value))}</{tag}>")
        for tag, value in r.extra:
            lines.append(f"    <{tag}>{escape(value)}</{tag}>")
        lines.append("  </Elements>")
    lines.append("</NewDataSet>")
    return "\n".join(lines) + "\n"


def parse_model(document: str) -> Model:
    """Parse ``.cmx`` XML text into a model."""
    return records_to_model(parse_records(document))


def serialize_model(m: Model) -> str:
    """Emit the canonical ``.cmx`` XML text for a model."""
    return serialize_records(model_to_records(m))
