import random

import pytest

from conceptforge import errors
from conceptforge.core import Geometry, Model, VariableNode
from conceptforge.xmlio import (
    XML_DECLARATION,
    ElementRecord,
    parse_model,
    parse_records,
    serialize_model,
)
from modelgen import random_model, supply_model


class TestParse:
    def test_single_variable_document(self, fixtures):
        m = parse_model((fixtures / "single_var.cmx").read_text())
        assert m.variables == [VariableNode(1, "MyVar")]
        assert m.geometry[1] == Geometry(100, 100, 100, 50)
        assert m.description(1) == "No Description"
        assert not m.concepts and not m.arcs and not m.frames

    def test_empty_dataset(self):
        assert parse_model("<NewDataSet/>") == Model()

    def test_role_arc_short_denotation(self):
        from conceptforge.core import Role, roles_of
        doc = "\n".join([
            XML_DECLARATION,
            "<NewDataSet>",
            "  <Elements><Id>3</Id><Type>Event</Type><Name>p</Name></Elements>",
            "  <Elements><Id>5</Id><Type>Var</Type><Name>x</Name></Elements>",
            "  <Elements><Id>6</Id><Type>RoleArc</Type><Name>a</Name>"
            "<Prev>3</Prev><Next>5</Next></Elements>",
            "</NewDataSet>",
        ])
        m = parse_model(doc)
        assert roles_of(m.predicates[0], m) == {Role.AGENT: 5}

    def test_malformed_xml_has_position(self):
        with pytest.raises(errors.ParseError) as exc:
            parse_model("<NewDataSet><Elements>")
        assert exc.value.line >= 1 and exc.value.column >= 1

    def test_unknown_type_tag(self):
        doc = "<NewDataSet><Elements><Id>1</Id><Type>Blob</Type></Elements></NewDataSet>"
        with pytest.raises(errors.UnknownElementType):
            parse_model(doc)

    def test_wrong_root(self):
        with pytest.raises(errors.ParseError):
            parse_model("<DataSet/>")

    def test_permissive_about_dangling_references(self):
        doc = ("<NewDataSet><Elements><Id>1</Id><Type>TArc</Type>"
               "<Prev>7</Prev><Next>9</Next></Elements></NewDataSet>")
        m = parse_model(doc)  # must load; validate_model reports the problem
        assert len(m.arcs) == 1

    def test_unknown_child_tags_preserved(self):
        doc = ("<NewDataSet><Elements><Id>1</Id><Type>Var</Type><Name>x</Name>"
               "<Color>red</Color></Elements></NewDataSet>")
        m = parse_model(doc)
        assert m.extras[1] == (("Color", "red"),)
        assert "<Color>red</Color>" in serialize_model(m)


class TestSerialize:
    def test_single_variable_byte_identity(self, fixtures):
        text = (fixtures / "single_var.cmx").read_text()
        assert serialize_model(parse_model(text)) == text

    def test_empty_model_envelope(self):
        assert serialize_model(Model()) == (
            XML_DECLARATION + "\n<NewDataSet>\n</NewDataSet>\n")

    def test_declaration_and_tag_order(self):
        text = serialize_model(supply_model())
        assert text.startswith(XML_DECLARATION + "\n")
        body = text[text.index("<Elements>"):text.index("</Elements>")]
        tags = [line.strip().split(">")[0][1:] for line in body.splitlines()[1:-1]]
        assert tags == ["Id", "Type", "Name", "Left", "Top", "Width", "Height",
                        "Prev", "Next", "Description"]

    def test_records_ascending_by_id(self):
        import re
        text = serialize_model(supply_model(with_constants=True))
        ids = [int(x) for x in re.findall(r"<Id>(\d+)</Id>", text)]
        assert ids == sorted(ids)

    def test_absent_description_serialized_as_default(self):
        m = Model(variables=[VariableNode(1, "x")], geometry={1: Geometry(0, 0)})
        assert "<Description>No Description</Description>" in serialize_model(m)


class TestRoundTrip:
    def test_supply_round_trip(self):
        m = supply_model(with_constants=True)
        assert parse_model(serialize_model(m)) == m

    def test_generated_corpus_round_trip(self):
        rng = random.Random(20)
        for _ in range(120):
            m = random_model(rng)
            assert parse_model(serialize_model(m)) == m

    def test_canonicalization_idempotent(self):
        rng = random.Random(21)
        for _ in range(60):
            d = serialize_model(random_model(rng))
            once = serialize_model(parse_model(d))
            assert serialize_model(parse_model(once)) == once

    def test_frame_simple_flag_round_trips(self):
        from conceptforge.core import Frame
        m = Model(frames=[Frame(1, "outer", frozenset({2}), simple=False),
                          Frame(2, "inner", frozenset())],
                  geometry={1: Geometry(0, 0), 2: Geometry(0, 0)})
        back = parse_model(serialize_model(m))
        assert [f.simple for f in back.frames] == [False, True]
        assert back == m


class TestRecordJson:
    def test_json_mirror_round_trip(self):
        r = ElementRecord(3, "RoleArc", "a", prev=1, next=2,
                          extra=(("Color", "red"),))
        assert ElementRecord.from_json(r.to_json()) == r

    def test_bad_json_record(self):
        with pytest.raises(errors.ParseError):
            ElementRecord.from_json({"type": "Var"})

    def test_parse_records_preserves_fields(self, fixtures):
        records = parse_records((fixtures / "single_var.cmx").read_text())
        assert records == [ElementRecord(1, "Var", "MyVar", 100, 100, 100, 50)]
