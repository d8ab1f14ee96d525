"""Relational compilation: UML class models to SQL DDL and back to frames.

Concept classifiers become tables with a surrogate integer ``id`` key and a
``name`` text column; predicate classifiers become tables with one
``<role>_id`` foreign key per association; instances become seed rows.

The emitted DDL is a small ANSI subset (grammar below) that ``parse_ddl``
reads back exactly. Predicate kind and folded characteristic attributes
cannot be expressed in plain DDL, so the emitter writes comment markers
(``-- kind:function``, ``-- characteristic role:... [result:...]``) that the
parser honors; everything else after ``--`` is ignored.

    statement  := create | insert
    create     := "CREATE" "TABLE" name "(" column {"," column} {"," constraint} ")" ";"
    column     := name ("INTEGER" | "VARCHAR" "(" "255" ")")
    constraint := "PRIMARY" "KEY" "(" name ")"
                | "FOREIGN" "KEY" "(" name ")" "REFERENCES" name "(" "id" ")"
    insert     := "INSERT" "INTO" name "(" name {"," name} ")"
                  "VALUES" "(" literal {"," literal} ")" ";"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import errors
from .core import Model, PredicateKind, Role
from .uml import PLAIN_ATTRIBUTE_TYPE, UMLModel, _ModelBuilder

IDENT = "IDENT"
TEXT = "TEXT"

_SQL_TYPES = {IDENT: "INTEGER", TEXT: "VARCHAR(255)"}

_KIND_MARKERS = {
    PredicateKind.FUNCTION: "function",
    PredicateKind.CHARACTERISTIC: "characteristic",
}


@dataclass(frozen=True)
class Column:
    name: str
    type: str  # IDENT or TEXT
    nullable: bool = True
    # Folded characteristic metadata (carried through DDL as a comment).
    characteristic_role: str | None = None
    characteristic_result: str | None = None


@dataclass(frozen=True)
class ForeignKey:
    column: str
    references: str


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple[Column, ...]
    primary_key: str = "id"
    foreign_keys: tuple[ForeignKey, ...] = ()
    kind: str | None = None  # None/"event"/"function"/"characteristic"


@dataclass(frozen=True)
class SeedRow:
    table: str
    values: tuple[tuple[str, object], ...]  # (column, int or str) pairs


@dataclass
class RelationalSchema:
    tables: list[Table] = field(default_factory=list)
    seed_rows: list[SeedRow] = field(default_factory=list)

    def __post_init__(self):
        self.tables.sort(key=lambda t: t.name)
        self.seed_rows.sort(key=lambda r: (r.table, dict(r.values).get("id", 0)))

    def table(self, name: str) -> Table:
        for t in self.tables:
            if t.name == name:
                return t
        raise errors.NotFound(f"no table named {name!r}")


_SNAKE_RE = re.compile(r"[^a-z0-9]+")


def snake(name: str) -> str:
    out = _SNAKE_RE.sub("_", name.lower()).strip("_")
    return out or "x"


def to_schema(u: UMLModel) -> RelationalSchema:
    """Compile a UML class model into a relational schema with seed rows."""
    plain_names = {c.name for c in u.classifiers if c.stereotype == "none"}
    table_of: dict[str, str] = {}
    for c in u.classifiers:
        t = snake(c.name)
        if t in table_of.values():
            raise errors.NameCollision(
                f"classifiers {c.name!r} and another map to table {t!r}")
        table_of[c.name] = t

    tables: list[Table] = []
    for c in u.classifiers:
        if c.stereotype == "none":
            columns = [Column("id", IDENT, nullable=False),
                       Column("name", TEXT)]
            for attr in sorted(c.attributes, key=lambda a: a.name):
                if not attr.folded:
                    continue
                result = (None if attr.type_name == PLAIN_ATTRIBUTE_TYPE
                          else table_of.get(attr.type_name, snake(attr.type_name)))
                columns.append(Column(
                    snake(attr.name), TEXT,
                    characteristic_role=attr.role,
                    characteristic_result=result))
            tables.append(Table(table_of[c.name], tuple(columns)))
        else:
            columns = [Column("id", IDENT, nullable=False)]
            fks = []
            seen_roles: set[str] = set()
            for a in u.associations:
                if a.source != c.name:
                    continue
                if a.target not in plain_names:
                    raise errors.UnsupportedNesting(
                        f"association {a.source!r} -> {a.target!r} targets a "
                        f"predicate classifier")
                if a.role in seen_roles:
                    raise errors.DuplicateRoleColumn(
                        f"predicate {c.name!r} has two {a.role!r} associations; "
                        f"column {a.role}_id would collide")
                seen_roles.add(a.role)
                column = f"{a.role}_id"
                columns.append(Column(column, IDENT, nullable=False))
                fks.append(ForeignKey(column, table_of[a.target]))
            tables.append(Table(table_of[c.name], tuple(columns),
                                foreign_keys=tuple(fks), kind=c.stereotype))

    seed_rows: list[SeedRow] = []
    counters: dict[str, int] = {}
    for inst in u.instances:  # already sorted by (classifier, name)
        t = table_of[inst.classifier]
        counters[t] = counters.get(t, 0) + 1
        seed_rows.append(SeedRow(t, (("id", counters[t]), ("name", inst.name))))

    return RelationalSchema(tables, seed_rows)


def _topo_order(s: RelationalSchema) -> list[Table]:
    """Referenced-before-referencing order, name-sorted within ranks."""
    remaining = {t.name: t for t in s.tables}
    emitted: set[str] = set()
    order: list[Table] = []
    while remaining:
        ready = sorted(
            name for name, t in remaining.items()
            if all(fk.references in emitted or fk.references == name
                   for fk in t.foreign_keys))
        if not ready:
            raise errors.CyclicDependency(
                f"foreign keys among {sorted(remaining)} form a cycle")
        for name in ready:
            order.append(remaining.pop(name))
            emitted.add(name)
    return order


def render_sql(s: RelationalSchema) -> str:
    """Deterministic DDL + seed INSERTs for a schema."""
    out: list[str] = []
    for t in _topo_order(s):
        if t.kind in ("function", "characteristic"):
            out.append(f"-- kind:{t.kind}")
        out.append(f"CREATE TABLE {t.name} (")
        fk_by_column = {fk.column: fk for fk in t.foreign_keys}
        body: list[str] = []
        for c in t.columns:
            line = f"  {c.name} {_SQL_TYPES[c.type]}"
            if c.characteristic_role is not None:
                marker = f" -- characteristic role:{c.characteristic_role}"
                if c.characteristic_result is not None:
                    marker += f" result:{c.characteristic_result}"
                body.append((line, marker))
            else:
                body.append((line, ""))
        body.append((f"  PRIMARY KEY ({t.primary_key})", ""))
        for fk in t.foreign_keys:
            body.append(
                (f"  FOREIGN KEY ({fk.column}) REFERENCES {fk.references}(id)", ""))
        for i, (line, marker) in enumerate(body):
            comma = "," if i < len(body) - 1 else ""
            out.append(f"{line}{comma}{marker}")
        out.append(");")
        out.append("")
    for row in s.seed_rows:
        cols = ", ".join(name for name, _ in row.values)
        vals = ", ".join(
            str(v) if isinstance(v, int) else "'%s'" % str(v).replace("'", "''")
            for _, v in row.values)
        out.append(f"INSERT INTO {row.table} ({cols}) VALUES ({vals});")
    text = "\n".join(out)
    return text.strip("\n") + "\n" if text.strip() else ""


# -- DDL subset parser ---------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>--[^\n]*)"
    r"|(?P<number>\d+)"
    r"|(?P<string>'(?:[^']|'')*')"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[(),;])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # word / number / string / punct / eof
    text: str
    line: int
    column: int


def _tokenize(text: str):
    tokens: list[_Token] = []
    comments: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise errors.ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = match.lastgroup
        chunk = match.group()
        if kind == "comment":
            comments.append(_Token("comment", chunk, line, col))
        elif kind != "ws":
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = match.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens, comments


_CHAR_MARKER_RE = re.compile(
    r"^--\s*characteristic\s+role:(?P<role>[a-z]+)(?:\s+result:(?P<result>\w+))?\s*$")
_KIND_MARKER_RE = re.compile(r"^--\s*kind:(?P<kind>function|characteristic)\s*$")


class _DdlParser:
    def __init__(self, text: str):
        self._tokens, comments = _tokenize(text)
        self._pos = 0
        self._kind_markers: dict[int, str] = {}       # line -> kind
        self._char_markers: dict[int, tuple[str, str | None]] = {}  # line -> (role, result)
        for c in comments:
            kind_match = _KIND_MARKER_RE.match(c.text)
            if kind_match:
                self._kind_markers[c.line] = kind_match.group("kind")
                continue
            char_match = _CHAR_MARKER_RE.match(c.text)
            if char_match:
                self._char_markers[c.line] = (
                    char_match.group("role"), char_match.group("result"))

    def _peek(self) -> _Token:
        return self._tokens[self._pos]

    def _next(self) -> _Token:
        tok = self._tokens[self._pos]
        if tok.kind != "eof":
            self._pos += 1
        return tok

    def _error(self, message: str, expected=()):
        tok = self._peek()
        raise errors.ParseError(message, tok.line, tok.column, expected)

    def _keyword(self, *words: str) -> str:
        tok = self._peek()
        if tok.kind == "word" and tok.text.upper() in words:
            self._next()
            return tok.text.upper()
        self._error(f"unexpected {tok.text or 'end of input'!r}", expected=words)

    def _punct(self, ch: str):
        tok = self._peek()
        if tok.kind == "punct" and tok.text == ch:
            self._next()
            return
        self._error(f"unexpected {tok.text or 'end of input'!r}", expected={ch})

    def _name(self) -> str:
        tok = self._peek()
        if tok.kind == "word":
            self._next()
            return tok.text
        self._error(f"expected a name, got {tok.text or 'end of input'!r}",
                    expected={"name"})

    def parse(self) -> RelationalSchema:
        tables: list[Table] = []
        rows: list[SeedRow] = []
        while self._peek().kind != "eof":
            word = self._keyword("CREATE", "INSERT")
            if word == "CREATE":
                tables.append(self._create_table())
            else:
                rows.append(self._insert())
        return RelationalSchema(tables, rows)

    def _column_type(self) -> str:
        word = self._keyword("INTEGER", "VARCHAR")
        if word == "INTEGER":
            return IDENT
        self._punct("(")
        tok = self._peek()
        if tok.kind != "number" or tok.text != "255":
            self._error("VARCHAR length must be 255", expected={"255"})
        self._next()
        self._punct(")")
        return TEXT

    def _create_table(self) -> Table:
        create_line = self._tokens[self._pos - 1].line
        kind = self._kind_markers.get(create_line - 1)
        self._keyword("TABLE")
        name = self._name()
        self._punct("(")
        columns: list[Column] = []
        primary_key: str | None = None
        fks: list[ForeignKey] = []
        while True:
            tok = self._peek()
            if tok.kind == "word" and tok.text.upper() == "PRIMARY":
                self._next()
                self._keyword("KEY")
                self._punct("(")
                primary_key = self._name()
                self._punct(")")
            elif tok.kind == "word" and tok.text.upper() == "FOREIGN":
                self._next()
                self._keyword("KEY")
                self._punct("(")
                column = self._name()
                self._punct(")")
                self._keyword("REFERENCES")
                ref = self._name()
                self._punct("(")
                if self._name() != "id":
                    self._error("foreign keys must reference id", expected={"id"})
                self._punct(")")
                fks.append(ForeignKey(column, ref))
            else:
                col_line = self._peek().line
                col_name = self._name()
                col_type = self._column_type()
                role, result = self._char_markers.get(col_line, (None, None))
                columns.append(Column(col_name, col_type,
                                      characteristic_role=role,
                                      characteristic_result=result))
            tok = self._peek()
            if tok.kind == "punct" and tok.text == ",":
                self._next()
                continue
            break
        self._punct(")")
        self._punct(";")
        if primary_key is None:
            self._error(f"table {name!r} has no PRIMARY KEY")
        fk_columns = {fk.column for fk in fks}
        columns = [
            Column(c.name, c.type,
                   nullable=not (c.name == primary_key or c.name in fk_columns),
                   characteristic_role=c.characteristic_role,
                   characteristic_result=c.characteristic_result)
            for c in columns
        ]
        if kind is None and fks:
            kind = "event"
        return Table(name, tuple(columns), primary_key, tuple(fks), kind)

    def _insert(self) -> SeedRow:
        self._keyword("INTO")
        table = self._name()
        self._punct("(")
        cols = [self._name()]
        while self._peek().text == ",":
            self._next()
            cols.append(self._name())
        self._punct(")")
        self._keyword("VALUES")
        self._punct("(")
        values: list[object] = [self._literal()]
        while self._peek().text == ",":
            self._next()
            values.append(self._literal())
        self._punct(")")
        self._punct(";")
        if len(cols) != len(values):
            self._error(f"INSERT into {table!r} has {len(cols)} columns but "
                        f"{len(values)} values")
        return SeedRow(table, tuple(zip(cols, values)))

    def _literal(self):
        tok = self._peek()
        if tok.kind == "number":
            self._next()
            return int(tok.text)
        if tok.kind == "string":
            self._next()
            return tok.text[1:-1].replace("''", "'")
        self._error(f"expected a literal, got {tok.text or 'end of input'!r}",
                    expected={"number", "string"})


def parse_ddl(text: str) -> RelationalSchema:
    """Parse DDL text within the emitted subset back into a schema."""
    return _DdlParser(text).parse()


# -- reverse mapping to frames -------------------------------------------


def schema_to_frames(s: RelationalSchema) -> Model:
    """Rebuild a frame model from a schema shaped like ``to_schema`` output."""
    concept_tables = [t for t in s.tables if not t.foreign_keys]
    predicate_tables = [t for t in s.tables if t.foreign_keys]

    b = _ModelBuilder()
    concept_ids: dict[str, int] = {}
    var_counter = 0

    def typed_variable(role: Role, concept_table: str) -> int:
        nonlocal var_counter
        if concept_table not in concept_ids:
            raise errors.SchemaShapeError(
                f"reference to non-concept table {concept_table!r}")
        var_counter += 1
        vid = b.variable(f"{role.long}_{var_counter}")
        b.arc(vid, concept_ids[concept_table])
        return vid

    folded: list[tuple[str, Column]] = []
    for t in concept_tables:
        concept_ids[t.name] = b.concept(t.name)
        for c in t.columns:
            if c.name in ("id", "name"):
                continue
            if c.type != TEXT:
                raise errors.SchemaShapeError(
                    f"unexpected column {c.name!r} on concept table {t.name!r}")
            folded.append((t.name, c))

    for t in predicate_tables:
        kind = {
            "function": PredicateKind.FUNCTION,
            "characteristic": PredicateKind.CHARACTERISTIC,
        }.get(t.kind or "event", PredicateKind.EVENT)
        pid = b.predicate(t.name, kind)
        for fk in t.foreign_keys:
            if not fk.column.endswith("_id"):
                raise errors.UnknownRole(
                    f"foreign key column {fk.column!r} does not name a role")
            try:
                role = Role.from_long(fk.column[:-3])
            except errors.UnknownRole:
                raise errors.UnknownRole(
                    f"foreign key column {fk.column!r} does not name a role")
            b.arc(pid, typed_variable(role, fk.references), role)

    for table_name, column in folded:
        role = (Role.from_long(column.characteristic_role)
                if column.characteristic_role else Role.OBJECT)
        pid = b.predicate(column.name, PredicateKind.CHARACTERISTIC)
        b.arc(pid, typed_variable(role, table_name), role)
        if column.characteristic_result is not None:
            rid = typed_variable(Role.RESULT, column.characteristic_result)
            b.arc(pid, rid, Role.RESULT)

    for row in s.seed_rows:
        values = dict(row.values)
        if row.table not in concept_ids or "name" not in values:
            raise errors.SchemaShapeError(
                f"seed row for {row.table!r} is not a concept instance")
        b.constant(str(values["name"]), concept_ids[row.table])

    return b.finish()
