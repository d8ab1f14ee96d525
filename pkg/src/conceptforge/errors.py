"""Exception hierarchy shared by the core, translators, and I/O layers."""

from __future__ import annotations


class ConceptForgeError(Exception):
    """Base class for all library errors."""


class NotFound(ConceptForgeError):
    """An element id did not resolve in the model."""


class PartialBinding(ConceptForgeError):
    """A frame variable was left unassigned during instantiation."""

    def __init__(self, variable_id: int, variable_name: str):
        super().__init__(f"variable {variable_name!r} (id {variable_id}) is unbound")
        self.variable_id = variable_id
        self.variable_name = variable_name


class TypeMismatch(ConceptForgeError):
    """A binding assigned a constant whose concept the variable does not admit."""

    def __init__(self, variable_name: str, expected: list[str], actual: str):
        super().__init__(
            f"variable {variable_name!r} admits {sorted(expected)}, got {actual!r}"
        )
        self.variable_name = variable_name
        self.expected = expected
        self.actual = actual


class NotFullyInstantiated(ConceptForgeError):
    """Evaluation was attempted on a template frame (variable arguments remain)."""


class UnboundConstant(ConceptForgeError):
    """A constant has no instance assignment in the interpretation."""


class InvalidModel(ConceptForgeError):
    """An operation requiring a valid model received a broken one."""

    def __init__(self, diagnostics):
        super().__init__(
            "model has %d validation diagnostic(s)" % len(diagnostics)
        )
        self.diagnostics = list(diagnostics)


class ParseError(ConceptForgeError):
    """Malformed input text; carries a 1-based source position."""

    def __init__(self, message: str, line: int, column: int, expected=()):
        loc = f"line {line}, column {column}"
        if expected:
            message = f"{message} (expected one of: {', '.join(sorted(expected))})"
        super().__init__(f"{message} at {loc}")
        self.line = line
        self.column = column
        self.expected = frozenset(expected)


class UnknownElementType(ConceptForgeError):
    """A stored element record carries an unrecognized Type tag."""


class UnknownRole(ConceptForgeError):
    """A role name outside the five event-frame roles."""


class UnknownClassifier(ConceptForgeError):
    """A UML reference names a classifier that does not exist."""


class NameCollision(ConceptForgeError):
    """Two elements would map to the same downstream name."""


class UnsupportedNesting(ConceptForgeError):
    """A predicate classifier appears as an association target (higher-order)."""


class DuplicateRoleColumn(ConceptForgeError):
    """Two associations on one predicate share a role, so their foreign-key
    columns would collide."""


class CyclicDependency(ConceptForgeError):
    """Foreign keys form a cycle; no emit order exists."""


class SchemaShapeError(ConceptForgeError):
    """A relational schema does not match the shape the reverse mapping expects."""


class MissingGeometry(ConceptForgeError):
    """A node has no stored geometry and cannot be rendered."""

    def __init__(self, element_id: int):
        super().__init__(f"element {element_id} has no geometry")
        self.element_id = element_id
