"""Frame-based conceptual modeling workbench.

Core metamodel and validation live in :mod:`conceptforge.core`; storage in
:mod:`conceptforge.xmlio`; the UML and relational translators in
:mod:`conceptforge.uml` and :mod:`conceptforge.rdb`; rendering in
:mod:`conceptforge.svg`; the CLI and HTTP service in :mod:`conceptforge.cli`
and :mod:`conceptforge.service`.
"""

from .core import (
    Arc,
    Binding,
    ConceptDef,
    ConstantNode,
    Diagnostic,
    DiagnosticCode,
    Frame,
    Geometry,
    Interpretation,
    Model,
    PredicateKind,
    PredicateNode,
    Role,
    VariableNode,
    evaluate,
    instantiate,
    is_template,
    roles_of,
    validate_model,
)
from .isomorphism import frame_isomorphic
from .xmlio import parse_model, serialize_model

__all__ = [
    "Arc", "Binding", "ConceptDef", "ConstantNode", "Diagnostic",
    "DiagnosticCode", "Frame", "Geometry", "Interpretation", "Model",
    "PredicateKind", "PredicateNode", "Role", "VariableNode",
    "evaluate", "instantiate", "is_template", "roles_of", "validate_model",
    "frame_isomorphic", "parse_model", "serialize_model",
]

__version__ = "0.1.0"
