"""Frame-level model comparison, ignoring ids, variable names, and layout.

Two models are frame-isomorphic when they agree on the multiset of concept
names, the multiset of constant (name, concept) pairs, and the multiset of
predicate signatures (name, kind, role -> set of admissible concept names).
This is the round-trip oracle for the UML and relational pipelines.
"""

from __future__ import annotations

from collections import Counter

from .core import Model, _variable_concepts


def frame_signature(m: Model):
    """Hashable summary of a model up to frame isomorphism."""
    concepts = {c.id: c.name for c in m.concepts}
    constants = {c.id: c for c in m.constants}

    def arg_concepts(target_id: int) -> frozenset[str]:
        if target_id in constants:
            name = concepts.get(constants[target_id].concept)
            return frozenset() if name is None else frozenset([name])
        return frozenset(_variable_concepts(m, target_id).values())

    predicate_sigs = []
    for p in m.predicates:
        role_map = {}
        for a in m.arcs:
            if not a.is_type_arc and a.source == p.id and a.source != a.target:
                role_map[a.role.long] = arg_concepts(a.target)
        predicate_sigs.append(
            (p.name, p.kind.value, tuple(sorted(role_map.items()))))

    return (
        Counter(concepts.values()),
        Counter((c.name, concepts.get(c.concept)) for c in m.constants),
        Counter(predicate_sigs),
    )


def frame_isomorphic(a: Model, b: Model) -> bool:
    return frame_signature(a) == frame_signature(b)
