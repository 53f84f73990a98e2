"""
Structural predicates, the axiom validator and the sub-hypernetwork relation.

Violations are data: `validate` never raises, it returns a report whose lines
render as `AXIOM<TAB>ELEMENT<TAB>DETAIL`.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.core import (
    AggregationType,
    AntiVertex,
    Element,
    Hypernetwork,
    Hypersimplex,
    Vertex,
    anti_id,
    is_anti_id,
    is_identifier,
    inverse_index,
)


@dataclass(frozen=True)
class Violation:
    axiom: str
    element: str
    detail: str

    def line(self) -> str:
        return f"{self.axiom}\t{self.element}\t{self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        return [v.line() for v in self.violations]

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)


# ===== PREDICATES =====

def eq_vertex(a: Vertex, b: Vertex) -> bool:
    """Vertices are identical by name."""
    return a.id == b.id


def _same_participants(a: Hypersimplex, b: Hypersimplex) -> bool:
    if a.agg is AggregationType.BETA:
        return len(a.participants) == len(b.participants) and set(a.participants) == set(b.participants)
    return a.participants == b.participants


def eq_hs(a: Hypersimplex, b: Hypersimplex) -> bool:
    """Identical id, type, signature, participants and boundary tags.

    Alpha participants compare as sequences, beta participants as sets.
    Conflict markers are identical only to an equal conflict marker.
    """
    return (
        a.id == b.id
        and a.agg == b.agg
        and a.relation == b.relation
        and a.tags == b.tags
        and a.conflict == b.conflict
        and _same_participants(a, b)
    )


def roles_compatible(a: Hypersimplex, b: Hypersimplex) -> bool:
    """Same relation symbol, arity and role order."""
    return (
        a.relation.symbol == b.relation.symbol
        and a.relation.arity == b.relation.arity
        and a.relation.roles == b.relation.roles
    )


def beta_compatible(a: Hypersimplex, b: Hypersimplex) -> bool:
    """Two plain beta hypersimplices with exactly the same relation signature."""
    if a.is_conflict or b.is_conflict:
        return False
    if a.agg is not AggregationType.BETA or b.agg is not AggregationType.BETA:
        return False
    return roles_compatible(a, b)


def beta_resized_compatible(a: Hypersimplex, b: Hypersimplex) -> bool:
    """Plain beta hypersimplices over one symbol whose signatures differ only by `resized`."""
    if a.is_conflict or b.is_conflict:
        return False
    if a.agg is not AggregationType.BETA or b.agg is not AggregationType.BETA:
        return False
    if a.relation.symbol != b.relation.symbol:
        return False
    common = min(a.relation.arity, b.relation.arity)
    return a.relation.roles[:common] == b.relation.roles[:common]


def structural_problem(hs: Hypersimplex) -> str:
    """Describe the first shape defect of `hs` ignoring its surroundings, or ''."""
    if not isinstance(hs.agg, AggregationType):
        return f"aggregation type {hs.agg!r} is neither alpha nor beta"
    if hs.is_conflict:
        return "conflict marker has participants" if hs.participants else ""
    if hs.relation.arity < 1:
        return f"{hs.relation.symbol} has arity 0"
    if len(set(hs.relation.roles)) != hs.relation.arity:
        return f"{hs.relation.symbol} repeats a role name"
    if len(hs.participants) != hs.relation.arity:
        return (f"{len(hs.participants)} participants under "
                f"{hs.relation.symbol} of arity {hs.relation.arity}")
    if hs.agg is AggregationType.BETA and len(set(hs.participants)) != len(hs.participants):
        return "beta participants repeat"
    if hs.id in hs.participants:
        return "contains itself"
    return ""


def wellformed(hs: Hypersimplex, h: Hypernetwork) -> bool:
    """Declared type, matching arity, resolvable participants and registered tags."""
    if structural_problem(hs):
        return False
    if any(tag not in h.boundaries for tag in hs.tags):
        return False
    return all(p in h.elements for p in hs.participants)


def orphan(e: Element, h: Hypernetwork) -> bool:
    """True if no hypersimplex contains `e`."""
    return not h.part_of.get(e.id)


def elements_identical(a: Element, b: Element) -> bool:
    if isinstance(a, Hypersimplex):
        return isinstance(b, Hypersimplex) and eq_hs(a, b)
    if isinstance(a, AntiVertex):
        return isinstance(b, AntiVertex) and a.id == b.id
    return isinstance(b, Vertex) and eq_vertex(a, b)


def identical_in(h: Hypernetwork, e: Element) -> bool:
    """True if `h` holds an element identical to `e` under the same id."""
    other = h.resolve(e.id)
    return other is not None and elements_identical(e, other)


# ===== VALIDATION =====

def _cyclic_ids(h: Hypernetwork) -> List[str]:
    """Hypersimplices lying on a containment cycle, in traversal order."""
    state: Dict[str, int] = {}
    on_cycle: set = set()

    for root in h.insertion_order:
        if state.get(root):
            continue
        stack = [(root, iter(_hs_participants(h, root)))]
        path = [root]
        state[root] = 1
        while stack:
            node, children = stack[-1]
            child = next(children, None)
            if child is None:
                stack.pop()
                path.pop()
                state[node] = 2
            elif state.get(child) == 1:
                on_cycle.update(path[path.index(child):])
            elif not state.get(child):
                state[child] = 1
                path.append(child)
                stack.append((child, iter(_hs_participants(h, child))))
    return [element_id for element_id in h.insertion_order if element_id in on_cycle]


def _hs_participants(h: Hypernetwork, element_id: str):
    element = h.resolve(element_id)
    if isinstance(element, Hypersimplex):
        return [p for p in element.participants if p != element_id and p in h.elements]
    return []


def validate(h: Hypernetwork) -> ValidationReport:
    """Report every axiom and state-condition violation of `h`."""
    found: List[Violation] = []

    for element_id, count in Counter(h.insertion_order).items():
        if count > 1:
            found.append(Violation("A1", element_id, f"identifier registered {count} times"))
    listed = set(h.insertion_order)
    for element_id in h.insertion_order:
        if element_id not in h.elements:
            found.append(Violation("C6", element_id, "in insertion order but not registered"))
    for element_id in h.elements:
        if element_id not in listed:
            found.append(Violation("C6", element_id, "registered but missing from insertion order"))

    alpha_signatures: Dict[str, Hypersimplex] = {}
    keys = [i for i in dict.fromkeys(h.insertion_order) if i in h.elements]
    keys += [i for i in h.elements if i not in listed]

    for key in keys:
        element = h.elements[key]
        if element.id != key:
            found.append(Violation("A1", key, f"holds element {element.id!r}"))

        if isinstance(element, AntiVertex):
            if not is_identifier(element.excludes) or element.id != anti_id(element.excludes):
                found.append(Violation("A2", key, f"anti-vertex id does not derive from {element.excludes!r}"))
            continue
        if not is_identifier(key):
            found.append(Violation("A1", key, "not a plain identifier"))
        if isinstance(element, Vertex):
            continue

        problem = structural_problem(element)
        if problem:
            axiom = "A3" if not isinstance(element.agg, AggregationType) else "A4"
            if problem == "contains itself":
                axiom = "C5"
            found.append(Violation(axiom, key, problem))
        for tag in sorted(element.tags):
            if tag not in h.boundaries:
                found.append(Violation("A5", key, f"tag {tag} is not a registered boundary"))
        for participant in element.participants:
            if participant != key and participant not in h.elements:
                found.append(Violation("C5", key, f"dangling participant {participant}"))
            elif is_anti_id(participant) and not isinstance(h.elements.get(participant), AntiVertex):
                found.append(Violation("A2", key, f"{participant} is not an anti-vertex"))

        if not element.is_conflict and element.agg is AggregationType.ALPHA:
            first = alpha_signatures.setdefault(element.relation.symbol, element)
            if first.relation != element.relation:
                found.append(Violation(
                    "A4", key,
                    f"{element.relation} disagrees with {first.relation} used by {first.id}",
                ))

    for element_id in _cyclic_ids(h):
        found.append(Violation("C5", element_id, "cyclic containment"))

    expected = {k: v for k, v in inverse_index(h.elements, strict=False).items() if v}
    actual = {k: frozenset(v) for k, v in h.part_of.items() if v}
    for element_id in sorted(set(expected) | set(actual)):
        if expected.get(element_id, frozenset()) != actual.get(element_id, frozenset()):
            found.append(Violation("C7", element_id, "part-of index out of sync"))

    return ValidationReport(tuple(found))


def is_sub_hypernetwork(h_small: Hypernetwork, h_big: Hypernetwork) -> bool:
    """True if every element of `h_small` appears identically in `h_big`."""
    return all(identical_in(h_big, e) for e in h_small.elements.values())
