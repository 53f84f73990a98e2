"""
Domain types of the hypernetwork kernel and the hypernetwork container.

Every value here is immutable. Operators build results through a `Draft`
workspace and freeze it into a fresh `Hypernetwork`.
"""
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NewType, Optional, Tuple, Union

from src.errors import DanglingReference

ElementId = NewType("ElementId", str)

ANTI_PREFIX = "~"
CONFLICT_KIND = "SameName"

_IDENTIFIER = re.compile(r"[A-Za-z0-9_]+")


def is_identifier(text: str) -> bool:
    """True if `text` is a plain identifier (letters, digits, underscore)."""
    return bool(_IDENTIFIER.fullmatch(text or ""))


def anti_id(excludes: str) -> ElementId:
    """Id of the anti-vertex excluding `excludes`."""
    return ElementId(ANTI_PREFIX + excludes)


def is_anti_id(element_id: str) -> bool:
    return element_id.startswith(ANTI_PREFIX)


class AggregationType(str, Enum):
    """Conjunctive (alpha) or disjunctive (beta) aggregation."""

    ALPHA = "alpha"
    BETA = "beta"


@dataclass(frozen=True)
class RelationSignature:
    """A relation symbol with its ordered role names. Arity is the role count."""

    symbol: str
    roles: Tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.roles)

    @classmethod
    def anonymous(cls, symbol: str, arity: int) -> "RelationSignature":
        """Signature with synthesized roles r1..rn."""
        return cls(symbol, tuple(f"r{i}" for i in range(1, arity + 1)))

    @property
    def is_anonymous(self) -> bool:
        return self.roles == RelationSignature.anonymous(self.symbol, self.arity).roles

    def resized(self, arity: int) -> "RelationSignature":
        """Truncate or extend the role list to `arity` roles.

        Extension appends fresh `r<i>` names that do not clash with existing roles.
        """
        if arity <= self.arity:
            return RelationSignature(self.symbol, self.roles[:arity])
        roles = list(self.roles)
        counter = len(roles)
        while len(roles) < arity:
            counter += 1
            candidate = f"r{counter}"
            if candidate not in roles:
                roles.append(candidate)
        return RelationSignature(self.symbol, tuple(roles))

    def __str__(self) -> str:
        return f"{self.symbol}({', '.join(self.roles)})"


@dataclass(frozen=True)
class Boundary:
    id: ElementId
    percolating: bool = False


@dataclass(frozen=True)
class Vertex:
    id: ElementId


@dataclass(frozen=True)
class AntiVertex:
    """Explicit exclusion of the vertex `excludes`. Its id is always `~excludes`."""

    id: ElementId
    excludes: ElementId

    @classmethod
    def of(cls, excludes: str) -> "AntiVertex":
        return cls(anti_id(excludes), ElementId(excludes))


@dataclass(frozen=True)
class ConflictMarker:
    """Both snapshots of a SameName clash, kept verbatim."""

    left: "Element"
    right: "Element"
    kind: str = CONFLICT_KIND


CONFLICT_RELATION = RelationSignature(CONFLICT_KIND, ("left", "right"))


@dataclass(frozen=True)
class Hypersimplex:
    """A typed n-ary relation over ordered participants.

    Position i of `participants` binds to role i of `relation`. Beta
    participants keep their parsed order for rendering but compare as a set.
    """

    id: ElementId
    agg: AggregationType
    relation: RelationSignature
    participants: Tuple[ElementId, ...]
    tags: FrozenSet[str] = frozenset()
    conflict: Optional[ConflictMarker] = None

    @property
    def is_conflict(self) -> bool:
        return self.conflict is not None

    @classmethod
    def conflict_marker(cls, element_id: str, left: "Element", right: "Element",
                        tags: Iterable[str] = ()) -> "Hypersimplex":
        """SameName conflict hypersimplex holding both snapshots and no participants."""
        return cls(
            id=ElementId(element_id),
            agg=AggregationType.ALPHA,
            relation=CONFLICT_RELATION,
            participants=(),
            tags=frozenset(tags),
            conflict=ConflictMarker(left, right),
        )

    def with_participants(self, participants: Iterable[str],
                          relation: Optional[RelationSignature] = None) -> "Hypersimplex":
        return replace(self, participants=tuple(participants),
                       relation=relation if relation is not None else self.relation)

    def with_tags(self, tags: Iterable[str]) -> "Hypersimplex":
        return replace(self, tags=frozenset(tags))


Element = Union[Vertex, AntiVertex, Hypersimplex]


def element_kind(element: Element) -> str:
    """Short kind label used in reports and logs."""
    if isinstance(element, Hypersimplex):
        return "conflict" if element.is_conflict else element.agg.value
    if isinstance(element, AntiVertex):
        return "anti"
    return "vertex"


def participants_of(element: Element) -> Tuple[ElementId, ...]:
    return element.participants if isinstance(element, Hypersimplex) else ()


def inverse_index(elements: Mapping[str, Element], strict: bool) -> Dict[str, FrozenSet[str]]:
    index: Dict[str, set] = {element_id: set() for element_id in elements}
    for element in elements.values():
        for participant in participants_of(element):
            if participant not in elements and strict:
                raise DanglingReference(participant, element.id)
            index.setdefault(participant, set()).add(element.id)
    return {key: frozenset(value) for key, value in index.items()}


@dataclass(frozen=True)
class Hypernetwork:
    """Registry of elements, boundary registry, traversal order and part-of index.

    The raw constructor accepts any state so that the validator can be pointed
    at broken models; use `from_elements` or a `Draft` to build real ones.
    """

    elements: Mapping[str, Element] = field(default_factory=dict)
    boundaries: Mapping[str, Boundary] = field(default_factory=dict)
    insertion_order: Tuple[str, ...] = ()
    part_of: Mapping[str, FrozenSet[str]] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "Hypernetwork":
        return cls()

    @classmethod
    def from_elements(cls, elements: Iterable[Element],
                      boundaries: Iterable[Boundary] = ()) -> "Hypernetwork":
        """Build a hypernetwork in the given order.

        Raises:
            ValueError: if two elements share an id.
            DanglingReference: if a participant does not resolve.
        """
        registry: Dict[str, Element] = {}
        order: List[str] = []
        for element in elements:
            if element.id in registry:
                raise ValueError(f"duplicate element id: {element.id}")
            registry[element.id] = element
            order.append(element.id)
        h = cls(registry, {b.id: b for b in boundaries}, tuple(order), {})
        return rebuild_part_of_index(h)

    def resolve(self, element_id: str) -> Optional[Element]:
        return self.elements.get(element_id)

    def __contains__(self, element_id: object) -> bool:
        return element_id in self.elements

    def __len__(self) -> int:
        return len(self.insertion_order)

    def __iter__(self) -> Iterator[Element]:
        for element_id in self.insertion_order:
            if element_id in self.elements:
                yield self.elements[element_id]

    def ids(self) -> FrozenSet[str]:
        return frozenset(self.elements)

    def vertices(self) -> List[Vertex]:
        return [e for e in self if isinstance(e, Vertex)]

    def anti_vertices(self) -> List[AntiVertex]:
        return [e for e in self if isinstance(e, AntiVertex)]

    def hypersimplices(self) -> List[Hypersimplex]:
        return [e for e in self if isinstance(e, Hypersimplex)]

    def containers(self, element_id: str) -> FrozenSet[str]:
        return self.part_of.get(element_id, frozenset())

    def with_boundaries(self, boundaries: Iterable[Boundary]) -> "Hypernetwork":
        return replace(self, boundaries={b.id: b for b in boundaries})


def resolve(h: Hypernetwork, element_id: str) -> Optional[Element]:
    """Return the element registered under `element_id`, or None."""
    return h.resolve(element_id)


def rebuild_part_of_index(h: Hypernetwork) -> Hypernetwork:
    """Recompute the part-of index as the exact inverse of participant membership.

    Raises:
        DanglingReference: if any participant id does not resolve.
    """
    return replace(h, part_of=inverse_index(h.elements, strict=True))


def descendants(h: Hypernetwork, roots: Iterable[str]) -> FrozenSet[str]:
    """All ids reachable from `roots` through participant links, roots excluded."""
    seen: set = set()
    stack = [p for root in roots for p in participants_of(h.resolve(root))]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        element = h.resolve(current)
        if element is not None:
            stack.extend(participants_of(element))
    return frozenset(seen)


def containment_depth(h: Hypernetwork, element_id: str) -> int:
    """0 for atoms, 1 + the deepest participant for hypersimplices."""
    memo: Dict[str, int] = {}

    def depth(current: str, trail: FrozenSet[str]) -> int:
        if current in memo:
            return memo[current]
        element = h.resolve(current)
        if not isinstance(element, Hypersimplex) or current in trail:
            return 0
        inner = [depth(p, trail | {current}) for p in element.participants]
        memo[current] = 1 + max(inner, default=0)
        return memo[current]

    return depth(element_id, frozenset())


class Draft:
    """Mutable workspace an operator edits before freezing a result."""

    def __init__(self, base: Optional[Hypernetwork] = None):
        base = base if base is not None else Hypernetwork.empty()
        self.order: List[str] = list(base.insertion_order)
        self.elements: Dict[str, Element] = dict(base.elements)
        self.boundaries: Dict[str, Boundary] = dict(base.boundaries)

    def __contains__(self, element_id: object) -> bool:
        return element_id in self.elements

    def get(self, element_id: str) -> Optional[Element]:
        return self.elements.get(element_id)

    def put(self, element: Element) -> None:
        """Append a new element at the end of the traversal order."""
        if element.id in self.elements:
            raise ValueError(f"duplicate element id: {element.id}")
        self.elements[element.id] = element
        self.order.append(element.id)

    def put_before(self, element: Element, anchor: str) -> None:
        """Insert a new element just before `anchor` (or at the end if absent)."""
        if element.id in self.elements:
            raise ValueError(f"duplicate element id: {element.id}")
        self.elements[element.id] = element
        position = self.order.index(anchor) if anchor in self.elements else len(self.order)
        self.order.insert(position, element.id)

    def replace(self, element: Element) -> None:
        """Swap the element under an existing id, keeping its position."""
        if element.id not in self.elements:
            raise KeyError(element.id)
        self.elements[element.id] = element

    def remove(self, element_id: str) -> None:
        del self.elements[element_id]
        self.order.remove(element_id)

    def freeze(self) -> Hypernetwork:
        """Snapshot the workspace. Dangling ids are left for the validator."""
        elements = {element_id: self.elements[element_id] for element_id in self.order}
        return Hypernetwork(
            elements=elements,
            boundaries=dict(self.boundaries),
            insertion_order=tuple(self.order),
            part_of=inverse_index(elements, strict=False),
        )
