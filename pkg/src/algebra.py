"""
Insert and the five structural operators: merge, meet, difference, prune, split.

Every operator is a pure function of its ordered operands. Results are
assembled in a `Draft`, frozen and re-validated before they are returned.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.axioms import (
    beta_compatible,
    beta_resized_compatible,
    elements_identical,
    eq_hs,
    roles_compatible,
    structural_problem,
    validate,
)
from src.core import (
    AggregationType,
    AntiVertex,
    Boundary,
    Draft,
    Element,
    Hypernetwork,
    Hypersimplex,
    Vertex,
    descendants,
    element_kind,
    inverse_index,
    is_anti_id,
    is_identifier,
    participants_of,
)
from src.errors import (
    ClosureViolation,
    DanglingReference,
    UnknownBoundary,
    UnknownSeed,
    UnknownSelector,
)
from src.logger import debug, log


class InsertOutcome(str, Enum):
    """Which decision row an insert took."""

    INSERTED = "inserted"
    IGNORED = "ignored"
    LIFTED = "lifted"
    UNIFIED = "unified"
    CONFLICT = "conflict"


SELECTOR_PREFIXES = ("v", "hs", "rel", "b")


@dataclass(frozen=True)
class PruneSelector:
    """Items to prune, grouped by what they name."""

    vertices: FrozenSet[str] = frozenset()
    hypersimplices: FrozenSet[str] = frozenset()
    relations: FrozenSet[str] = frozenset()
    boundaries: FrozenSet[str] = frozenset()

    @classmethod
    def from_items(cls, items: Iterable[str]) -> "PruneSelector":
        """Parse `v:<id>`, `hs:<id>`, `rel:<symbol>` and `b:<id>` items.

        Raises:
            ValueError: on an unknown prefix or an empty name.
        """
        groups: Dict[str, Set[str]] = {prefix: set() for prefix in SELECTOR_PREFIXES}
        for item in items:
            prefix, _, name = item.partition(":")
            if prefix not in groups or not name:
                raise ValueError(f"selector must look like v:<id>, hs:<id>, rel:<symbol> or b:<id>, got {item!r}")
            groups[prefix].add(name)
        return cls(
            vertices=frozenset(groups["v"]),
            hypersimplices=frozenset(groups["hs"]),
            relations=frozenset(groups["rel"]),
            boundaries=frozenset(groups["b"]),
        )

    def items(self) -> List[str]:
        found = [f"v:{x}" for x in self.vertices] + [f"hs:{x}" for x in self.hypersimplices]
        found += [f"rel:{x}" for x in self.relations] + [f"b:{x}" for x in self.boundaries]
        return sorted(found)

    def __bool__(self) -> bool:
        return bool(self.vertices or self.hypersimplices or self.relations or self.boundaries)

    def issubset(self, other: "PruneSelector") -> bool:
        return (self.vertices <= other.vertices and self.hypersimplices <= other.hypersimplices
                and self.relations <= other.relations and self.boundaries <= other.boundaries)


@dataclass(frozen=True)
class SplitCriterion:
    """Exactly one of: a boundary id, a seed set, or the universal projection."""

    boundary: Optional[str] = None
    seeds: FrozenSet[str] = frozenset()
    universal: bool = False

    def __post_init__(self):
        populated = sum([self.boundary is not None, bool(self.seeds), self.universal])
        if populated != 1:
            raise ValueError("a split criterion needs exactly one of boundary, seeds or universal")

    @classmethod
    def by_boundary(cls, boundary: str) -> "SplitCriterion":
        return cls(boundary=boundary)

    @classmethod
    def by_seeds(cls, seeds: Iterable[str]) -> "SplitCriterion":
        return cls(seeds=frozenset(seeds))

    @classmethod
    def everything(cls) -> "SplitCriterion":
        return cls(universal=True)


def _closed(operator: str, draft: Draft) -> Hypernetwork:
    """Freeze the draft and re-apply every axiom to the result."""
    result = draft.freeze()
    report = validate(result)
    if not report.ok:
        raise ClosureViolation(operator, report)
    return result


# ===== INSERT =====

class _Inserter:
    """One insert session over a draft, optionally pulling participants from a source."""

    def __init__(self, draft: Draft, source: Optional[Hypernetwork], auto_vertices: bool):
        self.draft = draft
        self.source = source
        self.auto_vertices = auto_vertices

    def lookup(self, element_id: str) -> Optional[Element]:
        found = self.draft.get(element_id)
        if found is None and self.source is not None:
            found = self.source.resolve(element_id)
        return found

    def insert(self, e: Element) -> InsertOutcome:
        existing = self.draft.get(e.id)

        if isinstance(e, (Vertex, AntiVertex)):
            if existing is None:
                self.draft.put(e)
                return InsertOutcome.INSERTED
            return InsertOutcome.IGNORED

        if existing is not None and elements_identical(existing, e):
            return InsertOutcome.IGNORED
        if isinstance(existing, Hypersimplex) and existing.is_conflict:
            # Conflicts are terminal: the marker absorbs further clashes.
            return InsertOutcome.CONFLICT

        for tag in sorted(e.tags):
            if tag not in self.draft.boundaries:
                raise UnknownBoundary(tag, e.id)

        candidate, outcome = e, InsertOutcome.INSERTED
        if isinstance(existing, Vertex):
            outcome = InsertOutcome.LIFTED
        elif isinstance(existing, Hypersimplex):
            if not beta_compatible(existing, e) or set(existing.participants) == set(e.participants):
                return self._conflict(e, existing)
            union = list(existing.participants)
            union += [p for p in e.participants if p not in union]
            candidate = Hypersimplex(
                id=existing.id,
                agg=existing.agg,
                relation=existing.relation.resized(len(union)),
                participants=tuple(union),
                tags=existing.tags | e.tags,
            )
            outcome = InsertOutcome.UNIFIED

        problem, holder = self._admission_problem(candidate)
        if problem:
            debug(f"   insert {e.id}: {problem}")
            return self._conflict(e, existing or holder or e)

        for participant in candidate.participants:
            if participant not in self.draft:
                self._pull(participant, candidate.id)
        if existing is None:
            self.draft.put(candidate)
        else:
            self.draft.replace(candidate)
        return outcome

    def _conflict(self, incoming: Element, left: Element) -> InsertOutcome:
        existing = self.draft.get(incoming.id)
        tags = existing.tags if isinstance(existing, Hypersimplex) else frozenset()
        marker = Hypersimplex.conflict_marker(incoming.id, left, incoming, tags)
        if existing is None:
            self.draft.put(marker)
        else:
            self.draft.replace(marker)
        log(f"⚠️ SameName conflict on {incoming.id}")
        return InsertOutcome.CONFLICT

    def _pull(self, participant: str, container: str) -> None:
        pulled = self.source.resolve(participant) if self.source is not None else None
        if pulled is not None:
            self.insert(pulled)
        elif is_anti_id(participant):
            self.draft.put(AntiVertex.of(participant[1:]))
        else:
            self.draft.put(Vertex(participant))
        debug(f"   pulled {participant} for {container}")

    def _resolvable(self, participant: str) -> bool:
        if participant in self.draft:
            return True
        if self.source is not None and participant in self.source:
            return True
        if not self.auto_vertices:
            return False
        if is_anti_id(participant):
            return is_identifier(participant[1:])
        return is_identifier(participant)

    def _admission_problem(self, hs: Hypersimplex) -> Tuple[str, Optional[Element]]:
        """First reason `hs` cannot enter the draft, with the element it clashes with."""
        problem = structural_problem(hs)
        if problem:
            return problem, None

        for participant in hs.participants:
            if not self._resolvable(participant):
                raise DanglingReference(participant, hs.id)

        if hs.id in self._reachable(hs.participants):
            return "cyclic containment", None

        if hs.agg is AggregationType.ALPHA and not hs.is_conflict:
            for other in self.draft.elements.values():
                if (isinstance(other, Hypersimplex) and not other.is_conflict and other.id != hs.id
                        and other.agg is AggregationType.ALPHA
                        and other.relation.symbol == hs.relation.symbol
                        and other.relation != hs.relation):
                    return f"{hs.relation.symbol} is fixed as {other.relation} by {other.id}", other
        return "", None

    def _reachable(self, roots: Iterable[str]) -> Set[str]:
        seen: Set[str] = set()
        stack = list(roots)
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            stack.extend(participants_of(self.lookup(current)))
        return seen


def insert_traced(h: Hypernetwork, e: Element, resolve_from: Optional[Hypernetwork] = None,
                  auto_vertices: bool = True) -> Tuple[Hypernetwork, InsertOutcome]:
    """Insert `e` into `h` and report which decision row applied.

    Args:
        h: The target hypernetwork.
        e: The element to insert.
        resolve_from: Hypernetwork to pull missing participants from, recursively.
        auto_vertices: Create bare vertices (and `~x` anti-vertices) for missing
            participants that `resolve_from` does not provide.

    Returns:
        tuple: The new hypernetwork and the InsertOutcome.

    Raises:
        UnknownBoundary: if `e` carries an unregistered tag.
        DanglingReference: if a participant cannot be resolved.
    """
    draft = Draft(h)
    outcome = _Inserter(draft, resolve_from, auto_vertices).insert(e)
    if outcome is InsertOutcome.IGNORED:
        return h, outcome
    return _closed("insert", draft), outcome


def insert(h: Hypernetwork, e: Element) -> Hypernetwork:
    """Insert `e` into `h`: ignore, conflict, name-lift, unify or add."""
    return insert_traced(h, e)[0]


# ===== MERGE =====

def merge(h1: Hypernetwork, h2: Hypernetwork) -> Hypernetwork:
    """Fold insert over h2's elements in h2's order, starting from h1."""
    debug(f"-> merge: {len(h1)} + {len(h2)} elements")
    registry: Dict[str, Boundary] = dict(h1.boundaries)
    for boundary in h2.boundaries.values():
        known = registry.get(boundary.id)
        if known is None:
            registry[boundary.id] = boundary
        elif known.percolating != boundary.percolating:
            log(f"⚠️ boundary {boundary.id} percolation differs between operands, keeping the left flag")

    result = h1.with_boundaries(registry.values())
    for element in h2:
        result, outcome = insert_traced(result, element, resolve_from=h2, auto_vertices=False)
        debug(f"   {element_kind(element)} {element.id}: {outcome.value}")
    return _closed("merge", Draft(result))


# ===== MEET / DIFFERENCE =====

def _meet_outcome(e: Element, other: Optional[Element]) -> Optional[Element]:
    if isinstance(e, Vertex):
        return e if isinstance(other, Vertex) else None
    if isinstance(e, AntiVertex):
        return e if isinstance(other, AntiVertex) else None
    if not isinstance(other, Hypersimplex):
        return None
    if eq_hs(e, other):
        return e
    if e.is_conflict or other.is_conflict:
        return None
    if e.agg is AggregationType.ALPHA and other.agg is AggregationType.ALPHA:
        if roles_compatible(e, other) and e.participants == other.participants:
            return e.with_tags(e.tags | other.tags)
        return None
    if beta_compatible(e, other):
        shared = set(other.participants)
        overlap = [p for p in e.participants if p in shared]
        if overlap:
            return Hypersimplex(e.id, e.agg, e.relation.resized(len(overlap)), tuple(overlap),
                                e.tags | other.tags)
    return None


def _difference_outcome(e: Element, other: Optional[Element]) -> Optional[Element]:
    if isinstance(e, Vertex):
        return None if isinstance(other, Vertex) else e
    if isinstance(e, AntiVertex):
        return None if isinstance(other, AntiVertex) else e
    if not isinstance(other, Hypersimplex):
        return e
    if e.is_conflict or other.is_conflict:
        return None if eq_hs(e, other) else e
    if e.agg is AggregationType.ALPHA and other.agg is AggregationType.ALPHA:
        if roles_compatible(e, other) and e.participants == other.participants:
            return None
        return e
    if beta_resized_compatible(e, other):
        removed = set(other.participants)
        remaining = [p for p in e.participants if p not in removed]
        if not remaining:
            return None
        if len(remaining) == len(e.participants):
            return e
        return e.with_participants(remaining, e.relation.resized(len(remaining)))
    return e


def _assemble(operator: str, h1: Hypernetwork, outcomes: Dict[str, Optional[Element]],
              registry: Dict[str, Boundary], fallback: Dict[str, Boundary]) -> Hypernetwork:
    """Lay out outcomes in h1's order, pulling missing participants back in.

    A pulled participant takes its own outcome when it has one, else h1's element.
    Boundaries referenced by result tags are registered from `fallback`.
    """
    draft = Draft()

    def place(element: Element) -> None:
        for participant in participants_of(element):
            if participant not in draft:
                place(outcomes.get(participant) or h1.elements[participant])
                debug(f"   pulled {participant} for {element.id}")
        draft.put(element)

    for element_id in h1.insertion_order:
        outcome = outcomes.get(element_id)
        if outcome is not None and element_id not in draft:
            place(outcome)

    for element in draft.elements.values():
        if isinstance(element, Hypersimplex):
            for tag in element.tags:
                if tag not in registry:
                    registry[tag] = fallback[tag]
    draft.boundaries = {b: registry[b] for b in sorted(registry)}
    return _closed(operator, draft)


def meet(h1: Hypernetwork, h2: Hypernetwork) -> Hypernetwork:
    """Common structure of h1 and h2, element by element over h1."""
    debug(f"-> meet: {len(h1)} and {len(h2)} elements")
    outcomes = {e.id: _meet_outcome(e, h2.resolve(e.id)) for e in h1}
    registry = {b: h1.boundaries[b] for b in h1.boundaries if b in h2.boundaries}
    fallback = {**dict(h2.boundaries), **dict(h1.boundaries)}
    return _assemble("meet", h1, outcomes, registry, fallback)


def difference(h1: Hypernetwork, h2: Hypernetwork) -> Hypernetwork:
    """Structure of h1 not accounted for by h2."""
    debug(f"-> difference: {len(h1)} minus {len(h2)} elements")
    outcomes = {e.id: _difference_outcome(e, h2.resolve(e.id)) for e in h1}
    registry = {b: h1.boundaries[b] for b in h1.boundaries if b not in h2.boundaries}
    return _assemble("difference", h1, outcomes, registry, dict(h1.boundaries))


# ===== PRUNE =====

def _check_selector(h: Hypernetwork, s: PruneSelector, strict: bool) -> PruneSelector:
    """Drop unresolvable items, or raise on the first one in strict mode."""
    symbols = {hs.relation.symbol for hs in h.hypersimplices() if not hs.is_conflict}
    resolved = {
        "v": {x for x in s.vertices if isinstance(h.resolve(x), (Vertex, AntiVertex))},
        "hs": {x for x in s.hypersimplices if isinstance(h.resolve(x), Hypersimplex)},
        "rel": {x for x in s.relations if x in symbols},
        "b": {x for x in s.boundaries if x in h.boundaries},
    }
    kept = PruneSelector(frozenset(resolved["v"]), frozenset(resolved["hs"]),
                         frozenset(resolved["rel"]), frozenset(resolved["b"]))
    if strict:
        for item in s.items():
            if item not in kept.items():
                raise UnknownSelector(item)
    return kept


def _deletion_reason(e: Element, draft: Draft, s: PruneSelector, containers: Dict[str, FrozenSet[str]],
                     contained_before: Set[str], rewritten: Set[str], created: Set[str]) -> str:
    if isinstance(e, AntiVertex) and e.id in s.vertices:
        return "selected"
    if isinstance(e, Hypersimplex):
        if not e.is_conflict and e.relation.symbol in s.relations:
            return f"relation {e.relation.symbol} selected"
        if e.tags & s.boundaries:
            return f"boundary {sorted(e.tags & s.boundaries)[0]} selected"
        if any(p not in draft for p in e.participants):
            return "dangling role after deletions"
        if structural_problem(e) or any(t not in draft.boundaries for t in e.tags):
            return "not wellformed"
        if e.id in rewritten and e.participants and all(is_anti_id(p) for p in e.participants):
            return "no supporting structure"
    if (e.id in contained_before or e.id in created) and not containers.get(e.id):
        return "orphaned"
    return ""


def prune(h: Hypernetwork, s: PruneSelector, strict: bool = True) -> Hypernetwork:
    """Replace selected participants by anti-vertices, then delete to a fixpoint.

    Args:
        h: The hypernetwork to prune.
        s: The selector.
        strict: Raise UnknownSelector for items naming nothing in `h`;
            when False such items are skipped.

    Returns:
        Hypernetwork: The pruned hypernetwork. The boundary registry is kept.
    """
    s = _check_selector(h, s, strict)
    debug(f"-> prune: {', '.join(s.items()) or 'nothing selected'}")
    draft = Draft(h)
    contained_before = {element_id for element_id, owners in h.part_of.items() if owners}
    rewritten: Set[str] = set()
    created: Set[str] = set()

    targets = [i for i in h.insertion_order
               if (i in s.vertices and isinstance(h.elements[i], Vertex)) or i in s.hypersimplices]
    for target in targets:
        anti = AntiVertex.of(target)
        for owner_id in sorted(h.containers(target)):
            owner = draft.get(owner_id)
            if owner is None:
                continue
            swapped = tuple(anti.id if p == target else p for p in owner.participants)
            draft.replace(owner.with_participants(swapped))
            rewritten.add(owner_id)
        if anti.id not in draft:
            draft.put_before(anti, target)
            created.add(anti.id)
        draft.remove(target)
        debug(f"   {target} -> {anti.id}")

    changed = True
    while changed:
        changed = False
        containers = inverse_index(draft.elements, strict=False)
        for element_id in list(draft.order):
            reason = _deletion_reason(draft.elements[element_id], draft, s, containers,
                                      contained_before, rewritten, created)
            if reason:
                draft.remove(element_id)
                changed = True
                debug(f"   deleted {element_id}: {reason}")
    return _closed("prune", draft)


# ===== SPLIT =====

def _boundary_scope(h: Hypernetwork, boundary: Boundary) -> Set[str]:
    tagged = [hs.id for hs in h.hypersimplices() if boundary.id in hs.tags]
    if boundary.percolating:
        return set(tagged) | set(descendants(h, tagged))

    scope = set(tagged)
    changed = True
    while changed:
        changed = False
        for hs_id in sorted(scope):
            inner = [p for p in h.elements[hs_id].participants if isinstance(h.resolve(p), Hypersimplex)]
            if any(p not in scope for p in inner):
                scope.discard(hs_id)
                changed = True
    atoms = {p for hs_id in scope for p in h.elements[hs_id].participants}
    return scope | atoms


def _seed_scope(h: Hypernetwork, seeds: FrozenSet[str]) -> Set[str]:
    for seed in sorted(seeds):
        if not isinstance(h.resolve(seed), (Vertex, AntiVertex)):
            raise UnknownSeed(seed)
    scope = set(seeds)
    changed = True
    while changed:
        changed = False
        for hs in h.hypersimplices():
            if hs.is_conflict:
                continue
            if hs.id in scope or any(p in scope for p in hs.participants):
                grown = {hs.id, *hs.participants}
                if not grown <= scope:
                    scope |= grown
                    changed = True
    return scope


def split(h: Hypernetwork, c: SplitCriterion) -> Hypernetwork:
    """Project `h` by boundary, by seed closure, or not at all.

    Raises:
        UnknownBoundary: if the boundary is not registered.
        UnknownSeed: if a seed is not a vertex or anti-vertex of `h`.
    """
    if c.universal:
        debug("-> split: universal")
        return _closed("split", Draft(h))
    if c.boundary is not None:
        boundary = h.boundaries.get(c.boundary)
        if boundary is None:
            raise UnknownBoundary(c.boundary)
        scope = _boundary_scope(h, boundary)
        debug(f"-> split: boundary {boundary.id} keeps {len(scope)} elements")
    else:
        scope = _seed_scope(h, c.seeds)
        debug(f"-> split: seeds {', '.join(sorted(c.seeds))} keep {len(scope)} elements")

    draft = Draft()
    draft.boundaries = dict(h.boundaries)
    for element in h:
        if element.id in scope:
            draft.put(element)
    return _closed("split", draft)
