"""
Textual notation for hypernetworks: parser, builder, canonical serializer
and source-order pretty printer.

The grammar lives in `grammar/hypernetwork.lark` and is parsed with lark's
LALR parser.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from src.algebra import InsertOutcome, insert_traced
from src.axioms import ValidationReport, Violation, validate
from src.core import (
    AggregationType,
    AntiVertex,
    Boundary,
    Element,
    Hypernetwork,
    Hypersimplex,
    RelationSignature,
    Vertex,
)
from src.errors import OperatorError, ParseError

GRAMMAR_PATH = Path(__file__).resolve().parent / "grammar" / "hypernetwork.lark"


# ===== SOURCE DOCUMENT =====

@dataclass(frozen=True)
class BoundaryDecl:
    id: str
    percolating: bool = False
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class VertexDecl:
    id: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class AntiDecl:
    excludes: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RelationDecl:
    symbol: str
    roles: Tuple[str, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class HypersimplexDecl:
    """`alpha`/`beta` statement. `roles` is set only when written inline."""

    id: str
    agg: AggregationType
    participants: Tuple[str, ...]
    symbol: str
    roles: Optional[Tuple[str, ...]] = None
    tags: Tuple[str, ...] = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ConflictDecl:
    id: str
    left: "ElementDecl"
    right: "ElementDecl"
    tags: Tuple[str, ...] = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


ElementDecl = Union[VertexDecl, AntiDecl, HypersimplexDecl, ConflictDecl]
Statement = Union[BoundaryDecl, RelationDecl, VertexDecl, AntiDecl, HypersimplexDecl, ConflictDecl]


@dataclass(frozen=True)
class SourceDocument:
    statements: Tuple[Statement, ...] = ()


# ===== PARSER =====

class _ToDocument(Transformer):
    """Turns the lark parse tree into statement values."""

    def start(self, children):
        return SourceDocument(tuple(c for c in children if c is not None))

    @v_args(meta=True)
    def boundary_decl(self, meta, children):
        return BoundaryDecl(str(children[0]), len(children) > 1, meta.line, meta.column)

    @v_args(meta=True)
    def vertex_decl(self, meta, children):
        return VertexDecl(str(children[0]), meta.line, meta.column)

    @v_args(meta=True)
    def anti_decl(self, meta, children):
        return AntiDecl(str(children[0]), meta.line, meta.column)

    @v_args(meta=True)
    def relation_decl(self, meta, children):
        symbol, roles = children
        return RelationDecl(str(symbol), roles, meta.line, meta.column)

    def _hypersimplex(self, meta, children, agg):
        element_id, (participants, (symbol, roles)), tags = children
        return HypersimplexDecl(str(element_id), agg, participants, symbol, roles,
                                tags or (), meta.line, meta.column)

    @v_args(meta=True)
    def alpha_decl(self, meta, children):
        return self._hypersimplex(meta, children, AggregationType.ALPHA)

    @v_args(meta=True)
    def beta_decl(self, meta, children):
        return self._hypersimplex(meta, children, AggregationType.BETA)

    @v_args(meta=True)
    def conflict_decl(self, meta, children):
        element_id, left, right, tags = children
        return ConflictDecl(str(element_id), left, right, tags or (), meta.line, meta.column)

    def alpha_body(self, children):
        return tuple(children)

    beta_body = alpha_body

    def signature(self, children):
        symbol, roles = children
        return str(symbol), roles

    def participants(self, children):
        return tuple(children)

    def plain(self, children):
        return str(children[0])

    def excluded(self, children):
        return "~" + str(children[0])

    def tags(self, children):
        return children[0]

    def id_list(self, children):
        return tuple(str(c) for c in children)


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    """The LALR parser for `.hn` text, built once per process."""
    grammar = GRAMMAR_PATH.read_text(encoding="utf-8")
    return Lark(grammar, parser="lalr", propagate_positions=True, maybe_placeholders=True)


def _describe(terminal: str) -> str:
    if terminal == "$END":
        return "end of input"
    if terminal == "_NL":
        return "newline"
    if terminal == "ID":
        return "identifier"
    try:
        pattern = get_parser().get_terminal(terminal).pattern
    except KeyError:
        return terminal
    return f"'{pattern.value}'" if pattern.type == "str" else terminal


def _expected(names) -> str:
    described = sorted({_describe(name) for name in names or ()})
    return " or ".join(described) if described else "a statement"


def _to_parse_error(err: UnexpectedInput, text: str) -> ParseError:
    line = err.line if getattr(err, "line", -1) and err.line > 0 else text.count("\n") + 1
    column = err.column if getattr(err, "column", -1) and err.column > 0 else 1
    if isinstance(err, UnexpectedCharacters):
        return ParseError(line, column, _expected(err.allowed), repr(err.char))
    if isinstance(err, UnexpectedToken):
        token: Token = err.token
        found = "end of input" if token.type == "$END" else repr(str(token))
        return ParseError(line, column, _expected(err.expected), found)
    return ParseError(line, column, _expected(getattr(err, "expected", ())), "end of input")


def parse(text: str) -> SourceDocument:
    """Parse `.hn` text into a SourceDocument.

    Raises:
        ParseError: on the first malformed token.
    """
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as err:
        raise _to_parse_error(err, text) from None
    return _ToDocument().transform(tree)


# ===== BUILD =====

def resolve_signature(symbol: str, roles: Optional[Tuple[str, ...]], agg: AggregationType,
                      arity: int, declared: Mapping[str, RelationSignature]) -> RelationSignature:
    """Signature for a hypersimplex statement.

    Inline roles win; then a declared relation (exact for alpha, resized to the
    participant count for beta); otherwise an anonymous r1..rn signature.
    """
    if roles is not None:
        return RelationSignature(symbol, tuple(roles))
    known = declared.get(symbol)
    if known is not None:
        return known if agg is AggregationType.ALPHA else known.resized(arity)
    return RelationSignature.anonymous(symbol, arity)


def to_element(statement: ElementDecl, declared: Mapping[str, RelationSignature]) -> Element:
    if isinstance(statement, VertexDecl):
        return Vertex(statement.id)
    if isinstance(statement, AntiDecl):
        return AntiVertex.of(statement.excludes)
    if isinstance(statement, ConflictDecl):
        # Snapshots never see the document's relation declarations.
        return Hypersimplex.conflict_marker(statement.id, to_element(statement.left, {}),
                                            to_element(statement.right, {}), statement.tags)
    relation = resolve_signature(statement.symbol, statement.roles, statement.agg,
                                 len(statement.participants), declared)
    return Hypersimplex(statement.id, statement.agg, relation, statement.participants,
                        frozenset(statement.tags))


def build(doc: SourceDocument) -> Tuple[Hypernetwork, ValidationReport]:
    """Fold insert over the document's statements in order.

    Returns:
        tuple: The hypernetwork and its ValidationReport. Operator errors,
        SameName conflicts and redeclarations become report entries.
    """
    h = Hypernetwork.empty()
    declared: Dict[str, RelationSignature] = {}
    found: List[Violation] = []

    for statement in doc.statements:
        where = f"line {statement.line}"
        if isinstance(statement, BoundaryDecl):
            known = h.boundaries.get(statement.id)
            if known is None:
                h = h.with_boundaries([*h.boundaries.values(), Boundary(statement.id, statement.percolating)])
            elif known.percolating != statement.percolating:
                found.append(Violation("A1", statement.id, f"boundary redeclared differently at {where}"))
            continue
        if isinstance(statement, RelationDecl):
            signature = RelationSignature(statement.symbol, statement.roles)
            if len(set(signature.roles)) != signature.arity:
                found.append(Violation("A4", statement.symbol, f"repeated role name at {where}"))
            elif declared.setdefault(statement.symbol, signature) != signature:
                found.append(Violation("A4", statement.symbol, f"relation redeclared differently at {where}"))
            continue

        try:
            h, outcome = insert_traced(h, to_element(statement, declared))
        except OperatorError as err:
            found.append(Violation(err.axiom, err.element, f"{err} at {where}"))
            continue
        if outcome is InsertOutcome.CONFLICT:
            found.append(Violation("A1", statement.id, f"SameName conflict at {where}"))

    return h, ValidationReport(tuple(found)).merged(validate(h))


def load_text(text: str) -> Tuple[Hypernetwork, ValidationReport]:
    """Parse and build in one step."""
    return build(parse(text))


# ===== PRINTERS =====

def _declarations(elements: List[Hypersimplex]) -> Dict[str, RelationSignature]:
    """One signature per relation symbol, alpha instances first, in the given order."""
    chosen: Dict[str, RelationSignature] = {}
    for agg in (AggregationType.ALPHA, AggregationType.BETA):
        for hs in elements:
            if not hs.is_conflict and hs.agg is agg:
                chosen.setdefault(hs.relation.symbol, hs.relation)
    return {symbol: sig for symbol, sig in chosen.items() if not sig.is_anonymous}


def _tags(tags) -> str:
    return f" @ {', '.join(sorted(tags))}" if tags else ""


def render_element(e: Element, declared: Mapping[str, RelationSignature], sort_beta: bool = False) -> str:
    """One statement for `e`; inline roles appear only when `declared` would not reproduce them."""
    if isinstance(e, Vertex):
        return f"vertex {e.id}"
    if isinstance(e, AntiVertex):
        return f"anti {e.excludes}"
    if e.is_conflict:
        left = render_element(e.conflict.left, {})
        right = render_element(e.conflict.right, {})
        return f"conflict {e.id} = [{left} | {right}]{_tags(e.tags)}"

    participants = list(e.participants)
    if sort_beta and e.agg is AggregationType.BETA:
        participants.sort()
    signature = e.relation.symbol
    if resolve_signature(e.relation.symbol, None, e.agg, e.relation.arity, declared) != e.relation:
        signature += f"({', '.join(e.relation.roles)})"
    body = f"{', '.join(participants)} ; {signature}"
    if e.agg is AggregationType.ALPHA:
        return f"alpha {e.id} = <{body}>{_tags(e.tags)}"
    return f"beta {e.id} = {{{body}}}{_tags(e.tags)}"


def _render(boundaries: List[Boundary], declared: Dict[str, RelationSignature],
            elements: List[Element], sort_beta: bool) -> str:
    lines = [f"boundary {b.id}{' percolating' if b.percolating else ''}" for b in boundaries]
    lines += [f"relation {symbol} ({', '.join(sig.roles)})" for symbol, sig in sorted(declared.items())]
    lines += [render_element(e, declared, sort_beta) for e in elements]
    return "".join(line + "\n" for line in lines)


def canonical(h: Hypernetwork) -> str:
    """Deterministic rendering: boundaries, relations and elements sorted by id.

    Alpha participant order is kept verbatim; beta participants and tags are
    sorted. Equal element sets give byte-identical output.
    """
    elements = [h.elements[i] for i in sorted(h.elements)]
    declared = _declarations([e for e in elements if isinstance(e, Hypersimplex)])
    boundaries = [h.boundaries[b] for b in sorted(h.boundaries)]
    return _render(boundaries, declared, elements, sort_beta=True)


def pretty(h: Hypernetwork) -> str:
    """Source-order rendering: registry order, then insertion order."""
    elements = list(h)
    declared = _declarations([e for e in elements if isinstance(e, Hypersimplex)])
    return _render(list(h.boundaries.values()), declared, elements, sort_beta=False)
