"""
Seeded generators and independent oracles for the property suite.

The oracles share no code with the algebra or axioms modules.
"""
import os
import random
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.algebra import PruneSelector, insert
from src.core import (
    AggregationType,
    AntiVertex,
    Boundary,
    Element,
    Hypernetwork,
    Hypersimplex,
    RelationSignature,
    Vertex,
    descendants,
)
from src.errors import OperandNotFlat, TooLarge
from src.logger import log
from src.notation import pretty
from src.utils.config import get_generator_defaults

# Fixed pool: a symbol always carries the same signature across models.
ALPHA_POOL: Tuple[RelationSignature, ...] = (
    RelationSignature("R_link", ("r1",)),
    RelationSignature("R_pair", ("left", "right")),
    RelationSignature("R_triple", ("first", "second", "third")),
    RelationSignature("R_quad", ("r1", "r2", "r3", "r4")),
)
BETA_SYMBOLS: Tuple[str, ...] = ("R_isA", "R_kind")

EXHAUSTIVE_LIMIT = 8


class GenConfig(BaseModel):
    """Knobs for `gen_valid`. Generation is a pure function of these values."""

    model_config = ConfigDict(frozen=True)

    max_vertices: int = Field(8, ge=0)
    max_hypersimplices: int = Field(6, ge=0)
    max_arity: int = Field(4, ge=0)
    max_boundaries: int = Field(3, ge=0)
    alpha_beta_ratio: float = Field(0.6, ge=0.0, le=1.0)
    percolation_probability: float = Field(0.5, ge=0.0, le=1.0)
    anti_vertex_probability: float = Field(0.3, ge=0.0, le=1.0)
    nesting_probability: float = Field(0.4, ge=0.0, le=1.0)
    lift_probability: float = Field(0.2, ge=0.0, le=1.0)
    seed: int = 0

    @classmethod
    def from_config(cls, seed: int = 0, **overrides) -> "GenConfig":
        """Defaults from the `generator` config section, then `overrides`."""
        settings = get_generator_defaults()
        settings.update(overrides)
        return cls(seed=seed, **settings)

    def zeroed(self) -> "GenConfig":
        return self.model_copy(update={"max_vertices": 0, "max_hypersimplices": 0,
                                       "max_arity": 0, "max_boundaries": 0})


# ===== GENERATORS =====

def gen_valid(cfg: GenConfig) -> Hypernetwork:
    """A valid hypernetwork drawn from `cfg.seed`.

    Covers nested hypersimplices, anti-vertices, both percolation modes and
    name-lifts of existing vertices. Every element goes through `insert`.
    """
    rng = random.Random(cfg.seed)
    boundaries = [Boundary(f"b{i}", rng.random() < cfg.percolation_probability)
                  for i in range(rng.randint(0, cfg.max_boundaries))]
    h = Hypernetwork.empty().with_boundaries(boundaries)

    vertex_count = rng.randint(0, cfg.max_vertices)
    for i in range(vertex_count):
        h = insert(h, Vertex(f"V{i}"))
    for i in range(cfg.max_vertices // 2):
        if rng.random() < cfg.anti_vertex_probability:
            h = insert(h, AntiVertex.of(f"X{i}"))

    alpha_pool = [sig for sig in ALPHA_POOL if sig.arity <= cfg.max_arity]
    fresh = vertex_count
    for j in range(rng.randint(0, cfg.max_hypersimplices) if cfg.max_arity else 0):
        element_id = f"H{j}"
        lifted = [v.id for v in h.vertices()]
        if lifted and rng.random() < cfg.lift_probability:
            element_id = rng.choice(lifted)

        candidates = [e.id for e in h if isinstance(e, (Vertex, AntiVertex)) and e.id != element_id]
        if rng.random() < cfg.nesting_probability:
            candidates += [hs.id for hs in h.hypersimplices() if hs.id != element_id]

        use_alpha = bool(alpha_pool) and rng.random() < cfg.alpha_beta_ratio
        if use_alpha:
            relation = rng.choice(alpha_pool)
            arity, agg = relation.arity, AggregationType.ALPHA
        else:
            arity, agg = rng.randint(1, cfg.max_arity), AggregationType.BETA
            relation = RelationSignature.anonymous(rng.choice(BETA_SYMBOLS), arity)

        while len(candidates) < arity:
            candidates.append(f"V{fresh}")
            fresh += 1
        participants = tuple(rng.sample(candidates, arity))
        tags = frozenset(b.id for b in boundaries if rng.random() < 0.5)
        h = insert(h, Hypersimplex(element_id, agg, relation, participants, tags))
    return h


def gen_flat(seed: int, max_vertices: int = 6) -> Hypernetwork:
    """A vertex/anti-vertex-only hypernetwork over the shared pool P0..Pn."""
    rng = random.Random(seed)
    elements: List[Element] = []
    for i in range(max_vertices):
        roll = rng.random()
        if roll < 0.45:
            elements.append(Vertex(f"P{i}"))
        elif roll < 0.6:
            elements.append(AntiVertex.of(f"P{i}"))
    rng.shuffle(elements)
    return Hypernetwork.from_elements(elements)


def gen_selector(h: Hypernetwork, seed: int, kinds: Sequence[str] = ("v", "hs", "rel", "b"),
                 max_items: int = 2) -> PruneSelector:
    """A selector whose items all resolve in `h`."""
    rng = random.Random(seed)
    pool: List[str] = []
    if "v" in kinds:
        pool += [f"v:{e.id}" for e in h if isinstance(e, (Vertex, AntiVertex))]
    if "hs" in kinds:
        pool += [f"hs:{hs.id}" for hs in h.hypersimplices()]
    if "rel" in kinds:
        symbols = {hs.relation.symbol for hs in h.hypersimplices() if not hs.is_conflict}
        pool += [f"rel:{symbol}" for symbol in sorted(symbols)]
    if "b" in kinds:
        pool += [f"b:{b}" for b in sorted(h.boundaries)]
    count = rng.randint(0, min(max_items, len(pool)))
    return PruneSelector.from_items(rng.sample(pool, count))


def gen_subset(h: Hypernetwork, seed: int) -> Hypernetwork:
    """A participant-closed sub-hypernetwork of `h`, keeping its registry."""
    rng = random.Random(seed)
    picked = [e.id for e in h if rng.random() < 0.5]
    keep = set(picked) | set(descendants(h, picked))
    return Hypernetwork.from_elements([e for e in h if e.id in keep], h.boundaries.values())


def dump_corpus(directory: str, count: int, start: int = 0,
                cfg: Optional[GenConfig] = None) -> List[str]:
    """Write `count` generated models as `seed_NNNN.hn` files.

    Args:
        directory: Target directory, created if missing.
        count: Number of models.
        start: First seed.
        cfg: Generator settings; the seed field is replaced per file.

    Returns:
        list: The written paths, in seed order.
    """
    cfg = cfg or GenConfig.from_config()
    os.makedirs(directory, exist_ok=True)
    log(f"-> Writing {count} models to: {directory}")
    paths = []
    for seed in range(start, start + count):
        h = gen_valid(cfg.model_copy(update={"seed": seed}))
        path = os.path.join(directory, f"seed_{seed:04d}.hn")
        with open(path, "w", encoding="utf-8") as f:
            f.write(pretty(h))
        paths.append(path)
    log(f"✅ Corpus written ({len(paths)} files)")
    return paths


# ===== ORACLES =====

@dataclass(frozen=True)
class SetOracleResult:
    union: FrozenSet[str]
    intersection: FrozenSet[str]
    difference: FrozenSet[str]


def _require_flat(h: Hypernetwork) -> FrozenSet[str]:
    for element in h.elements.values():
        if isinstance(element, Hypersimplex):
            raise OperandNotFlat(f"{element.id} is a hypersimplex")
    return frozenset(h.elements)


def oracle_set_ops(h1: Hypernetwork, h2: Hypernetwork) -> SetOracleResult:
    """Plain set arithmetic over the ids of two flat hypernetworks."""
    left, right = _require_flat(h1), _require_flat(h2)
    return SetOracleResult(left | right, left & right, left - right)


def _fingerprint(e: Element, verbatim: bool = False) -> tuple:
    if isinstance(e, Vertex):
        return ("vertex", e.id)
    if isinstance(e, AntiVertex):
        return ("anti", e.id)
    conflict = None
    if e.conflict is not None:
        conflict = (_fingerprint(e.conflict.left, True), _fingerprint(e.conflict.right, True))
    participants = tuple(e.participants)
    if e.agg is AggregationType.BETA and not verbatim:
        participants = tuple(sorted(participants))
    return ("hs", e.id, e.agg.value, e.relation.symbol, tuple(e.relation.roles),
            participants, tuple(sorted(e.tags)), conflict)


def oracle_subhn(h1: Hypernetwork, h2: Hypernetwork) -> bool:
    """Exhaustive element matching: does every element of h1 appear in h2?

    Raises:
        TooLarge: if either operand has more than eight elements.
    """
    if len(h1.elements) > EXHAUSTIVE_LIMIT or len(h2.elements) > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"exhaustive check is limited to {EXHAUSTIVE_LIMIT} elements")
    candidates = [_fingerprint(f) for f in h2.elements.values()]
    return all(any(_fingerprint(e) == c for c in candidates) for e in h1.elements.values())
