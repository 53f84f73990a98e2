"""
Unit tests for the axiom predicates, the validator and the sub-hypernetwork check.
"""
from dataclasses import replace
from itertools import permutations, product

from src.axioms import (
    beta_compatible,
    beta_resized_compatible,
    eq_hs,
    eq_vertex,
    identical_in,
    is_sub_hypernetwork,
    orphan,
    roles_compatible,
    validate,
    wellformed,
)
from src.core import (
    AggregationType,
    AntiVertex,
    Boundary,
    Hypernetwork,
    Hypersimplex,
    RelationSignature,
    Vertex,
    rebuild_part_of_index,
)
from src.notation import load_text
from tests.utils.test_helpers import load_model

ALPHA, BETA = AggregationType.ALPHA, AggregationType.BETA
VISIT = RelationSignature("R_visit", ("patient", "clinician", "time"))


def hs(element_id, participants, relation=VISIT, tags=(), agg=ALPHA):
    return Hypersimplex(element_id, agg, relation, tuple(participants), frozenset(tags))


# ===== EQUALITY AND ROLE PREDICATES =====

def test_eq_vertex_matches_id_equality():
    """Two vertices are equal exactly when their ids are."""
    names = [Vertex(n) for n in ("Commander", "Medic1", "Medic2", "Deputy", "Status")]
    for a, b in product(names, names):
        assert eq_vertex(a, b) == (a.id == b.id)


def test_eq_hs_is_role_order_sensitive():
    """Swapping two alpha participants breaks equality."""
    a = hs("V", ["Patient", "Clinician", "Time"])
    b = hs("V", ["Clinician", "Patient", "Time"])
    assert eq_hs(a, a)
    assert not eq_hs(a, b)


def test_eq_hs_only_exact_tag_set_passes():
    """Any added, missing or replaced tag makes two hypersimplices unequal."""
    # 1. Setup
    base = hs("V", ["P", "C", "T"], tags={"b_Ops"})
    candidates = [(), ("b_Medical",), ("b_Ops", "b_Medical"), ("b_Ops",)]

    # 2. Execution / 3. Verification
    for tags in candidates:
        assert eq_hs(base, replace(base, tags=frozenset(tags))) == (set(tags) == {"b_Ops"})


def test_eq_hs_compares_beta_participants_as_sets():
    rel = RelationSignature.anonymous("R_isA", 2)
    a = hs("K", ["Car", "Van"], rel, agg=BETA)
    b = hs("K", ["Van", "Car"], rel, agg=BETA)
    assert eq_hs(a, b)


def test_eq_hs_implies_roles_compatible():
    a = hs("V", ["P", "C", "T"])
    assert eq_hs(a, a) and roles_compatible(a, a)


def test_roles_compatible_on_symbol_and_arity():
    """Matching signatures align; a different symbol or arity does not."""
    pair = RelationSignature("R_pair", ("left", "right"))
    triple = RelationSignature("R_triple", ("a", "b", "c"))
    assert roles_compatible(hs("X", "AB", pair), hs("Y", "AB", pair))
    assert not roles_compatible(hs("X", "AB", pair), hs("Y", "ABC", triple))


def test_roles_compatible_rejects_every_reordering():
    """Only the identity permutation of the role list is compatible."""
    roles = ("a", "b", "c")
    base = hs("X", "PQR", RelationSignature("R", roles))
    for perm in permutations(roles):
        other = hs("X", "PQR", RelationSignature("R", perm))
        assert roles_compatible(base, other) == (perm == roles)


def test_beta_compatible_requires_the_exact_signature():
    """
    Beta hypersimplices align only on an identical role sequence, so a shorter
    role list that happens to be a prefix of the other is not compatible.
    """
    # 1. Setup
    pair = RelationSignature("R", ("r1", "r2"))
    triple = RelationSignature("R", ("r1", "r2", "r3"))
    narrow = hs("X", "AB", pair, agg=BETA)

    # 2. Execution / 3. Verification
    assert beta_compatible(narrow, hs("X", "AC", pair, agg=BETA))
    assert not beta_compatible(narrow, hs("X", "ABC", triple, agg=BETA))
    assert not beta_compatible(narrow, hs("X", "AB", pair))
    marker = Hypersimplex.conflict_marker("X", narrow, hs("X", "AC", pair, agg=BETA))
    assert not beta_compatible(narrow, marker)


def test_beta_resized_compatible_accepts_only_resizing():
    """A shorter or longer role list lines up when one is a resize of the other."""
    # 1. Setup
    pair = RelationSignature.anonymous("R_isA", 2)
    narrow = hs("K", ["Car", "Van"], pair, agg=BETA)

    # 2. Execution / 3. Verification
    assert beta_resized_compatible(narrow, hs("K", ["Car"], pair.resized(1), agg=BETA))
    assert beta_resized_compatible(narrow, hs("K", ["Car", "Van", "Bus"], pair.resized(3), agg=BETA))
    assert not beta_resized_compatible(narrow, hs("K", ["Car"], RelationSignature("R_isA", ("r2",)), agg=BETA))
    assert not beta_resized_compatible(narrow, hs("K", ["Car"], RelationSignature.anonymous("R_kind", 1), agg=BETA))


# ===== WELLFORMED, ORPHAN, IDENTICAL_IN =====

def test_wellformed_on_emergency_tent():
    h = load_model("emergency.hn")
    assert wellformed(h.elements["TriageTent"], h)


def test_wellformed_rejects_arity_mismatch():
    """Two participants cannot fill a three-role relation."""
    h = Hypernetwork.from_elements([Vertex("A"), Vertex("B")])
    assert not wellformed(hs("X", ["A", "B"]), h)


def test_wellformed_rejects_unregistered_tag():
    """Dropping a boundary from the registry invalidates elements tagged with it."""
    # 1. Setup
    h = load_model("emergency.hn")
    registry = [b for b in h.boundaries.values() if b.id != "b_Logistics"]

    # 2. Execution
    narrowed = h.with_boundaries(registry)

    # 3. Verification
    assert not wellformed(narrowed.elements["TriageTent"], narrowed)


def test_orphan():
    """
    A lone vertex is an orphan; a member of a team is not, until every
    hypersimplex that contained it is removed.
    """
    # 1. Setup
    assert orphan(Vertex("Frame"), Hypernetwork.from_elements([Vertex("Frame")]))
    h = load_model("emergency.hn")

    # 2. Execution
    kept = [e for e in h if e.id not in ("TeamBlue", "TriageTent")]
    stripped = Hypernetwork.from_elements(kept, h.boundaries.values())

    # 3. Verification
    assert not orphan(h.elements["Medic1"], h)
    assert orphan(stripped.elements["Medic1"], stripped)


def test_identical_in():
    h = Hypernetwork.from_elements([Vertex("P"), Vertex("C"), Vertex("T"), hs("V", "PCT", tags=())])
    assert identical_in(h, Vertex("P"))
    assert not identical_in(h, hs("V", "PCT", tags={"b_Ops"}))
    assert not identical_in(Hypernetwork.empty(), Vertex("P"))
    assert not identical_in(h, AntiVertex.of("P"))


# ===== VALIDATE =====

def test_validate_emergency_and_empty():
    """The sample model and the empty hypernetwork are both valid."""
    assert validate(load_model("emergency.hn")).ok
    assert validate(Hypernetwork.empty()).ok


def test_duplicate_wheel_assembly_is_reported_as_a1():
    """Two definitions of WheelAssembly produce one unique-name violation."""
    # 1. Setup
    text = (
        "alpha WheelAssembly = <Rim, Hub, Tyre ; R_wheel>\n"
        "alpha WheelAssembly = <Rim, Hub ; R_wheel>\n"
    )

    # 2. Execution
    _, report = load_text(text)

    # 3. Verification
    assert not report.ok
    assert [v.axiom for v in report.violations] == ["A1"]
    assert report.violations[0].element == "WheelAssembly"


def test_validate_reports_each_axiom():
    """A hand-built broken hypernetwork trips every element-level axiom at once."""
    # 1. Setup
    triple = RelationSignature("R", ("a", "b", "c"))
    elements = {
        "A": Vertex("A"),
        "~B": AntiVertex("~B", "C"),
        "S": hs("S", ["A", "Ghost"], RelationSignature.anonymous("R2", 2), tags={"b_none"}),
        "T": hs("T", ["A"], triple),
    }
    h = Hypernetwork(elements, {}, ("A", "~B", "S", "T"), {})

    # 2. Execution
    axioms = {v.axiom for v in validate(h).violations}

    # 3. Verification
    assert {"A2", "A4", "A5", "C5", "C7"} <= axioms


def test_validate_reports_alpha_signature_drift():
    """Two alpha uses of R with different role orders flag the later one."""
    h = Hypernetwork.from_elements([
        Vertex("A"), Vertex("B"),
        hs("X", "AB", RelationSignature("R", ("left", "right"))),
        hs("Y", "BA", RelationSignature("R", ("right", "left"))),
    ])
    lines = validate(h).lines()
    assert len(lines) == 1 and lines[0].startswith("A4\tY\t")


def test_validate_reports_cycles_and_bad_aggregation():
    # 1. Setup
    x = hs("X", ["Y"], RelationSignature.anonymous("R", 1))
    y = hs("Y", ["X"], RelationSignature.anonymous("R", 1))
    cyclic = rebuild_part_of_index(Hypernetwork({"X": x, "Y": y}, {}, ("X", "Y"), {}))
    odd = replace(hs("Z", ["A"], RelationSignature.anonymous("R", 1)), agg="gamma")
    broken = Hypernetwork.from_elements([Vertex("A"), odd])

    # 2. Execution / 3. Verification
    assert [v.element for v in validate(cyclic).violations if v.axiom == "C5"] == ["X", "Y"]
    assert [v.axiom for v in validate(broken).violations] == ["A3"]


def test_report_line_format():
    """Report lines are AXIOM, ELEMENT and DETAIL separated by tabs."""
    _, report = load_text("alpha X = <A ; R> @ b_missing\n")
    assert report.lines() == ["A5\tX\tunregistered boundary: b_missing on X at line 1"]


# ===== SUB-HYPERNETWORK =====

def test_sub_hypernetwork():
    h = load_model("emergency.hn")
    assert is_sub_hypernetwork(h, h)
    assert is_sub_hypernetwork(Hypernetwork.empty(), h)
    assert not is_sub_hypernetwork(load_model("van.hn"), load_model("car.hn"))


def test_conflict_markers_compare_only_to_equal_markers():
    """A marker matches itself but neither of the hypersimplices it records."""
    # 1. Setup
    left = hs("T", "AB", RelationSignature.anonymous("R", 2))
    right = hs("T", "BA", RelationSignature.anonymous("R", 2))
    marker = Hypersimplex.conflict_marker("T", left, right)
    with_marker = Hypernetwork.from_elements([marker])

    # 2. Execution / 3. Verification
    assert is_sub_hypernetwork(with_marker, with_marker)
    assert not identical_in(with_marker, left)
    assert not identical_in(Hypernetwork.from_elements([Vertex("A"), Vertex("B"), left]), marker)


def test_boundary_registry_does_not_affect_sub_hypernetwork():
    small = Hypernetwork.from_elements([Vertex("A")], [Boundary("b_extra")])
    assert is_sub_hypernetwork(small, Hypernetwork.from_elements([Vertex("A")]))
