"""Catalog integrity: checksum, shorthand identities, claims, predicates."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from wanas.catalog import (
    ALL_GROUPS,
    AmbiguousCaseError,
    CatalogError,
    TheoremCase,
    TheoremClaim,
    compute_checksum,
    load_catalog,
    predicate_eval,
)
from wanas.geometry import mat_eq
from wanas.poly import Poly, parse_poly
from wanas.soliton import SolitonKind

P = parse_poly
F = Fraction


def _raw_catalog(catalog):
    with open(catalog.path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# -- loading and integrity -------------------------------------------------------


def test_catalog_loads_all_seven_groups(catalog):
    assert tuple(catalog.groups) == ALL_GROUPS
    assert catalog.schema_version == 1
    assert catalog.get_group("G5").id == "g5"
    with pytest.raises(CatalogError):
        catalog.get_group("g8")


def test_checksum_matches_payload(catalog):
    raw = _raw_catalog(catalog)
    assert raw["checksum"] == compute_checksum(raw["groups"])
    assert catalog.checksum == raw["checksum"]


def test_tampered_catalog_rejected(catalog, tmp_path):
    raw = _raw_catalog(catalog)
    raw["groups"]["g1"]["claimed"]["wan"][0][0] = "0"
    bad = tmp_path / "catalog.json"
    bad.write_text(json.dumps(raw))
    with pytest.raises(CatalogError, match="checksum"):
        load_catalog(str(bad))


def test_missing_catalog_rejected(tmp_path):
    with pytest.raises(CatalogError, match="not found"):
        load_catalog(str(tmp_path / "nope.json"))


def test_rehash_utility_repairs_checksum(catalog, tmp_path):
    from wanas.catalog import _main

    raw = _raw_catalog(catalog)
    raw["groups"]["g3"]["notes"].append("sampled annotation")
    edited = tmp_path / "catalog.json"
    edited.write_text(json.dumps(raw))
    with pytest.raises(CatalogError, match="checksum"):
        load_catalog(str(edited))
    assert _main(["rehash", str(edited)]) == 0
    repaired = load_catalog(str(edited))
    assert "sampled annotation" in repaired.get_group("g3").notes


def test_unimodular_flags(catalog):
    for gid in ("g1", "g2", "g3", "g4"):
        assert catalog.get_group(gid).unimodular
    for gid in ("g5", "g6", "g7"):
        assert not catalog.get_group(gid).unimodular


# -- group constraints as encoded -----------------------------------------------------


def test_standing_constraints_encoding(catalog):
    described = {
        gid: sorted(c.describe() for c in catalog.get_group(gid).spec.constraints)
        for gid in ALL_GROUPS
    }
    assert described["g1"] == ["alpha != 0"]
    assert described["g2"] == ["gamma != 0"]
    assert described["g3"] == []
    assert described["g4"] == ["eta^2 - 1 = 0"]
    assert described["g5"] == ["alpha + delta != 0", "alpha*gamma + beta*delta = 0"]
    assert described["g6"] == ["alpha + delta != 0", "alpha*gamma - beta*delta = 0"]
    assert described["g7"] == ["alpha + delta != 0", "alpha*gamma = 0"]


def test_g1_brackets_match_encoding(catalog):
    c = catalog.get_group("g1").spec.constants
    assert c[0, 1] == (P("alpha"), Poly.zero(), P("-beta"))
    assert c[1, 2] == (P("beta"), P("alpha"), P("alpha"))


def test_g4_shorthands_available(catalog):
    sh = catalog.get_group("g4").shorthands
    assert sh["b2"] == P("1/2*alpha-eta")
    assert sh["b3"] - sh["b2"] == P("2*eta")


# -- shorthand identities ---------------------------------------------------------------


def test_g3_shorthand_expansion_identities(catalog):
    sh = catalog.get_group("g3").shorthands
    a1, a2, a3 = sh["a1"], sh["a2"], sh["a3"]
    assert a1 == P("1/2*(alpha-beta-gamma)")
    assert a2 == P("1/2*(alpha-beta+gamma)")
    assert a3 == P("1/2*(alpha+beta-gamma)")
    assert a2 - a1 == P("gamma")
    assert a3 - a1 == P("beta")
    assert a1 + a2 + a3 == P("3/2*alpha - 1/2*beta - 1/2*gamma")


def test_g4_shorthand_expansion_identities(catalog):
    sh = catalog.get_group("g4").shorthands
    assert sh["b1"] == P("1/2*alpha+eta-beta")
    assert sh["b1"] - sh["b3"] == P("-beta")


# -- claimed tensors -------------------------------------------------------------------


def test_claimed_round_trips_through_rendering(catalog):
    """Bit-exact round trip: parse(str(p)) == p for every claimed entry."""
    for entry in catalog.groups.values():
        cl = entry.claimed
        polys = [p for row in cl.connection for v in row for p in v]
        polys += [p for plane in cl.torsion for v in plane for p in v]
        polys += [p for plane in cl.a_tensor for row in plane for v in row for p in v]
        for m in (cl.abar, cl.ric, cl.wan, cl.wan_tilde):
            polys += [p for row in m for p in row]
        for p in polys:
            assert parse_poly(str(p)) == p


def test_claimed_examples_from_displays(catalog):
    g2 = catalog.get_group("g2").claimed
    assert g2.connection[1][0] == (Poly.zero(), P("-gamma"), Poly.zero())
    g4 = catalog.get_group("g4").claimed
    assert g4.abar[0][0] == P("(1/2*alpha+eta-beta)*2*(2*eta-beta)+1")
    g7 = catalog.get_group("g7").claimed
    assert g7.ric[2][0] == P("-(gamma*alpha+1/2*delta*gamma)")


def test_wan_tilde_stored_equal_to_wan_for_g3_g5(catalog):
    for gid in ("g3", "g5"):
        cl = catalog.get_group(gid).claimed
        assert mat_eq(cl.wan, cl.wan_tilde)


def test_claimed_pair_tables_antisymmetric(catalog):
    for entry in catalog.groups.values():
        t, a = entry.claimed.torsion, entry.claimed.a_tensor
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    assert t[i][j][k] == -t[j][i][k]
                    for l in range(3):
                        assert a[i][j][k][l] == -a[j][i][k][l]


# -- theorem claims -----------------------------------------------------------------------


def test_theorem_claim_types(catalog):
    assert catalog.theorem_claim("g1", SolitonKind.FIRST).claim_type == "no_soliton"
    assert catalog.theorem_claim("g1", SolitonKind.SECOND).claim_type == "no_soliton"
    g3_second = catalog.theorem_claim("g3", SolitonKind.SECOND)
    assert g3_second.claim_type == "cases"  # resolved from same_as_first
    assert len(g3_second.cases) == 7
    assert catalog.get_group("g3").theorems[SolitonKind.SECOND].claim_type == "same_as_first"
    assert len(catalog.theorem_claim("g6", SolitonKind.FIRST).cases) == 3
    assert len(catalog.theorem_claim("g4", SolitonKind.FIRST).cases) == 2


def test_g3_case_v_encoding(catalog):
    claim = catalog.theorem_claim("g3", SolitonKind.FIRST)
    case = next(c for c in claim.cases if c.name == "v")
    assert case.c == P("-2*beta^2")
    assert case.d[1][1] == P("2*beta^2")
    assert case.subs_map()["gamma"] == P("beta")


def test_g6_second_kind_case_ii_encoding(catalog):
    claim = catalog.theorem_claim("g6", SolitonKind.SECOND)
    case = next(c for c in claim.cases if c.name == "ii")
    assert case.c == P("-(alpha^2+delta^2)")
    assert case.d[1][1] == P("delta^2")
    assert case.d[2][2] == P("alpha^2+delta^2")
    assert {str(p) for p in case.neq} == {"delta", "alpha + delta"}


def test_g6_case_iii_annotations(catalog):
    for kind in SolitonKind:
        claim = catalog.theorem_claim("g6", kind)
        case = next(c for c in claim.cases if c.name == "iii")
        assert case.constraint_conflict
        assert case.extra_eq == (P("alpha^2-beta^2"),)
        assert len(case.branch_maps()) == 2
    first = next(c for c in catalog.theorem_claim("g6", SolitonKind.FIRST).cases if c.name == "iii")
    second = next(c for c in catalog.theorem_claim("g6", SolitonKind.SECOND).cases if c.name == "iii")
    # the printed D(2,2) entries differ on the page but agree on the variety
    assert first.d[1][1] == P("-beta^2")
    assert second.d[1][1] == P("-alpha^2")
    assert any("alpha^2 = beta^2" in note for note in catalog.get_group("g6").notes)


def test_case_conditions_never_contradict_standing_constraints(catalog, tmp_path):
    # the loader enforces the implication check; a synthetic violation is caught
    raw = _raw_catalog(catalog)
    raw["groups"]["g2"]["theorems"]["first"]["cases"][0]["subs"]["gamma"] = "0"
    raw["checksum"] = compute_checksum(raw["groups"])
    bad = tmp_path / "catalog.json"
    bad.write_text(json.dumps(raw))
    with pytest.raises(CatalogError, match="contradicts standing constraints"):
        load_catalog(str(bad))


def test_conflict_annotation_must_be_genuine(catalog, tmp_path):
    raw = _raw_catalog(catalog)
    raw["groups"]["g2"]["theorems"]["first"]["cases"][0]["constraint_conflict"] = True
    raw["checksum"] = compute_checksum(raw["groups"])
    bad = tmp_path / "catalog.json"
    bad.write_text(json.dumps(raw))
    with pytest.raises(CatalogError, match="annotated as conflicting"):
        load_catalog(str(bad))


# -- predicate evaluation --------------------------------------------------------------------


def test_predicate_g2_point(catalog):
    claim = catalog.theorem_claim("g2", SolitonKind.FIRST)
    verdict = predicate_eval(claim, {"alpha": F(0), "beta": F(0), "gamma": F(2)})
    assert verdict.outcome == "soliton"
    assert verdict.c == F(-8)
    assert verdict.d == ((F(0),) * 3, (F(0), F(4), F(0)), (F(0), F(0), F(8)))


def test_predicate_g1_always_no_soliton(catalog):
    claim = catalog.theorem_claim("g1", SolitonKind.FIRST)
    for sigma in ({"alpha": F(1), "beta": F(0)}, {"alpha": F(-2), "beta": F(5)}):
        assert predicate_eval(claim, sigma).outcome == "no_soliton"


def test_predicate_g3_abelian_any_c(catalog):
    claim = catalog.theorem_claim("g3", SolitonKind.FIRST)
    verdict = predicate_eval(claim, {"alpha": F(0), "beta": F(0), "gamma": F(0)})
    assert verdict.outcome == "any_c"
    assert verdict.d_family[0][0] == P("-c")


def test_predicate_unmatched_point_is_no_soliton(catalog):
    claim = catalog.theorem_claim("g2", SolitonKind.FIRST)
    verdict = predicate_eval(claim, {"alpha": F(1), "beta": F(0), "gamma": F(2)})
    assert verdict.outcome == "no_soliton"


def test_predicate_g5_every_point_matches(catalog):
    claim = catalog.theorem_claim("g5", SolitonKind.SECOND)
    sigma = {"alpha": F(1), "beta": F(1), "gamma": F(2), "delta": F(-2)}
    verdict = predicate_eval(claim, sigma)
    assert verdict.outcome == "soliton"
    assert verdict.c == F(1) + F(9, 2) + F(4)


def test_predicate_ambiguous_cases_detected(catalog):
    # synthetic overlapping cases: both match the same point
    base = catalog.theorem_claim("g2", SolitonKind.FIRST).cases[0]
    clone = TheoremCase(
        name="overlap",
        subs=base.subs,
        extra_eq=base.extra_eq,
        neq=base.neq,
        any_c=base.any_c,
        c=base.c,
        d=base.d,
        branches=base.branches,
        constraint_conflict=False,
    )
    claim = TheoremClaim("g2", SolitonKind.FIRST, "cases", (base, clone))
    with pytest.raises(AmbiguousCaseError):
        predicate_eval(claim, {"alpha": F(0), "beta": F(0), "gamma": F(1)})


def test_catalog_cases_are_mutually_exclusive_on_grids(catalog):
    """No admissible grid point matches two cases of any theorem."""
    from wanas.verify import default_grid

    for gid in ALL_GROUPS:
        entry = catalog.get_group(gid)
        _, points = default_grid(entry, min_points=200)
        for kind in SolitonKind:
            claim = catalog.theorem_claim(gid, kind)
            for sigma in points[:250]:
                predicate_eval(claim, sigma)  # raises AmbiguousCaseError on overlap
