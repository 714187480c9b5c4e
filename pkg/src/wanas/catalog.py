"""The group catalog: brackets, constraints, claimed tensor tables, printed
soliton systems, and theorem classifications for the seven groups g1-g7.

The data lives in a single versioned JSON file (``data/catalog.json``; the
``WANAS_CATALOG`` environment variable overrides the path) whose integrity
checksum is validated on load.  Claimed tables are stored verbatim as
polynomial strings, with the g3/g4 shorthands expanded at load time; they are
never derived here — the verification harness recomputes everything from the
brackets and compares.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .algebra import (
    PAIRS,
    Assignment,
    Constraint,
    LieAlgebraSpec,
    LORENTZ,
    StructureConstants,
    Vec3,
    vec_scale,
    vec3,
)
from .geometry import Conn, Mat3, Tor, Tri
from .poly import Poly, parse_poly
from .soliton import SolitonKind, SolitonVerdict

ALL_GROUPS = ("g1", "g2", "g3", "g4", "g5", "g6", "g7")
PAIR_KEYS = ("e1,e2", "e1,e3", "e2,e3")
_PAIR_OF_KEY = dict(zip(PAIR_KEYS, PAIRS))


class CatalogError(ValueError):
    """The catalog file is missing, corrupt, or internally inconsistent."""


class AmbiguousCaseError(CatalogError):
    """A parameter point matches more than one theorem case."""

    def __init__(self, group: str, kind: SolitonKind, names: Sequence[str]):
        self.matched = tuple(names)
        super().__init__(
            f"{group} {kind.value}: point matches cases {', '.join(names)}"
        )


@dataclass(frozen=True)
class ClaimedTensors:
    """The published tables stored verbatim (shorthands expanded), never derived."""

    connection: Conn
    torsion: Tor
    a_tensor: Tri
    abar: Mat3
    ric: Mat3
    wan: Mat3
    wan_tilde: Mat3


@dataclass(frozen=True)
class TheoremCase:
    name: str
    subs: tuple[tuple[str, Poly], ...]
    extra_eq: tuple[Poly, ...]
    neq: tuple[Poly, ...]
    any_c: bool
    c: Poly | None
    d: Mat3
    branches: tuple[tuple[tuple[str, Poly], ...], ...]
    constraint_conflict: bool

    def subs_map(self) -> dict[str, Poly]:
        return dict(self.subs)

    def branch_maps(self) -> tuple[dict[str, Poly], ...]:
        if not self.branches:
            return ({},)
        return tuple(dict(b) for b in self.branches)

    def matches(self, sigma: Assignment) -> bool:
        """Whether the point satisfies this case's defining conditions."""
        for var, expr in self.subs:
            if Fraction(sigma[var]) != expr.evaluate(sigma):
                return False
        for eq in self.extra_eq:
            if eq.evaluate(sigma) != 0:
                return False
        for nz in self.neq:
            if nz.evaluate(sigma) == 0:
                return False
        return True


@dataclass(frozen=True)
class TheoremClaim:
    group: str
    kind: SolitonKind
    claim_type: str  # "cases" | "no_soliton" | "same_as_first"
    cases: tuple[TheoremCase, ...] = ()


@dataclass(frozen=True)
class GroupEntry:
    id: str
    unimodular: bool
    spec: LieAlgebraSpec
    shorthands: dict[str, Poly]
    claimed: ClaimedTensors
    systems: dict[SolitonKind, tuple[Poly, ...]]
    theorems: dict[SolitonKind, TheoremClaim]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class Catalog:
    path: str
    checksum: str
    schema_version: int
    groups: dict[str, GroupEntry]

    def get_group(self, group_id: str) -> GroupEntry:
        gid = group_id.lower()
        if gid not in self.groups:
            raise CatalogError(
                f"unknown group {group_id!r}; expected one of {', '.join(ALL_GROUPS)}"
            )
        return self.groups[gid]

    def claimed_tensors(self, group_id: str) -> ClaimedTensors:
        return self.get_group(group_id).claimed

    def theorem_claim(self, group_id: str, kind: SolitonKind) -> TheoremClaim:
        """The claim for (group, kind), with same-as-first resolved to cases."""
        entry = self.get_group(group_id)
        claim = entry.theorems[kind]
        if claim.claim_type == "same_as_first":
            first = entry.theorems[SolitonKind.FIRST]
            return TheoremClaim(entry.id, kind, first.claim_type, first.cases)
        return claim


def compute_checksum(groups_data: Mapping) -> str:
    payload = json.dumps(groups_data, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(payload).hexdigest()


def default_catalog_path() -> str:
    override = os.environ.get("WANAS_CATALOG")
    if override:
        return override
    return str(resources.files("wanas").joinpath("data/catalog.json"))


def _mat3(rows: Sequence[Sequence[str]], parse) -> Mat3:
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise CatalogError("matrix data must be 3x3")
    return tuple(tuple(parse(s) for s in row) for row in rows)


def _pair_table_vec(per_pair: dict[tuple[int, int], Vec3]) -> Tor:
    """Expand per-pair vectors to a full table antisymmetric in (i, j)."""
    zero = vec3(0, 0, 0)
    table = [[zero] * 3 for _ in range(3)]
    for (i, j), v in per_pair.items():
        table[i][j] = v
        table[j][i] = vec_scale(-1, v)
    return tuple(tuple(row) for row in table)


def _pair_table_tri(per_pair: dict[tuple[int, int], Sequence[Vec3]]) -> Tri:
    """Expand per-pair vec triples (indexed by the third argument) likewise."""
    zero = tuple(vec3(0, 0, 0) for _ in range(3))
    table = [[zero] * 3 for _ in range(3)]
    for (i, j), vecs in per_pair.items():
        table[i][j] = tuple(vecs)
        table[j][i] = tuple(vec_scale(-1, v) for v in vecs)
    return tuple(tuple(row) for row in table)


def _load_group(gid: str, data: Mapping) -> GroupEntry:
    shorthands = {k: parse_poly(v) for k, v in data.get("shorthands", {}).items()}

    def p(text: str) -> Poly:
        return parse_poly(text, shorthands)

    brackets = data["brackets"]
    spec = LieAlgebraSpec(
        StructureConstants.from_brackets(
            vec3(*(p(s) for s in brackets["e1,e2"])),
            vec3(*(p(s) for s in brackets["e1,e3"])),
            vec3(*(p(s) for s in brackets["e2,e3"])),
        ),
        LORENTZ,
        tuple(
            [Constraint("eq", p(s)) for s in data["constraints"]["eq"]]
            + [Constraint("neq", p(s)) for s in data["constraints"]["neq"]]
        ),
    )

    cl = data["claimed"]
    connection = tuple(
        tuple(vec3(*(p(s) for s in cl["connection"][i][j])) for j in range(3))
        for i in range(3)
    )
    torsion = _pair_table_vec(
        {
            _PAIR_OF_KEY[key]: vec3(*(p(s) for s in cl["torsion"][key]))
            for key in PAIR_KEYS
        }
    )
    a_tensor = _pair_table_tri(
        {
            _PAIR_OF_KEY[key]: [vec3(*(p(s) for s in cl["a_tensor"][key][k])) for k in range(3)]
            for key in PAIR_KEYS
        }
    )
    claimed = ClaimedTensors(
        connection=connection,
        torsion=torsion,
        a_tensor=a_tensor,
        abar=_mat3(cl["abar"], p),
        ric=_mat3(cl["ric"], p),
        wan=_mat3(cl["wan"], p),
        wan_tilde=_mat3(cl["wan_tilde"], p),
    )

    systems: dict[SolitonKind, tuple[Poly, ...]] = {}
    for kind_name, eqs in data.get("soliton_systems", {}).items():
        kind = SolitonKind(kind_name)
        parsed = tuple(p(s) for s in eqs)
        for eq in parsed:
            if eq.degree_in("c") > 1:
                raise CatalogError(f"{gid} {kind_name}: system equation not affine in c: {eq}")
        systems[kind] = parsed

    theorems: dict[SolitonKind, TheoremClaim] = {}
    for kind_name, th in data["theorems"].items():
        kind = SolitonKind(kind_name)
        claim_type = th["type"]
        cases = []
        for case in th.get("cases", ()):
            subs = tuple(sorted((k, p(v)) for k, v in case.get("subs", {}).items()))
            branches = tuple(
                tuple(sorted((k, p(v)) for k, v in b.items()))
                for b in case.get("branches", ())
            )
            cases.append(
                TheoremCase(
                    name=case["name"],
                    subs=subs,
                    extra_eq=tuple(p(s) for s in case.get("extra_eq", ())),
                    neq=tuple(p(s) for s in case.get("neq", ())),
                    any_c=bool(case.get("any_c", False)),
                    c=p(case["c"]) if "c" in case else None,
                    d=_mat3(case["d"], p),
                    branches=branches,
                    constraint_conflict=bool(case.get("constraint_conflict", False)),
                )
            )
        theorems[kind] = TheoremClaim(gid, kind, claim_type, tuple(cases))

    entry = GroupEntry(
        id=gid,
        unimodular=bool(data["unimodular"]),
        spec=spec,
        shorthands=shorthands,
        claimed=claimed,
        systems=systems,
        theorems=theorems,
        notes=tuple(data.get("notes", ())),
    )
    _check_case_constraints(entry)
    return entry


def _check_case_constraints(entry: GroupEntry) -> None:
    """Theorem case conditions must not contradict the standing constraints.

    Applying a case's defining substitutions to each group constraint must
    not turn an Equation into a nonzero constant or a NonVanishing into the
    zero polynomial.  Cases annotated ``constraint_conflict`` are exempt but
    must genuinely conflict (the annotation is load-checked too).
    """
    for claim in entry.theorems.values():
        for case in claim.cases:
            subs = case.subs_map()
            conflicts = []
            for con in entry.spec.constraints:
                image = con.poly.substitute(subs)
                if con.kind == "eq" and image.is_constant() and not image.is_zero():
                    conflicts.append(f"{con.describe()} becomes {image} = 0")
                if con.kind == "neq" and image.is_zero():
                    conflicts.append(f"{con.describe()} becomes 0 != 0")
            if conflicts and not case.constraint_conflict:
                raise CatalogError(
                    f"{entry.id} {claim.kind.value} case {case.name} contradicts "
                    f"standing constraints: {'; '.join(conflicts)}"
                )
            if case.constraint_conflict and not conflicts:
                raise CatalogError(
                    f"{entry.id} {claim.kind.value} case {case.name} is annotated as "
                    "conflicting but no contradiction was found"
                )


def load_catalog(path: str | None = None) -> Catalog:
    """Load and integrity-check the catalog (checksum over the groups payload)."""
    path = path or default_catalog_path()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise CatalogError(f"catalog file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog file {path} is not valid JSON: {exc}") from None

    expected = raw.get("checksum")
    actual = compute_checksum(raw.get("groups", {}))
    if expected != actual:
        raise CatalogError(
            f"catalog checksum mismatch in {path}: stored {expected}, computed {actual}"
        )

    groups = {}
    for gid in ALL_GROUPS:
        if gid not in raw["groups"]:
            raise CatalogError(f"catalog is missing group {gid}")
        groups[gid] = _load_group(gid, raw["groups"][gid])
    return Catalog(
        path=path,
        checksum=actual,
        schema_version=int(raw.get("schema_version", 0)),
        groups=groups,
    )


def predicate_eval(claim: TheoremClaim, sigma: Assignment) -> SolitonVerdict:
    """Expected verdict at sigma according to the theorem statement."""
    if claim.claim_type == "no_soliton":
        return SolitonVerdict("no_soliton")
    matched = [case for case in claim.cases if case.matches(sigma)]
    if len(matched) > 1:
        raise AmbiguousCaseError(claim.group, claim.kind, [c.name for c in matched])
    if not matched:
        return SolitonVerdict("no_soliton")
    case = matched[0]
    numeric = {v: Fraction(x) for v, x in sigma.items()}
    if case.any_c:
        family = tuple(tuple(p.substitute({v: Poly.const(x) for v, x in numeric.items()}) for p in row) for row in case.d)
        return SolitonVerdict("any_c", d_family=family)
    c_val = case.c.evaluate(numeric)
    d_val = tuple(tuple(p.evaluate(numeric) for p in row) for row in case.d)
    return SolitonVerdict("soliton", c=c_val, d=d_val)


def _main(argv: Sequence[str]) -> int:
    """Tiny maintenance entry point: print or refresh a catalog checksum."""
    if len(argv) >= 1 and argv[0] == "rehash":
        path = argv[1] if len(argv) > 1 else default_catalog_path()
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        raw["checksum"] = compute_checksum(raw.get("groups", {}))
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(raw, fh, indent=1, sort_keys=True)
            fh.write("\n")
        print(f"updated checksum in {path}: {raw['checksum']}")
        return 0
    cat = load_catalog(argv[0] if argv else None)
    print(f"{cat.path}: schema {cat.schema_version}, checksum {cat.checksum}, "
          f"{len(cat.groups)} groups OK")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(_main(sys.argv[1:]))
