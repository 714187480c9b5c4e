"""Algebraic soliton decision for the Wan operator of the canonical connection.

A metric Lie algebra is an algebraic soliton (first kind: Wan operator;
second kind: its form-symmetrization) when Wan = c*Id + D for some scalar c
and a derivation D of the algebra.  That forces D = Wan - c*Id, so at a
rational parameter point solitonhood reduces to feasibility of a system of
nine affine equations in the single unknown c, decided exactly over Q: any
real solution of such a rational affine system is rational, so restricting
c to Q loses no generality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import PAIRS, LieAlgebraSpec, Vec3
from .geometry import Mat3, compute_tensors, mat_sub, matrix_json, scalar_matrix
from .poly import Poly, format_rational


class SolitonKind(enum.Enum):
    FIRST = "first"
    SECOND = "second"


def wan_for_kind(spec: LieAlgebraSpec, kind: SolitonKind) -> Mat3:
    """The decision operator: Wan for FIRST, its symmetrization for SECOND."""
    bundle = compute_tensors(spec)
    return bundle.wan if kind is SolitonKind.FIRST else bundle.wan_tilde


def derivation_residual(d: Mat3, spec: LieAlgebraSpec) -> tuple[Vec3, Vec3, Vec3]:
    """D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] for the three basis pairs.

    All nine scalar components vanish exactly iff D (row i = image of e_i)
    is a derivation of the algebra.
    """
    c = spec.constants
    residuals = []
    for i, j in PAIRS:
        comps = []
        for l in range(3):
            total = Poly.zero()
            for k in range(3):
                total = total + c[i, j][k] * d[k][l]
                total = total - d[i][k] * c[k, j][l]
                total = total - d[j][k] * c[i, k][l]
            comps.append(total)
        residuals.append(tuple(comps))
    return tuple(residuals)


@dataclass(frozen=True)
class AffineEquation:
    """One residual component as an affine condition constant + slope*c = 0."""

    pair: tuple[int, int]
    component: int
    constant: Fraction
    slope: Fraction

    def describe(self) -> str:
        i, j = self.pair
        lhs = format_rational(self.constant)
        if self.slope:
            sign = "+" if self.slope > 0 else "-"
            lhs += f" {sign} {format_rational(abs(self.slope))}*c"
        return f"residual(e{i + 1},e{j + 1})[e{self.component + 1}]: {lhs} = 0"

    def to_json_dict(self) -> dict:
        return {
            "pair": f"e{self.pair[0] + 1},e{self.pair[1] + 1}",
            "component": f"e{self.component + 1}",
            "constant": format_rational(self.constant),
            "slope": format_rational(self.slope),
        }


@dataclass(frozen=True)
class SolitonVerdict:
    """Outcome of the soliton decision at a rational parameter point.

    outcome is one of:
      "soliton"     unique admissible c; d holds the derivation Wan - c*Id
      "any_c"       the residual system vanishes identically in c (abelian
                    algebra); d_family holds the affine family Wan - c*Id
      "no_soliton"  the affine system is infeasible; witness holds the
                    contradictory equations
    """

    outcome: str
    c: Fraction | None = None
    d: tuple[tuple[Fraction, ...], ...] | None = None
    d_family: Mat3 | None = None
    witness: tuple[AffineEquation, ...] = ()

    def is_soliton(self) -> bool:
        return self.outcome in ("soliton", "any_c")

    def to_json_dict(self) -> dict:
        data: dict = {"outcome": self.outcome}
        data["c"] = format_rational(self.c) if self.c is not None else None
        if self.d is not None:
            data["D"] = [[format_rational(x) for x in row] for row in self.d]
        elif self.d_family is not None:
            data["D"] = matrix_json(self.d_family)
        else:
            data["D"] = None
        data["witness"] = [eq.to_json_dict() for eq in self.witness] or None
        return data

    def describe(self) -> str:
        if self.outcome == "soliton":
            rows = "; ".join(
                "(" + ", ".join(format_rational(x) for x in row) + ")" for row in self.d
            )
            return f"soliton with c = {format_rational(self.c)}, D rows {rows}"
        if self.outcome == "any_c":
            rows = "; ".join("(" + ", ".join(str(p) for p in row) + ")" for row in self.d_family)
            return f"soliton for every c, D(c) rows {rows}"
        lines = ", ".join(eq.describe() for eq in self.witness)
        return f"no soliton ({lines})"


def _numeric_matrix(m: Mat3) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(p.constant_value() for p in row) for row in m)


def soliton_decide(spec: LieAlgebraSpec, kind: SolitonKind, wan: Mat3) -> SolitonVerdict:
    """Decide solitonhood at a numeric point, exactly.

    ``spec`` must be a numeric algebra (constant structure polynomials) and
    ``wan`` the matching numeric decision operator for ``kind``.  Substituting
    D = wan - c*Id into the derivation residual leaves nine equations affine
    in c: residual(D) = residual(wan) + c*[e_i, e_j].
    """
    wan_num = _numeric_matrix(wan)
    struct = {
        (i, j): tuple(p.constant_value() for p in spec.constants[i, j]) for i, j in PAIRS
    }

    equations: list[AffineEquation] = []
    for i, j in PAIRS:
        cij = struct[(i, j)]
        for l in range(3):
            constant = Fraction(0)
            for k in range(3):
                constant += cij[k] * wan_num[k][l]
                constant -= wan_num[i][k] * _struct_lookup(struct, k, j, l)
                constant -= wan_num[j][k] * _struct_lookup(struct, i, k, l)
            equations.append(AffineEquation((i, j), l, constant, cij[l]))

    sloped = [eq for eq in equations if eq.slope]
    flat_bad = [eq for eq in equations if not eq.slope and eq.constant]

    if not sloped:
        if flat_bad:
            return SolitonVerdict("no_soliton", witness=tuple(flat_bad[:2]))
        wan_poly = tuple(tuple(Poly.const(x) for x in row) for row in wan_num)
        family = mat_sub(wan_poly, scalar_matrix(Poly.var("c")))
        return SolitonVerdict("any_c", d_family=family)

    first = sloped[0]
    c_value = -first.constant / first.slope
    for eq in sloped[1:]:
        if -eq.constant / eq.slope != c_value:
            return SolitonVerdict("no_soliton", witness=(first, eq))
    if flat_bad:
        return SolitonVerdict("no_soliton", witness=(flat_bad[0], first))

    d = tuple(
        tuple(wan_num[i][j] - (c_value if i == j else 0) for j in range(3))
        for i in range(3)
    )
    return SolitonVerdict("soliton", c=c_value, d=d)


def _struct_lookup(struct, i: int, j: int, l: int) -> Fraction:
    if i == j:
        return Fraction(0)
    if (i, j) in struct:
        return struct[(i, j)][l]
    return -struct[(j, i)][l]


def residual_system(spec: LieAlgebraSpec, kind: SolitonKind) -> tuple[Poly, ...]:
    """The nine symbolic residual polynomials before any elimination.

    D = Wan - c*Id with c a genuine polynomial variable; each returned
    equation is affine in c.
    """
    wan = wan_for_kind(spec, kind)
    d = mat_sub(wan, scalar_matrix(Poly.var("c")))
    residuals = derivation_residual(d, spec)
    return tuple(comp for vec in residuals for comp in vec)


def solve_affine_in_c(equations: Sequence[Poly], sigma: Mapping[str, Fraction]):
    """Solution set in c of a system affine in c, at the point sigma.

    Returns ("any", None), ("one", c), or ("none", None).  Used to compare a
    residual system against an independently printed system at sampled points.
    """
    candidates: list[Fraction] = []
    for eq in equations:
        if eq.degree_in("c") > 1:
            raise ValueError(f"equation is not affine in c: {eq}")
        at0 = eq.substitute({"c": Poly.const(0)}).evaluate(sigma)
        at1 = eq.substitute({"c": Poly.const(1)}).evaluate(sigma)
        slope = at1 - at0
        if slope == 0:
            if at0 != 0:
                return ("none", None)
        else:
            candidates.append(-at0 / slope)
    if not candidates:
        return ("any", None)
    if any(c != candidates[0] for c in candidates[1:]):
        return ("none", None)
    return ("one", candidates[0])


ETA_RELATION = Poly.var("eta") ** 2 - 1


def _reduce_all(p: Poly, reductions: Sequence[tuple[Poly, str]]) -> Poly:
    if "eta" in p.variables():
        p = p.reduce(ETA_RELATION, "eta")
    for relation, leading in reductions:
        p = p.reduce(relation, leading)
    return p


def check_claimed_solution(
    spec: LieAlgebraSpec,
    kind: SolitonKind,
    c_poly: Poly,
    d: Mat3,
    *,
    branches: Sequence[Mapping[str, Poly]] = ({},),
    reductions: Sequence[tuple[Poly, str]] = (),
) -> list[str]:
    """Symbolically verify a claimed (c, D) family; empty result means pass.

    ``spec`` should already carry the family's defining substitutions.  Extra
    equation constraints that are not substitutions (such as a relation
    between two squared parameters) are handled by ``branches``: each branch
    is a substitution map, and every branch must verify.  Identities are
    checked after reduction modulo eta^2 = 1 (when eta occurs) and any extra
    binomial ``reductions``.
    """
    failures: list[str] = []
    for branch in branches:
        branch_spec = spec.substitute(branch) if branch else spec
        branch_c = c_poly.substitute(branch) if branch else c_poly
        branch_d = tuple(
            tuple(p.substitute(branch) if branch else p for p in row) for row in d
        )
        tag = ""
        if branch:
            tag = " [branch " + ", ".join(f"{k}={v}" for k, v in sorted(branch.items())) + "]"

        wan = wan_for_kind(branch_spec, kind)
        for i in range(3):
            for j in range(3):
                claimed = branch_d[i][j] + (branch_c if i == j else Poly.zero())
                diff = _reduce_all(wan[i][j] - claimed, reductions)
                if not diff.is_zero():
                    failures.append(
                        f"Wan - (c*Id + D) nonzero at ({i + 1},{j + 1}): {diff}{tag}"
                    )
        residuals = derivation_residual(branch_d, branch_spec)
        for (pi, pj), vec in zip(PAIRS, residuals):
            for l, comp in enumerate(vec):
                reduced = _reduce_all(comp, reductions)
                if not reduced.is_zero():
                    failures.append(
                        "derivation residual nonzero at "
                        f"(e{pi + 1},e{pj + 1})[e{l + 1}]: {reduced}{tag}"
                    )
    return failures
