"""Three-dimensional metric Lie algebras with polynomial structure constants.

A :class:`LieAlgebraSpec` couples an antisymmetric bracket table
[e_i, e_j] = sum_k c[i][j][k] e_k (polynomial entries), a diagonal metric
signature, and the parameter constraints that carve out the admissible
region (equations that must vanish, expressions that must not).  The basis
is fixed and ordered; indices are 0-based in code, 1-based in rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import (
    MissingVariableError,
    Poly,
    PolyLike,
    as_poly,
    format_rational,
    parse_poly,
    parse_rational,
)

Vec3 = tuple[Poly, Poly, Poly]
Assignment = Mapping[str, Fraction]

ZERO_VEC: Vec3 = (Poly.zero(), Poly.zero(), Poly.zero())

# the three basis pairs (i < j), in canonical order
PAIRS = ((0, 1), (0, 2), (1, 2))


class InvalidAssignmentError(ValueError):
    """A parameter assignment violates the algebra's constraints."""

    def __init__(self, violations: Sequence[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(violations))


def vec3(*components: PolyLike) -> Vec3:
    if len(components) != 3:
        raise ValueError("a basis vector expansion needs exactly 3 components")
    return tuple(as_poly(x) for x in components)


def vec_add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vec_sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def vec_scale(s: PolyLike, a: Vec3) -> Vec3:
    s = as_poly(s)
    return (s * a[0], s * a[1], s * a[2])


def vec_is_zero(a: Vec3) -> bool:
    return all(x.is_zero() for x in a)


@dataclass(frozen=True)
class MetricSignature:
    """Diagonal metric g(e_i, e_j) = eps[i] * delta_ij with eps entries +-1."""

    eps: tuple[int, int, int]

    def __post_init__(self):
        if len(self.eps) != 3 or any(e not in (1, -1) for e in self.eps):
            raise ValueError(f"signature entries must be +-1, got {self.eps}")


LORENTZ = MetricSignature((1, 1, -1))


class StructureConstants:
    """Full antisymmetric table c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    __slots__ = ("table",)

    def __init__(self, table: Sequence[Sequence[Vec3]]):
        t = tuple(tuple(vec3(*row) for row in plane) for plane in table)
        if len(t) != 3 or any(len(plane) != 3 for plane in t):
            raise ValueError("structure constants need a 3x3 table of 3-vectors")
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    if t[i][j][k] != -t[j][i][k]:
                        raise ValueError(
                            f"antisymmetry violated at c[{i + 1}][{j + 1}][{k + 1}]"
                        )
        self.table = t

    @classmethod
    def from_brackets(cls, c12: Vec3, c13: Vec3, c23: Vec3) -> StructureConstants:
        """Build the full table from the three upper brackets."""
        z = ZERO_VEC
        upper = {(0, 1): vec3(*c12), (0, 2): vec3(*c13), (1, 2): vec3(*c23)}
        table = [[z, z, z], [z, z, z], [z, z, z]]
        for (i, j), v in upper.items():
            table[i][j] = v
            table[j][i] = vec_scale(-1, v)
        return cls(table)

    def __getitem__(self, ij: tuple[int, int]) -> Vec3:
        i, j = ij
        return self.table[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.table == other.table


@dataclass(frozen=True)
class Constraint:
    """An Equation (poly == 0) or NonVanishing (poly != 0) parameter condition."""

    kind: str  # "eq" | "neq"
    poly: Poly

    def __post_init__(self):
        if self.kind not in ("eq", "neq"):
            raise ValueError(f"constraint kind must be 'eq' or 'neq', got {self.kind!r}")
        if "c" in self.poly.variables():
            raise ValueError(f"constraints may not involve the soliton scalar c: {self.poly}")

    def describe(self) -> str:
        op = "=" if self.kind == "eq" else "!="
        return f"{self.poly} {op} 0"


@dataclass(frozen=True)
class LieAlgebraSpec:
    """Bracket table + signature + parameter constraints."""

    constants: StructureConstants
    signature: MetricSignature
    constraints: tuple[Constraint, ...] = ()

    def variables(self) -> tuple[str, ...]:
        """All parameters occurring in brackets or constraints, canonical order."""
        seen: set[str] = set()
        for i, j in PAIRS:
            for comp in self.constants[i, j]:
                seen.update(comp.variables())
        for con in self.constraints:
            seen.update(con.poly.variables())
        from .poly import VARIABLES

        return tuple(v for v in VARIABLES if v in seen)

    # -- bracket and Jacobi --------------------------------------------

    def bracket(self, x: Sequence[PolyLike], y: Sequence[PolyLike]) -> Vec3:
        """Bilinear antisymmetric extension of the structure constants."""
        x = vec3(*x)
        y = vec3(*y)
        out = list(ZERO_VEC)
        for i in range(3):
            if x[i].is_zero():
                continue
            for j in range(3):
                if i == j or y[j].is_zero():
                    continue
                coeff = x[i] * y[j]
                cij = self.constants[i, j]
                for k in range(3):
                    if not cij[k].is_zero():
                        out[k] = out[k] + coeff * cij[k]
        return tuple(out)

    def basis_vector(self, i: int) -> Vec3:
        out = [Poly.zero()] * 3
        out[i] = Poly.const(1)
        return tuple(out)

    def jacobi_residual(self) -> Vec3:
        """Components of [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]]."""
        e = [self.basis_vector(i) for i in range(3)]
        total = ZERO_VEC
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            total = vec_add(total, self.bracket(e[i], self.bracket(e[j], e[k])))
        return total

    # -- assignments ----------------------------------------------------

    def validate_assignment(self, sigma: Assignment) -> list[str]:
        """Empty list if sigma is admissible, else the violated conditions."""
        if "c" in sigma:
            return ["the soliton scalar c is not a group parameter"]
        missing = [v for v in self.variables() if v not in sigma]
        if missing:
            raise MissingVariableError(missing)
        violations = []
        for con in self.constraints:
            value = con.poly.evaluate(sigma)
            if con.kind == "eq" and value != 0:
                violations.append(f"{con.poly} = {format_rational(value)}, expected 0")
            elif con.kind == "neq" and value == 0:
                violations.append(f"{con.poly} = 0, expected nonzero")
        return violations

    def evaluate(self, sigma: Assignment) -> LieAlgebraSpec:
        """The numeric algebra at sigma (constraints checked, then dropped)."""
        violations = self.validate_assignment(sigma)
        if violations:
            raise InvalidAssignmentError(violations)
        return self.substitute({v: Poly.const(sigma[v]) for v in self.variables()})

    def substitute(self, images: Mapping[str, PolyLike]) -> LieAlgebraSpec:
        """Substitute parameters in brackets and constraints (no validation)."""
        def sub(p: Poly) -> Poly:
            return p.substitute(images)

        c12 = tuple(sub(p) for p in self.constants[0, 1])
        c13 = tuple(sub(p) for p in self.constants[0, 2])
        c23 = tuple(sub(p) for p in self.constants[1, 2])
        constraints = tuple(
            Constraint(con.kind, sub(con.poly)) for con in self.constraints
        )
        return LieAlgebraSpec(
            StructureConstants.from_brackets(c12, c13, c23), self.signature, constraints
        )

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "brackets": {
                "e1,e2": [str(p) for p in self.constants[0, 1]],
                "e1,e3": [str(p) for p in self.constants[0, 2]],
                "e2,e3": [str(p) for p in self.constants[1, 2]],
            },
            "signature": list(self.signature.eps),
            "constraints": {
                "eq": [str(c.poly) for c in self.constraints if c.kind == "eq"],
                "neq": [str(c.poly) for c in self.constraints if c.kind == "neq"],
            },
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> LieAlgebraSpec:
        brackets = data["brackets"]
        def vec(key: str) -> Vec3:
            comps = brackets.get(key, ["0", "0", "0"])
            if len(comps) != 3:
                raise ValueError(f"bracket {key} needs 3 components")
            return vec3(*(parse_poly(s) for s in comps))

        constants = StructureConstants.from_brackets(
            vec("e1,e2"), vec("e1,e3"), vec("e2,e3")
        )
        signature = MetricSignature(tuple(data.get("signature", (1, 1, -1))))
        cons = data.get("constraints", {})
        constraints = tuple(
            [Constraint("eq", parse_poly(s)) for s in cons.get("eq", ())]
            + [Constraint("neq", parse_poly(s)) for s in cons.get("neq", ())]
        )
        return cls(constants, signature, constraints)


def load_spec_file(path: str) -> LieAlgebraSpec:
    """Read a non-catalog algebra from a JSON spec file (the CLI escape hatch)."""
    with open(path, "r", encoding="utf-8") as fh:
        return LieAlgebraSpec.from_json_dict(json.load(fh))


def parse_assignment(text: str) -> dict[str, Fraction]:
    """Parse "alpha=1,beta=-1/2" into an exact assignment (decimals rejected)."""
    sigma: dict[str, Fraction] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ValueError(f"expected name=p/q, got {chunk!r}")
        name, value = chunk.split("=", 1)
        name = name.strip()
        from .poly import VARIABLES

        if name not in VARIABLES:
            raise ValueError(f"unknown parameter {name!r}; expected one of {', '.join(VARIABLES)}")
        if name in sigma:
            raise ValueError(f"parameter {name} assigned twice")
        sigma[name] = parse_rational(value)
    return sigma
