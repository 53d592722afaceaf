"""Special complete intersections and the variety file format.

File format::

    # comment
    ci 3 1
    name: quadric cone   (optional)
    vars: x y z
    y-vars: y
    field: QQ            (optional, also GF(p))
    x*y - z^2

A file whose header is ``affine m r`` has no ``y-vars`` line and is read as
a plain affine presentation with ``r`` equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..algebra.field import QQ, Field
from ..algebra.jacobian import JacobianData, jacobian_package
from ..algebra.poly import Poly, PolyRing, parse_poly
from ..errors import ContextError, ParseError
from .presentation import SchemePresentation, VarTag


@dataclass(frozen=True)
class SpecialCI:
    """``{f_1 = ... = f_n = 0}`` in affine m-space with distinguished variables ``y_1..y_n``."""

    variables: tuple[str, ...]
    y_vars: tuple[str, ...]
    equations: tuple[Poly, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "y_vars", tuple(self.y_vars))
        object.__setattr__(self, "equations", tuple(self.equations))
        if len(set(self.variables)) != len(self.variables):
            raise ContextError("duplicate variable names")
        if len(self.y_vars) != len(self.equations):
            raise ContextError("need as many equations as y-variables")
        if len(self.y_vars) > len(self.variables):
            raise ContextError("n must not exceed m")
        for y in self.y_vars:
            if y not in self.variables:
                raise ContextError(f"y-variable {y!r} is not declared")
        for f in self.equations:
            if f.ring.variables != self.variables:
                raise ContextError("equations must live in the ring of the declared variables")

    @classmethod
    def from_strings(cls, variables, y_vars, equations, field: Field = QQ, name: str = "") -> "SpecialCI":
        ring = PolyRing(tuple(variables), field)
        return cls(tuple(variables), tuple(y_vars), tuple(parse_poly(e, ring) for e in equations), name)

    @property
    def ring(self) -> PolyRing:
        return self.equations[0].ring if self.equations else PolyRing(self.variables)

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def m(self) -> int:
        return len(self.variables)

    @property
    def n(self) -> int:
        return len(self.y_vars)

    @property
    def x_vars(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v not in self.y_vars)

    @property
    def inverted(self) -> tuple[Poly, ...]:
        return ()

    @cached_property
    def jacobian(self) -> JacobianData:
        return jacobian_package(self)

    @property
    def psi(self) -> Poly:
        return self.jacobian.psi

    def a_map(self) -> list[Poly]:
        """Components of ``phi'(x) f(x)``."""
        phi_adj = self.jacobian.phi_adj
        zero = self.ring.zero
        out = []
        for row in phi_adj:
            acc = zero
            for c, f in zip(row, self.equations):
                acc = acc + c * f
            out.append(acc)
        return out

    def c_map(self, t: str = "t") -> Poly:
        """``t psi(x)^2`` in the ring extended by ``t``."""
        big = self.ring.extend([t])
        return big.gen(t) * big(self.psi) ** 2

    def as_presentation(self) -> SchemePresentation:
        return SchemePresentation(
            self.name or "X", self.ring, [VarTag(v, None, "finite") for v in self.variables],
            self.equations, [f"f{i + 1}" for i in range(self.n)],
        )

    def to_text(self) -> str:
        lines = [f"ci {self.m} {self.n}", "vars: " + " ".join(self.variables),
                 "y-vars: " + " ".join(self.y_vars), f"field: {self.field}"]
        if self.name:
            lines.insert(1, f"name: {self.name}")
        lines += [str(f) for f in self.equations]
        return "\n".join(lines) + "\n"


def quadric_cone(field: Field = QQ) -> SpecialCI:
    """``xy - z^2`` with ``y`` distinguished, so psi = x."""
    return SpecialCI.from_strings(("x", "y", "z"), ("y",), ("x*y - z^2",), field, "quadric cone")


def parse_variety(text: str) -> SpecialCI | SchemePresentation:
    header = None
    variables = None
    y_vars = None
    field = QQ
    name = "X"
    eq_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.index(line[0]) + 1
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] not in ("ci", "affine"):
                raise ParseError("expected header 'ci m n' or 'affine m r'", lineno, col)
            try:
                header = (parts[0], int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError("header sizes must be integers", lineno, col) from None
            continue
        key = line.split(":", 1)[0].strip() if ":" in line else None
        if key == "vars":
            variables = tuple(line.split(":", 1)[1].split())
        elif key == "y-vars":
            y_vars = tuple(line.split(":", 1)[1].split())
        elif key == "name":
            name = line.split(":", 1)[1].strip() or name
        elif key == "field":
            try:
                field = Field.parse(line.split(":", 1)[1])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
        elif key is not None and " " not in key and key.isidentifier():
            raise ParseError(f"unknown key {key!r}", lineno, col)
        else:
            eq_lines.append((lineno, col, line))
    if header is None:
        raise ParseError("empty variety file", 1, 1)
    kind, m, count = header
    if variables is None:
        raise ParseError("missing 'vars:' line")
    if len(variables) != m:
        raise ParseError(f"header declares {m} variables, found {len(variables)}")
    if len(eq_lines) != count:
        raise ParseError(f"header declares {count} equations, found {len(eq_lines)}")
    ring = PolyRing(variables, field)
    eqs = []
    for lineno, col, line in eq_lines:
        try:
            eqs.append(parse_poly(line, ring, lineno))
        except ParseError as exc:
            msg = str(exc).split(": ", 1)[-1]
            raise ParseError(msg, lineno, (exc.column or 1) + col - 1) from None
    if kind == "ci":
        if y_vars is None:
            raise ParseError("a 'ci' file needs a 'y-vars:' line")
        try:
            return SpecialCI(variables, y_vars, tuple(eqs), name)
        except ContextError as exc:
            raise ParseError(str(exc)) from None
    return SchemePresentation(name, ring, [VarTag(v, None, "finite") for v in variables],
                              eqs, [f"f{i + 1}" for i in range(len(eqs))])
