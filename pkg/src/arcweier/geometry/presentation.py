"""Finite scheme presentations and their text serialisation.

A presentation lists tagged variables and equations, plus elements that
must be invertible on the locus.  Each tag records the arc coordinate and
the t-exponent a variable encodes.  Everything produced by the geometry
module, and everything the point counter consumes, goes through this type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..algebra.field import Field
from ..algebra.poly import Poly, PolyRing, parse_poly
from ..errors import ContextError, ParseError


@dataclass(frozen=True)
class VarTag:
    coord: str
    exponent: int | None = None
    block: str = "finite"

    def render(self) -> str:
        s = f"coord={self.coord}"
        if self.exponent is not None:
            s += f" t={self.exponent}"
        return s + f" block={self.block}"


@dataclass(frozen=True)
class SchemePresentation:
    name: str
    ring: PolyRing
    tags: tuple[VarTag, ...]
    equations: tuple[Poly, ...]
    equation_tags: tuple[str, ...]
    inverted: tuple[Poly, ...] = ()
    inverted_tags: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for name in ("tags", "equations", "equation_tags", "inverted", "inverted_tags", "notes"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.tags) != self.ring.nvars:
            raise ContextError("one tag per variable required")
        if len(self.equation_tags) != len(self.equations) or len(self.inverted_tags) != len(self.inverted):
            raise ContextError("one tag per equation / inverted element required")
        for p in self.equations + self.inverted:
            if p.ring != self.ring:
                raise ContextError("equations must live in the presentation ring")

    @classmethod
    def build(cls, name, variables, tags, equations, inverted=(), notes=(), field=None):
        """Assemble from ``(tag, poly)`` pairs; polys are coerced into a fresh ring on ``variables``."""
        if field is None:
            sample = [p for _, p in list(equations) + list(inverted)]
            field = sample[0].ring.field if sample else Field(0)
        ring = PolyRing(tuple(variables), field)
        eqs = [(t, ring(p)) for t, p in equations]
        inv = [(t, ring(p)) for t, p in inverted]
        return cls(
            name, ring, tuple(tags),
            tuple(p for _, p in eqs), tuple(t for t, _ in eqs),
            tuple(p for _, p in inv), tuple(t for t, _ in inv),
            tuple(notes),
        )

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables

    @property
    def field(self) -> Field:
        return self.ring.field

    def tag(self, name: str) -> VarTag:
        return self.tags[self.ring.index(name)]

    def block(self, block: str) -> tuple[str, ...]:
        return tuple(v for v, t in zip(self.variables, self.tags) if t.block == block)

    def equations_tagged(self, prefix: str) -> list[Poly]:
        return [p for p, t in zip(self.equations, self.equation_tags) if t.startswith(prefix)]

    # -- points --------------------------------------------------------------
    def _values(self, assignment: Mapping):
        vals = {}
        for v in self.variables:
            if v not in assignment:
                raise ContextError(f"assignment misses {v!r}")
            vals[v] = assignment[v]
        return vals

    def evaluate(self, assignment: Mapping, one=None):
        """Values of the equations and of the inverted elements at ``assignment``."""
        vals = self._values(assignment)
        if one is None:
            sample = next(iter(vals.values()), None)
            one = sample.ring.one if isinstance(sample, Poly) else 1
        F = self.field

        def norm(x):
            return x if isinstance(x, Poly) else F(x)

        eqs = [norm(p.evaluate(vals, one)) for p in self.equations]
        inv = [norm(p.evaluate(vals, one)) for p in self.inverted]
        return eqs, inv

    def is_point(self, assignment: Mapping, one=None) -> bool:
        eqs, inv = self.evaluate(assignment, one)
        if any(e != 0 for e in eqs):
            return False
        for x in inv:
            if isinstance(x, Poly):
                r = x.residue()
                if not r.terms or not r.is_constant():
                    return False
            elif x == 0:
                return False
        return True

    def fiber(self, fixed: Mapping[str, object], name: str | None = None) -> "SchemePresentation":
        """Substitute field values for some variables; the rest stay symbolic."""
        keep = [v for v in self.variables if v not in fixed]
        ring = PolyRing(tuple(keep), self.field)
        vals = {v: ring.constant(fixed[v]) if v in fixed else ring.gen(v) for v in self.variables}
        eqs = [(t, p.evaluate(vals, ring.one)) for t, p in zip(self.equation_tags, self.equations)]
        eqs = [(t, p) for t, p in eqs if p.terms]
        inv = [(t, p.evaluate(vals, ring.one)) for t, p in zip(self.inverted_tags, self.inverted)]
        tags = [self.tag(v) for v in keep]
        fixed_txt = ", ".join(f"{v}={fixed[v]}" for v in self.variables if v in fixed)
        return SchemePresentation(
            name or f"{self.name} | {fixed_txt}", ring, tags,
            [p for _, p in eqs], [t for t, _ in eqs],
            [p for _, p in inv], [t for t, _ in inv],
            self.notes,
        )

    # -- text format -----------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"presentation: {self.name}", f"field: {self.field}"]
        lines += [f"note: {n}" for n in self.notes]
        for v, t in zip(self.variables, self.tags):
            lines.append(f"var {v} {t.render()}")
        for t, p in zip(self.equation_tags, self.equations):
            lines.append(f"eq {t}: {p}")
        for t, p in zip(self.inverted_tags, self.inverted):
            lines.append(f"inv {t}: {p}")
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SchemePresentation":
        name, field_ = "", Field(0)
        notes, variables, tags = [], [], []
        body = []
        seen_end = False
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if seen_end:
                raise ParseError("content after 'end'", lineno, 1)
            if line == "end":
                seen_end = True
            elif line.startswith("presentation:"):
                name = line.split(":", 1)[1].strip()
            elif line.startswith("field:"):
                try:
                    field_ = Field.parse(line.split(":", 1)[1])
                except ValueError as exc:
                    raise ParseError(str(exc), lineno, raw.index(":") + 2) from None
            elif line.startswith("note:"):
                notes.append(line.split(":", 1)[1].strip())
            elif line.startswith("var "):
                parts = line.split()
                if len(parts) < 2:
                    raise ParseError("variable name expected", lineno, 5)
                kv = {}
                for part in parts[2:]:
                    if "=" not in part:
                        raise ParseError(f"expected key=value, got {part!r}", lineno, raw.index(part) + 1)
                    k, v = part.split("=", 1)
                    kv[k] = v
                exp = kv.get("t")
                variables.append(parts[1])
                tags.append(VarTag(kv.get("coord", parts[1]), int(exp) if exp is not None else None,
                                   kv.get("block", "finite")))
            elif line.startswith(("eq ", "inv ")):
                body.append((lineno, raw))
            else:
                raise ParseError(f"unrecognised line {line!r}", lineno, 1)
        try:
            ring = PolyRing(tuple(variables), field_)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        eqs, inv = [], []
        for lineno, raw in body:
            kind, rest = raw.strip().split(" ", 1)
            if ":" not in rest:
                raise ParseError("expected '<tag>: <polynomial>'", lineno, len(kind) + 2)
            tag, poly_text = rest.split(":", 1)
            offset = raw.index(":") + 1
            try:
                p = parse_poly(poly_text, ring, lineno)
            except ParseError as exc:
                raise ParseError(str(exc).split(": ", 1)[-1], lineno,
                                 (exc.column or 1) + offset) from None
            (eqs if kind == "eq" else inv).append((tag.strip(), p))
        return cls(name, ring, tags, [p for _, p in eqs], [t for t, _ in eqs],
                   [p for _, p in inv], [t for t, _ in inv], notes)


def coefficient_names(var: str, count: int, start: int = 0) -> list[str]:
    return [f"{var}_{k}" for k in range(start, start + count)]
