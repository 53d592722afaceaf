"""Key-value input files for truncated series and arcs.

A document is a list of ``key: value`` lines; ``#`` starts a comment.  The
keys ``field``, ``params``, ``M`` and ``N`` fix the test ring
``F[params]/(params)^M`` and the truncation; every other key names a series,
written as a polynomial in ``t`` with coefficients in the test ring::

    field: QQ
    params: a
    M: 2
    N: 6
    f: t^2 + a*t
    g: 1 + t
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.field import QQ, Field
from .algebra.series import Tps
from .algebra.testring import TestRingSpec
from .errors import ParseError

_HEADER = ("field", "params", "M", "N", "d")


@dataclass
class SeriesDocument:
    ring_spec: TestRingSpec
    N: int
    series: dict[str, Tps]
    d: int | None = None
    order: list[str] = field(default_factory=list)

    def require(self, *names: str) -> list[Tps]:
        missing = [n for n in names if n not in self.series]
        if missing:
            raise ParseError(f"missing series {', '.join(missing)}")
        return [self.series[n] for n in names]


def _int(value: str, key: str, lineno: int, col: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value!r}", lineno, col) from None


def parse_series_document(text: str, default_field: Field = QQ) -> SeriesDocument:
    header: dict[str, object] = {}
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", lineno, len(line) - len(line.lstrip()) + 1)
        key, value = line.split(":", 1)
        key = key.strip()
        vcol = line.index(":") + 2
        if key in header or any(key == b[1] for b in body):
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        if key == "field":
            try:
                header[key] = Field.parse(value)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, vcol) from None
        elif key == "params":
            header[key] = tuple(value.split())
        elif key in ("M", "N", "d"):
            header[key] = _int(value.strip(), key, lineno, vcol)
        elif key.isidentifier() and key != "t":
            body.append((lineno, key, value, vcol))
        else:
            raise ParseError(f"invalid series name {key!r}", lineno, 1)
    if "N" not in header:
        raise ParseError("missing 'N:' line")
    N = header["N"]
    if N < 1:
        raise ParseError("N must be positive")
    spec = TestRingSpec(header.get("params", ()), header.get("M", 1), header.get("field", default_field))
    ring = spec.ring
    series = {}
    for lineno, key, value, vcol in body:
        try:
            series[key] = Tps.parse(value, ring, N, line=lineno)
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1], lineno, (exc.column or 1) + vcol - 1) from None
    return SeriesDocument(spec, N, series, header.get("d"), [b[1] for b in body])
