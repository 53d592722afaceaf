"""Exhaustive point counting over small finite fields.

Elements of GF(q), q = p^k <= 9, are encoded as integers 0..q-1 whose base-p
digits are the coefficients of a polynomial in a root of a fixed irreducible
polynomial.  Addition and multiplication are table lookups, so whole chunks
of assignments are evaluated at once with numpy.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import BudgetExceeded, ContextError
from ..geometry.presentation import SchemePresentation

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 18

# irreducible polynomials, low coefficient first, without the leading 1
_MODULI = {4: (1, 1), 8: (1, 1, 0), 9: (1, 0)}


def _prime_power(q: int) -> tuple[int, int]:
    for p in (2, 3, 5, 7):
        k, r = 0, q
        while r % p == 0:
            r //= p
            k += 1
        if r == 1 and k:
            return p, k
    raise ContextError(f"unsupported field size {q}; need a prime power <= 9")


class FiniteField:
    """GF(q) for q in {2, 3, 4, 5, 7, 8, 9} with lookup tables."""

    def __init__(self, q: int):
        if q > 9:
            raise ContextError("field size must be <= 9")
        self.q = q
        self.p, self.k = _prime_power(q)
        p, k = self.p, self.k
        digits = [[(a // p**i) % p for i in range(k)] for a in range(q)]

        def encode(ds):
            return sum(int(c) * p**i for i, c in enumerate(ds))

        def mul_digits(a, b):
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
            mod = _MODULI.get(q)
            for i in range(len(prod) - 1, k - 1, -1):
                c = prod[i]
                if c:
                    prod[i] = 0
                    for j, m in enumerate(mod):
                        prod[i - k + j] = (prod[i - k + j] - c * m) % p
            return prod[:k]

        self.add = np.array([[encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                              for b in range(q)] for a in range(q)], dtype=np.int8)
        self.mul = np.array([[encode(mul_digits(digits[a], digits[b])) for b in range(q)]
                             for a in range(q)], dtype=np.int8)
        self.neg = np.array([encode([(-x) % p for x in digits[a]]) for a in range(q)], dtype=np.int8)

    def power_table(self, e: int) -> np.ndarray:
        out = np.ones(self.q, dtype=np.int8) if e == 0 else np.arange(self.q, dtype=np.int8)
        base = np.arange(self.q, dtype=np.int8)
        for _ in range(max(e - 1, 0)):
            out = self.mul[out, base]
        return out

    def scalar(self, c) -> int:
        """Image of a rational or prime-field constant in the prime subfield."""
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ContextError(f"coefficient {c} has denominator divisible by {self.p}")
            return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
        return int(c) % self.p

    def label(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        ds = [(a // self.p**i) % self.p for i in range(self.k)]
        parts = []
        for i, c in enumerate(ds):
            if c:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                parts.append(mono if c == 1 and mono else (f"{c}*{mono}" if mono else str(c)))
        return " + ".join(reversed(parts)) or "0"


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)


def _compile(poly, variables, ff: FiniteField):
    idx = {v: i for i, v in enumerate(variables)}
    terms = []
    for e, c in poly.terms.items():
        coef = ff.scalar(c)
        if coef == 0:
            continue
        factors = tuple((idx[v], k) for v, k in zip(poly.ring.variables, e) if k)
        terms.append((coef, factors))
    return tuple(terms)


def compile_presentation(P: SchemePresentation, q: int):
    ff = finite_field(q)
    if P.field.p not in (0, ff.p):
        raise ContextError(f"presentation over {P.field} cannot be read over GF({q})")
    eqs = tuple(_compile(p, P.variables, ff) for p in P.equations)
    inv = tuple(_compile(p, P.variables, ff) for p in P.inverted)
    return eqs, inv


def _eval(terms, get_col, n, ff: FiniteField, powers) -> np.ndarray:
    total = np.zeros(n, dtype=np.int8)
    for coef, factors in terms:
        acc = np.full(n, coef, dtype=np.int8)
        for i, k in factors:
            col = get_col(i)
            if k > 1:
                if k not in powers:
                    powers[k] = ff.power_table(k)
                col = powers[k][col]
            acc = ff.mul[acc, col]
        total = ff.add[total, acc]
    return total


def _filter_range(job) -> tuple[int, np.ndarray | None]:
    """Count (and optionally collect) solutions with enumeration index in [start, stop)."""
    q, nvars, eqs, inv, start, stop, collect = job
    ff = finite_field(q)
    powers: dict = {}
    idx = np.arange(start, stop, dtype=np.int64)
    cache: dict[int, np.ndarray] = {}

    def get_col(i):
        if i not in cache:
            cache[i] = ((idx // q**i) % q).astype(np.int8)
        return cache[i]

    def keep(mask):
        nonlocal idx
        idx = idx[mask]
        for i in list(cache):
            cache[i] = cache[i][mask]

    for terms in eqs:
        if not len(idx):
            break
        keep(_eval(terms, get_col, len(idx), ff, powers) == 0)
    for terms in inv:
        if not len(idx):
            break
        keep(_eval(terms, get_col, len(idx), ff, powers) != 0)
    if collect:
        sols = np.stack([((idx // q**i) % q).astype(np.int8) for i in range(nvars)], axis=1) \
            if nvars else np.zeros((len(idx), 0), dtype=np.int8)
        return len(idx), sols
    return len(idx), None


def _jobs(P, q, budget, collect, chunk=CHUNK):
    nvars = len(P.variables)
    total = q**nvars
    if total > budget:
        raise BudgetExceeded(f"{q}^{nvars} = {total} assignments exceed the budget {budget}")
    eqs, inv = compile_presentation(P, q)
    return [(q, nvars, eqs, inv, s, min(s + chunk, total), collect) for s in range(0, total, chunk)]


def _run(jobs, workers: int):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_filter_range, jobs))
    return [_filter_range(j) for j in jobs]


@dataclass(frozen=True)
class CountResult:
    q: int
    variables: int
    count: int
    seconds: float

    def __post_init__(self):
        if self.count > self.q**self.variables:
            raise AssertionError("count exceeds the number of assignments")


def count_points(P: SchemePresentation, q: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> CountResult:
    """Number of GF(q)-points of ``P`` by exhaustive enumeration (inverted elements must be nonzero)."""
    t0 = time.perf_counter()
    results = _run(_jobs(P, q, budget, False), workers)
    return CountResult(q, len(P.variables), sum(n for n, _ in results), time.perf_counter() - t0)


def solutions(P: SchemePresentation, q: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> np.ndarray:
    """All GF(q)-points as rows (columns follow ``P.variables``; entries are field codes)."""
    results = _run(_jobs(P, q, budget, True), workers)
    parts = [s for _, s in results if s is not None and len(s)]
    if not parts:
        return np.zeros((0, len(P.variables)), dtype=np.int8)
    return np.concatenate(parts, axis=0)


def evaluate_codes(poly, variables, rows: np.ndarray, q: int) -> np.ndarray:
    """Values of ``poly`` at the rows of field codes ``rows``."""
    ff = finite_field(q)
    terms = _compile(poly, variables, ff)
    return _eval(terms, lambda i: rows[:, i], len(rows), ff, {})
