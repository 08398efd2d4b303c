"""Statistics of m-ary cacti and their coherence validation.

A statistic fixes the level at which cacti are counted:

* ``SizeStat``    -- gon size m and polygon count p only,
* ``ColorStat``   -- the vector (n_1, ..., n_m) of vertex counts per color,
* ``DegreeStat``  -- the sparse matrix n_ij of color-i vertices of degree j,
  where the degree of a vertex is the number of polygons incident to it.

Validation enforces the exact existence conditions: a cactus with n vertices
and p polygons exists iff n = (m-1)p + 1; a color vector is realizable iff
additionally n_i <= p for every color (p >= 1); a degree matrix iff every
row satisfies sum_j j*n_ij = p and no vertex has degree 0 while p >= 1.
Validated statistics are therefore always realizable, and every count in
`cacti.formulas` assumes its input went through these constructors.

Colors are 1-based in every public signature, matching the cyclic labelling
of polygon corners.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union


class ValidationError(ValueError):
    """A statistic violates one of the existence conditions."""


class NonIntegralP(ValidationError):
    """Vertex count incompatible with any polygon count: n != (m-1)p + 1."""


class ColorBoundViolation(ValidationError):
    """Some color has more vertices than there are polygons."""


class RowSumMismatch(ValidationError):
    """Degree rows imply different polygon counts (sum_j j*n_ij differs)."""


class IsolatedDegreeZero(ValidationError):
    """A degree-0 vertex is only allowed in the single-vertex cactus."""


class DegreeSpecError(ValidationError):
    """Malformed degree-distribution text."""


class DuplicateDegree(DegreeSpecError):
    """The same degree appears twice within one row of a degree spec."""


@dataclass(frozen=True)
class Params:
    """Gon size m, polygon count p and the forced vertex count n."""

    m: int
    p: int
    n: int


@dataclass(frozen=True)
class SizeStat:
    m: int
    p: int

    @property
    def n(self) -> int:
        return (self.m - 1) * self.p + 1

    @property
    def params(self) -> Params:
        return Params(self.m, self.p, self.n)


@dataclass(frozen=True)
class ColorStat:
    m: int
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def p(self) -> int:
        return (self.n - 1) // (self.m - 1)

    @property
    def params(self) -> Params:
        return Params(self.m, self.p, self.n)


@dataclass(frozen=True)
class DegreeStat:
    # rows[i] lists (degree, multiplicity) pairs for color i+1, sorted,
    # multiplicities >= 1; degrees are unbounded so rows stay sparse.
    m: int
    rows: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def p(self) -> int:
        return sum(j * k for j, k in self.rows[0])

    @property
    def n(self) -> int:
        return sum(k for row in self.rows for _, k in row)

    @property
    def params(self) -> Params:
        return Params(self.m, self.p, self.n)

    @property
    def color_counts(self) -> tuple[int, ...]:
        return tuple(sum(k for _, k in row) for row in self.rows)

    def row(self, color: int) -> dict[int, int]:
        """Degree -> multiplicity map for a 1-based color."""
        return dict(self.rows[color - 1])


Statistic = Union[SizeStat, ColorStat, DegreeStat]


def _check_m(m: int) -> None:
    if m < 2:
        raise ValidationError(f"gon size m = {m}, need m >= 2")


def size_stat(m: int, p: int) -> SizeStat:
    """Validated size-level statistic."""
    _check_m(m)
    if p < 0:
        raise ValidationError(f"polygon count p = {p} < 0")
    return SizeStat(m, p)


def color_stat(m: int, counts: Sequence[int]) -> ColorStat:
    """Validated color distribution; p is derived, never supplied."""
    _check_m(m)
    counts = tuple(counts)
    if len(counts) != m:
        raise ValidationError(f"{len(counts)} counts for m = {m} colors")
    if any(c < 0 for c in counts):
        raise ValidationError(f"negative color count in {counts}")
    n = sum(counts)
    if n < 1 or (n - 1) % (m - 1) != 0:
        raise NonIntegralP(f"no polygon count fits {n} vertices at m = {m}")
    p = (n - 1) // (m - 1)
    if p >= 1:
        for i, c in enumerate(counts, start=1):
            if c > p:
                raise ColorBoundViolation(
                    f"color {i} has {c} vertices but only {p} polygons")
    return ColorStat(m, counts)


def degree_stat(m: int, rows: Sequence[Mapping[int, int]]) -> DegreeStat:
    """Validated degree distribution from one degree->multiplicity map per color."""
    _check_m(m)
    if len(rows) != m:
        raise ValidationError(f"{len(rows)} rows for m = {m} colors")
    clean = []
    for row in rows:
        for j, k in row.items():
            if j < 0 or k < 0:
                raise ValidationError(f"bad degree entry {j}^{k}")
        clean.append(tuple(sorted((j, k) for j, k in row.items() if k > 0)))
    sums = [sum(j * k for j, k in row) for row in clean]
    if len(set(sums)) > 1:
        raise RowSumMismatch(f"rows imply different polygon counts: {sums}")
    p = sums[0]
    n = sum(k for row in clean for _, k in row)
    if n != (m - 1) * p + 1:
        raise NonIntegralP(
            f"{n} vertices incompatible with {p} polygons at m = {m}")
    if p >= 1:
        for i, row in enumerate(clean, start=1):
            if any(j == 0 for j, _ in row):
                raise IsolatedDegreeZero(f"color {i} has a degree-0 vertex")
    return DegreeStat(m, tuple(clean))


def validate(stat: Statistic) -> Statistic:
    """Re-run validation on an already-built statistic, returning it."""
    if isinstance(stat, SizeStat):
        return size_stat(stat.m, stat.p)
    if isinstance(stat, ColorStat):
        return color_stat(stat.m, stat.counts)
    if isinstance(stat, DegreeStat):
        return degree_stat(stat.m, [dict(row) for row in stat.rows])
    raise TypeError(f"not a statistic: {stat!r}")


def color_marginal(stat: DegreeStat) -> ColorStat:
    """Collapse a degree matrix to its per-color vertex counts."""
    return color_stat(stat.m, stat.color_counts)


def shift(stat: ColorStat | DegreeStat, k: int) -> ColorStat | DegreeStat:
    """Cyclic color relabelling: color i of the result is color i+k of the input."""
    m = stat.m
    if isinstance(stat, ColorStat):
        return ColorStat(m, tuple(stat.counts[(i + k) % m] for i in range(m)))
    if isinstance(stat, DegreeStat):
        return DegreeStat(m, tuple(stat.rows[(i + k) % m] for i in range(m)))
    raise TypeError(f"shift needs a color or degree statistic, got {stat!r}")


_TERM_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_degree_spec(text: str) -> DegreeStat:
    """Parse "1^2 2^2 4; 1^2 2^4" style text into a validated DegreeStat.

    Rows are ';'-separated, one per color; each row lists terms ``j^k``
    (k vertices of degree j) or bare ``j`` (meaning j^1), with j, k >= 1.
    """
    rows = []
    for row_text in text.split(";"):
        terms = row_text.split()
        if not terms:
            raise DegreeSpecError(f"empty row in {text!r}")
        row: dict[int, int] = {}
        for term in terms:
            match = _TERM_RE.match(term)
            if not match:
                raise DegreeSpecError(f"bad term {term!r}")
            j = int(match.group(1))
            k = int(match.group(2)) if match.group(2) else 1
            if j < 1 or k < 1:
                raise DegreeSpecError(f"term {term!r}: degree and count must be >= 1")
            if j in row:
                raise DuplicateDegree(f"degree {j} repeated in row {row_text.strip()!r}")
            row[j] = k
        rows.append(row)
    return degree_stat(len(rows), rows)
