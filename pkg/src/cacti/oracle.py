"""Exhaustive generation of small cacti: the formula-free ground truth.

A planted cactus (a vertex with a dangling half-edge pair) is rigid, so the
recursive representation below is canonical: two planted cacti are equal as
Python values iff they are isomorphic.  A rooted cactus is the m-tuple of
planted cacti hanging off its root polygon's vertices.  Unrooted counting
therefore reduces to grouping rooted encodings by their minimum over all
re-rootings: a class with automorphism group of order a has exactly p/a
distinct rootings.

Everything here is brute force on purpose.  Budgets are hard caps: beyond
them the functions raise instead of grinding for hours.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from . import formulas
from .arith import divisors
from .formulas import AutMode
from .stats import (
    ColorStat,
    DegreeStat,
    Params,
    ValidationError,
    color_stat,
    degree_stat,
    size_stat,
)

GEN_BUDGET = {2: 8, 3: 6, 4: 4}       # generate_rooted: max p per m
FACT_BUDGET = {2: 7, 3: 5, 4: 4}      # factorizations: (p!)^(m-1) enumeration
FREE_POOL_BUDGET = 16                 # free_labelled_bruteforce: candidate polygons
FREE_P_BUDGET = 4


class BudgetExceeded(ValueError):
    """Requested size is beyond the documented brute-force bounds."""


class ColorOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Planted:
    """Planted cactus: ordered polygons at the root vertex, each polygon an
    (m-1)-tuple of planted sub-cacti at the other colors in cyclic order."""

    color: int
    polygons: tuple[tuple["Planted", ...], ...]


@dataclass(frozen=True)
class Rooted:
    """Rooted cactus: one planted component per color of the root polygon."""

    m: int
    components: tuple[Planted, ...]


@dataclass
class CactusGraph:
    """Explicit incidence form: colors, cyclic polygon order per vertex,
    and the m vertices of each polygon in color order."""

    m: int
    colors: list[int]
    vertex_polys: list[list[int]]
    polygons: list[list[int]]


@dataclass(frozen=True)
class CactusStats:
    params: Params
    colors: ColorStat
    degrees: DegreeStat
    aut_order: int


def _gen_budget(m: int) -> int:
    return GEN_BUDGET.get(m, 1)


def _check_gen_budget(m: int, p: int) -> None:
    if p > _gen_budget(m):
        raise BudgetExceeded(
            f"generation capped at p <= {_gen_budget(m)} for m = {m}, got p = {p}")


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        return [(total,)]
    return [(head,) + rest for head in range(total + 1)
            for rest in _compositions(total - head, parts - 1)]


_planted_cache: dict[tuple[int, int, int], tuple[Planted, ...]] = {}


def _planted_all(m: int, color: int, q: int) -> tuple[Planted, ...]:
    """All planted cacti at a color-`color` vertex carrying q polygons."""
    key = (m, color, q)
    got = _planted_cache.get(key)
    if got is not None:
        return got
    if q == 0:
        result: tuple[Planted, ...] = (Planted(color, ()),)
    else:
        out = []
        for w in range(1, q + 1):  # weight of the first polygon
            for poly in _polygons_at(m, color, w):
                for rest in _planted_all(m, color, q - w):
                    out.append(Planted(color, (poly,) + rest.polygons))
        result = tuple(out)
    _planted_cache[key] = result
    return result


def _polygons_at(m: int, color: int, w: int) -> list[tuple[Planted, ...]]:
    """All single polygons of total weight w attached at a color-`color` vertex."""
    others = [((color - 1 + k) % m) + 1 for k in range(1, m)]
    out = []
    for split in _compositions(w - 1, m - 1):
        for combo in product(*(_planted_all(m, c, qk)
                               for c, qk in zip(others, split))):
            out.append(combo)
    return out


def encode_planted(pc: Planted) -> str:
    return f"{pc.color}(" + "".join(
        "[" + ",".join(encode_planted(s) for s in poly) + "]"
        for poly in pc.polygons) + ")"


def encode_rooted(rc: Rooted) -> str:
    return "{" + ",".join(encode_planted(c) for c in rc.components) + "}"


def _parse_planted(text: str, pos: int) -> tuple[Planted, int]:
    start = pos
    while text[pos].isdigit():
        pos += 1
    color = int(text[start:pos])
    if text[pos] != "(":
        raise ValueError(f"expected '(' at {pos} in {text!r}")
    pos += 1
    polys = []
    while text[pos] == "[":
        pos += 1
        members = []
        while True:
            sub, pos = _parse_planted(text, pos)
            members.append(sub)
            if text[pos] == ",":
                pos += 1
                continue
            break
        if text[pos] != "]":
            raise ValueError(f"expected ']' at {pos} in {text!r}")
        pos += 1
        polys.append(tuple(members))
    if text[pos] != ")":
        raise ValueError(f"expected ')' at {pos} in {text!r}")
    return Planted(color, tuple(polys)), pos + 1


def parse_rooted(text: str) -> Rooted:
    """Inverse of encode_rooted, for the line-delimited export format."""
    if not text.startswith("{") or not text.endswith("}"):
        raise ValueError(f"not a rooted encoding: {text!r}")
    pos = 1
    comps = []
    while True:
        pc, pos = _parse_planted(text, pos)
        comps.append(pc)
        if text[pos] == ",":
            pos += 1
            continue
        break
    if pos != len(text) - 1:
        raise ValueError(f"trailing junk in {text!r}")
    return Rooted(len(comps), tuple(comps))


def generate_rooted(m: int, p: int) -> list[Rooted]:
    """All rooted cacti with p polygons, sorted by encoding (duplicate-free)."""
    if m < 2 or p < 1:
        raise ValidationError(f"need m >= 2 and p >= 1, got m = {m}, p = {p}")
    _check_gen_budget(m, p)
    out = []
    for split in _compositions(p - 1, m):
        for combo in product(*(_planted_all(m, c, q)
                               for c, q in enumerate(split, start=1))):
            out.append(Rooted(m, combo))
    out.sort(key=encode_rooted)
    return out


def to_graph(rc: Rooted) -> CactusGraph:
    """Expand the recursive form into an explicit incidence structure.

    Polygon 0 is the root polygon; the cyclic order at each vertex starts
    with the polygon through which the vertex was first reached.
    """
    g = CactusGraph(rc.m, [], [], [])
    g.polygons.append([-1] * rc.m)
    for color, pc in enumerate(rc.components, start=1):
        v = _new_vertex(g, color, 0)
        g.polygons[0][color - 1] = v
        _attach(g, v, pc)
    return g


def _new_vertex(g: CactusGraph, color: int, parent_poly: int) -> int:
    g.colors.append(color)
    g.vertex_polys.append([parent_poly])
    return len(g.colors) - 1


def _attach(g: CactusGraph, v: int, pc: Planted) -> None:
    color = g.colors[v]
    for poly in pc.polygons:
        pid = len(g.polygons)
        g.polygons.append([-1] * g.m)
        g.polygons[pid][color - 1] = v
        g.vertex_polys[v].append(pid)
        for k, sub in enumerate(poly, start=1):
            c = ((color - 1 + k) % g.m) + 1
            w = _new_vertex(g, c, pid)
            g.polygons[pid][c - 1] = w
            _attach(g, w, sub)


def _planted_from(g: CactusGraph, v: int, parent_poly: int) -> Planted:
    inc = g.vertex_polys[v]
    i = inc.index(parent_poly)
    polys = []
    for q in inc[i + 1:] + inc[:i]:
        polys.append(_polygon_from(g, v, q))
    return Planted(g.colors[v], tuple(polys))


def _polygon_from(g: CactusGraph, v: int, q: int) -> tuple[Planted, ...]:
    color = g.colors[v]
    members = []
    for k in range(1, g.m):
        c = ((color - 1 + k) % g.m) + 1
        members.append(_planted_from(g, g.polygons[q][c - 1], q))
    return tuple(members)


def re_root(g: CactusGraph, pid: int) -> Rooted:
    """Rebuild the rooted form with polygon `pid` as the root."""
    comps = tuple(_planted_from(g, g.polygons[pid][c], pid) for c in range(g.m))
    return Rooted(g.m, comps)


def canonical_unrooted(g: CactusGraph) -> str:
    """Isomorphism-complete key: minimum rooted encoding over all rootings."""
    return min(encode_rooted(re_root(g, pid)) for pid in range(len(g.polygons)))


def graph_stats(g: CactusGraph) -> tuple[ColorStat, DegreeStat]:
    """Color and degree distributions read off an incidence structure."""
    color_counts = [0] * g.m
    rows: list[Counter] = [Counter() for _ in range(g.m)]
    for v, color in enumerate(g.colors):
        color_counts[color - 1] += 1
        rows[color - 1][len(g.vertex_polys[v])] += 1
    return color_stat(g.m, color_counts), degree_stat(g.m, rows)


def enumerate_unlabelled(m: int, p: int) -> list[tuple[Rooted, CactusStats]]:
    """One representative per isomorphism class, with exact automorphism data.

    The automorphism order is p divided by the number of distinct rootings
    of the class, which is valid because rooted cacti are rigid.
    """
    groups: dict[str, list[Rooted]] = {}
    for rc in generate_rooted(m, p):
        key = canonical_unrooted(to_graph(rc))
        groups.setdefault(key, []).append(rc)
    out = []
    for key in sorted(groups):
        members = groups[key]
        assert p % len(members) == 0, "rooting orbit size must divide p"
        aut = p // len(members)
        rep = next(rc for rc in members if encode_rooted(rc) == key)
        colors, degrees = graph_stats(to_graph(rep))
        out.append((rep, CactusStats(Params(m, p, (m - 1) * p + 1),
                                     colors, degrees, aut)))
    return out


def export_unlabelled(m: int, p: int) -> list[str]:
    """Canonical keys of all classes, one readable encoding per line."""
    return [encode_rooted(rep) for rep, _ in enumerate_unlabelled(m, p)]


def _pointed_key(g: CactusGraph, v: int) -> str:
    """Canonical encoding of the cactus pointed at vertex v.

    Pointing removes the linear order at v, so the incident polygons are
    only cyclically ordered: minimize over rotations.
    """
    inc = g.vertex_polys[v]
    variants = []
    for r in range(len(inc)):
        parts = ["[" + ",".join(encode_planted(s)
                                for s in _polygon_from(g, v, q)) + "]"
                 for q in inc[r:] + inc[:r]]
        variants.append(f"{g.colors[v]}<" + "".join(parts) + ">")
    return min(variants)


def count_pointed_orbits(g: CactusGraph, color: int) -> int:
    """Orbits of color-`color` vertices under the automorphism group."""
    if not 1 <= color <= g.m:
        raise ColorOutOfRange(f"color {color} not in 1..{g.m}")
    return len({_pointed_key(g, v) for v, c in enumerate(g.colors) if c == color})


CycleType = tuple[tuple[int, int], ...]


def _cycle_type(perm: tuple[int, ...]) -> CycleType:
    seen = [False] * len(perm)
    lengths: Counter = Counter()
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths[length] += 1
    return tuple(sorted(lengths.items()))


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Apply a first, then b."""
    return tuple(b[a[i]] for i in range(len(a)))


def _inverse(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def factorizations(m: int, p: int) -> dict[tuple[CycleType, ...], int]:
    """Census of m-factorizations of the full cycle (1 2 ... p).

    For every (g_1, ..., g_m) with g_1 g_2 ... g_m equal to the cycle
    (applying g_1 first), the m-tuple of cycle types gets one tick.  Cycle
    types use the same (length, multiplicity) row format as DegreeStat, so
    coherent keys compare directly against rooted degree-level counts.
    """
    if m < 2 or p < 1:
        raise ValidationError(f"need m >= 2 and p >= 1, got m = {m}, p = {p}")
    if p > FACT_BUDGET.get(m, 2):
        raise BudgetExceeded(
            f"factorizations capped at p <= {FACT_BUDGET.get(m, 2)} for m = {m}")
    sigma = tuple((i + 1) % p for i in range(p))
    identity = tuple(range(p))
    census: dict[tuple[CycleType, ...], int] = {}
    all_perms = list(permutations(range(p)))
    for gs in product(all_perms, repeat=m - 1):
        acc = identity
        for g in gs:
            acc = _compose(acc, g)
        last = _compose(_inverse(acc), sigma)
        key = tuple(_cycle_type(g) for g in gs) + (_cycle_type(last),)
        census[key] = census.get(key, 0) + 1
    return census


def free_labelled_bruteforce(colors: ColorStat) -> int:
    """Count labelled free cacti by enumerating p-subsets of candidate polygons.

    A candidate polygon picks one labelled vertex of each color; a subset is
    a free cactus iff it uses every vertex and its polygon-vertex incidence
    graph is connected and acyclic (checked by union-find while inserting).
    """
    p = colors.p
    if p == 0:
        return 1
    pool = math.prod(colors.counts)
    if pool > FREE_POOL_BUDGET or p > FREE_P_BUDGET:
        raise BudgetExceeded(
            f"free brute force capped at pool <= {FREE_POOL_BUDGET}, "
            f"p <= {FREE_P_BUDGET}; got pool = {pool}, p = {p}")
    offsets = [0]
    for c in colors.counts[:-1]:
        offsets.append(offsets[-1] + c)
    n = colors.n
    candidates = [tuple(offsets[i] + v[i] for i in range(colors.m))
                  for v in product(*(range(c) for c in colors.counts))]
    count = 0
    for subset in combinations(candidates, p):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        used = set()
        ok = True
        for poly in subset:
            used.update(poly)
            anchor = find(poly[0])
            for v in poly[1:]:
                r = find(v)
                if r == anchor:
                    ok = False  # polygon closes a cycle
                    break
                parent[r] = anchor
            if not ok:
                break
        if ok and len(used) == n and len({find(v) for v in range(n)}) == 1:
            count += 1
    return count


def _colorless_planted(pc: Planted) -> str:
    return "(" + "".join("[" + ",".join(_colorless_planted(s) for s in poly) + "]"
                         for poly in pc.polygons) + ")"


def enumerate_gonal(m: int, p: int) -> int:
    """Unlabelled plane m-gonal cacti (colors erased) with p polygons.

    Canonical key: minimum colorless rooted encoding over all p rootings and
    all m rotations of the root polygon, since erasing colors allows the
    root polygon itself to rotate.
    """
    keys = set()
    for rc in generate_rooted(m, p):
        g = to_graph(rc)
        best = None
        for pid in range(len(g.polygons)):
            comps = [_colorless_planted(c) for c in re_root(g, pid).components]
            for r in range(m):
                key = "{" + ",".join(comps[r:] + comps[:r]) + "}"
                if best is None or key < best:
                    best = key
        keys.add(best)
    return len(keys)


@dataclass
class CheckResult:
    name: str
    p: int
    comparisons: int
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    m: int
    p_max: int
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.passed), None)


def _all_color_vectors(m: int, p: int) -> list[ColorStat]:
    """Every realizable color distribution for the given m and p."""
    n = (m - 1) * p + 1
    out = []
    for head in product(*(range(1, p + 1) for _ in range(m - 1))):
        last = n - sum(head)
        if 1 <= last <= p:
            out.append(color_stat(m, head + (last,)))
    return out


def _partitions(p: int) -> list[tuple[tuple[int, int], ...]]:
    """Partitions of p in the sparse (part, multiplicity) row format."""
    def rec(remaining: int, max_part: int) -> list[tuple[int, ...]]:
        if remaining == 0:
            return [()]
        return [(part,) + rest
                for part in range(min(remaining, max_part), 0, -1)
                for rest in rec(remaining - part, part)]

    return [tuple(sorted(Counter(parts).items())) for parts in rec(p, p)]


def _all_degree_matrices(m: int, p: int) -> list[DegreeStat]:
    """Every realizable degree distribution for the given m and p."""
    n = (m - 1) * p + 1
    rows_by_len: dict[int, list] = {}
    for row in _partitions(p):
        rows_by_len.setdefault(sum(k for _, k in row), []).append(row)
    out = []
    for counts in _all_color_vectors(m, p):
        pools = [rows_by_len.get(c, []) for c in counts.counts]
        for combo in product(*pools):
            out.append(DegreeStat(m, tuple(combo)))
    assert all(sum(k for r in d.rows for _, k in r) == n for d in out)
    return out


def verify(m: int, p_max: int) -> VerifyReport:
    """Compare every formula against exhaustive enumeration for p <= p_max."""
    _check_gen_budget(m, p_max)
    results: list[CheckResult] = []

    def record(name: str, p: int, pairs: list[tuple[str, object, object]]) -> None:
        bad = [(what, exp, act) for what, exp, act in pairs if exp != act]
        detail = ""
        if bad:
            what, exp, act = bad[0]
            detail = f"{what}: expected {exp}, got {act}"
        results.append(CheckResult(name, p, len(pairs), not bad, detail))

    for p in range(1, p_max + 1):
        size = size_stat(m, p)
        rooted = generate_rooted(m, p)
        classes = enumerate_unlabelled(m, p)
        color_vectors = _all_color_vectors(m, p)
        degree_matrices = _all_degree_matrices(m, p)

        record("rooted size", p,
               [("count", formulas.count_rooted(size), len(rooted))])

        by_color: Counter = Counter()
        by_degree: Counter = Counter()
        for rc in rooted:
            colors, degrees = graph_stats(to_graph(rc))
            by_color[colors] += 1
            by_degree[degrees] += 1
        record("rooted color", p,
               [(str(c.counts), formulas.count_rooted(c), by_color.get(c, 0))
                for c in color_vectors])
        record("rooted degree", p,
               [(str(d.rows), formulas.count_rooted(d), by_degree.get(d, 0))
                for d in degree_matrices])

        strata = sorted(s for s in divisors(p) if s >= 2)
        pairs = [("unlabelled", formulas.count_unlabelled(size), len(classes)),
                 ("asymmetric", formulas.count_asymmetric(size),
                  sum(1 for _, st in classes if st.aut_order == 1))]
        for s in strata:
            pairs.append((f"aut={s}",
                          formulas.count_aut(size, s, AutMode.EXACTLY),
                          sum(1 for _, st in classes if st.aut_order == s)))
            pairs.append((f"aut>={s}",
                          formulas.count_aut(size, s, AutMode.AT_LEAST),
                          sum(1 for _, st in classes if st.aut_order % s == 0)))
        record("classes size", p, pairs)

        pairs = []
        for c in color_vectors:
            members = [st for _, st in classes if st.colors == c]
            pairs.append((f"unlabelled {c.counts}",
                          formulas.count_unlabelled(c), len(members)))
            pairs.append((f"asymmetric {c.counts}", formulas.count_asymmetric(c),
                          sum(1 for st in members if st.aut_order == 1)))
            for s in strata:
                pairs.append((f"aut={s} {c.counts}",
                              formulas.count_aut(c, s, AutMode.EXACTLY),
                              sum(1 for st in members if st.aut_order == s)))
        record("classes color", p, pairs)

        pairs = []
        for d in degree_matrices:
            members = [st for _, st in classes if st.degrees == d]
            pairs.append((f"unlabelled {d.rows}",
                          formulas.count_unlabelled(d), len(members)))
            pairs.append((f"asymmetric {d.rows}", formulas.count_asymmetric(d),
                          sum(1 for st in members if st.aut_order == 1)))
            for s in strata:
                pairs.append((f"aut={s} {d.rows}",
                              formulas.count_aut(d, s, AutMode.EXACTLY),
                              sum(1 for st in members if st.aut_order == s)))
            pairs.append((f"reciprocal {d.rows}", formulas.aut_reciprocal_sum(d),
                          sum(Fraction(1, st.aut_order)
                              for st in members) or Fraction(0)))
        record("classes degree", p, pairs)

        pairs = [("size", formulas.count_labelled(size),
                  sum(math.factorial(size.n) // st.aut_order for _, st in classes))]
        for c in color_vectors:
            labellings = math.prod(math.factorial(x) for x in c.counts)
            pairs.append((f"color {c.counts}", formulas.count_labelled(c),
                          sum(labellings // st.aut_order
                              for _, st in classes if st.colors == c)))
        record("labelled", p, pairs)

        orbits = [(st, [count_pointed_orbits(to_graph(rep), color)
                        for color in range(1, m + 1)])
                  for rep, st in classes]
        pairs = [("size", formulas.count_pointed(size),
                  sum(sum(ob) for _, ob in orbits))]
        for c in color_vectors:
            for color in range(1, m + 1):
                pairs.append((f"color {c.counts} @{color}",
                              formulas.count_pointed(c, color),
                              sum(ob[color - 1] for st, ob in orbits
                                  if st.colors == c)))
        for d in degree_matrices:
            for color in range(1, m + 1):
                pairs.append((f"degree {d.rows} @{color}",
                              formulas.count_pointed(d, color),
                              sum(ob[color - 1] for st, ob in orbits
                                  if st.degrees == d)))
        record("pointed orbits", p, pairs)

        if p <= FACT_BUDGET.get(m, 2):
            census = factorizations(m, p)
            valid_keys = {d.rows: d for d in degree_matrices}
            pairs = [(f"census {d.rows}", formulas.count_rooted(d),
                      census.get(d.rows, 0)) for d in degree_matrices]
            for key in census:
                if key not in valid_keys:
                    try:
                        degree_stat(m, [dict(row) for row in key])
                        coherent = True
                    except ValidationError:
                        coherent = False
                    pairs.append((f"incoherent {key}", False, coherent))
            record("factorizations", p, pairs)

    return VerifyReport(m, p_max, results)
