"""Lower-bound constructions and seeded samplers of theorem-hypothesis instances."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict

from .errors import PreconditionError, SdrError
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    CurveSegment,
    PolyCurve,
    Segment,
    canonical_direction,
    curve_segments_intersect,
    segments_intersect,
)
from .model import (
    Block,
    CurveContext,
    DirectionContext,
    GraphContext,
    Instance,
    Member,
    validate_instance,
)

FAMILIES = (
    "few_lines_tight",
    "hv_tight",
    "quadratic_lower",
    "cycle_power",
    "box_cycle_power",
    "random_segments",
    "random_curves",
    "random_intervals",
    "random_few_lines",
    "random_two_sweep",
)

REJECTION_LIMIT = 1000


class RejectionBudgetError(SdrError, RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    parameters: Dict[str, int] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        object.__setattr__(self, "parameters", dict(self.parameters))


def _need(cond, msg):
    if not cond:
        raise PreconditionError(msg)


def _hv_context():
    return DirectionContext((HORIZONTAL, VERTICAL))


# ---------------------------------------------------------------------------
# deterministic constructions
# ---------------------------------------------------------------------------

def gen_few_lines_tight(n: int, m: int, count: int) -> Instance:
    """m(n-m) unit segments on distinct lines, split into n-m parts of m.

    The first n-m-1 blocks are the first n-m-1 parts; every later block is
    the last part, so no SDR reaches n.
    """
    _need(1 <= m < n, f"need 1 <= m < n, got n={n}, m={m}")
    _need(count >= 1, f"count must be positive, got {count}")
    lines = m * (n - m)
    members = [Member(f"s{y}", Segment.horizontal(0, 1, y)) for y in range(1, lines + 1)]
    parts = [[f"s{p * m + j + 1}" for j in range(m)] for p in range(n - m)]
    blocks = []
    for i in range(1, count + 1):
        part = parts[i - 1] if i <= n - m - 1 else parts[n - m - 1]
        blocks.append(Block(f"A{i}", part))
    return Instance.build(n, DirectionContext((HORIZONTAL,)), members, blocks, block_size=m)


def gen_hv_tight(n: int) -> Instance:
    """n-1 copies of X and n-1 copies of Y (2n-2 blocks, n-1 horizontals + 1 vertical each).

    X's horizontals and Y's horizontals share the lines y = 2i and overlap on
    [1, 8]; X's vertical (x = 0) crosses every Y horizontal and Y's vertical
    (x = 10) crosses every X horizontal.
    """
    _need(n >= 2, f"need n >= 2, got {n}")
    top = 2 * n
    members, x_ids, y_ids = [], [], []
    for i in range(1, n):
        members.append(Member(f"xh{i}", Segment.horizontal(1, 11, 2 * i)))
        x_ids.append(f"xh{i}")
    members.append(Member("xv", Segment.vertical(0, 0, top)))
    x_ids.append("xv")
    for i in range(1, n):
        members.append(Member(f"yh{i}", Segment.horizontal(-1, 8, 2 * i)))
        y_ids.append(f"yh{i}")
    members.append(Member("yv", Segment.vertical(10, 0, top)))
    y_ids.append("yv")
    blocks = [Block(f"X{i}", x_ids) for i in range(1, n)]
    blocks += [Block(f"Y{i}", y_ids) for i in range(1, n)]
    return Instance.build(n, _hv_context(), members, blocks)


def quadratic_block_members(n: int, m: int, i: int):
    """Member ids of X_i: verticals I_j, j in [-m+1, -m+i] u [i, m-1], and J_{i,k}, k in [n-m]."""
    vert = list(range(-m + 1, -m + i + 1)) + list(range(i, m))
    return [f"I{j}" for j in vert] + [f"J{i}_{k}" for k in range(1, n - m + 1)]


def gen_quadratic_lower(n: int, m: int) -> Instance:
    """(m-1)(n-m-1) blocks; block j copies X_q for (q-1)(n-m-1) < j <= q(n-m-1).

    I_j = {j} x [1, n-m] and J_{ik} = [-m+i+1, i-1] x {k}.
    """
    _need(m >= 2, f"need m >= 2, got {m}")
    _need(2 * m - 2 < n, f"need 2m-2 < n, got n={n}, m={m}")
    members = {}
    for j in range(-m + 1, m):
        members[f"I{j}"] = Member(f"I{j}", Segment.vertical(j, 1, n - m))
    for i in range(1, m):
        for k in range(1, n - m + 1):
            mid = f"J{i}_{k}"
            members[mid] = Member(mid, Segment.horizontal(-m + i + 1, i - 1, k))
    copies = n - m - 1
    blocks = []
    for j in range(1, (m - 1) * copies + 1):
        q = (j - 1) // copies + 1
        blocks.append(Block(f"A{j}=X{q}", quadratic_block_members(n, m, q)))
    used = {mid for b in blocks for mid in b.member_ids}
    table = [mem for mid, mem in members.items() if mid in used]
    return Instance.build(n, _hv_context(), table, blocks)


def cycle_power_edges(size: int, power: int):
    """Edges of C_size^power on vertices 'v0'..'v{size-1}'."""
    edges = set()
    for i in range(size):
        for d in range(1, power + 1):
            j = (i + d) % size
            if i != j:
                edges.add(tuple(sorted((i, j))))
    return sorted(edges)


def gen_cycle_power_blocks(n: int, q: int) -> Instance:
    """C_{nq}^{q-1} with n-1 copies of each B_i = {i, i+q, ..., i+(n-1)q}."""
    _need(n >= 2 and q >= 2, f"need n >= 2 and q >= 2, got n={n}, q={q}")
    size = n * q
    members = [Member.vertex(f"v{i}") for i in range(size)]
    edges = tuple((f"v{a}", f"v{b}") for a, b in cycle_power_edges(size, q - 1))
    blocks = []
    for i in range(q):
        ids = [f"v{i + j * q}" for j in range(n)]
        for c in range(1, n):
            blocks.append(Block(f"B{i}.{c}", ids))
    return Instance.build(n, GraphContext(edges), members, blocks)


def gen_box_cycle_power(k: int, n: int) -> Instance:
    """C_{4(k+1)}^k: its k+1 independent 4-sets, three copies each, padded to n.

    The same n-4 isolated vertices pad every block, so together they can
    contribute at most n-4 representatives.
    """
    _need(k >= 1 and n >= 4, f"need k >= 1 and n >= 4, got k={k}, n={n}")
    size = 4 * (k + 1)
    members = [Member.vertex(f"v{i}") for i in range(size)]
    pad = [f"p{x}" for x in range(n - 4)]
    members += [Member.vertex(p) for p in pad]
    edges = tuple((f"v{a}", f"v{b}") for a, b in cycle_power_edges(size, k))
    blocks = []
    for r in range(k + 1):
        core = [f"v{r + j * (k + 1)}" for j in range(4)]
        for c in range(1, 4):
            blocks.append(Block(f"S{r}.{c}", core + pad))
    return Instance.build(n, GraphContext(edges), members, blocks)


# ---------------------------------------------------------------------------
# seeded samplers
# ---------------------------------------------------------------------------

def _disjoint_intervals(rng, count, span):
    """`count` pairwise disjoint closed integer intervals inside [0, span]."""
    cuts = sorted(rng.sample(range(span + 1), 2 * count))
    return [(cuts[2 * i], cuts[2 * i + 1]) for i in range(count)]


def _sample_intervals(rng, p):
    """n blocks (or `blocks`) of n disjoint intervals on `lines` horizontal lines."""
    n = p["n"]
    nblocks = p.get("blocks", n)
    lines = p.get("lines", 1)
    span = p.get("span", 3 * n)
    members, blocks = [], []
    for b in range(nblocks):
        ids = []
        per_line = [0] * lines
        for _ in range(n):
            per_line[rng.randrange(lines)] += 1
        for y, cnt in enumerate(per_line, start=1):
            if cnt == 0:
                continue
            for lo, hi in _disjoint_intervals(rng, cnt, max(span, 2 * cnt)):
                mid = f"b{b}.{len(ids)}"
                members.append(Member(mid, Segment.horizontal(lo, hi, y)))
                ids.append(mid)
        blocks.append(Block(f"A{b + 1}", ids))
    return Instance.build(n, DirectionContext((HORIZONTAL,)), members, blocks)


def _sample_few_lines(rng, p):
    """n+m-1 blocks of m disjoint horizontal segments on at least m(n-m)+1 lines."""
    n, m = p["n"], p["m"]
    need = m * (n - m) + 1
    lines = p.get("lines", need + rng.randrange(2))
    span = p.get("span", 4)
    nblocks = p.get("blocks", n + m - 1)
    members, blocks = [], []
    for b in range(nblocks):
        ids = []
        chosen = {}
        for _ in range(m):
            chosen.setdefault(rng.randrange(1, lines + 1), []).append(None)
        for y, slots in sorted(chosen.items()):
            for lo, hi in _disjoint_intervals(rng, len(slots), max(span, 2 * len(slots))):
                mid = f"b{b}.{len(ids)}"
                members.append(Member(mid, Segment.horizontal(lo, hi, y)))
                ids.append(mid)
        blocks.append(Block(f"A{b + 1}", ids))
    inst = Instance.build(n, DirectionContext((HORIZONTAL,)), members, blocks, block_size=m)
    used = {m_.payload.line_key() for m_ in inst.members.values()}
    return inst if len(used) >= need else None


def _sample_two_sweep(rng, p):
    """2n-1 blocks, each n-1 horizontal segments and one vertical segment."""
    n = p["n"]
    nblocks = p.get("blocks", 2 * n - 1)
    # crowded defaults so both sweeps often stop one short
    lines = p.get("lines", 1)
    span = p.get("span", n + 2)
    members, blocks = [], []
    for b in range(nblocks):
        for _attempt in range(REJECTION_LIMIT):
            segs = []
            per_line = {}
            for _ in range(n - 1):
                y = rng.randrange(1, lines + 1)
                per_line[y] = per_line.get(y, 0) + 1
            for y, cnt in sorted(per_line.items()):
                for lo, hi in _disjoint_intervals(rng, cnt, max(span, 2 * cnt)):
                    segs.append(Segment.horizontal(lo, hi, y))
            x = rng.randrange(0, span + 1)
            y0 = rng.randrange(0, lines + 1)
            y1 = rng.randrange(y0, lines + 2)
            vert = Segment.vertical(x, y0, y1)
            if not any(segments_intersect(vert, s) for s in segs):
                break
        else:
            return None
        ids = []
        for s in segs + [vert]:
            mid = f"b{b}.{len(ids)}"
            members.append(Member(mid, s))
            ids.append(mid)
        blocks.append(Block(f"A{b + 1}", ids))
    return Instance.build(n, _hv_context(), members, blocks)


def _sample_segments(rng, p):
    """Blocks of n disjoint segments in k directions with small integer endpoints."""
    n = p["n"]
    nblocks = p.get("blocks", n)
    k = p.get("k", 2)
    span = p.get("span", 6)
    pool = [(1, 0), (0, 1), (1, 1), (-1, 1), (1, 2), (2, 1), (-1, 2), (-2, 1)]
    dirs = [canonical_direction(*d) for d in pool[:k]]
    members, blocks = [], []
    for b in range(nblocks):
        segs = []
        tries = 0
        while len(segs) < n:
            tries += 1
            if tries > REJECTION_LIMIT:
                return None
            d = dirs[rng.randrange(k)]
            ax, ay = rng.randrange(span + 1), rng.randrange(span + 1)
            t0 = rng.randrange(0, 3)
            s = Segment((ax, ay), d, 0, t0)
            if not any(segments_intersect(s, o) for o in segs):
                segs.append(s)
        ids = []
        for s in segs:
            mid = f"b{b}.{len(ids)}"
            members.append(Member(mid, s))
            ids.append(mid)
        blocks.append(Block(f"A{b + 1}", ids))
    return Instance.build(n, DirectionContext(tuple(dirs)), members, blocks)


def random_curve_table(rng, k: int, per_group, width: int = 12):
    """Polyline curves: group 1 runs left-right, group 2 bottom-up, groups 3
    and 4 along the two diagonals. Same-group curves stay apart and cross-group
    pairs meet at most once, away from every curve endpoint.
    """
    if not 1 <= k <= 4:
        raise PreconditionError(f"random curve tables support 1 <= k <= 4, got {k}")
    curves = {}
    w = width
    for g in range(1, k + 1):
        offsets = sorted(rng.sample(range(1, w), per_group[g - 1]))
        for idx, off in enumerate(offsets):
            # |jitter| < 1/2 keeps neighbouring curves (offsets >= 1 apart) disjoint
            jitter = Fraction(rng.randrange(-2, 3), 6)
            mid = Fraction(rng.randrange(2, w - 1))
            if g == 1:
                verts = [(-w, off), (mid, off + jitter), (2 * w, off)]
            elif g == 2:
                verts = [(off, -w), (off + jitter, mid), (off, 2 * w)]
            elif g == 3:
                c = off - w // 2
                verts = [(c - w, -w), (c + 2 * w, 2 * w)]
            else:
                c = off + w // 2
                verts = [(c + w, -w), (c - 2 * w, 2 * w)]
            cid = f"g{g}c{idx}"
            curves[cid] = PolyCurve(cid, tuple(verts), g)
    return curves


def _sample_curves(rng, p):
    """Blocks of n disjoint curve segments over k groups of polyline curves."""
    n = p["n"]
    nblocks = p.get("blocks", n)
    k = p.get("k", 2)
    t = p.get("t", 1)
    per = p.get("curves_per_group", 2)
    per_group = [rng.randint(1, per) for _ in range(k)]
    curves = random_curve_table(rng, k, per_group, p.get("width", 12))
    ids_sorted = sorted(curves)
    members, blocks = [], []
    for b in range(nblocks):
        segs = []
        tries = 0
        while len(segs) < n:
            tries += 1
            if tries > REJECTION_LIMIT:
                return None
            c = curves[ids_sorted[rng.randrange(len(ids_sorted))]]
            denom = 4
            top = int(c.t_max * denom)
            a = rng.randrange(0, top + 1)
            length = rng.randrange(0, denom + 1)
            s = CurveSegment(c.id, Fraction(a, denom), Fraction(min(a + length, top), denom))
            if not any(curve_segments_intersect(s, o, curves) for o in segs):
                segs.append(s)
        ids = []
        for s in segs:
            mid = f"b{b}.{len(ids)}"
            members.append(Member(mid, s))
            ids.append(mid)
        blocks.append(Block(f"A{b + 1}", ids))
    return Instance.build(n, CurveContext(curves, t), members, blocks)


_SAMPLERS = {
    "random_intervals": _sample_intervals,
    "random_few_lines": _sample_few_lines,
    "random_two_sweep": _sample_two_sweep,
    "random_segments": _sample_segments,
    "random_curves": _sample_curves,
}


def gen_random_instance(spec: GenSpec) -> Instance:
    """Deterministic in (family, parameters, seed); rejection-samples until valid."""
    if spec.family not in _SAMPLERS:
        return generate(spec)
    rng = random.Random(f"{spec.family}:{sorted(spec.parameters.items())}:{spec.seed}")
    sampler = _SAMPLERS[spec.family]
    for _ in range(REJECTION_LIMIT):
        inst = sampler(rng, spec.parameters)
        if inst is not None and not validate_instance(inst):
            return inst
    raise RejectionBudgetError(
        f"{spec.family} {spec.parameters} seed {spec.seed}: "
        f"no valid instance after {REJECTION_LIMIT} rejections")


def generate(spec: GenSpec) -> Instance:
    """Dispatch any family; deterministic constructions ignore the seed."""
    p = spec.parameters
    fam = spec.family
    if fam == "few_lines_tight":
        return gen_few_lines_tight(p["n"], p["m"], p.get("count", 10))
    if fam == "hv_tight":
        return gen_hv_tight(p["n"])
    if fam == "quadratic_lower":
        return gen_quadratic_lower(p["n"], p["m"])
    if fam == "cycle_power":
        return gen_cycle_power_blocks(p["n"], p["q"])
    if fam == "box_cycle_power":
        return gen_box_cycle_power(p["k"], p["n"])
    return gen_random_instance(spec)


def independent_sets_of_size(vertices, edges, size):
    """All independent sets of the given size, by plain enumeration."""
    adj = {frozenset(e) for e in edges}
    out = []
    for combo in combinations(vertices, size):
        if all(frozenset((a, b)) not in adj for a, b in combinations(combo, 2)):
            out.append(frozenset(combo))
    return out
