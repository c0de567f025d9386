"""Instances, blocks, intersection graphs and SDR checks.

An instance is a list of blocks (families) over a shared member table.
Members are straight segments (direction context), segments of polyline
curves (curve context) or abstract vertices (graph context).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from . import search
from .errors import (
    BudgetExceededError,
    DegenerateOverlapError,
    InstanceValidationError,
    PreconditionError,
)
from .geometry import (
    CurveSegment,
    Direction,
    PolyCurve,
    Segment,
    curve_pairwise_crossings,
    curve_segments_intersect,
    segments_intersect,
)

Assignment = Dict[int, str]
"""Block index -> member id. An SDR when injective and pairwise disjoint."""


@dataclass(frozen=True)
class DirectionContext:
    directions: Tuple[Direction, ...]

    kind = "directions"


@dataclass(frozen=True)
class CurveContext:
    curves: Mapping[str, PolyCurve]
    t: int = 1

    kind = "curves"

    @property
    def k(self) -> int:
        return max((c.group for c in self.curves.values()), default=0)


@dataclass(frozen=True)
class GraphContext:
    edges: Tuple[Tuple[str, str], ...] = ()

    kind = "graph"


Context = Union[DirectionContext, CurveContext, GraphContext]


@dataclass(frozen=True)
class Member:
    id: str
    payload: Union[Segment, CurveSegment, str]

    @property
    def kind(self) -> str:
        if isinstance(self.payload, Segment):
            return "segment"
        if isinstance(self.payload, CurveSegment):
            return "curve_segment"
        return "vertex"

    @classmethod
    def vertex(cls, vid: str) -> "Member":
        return cls(vid, vid)


@dataclass(frozen=True)
class Block:
    label: str
    member_ids: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "member_ids", tuple(self.member_ids))


_KIND_FOR_CONTEXT = {"directions": "segment", "curves": "curve_segment", "graph": "vertex"}


@dataclass(frozen=True)
class Instance:
    """A full problem.

    ``block_size`` defaults to ``n``; the few-lines setting uses blocks of
    m < n members and sets it explicitly.
    """

    n: int
    context: Context
    members: Mapping[str, Member]
    blocks: Tuple[Block, ...]
    block_size: Optional[int] = None
    _edge_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not isinstance(self.members, dict):
            object.__setattr__(self, "members", dict(self.members))

    @classmethod
    def build(cls, n, context, members, blocks, block_size=None) -> "Instance":
        """Convenience constructor taking member and block sequences."""
        table = {m.id: m for m in members}
        return cls(n, context, table, tuple(blocks), block_size)

    @property
    def expected_block_size(self) -> int:
        return self.n if self.block_size is None else self.block_size

    def member_order(self):
        return list(self.members)

    def intersect(self, a: str, b: str) -> bool:
        """Whether two members (by id) share a point; a member meets itself."""
        if a == b:
            return True
        key = (a, b) if a < b else (b, a)
        hit = self._edge_cache.get(key)
        if hit is None:
            hit = _payloads_meet(self, self.members[a], self.members[b])
            self._edge_cache[key] = hit
        return hit

    def with_blocks(self, blocks, n=None, block_size=None) -> "Instance":
        ids = {m for b in blocks for m in b.member_ids}
        members = {k: v for k, v in self.members.items() if k in ids}
        return Instance(self.n if n is None else n, self.context, members,
                        tuple(blocks), block_size)


def _payloads_meet(inst: Instance, a: Member, b: Member) -> bool:
    ctx = inst.context
    if isinstance(a.payload, Segment) and isinstance(b.payload, Segment):
        return segments_intersect(a.payload, b.payload)
    if isinstance(a.payload, CurveSegment) and isinstance(b.payload, CurveSegment):
        return curve_segments_intersect(a.payload, b.payload, ctx.curves)
    if isinstance(ctx, GraphContext):
        edges = inst._edge_cache.get("__edges__")
        if edges is None:
            edges = {frozenset(e) for e in ctx.edges}
            inst._edge_cache["__edges__"] = edges
        return frozenset((a.id, b.id)) in edges
    raise PreconditionError(f"members {a.id} and {b.id} have incompatible kinds")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


def validate_instance(inst: Instance):
    """List every violated instance invariant; empty means valid."""
    out = []

    def report(code, msg):
        out.append(Diagnostic(code, msg))

    if not isinstance(inst.n, int) or inst.n < 1:
        report("bad-n", f"n must be a positive integer, got {inst.n!r}")
        return out
    want_kind = _KIND_FOR_CONTEXT[inst.context.kind]
    for mid, m in inst.members.items():
        if m.id != mid:
            report("member-id", f"member table key {mid!r} holds member {m.id!r}")
        if m.kind != want_kind:
            report("member-kind", f"member {mid} is a {m.kind}, context needs {want_kind}")
    if out:
        return out

    ctx = inst.context
    if isinstance(ctx, DirectionContext):
        allowed = set(ctx.directions)
        for mid, m in inst.members.items():
            if m.payload.direction not in allowed and not m.payload.is_degenerate:
                report("direction", f"member {mid} runs in {tuple(m.payload.direction)}, not in U")
    elif isinstance(ctx, CurveContext):
        out.extend(_validate_curves(inst, ctx))
    elif isinstance(ctx, GraphContext):
        for u, v in ctx.edges:
            for x in (u, v):
                if x not in inst.members:
                    report("unknown-member", f"edge ({u}, {v}) names unknown vertex {x}")
            if u == v:
                report("self-loop", f"edge ({u}, {v}) is a self-loop")
    if any(d.code in ("unknown-curve", "param-range") for d in out):
        return out

    size = inst.expected_block_size
    for bi, block in enumerate(inst.blocks):
        name = f"block {bi} ({block.label})"
        missing = [m for m in block.member_ids if m not in inst.members]
        if missing:
            report("unknown-member", f"{name} references unknown members {missing}")
            continue
        if len(set(block.member_ids)) != len(block.member_ids):
            report("duplicate-member", f"{name} lists a member twice")
        if len(block.member_ids) != size:
            report("block-size", f"{name} has {len(block.member_ids)} members, expected {size}")
        for a, b in combinations(block.member_ids, 2):
            if a != b and inst.intersect(a, b):
                report("block-not-independent", f"{name}: members {a} and {b} intersect")
    return out


def _validate_curves(inst: Instance, ctx: CurveContext):
    out = []
    for mid, m in inst.members.items():
        seg = m.payload
        curve = ctx.curves.get(seg.curve)
        if curve is None:
            out.append(Diagnostic("unknown-curve", f"member {mid} lies on unknown curve {seg.curve!r}"))
        elif seg.t_lo < 0 or seg.t_hi > curve.t_max:
            out.append(Diagnostic("param-range",
                                  f"member {mid}: [{seg.t_lo}, {seg.t_hi}] outside [0, {curve.t_max}]"))
    for c1, c2 in combinations(sorted(ctx.curves), 2):
        a, b = ctx.curves[c1], ctx.curves[c2]
        try:
            hits = len(curve_pairwise_crossings(a, b))
        except DegenerateOverlapError:
            out.append(Diagnostic("curve-overlap", f"curves {c1} and {c2} share a sub-arc"))
            continue
        if a.group == b.group and hits:
            out.append(Diagnostic("same-group-curves-intersect",
                                  f"curves {c1} and {c2} of group {a.group} meet {hits} times"))
        elif a.group != b.group and hits > ctx.t:
            out.append(Diagnostic("crossing-budget-exceeded",
                                  f"curves {c1} and {c2} cross {hits} times, budget t={ctx.t}"))
    return out


def require_valid(inst: Instance) -> None:
    diags = validate_instance(inst)
    if diags:
        raise InstanceValidationError(diags)


# ---------------------------------------------------------------------------
# intersection graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionGraph:
    vertices: Tuple[str, ...]
    edges: frozenset  # of (u, v) with u before v in vertex order

    def neighbors(self):
        nbrs = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return nbrs

    def adjacent(self, u: str, v: str) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def sorted_edges(self):
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted(self.edges, key=lambda e: (pos[e[0]], pos[e[1]]))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{u}" -- "{v}";' for u, v in self.sorted_edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_intersection_graph(inst: Instance) -> IntersectionGraph:
    """Edge between two members iff they intersect (vertex order = member table order)."""
    require_valid(inst)
    order = inst.member_order()
    edges = set()
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            if inst.intersect(a, b):
                edges.add((a, b))
    return IntersectionGraph(tuple(order), frozenset(edges))


# ---------------------------------------------------------------------------
# SDR checks and exact search
# ---------------------------------------------------------------------------

def is_sdr(inst: Instance, assignment: Mapping[int, str]) -> bool:
    """Injective, block-respecting, pairwise disjoint; recomputed from geometry."""
    seen = set()
    for bi, mid in assignment.items():
        if not (isinstance(bi, int) and 0 <= bi < len(inst.blocks)):
            return False
        if mid not in inst.blocks[bi].member_ids or mid not in inst.members:
            return False
        if mid in seen:
            return False
        seen.add(mid)
    chosen = list(assignment.values())
    for a, b in combinations(chosen, 2):
        if _payloads_meet(inst, inst.members[a], inst.members[b]):
            return False
    return True


@dataclass
class SearchResult:
    size: int
    assignment: Assignment
    nodes: int


def _run_kernel(vertices, neighbors, blocks: Sequence[Sequence[str]], target, budget):
    index = {v: i for i, v in enumerate(vertices)}
    block_idx = [[index[m] for m in b] for b in blocks]
    nbr_idx = [[index[u] for u in neighbors[v]] for v in vertices]
    size, choice, nodes, exceeded = search.max_rainbow(block_idx, nbr_idx, target, budget)
    if exceeded:
        raise BudgetExceededError(budget)
    assignment = {b: vertices[v] for b, v in enumerate(choice) if v >= 0}
    return SearchResult(size, assignment, nodes)


def max_sdr_search(inst: Instance, target: Optional[int] = None,
                   node_budget: Optional[int] = None) -> SearchResult:
    """Exhaustive maximum SDR with the node count of the search."""
    graph = build_intersection_graph(inst)
    budget = search.default_budget() if node_budget is None else node_budget
    goal = len(inst.blocks) if target is None else target
    return _run_kernel(graph.vertices, graph.neighbors(),
                       [b.member_ids for b in inst.blocks], goal, budget)


def max_sdr_bruteforce(inst: Instance, target: Optional[int] = None,
                       node_budget: Optional[int] = None):
    """(size, witness) of a maximum SDR, or of the first SDR reaching ``target``."""
    res = max_sdr_search(inst, target, node_budget)
    return res.size, res.assignment


def rainbow_independent_set(graph: IntersectionGraph, blocks: Sequence[Block], n: int,
                            node_budget: Optional[int] = None) -> Optional[Assignment]:
    """A rainbow independent set of size n (block index -> vertex), or None."""
    vset = set(graph.vertices)
    for bi, block in enumerate(blocks):
        for v in block.member_ids:
            if v not in vset:
                raise PreconditionError(f"block {bi} ({block.label}) names unknown vertex {v}")
        for a, b in combinations(block.member_ids, 2):
            if a == b or graph.adjacent(a, b):
                raise PreconditionError(f"block {bi} ({block.label}) is not independent: {a}, {b}")
    budget = search.default_budget() if node_budget is None else node_budget
    res = _run_kernel(graph.vertices, graph.neighbors(),
                      [b.member_ids for b in blocks], n, budget)
    return res.assignment if res.size >= n else None
