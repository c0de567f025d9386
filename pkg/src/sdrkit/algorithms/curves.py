"""SDRs among segments of finitely many crossing curves, and the bucketed
pipeline for curve groups with a bounded number of crossings."""
from __future__ import annotations

import math
from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Tuple

from ..bounds import bound_M, few_lines_threshold
from ..errors import DegenerateOverlapError, InternalInvariantError, PreconditionError
from ..geometry import (HORIZONTAL, CurveSegment, PolyCurve, Segment,
                        curve_pairwise_crossings, rational)
from ..model import (Block, CurveContext, DirectionContext, Instance, Member,
                     validate_instance)
from .few_lines import potential_ascent_few_lines
from .greedy import greedy_disjoint_curves

# diagnostic code -> the hypothesis it breaks
_HYPOTHESES = {
    "same-group-curves-intersect": "curves within one group must be mutually disjoint",
    "curve-overlap": "curves from different groups must meet in finitely many points",
    "crossing-budget-exceeded": "curves from different groups must meet in at most t points",
}


def crossing_points(curves: Dict[str, PolyCurve]):
    """point -> sorted ids of the curves through it, over all crossing pairs."""
    through = defaultdict(set)
    for c1, c2 in combinations(sorted(curves), 2):
        try:
            pts = curve_pairwise_crossings(curves[c1], curves[c2])
        except DegenerateOverlapError:
            raise PreconditionError(f"curves {c1} and {c2} share a sub-arc") from None
        for p in pts:
            through[p].update((c1, c2))
    return {p: sorted(ids) for p, ids in sorted(through.items())}


def _covering(inst: Instance, block: Block, cid: str, t):
    for mid in block.member_ids:
        seg = inst.members[mid].payload
        if seg.curve == cid and seg.t_lo <= t <= seg.t_hi:
            return True
    return False


def pigeonhole_curve_reduction(inst: Instance):
    """Pick >= n blocks agreeing on which curve they use at every crossing, and
    flatten them onto the pieces that remain disjoint.

    Each block gets a label per crossing point v: the curve carrying its
    member through v, or the smallest curve id through v when no member covers
    v. Among blocks sharing the most common label vector, curve c is cut at
    every crossing labelled with another curve; the pieces are pairwise
    disjoint and hold every member of those blocks. Returns the chosen block
    indices and a horizontal instance (one line per piece, parameters as
    x-coordinates) whose block j is chosen block j.
    """
    ctx = inst.context
    if not isinstance(ctx, CurveContext):
        raise PreconditionError("pigeonhole_curve_reduction needs a curves instance")
    n = inst.n
    curves = dict(ctx.curves)
    V = crossing_points(curves)
    params = {}
    for p, ids in V.items():
        for cid in ids:
            t = curves[cid].param_of(p)
            if t is None or t == 0 or t == curves[cid].t_max:
                raise PreconditionError(f"crossing {tuple(map(str, p))} is an endpoint of curve {cid}")
            params[p, cid] = t
    need = math.prod(len(ids) for ids in V.values()) * n
    if len(inst.blocks) < need:
        raise PreconditionError(
            f"{len(V)} crossing points need at least {need} blocks, got {len(inst.blocks)}")

    buckets: Dict[Tuple[str, ...], List[int]] = defaultdict(list)
    for bi, block in enumerate(inst.blocks):
        vec = []
        for p, ids in V.items():
            covered = [cid for cid in ids if _covering(inst, block, cid, params[p, cid])]
            vec.append(covered[0] if covered else ids[0])
        buckets[tuple(vec)].append(bi)
    label, chosen = max(buckets.items(), key=lambda kv: (len(kv[1]), -kv[1][0]))
    if len(chosen) < n:
        raise InternalInvariantError(f"largest label class has {len(chosen)} < n blocks",
                                     {"buckets": {str(k): v for k, v in buckets.items()}})

    cuts = defaultdict(list)
    for (p, ids), owner in zip(V.items(), label):
        for cid in ids:
            if cid != owner:
                cuts[cid].append(params[p, cid])
    cuts = {cid: sorted(ts) for cid, ts in cuts.items()}

    def piece(seg: CurveSegment):
        ts = cuts.get(seg.curve, [])
        k = sum(1 for c in ts if c < seg.t_lo)
        if k < len(ts) and ts[k] <= seg.t_hi:
            raise InternalInvariantError(f"segment on {seg.curve} crosses cut at {ts[k]}",
                                         {"segment": [str(seg.t_lo), str(seg.t_hi)]})
        return seg.curve, k

    keys = {}
    for bi in chosen:
        for mid in inst.blocks[bi].member_ids:
            keys[mid] = piece(inst.members[mid].payload)
    rank = {key: r for r, key in enumerate(sorted(set(keys.values())), start=1)}
    members = []
    for bi in chosen:
        for mid in inst.blocks[bi].member_ids:
            seg = inst.members[mid].payload
            members.append(Member(mid, Segment.horizontal(seg.t_lo, seg.t_hi, rank[keys[mid]])))
    flat = Instance.build(n, DirectionContext((HORIZONTAL,)), members,
                          [inst.blocks[bi] for bi in chosen], inst.block_size)
    return chosen, flat


def lines_as_curves(inst: Instance) -> Instance:
    """Rewrite a directions instance as a curves instance with t = 1.

    Each line carrying a member becomes a straight two-vertex curve, grouped
    by direction, long enough that every member and every crossing between
    the lines sits strictly inside it.
    """
    ctx = inst.context
    if not isinstance(ctx, DirectionContext):
        raise PreconditionError("lines_as_curves needs a directions instance")
    group = {d: i for i, d in enumerate(ctx.directions, start=1)}
    lines = {}
    for mid, m in inst.members.items():
        s = m.payload
        # a point member keeps the line of its declared direction
        lines.setdefault((s.direction, s.line_key()), []).append(mid)
    pts = [p for m in inst.members.values() for p in (m.payload.start, m.payload.end)]
    for (d1, k1), (d2, k2) in combinations(lines, 2):
        det = d1.dx * d2.dy - d1.dy * d2.dx
        if det:
            # dx*y - dy*x = key on each line
            pts.append(((k1 * d2.dx - k2 * d1.dx) / det, (k1 * d2.dy - k2 * d1.dy) / det))
    # every point of interest sits within R of the origin (max-norm)
    R = max(max(abs(x), abs(y)) for x, y in pts) + 1
    curves, members = {}, []
    for ci, ((d, key), mids) in enumerate(sorted(lines.items(), key=lambda kv: (group[kv[0][0]], kv[0][1]))):
        # foot of the line nearest the origin, then walk 4R along it both ways
        norm = d.dx * d.dx + d.dy * d.dy
        foot = (rational(-key * d.dy) / norm, rational(key * d.dx) / norm)
        reach = 4 * R
        a = (foot[0] - reach * d.dx, foot[1] - reach * d.dy)
        b = (foot[0] + reach * d.dx, foot[1] + reach * d.dy)
        cid = f"L{ci + 1}"
        curve = PolyCurve(cid, (a, b), group[d])
        curves[cid] = curve
        for mid in mids:
            s = inst.members[mid].payload
            t0, t1 = curve.param_of(s.start), curve.param_of(s.end)
            members.append(Member(mid, CurveSegment(cid, min(t0, t1), max(t0, t1))))
    return Instance.build(inst.n, CurveContext(curves, 1), members, inst.blocks, inst.block_size)


def _composition(inst: Instance, block: Block, k: int):
    counts = [0] * k
    for mid in block.member_ids:
        counts[inst.context.curves[inst.members[mid].payload.curve].group - 1] += 1
    return tuple(counts)


def _restrict(inst: Instance, block_ids, keep_member, n_block):
    """Sub-instance on the given blocks, keeping members passing ``keep_member``
    and only the curves they use."""
    blocks = [Block(inst.blocks[b].label,
                    [m for m in inst.blocks[b].member_ids if keep_member(m)]) for b in block_ids]
    used = {inst.members[m].payload.curve for bl in blocks for m in bl.member_ids}
    ctx = CurveContext({c: v for c, v in inst.context.curves.items() if c in used}, inst.context.t)
    members = [inst.members[m] for bl in blocks for m in bl.member_ids]
    return Instance.build(inst.n, ctx, members, blocks, n_block)


def solve_bounded_directions(inst: Instance, trace=None, require_bound: bool = True):
    """Complete SDR for segments of k groups of disjoint curves, curves from
    different groups crossing at most t times, given bound_M(n, k, t) blocks.

    Blocks are bucketed by how many members they hold in each group. A group
    spread over enough curves is solved on its own by the few-lines exchange
    (or greedily when it holds all n members); otherwise the few curves in use
    cross in few points and the pigeonhole reduction finishes greedily.
    Directions instances are first rewritten with ``lines_as_curves``.
    """
    if isinstance(inst.context, DirectionContext):
        inst = lines_as_curves(inst)
    if not isinstance(inst.context, CurveContext):
        raise PreconditionError("solve_bounded_directions needs a curves or directions instance")
    diags = validate_instance(inst)
    for d in diags:
        if d.code in _HYPOTHESES:
            raise PreconditionError(f"hypothesis violated: {_HYPOTHESES[d.code]} ({d.message})")
    if diags:
        raise PreconditionError("; ".join(map(str, diags)))
    n, t = inst.n, inst.context.t
    k = max(1, inst.context.k)
    if inst.expected_block_size != n:
        raise PreconditionError(f"blocks must hold n={n} members")
    M = bound_M(n, k, t).integer_upper_bound
    if require_bound and len(inst.blocks) < M:
        raise PreconditionError(f"need at least M(n={n}, k={k}, t={t}) = {M} blocks, "
                                f"got {len(inst.blocks)}")

    buckets = defaultdict(list)
    for bi, block in enumerate(inst.blocks):
        buckets[_composition(inst, block, k)].append(bi)
    comp, bucket = max(sorted(buckets.items()), key=lambda kv: len(kv[1]))
    if trace is not None:
        trace.append({"algorithm": "pipeline", "step": "bucket", "composition": list(comp),
                      "blocks": bucket})

    for g, n_g in enumerate(comp, start=1):
        if n_g == 0:
            continue
        on_group = lambda m, g=g: inst.context.curves[inst.members[m].payload.curve].group == g
        carriers = {inst.members[m].payload.curve
                    for b in bucket for m in inst.blocks[b].member_ids if on_group(m)}
        if n_g < n and len(carriers) < few_lines_threshold(n, n_g):
            continue
        sub = _restrict(inst, bucket, on_group, n_g)
        if trace is not None:
            trace.append({"algorithm": "pipeline", "step": "few-lines", "group": g,
                          "m": n_g, "curves": len(carriers)})
        if n_g == n:
            local = greedy_disjoint_curves(sub, trace=trace)
        else:
            local = potential_ascent_few_lines(sub, n_g, trace=trace)
        return {bucket[b]: m for b, m in local.items()}

    sub = _restrict(inst, bucket, lambda m: True, n)
    chosen, flat = pigeonhole_curve_reduction(sub)
    if trace is not None:
        trace.append({"algorithm": "pipeline", "step": "pigeonhole",
                      "curves": len(sub.context.curves), "blocks": [bucket[c] for c in chosen]})
    local = greedy_disjoint_curves(flat, trace=trace)
    return {bucket[chosen[b]]: m for b, m in local.items()}
