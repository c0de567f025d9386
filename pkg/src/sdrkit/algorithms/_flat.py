"""Members as intervals on ranked parallel lines.

Segments sharing one direction, and segments of pairwise disjoint curves, both
reduce to (line, lo, hi): two members meet iff they share a line and their
closed intervals overlap.
"""
from __future__ import annotations

from typing import Dict, NamedTuple

from ..errors import InternalInvariantError, PreconditionError
from ..geometry import flatten_disjoint_curves
from ..model import CurveContext, DirectionContext, Instance


class Interval(NamedTuple):
    line: int
    lo: object
    hi: object

    def meets(self, other: "Interval") -> bool:
        return self.line == other.line and self.lo <= other.hi and other.lo <= self.hi


def flat_view(inst: Instance) -> Dict[str, Interval]:
    """member id -> Interval, with lines ranked 1, 2, ... in sorted order."""
    ctx = inst.context
    if isinstance(ctx, CurveContext):
        ids = list(inst.members)
        segs = [inst.members[i].payload for i in ids]
        flat = flatten_disjoint_curves(segs, ctx.curves)
        raw = {i: (s.anchor[1], s.t_lo, s.t_hi) for i, s in zip(ids, flat)}
    elif isinstance(ctx, DirectionContext):
        segs = {i: m.payload for i, m in inst.members.items()}
        dirs = {s.direction for s in segs.values() if not s.is_degenerate}
        if len(dirs) > 1:
            raise PreconditionError(
                f"members run in {len(dirs)} directions; need segments on parallel lines")
        d = dirs.pop() if dirs else next(iter(segs.values())).direction
        raw = {}
        for i, s in segs.items():
            ends = [p[0] * d.dx + p[1] * d.dy for p in (s.start, s.end)]
            x, y = s.start
            raw[i] = (d.dx * y - d.dy * x, min(ends), max(ends))
    else:
        raise PreconditionError("abstract graph instances have no line structure")
    rank = {key: r for r, key in enumerate(sorted({v[0] for v in raw.values()}), start=1)}
    return {i: Interval(rank[v[0]], v[1], v[2]) for i, v in raw.items()}


def sweep(flat, blocks, limit, *, trace=None, name="sweep", size=None, rightward=True):
    """Greedy leftmost-right-endpoint (or rightmost-left-endpoint) selection.

    ``blocks`` maps block index -> member ids still available and is consumed.
    Each step picks the extreme member among all remaining blocks (ties by
    line, block index, member id), assigns it, drops its block and deletes
    every member meeting it. Stops after ``limit`` picks or when nothing is
    left. With ``size`` set, asserts that each step costs a block at most
    one member.
    """
    picks = []
    step = 0
    while len(picks) < limit:
        if rightward:
            cands = [(flat[m].hi, flat[m].line, b, m) for b, ms in blocks.items() for m in ms]
        else:
            cands = [(-flat[m].lo, flat[m].line, b, m) for b, ms in blocks.items() for m in ms]
        if not cands:
            break
        _, _, b, m = min(cands)
        step += 1
        picks.append((b, m))
        del blocks[b]
        pick = flat[m]
        for other, ms in blocks.items():
            blocks[other] = [x for x in ms if not flat[x].meets(pick)]
            if size is not None and len(blocks[other]) < size - step:
                raise InternalInvariantError(
                    f"{name}: block {other} fell below {size - step} members at step {step}",
                    {"step": step, "block": other, "remaining": blocks[other]})
        if trace is not None:
            trace.append({"algorithm": name, "step": step, "block": b, "member": m,
                          "line": pick.line, "lo": str(pick.lo), "hi": str(pick.hi)})
    return picks


def require_kind(inst: Instance, *kinds):
    if inst.context.kind not in kinds:
        raise PreconditionError(f"needs a {' or '.join(kinds)} instance, got {inst.context.kind}")

