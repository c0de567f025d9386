"""SDR of size n for 2n-1 blocks of n-1 horizontal segments and one vertical."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..errors import InternalInvariantError, PreconditionError
from ..geometry import HORIZONTAL, VERTICAL
from ..model import DirectionContext, Instance, require_valid
from ._flat import Interval, sweep


@dataclass
class TwoSweepState:
    R1: List[Tuple[int, str]]
    R2: List[Tuple[int, str]] = field(default_factory=list)
    g: Dict[int, int] = field(default_factory=dict)
    X: Dict[int, Interval] = field(default_factory=dict)
    band: Tuple = ()

    def as_dict(self):
        return {"R1": self.R1, "R2": self.R2, "g": self.g,
                "X": {j: [x.line, str(x.lo), str(x.hi)] for j, x in self.X.items()},
                "band": [str(v) for v in self.band]}


def _split_blocks(inst: Instance):
    """Per block: horizontal member ids and the vertical member id."""
    n = inst.n
    horiz, vert = [], []
    for bi, block in enumerate(inst.blocks):
        hs, vs = [], []
        for mid in block.member_ids:
            d = inst.members[mid].payload.direction
            if d == HORIZONTAL:
                hs.append(mid)
            elif d == VERTICAL:
                vs.append(mid)
            else:
                raise PreconditionError(f"member {mid} is neither horizontal nor vertical")
        if len(hs) != n - 1 or len(vs) != 1:
            raise PreconditionError(
                f"block {bi} ({block.label}) has {len(hs)} horizontal and {len(vs)} vertical "
                f"members; need {n - 1} and 1")
        horiz.append(hs)
        vert.append(vs[0])
    return horiz, vert


def two_sweep_hv(inst: Instance, trace=None):
    """Two greedy sweeps over the horizontal parts, combined through the band
    of the last block's vertical segment when both stop one short."""
    if not isinstance(inst.context, DirectionContext):
        raise PreconditionError("two_sweep_hv needs a directions instance")
    require_valid(inst)
    n = inst.n
    if len(inst.blocks) != 2 * n - 1:
        raise PreconditionError(f"need exactly 2n-1={2 * n - 1} blocks, got {len(inst.blocks)}")
    horiz, vert = _split_blocks(inst)
    # horizontal members: line = y, interval = x-range
    flat = {}
    for hs in horiz:
        for mid in hs:
            s = inst.members[mid].payload
            flat[mid] = Interval(s.anchor[1], s.start[0], s.end[0])

    R1 = sweep(flat, {b: list(hs) for b, hs in enumerate(horiz)}, len(inst.blocks),
               trace=trace, name="two-sweep/1", size=n - 1)
    if len(R1) >= n:
        return dict(R1[:n])
    if len(R1) != n - 1:
        raise InternalInvariantError(f"first sweep made {len(R1)} picks, expected n-1={n - 1}",
                                     {"R1": R1})
    st = TwoSweepState(R1)

    rest = [b for b in range(len(inst.blocks)) if b not in dict(R1)]
    R2 = sweep(flat, {b: list(horiz[b]) for b in rest}, len(rest),
               trace=trace, name="two-sweep/2", size=n - 1, rightward=False)
    st.R2 = R2
    if len(R2) >= n:
        return dict(R2[:n])
    if len(R2) != n - 1:
        raise InternalInvariantError(f"second sweep made {len(R2)} picks, expected n-1={n - 1}",
                                     st.as_dict())

    last = [b for b in rest if b not in dict(R2)]
    if len(last) != 1:
        raise InternalInvariantError(f"expected one block left after both sweeps, got {last}",
                                     st.as_dict())
    z = last[0]
    vseg = inst.members[vert[z]].payload
    vx, vlo, vhi = vseg.start[0], vseg.start[1], vseg.end[1]
    st.band = (vlo, vhi)

    def hits_vertical(iv: Interval) -> bool:
        return vlo <= iv.line <= vhi and iv.lo <= vx <= iv.hi

    if not any(hits_vertical(flat[m]) for _, m in R2):
        if trace is not None:
            trace.append({"algorithm": "two-sweep", "step": "vertical-fits-R2", "block": z})
        out = dict(R2)
        out[z] = vert[z]
        return out

    # g(j): the second-sweep pick containing the right endpoint of I_j
    for j, (_, mi) in enumerate(R1):
        I = flat[mi]
        owners = [i for i, (_, mj) in enumerate(R2)
                  if flat[mj].line == I.line and flat[mj].lo <= I.hi <= flat[mj].hi]
        if len(owners) != 1:
            raise InternalInvariantError(
                f"right endpoint of first-sweep pick {mi} lies in {len(owners)} second-sweep picks",
                st.as_dict())
        i = owners[0]
        J = flat[R2[i][1]]
        st.g[j] = i
        # usually [l_g(j), r_j]; J may also swallow I_j whole
        st.X[j] = Interval(I.line, max(I.lo, J.lo), I.hi)
    if len(set(st.g.values())) != len(st.g):
        raise InternalInvariantError("matching between the sweeps is not injective", st.as_dict())
    for j, X in st.X.items():
        if hits_vertical(X):
            raise InternalInvariantError(f"vertical of block {z} meets crossing X_{j}", st.as_dict())

    out = {}
    for j, (bj, mi) in enumerate(R1):
        X = st.X[j]
        inside = vlo <= X.line <= vhi
        if not inside or X.hi < vx:
            out[bj] = mi
        else:
            bi, mj = R2[st.g[j]]
            out[bi] = mj
    out[z] = vert[z]
    chosen = sorted(out.items())
    for i, (ba, ma) in enumerate(chosen):
        for bb, mb in chosen[i + 1:]:
            if inst.intersect(ma, mb):
                raise InternalInvariantError(
                    f"combined picks {ma} (block {ba}) and {mb} (block {bb}) meet", st.as_dict())
    if trace is not None:
        trace.append({"algorithm": "two-sweep", "step": "combine", **st.as_dict(),
                      "result": {str(b): m for b, m in sorted(out.items())}})
    return out
