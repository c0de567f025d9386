"""SDR of size n for blocks of m disjoint horizontal segments on many lines.

Local search over SDRs R. Lines are split into
  L0: lines meeting no member of R,
  L1: lines meeting R where every block represented on them keeps all its
      members off L0,
  L2: the remaining lines meeting R.
Four exchange moves, tried in order, each raise the potential
  |R| * (|L| + 1) + #(lines meeting R):
  (a) an unrepresented block has a member on an L0 line: add it;
  (b) an L2 line carries two members of R: move one of their blocks to its
      member on an L0 line;
  (c) an unrepresented block has a member I on an L2 line whose only R member
      is J: take I, and move J's block to its member on an L0 line;
  (d) fewer than m members of R lie on L1 lines: replace them by a complete
      greedy SDR of m unrepresented blocks.
When no move applies, counting lines gives |L| <= m(n-m), so with
|L| >= m(n-m)+1 the search always reaches |R| = n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List

from ..bounds import few_lines_threshold
from ..errors import InternalInvariantError, PreconditionError
from ..model import Instance, require_valid
from ._flat import flat_view, require_kind, sweep


@dataclass
class FewLinesState:
    R: Dict[int, str]
    L0: FrozenSet[int]
    L1: FrozenSet[int]
    L2: FrozenSet[int]
    R1: Dict[int, str] = field(default_factory=dict)
    R2: Dict[int, str] = field(default_factory=dict)
    potential: int = 0

    def as_dict(self):
        return {"R": {str(b): m for b, m in sorted(self.R.items())},
                "L0": sorted(self.L0), "L1": sorted(self.L1), "L2": sorted(self.L2),
                "potential": self.potential}


def _classify(R, flat, blocks, lines) -> FewLinesState:
    met = {flat[m].line for m in R.values()}
    L0 = lines - met
    L1 = set()
    for line in met:
        if all(flat[x].line not in L0
               for b, m in R.items() if flat[m].line == line
               for x in blocks[b]):
            L1.add(line)
    L2 = met - L1
    R1 = {b: m for b, m in R.items() if flat[m].line in L1}
    R2 = {b: m for b, m in R.items() if flat[m].line in L2}
    pot = len(R) * (len(lines) + 1) + len(met)
    return FewLinesState(dict(R), frozenset(L0), frozenset(L1), frozenset(L2), R1, R2, pot)


def _on(flat, members, lineset):
    return [m for m in members if flat[m].line in lineset]


def _exchange(st: FewLinesState, flat, blocks, m):
    """Apply the first applicable move; return (name, new R) or None."""
    R = st.R
    free = [b for b in range(len(blocks)) if b not in R]

    for b in free:  # (a)
        hit = _on(flat, blocks[b], st.L0)
        if hit:
            return "a", {**R, b: hit[0]}

    for line in sorted(st.L2):  # (b)
        here = sorted(b for b, x in R.items() if flat[x].line == line)
        if len(here) >= 2:
            # some block on an L2 line can reach L0; any of them will do
            for b in here:
                alt = _on(flat, blocks[b], st.L0)
                if alt:
                    return "b", {**R, b: alt[0]}
            raise InternalInvariantError(f"L2 line {line} has no block reaching L0", st.as_dict())

    for b in free:  # (c)
        for x in _on(flat, blocks[b], st.L2):
            line = flat[x].line
            owner = [c for c, y in R.items() if flat[y].line == line]
            if len(owner) != 1:
                raise InternalInvariantError(
                    f"L2 line {line} carries {len(owner)} members of R after move (b)",
                    st.as_dict())
            c = owner[0]
            alt = _on(flat, blocks[c], st.L0)
            if not alt:
                raise InternalInvariantError(f"block {c} on L2 line {line} cannot reach L0",
                                             st.as_dict())
            return "c", {**R, b: x, c: alt[0]}

    if len(st.R1) < m:  # (d)
        pool = {b: list(blocks[b]) for b in free[:m]}
        stray = [x for ms in pool.values() for x in ms if flat[x].line not in st.L1]
        if stray:
            raise InternalInvariantError(
                f"unrepresented members {stray} lie off L1 after moves (a) and (c)", st.as_dict())
        fresh = sweep(flat, pool, m, name="few-lines/rebuild", size=m)
        if len(fresh) < m:
            raise InternalInvariantError("greedy rebuild of R1 came up short", st.as_dict())
        new = dict(st.R2)
        new.update(fresh)
        return "d", new
    return None


def potential_ascent_few_lines(inst: Instance, m: int, trace=None, start=None):
    """SDR of size n for >= n+m-1 blocks of m disjoint segments on parallel lines
    (or segments of disjoint curves) spread over >= m(n-m)+1 lines.

    ``start`` (block index -> member id, a partial SDR) replaces the default
    greedy starting point.
    """
    require_kind(inst, "directions", "curves")
    require_valid(inst)
    n = inst.n
    if not (1 <= m < n):
        raise PreconditionError(f"need 1 <= m < n, got n={n}, m={m}")
    if inst.expected_block_size != m:
        raise PreconditionError(f"blocks must hold m={m} members, not {inst.expected_block_size}")
    if len(inst.blocks) < n + m - 1:
        raise PreconditionError(f"need n+m-1={n + m - 1} blocks, got {len(inst.blocks)}")
    flat = flat_view(inst)
    blocks: List[List[str]] = [list(b.member_ids) for b in inst.blocks]
    lines = frozenset(flat[x].line for ms in blocks for x in ms)
    need = few_lines_threshold(n, m)
    if len(lines) < need:
        raise PreconditionError(f"segments span {len(lines)} lines, need m(n-m)+1={need}")

    if start is None:
        R = dict(sweep(flat, {b: list(ms) for b, ms in enumerate(blocks)}, n,
                       name="few-lines/start"))
    else:
        R = dict(start)
        for b, x in R.items():
            if x not in blocks[b]:
                raise PreconditionError(f"start member {x} is not in block {b}")
        picked = list(R.values())
        if any(flat[x].meets(flat[y]) for i, x in enumerate(picked) for y in picked[i + 1:]):
            raise PreconditionError("start is not a partial SDR")
    st = _classify(R, flat, blocks, lines)
    cap = n * (len(lines) + 1) + len(lines)
    moves = 0
    if trace is not None:
        trace.append({"algorithm": "few-lines", "move": "start", **st.as_dict()})
    while len(R) < n:
        step = _exchange(st, flat, blocks, m)
        if step is None:
            raise InternalInvariantError(f"no exchange applies with |R|={len(R)} < n={n}",
                                         st.as_dict())
        move, R = step
        new = _classify(R, flat, blocks, lines)
        if new.potential <= st.potential:
            raise InternalInvariantError(
                f"move ({move}) did not raise the potential ({st.potential} -> {new.potential})",
                new.as_dict())
        moves += 1
        if moves > cap:
            raise InternalInvariantError(f"more than {cap} exchanges", new.as_dict())
        st = new
        if trace is not None:
            trace.append({"algorithm": "few-lines", "move": move, **st.as_dict()})
    keep = sorted(R)[:n]
    return {b: R[b] for b in keep}
