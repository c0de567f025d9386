from __future__ import annotations

from ..errors import InternalInvariantError, PreconditionError
from ..model import Instance, require_valid
from ._flat import flat_view, require_kind, sweep


def greedy_disjoint_curves(inst: Instance, trace=None):
    """Complete SDR for segments of mutually disjoint curves (or of parallel lines).

    Repeatedly takes the member with the leftmost right endpoint; every member
    it meets contains that endpoint, so each block loses at most one member
    per step and n steps always succeed.
    """
    require_kind(inst, "curves", "directions")
    require_valid(inst)
    if len(inst.blocks) < inst.n:
        raise PreconditionError(f"need at least n={inst.n} blocks, got {len(inst.blocks)}")
    flat = flat_view(inst)
    blocks = {b: list(block.member_ids) for b, block in enumerate(inst.blocks)}
    size = inst.expected_block_size
    if size < inst.n:
        raise PreconditionError(f"blocks of {size} members cannot force an SDR of size {inst.n}")
    picks = sweep(flat, blocks, inst.n, trace=trace, name="greedy", size=size)
    if len(picks) < inst.n:
        raise InternalInvariantError(f"greedy stopped after {len(picks)} of {inst.n} picks",
                                     {"picks": picks})
    return dict(picks)
