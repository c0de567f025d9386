"""Pure-Python rainbow independent set search (fallback kernel).

Must stay step-for-step identical to ``_search.pyx``: same branching order,
same pruning, same node count.
"""
import sys

__all__ = ["max_rainbow"]


def max_rainbow(block_members, neighbors, target, budget):
    """Largest rainbow independent set by exhaustive backtracking.

    block_members[b] lists member indices of block b; neighbors[v] lists the
    members adjacent to v (no self loops). A chosen member blocks itself and
    its neighbors. Branches on the live block with the fewest available
    members (lowest index on ties), tries its members in listed order and
    finally the branch that leaves the block unrepresented.

    Returns (size, choice, nodes, exceeded) where choice[b] is the member
    index representing block b or -1.
    """
    nb = len(block_members)
    blocked = [0] * len(neighbors)
    used = [False] * nb
    chosen = [-1] * nb
    best = [-1] * nb
    state = {"best": 0, "nodes": 0, "exceeded": False}
    target = min(target, nb)
    if target <= 0:
        return 0, best, 0, False

    def rec(depth):
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exceeded"] = True
            return True
        if depth > state["best"]:
            state["best"] = depth
            best[:] = chosen
            if depth >= target:
                return True
        pick = -1
        pick_avail = 0
        live = 0
        for b in range(nb):
            if used[b]:
                continue
            avail = 0
            for v in block_members[b]:
                if not blocked[v]:
                    avail += 1
            if avail:
                live += 1
                if pick < 0 or avail < pick_avail:
                    pick = b
                    pick_avail = avail
        if depth + live <= state["best"]:
            return False
        used[pick] = True
        for v in block_members[pick]:
            if blocked[v]:
                continue
            chosen[pick] = v
            blocked[v] += 1
            for u in neighbors[v]:
                blocked[u] += 1
            stop = rec(depth + 1)
            blocked[v] -= 1
            for u in neighbors[v]:
                blocked[u] -= 1
            if stop:
                return True
        chosen[pick] = -1
        if rec(depth):
            return True
        used[pick] = False
        return False

    limit = sys.getrecursionlimit()
    if limit < 4 * nb + 200:
        sys.setrecursionlimit(4 * nb + 200)
    try:
        rec(0)
    finally:
        sys.setrecursionlimit(limit)
    return state["best"], best, state["nodes"], state["exceeded"]
