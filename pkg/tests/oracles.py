"""Reference implementations written independently of the package code."""
from fractions import Fraction
from math import prod


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _point_on(p, q0, q1):
    d = _sub(q1, q0)
    if d == (0, 0):
        return p == q0
    w = _sub(p, q0)
    return _cross(w, d) == 0 and 0 <= _dot(w, d) <= _dot(d, d)


def cramer_segments_meet(p0, p1, q0, q1):
    """Closed segments p0p1 and q0q1 share a point: solve
    p0 + s (p1 - p0) = q0 + u (q1 - q0) by Cramer's rule over the rationals."""
    p0, p1, q0, q1 = (tuple(Fraction(c) for c in v) for v in (p0, p1, q0, q1))
    d1, d2 = _sub(p1, p0), _sub(q1, q0)
    if d1 == (0, 0):
        return _point_on(p0, q0, q1)
    if d2 == (0, 0):
        return _point_on(q0, p0, p1)
    w = _sub(q0, p0)
    det = _cross(d1, d2)
    if det != 0:
        s = _cross(w, d2) / det
        u = _cross(w, d1) / det
        return 0 <= s <= 1 and 0 <= u <= 1
    if _cross(w, d1) != 0:
        return False  # parallel, distinct lines
    # collinear: overlap of parameter ranges along d1
    a = _dot(_sub(q0, p0), d1) / _dot(d1, d1)
    b = _dot(_sub(q1, p0), d1) / _dot(d1, d1)
    return max(min(a, b), 0) <= min(max(a, b), 1)


def candidate_count(blocks):
    """Assignments where each block picks a member or nothing."""
    return prod(len(b) + 1 for b in blocks)


def enumerate_max_sdr(blocks, meets):
    """Largest number of blocks that can pick pairwise non-meeting, distinct
    members. Plain depth-first enumeration in block order with bitmasks."""
    ids = sorted({m for b in blocks for m in b})
    pos = {m: i for i, m in enumerate(ids)}
    clash = [0] * len(ids)
    for i, a in enumerate(ids):
        clash[i] |= 1 << i
        for j in range(i + 1, len(ids)):
            if meets(a, ids[j]):
                clash[i] |= 1 << j
                clash[j] |= 1 << i
    opts = [[pos[m] for m in b] for b in blocks]
    nb = len(blocks)
    best = 0

    def go(i, banned, size):
        nonlocal best
        if size > best:
            best = size
        if i == nb or best == nb or size + (nb - i) <= best:
            return
        for v in opts[i]:
            if not banned >> v & 1:
                go(i + 1, banned | clash[v], size + 1)
        go(i + 1, banned, size)

    go(0, 0, 0)
    return best


def pascal_binomial(n, k):
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k] if 0 <= k <= n else 0


def instance_max_sdr(inst):
    """Enumerator applied to an instance, with segment geometry recomputed by
    Cramer's rule where members are straight segments."""
    from sdrkit.geometry import Segment

    def meets(a, b):
        pa, pb = inst.members[a].payload, inst.members[b].payload
        if isinstance(pa, Segment) and isinstance(pb, Segment):
            return cramer_segments_meet(pa.start, pa.end, pb.start, pb.end)
        return inst.intersect(a, b)

    return enumerate_max_sdr([b.member_ids for b in inst.blocks], meets)
