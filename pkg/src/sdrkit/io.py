"""Instance JSON, DOT export and SVG rendering."""
from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from xml.sax.saxutils import quoteattr

import jsonschema

from .errors import SchemaError
from .geometry import CurveSegment, PolyCurve, Segment, canonical_direction, rational
from .model import (Block, CurveContext, DirectionContext, GraphContext, Instance,
                    Member, build_intersection_graph, require_valid)

FORMAT_VERSION = 1


@lru_cache(maxsize=1)
def _validator():
    text = resources.files("sdrkit").joinpath("schema/instance.json").read_text()
    return jsonschema.Draft202012Validator(json.loads(text))


def _q(value) -> Fraction:
    # JSON integers and "p/q" / decimal strings; Fraction normalizes
    return rational(Fraction(value)) if isinstance(value, str) else rational(value)


def _qs(x: Fraction) -> str:
    return str(x)


def _pt(p):
    return (_q(p[0]), _q(p[1]))


def _schema_check(doc):
    errors = sorted(_validator().iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {e.message}")


def instance_from_dict(doc, validate: bool = True) -> Instance:
    _schema_check(doc)
    ctx_doc = doc["context"]
    if isinstance(ctx_doc, str):
        ctx_doc = {"kind": ctx_doc}
    kind = ctx_doc["kind"]
    try:
        if kind == "directions":
            ctx = DirectionContext(tuple(canonical_direction(*d) for d in ctx_doc["directions"]))
        elif kind == "curves":
            curves = {}
            for c in ctx_doc["curves"]:
                if c["id"] in curves:
                    raise SchemaError(f"context/curves: duplicate curve id {c['id']!r}")
                curves[c["id"]] = PolyCurve(c["id"], tuple(_pt(v) for v in c["vertices"]),
                                            c.get("group", 1))
            ctx = CurveContext(curves, ctx_doc.get("t", 1))
        else:
            ctx = GraphContext(tuple(tuple(e) for e in ctx_doc.get("edges", ())))

        members = {}
        for i, m in enumerate(doc["members"]):
            if isinstance(m, str):
                m = {"id": m, "kind": "vertex"}
            mid = m["id"]
            if mid in members:
                raise SchemaError(f"members/{i}: duplicate member id {mid!r}")
            if m["kind"] == "segment":
                if "anchor" in m:
                    lo, hi = (_q(v) for v in m["t"])
                    payload = Segment(_pt(m["anchor"]), canonical_direction(*m["direction"]), lo, hi)
                else:
                    payload = Segment.between(_pt(m["p"]), _pt(m["q"]))
            elif m["kind"] == "curve_segment":
                lo, hi = (_q(v) for v in m["t"])
                payload = CurveSegment(m["curve"], lo, hi)
            else:
                payload = mid
            members[mid] = Member(mid, payload)
    except (ValueError, ZeroDivisionError) as e:
        if isinstance(e, SchemaError):
            raise
        raise SchemaError(str(e)) from None
    blocks = tuple(Block(b["label"], b["member_ids"]) for b in doc["blocks"])
    inst = Instance(doc["n"], ctx, members, blocks, doc.get("block_size"))
    if validate:
        require_valid(inst)
    return inst


def parse_instance(text: str, validate: bool = True) -> Instance:
    """Instance from JSON text; schema errors are path-addressed."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not JSON: {e}") from None
    return instance_from_dict(doc, validate)


def instance_to_dict(inst: Instance) -> dict:
    ctx = inst.context
    if isinstance(ctx, DirectionContext):
        ctx_doc = {"kind": "directions", "directions": [[d.dx, d.dy] for d in ctx.directions]}
    elif isinstance(ctx, CurveContext):
        ctx_doc = {"kind": "curves", "t": ctx.t,
                   "curves": [{"id": c.id, "group": c.group,
                               "vertices": [[_qs(x), _qs(y)] for x, y in c.vertices]}
                              for c in ctx.curves.values()]}
    else:
        ctx_doc = {"kind": "graph", "edges": [list(e) for e in ctx.edges]}
    members = []
    for mid, m in inst.members.items():
        p = m.payload
        if isinstance(p, Segment):
            members.append({"id": mid, "kind": "segment",
                            "anchor": [_qs(p.anchor[0]), _qs(p.anchor[1])],
                            "direction": [p.direction.dx, p.direction.dy],
                            "t": [_qs(p.t_lo), _qs(p.t_hi)]})
        elif isinstance(p, CurveSegment):
            members.append({"id": mid, "kind": "curve_segment", "curve": p.curve,
                            "t": [_qs(p.t_lo), _qs(p.t_hi)]})
        else:
            members.append({"id": mid, "kind": "vertex"})
    doc = {"version": FORMAT_VERSION, "n": inst.n}
    if inst.block_size is not None:
        doc["block_size"] = inst.block_size
    doc.update(context=ctx_doc, members=members,
               blocks=[{"label": b.label, "member_ids": list(b.member_ids)} for b in inst.blocks])
    return doc


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1) + "\n"


def load_instance(path, validate: bool = True) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), validate)


def save_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(inst))


def instance_to_dot(inst: Instance, name: str = "G") -> str:
    return build_intersection_graph(inst).to_dot(name)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_PALETTE = ("#1b6ca8", "#d1495b", "#00a36c", "#edae49", "#6a4c93",
            "#3d405b", "#e07a5f", "#2a9d8f", "#8d99ae", "#bc4749")


def _member_points(inst: Instance, m: Member):
    p = m.payload
    if isinstance(p, Segment):
        return [p.start, p.end]
    if isinstance(p, CurveSegment):
        return inst.context.curves[p.curve].polyline(p.t_lo, p.t_hi)
    return None


def _vertex_layout(inst: Instance):
    ids = list(inst.members)
    k = max(len(ids), 1)
    return {mid: (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
            for i, mid in enumerate(ids)}


def render_svg(inst: Instance, size: int = 480, margin: int = 20) -> str:
    """Static drawing: one element per member, coloured by its first block.

    Curve instances also show the underlying curves in light grey; graph
    instances place vertices on a circle and draw the edges.
    """
    colour = {}
    for bi, block in enumerate(inst.blocks):
        for mid in block.member_ids:
            colour.setdefault(mid, _PALETTE[bi % len(_PALETTE)])
    graph = isinstance(inst.context, GraphContext)
    if graph:
        layout = _vertex_layout(inst)
        pts = list(layout.values()) or [(0.0, 0.0)]
    else:
        pts = [q for m in inst.members.values() for q in _member_points(inst, m)]
        if isinstance(inst.context, CurveContext):
            pts += [v for c in inst.context.curves.values() for v in c.vertices]
        pts = [(float(x), float(y)) for x, y in pts] or [(0.0, 0.0)]
    x0 = min(x for x, _ in pts)
    y0 = min(y for _, y in pts)
    span = max(max(x for x, _ in pts) - x0, max(y for _, y in pts) - y0) or 1.0
    scale = (size - 2 * margin) / span

    def tx(p):
        x, y = float(p[0]), float(p[1])
        return f"{margin + (x - x0) * scale:.3f},{size - margin - (y - y0) * scale:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if isinstance(inst.context, CurveContext):
        for c in inst.context.curves.values():
            out.append(f'<polyline class="curve" data-id={quoteattr(c.id)} fill="none" '
                       f'stroke="#cccccc" stroke-width="1" points="{" ".join(map(tx, c.vertices))}"/>')
    if graph:
        for u, v in inst.context.edges:
            (ax, ay), (bx, by) = tx(layout[u]).split(","), tx(layout[v]).split(",")
            out.append(f'<line class="edge" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                       f'stroke="#999999" stroke-width="1"/>')
    for mid, m in inst.members.items():
        col = colour.get(mid, "#000000")
        if graph:
            cx, cy = tx(layout[mid]).split(",")
            out.append(f'<circle class="member" data-id={quoteattr(mid)} cx="{cx}" cy="{cy}" '
                       f'r="5" fill="{col}"/>')
            continue
        ps = _member_points(inst, m)
        if len(ps) == 2 and ps[0] == ps[1] or len(ps) == 1:
            cx, cy = tx(ps[0]).split(",")
            out.append(f'<circle class="member" data-id={quoteattr(mid)} cx="{cx}" cy="{cy}" '
                       f'r="3" fill="{col}"/>')
        else:
            out.append(f'<polyline class="member" data-id={quoteattr(mid)} fill="none" '
                       f'stroke="{col}" stroke-width="3" points="{" ".join(map(tx, ps))}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

