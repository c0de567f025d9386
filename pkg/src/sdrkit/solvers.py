"""Algorithms by name, with a common call shape."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algorithms import (greedy_disjoint_curves, potential_ascent_few_lines,
                         solve_bounded_directions, two_sweep_hv)
from .errors import PreconditionError
from .model import Assignment, Instance, build_intersection_graph, max_sdr_search, rainbow_independent_set

ALGORITHMS = ("greedy", "few-lines", "two-sweep", "pipeline", "oracle", "rainbow")
# constructive algorithms promise a complete SDR when their preconditions hold
CONSTRUCTIVE = frozenset({"greedy", "few-lines", "two-sweep", "pipeline"})


@dataclass
class Solved:
    assignment: Assignment
    nodes: Optional[int] = None


def solve(inst: Instance, algorithm: str, *, trace=None, m: Optional[int] = None,
          node_budget: Optional[int] = None, require_bound: bool = True) -> Solved:
    if algorithm == "greedy":
        return Solved(greedy_disjoint_curves(inst, trace=trace))
    if algorithm == "few-lines":
        return Solved(potential_ascent_few_lines(inst, m or inst.expected_block_size, trace=trace))
    if algorithm == "two-sweep":
        return Solved(two_sweep_hv(inst, trace=trace))
    if algorithm == "pipeline":
        return Solved(solve_bounded_directions(inst, trace=trace, require_bound=require_bound))
    if algorithm == "oracle":
        res = max_sdr_search(inst, node_budget=node_budget)
        return Solved(res.assignment, res.nodes)
    if algorithm == "rainbow":
        graph = build_intersection_graph(inst)
        found = rainbow_independent_set(graph, inst.blocks, inst.n, node_budget=node_budget)
        return Solved(found or {})
    raise PreconditionError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
