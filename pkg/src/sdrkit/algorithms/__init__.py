"""Constructive SDR procedures."""
from .curves import (crossing_points, lines_as_curves, pigeonhole_curve_reduction,
                     solve_bounded_directions)
from .few_lines import FewLinesState, potential_ascent_few_lines
from .greedy import greedy_disjoint_curves
from .two_sweep import TwoSweepState, two_sweep_hv

__all__ = [
    "FewLinesState", "TwoSweepState", "crossing_points", "greedy_disjoint_curves",
    "lines_as_curves", "pigeonhole_curve_reduction", "potential_ascent_few_lines",
    "solve_bounded_directions", "two_sweep_hv",
]
