"""Systems of disjoint representatives (SDRs) for families of segments.

Exact rational geometry, exhaustive search, the constructive algorithms for
segments on parallel lines, on disjoint curves and in two axis directions,
the classical no-SDR constructions, and closed-form bounds.
"""
from .algorithms import (greedy_disjoint_curves, lines_as_curves, pigeonhole_curve_reduction,
                         potential_ascent_few_lines, solve_bounded_directions, two_sweep_hv)
from .bounds import (BoundReport, bound_M, bound_N, few_lines_threshold,
                     intersection_count_bound)
from .errors import (BudgetExceededError, DegenerateOverlapError, InstanceValidationError,
                     InternalInvariantError, InvalidCurveError, InvalidDirectionError,
                     PreconditionError, SchemaError, SdrError, UnknownCurveError)
from .generators import (GenSpec, gen_box_cycle_power, gen_cycle_power_blocks,
                         gen_few_lines_tight, gen_hv_tight, gen_quadratic_lower,
                         gen_random_instance, generate)
from .geometry import (HORIZONTAL, VERTICAL, CurveSegment, Direction, PolyCurve, Segment,
                       canonical_direction, curve_pairwise_crossings, curve_segments_intersect,
                       flatten_disjoint_curves, segments_intersect)
from .io import parse_instance, render_svg, serialize_instance
from .model import (Block, CurveContext, DirectionContext, GraphContext, Instance,
                    IntersectionGraph, Member, build_intersection_graph, is_sdr,
                    max_sdr_bruteforce, max_sdr_search, rainbow_independent_set,
                    validate_instance)
from .search import BACKEND

__version__ = "0.1.0"
