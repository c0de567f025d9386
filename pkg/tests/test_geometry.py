import random
from fractions import Fraction

import pytest

from oracles import cramer_segments_meet
from sdrkit.errors import (DegenerateOverlapError, InvalidCurveError, InvalidDirectionError,
                           PreconditionError, UnknownCurveError)
from sdrkit.geometry import (HORIZONTAL, VERTICAL, CurveSegment, Direction, PolyCurve, Segment,
                             canonical_direction, curve_pairwise_crossings,
                             curve_segments_intersect, flatten_disjoint_curves, rational,
                             segments_intersect)


class TestDirections:
    def test_gcd_reduction(self):
        assert canonical_direction(2, 4) == Direction(1, 2)

    def test_sign_canonical(self):
        assert canonical_direction(0, -3) == Direction(0, 1)
        assert canonical_direction(-1, 0) == Direction(1, 0)

    def test_negative_dy_flips(self):
        assert canonical_direction(3, -6) == Direction(-1, 2)

    def test_parallel_inputs_agree(self):
        for k in (-5, -1, 2, 7):
            assert canonical_direction(3 * k, -2 * k) == canonical_direction(3, -2)

    def test_zero_vector(self):
        with pytest.raises(InvalidDirectionError):
            canonical_direction(0, 0)

    def test_direct_construction_must_be_canonical(self):
        with pytest.raises(InvalidDirectionError):
            Direction(2, 4)
        with pytest.raises(InvalidDirectionError):
            Direction(0, -1)


def test_rationals_are_exact_and_canonical():
    assert rational("3/6") == Fraction(1, 2)
    assert rational(Fraction(4, 8)).denominator == 2
    with pytest.raises(TypeError):
        rational(0.5)


class TestSegments:
    def test_cross(self):
        assert segments_intersect(Segment.horizontal(0, 2, 1), Segment.vertical(1, 0, 2))

    def test_parallel_lines(self):
        assert not segments_intersect(Segment.horizontal(0, 1, 0), Segment.horizontal(0, 1, 1))

    def test_shared_endpoint_counts(self):
        assert segments_intersect(Segment.horizontal(0, 1, 0), Segment.horizontal(1, 2, 0))

    def test_point_segments(self):
        p = Segment.between((1, 1), (1, 1))
        assert p.is_degenerate
        assert segments_intersect(p, Segment.between((0, 0), (2, 2)))
        assert not segments_intersect(p, Segment.between((0, 1), (0, 3)))

    def test_between_normalizes_direction(self):
        s = Segment.between((3, 3), (1, 2))
        assert s.direction == Direction(2, 1)
        assert {s.start, s.end} == {(3, 3), (1, 2)}

    def test_reversed_bounds_rejected(self):
        with pytest.raises(ValueError):
            Segment((0, 0), HORIZONTAL, 1, 0)

    def test_against_cramer_oracle(self):
        rng = random.Random(20240611)
        pool = [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1), (1, -3)]
        mismatches = []
        for _ in range(10_000):
            segs = []
            for _ in range(2):
                # small grid so touching and collinear cases are frequent
                p = (Fraction(rng.randint(-20, 20), 2), Fraction(rng.randint(-20, 20), 2))
                if rng.random() < 0.5:
                    q = (Fraction(rng.randint(-20, 20), 2), Fraction(rng.randint(-20, 20), 2))
                else:
                    dx, dy = rng.choice(pool)
                    k = Fraction(rng.randint(0, 8), 2)
                    q = (p[0] + k * dx, p[1] + k * dy)
                segs.append((p, q))
            (p0, p1), (q0, q1) = segs
            got = segments_intersect(Segment.between(p0, p1), Segment.between(q0, q1))
            if got != cramer_segments_meet(p0, p1, q0, q1):
                mismatches.append(segs)
        assert mismatches == []

    def test_symmetric_and_reflexive(self):
        rng = random.Random(3)
        for _ in range(500):
            a = Segment.between((rng.randint(-5, 5), rng.randint(-5, 5)),
                                (rng.randint(-5, 5), rng.randint(-5, 5)))
            b = Segment.between((rng.randint(-5, 5), rng.randint(-5, 5)),
                                (rng.randint(-5, 5), rng.randint(-5, 5)))
            assert segments_intersect(a, b) == segments_intersect(b, a)
            assert segments_intersect(a, a)


def _curve(cid, *verts, group=1):
    return PolyCurve(cid, tuple(verts), group)


class TestCurves:
    def test_not_simple(self):
        with pytest.raises(InvalidCurveError):
            _curve("z", (0, 0), (2, 2), (2, 0), (0, 2))

    def test_fold_back(self):
        with pytest.raises(InvalidCurveError):
            _curve("z", (0, 0), (2, 0), (1, 0))

    def test_repeated_vertex(self):
        with pytest.raises(InvalidCurveError):
            _curve("z", (0, 0), (0, 0), (1, 1))

    def test_parameterization(self):
        c = _curve("c", (0, 0), (2, 0), (2, 4))
        assert c.t_max == 2
        assert c.at(Fraction(1, 2)) == (1, 0)
        assert c.at(Fraction(3, 2)) == (2, 2)
        assert c.param_of((2, 1)) == Fraction(5, 4)
        assert c.param_of((5, 5)) is None

    def test_same_curve_reduces_to_parameters(self):
        curves = {"c": _curve("c", (0, 0), (1, 0), (2, 0), (3, 0))}
        assert not curve_segments_intersect(CurveSegment("c", 0, 1), CurveSegment("c", 2, 3), curves)
        assert curve_segments_intersect(CurveSegment("c", 0, 2), CurveSegment("c", 2, 3), curves)

    def test_crossing_pieces(self):
        curves = {"a": _curve("a", (0, 0), (2, 2)), "b": _curve("b", (0, 2), (2, 0))}
        assert curve_segments_intersect(CurveSegment("a", Fraction(1, 4), Fraction(3, 4)),
                                        CurveSegment("b", Fraction(1, 4), Fraction(3, 4)), curves)
        assert not curve_segments_intersect(CurveSegment("a", 0, Fraction(1, 4)),
                                            CurveSegment("b", 0, Fraction(1, 4)), curves)

    def test_unknown_curve(self):
        with pytest.raises(UnknownCurveError):
            curve_segments_intersect(CurveSegment("a", 0, 1), CurveSegment("q", 0, 1),
                                     {"a": _curve("a", (0, 0), (1, 0))})

    def test_crossings_disjoint_parallel(self):
        assert curve_pairwise_crossings(_curve("a", (0, 0), (3, 0)), _curve("b", (0, 1), (3, 1))) == []

    def test_crossings_x(self):
        got = curve_pairwise_crossings(_curve("a", (0, 0), (2, 2)), _curve("b", (0, 2), (2, 0)))
        assert got == [(1, 1)]

    def test_zigzag_against_line(self):
        # zig-zag between y = 0 and y = 2 meets y = 1 once per edge, at the edge midpoint
        zig = _curve("z", (0, 0), (1, 2), (2, 0), (3, 2))
        line = _curve("h", (-1, 1), (4, 1))
        expected = sorted(((a[0] + b[0]) / 2, Fraction(1)) for a, b in zig.edges())
        assert curve_pairwise_crossings(zig, line) == expected
        assert len(expected) == 3

    def test_crossings_invariant_under_reversal(self):
        rng = random.Random(11)
        for _ in range(200):
            a = _curve("a", *[(i * 2, rng.randint(-3, 3)) for i in range(4)])
            b = _curve("b", *[(rng.randint(-3, 3) + Fraction(1, 3), i * 2 - 3) for i in range(4)])
            base = curve_pairwise_crossings(a, b)
            assert curve_pairwise_crossings(a.reversed(), b) == base
            assert curve_pairwise_crossings(a, b.reversed()) == base
            assert curve_pairwise_crossings(b, a) == base

    def test_shared_subarc(self):
        with pytest.raises(DegenerateOverlapError):
            curve_pairwise_crossings(_curve("a", (0, 0), (2, 0)), _curve("b", (1, 0), (3, 0)))


class TestFlatten:
    def test_single(self):
        curves = {"c": _curve("c", (0, 0), (1, 1))}
        (s,) = flatten_disjoint_curves([CurveSegment("c", Fraction(1, 2), Fraction(3, 4))], curves)
        assert s == Segment.horizontal(Fraction(1, 2), Fraction(3, 4), 1)

    def test_two_curves_two_heights(self):
        curves = {"a": _curve("a", (0, 0), (1, 0)), "b": _curve("b", (0, 1), (1, 1))}
        s1, s2 = flatten_disjoint_curves([CurveSegment("a", 0, 1), CurveSegment("b", 0, 1)], curves)
        assert (s1.anchor[1], s2.anchor[1]) == (1, 2)
        assert not segments_intersect(s1, s2)

    def test_shared_parameter_point(self):
        curves = {"c": _curve("c", (0, 0), (1, 0), (2, 0))}
        s1, s2 = flatten_disjoint_curves([CurveSegment("c", 0, 1), CurveSegment("c", 1, 2)], curves)
        assert segments_intersect(s1, s2)

    def test_crossing_curves_rejected(self):
        curves = {"a": _curve("a", (0, 0), (2, 2)), "b": _curve("b", (0, 2), (2, 0))}
        with pytest.raises(PreconditionError):
            flatten_disjoint_curves([CurveSegment("a", 0, 1), CurveSegment("b", 0, 1)], curves)

    def test_preserves_intersection_exactly(self):
        rng = random.Random(5)
        curves = {f"c{i}": _curve(f"c{i}", (0, 2 * i), (3, 2 * i + 1), (5, 2 * i), (8, 2 * i + 1))
                  for i in range(3)}
        segs = []
        for _ in range(40):
            lo = Fraction(rng.randint(0, 12), 4)
            hi = min(lo + Fraction(rng.randint(0, 4), 4), Fraction(3))
            segs.append(CurveSegment(rng.choice(sorted(curves)), lo, hi))
        flat = flatten_disjoint_curves(segs, curves)
        for i in range(len(segs)):
            for j in range(len(segs)):
                assert curve_segments_intersect(segs[i], segs[j], curves) == \
                    segments_intersect(flat[i], flat[j])


def test_axis_constants():
    assert HORIZONTAL == Direction(1, 0)
    assert VERTICAL == Direction(0, 1)
