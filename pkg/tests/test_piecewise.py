import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from groupoid_haar.piecewise import GraphError, PiecewiseValue, \
    line_through, poly_eval, poly_mul, verify_continuity

HALF = Fraction(1, 2)


def identity():
    return PiecewiseValue.from_graph([(0, 0), (1, 1)])


def tent():
    return PiecewiseValue.from_graph([(0, 0), (Fraction(1, 4), 0), (HALF, 1),
                                      (Fraction(3, 4), 0), (1, 0)])


def graphs(max_knots=5):
    """Continuous piecewise-linear graphs on evenly spaced knots"""
    return st.lists(st.fractions(-4, 4, max_denominator=6),
                    min_size=2, max_size=max_knots).map(
        lambda values: [(Fraction(i, len(values) - 1), v)
                        for i, v in enumerate(values)])


class TestPolynomials(unittest.TestCase):

    def test_eval(self):
        self.assertEqual(poly_eval((1, 2, 3), Fraction(1, 2)),
                         Fraction(11, 4))
        self.assertEqual(poly_eval((), 5), 0)

    def test_mul(self):
        self.assertSequenceEqual(poly_mul((1, 1), (1, -1)), (1, 0, -1))

    def test_line(self):
        zero, one = Fraction(0), Fraction(1)
        self.assertSequenceEqual(line_through(zero, one, one, 3), (1, 2))
        self.assertSequenceEqual(line_through(zero, 2, one, 2), (2,))


class TestFromGraph(unittest.TestCase):

    def test_linear(self):
        v = identity()
        self.assertEqual(v(HALF), HALF)
        self.assertEqual(v.degree, 1)

    def test_jump(self):
        v = PiecewiseValue.from_graph([(0, 0), (HALF, 0), (HALF, HALF),
                                       (1, HALF)])
        self.assertEqual(v.limits(HALF), (0, HALF, HALF))
        self.assertEqual(v(Fraction(3, 4)), HALF)

    def test_isolated_value(self):
        v = PiecewiseValue.from_graph([(0, 1), (HALF, 1), (HALF, 0),
                                       (HALF, 1), (1, 1)])
        self.assertEqual(v.limits(HALF), (1, 0, 1))
        self.assertEqual(v(Fraction(1, 3)), 1)

    def test_empty(self):
        self.assertTrue(PiecewiseValue.from_graph([]).is_zero())

    def test_rational_strings(self):
        v = PiecewiseValue.from_graph([["0/1", "1/1"], ["1/1", "3/1"]])
        self.assertEqual(v(HALF), 2)

    def test_errors(self):
        for graph in ([(HALF, 0), (1, 0)],
                      [(0, 0), (HALF, 0)],
                      [(0, 0), (1, 0), (HALF, 0)],
                      [(0, 0), (HALF, 0), (HALF, 0), (HALF, 0), (HALF, 0),
                       (1, 0)],
                      [(0, 0), (0, 1)],
                      [(0, 0, 0), (1, 0)]):
            with self.assertRaises(GraphError):
                PiecewiseValue.from_graph(graph)

    def test_bad_knots(self):
        with self.assertRaises(ValueError):
            PiecewiseValue((0, HALF), [()], (0, 0))
        with self.assertRaises(ValueError):
            PiecewiseValue((0, 1), [(), ()], (0, 0))


class TestQueries(unittest.TestCase):

    def test_limits_at_ends(self):
        v = identity()
        self.assertIsNone(v.left_limit(0))
        self.assertIsNone(v.right_limit(1))
        self.assertEqual(v.left_limit(1), 1)
        self.assertEqual(v.right_limit(0), 0)

    def test_outside(self):
        with self.assertRaises(ValueError):
            identity().evaluate(2)
        with self.assertRaises(ValueError):
            identity().left_limit(Fraction(-1, 2))

    def test_vanishes_on(self):
        v = tent()
        self.assertTrue(v.vanishes_on(0, Fraction(1, 4)))
        self.assertTrue(v.vanishes_on(Fraction(3, 4), 1))
        self.assertFalse(v.vanishes_on(0, HALF))

    def test_is_positive(self):
        self.assertTrue((identity() + 1).is_positive())
        self.assertFalse(PiecewiseValue.from_graph(
            [(0, 1), (1, 0)]).is_positive())
        self.assertFalse(PiecewiseValue.from_graph(
            [(0, 1), (HALF, 1), (HALF, 0), (HALF, 1), (1, 1)]).is_positive())
        with self.assertRaises(ValueError):
            (identity() * identity()).is_positive()


class TestArithmetic(unittest.TestCase):

    def test_square(self):
        v = identity() * identity()
        self.assertEqual(v.degree, 2)
        self.assertEqual(v(Fraction(1, 3)), Fraction(1, 9))
        with self.assertRaises(ValueError):
            v.to_graph()

    def test_sub(self):
        self.assertTrue((tent() - tent()).is_zero())
        self.assertEqual((1 - identity())(Fraction(1, 4)), Fraction(3, 4))

    def test_refine_and_simplify(self):
        v = PiecewiseValue.from_graph([(0, 0), (HALF, HALF), (1, 1)])
        self.assertEqual(v, identity())
        self.assertEqual(len(v.simplify().knots), 2)
        refined = identity().refine([Fraction(1, 3)])
        self.assertSequenceEqual(refined.knots, (0, Fraction(1, 3), 1))
        self.assertEqual(refined, identity())

    def test_jump_times_scale(self):
        step = PiecewiseValue.from_graph([(0, 1), (HALF, 1), (HALF, 0),
                                          (1, 0)])
        v = step * (identity() + 1)
        self.assertEqual(v.limits(HALF), (Fraction(3, 2), 0, 0))

    @given(graphs(), graphs(), st.fractions(0, 1, max_denominator=12))
    @settings(max_examples=50, deadline=None)
    def test_pointwise(self, f, g, x):
        f, g = PiecewiseValue.from_graph(f), PiecewiseValue.from_graph(g)
        self.assertEqual((f + g)(x), f(x) + g(x))
        self.assertEqual((f * g)(x), f(x) * g(x))


class TestGraph(unittest.TestCase):

    def test_to_graph(self):
        graph = [(0, 0), (HALF, 0), (HALF, 1), (HALF, 2), (1, 2)]
        v = PiecewiseValue.from_graph(graph)
        self.assertSequenceEqual(v.to_graph(), [list(_) for _ in graph])
        self.assertEqual(PiecewiseValue.from_graph(v.to_graph()), v)

    def test_to_dict(self):
        d = identity().to_dict()
        self.assertSequenceEqual(d["knots"], [0, 1])
        self.assertSequenceEqual(d["pieces"][0]["coefficients"], [0, 1])


class TestVerifyContinuity(unittest.TestCase):

    def test_continuous(self):
        report = verify_continuity(tent())
        self.assertTrue(report.ok)
        self.assertSequenceEqual(report.data["discrepancies"], [])

    def test_step(self):
        v = PiecewiseValue.from_graph([(0, 0), (HALF, 0), (HALF, HALF),
                                       (1, HALF)])
        report = verify_continuity(v)
        self.assertEqual(len(report.violations), 1)
        self.assertSequenceEqual(report.witnesses("discontinuity"),
                                 [(HALF, 0, HALF, HALF)])
        self.assertSequenceEqual(report.data["discrepancies"], [[HALF, HALF]])

    def test_points(self):
        v = PiecewiseValue.from_graph([(0, 0), (HALF, 0), (HALF, 1), (1, 1)])
        self.assertTrue(verify_continuity(v, [Fraction(1, 3)]).ok)
        self.assertFalse(verify_continuity(v, [HALF]).ok)

    @given(graphs())
    @settings(max_examples=30, deadline=None)
    def test_continuous_graphs(self, graph):
        self.assertTrue(verify_continuity(
            PiecewiseValue.from_graph(graph)).ok)


if __name__ == '__main__':
    unittest.main()
