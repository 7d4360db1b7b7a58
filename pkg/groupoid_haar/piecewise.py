"""Exact piecewise-polynomial functions on [0, 1]

A PiecewiseValue is given by knots 0 = t_0 < ... < t_n = 1, a polynomial
with Fraction coefficients on each open interval (t_i, t_i+1) and an explicit
value at each knot. The one-sided limits at a knot are the values of the
neighboring polynomials there, so jumps are represented exactly.
"""

import bisect
import logging
from fractions import Fraction

from .rational import as_fraction
from .report import Report

logger = logging.getLogger("groupoid_haar.piecewise")

ZERO = Fraction(0)
ONE = Fraction(1)


def poly_eval(coefficients, x):
    """Horner evaluation of c0 + c1 x + c2 x^2 + ..."""
    result = ZERO
    for c in reversed(coefficients):
        result = result * x + c
    return result


def poly_trim(coefficients):
    coefficients = list(coefficients)
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


def poly_add(p, q):
    n = max(len(p), len(q))
    p = tuple(p) + (ZERO,) * (n - len(p))
    q = tuple(q) + (ZERO,) * (n - len(q))
    return poly_trim(a + b for a, b in zip(p, q))


def poly_mul(p, q):
    if not p or not q:
        return ()
    result = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            result[i + j] += a * b
    return poly_trim(result)


def line_through(a, va, b, vb):
    """Coefficients of the line through (a, va) and (b, vb)"""
    slope = (vb - va) / (b - a)
    return poly_trim((va - slope * a, slope))


class GraphError(ValueError):
    """A graph list that does not describe a function on [0, 1]"""


class PiecewiseValue:
    """An exact piecewise-polynomial function of x in [0, 1]

    :param knots: strictly increasing Fractions from 0 to 1
    :param pieces: one coefficient tuple per open interval between knots
    :param values: the value at each knot
    """

    def __init__(self, knots, pieces, values):
        self.knots = tuple(Fraction(_) for _ in knots)
        self.pieces = tuple(poly_trim(Fraction(c) for c in p) for p in pieces)
        self.values = tuple(Fraction(_) for _ in values)
        if len(self.knots) < 2 or self.knots[0] != 0 or self.knots[-1] != 1:
            raise ValueError("knots must start at 0 and end at 1")
        if any(a >= b for a, b in zip(self.knots[:-1], self.knots[1:])):
            raise ValueError("knots must be strictly increasing")
        if len(self.pieces) != len(self.knots) - 1 or \
                len(self.values) != len(self.knots):
            raise ValueError("need one piece per interval and one value "
                             "per knot")

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls((ZERO, ONE), [(c,)], (c, c))

    @classmethod
    def zero(cls):
        return cls.constant(0)

    @classmethod
    def from_graph(cls, graph):
        """A piecewise-linear function from a list of (x, value) pairs

        The pairs are sorted by x, start at x = 0 and end at x = 1. Between
        distinct x the function is linear. Up to three pairs may share an x:
        one pair is a continuous knot, two pairs are the left and right
        limits with the value equal to the right limit, three pairs are the
        left limit, the value and the right limit. An empty graph is the
        zero function.

        :raises GraphError: for a graph that breaks these rules
        """
        if len(graph) == 0:
            return cls.zero()
        points = []
        for entry in graph:
            if len(entry) != 2:
                raise GraphError("graph entries are (x, value) pairs")
            points.append((as_fraction(entry[0]), as_fraction(entry[1])))
        xs = [p[0] for p in points]
        if xs[0] != 0 or xs[-1] != 1:
            raise GraphError("graph must cover [0, 1], got %s to %s" %
                             (xs[0], xs[-1]))
        if any(a > b for a, b in zip(xs[:-1], xs[1:])):
            raise GraphError("graph x values are not sorted")
        knots, limits = [], []
        for x, v in points:
            if knots and knots[-1] == x:
                limits[-1].append(v)
                if len(limits[-1]) > 3:
                    raise GraphError("more than three entries at x = %s" % x)
            else:
                knots.append(x)
                limits.append([v])
        if len(knots) == 1:
            raise GraphError("graph needs at least two distinct x values")
        triples = []
        for entries in limits:
            if len(entries) == 1:
                triples.append((entries[0],) * 3)
            elif len(entries) == 2:
                triples.append((entries[0], entries[1], entries[1]))
            else:
                triples.append(tuple(entries))
        pieces = [line_through(a, ta[2], b, tb[0]) for a, b, ta, tb in zip(
            knots[:-1], knots[1:], triples[:-1], triples[1:])]
        return cls(knots, pieces, [t[1] for t in triples])

    @property
    def degree(self):
        return max([len(p) - 1 for p in self.pieces] + [0])

    def _piece_index(self, x):
        """Index of the open interval containing x, or None at a knot"""
        i = bisect.bisect_left(self.knots, x)
        if i < len(self.knots) and self.knots[i] == x:
            return None
        return i - 1

    def _check_domain(self, x):
        if not 0 <= x <= 1:
            raise ValueError("x = %s is outside [0, 1]" % x)

    def evaluate(self, x):
        x = Fraction(x)
        self._check_domain(x)
        i = self._piece_index(x)
        if i is None:
            return self.values[self.knots.index(x)]
        return poly_eval(self.pieces[i], x)

    __call__ = evaluate

    def left_limit(self, x):
        """The limit from the left at x, None at x = 0"""
        x = Fraction(x)
        self._check_domain(x)
        if x == 0:
            return None
        i = bisect.bisect_left(self.knots, x) - 1
        return poly_eval(self.pieces[i], x)

    def right_limit(self, x):
        """The limit from the right at x, None at x = 1"""
        x = Fraction(x)
        self._check_domain(x)
        if x == 1:
            return None
        i = bisect.bisect_right(self.knots, x) - 1
        return poly_eval(self.pieces[i], x)

    def refine(self, knots):
        """The same function with additional knots"""
        extra = {Fraction(_) for _ in knots}
        for x in extra:
            self._check_domain(x)
        merged = sorted(set(self.knots) | extra)
        pieces, values = [], []
        for a, b in zip(merged[:-1], merged[1:]):
            pieces.append(self.pieces[self._piece_index((a + b) / 2)])
        for x in merged:
            values.append(self.evaluate(x))
        return PiecewiseValue(merged, pieces, values)

    def _combine(self, other, op_piece, op_value):
        if not isinstance(other, PiecewiseValue):
            other = PiecewiseValue.constant(other)
        knots = sorted(set(self.knots) | set(other.knots))
        a, b = self.refine(knots), other.refine(knots)
        return PiecewiseValue(
            knots,
            [op_piece(p, q) for p, q in zip(a.pieces, b.pieces)],
            [op_value(p, q) for p, q in zip(a.values, b.values)])

    def __add__(self, other):
        return self._combine(other, poly_add, lambda p, q: p + q)

    __radd__ = __add__

    def __mul__(self, other):
        return self._combine(other, poly_mul, lambda p, q: p * q)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, PiecewiseValue)
                       else -Fraction(other))

    def __rsub__(self, other):
        return -self + other

    def simplify(self):
        """Drop knots where the function is continuous and polynomial"""
        knots, pieces, values = [self.knots[0]], [self.pieces[0]], \
            [self.values[0]]
        for i in range(1, len(self.knots) - 1):
            x = self.knots[i]
            if self.pieces[i] == pieces[-1] and \
                    self.values[i] == poly_eval(pieces[-1], x):
                continue
            knots.append(x)
            pieces.append(self.pieces[i])
            values.append(self.values[i])
        knots.append(self.knots[-1])
        values.append(self.values[-1])
        return PiecewiseValue(knots, pieces, values)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseValue):
            return NotImplemented
        a, b = self.simplify(), other.simplify()
        return (a.knots, a.pieces, a.values) == (b.knots, b.pieces, b.values)

    def is_zero(self):
        return all(not p for p in self.pieces) and \
            all(v == 0 for v in self.values)

    def vanishes_on(self, a, b):
        """True if the function is identically 0 on the open interval (a, b)
        """
        a, b = Fraction(a), Fraction(b)
        refined = self.refine((a, b))
        for i, (lo, hi) in enumerate(zip(refined.knots[:-1],
                                         refined.knots[1:])):
            if lo >= a and hi <= b and refined.pieces[i]:
                return False
        return all(v == 0 for x, v in zip(refined.knots, refined.values)
                   if a < x < b)

    def is_positive(self):
        """True if the function is > 0 on [0, 1], for degree at most 1"""
        if self.degree > 1:
            raise ValueError("positivity is only decided for piecewise-"
                             "linear functions")
        for x in self.knots:
            for v in (self.left_limit(x), self.evaluate(x),
                      self.right_limit(x)):
                if v is not None and v <= 0:
                    return False
        return True

    def limits(self, x):
        return self.left_limit(x), self.evaluate(x), self.right_limit(x)

    def to_dict(self):
        return dict(
            knots=list(self.knots),
            values=list(self.values),
            pieces=[dict(interval=[a, b], coefficients=list(p))
                    for a, b, p in zip(self.knots[:-1], self.knots[1:],
                                       self.pieces)])

    def to_graph(self):
        """The graph list of a piecewise-linear function

        :raises ValueError: if some piece has degree above 1
        """
        if self.degree > 1:
            raise ValueError("only piecewise-linear functions have a graph")
        graph = []
        for x in self.knots:
            left, value, right = self.limits(x)
            if left is None:
                left = value
            if right is None:
                right = value
            if left == value == right:
                graph.append([x, value])
            elif value == right:
                graph += [[x, left], [x, right]]
            else:
                graph += [[x, left], [x, value], [x, right]]
        return graph

    def __repr__(self):
        return "PiecewiseValue(knots=%s)" % ", ".join(map(str, self.knots))


def verify_continuity(v, points=None):
    """List the points where value and one-sided limits disagree

    :param v: a PiecewiseValue
    :param points: the points to inspect, by default every knot of v
    :returns: a Report with one "discontinuity" violation per point,
              witness (x, left limit, value, right limit); the exact
              discrepancy (largest minus smallest of the three) is in
              data["discrepancies"]
    """
    report = Report("verify_continuity")
    discrepancies = []
    for x in (v.knots if points is None else sorted(set(points))):
        left, value, right = v.limits(x)
        seen = [_ for _ in (left, value, right) if _ is not None]
        if max(seen) != min(seen):
            report.add_violation("discontinuity",
                                 "value and one-sided limits differ",
                                 x, left, value, right)
            discrepancies.append([x, max(seen) - min(seen)])
    report.data["discrepancies"] = discrepancies
    return report
