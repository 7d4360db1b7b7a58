"""Step subgroup bundles over [0, 1]

A StepSubgroupBundle picks a subgroup of a fixed finite group F on each open
interval between breakpoints 0 = b_0 < ... < b_k = 1 and at each breakpoint.
Its total space G = {(x, g) : g in G_x} has the subspace topology of
[0, 1] x F with F discrete.

Basic open sets of G are ((a, c) x {g}) intersected with G, and their images
under the projection are {x : g in G_x} intersected with (a, c). So the
projection is open exactly when {x : g in G_x} is open for every g, which
holds when every element of a breakpoint group lies in the groups of the
adjacent pieces (one adjacent piece at 0 and at 1). A coherent system of
Haar measures exists exactly when the projection is open.

Functions on G are modelled sheet by sheet: for each g in F a
piecewise-linear function of x, read only where (x, g) lies in G. A function
is admissible when it is continuous on G and vanishes identically on a
terminal sub-interval of every sheet segment whose closure leaves G.
"""

import logging
import typing
from fractions import Fraction

from .groups import FiniteGroup
from .piecewise import PiecewiseValue, verify_continuity
from .rational import as_fraction
from .report import Report

logger = logging.getLogger("groupoid_haar.stepbundle")

LEFT = "left"
RIGHT = "right"


class NotOpenError(ValueError):
    """No coherent system exists because the projection is not open

    :param verdict: the Verdict of coherent_exists, with a witness function
    """

    def __init__(self, verdict):
        b, g, side = verdict.witnesses[0][:3]
        super(NotOpenError, self).__init__(
            "projection is not open: element %d at %s is missing on the %s"
            % (g, b, side))
        self.verdict = verdict


class InadmissibleFunctionError(ValueError):
    """A sheet function that is not a compactly supported continuous
    function on the total space"""

    def __init__(self, report):
        super(InadmissibleFunctionError, self).__init__(
            "inadmissible function\n%s" % report.format_text(1))
        self.report = report


class StepSubgroupBundle:
    """A piecewise-constant family of subgroups of one finite group

    :param ambient: the FiniteGroup F
    :param breakpoints: 0 = b_0 < ... < b_k = 1, Fractions or "p/q"
    :param pieces: k element sets, pieces[i] is the group on (b_i, b_i+1)
    :param points: k + 1 element sets, points[j] is the group at b_j
    """

    def __init__(self, ambient, breakpoints, pieces, points):
        if not isinstance(ambient, FiniteGroup):
            ambient = FiniteGroup(ambient)
        self.ambient = ambient
        self.breakpoints = tuple(as_fraction(_) for _ in breakpoints)
        self.pieces = tuple(frozenset(int(g) for g in _) for _ in pieces)
        self.points = tuple(frozenset(int(g) for g in _) for _ in points)

    @classmethod
    def constant(cls, ambient, elements=None):
        """The bundle with the same group everywhere on [0, 1]"""
        if elements is None:
            elements = ambient.elements
        return cls(ambient, (0, 1), [elements], [elements, elements])

    @property
    def n_pieces(self):
        return len(self.pieces)

    def piece_index(self, x):
        """Index of the open piece containing x, None at a breakpoint"""
        x = Fraction(x)
        if x in self.breakpoints:
            return None
        for i, (a, b) in enumerate(zip(self.breakpoints[:-1],
                                       self.breakpoints[1:])):
            if a < x < b:
                return i
        raise ValueError("x = %s is outside [0, 1]" % x)

    def fiber_at(self, x):
        x = Fraction(x)
        i = self.piece_index(x)
        if i is None:
            return self.points[self.breakpoints.index(x)]
        return self.pieces[i]

    def neighbors(self, j):
        """(side, piece index) pairs adjacent to the breakpoint b_j"""
        result = []
        if j > 0:
            result.append((LEFT, j - 1))
        if j < self.n_pieces:
            result.append((RIGHT, j))
        return result

    def indicator(self, g):
        """The function x -> 1 if g in G_x else 0"""
        return PiecewiseValue(
            self.breakpoints,
            [(Fraction(1),) if g in p else () for p in self.pieces],
            [Fraction(int(g in p)) for p in self.points])

    def __repr__(self):
        return "StepSubgroupBundle(%s, breakpoints=%s)" % (
            self.ambient.name, ", ".join(map(str, self.breakpoints)))


def validate_bundle(B):
    """Check breakpoints and that every listed set is a subgroup of F

    :returns: a Report. Breakpoint and shape problems are errors; subgroup
              failures are violations with code "identity", "closure",
              "inverse" or "range" and witness ("piece", i, ...) or
              ("point", b_j, ...) followed by the failing elements.
    """
    report = Report("validate_bundle")
    b = B.breakpoints
    if len(b) < 2 or b[0] != 0 or b[-1] != 1:
        report.add_error("breakpoints", "breakpoints must run from 0 to 1",
                         *b)
    for j, x in enumerate(b):
        if not 0 <= x <= 1:
            report.add_error("breakpoints", "breakpoint outside [0, 1]", j, x)
    for j in range(1, len(b)):
        if b[j - 1] >= b[j]:
            report.add_error("breakpoints",
                             "breakpoints must be strictly increasing",
                             j, b[j - 1], b[j])
    if len(B.pieces) != len(b) - 1 or len(B.points) != len(b):
        report.add_error("shape", "need one group per piece and per "
                         "breakpoint", len(b), len(B.pieces), len(B.points))
    for i, elements in enumerate(B.pieces):
        for kind, witness in B.ambient.subgroup_violations(elements):
            report.add_violation(kind, "piece group is not a subgroup",
                                 "piece", i, *witness)
    for j, elements in enumerate(B.points):
        where = b[j] if j < len(b) else j
        for kind, witness in B.ambient.subgroup_violations(elements):
            report.add_violation(kind, "point group is not a subgroup",
                                 "point", where, *witness)
    report.data.update(breakpoints=len(b), ambient=B.ambient.name)
    return report


class Verdict(typing.NamedTuple):
    """The outcome of a decision procedure

    witnesses are (b_j, g, side, ...) tuples; function is a witnessing
    SheetFunction when one is constructed.
    """
    name: str
    holds: bool
    witnesses: list
    function: typing.Any = None

    def __bool__(self):
        return self.holds

    def to_report(self):
        report = Report(self.name)
        for w in self.witnesses:
            report.add_violation(
                "not-open", "element of G_b missing from a neighboring "
                            "piece", *w)
        report.data["holds"] = self.holds
        return report


def is_open_projection(B):
    """Decide openness of the projection of a valid bundle

    :returns: a Verdict whose witnesses are (b_j, g, side) with g in the
              group at b_j but not in the piece on that side
    """
    witnesses = []
    for j, b in enumerate(B.breakpoints):
        for g in sorted(B.points[j]):
            for side, i in B.neighbors(j):
                if g not in B.pieces[i]:
                    witnesses.append((b, g, side))
    return Verdict("is_open_projection", not witnesses, witnesses)


class SheetFunction:
    """A function on the total space, one piecewise-linear sheet per g in F

    :param sheets: a mapping element -> PiecewiseValue; missing elements
           have the zero sheet
    """

    def __init__(self, sheets=None):
        self.sheets = {int(g): v for g, v in (sheets or {}).items()}

    @classmethod
    def from_graphs(cls, graphs):
        """From a mapping or sequence of (element, graph) pairs"""
        if isinstance(graphs, dict):
            graphs = graphs.items()
        return cls({g: PiecewiseValue.from_graph(graph)
                    for g, graph in graphs})

    def sheet(self, g):
        return self.sheets.get(int(g), PiecewiseValue.zero())

    def elements(self):
        return sorted(self.sheets)

    def __add__(self, other):
        keys = set(self.sheets) | set(other.sheets)
        return SheetFunction({g: self.sheet(g) + other.sheet(g)
                              for g in keys})

    def __mul__(self, c):
        return SheetFunction({g: v * Fraction(c)
                              for g, v in self.sheets.items()})

    __rmul__ = __mul__

    def to_graphs(self):
        return [[g, self.sheets[g].to_graph()] for g in self.elements()]

    def __repr__(self):
        return "SheetFunction(%s)" % self.elements()


def check_admissible(B, phi):
    """Check that a sheet function is continuous with compact support on G

    :returns: a Report with "continuity" violations (b, g, side, limit,
              value), "compact-support" violations (b, g, side) for
              sheets not vanishing next to a point where they leave G, and
              "unknown-element" errors
    """
    report = Report("check_admissible")
    for g in phi.elements():
        if not 0 <= g < B.ambient.order:
            report.add_error("unknown-element", "sheet of an element not in "
                             "the ambient group", g)
    if not report.ok:
        return report
    for g in phi.elements():
        sheet = phi.sheet(g).refine(B.breakpoints)
        for j, b in enumerate(B.breakpoints):
            value = sheet.evaluate(b)
            for side, i in B.neighbors(j):
                if g not in B.pieces[i]:
                    continue
                limit = sheet.left_limit(b) if side == LEFT else \
                    sheet.right_limit(b)
                if g in B.points[j]:
                    if limit != value:
                        report.add_violation(
                            "continuity", "sheet limit differs from the "
                            "value at the breakpoint", b, g, side, limit,
                            value)
                else:
                    k = sheet.knots.index(b)
                    piece = sheet.pieces[k - 1 if side == LEFT else k]
                    if piece:
                        report.add_violation(
                            "compact-support", "sheet does not vanish next "
                            "to a point where it leaves G", b, g, side)
        for i, elements in enumerate(B.pieces):
            if g not in elements:
                continue
            a, c = B.breakpoints[i], B.breakpoints[i + 1]
            for t in sheet.knots:
                if a < t < c:
                    left, value, right = sheet.limits(t)
                    if not left == value == right:
                        report.add_violation(
                            "continuity", "sheet jumps inside a piece",
                            t, g, "interior", left, value)
    return report


class ScaledHaarFamily:
    """The uniform Haar measure on each G_x scaled by scale(x)

    :param bundle: the StepSubgroupBundle
    :param scale: a positive piecewise-linear PiecewiseValue
    """

    def __init__(self, bundle, scale):
        self.bundle = bundle
        self.scale = scale

    def weight(self, x, g):
        if g not in self.bundle.fiber_at(x):
            return Fraction(0)
        return self.scale.evaluate(x)

    def measure_at(self, x):
        """The weights of the measure on G_x, element -> Fraction"""
        s = self.scale.evaluate(x)
        return {g: s for g in sorted(self.bundle.fiber_at(x))}


def as_scale(scale):
    if isinstance(scale, PiecewiseValue):
        return scale
    if isinstance(scale, (list, tuple)):
        return PiecewiseValue.from_graph(scale)
    return PiecewiseValue.constant(as_fraction(scale))


def unit_family(B):
    return ScaledHaarFamily(B, PiecewiseValue.constant(1))


def evaluate_family(B, family, phi):
    """The exact function x -> sum over g in G_x of weight(x, g) phi(x, g)

    :param B: a StepSubgroupBundle
    :param family: a ScaledHaarFamily on B
    :param phi: an admissible SheetFunction
    :returns: a PiecewiseValue, of degree up to 2
    :raises InadmissibleFunctionError: if phi fails check_admissible
    """
    report = check_admissible(B, phi)
    if not report.ok:
        raise InadmissibleFunctionError(report)
    total = PiecewiseValue.zero()
    for g in phi.elements():
        total = total + B.indicator(g) * phi.sheet(g)
    return (total * family.scale).refine(B.breakpoints)


def _tent(B, j):
    """A hat of height 1 at b_j reaching 0 halfway into each neighbor"""
    b = B.breakpoints
    graph = [(b[j], 1)]
    if j > 0:
        graph = [(0, 0), ((b[j - 1] + b[j]) / 2, 0)] + graph
    if j < len(b) - 1:
        graph += [((b[j] + b[j + 1]) / 2, 0), (1, 0)]
    return PiecewiseValue.from_graph(graph)


def coherent_exists(B):
    """Search for a test function on which the unit family jumps

    For each breakpoint b_j and each g in G_{b_j} the candidate is the tent
    of height 1 at b_j on the sheet of g. It is admissible, and its
    integral against any positive uniform family equals scale(b_j) at b_j
    but tends to 0 from a side on which g leaves the fiber. No coherent
    system exists exactly when some candidate jumps.

    :returns: a Verdict whose witnesses are (b_j, g, side, discrepancy) and
              whose function is the first jumping candidate
    """
    family = unit_family(B)
    witnesses = []
    function = None
    for j, b in enumerate(B.breakpoints):
        for g in sorted(B.points[j]):
            phi = SheetFunction({g: _tent(B, j)})
            value = evaluate_family(B, family, phi)
            report = verify_continuity(value, [b])
            if report.ok:
                continue
            left, mid, right = value.limits(b)
            for side, limit in ((LEFT, left), (RIGHT, right)):
                if limit is not None and limit != mid:
                    witnesses.append((b, g, side, mid - limit))
            if function is None:
                function = phi
    logger.debug("%r: %d jump witnesses", B, len(witnesses))
    return Verdict("coherent_exists", not witnesses, witnesses, function)


def build_coherent(B, scale=1):
    """The scaled uniform family on an open bundle

    :param B: a valid StepSubgroupBundle
    :param scale: a positive piecewise-linear scale, given as a constant,
           a graph list or a PiecewiseValue
    :returns: a ScaledHaarFamily
    :raises NotOpenError: with the coherent_exists witness if the
            projection is not open
    :raises ValueError: if the scale is not positive and continuous on
            [0, 1]
    """
    scale = as_scale(scale)
    if not scale.is_positive():
        raise ValueError("scale must be positive on [0, 1]")
    if not verify_continuity(scale).ok:
        raise ValueError("scale must be continuous on [0, 1]")
    if not is_open_projection(B):
        raise NotOpenError(coherent_exists(B))
    return ScaledHaarFamily(B, scale)
