"""Measures on finite fibers

A Radon measure on a finite discrete space is a nonnegative weight on each
point; it is identified with its positive linear functional
phi -> sum(weight(a) * phi(a)). Weights are exact Fractions.
"""

import collections.abc
import logging
from fractions import Fraction

import numpy as np

from .linalg import in_span, nullspace, satisfies
from .report import Report

logger = logging.getLogger("groupoid_haar.measures")


class FiberMeasure(collections.abc.Mapping):
    """Weights on finitely many arrows, arrow id -> Fraction

    Arrows without a weight have weight 0 for integration.
    """

    def __init__(self, weights=()):
        if isinstance(weights, collections.abc.Mapping):
            weights = weights.items()
        self.weights = {int(a): Fraction(w) for a, w in weights}

    def __getitem__(self, arrow):
        return self.weights[arrow]

    def __iter__(self):
        return iter(sorted(self.weights))

    def __len__(self):
        return len(self.weights)

    def weight(self, arrow):
        return self.weights.get(int(arrow), Fraction(0))

    def integrate(self, phi):
        """The integral of a function given as a mapping arrow -> value"""
        return sum((w * Fraction(phi.get(a, 0))
                    for a, w in self.weights.items()), Fraction(0))

    @property
    def total_mass(self):
        return sum(self.weights.values(), Fraction(0))

    def support(self):
        return sorted(a for a, w in self.weights.items() if w != 0)

    def scaled(self, factor):
        factor = Fraction(factor)
        return FiberMeasure({a: factor * w for a, w in self.weights.items()})

    def table(self):
        return [(a, self.weights[a]) for a in self]

    def __repr__(self):
        return "FiberMeasure(%s)" % ", ".join(
            "%d: %s" % (a, w) for a, w in self.table())


class CoherentSystem(collections.abc.Mapping):
    """A Haar measure on each isotropy group, object -> FiberMeasure"""

    def __init__(self, measures):
        if isinstance(measures, collections.abc.Mapping):
            measures = measures.items()
        self.measures = {int(x): m if isinstance(m, FiberMeasure)
                         else FiberMeasure(m) for x, m in measures}

    def __getitem__(self, x):
        return self.measures[x]

    def __iter__(self):
        return iter(sorted(self.measures))

    def __len__(self):
        return len(self.measures)

    def __repr__(self):
        return "CoherentSystem(%d fibers)" % len(self)


class ClassMeasure:
    """The measure on a class [g] pushed forward from the isotropy at s(g)

    :param members: the arrow ids of the class
    :param representative: the arrow g used to define the measure
    :param weights: a FiberMeasure supported on the class
    """

    def __init__(self, members, representative, weights):
        self.members = tuple(int(_) for _ in members)
        self.representative = int(representative)
        self.weights = weights

    def integrate(self, phi):
        return self.weights.integrate(phi)

    def __eq__(self, other):
        return isinstance(other, ClassMeasure) and \
            self.members == other.members and self.weights == other.weights


def haar_on_group(group, scale=1, embedding=None):
    """The Haar measure of a finite group with the given scale

    Haar measures on a finite group are the uniform ones.

    :param group: a FiniteGroup
    :param scale: the positive weight of each element
    :param embedding: optional map from group elements to arrow ids
    :returns: a FiberMeasure
    """
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("Haar scale must be positive, got %s" % scale)
    if embedding is None:
        embedding = range(group.order)
    return FiberMeasure({int(embedding[h]): scale for h in group.elements})


def uniform_coherent(bundle, scale=1):
    """The coherent system with uniform weights on every isotropy group

    :param bundle: an IsotropyBundle
    :param scale: a positive constant or a mapping object -> positive scale
    """
    measures = {}
    for x in bundle.base:
        s = scale[x] if isinstance(scale, collections.abc.Mapping) else scale
        group, embedding = bundle.fiber(x)
        measures[x] = haar_on_group(group, s, embedding)
    return CoherentSystem(measures)


def verify_group_invariance(group, embedding, measure, report, x=None):
    """Check left and right translation invariance of weights on a group

    Violations carry (x, translating arrow, translated arrow).
    """
    weights = np.array([measure.weight(embedding[h]) for h in group.elements],
                       dtype=object)
    table = group.table
    for h in group.elements:
        for k in group.elements:
            if weights[table[h, k]] != weights[k]:
                report.add_violation(
                    "left-invariance", "weight(hk) != weight(k)",
                    x, int(embedding[h]), int(embedding[k]))
            if weights[table[k, h]] != weights[k]:
                report.add_violation(
                    "right-invariance", "weight(kh) != weight(k)",
                    x, int(embedding[h]), int(embedding[k]))


def verify_coherent(system, bundle):
    """Check that a system is a Haar measure on every isotropy group

    :param system: a CoherentSystem
    :param bundle: the IsotropyBundle it should live on
    :returns: a Report with positivity and invariance violations,
              and missing fibers or stray weights as errors
    """
    report = Report("verify_coherent")
    for x in bundle.base:
        if x not in system:
            report.add_error("missing-fiber", "no measure on G_x^x", x)
            continue
        group, embedding = bundle.fiber(x)
        measure = system[x]
        members = set(embedding.tolist())
        for a in measure:
            if a not in members:
                report.add_error("domain", "weight outside G_x^x", x, a)
        for a in embedding.tolist():
            if measure.weight(a) <= 0:
                report.add_violation("positivity",
                                     "weight is not strictly positive", x, a)
        verify_group_invariance(group, embedding, measure, report, x)
    for x in system:
        if x not in bundle.base:
            report.add_error("unknown-object", "measure on unknown object", x)
    report.add_note("discrete base: x -> integral of phi over G_x^x is "
                    "continuous for every phi")
    return report


def class_measure(system, g, G):
    """The measure on [g] defined by weight(gh) = nu_{s(g)}(h)

    :param system: a CoherentSystem verified by verify_coherent
    :param g: an arrow id of G
    :param G: the FiniteGroupoid
    :returns: a ClassMeasure
    """
    x = int(G.src[g])
    nu = system[x]
    weights = {int(G.compose[g, h]): nu.weight(h)
               for h in G.isotropy(x).tolist()}
    return ClassMeasure(G.hom(x, int(G.dst[g])), g, FiberMeasure(weights))


def bar(phi, system, G, quotient):
    """The class-wise integral of phi as a function on the quotient

    bar(phi)([g]) = sum over h in G_{s(g)}^{s(g)} of nu_{s(g)}(h) phi(gh),
    evaluated at the representative of each class.

    :param phi: a mapping arrow id -> value (missing arrows are 0)
    :param system: a CoherentSystem
    :param G: the FiniteGroupoid
    :param quotient: the PrincipalQuotient of G
    :returns: a dict quotient arrow id -> Fraction
    """
    return {c: class_measure(system, int(g), G).integrate(phi)
            for c, g in enumerate(quotient.representative.tolist())}


def verify_unique_up_to_scale(G, system, g):
    """Check that the invariant measures on [g] form a line

    Solves w(kh) = w(k) for k in [g] and h in G_{s(g)}^{s(g)} exactly and
    checks that the class measure of g solves it and is also invariant
    under G_{r(g)}^{r(g)} from the left.

    :returns: a Report with data["dimension"]
    """
    report = Report("verify_unique_up_to_scale")
    x, y = int(G.src[g]), int(G.dst[g])
    members = G.hom(x, y).tolist()
    position = {a: i for i, a in enumerate(members)}
    equations = []
    for k in members:
        for h in G.isotropy(x).tolist():
            kh = int(G.compose[k, h])
            if kh != k:
                equations.append({position[kh]: 1, position[k]: -1})
    basis = nullspace(equations, len(members))
    report.data.update(arrow=g, class_size=len(members),
                       dimension=len(basis))
    if len(basis) != 1:
        report.add_violation("dimension",
                             "invariant measures on [g] are not unique up "
                             "to scale", g, len(basis))
    measure = class_measure(system, g, G).weights
    vector = tuple(measure.weight(a) for a in members)
    if not satisfies(equations, vector):
        report.add_violation("not-invariant",
                             "class measure is not right-invariant", g)
    if not in_span(basis, vector):
        report.add_violation("not-in-span",
                             "class measure outside the solution space", g)
    for h in G.isotropy(y).tolist():
        for k in members:
            hk = int(G.compose[h, k])
            if measure.weight(hk) != measure.weight(k):
                report.add_violation("left-invariance",
                                     "class measure is not left-invariant "
                                     "under the isotropy at r(g)", g, h, k)
    return report
