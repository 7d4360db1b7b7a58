"""Haar systems on finite groupoids

A Haar system on G is a family of measures mu^x on the range fibers G^x with

(a) support exactly G^x, that is every arrow has strictly positive weight,
(b) left invariance, mu^x(alpha g) = mu^y(g) for alpha in G_y^x, g in G^y,
(c) continuity of x -> mu^x(phi), vacuous for a discrete groupoid.

Condition (b) is checked pointwise on weights. Left translation by alpha
maps G^y bijectively onto G^x, so pointwise equality is the same as the
equality of all integrals and gives the smallest possible witnesses.

The synthesis assembles a Haar system on G from a coherent system nu on the
isotropy groups and a Haar system m on the principal quotient:

    mu^x(phi) = sum over classes c in Gbar^x of m^x(c) * bar(phi)(c)

which gives the arrow k the weight m(class(k)) * nu_{s(k)}(g^-1 k) where g
is the representative of the class of k.
"""

import collections.abc
import logging
from fractions import Fraction

import numpy as np

from .decompose import quotient_principal, stability_groupoid
from .groupoid import MAX_WITNESSES, UNDEFINED
from .linalg import in_span, nullspace
from .measures import FiberMeasure, bar, verify_coherent
from .report import PreconditionError, Report

logger = logging.getLogger("groupoid_haar.haar")


class HaarSystem(collections.abc.Mapping):
    """A candidate Haar system, object x -> FiberMeasure on G^x

    The measures are stored as given; use verify_haar to check the axioms.

    :param groupoid: the FiniteGroupoid the system lives on
    :param measures: a mapping or sequence of (x, measure) pairs
    """

    def __init__(self, groupoid, measures):
        self.groupoid = groupoid
        if isinstance(measures, collections.abc.Mapping):
            measures = measures.items()
        self.measures = {int(x): m if isinstance(m, FiberMeasure)
                         else FiberMeasure(m) for x, m in measures}

    @classmethod
    def from_weights(cls, groupoid, weights):
        """Build a system from one weight per arrow of the groupoid

        The weight of the arrow a goes to the measure on G^{r(a)}.
        """
        weights = list(weights)
        return cls(groupoid, {
            x: FiberMeasure({a: weights[a]
                             for a in groupoid.range_fiber(x).tolist()})
            for x in groupoid.objects})

    def __getitem__(self, x):
        return self.measures[x]

    def __iter__(self):
        return iter(sorted(self.measures))

    def __len__(self):
        return len(self.measures)

    def weight(self, arrow):
        """The weight of an arrow in the measure on its range fiber"""
        x = int(self.groupoid.dst[arrow])
        if x not in self.measures:
            return Fraction(0)
        return self.measures[x].weight(arrow)

    def weights(self):
        return np.array(self.vector(), dtype=object)

    def vector(self):
        return tuple(self.weight(a) for a in range(self.groupoid.n_arrows))

    def table(self):
        return tuple((x, tuple(self.measures[x].table())) for x in self)

    def integrate(self, x, phi):
        return self.measures[x].integrate(phi)

    def __eq__(self, other):
        if not isinstance(other, HaarSystem):
            return NotImplemented
        return self.table() == other.table()

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, self.groupoid)


class PrincipalHaar(HaarSystem):
    """A Haar system on the principal quotient of a groupoid

    :param quotient: the PrincipalQuotient whose quotient groupoid carries
           the measures
    :param measures: object x -> FiberMeasure on the quotient arrows with
           range x
    """

    def __init__(self, quotient, measures):
        super(PrincipalHaar, self).__init__(quotient.quotient, measures)
        self.quotient = quotient


def counting_system(G, scale=1):
    """Weight scale on every arrow; always a Haar system on a finite G"""
    return HaarSystem.from_weights(G, [Fraction(scale)] * G.n_arrows)


def _check_domain(G, system, report):
    for x in G.objects:
        if x not in system:
            report.add_error("missing-fiber", "no measure on G^x", x)
            continue
        for a in system[x]:
            if not 0 <= a < G.n_arrows or int(G.dst[a]) != x:
                report.add_error("domain", "weight on an arrow outside G^x",
                                 x, a)
    for x in system:
        if not 0 <= x < G.n_objects:
            report.add_error("unknown-object", "measure on unknown object", x)


def verify_haar(G, system):
    """Check the Haar system axioms exactly

    :param G: a valid FiniteGroupoid
    :param system: a HaarSystem (or any mapping object -> FiberMeasure)
    :returns: a Report. Domain mismatches are errors and suppress the
              axiom checks; "support" violations carry (x, arrow) and
              "invariance" violations carry (alpha, g).
    """
    report = Report("verify_haar")
    _check_domain(G, system, report)
    report.data.update(objects=G.n_objects, arrows=G.n_arrows)
    if not report.ok:
        return report
    w = [system[int(G.dst[a])].weight(a) for a in range(G.n_arrows)]
    for a in range(G.n_arrows):
        if w[a] <= 0:
            report.add_violation("support", "mu^x vanishes on an arrow of G^x",
                                 int(G.dst[a]), a)
    pairs = np.argwhere(G.compose != UNDEFINED)
    n_bad = 0
    for alpha, g in pairs.tolist():
        if w[G.compose[alpha, g]] != w[g]:
            n_bad += 1
            if n_bad <= MAX_WITNESSES:
                report.add_violation("invariance",
                                     "mu^x(alpha g) != mu^y(g)", alpha, g)
    if n_bad > MAX_WITNESSES:
        report.add_note("invariance: %d further witnesses omitted" %
                        (n_bad - MAX_WITNESSES))
    report.data["pairs_checked"] = len(pairs)
    report.add_note("discrete groupoid: x -> mu^x(phi) is continuous for "
                    "every phi")
    return report


def principal_haar_from_lambda(quotient, lam):
    """The Haar system on a principal quotient with source weights lam

    On a principal groupoid condition (b) forces the weight of the arrow
    from y to x to depend on y alone.

    :param quotient: a PrincipalQuotient
    :param lam: a mapping or sequence object -> positive rational
    :returns: a PrincipalHaar
    :raises ValueError: if some lam(x) is missing or not positive
    """
    Q = quotient.quotient
    values = {}
    for x in Q.objects:
        try:
            values[x] = Fraction(lam[x])
        except (KeyError, IndexError):
            raise ValueError("lambda has no value at object %d" % x)
        if values[x] <= 0:
            raise ValueError("lambda must be positive, got %s at object %d"
                             % (values[x], x))
    measures = {x: FiberMeasure({c: values[int(Q.src[c])]
                                 for c in Q.range_fiber(x).tolist()})
                for x in Q.objects}
    return PrincipalHaar(quotient, measures)


def _check_preconditions(G, nu, m, quotient):
    bundle = stability_groupoid(G)
    report = verify_coherent(nu, bundle)
    if not report.ok:
        raise PreconditionError("nu is not a coherent system on G'", report)
    report = Report("synthesize_haar")
    if not isinstance(m, PrincipalHaar) or \
            m.groupoid != quotient.quotient:
        report.add_error("quotient-mismatch",
                         "m does not live on the computed principal quotient")
        raise PreconditionError("m must be a Haar system on the quotient",
                                report)
    report = verify_haar(quotient.quotient, m)
    if not report.ok:
        raise PreconditionError("m is not a Haar system on the quotient",
                                report)


def synthesize_haar(G, nu, m, representatives=None):
    """Assemble a Haar system on G from nu on G' and m on the quotient

    :param G: a valid FiniteGroupoid
    :param nu: a CoherentSystem passing verify_coherent
    :param m: a PrincipalHaar on the principal quotient of G passing
              verify_haar
    :param representatives: optional override, one arrow per quotient
           arrow, used instead of the minimal-id representatives
    :returns: a HaarSystem on G
    :raises PreconditionError: with the failing report if nu or m do not
            satisfy their preconditions
    """
    quotient = m.quotient if isinstance(m, PrincipalHaar) and \
        m.quotient.groupoid is G else quotient_principal(G)
    _check_preconditions(G, nu, m, quotient)
    if representatives is None:
        representatives = quotient.representative
    representatives = np.asarray(representatives, np.int64)
    if len(representatives) != quotient.quotient.n_arrows or np.any(
            quotient.class_of[representatives] !=
            np.arange(len(representatives))):
        raise ValueError("representatives must pick one arrow per class")
    weights = []
    for k in range(G.n_arrows):
        c = int(quotient.class_of[k])
        g = int(representatives[c])
        h = int(G.compose[G.inverse[g], k])
        weights.append(m.weight(c) * nu[int(G.src[k])].weight(h))
    logger.debug("synthesized a Haar system on %r", G)
    return HaarSystem.from_weights(G, weights)


def synthesized_integral(G, nu, m, phi, x):
    """The integral of phi against the synthesized measure on G^x

    Evaluated in its integral form, as the sum over quotient arrows c with
    range x of m^x(c) * bar(phi)(c).
    """
    values = bar(phi, nu, G, m.quotient)
    return sum((m.weight(c) * values[c]
                for c in m.groupoid.range_fiber(x).tolist()), Fraction(0))


class InvariantSpace:
    """The linear span of the weight families satisfying condition (b)

    :param groupoid: the FiniteGroupoid
    :param basis: basis vectors, each one weight per arrow
    """

    def __init__(self, groupoid, basis):
        self.groupoid = groupoid
        self.basis = basis

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def positive(self):
        """Per basis vector, True if every weight is strictly positive"""
        return tuple(all(_ > 0 for _ in b) for b in self.basis)

    def contains(self, system):
        """True if the weights of a system solve condition (b)"""
        if isinstance(system, HaarSystem):
            system = system.vector()
        return in_span(self.basis, tuple(system))

    def report(self):
        report = Report("enumerate_invariant_systems")
        report.data.update(dimension=self.dimension,
                           basis=[list(_) for _ in self.basis],
                           positive=list(self.positive))
        report.add_note("the Haar systems are the strictly positive "
                        "vectors of this span")
        return report


def enumerate_invariant_systems(G):
    """Solve condition (b) exactly over every composable (alpha, g)

    The unknowns are the arrow weights w(k) of mu^{r(k)}.

    :param G: a valid FiniteGroupoid
    :returns: an InvariantSpace
    """
    equations = [{int(G.compose[alpha, g]): 1, g: -1}
                 for alpha, g in np.argwhere(G.compose != UNDEFINED).tolist()
                 if G.compose[alpha, g] != g]
    basis = nullspace(equations, G.n_arrows)
    logger.debug("%r: invariant families span dimension %d", G, len(basis))
    return InvariantSpace(G, basis)


def support_check(G, candidate):
    """The pairs (x, arrow) with the arrow in G^x but of weight zero

    The list is empty exactly when condition (a) holds.
    """
    missing = []
    for x in G.objects:
        measure = candidate.get(x, FiberMeasure())
        for a in G.range_fiber(x).tolist():
            if measure.weight(a) == 0:
                missing.append((x, a))
    return missing


def range_map_openness(G):
    """Record the open-range-map condition for a finite groupoid

    The range and source maps of a discrete groupoid are open, and the
    counting measures always form a Haar system, so the support condition
    cannot fail here. The report verifies the counting system as evidence.
    """
    report = Report("range_map_openness")
    report.extend(verify_haar(G, counting_system(G)), prefix="counting")
    report.data.update(range_fiber_sizes=[len(G.range_fiber(x))
                                          for x in G.objects])
    report.add_note("discrete groupoid: r and s are open maps")
    report.add_note("support failure needs non-discrete spaces such as an "
                    "uncountable one-point compactification; not realizable "
                    "for finite groupoids")
    return report
