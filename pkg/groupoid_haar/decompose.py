"""Stability groupoid, orbit relation and principal quotient

For a groupoid G over X:

* the stability groupoid G' is the bundle of isotropy groups G_x^x,
* the orbit relation E(G) relates s(g) and r(g) for every arrow g,
* the principal quotient identifies arrows with the same range and source,
  [g] = G_{s(g)}^{r(g)}, with [g][h] = [gh].

The quotient of a finite groupoid carries the discrete topology, the same
as its image in X x X, so no separate topology is computed for it.
"""

import logging

import numpy as np

from .groupoid import FiberKind, FiniteGroupoid, UNDEFINED, fiber, \
    restrict, translation_action, validate_groupoid
from .groups import FiniteGroup
from .report import Report
from .union_find import find_orbits

logger = logging.getLogger("groupoid_haar.decompose")


class QuotientInconsistencyError(RuntimeError):
    """The class composition [g][h] = [gh] is not well defined

    This can only happen for an input that is not a groupoid, or from a bug.
    """

    def __init__(self, message, report):
        super(QuotientInconsistencyError, self).__init__(
            "%s\n%s" % (message, report.format_text(1)))
        self.report = report


class IsotropyBundle:
    """The isotropy groups G_x^x of a groupoid

    :param groupoid: the FiniteGroupoid G
    :param fibers: fibers[x] is the sorted array of arrow ids of G_x^x
    :param groups: groups[x] is the FiniteGroup on 0..|G_x^x|-1 whose
           element i is the arrow fibers[x][i]
    """

    def __init__(self, groupoid, fibers, groups):
        self.groupoid = groupoid
        self.fibers = fibers
        self.groups = groups

    @property
    def base(self):
        return range(self.groupoid.n_objects)

    def fiber(self, x):
        """(group, embedding) for the object x"""
        return self.groups[x], self.fibers[x]

    def arrow_ids(self):
        if not self.fibers:
            return np.zeros(0, np.int64)
        return np.sort(np.concatenate(self.fibers))

    def position(self, x, arrow):
        """The group element of G_x^x corresponding to an arrow"""
        return int(np.searchsorted(self.fibers[x], arrow))

    def as_groupoid(self):
        """G' as a FiniteGroupoid and its embedding into G"""
        return restrict(self.groupoid, self.arrow_ids())

    def structure_names(self):
        return [g.structure_name() for g in self.groups]


def stability_groupoid(G):
    """The stability groupoid G' = {g : r(g) = s(g)}

    :param G: a valid FiniteGroupoid
    :returns: an IsotropyBundle
    """
    position = np.full(G.n_arrows, UNDEFINED, np.int64)
    fibers, groups = [], []
    for x in G.objects:
        ids = G.isotropy(x)
        position[ids] = np.arange(len(ids))
        table = position[G.compose[ids[:, None], ids[None, :]]]
        groups.append(FiniteGroup(table))
        fibers.append(ids)
    logger.debug("isotropy orders %s", [len(_) for _ in fibers])
    return IsotropyBundle(G, fibers, groups)


class OrbitPartition:
    """The orbit equivalence relation E(G) on the objects

    :param classes: sorted list of sorted tuples of objects
    :param n_objects: the number of objects
    """

    def __init__(self, classes, n_objects):
        self.classes = classes
        self.class_index = np.zeros(n_objects, np.int64)
        for i, c in enumerate(classes):
            self.class_index[list(c)] = i

    def related(self, x, y):
        return bool(self.class_index[x] == self.class_index[y])

    def orbit(self, x):
        return self.classes[self.class_index[x]]

    def pairs(self):
        return {(x, y) for c in self.classes for x in c for y in c}


def orbit_partition(G):
    """Classes of objects joined by an arrow, by union-find"""
    classes = find_orbits(zip(G.src.tolist(), G.dst.tolist()), G.objects)
    return OrbitPartition(classes, G.n_objects)


class PrincipalQuotient:
    """The principal groupoid G/~ and its class map

    :param groupoid: the FiniteGroupoid G
    :param quotient: the principal FiniteGroupoid of classes
    :param class_of: class_of[g] is the quotient arrow of g
    :param representative: representative[c] is the arrow of minimal id in
           the class c
    :param report: the Report of the well-definedness and axiom checks
    """

    def __init__(self, groupoid, quotient, class_of, representative, report):
        self.groupoid = groupoid
        self.quotient = quotient
        self.class_of = class_of
        self.representative = representative
        self.report = report

    def members(self, c):
        return np.flatnonzero(self.class_of == c)


def quotient_principal(G):
    """Collapse each G_x^y to one arrow

    Quotient arrows are numbered in increasing order of their
    representatives (the smallest arrow id in each class).

    :param G: a valid FiniteGroupoid
    :returns: a PrincipalQuotient
    :raises QuotientInconsistencyError: if [g][h] = [gh] is not well
            defined or the quotient fails the groupoid axioms
    """
    n_obj = G.n_objects
    keys = G.dst * n_obj + G.src
    unique_keys, first = np.unique(keys, return_index=True)
    order = np.argsort(first, kind="stable")
    representative = first[order].astype(np.int64)
    rank = np.empty(len(order), np.int64)
    rank[order] = np.arange(len(order))
    class_of = rank[np.searchsorted(unique_keys, keys)]
    qsrc = G.src[representative]
    qdst = G.dst[representative]
    products = G.compose[representative[:, None], representative[None, :]]
    defined = products != UNDEFINED
    compose = np.where(defined, class_of[np.where(defined, products, 0)],
                       UNDEFINED)
    quotient = FiniteGroupoid(
        n_obj, qsrc, qdst, compose,
        inverse=class_of[G.inverse[representative]],
        identity=class_of[G.identity],
        labels=["[%d<-%d]" % (y, x) for x, y in zip(qsrc, qdst)])
    report = Report("quotient_principal")
    #
    # [g][h] = [gh] for every composable pair, not just representatives
    #
    pairs = np.argwhere(G.compose != UNDEFINED)
    if len(pairs) > 0:
        g, h = pairs[:, 0], pairs[:, 1]
        lhs = class_of[G.compose[g, h]]
        rhs = compose[class_of[g], class_of[h]]
        for i in np.flatnonzero(lhs != rhs):
            report.add_violation("well-defined", "[g][h] != [gh]",
                                 int(g[i]), int(h[i]))
    report.data["pairs_checked"] = len(pairs)
    report.extend(validate_groupoid(quotient), prefix="quotient")
    for x in quotient.objects:
        if len(quotient.isotropy(x)) != 1:
            report.add_violation("principal", "nontrivial quotient isotropy",
                                 x)
    if not report.ok:
        raise QuotientInconsistencyError(
            "principal quotient is inconsistent", report)
    report.data.update(classes=quotient.n_arrows)
    logger.debug("quotient of %r has %d classes", G, quotient.n_arrows)
    return PrincipalQuotient(G, quotient, class_of, representative, report)


def class_of(G, g):
    """The class [g] = G_{s(g)}^{r(g)} as a tuple of Arrows"""
    arrow = G.arrow(g)
    return fiber(G, arrow.src, FiberKind.BOTH, arrow.dst)


def isotropy_action(G, bundle=None):
    """The free right action of G' on the arrows of G by translation

    :param G: a valid FiniteGroupoid
    :param bundle: the IsotropyBundle of G, computed if not given
    """
    if bundle is None:
        bundle = stability_groupoid(G)
    sub, embedding = bundle.as_groupoid()
    return translation_action(G, sub, embedding)


def decompose_report(G):
    """Summarize the decomposition of G for the command line

    :returns: a Report listing isotropy types, orbit classes, the quotient
              size and the outcome of the well-definedness check
    """
    report = Report("decompose")
    bundle = stability_groupoid(G)
    orbits = orbit_partition(G)
    try:
        quotient = quotient_principal(G)
    except QuotientInconsistencyError as e:
        report.extend(e.report)
        return report
    report.data.update(
        isotropy=[dict(object=x, order=len(bundle.fibers[x]),
                       type=bundle.groups[x].structure_name())
                  for x in G.objects],
        orbits=[list(_) for _ in orbits.classes],
        quotient_arrows=quotient.quotient.n_arrows,
        principal=G.is_principal(),
        well_defined=quotient.report.ok,
        pairs_checked=quotient.report.data["pairs_checked"])
    report.add_note("quotient topology is discrete, as is that of E(G)")
    return report
