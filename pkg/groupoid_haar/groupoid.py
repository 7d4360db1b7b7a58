"""Finite groupoids and groupoid actions

A FiniteGroupoid over the objects 0..n-1 stores its arrows as dense integer
ids with numpy tables for the structure maps:

* src[a] = s(a), dst[a] = r(a)
* compose[a, b] = ab when s(a) = r(b), otherwise -1
* inverse[a] = a^-1
* identity[x] = the identity arrow at x

Finite groupoids carry the discrete topology, so all continuity and
openness conditions on the structure maps hold trivially.
"""

import enum
import logging
import typing

import numpy as np

from .groups import FiniteGroup, GroupTableError
from .report import Report
from .union_find import find_orbits

logger = logging.getLogger("groupoid_haar.groupoid")

UNDEFINED = -1
MAX_WITNESSES = 50


class Arrow(typing.NamedTuple):
    id: int
    src: int
    dst: int


class FiberKind(enum.Enum):
    SOURCE = "source"
    RANGE = "range"
    BOTH = "both"


class MalformedTableError(ValueError):
    """A table refers to arrows or objects that do not exist"""

    def __init__(self, message, references=()):
        super(MalformedTableError, self).__init__(message)
        self.references = list(references)


class ActionError(ValueError):
    """A map that is not a groupoid or group action"""

    def __init__(self, message, witness=()):
        super(ActionError, self).__init__(
            "%s (witness: %s)" % (message, ", ".join(map(str, witness))))
        self.witness = tuple(witness)


class FiniteGroupoid:

    def __init__(self, n_objects, src, dst, compose, inverse, identity,
                 labels=None):
        """A groupoid given by explicit tables

        The tables are stored as given; use validate_groupoid to check the
        axioms.

        :param n_objects: the number of objects
        :param src: source object of each arrow
        :param dst: range object of each arrow
        :param compose: |G| x |G| table, compose[a, b] = ab or -1
        :param inverse: inverse arrow of each arrow
        :param identity: identity arrow of each object
        :param labels: optional display labels for the arrows
        """
        self.n_objects = int(n_objects)
        self.src = np.asarray(src, dtype=np.int64).reshape(-1)
        self.dst = np.asarray(dst, dtype=np.int64).reshape(-1)
        n = len(self.src)
        self.compose = np.asarray(compose, dtype=np.int64).reshape(n, n)
        self.inverse = np.asarray(inverse, dtype=np.int64).reshape(-1)
        self.identity = np.asarray(identity, dtype=np.int64).reshape(-1)
        self.labels = list(labels) if labels is not None else \
            [str(_) for _ in range(n)]
        self._range_fibers = None
        self._source_fibers = None

    @classmethod
    def from_tables(cls, n_objects, arrows, compose, inverse, identity,
                    labels=None):
        """Build a groupoid from sparse tables

        :param n_objects: the number of objects
        :param arrows: a sequence of (id, src, dst)
        :param compose: a sequence of (a, b, ab) triples
        :param inverse: a sequence of (a, a^-1) pairs
        :param identity: a sequence of (x, identity arrow) pairs
        :raises MalformedTableError: for ids that are not dense, and
                entries referencing unknown arrows or objects
        """
        problems = []
        arrows = [tuple(int(_) for _ in a) for a in arrows]
        n = len(arrows)
        ids = sorted(a[0] for a in arrows)
        if ids != list(range(n)):
            problems.append(("arrows", "arrow ids are not dense: %s" % ids))
        src = np.zeros(n, np.int64)
        dst = np.zeros(n, np.int64)
        for a, s, d in arrows:
            if 0 <= a < n:
                src[a], dst[a] = s, d
            for x in (s, d):
                if not 0 <= x < n_objects:
                    problems.append(("arrows", "arrow %d: unknown object %d"
                                     % (a, x)))
        table = np.full((n, n), UNDEFINED, np.int64)
        for a, b, c in compose:
            bad = [_ for _ in (a, b, c) if not 0 <= _ < n]
            if bad:
                problems.append(("compose", "entry (%d, %d, %d): unknown "
                                 "arrow %d" % (a, b, c, bad[0])))
            else:
                table[a, b] = c
        inv = np.full(n, UNDEFINED, np.int64)
        for a, b in inverse:
            bad = [_ for _ in (a, b) if not 0 <= _ < n]
            if bad:
                problems.append(("inverse", "entry (%d, %d): unknown arrow "
                                 "%d" % (a, b, bad[0])))
            else:
                inv[a] = b
        ident = np.full(n_objects, UNDEFINED, np.int64)
        for x, a in identity:
            if not 0 <= x < n_objects:
                problems.append(("identity", "entry (%d, %d): unknown "
                                 "object %d" % (x, a, x)))
            elif not 0 <= a < n:
                problems.append(("identity", "entry (%d, %d): unknown "
                                 "arrow %d" % (x, a, a)))
            else:
                ident[x] = a
        if problems:
            raise MalformedTableError(
                "; ".join(_[1] for _ in problems), problems)
        return cls(n_objects, src, dst, table, inv, ident, labels=labels)

    @property
    def n_arrows(self):
        return len(self.src)

    @property
    def objects(self):
        return range(self.n_objects)

    def arrow(self, a):
        return Arrow(int(a), int(self.src[a]), int(self.dst[a]))

    @property
    def arrows(self):
        return [self.arrow(a) for a in range(self.n_arrows)]

    def label(self, a):
        return self.labels[a]

    def mul(self, a, b):
        """The product ab, or None if a and b are not composable"""
        c = int(self.compose[a, b])
        return None if c == UNDEFINED else c

    def _index_fibers(self):
        order = np.argsort(self.dst, kind="stable")
        self._range_fibers = [order[self.dst[order] == x]
                              for x in range(self.n_objects)]
        order = np.argsort(self.src, kind="stable")
        self._source_fibers = [order[self.src[order] == x]
                               for x in range(self.n_objects)]

    def range_fiber(self, x):
        """Arrow ids of G^x (range x), sorted"""
        if self._range_fibers is None:
            self._index_fibers()
        return self._range_fibers[x]

    def source_fiber(self, x):
        if self._source_fibers is None:
            self._index_fibers()
        return self._source_fibers[x]

    def hom(self, x, y):
        """Arrow ids of G_x^y, the arrows from x to y"""
        fiber = self.source_fiber(x)
        return fiber[self.dst[fiber] == y]

    def isotropy(self, x):
        return self.hom(x, x)

    def is_principal(self):
        return all(len(self.isotropy(x)) == 1 for x in self.objects)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return self.n_objects == other.n_objects and \
            np.array_equal(self.src, other.src) and \
            np.array_equal(self.dst, other.dst) and \
            np.array_equal(self.compose, other.compose) and \
            np.array_equal(self.inverse, other.inverse) and \
            np.array_equal(self.identity, other.identity)

    def __repr__(self):
        return "FiniteGroupoid(%d objects, %d arrows)" % (
            self.n_objects, self.n_arrows)


def _check_malformed(G, report):
    n = G.n_arrows
    for a in range(n):
        for label, x in (("src", G.src[a]), ("dst", G.dst[a])):
            if not 0 <= x < G.n_objects:
                report.add_error("malformed-%s" % label,
                                 "arrow %d has unknown %s object" % (a, label),
                                 a, int(x))
    for a, b in np.argwhere((G.compose < UNDEFINED) | (G.compose >= n)):
        report.add_error("malformed-compose",
                         "composition refers to an unknown arrow",
                         int(a), int(b), int(G.compose[a, b]))
    if len(G.inverse) != n:
        report.add_error("malformed-inverse",
                         "inverse table has the wrong length",
                         len(G.inverse))
    else:
        for a in np.flatnonzero((G.inverse < 0) | (G.inverse >= n)):
            report.add_error("malformed-inverse",
                             "inverse refers to an unknown arrow",
                             int(a), int(G.inverse[a]))
    if len(G.identity) != G.n_objects:
        report.add_error("malformed-identity",
                         "identity table has the wrong length",
                         len(G.identity))
    else:
        for x in np.flatnonzero((G.identity < 0) | (G.identity >= n)):
            report.add_error("malformed-identity",
                             "identity refers to an unknown arrow",
                             int(x), int(G.identity[x]))


def _add_capped(report, code, message, witnesses):
    for w in witnesses[:MAX_WITNESSES]:
        report.add_violation(code, message, *[int(_) for _ in w])
    if len(witnesses) > MAX_WITNESSES:
        report.add_note("%s: %d further witnesses omitted" % (
            code, len(witnesses) - MAX_WITNESSES))


def validate_groupoid(G):
    """Check every groupoid axiom exhaustively

    Structural problems (references to arrows or objects that do not exist)
    are reported as errors and suppress the axiom checks. Otherwise every
    violated axiom is reported with its witnessing arrows.

    :param G: a FiniteGroupoid
    :returns: a Report, ok if and only if G is a groupoid
    """
    report = Report("validate_groupoid")
    report.data.update(objects=G.n_objects, arrows=G.n_arrows)
    _check_malformed(G, report)
    if report.errors:
        return report
    n = G.n_arrows
    C = G.compose
    src, dst = G.src, G.dst
    defined = C != UNDEFINED
    composable = src[:, None] == dst[None, :]
    _add_capped(report, "compose-undefined",
                "composable pair without a product",
                np.argwhere(composable & ~defined).tolist())
    _add_capped(report, "compose-not-composable",
                "product defined although s(a) != r(b)",
                np.argwhere(defined & ~composable).tolist())
    both = defined & composable
    ab = np.where(both, C, 0)
    bad = both & ((dst[ab] != dst[:, None]) | (src[ab] != src[None, :]))
    _add_capped(report, "compose-endpoints",
                "r(ab) != r(a) or s(ab) != s(b)",
                [(a, b, C[a, b]) for a, b in np.argwhere(bad)])
    #
    # Associativity, one left factor at a time
    #
    witnesses = []
    n_triples = 0
    arange = np.arange(n)
    for a in range(n):
        row = C[a]
        bs = np.flatnonzero(row != UNDEFINED)
        if len(bs) == 0:
            continue
        bc = C[bs]
        mask = bc != UNDEFINED
        n_triples += int(mask.sum())
        left = C[row[bs][:, None], arange[None, :]]
        right = np.where(mask, C[a, np.where(mask, bc, 0)], UNDEFINED)
        for i, c in np.argwhere(mask & (left != right)):
            witnesses.append((a, bs[i], c))
    _add_capped(report, "associativity", "(ab)c != a(bc)", witnesses)
    report.data["triples_checked"] = n_triples
    #
    # Identities
    #
    ident = G.identity
    for x in range(G.n_objects):
        e = ident[x]
        if src[e] != x or dst[e] != x:
            report.add_violation("identity-endpoints",
                                 "identity arrow is not a loop at its object",
                                 x, int(e))
    left_unit = C[ident[dst], arange]
    right_unit = C[arange, ident[src]]
    _add_capped(report, "identity-left", "identity(r(a)) a != a",
                [(a,) for a in np.flatnonzero(left_unit != arange)])
    _add_capped(report, "identity-right", "a identity(s(a)) != a",
                [(a,) for a in np.flatnonzero(right_unit != arange)])
    #
    # Inverses
    #
    inv = G.inverse
    _add_capped(report, "inverse-endpoints",
                "r(inverse(a)) != s(a) or s(inverse(a)) != r(a)",
                [(a, inv[a]) for a in np.flatnonzero(
                    (dst[inv] != src) | (src[inv] != dst))])
    _add_capped(report, "inverse-right",
                "a inverse(a) != identity(r(a))",
                [(a, inv[a]) for a in np.flatnonzero(
                    C[arange, inv] != ident[dst])])
    _add_capped(report, "inverse-left",
                "inverse(a) a != identity(s(a))",
                [(a, inv[a]) for a in np.flatnonzero(
                    C[inv, arange] != ident[src])])
    report.add_note("discrete topology: continuity of r, s, identity, "
                    "composition and inverse holds vacuously")
    logger.debug("validated %r, %d composable triples", G, n_triples)
    return report


def pair_groupoid(n):
    """The pair groupoid on n objects

    Arrows are the ordered pairs (x, y) with r(x, y) = x, s(x, y) = y and
    (x, y)(y, z) = (x, z). The pair (x, y) has id x * n + y.

    :param n: the number of objects, at least 1
    """
    if n < 1:
        raise ValueError("pair groupoid needs at least one object, got %d" % n)
    ids = np.arange(n * n)
    dst, src = ids // n, ids % n
    compose = np.where(src[:, None] == dst[None, :],
                       dst[:, None] * n + src[None, :], UNDEFINED)
    return FiniteGroupoid(
        n, src, dst, compose,
        inverse=src * n + dst,
        identity=np.arange(n) * (n + 1),
        labels=["(%d,%d)" % (x, y) for x, y in zip(dst, src)])


def _as_group(group):
    if isinstance(group, FiniteGroup):
        return group
    return FiniteGroup(group)


def group_bundle(groups):
    """A bundle of groups, one object per group

    :param groups: a sequence of FiniteGroups or Cayley tables
    :raises GroupTableError: if a table is not a group
    """
    groups = [_as_group(_) for _ in groups]
    orders = np.array([g.order for g in groups], np.int64)
    offsets = np.concatenate([[0], np.cumsum(orders)]).astype(np.int64)
    n = int(offsets[-1])
    src = np.repeat(np.arange(len(groups)), orders).astype(np.int64)
    compose = np.full((n, n), UNDEFINED, np.int64)
    inverse = np.zeros(n, np.int64)
    identity = np.zeros(len(groups), np.int64)
    labels = []
    for x, (group, offset) in enumerate(zip(groups, offsets)):
        block = slice(offset, offset + group.order)
        compose[block, block] = group.table + offset
        inverse[block] = group.inverse + offset
        identity[x] = offset + group.identity
        labels += ["%d:%d" % (x, h) for h in group.elements]
    return FiniteGroupoid(len(groups), src, src.copy(), compose, inverse,
                          identity, labels=labels)


def action_groupoid(group, n_points, act):
    """The groupoid of a right action of a finite group on a finite set

    The arrow (x, h) has id x * |H| + h, range x and source x.h, and
    (x, h)(x.h, k) = (x, hk).

    :param group: a FiniteGroup or Cayley table
    :param n_points: the size of the set
    :param act: n_points x |H| table, act[x][h] = x.h
    :raises ActionError: if act is not a right action
    """
    group = _as_group(group)
    act = np.asarray(act, dtype=np.int64).reshape(n_points, group.order)
    m = group.order
    if np.any((act < 0) | (act >= n_points)):
        x, h = np.argwhere((act < 0) | (act >= n_points))[0]
        raise ActionError("action leaves the set", (int(x), int(h)))
    for x in range(n_points):
        if act[x, group.identity] != x:
            raise ActionError("identity does not act trivially", (x,))
    # (x.h).k = x.(hk)
    lhs = act[act[:, :, None], np.arange(m)[None, None, :]]
    rhs = act[np.arange(n_points)[:, None, None], group.table[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad) > 0:
        x, h, k = bad[0]
        raise ActionError("(x.h).k != x.(hk)", (int(x), int(h), int(k)))
    ids = np.arange(n_points * m)
    points, elements = ids // m, ids % m
    src = act[points, elements]
    compose = np.where(
        src[:, None] == points[None, :],
        points[:, None] * m + group.table[elements[:, None],
                                          elements[None, :]],
        UNDEFINED)
    return FiniteGroupoid(
        n_points, src, points, compose,
        inverse=src * m + group.inverse[elements],
        identity=np.arange(n_points) * m + group.identity,
        labels=["(%d,%d)" % (x, h) for x, h in zip(points, elements)])


def product_groupoid(g1, g2):
    """The product groupoid with componentwise structure

    The object (x1, x2) has id x1 * |X2| + x2 and the arrow (a1, a2) has id
    a1 * |G2| + a2.
    """
    n2, m2 = g2.n_arrows, g2.n_objects
    ids = np.arange(g1.n_arrows * n2)
    a1, a2 = ids // n2, ids % n2
    c1 = g1.compose[a1[:, None], a1[None, :]]
    c2 = g2.compose[a2[:, None], a2[None, :]]
    compose = np.where((c1 != UNDEFINED) & (c2 != UNDEFINED),
                       c1 * n2 + c2, UNDEFINED)
    objects = np.arange(g1.n_objects * m2)
    return FiniteGroupoid(
        g1.n_objects * m2,
        g1.src[a1] * m2 + g2.src[a2],
        g1.dst[a1] * m2 + g2.dst[a2],
        compose,
        inverse=g1.inverse[a1] * n2 + g2.inverse[a2],
        identity=g1.identity[objects // m2] * n2 +
        g2.identity[objects % m2],
        labels=["%s*%s" % (g1.label(i), g2.label(j)) for i, j in zip(a1, a2)])


def disjoint_union(groupoids):
    """The disjoint union, objects and arrows numbered consecutively"""
    groupoids = list(groupoids)
    n = sum(_.n_arrows for _ in groupoids)
    compose = np.full((n, n), UNDEFINED, np.int64)
    src, dst, inverse, identity, labels = [], [], [], [], []
    arrow_offset = object_offset = 0
    for i, g in enumerate(groupoids):
        block = slice(arrow_offset, arrow_offset + g.n_arrows)
        compose[block, block] = np.where(g.compose != UNDEFINED,
                                         g.compose + arrow_offset, UNDEFINED)
        src.append(g.src + object_offset)
        dst.append(g.dst + object_offset)
        inverse.append(g.inverse + arrow_offset)
        identity.append(g.identity + arrow_offset)
        labels += ["%d.%s" % (i, _) for _ in g.labels]
        arrow_offset += g.n_arrows
        object_offset += g.n_objects
    empty = np.zeros(0, np.int64)
    return FiniteGroupoid(
        object_offset,
        np.concatenate(src) if src else empty,
        np.concatenate(dst) if dst else empty,
        compose,
        np.concatenate(inverse) if inverse else empty,
        np.concatenate(identity) if identity else empty,
        labels=labels)


def restrict(G, arrow_ids):
    """The wide subgroupoid on a set of arrows closed under the structure

    :param G: a FiniteGroupoid
    :param arrow_ids: arrow ids of G; must contain every identity and be
           closed under composition and inverse
    :returns: (H, embedding) where embedding[h] is the G-id of H's arrow h
    :raises MalformedTableError: if the set is not closed
    """
    embedding = np.array(sorted(int(_) for _ in arrow_ids), np.int64)
    index = np.full(G.n_arrows, UNDEFINED, np.int64)
    index[embedding] = np.arange(len(embedding))
    sub = G.compose[embedding[:, None], embedding[None, :]]
    defined = sub != UNDEFINED
    if np.any(defined & (index[np.where(defined, sub, 0)] == UNDEFINED)):
        raise MalformedTableError("arrow set is not closed under composition")
    if np.any(index[G.inverse[embedding]] == UNDEFINED) or \
            np.any(index[G.identity] == UNDEFINED):
        raise MalformedTableError("arrow set is not closed under inverse "
                                  "or misses an identity")
    H = FiniteGroupoid(
        G.n_objects, G.src[embedding], G.dst[embedding],
        np.where(defined, index[np.where(defined, sub, 0)], UNDEFINED),
        index[G.inverse[embedding]], index[G.identity],
        labels=[G.label(_) for _ in embedding])
    return H, embedding


def fiber(G, x, kind=FiberKind.SOURCE, y=None):
    """The fiber G_x, G^x or G_x^y

    :param G: a FiniteGroupoid
    :param x: an object
    :param kind: FiberKind.SOURCE for G_x, FiberKind.RANGE for G^x,
           FiberKind.BOTH for G_x^y (arrows from x to y)
    :param y: the range object when kind is FiberKind.BOTH
    :returns: a tuple of Arrows sorted by id
    :raises KeyError: for an unknown object
    """
    kind = FiberKind(kind)
    for obj in (x,) if kind is not FiberKind.BOTH else (x, y):
        if obj is None or not 0 <= obj < G.n_objects:
            raise KeyError("No such object: %s" % str(obj))
    if kind is FiberKind.SOURCE:
        ids = G.source_fiber(x)
    elif kind is FiberKind.RANGE:
        ids = G.range_fiber(x)
    else:
        ids = G.hom(x, y)
    return tuple(G.arrow(_) for _ in ids)


def composable_pairs(G):
    """All (a, b) in G^(2), that is with s(a) = r(b)"""
    return [(int(a), int(b)) for a, b in np.argwhere(
        G.src[:, None] == G.dst[None, :])]


def is_isomorphism(G1, G2, arrow_map, object_map):
    """Check that the given maps form an isomorphism G1 -> G2

    :param arrow_map: sequence, arrow_map[a] is the image of arrow a
    :param object_map: sequence, object_map[x] is the image of object x
    """
    arrow_map = np.asarray(arrow_map, np.int64)
    object_map = np.asarray(object_map, np.int64)
    if G1.n_arrows != G2.n_arrows or G1.n_objects != G2.n_objects:
        return False
    if len(set(arrow_map.tolist())) != G1.n_arrows or \
            len(set(object_map.tolist())) != G1.n_objects:
        return False
    if not (np.array_equal(object_map[G1.src], G2.src[arrow_map]) and
            np.array_equal(object_map[G1.dst], G2.dst[arrow_map])):
        return False
    c1 = G1.compose
    image = np.where(c1 != UNDEFINED, arrow_map[np.where(c1 != UNDEFINED,
                                                         c1, 0)], UNDEFINED)
    return bool(np.array_equal(
        image, G2.compose[arrow_map[:, None], arrow_map[None, :]]))


class GroupoidAction:

    def __init__(self, actor, n_points, anchor, act, point_labels=None):
        """A right action of a groupoid on a finite set Z

        :param actor: the acting FiniteGroupoid H
        :param n_points: |Z|
        :param anchor: rho(z), an object of H for each point
        :param act: |Z| x |H| table with act[z, h] = zh when
               rho(z) = r(h), otherwise -1
        :param point_labels: optional display labels for the points
        """
        self.actor = actor
        self.n_points = int(n_points)
        self.anchor = np.asarray(anchor, np.int64).reshape(-1)
        self.act = np.asarray(act, np.int64).reshape(
            self.n_points, actor.n_arrows)
        self.point_labels = point_labels or \
            [str(_) for _ in range(self.n_points)]

    def pairs(self):
        """The set Z*H of (z, h) with rho(z) = r(h)"""
        return [(int(z), int(h)) for z, h in np.argwhere(
            self.anchor[:, None] == self.actor.dst[None, :])]

    def validate(self):
        """Check the right action axioms, returning a Report"""
        report = Report("validate_action")
        H = self.actor
        if np.any((self.anchor < 0) | (self.anchor >= H.n_objects)):
            report.add_error("malformed-anchor", "anchor outside H's objects")
            return report
        if np.any((self.act < UNDEFINED) | (self.act >= self.n_points)):
            report.add_error("malformed-act", "act leaves the space")
            return report
        allowed = self.anchor[:, None] == H.dst[None, :]
        defined = self.act != UNDEFINED
        for z, h in np.argwhere(allowed != defined):
            report.add_violation("act-domain",
                                 "zh defined exactly when rho(z) = r(h)",
                                 int(z), int(h))
        if report.violations:
            return report
        for z, h in self.pairs():
            zh = self.act[z, h]
            if self.anchor[zh] != H.src[h]:
                report.add_violation("anchor", "rho(zh) != s(h)", z, h)
        for z in range(self.n_points):
            if self.act[z, H.identity[self.anchor[z]]] != z:
                report.add_violation("unit", "z . identity != z", z)
        for z, h in self.pairs():
            zh = self.act[z, h]
            for k in H.range_fiber(H.src[h]).tolist():
                hk = H.compose[h, k]
                if self.act[z, hk] != self.act[zh, k]:
                    report.add_violation("compatibility", "z(hk) != (zh)k",
                                         z, h, k)
        return report


def action_orbits(action):
    """The orbit space Z/H as a sorted list of classes of points"""
    return find_orbits(
        ((z, int(action.act[z, h])) for z, h in action.pairs()),
        range(action.n_points))


def translation_action(G, sub, embedding):
    """The right action of a wide subgroupoid on the arrows of G

    Z is the set of arrows of G with rho(g) = s(g) and g.h = gh.

    :param G: a FiniteGroupoid
    :param sub: a wide subgroupoid of G, e.g. from restrict
    :param embedding: embedding[h] is the G-id of the arrow h of sub
    """
    composed = G.compose[:, embedding]
    allowed = G.src[:, None] == sub.dst[None, :]
    act = np.where(allowed, composed, UNDEFINED)
    return GroupoidAction(sub, G.n_arrows, G.src.copy(), act,
                          point_labels=list(G.labels))


def verify_free_proper(action):
    """Check freeness exhaustively and record properness

    Freeness: zh = z only for identity arrows h. Properness of
    (z, h) -> (zh, z) holds for every action on a finite discrete space;
    the report records the maximal fiber size of that map, which is 1 for
    free actions.

    :param action: a valid GroupoidAction
    :returns: a Report
    """
    report = Report("verify_free_proper")
    H = action.actor
    pairs = action.pairs()
    counts = {}
    for z, h in pairs:
        zh = int(action.act[z, h])
        counts[zh, z] = counts.get((zh, z), 0) + 1
        if zh == z and h != H.identity[H.src[h]]:
            report.add_violation("not-free", "zh = z for a non-identity h",
                                 z, h)
    report.data.update(
        points=action.n_points,
        pairs=len(pairs),
        max_graph_fiber=max(counts.values()) if counts else 0,
        orbits=len(action_orbits(action)))
    report.add_note("proper: holds by finiteness (preimages of compact "
                    "sets under (z,h) -> (zh,z) are finite)")
    return report
