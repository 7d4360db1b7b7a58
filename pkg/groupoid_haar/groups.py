"""Finite groups given by their Cayley tables

Elements of a group of order n are the integers 0..n-1 and the group law is
stored as an n x n numpy array, table[a, b] = a * b.
"""

import itertools
import logging

import numpy as np

logger = logging.getLogger("groupoid_haar.groups")


class GroupTableError(ValueError):
    """A multiplication table that is not a group

    :param message: what went wrong
    :param witness: the failing elements, e.g. the non-associative triple
    """

    def __init__(self, message, witness=()):
        super(GroupTableError, self).__init__(
            "%s (witness: %s)" % (message, ", ".join(map(str, witness))))
        self.witness = tuple(witness)


class FiniteGroup:

    def __init__(self, table, name=None):
        """Wrap and validate a Cayley table

        :param table: an n x n array-like of element indices
        :param name: an optional display name, e.g. "Z/2"
        """
        self.table = np.asarray(table, dtype=np.int64)
        self._name = name
        self.validate()
        self.identity = self._find_identity()
        self.inverse = np.argmax(
            self.table == self.identity, axis=1).astype(np.int64)

    @property
    def order(self):
        return self.table.shape[0] if self.table.ndim == 2 else 0

    @property
    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return int(self.table[a, b])

    def _find_identity(self):
        n = self.order
        arange = np.arange(n)
        witness = ()
        for e in range(n):
            row = self.table[e] != arange
            column = self.table[:, e] != arange
            if not row.any() and not column.any():
                return e
            if not witness:
                # element 0 and the first x with 0x != x or x0 != x
                x = int(np.argmax(row | column))
                product = self.table[e, x] if row[x] else self.table[x, e]
                witness = (e, x, int(product))
        raise GroupTableError("no identity element", witness)

    def validate(self):
        """Check the group axioms, raising GroupTableError on failure"""
        table = self.table
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupTableError("table is not square", table.shape)
        n = table.shape[0]
        if n == 0:
            raise GroupTableError("a group needs at least one element")
        bad = np.argwhere((table < 0) | (table >= n))
        if len(bad) > 0:
            a, b = bad[0]
            raise GroupTableError("product out of range", (a, b))
        #
        # (ab)c versus a(bc) for all triples at once
        #
        ab_c = table[table, :]
        a_bc = table[np.arange(n)[:, None, None], table[None, :, :]]
        bad = np.argwhere(ab_c != a_bc)
        if len(bad) > 0:
            a, b, c = bad[0]
            raise GroupTableError("not associative", (a, b, c))
        e = self._find_identity()
        for a in range(n):
            if not np.any(table[a] == e):
                raise GroupTableError("element has no inverse", (a,))
        logger.debug("validated group table of order %d", n)

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def is_abelian(self):
        return bool(np.all(self.table == self.table.T))

    def structure_name(self):
        """A short name for the isomorphism type, e.g. "Z/4" or "S3"
        """
        n = self.order
        orders = sorted(self.element_order(a) for a in self.elements)
        if orders[-1] == n:
            return "Z/%d" % n
        n_involutions = orders.count(2)
        if self.is_abelian:
            if n == 4:
                return "Z/2xZ/2"
            if n == 8:
                return "Z/2xZ/4" if 4 in orders else "Z/2xZ/2xZ/2"
        else:
            if n == 6:
                return "S3"
            if n == 8:
                return "D4" if n_involutions == 5 else "Q8"
        return "order %d" % n

    @property
    def name(self):
        return self._name or self.structure_name()

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and \
            np.array_equal(self.table, other.table)

    def __repr__(self):
        return "FiniteGroup(%s)" % self.name

    def subgroup_violations(self, elements):
        """Find the reasons a set of elements fails to be a subgroup

        :param elements: an iterable of element indices
        :return: a list of (kind, witness) pairs, empty if the set is a
                 subgroup. kind is one of "range", "identity", "closure",
                 "inverse".
        """
        elements = set(int(_) for _ in elements)
        result = []
        for a in sorted(elements):
            if a < 0 or a >= self.order:
                result.append(("range", (a,)))
        if result:
            return result
        if self.identity not in elements:
            result.append(("identity", (self.identity,)))
        for a, b in itertools.product(sorted(elements), repeat=2):
            if self.mul(a, b) not in elements:
                result.append(("closure", (a, b)))
        for a in sorted(elements):
            if int(self.inverse[a]) not in elements:
                result.append(("inverse", (a,)))
        return result

    def is_subgroup(self, elements):
        return len(self.subgroup_violations(elements)) == 0

    def generated_subgroup(self, generators):
        """The smallest subgroup containing the generators"""
        result = {self.identity}
        frontier = list(result)
        generators = [int(_) for _ in generators]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = self.mul(x, g)
                if y not in result:
                    result.add(y)
                    frontier.append(y)
        return frozenset(result)

    def subgroups(self):
        """All subgroups of the group, as sorted tuples

        Every group of order 8 or less is generated by three elements, so
        closing up all triples is exhaustive at the sizes used here.
        """
        found = {frozenset(self.elements)}
        for triple in itertools.combinations_with_replacement(
                self.elements, 3):
            found.add(self.generated_subgroup(triple))
        return sorted((tuple(sorted(_)) for _ in found),
                      key=lambda s: (len(s), s))


def cyclic(n):
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name="Z/%d" % n)


def trivial():
    return cyclic(1)


def from_permutations(perms, name=None):
    """A group from a closed list of permutations, composed left to right

    :param perms: a list of tuples; perms[0] must be the identity
    """
    perms = [tuple(_) for _ in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(q[p[k]] for k in range(len(p)))]
    return FiniteGroup(table, name=name)


def symmetric3():
    return from_permutations(itertools.permutations(range(3)), name="S3")


def dihedral(n):
    """The dihedral group of order 2n as symmetries of an n-gon"""
    rotations = [tuple((k + r) % n for k in range(n)) for r in range(n)]
    reflections = [tuple((r - k) % n for k in range(n)) for r in range(n)]
    return from_permutations(rotations + reflections,
                             name="D%d" % n)


def quaternion():
    # elements 0..7 are 1, -1, i, -i, j, -j, k, -k
    basis = ["1", "i", "j", "k"]
    product = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"),
        ("1", "k"): (1, "k"), ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"),
        ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"), ("j", "1"): (1, "j"),
        ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"),
        ("k", "k"): (-1, "1")}
    table = np.zeros((8, 8), np.int64)
    for a, b in itertools.product(range(8), repeat=2):
        sa, ua = (1 if a % 2 == 0 else -1), basis[a // 2]
        sb, ub = (1 if b % 2 == 0 else -1), basis[b // 2]
        sign, unit = product[ua, ub]
        sign *= sa * sb
        table[a, b] = 2 * basis.index(unit) + (0 if sign == 1 else 1)
    return FiniteGroup(table, name="Q8")


def direct_product(a, b):
    """The direct product A x B, element (x, y) has index x * |B| + y"""
    na, nb = a.order, b.order
    xa = np.arange(na * nb) // nb
    xb = np.arange(na * nb) % nb
    table = a.table[xa[:, None], xa[None, :]] * nb + \
        b.table[xb[:, None], xb[None, :]]
    return FiniteGroup(table, name="%sx%s" % (a.name, b.name))


def named_group(name):
    """Look up a group by name, e.g. "Z/4", "S3", "D4", "Q8", "Z/2xZ/2"

    :raises KeyError: for an unknown name
    """
    parts = name.replace(" ", "").split("x")
    if len(parts) > 1:
        result = named_group(parts[0])
        for part in parts[1:]:
            result = direct_product(result, named_group(part))
        result._name = name
        return result
    if name.startswith("Z/"):
        return cyclic(int(name[2:]))
    if name == "S3":
        return symmetric3()
    if name.startswith("D") and name[1:].isdigit():
        return dihedral(int(name[1:]))
    if name == "Q8":
        return quaternion()
    raise KeyError("No such group: %s" % name)


SMALL_GROUPS = ("Z/1", "Z/2", "Z/3", "Z/4", "Z/2xZ/2", "Z/5", "Z/6", "S3",
                "Z/7", "Z/8", "Z/2xZ/4", "Z/2xZ/2xZ/2", "D4", "Q8")
