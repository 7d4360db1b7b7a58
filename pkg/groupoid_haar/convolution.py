"""The convolution algebra of a finite groupoid with a Haar system

    (f * h)(gamma) = sum over eta in G^{s(gamma)} of
                     f(gamma eta) h(eta^-1) mu^{s(gamma)}(eta)

    f*(gamma) = f(gamma^-1)

Scalars are exact Fractions. Associativity of * rests on condition (b) of
the Haar system, so convolve refuses systems that fail verify_haar unless
asked not to verify.
"""

import collections.abc
import logging
from fractions import Fraction

import numpy as np

from .haar import verify_haar
from .report import PreconditionError, Report

logger = logging.getLogger("groupoid_haar.convolution")


class GroupoidFunction(collections.abc.Mapping):
    """A rational-valued function on the arrows of a groupoid

    :param groupoid: the FiniteGroupoid
    :param values: one value per arrow
    """

    def __init__(self, groupoid, values):
        self.groupoid = groupoid
        self.values = tuple(Fraction(_) for _ in values)
        if len(self.values) != groupoid.n_arrows:
            raise ValueError("need %d values, got %d" % (
                groupoid.n_arrows, len(self.values)))

    @classmethod
    def from_mapping(cls, groupoid, mapping):
        """Arrows missing from the mapping get the value 0"""
        return cls(groupoid, [mapping.get(a, 0)
                              for a in range(groupoid.n_arrows)])

    @classmethod
    def indicator(cls, groupoid, arrows):
        arrows = set(int(_) for _ in arrows)
        return cls(groupoid, [int(a in arrows)
                              for a in range(groupoid.n_arrows)])

    def __getitem__(self, arrow):
        return self.values[arrow]

    def __iter__(self):
        return iter(range(len(self.values)))

    def __len__(self):
        return len(self.values)

    def array(self):
        return np.array(self.values, dtype=object)

    def __add__(self, other):
        return GroupoidFunction(self.groupoid, [
            a + b for a, b in zip(self.values, other.values)])

    def __mul__(self, c):
        c = Fraction(c)
        return GroupoidFunction(self.groupoid, [c * a for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupoidFunction):
            return NotImplemented
        return self.values == other.values

    def support(self):
        return [a for a, v in enumerate(self.values) if v != 0]

    def __repr__(self):
        return "GroupoidFunction(%s)" % ", ".join(map(str, self.values))


def _plan(G):
    """Index arrays of all (gamma, eta) with eta in G^{s(gamma)}

    :returns: (gamma, eta, starts) where the terms of gamma occupy
              starts[gamma]:starts[gamma + 1]
    """
    sizes = [len(G.range_fiber(int(G.src[a]))) for a in range(G.n_arrows)]
    starts = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    if G.n_arrows == 0:
        empty = np.zeros(0, np.int64)
        return empty, empty, starts
    gamma = np.repeat(np.arange(G.n_arrows), sizes)
    eta = np.concatenate([G.range_fiber(int(G.src[a]))
                          for a in range(G.n_arrows)]).astype(np.int64)
    return gamma, eta, starts


def convolve(f, h, G, mu, verify=True):
    """The convolution f * h

    :param f: a GroupoidFunction on G
    :param h: a GroupoidFunction on G
    :param G: the FiniteGroupoid
    :param mu: a HaarSystem on G
    :param verify: check mu with verify_haar first
    :raises PreconditionError: if verify is set and mu is not a Haar system
    """
    if verify:
        report = verify_haar(G, mu)
        if not report.ok:
            raise PreconditionError(
                "convolution needs a Haar system", report)
    gamma, eta, starts = _plan(G)
    weights = mu.weights()
    terms = f.array()[G.compose[gamma, eta]] * \
        h.array()[G.inverse[eta]] * weights[eta]
    return GroupoidFunction(G, [
        sum(terms[a:b], Fraction(0))
        for a, b in zip(starts[:-1], starts[1:])])


def involution(f):
    G = f.groupoid
    return GroupoidFunction(G, [f[int(G.inverse[a])]
                                for a in range(G.n_arrows)])


def unit_function(G, mu):
    """The unit delta, 1 / mu^x(identity(x)) on the identity arrows"""
    values = [Fraction(0)] * G.n_arrows
    for x in G.objects:
        e = int(G.identity[x])
        values[e] = 1 / mu.weight(e)
    return GroupoidFunction(G, values)


def _compare(report, code, message, lhs, rhs):
    for a, (p, q) in enumerate(zip(lhs.values, rhs.values)):
        if p != q:
            report.add_violation(code, message, a, p, q)


def check_associativity(f, g, h, G, mu):
    """Compare (f * g) * h with f * (g * h) exactly

    mu is not verified, so non-invariant systems can be tested too.

    :returns: a Report with an "associativity" violation (arrow, lhs, rhs)
              for every arrow where the two sides differ
    """
    report = Report("check_associativity")
    lhs = convolve(convolve(f, g, G, mu, False), h, G, mu, False)
    rhs = convolve(f, convolve(g, h, G, mu, False), G, mu, False)
    _compare(report, "associativity", "(f*g)*h != f*(g*h)", lhs, rhs)
    return report


def check_involution(f, h, G, mu):
    """Check (f * h)* = h* * f* and f** = f"""
    report = Report("check_involution")
    lhs = involution(convolve(f, h, G, mu, False))
    rhs = convolve(involution(h), involution(f), G, mu, False)
    _compare(report, "anti-multiplicative", "(f*h)* != h* * f*", lhs, rhs)
    _compare(report, "involutive", "f** != f", involution(involution(f)), f)
    return report


def check_unit(f, G, mu):
    """Check delta * f = f = f * delta"""
    report = Report("check_unit")
    delta = unit_function(G, mu)
    _compare(report, "left-unit", "delta * f != f",
             convolve(delta, f, G, mu, False), f)
    _compare(report, "right-unit", "f * delta != f",
             convolve(f, delta, G, mu, False), f)
    return report
