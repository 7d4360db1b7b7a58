import logging
from fractions import Fraction

import numpy as np

from .groupoid import action_groupoid, disjoint_union, group_bundle, \
    pair_groupoid, product_groupoid
from .groups import named_group
from .convolution import GroupoidFunction
from .haar import HaarSystem
from .piecewise import PiecewiseValue
from .stepbundle import SheetFunction, StepSubgroupBundle

logger = logging.getLogger("groupoid_haar.generators")

FAMILY_GROUPS = ("Z/1", "Z/2", "Z/3", "Z/4", "Z/2xZ/2", "S3")
BUNDLE_GROUPS = ("Z/2", "Z/3", "Z/4", "Z/2xZ/2", "S3", "Z/2xZ/4", "D4",
                 "Q8")


def random_rational(rng, low=-4, high=4, max_denominator=4):
    return Fraction(int(rng.randint(low, high + 1)),
                    int(rng.randint(1, max_denominator + 1)))


def random_positive(rng, high=5, max_denominator=4):
    return Fraction(int(rng.randint(1, high + 1)),
                    int(rng.randint(1, max_denominator + 1)))


def random_action(rng):
    """A groupoid of a group acting on a few points through a quotient

    Z/4 and Z/2xZ/2 act through a map onto Z/2 on up to 3 points, so the
    action groupoid has isotropy of order 2 and orbits of size 2.
    """
    name = ["Z/2", "Z/4", "Z/2xZ/2"][rng.randint(3)]
    group = named_group(name)
    n_points = int(rng.randint(2, 4))
    # elements mapping to the nontrivial element of Z/2
    sign = [0, 1] if name == "Z/2" else \
        [0, 1, 0, 1] if name == "Z/4" else [0, 0, 1, 1]
    act = []
    for x in range(n_points):
        if x < 2:
            act.append([x ^ s for s in sign])
        else:
            act.append([x] * group.order)
    return action_groupoid(group, n_points, act)


def random_groupoid(rng):
    """One member of the generated test family

    Products of a pair groupoid with a bundle of groups, action groupoids
    with isotropy, and disjoint unions of these, with at most about 40
    arrows.
    """
    kind = rng.randint(4)
    if kind == 0:
        n = int(rng.randint(1, 4))
        k = int(rng.randint(1, 3))
        # at most 32 arrows
        choices = FAMILY_GROUPS[:3] if n == 3 else FAMILY_GROUPS[:5]
        names = [choices[rng.randint(len(choices))]
                 for _ in range(1 if n == 3 else k)]
        return product_groupoid(pair_groupoid(n),
                                group_bundle([named_group(_)
                                              for _ in names]))
    if kind == 1:
        return random_action(rng)
    if kind == 2:
        name = FAMILY_GROUPS[rng.randint(len(FAMILY_GROUPS))]
        return product_groupoid(pair_groupoid(int(rng.randint(1, 3))),
                                group_bundle([named_group(name)]))
    return disjoint_union([pair_groupoid(int(rng.randint(1, 3))),
                           random_action(rng)])


def groupoid_family(count, seed=1234):
    rng = np.random.RandomState(seed)
    return [random_groupoid(rng) for _ in range(count)]


def random_lambda(G, rng):
    return [random_positive(rng) for _ in G.objects]


def random_function(G, rng):
    return GroupoidFunction(G, [random_rational(rng)
                                for _ in range(G.n_arrows)])


def random_representatives(quotient, rng):
    return np.array([rng.choice(quotient.members(c))
                     for c in range(quotient.quotient.n_arrows)], np.int64)


def perturbed_system(mu, rng):
    """mu with one weight in a range fiber of size > 1 doubled

    :raises ValueError: if every range fiber is a single arrow
    """
    G = mu.groupoid
    candidates = [a for a in range(G.n_arrows)
                  if len(G.range_fiber(int(G.dst[a]))) > 1]
    if not candidates:
        raise ValueError("every range fiber of %r is a single arrow" % G)
    victim = candidates[rng.randint(len(candidates))]
    weights = list(mu.vector())
    weights[victim] *= 2
    return HaarSystem.from_weights(G, weights)


def random_breakpoints(rng, max_breakpoints=5):
    """0, 1 and up to max_breakpoints - 2 distinct points in between"""
    n_inner = int(rng.randint(0, max_breakpoints - 1))
    inner = set()
    while len(inner) < n_inner:
        q = int(rng.randint(2, 13))
        inner.add(Fraction(int(rng.randint(1, q)), q))
    return [Fraction(0)] + sorted(inner) + [Fraction(1)]


def random_bundle(rng, max_breakpoints=5):
    """A valid step subgroup bundle, open or not

    Each breakpoint group is, with equal probability, a subgroup of the
    groups of both neighboring pieces (keeping the projection open there)
    or any subgroup of the ambient group.
    """
    ambient = named_group(BUNDLE_GROUPS[rng.randint(len(BUNDLE_GROUPS))])
    subgroups = [frozenset(_) for _ in ambient.subgroups()]
    breakpoints = random_breakpoints(rng, max_breakpoints)
    pieces = [subgroups[rng.randint(len(subgroups))]
              for _ in range(len(breakpoints) - 1)]
    points = []
    for j in range(len(breakpoints)):
        neighbors = [pieces[i] for i in (j - 1, j) if 0 <= i < len(pieces)]
        allowed = subgroups
        if rng.randint(2) == 0:
            common = frozenset.intersection(*neighbors)
            allowed = [s for s in subgroups if s <= common]
        points.append(allowed[rng.randint(len(allowed))])
    return StepSubgroupBundle(ambient, breakpoints, pieces, points)


def random_sheet(B, g, rng, low=-4):
    """A random admissible sheet for the element g, at least low at the knots

    The graph is continuous with knots at the breakpoints and at the thirds
    of every piece. Where g leaves the bundle at a breakpoint the sheet is 0
    from the nearest third up to the breakpoint.
    """
    b = B.breakpoints
    values = {}
    for i, (lo, hi) in enumerate(zip(b[:-1], b[1:])):
        values[lo + (hi - lo) / 3] = random_rational(rng, low)
        values[lo + 2 * (hi - lo) / 3] = random_rational(rng, low)
    for j, x in enumerate(b):
        if g in B.points[j]:
            values[x] = random_rational(rng, low)
            continue
        values[x] = Fraction(0)
        for side, i in B.neighbors(j):
            if g in B.pieces[i]:
                lo, hi = b[i], b[i + 1]
                near = lo + 2 * (hi - lo) / 3 if side == "left" else \
                    lo + (hi - lo) / 3
                values[near] = Fraction(0)
    return PiecewiseValue.from_graph(sorted(values.items()))


def random_admissible_function(B, rng, low=-4):
    sheets = {}
    for g in B.ambient.elements:
        if rng.randint(3) > 0:
            sheets[g] = random_sheet(B, g, rng, low)
    return SheetFunction(sheets)


def random_scale(rng, max_knots=4):
    xs = random_breakpoints(rng, max_knots)
    return PiecewiseValue.from_graph([(x, random_positive(rng)) for x in xs])
