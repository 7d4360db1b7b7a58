import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from groupoid_haar.convolution import GroupoidFunction, \
    check_associativity, check_involution, check_unit, convolve, \
    involution, unit_function
from groupoid_haar.decompose import quotient_principal, stability_groupoid
from groupoid_haar.generators import perturbed_system, random_function, \
    random_groupoid, random_lambda
from groupoid_haar.groupoid import disjoint_union, group_bundle, \
    pair_groupoid
from groupoid_haar.groups import symmetric3
from groupoid_haar.haar import HaarSystem, counting_system, \
    principal_haar_from_lambda, synthesize_haar, verify_haar
from groupoid_haar.measures import uniform_coherent
from groupoid_haar.registry import build_example
from groupoid_haar.report import PreconditionError


def synthesize(G, lam):
    nu = uniform_coherent(stability_groupoid(G))
    m = principal_haar_from_lambda(quotient_principal(G), lam)
    return synthesize_haar(G, nu, m)


class TestGroupoidFunction(unittest.TestCase):

    def test_from_mapping(self):
        G = pair_groupoid(2)
        f = GroupoidFunction.from_mapping(G, {1: 3})
        self.assertSequenceEqual(f.values, (0, 3, 0, 0))
        self.assertSequenceEqual(f.support(), [1])
        self.assertEqual(f + f, 2 * f)

    def test_wrong_length(self):
        with self.assertRaises(ValueError):
            GroupoidFunction(pair_groupoid(2), [1, 2])


class TestConvolve(unittest.TestCase):

    def test_identities(self):
        G = pair_groupoid(2)
        f = GroupoidFunction.indicator(G, [0, 3])
        self.assertEqual(convolve(f, f, G, counting_system(G)), f)

    def test_group_algebra(self):
        G = group_bundle([symmetric3()])
        rng = np.random.RandomState(1234)
        f, h = random_function(G, rng), random_function(G, rng)
        result = convolve(f, h, G, counting_system(G))
        for g in range(G.n_arrows):
            expected = sum(
                (f[k] * h[int(G.compose[G.inverse[k], g])]
                 for k in range(G.n_arrows)), Fraction(0))
            self.assertEqual(result[g], expected)

    def test_disjoint_components(self):
        G = disjoint_union([pair_groupoid(2), pair_groupoid(1)])
        f = GroupoidFunction.indicator(G, [0, 1])
        h = GroupoidFunction.indicator(G, [4])
        product = convolve(f, h, G, counting_system(G))
        self.assertSequenceEqual(product.support(), [])

    def test_weights_enter(self):
        G = pair_groupoid(2)
        f = GroupoidFunction.indicator(G, [1])
        h = GroupoidFunction.indicator(G, [2])
        # only eta = 1 contributes to gamma = 0
        product = convolve(f, h, G, counting_system(G, 3))
        self.assertEqual(product[0], 3)

    def test_refuses_non_haar(self):
        G = pair_groupoid(2)
        system = HaarSystem(G, build_example("pair2-skewed"))
        f = GroupoidFunction.indicator(G, [0])
        with self.assertRaises(PreconditionError) as context:
            convolve(f, f, G, system)
        self.assertIn("invariance", context.exception.report.codes())
        convolve(f, f, G, system, verify=False)


class TestAlgebraLaws(unittest.TestCase):

    def test_involution(self):
        G = pair_groupoid(2)
        f = GroupoidFunction.from_mapping(G, {1: 5})
        self.assertSequenceEqual(involution(f).support(), [2])

    def test_unit_function(self):
        G = pair_groupoid(3)
        delta = unit_function(G, synthesize(G, [1, 2, 4]))
        self.assertEqual(delta[0], 1)
        self.assertEqual(delta[4], Fraction(1, 2))
        self.assertEqual(delta[8], Fraction(1, 4))
        self.assertSequenceEqual(delta.support(), [0, 4, 8])

    def test_perturbed_fails(self):
        rng = np.random.RandomState(1234)
        G = pair_groupoid(3)
        mu = perturbed_system(counting_system(G), rng)
        for _ in range(200):
            f, g, h = (random_function(G, rng) for _ in range(3))
            report = check_associativity(f, g, h, G, mu)
            if not report.ok:
                break
        self.assertFalse(report.ok)
        self.assertTrue(report.witnesses("associativity"))

    def test_perturbed_systems_fail(self):
        rng = np.random.RandomState(1234)
        caught = 0
        while caught < 10:
            G = random_groupoid(rng)
            base = counting_system(G) if caught % 2 else \
                synthesize(G, random_lambda(G, rng))
            try:
                mu = perturbed_system(base, rng)
            except ValueError:
                continue
            self.assertFalse(verify_haar(G, mu).ok)
            for trial in range(200):
                f, g, h = (random_function(G, rng) for _ in range(3))
                report = check_associativity(f, g, h, G, mu)
                if not report.ok:
                    break
            self.assertFalse(report.ok, G)
            self.assertTrue(report.witnesses("associativity"))
            caught += 1

    @given(st.integers(min_value=0, max_value=2 ** 31 - 1))
    @settings(max_examples=15, deadline=None)
    def test_laws_hold(self, seed):
        rng = np.random.RandomState(seed)
        G = random_groupoid(rng)
        mu = synthesize(G, random_lambda(G, rng))
        f, g, h = (random_function(G, rng) for _ in range(3))
        self.assertTrue(check_associativity(f, g, h, G, mu).ok)
        self.assertTrue(check_involution(f, h, G, mu).ok)
        self.assertTrue(check_unit(f, G, mu).ok)


if __name__ == '__main__':
    unittest.main()
