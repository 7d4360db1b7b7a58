import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from groupoid_haar.decompose import quotient_principal, stability_groupoid
from groupoid_haar.generators import random_function, random_groupoid, \
    random_lambda, random_representatives
from groupoid_haar.groupoid import group_bundle, pair_groupoid
from groupoid_haar.groups import cyclic, trivial
from groupoid_haar.haar import HaarSystem, counting_system, \
    enumerate_invariant_systems, principal_haar_from_lambda, \
    range_map_openness, support_check, synthesize_haar, \
    synthesized_integral, verify_haar
from groupoid_haar.measures import CoherentSystem, FiberMeasure, \
    uniform_coherent
from groupoid_haar.registry import build_example
from groupoid_haar.report import PreconditionError


def synthesize(G, lam, scale=1):
    nu = uniform_coherent(stability_groupoid(G), scale)
    m = principal_haar_from_lambda(quotient_principal(G), lam)
    return synthesize_haar(G, nu, m)


class TestVerifyHaar(unittest.TestCase):

    def test_counting(self):
        G = pair_groupoid(5)
        report = verify_haar(G, counting_system(G))
        self.assertTrue(report.ok)
        self.assertEqual(report.data["pairs_checked"], 125)

    def test_skewed(self):
        G = pair_groupoid(2)
        system = HaarSystem(G, build_example("pair2-skewed"))
        report = verify_haar(G, system)
        self.assertFalse(report.ok)
        witnesses = report.witnesses("invariance")
        self.assertIn((2, 1), witnesses)
        self.assertIn((1, 3), witnesses)

    def test_zero_weight(self):
        G = pair_groupoid(3)
        weights = [1] * 9
        weights[5] = 0
        report = verify_haar(G, HaarSystem.from_weights(G, weights))
        self.assertSequenceEqual(report.witnesses("support"), [(1, 5)])

    def test_domain(self):
        G = pair_groupoid(2)
        system = {0: FiberMeasure({0: 1, 1: 1, 2: 1})}
        report = verify_haar(G, system)
        self.assertEqual(report.codes(), {"domain", "missing-fiber"})
        self.assertEqual(len(report.violations), 0)

    def test_witness_cap(self):
        G = pair_groupoid(8)
        weights = [Fraction(1 + (a % 8)) for a in range(G.n_arrows)]
        weights = [w * (1 + a // 8) for a, w in enumerate(weights)]
        report = verify_haar(G, HaarSystem.from_weights(G, weights))
        self.assertEqual(len(report.violations), 50)
        self.assertTrue(any("further witnesses" in _ for _ in report.notes))

    def test_system_mapping(self):
        G = pair_groupoid(2)
        system = counting_system(G, 3)
        self.assertEqual(system.weight(2), 3)
        self.assertEqual(len(system), 2)
        self.assertSequenceEqual(system.weights().tolist(), [3] * 4)
        self.assertEqual(system.integrate(1, {2: 1, 3: 2}), 9)
        self.assertEqual(system, HaarSystem.from_weights(G, [3] * 4))


class TestPrincipalHaar(unittest.TestCase):

    def test_lambda_one(self):
        G = pair_groupoid(3)
        m = principal_haar_from_lambda(quotient_principal(G), [1, 1, 1])
        self.assertEqual(m, counting_system(G))

    def test_lambda_123(self):
        G = pair_groupoid(3)
        quotient = quotient_principal(G)
        lam = [1, 2, 3]
        m = principal_haar_from_lambda(quotient, lam)
        for x in range(3):
            for y in range(3):
                self.assertEqual(m.weight(x * 3 + y), lam[y])
        self.assertTrue(verify_haar(quotient.quotient, m).ok)

    def test_bad_lambda(self):
        quotient = quotient_principal(pair_groupoid(2))
        with self.assertRaises(ValueError):
            principal_haar_from_lambda(quotient, [1, 0])
        with self.assertRaises(ValueError):
            principal_haar_from_lambda(quotient, [1, Fraction(-1, 2)])
        with self.assertRaises(ValueError):
            principal_haar_from_lambda(quotient, [1])
        with self.assertRaises(ValueError):
            principal_haar_from_lambda(quotient, {0: 1})

    def test_every_system_arises(self):
        G = pair_groupoid(3)
        space = enumerate_invariant_systems(G)
        quotient = quotient_principal(G)
        for basis_vector in space.basis:
            lam = [None] * 3
            for a, w in enumerate(basis_vector):
                lam[int(G.src[a])] = w
            # basis vectors are 0/1, shift them into the positive cone
            m = principal_haar_from_lambda(quotient, [1 + w for w in lam])
            self.assertTrue(space.contains(m))
            self.assertSequenceEqual([w - 1 for w in m.vector()],
                                     basis_vector)


class TestSynthesize(unittest.TestCase):

    def test_principal(self):
        G = pair_groupoid(3)
        quotient = quotient_principal(G)
        nu = uniform_coherent(stability_groupoid(G))
        m = principal_haar_from_lambda(quotient, [1, 2, 3])
        mu = synthesize_haar(G, nu, m)
        self.assertSequenceEqual(mu.vector(), m.vector())

    def test_pair2xZ2(self):
        G = build_example("pair2xZ2")
        mu = synthesize(G, [1] * G.n_objects)
        self.assertTrue(all(w == 1 for w in mu.vector()))
        self.assertTrue(verify_haar(G, mu).ok)

    def test_lambda_by_source(self):
        G = build_example("transitive-z2")
        lam = [1, 2]
        mu = synthesize(G, lam)
        for k in range(G.n_arrows):
            self.assertEqual(mu.weight(k), lam[int(G.src[k])])
        self.assertTrue(verify_haar(G, mu).ok)

    def test_scale(self):
        G = build_example("z4-sign-action")
        mu = synthesize(G, [1, 1], scale=Fraction(1, 2))
        self.assertTrue(all(w == Fraction(1, 2) for w in mu.vector()))

    def test_representatives(self):
        rng = np.random.RandomState(1234)
        G = build_example("pair2xZ2")
        quotient = quotient_principal(G)
        nu = uniform_coherent(stability_groupoid(G), {0: 1, 1: 2, 2: 3,
                                                      3: 4})
        m = principal_haar_from_lambda(quotient, [1, 2, 3, 4])
        expected = synthesize_haar(G, nu, m)
        for _ in range(10):
            self.assertEqual(
                synthesize_haar(G, nu, m,
                                random_representatives(quotient, rng)),
                expected)

    def test_bad_representatives(self):
        G = build_example("transitive-z2")
        quotient = quotient_principal(G)
        nu = uniform_coherent(stability_groupoid(G))
        m = principal_haar_from_lambda(quotient, [1, 1])
        with self.assertRaises(ValueError):
            synthesize_haar(G, nu, m, [0, 0, 0, 0])

    def test_bad_nu(self):
        G = build_example("transitive-z2")
        m = principal_haar_from_lambda(quotient_principal(G), [1, 1])
        nu = CoherentSystem({0: {0: 1, 1: 2}, 1: {6: 1, 7: 1}})
        with self.assertRaises(PreconditionError) as context:
            synthesize_haar(G, nu, m)
        self.assertIn("left-invariance", context.exception.report.codes())

    def test_wrong_quotient(self):
        G = build_example("pair2xZ2")
        nu = uniform_coherent(stability_groupoid(G))
        m = principal_haar_from_lambda(quotient_principal(pair_groupoid(3)),
                                       [1, 1, 1])
        with self.assertRaises(PreconditionError) as context:
            synthesize_haar(G, nu, m)
        self.assertEqual(context.exception.report.codes(),
                         {"quotient-mismatch"})

    def test_linear_in_m(self):
        G = build_example("z4-sign-action")
        a = synthesize(G, [1, 2])
        b = synthesize(G, [3, 1])
        c = synthesize(G, [4, 3])
        self.assertSequenceEqual(c.vector(),
                                 [p + q for p, q in zip(a.vector(),
                                                        b.vector())])
        self.assertNotEqual(a, synthesize(G, [1, 3]))

    def test_integral_form(self):
        rng = np.random.RandomState(1234)
        G = build_example("pair2xZ2")
        quotient = quotient_principal(G)
        nu = uniform_coherent(stability_groupoid(G), 2)
        m = principal_haar_from_lambda(quotient, [1, 2, 3, 4])
        mu = synthesize_haar(G, nu, m)
        for _ in range(5):
            phi = random_function(G, rng)
            for x in G.objects:
                self.assertEqual(synthesized_integral(G, nu, m, phi, x),
                                 mu.integrate(x, phi))

    @given(st.integers(min_value=0, max_value=2 ** 31 - 1))
    @settings(max_examples=20, deadline=None)
    def test_synthesis_is_haar(self, seed):
        rng = np.random.RandomState(seed)
        G = random_groupoid(rng)
        mu = synthesize(G, random_lambda(G, rng))
        self.assertTrue(verify_haar(G, mu).ok)


class TestEnumerate(unittest.TestCase):

    def test_pair(self):
        for n in (1, 2, 3):
            space = enumerate_invariant_systems(pair_groupoid(n))
            self.assertEqual(space.dimension, n)

    def test_bundle(self):
        space = enumerate_invariant_systems(
            group_bundle([cyclic(2), cyclic(3), cyclic(1)]))
        self.assertEqual(space.dimension, 3)
        # one indicator per fiber, none strictly positive
        self.assertSequenceEqual(space.positive, (False, False, False))

    def test_transitive(self):
        G = build_example("transitive-z2")
        space = enumerate_invariant_systems(G)
        self.assertEqual(space.dimension, 2)
        self.assertTrue(space.contains(synthesize(G, [1, 2])))
        self.assertFalse(space.contains([1] * 7 + [2]))

    def test_report(self):
        report = enumerate_invariant_systems(pair_groupoid(2)).report()
        self.assertEqual(report.data["dimension"], 2)
        self.assertEqual(len(report.data["basis"]), 2)

    @given(st.integers(min_value=0, max_value=2 ** 31 - 1))
    @settings(max_examples=15, deadline=None)
    def test_oracle(self, seed):
        rng = np.random.RandomState(seed)
        G = random_groupoid(rng)
        space = enumerate_invariant_systems(G)
        self.assertEqual(space.dimension, G.n_objects)
        self.assertTrue(space.contains(synthesize(G, random_lambda(G, rng))))


class TestSupport(unittest.TestCase):

    def test_counting(self):
        G = build_example("pair2xZ2")
        self.assertSequenceEqual(support_check(G, counting_system(G)), [])

    def test_one_zero(self):
        G = pair_groupoid(2)
        system = HaarSystem.from_weights(G, [1, 0, 1, 1])
        self.assertSequenceEqual(support_check(G, system), [(0, 1)])

    def test_degenerate(self):
        G = pair_groupoid(2)
        # invariant, but zero on everything with source 1
        system = HaarSystem.from_weights(G, [1, 0, 1, 0])
        self.assertTrue(enumerate_invariant_systems(G).contains(system))
        self.assertSequenceEqual(support_check(G, system), [(0, 1), (1, 3)])

    def test_degenerate_basis_vectors(self):
        groupoids = [pair_groupoid(2), pair_groupoid(3),
                     group_bundle([cyclic(2), trivial()])] + \
            [build_example(name) for name in
             ("transitive-z2", "z4-sign-action", "pair2xZ2")]
        checked = 0
        for G in groupoids:
            space = enumerate_invariant_systems(G)
            for vector in space.basis:
                system = HaarSystem.from_weights(G, vector)
                self.assertTrue(space.contains(system))
                zeros = [(int(G.dst[a]), a)
                         for a, w in enumerate(vector) if w == 0]
                self.assertTrue(zeros)
                self.assertSequenceEqual(sorted(support_check(G, system)),
                                         sorted(zeros))
                checked += 1
        self.assertGreaterEqual(checked, 10)

    def test_missing_fiber(self):
        G = pair_groupoid(2)
        self.assertSequenceEqual(support_check(G, {}),
                                 [(0, 0), (0, 1), (1, 2), (1, 3)])

    def test_range_map_openness(self):
        report = range_map_openness(build_example("z4-sign-action"))
        self.assertTrue(report.ok)
        self.assertSequenceEqual(report.data["range_fiber_sizes"], [4, 4])


if __name__ == '__main__':
    unittest.main()
