import unittest

import numpy as np

from groupoid_haar.groups import FiniteGroup, GroupTableError, cyclic, \
    dihedral, direct_product, named_group, quaternion, symmetric3, trivial, \
    SMALL_GROUPS


class TestFiniteGroup(unittest.TestCase):

    def test_cyclic(self):
        group = cyclic(4)
        self.assertEqual(group.order, 4)
        self.assertEqual(group.identity, 0)
        self.assertSequenceEqual(group.inverse.tolist(), [0, 3, 2, 1])
        self.assertEqual(group.mul(3, 2), 1)
        self.assertEqual(group.element_order(2), 2)
        self.assertTrue(group.is_abelian)

    def test_trivial(self):
        group = trivial()
        self.assertEqual(group.order, 1)
        self.assertEqual(group.structure_name(), "Z/1")

    def test_not_associative(self):
        with self.assertRaises(GroupTableError) as context:
            FiniteGroup([[0, 1, 2], [1, 2, 2], [2, 2, 0]])
        self.assertEqual(len(context.exception.witness), 3)

    def test_no_identity(self):
        with self.assertRaises(GroupTableError) as context:
            FiniteGroup([[0, 0], [0, 0]])
        # 0 * 1 = 0
        self.assertEqual(context.exception.witness, (0, 1, 0))
        with self.assertRaises(GroupTableError) as context:
            FiniteGroup([[1, 1], [1, 1]])
        self.assertEqual(context.exception.witness, (0, 0, 1))

    def test_out_of_range(self):
        with self.assertRaises(GroupTableError):
            FiniteGroup([[0, 1], [1, 2]])

    def test_not_square(self):
        with self.assertRaises(GroupTableError):
            FiniteGroup([[0, 1]])

    def test_structure_names(self):
        self.assertEqual(symmetric3().structure_name(), "S3")
        self.assertEqual(dihedral(4).structure_name(), "D4")
        self.assertEqual(quaternion().structure_name(), "Q8")
        self.assertEqual(named_group("Z/2xZ/2").structure_name(), "Z/2xZ/2")
        self.assertEqual(named_group("Z/2xZ/4").structure_name(), "Z/2xZ/4")
        self.assertEqual(direct_product(cyclic(2), cyclic(3))
                         .structure_name(), "Z/6")

    def test_nonabelian(self):
        self.assertFalse(symmetric3().is_abelian)
        self.assertFalse(quaternion().is_abelian)

    def test_named_groups(self):
        for name in SMALL_GROUPS:
            group = named_group(name)
            self.assertEqual(group.name, name)
        with self.assertRaises(KeyError):
            named_group("PSL(2,7)")

    def test_subgroups(self):
        self.assertSequenceEqual(cyclic(4).subgroups(),
                                 [(0,), (0, 2), (0, 1, 2, 3)])
        self.assertEqual(len(symmetric3().subgroups()), 6)
        self.assertEqual(len(named_group("Z/2xZ/2").subgroups()), 5)

    def test_subgroup_violations(self):
        group = cyclic(4)
        kinds = {kind for kind, witness in group.subgroup_violations({0, 1})}
        self.assertIn("closure", kinds)
        self.assertIn("inverse", kinds)
        kinds = {kind for kind, witness in group.subgroup_violations({2})}
        self.assertIn("identity", kinds)
        self.assertSequenceEqual(group.subgroup_violations({7}),
                                 [("range", (7,))])
        self.assertTrue(group.is_subgroup({0, 2}))

    def test_generated_subgroup(self):
        self.assertEqual(cyclic(6).generated_subgroup([2]),
                         frozenset([0, 2, 4]))

    def test_eq(self):
        self.assertEqual(cyclic(3), FiniteGroup(cyclic(3).table))
        self.assertNotEqual(cyclic(4), named_group("Z/2xZ/2"))

    def test_inverse_table(self):
        for name in SMALL_GROUPS:
            group = named_group(name)
            products = group.table[np.arange(group.order), group.inverse]
            self.assertTrue(np.all(products == group.identity))


if __name__ == '__main__':
    unittest.main()
