import contextlib
import io
import json
import os
import unittest
from fractions import Fraction

from groupoid_haar.haar import counting_system
from groupoid_haar.groupoid import pair_groupoid
from groupoid_haar.main import main, run_command
from groupoid_haar.manifest import parse_manifest, system_manifest
from groupoid_haar.utils import make_case

LAMBDA = dict(kind="function", payload=dict(values=[
    [0, "1/1"], [1, "2/1"], [2, "3/1"], [3, "4/1"]]))

SKEWED_NU = dict(kind="system", payload=dict(measures=[
    dict(x=0, weights=[[0, "1/1"], [1, "2/1"]]),
    dict(x=1, weights=[[6, "1/1"], [7, "1/1"]])]))


class TestValidate(unittest.TestCase):

    def test_valid(self):
        status, report = run_command(["validate", "example:pair3"])
        self.assertEqual(status, 0)
        self.assertTrue(report.ok)

    def test_broken(self):
        status, report = run_command(["validate", "--example", "broken"])
        self.assertEqual(status, 1)
        self.assertIn("inverse-right", report.codes())

    def test_file(self):
        with make_case(g="example:z2-swap") as paths:
            status, report = run_command(["validate", paths["g"]])
        self.assertEqual(status, 0)


class TestInputErrors(unittest.TestCase):

    def test_unknown_subcommand(self):
        status, report = run_command(["frobnicate"])
        self.assertEqual(status, 2)
        self.assertIn("usage", report.codes())

    def test_missing_file(self):
        status, report = run_command(["validate", "/no/such/groupoid.json"])
        self.assertEqual(status, 2)
        self.assertIn("input", report.codes())

    def test_bad_json(self):
        with make_case(g='{"kind": "groupoid",') as paths:
            status, report = run_command(["validate", paths["g"]])
        self.assertEqual(status, 2)

    def test_example_and_positional(self):
        status, report = run_command(["validate", "--example", "pair2",
                                      "example:pair3"])
        self.assertEqual(status, 2)

    def test_missing_input(self):
        status, report = run_command(["validate"])
        self.assertEqual(status, 2)

    def test_wrong_kind(self):
        status, report = run_command(["validate", "example:drop-bundle"])
        self.assertEqual(status, 2)

    def test_unknown_example(self):
        status, report = run_command(["validate", "example:nothing"])
        self.assertEqual(status, 2)


class TestDecompose(unittest.TestCase):

    def test_transitive(self):
        status, report = run_command(["decompose", "example:transitive-z2"])
        self.assertEqual(status, 0)
        self.assertEqual(report.data["quotient_arrows"], 4)

    def test_broken(self):
        status, report = run_command(["decompose", "example:broken"])
        self.assertEqual(status, 1)
        self.assertIn("groupoid.inverse-right", report.codes())


class TestHaar(unittest.TestCase):

    def test_verify_skewed(self):
        status, report = run_command(["haar", "verify", "example:pair2",
                                      "example:pair2-skewed"])
        self.assertEqual(status, 1)
        self.assertIn("invariance", report.codes())

    def test_verify_counting(self):
        manifest = system_manifest(counting_system(pair_groupoid(2)))
        with make_case(system=manifest) as paths:
            status, report = run_command(["haar", "verify", "example:pair2",
                                          paths["system"]])
        self.assertEqual(status, 0)

    def test_synth(self):
        status, report = run_command(["haar", "synth", "--example",
                                      "pair2xZ2", "--nu", "uniform:1",
                                      "--lambda", "const:1"])
        self.assertEqual(status, 0)
        self.assertEqual(len(report.data["system"]["measures"]), 4)

    def test_synth_output(self):
        with make_case(lam=LAMBDA) as paths:
            output = os.path.join(os.path.dirname(paths["lam"]), "mu.json")
            status, report = run_command([
                "haar", "synth", "example:pair2xZ2", "--nu", "uniform:1/2",
                "--lambda", paths["lam"], "--output", output])
            self.assertEqual(status, 0)
            with open(output) as fd:
                manifest = parse_manifest(fd.read())
            status, report = run_command(["haar", "verify",
                                          "example:pair2xZ2", output])
            self.assertEqual(status, 0)
        weights = {a: w for m in manifest.payload["measures"]
                   for a, w in m["weights"]}
        # the arrow (x, y) x (z, z) has source 2 * y + z
        self.assertEqual(weights[0], Fraction(1, 2))
        self.assertEqual(weights[15], 2)

    def test_synth_bad_inputs(self):
        for extra in (["--lambda", "const:0"], ["--nu", "uniform:-1"],
                      ["--lambda", "const:x"], ["--nu", "uniform:1/0"]):
            status, report = run_command(
                ["haar", "synth", "example:pair2"] + extra)
            self.assertEqual(status, 2, extra)

    def test_synth_bad_nu(self):
        with make_case(nu=SKEWED_NU) as paths:
            status, report = run_command([
                "haar", "synth", "example:transitive-z2",
                "--nu", paths["nu"]])
        self.assertEqual(status, 1)
        self.assertIn("precondition.left-invariance", report.codes())

    def test_enumerate(self):
        status, report = run_command(["haar", "enumerate", "example:pair3"])
        self.assertEqual(status, 0)
        self.assertEqual(report.data["dimension"], 3)

    def test_sweep(self):
        status, report = run_command(["haar", "sweep", "--count", "3",
                                      "--n-cores", "1"])
        self.assertEqual(status, 0)
        self.assertEqual(report.data["instances"], 3)
        self.assertEqual(report.data["failed"], 0)

    def test_sweep_bad_cores(self):
        status, report = run_command(["haar", "sweep", "--n-cores", "0"])
        self.assertEqual(status, 2)


class TestBundle(unittest.TestCase):

    def test_check_drop(self):
        status, report = run_command(["bundle", "check",
                                      "example:drop-bundle"])
        self.assertEqual(status, 1)
        self.assertEqual(report.data["verdict"],
                         "not open; no coherent system; witness at 1/2")
        self.assertFalse(report.data["coherent_exists"])
        self.assertTrue(report.data["witness_function"])

    def test_check_open(self):
        status, report = run_command(["bundle", "check", "--example",
                                      "isolated-drop-bundle"])
        self.assertEqual(status, 0)
        self.assertEqual(report.data["verdict"],
                         "open; coherent system exists")

    def test_check_invalid(self):
        bundle = dict(kind="bundle", payload=dict(
            ambient="Z/2", breakpoints=["0/1", "1/1"], pieces=[[1]],
            points=[[0], [0]]))
        with make_case(b=bundle) as paths:
            status, report = run_command(["bundle", "check", paths["b"]])
        self.assertEqual(status, 1)
        self.assertIn("identity", report.codes())

    def test_eval_jump(self):
        status, report = run_command([
            "bundle", "eval", "example:drop-bundle", "example:affine-scale",
            "example:drop-witness"])
        self.assertEqual(status, 1)

    def test_eval_continuous(self):
        status, report = run_command([
            "bundle", "eval", "example:constant-z2-bundle",
            "example:affine-scale", "example:identity-sheet"])
        self.assertEqual(status, 0)
        self.assertEqual(report.data["value"]["knots"][0], 0)

    def test_eval_wrong_inputs(self):
        for family, phi in (("example:pair2-skewed", "example:identity-sheet"),
                            ("example:unit-scale", "example:unit-scale")):
            status, report = run_command([
                "bundle", "eval", "example:constant-z2-bundle", family, phi])
            self.assertEqual(status, 2, family)

    def test_eval_values_function(self):
        with make_case(phi=LAMBDA) as paths:
            status, report = run_command([
                "bundle", "eval", "example:constant-z2-bundle",
                "example:unit-scale", paths["phi"]])
        self.assertEqual(status, 2)


class TestConv(unittest.TestCase):

    def test_counting(self):
        manifest = system_manifest(counting_system(pair_groupoid(3)))
        with make_case(system=manifest) as paths:
            status, report = run_command(["conv", "test", "example:pair3",
                                          paths["system"], "--trials", "3"])
        self.assertEqual(status, 0)
        self.assertEqual(report.data["failures"], 0)

    def test_not_haar(self):
        status, report = run_command(["conv", "test", "example:pair2",
                                      "example:pair2-skewed"])
        self.assertEqual(status, 1)
        self.assertIn("verify_haar.invariance", report.codes())


class TestGoldenReports(unittest.TestCase):

    COMMANDS = (
        ["validate", "example:broken"],
        ["decompose", "example:pair2xZ2"],
        ["haar", "verify", "example:pair2", "example:pair2-skewed"],
        ["bundle", "check", "example:drop-bundle"])

    def golden(self, argv):
        status, report = run_command(argv)
        value = report.to_dict()
        violations = [(v["code"], v["witness"]) for v in value["violations"]]
        return status, value, violations

    def test_validate_broken(self):
        status, value, violations = self.golden(self.COMMANDS[0])
        self.assertEqual(status, 1)
        self.assertEqual(value["name"], "validate_groupoid")
        # (0,1) was given the inverse (1,2)
        self.assertSequenceEqual(violations, [
            ("inverse-endpoints", [1, 5]),
            ("inverse-right", [1, 5]),
            ("inverse-left", [1, 5])])
        self.assertEqual(value["errors"], [])
        self.assertEqual(value["data"], dict(objects=3, arrows=9,
                                             triples_checked=81))

    def test_decompose_pair2xz2(self):
        status, value, violations = self.golden(self.COMMANDS[1])
        self.assertEqual(status, 0)
        self.assertSequenceEqual(violations, [])
        data = value["data"]
        self.assertEqual(data["isotropy"], [
            dict(object=x, order=2, type="Z/2") for x in range(4)])
        self.assertEqual(data["orbits"], [[0, 2], [1, 3]])
        self.assertEqual(data["quotient_arrows"], 8)
        self.assertFalse(data["principal"])
        self.assertTrue(data["well_defined"])

    def test_haar_verify_skewed(self):
        status, value, violations = self.golden(self.COMMANDS[2])
        self.assertEqual(status, 1)
        # mu^0((0,1)(1,1)) = 1 but mu^1((1,1)) = 2, and symmetrically
        self.assertSequenceEqual(violations, [("invariance", [1, 3]),
                                              ("invariance", [2, 1])])
        self.assertEqual(value["data"], dict(objects=2, arrows=4,
                                             pairs_checked=8))

    def test_bundle_check_drop(self):
        status, value, violations = self.golden(self.COMMANDS[3])
        self.assertEqual(status, 1)
        self.assertSequenceEqual(violations,
                                 [("not-open", ["1/2", 1, "right"])])
        self.assertEqual(value["data"], dict(
            open=False, coherent_exists=False,
            verdict="not open; no coherent system; witness at 1/2",
            jumps=[["1/2", 1, "right", "1/1"]],
            witness_function=[[1, [["0/1", "0/1"], ["1/4", "0/1"],
                                   ["1/2", "1/1"], ["3/4", "0/1"],
                                   ["1/1", "0/1"]]]]))

    def test_stdout_is_deterministic(self):
        for argv in self.COMMANDS:
            outputs = []
            for _ in range(2):
                with contextlib.redirect_stdout(io.StringIO()) as stdout:
                    main(argv + ["--json"])
                outputs.append(stdout.getvalue())
            self.assertTrue(outputs[0])
            self.assertEqual(outputs[0], outputs[1], argv)
            self.assertEqual(json.loads(outputs[0]),
                             run_command(argv)[1].to_dict())


class TestExamples(unittest.TestCase):

    def test_list(self):
        status, report = run_command(["examples"])
        self.assertEqual(status, 0)
        self.assertIn("drop-bundle", report.data["examples"])

    def test_one(self):
        status, report = run_command(["examples", "drop-bundle"])
        self.assertEqual(status, 0)
        self.assertEqual(report.data["manifest"]["kind"], "bundle")

    def test_unknown(self):
        status, report = run_command(["examples", "nothing"])
        self.assertEqual(status, 2)

    def test_main(self):
        self.assertEqual(main(["examples"]), 0)
        self.assertEqual(main(["validate", "example:broken", "--json"]), 1)
        self.assertEqual(main(["nothing"]), 2)

    def test_json_report(self):
        status, report = run_command(["bundle", "check",
                                      "example:drop-bundle"])
        value = json.loads(report.to_json())
        self.assertFalse(value["ok"])
        self.assertEqual(value["data"]["jumps"],
                         [["1/2", 1, "right", "1/1"]])


if __name__ == '__main__':
    unittest.main()
