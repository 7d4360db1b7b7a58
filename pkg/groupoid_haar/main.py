"""Command-line interface

    groupoid-haar validate <groupoid>
    groupoid-haar decompose <groupoid>
    groupoid-haar haar verify <groupoid> <system>
    groupoid-haar haar synth <groupoid> --nu <file|uniform:p/q>
                                        --lambda <file|const:p/q>
    groupoid-haar haar enumerate <groupoid>
    groupoid-haar haar sweep [--count N] [--seed S] [--n-cores K]
    groupoid-haar bundle check <bundle>
    groupoid-haar bundle eval <bundle> <family> <phi>
    groupoid-haar conv test <groupoid> <system> [--seed N] [--trials T]
    groupoid-haar examples [name]

Inputs are manifest files or "example:<name>"; --example <name> supplies
the first input. The exit status is 0 on success, 1 when a verification
found violations and 2 for input errors.
"""

import argparse
import json
import logging
import os
import sys

import numpy as np
import tqdm

from .convolution import check_associativity, check_involution, \
    check_unit
from .decompose import QuotientInconsistencyError, decompose_report, \
    quotient_principal, stability_groupoid
from .generators import random_function
from .groupoid import ActionError, MalformedTableError, validate_groupoid
from .groups import GroupTableError
from .haar import HaarSystem, enumerate_invariant_systems, \
    principal_haar_from_lambda, synthesize_haar, verify_haar
from .manifest import ManifestError, build_function, build_groupoid, \
    build_bundle, build_measures, build_scale, parse_manifest, serialize, \
    system_manifest
from .measures import CoherentSystem, uniform_coherent
from .piecewise import verify_continuity
from .rational import RationalFormatError, as_fraction
from .registry import describe, example_names, get_example
from .report import PreconditionError, Report
from .stepbundle import InadmissibleFunctionError, ScaledHaarFamily, \
    coherent_exists, evaluate_family, is_open_projection, validate_bundle
from .sweep import default_n_cores, run_sweep

logger = logging.getLogger("groupoid_haar.main")

LOG_ENV = "GROUPOID_HAAR_LOG"
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

EXAMPLE_PREFIX = "example:"


class InputError(Exception):
    """Anything about the inputs that prevents a command from running"""


def _add_common(parser):
    parser.add_argument("--json",
                        action="store_true",
                        help="Print the report as JSON")
    parser.add_argument("--log",
                        default=os.environ.get(LOG_ENV, "WARNING"),
                        help="The log level for logging messages")
    parser.add_argument("--example",
                        help="Use the named built-in example as the first "
                        "input")


def _add_inputs(parser, *names):
    for i, name in enumerate(names):
        parser.add_argument(name, nargs="?" if i == 0 else None,
                            help="A manifest file or example:<name>")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="groupoid-haar",
        description="Verify and synthesize Haar systems on finite groupoids "
        "and step subgroup bundles")
    subparsers = parser.add_subparsers(dest="command")
    subparsers.required = True

    p = subparsers.add_parser("validate", help="Check the groupoid axioms")
    _add_inputs(p, "groupoid")
    _add_common(p)
    p = subparsers.add_parser(
        "decompose",
        help="Isotropy groups, orbits and the principal quotient")
    _add_inputs(p, "groupoid")
    _add_common(p)

    haar = subparsers.add_parser("haar", help="Haar systems")
    haar_commands = haar.add_subparsers(dest="action")
    haar_commands.required = True
    p = haar_commands.add_parser("verify", help="Check a Haar system")
    _add_inputs(p, "groupoid", "system")
    _add_common(p)
    p = haar_commands.add_parser(
        "synth", help="Synthesize a Haar system from nu and lambda")
    _add_inputs(p, "groupoid")
    p.add_argument("--nu",
                   default="uniform:1",
                   help="A coherent system manifest or uniform:<scale>")
    p.add_argument("--lambda",
                   dest="lam",
                   default="const:1",
                   help="A function manifest with one value per object or "
                   "const:<value>")
    p.add_argument("--output",
                   help="Write the synthesized system manifest here")
    _add_common(p)
    p = haar_commands.add_parser(
        "enumerate", help="Solve the invariance equations exactly")
    _add_inputs(p, "groupoid")
    _add_common(p)
    p = haar_commands.add_parser(
        "sweep", help="Check synthesis over a generated family")
    p.add_argument("--count",
                   type=int,
                   default=100,
                   help="The number of generated groupoids")
    p.add_argument("--seed",
                   type=int,
                   default=1234,
                   help="The seed of the generated family")
    p.add_argument("--n-cores",
                   type=int,
                   default=default_n_cores(),
                   help="The number of cores to use for multiprocessing.")
    p.add_argument("--progress",
                   action="store_true",
                   help="Show a progress bar")
    _add_common(p)

    bundle = subparsers.add_parser("bundle", help="Step subgroup bundles")
    bundle_commands = bundle.add_subparsers(dest="action")
    bundle_commands.required = True
    p = bundle_commands.add_parser(
        "check", help="Decide openness and existence of a coherent system")
    _add_inputs(p, "bundle")
    _add_common(p)
    p = bundle_commands.add_parser(
        "eval", help="Integrate a function against a scaled family")
    _add_inputs(p, "bundle", "family", "phi")
    _add_common(p)

    conv = subparsers.add_parser("conv", help="Convolution algebra")
    conv_commands = conv.add_subparsers(dest="action")
    conv_commands.required = True
    p = conv_commands.add_parser(
        "test", help="Randomized associativity, involution and unit checks")
    _add_inputs(p, "groupoid", "system")
    p.add_argument("--seed",
                   type=int,
                   default=1234,
                   help="The seed for the random functions")
    p.add_argument("--trials",
                   type=int,
                   default=20,
                   help="The number of random triples")
    p.add_argument("--progress",
                   action="store_true",
                   help="Show a progress bar")
    _add_common(p)

    p = subparsers.add_parser("examples", help="List the built-in examples")
    p.add_argument("name",
                   nargs="?",
                   help="Print this example's manifest")
    _add_common(p)
    return parser


def parse_args(args=sys.argv[1:]):
    return make_parser().parse_args(args)


def load_manifest(source, kind):
    """Read a manifest from a file or the registry and check its kind

    :raises InputError: if the source cannot be read or parsed
    """
    try:
        if source.startswith(EXAMPLE_PREFIX):
            manifest = get_example(source[len(EXAMPLE_PREFIX):])
        else:
            with open(source) as fd:
                manifest = parse_manifest(fd.read())
    except KeyError as e:
        raise InputError(e.args[0])
    except OSError as e:
        raise InputError("cannot read %s: %s" % (source, e))
    except ManifestError as e:
        raise InputError("%s: %s" % (source, e))
    if manifest.kind != kind:
        raise InputError("%s: expected a %s manifest, got %s" %
                         (source, kind, manifest.kind))
    return manifest


def _inputs(args, *names):
    values = [getattr(args, _) for _ in names]
    if args.example is not None:
        if values[0] is not None:
            raise InputError("give either --example or the %s input"
                             % names[0])
        values[0] = EXAMPLE_PREFIX + args.example
    missing = [n for n, v in zip(names, values) if v is None]
    if missing:
        raise InputError("missing input: %s" % ", ".join(missing))
    return values


def _groupoid(source):
    manifest = load_manifest(source, "groupoid")
    try:
        return build_groupoid(manifest.payload)
    except (GroupTableError, ActionError, MalformedTableError) as e:
        raise InputError("%s: %s" % (source, e))


def _valid_groupoid(source, report):
    """Build a groupoid and merge its validation into report"""
    G = _groupoid(source)
    validation = validate_groupoid(G)
    if not validation.ok:
        report.extend(validation, prefix="groupoid")
        return None
    return G


def _bundle(source):
    manifest = load_manifest(source, "bundle")
    try:
        return build_bundle(manifest.payload)
    except GroupTableError as e:
        raise InputError("%s: %s" % (source, e))


def _measures(source):
    manifest = load_manifest(source, "system")
    try:
        return build_measures(manifest.payload)
    except ManifestError as e:
        raise InputError("%s: %s" % (source, e))


def _status(report):
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_validate(args):
    source, = _inputs(args, "groupoid")
    report = validate_groupoid(_groupoid(source))
    return _status(report), report


def cmd_decompose(args):
    source, = _inputs(args, "groupoid")
    report = Report("decompose")
    G = _valid_groupoid(source, report)
    if G is None:
        return EXIT_VIOLATION, report
    report = decompose_report(G)
    return _status(report), report


def cmd_haar_verify(args):
    groupoid, system = _inputs(args, "groupoid", "system")
    report = Report("verify_haar")
    G = _valid_groupoid(groupoid, report)
    if G is None:
        return EXIT_VIOLATION, report
    report = verify_haar(G, HaarSystem(G, _measures(system)))
    return _status(report), report


def _parse_value(text, what):
    try:
        return as_fraction(text)
    except (RationalFormatError, ValueError):
        raise InputError("%s: not a rational: %r" % (what, text))


def _nu(option, G):
    bundle = stability_groupoid(G)
    if option.startswith("uniform:"):
        scale = _parse_value(option[len("uniform:"):], "--nu")
        if scale <= 0:
            raise InputError("--nu: scale must be positive")
        return uniform_coherent(bundle, scale)
    return CoherentSystem(_measures(option))


def _lambda(option, G):
    if option.startswith("const:"):
        return [_parse_value(option[len("const:"):], "--lambda")] * G.n_objects
    manifest = load_manifest(option, "function")
    if "values" not in manifest.payload:
        raise InputError("--lambda: expected one value per object")
    return build_function(manifest.payload)


def cmd_haar_synth(args):
    source, = _inputs(args, "groupoid")
    report = Report("haar_synth")
    G = _valid_groupoid(source, report)
    if G is None:
        return EXIT_VIOLATION, report
    nu = _nu(args.nu, G)
    try:
        m = principal_haar_from_lambda(quotient_principal(G),
                                       _lambda(args.lam, G))
    except ValueError as e:
        raise InputError("--lambda: %s" % e)
    try:
        mu = synthesize_haar(G, nu, m)
    except PreconditionError as e:
        report.extend(e.report, prefix="precondition")
        return EXIT_VIOLATION, report
    report.extend(verify_haar(G, mu), prefix="verify_haar")
    manifest = system_manifest(mu, name="synthesized")
    report.data.update(system=manifest.payload)
    if args.output is not None:
        with open(args.output, "w") as fd:
            fd.write(serialize(manifest))
        report.data.update(output=args.output)
    return _status(report), report


def cmd_haar_enumerate(args):
    source, = _inputs(args, "groupoid")
    report = Report("enumerate_invariant_systems")
    G = _valid_groupoid(source, report)
    if G is None:
        return EXIT_VIOLATION, report
    report = enumerate_invariant_systems(G).report()
    report.data.update(objects=G.n_objects, arrows=G.n_arrows)
    return EXIT_OK, report


def cmd_haar_sweep(args):
    if args.count < 0 or args.n_cores < 1:
        raise InputError("--count must be >= 0 and --n-cores >= 1")
    report = run_sweep(args.count, args.seed, args.n_cores,
                       silent=not args.progress)
    return _status(report), report


def cmd_bundle_check(args):
    source, = _inputs(args, "bundle")
    B = _bundle(source)
    report = validate_bundle(B)
    if not report.ok:
        return EXIT_VIOLATION, report
    report = Report("bundle_check")
    openness = is_open_projection(B)
    existence = coherent_exists(B)
    report.extend(openness.to_report())
    if openness.holds != existence.holds:
        report.add_violation("mismatch", "openness and existence disagree")
    if openness.holds:
        verdict = "open; coherent system exists"
    else:
        verdict = "not open; no coherent system; witness at %s" % ", ".join(
            sorted({str(w[0]) for w in openness.witnesses}))
        report.data.update(
            jumps=[list(w) for w in existence.witnesses],
            witness_function=existence.function.to_graphs())
    report.data.update(open=openness.holds,
                       coherent_exists=existence.holds, verdict=verdict)
    return _status(report), report


def cmd_bundle_eval(args):
    bundle, family, phi = _inputs(args, "bundle", "family", "phi")
    B = _bundle(bundle)
    report = validate_bundle(B)
    if not report.ok:
        return EXIT_VIOLATION, report
    try:
        scale = build_scale(load_manifest(family, "system").payload)
    except (ManifestError, ValueError) as e:
        raise InputError("%s: %s" % (family, e))
    if scale.degree > 1 or not scale.is_positive():
        raise InputError("%s: scale must be positive and piecewise linear"
                         % family)
    manifest = load_manifest(phi, "function")
    if "sheets" not in manifest.payload:
        raise InputError("%s: expected a sheet function" % phi)
    try:
        function = build_function(manifest.payload)
    except ValueError as e:
        raise InputError("%s: %s" % (phi, e))
    try:
        value = evaluate_family(B, ScaledHaarFamily(B, scale), function)
    except InadmissibleFunctionError as e:
        return EXIT_VIOLATION, e.report
    report = verify_continuity(value)
    report.data.update(value=value.to_dict())
    return _status(report), report


def cmd_conv_test(args):
    groupoid, system = _inputs(args, "groupoid", "system")
    report = Report("conv_test")
    G = _valid_groupoid(groupoid, report)
    if G is None:
        return EXIT_VIOLATION, report
    mu = HaarSystem(G, _measures(system))
    haar = verify_haar(G, mu)
    if not haar.ok:
        report.extend(haar, prefix="verify_haar")
        return EXIT_VIOLATION, report
    rng = np.random.RandomState(args.seed)
    failures = 0
    for trial in tqdm.tqdm(range(args.trials), disable=not args.progress):
        f, g, h = [random_function(G, rng) for _ in range(3)]
        for check in (check_associativity(f, g, h, G, mu),
                      check_involution(f, g, G, mu),
                      check_unit(f, G, mu)):
            if not check.ok:
                failures += 1
                report.extend(check, prefix="trial %d" % trial)
    report.data.update(trials=args.trials, seed=args.seed,
                       failures=failures)
    return _status(report), report


def cmd_examples(args):
    report = Report("examples")
    if args.name is not None:
        try:
            manifest = get_example(args.name)
        except KeyError as e:
            raise InputError(e.args[0])
        report.data.update(manifest=json.loads(serialize(manifest)))
    else:
        report.data.update(examples={name: describe(name)
                                     for name in example_names()})
    return EXIT_OK, report


COMMANDS = {
    ("validate", None): cmd_validate,
    ("decompose", None): cmd_decompose,
    ("haar", "verify"): cmd_haar_verify,
    ("haar", "synth"): cmd_haar_synth,
    ("haar", "enumerate"): cmd_haar_enumerate,
    ("haar", "sweep"): cmd_haar_sweep,
    ("bundle", "check"): cmd_bundle_check,
    ("bundle", "eval"): cmd_bundle_eval,
    ("conv", "test"): cmd_conv_test,
    ("examples", None): cmd_examples,
}


def execute(args):
    """Run a parsed command

    :returns: (exit status, Report)
    """
    command = COMMANDS[args.command, getattr(args, "action", None)]
    try:
        return command(args)
    except InputError as e:
        report = Report(args.command)
        report.add_error("input", str(e))
        return EXIT_INPUT, report
    except QuotientInconsistencyError as e:
        return EXIT_VIOLATION, e.report


def run_command(argv):
    """Parse argv and run the command

    :returns: (exit status, Report); usage errors give status 2
    """
    try:
        args = parse_args(argv)
    except SystemExit as e:
        report = Report("usage")
        if e.code not in (0, None):
            report.add_error("usage", "invalid command line: %s" %
                             " ".join(argv))
        return (e.code or 0), report
    return execute(args)


def format_report(report, as_json=False):
    return report.to_json() if as_json else report.format_text()


def main(args=sys.argv[1:]):
    try:
        parsed = parse_args(args)
    except SystemExit as e:
        return e.code
    logging.basicConfig(level=getattr(logging, parsed.log.upper()))
    status, report = execute(parsed)
    print(format_report(report, parsed.json))
    return status


if __name__ == "__main__":
    sys.exit(main())
