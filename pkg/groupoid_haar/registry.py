import copy

from .groupoid import pair_groupoid
from .manifest import build, groupoid_manifest, manifest_from_dict, \
    serialize


def _broken():
    """pair_groupoid(3) with the inverse of (0,1) redirected to (1,2)"""
    manifest = groupoid_manifest(pair_groupoid(3), name="broken")
    manifest.payload["inverse"][1] = [1, 5]
    return dict(kind="groupoid", name="broken", payload=manifest.payload)


def _groupoid(name, payload):
    return dict(kind="groupoid", name=name, payload=payload)


EXAMPLES = {
    "pair2": (
        "pair groupoid on 2 objects",
        _groupoid("pair2", {"pair": 2})),
    "pair3": (
        "pair groupoid on 3 objects",
        _groupoid("pair3", {"pair": 3})),
    "pair2xZ2": (
        "pair groupoid on 2 objects times a bundle of two Z/2",
        _groupoid("pair2xZ2", {"product": [
            {"pair": 2}, {"bundle": ["Z/2", "Z/2"]}]})),
    "transitive-z2": (
        "transitive groupoid over 2 objects with isotropy Z/2",
        _groupoid("transitive-z2", {"product": [
            {"pair": 2}, {"bundle": ["Z/2"]}]})),
    "bundle-z2-trivial": (
        "bundle of groups with fibers Z/2 and the trivial group",
        _groupoid("bundle-z2-trivial", {"bundle": ["Z/2", "Z/1"]})),
    "s3": (
        "S3 as a one-object groupoid",
        _groupoid("s3", {"bundle": ["S3"]})),
    "z2-trivial-action": (
        "Z/2 acting trivially on 2 points",
        _groupoid("z2-trivial-action", {"action": {
            "group": "Z/2", "points": 2, "act": [[0, 0], [1, 1]]}})),
    "z2-swap": (
        "Z/2 swapping 2 points",
        _groupoid("z2-swap", {"action": {
            "group": "Z/2", "points": 2, "act": [[0, 1], [1, 0]]}})),
    "z4-sign-action": (
        "Z/4 acting on 2 points through Z/4 -> Z/2",
        _groupoid("z4-sign-action", {"action": {
            "group": "Z/4", "points": 2,
            "act": [[0, 1, 0, 1], [1, 0, 1, 0]]}})),
    "pair2+pair1": (
        "disjoint union of pair groupoids on 2 and 1 objects",
        _groupoid("pair2+pair1", {"union": [{"pair": 2}, {"pair": 1}]})),
    "broken": (
        "pair groupoid on 3 objects with one inverse entry redirected",
        _broken()),
    "pair2-skewed": (
        "measures on pair2 that fail left invariance",
        dict(kind="system", name="pair2-skewed", payload={"measures": [
            {"x": 0, "weights": [[0, "1/1"], [1, "1/1"]]},
            {"x": 1, "weights": [[2, "1/1"], [3, "2/1"]]}]})),
    "constant-z2-bundle": (
        "Z/2 on all of [0, 1]",
        dict(kind="bundle", name="constant-z2-bundle", payload={
            "ambient": "Z/2", "breakpoints": ["0/1", "1/1"],
            "pieces": [[0, 1]], "points": [[0, 1], [0, 1]]})),
    "drop-bundle": (
        "Z/2 up to and including 1/2, trivial after",
        dict(kind="bundle", name="drop-bundle", payload={
            "ambient": "Z/2", "breakpoints": ["0/1", "1/2", "1/1"],
            "pieces": [[0, 1], [0]], "points": [[0, 1], [0, 1], [0]]})),
    "isolated-drop-bundle": (
        "Z/2 everywhere except the trivial group at 1/2",
        dict(kind="bundle", name="isolated-drop-bundle", payload={
            "ambient": "Z/2", "breakpoints": ["0/1", "1/2", "1/1"],
            "pieces": [[0, 1], [0, 1]], "points": [[0, 1], [0], [0, 1]]})),
    "unit-scale": (
        "the scale 1 on [0, 1]",
        dict(kind="system", name="unit-scale", payload={
            "scale": [["0/1", "1/1"], ["1/1", "1/1"]]})),
    "affine-scale": (
        "the scale 1 + x on [0, 1]",
        dict(kind="system", name="affine-scale", payload={
            "scale": [["0/1", "1/1"], ["1/1", "2/1"]]})),
    "drop-witness": (
        "a tent on the sheet of the element that leaves drop-bundle",
        dict(kind="function", name="drop-witness", payload={"sheets": [
            [1, [["0/1", "0/1"], ["1/4", "0/1"], ["1/2", "1/1"],
                 ["3/4", "0/1"], ["1/1", "0/1"]]]]})),
    "identity-sheet": (
        "the constant 1 on the sheet of the identity",
        dict(kind="function", name="identity-sheet", payload={"sheets": [
            [0, [["0/1", "1/1"], ["1/1", "1/1"]]]]})),
}


def example_names():
    return sorted(EXAMPLES)


def describe(name):
    return EXAMPLES[name][0]


def get_example(name):
    """The validated Manifest of a built-in example

    :raises KeyError: for an unknown name
    """
    if name not in EXAMPLES:
        raise KeyError("No such example: %s" % name)
    return manifest_from_dict(copy.deepcopy(EXAMPLES[name][1]))


def example_text(name):
    return serialize(get_example(name))


def build_example(name):
    return build(get_example(name))
