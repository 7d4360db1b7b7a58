"""Declarative JSON inputs

A manifest is a JSON object

    {"kind": "groupoid" | "bundle" | "system" | "function",
     "name": optional string, "seed": optional integer,
     "payload": {...}}

parse_manifest checks the payload schema for the kind and converts every
rational to a Fraction, so parse_manifest(serialize(m)) == m. build turns a
manifest into the package's objects.

Groupoid payloads:
    {"pair": n}
    {"bundle": [group, ...]}
    {"action": {"group": group, "points": n, "act": [[x.h for h] for x]}}
    {"product": [groupoid, groupoid]}
    {"union": [groupoid, ...]}
    {"objects": n, "arrows": [{"id": a, "src": x, "dst": y}, ...],
     "compose": [[a, b, ab], ...], "inverse": [[a, a^-1], ...],
     "identity": [[x, a], ...]}
where a group is a Cayley table (list of lists) or a name such as "Z/4".

Bundle payloads:
    {"ambient": group, "breakpoints": ["0", "1/2", "1"],
     "pieces": [[elements], ...], "points": [[elements], ...]}

System payloads:
    {"measures": [{"x": x, "weights": [[arrow, "p/q"], ...]}, ...]}
    {"scale": graph}

Function payloads:
    {"values": [[arrow, "p/q"], ...]}
    {"sheets": [[element, graph], ...]}

A graph is a list of [x, "p/q"] pairs, see PiecewiseValue.from_graph.
"""

import json
import logging

from .convolution import GroupoidFunction
from .groupoid import FiniteGroupoid, action_groupoid, disjoint_union, \
    group_bundle, pair_groupoid, product_groupoid
from .groups import FiniteGroup, named_group
from .measures import FiberMeasure
from .piecewise import PiecewiseValue
from .rational import RationalFormatError, parse_rational
from .report import jsonable
from .stepbundle import SheetFunction, StepSubgroupBundle

logger = logging.getLogger("groupoid_haar.manifest")

KINDS = ("groupoid", "bundle", "system", "function")


class ManifestError(ValueError):
    """A manifest that cannot be used

    :param code: "json", "schema", "rational", "range" or "dangling"
    :param location: the JSON path of the offending field or the
           line/column of a syntax error
    :param message: what is wrong
    """

    def __init__(self, code, location, message):
        super(ManifestError, self).__init__(
            "%s error at %s: %s" % (code, location, message))
        self.code = code
        self.location = location


class Manifest:

    def __init__(self, kind, payload, name=None, seed=None):
        self.kind = kind
        self.payload = payload
        self.name = name
        self.seed = seed

    def __eq__(self, other):
        if not isinstance(other, Manifest):
            return NotImplemented
        return (self.kind, self.payload, self.name, self.seed) == \
            (other.kind, other.payload, other.name, other.seed)

    def __repr__(self):
        return "Manifest(%s, %s)" % (self.kind, self.name)


def _schema(path, message):
    return ManifestError("schema", path, message)


def _expect(value, types, path, what):
    if isinstance(value, bool) or not isinstance(value, types):
        raise _schema(path, "expected %s" % what)
    return value


def _int(value, path, minimum=0):
    _expect(value, int, path, "an integer")
    if value < minimum:
        raise ManifestError("range", path, "expected an integer >= %d, got %d"
                            % (minimum, value))
    return value


def _list(value, path):
    return _expect(value, list, path, "a list")


def _dict(value, path, required=(), optional=()):
    _expect(value, dict, path, "an object")
    for key in required:
        if key not in value:
            raise _schema(path, "missing field %r" % key)
    for key in value:
        if key not in required and key not in optional:
            raise _schema(path, "unknown field %r" % key)
    return value


def _rational(value, path):
    try:
        return parse_rational(value)
    except RationalFormatError as e:
        raise ManifestError("rational", path, str(e))


def _one_of(value, path, keys):
    _expect(value, dict, path, "an object")
    present = [k for k in keys if k in value]
    if len(present) != 1:
        raise _schema(path, "expected exactly one of %s" % ", ".join(keys))
    return present[0]


def _group(value, path):
    """Normalize a group: a name or a square table of element indices"""
    if isinstance(value, str):
        try:
            named_group(value)
        except (KeyError, ValueError):
            raise ManifestError("dangling", path, "no such group %r" % value)
        return value
    rows = _list(value, path)
    n = len(rows)
    for i, row in enumerate(rows):
        _list(row, "%s[%d]" % (path, i))
        if len(row) != n:
            raise _schema("%s[%d]" % (path, i), "table is not square")
        for j, entry in enumerate(row):
            p = "%s[%d][%d]" % (path, i, j)
            if _int(entry, p) >= n:
                raise ManifestError("dangling", p, "unknown element %d"
                                    % entry)
    return [list(_) for _ in rows]


def _group_order(value):
    return named_group(value).order if isinstance(value, str) else len(value)


def _explicit_groupoid(value, path):
    _dict(value, path, required=("objects", "arrows", "compose", "inverse",
                                 "identity"))
    n_objects = _int(value["objects"], path + ".objects")
    arrows = []
    for i, entry in enumerate(_list(value["arrows"], path + ".arrows")):
        p = "%s.arrows[%d]" % (path, i)
        _dict(entry, p, required=("id", "src", "dst"))
        arrow = {k: _int(entry[k], "%s.%s" % (p, k))
                 for k in ("id", "src", "dst")}
        for k in ("src", "dst"):
            if arrow[k] >= n_objects:
                raise ManifestError("dangling", "%s.%s" % (p, k),
                                    "unknown object %d" % arrow[k])
        arrows.append(arrow)
    ids = sorted(a["id"] for a in arrows)
    if ids != list(range(len(arrows))):
        raise _schema(path + ".arrows", "arrow ids must be 0..%d" %
                      (len(arrows) - 1))
    n = len(arrows)

    def entries(field, width, object_columns=()):
        result = []
        for i, entry in enumerate(_list(value[field],
                                        "%s.%s" % (path, field))):
            p = "%s.%s[%d]" % (path, field, i)
            _list(entry, p)
            if len(entry) != width:
                raise _schema(p, "expected %d entries" % width)
            for k, v in enumerate(entry):
                limit = n_objects if k in object_columns else n
                if _int(v, "%s[%d]" % (p, k)) >= limit:
                    raise ManifestError(
                        "dangling", "%s[%d]" % (p, k), "unknown %s %d" % (
                            "object" if k in object_columns else "arrow", v))
            result.append(list(entry))
        return result

    return dict(objects=n_objects, arrows=arrows,
                compose=entries("compose", 3),
                inverse=entries("inverse", 2),
                identity=entries("identity", 2, object_columns=(0,)))


def _groupoid(value, path):
    key = _one_of(value, path, ("pair", "bundle", "action", "product",
                                "union", "objects"))
    if key == "objects":
        return _explicit_groupoid(value, path)
    _dict(value, path, required=(key,))
    p = "%s.%s" % (path, key)
    if key == "pair":
        return dict(pair=_int(value[key], p, minimum=1))
    if key == "bundle":
        return dict(bundle=[_group(g, "%s[%d]" % (p, i))
                            for i, g in enumerate(_list(value[key], p))])
    if key == "action":
        action = _dict(value[key], p, required=("group", "points", "act"))
        group = _group(action["group"], p + ".group")
        order = _group_order(group)
        points = _int(action["points"], p + ".points")
        act = _list(action["act"], p + ".act")
        if len(act) != points:
            raise _schema(p + ".act", "expected one row per point")
        for x, row in enumerate(act):
            q = "%s.act[%d]" % (p, x)
            if len(_list(row, q)) != order:
                raise _schema(q, "expected one entry per group element")
            for h, y in enumerate(row):
                if _int(y, "%s[%d]" % (q, h)) >= points:
                    raise ManifestError("dangling", "%s[%d]" % (q, h),
                                        "unknown point %d" % y)
        return dict(action=dict(group=group, points=points,
                                act=[list(_) for _ in act]))
    parts = _list(value[key], p)
    if key == "product" and len(parts) != 2:
        raise _schema(p, "a product has two factors")
    return {key: [_groupoid(g, "%s[%d]" % (p, i))
                  for i, g in enumerate(parts)]}


def _graph(value, path):
    result = []
    for i, entry in enumerate(_list(value, path)):
        p = "%s[%d]" % (path, i)
        if len(_list(entry, p)) != 2:
            raise _schema(p, "expected an [x, value] pair")
        x = _rational(entry[0], p + "[0]")
        if not 0 <= x <= 1:
            raise ManifestError("range", p + "[0]",
                                "x = %s is outside [0, 1]" % x)
        result.append([x, _rational(entry[1], p + "[1]")])
    return result


def _bundle(value, path):
    _dict(value, path, required=("ambient", "breakpoints", "pieces",
                                 "points"))
    ambient = _group(value["ambient"], path + ".ambient")
    order = _group_order(ambient)
    breakpoints = []
    for i, b in enumerate(_list(value["breakpoints"],
                                path + ".breakpoints")):
        p = "%s.breakpoints[%d]" % (path, i)
        b = _rational(b, p)
        if not 0 <= b <= 1:
            raise ManifestError("range", p, "breakpoint %s is outside [0, 1]"
                                % b)
        breakpoints.append(b)

    def groups(field, count):
        p = "%s.%s" % (path, field)
        rows = _list(value[field], p)
        if len(rows) != count:
            raise _schema(p, "expected %d groups, got %d" % (count, len(rows)))
        for i, row in enumerate(rows):
            for j, g in enumerate(_list(row, "%s[%d]" % (p, i))):
                q = "%s[%d][%d]" % (p, i, j)
                if _int(g, q) >= order:
                    raise ManifestError("dangling", q, "unknown element %d"
                                        % g)
        return [sorted(set(_)) for _ in rows]

    return dict(ambient=ambient, breakpoints=breakpoints,
                pieces=groups("pieces", len(breakpoints) - 1),
                points=groups("points", len(breakpoints)))


def _weights(value, path):
    result = []
    for i, entry in enumerate(_list(value, path)):
        p = "%s[%d]" % (path, i)
        if len(_list(entry, p)) != 2:
            raise _schema(p, "expected an [id, value] pair")
        result.append([_int(entry[0], p + "[0]"),
                       _rational(entry[1], p + "[1]")])
    return result


def _system(value, path):
    key = _one_of(value, path, ("measures", "scale"))
    _dict(value, path, required=(key,))
    if key == "scale":
        return dict(scale=_graph(value["scale"], path + ".scale"))
    measures = []
    for i, entry in enumerate(_list(value["measures"], path + ".measures")):
        p = "%s.measures[%d]" % (path, i)
        _dict(entry, p, required=("x", "weights"))
        measures.append(dict(x=_int(entry["x"], p + ".x"),
                             weights=_weights(entry["weights"],
                                              p + ".weights")))
    return dict(measures=measures)


def _function(value, path):
    key = _one_of(value, path, ("values", "sheets"))
    _dict(value, path, required=(key,))
    if key == "values":
        return dict(values=_weights(value["values"], path + ".values"))
    sheets = []
    for i, entry in enumerate(_list(value["sheets"], path + ".sheets")):
        p = "%s.sheets[%d]" % (path, i)
        if len(_list(entry, p)) != 2:
            raise _schema(p, "expected an [element, graph] pair")
        sheets.append([_int(entry[0], p + "[0]"),
                       _graph(entry[1], p + "[1]")])
    return dict(sheets=sheets)


PAYLOAD_PARSERS = dict(groupoid=_groupoid, bundle=_bundle, system=_system,
                       function=_function)


def manifest_from_dict(value):
    """Validate an already decoded manifest

    :raises ManifestError: for the first schema problem found
    """
    _dict(value, "$", required=("kind", "payload"), optional=("name", "seed"))
    kind = value["kind"]
    if kind not in KINDS:
        raise _schema("$.kind", "kind must be one of %s" % ", ".join(KINDS))
    name = value.get("name")
    if name is not None:
        _expect(name, str, "$.name", "a string")
    seed = value.get("seed")
    if seed is not None:
        _int(seed, "$.seed")
    payload = PAYLOAD_PARSERS[kind](value["payload"], "$.payload")
    return Manifest(kind, payload, name=name, seed=seed)


def parse_manifest(text):
    """Parse and validate a manifest

    :param text: the JSON text
    :returns: a Manifest whose rationals are Fractions
    :raises ManifestError: with code "json" and a line/column location for
            syntax errors, otherwise with the JSON path of the field
    """
    try:
        value = json.loads(text)
    except json.JSONDecodeError as e:
        raise ManifestError("json", "line %d column %d" % (e.lineno, e.colno),
                            e.msg)
    return manifest_from_dict(value)


def serialize(manifest):
    value = dict(kind=manifest.kind, payload=jsonable(manifest.payload))
    if manifest.name is not None:
        value["name"] = manifest.name
    if manifest.seed is not None:
        value["seed"] = manifest.seed
    return json.dumps(value, indent=2, sort_keys=True)


def build_group(value):
    if isinstance(value, str):
        return named_group(value)
    return FiniteGroup(value)


def build_groupoid(payload):
    """A FiniteGroupoid from a validated groupoid payload

    :raises GroupTableError: for a table that is not a group
    :raises ActionError: for an act table that is not an action
    """
    if "pair" in payload:
        return pair_groupoid(payload["pair"])
    if "bundle" in payload:
        return group_bundle([build_group(_) for _ in payload["bundle"]])
    if "action" in payload:
        action = payload["action"]
        return action_groupoid(build_group(action["group"]),
                               action["points"], action["act"])
    if "product" in payload:
        g1, g2 = [build_groupoid(_) for _ in payload["product"]]
        return product_groupoid(g1, g2)
    if "union" in payload:
        return disjoint_union([build_groupoid(_) for _ in payload["union"]])
    return FiniteGroupoid.from_tables(
        payload["objects"],
        [(a["id"], a["src"], a["dst"]) for a in payload["arrows"]],
        payload["compose"], payload["inverse"], payload["identity"])


def build_bundle(payload):
    return StepSubgroupBundle(build_group(payload["ambient"]),
                              payload["breakpoints"], payload["pieces"],
                              payload["points"])


def build_measures(payload):
    """object -> FiberMeasure from a "measures" system payload"""
    if "measures" not in payload:
        raise ManifestError("schema", "$.payload",
                            "expected a measures system")
    return {m["x"]: FiberMeasure(m["weights"]) for m in payload["measures"]}


def build_scale(payload):
    if "scale" not in payload:
        raise ManifestError("schema", "$.payload", "expected a scale system")
    return PiecewiseValue.from_graph(payload["scale"])


def build_function(payload, groupoid=None):
    """A GroupoidFunction (with groupoid) or a SheetFunction"""
    if "sheets" in payload:
        return SheetFunction.from_graphs(payload["sheets"])
    if groupoid is None:
        return dict(payload["values"])
    values = dict(payload["values"])
    for a in values:
        if a >= groupoid.n_arrows:
            raise ManifestError("dangling", "$.payload.values",
                                "unknown arrow %d" % a)
    return GroupoidFunction.from_mapping(groupoid, values)


def build(manifest):
    """Build the object a manifest describes

    Systems of measures and arrow-valued functions need a groupoid and are
    built with build_measures and build_function; build returns them as
    plain mappings.
    """
    if manifest.kind == "groupoid":
        return build_groupoid(manifest.payload)
    if manifest.kind == "bundle":
        return build_bundle(manifest.payload)
    if manifest.kind == "system":
        if "scale" in manifest.payload:
            return build_scale(manifest.payload)
        return build_measures(manifest.payload)
    return build_function(manifest.payload)


def groupoid_manifest(G, name=None):
    """The explicit-table manifest of a FiniteGroupoid"""
    pairs = [[int(a), int(b), int(G.compose[a, b])]
             for a in range(G.n_arrows) for b in range(G.n_arrows)
             if G.compose[a, b] >= 0]
    return Manifest("groupoid", dict(
        objects=G.n_objects,
        arrows=[dict(id=a.id, src=a.src, dst=a.dst) for a in G.arrows],
        compose=pairs,
        inverse=[[a, int(G.inverse[a])] for a in range(G.n_arrows)],
        identity=[[x, int(G.identity[x])] for x in G.objects]), name=name)


def system_manifest(system, name=None):
    """The manifest of a HaarSystem, CoherentSystem or measure mapping"""
    if isinstance(system, PiecewiseValue):
        return Manifest("system", dict(scale=system.to_graph()), name=name)
    return Manifest("system", dict(measures=[
        dict(x=x, weights=[[a, w] for a, w in system[x].table()])
        for x in sorted(system)]), name=name)


def function_manifest(f, name=None):
    if isinstance(f, SheetFunction):
        return Manifest("function", dict(sheets=f.to_graphs()), name=name)
    return Manifest("function", dict(values=[
        [a, v] for a, v in sorted(f.items())]), name=name)


def bundle_manifest(B, name=None):
    return Manifest("bundle", dict(
        ambient=B.ambient.table.tolist(),
        breakpoints=list(B.breakpoints),
        pieces=[sorted(_) for _ in B.pieces],
        points=[sorted(_) for _ in B.points]), name=name)
