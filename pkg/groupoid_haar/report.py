"""Verification reports

Every verifier in the package returns a Report rather than raising on a
mathematical violation. Violations carry a short machine-readable code and
the witnessing arrows/elements; structural problems (malformed references,
domain mismatches) go into a separate errors list.
"""

import json
import os
import typing
from fractions import Fraction

import numpy as np

VERBOSITY_ENV = "GROUPOID_HAAR_VERBOSITY"


class Violation(typing.NamedTuple):
    code: str
    message: str
    witness: tuple = ()


def jsonable(value):
    """Convert a report value to something json.dumps accepts

    Fractions become "p/q" strings, numpy scalars become Python ints, tuples
    and sets become lists.
    """
    from .rational import format_rational
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return [jsonable(_) for _ in sorted(value)]
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(_) for _ in value]
    return value


class Report:
    """The outcome of a verification

    :param name: the name of the check, e.g. "verify_haar"
    """

    def __init__(self, name):
        self.name = name
        self.violations = []
        self.errors = []
        self.notes = []
        self.data = {}

    @property
    def ok(self):
        return not self.violations and not self.errors

    def __bool__(self):
        return self.ok

    def add_violation(self, code, message, *witness):
        self.violations.append(Violation(code, message, tuple(witness)))

    def add_error(self, code, message, *witness):
        self.errors.append(Violation(code, message, tuple(witness)))

    def add_note(self, note):
        self.notes.append(note)

    def codes(self):
        return {_.code for _ in self.violations} | {_.code for _ in self.errors}

    def witnesses(self, code):
        return [_.witness for _ in self.violations + self.errors
                if _.code == code]

    def extend(self, other, prefix=None):
        """Merge another report's findings into this one"""
        for v in other.violations:
            code = v.code if prefix is None else "%s.%s" % (prefix, v.code)
            self.violations.append(Violation(code, v.message, v.witness))
        for v in other.errors:
            code = v.code if prefix is None else "%s.%s" % (prefix, v.code)
            self.errors.append(Violation(code, v.message, v.witness))
        self.notes.extend(other.notes)

    def to_dict(self):
        return dict(
            name=self.name,
            ok=self.ok,
            violations=[dict(code=v.code, message=v.message,
                             witness=jsonable(v.witness))
                        for v in self.violations],
            errors=[dict(code=v.code, message=v.message,
                         witness=jsonable(v.witness))
                    for v in self.errors],
            notes=list(self.notes),
            data=jsonable(self.data))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def format_text(self, verbosity=None):
        """Human-readable form of the report

        :param verbosity: 0 for the summary line only, 1 to add violations
               and errors, 2 to add notes and data. Defaults to the
               GROUPOID_HAAR_VERBOSITY environment variable or 1.
        """
        if verbosity is None:
            verbosity = int(os.environ.get(VERBOSITY_ENV, "1"))
        status = "pass" if self.ok else "FAIL"
        lines = ["%s: %s (%d violations, %d errors)" % (
            self.name, status, len(self.violations), len(self.errors))]
        if verbosity >= 1:
            for label, entries in (("error", self.errors),
                                   ("violation", self.violations)):
                for v in entries:
                    witness = ", ".join(str(jsonable(_)) for _ in v.witness)
                    lines.append("  %s [%s] %s%s" % (
                        label, v.code, v.message,
                        (" -- witness: " + witness) if witness else ""))
        if verbosity >= 2:
            for note in self.notes:
                lines.append("  note: %s" % note)
            for key in sorted(self.data):
                lines.append("  %s: %s" % (key, jsonable(self.data[key])))
        return "\n".join(lines)

    def __repr__(self):
        return "Report(%s, ok=%s)" % (self.name, self.ok)


class PreconditionError(ValueError):
    """An operation was called on inputs failing its precondition

    :param message: a description of the precondition
    :param report: the Report documenting the failure
    """

    def __init__(self, message, report):
        super(PreconditionError, self).__init__(
            "%s\n%s" % (message, report.format_text(1)))
        self.report = report
