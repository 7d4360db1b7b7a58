import re
from fractions import Fraction

RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class RationalFormatError(ValueError):
    pass


def parse_rational(text):
    """Parse a normalized rational

    Accepted forms are "p/q" with q > 0 and gcd(p, q) = 1, a bare integer
    "p", or a JSON integer.

    :param text: the value to parse
    :returns: a Fraction
    :raises RationalFormatError: for malformed or unnormalized input
    """
    if isinstance(text, bool):
        raise RationalFormatError("not a rational: %r" % (text,))
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise RationalFormatError("not a rational: %r" % (text,))
    match = RATIONAL_RE.match(text.strip())
    if match is None:
        raise RationalFormatError("not a rational: %r" % text)
    p = int(match.group(1))
    if match.group(2) is None:
        return Fraction(p)
    q = int(match.group(2))
    if q == 0:
        raise RationalFormatError("zero denominator: %r" % text)
    value = Fraction(p, q)
    if value.numerator != p or value.denominator != q:
        raise RationalFormatError(
            "unnormalized rational %r, expected %r" %
            (text, format_rational(value)))
    return value


def format_rational(value):
    """Format a rational as "p/q" (always with a denominator)"""
    value = Fraction(value)
    return "%d/%d" % (value.numerator, value.denominator)


def as_fraction(value):
    """Coerce ints, Fractions and "p/q" strings to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)
