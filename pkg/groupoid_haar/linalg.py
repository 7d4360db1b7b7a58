import logging
from fractions import Fraction

import sympy

logger = logging.getLogger("groupoid_haar.linalg")


def to_sympy(value):
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def equation_matrix(equations, n_unknowns):
    """Dense sympy matrix from sparse equations

    :param equations: an iterable of {unknown index: coefficient} rows,
           each meaning sum(coefficient * w[index]) = 0
    :param n_unknowns: the number of unknowns
    """
    rows = []
    seen = set()
    for equation in equations:
        key = tuple(sorted((int(k), Fraction(v)) for k, v in equation.items()
                           if v != 0))
        if not key or key in seen:
            continue
        seen.add(key)
        row = [0] * n_unknowns
        for k, v in key:
            row[k] = to_sympy(v)
        rows.append(row)
    if not rows:
        return sympy.zeros(0, n_unknowns)
    return sympy.Matrix(rows)


def nullspace(equations, n_unknowns):
    """A basis of the solution space of a homogeneous linear system

    :param equations: sparse rows as for equation_matrix
    :param n_unknowns: the number of unknowns
    :returns: a list of basis vectors, each a tuple of Fractions, in the
              reduced echelon order sympy produces
    """
    if n_unknowns == 0:
        return []
    matrix = equation_matrix(equations, n_unknowns)
    if matrix.rows == 0:
        return [tuple(Fraction(int(i == j)) for j in range(n_unknowns))
                for i in range(n_unknowns)]
    basis = matrix.nullspace()
    logger.debug("%d x %d system, nullity %d",
                 matrix.rows, matrix.cols, len(basis))
    return [tuple(from_sympy(_) for _ in vector) for vector in basis]


def satisfies(equations, vector):
    for equation in equations:
        if sum(Fraction(v) * vector[k] for k, v in equation.items()) != 0:
            return False
    return True


def in_span(basis, vector):
    if not basis:
        return all(_ == 0 for _ in vector)
    matrix = sympy.Matrix([[to_sympy(_) for _ in b] for b in basis])
    extended = matrix.col_join(
        sympy.Matrix([[to_sympy(_) for _ in vector]]))
    return matrix.rank() == extended.rank()


def rank(vectors):
    if not vectors:
        return 0
    return sympy.Matrix([[to_sympy(_) for _ in v] for v in vectors]).rank()
