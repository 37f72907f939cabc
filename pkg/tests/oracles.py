"""Independent oracles used by the tests.

These deliberately avoid the library's code paths: determinants via exact
rational Gaussian elimination, characteristic polynomials via cofactor
expansion of the polynomial matrix, valuations via repeated division, and
plain list-based polynomial arithmetic.
"""

from fractions import Fraction

from padicslopes.lattice import IntMatrix


def det_fraction(A: IntMatrix) -> Fraction:
    m = [[Fraction(x) for x in row] for row in A.rows]
    r = len(m)
    det = Fraction(1)
    for c in range(r):
        piv = next((i for i in range(c, r) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, r):
            f = m[i][c] * inv
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    off = len(a) - len(b)
    for i, y in enumerate(b):
        out[off + i] += y
    return out


def charpoly_cofactor(A: IntMatrix):
    """det(X I - A) by cofactor expansion over integer polynomial lists
    (descending powers). Exponential; fine for r <= 5."""

    def minor(rows, skip_col):
        return [[row[j] for j in range(len(row)) if j != skip_col] for row in rows[1:]]

    def det_poly(rows):
        r = len(rows)
        if r == 1:
            return rows[0][0]
        acc = [0]
        for j in range(r):
            term = poly_mul(rows[0][j], det_poly(minor(rows, j)))
            if j % 2:
                term = [-x for x in term]
            acc = poly_add(acc, term)
        return acc

    r = A.r
    rows = [[[1, -A[i, j]] if i == j else [-A[i, j]] for j in range(r)] for i in range(r)]
    coeffs = det_poly(rows)
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
    return tuple(coeffs)


def valuation_by_division(x: int, p: int):
    if x == 0:
        return None
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def horner_mod(coeffs, x: int, m: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc
