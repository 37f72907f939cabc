from fractions import Fraction

import pytest

from padicslopes.family import poly_of_matrix, random_unimodular
from padicslopes.lattice import IntMatrix
from padicslopes.newton import (
    CharPoly,
    ConsistencyError,
    EigenvectorError,
    HenselError,
    char_poly,
    commuting_eigenvalue,
    eigenvector_mod,
    hensel_slope_root,
    newton_polygon,
    polygon_from_document,
    polygon_to_document,
    slope_census,
    slope_multiplicity,
)
from padicslopes.padics import INFINITY, padic_valuation
from padicslopes.rng import SplitMix64

from oracles import charpoly_cofactor, poly_mul


def segments_as_pairs(segs):
    return [(s.slope, s.length) for s in segs]


def planted(rng, p, r, vals, unit_bound=9):
    diag = [p**v * rng.unit(p, unit_bound) for v in vals]
    U, Ui = random_unimodular(r, rng)
    return U * IntMatrix.diagonal(diag) * Ui, diag, U


# --- characteristic polynomial ---------------------------------------------------

def test_char_poly_examples():
    assert char_poly(IntMatrix.identity(2)).coeffs == (1, -2, 1)
    assert char_poly(IntMatrix.from_rows([[0, 1], [1, 0]])).coeffs == (1, 0, -1)
    companion = IntMatrix.from_rows([[0, 0, -5], [1, 0, -2], [0, 1, 0]])
    # oracle: cofactor expansion of det(XI - C)
    assert charpoly_cofactor(companion) == (1, 0, 2, 5)
    assert char_poly(companion).coeffs == (1, 0, 2, 5)


def test_char_poly_matches_cofactor_oracle():
    rng = SplitMix64(555)
    for _ in range(60):
        r = rng.randint(1, 4)
        A = IntMatrix.from_rows(
            [[rng.randint(-20, 20) for _ in range(r)] for _ in range(r)]
        )
        assert char_poly(A).coeffs == charpoly_cofactor(A)


def test_char_poly_conjugation_invariance():
    rng = SplitMix64(616)
    for _ in range(40):
        r = rng.randint(2, 5)
        A = IntMatrix.from_rows(
            [[rng.randint(-50, 50) for _ in range(r)] for _ in range(r)]
        )
        U, Ui = random_unimodular(r, rng)
        assert char_poly(U * A * Ui) == char_poly(A)


# --- Newton polygon ---------------------------------------------------------------

def test_polygon_examples():
    poly = newton_polygon(CharPoly((1, 2, 8, 32)), 2)
    assert poly.vertices == ((0, 0), (1, 1), (3, 5))
    assert segments_as_pairs(poly.segments) == [(Fraction(1), 1), (Fraction(2), 2)]

    poly = newton_polygon(CharPoly((1, 0, -2)), 7)
    assert segments_as_pairs(poly.segments) == [(Fraction(0), 2)]

    # roots 3 and 9: valuations 1 and 2
    poly = newton_polygon(CharPoly((1, -12, 27)), 3)
    assert segments_as_pairs(poly.segments) == [(Fraction(1), 1), (Fraction(2), 1)]


def test_polygon_trailing_zeros_report_infinite_slope():
    # X^3 - 3 X^2 = (X - 3) X^2
    poly = newton_polygon(CharPoly((1, -3, 0, 0)), 3)
    assert segments_as_pairs(poly.segments) == [(Fraction(1), 1), (INFINITY, 2)]
    assert poly.infinity_length() == 2


def test_polygon_convexity_and_lengths():
    rng = SplitMix64(717)
    for _ in range(100):
        p = rng.choice((2, 3, 5))
        t = rng.randint(1, 7)
        coeffs = [1] + [rng.randint(-500, 500) for _ in range(t)]
        poly = newton_polygon(CharPoly(tuple(coeffs)), p)
        slopes = [s.slope for s in poly.finite_segments()]
        assert slopes == sorted(slopes)
        assert len(set(slopes)) == len(slopes)
        i_last = max(i for i, c in enumerate(coeffs) if c != 0)
        assert sum(s.length for s in poly.finite_segments()) == i_last
        assert poly.vertices[0] == (0, 0)


def test_polygon_multiplicativity():
    rng = SplitMix64(818)
    for _ in range(60):
        p = rng.choice((2, 3, 5))
        f = [1] + [rng.randint(-200, 200) for _ in range(rng.randint(1, 4))]
        g = [1] + [rng.randint(-200, 200) for _ in range(rng.randint(1, 4))]
        merged = {}
        for part in (f, g):
            for seg in newton_polygon(CharPoly(tuple(part)), p).segments:
                merged[seg.slope] = merged.get(seg.slope, 0) + seg.length
        product = {}
        for seg in newton_polygon(CharPoly(tuple(poly_mul(f, g))), p).segments:
            product[seg.slope] = seg.length
        assert product == merged


def test_slope_multiplicity():
    poly = newton_polygon(CharPoly((1, 2, 8, 32)), 2)
    assert slope_multiplicity(poly, 2) == 2
    assert slope_multiplicity(poly, 3) == 0
    assert slope_multiplicity(poly, 1) == 1
    assert slope_multiplicity(poly, Fraction(1, 2)) == 0


def test_slope_census_examples():
    rng = SplitMix64(919)
    p = 5
    A, _, _ = planted(rng, p, 2, [1, 2], unit_bound=1)
    assert segments_as_pairs(slope_census(A, p)) == [(Fraction(1), 1), (Fraction(2), 1)]
    assert segments_as_pairs(slope_census(IntMatrix.zero(4), p)) == [(INFINITY, 4)]
    assert segments_as_pairs(slope_census(IntMatrix.identity(3), p)) == [(Fraction(0), 3)]


def test_slope_census_planted_oracle():
    rng = SplitMix64(1020)
    for _ in range(50):
        p = rng.choice((2, 3, 5, 7))
        r = rng.randint(2, 6)
        vals = [rng.randint(0, 6) for _ in range(r)]
        A, _, _ = planted(rng, p, r, vals)
        got = {}
        for seg in slope_census(A, p):
            got[seg.slope] = seg.length
        want = {}
        for v in vals:
            want[Fraction(v)] = want.get(Fraction(v), 0) + 1
        assert got == want


# --- Hensel lifting ---------------------------------------------------------------

def test_hensel_examples():
    root = hensel_slope_root(CharPoly((1, 0, -2)), 7, 0, 3)
    assert root.value == 108
    assert 108**2 % 343 == 2  # direct squaring check
    assert root.derivative_valuation == 0

    root = hensel_slope_root(CharPoly((1, -12, 27)), 3, 1, 5)
    assert root.value == 3
    assert root.derivative_valuation == 1
    assert root.unique_modulus_exponent == 4

    root = hensel_slope_root(CharPoly((1, -10)), 5, 1, 4)
    assert root.value == 10


def test_hensel_rejections():
    with pytest.raises(HenselError):
        hensel_slope_root(CharPoly((1, 0, -2)), 7, 1, 3)  # no slope-1 segment
    with pytest.raises(HenselError):
        hensel_slope_root(CharPoly((1, 0, -1)), 2, 0, 4)  # (X-1)^2 mod 2: not simple
    with pytest.raises(HenselError):
        hensel_slope_root(CharPoly((1, 0, -2)), 7, Fraction(1, 2), 3)
    with pytest.raises(HenselError):
        hensel_slope_root(CharPoly((1, -12, 27)), 3, 1, 1)  # N <= alpha


def test_hensel_planted_suite():
    rng = SplitMix64(1121)
    for _ in range(60):
        p = rng.choice((2, 3, 5, 7))
        alpha = rng.randint(0, 4)
        u = rng.unit(p, 9)
        f = [1, -(p**alpha) * u]
        betas = []
        for _ in range(rng.randint(0, 4)):
            beta = rng.randint(0, 6)
            while beta == alpha:
                beta = rng.randint(0, 6)
            betas.append(beta)
            f = poly_mul(f, [1, -(p**beta) * rng.unit(p, 9)])
        e_true = sum(min(alpha, b) for b in betas)
        N = e_true + alpha + 8
        root = hensel_slope_root(CharPoly(tuple(f)), p, alpha, N)
        assert root.derivative_valuation == e_true
        assert (root.value - p**alpha * u) % p ** (N - e_true) == 0
        assert CharPoly(tuple(f)).eval_mod(root.value, p**N) == 0
        assert padic_valuation(root.value, p) == alpha


# --- eigenvectors and the commuting operator ---------------------------------------

def test_eigenvector_examples():
    F = eigenvector_mod(IntMatrix.diagonal([5, 125]), 5, 5, 4)
    assert F.vector == (1, 0)
    assert F.kernel_valuation == 4

    A = IntMatrix.from_rows([[5, 1], [0, 25]])
    F = eigenvector_mod(A, 5, 5, 4)
    assert F.vector[0] % 5 != 0
    assert F.vector[1] == 0  # proportional to (1, 0)

    with pytest.raises(EigenvectorError):
        eigenvector_mod(IntMatrix.identity(2), 0, 5, 4)


def test_eigenvector_conjugation_oracle():
    rng = SplitMix64(1222)
    p, N = 5, 6
    pN = p**N
    for _ in range(30):
        U, Ui = random_unimodular(2, rng)
        A = U * IntMatrix.diagonal([p, p**3]) * Ui
        F = eigenvector_mod(A, p, p, N)
        truth = U.column(0)
        # F must be a unit multiple of U e_1 at the achieved precision
        m = p**F.kernel_valuation
        i = next(i for i, x in enumerate(truth) if x % p != 0)
        scale = F.vector[i] * pow(truth[i] % pN, -1, pN)
        assert all((F.vector[j] - scale * truth[j]) % m == 0 for j in range(2))
        residual = (A - IntMatrix.identity(2).scale(p)).apply(F.vector)
        assert all(x % m == 0 for x in residual)


def test_commuting_eigenvalue_examples():
    F = (1, 0)
    assert commuting_eigenvalue(IntMatrix.identity(2), F, 5, 3) == 1

    A = IntMatrix.diagonal([5, 125])
    vec = eigenvector_mod(A, 5, 5, 4)
    assert commuting_eigenvalue(A, vec.vector, 5, 3) == 5  # a = lambda


def test_commuting_eigenvalue_polynomial_functoriality():
    rng = SplitMix64(1323)
    p = 3
    for _ in range(25):
        r = rng.randint(2, 4)
        vals = list(range(r))  # distinct slopes, each simple
        A, diag, U = planted(rng, p, r, vals, unit_bound=2)
        alpha = rng.randint(0, r - 1)
        N = 12
        cp = char_poly(A)
        root = hensel_slope_root(cp, p, alpha, N)
        vec = eigenvector_mod(A, root.value, p, N)
        coeffs = [rng.randint(-9, 9) for _ in range(r)]
        B = poly_of_matrix(coeffs, A)
        cap = N - root.derivative_valuation - alpha
        a = commuting_eigenvalue(B, vec.vector, p, cap)
        expected = 0
        for c in reversed(coeffs):
            expected = (expected * root.value + c) % p**cap
        assert a == expected


def test_commuting_eigenvalue_consistency_error():
    B = IntMatrix.from_rows([[0, 1], [0, 0]])
    with pytest.raises(ConsistencyError):
        commuting_eigenvalue(B, (1, 1), 5, 2)
    with pytest.raises(ConsistencyError):
        commuting_eigenvalue(B, (5, 10), 5, 2)  # no unit coordinate


# --- report format ------------------------------------------------------------------

def test_polygon_document_round_trip():
    poly = newton_polygon(CharPoly((1, -3, 0, 0)), 3)
    doc = polygon_to_document(poly)
    assert polygon_from_document(doc) == poly
    with pytest.raises(ValueError):
        polygon_from_document({**doc, "extra": 1})
