"""Characteristic polynomials, Newton polygons, and slope-root extraction.

Polynomials are stored in descending powers: coefficients (c_0, ..., c_t)
represent sum_s c_s X^{t-s}, so index i pairs with the polygon point
(i, v_p(c_i)). Slopes are exact Fractions; eigenvalue valuation INFINITY
(zero eigenvalues) is carried as a final polygon segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import IntMatrix, smith_normal_form
from .padics import INFINITY, _require_prime, as_slope, padic_valuation


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial sum_s c_s X^{t-s} with c_0 != 0."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) == 0:
            raise ValueError("polynomial needs at least one coefficient")
        if c[0] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = (acc * x + c) % m
        return acc

@dataclass(frozen=True)
class SlopeSegment:
    slope: object  # Fraction or INFINITY
    length: int

    def __post_init__(self):
        object.__setattr__(self, "slope", as_slope(self.slope))
        if self.length < 1:
            raise ValueError("segment length must be positive")


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)); vertices cover the finite part only.

    Finite segment slopes are strictly increasing and their lengths sum to
    the index of the last nonzero coefficient; trailing zero coefficients
    appear as one final segment of slope INFINITY.
    """

    vertices: tuple
    segments: tuple

    def finite_segments(self) -> tuple:
        return tuple(s for s in self.segments if s.slope is not INFINITY)

    def infinity_length(self) -> int:
        return sum(s.length for s in self.segments if s.slope is INFINITY)


def char_poly(A: IntMatrix) -> CharPoly:
    """Characteristic polynomial det(X I - A) by the Faddeev-LeVerrier recursion.

    Every division is by the step index and is exact over the integers, so
    the result is exact and reproducible.
    """
    r = A.r
    coeffs = [1]
    M = IntMatrix.identity(r)
    for k in range(1, r + 1):
        AM = A * M
        q, rem = divmod(AM.trace(), k)
        if rem:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        ck = -q
        coeffs.append(ck)
        if k < r:
            M = AM + IntMatrix.identity(r).scale(ck)
    return CharPoly(tuple(coeffs))


def newton_polygon(cp: CharPoly, p: int) -> NewtonPolygon:
    """Lower convex hull of the points (i, v_p(c_i)), skipping zero coefficients."""
    _require_prime(p)
    t = cp.degree
    points = [(i, padic_valuation(c, p)) for i, c in enumerate(cp.coeffs) if c != 0]
    hull = [points[0]]
    for pt in points[1:]:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # pop while the middle point is on or above the chord
            if (x1 - x0) * (pt[1] - y0) - (y1 - y0) * (pt[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segments.append(SlopeSegment(slope=Fraction(y1 - y0, x1 - x0), length=x1 - x0))
    i_last = points[-1][0]
    if i_last < t:
        segments.append(SlopeSegment(slope=INFINITY, length=t - i_last))
    return NewtonPolygon(vertices=tuple(hull), segments=tuple(segments))


def slope_multiplicity(np: NewtonPolygon, alpha) -> int:
    """Horizontal length of the slope-alpha segment, 0 if absent."""
    alpha = as_slope(alpha)
    for seg in np.segments:
        if seg.slope == alpha:
            return seg.length
    return 0


def slope_census(A: IntMatrix, p: int) -> tuple:
    """Multiset of (slope, multiplicity) of the eigenvalue valuations of A."""
    return newton_polygon(char_poly(A), p).segments


class HenselError(ValueError):
    """Root extraction failed (absent slope, non-simple residue, bad precision)."""


@dataclass(frozen=True)
class HenselRoot:
    """A slope-alpha eigenvalue residue mod p^N.

    value satisfies cp(value) = 0 mod p^N and v_p(value) = alpha; it is
    canonical (least nonnegative mod p^N) but only unique modulo
    p^{N - derivative_valuation}.
    """

    value: int
    derivative_valuation: int
    p: int
    N: int
    alpha: int

    @property
    def unique_modulus_exponent(self) -> int:
        return self.N - self.derivative_valuation


def hensel_slope_root(cp: CharPoly, p: int, alpha: int, N: int) -> HenselRoot:
    """Lift the slope-alpha root of cp to a residue mod p^N.

    Substitutes X = p^alpha Y, strips the content p^C, and Newton-iterates
    from the unique simple unit root of the reduction mod p. When the
    slope-alpha segment has length 1 that seed exists and is unique; for a
    longer segment the reduction may still have simple unit roots, in which
    case the smallest residue is used, otherwise the extraction is refused.
    """
    _require_prime(p)
    if isinstance(alpha, bool) or not isinstance(alpha, int):
        raise HenselError(f"slope must be a nonnegative integer, got {alpha!r}")
    if alpha < 0:
        raise HenselError(f"slope must be nonnegative, got {alpha}")
    if N < 1:
        raise ValueError(f"precision must be positive, got {N}")
    if N <= alpha:
        raise HenselError(f"precision {N} cannot resolve a residue of valuation {alpha}")

    poly = newton_polygon(cp, p)
    segment = next((s for s in poly.finite_segments() if s.slope == Fraction(alpha)), None)
    if segment is None:
        raise HenselError(f"polygon has no slope-{alpha} segment")

    t = cp.degree
    scaled = [c * p ** (alpha * (t - s)) for s, c in enumerate(cp.coeffs)]
    content = min(padic_valuation(g, p) for g in scaled if g != 0)
    g = [x // p ** content for x in scaled]
    e = content - alpha
    if e < 0:
        raise AssertionError("content bookkeeping violated (e < 0)")

    g_mod = [x % p for x in g]
    dg = _poly_derivative(g)
    if segment.length == 1:
        # the reduction is Y^{t-i0-1} (u1 Y + u0) with u0, u1 the unit
        # coefficients at the segment endpoints, so the seed is closed-form
        i0 = next(
            x0
            for (x0, y0), (x1, y1) in zip(poly.vertices, poly.vertices[1:])
            if Fraction(y1 - y0, x1 - x0) == Fraction(alpha)
        )
        y = -g_mod[i0 + 1] * pow(g_mod[i0], -1, p) % p
        if y == 0 or _poly_eval_mod(g_mod, y, p) != 0 or _poly_eval_mod(dg, y, p) == 0:
            raise AssertionError("length-1 segment must yield a simple unit seed")
    else:
        seeds = [y for y in range(1, p)
                 if _poly_eval_mod(g_mod, y, p) == 0 and _poly_eval_mod(dg, y, p) != 0]
        if not seeds:
            raise HenselError(
                f"slope-{alpha} residual polynomial has no simple unit root mod {p} "
                "(segment of length >= 2 without separable reduction)"
            )
        y = seeds[0]

    # quadratic Newton lifting; g'(y) stays a unit throughout
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        m = p ** prec
        fy = _poly_eval_mod(g, y, m)
        dy = _poly_eval_mod(dg, y, m)
        y = (y - fy * pow(dy, -1, m)) % m

    pN = p ** N
    lam = p ** alpha * y % pN
    if padic_valuation(lam, p) != alpha:
        raise AssertionError("lifted root lost its valuation")
    if cp.eval_mod(lam, pN) != 0:
        raise AssertionError("lifted root fails the residual check")
    return HenselRoot(value=lam, derivative_valuation=e, p=p, N=N, alpha=alpha)


def _poly_derivative(coeffs) -> list:
    t = len(coeffs) - 1
    if t == 0:
        return [0]
    return [c * (t - s) for s, c in enumerate(coeffs[:-1])]


def _poly_eval_mod(coeffs, x: int, m: int) -> int:
    acc = 0
    for c in coeffs:
        acc = (acc * x + c) % m
    return acc


class EigenvectorError(ValueError):
    """No primitive kernel vector at the required precision."""


@dataclass(frozen=True)
class Eigenvector:
    """Primitive vector F with (A - lambda I) F = 0 mod p^{kernel_valuation}."""

    vector: tuple
    kernel_valuation: int


def eigenvector_mod(A: IntMatrix, lam: int, p: int, N: int) -> Eigenvector:
    """Extract a primitive eigenvector for an eigenvalue residue lam.

    Works from the Smith form of A - lam I: the last transform column is a
    primitive kernel vector whose achieved precision is the p-valuation of
    the last elementary divisor (capped at N). The vector is unit-scaled so
    its first unit coordinate is 1.
    """
    _require_prime(p)
    if N < 1:
        raise ValueError(f"precision must be positive, got {N}")
    M = A - IntMatrix.identity(A.r).scale(lam)
    dec = smith_normal_form(M)
    d_last = dec.divisors[-1]
    v = padic_valuation(d_last, p)
    achieved = N if v is INFINITY else min(N, v)
    if achieved < 1:
        raise EigenvectorError(
            "no kernel modulo p: the residue is not an eigenvalue at this precision"
        )
    col = dec.v_inverse.column(A.r - 1)
    pN = p ** N
    for x in col:
        if x % p != 0:
            inv = pow(x % pN, -1, pN)
            return Eigenvector(
                vector=tuple(yv * inv % pN for yv in col), kernel_valuation=achieved
            )
    raise EigenvectorError("kernel generator has no unit coordinate (F would lie in pL)")


class ConsistencyError(ValueError):
    """B F is not proportional to F at the requested precision."""


def commuting_eigenvalue(B: IntMatrix, F, p: int, M: int) -> int:
    """Eigenvalue of B on the eigenvector F, mod p^M.

    Divides at a unit coordinate of F and then verifies B F = a F in every
    coordinate; a failure signals a non-eigenvector or exhausted precision.
    """
    _require_prime(p)
    if M < 1:
        raise ValueError(f"precision must be positive, got {M}")
    F = tuple(F)
    pM = p ** M
    pivot = next((i for i, x in enumerate(F) if x % p != 0), None)
    if pivot is None:
        raise ConsistencyError("eigenvector has no unit coordinate")
    BF = B.apply(F)
    a = BF[pivot] * pow(F[pivot] % pM, -1, pM) % pM
    for i, (lhs, rhs) in enumerate(zip(BF, F)):
        if (lhs - a * rhs) % pM != 0:
            raise ConsistencyError(
                f"coordinate {i} violates proportionality mod {p}^{M}: "
                "non-eigenvector or precision exhaustion"
            )
    return a


# --- polygon report format (shared with the CLI) -------------------------------

def slope_to_string(slope) -> str:
    if slope is INFINITY:
        return "inf"
    slope = as_slope(slope)
    return f"{slope.numerator}/{slope.denominator}"


def slope_from_string(s: str):
    if s == "inf":
        return INFINITY
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def polygon_to_document(np: NewtonPolygon) -> dict:
    return {
        "vertices": [[i, v] for i, v in np.vertices],
        "segments": [
            {"slope": slope_to_string(seg.slope), "length": seg.length} for seg in np.segments
        ],
    }


def polygon_from_document(doc) -> NewtonPolygon:
    unknown = set(doc) - {"vertices", "segments"}
    if unknown:
        raise ValueError(f"unknown polygon fields: {sorted(unknown)}")
    vertices = tuple((int(i), int(v)) for i, v in doc["vertices"])
    segments = tuple(
        SlopeSegment(slope=slope_from_string(seg["slope"]), length=int(seg["length"]))
        for seg in doc["segments"]
    )
    return NewtonPolygon(vertices=vertices, segments=segments)
