"""Exact integer matrix algebra over lattices.

Smith normal form with accumulated unimodular transforms, elementary-divisor
profiles of finite p-power quotients L/K, the per-column divisibility check
for xi(K) in p^n L (adapted basis, K diagonal), and kernels modulo p^N.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .padics import INFINITY, _require_prime, padic_valuation, unit_part


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix of exact integers, stored row-major as a tuple of tuples."""

    rows: tuple

    def __post_init__(self):
        r = len(self.rows)
        if r == 0:
            raise ValueError("matrix must be nonempty")
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        for row in rows:
            if len(row) != r:
                raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def r(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, r: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r)))

    @classmethod
    def zero(cls, r: int) -> "IntMatrix":
        return cls(tuple((0,) * r for _ in range(r)))

    @classmethod
    def diagonal(cls, entries) -> "IntMatrix":
        entries = list(entries)
        r = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(r)) for i in range(r)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_dim(other)
        return IntMatrix(tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_dim(other)
        return IntMatrix(tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_dim(other)
        r = self.r
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def apply(self, vec) -> tuple:
        """Matrix-vector product."""
        if len(vec) != self.r:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * v for a, v in zip(row, vec)) for row in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def diagonal_entries(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.r))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.r))

    def _check_dim(self, other: "IntMatrix") -> None:
        if self.r != other.r:
            raise ValueError(f"dimension mismatch: {self.r} vs {other.r}")


@dataclass(frozen=True)
class DivisorProfile:
    """Elementary-divisor exponents of L/K, nonincreasing, each at most the level n."""

    n: int
    a: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"level must be a positive integer, got {self.n!r}")
        a = tuple(int(x) for x in self.a)
        if len(a) == 0:
            raise ValueError("profile must be nonempty")
        for prev, cur in zip(a, a[1:]):
            if cur > prev:
                raise ValueError(f"profile exponents must be nonincreasing: {a}")
        if a[-1] < 0 or a[0] > self.n:
            raise ValueError(f"profile exponents must satisfy 0 <= a_i <= n: {a} at level {self.n}")
        object.__setattr__(self, "a", a)

    @property
    def r(self) -> int:
        return len(self.a)

    def sigma_counts(self) -> tuple:
        """Multiplicities as (exponent, count) pairs, exponent descending."""
        out = []
        for x in self.a:
            if out and out[-1][0] == x:
                out[-1][1] += 1
            else:
                out.append([x, 1])
        return tuple((x, c) for x, c in out)


@dataclass(frozen=True)
class SmithDecomposition:
    """A = U * D * V with U, V unimodular, D diagonal, d_1 | d_2 | ... | d_r >= 0.

    u_inverse and v_inverse are accumulated alongside so that
    v_inverse * A applications and kernel extraction need no matrix inversion.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    u_inverse: IntMatrix = field(repr=False)
    v_inverse: IntMatrix = field(repr=False)

    @property
    def divisors(self) -> tuple:
        return self.D.diagonal_entries()


def _swap_rows(m, i, k):
    m[i], m[k] = m[k], m[i]


def _swap_cols(m, j, l):
    for row in m:
        row[j], row[l] = row[l], row[j]


def _add_row(m, k, i, q):
    """row_k += q * row_i"""
    ri, rk = m[i], m[k]
    for j in range(len(rk)):
        rk[j] += q * ri[j]


def _add_col(m, l, j, q):
    """col_l += q * col_j"""
    for row in m:
        row[l] += q * row[j]


def _negate_row(m, i):
    m[i] = [-x for x in m[i]]


def _negate_col(m, j):
    for row in m:
        row[j] = -row[j]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Exact Smith normal form by integer elimination.

    Pivots are chosen by minimal nonzero absolute value; after each pivot is
    isolated, any entry of the remaining block it fails to divide is folded
    into the pivot row and elimination repeats, which yields the divisibility
    chain directly. All four transforms are accumulated under the invariant
    A = U * B * V.
    """
    r = A.r
    B = [list(row) for row in A.rows]
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    Ui = [row[:] for row in U]
    V = [row[:] for row in U]
    Vi = [row[:] for row in U]

    def row_swap(i, k):
        _swap_rows(B, i, k)
        _swap_cols(U, i, k)
        _swap_rows(Ui, i, k)

    def col_swap(j, l):
        _swap_cols(B, j, l)
        _swap_rows(V, j, l)
        _swap_cols(Vi, j, l)

    def row_add(k, i, q):
        # B <- E*B with E = I + q*e_k e_i^T; U <- U*E^{-1}; Ui <- E*Ui
        _add_row(B, k, i, q)
        _add_col(U, i, k, -q)
        _add_row(Ui, k, i, q)

    def col_add(l, j, q):
        # B <- B*F with F = I + q*e_j e_l^T; V <- F^{-1}*V; Vi <- Vi*F
        _add_col(B, l, j, q)
        _add_row(V, j, l, -q)
        _add_col(Vi, l, j, q)

    def row_negate(i):
        _negate_row(B, i)
        _negate_col(U, i)
        _negate_row(Ui, i)

    for s in range(r):
        while True:
            pivot = None
            best = None
            for i in range(s, r):
                for j in range(s, r):
                    x = B[i][j]
                    if x != 0 and (best is None or abs(x) < best):
                        best = abs(x)
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            if i != s:
                row_swap(s, i)
            if j != s:
                col_swap(s, j)
            d = B[s][s]
            dirty = False
            for i in range(s + 1, r):
                if B[i][s] != 0:
                    q = B[i][s] // d
                    row_add(i, s, -q)
                    if B[i][s] != 0:
                        dirty = True
            for j in range(s + 1, r):
                if B[s][j] != 0:
                    q = B[s][j] // d
                    col_add(j, s, -q)
                    if B[s][j] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the remaining block for the chain d_s | d_{s+1}
            fold = None
            for i in range(s + 1, r):
                for j in range(s + 1, r):
                    if B[i][j] % d != 0:
                        fold = i
                        break
                if fold is not None:
                    break
            if fold is None:
                break
            row_add(s, fold, 1)
        if B[s][s] < 0:
            row_negate(s)

    return SmithDecomposition(
        U=IntMatrix.from_rows(U),
        D=IntMatrix.from_rows(B),
        V=IntMatrix.from_rows(V),
        u_inverse=IntMatrix.from_rows(Ui),
        v_inverse=IntMatrix.from_rows(Vi),
    )


def quotient_profile(Kgen: IntMatrix, p: int, n: int) -> DivisorProfile:
    """Profile (a_i) of L / K where the columns of Kgen generate K.

    Requires K of finite index with p-power elementary divisors, all with
    exponent at most n.
    """
    _require_prime(p)
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    divisors = smith_normal_form(Kgen).divisors
    vals = []
    for d in divisors:
        if d == 0:
            raise ValueError("generators do not span a finite-index sublattice (zero determinant)")
        if unit_part(d, p) != 1:
            raise ValueError(f"elementary divisor {d} is not a power of {p}")
        vals.append(padic_valuation(d, p))
    a = tuple(sorted(vals, reverse=True))
    if a[0] > n:
        raise ValueError(f"divisor exponent {a[0]} exceeds level {n} (p^n L is not inside K)")
    return DivisorProfile(n=n, a=a)


def check_xi_condition(xi: IntMatrix, profile: DivisorProfile, p: int) -> bool:
    """True iff xi(K) is contained in p^n L, with K = sum_j p^{a_j} Z e_j.

    In the adapted basis this is exactly: every entry of column j is
    divisible by p^{n - a_j}.
    """
    _require_prime(p)
    if xi.r != profile.r:
        raise ValueError(f"dimension mismatch: matrix is {xi.r}, profile has rank {profile.r}")
    for j, aj in enumerate(profile.a):
        need = p ** (profile.n - aj)
        for i in range(xi.r):
            if xi[i, j] % need != 0:
                return False
    return True


def profile_mod(profile: DivisorProfile, nprime: int) -> DivisorProfile:
    """Profile of L / (K + p^{n'} L): entrywise min with n', re-leveled at n'."""
    if not 1 <= nprime <= profile.n:
        raise ValueError(f"nprime must satisfy 1 <= nprime <= {profile.n}, got {nprime}")
    return DivisorProfile(n=nprime, a=tuple(min(x, nprime) for x in profile.a))


@dataclass(frozen=True)
class KernelGenerator:
    """One cyclic factor of ker(A mod p^N).

    vector is primitive (it has a unit coordinate); the kernel elements it
    accounts for are t * p^{N - order} * vector, a cyclic group of order
    p^{order}.
    """

    vector: tuple
    order: int


def kernel_mod(A: IntMatrix, p: int, N: int) -> list:
    """Generators of {v mod p^N : A v = 0 mod p^N}, via Smith normal form.

    Returned in nondecreasing order of the p-power order they carry; each
    vector is scaled so its first unit coordinate is 1 and reduced mod p^N.
    """
    _require_prime(p)
    if N < 1:
        raise ValueError(f"precision must be positive, got {N}")
    dec = smith_normal_form(A)
    pN = p ** N
    out = []
    for i, d in enumerate(dec.divisors):
        v = padic_valuation(d, p)
        order = N if v is INFINITY else min(N, v)
        if order < 1:
            continue
        col = dec.v_inverse.column(i)
        out.append(KernelGenerator(vector=_canonical_primitive(col, p, pN), order=order))
    return out


def _canonical_primitive(vec: tuple, p: int, pN: int) -> tuple:
    """Scale a primitive vector by a unit so its first unit coordinate is 1, mod p^N."""
    for x in vec:
        if x % p != 0:
            inv = pow(x % pN, -1, pN)
            return tuple(y * inv % pN for y in vec)
    raise ValueError("vector has no unit coordinate")


# --- matrix file format (shared with the CLI) ---------------------------------

def matrix_to_document(A: IntMatrix) -> dict:
    return {"rows": [list(row) for row in A.rows]}


def matrix_from_document(doc) -> IntMatrix:
    if not isinstance(doc, dict):
        raise ValueError("matrix document must be an object")
    unknown = set(doc) - {"rows"}
    if unknown:
        raise ValueError(f"unknown matrix fields: {sorted(unknown)}")
    rows = doc.get("rows")
    if not isinstance(rows, list) or not rows:
        raise ValueError("matrix document needs a nonempty 'rows' list")
    parsed = []
    for row in rows:
        if not isinstance(row, list):
            raise ValueError("each row must be a list")
        parsed.append([_parse_entry(x) for x in row])
    return IntMatrix.from_rows(parsed)


def _parse_entry(x) -> int:
    # decimal strings are accepted so very large entries survive any JSON tooling
    if isinstance(x, bool):
        raise ValueError(f"not an integer entry: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        s = x.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit():
            return int(s)
    raise ValueError(f"not an integer entry: {x!r}")


def write_matrix(path, A: IntMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_document(A), fh)
        fh.write("\n")


def read_matrix(path) -> IntMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_document(json.load(fh))
