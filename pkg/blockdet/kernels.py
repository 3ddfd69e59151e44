# blockdet/kernels.py
"""Dense determinant / permanent kernels over int, Fraction or float entries."""
import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
import scipy.linalg

from .config import ArithmeticMode, get_settings
from .errors import ContractError, DimensionError, DomainError, ResourceCapError
from .graph import Matrix, Scalar, as_matrix, mode_of, order


def normalize(x: Scalar) -> Scalar:
    """Fractions with denominator 1 become ints; everything else is unchanged."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _exact_div(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"inexact Bareiss division {a}/{b}")
        return q
    return Fraction(a) / Fraction(b)


def _require_exact(m: Matrix, kernel: str) -> None:
    if mode_of(m) != ArithmeticMode.EXACT:
        raise ContractError(f"{kernel} needs an exact-mode matrix")


def det_bareiss(m: Matrix) -> Scalar:
    """Fraction-free elimination; exact for int and Fraction entries."""
    _require_exact(m, "det_bareiss")
    n = order(m)
    if n == 0:
        return 1
    a = [list(row) for row in m.tolist()]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = _exact_div(row_i[j] * pivot - aik * row_k[j], prev)
        prev = pivot
    return normalize(sign * a[n - 1][n - 1])


def det_lu(m: Matrix) -> float:
    """Determinant from an LU factorisation with partial pivoting."""
    n = order(m)
    if n == 0:
        return 1.0
    a = np.asarray(m, dtype=float)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    det = float(np.prod(np.diag(lu)))
    return -det if swaps % 2 else det


def per_ryser(m: Matrix, cap: Optional[int] = None) -> Scalar:
    """Ryser inclusion-exclusion, visiting column subsets in Gray-code order.

    Each step flips one column in or out of the subset and updates the n row
    sums, so a step costs O(n).
    """
    n = order(m)
    cap = get_settings().ryser_cap if cap is None else cap
    if n > cap:
        raise ResourceCapError("per_ryser", n, cap)
    if n == 0:
        return 1

    exact = mode_of(m) == ArithmeticMode.EXACT
    zero = 0 if exact else 0.0
    cols = [list(col) for col in m.T.tolist()]
    row_sums = [zero] * n
    total = zero
    gray = 0
    size = 0
    for step in range(1, 1 << n):
        j = (step & -step).bit_length() - 1
        col = cols[j]
        if gray >> j & 1:
            row_sums = [s - c for s, c in zip(row_sums, col)]
            size -= 1
        else:
            row_sums = [s + c for s, c in zip(row_sums, col)]
            size += 1
        gray ^= 1 << j
        p = math.prod(row_sums)
        total = total - p if size & 1 else total + p
    result = -total if n & 1 else total
    return normalize(result) if exact else float(result)


def _permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _naive(m: Matrix, signed: bool, cap: Optional[int]) -> Scalar:
    n = order(m)
    cap = get_settings().naive_cap if cap is None else cap
    if n > cap:
        raise ResourceCapError("det_naive" if signed else "per_naive", n, cap)
    exact = mode_of(m) == ArithmeticMode.EXACT
    total = 0 if exact else 0.0
    rows = m.tolist()
    for perm in itertools.permutations(range(n)):
        term = math.prod(rows[i][perm[i]] for i in range(n))
        if term == 0:
            continue
        total += _permutation_sign(perm) * term if signed else term
    if n == 0:
        total = 1 if exact else 1.0
    return normalize(total) if exact else total


def det_naive(m: Matrix, cap: Optional[int] = None) -> Scalar:
    """Signed sum over all n! permutations (oracle)."""
    return _naive(m, signed=True, cap=cap)


def per_naive(m: Matrix, cap: Optional[int] = None) -> Scalar:
    """Unsigned sum over all n! permutations (oracle)."""
    return _naive(m, signed=False, cap=cap)


def determinant(m: Matrix) -> Scalar:
    if mode_of(m) == ArithmeticMode.FLOAT:
        return det_lu(m)
    return det_bareiss(m)


def permanent(m: Matrix, cap: Optional[int] = None) -> Scalar:
    return per_ryser(m, cap=cap)


def inverse(m: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse over Fractions, or numpy.linalg.inv for floats."""
    n = order(m)
    if mode_of(m) == ArithmeticMode.FLOAT:
        try:
            inv = np.linalg.inv(np.asarray(m, dtype=float))
        except np.linalg.LinAlgError as e:
            raise DomainError("matrix is not invertible") from e
        inv.flags.writeable = False
        return inv

    x = [[Fraction(v) for v in row] for row in m.tolist()]
    y = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        pivot_row = next((j for j in range(i, n) if x[j][i] != 0), None)
        if pivot_row is None:
            raise DomainError("matrix is not invertible")
        if pivot_row != i:
            x[i], x[pivot_row] = x[pivot_row], x[i]
            y[i], y[pivot_row] = y[pivot_row], y[i]
        p = x[i][i]
        x[i] = [v / p for v in x[i]]
        y[i] = [v / p for v in y[i]]
        for j in range(n):
            if j != i and x[j][i] != 0:
                f = x[j][i]
                x[j] = [a - f * b for a, b in zip(x[j], x[i])]
                y[j] = [a - f * b for a, b in zip(y[j], y[i])]
    return as_matrix(y)


@dataclass(frozen=True)
class BorderedMatrix:
    """A = [[A1, b], [c, d]] with A1 of order r-1."""

    a1: Matrix
    b: np.ndarray
    c: np.ndarray
    d: Scalar

    def __post_init__(self):
        r1 = order(self.a1)
        if self.b.shape != (r1,) or self.c.shape != (r1,):
            raise DimensionError(
                f"bordered shapes disagree: A1 {self.a1.shape}, b {self.b.shape}, c {self.c.shape}"
            )

    @classmethod
    def split(cls, m: Matrix) -> "BorderedMatrix":
        """Split off the last row and column of m."""
        r = order(m)
        if r == 0:
            raise DimensionError("cannot border a 0x0 matrix")
        return cls(a1=m[:-1, :-1], b=m[:-1, -1], c=m[-1, :-1], d=m[-1, -1])

    def assemble(self) -> Matrix:
        top = np.column_stack([self.a1, self.b]) if len(self.b) else np.empty((0, 1), dtype=self.a1.dtype)
        bottom = np.append(self.c, self.d).reshape(1, -1)
        return as_matrix(np.vstack([top, bottom]).tolist(), mode_of(self.a1))


def det_bordered(bm: BorderedMatrix, det_a1: Scalar, inv_a1: Optional[Matrix] = None) -> Scalar:
    """det([[A1, b], [c, d]]) from det(A1), via the Schur complement when A1 is invertible."""
    exact = mode_of(bm.a1) == ArithmeticMode.EXACT
    if len(bm.b) == 0:
        return normalize(det_a1 * bm.d) if exact else det_a1 * bm.d

    if det_a1 != 0:
        if inv_a1 is None:
            raise ContractError("det_bordered needs inv(A1) when det(A1) != 0")
        schur = bm.d - bm.c.dot(inv_a1.dot(bm.b))
        result = det_a1 * schur
    elif bm.d != 0:
        scale = Fraction(1) / Fraction(bm.d) if exact else 1.0 / bm.d
        reduced = bm.a1 - np.outer(bm.b, bm.c) * scale
        result = bm.d * determinant(as_matrix(reduced.tolist(), mode_of(bm.a1)))
    else:
        reduced = bm.a1 - np.outer(bm.b, bm.c)
        result = determinant(as_matrix(reduced.tolist(), mode_of(bm.a1)))
    return normalize(result) if exact else float(result)
