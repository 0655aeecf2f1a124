"""Symmetric matrices over the three scalar regimes, with the trace inner product.

The space Sym_n carries <S, T> = tr(S T).  Matrices are stored densely and
immutably; the entry regime is one of ``rational`` (Fraction), ``algebraic``
(elements of one shared field) or ``float``.  Exact regimes get exact linear
algebra (Gaussian elimination with division in the scalar field); the float
regime is backed by numpy.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import AlgebraicScalar, Scalar, exact_scalar

FLOAT_PD_TOL = 1e-12


class SymMatrix:
    """Immutable symmetric n x n matrix."""

    __slots__ = ("n", "entries", "_regime")

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        n = len(rows)
        ent = []
        regime = "rational"
        field = None
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix is not square")
            row = []
            for j in range(n):
                x = rows[i][j]
                if isinstance(x, AlgebraicScalar):
                    regime = "algebraic"
                    field = x.field
                elif isinstance(x, float):
                    if regime != "algebraic":
                        regime = "float"
                elif isinstance(x, (int, Fraction)) or isinstance(x, np.integer):
                    x = Fraction(int(x)) if isinstance(x, np.integer) else x
                elif isinstance(x, np.floating):
                    x = float(x)
                    if regime != "algebraic":
                        regime = "float"
                else:
                    raise TypeError(f"unsupported entry type {type(x)}")
                row.append(x)
            ent.append(row)
        if regime == "algebraic":
            if field is None:
                raise AssertionError
            for i in range(n):
                for j in range(n):
                    x = ent[i][j]
                    if isinstance(x, float):
                        raise TypeError("cannot mix float and algebraic entries")
                    if not isinstance(x, AlgebraicScalar):
                        ent[i][j] = field.from_rational(x)
        elif regime == "float":
            for i in range(n):
                for j in range(n):
                    ent[i][j] = float(ent[i][j])
        else:
            for i in range(n):
                for j in range(n):
                    ent[i][j] = Fraction(ent[i][j])
        for i in range(n):
            for j in range(i + 1, n):
                a, b = ent[i][j], ent[j][i]
                if regime == "float":
                    if a != b:
                        raise ValueError(f"asymmetric entries at ({i},{j})")
                elif a != b:
                    raise ValueError(f"asymmetric entries at ({i},{j})")
        self.n = n
        self.entries = tuple(tuple(row) for row in ent)
        self._regime = regime

    # -- constructors ---------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls([[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "SymMatrix":
        n = len(values)
        z = Fraction(0)
        return cls([[values[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "SymMatrix":
        arr = np.asarray(arr, dtype=float)
        sym = 0.5 * (arr + arr.T)
        return cls([[float(sym[i, j]) for j in range(arr.shape[0])] for i in range(arr.shape[0])])

    @classmethod
    def rank_one(cls, v: Sequence[int]) -> "SymMatrix":
        """v v^t for an integer vector v (rational regime)."""
        n = len(v)
        return cls([[Fraction(int(v[i]) * int(v[j])) for j in range(n)] for i in range(n)])

    # -- basics ---------------------------------------------------------------
    @property
    def regime(self) -> str:
        return self._regime

    def is_exact(self) -> bool:
        return self._regime != "float"

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SymMatrix({[[str(x) for x in row] for row in self.entries]})"

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def to_float(self) -> "SymMatrix":
        return SymMatrix([[float(x) for x in row] for row in self.entries])

    def map_entries(self, f) -> "SymMatrix":
        return SymMatrix([[f(x) for x in row] for row in self.entries])

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_dim(other)
        return SymMatrix([[self.entries[i][j] + other.entries[i][j]
                           for j in range(self.n)] for i in range(self.n)])

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_dim(other)
        return SymMatrix([[self.entries[i][j] - other.entries[i][j]
                           for j in range(self.n)] for i in range(self.n)])

    def scale(self, s: Scalar) -> "SymMatrix":
        return SymMatrix([[s * self.entries[i][j] for j in range(self.n)] for i in range(self.n)])

    def _check_dim(self, other: "SymMatrix") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def matmul(self, other: "SymMatrix") -> list[list]:
        """Plain matrix product (generally not symmetric); returns nested lists."""
        self._check_dim(other)
        n = self.n
        return [[sum(self.entries[i][k] * other.entries[k][j] for k in range(n))
                 for j in range(n)] for i in range(n)]

    def quad_form(self, v: Sequence) -> Scalar:
        """v^t S v."""
        n = self.n
        acc = None
        for i in range(n):
            if not v[i]:
                continue
            row = self.entries[i]
            part = sum(row[j] * v[j] for j in range(n) if v[j])
            term = v[i] * part
            acc = term if acc is None else acc + term
        if acc is None:
            acc = Fraction(0) if self._regime != "float" else 0.0
        return acc


# ---------------------------------------------------------------------------
# operations

def trace_inner(s1: SymMatrix, s2: SymMatrix) -> Scalar:
    """tr(S1 S2): the inner product on Sym_n (symmetric, bilinear)."""
    s1._check_dim(s2)
    n = s1.n
    acc = None
    for i in range(n):
        for j in range(n):
            term = s1.entries[i][j] * s2.entries[j][i]
            acc = term if acc is None else acc + term
    return acc


def _exact_solve(rows: list[list], rhs: list[list]):
    """Gaussian elimination over an exact field; returns the solution columns.

    Raises ZeroDivisionError-like ValueError on singular systems.
    """
    n = len(rows)
    m = len(rhs[0])
    A = [list(rows[i]) + list(rhs[i]) for i in range(n)]

    def is_zero(x):
        return x.is_zero() if isinstance(x, AlgebraicScalar) else x == 0

    for col in range(n):
        piv = None
        for r in range(col, n):
            if not is_zero(A[r][col]):
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col]
        A[col] = [x / inv for x in A[col]]
        for r in range(n):
            if r != col and not is_zero(A[r][col]):
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [[A[i][n + j] for j in range(m)] for i in range(n)]


def inverse(s: SymMatrix) -> SymMatrix:
    """Exact inverse for rational/algebraic entries, numpy inverse for floats."""
    if s.regime == "float":
        arr = np.linalg.inv(s.to_numpy())
        return SymMatrix.from_numpy(0.5 * (arr + arr.T))
    n = s.n
    one = Fraction(1)
    zero = Fraction(0)
    eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
    try:
        cols = _exact_solve([list(r) for r in s.entries], eye)
    except ValueError:
        raise ValueError("matrix is singular") from None
    return SymMatrix(cols)


def determinant(s: SymMatrix) -> Scalar:
    """Determinant; exact in exact regimes."""
    if s.regime == "float":
        return float(np.linalg.det(s.to_numpy()))
    n = s.n
    A = [list(r) for r in s.entries]

    def is_zero(x):
        return x.is_zero() if isinstance(x, AlgebraicScalar) else x == 0

    det = Fraction(1)
    sign = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not is_zero(A[r][col]):
                piv = r
                break
        if piv is None:
            return Fraction(0) if s.regime == "rational" else A[0][0] * 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        det = det * A[col][col]
        inv = A[col][col]
        for r in range(col + 1, n):
            if not is_zero(A[r][col]):
                f = A[r][col] / inv
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return det if sign == 1 else -det


def _ln_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def logdet(s: SymMatrix) -> float:
    """ln det S for positive definite S.

    The gradient of S -> logdet(S) in the trace inner product is S^{-1},
    which the optimizers rely on.
    """
    pd = is_positive_definite(s)
    if pd is not True:
        raise ValueError("logdet requires a positive definite matrix")
    if s.regime == "rational":
        return _ln_fraction(Fraction(determinant(s)))
    if s.regime == "algebraic":
        d = determinant(s)
        return _ln_fraction(d.approx(Fraction(1, 10**20)))
    sign, val = np.linalg.slogdet(s.to_numpy())
    return float(val)


def psd_sqrt(s: SymMatrix, tol: float = 1e-10) -> np.ndarray:
    """Symmetric R with R @ R = S (float), for PSD S.

    Eigenvalues below -tol raise; small negatives within tolerance clamp to 0.
    """
    arr = s.to_numpy() if isinstance(s, SymMatrix) else np.asarray(s, dtype=float)
    arr = 0.5 * (arr + arr.T)
    w, v = np.linalg.eigh(arr)
    scale = max(1.0, float(np.max(np.abs(w))))
    if w.min() < -tol * scale:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w.min():.3e}")
    w = np.clip(w, 0.0, None)
    r = (v * np.sqrt(w)) @ v.T
    return 0.5 * (r + r.T)


def is_positive_definite(s: SymMatrix):
    """Positive definiteness test.

    Exact regimes: all leading principal minors > 0, decided exactly
    (certified interval signs in the algebraic case).  Float regime: pivoted
    Cholesky; pivots within FLOAT_PD_TOL relative to the largest diagonal
    entry are borderline and yield None (indeterminate).
    """
    if s.regime == "float":
        return _float_pd(s.to_numpy())
    n = s.n
    for k in range(1, n + 1):
        minor = SymMatrix([[s.entries[i][j] for j in range(k)] for i in range(k)])
        d = determinant(minor)
        if isinstance(d, AlgebraicScalar):
            if d.sign() <= 0:
                return False
        elif d <= 0:
            return False
    return True


def _float_pd(arr: np.ndarray):
    a = np.array(arr, dtype=float)
    n = a.shape[0]
    scale = max(float(np.max(np.abs(np.diag(a)))), 1e-300)
    tol = FLOAT_PD_TOL * scale
    perm = list(range(n))
    for k in range(n):
        # diagonal pivoting
        dsub = np.diag(a)[k:]
        j = k + int(np.argmax(dsub))
        if j != k:
            a[[k, j], :] = a[[j, k], :]
            a[:, [k, j]] = a[:, [j, k]]
            perm[k], perm[j] = perm[j], perm[k]
        piv = a[k, k]
        if piv <= tol:
            if piv < -tol:
                return False
            # pivot in the uncertainty band: remaining block decides nothing
            rest = a[k:, k:]
            if np.any(np.diag(rest) < -tol):
                return False
            return None
        c = a[k + 1:, k] / piv
        a[k + 1:, k + 1:] -= np.outer(c, a[k + 1:, k])
        a[k + 1:, k] = 0.0
        a[k, k + 1:] = 0.0
    return True
