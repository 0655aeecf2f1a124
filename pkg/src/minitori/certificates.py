"""Immersion certificates: matrix data, eta-sets, the full equation system,
embeddedness, evaluation and deformations.

A homogeneous immersion is certified by matrix data {n, N, Q, Y, weights}:
Q the dual-lattice Gram matrix in integer coordinates (so Y_j^t Q Y_j = 1),
Y the integer coordinates of the participating norm-1 classes, and weights
the squared coefficients c_j^2 with sum 1 and sum c_j^2 Y_j Y_j^t = Q^{-1}/n.

General (possibly non-homogeneous) immersions are certified by the 2N x 2N
coefficient operator A A^t together with (Q, Y): writing the squared norm and
the pullback metric of x = (Theta_1, ..., Theta_N) A in Fourier modes, the
constraints are one pair of scalar equations and one pair of matrix equations
per +/- class of frequencies eta = Y_r +/- Y_s, plus the zero-frequency
equation sum_r a_r Y_r Y_r^t = Q^{-1}/n and positive semidefiniteness.

All equation systems are evaluated in Y-coordinates; correctness under the
generator change is the congruence invariance of the rank-one sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .optimize import (Columns, HullPoint, as_columns, caratheodory_reduce,
                       column_rank)
from .scalars import AlgebraicScalar, exact_scalar, scalar_to_float
from .symmetric import SymMatrix, inverse, is_positive_definite, psd_sqrt

TWO_PI = 2.0 * math.pi
DEFAULT_TOL = 1e-10


class UnverifiedCertificate(ValueError):
    """Raised when an operation requires a verified certificate."""


# ---------------------------------------------------------------------------
# matrix data (homogeneous certificates)

@dataclass(frozen=True)
class MatrixData:
    """Certificate {n, N, Q, Y, weights} of a homogeneous minimal immersion."""

    q: SymMatrix
    y: Columns
    weights: tuple
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "y", as_columns(self.y))
        if len(self.weights) != len(self.y):
            raise ValueError("one weight per column required")

    @property
    def n(self) -> int:
        return self.q.n

    @property
    def big_n(self) -> int:
        return len(self.y)

    @property
    def sphere_dim(self) -> int:
        return 2 * len(self.y) - 1

    def weights_float(self) -> list[float]:
        return [scalar_to_float(w) for w in self.weights]

    def is_exact(self) -> bool:
        return self.q.is_exact() and all(exact_scalar(w) for w in self.weights)

    def hull_point(self) -> HullPoint:
        return HullPoint.from_weights(self.y, self.weights)


# ---------------------------------------------------------------------------
# verification reports

@dataclass
class VerificationReport:
    verdict: str                      # "verified" | "falsified" | "indeterminate"
    reason: Optional[str]
    residuals: dict[str, float]
    psd_margin: Optional[float]
    tolerance: float

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "residuals": {k: f"{v:.17e}" for k, v in self.residuals.items()},
            "psd_margin": None if self.psd_margin is None else f"{self.psd_margin:.17e}",
            "tolerance": f"{self.tolerance:.17e}",
        }


def _abs_float(x) -> float:
    if isinstance(x, AlgebraicScalar):
        return abs(float(x))
    return abs(float(x))


def _assemble_report(residuals: dict[str, float], psd_margin: Optional[float],
                     tol: float, structural: Optional[str],
                     borderline: Optional[str]) -> VerificationReport:
    if structural is not None:
        return VerificationReport("falsified", structural, residuals, psd_margin, tol)
    worst_key = None
    worst = 0.0
    for k, v in residuals.items():
        if v > worst:
            worst, worst_key = v, k
    if worst > tol:
        return VerificationReport("falsified", worst_key, residuals, psd_margin, tol)
    if psd_margin is not None and psd_margin < -tol:
        return VerificationReport("falsified", "psd", residuals, psd_margin, tol)
    if borderline is not None:
        return VerificationReport("indeterminate", borderline, residuals, psd_margin, tol)
    return VerificationReport("verified", None, residuals, psd_margin, tol)


def verify_matrix_data(data: MatrixData, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check the two certificate equations, weight positivity and normalization.

    Exact scalars are compared exactly (residual 0 or a hard failure recorded
    with its float magnitude); float certificates compare within tol.
    """
    n = data.n
    residuals: dict[str, float] = {}
    structural = None
    if column_rank(data.y) != n:
        structural = "rank"
    cols = list(data.y)
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            ci, cj = cols[i], cols[j]
            if ci == cj or ci == tuple(-x for x in cj):
                structural = structural or "proportional_columns"

    # unit-norm equation for every column
    aqa = 0.0
    for c in data.y:
        val = data.q.quad_form(c)
        aqa = max(aqa, _abs_float(val - 1))
    residuals["unit_norm"] = aqa

    # convex-combination equation: sum w_j Y_j Y_j^t = Q^{-1}/n
    flat = 0.0
    try:
        qinv = inverse(data.q)
    except ValueError:
        return VerificationReport("falsified", "singular_gram", residuals, None, tol)
    acc = None
    for w, c in zip(data.weights, data.y):
        m = SymMatrix.rank_one(c)
        term = m.scale(w)
        acc = term if acc is None else acc + term
    target = qinv.scale(Fraction(1, n) if acc.is_exact() and qinv.is_exact() else 1.0 / n)
    for i in range(n):
        for j in range(n):
            flat = max(flat, _abs_float(acc.entries[i][j] - target.entries[i][j]))
    residuals["flat"] = flat

    wsum = None
    for w in data.weights:
        wsum = w if wsum is None else wsum + w
    residuals["weight_sum"] = _abs_float(wsum - 1)

    borderline = None
    wmin_f = None
    for w in data.weights:
        wf = scalar_to_float(w)
        wmin_f = wf if wmin_f is None else min(wmin_f, wf)
        if exact_scalar(w):
            sign = w.sign() if isinstance(w, AlgebraicScalar) else (0 if w == 0 else (1 if w > 0 else -1))
            if sign <= 0:
                structural = structural or "weight_positivity"
        elif wf <= tol:
            if wf < -tol:
                structural = structural or "weight_positivity"
            else:
                borderline = "weight_positivity"
    residuals["min_weight"] = 0.0 if wmin_f is None or wmin_f > 0 else abs(min(wmin_f, 0.0))

    pd = is_positive_definite(data.q)
    if pd is False:
        structural = structural or "gram_not_pd"
    elif pd is None:
        borderline = borderline or "gram_pd"
    return _assemble_report(residuals, None, tol, structural, borderline)


# ---------------------------------------------------------------------------
# eta-sets

@dataclass(frozen=True)
class EtaSystem:
    """All +/- classes of frequency vectors Y_r +/- Y_s with their realizations.

    entries maps the sign-canonicalized eta (first nonzero entry positive) to
    the tuple of realizations (r, s, sigma) with Y_r + sigma Y_s = +/- eta.
    Every unordered pair r < s appears under exactly two keys.
    """

    entries: dict[tuple[int, ...], tuple[tuple[int, int, int], ...]]
    y: Columns

    def orientation(self, eta: tuple[int, ...], real: tuple[int, int, int]) -> int:
        """+1 when Y_r + sigma Y_s equals eta itself, -1 when it equals -eta."""
        r, s, sigma = real
        v = tuple(a + sigma * b for a, b in zip(self.y[r], self.y[s]))
        return 1 if v == eta else -1

    def pair_count(self) -> int:
        return sum(len(v) for v in self.entries.values())


def _canon_eta(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def eta_sets(y) -> EtaSystem:
    """Group every sum/difference Y_r +/- Y_s (r < s) by the +/- class of its value."""
    cols = as_columns(y)
    nn = len(cols)
    for i in range(nn):
        for j in range(i + 1, nn):
            if cols[i] == cols[j] or cols[i] == tuple(-x for x in cols[j]):
                raise ValueError("columns must be pairwise non-proportional")
    out: dict[tuple[int, ...], list[tuple[int, int, int]]] = {}
    for r in range(nn):
        for s in range(r + 1, nn):
            for sigma in (1, -1):
                v = tuple(a + sigma * b for a, b in zip(cols[r], cols[s]))
                key = _canon_eta(v)
                out.setdefault(key, []).append((r, s, sigma))
    entries = {k: tuple(v) for k, v in sorted(out.items())}
    return EtaSystem(entries=entries, y=cols)


# ---------------------------------------------------------------------------
# general certificates: the coefficient operator A A^t

class GramOperator:
    """The 2N x 2N PSD coefficient operator of a (possibly non-homogeneous) immersion.

    Stored as the assembled float matrix; diagonal 2x2 blocks must be scalar
    multiples of the identity (the structural constraint forced by the
    frequency-2Y_r modes).
    """

    __slots__ = ("N", "matrix")

    def __init__(self, matrix: np.ndarray):
        arr = np.asarray(matrix, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
            raise ValueError("expected a 2N x 2N matrix")
        if not np.allclose(arr, arr.T, atol=1e-12, rtol=0.0):
            raise ValueError("matrix must be symmetric")
        n2 = arr.shape[0]
        self.N = n2 // 2
        self.matrix = 0.5 * (arr + arr.T)
        scale = max(1.0, float(np.max(np.abs(arr))))
        for r in range(self.N):
            b = self.block(r, r)
            if (abs(b[0, 0] - b[1, 1]) > 1e-12 * scale
                    or abs(b[0, 1]) > 1e-12 * scale or abs(b[1, 0]) > 1e-12 * scale):
                raise ValueError(f"diagonal block {r} is not a scalar multiple of I2")

    @classmethod
    def from_blocks(cls, n_classes: int, diagonal: Sequence[float],
                    off_blocks: dict[tuple[int, int], np.ndarray]) -> "GramOperator":
        m = np.zeros((2 * n_classes, 2 * n_classes))
        for r, a in enumerate(diagonal):
            m[2 * r, 2 * r] = m[2 * r + 1, 2 * r + 1] = float(a)
        for (r, s), blk in off_blocks.items():
            b = np.asarray(blk, dtype=float)
            m[2 * r:2 * r + 2, 2 * s:2 * s + 2] = b
            m[2 * s:2 * s + 2, 2 * r:2 * r + 2] = b.T
        return cls(m)

    @classmethod
    def from_matrix_data(cls, data: MatrixData) -> "GramOperator":
        """Diagonal lift of a homogeneous certificate (A_rr = c_r^2 I_2)."""
        return cls.from_blocks(data.big_n, data.weights_float(), {})

    def block(self, r: int, s: int) -> np.ndarray:
        return self.matrix[2 * r:2 * r + 2, 2 * s:2 * s + 2]

    def a(self, r: int) -> float:
        return float(self.matrix[2 * r, 2 * r])

    def diagonal_part(self) -> "GramOperator":
        return GramOperator.from_blocks(self.N, [self.a(r) for r in range(self.N)], {})

    def __eq__(self, other):
        if not isinstance(other, GramOperator):
            return NotImplemented
        return self.N == other.N and np.array_equal(self.matrix, other.matrix)


def is_homogeneous(gram: GramOperator, tol: float = DEFAULT_TOL) -> bool:
    """True iff every off-diagonal 2x2 block vanishes within tol."""
    m = gram.matrix.copy()
    for r in range(gram.N):
        m[2 * r:2 * r + 2, 2 * r:2 * r + 2] = 0.0
    return bool(np.max(np.abs(m)) <= tol) if m.size else True


def verify_full(gram: GramOperator, geometry: tuple[SymMatrix, Sequence],
                tol: float = DEFAULT_TOL) -> VerificationReport:
    """Verify the complete isometric-immersion system for a coefficient operator.

    Per +/- frequency class eta the Fourier expansion of |x|^2 - 1 and of the
    pullback metric gives, over all realizations Y_r + sigma Y_s = o * eta
    (o the orientation, B the (r,s) block of A A^t, K = Y_r Y_s^t + Y_s Y_r^t):

        norm, cos:    sum_{sigma=+1} (B11 - B22)    + sum_{sigma=-1} (B11 + B22)
        norm, sin:    sum_{sigma=+1} o (B12 + B21)  + sum_{sigma=-1} o (B21 - B12)
        metric, cos:  sum_{sigma=+1} -(B11 - B22) K + sum_{sigma=-1} (B11 + B22) K
        metric, sin:  sum_{sigma=+1} -o (B12+B21) K + sum_{sigma=-1} o (B21 - B12) K

    plus the zero-frequency equation sum_r a_r Y_r Y_r^t = Q^{-1}/n, the unit
    norm of every class, and PSD of the assembled operator.
    """
    q, y = geometry
    cols = as_columns(y)
    n = q.n
    if gram.N != len(cols):
        raise ValueError(f"operator has {gram.N} classes, geometry has {len(cols)}")
    qf = q.to_numpy()
    qinv = np.linalg.inv(qf)
    residuals: dict[str, float] = {}

    aqa = max(abs(float(np.array(c) @ qf @ np.array(c)) - 1.0) for c in cols)
    residuals["unit_norm"] = aqa

    euta = np.zeros((n, n))
    for r, c in enumerate(cols):
        euta += gram.a(r) * np.outer(c, c)
    residuals["euta"] = float(np.max(np.abs(euta - qinv / n)))

    coeffs = frequency_coefficients(gram, cols)
    e1 = max((abs(v[0]) for v in coeffs.values()), default=0.0)
    e2 = max((abs(v[1]) for v in coeffs.values()), default=0.0)
    i1 = max((float(np.max(np.abs(v[2]))) for v in coeffs.values()), default=0.0)
    i2 = max((float(np.max(np.abs(v[3]))) for v in coeffs.values()), default=0.0)
    residuals["eigen1"] = e1
    residuals["eigen2"] = e2
    residuals["iso1"] = i1
    residuals["iso2"] = i2

    psd_margin = float(np.linalg.eigvalsh(gram.matrix).min())
    return _assemble_report(residuals, psd_margin, tol, None, None)


def frequency_coefficients(gram: GramOperator, y) -> dict:
    """Fourier data per +/- frequency class eta = Y_r +/- Y_s.

    Returns eta -> (e1, e2, i1, i2) where the squared norm and the pullback
    metric of the immersion decompose as

        |x(u)|^2            = sum_r a_r + sum_eta [e1 cos th + e2 sin th]
        metric matrix G(u)  = 4 pi^2 (sum_r a_r Y_r Y_r^t
                              + sum_eta [i1/2 cos th + i2/2 sin th])

    with th = 2 pi <eta, u>.  All four vanish for every eta exactly when the
    operator solves the eigenfunction and isometry systems.
    """
    cols = as_columns(y)
    n = len(cols[0])
    system = eta_sets(cols)
    out = {}
    for eta, realizations in system.entries.items():
        s_e1 = s_e2 = 0.0
        m_i1 = np.zeros((n, n))
        m_i2 = np.zeros((n, n))
        for (r, s, sigma) in realizations:
            o = system.orientation(eta, (r, s, sigma))
            b = gram.block(r, s)
            k = np.outer(cols[r], cols[s]).astype(float)
            k = k + k.T
            if sigma == 1:
                s_e1 += b[0, 0] - b[1, 1]
                s_e2 += o * (b[0, 1] + b[1, 0])
                m_i1 += -(b[0, 0] - b[1, 1]) * k
                m_i2 += -o * (b[0, 1] + b[1, 0]) * k
            else:
                s_e1 += b[0, 0] + b[1, 1]
                s_e2 += o * (b[1, 0] - b[0, 1])
                m_i1 += (b[0, 0] + b[1, 1]) * k
                m_i2 += o * (b[1, 0] - b[0, 1]) * k
        out[eta] = (s_e1, s_e2, m_i1, m_i2)
    return out


# ---------------------------------------------------------------------------
# embeddedness

@dataclass(frozen=True)
class EmbeddednessResult:
    status: str  # "embedded" | "not_embedded" | "unknown"
    witness: Optional[tuple[Fraction, ...]]
    certificate: Optional[str]

    def __bool__(self):
        return self.status == "embedded"


def _minor_det(cols: Columns, picks: tuple[int, ...]) -> int:
    n = len(cols[0])
    sub = [[cols[p][i] for p in picks] for i in range(n)]
    # integer determinant by fraction-free expansion (n <= 4 in practice)
    def det(m):
        k = len(m)
        if k == 1:
            return m[0][0]
        total = 0
        for j in range(k):
            if m[0][j] == 0:
                continue
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
        return total
    return det(sub)


def embeddedness(y, exhaustive: bool = False) -> EmbeddednessResult:
    """Decide injectivity of the immersion determined by the columns of Y.

    The image of u under the angle map is (theta_j) = (Y_j . u); the
    immersion is embedded iff no nonzero u in (-1,1)^n has all angles
    integral.  A unimodular n x n minor certifies embeddedness; when N = n
    the condition is exactly |det Y| = 1 (Minkowski's convex body theorem).
    The exhaustive path enumerates integer angle vectors through an
    invertible column subset and reports a witness point on failure.
    """
    from itertools import combinations

    cols = as_columns(y)
    n = len(cols[0])
    nn = len(cols)
    if column_rank(cols) != n:
        raise ValueError("rank(Y) must equal n")
    basis_picks = None
    for picks in combinations(range(nn), n):
        d = _minor_det(cols, picks)
        if d != 0 and basis_picks is None:
            basis_picks = picks
        if abs(d) == 1:
            return EmbeddednessResult("embedded", None,
                                      f"unimodular_minor{picks}")
    if nn == n:
        if not exhaustive:
            return EmbeddednessResult("not_embedded", None, "determinant")
    elif not exhaustive:
        return EmbeddednessResult("unknown", None, None)

    # exhaustive search: solve the angles on an invertible subset
    assert basis_picks is not None
    b_cols = [cols[p] for p in basis_picks]
    # angle system: m_i = <Y_{basis_i}, u>, i.e. rows of the matrix are the basis columns
    bt = [[Fraction(b_cols[i][j]) for j in range(n)] for i in range(n)]
    rest = [j for j in range(nn) if j not in basis_picks]
    bounds = [sum(abs(x) for x in cols[p]) for p in basis_picks]

    def solve_u(mvec):
        # B^t u = mvec
        aug = [row[:] + [Fraction(mvec[i])] for i, row in enumerate(bt)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col]
            aug[col] = [x / inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * yy for x, yy in zip(aug[r], aug[col])]
        return tuple(aug[i][n] for i in range(n))

    witnesses = []
    ranges = [range(-(b - 1), b) for b in bounds]

    def rec(idx, mvec):
        if idx == n:
            if all(v == 0 for v in mvec):
                return
            u = solve_u(mvec)
            if any(abs(x) >= 1 for x in u):
                return
            for j in rest:
                theta = sum(Fraction(cols[j][i]) * u[i] for i in range(n))
                if theta.denominator != 1:
                    return
            witnesses.append(u)
            return
        for v in ranges[idx]:
            rec(idx + 1, mvec + [v])

    rec(0, [])
    if not witnesses:
        return EmbeddednessResult("embedded", None, "exhaustive")

    def canon(u):
        for x in u:
            if x != 0:
                return u if x > 0 else tuple(-v for v in u)
        return u

    def simplicity(u):
        support = tuple(i for i, x in enumerate(u) if x != 0)
        negatives = sum(1 for x in u if x < 0)
        return (len(support), support, negatives, u)

    cands = sorted({canon(u) for u in witnesses}, key=simplicity)
    return EmbeddednessResult("not_embedded", cands[0], "exhaustive")


# ---------------------------------------------------------------------------
# evaluation

CertificateLike = Union[MatrixData, tuple[GramOperator, tuple[SymMatrix, Sequence]]]


def _as_operator(cert: CertificateLike) -> tuple[GramOperator, SymMatrix, Columns]:
    if isinstance(cert, MatrixData):
        return GramOperator.from_matrix_data(cert), cert.q, cert.y
    gram, (q, y) = cert
    return gram, q, as_columns(y)


def evaluate_immersion(cert: CertificateLike, u: Sequence, tol: float = DEFAULT_TOL,
                       _skip_verification: bool = False) -> np.ndarray:
    """The unit vector x(u) in R^{2N}, for u in dual-generator coordinates.

    x(u) = (Theta_1, ..., Theta_N) A with theta_j = 2 pi <Y_j, u> and
    A = psd_sqrt(A A^t).  Refuses unverified certificates.
    """
    gram, q, cols = _as_operator(cert)
    if not _skip_verification:
        if isinstance(cert, MatrixData):
            report = verify_matrix_data(cert, tol)
        else:
            report = verify_full(gram, (q, cols), tol)
        if not report.verified:
            raise UnverifiedCertificate(f"certificate is {report.verdict}: {report.reason}")
    a = psd_sqrt(SymMatrix.from_numpy(gram.matrix))
    uf = np.array([float(x) for x in u], dtype=float)
    theta = np.array([TWO_PI * float(np.dot(np.array(c, dtype=float), uf)) for c in cols])
    big = np.empty(2 * len(cols))
    big[0::2] = np.cos(theta)
    big[1::2] = np.sin(theta)
    return big @ a


def from_orthonormal(q: SymMatrix, v: Sequence[float]) -> np.ndarray:
    """Convert orthonormal coordinates to the dual-generator coordinates of eq. theta.

    Any generator M with M M^t = Q works; the symmetric square root is used.
    """
    m = psd_sqrt(q)
    return m @ np.asarray([float(x) for x in v], dtype=float)


def jacobian_gram(cert: CertificateLike, u_orth: Sequence[float],
                  step: float = 1e-6, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Finite-difference J^t J of x with respect to orthonormal coordinates.

    Equals (4 pi^2 / n) I_n for an isometric certificate.
    """
    gram, q, cols = _as_operator(cert)
    if isinstance(cert, MatrixData):
        report = verify_matrix_data(cert, tol)
    else:
        report = verify_full(gram, (q, cols), tol)
    if not report.verified:
        raise UnverifiedCertificate(f"certificate is {report.verdict}: {report.reason}")
    n = q.n
    m = psd_sqrt(q)
    base = np.asarray([float(x) for x in u_orth], dtype=float)
    jac = np.empty((2 * len(cols), n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = step
        xp = evaluate_immersion(cert, m @ (base + e), _skip_verification=True)
        xm = evaluate_immersion(cert, m @ (base - e), _skip_verification=True)
        jac[:, k] = (xp - xm) / (2 * step)
    return jac.T @ jac


# ---------------------------------------------------------------------------
# deformations

def deformation_path(g0: GramOperator, g1: GramOperator, t: float) -> GramOperator:
    """Convex blend (1-t) g0 + t g1; the equation system is linear in A A^t
    and PSD is convex, so verified endpoints verify along the whole path."""
    if g0.N != g1.N:
        raise ValueError("geometry mismatch: operators have different N")
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    return GramOperator((1.0 - t) * g0.matrix + t * g1.matrix)


def reduce_target_dimension(data: MatrixData, tol: float = DEFAULT_TOL) -> MatrixData:
    """Deform a verified homogeneous certificate into at most n(n+1)/2 classes.

    Caratheodory reduction of the weight vector preserves Q and P = Q^{-1}/n
    exactly; the sphere dimension drops to 2N' - 1 <= n^2 + n - 1.
    """
    report = verify_matrix_data(data, tol)
    if not report.verified:
        raise UnverifiedCertificate(f"certificate is {report.verdict}: {report.reason}")
    point = HullPoint.from_weights(data.y, data.weights)
    reduced = caratheodory_reduce(point)
    keep = list(reduced.support)
    new_y = tuple(data.y[j] for j in keep)
    new_w = tuple(reduced.weights[j] for j in keep)
    meta = dict(data.metadata)
    meta["reduced_from_classes"] = data.big_n
    return MatrixData(q=data.q, y=new_y, weights=new_w, metadata=meta)
