"""Dense matrices over the four scalar backends.

Provides the three structural maps (column-stacking vectorization, the block
realignment involution, and the Kronecker product in its block form) together
with exact and numerical rank / range / least-squares machinery.

Conventions fixed here and relied on everywhere else:

* storage is row-major, ``vec`` stacks columns;
* ``kron(A, B)`` is the block matrix whose (k, l) block is ``B[k, l] * A``,
  so that ``realign(kron(A, B)) == vec(A) @ vec(B).T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import C64, F64, RATIONAL, ScalarKind

# A numerical rank is reported as ill-conditioned when the smallest retained
# and largest discarded singular values are closer than this factor.
ILL_CONDITIONED_RATIO = 1e3

# Default relative tolerance for least-squares membership verdicts on the
# approximate backends; exact backends decide solvability exactly.
DEFAULT_RESIDUAL_RTOL = 1e-8

_EPS = float(np.finfo(np.float64).eps)


class SingularMatrixError(ArithmeticError):
    """An exact or numeric inverse does not exist."""


@dataclass(frozen=True, eq=False)
class Mat:
    """Immutable dense matrix; ``data`` is 2-D with dtype fixed by ``kind``."""

    data: np.ndarray
    kind: ScalarKind

    # -- construction -------------------------------------------------

    @staticmethod
    def wrap(data, kind: ScalarKind) -> "Mat":
        """Adopt an ndarray whose entries are already canonical scalars."""
        a = np.asarray(data, dtype=kind.dtype)
        if a.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {a.shape}")
        if kind.tag == "gfp":
            a = a % kind.modulus
        return Mat(a, kind)

    @classmethod
    def from_rows(cls, rows, kind: ScalarKind) -> "Mat":
        data = [[kind.coerce(x) for x in row] for row in rows]
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        a = np.empty((len(data), widths.pop() if widths else 0), dtype=kind.dtype)
        for i, row in enumerate(data):
            for j, x in enumerate(row):
                a[i, j] = x
        return cls(a, kind)

    @classmethod
    def zeros(cls, rows: int, cols: int, kind: ScalarKind) -> "Mat":
        a = np.empty((rows, cols), dtype=kind.dtype)
        a[...] = kind.zero()
        return cls(a, kind)

    @classmethod
    def identity(cls, n: int, kind: ScalarKind) -> "Mat":
        m = cls.zeros(n, n, kind)
        one = kind.one()
        for i in range(n):
            m.data[i, i] = one
        return m

    # -- basic structure ----------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> "Mat":
        return Mat(self.data.T, self.kind)

    def conj(self) -> "Mat":
        if self.kind.tag == "c64":
            return Mat(np.conj(self.data), self.kind)
        return self

    def col(self, j: int) -> "Mat":
        return Mat(self.data[:, j : j + 1], self.kind)

    def to_lists(self) -> list:
        return [list(row) for row in self.data]

    def convert(self, kind: ScalarKind) -> "Mat":
        """Re-coerce every entry into another scalar kind."""
        if kind == self.kind:
            return self
        if self.kind.tag == "c64" and kind.tag != "c64":
            raise TypeError("cannot convert complex matrices to a real kind")
        return Mat.from_rows(self.to_lists(), kind)

    # -- arithmetic ----------------------------------------------------

    def _check_kind(self, other: "Mat"):
        if self.kind != other.kind:
            raise ValueError(f"scalar kind mismatch: {self.kind} vs {other.kind}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_kind(other)
        return Mat.wrap(self.data + other.data, self.kind)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_kind(other)
        return Mat.wrap(self.data - other.data, self.kind)

    def __neg__(self) -> "Mat":
        return Mat.wrap(-self.data, self.kind)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_kind(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.data.shape} @ {other.data.shape}")
        return Mat.wrap(self.data.dot(other.data), self.kind)

    def scale(self, s) -> "Mat":
        return Mat.wrap(self.data * self.kind.coerce(s), self.kind)

    def __mul__(self, s) -> "Mat":
        return self.scale(s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Mat":
        if self.kind.tag == "gfp":
            inv = pow(self.kind.coerce(s), -1, self.kind.modulus)
            return self.scale(inv)
        if self.kind.tag == "rational":
            return self.scale(Fraction(1, 1) / Fraction(s))
        return self.scale(1.0 / s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {self.kind})"


@dataclass(frozen=True)
class BlockShape:
    """Block grid parameters for the realignment map.

    Describes an (n*m) x (p*q) matrix viewed as an m x q grid of n x p
    blocks.  Realigning with shape (n, m, p, q) and then with the swapped
    shape (n, p, m, q) is the identity; for n = m = p = q the map is its own
    inverse.
    """

    n: int
    m: int
    p: int
    q: int

    def __post_init__(self):
        if min(self.n, self.m, self.p, self.q) < 1:
            raise ValueError("block shape entries must be positive")

    @property
    def rows(self) -> int:
        return self.n * self.m

    @property
    def cols(self) -> int:
        return self.p * self.q

    @property
    def swapped(self) -> "BlockShape":
        return BlockShape(self.n, self.p, self.m, self.q)

    @staticmethod
    def square(side: int) -> "BlockShape":
        return BlockShape(side, side, side, side)


def _infer_square_shape(a: Mat) -> BlockShape:
    side = math.isqrt(a.rows)
    if a.rows != a.cols or side * side != a.rows:
        raise ValueError(
            f"cannot infer a square block shape for a {a.rows}x{a.cols} matrix"
        )
    return BlockShape.square(side)


# -- structural maps ----------------------------------------------------


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product whose (k, l) block is ``b[k, l] * a``."""
    a._check_kind(b)
    return Mat.wrap(np.kron(b.data, a.data), a.kind)


def vec(a: Mat) -> Mat:
    """Stack the columns of ``a`` into one column vector."""
    return Mat.wrap(a.data.reshape(-1, 1, order="F"), a.kind)


def unvec(v: Mat, rows: int, cols: int) -> Mat:
    """Inverse of ``vec``: refold a (rows*cols) x 1 column into a matrix."""
    if v.cols != 1 or v.rows != rows * cols:
        raise ValueError(f"expected a {rows * cols}x1 column, got {v.rows}x{v.cols}")
    return Mat.wrap(v.data.reshape(rows, cols, order="F"), v.kind)


def realign(a: Mat, shape: BlockShape | None = None) -> Mat:
    """Block realignment: column (l*m + j) of the result is the
    vectorization of block (j, l) of ``a``.

    ``a`` is (n*m) x (p*q), viewed as an m x q grid of n x p blocks; the
    result is (n*p) x (m*q).  With ``shape`` omitted, a square shape is
    inferred (both dimensions must be perfect squares of the same side).
    """
    if shape is None:
        shape = _infer_square_shape(a)
    n, m, p, q = shape.n, shape.m, shape.p, shape.q
    if a.rows != shape.rows or a.cols != shape.cols:
        raise ValueError(
            f"matrix is {a.rows}x{a.cols}, block shape wants {shape.rows}x{shape.cols}"
        )
    out = a.data.reshape(m, n, q, p).transpose(3, 1, 2, 0).reshape(n * p, m * q)
    return Mat.wrap(out, a.kind)


# -- norms ---------------------------------------------------------------


def norm(a: Mat, which: str = "fro"):
    """Matrix norm: "fro", "l1" (max column sum) or "linf" (max row sum).

    On the rational backend "fro" returns the *squared* Frobenius norm so the
    result stays in the field; compare squared quantities there.
    """
    if a.kind.tag == "gfp":
        raise ValueError("norms are not defined over GF(p)")
    if which == "fro":
        if a.kind.tag == "rational":
            return sum((x * x for x in a.data.ravel()), Fraction(0))
        return float(np.linalg.norm(a.data, "fro"))
    if which == "l1":
        sums = [sum(abs(x) for x in col) for col in a.data.T]
    elif which == "linf":
        sums = [sum(abs(x) for x in row) for row in a.data]
    else:
        raise ValueError(f"unknown norm {which!r}")
    zero = Fraction(0) if a.kind.tag == "rational" else 0.0
    return max(sums, default=zero)


# -- exact elimination ----------------------------------------------------


def _rref(data: np.ndarray, kind: ScalarKind):
    """Reduced row echelon form over an exact kind; returns (R, pivot_cols)."""
    a = np.array(data, dtype=object, copy=True)
    rows, cols = a.shape
    modulus = kind.modulus
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        if modulus is not None:
            a[r] = a[r] * pow(int(a[r, c]), -1, modulus) % modulus
        else:
            a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
                if modulus is not None:
                    a[i] = a[i] % modulus
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def _solve_exact(a: Mat, b: Mat):
    """One exact solution of ``a @ x = b`` (free variables set to zero), or
    None when the system is inconsistent."""
    aug = np.concatenate([a.data, b.data], axis=1)
    r, pivots = _rref(aug, a.kind)
    if any(c >= a.cols for c in pivots):
        return None
    x = Mat.zeros(a.cols, b.cols, a.kind)
    for row, c in enumerate(pivots):
        x.data[c, :] = r[row, a.cols :]
    return x


def det(a: Mat):
    """Determinant (exact on exact kinds, numpy on approximate kinds)."""
    if a.rows != a.cols:
        raise ValueError("determinant needs a square matrix")
    if not a.kind.exact:
        return np.linalg.det(a.data)
    m = np.array(a.data, dtype=object, copy=True)
    modulus = a.kind.modulus
    n = a.rows
    sign = 1
    result = a.kind.one()
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i, c] != 0), None)
        if pr is None:
            return a.kind.zero()
        if pr != c:
            m[[c, pr]] = m[[pr, c]]
            sign = -sign
        pivot = m[c, c]
        result = result * pivot
        if modulus is not None:
            result %= modulus
            inv = pow(int(pivot), -1, modulus)
            for i in range(c + 1, n):
                if m[i, c] != 0:
                    m[i] = (m[i] - m[i, c] * inv % modulus * m[c]) % modulus
        else:
            for i in range(c + 1, n):
                if m[i, c] != 0:
                    m[i] = m[i] - m[i, c] / pivot * m[c]
    if sign < 0:
        result = -result % modulus if modulus is not None else -result
    return result


def inverse(a: Mat) -> Mat:
    """Matrix inverse; raises SingularMatrixError when none exists."""
    if a.rows != a.cols:
        raise ValueError("inverse needs a square matrix")
    if not a.kind.exact:
        try:
            return Mat.wrap(np.linalg.inv(a.data), a.kind)
        except np.linalg.LinAlgError as e:
            raise SingularMatrixError(str(e)) from None
    eye = Mat.identity(a.rows, a.kind)
    x = _solve_exact(a, eye)
    if x is None:
        raise SingularMatrixError(f"{a.rows}x{a.cols} matrix is singular")
    return x


# -- rank and subspaces ---------------------------------------------------


@dataclass(frozen=True)
class RankInfo:
    """Rank together with the diagnostics that produced it."""

    rank: int
    tol: float | None
    ill_conditioned: bool
    singular_values: tuple[float, ...] | None


def rank_info(a: Mat, tol: float | None = None) -> RankInfo:
    """Rank of ``a``: pivot count on exact kinds, singular values above
    ``tol`` on approximate kinds.

    Default tolerance is max(rows, cols) * eps * sigma_max.  The result is
    flagged ill-conditioned when the singular values on either side of the
    retained/discarded cut differ by less than ILL_CONDITIONED_RATIO.
    """
    if a.kind.exact:
        _, pivots = _rref(a.data, a.kind)
        return RankInfo(len(pivots), None, False, None)
    if min(a.data.shape) == 0:
        return RankInfo(0, 0.0, False, ())
    sv = np.linalg.svd(a.data, compute_uv=False)
    smax = float(sv[0])
    if tol is None:
        tol = max(a.rows, a.cols) * _EPS * smax
    r = int((sv > tol).sum())
    flagged = False
    if 0 < r < len(sv) and sv[r] > 0 and sv[r - 1] / sv[r] < ILL_CONDITIONED_RATIO:
        flagged = True
    return RankInfo(r, float(tol), flagged, tuple(float(s) for s in sv))


def rank(a: Mat, tol: float | None = None) -> int:
    return rank_info(a, tol).rank


def range_basis(a: Mat, tol: float | None = None) -> Mat:
    """Columns spanning the column space: pivot columns of ``a`` on exact
    kinds, an orthonormal basis on approximate kinds."""
    if a.kind.exact:
        _, pivots = _rref(a.data, a.kind)
        return Mat(a.data[:, pivots].copy(), a.kind)
    u, sv, _ = np.linalg.svd(a.data, full_matrices=False)
    if tol is None:
        tol = max(a.rows, a.cols) * _EPS * (float(sv[0]) if len(sv) else 0.0)
    r = int((sv > tol).sum())
    return Mat(u[:, :r], a.kind)


def null_space(a: Mat, tol: float | None = None) -> Mat:
    """Columns spanning the right kernel of ``a``."""
    if a.kind.exact:
        r, pivots = _rref(a.data, a.kind)
        free = [c for c in range(a.cols) if c not in pivots]
        out = Mat.zeros(a.cols, len(free), a.kind)
        one = a.kind.one()
        for j, f in enumerate(free):
            out.data[f, j] = one
            for row, c in enumerate(pivots):
                val = -r[row, f]
                if a.kind.tag == "gfp":
                    val %= a.kind.modulus
                out.data[c, j] = val
        return out
    if min(a.data.shape) == 0:
        return Mat.identity(a.cols, a.kind)
    u, sv, vh = np.linalg.svd(a.data)
    if tol is None:
        tol = max(a.rows, a.cols) * _EPS * (float(sv[0]) if len(sv) else 0.0)
    r = int((sv > tol).sum())
    return Mat(vh[r:].conj().T.copy(), a.kind)


def in_range(a: Mat, v: Mat, tol: float | None = None):
    """Decide whether column ``v`` lies in the column space of ``a``.

    Returns (verdict, residual).  Exact kinds decide solvability by
    elimination; the residual is 0 for members and the exact least-squares
    defect (squared norm; 1 over GF(p)) otherwise.  Approximate kinds accept
    when the least-squares residual is at most tol * max(1, |v|).
    """
    a._check_kind(v)
    if v.cols != 1 or v.rows != a.rows:
        raise ValueError(f"candidate must be a {a.rows}x1 column")
    if a.kind.exact:
        x = _solve_exact(a, v)
        if x is not None:
            return True, a.kind.zero()
        if a.kind.tag == "gfp":
            return False, 1
        # normal equations are always consistent; defect of the projection
        g = a.T @ a
        rhs = a.T @ v
        xo = _solve_exact(g, rhs)
        resid = a @ xo - v
        return False, sum((e * e for e in resid.data.ravel()), Fraction(0))
    if tol is None:
        tol = DEFAULT_RESIDUAL_RTOL
    x, *_ = np.linalg.lstsq(a.data, v.data, rcond=None)
    residual = float(np.linalg.norm(a.data.dot(x) - v.data))
    vnorm = float(np.linalg.norm(v.data))
    return residual <= tol * max(1.0, vnorm), residual


def subspace_intersect(u: Mat, v: Mat, tol: float | None = None) -> Mat:
    """Basis of col(u) & col(v), from the kernel of the block [u | -v]."""
    u._check_kind(v)
    if u.rows != v.rows:
        raise ValueError("subspaces live in different ambient dimensions")
    if u.cols == 0 or v.cols == 0:
        return Mat.zeros(u.rows, 0, u.kind)
    block = Mat.wrap(np.concatenate([u.data, -v.data], axis=1), u.kind)
    ker = null_space(block, tol)
    if ker.cols == 0:
        return Mat.zeros(u.rows, 0, u.kind)
    combo = Mat(ker.data[: u.cols, :], u.kind)
    out = u @ combo
    if not u.kind.exact:
        q, _ = np.linalg.qr(out.data)
        out = Mat(q[:, : out.cols], u.kind)
    return out


def is_psd(a: Mat, tol: float | None = None) -> bool:
    """Positive semi-definiteness check.

    Exact kinds use symmetric pivoting (diagonal pivots must stay
    nonnegative, and a vanished diagonal forces its whole row to vanish);
    approximate kinds check the spectrum of the Hermitian part.
    """
    if a.rows != a.cols:
        return False
    if a.kind.tag == "gfp":
        raise ValueError("positive semi-definiteness is not defined over GF(p)")
    if not a.kind.exact:
        h = (a.data + a.data.conj().T) / 2
        atol = tol if tol is not None else 1e-9
        if not np.allclose(a.data, h, rtol=1e-9, atol=atol):
            return False
        w = np.linalg.eigvalsh(h)
        bound = tol if tol is not None else a.rows * _EPS * max(1.0, float(abs(w).max()))
        return bool(w.min() >= -bound)
    if not np.array_equal(a.data, a.data.T):
        return False
    w = np.array(a.data, dtype=object, copy=True)
    active = list(range(a.rows))
    while active:
        if any(w[i, i] < 0 for i in active):
            return False
        piv = next((i for i in active if w[i, i] > 0), None)
        if piv is None:
            # zero diagonal throughout: PSD iff the remaining block vanishes
            return all(w[i, j] == 0 for i in active for j in active)
        active.remove(piv)
        d = w[piv, piv]
        for i in active:
            if w[i, piv] != 0:
                f = w[i, piv] / d
                for j in active:
                    w[i, j] = w[i, j] - f * w[piv, j]
    return True
