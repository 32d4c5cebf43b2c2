"""Density matrices of a spin-3/2 qudit and the two index conventions.

A 4x4 density matrix can be read either as a single spin-3/2 particle
(rows labelled by the spin projection 3/2, 1/2, -1/2, -3/2) or, through an
invertible relabelling of the basis indices, as a pair of qubits.  Nothing
numeric depends on the label; it only travels with the matrix so that
reports can print the basis the user had in mind.
"""

from __future__ import annotations

import enum
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

DIM = 4
DEFAULT_TOL = 1e-10
RESIDUAL_TOL = 1e-9
AUTO_NORMALIZE_LIMIT = 1e-6


class InvalidInputError(ValueError):
    """Raised for malformed matrices or arguments outside an operation's domain."""


class ParseError(InvalidInputError):
    """Raised when a density-matrix file cannot be decoded.

    ``position`` is a human readable pointer such as ``rows[2][3]`` or
    ``line 4 column 7``.
    """

    def __init__(self, message: str, position: str):
        super().__init__(f"{position}: {message}")
        self.position = position


class IndexConvention(enum.Enum):
    TWO_QUBIT = "two_qubit"
    SPIN_PROJECTION = "spin"


_LABELS = {
    IndexConvention.TWO_QUBIT: ("1/2 1/2", "1/2 -1/2", "-1/2 1/2", "-1/2 -1/2"),
    IndexConvention.SPIN_PROJECTION: ("3/2", "1/2", "-1/2", "-3/2"),
}


def index_label(i: int, conv: IndexConvention) -> str:
    """Label of basis index ``i`` (1-based) under ``conv``."""
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= DIM:
        raise InvalidInputError(f"index must be an integer in 1..{DIM}, got {i!r}")
    return _LABELS[conv][i - 1]


def label_index(label: str, conv: IndexConvention) -> int:
    """Inverse of :func:`index_label`.  Accepts ASCII or unicode minus signs."""
    norm = " ".join(label.replace("−", "-").split())
    try:
        return _LABELS[conv].index(norm) + 1
    except ValueError:
        raise InvalidInputError(f"unknown {conv.value} label {label!r}") from None


@dataclass(frozen=True)
class DensityMatrix:
    """Dense 4x4 complex matrix plus the index convention it is written in.

    Construction only checks shape and finiteness; physical validity is the
    job of :func:`validate_density`, so that invalid candidates (e.g. a
    Werner matrix outside its parameter range) can still be represented and
    reported on.
    """

    entries: np.ndarray
    convention: IndexConvention = IndexConvention.SPIN_PROJECTION

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.shape != (DIM, DIM):
            raise InvalidInputError(f"density matrix must be {DIM}x{DIM}, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("density matrix has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def __getitem__(self, ij):
        return self.entries[ij]

    def diagonal(self) -> np.ndarray:
        return self.entries.diagonal().real.copy()

    def relabel(self, convention: IndexConvention) -> DensityMatrix:
        return DensityMatrix(self.entries, convention)

    def permuted(self, perm) -> DensityMatrix:
        """Same operator written in a reordered basis (``perm`` is 0-based)."""
        perm = list(perm)
        return DensityMatrix(self.entries[np.ix_(perm, perm)], self.convention)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.convention == other.convention and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.convention, self.entries.tobytes()))


@dataclass(frozen=True)
class ValidationReport:
    hermitian: bool
    trace_dev: float
    min_eigenvalue: float
    psd: bool
    valid: bool
    eigenvalues: tuple = field(default=(), compare=False)

    def lines(self) -> list[str]:
        return [
            f"hermitian={str(self.hermitian).lower()}",
            f"trace_dev={self.trace_dev:.3e}",
            f"min_eigenvalue={self.min_eigenvalue:.12g}",
            f"psd={str(self.psd).lower()}",
            f"valid={str(self.valid).lower()}",
        ]


# -- eigensolver -----------------------------------------------------------------


def jacobi_eigh(a, max_sweeps: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a small Hermitian matrix by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the classical real Jacobi rotation, so real symmetric input
    stays real throughout.  Returns ``(w, v)`` with ascending eigenvalues
    ``w`` and unitary ``v`` whose columns are the eigenvectors.
    """
    arr = np.asarray(a, dtype=complex)
    n = arr.shape[0]
    if arr.ndim != 2 or arr.shape != (n, n):
        raise InvalidInputError(f"expected a square matrix, got shape {arr.shape}")
    # only the Hermitian part is diagonalised
    h = 0.5 * (arr + arr.conj().T)
    # plain nested lists: for n <= 4 this beats numpy's per-call overhead
    m = [[complex(h[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    scale = max(max(abs(z) for row in m for z in row), 1e-300)
    stop = 1e-17 * scale

    for _ in range(max_sweeps):
        off = sum(abs(m[i][j]) ** 2 for i in range(n) for j in range(n) if i != j)
        if off <= stop * stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p][q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                ph = (apq / r).conjugate()
                theta = (m[q][q].real - m[p][p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + (theta * theta + 1.0) ** 0.5)
                c = 1.0 / (t * t + 1.0) ** 0.5
                s = t * c
                # J restricted to (p, q): [[c, s], [-s*ph, c*ph]]
                jqp, jqq = -s * ph, c * ph
                for row in (m, v):
                    for k in range(n):
                        xp, xq = row[k][p], row[k][q]
                        row[k][p] = c * xp + jqp * xq
                        row[k][q] = s * xp + jqq * xq
                cjqp, cjqq = jqp.conjugate(), jqq.conjugate()
                rp, rq = m[p], m[q]
                for k in range(n):
                    xp, xq = rp[k], rq[k]
                    rp[k] = c * xp + cjqp * xq
                    rq[k] = s * xp + cjqq * xq
                m[p][q] = m[q][p] = 0j
                m[p][p] = complex(m[p][p].real)
                m[q][q] = complex(m[q][q].real)

    w = np.array([m[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    return w[order], np.array(v, dtype=complex)[:, order]


def _as_array(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.entries
    arr = np.asarray(rho, dtype=complex)
    if arr.shape != (DIM, DIM):
        raise InvalidInputError(f"expected a {DIM}x{DIM} matrix, got shape {arr.shape}")
    return arr


def hermiticity_error(rho) -> float:
    a = _as_array(rho)
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian_eig(rho, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    a = _as_array(rho)
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    if hermiticity_error(a) > tol:
        raise InvalidInputError("matrix is not Hermitian")
    return jacobi_eigh(a)


def hermitian_eigenvalues(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian 4x4 matrix."""
    return hermitian_eig(rho, tol)[0]


# -- validation ------------------------------------------------------------------


def validate_density(rho, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check Hermiticity, unit trace and positivity, each within ``tol``."""
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    a = _as_array(rho)
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    hermitian = hermiticity_error(a) <= tol
    trace_dev = float(abs(np.trace(a) - 1.0))
    # eigenvalues of the Hermitian part; only meaningful when hermitian holds
    w, _ = jacobi_eigh(a)
    min_eig = float(w[0])
    psd = min_eig >= -tol
    return ValidationReport(
        hermitian=hermitian,
        trace_dev=trace_dev,
        min_eigenvalue=min_eig,
        psd=psd,
        valid=hermitian and trace_dev <= tol and psd,
        eigenvalues=tuple(float(x) for x in w),
    )


def normalized(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Rescale to unit trace, only for small deviations and never silently."""
    tr = np.trace(rho.entries)
    dev = abs(tr - 1.0)
    if dev <= tol:
        return rho
    if dev > AUTO_NORMALIZE_LIMIT or abs(tr.imag) > tol:
        raise InvalidInputError(f"trace deviates by {dev:.3e}; too large to renormalize")
    warnings.warn(f"renormalizing density matrix (trace deviation {dev:.3e})", stacklevel=2)
    return DensityMatrix(rho.entries / tr.real, rho.convention)


def require_valid(rho, tol: float = DEFAULT_TOL) -> ValidationReport:
    report = validate_density(rho, tol)
    if not report.valid:
        raise InvalidInputError("not a valid density matrix: " + ", ".join(report.lines()))
    return report


# -- partial transpose (two-qubit portrait) ----------------------------------------


def partial_transpose(rho) -> np.ndarray:
    """Transpose on the second qubit of the two-qubit portrait."""
    a = _as_array(rho)
    return a.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(DIM, DIM)


def ppt_min_eigenvalue(rho) -> float:
    return float(jacobi_eigh(partial_transpose(rho))[0][0])


# -- JSON ---------------------------------------------------------------------------

_CONVENTIONS = {c.value: c for c in IndexConvention}


def density_from_json(obj) -> DensityMatrix:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", "$")
    conv_name = obj.get("convention", "spin")
    if conv_name not in _CONVENTIONS:
        raise ParseError(f"convention must be one of {sorted(_CONVENTIONS)}, got {conv_name!r}", "convention")
    rows = obj.get("rows")
    if not isinstance(rows, list) or len(rows) != DIM:
        raise ParseError(f"expected a list of {DIM} rows", "rows")
    out = np.empty((DIM, DIM), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != DIM:
            raise ParseError(f"expected a list of {DIM} entries", f"rows[{i}]")
        for j, cell in enumerate(row):
            pos = f"rows[{i}][{j}]"
            if not isinstance(cell, list) or len(cell) != 2:
                raise ParseError("expected a [re, im] pair", pos)
            if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in cell):
                raise ParseError("entries must be numbers", pos)
            z = complex(cell[0], cell[1])
            if not np.isfinite(z):
                raise ParseError("entry is not finite", pos)
            out[i, j] = z
    return DensityMatrix(out, _CONVENTIONS[conv_name])


def density_to_json(rho: DensityMatrix) -> dict:
    return {
        "convention": rho.convention.value,
        "rows": [[[float(z.real), float(z.imag)] for z in row] for row in rho.entries],
    }


def load_density(path) -> DensityMatrix:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return density_from_json(obj)


def save_density(rho: DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(density_to_json(rho)) + "\n", encoding="utf-8")
