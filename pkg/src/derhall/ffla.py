"""Dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are residues in
``[0, p)``.  Vectors are 1-d arrays; a "basis" is a 2-d array whose rows are
the basis vectors.  Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

DEFAULT_ENUM_CAP = 2**20

_enum_cap = DEFAULT_ENUM_CAP


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured element cap."""


class NotInvertible(ArithmeticError):
    pass


class ShapeError(ValueError):
    pass


def set_enum_cap(cap: int) -> int:
    """Set the global enumeration cap; returns the previous value."""
    global _enum_cap
    if cap <= 0:
        raise ValueError("enumeration cap must be positive")
    old, _enum_cap = _enum_cap, int(cap)
    return old


def get_enum_cap() -> int:
    return _enum_cap


@contextmanager
def enum_cap(cap: int):
    """Temporarily set the enumeration cap."""
    old = set_enum_cap(cap)
    try:
        yield cap
    finally:
        set_enum_cap(old)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p; ``p`` plays the role of q."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p <= 2**16) or not is_prime(self.p):
            raise ValueError(f"field size must be a prime in [2, 65536], got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise NotInvertible("0 has no inverse")
        return pow(a, self.p - 2, self.p)


def as_matrix(rows: Sequence[Sequence[int]] | np.ndarray, p: int, shape=None) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    if m.ndim != 2:
        m = m.reshape(m.shape[0] if m.ndim else 0, -1)
    return m % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    The returned matrix keeps all rows (zero rows at the bottom).
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * pow(piv, p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """A basis (rows, in RREF) of the row space of ``m``."""
    if m.shape[0] == 0:
        return np.zeros((0, m.shape[1]), dtype=np.int64)
    red, piv = rref(m, p)
    return red[: len(piv)]


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : m @ v = 0}, one vector per row; ``cols - rank`` rows."""
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    red, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = (-red[r, f]) % p
    return basis


def invert(m: np.ndarray, p: int) -> np.ndarray:
    """Two-sided inverse of a square matrix; raises NotInvertible."""
    n, k = m.shape
    if n != k:
        raise ShapeError(f"cannot invert a {n}x{k} matrix")
    red, piv = rref(np.hstack([m % p, identity(n)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise NotInvertible("matrix is singular")
    return red[:, n:]


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of ``a @ x = b`` (b a vector), or None."""
    rows, cols = a.shape
    red, piv = rref(np.hstack([a % p, np.asarray(b, dtype=np.int64).reshape(rows, 1) % p]), p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = red[r, cols]
    return x


def extend_basis(base: np.ndarray, candidates: np.ndarray, p: int) -> np.ndarray:
    """Rows of ``candidates`` that extend the row space of ``base``, greedily.

    Returns the chosen candidate rows (not reduced), in input order.
    """
    n = candidates.shape[1] if candidates.ndim == 2 else base.shape[1]
    work = row_basis(base, p) if base.shape[0] else np.zeros((0, n), dtype=np.int64)
    chosen = []
    for v in candidates:
        trial = np.vstack([work, v[None, :]])
        red, piv = rref(trial, p)
        if len(piv) > work.shape[0]:
            work = red[: len(piv)]
            chosen.append(v)
    if not chosen:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(chosen, dtype=np.int64)


def coordinate_solver(basis: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """Prepare fast coordinate extraction for vectors in span(basis).

    Returns ``(cols, inv)`` such that for v in the span, its coefficient
    vector w.r.t. ``basis`` (independent rows) is ``v[cols] @ inv % p``.
    """
    k = basis.shape[0]
    if k == 0:
        return [], np.zeros((0, 0), dtype=np.int64)
    _, piv = rref(basis, p)
    if len(piv) != k:
        raise ValueError("basis rows are not independent")
    inv = invert(basis[:, piv], p)
    return piv, inv


def coefficient_tuples(k: int, p: int) -> np.ndarray:
    """All p**k coefficient tuples in lexicographic order (last index fastest)."""
    total = p**k
    if total > _enum_cap:
        raise CapExceeded(f"{p}^{k} = {total} elements exceed enumeration cap {_enum_cap}")
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(total, dtype=np.int64)
    out = np.empty((total, k), dtype=np.int64)
    for i in range(k):
        out[:, k - 1 - i] = (idx // p**i) % p
    return out


def span_array(basis: np.ndarray, p: int, n: int | None = None) -> np.ndarray:
    """All vectors of span(basis) as rows, in lexicographic coefficient order."""
    if n is None:
        n = basis.shape[1]
    coeffs = coefficient_tuples(basis.shape[0], p)
    if basis.shape[0] == 0:
        return np.zeros((1, n), dtype=np.int64)
    return (coeffs @ basis) % p


def enumerate_space(basis: np.ndarray, p: int) -> Iterator[np.ndarray]:
    """Yield every linear combination of the basis rows exactly once.

    Order is lexicographic in the coefficient tuple.  Raises CapExceeded
    before yielding anything when ``p**k`` is over the cap.
    """
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[0]
    if p**k > _enum_cap:
        raise CapExceeded(f"{p}^{k} elements exceed enumeration cap {_enum_cap}")
    n = basis.shape[1] if basis.ndim == 2 else 0
    if k == 0:
        yield np.zeros(n, dtype=np.int64)
        return
    for coeffs in itertools.product(range(p), repeat=k):
        yield (np.array(coeffs, dtype=np.int64) @ basis) % p
