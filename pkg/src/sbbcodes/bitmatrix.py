"""Dense GF(2) matrices with rows packed into 64-bit words.

Column ``j`` of a row lives in word ``j // 64`` at bit ``j % 64``.  The
elimination kernels are compiled with numba; everything else is numpy.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from pathlib import Path

import numba
import numpy as np

WORD = 64


def n_words(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


@numba.njit(cache=True)
def _rref_kernel(w, ncols):
    """In-place reduced row echelon form; returns the pivot columns."""
    nrows = w.shape[0]
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        wi = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        p = -1
        for i in range(r, nrows):
            if w[i, wi] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(w.shape[1]):
                tmp = w[p, k]
                w[p, k] = w[r, k]
                w[r, k] = tmp
        for i in range(nrows):
            if i != r and (w[i, wi] & bit):
                for k in range(wi, w.shape[1]):
                    w[i, k] ^= w[r, k]
        pivots[r] = c
        r += 1
    return pivots[:r]


@numba.njit(cache=True)
def _rank_kernel(w, ncols):
    """Rank by forward elimination only (destroys ``w``)."""
    nrows = w.shape[0]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        wi = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        p = -1
        for i in range(r, nrows):
            if w[i, wi] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(wi, w.shape[1]):
                tmp = w[p, k]
                w[p, k] = w[r, k]
                w[r, k] = tmp
        for i in range(r + 1, nrows):
            if w[i, wi] & bit:
                for k in range(wi, w.shape[1]):
                    w[i, k] ^= w[r, k]
        r += 1
    return r


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into uint64 words, little-endian within each word."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    nw = n_words(cols)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = dense
    bytes_ = np.packbits(padded.reshape(rows, nw * 8, 8), axis=2, bitorder="little")
    return bytes_.reshape(rows, nw * 8).view(np.uint64).reshape(rows, nw).copy()


def unpack_rows(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(rows, -1)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :cols].copy()


class BitMatrix:
    """A ``rows x cols`` matrix over GF(2)."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        if words is None:
            words = np.zeros((self.rows, n_words(self.cols)), dtype=np.uint64)
        if words.shape != (self.rows, n_words(self.cols)) or words.dtype != np.uint64:
            raise ValueError("packed words do not match the matrix shape")
        self.words = words

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> BitMatrix:
        arr = np.asarray(dense, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(arr.shape[0], arr.shape[1], pack_rows(arr))

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], cols: int) -> BitMatrix:
        supports = list(supports)
        dense = np.zeros((len(supports), cols), dtype=np.uint8)
        for i, s in enumerate(supports):
            for j in s:
                dense[i, j] ^= 1
        return cls.from_dense(dense)

    @classmethod
    def vstack(cls, mats: Sequence[BitMatrix]) -> BitMatrix:
        if not mats:
            raise ValueError("nothing to stack")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column counts differ")
        words = np.vstack([m.words for m in mats])
        return cls(words.shape[0], cols, words)

    # -- conversion -------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.words, self.cols)

    def copy(self) -> BitMatrix:
        return BitMatrix(self.rows, self.cols, self.words.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    # -- algebra ----------------------------------------------------------

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(_rank_kernel(self.words.copy(), self.cols))

    def rref(self) -> tuple[BitMatrix, list[int]]:
        """Reduced row echelon form with zero rows dropped, and pivot columns."""
        w = self.words.copy()
        if self.rows == 0:
            return BitMatrix(0, self.cols), []
        piv = _rref_kernel(w, self.cols)
        r = len(piv)
        return BitMatrix(r, self.cols, w[:r].copy()), [int(c) for c in piv]

    def nullspace(self) -> BitMatrix:
        """Basis of ``{v : self @ v = 0}`` as the rows of a matrix."""
        red, piv = self.rref()
        free = [c for c in range(self.cols) if c not in set(piv)]
        dense = red.to_dense()
        basis = np.zeros((len(free), self.cols), dtype=np.uint8)
        for i, f in enumerate(free):
            basis[i, f] = 1
            if piv:
                basis[i, piv] = dense[:, f]
        return BitMatrix.from_dense(basis)

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        prod = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
        return BitMatrix.from_dense((prod & 1).astype(np.uint8))

    def mul_transpose(self, other: BitMatrix) -> BitMatrix:
        """``self @ other.T`` over GF(2)."""
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        prod = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64).T
        return BitMatrix.from_dense((prod & 1).astype(np.uint8))

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Syndrome ``self @ vec`` of a 0/1 vector."""
        v = np.asarray(vec, dtype=np.int64)
        return ((self.to_dense().astype(np.int64) @ v) & 1).astype(np.uint8)

    def is_zero(self) -> bool:
        return not self.words.any()

    def row_weights(self) -> list[int]:
        return [int(x) for x in self.to_dense().sum(axis=1)]

    def col_weights(self) -> list[int]:
        return [int(x) for x in self.to_dense().sum(axis=0)]

    def select_rows(self, idx: Sequence[int]) -> BitMatrix:
        idx = list(idx)
        return BitMatrix(len(idx), self.cols, self.words[idx].copy())

    # -- text formats -----------------------------------------------------

    def to_alist(self) -> str:
        """The column-then-row ``alist`` layout used by LDPC tooling.

        Lists are 1-based and padded with zeros to the maximum degree.
        """
        dense = self.to_dense()
        col_lists = [list(np.flatnonzero(dense[:, j]) + 1) for j in range(self.cols)]
        row_lists = [list(np.flatnonzero(dense[i]) + 1) for i in range(self.rows)]
        max_col = max((len(c) for c in col_lists), default=0)
        max_row = max((len(r) for r in row_lists), default=0)
        lines = [
            f"{self.cols} {self.rows}",
            f"{max_col} {max_row}",
            " ".join(str(len(c)) for c in col_lists),
            " ".join(str(len(r)) for r in row_lists),
        ]
        for lists, width in ((col_lists, max_col), (row_lists, max_row)):
            for entries in lists:
                padded = [int(e) for e in entries] + [0] * (width - len(entries))
                lines.append(" ".join(map(str, padded)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_alist(cls, text: str) -> BitMatrix:
        tokens = text.split()
        pos = 0

        def take(k: int) -> list[int]:
            nonlocal pos
            if pos + k > len(tokens):
                raise ValueError("truncated alist data")
            out = [int(t) for t in tokens[pos : pos + k]]
            pos += k
            return out

        cols, rows = take(2)
        max_col, _max_row = take(2)
        take(cols)
        take(rows)
        dense = np.zeros((rows, cols), dtype=np.uint8)
        for j in range(cols):
            for i in take(max_col):
                if i:
                    dense[i - 1, j] = 1
        return cls.from_dense(dense)

    def to_text(self) -> str:
        """One line of 0/1 characters per row."""
        dense = self.to_dense()
        return "".join("".join("1" if b else "0" for b in row) + "\n" for row in dense)

    @classmethod
    def from_text(cls, text: str) -> BitMatrix:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            return cls(0, 0)
        if len({len(ln) for ln in lines}) != 1 or any(set(ln) - {"0", "1"} for ln in lines):
            raise ValueError("dense text must be rectangular 0/1 rows")
        return cls.from_dense(np.array([[c == "1" for c in ln] for ln in lines], dtype=np.uint8))

    def save(self, path: str | Path, fmt: str = "alist") -> None:
        text = self.to_alist() if fmt == "alist" else self.to_text()
        Path(path).write_text(text)


def gf2_rank(mtx: BitMatrix) -> int:
    return mtx.rank()


def row_space_contains(basis_rref: BitMatrix, pivots: Sequence[int], vecs: np.ndarray) -> np.ndarray:
    """Membership of packed vectors in the row space of an RREF basis.

    ``vecs`` is an ``(N, words)`` uint64 array; returns a boolean mask.
    """
    v = vecs.copy()
    for r, c in enumerate(pivots):
        wi, bit = c >> 6, np.uint64(1) << np.uint64(c & 63)
        hit = (v[:, wi] & bit) != 0
        if hit.any():
            v[hit] ^= basis_rref.words[r]
    return ~v.any(axis=1)
