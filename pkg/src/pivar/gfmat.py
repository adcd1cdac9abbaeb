"""Exact row reduction over GF(p).

A :class:`RowSpace` keeps an incremental reduced row echelon basis.
Dense numpy rows are used up to ``DENSE_COLUMN_CAP`` columns; beyond
that rows are sparse dictionaries.  Optionally every basis row tracks
the combination of inserted raw rows it came from, which is what turns
span membership into a replayable certificate.
"""

from __future__ import annotations

import numpy as np

DENSE_COLUMN_CAP = 10_000


class RowSpace:
    """Incremental RREF span of integer vectors modulo a prime."""

    def __init__(self, p: int, ncols: int, track: bool = False):
        self.p = p
        self.ncols = ncols
        self.track = track
        self.dense = ncols <= DENSE_COLUMN_CAP
        self.rows: list = []          # RREF rows, pivot normalized to 1
        self.pivots: list[int] = []   # pivot column of each row
        self.combos: list[dict[int, int]] = []  # raw-row combinations
        self._raw_count = 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    # -- internals ------------------------------------------------------

    def _as_row(self, vec):
        if self.dense:
            row = np.asarray(vec, dtype=np.int64) % self.p
            if row.shape != (self.ncols,):
                raise ValueError("bad row shape")
            return row
        if isinstance(vec, dict):
            return {c: v % self.p for c, v in vec.items() if v % self.p}
        return {i: v % self.p for i, v in enumerate(vec) if v % self.p}

    def _reduce(self, row, combo):
        if self.dense:
            for i, piv in enumerate(self.pivots):
                c = int(row[piv])
                if c:
                    row = (row - c * self.rows[i]) % self.p
                    if combo is not None:
                        _combo_sub(combo, self.combos[i], c, self.p)
            return row
        for i, piv in enumerate(self.pivots):
            c = row.get(piv, 0)
            if c:
                for col, v in self.rows[i].items():
                    nv = (row.get(col, 0) - c * v) % self.p
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
                if combo is not None:
                    _combo_sub(combo, self.combos[i], c, self.p)
        return row

    def _pivot_of(self, row):
        if self.dense:
            nz = np.nonzero(row)[0]
            return int(nz[0]) if nz.size else None
        return min(row) if row else None

    # -- public API -------------------------------------------------------

    def residual(self, vec):
        """Reduce ``vec`` against the basis; nonzero result means it is
        outside the span.  Returns (residual, combo) satisfying
        vec = residual - sum(combo[k] * raw_k); see :meth:`express` for
        the sign-corrected membership certificate."""
        combo: dict[int, int] | None = {} if self.track else None
        row = self._reduce(self._as_row(vec), combo)
        return row, combo

    def contains(self, vec) -> bool:
        row, _ = self.residual(vec)
        return not (row.any() if self.dense else bool(row))

    def insert(self, vec, raw_id: int | None = None) -> bool:
        """Add a vector; returns True if it enlarged the span.

        ``raw_id`` identifies the raw row for combination tracking and
        defaults to an internal counter.
        """
        if raw_id is None:
            raw_id = self._raw_count
        self._raw_count = max(self._raw_count + 1, raw_id + 1)
        combo: dict[int, int] | None = {raw_id: 1} if self.track else None
        row = self._reduce(self._as_row(vec), combo)
        piv = self._pivot_of(row)
        if piv is None:
            return False
        inv = pow(int(row[piv]) if self.dense else row[piv], -1, self.p)
        if self.dense:
            row = (row * inv) % self.p
        else:
            row = {c: (v * inv) % self.p for c, v in row.items()}
        if combo is not None:
            combo = {k: (v * inv) % self.p for k, v in combo.items()}
        # keep full RREF: clear the new pivot from existing rows
        for i in range(len(self.rows)):
            c = int(self.rows[i][piv]) if self.dense else self.rows[i].get(piv, 0)
            if c:
                if self.dense:
                    self.rows[i] = (self.rows[i] - c * row) % self.p
                else:
                    r = self.rows[i]
                    for col, v in row.items():
                        nv = (r.get(col, 0) - c * v) % self.p
                        if nv:
                            r[col] = nv
                        else:
                            r.pop(col, None)
                if self.track:
                    _combo_sub(self.combos[i], combo, c, self.p)
        pos = len([q for q in self.pivots if q < piv])
        self.rows.insert(pos, row)
        self.pivots.insert(pos, piv)
        if self.track:
            self.combos.insert(pos, combo)
        return True

    def express(self, vec) -> dict[int, int] | None:
        """Combination of raw rows equal to ``vec``, or None if outside
        the span.  Requires tracking."""
        if not self.track:
            raise ValueError("row space built without tracking")
        row, combo = self.residual(vec)
        if row.any() if self.dense else row:
            return None
        return {k: (-v) % self.p for k, v in combo.items() if v % self.p}

    def basis_matrix(self) -> np.ndarray:
        if not self.dense:
            mat = np.zeros((len(self.rows), self.ncols), dtype=np.int64)
            for i, r in enumerate(self.rows):
                for c, v in r.items():
                    mat[i, c] = v
            return mat
        if not self.rows:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)


def _combo_sub(target: dict[int, int], other: dict[int, int],
               factor: int, p: int) -> None:
    for k, v in other.items():
        nv = (target.get(k, 0) - factor * v) % p
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def rank_mod_p(matrix, p: int) -> int:
    """Rank of an integer matrix over GF(p)."""
    mat = np.asarray(matrix, dtype=np.int64)
    if mat.ndim != 2:
        raise ValueError("matrix expected")
    space = RowSpace(p, mat.shape[1])
    for row in mat:
        space.insert(row)
    return space.dim


def matrix_power_is_zero(matrix: np.ndarray, p: int, min_power: int) -> bool:
    """Whether matrix^e = 0 over GF(p) for some e; checks a power that is
    at least ``min_power`` by repeated squaring."""
    m = np.asarray(matrix, dtype=np.int64) % p
    e = 1
    while e < min_power:
        m = (m @ m) % p
        e *= 2
        if not m.any():
            return True
    return not m.any()
