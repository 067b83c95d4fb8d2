"""Algorithm X over a dancing-links sparse matrix.

Columns are universe elements, rows are subsets.  Nodes live in flat integer
arrays (index 0 is the root header, 1..n the column headers, the rest are row
nodes), which is considerably faster in CPython than one object per node.
"""
from __future__ import annotations

from typing import Sequence


class DancingLinks:
    def __init__(self, n_columns: int, rows: Sequence[Sequence[int]]):
        """``rows[r]`` lists the 0-based columns covered by row ``r``."""
        size = n_columns + 1
        self.L = [(i - 1) % size for i in range(size)]
        self.R = [(i + 1) % size for i in range(size)]
        self.U = list(range(size))
        self.D = list(range(size))
        self.C = list(range(size))
        self.S = [0] * size
        self.row_of = [-1] * size
        for r, cols in enumerate(rows):
            first = -1
            for c in sorted(cols):
                col = c + 1
                node = len(self.C)
                self.C.append(col)
                self.row_of.append(r)
                # append at the bottom of the column
                self.U.append(self.U[col])
                self.D.append(col)
                self.D[self.U[col]] = node
                self.U[col] = node
                self.S[col] += 1
                if first < 0:
                    first = node
                    self.L.append(node)
                    self.R.append(node)
                else:
                    self.L.append(self.L[first])
                    self.R.append(first)
                    self.R[self.L[first]] = node
                    self.L[first] = node
                self.S.append(0)

    def _cover(self, col: int) -> None:
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.S
        R[L[col]] = R[col]
        L[R[col]] = L[col]
        i = D[col]
        while i != col:
            j = R[i]
            while j != i:
                D[U[j]] = D[j]
                U[D[j]] = U[j]
                S[C[j]] -= 1
                j = R[j]
            i = D[i]

    def _uncover(self, col: int) -> None:
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.S
        i = U[col]
        while i != col:
            j = L[i]
            while j != i:
                S[C[j]] += 1
                D[U[j]] = j
                U[D[j]] = j
                j = L[j]
            i = U[i]
        R[L[col]] = col
        L[R[col]] = col

    def _choose(self) -> int:
        # fewest rows first; strict < keeps the lowest column on ties
        best, best_size = -1, None
        c = self.R[0]
        while c != 0:
            if best_size is None or self.S[c] < best_size:
                best, best_size = c, self.S[c]
                if best_size == 0:
                    break
            c = self.R[c]
        return best

    def search(self, count_all: bool = False) -> tuple[list[int] | None, int]:
        """Return ``(first solution rows, number of solutions found)``.

        Without ``count_all`` the search stops at the first solution, so the
        count is 0 or 1.
        """
        first: list[int] | None = None
        count = 0
        partial: list[int] = []
        R, D = self.R, self.D

        def recurse() -> bool:
            nonlocal first, count
            if R[0] == 0:
                count += 1
                if first is None:
                    first = sorted(self.row_of[n] for n in partial)
                return not count_all
            col = self._choose()
            if self.S[col] == 0:
                return False
            self._cover(col)
            r = D[col]
            while r != col:
                partial.append(r)
                j = R[r]
                while j != r:
                    self._cover(self.C[j])
                    j = R[j]
                done = recurse()
                j = self.L[r]
                while j != r:
                    self._uncover(self.C[j])
                    j = self.L[j]
                partial.pop()
                if done:
                    self._uncover(col)
                    return True
                r = D[r]
            self._uncover(col)
            return False

        recurse()
        return first, count
