"""Linear algebra over F2 on int-bitset row vectors."""
from __future__ import annotations


class Reducer:
    """Incremental reduced row basis over F2.

    Rows are int bitsets; pivot = lowest set bit of each stored row.
    """

    def __init__(self, rows=()):
        self.rows = {}  # pivot -> row
        for r in rows:
            self.add(r)

    def reduce(self, vec: int) -> int:
        # rows are fully reduced (no row contains another row's pivot), so a
        # single pass over the stored pivots clears every reducible bit
        for piv, row in self.rows.items():
            if vec & piv:
                vec ^= row
        return vec

    def add(self, vec: int) -> bool:
        """Insert vec into the basis; returns True if it was independent."""
        res = self.reduce(vec)
        if res == 0:
            return False
        piv = res & -res
        # keep the basis fully reduced
        for p, row in list(self.rows.items()):
            if row & piv:
                self.rows[p] = row ^ res
        self.rows[piv] = res
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(rows, _n_cols=None) -> int:
    return Reducer(rows).rank


def nullspace(rows: list[int], n_cols: int) -> list[int]:
    """Basis of {x : for every row r, parity(r & x) = 0}.

    rows are the matrix rows (each a bitset over n_cols coordinates);
    the kernel is of the linear map x -> (parity(r & x))_r.
    """
    red = Reducer(rows)
    pivot_cols = {p.bit_length() - 1 for p in red.rows}
    basis = []
    for f in range(n_cols):
        if f in pivot_cols:
            continue
        vec = 1 << f
        # rows are fully reduced, so each pivot var is set independently
        for piv, row in red.rows.items():
            if (row >> f) & 1:
                vec |= piv
        basis.append(vec)
    return basis
