"""GF(2) linear algebra on int bitsets: echelon forms, ranks, kernels."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

__all__ = ["Echelon", "bits", "kernel", "rank", "solve"]


def bits(x: int) -> Iterator[int]:
    """Indices of the set bits of x, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Echelon:
    """Row space over GF(2), kept in reduced echelon form.

    Rows are int bitsets (bit j = column j).  Each inserted row may carry a
    tag bitset; reduce() reports membership as an XOR of tags, which is how
    callers recover kernel combinations and solutions.
    """

    __slots__ = ("_rows",)

    def __init__(self) -> None:
        # pivot bit -> (row, tag); rows are mutually reduced, so a single
        # sweep in any order is a complete reduction
        self._rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        """Reduce vec against the stored rows.

        Returns (residual, combo): residual is 0 exactly when vec lies in
        the row space, and combo is tag XORed with the tags of the rows used.
        """
        for pivot, (row, rtag) in self._rows.items():
            if vec & pivot:
                vec ^= row
                tag ^= rtag
        return vec, tag

    def add(self, vec: int, tag: int = 0) -> tuple[int, int]:
        """Insert vec if independent of the stored rows.

        Returns reduce(vec, tag).  A zero residual means vec was dependent
        and nothing was inserted.
        """
        vec, tag = self.reduce(vec, tag)
        if vec:
            pivot = vec & -vec
            for p, (row, rtag) in self._rows.items():
                if row & pivot:
                    self._rows[p] = (row ^ vec, rtag ^ tag)
            self._rows[pivot] = (vec, tag)
        return vec, tag

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def rows(self) -> list[int]:
        """The reduced rows, sorted by pivot column."""
        return [row for _, (row, _) in sorted(self._rows.items())]

    def pivots(self) -> list[int]:
        """Pivot column indices, ascending."""
        return [p.bit_length() - 1 for p in sorted(self._rows)]


def rank(rows: Iterable[int]) -> int:
    """Rank of the matrix whose rows are the given bitsets."""
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.rank


def kernel(rows: Sequence[int]) -> list[int]:
    """Basis of left-kernel combos: c with XOR of rows[i] over bits i of c zero.

    Combos come out with strictly increasing top bit, one per dependent row,
    so the result is deterministic and visibly independent.
    """
    ech = Echelon()
    out: list[int] = []
    for i, row in enumerate(rows):
        residual, combo = ech.add(row, 1 << i)
        if residual == 0:
            out.append(combo)
    return out


def solve(rows: Sequence[int], target: int) -> int | None:
    """A combo c with XOR of rows[i] over bits i of c equal to target, or None."""
    ech = Echelon()
    for i, row in enumerate(rows):
        ech.add(row, 1 << i)
    residual, combo = ech.reduce(target)
    return combo if residual == 0 else None
