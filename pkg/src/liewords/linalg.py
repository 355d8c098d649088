"""Exact rational row reduction used by the rank and representation code."""

from __future__ import annotations

from fractions import Fraction


class RowBasis:
    """Incremental row-echelon basis over the rationals.

    insert() keeps the vector when it is independent and returns None;
    otherwise it returns the coordinates of the vector over the previously
    kept (independent) vectors, provided coordinate tracking is on.
    """

    def __init__(self, width: int, track_coords: bool = False):
        self.width = width
        self.track = track_coords
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        # expression of each echelon row over the kept originals
        self.combos: list[list[Fraction]] = []
        self.n_kept = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec):
        res = [Fraction(x) for x in vec]
        if len(res) != self.width:
            raise ValueError("vector width %d != %d" % (len(res), self.width))
        combo = [Fraction(0)] * self.n_kept if self.track else None
        for r, p in enumerate(self.pivots):
            c = res[p]
            if c:
                row = self.rows[r]
                for i in range(self.width):
                    if row[i]:
                        res[i] -= c * row[i]
                if self.track:
                    rc = self.combos[r]
                    for i in range(len(rc)):
                        if rc[i]:
                            combo[i] += c * rc[i]
        pivot = next((i for i, x in enumerate(res) if x), None)
        if pivot is None:
            if self.track:
                return combo
            return []
        lead = res[pivot]
        norm = [x / lead for x in res]
        self.rows.append(norm)
        self.pivots.append(pivot)
        if self.track:
            # echelon row = (original - sum c_r E_r) / lead
            self.combos = [c + [Fraction(0)] for c in self.combos]
            new_combo = [(-x) / lead for x in combo] + [Fraction(1) / lead]
            self.combos.append(new_combo)
        self.n_kept += 1
        return None

    def coords(self, vec):
        """Coordinates of vec over the kept originals, or None if outside
        the span.  Does not modify the basis."""
        if not self.track:
            raise ValueError("basis built without coordinate tracking")
        res = [Fraction(x) for x in vec]
        combo = [Fraction(0)] * self.n_kept
        for r, p in enumerate(self.pivots):
            c = res[p]
            if c:
                row = self.rows[r]
                for i in range(self.width):
                    if row[i]:
                        res[i] -= c * row[i]
                rc = self.combos[r]
                for i in range(len(rc)):
                    if rc[i]:
                        combo[i] += c * rc[i]
        if any(res):
            return None
        return combo


def rank_of(vectors, width: int) -> int:
    basis = RowBasis(width)
    for v in vectors:
        basis.insert(v)
    return basis.rank


def rank_mod(vectors, width: int, p: int) -> int:
    """Rank over the field Z/p; a fast independent check of rank_of."""
    rows: list[list[int]] = []
    pivots: list[int] = []
    rank = 0
    for vec in vectors:
        res = [x % p for x in vec]
        for r, piv in enumerate(pivots):
            c = res[piv]
            if c:
                row = rows[r]
                for i in range(width):
                    if row[i]:
                        res[i] = (res[i] - c * row[i]) % p
        pivot = next((i for i, x in enumerate(res) if x), None)
        if pivot is None:
            continue
        inv = pow(res[pivot], p - 2, p)
        rows.append([x * inv % p for x in res])
        pivots.append(pivot)
        rank += 1
    return rank
