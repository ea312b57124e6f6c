"""Sparse exact linear algebra over Q and over prime fields.

Vectors are dicts mapping hashable coordinate keys to nonzero scalars;
scalars are Fractions (``mod`` None) or ints reduced mod a prime.  Keys
must be totally ordered; the largest key of a vector acts as its pivot.
Everything here is small-scale support for the quadratic and resolution
modules; the heavy kernels in the resolution module use their own
structured elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

Vec = dict


def _scale_inv(c, mod):
    if mod is None:
        return 1 / c
    return pow(c % mod, -1, mod)


def reduce_vector(vec: Vec, pivots: dict[Hashable, Vec], mod: int | None = None,
                  skip: Hashable | None = None) -> Vec:
    """Eliminate every pivot key (except ``skip``) from vec.

    Pivot rows are monic with their pivot as largest key, so each
    elimination only introduces smaller keys and the loop terminates.
    """
    vec = dict(vec)
    while True:
        hit = None
        for k in vec:
            if k in pivots and k != skip and (hit is None or k > hit):
                hit = k
        if hit is None:
            return vec
        c = vec.pop(hit)
        for kk, v in pivots[hit].items():
            if kk == hit:
                continue
            s = vec.get(kk, 0) - c * v
            if mod is not None:
                s %= mod
            if s:
                vec[kk] = s
            else:
                vec.pop(kk, None)


class Echelon:
    """Incremental reduced echelon form with monic pivot rows."""

    def __init__(self, mod: int | None = None):
        self.mod = mod
        self.pivots: dict[Hashable, Vec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec: Vec) -> Hashable | None:
        """Insert a vector; returns its pivot key or None if dependent."""
        mod = self.mod
        vec = {k: (v % mod if mod is not None else v) for k, v in vec.items()}
        vec = {k: v for k, v in vec.items() if v}
        while vec:
            lead = max(vec)
            row = self.pivots.get(lead)
            if row is None:
                inv = _scale_inv(vec[lead], mod)
                row = {}
                for k, v in vec.items():
                    v = v * inv
                    if mod is not None:
                        v %= mod
                    if v:
                        row[k] = v
                row[lead] = 1 if mod is not None else Fraction(1)
                self.pivots[lead] = row
                return lead
            c = vec.pop(lead)
            for k, v in row.items():
                if k == lead:
                    continue
                s = vec.get(k, 0) - c * v
                if mod is not None:
                    s %= mod
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return None

    def backsubstitute(self):
        """Clear pivot keys from every other row (canonical RREF)."""
        for lead in sorted(self.pivots):
            row = reduce_vector(self.pivots[lead], self.pivots, self.mod, skip=lead)
            row[lead] = 1 if self.mod is not None else Fraction(1)
            self.pivots[lead] = row

    def rows(self) -> list[Vec]:
        """Pivot rows, descending by pivot key."""
        return [self.pivots[k] for k in sorted(self.pivots, reverse=True)]


def rank_of(vectors: Iterable[Vec], mod: int | None = None) -> int:
    ech = Echelon(mod)
    for v in vectors:
        ech.add(v)
    return ech.rank


def nullspace(rows: list[Vec], columns: list[Hashable], mod: int | None = None) -> list[Vec]:
    """Canonical basis of {v : row . v = 0 for all rows}, coordinates in ``columns``.

    Rows and the result are dicts over the given column keys.
    """
    ech = Echelon(mod)
    for r in rows:
        ech.add(r)
    ech.backsubstitute()
    pivots = ech.pivots
    free = [c for c in columns if c not in pivots]
    out = []
    one = 1 if mod is not None else Fraction(1)
    for f in free:
        vec = {f: one}
        for lead, row in pivots.items():
            c = row.get(f)
            if c:
                v = -c
                if mod is not None:
                    v %= mod
                vec[lead] = v
        out.append(vec)
    return out
