"""Graded dimension counting.

Fast path: dynamic programming over the obstruction automaton of a
truncated Groebner basis; by the diamond lemma the words avoiding every
obstruction form a basis in each degree up to the truncation, so the path
counts are the graded dimensions.

Slow path: an independent linear-algebra oracle that never looks at the
Groebner machinery.  It enumerates plain word tuples, spans the graded
pieces of the ideal by all products u * r * v, and row-reduces over exact
rationals.  The two paths must agree wherever both are defined; the test
suite leans on that.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from .groebner import GroebnerBasis
from .presentations import Presentation

BRUTE_FORCE_GUARD = 10 ** 7


@dataclass(frozen=True)
class HilbertSeries:
    """Coefficients a_0..a_D of the graded dimension series."""

    algebra: str
    truncation: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.truncation + 1:
            raise ValueError("need one coefficient per degree 0..truncation")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("graded dimensions are nonnegative")

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)


def hilbert_series(gb: GroebnerBasis, max_degree: int) -> HilbertSeries:
    """Graded dimensions through max_degree from the obstruction automaton."""
    if max_degree > gb.truncation:
        raise ValueError(
            f"max_degree {max_degree} exceeds basis truncation {gb.truncation}")
    counts = gb.normal_word_counts(max_degree)
    assert counts[0] == 1
    if max_degree >= 1:
        assert counts[1] == len(gb.presentation.alphabet)
    return HilbertSeries(gb.presentation.name, max_degree, tuple(counts))


def brute_force_hilbert(p: Presentation, max_degree: int) -> HilbertSeries:
    """Oracle: a_d = g^d minus the rank of span{u * r * v} in degree d."""
    g = p.n_generators
    if g ** max_degree > BRUTE_FORCE_GUARD:
        raise ValueError(
            f"brute force guard exceeded: {g}^{max_degree} > {BRUTE_FORCE_GUARD}")
    relations = [
        {tuple(w): c for w, c in r.terms().items()}
        for r in p.relations
    ]
    rel_degrees = [next(iter(len(w) for w in r)) for r in relations]
    coeffs = [1]
    for d in range(1, max_degree + 1):
        pivots: dict[tuple, dict[tuple, Fraction]] = {}
        rank = 0
        for r, e in zip(relations, rel_degrees):
            if e > d:
                continue
            for a in range(d - e + 1):
                b = d - e - a
                for u in product(range(g), repeat=a):
                    for v in product(range(g), repeat=b):
                        vec = {u + w + v: Fraction(c) for w, c in r.items()}
                        while vec:
                            lead = max(vec)
                            piv = pivots.get(lead)
                            if piv is None:
                                c0 = vec[lead]
                                pivots[lead] = {w: c / c0 for w, c in vec.items()}
                                rank += 1
                                break
                            c0 = vec.pop(lead)
                            for w, c in piv.items():
                                if w == lead:
                                    continue
                                s = vec.get(w, 0) - c0 * c
                                if s:
                                    vec[w] = s
                                else:
                                    vec.pop(w, None)
        coeffs.append(g ** d - rank)
    return HilbertSeries(p.name, max_degree, tuple(coeffs))


_GEOM_RE = re.compile(r"1/\(1-(\d+)t\)\^(\d+)")


def reference_series(kind: str, max_degree: int, n: int | None = None) -> HilbertSeries:
    """Closed-form coefficient families used as cross-checks.

    ``kind`` is one of ``(1+nt)^(n-1)`` (requires n), ``1/(1-4t)^2``,
    ``1/(1-4t)^3`` or ``1/(1-3t)^2``; the general ``1/(1-kt)^m`` spelling is
    accepted too.
    """
    if kind == "(1+nt)^(n-1)":
        if n is None:
            raise ValueError("kind (1+nt)^(n-1) requires n")
        coeffs = tuple(comb(n - 1, d) * n ** d if d <= n - 1 else 0
                       for d in range(max_degree + 1))
        return HilbertSeries(f"(1+{n}t)^{n - 1}", max_degree, coeffs)
    m = _GEOM_RE.fullmatch(kind)
    if m:
        k, power = int(m.group(1)), int(m.group(2))
        coeffs = tuple(comb(d + power - 1, power - 1) * k ** d
                       for d in range(max_degree + 1))
        return HilbertSeries(kind, max_degree, coeffs)
    raise ValueError(f"unknown reference series kind {kind!r}")
