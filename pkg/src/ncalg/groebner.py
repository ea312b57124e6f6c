"""Degree-truncated two-sided Groebner bases in the free algebra.

Completion runs degree by degree: at degree d every S-polynomial coming
from an overlap of leading words with overlap word of degree d is reduced
against the frozen basis from lower degrees, the surviving remainders are
echelonized among themselves, and the new monic elements join the basis.
New degree-d leading words cannot create further degree-d overlaps (any
overlap involving a degree-d word has degree > d), so one pass per degree
completes it.  The finished basis is tail-reduced into the canonical
reduced form, which makes runs reproducible bit for bit.

The engine works on order-encoded words (bytes whose natural comparison is
the lex tiebreak of the chosen deg-lex order) with integer coefficients;
divisor lookup goes through the obstruction automaton.  Reduction of a
polynomial processes its words from the largest down via a lazy heap, so
every generated word is inspected exactly once.
"""

from __future__ import annotations

import multiprocessing
import time as _time
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Callable, Sequence

from .automaton import ObstructionAutomaton
from .core import Alphabet, MonomialOrder, NCPolynomial, Word, _wrap
from .presentations import Presentation

_INV255 = bytes(255 - i for i in range(256))

IntPoly = dict[bytes, int]


@dataclass(frozen=True)
class Ambiguity:
    """Two obstruction occurrences sharing letters inside one word.

    ``first`` occurs at position 0, ``second`` at ``offset`` >= 1; the word
    is either the overlap word (occurrences overlap) or the first word
    (second contained in it).
    """

    first: int
    second: int
    word: Word
    offset: int

    def kind(self, obstructions: Sequence[Word]) -> str:
        w1, w2 = obstructions[self.first], obstructions[self.second]
        return "inclusion" if self.offset + len(w2) <= len(w1) else "overlap"


def find_ambiguities(obstructions: Sequence[Word], degree: int) -> list[Ambiguity]:
    """All overlap and inclusion ambiguities whose word has the given degree.

    Deterministic order: by word, then first/second indices, then offset.
    """
    obs = list(obstructions)
    out = []
    for i, w1 in enumerate(obs):
        for j, w2 in enumerate(obs):
            # overlaps: suffix of w1 = prefix of w2, word = w1 + rest of w2
            for k in range(1, min(len(w1), len(w2))):
                if len(w1) + len(w2) - k != degree:
                    continue
                if w1[len(w1) - k:] == w2[:k]:
                    out.append(Ambiguity(i, j, w1 + w2[k:], len(w1) - k))
            # inclusions: w2 strictly inside w1 (not at offset 0 with equality)
            if i != j and len(w1) == degree and len(w2) < len(w1):
                start = w1.find(w2, 1)
                while start >= 0:
                    out.append(Ambiguity(i, j, w1, start))
                    start = w1.find(w2, start + 1)
    out.sort(key=lambda a: (a.word, a.first, a.second, a.offset))
    return out


# ---------------------------------------------------------------------------
# Engine internals (order-encoded words, integer coefficients)
# ---------------------------------------------------------------------------

def _normalize(vec: IntPoly, lead: bytes) -> tuple[IntPoly, int]:
    """Divide out the content and make the lead coefficient positive."""
    c = 0
    for v in vec.values():
        c = gcd(c, v)
        if c == 1:
            break
    if vec[lead] < 0:
        c = -c
    if c != 1:
        vec = {w: v // c for w, v in vec.items()}
    return vec, vec[lead]


class _Reducer:
    """Reduction modulo a list of (lead, lead coeff, tail) triples."""

    __slots__ = ("g", "leads", "lcs", "tails", "degrees", "_auto", "_dirty")

    def __init__(self, g: int):
        self.g = g
        self.leads: list[bytes] = []
        self.lcs: list[int] = []
        self.tails: list[list[tuple[bytes, int]]] = []
        self.degrees: list[int] = []
        self._auto: ObstructionAutomaton | None = None
        self._dirty = True

    def add(self, vec: IntPoly):
        lead = max(vec, key=lambda w: (len(w), w))
        vec, lc = _normalize(vec, lead)
        tail = sorted(((w, c) for w, c in vec.items() if w != lead), reverse=True)
        self.leads.append(lead)
        self.lcs.append(lc)
        self.tails.append(tail)
        self.degrees.append(len(lead))
        self._dirty = True

    def replace(self, i: int, vec: IntPoly):
        """Swap in an equivalent vector with the same leading word."""
        lead = self.leads[i]
        vec, lc = _normalize(dict(vec), lead)
        self.lcs[i] = lc
        self.tails[i] = sorted(((w, c) for w, c in vec.items() if w != lead), reverse=True)

    def automaton(self) -> ObstructionAutomaton:
        if self._dirty or self._auto is None:
            self._auto = ObstructionAutomaton(self.leads, self.g)
            self._dirty = False
        return self._auto

    def poly(self, i: int) -> IntPoly:
        vec = dict(self.tails[i])
        vec[self.leads[i]] = self.lcs[i]
        return vec

    def reduce(self, vec: IntPoly) -> tuple[IntPoly, int]:
        """Full normal form; returns (scale * NF(vec), scale)."""
        auto = self.automaton()
        find = auto.find
        leads, lcs, tails = self.leads, self.lcs, self.tails
        out: IntPoly = {}
        pend = {w: c for w, c in vec.items() if c}
        scale = 1
        heap = [(-len(w), w.translate(_INV255), w) for w in pend]
        heapify(heap)
        while heap:
            w = heappop(heap)[2]
            c = pend.pop(w, None)
            if c is None:
                continue
            hit = find(w)
            if hit is None:
                out[w] = c
                continue
            end, bi = hit
            u = w[:end - len(leads[bi])]
            v = w[end:]
            lc = lcs[bi]
            if lc != 1:
                d = gcd(c, lc)
                s = lc // d
                mult = c // d
                if s != 1:
                    scale *= s
                    for k in out:
                        out[k] *= s
                    for k in pend:
                        pend[k] *= s
            else:
                mult = c
            for tw, tc in tails[bi]:
                nw = u + tw + v
                old = pend.get(nw)
                if old is None:
                    pend[nw] = -mult * tc
                    heappush(heap, (-len(nw), nw.translate(_INV255), nw))
                else:
                    nc = old - mult * tc
                    if nc:
                        pend[nw] = nc
                    else:
                        del pend[nw]
        return out, scale

    def overlap_spairs(self, degree: int) -> list[tuple[bytes, int, int, IntPoly]]:
        """S-polynomials of overlap ambiguities with the given overlap degree.

        Returns (overlap word, i, j, spoly) sorted by word then indices.
        """
        leads = self.leads
        by_prefix: dict[bytes, list[int]] = {}
        for j, w in enumerate(leads):
            for k in range(1, len(w)):
                by_prefix.setdefault(w[:k], []).append(j)
        pairs = []
        for i, w1 in enumerate(leads):
            for k in range(1, len(w1)):
                need = degree - len(w1)  # = len(w2) - k
                if need < 1:
                    continue
                suffix = w1[len(w1) - k:]
                for j in by_prefix.get(suffix, ()):
                    if len(leads[j]) - k == need and len(leads[j]) > k:
                        pairs.append((w1 + leads[j][k:], i, j))
        pairs.sort()
        out = []
        for word, i, j in pairs:
            out.append((word, i, j, self.spoly(word, i, j)))
        return out

    def spoly(self, word: bytes, i: int, j: int) -> IntPoly:
        w1, w2 = self.leads[i], self.leads[j]
        suffix = word[len(w1):]
        prefix = word[:len(word) - len(w2)]
        d = gcd(self.lcs[i], self.lcs[j])
        ci = self.lcs[j] // d
        cj = self.lcs[i] // d
        vec: IntPoly = {}
        for tw, tc in self.tails[i]:
            nw = tw + suffix
            vec[nw] = vec.get(nw, 0) + ci * tc
        for tw, tc in self.tails[j]:
            nw = prefix + tw
            s = vec.get(nw, 0) - cj * tc
            if s:
                vec[nw] = s
            else:
                vec.pop(nw, None)
        return vec


# fork-shared state for parallel candidate reduction
_POOL_STATE: dict = {}


def _pool_reduce(span: tuple[int, int]) -> list[IntPoly]:
    reducer = _POOL_STATE["reducer"]
    cands = _POOL_STATE["cands"]
    return [reducer.reduce(cands[k])[0] for k in range(span[0], span[1])]


def _reduce_candidates(reducer: _Reducer, cands: list[IntPoly], threads: int) -> list[IntPoly]:
    if threads <= 1 or len(cands) < 64:
        return [reducer.reduce(c)[0] for c in cands]
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:  # pragma: no cover - non-fork platforms
        return [reducer.reduce(c)[0] for c in cands]
    _POOL_STATE["reducer"] = reducer
    _POOL_STATE["cands"] = cands
    try:
        chunk = max(1, (len(cands) + 4 * threads - 1) // (4 * threads))
        spans = [(k, min(k + chunk, len(cands))) for k in range(0, len(cands), chunk)]
        with ctx.Pool(threads) as pool:
            parts = pool.map(_pool_reduce, spans)
        return [vec for part in parts for vec in part]
    finally:
        _POOL_STATE.clear()


def _echelonize(cands: list[IntPoly]) -> dict[bytes, IntPoly]:
    """Gaussian elimination of same-degree integer vectors, by leading word.

    Returns lead -> primitive vector with positive lead coefficient.  The
    resulting set of leads is canonical for the span; tails are reduced
    against the other pivots on the way out.
    """
    pivots: dict[bytes, IntPoly] = {}
    for vec in cands:
        vec = dict(vec)
        while vec:
            lead = max(vec)
            piv = pivots.get(lead)
            if piv is None:
                vec, _ = _normalize(vec, lead)
                pivots[lead] = vec
                break
            a, b = vec[lead], piv[lead]
            d = gcd(a, b)
            ca, cb = b // d, a // d
            if ca != 1:
                for w in vec:
                    vec[w] *= ca
            for w, c in piv.items():
                s = vec.get(w, 0) - cb * c
                if s:
                    vec[w] = s
                else:
                    vec.pop(w, None)
    # Back-substitute for canonical tails, ascending leads: pivots with
    # smaller leads are already clean, and their tails are pivot-free, so a
    # single snapshot pass removes every pivot lead from this tail.
    for lead in sorted(pivots):
        vec = pivots[lead]
        hits = sorted((w for w in vec if w != lead and w in pivots), reverse=True)
        for w in hits:
            c = vec.get(w)
            if not c:
                continue
            piv = pivots[w]
            a, b = c, piv[w]
            d = gcd(a, b)
            ca, cb = b // d, a // d
            if ca != 1:
                for k in vec:
                    vec[k] *= ca
            for k, v in piv.items():
                s = vec.get(k, 0) - cb * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        pivots[lead], _ = _normalize(vec, lead)
    return pivots


class GroebnerBasis:
    """Interreduced monic truncated Groebner basis of a homogeneous ideal.

    ``elements`` are monic with canonical reduced tails, ordered by degree
    and then ascending in the monomial order of their leading words;
    ``obstructions`` are the matching leading words.  Normal words with
    respect to the obstruction set form a basis of the algebra in every
    degree up to ``truncation``.
    """

    def __init__(self, presentation: Presentation, order: MonomialOrder, truncation: int,
                 reducer: _Reducer):
        self.presentation = presentation
        self.order = order
        self.truncation = truncation
        self._reducer = reducer
        idx = sorted(range(len(reducer.leads)),
                     key=lambda i: (reducer.degrees[i], reducer.leads[i]))
        decode = order.decode
        obstructions = []
        elements = []
        for i in idx:
            lead = reducer.leads[i]
            obstructions.append(decode(lead))
            lc = Fraction(reducer.lcs[i])
            terms = {decode(lead): Fraction(1)}
            for w, c in reducer.tails[i]:
                terms[decode(w)] = Fraction(c) / lc
            elements.append(_wrap(presentation.alphabet, terms))
        self.obstructions: tuple[Word, ...] = tuple(obstructions)
        self.elements: tuple[NCPolynomial, ...] = tuple(elements)

    def __len__(self):
        return len(self.elements)

    def automaton(self) -> ObstructionAutomaton:
        return self._reducer.automaton()

    def normal_form(self, f: NCPolynomial) -> NCPolynomial:
        if f.alphabet != self.presentation.alphabet:
            raise ValueError("polynomial over a different alphabet")
        terms = f.terms()
        if terms and max(len(w) for w in terms) > self.truncation:
            raise ValueError(
                f"degree exceeds truncation {self.truncation}; recompute the basis deeper")
        encode = self.order.encode
        denom = 1
        for c in terms.values():
            denom = denom * c.denominator // gcd(denom, c.denominator)
        vec = {encode(w): int(c * denom) for w, c in terms.items()}
        out, scale = self._reducer.reduce(vec)
        decode = self.order.decode
        q = Fraction(1, denom * scale)
        return _wrap(f.alphabet, {decode(w): c * q for w, c in out.items()})

    def is_normal_word(self, w: Word) -> bool:
        return self._reducer.automaton().is_normal(self.order.encode(w))

    def normal_word_counts(self, max_degree: int) -> list[int]:
        if max_degree > self.truncation:
            raise ValueError(f"max_degree exceeds truncation {self.truncation}")
        return self._reducer.automaton().count_avoiding(max_degree)

    def normal_words(self, degree: int) -> list[Word]:
        """Normal words of one degree, ordered descending in the monomial order."""
        if degree > self.truncation:
            raise ValueError(f"degree exceeds truncation {self.truncation}")
        decode = self.order.decode
        enc = self._reducer.automaton().enumerate_normal(degree)
        return [decode(w) for w in sorted(enc, reverse=True)]


def compute_gb(presentation: Presentation, order: MonomialOrder | None = None,
               max_degree: int = 2, threads: int = 1,
               progress: Callable[[int, dict], None] | None = None) -> GroebnerBasis:
    """Truncated Groebner basis valid through ``max_degree``."""
    if order is None:
        order = presentation.default_order()
    if order.alphabet != presentation.alphabet:
        raise ValueError("order is over a different alphabet")
    degrees = [r.degree for r in presentation.relations]
    if degrees and max_degree < max(degrees):
        raise ValueError("max_degree is below the largest relation degree")
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")

    encode = order.encode
    inputs: dict[int, list[IntPoly]] = {}
    for r in presentation.relations:
        terms = r.terms()
        denom = 1
        for c in terms.values():
            denom = denom * c.denominator // gcd(denom, c.denominator)
        vec = {encode(w): int(c * denom) for w, c in terms.items()}
        inputs.setdefault(r.degree, []).append(vec)

    reducer = _Reducer(len(presentation.alphabet))
    import time as _time
    for d in range(2, max_degree + 1):
        t0 = _time.monotonic()
        cands: list[IntPoly] = []
        if reducer.leads:
            cands.extend(sp for _, _, _, sp in reducer.overlap_spairs(d))
        n_spairs = len(cands)
        cands.extend(inputs.get(d, ()))
        reduced = _reduce_candidates(reducer, [c for c in cands if c], threads)
        new = _echelonize([v for v in reduced if v])
        for lead in sorted(new, reverse=True):
            reducer.add(new[lead])
        if progress is not None:
            progress(d, {
                "spairs": n_spairs,
                "new": len(new),
                "basis": len(reducer.leads),
                "seconds": _time.monotonic() - t0,
            })

    # Canonical reduced form: tail-reduce every element against the rest.
    # The obstruction set is complete through max_degree, so normal forms
    # are unique and the result does not depend on the processing order.
    for i in range(len(reducer.leads)):
        tail = dict(reducer.tails[i])
        if not tail:
            continue
        out, scale = reducer.reduce(tail)
        vec = dict(out)
        vec[reducer.leads[i]] = reducer.lcs[i] * scale
        reducer.replace(i, vec)
    reducer._dirty = True

    return GroebnerBasis(presentation, order, max_degree, reducer)


def normal_form(gb: GroebnerBasis, f: NCPolynomial) -> NCPolynomial:
    return gb.normal_form(f)
