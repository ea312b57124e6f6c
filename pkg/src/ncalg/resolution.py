"""Graded Betti numbers dim Tor_{i,j}(Q,Q) through homological degree 3.

The start of the minimal free resolution of the trivial module is
F_2 -> F_1 -> F_0 = A with F_1 free on the generators (degree 1) and F_2
free on a minimal relation set (degree 2); d_2 sends the basis element of
a relation to its last-letter splitting sum(c_t * u_t e_{g_t}) in F_1.
Then Tor_{1,1} = g, Tor_{2,2} = number of minimal relations, and
Tor_{3,j} = dim K_j - dim(A_1 K_{j-1}) where K = ker d_2.

Two routes compute the kernel data:

* ``GradedMap`` materializes the degree-j component of d_2 as sparse
  columns in the normal-word bases and eliminates them directly.  Exact
  and transparent, but the column count is #relations * a_{j-2}, so it is
  only for moderate degrees.

* ``betti_numbers`` runs a Groebner completion of the submodule
  im(d_2) of F_1 with cofactor tracking.  Module leading terms are kept
  suffix-free, so the module-reducible terms of each degree are counted
  exactly from the leads (a reversed-word automaton makes that a table
  lookup), which yields rank(d_2)_j without elimination; S-elements that
  reduce to zero hand over their tracked cofactors, which are exactly the
  kernel vectors.  Both kinds of information are checked against each
  other: the collected kernel vectors must span a space of the counted
  dimension.

The modular strategy runs the completion over two deterministic primes in
(2^30, 2^31) and requires agreement, falling back to exact rationals when
they differ; exact runs use fraction-free integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Callable, Iterable

from .automaton import ObstructionAutomaton
from .core import NCPolynomial
from .groebner import GroebnerBasis, _INV255, IntPoly
from .hilbert import HilbertSeries
from .linalg import Echelon
from .presentations import Presentation
from .quadratic import quadratic_data


@dataclass(frozen=True)
class BettiTable:
    """Entries dim Tor_{i,j} for 0 <= i <= max_i, j <= max_j."""

    algebra: str
    max_i: int
    max_j: int
    strategy: str
    entries: tuple[tuple[tuple[int, int], int], ...]

    def entry(self, i: int, j: int) -> int:
        for (ii, jj), v in self.entries:
            if (ii, jj) == (i, j):
                return v
        if j < i or i > self.max_i or j > self.max_j:
            raise KeyError(f"entry ({i},{j}) outside the computed range")
        return 0

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)


def modular_primes(count: int = 2, seed: int = 0x6E63616C67) -> list[int]:
    """Deterministic primes in (2^30, 2^31) for the modular strategy."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        x = rng.randrange(2 ** 30, 2 ** 31) | 1
        if x not in out and _is_prime(x):
            out.append(x)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def minimal_relations(p: Presentation) -> list[NCPolynomial]:
    """Canonical minimal quadratic relation set (rows of the echelon span)."""
    return quadratic_data(p).row_polynomials()


def _int_vector(poly: NCPolynomial, encode) -> IntPoly:
    terms = poly.terms()
    denom = 1
    for c in terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return {encode(w): int(c * denom) for w, c in terms.items()}


def _split_relations(gb: GroebnerBasis, relations: list[NCPolynomial]) -> list[dict]:
    """Last-letter splitting: relation -> sum of (first-letter word, component)."""
    encode = gb.order.encode
    out = []
    for r in relations:
        vec = _int_vector(r, encode)
        split: dict[tuple[bytes, int], int] = {}
        for w, c in vec.items():
            split[(w[:-1], w[-1])] = split.get((w[:-1], w[-1]), 0) + c
        out.append({k: v for k, v in split.items() if v})
    return out


class _NFCache:
    """Memoized algebra normal forms of words, as coefficient item lists.

    Coefficients stay plain ints: reduced mod p when a modulus is given,
    otherwise exact (which requires the normal form of a word to be
    integral; every built-in family satisfies that, and the modular
    strategy covers the general case).
    """

    def __init__(self, gb: GroebnerBasis, mod: int | None = None, cap: int = 400_000):
        self._reduce = gb._reducer.reduce
        self._mod = mod
        self._memo: dict[bytes, tuple[tuple[bytes, int], ...]] = {}
        self._cap = cap

    def expand(self, word: bytes) -> tuple[tuple[bytes, int], ...]:
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        out, scale = self._reduce({word: 1})
        mod = self._mod
        if mod is not None:
            if scale % mod == 0:  # pragma: no cover - primes exceed coefficients
                raise ArithmeticError("reduction scale vanishes mod p; change primes")
            inv = pow(scale % mod, -1, mod) if scale != 1 else 1
            items = tuple(
                (w, c * inv % mod) for w, c in sorted(out.items()) if c * inv % mod
            )
        elif scale != 1:
            vals = []
            for w, c in sorted(out.items()):
                if c % scale:
                    raise ArithmeticError(
                        "non-integral normal form; use the modular strategy")
                vals.append((w, c // scale))
            items = tuple(vals)
        else:
            items = tuple(sorted(out.items()))
        if len(self._memo) < self._cap:
            self._memo[word] = items
        return items


# ---------------------------------------------------------------------------
# Matrix route
# ---------------------------------------------------------------------------

class GradedMap:
    """Degree components of d_2 : F_2 -> F_1 as sparse columns.

    Columns are indexed by (relation index, normal word of degree j-2);
    rows by (component, normal word of degree j-1).  Entries are computed
    through normal forms, so columns stay sparse; ``column_stats`` exposes
    that for the regression guard.
    """

    def __init__(self, gb: GroebnerBasis, relations: list[NCPolynomial] | None = None):
        self.gb = gb
        self.relations = relations if relations is not None else minimal_relations(gb.presentation)
        self.source_degrees = tuple(2 for _ in self.relations)
        self.target_degrees = tuple(1 for _ in range(len(gb.presentation.alphabet)))
        self.splits = _split_relations(gb, self.relations)
        self._nf = _NFCache(gb)

    def columns(self, j: int) -> Iterable[tuple[tuple[int, bytes], dict]]:
        """Yield ((relation, word), column vector) for internal degree j."""
        if j - 1 > self.gb.truncation:
            raise ValueError("internal degree exceeds what the basis truncation supports")
        auto = self.gb.automaton()
        words = sorted(auto.enumerate_normal(j - 2))
        for r, split in enumerate(self.splits):
            for b in words:
                col: dict[tuple[int, bytes], int] = {}
                for (u, comp), c in split.items():
                    for w, e in self._nf.expand(b + u):
                        key = (comp, w)
                        s = col.get(key, 0) + c * e
                        if s:
                            col[key] = s
                        else:
                            del col[key]
                yield (r, b), col

    def rank(self, j: int, mod: int | None = None) -> int:
        ech = Echelon(mod)
        for _, col in self.columns(j):
            if mod is None:
                ech.add({k: Fraction(v) for k, v in col.items()})
            else:
                ech.add(col)
        return ech.rank

    def kernel(self, j: int, mod: int | None = None) -> tuple[int, list[dict]]:
        """(rank, kernel vectors over column keys) for internal degree j."""
        ech = Echelon(mod)
        combos: dict = {}
        kernel = []
        for key, col in self.columns(j):
            vec = {k: (Fraction(v) if mod is None else v) for k, v in col.items()}
            track = {key: Fraction(1) if mod is None else 1}
            piv = _tracked_add(ech, vec, track, combos, mod)
            if piv is None:
                kernel.append(track)
        return ech.rank, kernel

    def kernel_dim(self, j: int, mod: int | None = None) -> int:
        n_cols = len(self.relations) * self.gb.normal_word_counts(j - 2)[j - 2]
        return n_cols - self.rank(j, mod)

    def column_stats(self, j: int) -> tuple[int, int, float]:
        """(number of rows, max column support, mean column support)."""
        counts = self.gb.normal_word_counts(j - 1)
        n_rows = len(self.target_degrees) * counts[j - 1]
        sizes = [len(col) for _, col in self.columns(j)]
        return n_rows, max(sizes, default=0), (sum(sizes) / len(sizes) if sizes else 0.0)


def _tracked_add(ech: Echelon, vec: dict, track: dict, combos: dict, mod):
    """Echelon insertion that carries column combinations along."""
    while vec:
        lead = max(vec)
        row = ech.pivots.get(lead)
        if row is None:
            c = vec[lead]
            inv = (1 / c) if mod is None else pow(c % mod, -1, mod)
            vec2 = {}
            for k, v in vec.items():
                v = v * inv
                if mod is not None:
                    v %= mod
                if v:
                    vec2[k] = v
            track2 = {}
            for k, v in track.items():
                v = v * inv
                if mod is not None:
                    v %= mod
                if v:
                    track2[k] = v
            ech.pivots[lead] = vec2
            combos[lead] = track2
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
        for k, v in combos[lead].items():
            s = track.get(k, 0) - c * v
            if mod is not None:
                s %= mod
            if s:
                track[k] = s
            else:
                track.pop(k, None)
    return None


# ---------------------------------------------------------------------------
# Module completion route
# ---------------------------------------------------------------------------

class _ModuleElement:
    __slots__ = ("lead", "lc", "tail", "cof")

    def __init__(self, lead, lc, tail, cof):
        self.lead = lead      # (word, component)
        self.lc = lc
        self.tail = tail      # list[((word, component), coeff)]
        self.cof = cof        # list[((word, relation), coeff)]


def _mod_key(term):
    w, i = term
    return (len(w), w, -i)


class _SyzygyEngine:
    """Left-module Groebner completion of im(d_2) with cofactor tracking."""

    def __init__(self, gb: GroebnerBasis, relations: list[NCPolynomial], mod: int | None):
        self.gb = gb
        self.mod = mod
        self.g = len(gb.presentation.alphabet)
        self.nf = _NFCache(gb, mod)
        self.splits = _split_relations(gb, relations)
        self.n_rel = len(relations)
        self.elements: list[_ModuleElement] = []
        self.leads: list[dict[bytes, int]] = [dict() for _ in range(self.g)]
        self.lead_lengths: list[set[int]] = [set() for _ in range(self.g)]
        # suffix index of algebra obstructions for overlap generation
        self.obs = gb._reducer.leads
        self._suffix_index: dict[bytes, list[int]] = {}
        for oi, o in enumerate(self.obs):
            for ell in range(1, len(o)):
                self._suffix_index.setdefault(o[len(o) - ell:], []).append(oi)
        self.syzygies: dict[int, list[dict]] = {}
        self.kernel_basis: dict[int, list[dict]] = {}
        self.counts = gb.normal_word_counts(gb.truncation)
        self._init_reverse_counts()

    # -- counting ----------------------------------------------------------
    def _init_reverse_counts(self):
        rev = [bytes(reversed(o)) for o in self.obs]
        self.rev_auto = ObstructionAutomaton(rev, self.g)
        self._cont: list[list[int]] = []

    def _continuations(self, length: int) -> list[int]:
        auto = self.rev_auto
        while len(self._cont) <= length:
            if not self._cont:
                self._cont.append([1] * auto.n_states)
            else:
                prev = self._cont[-1]
                cur = [0] * auto.n_states
                delta, match, g = auto.delta, auto.match, auto.g
                for s in range(auto.n_states):
                    total = 0
                    base = s * g
                    for ch in range(g):
                        t = delta[base + ch]
                        if match[t] < 0:
                            total += prev[t]
                    cur[s] = total
                self._cont.append(cur)
        return self._cont[length]

    def reducible_count(self, j: int) -> int:
        """Module-reducible algebra-normal terms of internal degree j."""
        total = 0
        for comp in range(self.g):
            for lead_w in self.leads[comp]:
                ell = (j - 1) - len(lead_w)
                if ell < 0:
                    continue
                state = self.rev_auto.run_clean(0, bytes(reversed(lead_w)))
                assert state is not None, "module lead is not algebra-normal"
                total += self._continuations(ell)[state]
        return total

    def rank_d2(self, j: int) -> int:
        """rank of (d_2)_j = number of module-reducible terms of degree j."""
        return self.reducible_count(j)

    def kernel_dim(self, j: int) -> int:
        free_dim = self.n_rel * self.counts[j - 2] if j >= 2 else 0
        return free_dim - self.rank_d2(j)

    # -- arithmetic --------------------------------------------------------
    def _lookup(self, w: bytes, comp: int) -> int | None:
        by_len = self.lead_lengths[comp]
        table = self.leads[comp]
        for L in by_len:
            if L <= len(w):
                hit = table.get(w[len(w) - L:])
                if hit is not None:
                    return hit
        return None

    def reduce(self, vec: dict, cof: dict) -> tuple[dict, dict]:
        """Full module normal form of (vec, cof); exact path is fraction-free."""
        mod = self.mod
        expand = self.nf.expand
        out: dict = {}
        pend = dict(vec)
        heap = [(-len(w), w.translate(_INV255), i, w) for (w, i) in pend]
        heapify(heap)
        cof = dict(cof)
        while heap:
            item = heappop(heap)
            term = (item[3], item[2])
            c = pend.pop(term, None)
            if c is None:
                continue
            w, comp = term
            mi = self._lookup(w, comp)
            if mi is None:
                out[term] = c
                continue
            m = self.elements[mi]
            u = w[:len(w) - len(m.lead[0])]
            if mod is not None:
                factor = c * m.lc % mod  # m.lc stores the inverse lead coeff
            else:
                d = gcd(c, m.lc)
                s = m.lc // d
                factor = c // d
                if s != 1:
                    for k in out:
                        out[k] *= s
                    for k in pend:
                        pend[k] *= s
                    for k in cof:
                        cof[k] *= s
            for (tw, ti), tc in m.tail:
                mult = factor * tc
                for ew, ec in expand(u + tw):
                    key = (ew, ti)
                    old = pend.get(key)
                    if old is None:
                        v = -mult * ec
                        if mod is not None:
                            v %= mod
                        if v:
                            pend[key] = v
                            heappush(heap, (-len(ew), ew.translate(_INV255), ti, ew))
                    else:
                        v = old - mult * ec
                        if mod is not None:
                            v %= mod
                        if v:
                            pend[key] = v
                        else:
                            del pend[key]
            for (cw, r), cc in m.cof:
                mult = factor * cc
                for ew, ec in expand(u + cw):
                    key = (ew, r)
                    v = cof.get(key, 0) - mult * ec
                    if mod is not None:
                        v %= mod
                    if v:
                        cof[key] = v
                    else:
                        cof.pop(key, None)
        return out, cof

    def _normalize_pair(self, vec: dict, cof: dict) -> tuple[dict, dict, int]:
        """Make the pair primitive (exact) or the lead monic (mod p)."""
        mod = self.mod
        if mod is not None:
            vec = {k: v % mod for k, v in vec.items() if v % mod}
            cof = {k: v % mod for k, v in cof.items() if v % mod}
            return vec, cof, 1
        c = 0
        for v in vec.values():
            c = gcd(c, v)
        for v in cof.values():
            c = gcd(c, v)
        if c == 0:
            return {}, {}, 1
        if vec:
            lead = max(vec, key=_mod_key)
            if vec[lead] < 0:
                c = -c
        elif cof and cof[max(cof)] < 0:
            c = -c
        if c != 1:
            vec = {k: v // c for k, v in vec.items()}
            cof = {k: v // c for k, v in cof.items()}
        return vec, cof, c

    def insert(self, vec: dict, cof: dict):
        lead = max(vec, key=_mod_key)
        lc = vec[lead]
        if self.mod is not None:
            inv = pow(lc, -1, self.mod)
            vec = {k: v * inv % self.mod for k, v in vec.items()}
            cof = {k: v * inv % self.mod for k, v in cof.items()}
            stored_lc = 1  # stores inverse of the (now unit) lead coefficient
        else:
            stored_lc = lc
        tail = sorted(((t, c) for t, c in vec.items() if t != lead),
                      key=lambda x: _mod_key(x[0]), reverse=True)
        cof_items = sorted(cof.items())
        w, comp = lead
        idx = len(self.elements)
        self.elements.append(_ModuleElement(lead, stored_lc, tail, cof_items))
        self.leads[comp][w] = idx
        self.lead_lengths[comp].add(len(w))

    # -- completion --------------------------------------------------------
    def candidates(self, j: int) -> list[tuple]:
        """Deterministically ordered S-element seeds of internal degree j."""
        out = []
        if j == 2:
            for r, split in enumerate(self.splits):
                vec = {term: c for term, c in split.items()}
                cof = {(b"", r): 1}
                out.append((b"", None, r, vec, cof))
            return out
        for idx, m in enumerate(self.elements):
            w, comp = m.lead
            deg_m = len(w) + 1
            for ell in range(1, len(w) + 1):
                prefix = w[:ell]
                for oi in self._suffix_index.get(prefix, ()):
                    o = self.obs[oi]
                    if len(o) - ell + deg_m == j:
                        out.append((self.obs[oi][:len(o) - ell], oi, idx, None, None))
        out.sort(key=lambda t: (t[0], t[1] if t[1] is not None else -1, t[2]))
        return out

    def run(self, max_j: int, collect_from: int = 2,
            progress: Callable[[int, dict], None] | None = None):
        """Complete the module basis through internal degree max_j."""
        for j in range(2, max_j + 1):
            n_syz = 0
            for cand in self.candidates(j):
                left, oi, idx, vec, cof = cand
                if vec is None:
                    m = self.elements[idx]
                    vec = {}
                    cof = {}
                    expand = self.nf.expand
                    for (tw, ti), tc in [(m.lead, 1 if self.mod is not None else m.lc)] + m.tail:
                        for ew, ec in expand(left + tw):
                            key = (ew, ti)
                            v = vec.get(key, 0) + tc * ec
                            if self.mod is not None:
                                v %= self.mod
                            if v:
                                vec[key] = v
                            else:
                                vec.pop(key, None)
                    for (cw, r), cc in m.cof:
                        for ew, ec in expand(left + cw):
                            key = (ew, r)
                            v = cof.get(key, 0) + cc * ec
                            if self.mod is not None:
                                v %= self.mod
                            if v:
                                cof[key] = v
                            else:
                                cof.pop(key, None)
                vec, cof = self.reduce(vec, cof)
                vec, cof, _ = self._normalize_pair(vec, cof)
                if vec:
                    self.insert(vec, cof)
                elif cof and j >= collect_from:
                    self.syzygies.setdefault(j, []).append(cof)
                    n_syz += 1
            if progress is not None:
                progress(j, {"elements": len(self.elements), "syzygies": n_syz})

    # -- Tor extraction ----------------------------------------------------
    def shift_kernel(self, vectors: list[dict]) -> list[dict]:
        """Left-multiply kernel vectors by every generator, normal-formed."""
        out = []
        expand = self.nf.expand
        mod = self.mod
        for gch in range(self.g):
            prefix = bytes([gch])
            for v in vectors:
                shifted: dict = {}
                for (u, r), c in v.items():
                    for ew, ec in expand(prefix + u):
                        key = (ew, r)
                        s = shifted.get(key, 0) + c * ec
                        if mod is not None:
                            s %= mod
                        if s:
                            shifted[key] = s
                        else:
                            shifted.pop(key, None)
                if shifted:
                    out.append(shifted)
        return out

    def tor3(self, j: int, keep_basis: bool) -> int:
        """dim Tor_{3,j}; requires completion through degree j."""
        dim_k = self.kernel_dim(j)
        prev = self.kernel_basis.get(j - 1, [])
        shifted = self.shift_kernel(prev)
        ech = Echelon(self.mod)
        for v in shifted:
            if self.mod is None:
                ech.add({k: Fraction(c) for k, c in v.items()})
            else:
                ech.add(v)
        r_prev = ech.rank
        for v in self.syzygies.get(j, []):
            if self.mod is None:
                ech.add({k: Fraction(c) for k, c in v.items()})
            else:
                ech.add(v)
        if ech.rank != dim_k:
            raise ArithmeticError(
                f"kernel span mismatch at degree {j}: counted {dim_k}, spanned {ech.rank}")
        if keep_basis:
            self.kernel_basis[j] = [dict(row) for row in ech.pivots.values()]
        return dim_k - r_prev

    def verify_syzygy(self, cof: dict) -> bool:
        """Check that a cofactor vector really maps to zero under d_2."""
        mod = self.mod
        expand = self.nf.expand
        acc: dict = {}
        for (u, r), c in cof.items():
            for (tw, ti), tc in self.splits[r].items():
                for ew, ec in expand(u + tw):
                    key = (ew, ti)
                    s = acc.get(key, 0) + c * tc * ec
                    if mod is not None:
                        s %= mod
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
        return not acc


def betti_numbers(gb: GroebnerBasis, max_i: int = 3, max_j: int | None = None,
                  strategy: str = "modular", primes: list[int] | None = None,
                  allow_exact_fallback: bool = True,
                  verify_syzygies: bool = True,
                  progress: Callable[[int, dict], None] | None = None) -> BettiTable:
    """Graded Betti table of the trivial module through homological degree 3.

    Internal degrees run to ``max_j`` (default: truncation + 1; the kernel
    of d_2 in degree j only involves words of length j - 1, so the basis
    supports one degree beyond its truncation).
    """
    if max_i > 3:
        raise ValueError("homological degrees above 3 are not computed")
    if max_j is None:
        max_j = gb.truncation + 1
    if max_j - 1 > gb.truncation:
        raise ValueError(
            f"max_j {max_j} needs basis truncation >= {max_j - 1}, have {gb.truncation}")
    p = gb.presentation
    if not p.is_quadratic():
        raise ValueError("Betti computation expects a quadratic presentation")
    rels = minimal_relations(p)
    g = p.n_generators

    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    if max_i >= 1:
        for j in range(1, max_j + 1):
            entries[(1, j)] = g if j == 1 else 0
    if max_i >= 2:
        for j in range(2, max_j + 1):
            entries[(2, j)] = len(rels) if j == 2 else 0

    if max_i >= 3 and rels:
        def run_engine(mod: int | None) -> dict[int, int]:
            eng = _SyzygyEngine(gb, rels, mod)
            eng.run(max_j, progress=progress)
            if eng.kernel_dim(2) != 0:
                raise ArithmeticError("minimal relations are dependent in F_1")
            if verify_syzygies:
                for js in eng.syzygies.values():
                    for cof in js:
                        if not eng.verify_syzygy(cof):
                            raise ArithmeticError("syzygy verification failed")
            out = {}
            for j in range(3, max_j + 1):
                out[j] = eng.tor3(j, keep_basis=(j < max_j))
            return out

        if strategy == "exact":
            tor = run_engine(None)
            tag = "exact-rational"
        elif strategy == "modular":
            ps = primes if primes is not None else modular_primes(2)
            if len(ps) < 2:
                raise ValueError("modular strategy needs two primes")
            t1 = run_engine(ps[0])
            t2 = run_engine(ps[1])
            if t1 != t2:
                if not allow_exact_fallback:
                    raise ArithmeticError(
                        f"modular disagreement between primes {ps[0]} and {ps[1]}")
                tor = run_engine(None)
                tag = f"exact-rational (after modular disagreement {ps[0]},{ps[1]})"
            else:
                tor = t1
                tag = f"modular({ps[0]},{ps[1]})"
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        for j in range(3, max_j + 1):
            entries[(3, j)] = tor[j]
    elif max_i >= 3:
        for j in range(3, max_j + 1):
            entries[(3, j)] = 0
        tag = "exact-rational" if strategy == "exact" else "modular(-)"
    else:
        tag = "exact-rational" if strategy == "exact" else "modular(-)"

    for (i, j), v in entries.items():
        if j < i and v:
            raise AssertionError("nonzero entry below the diagonal")
    table = tuple(sorted(entries.items()))
    return BettiTable(p.name, max_i, max_j, tag, table)


def euler_check(h: HilbertSeries, b: BettiTable, max_degree: int) -> list[int]:
    """Coefficients of h(t) * sum_i (-1)^i sum_j Tor_{i,j} t^j minus 1.

    Uses exactly the entries present in the table; the residual vanishes in
    every degree where all contributing Tor entries are known.
    """
    if h.algebra != b.algebra:
        raise ValueError(f"inconsistent algebra tags: {h.algebra!r} vs {b.algebra!r}")
    if max_degree > h.truncation:
        raise ValueError("max_degree exceeds the series truncation")
    poly = {}
    for (i, j), v in b.entries:
        if v:
            poly[j] = poly.get(j, 0) + (v if i % 2 == 0 else -v)
    residual = []
    for d in range(max_degree + 1):
        c = sum(h[d - j] * v for j, v in poly.items() if j <= d)
        residual.append(c - (1 if d == 0 else 0))
    return residual
