"""Aho-Corasick dictionary automaton over a set of forbidden factors.

Built once per obstruction set, it serves two jobs:

* leftmost detection of an obstruction occurrence inside a word, which is
  the divisor lookup of Groebner reduction, and
* counting words that avoid every obstruction as a contiguous factor, by
  dynamic programming over the automaton states.  Path counts equal graded
  dimensions of the monomial algebra, hence of the algebra itself once the
  basis is complete to the requested degree.

States are the proper prefixes of the patterns plus a root; transitions
follow failure links, and states that complete a pattern (possibly via a
suffix) are terminal.  The transition table is a flat list indexed by
``state * g + letter``; loops below keep everything in local variables.
"""

from __future__ import annotations


class ObstructionAutomaton:
    __slots__ = ("g", "delta", "match", "n_states", "patterns")

    def __init__(self, patterns: list[bytes], alphabet_size: int):
        self.g = g = alphabet_size
        self.patterns = list(patterns)
        # trie
        goto: list[dict[int, int]] = [{}]
        match: list[int] = [-1]
        for idx, pat in enumerate(patterns):
            if not pat:
                raise ValueError("empty obstruction")
            s = 0
            for ch in pat:
                nxt = goto[s].get(ch)
                if nxt is None:
                    goto.append({})
                    match.append(-1)
                    nxt = len(goto) - 1
                    goto[s][ch] = nxt
                s = nxt
            match[s] = idx
        n = len(goto)
        # breadth-first failure links, folded into a dense delta table
        fail = [0] * n
        delta = [0] * (n * g)
        queue: list[int] = []
        for ch in range(g):
            s = goto[0].get(ch)
            if s is not None:
                delta[ch] = s
                fail[s] = 0
                queue.append(s)
        i = 0
        while i < len(queue):
            s = queue[i]
            i += 1
            f = fail[s]
            if match[s] < 0 and match[f] >= 0:
                match[s] = match[f]
            base = s * g
            fbase = f * g
            gs = goto[s]
            for ch in range(g):
                nxt = gs.get(ch)
                if nxt is None:
                    delta[base + ch] = delta[fbase + ch]
                else:
                    delta[base + ch] = nxt
                    fail[nxt] = delta[fbase + ch]
                    queue.append(nxt)
        self.delta = delta
        self.match = match
        self.n_states = n

    def find(self, word: bytes) -> tuple[int, int] | None:
        """Leftmost-ending occurrence: (end position, pattern index) or None."""
        s = 0
        delta = self.delta
        match = self.match
        g = self.g
        pos = 0
        for ch in word:
            s = delta[s * g + ch]
            m = match[s]
            if m >= 0:
                return pos + 1, m
            pos += 1
        return None

    def is_normal(self, word: bytes) -> bool:
        return self.find(word) is None

    def count_avoiding(self, max_degree: int) -> list[int]:
        """Number of words of each length 0..max_degree avoiding all patterns."""
        counts = [1]
        vec = {0: 1}
        delta = self.delta
        match = self.match
        g = self.g
        for _ in range(max_degree):
            nxt: dict[int, int] = {}
            for s, c in vec.items():
                base = s * g
                for ch in range(g):
                    t = delta[base + ch]
                    if match[t] < 0:
                        nxt[t] = nxt.get(t, 0) + c
            vec = nxt
            counts.append(sum(vec.values()))
        return counts

    def state_counts(self, max_degree: int) -> list[dict[int, int]]:
        """Per-degree distribution of avoiding words over automaton states."""
        vecs = [{0: 1}]
        delta = self.delta
        match = self.match
        g = self.g
        for _ in range(max_degree):
            nxt: dict[int, int] = {}
            for s, c in vecs[-1].items():
                base = s * g
                for ch in range(g):
                    t = delta[base + ch]
                    if match[t] < 0:
                        nxt[t] = nxt.get(t, 0) + c
            vecs.append(nxt)
        return vecs

    def run_clean(self, state: int, word: bytes) -> int | None:
        """Advance from ``state`` reading ``word``; None if a pattern completes."""
        delta = self.delta
        match = self.match
        g = self.g
        s = state
        for ch in word:
            s = delta[s * g + ch]
            if match[s] >= 0:
                return None
        return s

    def enumerate_normal(self, degree: int) -> list[bytes]:
        """All avoiding words of the given length, in lexicographic order."""
        out: list[bytes] = []
        delta = self.delta
        match = self.match
        g = self.g

        prefix = bytearray()

        def rec(s: int, remaining: int):
            if remaining == 0:
                out.append(bytes(prefix))
                return
            base = s * g
            for ch in range(g):
                t = delta[base + ch]
                if match[t] < 0:
                    prefix.append(ch)
                    rec(t, remaining - 1)
                    prefix.pop()

        rec(0, degree)
        return out
