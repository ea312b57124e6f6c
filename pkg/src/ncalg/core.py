"""Words, monomial orders and noncommutative polynomials over Q.

Words in the free algebra are plain ``bytes``: byte ``i`` is the ``i``-th
generator of the alphabet, the empty word is the unit and the degree of a
word is its length (all generators sit in degree 1).  Polynomials map words
to nonzero ``Fraction`` coefficients and are immutable values.

Monomial orders are degree-lexicographic: degree first, ties broken by a
precedence permutation of the generators.  Encoding a word through
:meth:`MonomialOrder.sort_key` turns order comparisons into native tuple
comparisons, which is what every hot loop in the Groebner engine relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Word = bytes

_IDENTITY_256 = bytes(range(256))


@dataclass(frozen=True)
class Alphabet:
    """Ordered list of generator names, all of degree 1."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("alphabet needs at least one generator")
        if len(self.names) > 255:
            raise ValueError("alphabets are limited to 255 generators")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        if any(not n for n in self.names):
            raise ValueError("generator names must be nonempty")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def word(self, *names: str) -> Word:
        """Build a word from generator names."""
        return bytes(self.names.index(n) for n in names)

    def str_word(self, w: Word) -> str:
        if not w:
            return "1"
        return "*".join(self.names[i] for i in w)

    def default_order(self) -> "MonomialOrder":
        """Deg-lex with precedence = listed order, descending."""
        return MonomialOrder(self, tuple(range(len(self.names))))


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order given by a precedence permutation.

    ``precedence`` lists generator indices from highest to lowest.  The
    order is total, degree-compatible and multiplicative.
    """

    alphabet: Alphabet
    precedence: tuple[int, ...]

    def __post_init__(self):
        g = len(self.alphabet)
        if sorted(self.precedence) != list(range(g)):
            raise ValueError("precedence must be a permutation of generator indices")
        # letter -> weight byte; higher precedence = larger weight, so that
        # plain bytes comparison of encoded words matches the lex tiebreak.
        weight = bytearray(_IDENTITY_256)
        for rank, gen in enumerate(self.precedence):
            weight[gen] = g - 1 - rank
        object.__setattr__(self, "_encode", bytes(weight))
        decode = bytearray(_IDENTITY_256)
        for gen in range(g):
            decode[weight[gen]] = gen
        object.__setattr__(self, "_decode", bytes(decode))

    def encode(self, w: Word) -> bytes:
        return w.translate(self._encode)

    def decode(self, w: bytes) -> Word:
        return w.translate(self._decode)

    def sort_key(self, w: Word):
        return (len(w), w.translate(self._encode))

    def compare(self, u: Word, v: Word) -> int:
        """-1, 0 or 1 as u <, =, > v."""
        ku, kv = self.sort_key(u), self.sort_key(v)
        return (ku > kv) - (ku < kv)

    def spec(self) -> str:
        """The CLI order string, e.g. ``deglex:x>y>z``."""
        return "deglex:" + ">".join(self.alphabet.names[i] for i in self.precedence)

    @staticmethod
    def from_spec(spec: str, alphabet: Alphabet) -> "MonomialOrder":
        if not spec.startswith("deglex:"):
            raise ValueError(f"unsupported order spec {spec!r} (expected deglex:...)")
        body = spec[len("deglex:"):]
        if body == "default":
            return alphabet.default_order()
        names = body.split(">")
        if sorted(names) != sorted(alphabet.names):
            raise ValueError("order spec must list every generator exactly once")
        return MonomialOrder(alphabet, tuple(alphabet.index(n) for n in names))


def compare(order: MonomialOrder, u: Word, v: Word) -> int:
    return order.compare(u, v)


class NCPolynomial:
    """Finite Q-linear combination of words, with no zero coefficients."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Fraction] | Iterable[tuple[Word, Fraction]] = ()):
        self.alphabet = alphabet
        data: dict[Word, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = Fraction(c)
            if not c:
                continue
            c += data.get(w, 0)
            if c:
                data[w] = c
            else:
                data.pop(w, None)
        g = len(alphabet)
        for w in data:
            if any(i >= g for i in w):
                raise ValueError("word uses an index outside the alphabet")
        self._terms = data

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(alphabet: Alphabet) -> "NCPolynomial":
        return NCPolynomial(alphabet)

    @staticmethod
    def one(alphabet: Alphabet) -> "NCPolynomial":
        return NCPolynomial(alphabet, {b"": Fraction(1)})

    @staticmethod
    def generator(alphabet: Alphabet, name_or_index) -> "NCPolynomial":
        i = name_or_index if isinstance(name_or_index, int) else alphabet.index(name_or_index)
        return NCPolynomial(alphabet, {bytes([i]): Fraction(1)})

    @staticmethod
    def from_word(alphabet: Alphabet, w: Word, coeff=1) -> "NCPolynomial":
        return NCPolynomial(alphabet, {bytes(w): Fraction(coeff)})

    # -- inspection --------------------------------------------------------
    def terms(self) -> dict[Word, Fraction]:
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    @property
    def is_homogeneous(self) -> bool:
        lengths = {len(w) for w in self._terms}
        return len(lengths) <= 1

    @property
    def degree(self) -> int | None:
        """Degree if homogeneous and nonzero, else None."""
        lengths = {len(w) for w in self._terms}
        return lengths.pop() if len(lengths) == 1 else None

    def leading_word(self, order: MonomialOrder) -> Word:
        if not self._terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self._terms, key=order.sort_key)

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self._terms[self.leading_word(order)]

    def coefficient(self, w: Word) -> Fraction:
        return self._terms.get(w, Fraction(0))

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Word, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: order.sort_key(t[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "NCPolynomial"):
        if self.alphabet != other.alphabet:
            raise ValueError("polynomials over mismatched alphabets")

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        self._check(other)
        data = dict(self._terms)
        for w, c in other._terms.items():
            s = data.get(w, 0) + c
            if s:
                data[w] = s
            else:
                data.pop(w, None)
        return _wrap(self.alphabet, data)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __neg__(self) -> "NCPolynomial":
        return _wrap(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __mul__(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "NCPolynomial":
        return self.scale(other)

    def scale(self, c) -> "NCPolynomial":
        c = Fraction(c)
        if not c:
            return NCPolynomial(self.alphabet)
        return _wrap(self.alphabet, {w: c * v for w, v in self._terms.items()})

    def monic(self, order: MonomialOrder) -> "NCPolynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def __eq__(self, other):
        return (
            isinstance(other, NCPolynomial)
            and self.alphabet == other.alphabet
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.alphabet, frozenset(self._terms.items())))

    def __repr__(self):
        return f"NCPolynomial({self.to_str()})"

    def to_str(self, order: MonomialOrder | None = None) -> str:
        """Render in the presentation-DSL expression syntax."""
        if not self._terms:
            return "0"
        if order is None:
            items = sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))
        else:
            items = self.sorted_terms(order)
        out = []
        for w, c in items:
            sign = "-" if c < 0 else "+"
            c = abs(c)
            mon = _str_word_pow(self.alphabet, w)
            if not w:
                body = str(c)
            elif c == 1:
                body = mon
            else:
                body = f"{c}*{mon}"
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)


def _str_word_pow(alphabet: Alphabet, w: Word) -> str:
    # collapse doubled letters to ^2 (the DSL's only power)
    out = []
    i = 0
    while i < len(w):
        if i + 1 < len(w) and w[i] == w[i + 1]:
            out.append(f"{alphabet.names[w[i]]}^2")
            i += 2
        else:
            out.append(alphabet.names[w[i]])
            i += 1
    return "*".join(out)


def _wrap(alphabet: Alphabet, data: dict[Word, Fraction]) -> NCPolynomial:
    p = NCPolynomial.__new__(NCPolynomial)
    p.alphabet = alphabet
    p._terms = data
    return p


def multiply(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    """Bilinear extension of word concatenation."""
    p._check(q)
    data: dict[Word, Fraction] = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u + v
            s = data.get(w, 0) + a * b
            if s:
                data[w] = s
            else:
                data.pop(w, None)
    return _wrap(p.alphabet, data)


def commutator(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    """[a, b] = ab - ba."""
    return multiply(a, b) - multiply(b, a)


class ModP:
    """Element of the prime field F_p; used by the modular Betti strategy."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.value
        return other % self.p

    def __add__(self, other):
        return ModP(self.value + self._lift(other), self.p)

    def __sub__(self, other):
        return ModP(self.value - self._lift(other), self.p)

    def __mul__(self, other):
        return ModP(self.value * self._lift(other), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __eq__(self, other):
        return isinstance(other, ModP) and self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"
