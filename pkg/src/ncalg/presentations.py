"""Algebra presentations: text DSL, built-in families, changes of variables.

The DSL is line oriented::

    algebra <name> over Q
    generators <name> <name> ...
    relations
    <expression>            # one relation per line, '#' starts a comment
    ...

with expressions built from ``+ - * ^2`` and the commutator sugar
``[a, b] = a*b - b*a``.  Coefficients are integers or rationals ``p/q``.
Generator precedence for the default monomial order is the listed order,
descending.

Built-in constructors cover every family the computations need: the
cohomology algebra of the pure symmetric automorphism group (an exterior
algebra modulo explicit quadratic relations, encoded as a free-algebra
presentation), its quadratic dual (an enveloping algebra on generators
x_ij), the eight-generator quotient with sixteen commutator relations, and
that quotient's dual.  ``column_sum_substitution`` produces the change of
variables X_j = sum of column-j generators used by the PBW analysis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Alphabet, MonomialOrder, NCPolynomial, Word, commutator, multiply

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_!']*")
_NUM_RE = re.compile(r"\d+(/\d+)?")


class ParseError(ValueError):
    """Syntax or validation error with 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Presentation:
    """Named alphabet plus homogeneous relations of degree >= 2."""

    name: str
    alphabet: Alphabet
    relations: tuple[NCPolynomial, ...]
    source: str = field(default="api", compare=False)

    def __post_init__(self):
        for r in self.relations:
            if r.alphabet != self.alphabet:
                raise ValueError("relation over a different alphabet")
            if r.is_zero():
                raise ValueError("zero relation")
            d = r.degree
            if d is None:
                raise ValueError(f"inhomogeneous relation: {r.to_str()}")
            if d < 2:
                raise ValueError(f"relation of degree {d} < 2: {r.to_str()}")

    @property
    def n_generators(self) -> int:
        return len(self.alphabet)

    def default_order(self) -> MonomialOrder:
        return self.alphabet.default_order()

    def is_quadratic(self) -> bool:
        return all(r.degree == 2 for r in self.relations)

    def generator(self, name: str) -> NCPolynomial:
        return NCPolynomial.generator(self.alphabet, name)

    def to_text(self) -> str:
        lines = [f"algebra {self.name} over Q"]
        lines.append("generators " + " ".join(self.alphabet.names))
        lines.append("relations")
        for r in self.relations:
            lines.append(r.to_str())
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DSL parsing
# ---------------------------------------------------------------------------

class _ExprParser:
    def __init__(self, text: str, lineno: int, alphabet: Alphabet):
        self.text = text
        self.lineno = lineno
        self.alphabet = alphabet
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.lineno, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> NCPolynomial:
        p = self.parse_expr()
        self.skip_ws()
        if self.pos < len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return p

    def parse_expr(self) -> NCPolynomial:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        elif self.peek() == "+":
            self.pos += 1
        acc = self.parse_term().scale(sign)
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                acc = acc + self.parse_term()
            elif ch == "-":
                self.pos += 1
                acc = acc - self.parse_term()
            else:
                return acc

    def parse_term(self) -> NCPolynomial:
        coeff = Fraction(1)
        self.skip_ws()
        m = _NUM_RE.match(self.text, self.pos)
        if m:
            coeff = Fraction(m.group(0))
            self.pos = m.end()
            if self.peek() == "*":
                self.pos += 1
            elif self.peek() in "+-,]" or not self.peek():
                return NCPolynomial(self.alphabet, {b"": coeff})
            else:
                self.error("expected '*' after coefficient")
        acc = self.parse_factor()
        while self.peek() == "*":
            self.pos += 1
            acc = multiply(acc, self.parse_factor())
        return acc.scale(coeff)

    def parse_factor(self) -> NCPolynomial:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            a = self.parse_expr()
            if self.peek() != ",":
                self.error("expected ',' in commutator")
            self.pos += 1
            b = self.parse_expr()
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            return commutator(a, b)
        m = _NAME_RE.match(self.text, self.pos)
        if not m:
            self.error("expected generator, coefficient, or '['")
        name = m.group(0)
        if name not in self.alphabet.names:
            self.error(f"unknown generator {name!r}")
        self.pos = m.end()
        p = NCPolynomial.generator(self.alphabet, name)
        if self.text[self.pos:self.pos + 2] == "^2":
            self.pos += 2
            p = multiply(p, p)
        return p


def parse_expression(text: str, alphabet: Alphabet, lineno: int = 1) -> NCPolynomial:
    """Parse one DSL expression over the given alphabet."""
    return _ExprParser(text, lineno, alphabet).parse()


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_presentation(text: str) -> Presentation:
    """Parse DSL text into a Presentation; raises ParseError with position."""
    lines = text.splitlines()
    content = [
        (i + 1, _strip_comment(raw).strip())
        for i, raw in enumerate(lines)
        if _strip_comment(raw).strip()
    ]
    if not content:
        raise ParseError("empty presentation", 1, 1)
    it = iter(content)

    lineno, header = next(it)
    m = re.fullmatch(r"algebra\s+(\S+)\s+over\s+Q", header)
    if not m:
        raise ParseError("expected 'algebra <name> over Q'", lineno, 1)
    name = m.group(1)

    try:
        lineno, gens_line = next(it)
    except StopIteration:
        raise ParseError("missing generators line", lineno, 1) from None
    if not gens_line.startswith("generators"):
        raise ParseError("expected 'generators ...'", lineno, 1)
    gen_names = gens_line[len("generators"):].split()
    if not gen_names:
        raise ParseError("no generators listed", lineno, len("generators") + 1)
    for gname in gen_names:
        if not _NAME_RE.fullmatch(gname):
            raise ParseError(f"bad generator name {gname!r}", lineno, 1)
    try:
        alphabet = Alphabet(tuple(gen_names))
    except ValueError as e:
        raise ParseError(str(e), lineno, 1) from None

    try:
        lineno, rel_header = next(it)
    except StopIteration:
        raise ParseError("missing relations line", lineno, 1) from None
    if rel_header != "relations":
        raise ParseError("expected 'relations'", lineno, 1)

    relations = []
    for lineno, line in it:
        p = parse_expression(line, alphabet, lineno)
        if p.is_zero():
            raise ParseError("relation reduces to zero", lineno, 1)
        d = p.degree
        if d is None:
            raise ParseError("inhomogeneous relation", lineno, 1)
        if d < 2:
            raise ParseError(f"relation of degree {d} < 2", lineno, 1)
        relations.append(p)
    return Presentation(name, alphabet, tuple(relations), source="dsl")


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------

def _pair_name(prefix: str, i: int, j: int, n: int) -> str:
    if n <= 9:
        return f"{prefix}{i}{j}"
    return f"{prefix}{i}_{j}"


def _pair_alphabet(prefix: str, n: int) -> tuple[Alphabet, dict[tuple[int, int], int]]:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    names = tuple(_pair_name(prefix, i, j, n) for i, j in pairs)
    return Alphabet(names), {p: k for k, p in enumerate(pairs)}


def generator_pairs(p: Presentation) -> dict[str, tuple[int, int]]:
    """Map built-in generator names like ``x12`` / ``a3_10`` to index pairs."""
    out = {}
    for name in p.alphabet.names:
        m = re.fullmatch(r"[A-Za-z](\d)(\d)", name) or re.fullmatch(r"[A-Za-z](\d+)_(\d+)", name)
        if m:
            out[name] = (int(m.group(1)), int(m.group(2)))
    return out


def _exterior_relations(alphabet: Alphabet) -> list[NCPolynomial]:
    gens = [NCPolynomial.generator(alphabet, i) for i in range(len(alphabet))]
    rels = [multiply(v, v) for v in gens]
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            rels.append(multiply(gens[a], gens[b]) + multiply(gens[b], gens[a]))
    return rels


def mccool_cohomology(n: int) -> Presentation:
    """Cohomology algebra of the rank-n pure symmetric automorphism group.

    Exterior algebra on generators a_ij (i != j) modulo a_ij a_ji and the
    triple relations a_kj a_ji - a_kj a_ki + a_ij a_ki, encoded as a
    free-algebra presentation by adjoining squares and anticommutators.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    alphabet, idx = _pair_alphabet("a", n)
    a = {p: NCPolynomial.generator(alphabet, k) for p, k in idx.items()}
    rels = _exterior_relations(alphabet)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                rels.append(multiply(a[i, j], a[j, i]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if len({i, j, k}) == 3:
                    rels.append(
                        multiply(a[k, j], a[j, i])
                        - multiply(a[k, j], a[k, i])
                        + multiply(a[i, j], a[k, i])
                    )
    return Presentation(f"mccool{n}", alphabet, tuple(rels), source=f"builtin:mccool({n})")


def u_g(n: int) -> Presentation:
    """Enveloping algebra on x_ij: the quadratic dual of mccool_cohomology(n).

    Relations: [x_ij, x_ik + x_jk], [x_ik, x_jk] and [x_ij, x_kl] over
    distinct indices; n^2(n-1)(n-2)/2 relations in total.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    alphabet, idx = _pair_alphabet("x", n)
    x = {p: NCPolynomial.generator(alphabet, k) for p, k in idx.items()}
    rels = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for k in range(1, n + 1):
                if k not in (i, j):
                    rels.append(commutator(x[i, j], x[i, k] + x[j, k]))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                if k not in (i, j):
                    rels.append(commutator(x[i, k], x[j, k]))
    seen = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    if k == l or len({i, j, k, l}) != 4 or (k, l) <= (i, j):
                        continue
                    seen.append(commutator(x[i, j], x[k, l]))
    rels.extend(seen)
    return Presentation(f"ug{n}", alphabet, tuple(rels), source=f"builtin:ug({n})")


_UGMODH_RELATIONS = [
    ("x21", "x31"), ("x12", "x32"), ("x13", "x23"), ("x14", "x24"),
    ("x13", "x24"), ("x14", "x23"), ("x14", "x32"), ("x24", "x31"),
    ("x31", "x12+x32"), ("x32", "x21+x31"), ("x13", "x12+x32"), ("x23", "x21+x31"),
    ("x21", "x13+x23"), ("x12", "x13+x23"), ("x21", "x14+x24"), ("x12", "x14+x24"),
]


def u_g_mod_h() -> Presentation:
    """The eight-generator quotient of u_g(4) by the column-sum ideal."""
    names = ("x12", "x13", "x14", "x21", "x23", "x24", "x31", "x32")
    alphabet = Alphabet(names)
    rels = []
    for left, right in _UGMODH_RELATIONS:
        a = parse_expression(left, alphabet)
        b = parse_expression(right, alphabet)
        rels.append(commutator(a, b))
    return Presentation("ugmodh", alphabet, tuple(rels), source="builtin:ugmodh")


_UGMODH_DUAL_EXTRA = [
    "a12*a21", "a13*a31", "a23*a32", "a23*a24", "a13*a14", "a24*a32", "a14*a31",
    "a12*a31 - a21*a32 + a31*a32",
    "a13*a21 + a23*a31 + a21*a23",
    "a14*a21 + a21*a24",
    "a12*a13 - a12*a23 + a13*a32",
    "a12*a14 - a12*a24",
]


def u_g_mod_h_dual() -> Presentation:
    """Quadratic dual of u_g_mod_h: exterior algebra modulo twelve elements."""
    names = ("a12", "a13", "a14", "a21", "a23", "a24", "a31", "a32")
    alphabet = Alphabet(names)
    rels = _exterior_relations(alphabet)
    for expr in _UGMODH_DUAL_EXTRA:
        rels.append(parse_expression(expr, alphabet))
    return Presentation("ugmodh_dual", alphabet, tuple(rels), source="builtin:ugmodh-dual")


# ---------------------------------------------------------------------------
# Linear substitutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSubstitution:
    """Assignment of a degree-1 polynomial in the old generators to each new one."""

    new_alphabet: Alphabet
    images: tuple[NCPolynomial, ...]

    def __post_init__(self):
        if len(self.images) != len(self.new_alphabet):
            raise ValueError("one image per new generator required")
        for p in self.images:
            if p.is_zero() or p.degree != 1:
                raise ValueError("substitution images must be homogeneous of degree 1")
        if len({p.alphabet for p in self.images}) != 1:
            raise ValueError("images must share one source alphabet")

    @property
    def old_alphabet(self) -> Alphabet:
        return self.images[0].alphabet

    def matrix(self) -> list[list[Fraction]]:
        """Rows = new generators, columns = old generators."""
        g = len(self.old_alphabet)
        rows = []
        for p in self.images:
            row = [Fraction(0)] * g
            for w, c in p.terms().items():
                row[w[0]] = c
            rows.append(row)
        return rows


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        row += 1
    return [r[n:] for r in aug]


def _span_rank(rels: list[NCPolynomial]) -> int:
    """Rank of the span of homogeneous polynomials, degree by degree."""
    pivots: dict[Word, dict[Word, Fraction]] = {}
    rank = 0
    for r in rels:
        vec = dict(r.terms())
        while vec:
            lead = max(vec)
            if lead in pivots:
                c = vec[lead]
                for w, v in pivots[lead].items():
                    s = vec.get(w, 0) - c * v
                    if s:
                        vec[w] = s
                    else:
                        vec.pop(w, None)
            else:
                c = vec[lead]
                pivots[lead] = {w: v / c for w, v in vec.items()}
                rank += 1
                break
    return rank


def apply_substitution(p: Presentation, s: LinearSubstitution, name: str | None = None) -> Presentation:
    """Rewrite relations in the new generators; the relation span is preserved."""
    if s.old_alphabet != p.alphabet:
        raise ValueError("substitution source alphabet does not match the presentation")
    inv = _invert(s.matrix())
    if inv is None:
        raise ValueError("singular substitution matrix")
    new_gens = [NCPolynomial.generator(s.new_alphabet, a) for a in range(len(s.new_alphabet))]
    old_images = []
    for i in range(len(p.alphabet)):
        acc = NCPolynomial.zero(s.new_alphabet)
        for a, c in enumerate(inv[i]):
            if c:
                acc = acc + new_gens[a].scale(c)
        old_images.append(acc)
    new_rels = []
    for r in p.relations:
        acc = NCPolynomial.zero(s.new_alphabet)
        for w, c in r.terms().items():
            term = NCPolynomial.one(s.new_alphabet).scale(c)
            for i in w:
                term = multiply(term, old_images[i])
            acc = acc + term
        new_rels.append(acc)
    if _span_rank(list(p.relations)) != _span_rank(new_rels):
        raise ValueError("substitution changed the relation span rank")
    return Presentation(
        name or f"{p.name}_subst",
        s.new_alphabet,
        tuple(new_rels),
        source=f"derived:subst({p.name})",
    )


def column_sum_substitution(n: int) -> LinearSubstitution:
    """Change of variables X_j = sum over i of x_ij on u_g(n).

    X_j replaces the bottom generator of column j (x_nj for j < n and
    x_{n-1,n} for the last column); the remaining x_ij keep their names and
    are listed first, so the default order of the substituted presentation
    is x-generators in index order followed by X_1 > ... > X_n.
    """
    if n < 3:
        raise ValueError("the column-sum substitution needs n >= 3")
    source = u_g(n)
    pairs = generator_pairs(source)
    replaced = {(n, j) for j in range(1, n)} | {(n - 1, n)}
    kept = [name for name in source.alphabet.names if pairs[name] not in replaced]
    new_names = tuple(kept) + tuple(f"X{j}" for j in range(1, n + 1))
    new_alphabet = Alphabet(new_names)
    images = []
    for name in kept:
        images.append(source.generator(name))
    for j in range(1, n + 1):
        acc = NCPolynomial.zero(source.alphabet)
        for i in range(1, n + 1):
            if i != j:
                acc = acc + source.generator(_pair_name("x", i, j, n))
        images.append(acc)
    return LinearSubstitution(new_alphabet, tuple(images))


def substituted_u_g(n: int) -> Presentation:
    """u_g(n) rewritten through column_sum_substitution(n)."""
    return apply_substitution(u_g(n), column_sum_substitution(n), name=f"ug{n}_X")


BUILTIN_FAMILIES = {
    "mccool": mccool_cohomology,
    "ug": u_g,
    "ugmodh": u_g_mod_h,
    "ugmodh-dual": u_g_mod_h_dual,
}
