"""Quadratic-algebra data: duals, the series Koszulity test, PBW checks,
and quadratic closures of subalgebras.

The relation space of a quadratic presentation is kept as a canonical
reduced echelon matrix over Q in the g^2-dimensional word basis, ordered
lexicographically by (first index, second index).  Canonical form makes
subspace comparisons plain equalities, and the quadratic dual is the
nullspace under the pairing <x_i* x_j*, x_k x_l> = delta_ik delta_jl.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Alphabet, MonomialOrder, NCPolynomial, Word, _wrap
from .groebner import Ambiguity, GroebnerBasis, compute_gb, find_ambiguities
from .hilbert import HilbertSeries
from .linalg import Echelon, nullspace
from .presentations import Presentation

Row = tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class QuadraticData:
    """Canonical echelon basis of the degree-2 relation span."""

    algebra: str
    alphabet: Alphabet
    rows: tuple[Row, ...]

    @property
    def g(self) -> int:
        return len(self.alphabet)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def row_polynomials(self) -> list[NCPolynomial]:
        g = self.g
        out = []
        for row in self.rows:
            terms = {bytes((c // g, c % g)): v for c, v in row}
            out.append(_wrap(self.alphabet, terms))
        return out


def _canonical_rows(vectors: list[dict[int, Fraction]]) -> tuple[Row, ...]:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    ech.backsubstitute()
    rows = []
    for lead in sorted(ech.pivots, reverse=True):
        row = ech.pivots[lead]
        rows.append(tuple(sorted(row.items(), reverse=True)))
    return tuple(rows)


def quadratic_data(p: Presentation) -> QuadraticData:
    """Row-reduced relation span; rejects non-quadratic presentations."""
    g = p.n_generators
    vectors = []
    for r in p.relations:
        if r.degree != 2:
            raise ValueError(f"non-quadratic relation of degree {r.degree}")
        vectors.append({w[0] * g + w[1]: c for w, c in r.terms().items()})
    return QuadraticData(p.name, p.alphabet, _canonical_rows(vectors))


def _dual_names(alphabet: Alphabet) -> tuple[str, ...]:
    def swap(n: str) -> str:
        if n.startswith("x"):
            return "a" + n[1:]
        if n.startswith("a"):
            return "x" + n[1:]
        return n + "!"

    names = tuple(swap(n) for n in alphabet.names)
    if len(set(names)) != len(names):
        names = tuple(n + "!" for n in alphabet.names)
    return names


def quadratic_dual(q: QuadraticData, name: str | None = None) -> Presentation:
    """Presentation of the dual algebra on dual generators.

    The dual relation space is the annihilator of the relation span under
    the untwisted pairing; its rank is g^2 - rank(q).
    """
    g = q.g
    rows = [dict(r) for r in q.rows]
    columns = list(range(g * g))
    null = nullspace(rows, columns)
    dual_alpha = Alphabet(_dual_names(q.alphabet))
    canon = _canonical_rows(null)
    assert len(canon) == g * g - q.rank
    rels = []
    for row in canon:
        terms = {bytes((c // g, c % g)): v for c, v in row}
        rels.append(_wrap(dual_alpha, terms))
    return Presentation(
        name or f"{q.algebra}!",
        dual_alpha,
        tuple(rels),
        source=f"derived:dual({q.algebra})",
    )


@dataclass(frozen=True)
class KoszulDefectReport:
    """Coefficients of h_A(t) * h_dual(-t) and the first nonzero index."""

    truncation: int
    coefficients: tuple[int, ...]
    first_defect: int | None
    conclusive: bool

    def __post_init__(self):
        if self.coefficients and self.coefficients[0] != 1:
            raise ValueError("product series must start at 1")


def koszul_series_test(hA: HilbertSeries, hDual: HilbertSeries,
                       max_degree: int) -> KoszulDefectReport:
    """Check h_A(t) * h_dual(-t) = 1 through max_degree.

    A nonzero coefficient proves the algebra is not Koszul.  No defect is
    inconclusive in general, but becomes a Koszulity certificate when the
    dual vanishes in degree 3; the ``conclusive`` flag records that.
    """
    if hA.truncation < max_degree or hDual.truncation < max_degree:
        raise ValueError("insufficient series truncation for the requested degree")
    coeffs = []
    for d in range(max_degree + 1):
        c = 0
        for k in range(d + 1):
            if (d - k) % 2:
                c -= hA[k] * hDual[d - k]
            else:
                c += hA[k] * hDual[d - k]
        coeffs.append(c)
    first = next((d for d in range(1, max_degree + 1) if coeffs[d]), None)
    conclusive = hDual.truncation >= 3 and hDual[3] == 0
    return KoszulDefectReport(max_degree, tuple(coeffs), first, conclusive)


@dataclass(frozen=True)
class PBWReport:
    """Outcome of the quadratic-Groebner-basis test for one order."""

    is_pbw: bool
    order_spec: str
    obstructions: tuple[Word, ...]
    ambiguity: Ambiguity | None
    witness: NCPolynomial | None

    def __bool__(self):
        return self.is_pbw


def pbw_check(p: Presentation, order: MonomialOrder | None = None) -> PBWReport:
    """True iff degree-3 completion adds nothing for this order.

    All degree-3 S-polynomials reducing to zero certifies a quadratic
    Groebner basis, hence a PBW algebra (and Koszulity).  On failure the
    report carries one non-resolving ambiguity and its nonzero reduced
    form.  The verdict applies to the tested order only.
    """
    if not p.is_quadratic():
        raise ValueError("pbw_check needs a quadratic presentation")
    if order is None:
        order = p.default_order()
    gb2 = compute_gb(p, order, max_degree=2)
    reducer = gb2._reducer
    encode_obs = [order.encode(w) for w in gb2.obstructions]
    for amb in find_ambiguities(gb2.obstructions, 3):
        if amb.kind(gb2.obstructions) != "overlap":
            continue
        word = order.encode(amb.word)
        ri = reducer.leads.index(encode_obs[amb.first])
        rj = reducer.leads.index(encode_obs[amb.second])
        spoly = reducer.spoly(word, ri, rj)
        out, _ = reducer.reduce(spoly)
        if out:
            decode = order.decode
            lead = max(out, key=lambda w: (len(w), w))
            lc = Fraction(out[lead])
            witness = _wrap(p.alphabet, {decode(w): Fraction(c) / lc for w, c in out.items()})
            return PBWReport(False, order.spec(), gb2.obstructions, amb, witness)
    return PBWReport(True, order.spec(), gb2.obstructions, None, None)


def quadratic_closure_subalgebra(ambient: GroebnerBasis, subgens: list[NCPolynomial],
                                 name: str | None = None) -> Presentation:
    """Quadratic closure of the subalgebra generated by degree-1 elements.

    Relations are a canonical basis of the kernel of y_a y_b ->
    normal_form(s_a * s_b) into the ambient degree-2 component: every
    quadratic relation the chosen elements satisfy, and nothing else.
    """
    if ambient.truncation < 2:
        raise ValueError("ambient basis must be truncated at degree >= 2")
    alphabet = ambient.presentation.alphabet
    ech = Echelon()
    for s in subgens:
        if s.alphabet != alphabet:
            raise ValueError("subalgebra generators over a different alphabet")
        if s.degree != 1:
            raise ValueError("subalgebra generators must be homogeneous of degree 1")
        if ech.add({w[0]: c for w, c in s.terms().items()}) is None:
            raise ValueError("dependent subalgebra generators")
    k = len(subgens)

    def gen_name(s: NCPolynomial) -> str | None:
        terms = s.terms()
        if len(terms) == 1:
            (w, c), = terms.items()
            if c == 1:
                return alphabet.names[w[0]]
        return None

    names = [gen_name(s) for s in subgens]
    if None in names or len(set(names)) != k:
        names = [f"y{a + 1}" for a in range(k)]
    sub_alpha = Alphabet(tuple(names))

    # one linear condition per ambient normal word of degree 2
    conditions: dict[Word, dict[int, Fraction]] = {}
    for a in range(k):
        for b in range(k):
            nf = ambient.normal_form(subgens[a] * subgens[b])
            for w, c in nf.terms().items():
                conditions.setdefault(w, {})[a * k + b] = c
    null = nullspace([conditions[w] for w in sorted(conditions)], list(range(k * k)))
    canon = _canonical_rows(null)
    rels = []
    for row in canon:
        terms = {bytes((c // k, c % k)): v for c, v in row}
        rels.append(_wrap(sub_alpha, terms))
    return Presentation(
        name or f"closure_{ambient.presentation.name}",
        sub_alpha,
        tuple(rels),
        source=f"derived:closure({ambient.presentation.name})",
    )
