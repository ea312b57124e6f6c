"""Verification of algebra homomorphisms given on generators.

A morphism assigns each source generator a degree-1 polynomial (or zero)
in the target generators.  It is a well-defined algebra map iff the image
of every defining relation reduces to zero in the target, which is checked
against a truncated Groebner basis of the target; quadratic relations only
need truncation 2.

The morphism file format is one line per source generator::

    x12 -> x12
    x14 -> 0
    X1  -> x21 + x31
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import NCPolynomial, multiply
from .groebner import GroebnerBasis
from .presentations import Presentation, generator_pairs, parse_expression


@dataclass(frozen=True)
class MorphismSpec:
    """Generator-to-polynomial assignment between presented algebras."""

    source: Presentation
    target: Presentation
    images: tuple[NCPolynomial, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n_generators:
            raise ValueError("one image per source generator required")
        for img in self.images:
            if img.alphabet != self.target.alphabet:
                raise ValueError("image over a different alphabet than the target")
            if not img.is_zero() and img.degree != 1:
                raise ValueError("images must be zero or homogeneous of degree 1")

    def image_of(self, name: str) -> NCPolynomial:
        return self.images[self.source.alphabet.index(name)]

    def apply(self, p: NCPolynomial) -> NCPolynomial:
        """Substitute generator images, extended multiplicatively."""
        if p.alphabet != self.source.alphabet:
            raise ValueError("polynomial over a different alphabet than the source")
        acc = NCPolynomial.zero(self.target.alphabet)
        for w, c in p.terms().items():
            term = NCPolynomial.one(self.target.alphabet).scale(c)
            for i in w:
                term = multiply(term, self.images[i])
                if term.is_zero():
                    break
            acc = acc + term
        return acc

    def to_text(self) -> str:
        lines = []
        for name, img in zip(self.source.alphabet.names, self.images):
            lines.append(f"{name} -> {img.to_str() if img else '0'}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    relation: NCPolynomial | None = None
    image_normal_form: NCPolynomial | None = None

    def __bool__(self):
        return self.ok


def identity_morphism(p: Presentation) -> MorphismSpec:
    images = tuple(NCPolynomial.generator(p.alphabet, i) for i in range(p.n_generators))
    return MorphismSpec(p, p, images)


def parse_morphism(text: str, source: Presentation, target: Presentation) -> MorphismSpec:
    """Parse ``gen -> expr`` lines; every source generator exactly once."""
    assignments: dict[str, NCPolynomial] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: expected 'generator -> expression'")
        left, right = line.split("->", 1)
        name = left.strip()
        if name not in source.alphabet.names:
            raise ValueError(f"line {lineno}: unknown source generator {name!r}")
        if name in assignments:
            raise ValueError(f"line {lineno}: generator {name!r} assigned twice")
        expr = right.strip()
        if expr == "0":
            assignments[name] = NCPolynomial.zero(target.alphabet)
        else:
            assignments[name] = parse_expression(expr, target.alphabet, lineno)
    missing = [n for n in source.alphabet.names if n not in assignments]
    if missing:
        raise ValueError(f"unassigned source generators: {', '.join(missing)}")
    images = tuple(assignments[n] for n in source.alphabet.names)
    return MorphismSpec(source, target, images)


def verify_morphism(m: MorphismSpec, target_gb: GroebnerBasis) -> MorphismReport:
    """True iff every source relation maps to zero in the target algebra."""
    if target_gb.presentation.alphabet != m.target.alphabet:
        raise ValueError("alphabet mismatch between morphism target and basis")
    if target_gb.truncation < 2:
        raise ValueError("target basis must be truncated at degree >= 2")
    for r in m.source.relations:
        if r.degree > target_gb.truncation:
            raise ValueError(
                f"relation degree {r.degree} exceeds target basis truncation")
        nf = target_gb.normal_form(m.apply(r))
        if not nf.is_zero():
            return MorphismReport(False, r, nf)
    return MorphismReport(True)


def compose(f: MorphismSpec, g: MorphismSpec) -> MorphismSpec:
    """Apply f, then g; defined when f.target equals g.source."""
    if f.target.alphabet != g.source.alphabet:
        raise ValueError("chain mismatch: f.target differs from g.source")
    images = tuple(g.apply(img) for img in f.images)
    return MorphismSpec(f.source, g.target, images)


def verify_splitting(section: MorphismSpec, retraction: MorphismSpec,
                     gb: GroebnerBasis, generators: list[str] | None = None) -> bool:
    """Check that retraction . section fixes the listed generators.

    With ``generators`` None every generator of the section's source must
    return to itself, i.e. the composite is the identity; a subset restricts
    the check to the subalgebra those generators span.
    """
    composite = compose(section, retraction)
    if composite.target.alphabet != composite.source.alphabet:
        raise ValueError("chain mismatch: composite is not an endomorphism")
    if gb.presentation.alphabet != composite.source.alphabet:
        raise ValueError("alphabet mismatch between composite and basis")
    names = generators if generators is not None else list(composite.source.alphabet.names)
    for name in names:
        x = NCPolynomial.generator(composite.source.alphabet, name)
        nf = gb.normal_form(composite.image_of(name) - x)
        if not nf.is_zero():
            return False
    return True


def permutation_automorphism(p: Presentation, sigma: dict[int, int]) -> MorphismSpec:
    """The index action x_ij -> x_sigma(i)sigma(j) on a pair-indexed presentation."""
    pairs = generator_pairs(p)
    if len(pairs) != p.n_generators:
        raise ValueError("presentation generators are not pair-indexed")
    name_of = {pair: name for name, pair in pairs.items()}
    images = []
    for name in p.alphabet.names:
        i, j = pairs[name]
        si, sj = sigma.get(i, i), sigma.get(j, j)
        if (si, sj) not in name_of:
            raise ValueError(f"permutation leaves the generator set: ({si},{sj})")
        images.append(NCPolynomial.generator(p.alphabet, name_of[si, sj]))
    return MorphismSpec(p, p, tuple(images))
