"""Free associative algebra over an exact coefficient ring, with an
oriented-quadratic-rule rewriting engine.

Words are tuples of ``GeneratorId``; the monomial order is degree first,
then lexicographic with the generators ordered row-major
(u11 < u12 < ... < u1n < u21 < ... < unn).  Every rewrite rule replaces a
two-letter word by a polynomial that is strictly smaller in this order, so
rewriting terminates; confluence is validated empirically by graded
dimension counts and overlap tests rather than proven.

Reduction strategy is leftmost redex first, which makes normal forms
deterministic.  Single-word normal forms are memoized per rewrite system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from .coeff import LAURENT


class GeneratorId(NamedTuple):
    row: int
    col: int
    leg: str = "single"  # left/right used only positionally inside tensors


NcMonomial = tuple  # tuple[GeneratorId, ...]


def gen(i: int, j: int) -> GeneratorId:
    return GeneratorId(i, j)


def word_key(w: NcMonomial):
    """Sort key realizing the degree-then-row-major-lex monomial order."""
    return (len(w), w)


class NcPolynomial:
    """Finite linear combination of words, over a fixed coefficient ring.

    Terms map words to nonzero scalars; the ring handle travels with the
    polynomial and mixing rings raises.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[tuple(w)] = c
        self._terms = clean

    @classmethod
    def zero(cls, ring=LAURENT):
        return cls(ring)

    @classmethod
    def one(cls, ring=LAURENT):
        return cls(ring, {(): ring.one()})

    @classmethod
    def generator(cls, i: int, j: int, ring=LAURENT):
        return cls(ring, {(gen(i, j),): ring.one()})

    @classmethod
    def monomial(cls, word, coeff=None, ring=LAURENT):
        c = ring.one() if coeff is None else ring.coerce(coeff)
        return cls(ring, {tuple(word): c})

    def items(self):
        return self._terms.items()

    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("coefficient ring mismatch")

    def __neg__(self):
        return NcPolynomial(self.ring, {w: -c for w, c in self._terms.items()})

    def __add__(self, other):
        self._check_ring(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NcPolynomial(self.ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NcPolynomial):
            return self.scale(other)
        self._check_ring(other)
        out = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NcPolynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.ring.coerce(c)
        if not c:
            return NcPolynomial(self.ring)
        return NcPolynomial(self.ring, {w: cc * c for w, cc in self._terms.items()})

    def leading_word(self) -> NcMonomial:
        return max(self._terms, key=word_key)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(len(w) for w in self._terms)

    def map_coefficients(self, fn, ring):
        """Apply a ring map term by term, dropping coefficients sent to zero."""
        return NcPolynomial(ring, {w: v for w, c in self._terms.items() if (v := fn(c))})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for w in sorted(self._terms, key=word_key):
            c = self._terms[w]
            mono = "*".join(f"u[{g.row},{g.col}]" for g in w) or "1"
            parts.append(f"({c!r})*{mono}")
        return " + ".join(parts)


def multiply(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    """Bilinear extension of word concatenation."""
    return p * q


@dataclass(frozen=True)
class RewriteRule:
    """lhs (a two-letter word) rewrites to rhs, strictly smaller in the order."""

    lhs: NcMonomial
    rhs: NcPolynomial

    def __post_init__(self):
        if len(self.lhs) != 2:
            raise ValueError("rule leading word must have length 2")
        for w in self.rhs.terms():
            if word_key(w) >= word_key(self.lhs):
                raise ValueError(f"rule rhs term {w} does not precede lhs {self.lhs}")


@dataclass
class RewriteSystem:
    """Oriented quadratic rules with the row-major degree-lex order."""

    n: int
    ring: object = LAURENT
    rules: dict = field(default_factory=dict)  # two-letter word -> RewriteRule
    memoize: bool = True
    _nf_cache: dict = field(default_factory=dict, repr=False)

    def install(self, rule: RewriteRule):
        if rule.lhs in self.rules:
            raise ValueError(f"duplicate rule for leading word {rule.lhs}")
        self.rules[rule.lhs] = rule
        self._nf_cache.clear()

    def generators(self):
        return [gen(i, j) for i in range(1, self.n + 1) for j in range(1, self.n + 1)]

    def reduce_word(self, word: NcMonomial) -> NcPolynomial:
        """Normal form of a single word."""
        if self.memoize:
            cached = self._nf_cache.get(word)
            if cached is not None:
                return cached
        ring = self.ring
        pending = {word: ring.one()}
        result = {}
        rules = self.rules
        while pending:
            w, c = pending.popitem()
            for pos in range(len(w) - 1):
                rule = rules.get(w[pos:pos + 2])
                if rule is None:
                    continue
                head, tail = w[:pos], w[pos + 2:]
                for w2, c2 in rule.rhs.items():
                    nw = head + w2 + tail
                    nc = c * c2
                    s = pending.get(nw)
                    s = nc if s is None else s + nc
                    if s:
                        pending[nw] = s
                    else:
                        pending.pop(nw, None)
                break
            else:
                s = result.get(w)
                s = c if s is None else s + c
                if s:
                    result[w] = s
                else:
                    result.pop(w, None)
        out = NcPolynomial(ring, result)
        if self.memoize:
            self._nf_cache[word] = out
        return out

    def normal_form(self, p: NcPolynomial) -> NcPolynomial:
        out = NcPolynomial(p.ring)
        for w, c in p.items():
            out = out + self.reduce_word(w).scale(c)
        return out

    def is_normal_word(self, w: NcMonomial) -> bool:
        return not any(w[i:i + 2] in self.rules for i in range(len(w) - 1))


def normal_form(p: NcPolynomial, rs: RewriteSystem) -> NcPolynomial:
    for g in {g for w in p.terms() for g in w}:
        if not (1 <= g.row <= rs.n and 1 <= g.col <= rs.n):
            raise ValueError(f"generator {g} outside rank {rs.n}")
    return rs.normal_form(p)


def compile_rules(relations, rs: RewriteSystem):
    """Orient relations into rules, reducing each against those already kept.

    Returns the independent monic relations that produced rules.  Raises if
    a reduced relation cannot be oriented (inconsistent completion) -- for
    the quantum-matrix relations this signals an expansion bug, not a math
    gap.
    """
    kept = []
    for rel in relations:
        rel = rs.normal_form(rel)
        if rel.is_zero():
            continue
        lead = rel.leading_word()
        if len(lead) != 2:
            raise ValueError(f"completion produced a non-quadratic lead {lead}")
        monic = rel.scale(rel.terms()[lead].inverse())
        rhs = NcPolynomial(rs.ring, {w: -c for w, c in monic.items() if w != lead})
        rs.install(RewriteRule(lead, rhs))
        kept.append(monic)
    return kept


def graded_dimension(rs: RewriteSystem, d: int) -> int:
    """Number of degree-d words containing no rule leading word.

    Counts paths in the allowed-adjacency graph, so it stays cheap even for
    depths where enumeration would blow up.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    gens = rs.generators()
    if d == 0:
        return 1
    counts = {g: 1 for g in gens}  # valid words of current length ending in g
    for _ in range(d - 1):
        counts = {g2: sum(c for g1, c in counts.items() if (g1, g2) not in rs.rules)
                  for g2 in gens}
    return sum(counts.values())


class TensorElement:
    """Linear combination of pairs of words; both legs kept in normal form."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for (wl, wr), c in terms.items():
                if c:
                    clean[(tuple(wl), tuple(wr))] = c
        self._terms = clean

    @classmethod
    def unit(cls, ring=LAURENT):
        return cls(ring, {((), ()): ring.one()})

    @classmethod
    def of(cls, left: NcPolynomial, right: NcPolynomial):
        if left.ring != right.ring:
            raise ValueError("coefficient ring mismatch")
        out = {}
        for wl, cl in left.items():
            for wr, cr in right.items():
                out[(wl, wr)] = cl * cr
        return cls(left.ring, out)

    def items(self):
        return self._terms.items()

    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __add__(self, other):
        if self.ring != other.ring:
            raise ValueError("coefficient ring mismatch")
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement(self.ring, out)

    def __neg__(self):
        return TensorElement(self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.coerce(c)
        if not c:
            return TensorElement(self.ring)
        return TensorElement(self.ring, {k: cc * c for k, cc in self._terms.items()})

    def map_legs(self, reduce_poly):
        """Re-express through a leg normalizer word -> NcPolynomial."""
        out = TensorElement(self.ring)
        for (wl, wr), c in self._terms.items():
            pl = reduce_poly(wl)
            pr = reduce_poly(wr)
            piece = {}
            for w1, c1 in pl.items():
                for w2, c2 in pr.items():
                    piece[(w1, w2)] = c1 * c2 * c
            out = out + TensorElement(self.ring, piece)
        return out

    def __repr__(self):
        if not self._terms:
            return "0"
        def mono(w):
            return "*".join(f"u[{g.row},{g.col}]" for g in w) or "1"
        parts = [f"({c!r})*{mono(wl)} (x) {mono(wr)}"
                 for (wl, wr), c in sorted(self._terms.items())]
        return " + ".join(parts)


def tensor_multiply(s: TensorElement, t: TensorElement, rs: RewriteSystem) -> TensorElement:
    """Componentwise product in the tensor square, legs re-normalized.

    Plain algebras, no sign rule.
    """
    if s.ring != t.ring:
        raise ValueError("coefficient ring mismatch")
    out = {}
    for (al, ar), c1 in s.items():
        for (bl, br), c2 in t.items():
            k = (al + bl, ar + br)
            c = c1 * c2
            prev = out.get(k)
            prev = c if prev is None else prev + c
            if prev:
                out[k] = prev
            else:
                out.pop(k, None)
    raw = TensorElement(s.ring, out)
    return raw.map_legs(rs.reduce_word)


def enumerate_words(rs: RewriteSystem, d: int):
    """All normal-form words of exact degree d (test helper; small d only)."""
    gens = rs.generators()
    frontier = [()]
    for _ in range(d):
        frontier = [w + (g,) for w in frontier for g in gens
                    if not w or (w[-1], g) not in rs.rules]
    return frontier
