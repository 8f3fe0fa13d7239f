"""The quantum matrix algebra O_q(M(n)).

The defining relations are derived entrywise from the exchange relation
(u (x) u) R = R (u (x) u) with the standard braiding-type R-matrix

    R^{ij}_{lk} = q^{-1/n} ( q^{d(i,j)} d(j,k) d(i,l)
                             + (q - q^{-1}) [j < i] d(j,l) d(i,k) )

stored under the index quadruple (i, j, l, k); d is the Kronecker delta.
In the entry contraction the written upper pair of an R symbol pairs with
the second legs, i.e. R^{ab}_{jl} is looked up at (b, a, j, l) -- the one
reading under which the relation family presents a flat deformation
(graded dimensions match the commutative count) with the quantum
determinant central.  Both facts are enforced at build time / in tests
rather than taken on faith.

Exponent bookkeeping: q = v^(2n), so q^{-1/n} = v^{-2} and all entries are
exact Laurent monomials or binomials in v.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .coeff import LAURENT, LaurentScalar
from .ncalg import (
    NcPolynomial,
    RewriteSystem,
    compile_rules,
    gen,
    graded_dimension,
)


@dataclass(frozen=True)
class RMatrix:
    n: int
    entries: dict  # (i, j, l, k) -> nonzero LaurentScalar

    def entry(self, i, j, l, k) -> LaurentScalar:
        return self.entries.get((i, j, l, k), LaurentScalar.zero())


def r_matrix(n: int) -> RMatrix:
    """Entries of the rank-n exchange matrix, exact in v."""
    if n < 1:
        raise ValueError("rank must be positive")
    prefactor = -2  # v-exponent of q^{-1/n}
    q = LaurentScalar.v_power(2 * n)
    q_minus_qinv = q - LaurentScalar.v_power(-2 * n)
    entries = {}
    for i, j, l, k in itertools.product(range(1, n + 1), repeat=4):
        val = LaurentScalar.zero()
        if j == k and i == l:
            val = val + (LaurentScalar.v_power(prefactor + 2 * n) if i == j
                         else LaurentScalar.v_power(prefactor))
        if j < i and j == l and i == k:
            val = val + LaurentScalar.v_power(prefactor) * q_minus_qinv
        if val:
            entries[(i, j, l, k)] = val
    return RMatrix(n, entries)


def _entrywise_relations(n: int):
    """All n^4 entry relations of (u (x) u) R = R (u (x) u), zeros dropped.

    The common q^{-1/n} prefactor is cancelled by scaling with v^2.
    """
    R = r_matrix(n)
    cancel = LaurentScalar.v_power(2)
    rels = []
    for i, k, j, l in itertools.product(range(1, n + 1), repeat=4):
        terms = {}
        for a, b in itertools.product(range(1, n + 1), repeat=2):
            cL = R.entries.get((b, a, j, l))
            if cL is not None:
                w = (gen(i, a), gen(k, b))
                terms[w] = terms.get(w, LaurentScalar.zero()) + cL * cancel
            cR = R.entries.get((k, i, a, b))
            if cR is not None:
                w = (gen(a, j), gen(b, l))
                terms[w] = terms.get(w, LaurentScalar.zero()) - cR * cancel
        rel = NcPolynomial(LAURENT, terms)
        if not rel.is_zero():
            rels.append(rel)
    return rels


def frt_relations(n: int) -> list:
    """Independent monic quadratic relations of O_q(M(n)).

    Entrywise relations are reduced against the ones already accepted; a
    relation is kept iff its reduction is nonzero, scaled monic.
    """
    rs = RewriteSystem(n)
    return compile_rules(_entrywise_relations(n), rs)


@dataclass
class QMatrixAlgebra:
    n: int
    system: RewriteSystem
    relations: list  # independent monic defining relations


def build_algebra(n: int, validation_depth: int = 3) -> QMatrixAlgebra:
    """Build the rewrite system and validate it is a flat deformation.

    Every raw entry relation must reduce to zero and the graded dimensions
    must match the commutative monomial count up to validation_depth.
    """
    rs = RewriteSystem(n)
    raw = _entrywise_relations(n)
    kept = compile_rules(raw, rs)
    expected_rules = n * n * (n * n - 1) // 2
    if len(rs.rules) != expected_rules:
        raise ArithmeticError(
            f"rank {n}: got {len(rs.rules)} rules, expected {expected_rules}")
    for rel in raw:
        if not rs.normal_form(rel).is_zero():
            raise ArithmeticError("a raw exchange relation does not reduce to zero")
    for d in range(validation_depth + 1):
        want = math.comb(n * n + d - 1, d)
        got = graded_dimension(rs, d)
        if got != want:
            raise ArithmeticError(
                f"graded dimension mismatch at degree {d}: {got} != {want}")
    return QMatrixAlgebra(n, rs, kept)


def permutation_length(sigma) -> int:
    """Number of inversions of a permutation given as a tuple of images."""
    return sum(1 for a in range(len(sigma)) for b in range(a + 1, len(sigma))
               if sigma[a] > sigma[b])


def quantum_det(n: int, form: str = "column", ring=LAURENT) -> NcPolynomial:
    """sum over permutations of (-q)^length times the ordered product.

    Column form uses u_{1,s(1)}...u_{n,s(n)}, row form u_{s(1),1}...u_{s(n),n};
    both reduce to the same normal form.
    """
    return _submatrix_det(list(range(1, n + 1)), list(range(1, n + 1)), n, form, ring)


def _submatrix_det(rows, cols, n, form="column", ring=LAURENT):
    terms = {}
    k = len(rows)
    for sigma in itertools.permutations(range(k)):
        le = permutation_length(sigma)
        coeff = ring.coerce(LaurentScalar.v_power(2 * n * le, (-1) ** (le % 2)))
        if form == "column":
            word = tuple(gen(rows[t], cols[sigma[t]]) for t in range(k))
        elif form == "row":
            word = tuple(gen(rows[sigma[t]], cols[t]) for t in range(k))
        else:
            raise ValueError(f"unknown determinant form {form!r}")
        terms[word] = coeff
    return NcPolynomial(ring, terms)


def quantum_minor(n: int, removed_rows, removed_cols, ring=LAURENT) -> NcPolynomial:
    """det_q of the submatrix retained after removing the given rows/columns."""
    removed_rows = set(removed_rows)
    removed_cols = set(removed_cols)
    if len(removed_rows) != len(removed_cols):
        raise ValueError("must remove equally many rows and columns")
    rows = [i for i in range(1, n + 1) if i not in removed_rows]
    cols = [j for j in range(1, n + 1) if j not in removed_cols]
    return _submatrix_det(rows, cols, n, "column", ring)


def is_central(p: NcPolynomial, alg: QMatrixAlgebra) -> bool:
    """True iff p commutes with every generator after reduction."""
    rs = alg.system
    for g in rs.generators():
        ug = NcPolynomial.monomial((g,), ring=p.ring)
        if not rs.normal_form(p * ug - ug * p).is_zero():
            return False
    return True
