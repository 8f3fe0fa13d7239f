"""The Hopf algebra O_q(SLn) = O_q(M(n)) / (det_q - 1).

Normal forms land in the PBW basis indexed by exponent matrices with at
least one zero diagonal entry.  A quantum-matrix normal monomial b(m)
whose diagonal entries are all >= 1 is eliminated through

    b(m - Id) * det_q  ==  lam * b(m) + rest        (in O_q(M(n)))
    =>  b(m)  ==  lam^{-1} * (b(m - Id) - rest)     (mod det_q - 1)

where lam is a unit; the substitution is congruence-correct by
construction, and canonicity of the resulting representative is certified
by the Hopf-axiom and centrality suites rather than proven.  A step budget
guards termination.  A filtered linear-algebra reduction over the same
ideal slice is available as an independent cross-check
(``sln_normal_form_linear``).

The coproduct, counit and antipode are the standard matrix-bialgebra
structure maps: Delta(u_ij) = sum_k u_ik (x) u_kj, eps(u_ij) = delta_ij,
S(u_ij) = (-q)^{i-j} det_q of the submatrix omitting row j and column i.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .coeff import LAURENT, CyclotomicRing, LaurentScalar, specialize
from .ncalg import (
    NcPolynomial,
    RewriteRule,
    RewriteSystem,
    TensorElement,
    gen,
    word_key,
)
from .qmatrix import QMatrixAlgebra, build_algebra, quantum_det, quantum_minor

DEFAULT_STEP_BUDGET = 2_000_000


def exponent_matrix(n: int, word) -> tuple:
    """Row-major exponent matrix of a (weakly increasing) word."""
    m = [[0] * n for _ in range(n)]
    for g in word:
        m[g.row - 1][g.col - 1] += 1
    return tuple(tuple(r) for r in m)


def word_of_matrix(mat) -> tuple:
    n = len(mat)
    out = []
    for i in range(n):
        for j in range(n):
            out.extend([gen(i + 1, j + 1)] * mat[i][j])
    return tuple(out)


def min_diagonal(mat) -> int:
    return min(mat[i][i] for i in range(len(mat)))


def is_basis_word(n: int, word) -> bool:
    return min_diagonal(exponent_matrix(n, word)) == 0


@dataclass
class SlnAlgebra:
    base: QMatrixAlgebra
    det_expansion: NcPolynomial  # normal form of det_q
    validation_depth: int = 3
    step_budget: int = DEFAULT_STEP_BUDGET
    _word_cache: dict = field(default_factory=dict, repr=False)
    _antipode_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def ring(self):
        return self.base.system.ring


def sln_algebra(n: int, validation_depth: int = 3, step_budget: int | None = None) -> SlnAlgebra:
    """Build O_q(SLn) over the universal Laurent ring."""
    base = build_algebra(n, validation_depth)
    det = base.system.normal_form(quantum_det(n))
    if step_budget is None:
        step_budget = int(os.environ.get("QCOORD_STEP_BUDGET", DEFAULT_STEP_BUDGET))
    alg = SlnAlgebra(base, det, validation_depth, step_budget)
    if counit(det, alg) != alg.ring.one():
        raise ArithmeticError("counit of det_q is not 1")
    return alg


def specialize_sln(alg: SlnAlgebra, m: int) -> SlnAlgebra:
    """Push a Laurent-coefficient algebra through v -> zeta_m.

    Ring maps preserve rule validity; rhs terms whose coefficients vanish
    at the root of unity are simply dropped.
    """
    ring = CyclotomicRing(m)
    fn = lambda c: specialize(c, m)
    rs = RewriteSystem(alg.n, ring)
    for lhs, rule in alg.base.system.rules.items():
        rs.install(RewriteRule(lhs, rule.rhs.map_coefficients(fn, ring)))
    base = QMatrixAlgebra(alg.n, rs,
                          [r.map_coefficients(fn, ring) for r in alg.base.relations])
    det = alg.det_expansion.map_coefficients(fn, ring)
    return SlnAlgebra(base, det, alg.validation_depth, alg.step_budget)


def _replacement(alg: SlnAlgebra, w) -> dict:
    """One elimination step for a full-diagonal normal word.

    From b(m - Id) * det_q == lam * b(m) + rest, return the coefficient map
    of lam^{-1} * (b(m - Id) - rest).
    """
    n, rs, ring = alg.n, alg.base.system, alg.ring
    mat = exponent_matrix(n, w)
    lower = tuple(tuple(mat[i][j] - (1 if i == j else 0) for j in range(n))
                  for i in range(n))
    w1 = word_of_matrix(lower)
    prod = rs.normal_form(NcPolynomial.monomial(w1, ring=ring) * alg.det_expansion)
    terms = prod.terms()
    lam = terms.pop(w, None)
    if lam is None or not lam:
        raise ArithmeticError("det_q multiplication lost the target monomial")
    lam_inv = lam.inverse()
    repl = {w2: -(c * lam_inv) for w2, c in terms.items()}
    prev = repl.get(w1, ring.zero())
    s = prev + lam_inv
    if s:
        repl[w1] = s
    else:
        repl.pop(w1, None)
    return repl


def _reduce_basis_word(alg: SlnAlgebra, word, budget) -> NcPolynomial:
    """Fully reduce one quantum-matrix normal word into basis monomials.

    Depth-first over the elimination graph with full memoization; a word
    that depends on its own reduction is a genuine cycle and fails loudly,
    as does exceeding the step budget.
    """
    cache = alg._word_cache
    hit = cache.get(word)
    if hit is not None:
        return hit
    n, ring = alg.n, alg.ring
    repl_cache = {}
    DOING, DONE = 1, 2
    state = {}
    stack = [word]
    while stack:
        w = stack[-1]
        if w in cache:
            stack.pop()
            continue
        if is_basis_word(n, w):
            cache[w] = NcPolynomial.monomial(w, ring=ring)
            stack.pop()
            continue
        repl = repl_cache.get(w)
        if repl is None:
            budget[0] -= 1
            if budget[0] < 0:
                raise RuntimeError(
                    "det_q reduction step budget exceeded "
                    "(set QCOORD_STEP_BUDGET to raise the bound)")
            repl = _replacement(alg, w)
            repl_cache[w] = repl
            state[w] = DOING
        deps = [w2 for w2 in repl
                if w2 not in cache and not is_basis_word(n, w2)]
        if any(state.get(w2) == DOING for w2 in deps):
            raise RuntimeError("cyclic det_q elimination; reduction-strategy bug")
        if deps:
            stack.extend(deps)
            continue
        out = NcPolynomial(ring)
        for w2, c2 in repl.items():
            if is_basis_word(n, w2):
                out = out + NcPolynomial.monomial(w2, c2, ring=ring)
            else:
                out = out + cache[w2].scale(c2)
        cache[w] = out
        state[w] = DONE
        stack.pop()
    return cache[word]


def sln_normal_form(p: NcPolynomial, alg: SlnAlgebra) -> NcPolynomial:
    """Canonical representative supported on zero-diagonal PBW monomials."""
    p = alg.base.system.normal_form(p)
    budget = [alg.step_budget]
    out = NcPolynomial(alg.ring)
    for w, c in p.items():
        out = out + _reduce_basis_word(alg, w, budget).scale(c)
    return out


def sln_normal_form_linear(p: NcPolynomial, alg: SlnAlgebra, degree_cap: int | None = None):
    """Independent oracle: reduce modulo the span of w * (det_q - 1) * w'.

    Row-reduces the filtered ideal slice against PBW monomials and rewrites
    p along the resulting eliminations.  Exponential in the degree; intended
    for cross-checking small cases only.
    """
    rs = alg.base.system
    ring = alg.ring
    p = rs.normal_form(p)
    if p.is_zero():
        return p
    n = alg.n
    cap = p.degree() if degree_cap is None else degree_cap
    det_m_one = alg.det_expansion - NcPolynomial.one(ring)
    from .ncalg import enumerate_words
    ideal_rows = []
    for dl in range(cap - n + 1):
        for dr in range(cap - n + 1 - dl):
            for wl in enumerate_words(rs, dl):
                for wr in enumerate_words(rs, dr):
                    row = rs.normal_form(
                        NcPolynomial.monomial(wl, ring=ring) * det_m_one
                        * NcPolynomial.monomial(wr, ring=ring))
                    if not row.is_zero():
                        ideal_rows.append(row)
    # Gaussian elimination toward the monomial order: repeatedly eliminate
    # the largest word of each row from p and the remaining rows.
    pivots = {}
    for row in ideal_rows:
        while not row.is_zero():
            lead = row.leading_word()
            if lead in pivots:
                row = row - pivots[lead].scale(row.terms()[lead])
            else:
                row = row.scale(row.terms()[lead].inverse())
                pivots[lead] = row
                break
    changed = True
    while changed:
        changed = False
        for w in sorted(p.terms(), key=word_key, reverse=True):
            if w in pivots:
                p = p - pivots[w].scale(p.terms()[w])
                changed = True
                break
    return p


def coproduct(p: NcPolynomial, alg: SlnAlgebra) -> TensorElement:
    """Multiplicative extension of Delta(u_ij) = sum_k u_ik (x) u_kj."""
    n, ring, rs = alg.n, alg.ring, alg.base.system
    out = TensorElement(ring)
    for word, c in p.items():
        cur = TensorElement.unit(ring)
        for g in word:
            step = TensorElement(ring, {
                ((gen(g.row, k),), (gen(k, g.col),)): ring.one()
                for k in range(1, n + 1)})
            nxt = {}
            for (al, ar), c1 in cur.items():
                for (bl, br), c2 in step.items():
                    key = (al + bl, ar + br)
                    cc = c1 * c2
                    s = nxt.get(key)
                    s = cc if s is None else s + cc
                    if s:
                        nxt[key] = s
                    else:
                        nxt.pop(key, None)
            cur = TensorElement(ring, nxt).map_legs(rs.reduce_word)
        out = out + cur.scale(c)
    budget = [alg.step_budget]
    return out.map_legs(lambda w: _reduce_basis_word(alg, w, budget))


def counit(p: NcPolynomial, alg: SlnAlgebra):
    """Multiplicative extension of eps(u_ij) = delta_ij; returns a scalar."""
    ring = alg.ring
    total = ring.zero()
    for word, c in p.items():
        if all(g.row == g.col for g in word):
            total = total + c
    return total


def antipode(p: NcPolynomial, alg: SlnAlgebra) -> NcPolynomial:
    """Anti-multiplicative extension of S(u_ij); result sln-reduced."""
    ring = alg.ring
    out = NcPolynomial(ring)
    for word, c in p.items():
        acc = NcPolynomial.one(ring)
        for g in reversed(word):
            acc = acc * _antipode_generator(alg, g.row, g.col)
        out = out + acc.scale(c)
    return sln_normal_form(out, alg)


def _antipode_generator(alg: SlnAlgebra, i: int, j: int) -> NcPolynomial:
    cached = alg._antipode_cache.get((i, j))
    if cached is not None:
        return cached
    n, ring = alg.n, alg.ring
    # (-q)^(i-j) = (-1)^(i-j) v^(2n(i-j))
    sign = ring.coerce(specialize_sign(i - j, n))
    minor = quantum_minor(n, {j}, {i})
    if ring != LAURENT:
        minor = minor.map_coefficients(ring.coerce, ring)
    val = sln_normal_form(minor.scale(sign), alg)
    alg._antipode_cache[(i, j)] = val
    return val


def specialize_sign(k: int, n: int):
    """The Laurent scalar (-q)^k with q = v^(2n)."""
    from .coeff import LaurentScalar
    return LaurentScalar.v_power(2 * n * k, (-1) ** (k % 2))


def bigon_element(alg: SlnAlgebra, i: int, j: int) -> NcPolynomial:
    """Algebra-side avatar of the stated bigon arc with states (i, j).

    Stacking arcs corresponds to multiplication and the bigon splitting map
    to the coproduct.
    """
    if not (1 <= i <= alg.n and 1 <= j <= alg.n):
        raise ValueError(f"states must lie in 1..{alg.n}")
    return NcPolynomial.generator(i, j, alg.ring)


def basis_monomials(n: int, degree_bound: int) -> list:
    """Exponent matrices of total degree <= bound with a zero diagonal entry,
    in degree-then-row-major order."""
    out = []
    cells = n * n
    for d in range(degree_bound + 1):
        for combo in _compositions(d, cells):
            mat = tuple(tuple(combo[i * n + j] for j in range(n)) for i in range(n))
            if min_diagonal(mat) == 0:
                out.append(mat)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def check_hopf_axioms(n: int, alg: SlnAlgebra | None = None):
    """Verify the Hopf structure on generators and defining relations.

    Returns a Report; the first failing identity carries both reduced sides.
    """
    from .reports import Check, Report

    if alg is None:
        alg = sln_algebra(n)
    ring = alg.ring
    checks = []

    def record(name, ok, witness=None):
        checks.append(Check(name, bool(ok), None if ok else witness))

    one = NcPolynomial.one(ring)

    # (i) coassociativity on generators: expand Delta on one leg at a time
    # through the coproduct machinery and compare the resulting triples.
    def _triple(base: TensorElement, expand_left: bool) -> dict:
        out = {}
        for (wl, wr), c in base.items():
            inner = coproduct(
                NcPolynomial.monomial(wl if expand_left else wr, ring=ring), alg)
            for (a, b), c2 in inner.items():
                key = (a, b, wr) if expand_left else (wl, a, b)
                s = out.get(key, ring.zero()) + c * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    ok = True
    witness = None
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        delta = coproduct(NcPolynomial.generator(i, j, ring), alg)
        if _triple(delta, True) != _triple(delta, False):
            ok = False
            witness = f"(Delta x id)Delta(u[{i},{j}]) != (id x Delta)Delta(u[{i},{j}])"
            break
    record("coassociativity on generators", ok, witness)

    # (ii) counit axioms on generators: (eps x id) Delta = id = (id x eps) Delta
    ok = True
    witness = None
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        u = NcPolynomial.generator(i, j, ring)
        delta = coproduct(u, alg)
        lhs = NcPolynomial(ring)
        rhs = NcPolynomial(ring)
        for (wl, wr), c in delta.items():
            lhs = lhs + NcPolynomial.monomial(wr, ring=ring).scale(
                c * counit(NcPolynomial.monomial(wl, ring=ring), alg))
            rhs = rhs + NcPolynomial.monomial(wl, ring=ring).scale(
                c * counit(NcPolynomial.monomial(wr, ring=ring), alg))
        u_nf = sln_normal_form(u, alg)
        if sln_normal_form(lhs, alg) != u_nf or sln_normal_form(rhs, alg) != u_nf:
            ok = False
            witness = f"counit axiom fails on u[{i},{j}]: {lhs!r} / {rhs!r}"
            break
    record("counit axioms on generators", ok, witness)

    # (iii) antipode axioms: sum_k S(u_ik) u_kj = delta_ij = sum_k u_ik S(u_kj)
    ok = True
    witness = None
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        want = sln_normal_form(one, alg) if i == j else NcPolynomial(ring)
        acc1 = NcPolynomial(ring)
        acc2 = NcPolynomial(ring)
        for k in range(1, n + 1):
            acc1 = acc1 + _antipode_generator(alg, i, k) * NcPolynomial.generator(k, j, ring)
            acc2 = acc2 + NcPolynomial.generator(i, k, ring) * _antipode_generator(alg, k, j)
        got1 = sln_normal_form(acc1, alg)
        got2 = sln_normal_form(acc2, alg)
        if got1 != want or got2 != want:
            ok = False
            witness = (f"antipode axiom fails at ({i},{j}): "
                       f"S*u -> {got1!r}, u*S -> {got2!r}, expected {want!r}")
            break
    record("antipode axioms", ok, witness)

    # (iv) Delta and eps annihilate the defining relations and det_q - 1
    ok = True
    witness = None
    targets = list(alg.base.relations) + [alg.det_expansion - one]
    for rel in targets:
        d = coproduct(rel, alg)
        e = counit(rel, alg)
        if not d.is_zero() or e != ring.zero():
            ok = False
            witness = f"Delta/eps do not annihilate {rel!r}: Delta -> {d!r}, eps -> {e!r}"
            break
    record("coproduct and counit annihilate relations and det_q - 1", ok, witness)

    return Report(f"hopf axioms (n={n})", checks)
