"""Weierstrass division and preparation at finite order.

The division ``g = q f + r`` is computed by the standard order-by-order
fixed-point iteration; it converges within the certification order because
the low part of a regular series has positive valuation in the remaining
variables.

Preparation carries one extra step worth calling out: the unit and the
distinguished polynomial produced by the finite-order iteration are, in
general, only known modulo the order.  When the input is an exact polynomial
the candidate distinguished factor is checked by exact polynomial division;
on success the factorization is certified exact, which is what later lets
vanishing claims about discriminants stay sound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    ConsistencyError,
    NoRegularDirectionError,
    NotRegularError,
    PreconditionError,
)
from .jets import INFINITE_ORDER, Jet, VarContext
from .pseudopoly import PseudoPolynomial

#: How many integer directions the regularizing search will try.
CHANGE_BUDGET = 200


@dataclass(frozen=True)
class LinearChange:
    """An invertible integer matrix acting on a block of variables.

    The change substitutes ``x_i -> sum_j M[i][j] x_j`` for the block
    variables and fixes everything else, so parameters are never mixed into
    coordinates as long as the block stays inside the coordinate part.
    """

    block: Tuple[str, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.block)
        if len(self.matrix) != k or any(len(row) != k for row in self.matrix):
            raise PreconditionError("linear change matrix does not match its block")
        if _det(self.matrix) == 0:
            raise PreconditionError("linear change matrix is singular")

    @classmethod
    def identity(cls, block: Sequence[str]) -> "LinearChange":
        k = len(block)
        rows = tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(k))
                     for i in range(k))
        return cls(tuple(block), rows)

    @classmethod
    def shear(cls, block: Sequence[str], target: str, coeffs: Sequence[int]) -> "LinearChange":
        """``x_j -> x_j + c_j * target`` for each block variable except the
        target itself."""
        block = tuple(block)
        t = block.index(target)
        k = len(block)
        rows = [[Fraction(1) if i == j else Fraction(0) for j in range(k)] for i in range(k)]
        for i, c in zip((i for i in range(k) if i != t), coeffs):
            rows[i][t] = Fraction(c)
        return cls(block, tuple(tuple(row) for row in rows))

    @property
    def is_identity(self) -> bool:
        k = len(self.block)
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(k) for j in range(k))

    def inverse(self) -> "LinearChange":
        return LinearChange(self.block, _mat_inverse(self.matrix))

    def apply(self, f: Jet) -> Jet:
        if self.is_identity:
            return f
        subst = {}
        for i, name in enumerate(self.block):
            form = Jet.zero(f.ctx, f.order)
            for j, other in enumerate(self.block):
                c = self.matrix[i][j]
                if c:
                    form = form + Jet.variable(f.ctx, other, f.order).scale(c)
            subst[name] = form
        return f.compose(subst)

    def apply_inverse(self, f: Jet) -> Jet:
        return self.inverse().apply(f)

    def describe(self) -> dict:
        return {
            "block": list(self.block),
            "matrix": [[str(c) for c in row] for row in self.matrix],
        }


def _det(matrix) -> Fraction:
    m = [list(row) for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _mat_inverse(matrix) -> Tuple[Tuple[Fraction, ...], ...]:
    n = len(matrix)
    m = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise PreconditionError("linear change matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [a * inv for a in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


@dataclass(frozen=True)
class PreparedForm:
    """``unit * poly == source`` modulo the certification order."""

    unit: Jet
    poly: PseudoPolynomial
    order: int

    @property
    def exact(self) -> bool:
        return self.unit.exact and self.poly.exact


def regularity_order(f: Jet, var: str):
    """Valuation of ``f`` restricted to the axis of ``var``.

    INFINITE_ORDER means the restriction vanishes to the certification
    order (identically, when the jet is exact).
    """
    idx = f.ctx.index(var)
    best = None
    for key, _ in f.terms.items():
        if any(e for i, e in enumerate(key) if i != idx):
            continue
        d = key[idx]
        if best is None or d < best:
            best = d
    return INFINITE_ORDER if best is None else best


def _directional_order(f: Jet, block_idx: List[int], v_pos: int, direction: List[int]):
    """Regularity order after the shear with the given direction vector.

    ``direction`` is indexed like ``block_idx`` with a 1 at ``v_pos``.  Only
    terms supported inside the block can contribute.
    """
    sums: Dict[int, object] = {}
    block = set(block_idx)
    for key, coeff in f.terms.items():
        if any(e for i, e in enumerate(key) if e and i not in block):
            continue
        val = coeff
        ok = True
        for pos, i in enumerate(block_idx):
            e = key[i]
            if not e:
                continue
            c = direction[pos]
            if c == 0:
                ok = False
                break
            val = val * Fraction(c) ** e
        if not ok:
            continue
        d = sum(key)
        cur = sums.get(d)
        sums[d] = val if cur is None else cur + val
    live = [d for d, v in sums.items() if v]
    return min(live) if live else None


def find_regular_change(f: Jet, var: str, block: Sequence[str], seed: int = 0,
                        budget: int = CHANGE_BUDGET) -> LinearChange:
    """Search for an integer shear making ``f`` regular in ``var``.

    Deterministic for a fixed seed: candidate directions are enumerated by
    growing maximal entry, each shell shuffled by the seeded generator, with
    the identity always tried first.  Among the tried candidates the lowest
    resulting regularity order wins (ties go to the earliest candidate); the
    search stops early once the valuation of ``f`` itself is achieved, since
    no direction can do better.
    """
    if f.is_zero():
        raise PreconditionError("cannot regularize the zero jet")
    block = tuple(block)
    if var not in block:
        raise PreconditionError(f"target variable {var!r} not in block {block}")
    block_idx = [f.ctx.index(b) for b in block]
    v_pos = block.index(var)
    floor = None
    for key in f.terms:
        if any(e for i, e in enumerate(key) if e and i not in set(block_idx)):
            continue
        d = sum(key)
        if floor is None or d < floor:
            floor = d
    if floor is None:
        raise NoRegularDirectionError(
            f"no term of f is supported in the block {block}; tried 0 of {budget} candidates")

    free = len(block) - 1
    rng = random.Random(seed)

    def candidates():
        yield (0,) * free
        bound = 1
        while True:
            shell = [c for c in itertools.product(range(-bound, bound + 1), repeat=free)
                     if max((abs(x) for x in c), default=0) == bound]
            rng.shuffle(shell)
            yield from shell
            bound += 1

    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    tried = 0
    for cand in candidates():
        if tried >= budget:
            break
        tried += 1
        direction = list(cand[:v_pos]) + [1] + list(cand[v_pos:])
        order = _directional_order(f, block_idx, v_pos, direction)
        if order is None:
            continue
        if best is None or order < best[0]:
            best = (order, cand)
            if order == floor:
                break
        if free == 0:
            break
    if best is None:
        raise NoRegularDirectionError(
            f"no regular direction found within the budget of {budget} candidates")
    coeffs = best[1]
    if all(c == 0 for c in coeffs):
        return LinearChange.identity(block)
    return LinearChange.shear(block, var, coeffs)


def _split(f: Jet, var: str, p: int) -> Tuple[Jet, Jet]:
    """Return (low, high) with ``f = low + var^p * high`` and deg_var(low) < p."""
    idx = f.ctx.index(var)
    low: Dict[Tuple[int, ...], object] = {}
    high: Dict[Tuple[int, ...], object] = {}
    for key, coeff in f.terms.items():
        if key[idx] < p:
            low[key] = coeff
        else:
            nk = list(key)
            nk[idx] = key[idx] - p
            high[tuple(nk)] = coeff
    return Jet(f.ctx, f.order, low, f.exact), Jet(f.ctx, f.order, high, f.exact)


def weierstrass_divide(g: Jet, f: Jet, var: str) -> Tuple[Jet, Jet]:
    """Divide ``g`` by a ``var``-regular series: ``g = q f + r`` mod the order,
    with deg_var(r) < p."""
    p = regularity_order(f, var)
    if p == INFINITE_ORDER:
        raise NotRegularError(f"divisor is not regular in {var!r} to order {f.order}")
    order = min(g.order, f.order)
    g = g.truncate(order)
    f = f.truncate(order)
    if p == 0:
        return g * f.invert_unit(), Jet.zero(f.ctx, order)
    f_low, w = _split(f, var, p)
    winv = w.invert_unit()
    q = Jet.zero(f.ctx, order)
    for _ in range(order + 1):
        _, high = _split(g - q * f_low, var, p)
        q_next = winv * high
        if q_next.terms == q.terms:
            q = q_next
            break
        q = q_next
    r = g - q * f
    if max((key[r.ctx.index(var)] for key in r.terms), default=0) >= p:
        raise ConsistencyError("division iteration failed to reduce the remainder")
    return q, r


def _exact_poly_divide(f: Jet, candidate: PseudoPolynomial, var: str):
    """Exact polynomial division of an exact jet by a monic candidate factor.

    Returns the exact quotient jet when the remainder is exactly zero, else
    None.  Everything runs at a raised order so no truncation can occur.
    """
    deg_f = f.total_degree()
    if deg_f is None:
        return None
    big = deg_f + candidate.degree + 2
    coeffs = {e: c.with_order(big) for e, c in f.coefficients_in(var).items()}
    w_coeffs = [c.polynomial_part(c.order - 1).with_order(big) for c in candidate.coeffs]
    p = candidate.degree
    top = max(coeffs, default=0)
    ctx = f.ctx
    zero = Jet.zero(ctx, big)
    quotient: Dict[int, Jet] = {}
    work = dict(coeffs)
    for e in range(top, p - 1, -1):
        qe = work.get(e, zero)
        if qe.is_zero():
            continue
        quotient[e - p] = qe
        for j, wc in enumerate(w_coeffs, start=1):
            tgt = e - j
            work[tgt] = work.get(tgt, zero) - qe * wc
        work.pop(e, None)
    if any(not work.get(e, zero).is_zero() for e in list(work)):
        return None
    q = Jet.zero(ctx, big)
    vkey = [0] * len(ctx.names)
    vi = ctx.index(var)
    for e, c in quotient.items():
        vkey[vi] = e
        q = q + c * Jet.monomial(ctx, tuple(vkey), order=big)
    return q


def weierstrass_prepare(f: Jet, var: str) -> PreparedForm:
    """Factor ``f = unit * W`` with ``W`` monic distinguished in ``var``.

    Requires finite regularity order ``p``; computed by dividing ``var^p`` by
    ``f``.  For exact polynomial input the candidate factor is re-verified by
    exact division, upgrading the factorization to an exact identity whenever
    the distinguished polynomial really is polynomial.
    """
    p = regularity_order(f, var)
    if p == INFINITE_ORDER:
        raise NotRegularError(f"not regular in {var!r} to order {f.order}")
    order = f.order
    if p >= order:
        raise PreconditionError(
            f"regularity order {p} reaches the certification order {order}")
    if p == 0:
        unit = f
        poly = PseudoPolynomial(var, (), ctx=f.ctx, order=order)
        return PreparedForm(unit=unit, poly=poly, order=order)
    vp = Jet.monomial(f.ctx, _unit_key(f.ctx, var, p), order=order)
    q, r = weierstrass_divide(vp, f, var)
    if not q.is_unit():
        raise ConsistencyError("division quotient is not a unit; input was not regular")
    unit = q.invert_unit()
    candidate = PseudoPolynomial.from_jet(vp - r, var)
    if any(c.constant_term() for c in candidate.coeffs):
        raise ConsistencyError("prepared polynomial is not distinguished")
    if f.exact and not candidate.exact:
        exact_q = _exact_poly_divide(f, candidate, var)
        if exact_q is not None and exact_q.is_unit():
            unit = Jet(f.ctx, order, exact_q.terms, exact_q.total_degree() < order)
            candidate = candidate.map_coeffs(
                lambda c: Jet(f.ctx, order, c.terms, True))
    return PreparedForm(unit=unit, poly=candidate, order=order)


def _unit_key(ctx: VarContext, var: str, e: int) -> Tuple[int, ...]:
    key = [0] * len(ctx.names)
    key[ctx.index(var)] = e
    return tuple(key)
