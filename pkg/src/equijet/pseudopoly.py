"""Monic polynomials in one distinguished variable with jet coefficients.

The key invariants computed here are the generalized discriminants of a
monic polynomial: with ``s_k`` the Newton power sums of the roots, let
``d_k`` be the determinant of the k-by-k Hankel matrix ``(s_{i+j})``.
Classically ``d_k`` equals the sum over all k-element root subsets of the
squared Vandermonde of the subset, so ``d_k`` vanishes exactly when the
polynomial has fewer than k distinct roots.  This package fixes the indexing
convention

    Delta_l := d_{p - l + 1},   l = 1..p,

so that ``Delta_1`` is the classical discriminant (up to the usual constant)
and the first nonzero index detects the number of distinct roots:
``first_nonzero = p - #distinct + 1``.

The coefficient ring (jets) has zero divisors, so every determinant here is
computed division-free (Berkowitz's algorithm).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    ContextMismatchError,
    DegreeCapError,
    InconclusiveError,
    PreconditionError,
)
from .jets import Jet, VarContext

#: Determinant expansion cost grows quickly; keep the artifact at desk scale.
MAX_DEGREE = 12


class PseudoPolynomial:
    """``v^p + a_1 v^(p-1) + ... + a_p`` with jet coefficients free of ``v``.

    ``coeffs`` is the tuple ``(a_1, ..., a_p)``.  All coefficients live in
    the full ambient context (with zero exponent on the distinguished
    variable), which keeps conversions to and from jets trivial.
    """

    __slots__ = ("var", "ctx", "coeffs", "order")

    def __init__(self, var: str, coeffs: Sequence[Jet], ctx: Optional[VarContext] = None,
                 order: Optional[int] = None):
        coeffs = tuple(coeffs)
        if coeffs:
            ctx = coeffs[0].ctx
            order = min(c.order for c in coeffs)
        if ctx is None or order is None:
            raise PreconditionError("degree-0 pseudopolynomial needs an explicit context and order")
        idx = ctx.index(var)
        for c in coeffs:
            if c.ctx != ctx:
                raise ContextMismatchError("pseudopolynomial coefficients in mixed contexts")
            if any(key[idx] for key in c.terms):
                raise PreconditionError(
                    f"coefficient involves the distinguished variable {var!r}")
        if len(coeffs) > MAX_DEGREE:
            raise DegreeCapError(
                f"degree {len(coeffs)} exceeds the cap {MAX_DEGREE}")
        self.var = var
        self.ctx = ctx
        self.coeffs = coeffs
        self.order = order

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def is_distinguished(self) -> bool:
        """True when every coefficient vanishes at the origin."""
        return all(not c.constant_term() for c in self.coeffs)

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.coeffs)

    @classmethod
    def from_jet(cls, f: Jet, var: str) -> "PseudoPolynomial":
        """Interpret a jet as a monic polynomial in ``var``.

        The leading coefficient must be the constant 1 as stored.
        """
        by_power = f.coefficients_in(var)
        if not by_power:
            raise PreconditionError("zero jet is not a monic polynomial")
        p = max(by_power)
        lead = by_power[p]
        if lead.terms != {(0,) * len(f.ctx.names): 1} and p > 0:
            raise PreconditionError(f"not monic in {var!r}: leading coefficient {lead}")
        if p == 0:
            if lead.constant_term() != 1 or lead.total_degree() not in (None, 0):
                raise PreconditionError("a degree-0 pseudopolynomial must be the constant 1")
            return cls(var, (), ctx=f.ctx, order=f.order)
        coeffs = []
        for j in range(1, p + 1):
            c = by_power.get(p - j)
            coeffs.append(c if c is not None else Jet.zero(f.ctx, f.order, exact=f.exact))
        return cls(var, coeffs)

    @classmethod
    def from_roots(cls, ctx: VarContext, var: str, roots, order: Optional[int] = None) -> "PseudoPolynomial":
        """Expand ``prod (v - root)`` for explicit scalar roots."""
        from .jets import DEFAULT_ORDER

        order = order if order is not None else DEFAULT_ORDER
        poly = Jet.constant(ctx, 1, order)
        v = Jet.variable(ctx, var, order)
        for r in roots:
            poly = poly * (v - Jet.constant(ctx, r, order))
        return cls.from_jet(poly, var)

    def as_jet(self, order: Optional[int] = None) -> Jet:
        order = order if order is not None else self.order
        acc = Jet.monomial(self.ctx, self._mono(self.degree), order=order)
        for j, a in enumerate(self.coeffs, start=1):
            power = self.degree - j
            acc = acc + a.truncate(order) * Jet.monomial(self.ctx, self._mono(power), order=order)
        return acc

    def _mono(self, e: int) -> Tuple[int, ...]:
        key = [0] * len(self.ctx.names)
        key[self.ctx.index(self.var)] = e
        return tuple(key)

    def map_coeffs(self, fn) -> "PseudoPolynomial":
        if not self.coeffs:
            return self
        return PseudoPolynomial(self.var, tuple(fn(c) for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, PseudoPolynomial):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs and self.ctx == other.ctx

    def __repr__(self):
        return f"<PseudoPolynomial deg {self.degree} in {self.var}>"

    def __str__(self):
        parts = [f"{self.var}^{self.degree}" if self.degree != 1 else self.var]
        for j, a in enumerate(self.coeffs, start=1):
            if a.is_zero():
                continue
            power = self.degree - j
            mono = "" if power == 0 else (f"*{self.var}" if power == 1 else f"*{self.var}^{power}")
            parts.append(f"({a}){mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class GenDiscSequence:
    """The values ``Delta_1..Delta_p`` with the first-nonzero bookkeeping.

    ``uncertified_below`` lists indices ``l < first_nonzero`` whose vanishing
    is known only modulo the certification order (the entry is not exact).
    """

    degree: int
    entries: Tuple[Jet, ...]
    first_nonzero: int
    order: int
    uncertified_below: Tuple[int, ...]

    @property
    def first_entry(self) -> Jet:
        return self.entries[self.first_nonzero - 1]

    @property
    def certified(self) -> bool:
        return not self.uncertified_below


def _coeff_degree(P: PseudoPolynomial) -> int:
    degs = [c.total_degree() for c in P.coeffs]
    return max((d for d in degs if d is not None), default=0)


def _exact_lift(P: PseudoPolynomial, bound: int) -> PseudoPolynomial:
    """Raise the working order of an exact polynomial so that the following
    determinant arithmetic cannot truncate; a no-op on inexact input."""
    if not P.coeffs or not P.exact or bound <= P.order:
        return P
    return P.map_coeffs(lambda c: c.with_order(bound))


def _settle(entry: Jet, base_order: int) -> Jet:
    """Bring a lift-computed value back to the smallest order that keeps it
    exact and covers the caller's certification order."""
    if entry.exact:
        deg = entry.total_degree()
        target = max(base_order, (0 if deg is None else deg) + 1)
        return entry.truncate(target) if target <= entry.order else entry.with_order(target)
    return entry


def power_sums(P: PseudoPolynomial, count: int) -> List[Jet]:
    """Newton power sums ``s_0..s_{count-1}`` of the roots, from the
    coefficients.

    Newton's identities in this direction need no division at all, so the
    computation stays inside the jet ring.  Exact input is processed at a
    raised order so the sums come out exact whatever their degree.
    """
    if count < 1:
        raise PreconditionError("count must be >= 1")
    base_order = P.order
    P = _exact_lift(P, _coeff_degree(P) * count + 2)
    p = P.degree
    # elementary symmetric functions: e_i = (-1)^i a_i
    elem = [None]
    for i, a in enumerate(P.coeffs, start=1):
        elem.append(a if i % 2 == 0 else -a)
    zero = Jet.zero(P.ctx, P.order, exact=P.exact if P.coeffs else True)
    sums: List[Jet] = [Jet.constant(P.ctx, p, P.order)]
    for k in range(1, count):
        acc = Jet.zero(P.ctx, P.order)
        for i in range(1, min(k, p) + 1):
            term = elem[i] if k == i else elem[i] * sums[k - i]
            if k == i:
                term = term.scale(k)
            acc = acc + term if i % 2 == 1 else acc - term
        sums.append(acc if p else zero)
    return [_settle(s, base_order) for s in sums]


def berkowitz_det(rows: Sequence[Sequence[Jet]]) -> Jet:
    """Division-free determinant of a square matrix of jets."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise PreconditionError("berkowitz_det needs a nonempty square matrix")
    ctx = rows[0][0].ctx
    order = min(e.order for r in rows for e in r)
    one = Jet.constant(ctx, 1, order)
    # charpoly coefficient vector of the 1x1 leading principal submatrix
    vec: List[Jet] = [one, -rows[0][0].truncate(order)]
    for r in range(1, n):
        sub = [[rows[i][j] for j in range(r)] for i in range(r)]
        row = [rows[r][j] for j in range(r)]
        col = [rows[i][r] for i in range(r)]
        diag = rows[r][r]
        # first column of the Toeplitz factor: 1, -a, -R.C, -R.M.C, ...
        col0: List[Jet] = [one, -diag.truncate(order)]
        w = col
        for _ in range(r):
            dot = Jet.zero(ctx, order)
            for x, y in zip(row, w):
                dot = dot + x * y
            col0.append(-dot)
            w = [sum((sub[i][j] * w[j] for j in range(r)), Jet.zero(ctx, order))
                 for i in range(r)]
        new_vec: List[Jet] = []
        for i in range(r + 2):
            acc = Jet.zero(ctx, order)
            for j in range(min(i, r) + 1):
                acc = acc + col0[i - j] * vec[j]
            new_vec.append(acc)
        vec = new_vec
    det = vec[-1]
    return det if n % 2 == 0 else -det


def hankel_minor(P: PseudoPolynomial, k: int) -> Jet:
    """Determinant of the k-by-k Hankel matrix of power sums.

    Equals the sum over all k-element root subsets of the squared Vandermonde
    of the subset.  Exact coefficients are lifted to a truncation-free order,
    so the certified answer stays exact whatever its degree.
    """
    if not (1 <= k <= P.degree):
        raise PreconditionError(f"k={k} out of range 1..{P.degree}")
    base_order = P.order
    P = _exact_lift(P, _coeff_degree(P) * (2 * k - 1) * k + 2)
    sums = power_sums(P, 2 * k - 1)
    rows = [[sums[i + j] for j in range(k)] for i in range(k)]
    return _settle(berkowitz_det(rows), base_order)


def generalized_discriminants(P: PseudoPolynomial) -> GenDiscSequence:
    """All ``Delta_l`` of a monic polynomial, with first-nonzero bookkeeping.

    Raises :class:`InconclusiveError` if every entry vanishes to the
    certification order without being exactly zero (cannot happen for honest
    monic input in characteristic zero, where ``Delta_p`` is the degree).
    """
    p = P.degree
    if p < 1:
        raise PreconditionError("generalized discriminants need degree >= 1")
    entries = tuple(hankel_minor(P, p - l + 1) for l in range(1, p + 1))
    first = None
    uncertified: List[int] = []
    for l, entry in enumerate(entries, start=1):
        if entry.is_zero():
            if not entry.exact:
                uncertified.append(l)
        else:
            first = l
            break
    if first is None:
        raise InconclusiveError(
            f"all generalized discriminants vanish to order {P.order}")
    return GenDiscSequence(
        degree=p,
        entries=entries,
        first_nonzero=first,
        order=P.order,
        uncertified_below=tuple(l for l in uncertified if l < first),
    )


def resultant_jets(A: Jet, B: Jet, var: str) -> Jet:
    """Resultant with respect to ``var`` via the Sylvester determinant.

    Degrees are read from the stored terms, so for truncated inputs the
    caller must know the degree structure is trustworthy (monic inputs, or
    exact polynomials).
    """
    if A.ctx != B.ctx:
        raise ContextMismatchError("resultant operands in different contexts")
    ctx = A.ctx
    base_order = min(A.order, B.order)
    if A.exact and B.exact:
        da0 = A.total_degree() or 0
        db0 = B.total_degree() or 0
        bound = (da0 + db0) * (max((k[ctx.index(var)] for k in A.terms), default=0)
                               + max((k[ctx.index(var)] for k in B.terms), default=0)) + 2
        if bound > base_order:
            A = A.with_order(bound)
            B = B.with_order(bound)
    order = min(A.order, B.order)
    ca = A.coefficients_in(var)
    cb = B.coefficients_in(var)
    if not ca or not cb:
        return Jet.zero(ctx, base_order, exact=A.exact and B.exact)
    da, db = max(ca), max(cb)
    if da == 0 and db == 0:
        return Jet.constant(ctx, 1, base_order)
    if db == 0:
        return _settle(cb[0] ** da, base_order)
    if da == 0:
        return _settle(ca[0] ** db, base_order)
    zero = Jet.zero(ctx, order)
    arow = [ca.get(da - i, zero) for i in range(da + 1)]
    brow = [cb.get(db - i, zero) for i in range(db + 1)]
    n = da + db
    rows = []
    for i in range(db):
        rows.append([zero] * i + arow + [zero] * (n - i - da - 1))
    for i in range(da):
        rows.append([zero] * i + brow + [zero] * (n - i - db - 1))
    return _settle(berkowitz_det(rows), base_order)


def resultant(P: PseudoPolynomial, Q: PseudoPolynomial) -> Jet:
    """Resultant of two monic pseudopolynomials in the same variable."""
    if P.var != Q.var:
        raise ContextMismatchError(
            f"distinguished variables differ: {P.var!r} vs {Q.var!r}")
    if P.ctx != Q.ctx:
        raise ContextMismatchError("pseudopolynomial contexts differ")
    return resultant_jets(P.as_jet(), Q.as_jet(), P.var)
