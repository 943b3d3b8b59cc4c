"""Exact multivariate power series truncated at a fixed total order.

A :class:`Jet` stores the coefficients of a series below a stated total
degree ``order`` over an exact scalar field (rationals, optionally one simple
algebraic extension).  The ``exact`` flag records whether the stored terms
are the *whole* series -- a genuine polynomial with no hidden tail -- or only
its residue modulo total degree ``order``.  Only exact values can certify
that something vanishes identically; everything else is "zero modulo the
certification order" and the rest of the package treats it that way.

Conventions:

* term keys are exponent tuples aligned with the context's variable order;
* canonical term order for display and reports is graded lexicographic
  (total degree first, then the exponent tuple);
* binary operations require equal contexts and truncate at the minimum of
  the two orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import (
    ContextMismatchError,
    InconclusiveError,
    NotAUnitError,
    SubstitutionDivergenceError,
    UnknownVariableError,
)
from .scalars import Scalar, as_scalar, scalar_to_text

DEFAULT_ORDER = 16

#: Returned by valuation queries on jets with no stored term.
INFINITE_ORDER = math.inf

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class VarContext:
    """An ordered list of variable names split into a parameter block and a
    coordinate block.

    The first ``n_params`` names are deformation parameters (inert under all
    coordinate changes); the remaining names are coordinates whose order
    encodes the projection ladder used by the tower construction: the last
    coordinate is eliminated first.
    """

    names: Tuple[str, ...]
    n_params: int = 0

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ContextMismatchError(f"duplicate variable names: {self.names}")
        if not (0 <= self.n_params <= len(self.names)):
            raise ContextMismatchError("parameter block out of range")
        for n in self.names:
            if not n or not n.replace("_", "a").isalnum() or n[0].isdigit():
                raise ContextMismatchError(f"bad variable name: {n!r}")

    @classmethod
    def make(cls, coords: Iterable[str], params: Iterable[str] = ()) -> "VarContext":
        params = tuple(params)
        return cls(params + tuple(coords), len(params))

    @property
    def params(self) -> Tuple[str, ...]:
        return self.names[: self.n_params]

    @property
    def coords(self) -> Tuple[str, ...]:
        return self.names[self.n_params:]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {name!r} in context {self.names}") from None

    def has(self, name: str) -> bool:
        return name in self.names

    def without(self, drop: Iterable[str]) -> "VarContext":
        drop = set(drop)
        names = tuple(n for n in self.names if n not in drop)
        n_params = sum(1 for n in self.params if n not in drop)
        return VarContext(names, n_params)


def term_sort_key(exps: Exponents):
    return (sum(exps), exps)


class Jet:
    """A series known modulo total degree ``order``; see module docstring."""

    __slots__ = ("ctx", "order", "terms", "exact")

    def __init__(self, ctx: VarContext, order: int, terms: Mapping[Exponents, Scalar], exact: bool):
        if order < 0:
            raise ValueError("order must be >= 0")
        clean: Dict[Exponents, Scalar] = {}
        dropped = False
        width = len(ctx.names)
        for key, val in terms.items():
            if len(key) != width:
                raise ContextMismatchError(f"exponent vector {key} does not fit context {ctx.names}")
            val = as_scalar(val)
            if not val:
                continue
            if sum(key) >= order:
                dropped = True
                continue
            clean[key] = val
        self.ctx = ctx
        self.order = order
        self.terms = clean
        self.exact = bool(exact) and not dropped

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext, order: int = DEFAULT_ORDER, exact: bool = True) -> "Jet":
        return cls(ctx, order, {}, exact)

    @classmethod
    def constant(cls, ctx: VarContext, value, order: int = DEFAULT_ORDER, exact: bool = True) -> "Jet":
        key = (0,) * len(ctx.names)
        return cls(ctx, order, {key: as_scalar(value)}, exact)

    @classmethod
    def variable(cls, ctx: VarContext, name: str, order: int = DEFAULT_ORDER) -> "Jet":
        key = [0] * len(ctx.names)
        key[ctx.index(name)] = 1
        return cls(ctx, order, {tuple(key): Fraction(1)}, True)

    @classmethod
    def monomial(cls, ctx: VarContext, exps: Exponents, coeff=1, order: int = DEFAULT_ORDER) -> "Jet":
        return cls(ctx, order, {tuple(exps): as_scalar(coeff)}, True)

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.ctx.names), Fraction(0))

    def is_unit(self) -> bool:
        return bool(self.constant_term())

    def order_of(self):
        """Minimal total degree of a stored term; INFINITE_ORDER if none.

        An infinite answer means "zero modulo the order"; it is a statement
        about the whole series only when ``exact`` holds.
        """
        if not self.terms:
            return INFINITE_ORDER
        return min(sum(k) for k in self.terms)

    def total_degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return max(sum(k) for k in self.terms)

    def occurring(self) -> Tuple[str, ...]:
        used = set()
        for key in self.terms:
            for i, e in enumerate(key):
                if e:
                    used.add(i)
        return tuple(self.ctx.names[i] for i in sorted(used))

    # -- ring operations -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.ctx != self.ctx:
                raise ContextMismatchError(
                    f"context mismatch: {self.ctx.names} vs {other.ctx.names}")
            return other
        try:
            value = as_scalar(other)
        except TypeError:
            return None
        return Jet.constant(self.ctx, value, self.order, exact=True)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        merged: Dict[Exponents, Scalar] = dict(self.terms)
        for key, val in other.terms.items():
            cur = merged.get(key)
            merged[key] = val if cur is None else cur + val
        return Jet(self.ctx, order, merged, self.exact and other.exact)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.ctx, self.order, {k: -v for k, v in self.terms.items()}, self.exact)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        prod: Dict[Exponents, Scalar] = {}
        full = self.exact and other.exact
        for ka, va in self.terms.items():
            da = sum(ka)
            for kb, vb in other.terms.items():
                if not full and da + sum(kb) >= order:
                    continue
                key = tuple(x + y for x, y in zip(ka, kb))
                val = va * vb
                cur = prod.get(key)
                prod[key] = val if cur is None else cur + val
        return Jet(self.ctx, order, prod, full)

    __rmul__ = __mul__

    def scale(self, s) -> "Jet":
        s = as_scalar(s)
        if not s:
            return Jet(self.ctx, self.order, {}, self.exact)
        return Jet(self.ctx, self.order, {k: s * v for k, v in self.terms.items()}, self.exact)

    def __pow__(self, n: int) -> "Jet":
        if not isinstance(n, int) or n < 0:
            raise ValueError("jet powers must be nonnegative integers")
        result = Jet.constant(self.ctx, 1, self.order, exact=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def invert_unit(self) -> "Jet":
        """Multiplicative inverse modulo the order, by geometric series.

        The result is flagged exact only for constants: inverses of
        non-constant units are genuinely infinite series.
        """
        c0 = self.constant_term()
        if not c0:
            raise NotAUnitError("constant term vanishes; not a unit")
        inv0 = 1 / c0 if isinstance(c0, Fraction) else c0.inverse()
        # self = c0 * (1 - u) with u of positive valuation
        u = Jet.constant(self.ctx, 1, self.order, exact=True) - self.scale(inv0)
        acc = Jet.constant(self.ctx, 1, self.order, exact=True)
        power = u
        while not power.is_zero():
            acc = acc + power
            power = power * u
        result = acc.scale(inv0)
        exact = self.exact and self.total_degree() in (None, 0)
        return Jet(self.ctx, self.order, result.terms, exact)

    def derivative(self, name: str) -> "Jet":
        idx = self.ctx.index(name)
        out: Dict[Exponents, Scalar] = {}
        for key, val in self.terms.items():
            e = key[idx]
            if not e:
                continue
            nk = list(key)
            nk[idx] = e - 1
            out[tuple(nk)] = val * e
        return Jet(self.ctx, max(self.order - 1, 0), out, self.exact)

    # -- substitution and evaluation --------------------------------------

    def compose(self, subst: Mapping[str, "Jet"], *, allow_constant: bool = False) -> "Jet":
        """Substitute jets for variables.

        Every substituted jet must have zero constant term unless the caller
        passes ``allow_constant=True``, asserting that the series is genuinely
        polynomial in the substituted variables (otherwise the result would
        depend on the unknown tail).  All substitution values must share one
        target context; unsubstituted variables that actually occur must
        exist there by name.  The result order is the minimum of this jet's
        order and the orders of the substituted values that occur.
        """
        if not subst:
            return self
        values = {}
        target = None
        for name, val in subst.items():
            self.ctx.index(name)
            if not isinstance(val, Jet):
                raise ContextMismatchError("substitution values must be jets")
            if target is None:
                target = val.ctx
            elif val.ctx != target:
                raise ContextMismatchError("substitution values live in different contexts")
            if val.constant_term() and not allow_constant:
                raise SubstitutionDivergenceError(
                    f"substitution for {name!r} has nonzero constant term")
            values[self.ctx.index(name)] = val

        occurring = set()
        for key in self.terms:
            for i, e in enumerate(key):
                if e:
                    occurring.add(i)
        for i in occurring - set(values):
            if not target.has(self.ctx.names[i]):
                raise ContextMismatchError(
                    f"variable {self.ctx.names[i]!r} missing from substitution target context")

        orders = [self.order] + [values[i].order for i in values if i in occurring]
        order = min(orders)

        cache: Dict[Tuple[int, int], Jet] = {}

        def power_of(i: int, e: int) -> Jet:
            got = cache.get((i, e))
            if got is not None:
                return got
            if e == 0:
                result = Jet.constant(target, 1, order, exact=True)
            else:
                base = values.get(i)
                if base is None:
                    base = Jet.variable(target, self.ctx.names[i], order)
                result = power_of(i, e - 1) * base
            cache[(i, e)] = result
            return result

        acc = Jet.zero(target, order, exact=True)
        for key, coeff in sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0])):
            term = Jet.constant(target, coeff, order, exact=True)
            for i, e in enumerate(key):
                if e:
                    term = term * power_of(i, e)
            acc = acc + term
        return Jet(target, order, acc.terms, acc.exact and self.exact)

    def restrict(self, assign: Mapping[str, object], *, drop: bool = False) -> "Jet":
        """Evaluate some variables at exact scalar values.

        Setting variables to zero is always sound.  Evaluation at a nonzero
        value is only meaningful for exact jets (a hidden tail could reach
        arbitrarily low degrees after the substitution) and raises
        :class:`InconclusiveError` otherwise.  With ``drop=True`` the
        assigned variables are removed from the context.
        """
        values = {self.ctx.index(name): as_scalar(v) for name, v in assign.items()}
        if any(values.values()) and not self.exact:
            raise InconclusiveError(
                "evaluation at a nonzero value needs exact data; this jet is truncated")
        out: Dict[Exponents, Scalar] = {}
        for key, coeff in self.terms.items():
            val = coeff
            nk = list(key)
            for i, point in values.items():
                e = key[i]
                if e:
                    if not point:
                        val = None
                        break
                    val = val * point ** e
                nk[i] = 0
            if val is None:
                continue
            kk = tuple(nk)
            cur = out.get(kk)
            out[kk] = val if cur is None else cur + val
        result = Jet(self.ctx, self.order, out, self.exact)
        if drop:
            result = result.in_context(self.ctx.without(assign.keys()))
        return result

    def in_context(self, new_ctx: VarContext) -> "Jet":
        """Re-express the jet in another context by variable name.

        Every occurring variable must exist in the new context.  Widening a
        context is always sound; narrowing one asserts that the series does
        not involve the removed variables (callers narrow only after
        restricting them or on exact data).
        """
        if new_ctx == self.ctx:
            return self
        mapping = []
        for i, name in enumerate(self.ctx.names):
            mapping.append(new_ctx.names.index(name) if new_ctx.has(name) else None)
        width = len(new_ctx.names)
        out: Dict[Exponents, Scalar] = {}
        for key, coeff in self.terms.items():
            nk = [0] * width
            for i, e in enumerate(key):
                if not e:
                    continue
                j = mapping[i]
                if j is None:
                    raise ContextMismatchError(
                        f"variable {self.ctx.names[i]!r} occurs but is absent from target context")
                nk[j] = e
            out[tuple(nk)] = coeff
        return Jet(new_ctx, self.order, out, self.exact)

    def coefficients_in(self, name: str) -> Dict[int, "Jet"]:
        """Collect coefficients of powers of one variable.

        For a non-exact jet the coefficient of ``v^e`` is only known modulo
        total degree ``order - e``; the returned jets carry that honest order.
        """
        idx = self.ctx.index(name)
        buckets: Dict[int, Dict[Exponents, Scalar]] = {}
        for key, coeff in self.terms.items():
            e = key[idx]
            nk = list(key)
            nk[idx] = 0
            buckets.setdefault(e, {})[tuple(nk)] = coeff
        out = {}
        for e, terms in buckets.items():
            order = self.order if self.exact else max(self.order - e, 0)
            out[e] = Jet(self.ctx, order, terms, self.exact)
        return out

    def degree_in(self, name: str) -> Optional[int]:
        idx = self.ctx.index(name)
        degs = [k[idx] for k in self.terms]
        return max(degs) if degs else None

    # -- order bookkeeping -------------------------------------------------

    def truncate(self, new_order: int) -> "Jet":
        """Forget information above ``new_order``; the flag stays honest."""
        if new_order >= self.order:
            return self
        return Jet(self.ctx, new_order, self.terms, self.exact)

    def with_order(self, new_order: int) -> "Jet":
        """Raise the stated order; sound only for exact jets."""
        if new_order <= self.order:
            return self.truncate(new_order)
        if not self.exact:
            raise InconclusiveError("cannot raise the order of a truncated jet")
        return Jet(self.ctx, new_order, self.terms, True)

    def polynomial_part(self, max_degree: int) -> "Jet":
        """The polynomial made of the stored terms of degree <= max_degree.

        Unlike :meth:`truncate` this *defines a new exact polynomial* out of
        the known region; it requires ``max_degree < order``.
        """
        if max_degree >= self.order:
            raise InconclusiveError("polynomial part would reach into the unknown tail")
        kept = {k: v for k, v in self.terms.items() if sum(k) <= max_degree}
        return Jet(self.ctx, self.order, kept, True)

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (self.ctx == other.ctx and self.order == other.order
                and self.terms == other.terms and self.exact == other.exact)

    def __hash__(self):
        return hash((self.ctx, self.order, frozenset(self.terms.items()), self.exact))

    def __str__(self):
        return jet_to_text(self)

    def __repr__(self):
        tag = "exact" if self.exact else f"mod deg {self.order}"
        return f"<Jet {jet_to_text(self)} ({tag})>"


def jet_to_text(j: Jet) -> str:
    """Canonical display: graded-lex term order, parser-compatible syntax."""
    if not j.terms:
        return "0"
    pieces = []
    for key in sorted(j.terms, key=term_sort_key):
        coeff = j.terms[key]
        mono = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(j.ctx.names, key) if e)
        if isinstance(coeff, Fraction):
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
        else:
            sign = "+"
            body = f"({scalar_to_text(coeff)})" + (f"*{mono}" if mono else "")
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
