"""Two-variable meromorphic germ analysis.

Given coprime factored germs f and g, the holomorphic 1-form

    theta = (f_1...f_p g_1...g_q / (f g)) * (g df - f dg)

is computed by exact polynomial arithmetic (the division is verified, not
assumed).  Divisors of theta -- common factors of its two coefficients --
are located through the constant test: an irreducible h coprime to f*g
divides theta exactly when some constant c makes h divide f - c*g, and then
the h-power in f - c*g exceeds the h-power in theta by one.  Constants are
found by eliminating one variable with a resultant and taking the gcd of the
resulting coefficients as polynomials in c; algebraic constants are carried
in a simple extension field.

Declared factorizations are validated for pairwise coprimality and
squarefreeness, but irreducibility over the complex numbers is *not*
decided; a reducible declared factor surfaces downstream as a
lemma-violation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .deform import SolutionFamily, verify_family
from .errors import (
    ConsistencyError,
    CoprimalityError,
    LemmaViolationError,
    PreconditionError,
)
from .jets import Jet, VarContext
from .polygcd import (
    exact_divide,
    exact_power_dividing,
    is_constant,
    jet_gcd,
    jet_gcd_many,
    rational_roots,
    squarefree_decomposition,
    sturm_real_root_count,
    uni_deg,
    uni_divmod,
    uni_gcd,
    uni_scale,
    uni_squarefree_part,
    uni_trim,
)
from .pseudopoly import resultant_jets
from .scalars import FieldElement, NumberField, Scalar, scalar_is_rational

_C_NAME = "cconst"


@dataclass(frozen=True)
class FactoredGerm:
    """A germ supplied in factored form: ``prod base_i ^ exp_i``."""

    factors: Tuple[Tuple[Jet, int], ...]
    product: Jet

    @classmethod
    def build(cls, factors: Sequence[Tuple[Jet, int]]) -> "FactoredGerm":
        factors = tuple((base, int(exp)) for base, exp in factors)
        if not factors:
            raise PreconditionError("a factored germ needs at least one factor")
        ctx = factors[0][0].ctx
        if len(ctx.names) != 2 or ctx.n_params:
            raise PreconditionError("meromorphic analysis works in two coordinates")
        x1, x2 = ctx.names
        for base, exp in factors:
            if base.ctx != ctx:
                raise PreconditionError("factors in different contexts")
            if exp < 1:
                raise PreconditionError("factor exponents must be >= 1")
            if not base.exact:
                raise PreconditionError("factors must be exact polynomials")
            if base.is_zero() or is_constant(base):
                raise PreconditionError("factors must be nonconstant")
            if base.constant_term():
                raise PreconditionError("factors must vanish at the origin")
            sq = jet_gcd_many([base, base.derivative(x1).with_order(base.order),
                               base.derivative(x2).with_order(base.order)])
            if not is_constant(sq):
                raise PreconditionError(f"declared factor is not squarefree: {base}")
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                if not is_constant(jet_gcd(factors[i][0], factors[j][0])):
                    raise PreconditionError(
                        f"declared factors share a divisor: {factors[i][0]} and {factors[j][0]}")
        bound = sum(((base.total_degree() or 0) * exp for base, exp in factors)) + 2
        product = Jet.constant(ctx, 1, bound)
        for base, exp in factors:
            product = product * base.with_order(bound) ** exp
        return cls(factors=factors, product=product)

    @property
    def ctx(self) -> VarContext:
        return self.product.ctx

    def reduced(self, order: int) -> Jet:
        """The product of the bases, each taken once."""
        out = Jet.constant(self.ctx, 1, order)
        for base, _ in self.factors:
            out = out * base.with_order(order)
        return out


@dataclass(frozen=True)
class OneForm:
    """``a dx1 + b dx2`` with exact polynomial jet coefficients."""

    a: Jet
    b: Jet

    def divides(self, h: Jet) -> bool:
        return exact_divide(self.a, h) is not None and exact_divide(self.b, h) is not None

    def coefficient_gcd(self) -> Jet:
        return jet_gcd(self.a, self.b)


@dataclass(frozen=True)
class DivisorRecord:
    h: Jet
    c: Scalar
    mu: int
    rho: Jet
    minpoly: Optional[Tuple[Fraction, ...]] = None  # set when c is algebraic


@dataclass(frozen=True)
class MeroAnalysis:
    theta: OneForm
    records: Tuple[DivisorRecord, ...]
    omega: OneForm
    informational: Tuple[DivisorRecord, ...]  # mu = 0: constant exists, no theta-divisor
    reality: str  # "rational" | "real" | "not-real" | "indeterminate"

    @property
    def e(self) -> int:
        return len(self.records)


def _lift_pair(f: FactoredGerm, g: FactoredGerm) -> Tuple[Jet, Jet, int]:
    df = f.product.total_degree() or 0
    dg = g.product.total_degree() or 0
    bound = 2 * (df + dg) + sum((b.total_degree() or 0) for b, _ in f.factors + g.factors) + 4
    return f.product.with_order(bound), g.product.with_order(bound), bound


def theta(f: FactoredGerm, g: FactoredGerm) -> OneForm:
    """The reduced-numerator logarithmic 1-form of f/g.

    The exact division by ``f*g`` must come out with zero remainder; a
    nonzero remainder means the declared factorization was inconsistent.
    """
    if f.ctx != g.ctx:
        raise PreconditionError("germs in different contexts")
    fp, gp, bound = _lift_pair(f, g)
    if not is_constant(jet_gcd(fp, gp)):
        raise CoprimalityError("f and g share a factor")
    x1, x2 = f.ctx.names
    red = f.reduced(bound) * g.reduced(bound)
    fg = fp * gp
    coeffs = []
    for var in (x1, x2):
        num = red * (gp * fp.derivative(var).with_order(bound)
                     - fp * gp.derivative(var).with_order(bound))
        q = exact_divide(num, fg)
        if q is None:
            raise ConsistencyError(
                "the 1-form numerator is not divisible by f*g; "
                "the declared factorization is inconsistent")
        coeffs.append(q)
    return OneForm(a=coeffs[0], b=coeffs[1])


def _constants_for(h: Jet, fp: Jet, gp: Jet) -> List[Scalar]:
    """Admissible constants c with ``h | f - c g`` possible, by elimination.

    Returns every rational candidate plus at most one algebraic candidate
    represented by a generator of a fresh extension field.
    """
    ctx = h.ctx
    elim = ctx.names[1] if (h.degree_in(ctx.names[1]) or 0) >= 1 else ctx.names[0]
    keep = ctx.names[0] if elim == ctx.names[1] else ctx.names[1]
    ctx3 = VarContext.make((ctx.names[0], ctx.names[1], _C_NAME))
    h3 = h.in_context(ctx3)
    bound = ((fp.total_degree() or 0) + (gp.total_degree() or 0) + (h.total_degree() or 0) + 2) * \
        (1 + (h.degree_in(elim) or 0) + max(fp.degree_in(elim) or 0, gp.degree_in(elim) or 0))
    f3 = fp.in_context(ctx3).with_order(bound)
    g3 = gp.in_context(ctx3).with_order(bound)
    cvar = Jet.variable(ctx3, _C_NAME, bound)
    res = resultant_jets(h3.with_order(bound), f3 - cvar * g3, elim)
    keep_idx = ctx3.index(keep)
    c_idx = ctx3.index(_C_NAME)
    by_keep: Dict[int, List[Scalar]] = {}
    for key, coeff in res.terms.items():
        col = by_keep.setdefault(key[keep_idx], [])
        while len(col) <= key[c_idx]:
            col.append(Fraction(0))
        col[key[c_idx]] = coeff
    if not by_keep:
        raise LemmaViolationError(
            "elimination degenerated: the resultant vanishes identically")
    gcd_c: List[Scalar] = []
    for col in by_keep.values():
        gcd_c = uni_gcd(gcd_c, uni_trim(col)) if gcd_c else uni_gcd(uni_trim(col), [])
    if uni_deg(gcd_c) < 1:
        return []
    core = uni_squarefree_part(gcd_c)
    lead = core[-1]
    inv = (1 / lead) if isinstance(lead, Fraction) else lead.inverse()
    core = uni_scale(core, inv)
    out: List[Scalar] = list(rational_roots(core))
    leftover = list(core)
    for r in out:
        leftover, rem = uni_divmod(leftover, [-r, Fraction(1)])
        if rem:
            raise ConsistencyError("root division failed")
    if uni_deg(leftover) >= 2:
        # a candidate algebraic constant; its minimal polynomial is this
        # factor (irreducible for degree <= 3 since no rational roots remain)
        if any(not scalar_is_rational(c) for c in leftover):
            raise PreconditionError(
                "a second algebraic extension would be needed; the scalar "
                "tower supports a single one")
        field = NumberField([Fraction(c) for c in leftover], name=_C_NAME + "0")
        gen = field.generator()
        out.append(gen)
        if field.degree == 2:
            # the conjugate root lives in the same field
            out.append(-leftover[1] / leftover[2] - gen)
    elif uni_deg(leftover) == 1:
        out.append(-leftover[0] / leftover[1])
    return out


@dataclass(frozen=True)
class DivisorConstant:
    c: Scalar
    mu: int
    rho: Jet


def divisor_constant(h: Jet, f: FactoredGerm, g: FactoredGerm) -> Optional[DivisorConstant]:
    """The constant attached to an irreducible candidate divisor.

    Returns ``(c, mu, rho)`` with ``f - c g = h^(mu+1) rho`` and rho coprime
    to h, or None when no constant exists.  mu = 0 records a constant whose
    divisor power in the 1-form is zero.
    """
    if not h.exact:
        raise PreconditionError("candidate divisor must be an exact polynomial")
    if h.is_zero() or is_constant(h):
        raise PreconditionError("candidate divisor must be nonconstant")
    fp, gp, bound = _lift_pair(f, g)
    hb = h.with_order(bound)
    if not is_constant(jet_gcd(hb, fp)):
        raise PreconditionError("candidate divisor divides f")
    if not is_constant(jet_gcd(hb, gp)):
        raise PreconditionError("candidate divisor divides g")
    hits: List[DivisorConstant] = []
    for c in _constants_for(hb, fp, gp):
        target = fp - gp.scale(c)
        m, rho = exact_power_dividing(target, hb)
        if m >= 1:
            hits.append(DivisorConstant(c=c, mu=m - 1, rho=rho))
    if not hits:
        return None
    if len(hits) > 1:
        raise LemmaViolationError(
            "several constants divide through the same candidate; "
            "the candidate is not irreducible")
    return hits[0]


def _reality_flag(records: Sequence[DivisorRecord]) -> str:
    if all(scalar_is_rational(r.c) for r in records):
        return "rational"
    flags = []
    for r in records:
        if scalar_is_rational(r.c):
            continue
        n_real = sturm_real_root_count(list(r.minpoly))
        deg = len(r.minpoly) - 1
        if n_real == deg:
            flags.append("real")
        elif n_real == 0:
            flags.append("not-real")
        else:
            flags.append("indeterminate")
    if all(fl == "real" for fl in flags):
        return "real"
    if all(fl == "not-real" for fl in flags):
        return "not-real"
    return "indeterminate"


def analyze(f: FactoredGerm, g: FactoredGerm,
            candidates: Sequence[Jet] = ()) -> MeroAnalysis:
    """Full divisor analysis of the 1-form of f/g.

    The coefficient gcd of theta is split by squarefree decomposition and by
    the constants found for each squarefree piece; every divisor must admit
    a constant (anything else is a lemma violation signalling a reducible
    declared factor).  User candidates are checked informationally; those
    with mu = 0 never enter the divisor product.
    """
    th = theta(f, g)
    fp, gp, _ = _lift_pair(f, g)
    d = th.coefficient_gcd()
    records: List[DivisorRecord] = []
    if not is_constant(d):
        for piece, mult in squarefree_decomposition(d):
            remaining = piece
            for c in _constants_for(piece, fp, gp):
                shifted = fp - gp.scale(c)
                hc = jet_gcd(piece, shifted)
                if is_constant(hc):
                    continue
                dc_m, rho = exact_power_dividing(shifted, hc)
                if dc_m - 1 != mult:
                    raise LemmaViolationError(
                        f"power bookkeeping fails for divisor {hc}: power {dc_m} in "
                        f"f - c g vs multiplicity {mult} in the form")
                minpoly = c.field.minpoly if isinstance(c, FieldElement) else None
                records.append(DivisorRecord(h=hc, c=c, mu=mult, rho=rho, minpoly=minpoly))
                q = exact_divide(remaining, hc)
                if q is None:
                    raise LemmaViolationError(
                        "constant-split factors do not multiply back into the divisor")
                remaining = q
            if not is_constant(remaining):
                raise LemmaViolationError(
                    f"divisor {remaining} of the 1-form admits no constant; "
                    "a declared factor was not irreducible")
    omega_a, omega_b = th.a, th.b
    for rec in records:
        for _ in range(rec.mu):
            qa = exact_divide(omega_a, rec.h)
            qb = exact_divide(omega_b, rec.h)
            if qa is None or qb is None:
                raise ConsistencyError("dividing the form by its divisors failed")
            omega_a, omega_b = qa, qb
    omega = OneForm(a=omega_a, b=omega_b)
    if not is_constant(omega.coefficient_gcd()):
        raise ConsistencyError("the reduced form still has a nonconstant coefficient gcd")

    informational: List[DivisorRecord] = []
    for cand in candidates:
        if any(exact_divide(rec.h, cand) is not None and exact_divide(cand, rec.h) is not None
               for rec in records):
            continue
        dc = divisor_constant(cand, f, g)
        if dc is not None:
            minpoly = dc.c.field.minpoly if isinstance(dc.c, FieldElement) else None
            informational.append(DivisorRecord(h=cand, c=dc.c, mu=dc.mu,
                                               rho=dc.rho, minpoly=minpoly))
    return MeroAnalysis(theta=th, records=tuple(records), omega=omega,
                        informational=tuple(informational),
                        reality=_reality_flag(records))


# -- the emitted polynomial system ---------------------------------------


@dataclass(frozen=True)
class SystemS:
    """The polynomial system tying the factors, divisors, and cofactors.

    Equation k reads ``prod y1_i^(l_i) - c_k prod y2_j^(k_j) =
    y3_k^(mu_k+1) y4_k``; the reference solution is the vector of the
    declared factors, divisors, and cofactors, and substituting it into
    every equation must give exact zero.
    """

    y_ctx: VarContext
    y1_names: Tuple[str, ...]
    y2_names: Tuple[str, ...]
    y3_names: Tuple[str, ...]
    y4_names: Tuple[str, ...]
    equations: Tuple[Tuple[Jet, Jet], ...]  # (lhs, rhs) pairs
    constants: Tuple[Scalar, ...]
    f_exponents: Tuple[int, ...]
    g_exponents: Tuple[int, ...]
    mus: Tuple[int, ...]
    solution: Tuple[Jet, ...]
    verified: bool

    @property
    def residual_system(self) -> Tuple[Jet, ...]:
        return tuple(lhs - rhs for lhs, rhs in self.equations)


def emit_system(analysis: MeroAnalysis, f: FactoredGerm, g: FactoredGerm) -> SystemS:
    """Emit the equations over fresh variables plus the reference solution."""
    p, q, e = len(f.factors), len(g.factors), analysis.e
    y1 = tuple(f"y1_{i}" for i in range(1, p + 1))
    y2 = tuple(f"y2_{j}" for j in range(1, q + 1))
    y3 = tuple(f"y3_{k}" for k in range(1, e + 1))
    y4 = tuple(f"y4_{k}" for k in range(1, e + 1))
    y_ctx = VarContext.make(y1 + y2 + y3 + y4)

    solution = tuple(base for base, _ in f.factors) + tuple(base for base, _ in g.factors) \
        + tuple(rec.h for rec in analysis.records) + tuple(rec.rho for rec in analysis.records)
    deg_cap = max((s.total_degree() or 0 for s in solution), default=1)
    ell = tuple(exp for _, exp in f.factors)
    kk = tuple(exp for _, exp in g.factors)
    mus = tuple(rec.mu for rec in analysis.records)
    weight = max(sum(ell), sum(kk), max((m + 2 for m in mus), default=1))
    order = deg_cap * weight + 2

    def mono_product(names, exps):
        acc = Jet.constant(y_ctx, 1, order)
        for name, exp in zip(names, exps):
            acc = acc * Jet.variable(y_ctx, name, order) ** exp
        return acc

    lhs_core = mono_product(y1, ell)
    g_core = mono_product(y2, kk)
    equations = []
    for k, rec in enumerate(analysis.records):
        lhs = lhs_core - g_core.scale(rec.c)
        rhs = (Jet.variable(y_ctx, y3[k], order) ** (rec.mu + 1)
               * Jet.variable(y_ctx, y4[k], order))
        equations.append((lhs, rhs))

    subst = {name: sol.with_order(order)
             for name, sol in zip(y1 + y2 + y3 + y4, solution)}
    verified = True
    for lhs, rhs in equations:
        resid = (lhs - rhs).compose(subst, allow_constant=True)
        if not (resid.is_zero() and resid.exact):
            verified = False
    if not verified:
        raise ConsistencyError("the reference solution does not satisfy the emitted system")
    return SystemS(
        y_ctx=y_ctx, y1_names=y1, y2_names=y2, y3_names=y3, y4_names=y4,
        equations=tuple(equations),
        constants=tuple(rec.c for rec in analysis.records),
        f_exponents=ell, g_exponents=kk, mus=mus,
        solution=solution, verified=verified)


# -- deformation slices ---------------------------------------------------


@dataclass(frozen=True)
class SliceReport:
    t_value: Scalar
    division_exact: bool
    isolated_singularity: Optional[bool]
    reproduces_quotient: Optional[bool]  # only checked at t = 0
    polynomial_data: bool
    note: str


@dataclass(frozen=True)
class MeroDeformationReport:
    k0: int
    slices: Tuple[SliceReport, ...]


def build_mero_deformation(sysS: SystemS, family: SolutionFamily,
                           t_grid: Sequence[Scalar], k0: int,
                           f: FactoredGerm, g: FactoredGerm) -> MeroDeformationReport:
    """Slice the interpolated family at sampled parameter values.

    The witness is split as ``z = z_trunc + tail`` at degree k0; the slice at
    t substitutes ``z_trunc + (1-t) tail``.  For every sampled t the report
    records whether the divisor powers divide the slice form exactly and
    whether the reduced slice form has a constant coefficient gcd.  Division
    failures are per-slice report entries, not fatal errors.
    """
    check = verify_family(family)
    if not check.passed:
        raise PreconditionError("the family does not satisfy the emitted system")
    p = len(sysS.y1_names)
    q = len(sysS.y2_names)
    e = len(sysS.y3_names)
    if len(family.family) != p + q + 2 * e:
        raise PreconditionError("family component count does not match the system")

    x_ctx = family.x_ctx
    slices: List[SliceReport] = []
    for t0 in t_grid:
        subst = {}
        for name, w in zip(family.z_names, family.witness):
            trunc = w.polynomial_part(min(k0, w.order - 1))
            tail = w - trunc
            subst[name] = trunc + tail.scale(1 - t0)
        comps = [(comp.compose(subst) if subst else comp.in_context(x_ctx))
                 for comp in family.family]
        f_slices = comps[:p]
        g_slices = comps[p:p + q]
        h_slices = comps[p + q:p + q + e]
        note = ""
        division_exact = True
        isolated: Optional[bool] = None
        poly_data = all(c.exact for c in comps)
        try:
            fg_f = FactoredGerm.build(list(zip(f_slices, sysS.f_exponents)))
            fg_g = FactoredGerm.build(list(zip(g_slices, sysS.g_exponents)))
            th = theta(fg_f, fg_g)
            omega_a, omega_b = th.a, th.b
            for hk, mu in zip(h_slices, sysS.mus):
                hk = hk.with_order(omega_a.order)
                for _ in range(mu):
                    qa = exact_divide(omega_a, hk)
                    qb = exact_divide(omega_b, hk)
                    if qa is None or qb is None:
                        division_exact = False
                        break
                    omega_a, omega_b = qa, qb
                if not division_exact:
                    break
            if division_exact:
                isolated = is_constant(jet_gcd(omega_a, omega_b))
        except (PreconditionError, ConsistencyError) as err:
            division_exact = False
            note = str(err)

        reproduces = None
        if t0 == 0:
            fprod = _product(f_slices, sysS.f_exponents)
            gprod = _product(g_slices, sysS.g_exponents)
            bound = max(fprod.order, gprod.order) + (f.product.total_degree() or 0) \
                + (g.product.total_degree() or 0)
            lhs = fprod.with_order(bound) * g.product.in_context(x_ctx).with_order(bound)
            rhs = f.product.in_context(x_ctx).with_order(bound) * gprod.with_order(bound)
            reproduces = (lhs - rhs).is_zero()
        slices.append(SliceReport(
            t_value=t0, division_exact=division_exact,
            isolated_singularity=isolated, reproduces_quotient=reproduces,
            polynomial_data=poly_data, note=note))
    return MeroDeformationReport(k0=k0, slices=tuple(slices))


def _product(jets: Sequence[Jet], exps: Sequence[int]) -> Jet:
    bound = sum(((j.total_degree() or 0) * e for j, e in zip(jets, exps))) + 2
    acc = Jet.constant(jets[0].ctx, 1, bound)
    for j, e in zip(jets, exps):
        acc = acc * j.with_order(bound) ** e
    return acc
