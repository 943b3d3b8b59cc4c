"""Verification of parametrized solution families and deformation building.

A :class:`SolutionFamily` packages a polynomial system ``f(x, y)``, a family
of candidate solutions ``y(x, z)`` in auxiliary variables ``z``, a witness
``z(x)`` vanishing at the origin, and the target solution ``y_hat(x)`` the
family is supposed to pass through.  Verification is pure substitution: the
residuals are computed, never thresholded.

General solution *synthesis* is out of scope; the one constructive case
carried here is the binomial family for ``y1^2 = y2^3`` over a single
variable, where the whole family can be written down from the valuation of
the target.  On top of that, :func:`build_deformation` turns a verified
solution of a tower's discriminant/preparation identities into the
one-parameter deformation ``F(t, x)`` whose ``t = 1`` fiber is the original
distinguished polynomial and whose ``t = 0`` fiber has the witness set to
zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Tuple

from .errors import (
    ContextMismatchError,
    NotASolutionError,
    PreconditionError,
)
from .jets import Jet, VarContext
from .pseudopoly import PseudoPolynomial, generalized_discriminants
from .scalars import scalar_nth_root
from .tower import Tower


@dataclass(frozen=True)
class SolutionFamily:
    """A system, a parametrized family of solutions, and the target it hits.

    Contexts are rigid by construction: system entries live in
    ``(x..., y...)``, family entries in ``(x..., z...)``, witness and target
    entries in ``(x...)``, with the names supplied explicitly.
    """

    x_names: Tuple[str, ...]
    y_names: Tuple[str, ...]
    z_names: Tuple[str, ...]
    system: Tuple[Jet, ...]
    family: Tuple[Jet, ...]
    witness: Tuple[Jet, ...]
    target: Tuple[Jet, ...]

    def __post_init__(self):
        if len(self.family) != len(self.y_names):
            raise PreconditionError("one family entry per y-variable is required")
        if len(self.witness) != len(self.z_names):
            raise PreconditionError("one witness entry per z-variable is required")
        if len(self.target) != len(self.y_names):
            raise PreconditionError("one target entry per y-variable is required")
        sys_ctx = VarContext.make(self.x_names + self.y_names)
        fam_ctx = VarContext.make(self.x_names + self.z_names)
        x_ctx = VarContext.make(self.x_names)
        for eq in self.system:
            if eq.ctx != sys_ctx:
                raise ContextMismatchError("system entry context must be (x..., y...)")
        for comp in self.family:
            if comp.ctx != fam_ctx:
                raise ContextMismatchError("family entry context must be (x..., z...)")
        for w in self.witness:
            if w.ctx != x_ctx:
                raise ContextMismatchError("witness context must be (x...)")
            if w.constant_term():
                raise PreconditionError("witness entries must vanish at the origin")
        for tgt in self.target:
            if tgt.ctx != x_ctx:
                raise ContextMismatchError("target context must be (x...)")

    @property
    def fam_ctx(self) -> VarContext:
        return VarContext.make(self.x_names + self.z_names)

    @property
    def x_ctx(self) -> VarContext:
        return VarContext.make(self.x_names)


@dataclass(frozen=True)
class NestedShape:
    """Per-component prefixes: solution component i may use ``x_1..x_sigma(i)``
    and ``z_1..z_tau(i)``; both maps must be nondecreasing."""

    sigma: Tuple[int, ...]
    tau: Tuple[int, ...]

    def __post_init__(self):
        for seq, label in ((self.sigma, "sigma"), (self.tau, "tau")):
            if any(b < a for a, b in zip(seq, seq[1:])):
                raise PreconditionError(f"{label} must be nondecreasing")
            if any(v < 0 for v in seq):
                raise PreconditionError(f"{label} must be nonnegative")


@dataclass(frozen=True)
class FamilyVerification:
    equation_residuals: Tuple[Jet, ...]
    target_residuals: Tuple[Jet, ...]
    order: int

    @property
    def equations_hold(self) -> bool:
        return all(r.is_zero() for r in self.equation_residuals)

    @property
    def target_hit(self) -> bool:
        return all(r.is_zero() for r in self.target_residuals)

    @property
    def passed(self) -> bool:
        return self.equations_hold and self.target_hit


def verify_family(sf: SolutionFamily, order: Optional[int] = None) -> FamilyVerification:
    """Check ``f(x, y(x,z)) == 0`` and ``y(x, z(x)) == y_hat(x)`` modulo the
    order, reporting the residuals themselves."""
    subst = dict(zip(sf.y_names, sf.family))
    eq_residuals = []
    for eq in sf.system:
        res = eq.compose(subst, allow_constant=True)
        if order is not None:
            res = res.truncate(order)
        eq_residuals.append(res)
    wsubst = dict(zip(sf.z_names, sf.witness))
    tgt_residuals = []
    for comp, tgt in zip(sf.family, sf.target):
        through = comp.compose(wsubst) if wsubst else comp.in_context(sf.x_ctx)
        res = through - tgt
        if order is not None:
            res = res.truncate(order)
        tgt_residuals.append(res)
    all_orders = [r.order for r in eq_residuals + tgt_residuals]
    return FamilyVerification(tuple(eq_residuals), tuple(tgt_residuals),
                              order=min(all_orders) if all_orders else (order or 0))


@dataclass(frozen=True)
class NestingViolation:
    component: str
    variable: str
    reason: str


def verify_nested(sf: SolutionFamily, shape: NestedShape,
                  order: Optional[int] = None):
    """Run :func:`verify_family` and additionally check the nested shape:
    component i uses only its allowed x- and z-prefix, and every z the
    component may use depends only on the same x-prefix."""
    if len(shape.sigma) != len(sf.y_names) or len(shape.tau) != len(sf.y_names):
        raise PreconditionError("shape length must match the number of y-components")
    if shape.tau and max(shape.tau) > len(sf.z_names):
        raise PreconditionError("tau exceeds the number of z-variables")
    if shape.sigma and max(shape.sigma) > len(sf.x_names):
        raise PreconditionError("sigma exceeds the number of x-variables")
    violations: List[NestingViolation] = []
    for i, comp in enumerate(sf.family):
        allowed = set(sf.x_names[: shape.sigma[i]]) | set(sf.z_names[: shape.tau[i]])
        for name in comp.occurring():
            if name not in allowed:
                violations.append(NestingViolation(
                    component=sf.y_names[i], variable=name,
                    reason=f"component {sf.y_names[i]} may only use "
                           f"x-prefix {shape.sigma[i]} and z-prefix {shape.tau[i]}"))
        for j in range(shape.tau[i]):
            allowed_x = set(sf.x_names[: shape.sigma[i]])
            for name in sf.witness[j].occurring():
                if name not in allowed_x:
                    violations.append(NestingViolation(
                        component=sf.z_names[j], variable=name,
                        reason=f"witness {sf.z_names[j]} must depend only on "
                               f"x-prefix {shape.sigma[i]} (required by {sf.y_names[i]})"))
    verification = verify_family(sf, order)
    return verification, tuple(violations)


def jet_nth_root(a: Jet, n: int) -> Jet:
    """Exact n-th root of a single-variable jet, coefficient by coefficient
    from the lowest term.

    The valuation must be divisible by n and the leading coefficient must
    have an n-th root in the scalar field.
    """
    if len(a.ctx.names) != 1:
        raise PreconditionError("root extraction is implemented for one variable")
    if a.is_zero():
        raise NotASolutionError("cannot extract a root of zero")
    val = a.order_of()
    if val % n:
        raise NotASolutionError(f"valuation {val} is not divisible by {n}")
    lead = a.terms[(val,)]
    lead_root = scalar_nth_root(lead, n)
    if lead_root is None:
        raise NotASolutionError(
            f"leading coefficient {lead} has no {n}-th root in the scalar field")
    # a = lead * x^val * (1 + B); solve (1 + C)^n = 1 + B degree by degree
    shifted = {(k[0] - val,): v / lead for k, v in a.terms.items()}
    u = Jet(a.ctx, a.order - val, shifted, a.exact)
    w = Jet.constant(a.ctx, 1, u.order)
    for d in range(1, u.order):
        resid = u - w ** n
        coeff = resid.terms.get((d,))
        if coeff:
            w = w + Jet.monomial(a.ctx, (d,), coeff * Fraction(1, n), order=u.order)
    shift = val // n
    scaled = w.scale(lead_root)
    root = Jet(a.ctx, u.order + shift,
               {(k[0] + shift,): v for k, v in scaled.terms.items()}, False)
    # certify exactness when the power genuinely reproduces the input
    if a.exact:
        lifted = Jet(a.ctx, a.order, root.terms, True)
        if (lifted.with_order(a.order + n * (lifted.total_degree() or 0)) ** n
                - a.with_order(a.order + n * (lifted.total_degree() or 0))).is_zero():
            return lifted
    if ((root ** n) - a.truncate(root.order)).is_zero():
        return root
    raise NotASolutionError(f"input is not an exact {n}-th power to its order")


def binomial_family(y1_hat: Jet, y2_hat: Jet, z_name: str = "z") -> SolutionFamily:
    """The explicit one-z family through a solution of ``y1^2 = y2^3`` over a
    single variable.

    With d the valuation of the first target component (necessarily a
    multiple of 3) and ``e = d/3 - 1``, the family is
    ``(x^{3e} z^3, x^{2e} z^2)`` and the witness is the cube root of
    ``y1_hat / x^{3e}``.
    """
    if y1_hat.ctx != y2_hat.ctx or len(y1_hat.ctx.names) != 1:
        raise PreconditionError("targets must share a single-variable context")
    if y1_hat.is_zero():
        raise NotASolutionError("first target component vanishes to its order")
    x_name = y1_hat.ctx.names[0]
    if (y1_hat ** 2 - y2_hat ** 3).terms:
        raise NotASolutionError("targets do not satisfy y1^2 = y2^3 to the order")
    d = y1_hat.order_of()
    if d % 3:
        raise NotASolutionError(f"valuation {d} of the first component is not in 3Z")
    e = d // 3 - 1
    shifted = {}
    for key, coeff in y1_hat.terms.items():
        if key[0] < 3 * e:
            raise NotASolutionError("first component is not divisible by the expected monomial")
        shifted[(key[0] - 3 * e,)] = coeff
    cube = Jet(y1_hat.ctx, y1_hat.order - 3 * e, shifted, y1_hat.exact)
    witness = jet_nth_root(cube, 3)
    order = min(y1_hat.order, y2_hat.order)
    witness = witness.with_order(order) if witness.exact else witness.truncate(order)

    x_names = (x_name,)
    y_names = ("y1", "y2") if x_name not in ("y1", "y2") else ("yy1", "yy2")
    z_names = (z_name,)
    fam_ctx = VarContext.make(x_names + z_names)
    sys_ctx = VarContext.make(x_names + y_names)
    z = Jet.variable(fam_ctx, z_name, order)
    xv = Jet.variable(fam_ctx, x_name, order)
    family = (xv ** (3 * e) * z ** 3, xv ** (2 * e) * z ** 2)
    system = (Jet.variable(sys_ctx, y_names[0], order) ** 2
              - Jet.variable(sys_ctx, y_names[1], order) ** 3,)
    sf = SolutionFamily(
        x_names=x_names, y_names=y_names, z_names=z_names,
        system=system, family=family,
        witness=(witness,),
        target=(y1_hat, y2_hat))
    check = verify_family(sf, order)
    if not check.passed:
        raise NotASolutionError("extracted family does not reproduce the targets")
    return sf


# -- deformation of a tower solution ------------------------------------


@dataclass(frozen=True)
class LevelFamilies:
    """Families for one level's unknowns: the coefficient vector of the
    pseudopolynomial at this level and the unit used one step below it."""

    coeffs: Tuple[Jet, ...]
    unit: Jet


@dataclass(frozen=True)
class TowerSolution:
    """A parametrized solution of a tower's preparation identities.

    ``families`` maps a level index (as in the tower) to the families for
    that level's coefficient vector, in the family context ``(x..., z...)``;
    ``units`` maps the level index *below* each descent to the unit family.
    ``tau`` bounds the z-prefix allowed at each level; witnesses in the
    prefix of level i must depend on ``x_1..x_i`` only.
    """

    tower: Tower
    families: Mapping[int, Tuple[Jet, ...]]
    units: Mapping[int, Jet]
    witness: Tuple[Jet, ...]
    z_names: Tuple[str, ...]
    tau: Mapping[int, int]


@dataclass(frozen=True)
class DeformationResult:
    deformation: Jet
    parameter: str
    fiber_one_matches: bool
    fiber_zero: Jet
    fiber_zero_polynomial: bool
    identity_residuals: Tuple[Jet, ...]
    nesting_violations: Tuple[NestingViolation, ...]


def _family_pseudopoly(tsol: TowerSolution, level_index: int, fam_ctx: VarContext,
                       var: str) -> PseudoPolynomial:
    coeffs = [c.in_context(fam_ctx) for c in tsol.families[level_index]]
    return PseudoPolynomial(var, coeffs)


def build_deformation(tsol: TowerSolution, t_name: str = "t") -> DeformationResult:
    """Substitute ``z -> t * z(x)`` into the top-level coefficient families.

    The supplied families are first verified against the tower's own
    identities (the discriminant vanishing list and the unit-times-prepared
    factorization at every descent, evaluated on the families) and against
    the nesting bounds; verification failures raise
    :class:`NotASolutionError`.
    """
    tower = tsol.tower
    ctx = tower.source.ctx
    if ctx.n_params:
        raise PreconditionError("the tower must be parameter-free")
    x_names = ctx.coords
    fam_ctx = VarContext.make(tuple(x_names) + tuple(tsol.z_names))
    x_ctx = VarContext.make(tuple(x_names))

    for w in tsol.witness:
        if w.constant_term():
            raise PreconditionError("witness entries must vanish at the origin")

    residuals: List[Jet] = []
    violations: List[NestingViolation] = []

    levels = list(tower.levels)
    for pos, level in enumerate(levels):
        i = level.index
        fam = tsol.families.get(i)
        if fam is None or len(fam) != level.degree:
            raise PreconditionError(f"missing or ill-sized family for level {i}")
        # nesting: level-i data may use x_1..x_{i-1} and z_1..z_{tau(i-1)}
        allowed_x = set(x_names[: i - 1])
        allowed_z = set(tsol.z_names[: tsol.tau.get(i - 1, 0)])
        for j, comp in enumerate(fam):
            for name in comp.occurring():
                if name not in allowed_x | allowed_z:
                    violations.append(NestingViolation(
                        component=f"a[{i},{j + 1}]", variable=name,
                        reason=f"level {i} coefficients may use x-prefix {i - 1} "
                               f"and z-prefix {tsol.tau.get(i - 1, 0)}"))
        for j in range(tsol.tau.get(i - 1, 0)):
            for name in tsol.witness[j].occurring():
                if name not in allowed_x:
                    violations.append(NestingViolation(
                        component=tsol.z_names[j], variable=name,
                        reason=f"witness allowed at level {i} must depend on x-prefix {i - 1}"))
        # target consistency: family composed with the witness hits the
        # tower's actual coefficients
        wsubst = {name: w.in_context(x_ctx) for name, w in zip(tsol.z_names, tsol.witness)}
        for j, comp in enumerate(fam):
            through = comp.compose(wsubst) if wsubst else comp.in_context(x_ctx)
            residuals.append(through - level.poly.coeffs[j].in_context(x_ctx))
        # descent identity evaluated on the families
        if pos + 1 < len(levels) or tower.terminal_disc_index is not None:
            fam_poly = _family_pseudopoly(tsol, i, fam_ctx, x_names[i - 1])
            gd = generalized_discriminants(fam_poly)
            below = levels[pos + 1] if pos + 1 < len(levels) else None
            l = below.disc_index if below is not None else tower.terminal_disc_index
            unit_level = below.index if below is not None else tower.terminal_index
            unit_fam = tsol.units.get(unit_level)
            if unit_fam is None:
                raise PreconditionError(f"missing unit family for level {unit_level}")
            allowed_u = set(x_names[:unit_level]) | set(tsol.z_names[: tsol.tau.get(unit_level, 0)])
            for name in unit_fam.occurring():
                if name not in allowed_u:
                    violations.append(NestingViolation(
                        component=f"u[{unit_level}]", variable=name,
                        reason=f"the unit below level {i} may use x-prefix {unit_level} "
                               f"and z-prefix {tsol.tau.get(unit_level, 0)}"))
            unit_fam = unit_fam.in_context(fam_ctx)
            for j in range(l - 1):
                residuals.append(gd.entries[j])
            if below is not None:
                rhs = unit_fam * _family_pseudopoly(tsol, below.index, fam_ctx,
                                                    x_names[below.index - 1]).as_jet()
            else:
                rhs = unit_fam
            residuals.append(gd.entries[l - 1] - rhs)

    bad = [r for r in residuals if not r.is_zero()]
    if bad:
        raise NotASolutionError(
            f"{len(bad)} tower identities fail on the supplied families; "
            f"first nonzero residual: {bad[0]}")
    if violations:
        raise NotASolutionError(
            f"nesting violated: {violations[0].reason} (variable {violations[0].variable})")

    top = levels[0]
    def_ctx = VarContext.make(tuple(x_names), params=(t_name,))
    order = tower.order
    tvar = Jet.variable(def_ctx, t_name, order)
    subst = {}
    for name, w in zip(tsol.z_names, tsol.witness):
        subst[name] = tvar * w.in_context(def_ctx)
    var = x_names[top.index - 1]
    F = Jet.monomial(def_ctx, _key(def_ctx, var, top.degree), order=order)
    for j, fam_coeff in enumerate(tsol.families[top.index], start=1):
        coeff = fam_coeff.in_context(fam_ctx).compose(subst) if subst else \
            fam_coeff.in_context(def_ctx)
        F = F + coeff * Jet.monomial(def_ctx, _key(def_ctx, var, top.degree - j), order=order)

    fiber_one = F.restrict({t_name: 1}, drop=True)
    matches = (fiber_one - top.poly.as_jet().in_context(fiber_one.ctx)).is_zero()
    fiber_zero = F.restrict({t_name: 0}, drop=True)
    return DeformationResult(
        deformation=F, parameter=t_name,
        fiber_one_matches=matches,
        fiber_zero=fiber_zero,
        fiber_zero_polynomial=fiber_zero.exact,
        identity_residuals=tuple(residuals),
        nesting_violations=tuple(violations))


def _key(ctx: VarContext, var: str, e: int) -> Tuple[int, ...]:
    key = [0] * len(ctx.names)
    key[ctx.index(var)] = e
    return tuple(key)
