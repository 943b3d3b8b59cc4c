"""The recursive equisingularity ladder and the parametrized-family check.

Building a tower for a germ ``f`` in coordinates ``x_1..x_n`` proceeds top
down: prepare ``f`` in ``x_n`` (after a regularizing linear change if
needed), then repeatedly take the first nonzero generalized discriminant of
the current distinguished polynomial, prepare it in the next coordinate
down, and stop as soon as that discriminant is a unit.  Each level records
the discriminant index, the unit, and the coordinate change used, so the
whole ladder can be re-verified from its stored data.

For a family over parameters ``t`` the same descent runs with ``t`` inert:
coordinate changes act on the ``x`` block only, and at every step the chosen
discriminant must vanish identically on the parameter axis ``{x = 0}``.  A
discriminant that vanishes at ``t = 0`` without vanishing identically is the
negative witness.  Any "vanishes identically" claim that rests on truncated
non-exact data downgrades the verdict to inconclusive rather than guessing.

Analytic conditions (polydisc radii, root localization) are not symbolically
decidable and are outside every verdict issued here; reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    ConsistencyError,
    InconclusiveError,
    PreconditionError,
)
from .jets import Jet
from .pseudopoly import (
    GenDiscSequence,
    PseudoPolynomial,
    generalized_discriminants,
)
from .weierstrass import (
    LinearChange,
    find_regular_change,
    regularity_order,
    weierstrass_prepare,
)

SCOPE_NOTE = ("verdicts cover the discriminant-ladder conditions only; "
              "polydisc radii and root-localization are analytic conditions "
              "outside symbolic reach")


@dataclass(frozen=True)
class TowerLevel:
    """One rung of the ladder.

    ``disc_index`` is the first-nonzero discriminant index used to descend
    *to* this level from the one above (None at the top).  The stored
    identity is ``Delta_{disc_index}(coefficients of parent) == unit * poly``
    to the certification order; at the top it is ``source == unit * poly``.
    """

    index: int
    poly: PseudoPolynomial
    unit: Jet
    disc_index: Optional[int]
    change: LinearChange

    @property
    def degree(self) -> int:
        return self.poly.degree


@dataclass(frozen=True)
class Tower:
    """The full ladder for one germ (or one system of germs)."""

    input_jet: Jet
    source: Jet  # input after all recorded coordinate changes
    levels: Tuple[TowerLevel, ...]
    terminal_index: int
    terminal_disc_index: Optional[int]
    terminal_unit: Jet
    kind: str  # "unit-reached" (full descent) or "trivial" (early unit)
    order: int
    seed: int
    caveats: Tuple[str, ...]
    factors: Optional[Tuple[PseudoPolynomial, ...]] = None

    @property
    def conclusive(self) -> bool:
        return not self.caveats

    @property
    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(level.degree for level in self.levels)

    @property
    def index_sequence(self) -> Tuple[int, ...]:
        """The discriminant indices l, from the top descent downwards."""
        out = [level.disc_index for level in self.levels if level.disc_index is not None]
        if self.terminal_disc_index is not None:
            out.append(self.terminal_disc_index)
        return tuple(out)

    @property
    def shape(self) -> Tuple[Tuple[int, int], ...]:
        """(degree, descent index) pairs; the invariant fingerprint."""
        degs = self.degree_sequence
        idxs = self.index_sequence
        return tuple(zip(degs, idxs))


@dataclass(frozen=True)
class LevelCertificate:
    index: int
    degree: int
    disc_index: Optional[int]
    poly: PseudoPolynomial
    unit: Jet
    change: LinearChange
    axis_vanishing_exact: bool


@dataclass(frozen=True)
class FamilyReport:
    verdict: str  # "equisingular" | "not-equisingular" | "inconclusive"
    levels: Tuple[LevelCertificate, ...]
    witness: Optional[Jet]
    witness_note: str
    terminal_unit: Optional[Jet]
    uncertified: Tuple[str, ...]
    order: int
    seed: int
    scope_note: str = SCOPE_NOTE


def _prepare_in(current: Jet, var: str, block: Sequence[str], seed: int):
    """Regularize (if needed) and prepare; returns (prepared, change)."""
    from .jets import INFINITE_ORDER

    if regularity_order(current, var) == INFINITE_ORDER:
        change = find_regular_change(current, var, block, seed=seed)
        current = change.apply(current)
    else:
        change = LinearChange.identity(tuple(block))
    return weierstrass_prepare(current, var), change


def _gendisc_caveats(gd: GenDiscSequence, level: int) -> List[str]:
    return [
        f"descent to level {level}: vanishing of discriminant index {l} "
        f"is certified only modulo degree {gd.entries[l - 1].order}"
        for l in gd.uncertified_below
    ]


def build_tower(f: Jet, seed: int = 0) -> Tower:
    """Build the ladder for a single germ in pure coordinates.

    Raises :class:`InconclusiveError` when a level's first-nonzero choice
    would have to skip a vanishing claim that only holds modulo the
    certification order on non-exact data.
    """
    if f.ctx.n_params:
        raise PreconditionError("build_tower expects a parameter-free context")
    return _descend(f, seed=seed, strict_zero_claims=True)


def _descend(f: Jet, seed: int, strict_zero_claims: bool) -> Tower:
    ctx = f.ctx
    xs = ctx.coords
    if not xs:
        raise PreconditionError("need at least one coordinate")
    if f.is_zero():
        raise PreconditionError(f"input vanishes to order {f.order}")

    n = len(xs)
    caveats: List[str] = []
    levels: List[TowerLevel] = []
    source = f
    current = f
    disc_index: Optional[int] = None

    for i in range(n, 0, -1):
        var = xs[i - 1]
        block = xs[:i]
        prepared, change = _prepare_in(current, var, block, seed)
        if not change.is_identity:
            source = change.apply(source)
            levels = [
                TowerLevel(
                    index=lv.index,
                    poly=lv.poly.map_coeffs(change.apply),
                    unit=change.apply(lv.unit),
                    disc_index=lv.disc_index,
                    change=lv.change,
                )
                for lv in levels
            ]
        if prepared.poly.degree == 0:
            # the whole germ is a unit; empty zero set, nothing to ladder
            return Tower(
                input_jet=f, source=source, levels=tuple(levels),
                terminal_index=i, terminal_disc_index=disc_index,
                terminal_unit=prepared.unit, kind="trivial",
                order=f.order, seed=seed, caveats=tuple(caveats))
        levels.append(TowerLevel(index=i, poly=prepared.poly, unit=prepared.unit,
                                 disc_index=disc_index, change=change))
        gd = generalized_discriminants(prepared.poly)
        new_caveats = _gendisc_caveats(gd, i - 1)
        caveats.extend(new_caveats)
        if new_caveats and strict_zero_claims:
            raise InconclusiveError("; ".join(new_caveats))
        disc_index = gd.first_nonzero
        delta = gd.first_entry
        if delta.is_unit():
            kind = "unit-reached" if i - 1 == 0 else "trivial"
            return Tower(
                input_jet=f, source=source, levels=tuple(levels),
                terminal_index=i - 1, terminal_disc_index=disc_index,
                terminal_unit=delta, kind=kind,
                order=f.order, seed=seed, caveats=tuple(caveats))
        current = delta

    # the bottom discriminants are constants, so the loop always terminates
    raise ConsistencyError("descent reached the bottom without a unit discriminant")


def build_tower_system(gs: Sequence[Jet], seed: int = 0) -> Tower:
    """Ladder for a finite system of germs: prepare each one, descend on the
    product, and keep the per-factor coefficient blocks in the report."""
    gs = list(gs)
    if not gs:
        raise PreconditionError("empty system")
    ctx = gs[0].ctx
    if ctx.n_params:
        raise PreconditionError("build_tower_system expects a parameter-free context")
    for g in gs:
        if g.ctx != ctx:
            raise PreconditionError("system entries in different contexts")
        if g.is_zero():
            raise PreconditionError("system entry vanishes to the certification order")
    var = ctx.coords[-1]
    product = gs[0]
    for g in gs[1:]:
        product = product * g
    if product.is_zero():
        raise PreconditionError("product of the system vanishes to the certification order")
    prepared0, change = _prepare_in(product, var, ctx.coords, seed)
    factors = []
    unit = Jet.constant(ctx, 1, product.order)
    for g in gs:
        pf = weierstrass_prepare(change.apply(g), var)
        factors.append(pf.poly)
        unit = unit * pf.unit
    top_jet = factors[0].as_jet()
    for fac in factors[1:]:
        top_jet = top_jet * fac.as_jet()

    inner = _descend(top_jet, seed=seed, strict_zero_claims=True)
    # carry the product and the combined unit through any coordinate changes
    # the inner descent applied, so the stored identities stay coherent
    source = change.apply(product)
    for lv in inner.levels:
        if not lv.change.is_identity:
            source = lv.change.apply(source)
            unit = lv.change.apply(unit)
            factors = [fac.map_coeffs(lv.change.apply) for fac in factors]
    top_level = inner.levels[0]
    levels = (TowerLevel(index=top_level.index, poly=top_level.poly,
                         unit=top_level.unit * unit, disc_index=None,
                         change=change),) + inner.levels[1:]
    return Tower(
        input_jet=product, source=source, levels=levels,
        terminal_index=inner.terminal_index,
        terminal_disc_index=inner.terminal_disc_index,
        terminal_unit=inner.terminal_unit, kind=inner.kind,
        order=product.order, seed=seed, caveats=inner.caveats,
        factors=tuple(factors))


@dataclass(frozen=True)
class LevelVerification:
    index: int
    identity_holds: bool
    vanishing_holds: bool
    note: str


@dataclass(frozen=True)
class TowerVerification:
    levels: Tuple[LevelVerification, ...]
    terminal_ok: bool
    all_passed: bool


def verify_tower(tw: Tower) -> TowerVerification:
    """Recompute both sides of every stored identity and the vanishing lists.

    Failures are report entries, never exceptions.
    """
    results: List[LevelVerification] = []
    for pos, level in enumerate(tw.levels):
        if pos == 0:
            lhs = tw.source
            vanish_ok = True
        else:
            gd = generalized_discriminants(tw.levels[pos - 1].poly)
            l = level.disc_index
            vanish_ok = all(gd.entries[j].is_zero() for j in range(l - 1))
            lhs = gd.entries[l - 1]
        rhs = level.unit * level.poly.as_jet()
        ok = (lhs - rhs).is_zero()
        note = "" if ok and vanish_ok else "identity or vanishing fails"
        results.append(LevelVerification(level.index, ok, vanish_ok, note))

    terminal_ok = True
    if tw.levels and tw.terminal_disc_index is not None:
        gd = generalized_discriminants(tw.levels[-1].poly)
        l = tw.terminal_disc_index
        terminal_ok = (all(gd.entries[j].is_zero() for j in range(l - 1))
                       and (gd.entries[l - 1] - tw.terminal_unit).is_zero()
                       and tw.terminal_unit.is_unit())
    all_passed = terminal_ok and all(r.identity_holds and r.vanishing_holds for r in results)
    return TowerVerification(tuple(results), terminal_ok, all_passed)


def check_family(F: Jet, seed: int = 0) -> FamilyReport:
    """Decide Zariski equisingularity of a parametrized family.

    The parameter block of the context is inert: all coordinate changes act
    on the coordinate block only.  See the module docstring for the verdict
    semantics; inconclusive is returned, never guessed past.
    """
    ctx = F.ctx
    xs = ctx.coords
    if not xs:
        raise PreconditionError("need at least one coordinate")
    if F.is_zero():
        raise PreconditionError(f"input vanishes to order {F.order}")

    uncertified: List[str] = []
    zero_x = {name: 0 for name in xs}

    on_axis = F.restrict(zero_x)
    if not on_axis.is_zero():
        return FamilyReport(
            verdict="not-equisingular", levels=(), witness=on_axis,
            witness_note="the family does not vanish on the parameter axis",
            terminal_unit=None, uncertified=(), order=F.order, seed=seed)
    if not on_axis.exact:
        uncertified.append(
            f"vanishing of the family on the parameter axis is certified only modulo degree {F.order}")

    levels: List[LevelCertificate] = []
    current = F
    disc_index: Optional[int] = None
    n = len(xs)

    for i in range(n, 0, -1):
        var = xs[i - 1]
        block = xs[:i]
        prepared, change = _prepare_in(current, var, block, seed)
        if prepared.poly.degree == 0:
            raise ConsistencyError("family preparation degenerated to a unit")
        if not change.is_identity:
            levels = [
                LevelCertificate(
                    index=lc.index,
                    degree=lc.degree,
                    disc_index=lc.disc_index,
                    poly=lc.poly.map_coeffs(change.apply),
                    unit=change.apply(lc.unit),
                    change=lc.change,
                    axis_vanishing_exact=lc.axis_vanishing_exact,
                )
                for lc in levels
            ]
        last_coeff_axis = prepared.poly.coeffs[-1].restrict(zero_x)
        if not last_coeff_axis.is_zero():
            # preparation produced a polynomial not vanishing on the axis;
            # only reachable when the axis-vanishing above was uncertified
            return _family_negative(levels, last_coeff_axis, uncertified, F, seed,
                                    "prepared polynomial does not vanish on the parameter axis")
        if not last_coeff_axis.exact:
            uncertified.append(
                f"level {i}: vanishing of the prepared polynomial on the parameter "
                f"axis is certified only modulo degree {last_coeff_axis.order}")
        levels.append(LevelCertificate(
            index=i, degree=prepared.poly.degree, disc_index=disc_index,
            poly=prepared.poly, unit=prepared.unit, change=change,
            axis_vanishing_exact=last_coeff_axis.exact))

        gd = generalized_discriminants(prepared.poly)
        uncertified.extend(_gendisc_caveats(gd, i - 1))
        disc_index = gd.first_nonzero
        delta = gd.first_entry

        if delta.is_unit():
            if uncertified:
                return FamilyReport(
                    verdict="inconclusive", levels=tuple(levels), witness=None,
                    witness_note="", terminal_unit=delta,
                    uncertified=tuple(uncertified), order=F.order, seed=seed)
            return FamilyReport(
                verdict="equisingular", levels=tuple(levels), witness=None,
                witness_note="descent terminated at a unit discriminant",
                terminal_unit=delta, uncertified=(), order=F.order, seed=seed)

        axis = delta.restrict(zero_x)
        if not axis.is_zero():
            return _family_negative(
                levels, axis, uncertified, F, seed,
                "discriminant vanishes at the origin but not along the parameter axis")
        if not axis.exact:
            uncertified.append(
                f"level {i - 1}: vanishing of the discriminant on the parameter "
                f"axis is certified only modulo degree {axis.order}")
        if i == 1:
            # no coordinates remain; a non-unit discriminant cannot vanish
            # identically here, so the restriction above already decided
            raise ConsistencyError("bottom discriminant neither unit nor witnessed")
        current = delta

    raise ConsistencyError("family descent fell through")


def _family_negative(levels, witness: Jet, uncertified: List[str], F: Jet,
                     seed: int, note: str) -> FamilyReport:
    if uncertified:
        return FamilyReport(
            verdict="inconclusive", levels=tuple(levels), witness=witness,
            witness_note=f"candidate witness: {note}; but earlier vanishing "
                         "claims were not exact",
            terminal_unit=None, uncertified=tuple(uncertified),
            order=F.order, seed=seed)
    return FamilyReport(
        verdict="not-equisingular", levels=tuple(levels), witness=witness,
        witness_note=note, terminal_unit=None, uncertified=(),
        order=F.order, seed=seed)
