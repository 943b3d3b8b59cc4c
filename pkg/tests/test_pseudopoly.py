import random
from fractions import Fraction
from itertools import combinations

import pytest

from equijet.errors import ContextMismatchError, DegreeCapError, PreconditionError
from equijet.jets import Jet, VarContext
from equijet.pseudopoly import (
    PseudoPolynomial,
    berkowitz_det,
    generalized_discriminants,
    hankel_minor,
    power_sums,
    resultant,
    resultant_jets,
)

Y = VarContext.make(["y"])
YX = VarContext.make(["x1", "y"])


def brute_power_sum(roots, k):
    return sum((r ** k for r in roots), Fraction(0))


def brute_vandermonde_minor(roots, k):
    """Independent oracle: sum over k-subsets of the squared Vandermonde."""
    total = Fraction(0)
    for subset in combinations(range(len(roots)), k):
        prod = Fraction(1)
        for a, b in combinations(subset, 2):
            prod *= (roots[a] - roots[b]) ** 2
        total += prod
    return total


def const(val, ctx=Y):
    return Jet.constant(ctx, val, 16)


def test_power_sums_roots_two_three():
    P = PseudoPolynomial.from_roots(Y, "y", [2, 3])
    s = power_sums(P, 3)
    assert [t.constant_term() for t in s] == [2, 5, 13]


def test_power_sums_all_roots_zero():
    P = PseudoPolynomial.from_roots(Y, "y", [0, 0, 0, 0])
    s = power_sums(P, 5)
    assert s[0].constant_term() == 4
    assert all(t.is_zero() for t in s[1:])


def test_power_sums_of_y2_minus_x1_cubed():
    f = Jet.variable(YX, "y") ** 2 - Jet.variable(YX, "x1") ** 3
    P = PseudoPolynomial.from_jet(f, "y")
    s = power_sums(P, 3)
    assert s[0].constant_term() == 2
    assert s[1].is_zero()
    assert s[2] == Jet(YX, 16, {(3, 0): 2}, True)


def test_berkowitz_matches_laplace_oracle():
    rng = random.Random(11)

    def laplace(m):
        n = len(m)
        if n == 1:
            return m[0][0]
        total = Fraction(0)
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * laplace(minor)
            total += term if j % 2 == 0 else -term
        return total

    for n in range(1, 6):
        for _ in range(6):
            m = [[Fraction(rng.randrange(-4, 5)) for _ in range(n)] for _ in range(n)]
            rows = [[const(v) for v in row] for row in m]
            assert berkowitz_det(rows).constant_term() == laplace(m)


def test_hankel_minor_two_roots():
    P = PseudoPolynomial.from_roots(Y, "y", [2, 3])
    assert hankel_minor(P, 2).constant_term() == 1
    assert hankel_minor(P, 1).constant_term() == 2


def test_hankel_minor_repeated_root_vanishes():
    P = PseudoPolynomial.from_roots(Y, "y", [1, 1, 2])
    assert hankel_minor(P, 3).is_zero()
    assert hankel_minor(P, 3).exact


def test_hankel_minor_range_errors():
    P = PseudoPolynomial.from_roots(Y, "y", [1, 2])
    with pytest.raises(PreconditionError):
        hankel_minor(P, 0)
    with pytest.raises(PreconditionError):
        hankel_minor(P, 3)


def test_hankel_minor_oracle_random_roots():
    rng = random.Random(23)
    for _ in range(40):
        p = rng.randrange(1, 7)
        roots = [Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(p)]
        P = PseudoPolynomial.from_roots(Y, "y", roots)
        for k in range(1, p + 1):
            assert hankel_minor(P, k).constant_term() == brute_vandermonde_minor(roots, k)
        for k in range(2 * p - 1):
            assert power_sums(P, 2 * p - 1)[k].constant_term() == brute_power_sum(roots, k)


def test_gendisc_cusp_discriminant():
    f = Jet.variable(YX, "y") ** 2 - Jet.variable(YX, "x1") ** 3
    gd = generalized_discriminants(PseudoPolynomial.from_jet(f, "y"))
    assert gd.first_nonzero == 1
    assert gd.first_entry == Jet(YX, 16, {(3, 0): 4}, True)
    assert gd.certified


def test_gendisc_repeated_root():
    P = PseudoPolynomial.from_roots(Y, "y", [1, 1, 2])
    gd = generalized_discriminants(P)
    assert gd.entries[0].is_zero() and gd.entries[0].exact
    assert gd.first_nonzero == 2
    assert gd.entries[1].constant_term() == 2


def test_gendisc_pure_power():
    P = PseudoPolynomial.from_roots(Y, "y", [0, 0, 0])
    gd = generalized_discriminants(P)
    assert gd.first_nonzero == 3
    assert gd.entries[2].constant_term() == 3
    assert gd.entries[0].is_zero() and gd.entries[1].is_zero()


def test_gendisc_first_nonzero_counts_distinct_roots():
    rng = random.Random(37)
    pool = [Fraction(v) for v in range(-3, 4)]
    for _ in range(30):
        p = rng.randrange(1, 7)
        roots = [rng.choice(pool) for _ in range(p)]
        gd = generalized_discriminants(PseudoPolynomial.from_roots(Y, "y", roots))
        assert gd.first_nonzero == p - len(set(roots)) + 1
        assert gd.certified


def test_resultant_linear():
    ctx = VarContext.make(["a", "b", "y"])
    ya = Jet.variable(ctx, "y") - Jet.variable(ctx, "a")
    yb = Jet.variable(ctx, "y") - Jet.variable(ctx, "b")
    P = PseudoPolynomial.from_jet(ya, "y")
    Q = PseudoPolynomial.from_jet(yb, "y")
    assert resultant(P, Q) == Jet.variable(ctx, "a") - Jet.variable(ctx, "b")


def test_resultant_evaluation():
    f = Jet.variable(YX, "y") ** 2 - Jet.variable(YX, "x1")
    g = Jet.variable(YX, "y") + 1
    r = resultant(PseudoPolynomial.from_jet(f, "y"), PseudoPolynomial.from_jet(g, "y"))
    assert r == Jet.constant(YX, 1, 16) - Jet.variable(YX, "x1")


def test_resultant_with_constant_one():
    f = Jet.variable(YX, "y") ** 3 - Jet.variable(YX, "x1")
    one = Jet.constant(YX, 1, 16)
    assert resultant_jets(f, one, "y").constant_term() == 1


def test_resultant_shared_factor_vanishes():
    rng = random.Random(5)
    for _ in range(15):
        shared = [Fraction(rng.randrange(-3, 4)) for _ in range(rng.randrange(1, 3))]
        extra_p = [Fraction(rng.randrange(-3, 4)) for _ in range(rng.randrange(0, 3))]
        extra_q = [Fraction(rng.randrange(-3, 4)) for _ in range(rng.randrange(0, 3))]
        P = PseudoPolynomial.from_roots(Y, "y", shared + extra_p)
        Q = PseudoPolynomial.from_roots(Y, "y", shared + extra_q)
        assert resultant(P, Q).is_zero()
        if set(extra_p).isdisjoint(extra_q) and not (set(extra_p) & set(shared)) \
                and not (set(extra_q) & set(shared)) and extra_p:
            P2 = PseudoPolynomial.from_roots(Y, "y", extra_p)
            Q2 = PseudoPolynomial.from_roots(Y, "y", shared + extra_q)
            assert not resultant(P2, Q2).is_zero()


def test_discriminant_of_distinct_linear_factors_nonzero():
    P = PseudoPolynomial.from_roots(Y, "y", [1, 2, -3])
    gd = generalized_discriminants(P)
    assert gd.first_nonzero == 1


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        PseudoPolynomial.from_roots(Y, "y", list(range(13)))


def test_from_jet_requires_monic():
    f = Jet.constant(YX, 2, 16) * Jet.variable(YX, "y") ** 2
    with pytest.raises(PreconditionError):
        PseudoPolynomial.from_jet(f, "y")


def test_variable_mismatch():
    P = PseudoPolynomial.from_roots(YX, "y", [1])
    Q = PseudoPolynomial.from_roots(YX, "x1", [1])
    with pytest.raises(ContextMismatchError):
        resultant(P, Q)
