import numpy as np
import pytest

from effectorder import (
    DomainError,
    HermFactor,
    Ring,
    SingularElementError,
    SpinFactor,
    apply_function,
    element_in_factor,
    invert_element,
    jordan_product,
    leq,
    max_eigenvalue,
    min_eigenvalue,
    positive_min_eigenvalue,
    pseudo_inv_sqrt,
    quad_rep,
    range_approximants,
    range_projection,
    sample_element,
    single_factor,
    spectral_decompose,
    sqrt_element,
    sup_norm,
    unit,
)

from conftest import FACTOR_KINDS, MIXED


def herm(rows, ring=Ring.REAL):
    rows = np.array(rows, dtype=complex if ring is Ring.COMPLEX else float)
    return element_in_factor(HermFactor(rows.shape[0], ring), rows)


def spin(alpha, v):
    return element_in_factor(SpinFactor(len(v)), np.array([alpha, *v], dtype=float))


class TestDecomposition:
    def test_diagonal_with_multiplicity(self):
        x = herm(np.diag([2.0, 2.0, 5.0]))
        dec = spectral_decompose(x)
        assert dec.eigenvalues == (2.0, 5.0)
        np.testing.assert_allclose(dec.projections[0].block(0), np.diag([1.0, 1.0, 0.0]), atol=1e-12)
        np.testing.assert_allclose(dec.projections[1].block(0), np.diag([0.0, 0.0, 1.0]), atol=1e-12)

    def test_spin_closed_form(self):
        dec = spectral_decompose(spin(0.0, [1.0, 0.0]))
        assert dec.eigenvalues == (-1.0, 1.0)
        np.testing.assert_allclose(dec.projections[0].block(0), [0.5, -0.5, 0.0])
        np.testing.assert_allclose(dec.projections[1].block(0), [0.5, 0.5, 0.0])

    def test_scalar_multiple_of_unit(self):
        x = 3.0 * unit(MIXED)
        dec = spectral_decompose(x)
        assert dec.eigenvalues == (3.0,)
        assert sup_norm(dec.projections[0] - unit(MIXED)) <= 1e-12

    @pytest.mark.parametrize("factor", FACTOR_KINDS, ids=str)
    def test_invariants_on_random_input(self, factor, rng):
        alg = single_factor(factor)
        for _ in range(25):
            x = sample_element(alg, rng, "general")
            dec = spectral_decompose(x)
            assert all(a < b for a, b in zip(dec.eigenvalues, dec.eigenvalues[1:]))
            # reconstruction
            assert sup_norm(dec.reconstruct() - x) <= 1e-9 * (1 + sup_norm(x))
            # idempotent, mutually orthogonal, summing to e
            total = dec.projections[0]
            for p in dec.projections[1:]:
                total = total + p
            assert sup_norm(total - unit(alg)) <= 1e-9
            for i, p in enumerate(dec.projections):
                assert sup_norm(jordan_product(p, p) - p) <= 1e-9
                for q in dec.projections[i + 1 :]:
                    assert sup_norm(jordan_product(p, q)) <= 1e-9

    def test_mixed_algebra_global_projections(self, rng):
        x = sample_element(MIXED, rng, "general")
        dec = spectral_decompose(x)
        assert sup_norm(dec.reconstruct() - x) <= 1e-9 * (1 + sup_norm(x))


class TestApplyFunction:
    def test_identity_and_constant(self, rng):
        x = sample_element(MIXED, rng, "general")
        assert sup_norm(apply_function(x, lambda t: t) - x) <= 1e-9
        assert sup_norm(apply_function(x, lambda t: 1.0) - unit(MIXED)) <= 1e-9

    def test_floor_function_by_hand(self):
        x = herm(np.diag([0.5, 0.0]))
        out = apply_function(x, lambda t: max(t, 0.25))
        np.testing.assert_allclose(out.block(0), np.diag([0.5, 0.25]), atol=1e-12)

    @pytest.mark.parametrize("factor", FACTOR_KINDS, ids=str)
    def test_multiplicative_on_polynomials(self, factor, rng):
        alg = single_factor(factor)
        for _ in range(15):
            x = sample_element(alg, rng, "general")
            cf = rng.uniform(-1, 1, size=5)
            cg = rng.uniform(-1, 1, size=5)
            f = lambda t: float(np.polyval(cf, t))  # noqa: E731
            g = lambda t: float(np.polyval(cg, t))  # noqa: E731
            lhs = apply_function(x, lambda t: f(t) * g(t))
            rhs = jordan_product(apply_function(x, f), apply_function(x, g))
            assert sup_norm(lhs - rhs) <= 1e-8 * (1 + sup_norm(rhs))

    def test_rejects_non_finite_values(self):
        x = herm(np.diag([1.0, 0.0]))
        with pytest.raises(DomainError):
            apply_function(x, lambda t: 1.0 / t)


class TestRangeProjection:
    def test_diagonal(self):
        np.testing.assert_allclose(
            range_projection(herm(np.diag([3.0, 0.0]))).block(0), np.diag([1.0, 0.0]), atol=1e-12
        )

    def test_unit(self):
        assert sup_norm(range_projection(unit(MIXED)) - unit(MIXED)) <= 1e-12

    def test_spin_case(self):
        # (1,(1,0)) has eigenvalues 0 and 2; the range is the idempotent at 2
        r = range_projection(spin(1.0, [1.0, 0.0]))
        np.testing.assert_allclose(r.block(0), [0.5, 0.5, 0.0], atol=1e-12)

    def test_fixes_its_element(self, rng):
        for _ in range(10):
            x = sample_element(MIXED, rng, "cone")
            r = range_projection(x)
            assert sup_norm(quad_rep(r, x) - x) <= 1e-8 * (1 + sup_norm(x))
            assert sup_norm(jordan_product(r, r) - r) <= 1e-9

    def test_smallest_such_projection(self, rng):
        # removing any spectral piece from r(x) no longer fixes x
        x = sample_element(MIXED, rng, "cone")
        dec = spectral_decompose(x)
        r = range_projection(x)
        for lam, p in zip(dec.eigenvalues, dec.projections):
            if lam > dec.zero_tol:
                smaller = r - p
                assert sup_norm(quad_rep(smaller, x) - x) > 1e-6

    def test_rejects_non_cone(self):
        with pytest.raises(DomainError):
            range_projection(herm(np.diag([1.0, -1.0])))


class TestInversion:
    def test_strict_diagonal(self):
        out = invert_element(herm(np.diag([2.0, 4.0])), "strict")
        np.testing.assert_allclose(out.block(0), np.diag([0.5, 0.25]), atol=1e-14)

    def test_pseudo_diagonal(self):
        out = invert_element(herm(np.diag([2.0, 0.0])), "pseudo")
        np.testing.assert_allclose(out.block(0), np.diag([0.5, 0.0]), atol=1e-14)

    def test_spin_strict(self):
        # (2,(1,0)) has eigenvalues 1 and 3; inverse is (2,(-1,0))/3
        out = invert_element(spin(2.0, [1.0, 0.0]), "strict")
        np.testing.assert_allclose(out.block(0), np.array([2.0, -1.0, 0.0]) / 3.0, atol=1e-14)

    def test_strict_product_is_unit(self, rng):
        x = sample_element(MIXED, rng, "interior")
        xi = invert_element(x, "strict")
        assert sup_norm(jordan_product(x, xi) - unit(MIXED)) <= 1e-9

    def test_singular_rejected(self):
        with pytest.raises(SingularElementError):
            invert_element(herm(np.diag([1.0, 0.0])), "strict")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            invert_element(unit(MIXED), "fast")


class TestEigenvalueQueries:
    def test_diagonal_min(self):
        assert min_eigenvalue(herm(np.diag([1.0, 3.0]))) == 1.0

    def test_spin_formula(self, rng):
        for _ in range(10):
            b = rng.standard_normal(4)
            x = spin(b[0], b[1:])
            expect = b[0] - np.linalg.norm(b[1:])
            assert abs(min_eigenvalue(x) - expect) <= 1e-12
            assert abs(max_eigenvalue(x) - (b[0] + np.linalg.norm(b[1:]))) <= 1e-12

    def test_unit(self):
        assert min_eigenvalue(unit(MIXED)) == 1.0


def scalar_truncated_family(t, n):
    """Independent scalar oracle for the truncated inverse-sqrt family."""
    f = t ** -0.5 if t >= 1.0 / n else n ** 1.5 * t
    return f, t * f * f, np.sqrt(t) * f


class TestRangeApproximants:
    def test_unit_fixed_point(self):
        e = unit(MIXED)
        for n in (1, 2, 7):
            for out in range_approximants(e, n):
                assert sup_norm(out - e) <= 1e-12

    def test_piecewise_values_level_one(self):
        x = herm(np.diag([4.0, 0.0]))
        fs = [np.diag([scalar_truncated_family(t, 1)[k] for t in (4.0, 0.0)]) for k in range(3)]
        out = range_approximants(x, 1)
        for got, expect in zip(out, fs):
            np.testing.assert_allclose(got.block(0), expect, atol=1e-13)

    def test_piecewise_values_below_cut(self):
        x = herm(np.diag([0.25, 0.0]))
        out = range_approximants(x, 2)
        expect = [np.diag([scalar_truncated_family(t, 2)[k] for t in (0.25, 0.0)]) for k in range(3)]
        for got, exp in zip(out, expect):
            np.testing.assert_allclose(got.block(0), exp, atol=1e-13)
        # spot value: f_2(1/4) = 2^(3/2)/4 = 2^(-1/2)
        assert abs(out[0].block(0)[0, 0] - 2.0 ** -0.5) <= 1e-14

    @pytest.mark.parametrize("factor", FACTOR_KINDS, ids=str)
    def test_exact_stabilization(self, factor, rng):
        alg = single_factor(factor)
        for _ in range(10):
            c = sample_element(alg, rng, "cone")
            eigs = spectral_decompose(c).eigenvalues
            x = apply_function(c, lambda v: v if v > eigs[len(eigs) // 2] else 0.0)
            if sup_norm(x) < 1e-9:
                x = c
            lam = positive_min_eigenvalue(x)
            n = int(1.0 / lam) + 2
            _, g, h = range_approximants(x, n)
            r = range_projection(x)
            assert sup_norm(g - r) <= 1e-12
            assert sup_norm(h - r) <= 1e-12

    def test_rejects_level_zero(self):
        with pytest.raises(ValueError):
            range_approximants(unit(MIXED), 0)


class TestPseudoInverseRealizesBackwardMap:
    @pytest.mark.parametrize("factor", FACTOR_KINDS, ids=str)
    def test_roundtrip_through_interval(self, factor, rng):
        alg = single_factor(factor)
        for _ in range(10):
            c = sample_element(alg, rng, "cone")
            eigs = spectral_decompose(c).eigenvalues
            x = apply_function(c, lambda v: v if v > eigs[len(eigs) // 2] else 0.0)
            if sup_norm(x) < 1e-9:
                x = c
            w = quad_rep(range_projection(x), sample_element(alg, rng, "effect"))
            y = quad_rep(sqrt_element(x), w)  # y in [0, x]
            back = quad_rep(pseudo_inv_sqrt(x), y)
            assert leq(0.0 * x, y) and leq(y, x)
            assert sup_norm(quad_rep(sqrt_element(x), back) - y) <= 1e-8 * (1 + sup_norm(y))
            assert sup_norm(back - w) <= 1e-8 * (1 + sup_norm(w))
