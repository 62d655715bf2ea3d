import numpy as np
import pytest

from effectorder import (
    DomainError,
    HermFactor,
    algebra,
    central_structure,
    classify,
    dominates_atom,
    element_in_factor,
    has_totally_ordered_interval,
    jordan_product,
    leq,
    proj_join,
    proj_meet,
    quad_rep,
    sample_element,
    single_factor,
    split_by_central,
    sup_norm,
    unit,
    unsplit_by_central,
    zero,
)

from conftest import FACTOR_KINDS, MIXED


def herm(rows):
    rows = np.array(rows, dtype=float)
    return element_in_factor(HermFactor(rows.shape[0]), rows)


H2 = single_factor(HermFactor(2))


class TestLeq:
    def test_reflexive(self, rng):
        x = sample_element(MIXED, rng, "general")
        assert leq(x, x)

    def test_incomparable_projections(self):
        p = herm(np.diag([1.0, 0.0]))
        q = herm(np.diag([0.0, 1.0]))
        assert not leq(p, q)
        assert not leq(q, p)

    def test_diagonal_order(self):
        assert leq(herm(np.diag([1.0, 1.0])), herm(np.diag([2.0, 1.0])))

    def test_anti_isomorphism_of_complement(self, rng):
        e = unit(MIXED)
        for _ in range(20):
            x = sample_element(MIXED, rng, "effect")
            y = sample_element(MIXED, rng, "effect")
            assert leq(x, y) == leq(e - y, e - x)


class TestClassify:
    def test_unit_flags(self):
        c = classify(unit(H2))
        assert c.in_effect and c.is_projection and not c.is_atom

    def test_diagonal_atom(self):
        assert classify(herm(np.diag([1.0, 0.0]))).is_atom

    def test_half_unit_invertible_effect(self):
        c = classify(0.5 * unit(H2))
        assert c.in_invertible_effect and c.in_interior and not c.is_projection

    def test_flag_implications(self, rng):
        for cls in ("general", "cone", "effect", "projection", "atom"):
            for _ in range(5):
                c = classify(sample_element(MIXED, rng, cls))
                assert not c.in_interior or c.in_cone
                assert not c.in_invertible_effect or (c.in_effect and c.in_interior)
                assert not c.is_atom or c.is_projection


class TestProjectionLattice:
    def test_meet_idempotent(self, rng):
        p = sample_element(MIXED, rng, "projection")
        assert sup_norm(proj_meet(p, p) - p) <= 1e-9

    def test_meet_with_unit_and_join_with_zero(self, rng):
        p = sample_element(MIXED, rng, "projection")
        assert sup_norm(proj_meet(p, unit(MIXED)) - p) <= 1e-9
        assert sup_norm(proj_join(p, zero(MIXED)) - p) <= 1e-9

    def test_distinct_atoms_in_rank_two(self):
        p = herm(np.diag([1.0, 0.0]))
        q = herm(np.full((2, 2), 0.5))  # projection onto span(1,1)/sqrt(2)
        assert sup_norm(proj_meet(p, q)) <= 1e-9
        assert sup_norm(proj_join(p, q) - unit(H2)) <= 1e-9

    def test_rejects_non_projections(self):
        with pytest.raises(DomainError):
            proj_meet(0.5 * unit(H2), unit(H2))

    @pytest.mark.parametrize("theta", [1e-2, 1e-3, 1e-5])
    def test_small_angle_ranges_have_zero_meet(self, theta):
        # ranges meeting at angle theta push an eigenvalue of p + q up to
        # 2 - theta^2/2; the meet must not absorb it (a wrong inclusion
        # would violate m <= p by about theta/2).  Below theta ~ 4e-6 the
        # gap drops under the detection threshold and the directions are
        # numerically indistinguishable from a true intersection.
        from effectorder import HermFactor, element_in_factor

        f = HermFactor(3)
        v1 = np.array([1.0, 0.0, 0.0])
        v2 = np.array([np.cos(theta), np.sin(theta), 0.0])
        p = element_in_factor(f, np.outer(v1, v1))
        q = element_in_factor(f, np.outer(v2, v2))
        m = proj_meet(p, q)
        assert sup_norm(m) <= 1e-12
        assert leq(m, p) and leq(m, q)

    @pytest.mark.parametrize("factor", FACTOR_KINDS, ids=str)
    def test_lattice_laws_on_random_pairs(self, factor, rng):
        alg = single_factor(factor)
        for _ in range(10):
            r = sample_element(alg, rng, "projection")
            p = proj_join(sample_element(alg, rng, "projection"), r)
            q = proj_join(sample_element(alg, rng, "projection"), r)
            m = proj_meet(p, q)
            j = proj_join(p, q)
            assert sup_norm(jordan_product(m, m) - m) <= 1e-9
            assert sup_norm(jordan_product(j, j) - j) <= 1e-9
            assert leq(m, p) and leq(m, q) and leq(p, j) and leq(q, j)
            # De Morgan through the complement
            e = unit(alg)
            assert sup_norm(m - (e - proj_join(e - p, e - q))) <= 1e-9
            # greatest lower bound among effects below both
            low = quad_rep(r, sample_element(alg, rng, "effect"))
            assert leq(low, p) and leq(low, q)
            assert leq(low, m)


class TestDominatesAtom:
    def test_direct_witness(self):
        x = herm(np.diag([2.0, 0.0]))
        p = herm(np.diag([1.0, 0.0]))
        ok, lam = dominates_atom(x, p)
        assert ok and abs(lam - 2.0) <= 1e-12
        assert leq(lam * p, x)

    def test_orthogonal_ranges(self):
        x = herm(np.diag([2.0, 0.0]))
        q = herm(np.diag([0.0, 1.0]))
        ok, lam = dominates_atom(x, q)
        assert not ok and lam is None

    def test_interior_dominates_every_atom(self, rng):
        x = sample_element(MIXED, rng, "interior")
        for _ in range(10):
            p = sample_element(MIXED, rng, "atom")
            ok, lam = dominates_atom(x, p)
            assert ok
            assert leq(lam * p, x)

    def test_rejects_non_atom(self):
        with pytest.raises(DomainError):
            dominates_atom(unit(H2), unit(H2))


class TestCentralStructure:
    def test_two_factor_generators(self):
        alg = algebra(HermFactor(2), HermFactor(1))
        gens, disengaged = central_structure(alg)
        assert len(gens) == 2
        np.testing.assert_array_equal(gens[0].block(0), np.eye(2))
        np.testing.assert_array_equal(gens[0].block(1), [[0.0]])
        np.testing.assert_array_equal(gens[1].block(0), np.zeros((2, 2)))
        np.testing.assert_array_equal(gens[1].block(1), [[1.0]])
        assert disengaged == (1,)

    def test_single_factor(self):
        gens, disengaged = central_structure(H2)
        assert len(gens) == 1
        assert sup_norm(gens[0] - unit(H2)) == 0.0
        assert disengaged == ()

    def test_sum_of_lines_all_disengaged(self):
        alg = algebra(*[HermFactor(1)] * 4)
        gens, disengaged = central_structure(alg)
        assert len(gens) == 4 and disengaged == (0, 1, 2, 3)

    def test_generators_split_idempotently(self, rng):
        gens, _ = central_structure(MIXED)
        x = sample_element(MIXED, rng, "general")
        for z in gens:
            assert sup_norm(quad_rep(z, quad_rep(z, x)) - quad_rep(z, x)) <= 1e-12


class TestSplitByCentral:
    def test_full_and_empty(self, rng):
        x = sample_element(MIXED, rng, "general")
        inside, outside = split_by_central(x, unit(MIXED))
        assert outside is None and sup_norm(inside - x) == 0.0
        inside, outside = split_by_central(x, zero(MIXED))
        assert inside is None and sup_norm(outside - x) == 0.0

    def test_block_selection_and_recombination(self, rng):
        gens, _ = central_structure(MIXED)
        x = sample_element(MIXED, rng, "general")
        for z in gens:
            inside, outside = split_by_central(x, z)
            back = unsplit_by_central(MIXED, z, inside, outside)
            assert sup_norm(back - x) == 0.0

    def test_rejects_non_central(self):
        x = sample_element(MIXED, np.random.default_rng(0), "general")
        with pytest.raises(DomainError):
            split_by_central(x, 0.5 * unit(MIXED))


class TestTotallyOrderedIntervalTop:
    def test_scaled_atom(self):
        assert has_totally_ordered_interval(herm(np.diag([3.0, 0.0])))

    def test_unit_of_rank_two_factor(self):
        assert not has_totally_ordered_interval(unit(H2))

    def test_zero_is_degenerate_top(self):
        assert has_totally_ordered_interval(zero(MIXED))

    def test_scaled_atoms_everywhere(self, rng):
        for _ in range(10):
            p = sample_element(MIXED, rng, "atom")
            assert has_totally_ordered_interval(2.5 * p)

    def test_rank_two_cone_element(self, rng):
        x = sample_element(MIXED, rng, "interior")
        assert not has_totally_ordered_interval(x)
