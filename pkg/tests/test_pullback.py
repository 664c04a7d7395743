import random

import pytest

from algch.scalars import Scalar, ZERO, ONE
from algch.linalg import Matrix
from algch.algebroid import (
    AlgebroidForm,
    basis_form,
    zero_form,
    validate_algebroid,
    coboundary_witness,
    direct_product,
)
from algch.connections import GradedBundle, HermitianMetric, h_dual
from algch.transgression import cs_cochain
from algch.charclasses import adjoint_setup
from algch.pullback import (
    SubmersionSpec,
    pullback_algebroid,
    pullback_form,
    pullback_connection,
    pullback_data,
    submersion_recipe,
    morita_check,
)
from algch.library import abelian, tangent_torus, heisenberg, so3, q_family

from helpers import (
    rand_bundle,
    rand_connection,
    rand_pd_matrix,
    rand_tm_conn,
    rand_algebroid,
    boundary_commutant,
    small_corpus,
    rand_q_family,
)


class TestPullbackAlgebroid:
    def test_lie_algebra_is_product_with_torus(self):
        for g in (heisenberg(), so3(), q_family(1, 2, 3, 4)):
            pb = pullback_algebroid(g, SubmersionSpec(1))
            assert pb == direct_product(tangent_torus(1), g)

    def test_tangent_torus_pulls_back_to_tangent_torus(self):
        for n in (1, 2):
            for k in (1, 2):
                pb = pullback_algebroid(tangent_torus(n), SubmersionSpec(k))
                assert (pb.n, pb.r) == (n + k, n + k)
                assert all(
                    all(v.is_zero() for v in row)
                    for plane in pb.brackets
                    for row in plane
                )
                # the anchor permutes the coordinate fields
                cols = {pb.anchor.column(i) for i in range(pb.r)}
                ident = {Matrix.identity(n + k).column(i) for i in range(n + k)}
                assert cols == ident

    def test_q_family_rank_five(self):
        a = q_family(1, 2, 3, 4)
        pb = pullback_algebroid(a, SubmersionSpec(2))
        assert (pb.n, pb.r) == (2, 5)
        for i in range(3):
            for j in range(3):
                for m in range(3):
                    assert pb.brackets[2 + i][2 + j][2 + m] == a.brackets[i][j][m]
        assert validate_algebroid(pb) == []

    def test_validity_preserved(self):
        rng = random.Random(61)
        for _ in range(8):
            a = rand_algebroid(rng)
            k = rng.randint(1, 2)
            pb = pullback_algebroid(a, SubmersionSpec(k))
            assert validate_algebroid(pb) == []


class TestPullbackData:
    def test_zero_form(self):
        a = q_family(1, 0, 0, 1)
        assert pullback_form(a, SubmersionSpec(1), zero_form(3, 2)).is_zero()

    def test_frame_covector(self):
        a = q_family(1, 0, 0, 1)
        pulled = pullback_form(a, SubmersionSpec(1), basis_form(3, (0,)))
        assert pulled == basis_form(4, (1,))

    def test_cs1_naturality(self):
        rng = random.Random(62)
        for _ in range(5):
            a = rand_algebroid(rng)
            s = SubmersionSpec(rng.randint(1, 2))
            b = rand_bundle(rng)
            basis = boundary_commutant(b)
            c0 = rand_connection(a, b, rng, basis)
            c1 = rand_connection(a, b, rng, basis)
            pb = pullback_algebroid(a, s)
            lhs = cs_cochain(
                [
                    pullback_connection(a, s, c0, pb),
                    pullback_connection(a, s, c1, pb),
                ],
                1,
            )
            rhs = pullback_form(a, s, cs_cochain([c0, c1], 1))
            assert lhs == rhs

    def test_dispatcher(self):
        a = so3()
        s = SubmersionSpec(1)
        assert pullback_data(a, s, basis_form(3, (0,))) == basis_form(4, (1,))
        with pytest.raises(TypeError):
            pullback_data(a, s, object())


class TestSubmersionRecipe:
    def test_lie_algebra_block_structure(self):
        for g in (heisenberg(), q_family(1, 2, 3, 4)):
            recipe = submersion_recipe(
                g, SubmersionSpec(1), [], Matrix.identity(3), Matrix.identity(0)
            )
            base = adjoint_setup(g, [])
            # vertical section acts by zero; horizontal lifts act by ad
            assert recipe.setup.basic.omega[0].is_zero()
            for i in range(3):
                om = recipe.setup.basic.omega[1 + i].ee
                for p in range(4):
                    for q in range(4):
                        want = base.basic.omega[i].ee[p - 1, q - 1] if p and q else ZERO
                        assert om[p, q] == want

    def test_tangent_torus_all_zero(self):
        for n in (1, 2):
            a = tangent_torus(n)
            recipe = submersion_recipe(
                a,
                SubmersionSpec(1),
                [Matrix.zeros(n, n)] * n,
                Matrix.identity(n),
                Matrix.identity(n),
            )
            assert all(om.is_zero() for om in recipe.setup.basic.omega)

    def test_vertical_subconnection_is_metric(self):
        rng = random.Random(63)
        a = q_family(1, 2, 3, 4)
        s = SubmersionSpec(2, g_v=rand_pd_matrix(2, rng, real=True))
        recipe = submersion_recipe(
            a, s, [], rand_pd_matrix(3, rng, real=True), Matrix.identity(0)
        )
        dual = h_dual(recipe.setup.basic, recipe.metric)
        for j in range(s.k):  # vertical frame sections
            assert recipe.setup.basic.omega[j].is_zero()
            assert dual.omega[j].is_zero()


class TestMoritaCheck:
    def test_q_family_nonzero_class(self):
        a = q_family(1, 0, 0, 1)  # Tr Q = 2
        report = morita_check(
            a, SubmersionSpec(1), [], Matrix.identity(3), Matrix.identity(0), max_q=1
        )
        assert report.passed
        assert report.per_q[1]["equal"] and not report.per_q[1]["both_zero"]
        # the shared q=1 form is a nonzero class upstairs
        base = adjoint_setup(a, [])
        g = HermitianMetric(base.data.bundle, Matrix.identity(3), Matrix.identity(0))
        form = pullback_form(
            a,
            SubmersionSpec(1),
            cs_cochain([base.basic, h_dual(base.basic, g)], 1),
        )
        pb = pullback_algebroid(a, SubmersionSpec(1))
        assert coboundary_witness(pb, form) is None

    def test_tangent_torus_both_zero(self):
        a = tangent_torus(2)
        report = morita_check(
            a,
            SubmersionSpec(1),
            [Matrix.zeros(2, 2)] * 2,
            Matrix.identity(2),
            Matrix.identity(2),
            max_q=2,
        )
        assert report.passed
        assert all(v["both_zero"] for v in report.per_q.values())

    def test_so3_invariant_metric_both_zero(self):
        a = so3()
        report = morita_check(
            a, SubmersionSpec(2), [], Matrix.identity(3), Matrix.identity(0), max_q=2
        )
        assert report.passed
        assert all(v["both_zero"] for v in report.per_q.values())

    def test_perturbed_metric_cohomologous(self):
        rng = random.Random(64)
        a = q_family(1, 2, 3, 4)
        s = SubmersionSpec(1)
        pb = pullback_algebroid(a, s)
        bundle = GradedBundle(pb.r, pb.n, d01=pb.anchor)
        alt = HermitianMetric(
            bundle, rand_pd_matrix(pb.r, rng, real=True), rand_pd_matrix(pb.n, rng, real=True)
        )
        report = morita_check(
            a, s, [], Matrix.identity(3), Matrix.identity(0), max_q=2, alt_metric=alt
        )
        assert report.passed
        assert all(report.cohomologous.values())
