"""Monte Carlo laws, mixture quadrature, ASLT paths and bound series."""

import math

import numpy as np
import pytest
from scipy import stats

import hrlab as H
from hrlab.errors import DomainError

ROOT = H.SeedLineage(909)

# mpmath adaptive quadrature, 25 significant digits: E Gumbel(1 - sqrt(2) Z)
UNIV_MIX_TAU1_X0 = 0.6084866022380800139297039


def grid(lo=-2.0, hi=4.0, count=9):
    return np.linspace(lo, hi, count)


class TestEmpiricalMaxLaw:
    def test_requires_enough_replications(self):
        with pytest.raises(DomainError):
            H.empirical_max_law(H.WeakAR1Model(1.0, 0.0), 100, 99, (grid(), grid()), 1)

    def test_grid_must_increase(self):
        with pytest.raises(DomainError):
            H.empirical_max_law(
                H.WeakAR1Model(1.0, 0.0), 100, 100, (np.array([1.0, 1.0]), grid()), 1
            )

    def test_cdf_axioms_and_determinism(self):
        m = H.WeakAR1Model(1.0, 0.3)
        emp1 = H.empirical_max_law(m, 200, 300, (grid(), grid()), ROOT.child(1))
        emp2 = H.empirical_max_law(m, 200, 300, (grid(), grid()), ROOT.child(1))
        assert np.array_equal(emp1.cdf, emp2.cdf)
        assert np.all(emp1.cdf >= 0.0) and np.all(emp1.cdf <= 1.0)
        assert np.all(np.diff(emp1.cdf, axis=0) >= 0.0)
        assert np.all(np.diff(emp1.cdf, axis=1) >= 0.0)

    def test_worker_count_does_not_change_counts(self):
        m = H.WeakAR1Model(1.0, 0.5)
        seq = H.empirical_max_law(m, 300, 400, (grid(), grid()), ROOT.child(2), workers=1)
        par = H.empirical_max_law(m, 300, 400, (grid(), grid()), ROOT.child(2), workers=2)
        assert np.array_equal(seq.cdf, par.cdf)

    def test_iid_independent_components_match_finite_n_law(self):
        # phi=0 and the infinite parameter give iid rows with independent
        # components, whose normalized-maxima CDF is known in closed form
        m = H.WeakAR1Model(math.inf, 0.0)
        n = 500
        nm = H.norming_constants(n)

        def finite_law(X, Y):
            return stats.norm.cdf(nm.u(X)) ** n * stats.norm.cdf(nm.u(Y)) ** n

        dists = []
        for reps in (2000, 20000):
            emp = H.empirical_max_law(m, n, reps, (grid(), grid()), ROOT.child(2000 + reps))
            dists.append(H.sup_distance(emp, finite_law))
        assert dists[1] < dists[0]
        assert dists[1] <= 0.012

    def test_comonotone_rows_concentrate_on_diagonal(self):
        emp = H.empirical_max_law(
            H.WeakAR1Model(0.0, 0.5), 2000, 2000, (grid(), grid()), ROOT.child(7)
        )
        # identical components: the empirical law only charges the diagonal
        for i in range(emp.grid_x.size):
            for j in range(emp.grid_y.size):
                k = min(i, j)
                assert emp.cdf[i, j] == emp.cdf[k, k]
        d = H.sup_distance(emp, lambda X, Y: H.hr_cdf(0.0, X, Y))
        assert d <= 0.08  # finite-n bias dominates; shrinks with n


class TestSupDistance:
    def test_zero_against_itself(self):
        emp = H.empirical_max_law(
            H.WeakAR1Model(1.0, 0.0), 100, 200, (grid(), grid()), ROOT.child(4)
        )
        table = emp.cdf.copy()
        assert H.sup_distance(emp, lambda X, Y: table) == 0.0

    def test_detects_single_node_shift(self):
        emp = H.empirical_max_law(
            H.WeakAR1Model(1.0, 0.0), 100, 200, (grid(), grid()), ROOT.child(5)
        )
        shifted = emp.cdf.copy()
        shifted[3, 4] += 0.125
        assert H.sup_distance(emp, lambda X, Y: shifted) == pytest.approx(0.125)

    def test_scalar_theory_callable(self):
        emp = H.empirical_max_law(
            H.WeakAR1Model(1.0, 0.0), 100, 200, (grid(), grid()), ROOT.child(6)
        )
        d_vec = H.sup_distance(emp, lambda X, Y: H.hr_cdf(1.0, X, Y))
        d_scal = H.sup_distance(emp, lambda x, y: float(H.hr_cdf(1.0, float(x), float(y))))
        assert d_vec == d_scal


class TestMixtureQuadrature:
    MP = H.MixtureParams(1.0, 1.0, 0.8, 1.0)

    def test_equal_tau_collapses_to_1d_rule(self):
        mp_ = H.MixtureParams(0.5, 0.5, 0.5, 1.0)
        h, w = np.polynomial.hermite.hermgauss(200)
        z = math.sqrt(2.0) * h
        vals = H.hr_cdf(mp_.lambda_tilde, 0.2 + 0.5 - z, -0.1 + 0.5 - z)
        oracle = float(np.dot(w, vals) / math.sqrt(math.pi))
        assert H.mixture_limit_cdf(mp_, 0.2, -0.1) == pytest.approx(oracle, abs=1e-12)

    def test_degenerate_mixture_recovers_hr(self):
        mp_ = H.MixtureParams(1e-9, 1e-9, 1e-9, 1.0)
        assert H.mixture_limit_cdf(mp_, 0.3, -0.4) == pytest.approx(
            H.hr_cdf(1.0, 0.3, -0.4), abs=1e-6
        )

    def test_upper_tail_reaches_one(self):
        assert H.mixture_limit_cdf(self.MP, 40.0, 40.0) == pytest.approx(1.0, abs=1e-10)

    def test_node_doubling_converges(self):
        vals = [H.mixture_limit_cdf(self.MP, 0.0, 0.0, nodes) for nodes in (32, 64, 128, 256)]
        deltas = [abs(a - b) for a, b in zip(vals, vals[1:])]
        assert deltas[0] > deltas[1] > deltas[2]
        assert deltas[-1] < 1e-10

    def test_matches_monte_carlo_oracle(self):
        for point in ((0.0, 0.0), (1.0, 1.0)):
            q = H.mixture_limit_cdf(self.MP, *point)
            mc, se = H.mixture_limit_mc(self.MP, *point, draws=200000, seed=ROOT.child(42))
            assert abs(q - mc) <= 3.0 * se

    def test_marginal_consistency(self):
        for x in (-1.0, 0.0, 0.7, 2.0):
            two_d = H.mixture_limit_cdf(self.MP, x, 40.0)
            one_d = H.univariate_mixture_cdf(self.MP.tau11, x)
            assert abs(two_d - one_d) <= 1e-9

    def test_univariate_oracle_value(self):
        assert H.univariate_mixture_cdf(1.0, 0.0) == pytest.approx(UNIV_MIX_TAU1_X0, abs=1e-9)

    def test_univariate_degenerate(self):
        assert H.univariate_mixture_cdf(0.0, 0.4) == pytest.approx(H.gumbel_cdf(0.4), abs=1e-15)

    def test_node_floor(self):
        with pytest.raises(DomainError):
            H.mixture_limit_cdf(self.MP, 0.0, 0.0, nodes=4)


class TestEmpiricalMaxMinLaw:
    def test_vacuous_minima_reduce_to_max_law(self):
        # with the minima thresholds at +inf surrogate, the four-sided counts
        # equal the bivariate max-law counts computed from the same streams
        m = H.WeakAR1Model(1.0, 0.5)
        vals = np.array([0.5, 1.5])
        big = np.array([1e9])
        emp4 = H.empirical_maxmin_law(m, 300, 500, (vals, vals, big, big), ROOT.child(21))
        emp2 = H.empirical_max_law(m, 300, 500, (vals, vals), ROOT.child(21))
        assert np.array_equal(emp4.prob[:, :, 0, 0], emp2.cdf)

    def test_iid_independent_components_closed_form(self):
        m = H.WeakAR1Model(math.inf, 0.0)
        n = 500
        nm = H.norming_constants(n)
        vals = np.array([0.5, 1.5])
        emp = H.empirical_maxmin_law(m, n, 20000, (vals, vals, vals, vals), ROOT.child(31))
        for i1, a in enumerate(vals):
            for i2, b in enumerate(vals):
                for j1, c in enumerate(vals):
                    for j2, d in enumerate(vals):
                        p1 = (stats.norm.cdf(nm.u(a)) - stats.norm.cdf(-nm.u(c))) ** n
                        p2 = (stats.norm.cdf(nm.u(b)) - stats.norm.cdf(-nm.u(d))) ** n
                        assert abs(emp.prob[i1, i2, j1, j2] - p1 * p2) <= 0.012

    def test_axis_cap(self):
        m = H.WeakAR1Model(1.0, 0.5)
        four = np.array([0.0, 0.5, 1.0, 1.5])
        with pytest.raises(DomainError):
            H.empirical_maxmin_law(m, 200, 200, (four, four, four, four), 1)


class TestAsltAverage:
    def test_preconditions(self):
        m = H.WeakAR1Model(1.0, 0.5)
        with pytest.raises(DomainError):
            H.aslt_average(m, H.INDEPENDENT_ROWS, 500, ((0.0, 0.0),), 1)
        with pytest.raises(DomainError):
            H.aslt_average(m, H.INDEPENDENT_ROWS, 2 * 10**5, ((0.0, 0.0),), 1)
        sf = H.StrongFactorModel(H.MixtureParams(1.0, 1.0, 0.8, 1.0))
        with pytest.raises(DomainError):
            H.aslt_average(sf, H.INDEPENDENT_ROWS, 2000, ((0.0, 0.0),), 1)

    def test_comonotone_indicators_coincide(self):
        # identical components: the event only depends on min(x, y)
        m = H.WeakAR1Model(0.0, 0.4)
        path = H.aslt_average(
            m, H.INDEPENDENT_ROWS, 1500, ((1.0, 1.0), (1.0, 50.0), (50.0, 1.0)), ROOT.child(3)
        )
        assert np.array_equal(path.averages[0], path.averages[1])
        assert np.array_equal(path.averages[0], path.averages[2])

    def test_ceiling_and_determinism(self):
        m = H.WeakAR1Model(1.0, 0.5)
        p1 = H.aslt_average(m, H.INDEPENDENT_ROWS, 1200, ((0.0, 0.0), (1.0, 1.0)),
                            ROOT.child(10), maxmin_points=((1.0, 1.0, 1.0, 1.0),))
        p2 = H.aslt_average(m, H.INDEPENDENT_ROWS, 1200, ((0.0, 0.0), (1.0, 1.0)),
                            ROOT.child(10), maxmin_points=((1.0, 1.0, 1.0, 1.0),))
        assert np.array_equal(p1.averages, p2.averages)
        assert np.array_equal(p1.maxmin_averages, p2.maxmin_averages)
        assert np.all(p1.averages <= p1.ceiling + 1e-12)
        assert np.all(p1.maxmin_averages <= p1.ceiling + 1e-12)
        # harmonic ceiling stays below 1 + gamma/ln n
        assert np.all(p1.ceiling <= 1.0 + 0.5772156649 / np.log(p1.checkpoints))

    def test_expected_level_matches_exact_iid_formula(self):
        # lam=0, phi=0: P(M_k <= u_k(x)) = Phi(u_k(x))^k exactly
        x = 1.0
        n_max = 2000
        exact = 0.0
        for k in range(2, n_max + 1):
            nm = H.norming_constants(k)
            exact += stats.norm.cdf(nm.u(x)) ** k / k
        exact /= math.log(n_max)
        finals = [
            H.aslt_average(
                H.WeakAR1Model(0.0, 0.0), H.INDEPENDENT_ROWS, n_max, ((x, x),), ROOT.child(100 + s)
            ).averages[0, -1]
            for s in range(8)
        ]
        assert abs(np.mean(finals) - exact) <= 3.0 * np.std(finals, ddof=1) / math.sqrt(8)

    def test_shared_coupling_runs_and_validates(self):
        m = H.WeakAR1Model(1.0, 0.5)
        path = H.aslt_average(m, H.shared_innovations(0.2), 1200, ((0.0, 0.0),), ROOT.child(11))
        assert path.coupling == "shared(c=0.2)"
        assert np.all(path.averages <= path.ceiling + 1e-12)
        # rho_0(2) = 1 - 1/ln 2 = -0.44, so c=0.4 makes the residual
        # correlation fall below -1 at the first row
        with pytest.raises(DomainError):
            H.aslt_average(m, H.shared_innovations(0.4), 1200, ((0.0, 0.0),), 1)


class TestBoundSeries:
    GRID = (1000, 10**4, 10**5)

    def test_zero_correlation_model_gives_zero(self):
        m = H.WeakAR1Model(0.0, 0.0)  # rho0 = 1 but all lagged corrs vanish
        s = H.comparison_bound_series(m, "L1", 0.0, 0.0, self.GRID)
        assert s.values == (0.0, 0.0, 0.0)

    def test_weak_l1_decreases(self):
        s = H.comparison_bound_series(H.WeakAR1Model(1.0, 0.5), "L1", 3.0, 3.0, self.GRID)
        assert all(a > b for a, b in zip(s.values, s.values[1:]))
        assert s.omega_rule == "omega_n = min(|u_n(3)|, |u_n(3)|)"

    def test_l1_brute_force_oracle(self):
        # independent direct summation at a small n
        m = H.WeakAR1Model(1.0, 0.5)
        n, x, y = 500, 1.0, 2.0
        nm = H.norming_constants(n)
        omega = min(abs(nm.u(x)), abs(nm.u(y)))
        expected = 0.0
        for i, j in ((1, 1), (1, 2), (2, 2)):
            total = sum(
                abs(H.induced_correlation(m, i, j, k, n))
                * math.exp(-omega**2 / (1.0 + abs(H.induced_correlation(m, i, j, k, n))))
                for k in range(1, n)
            )
            expected = max(expected, n * total)
        got = H.comparison_bound_series(m, "L1", x, y, (n,)).values[0]
        assert got == pytest.approx(expected, rel=1e-12)

    def test_l2_identically_zero_on_reference_model(self):
        sf = H.StrongFactorModel(H.MixtureParams(1.0, 1.0, 0.8, 1.0))
        s = H.comparison_bound_series(sf, "L2", 3.0, 3.0, self.GRID)
        assert s.values == (0.0, 0.0, 0.0)

    def test_l2_requires_tau_model(self):
        with pytest.raises(DomainError):
            H.comparison_bound_series(H.WeakAR1Model(1.0, 0.5), "L2", 0.0, 0.0, (100,))

    def test_rate_report(self):
        m = H.WeakAR1Model(1.0, 0.5)
        rep = H.aslt_bound_rate(m, H.INDEPENDENT_ROWS, 0.1, (100, 1000, 10**4, 10**5), 3.0, 3.0)
        assert rep.bounded
        assert rep.cross_row.values == (0.0, 0.0, 0.0, 0.0)
        ratios = np.array(rep.ratios)
        recomputed = np.array(rep.within_row.values) * np.array(
            [math.log(math.log(n)) ** 1.1 for n in rep.within_row.n_grid]
        )
        assert np.allclose(ratios, recomputed, rtol=1e-12)

    def test_rate_shared_coupling_positive_and_small(self):
        m = H.WeakAR1Model(1.0, 0.5)
        rep = H.aslt_bound_rate(m, H.shared_innovations(0.2), 0.1, (100, 1000, 10**4), 3.0, 3.0)
        assert all(v > 0.0 for v in rep.cross_row.values)
        assert all(b < a for a, b in zip(rep.cross_row.values, rep.cross_row.values[1:]))

    def test_rate_grid_floor(self):
        with pytest.raises(DomainError):
            H.aslt_bound_rate(H.WeakAR1Model(1.0, 0.5), H.INDEPENDENT_ROWS, 0.1, (8, 100))


@pytest.mark.slow
class TestWeakConvergenceTrend:
    def test_sup_distance_non_increasing_in_n(self):
        lam, phi = 1.0, 0.5
        g = grid()
        theory = lambda X, Y: H.hr_cdf(lam, X, Y)  # noqa: E731
        dists = []
        for idx, n in enumerate((200, 2000, 20000)):
            emp = H.empirical_max_law(
                H.WeakAR1Model(lam, phi), n, 10**4, (g, g), ROOT.child(idx), workers=2
            )
            dists.append(H.sup_distance(emp, theory))
        slack = 2.0 * math.sqrt(0.25 / 10**4)
        assert all(b <= a + slack for a, b in zip(dists, dists[1:]))
