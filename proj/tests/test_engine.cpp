#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pfcm/engine.hpp"
#include "pfcm/validity.hpp"
#include "test_helpers.hpp"

using namespace pfcm;

TEST_CASE("fuzzy memberships: equidistant column is uniform") {
    const Matrix d2 = Matrix::from_rows({{4.0}, {4.0}});
    const Matrix u = fuzzy_memberships(d2, 2.0);
    CHECK(u(0, 0) == doctest::Approx(0.5));
    CHECK(u(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("fuzzy memberships: 1:4 distances at m=2 give 0.8/0.2") {
    const Matrix d2 = Matrix::from_rows({{1.0}, {4.0}});
    const Matrix u = fuzzy_memberships(d2, 2.0);
    CHECK(u(0, 0) == doctest::Approx(0.8));
    CHECK(u(1, 0) == doctest::Approx(0.2));
}

TEST_CASE("fuzzy memberships: zero distance takes the whole column") {
    const Matrix d2 = Matrix::from_rows({{0.0}, {9.0}});
    const Matrix u = fuzzy_memberships(d2, 2.0);
    CHECK(u(0, 0) == 1.0);
    CHECK(u(1, 0) == 0.0);
}

TEST_CASE("fuzzy memberships: columns sum to one") {
    Rng rng(17);
    for (const double m : {1.3, 2.0, 3.5}) {
        Matrix d2(4, 50);
        for (auto& cell : d2.flat()) cell = rng.next_double() * 10 + 1e-6;
        const Matrix u = fuzzy_memberships(d2, m);
        for (std::size_t k = 0; k < 50; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < 4; ++i) {
                CHECK(u(i, k) >= 0.0);
                CHECK(u(i, k) <= 1.0);
                sum += u(i, k);
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("typicality scales: weighted mean of squared distances") {
    const Matrix u = Matrix::from_rows({{1.0, 1.0}});
    const Matrix d2 = Matrix::from_rows({{2.0, 4.0}});
    const auto delta = typicality_scales(u, d2, 2.0);
    CHECK(delta[0] == doctest::Approx(3.0));
}

TEST_CASE("typicality scales: floor on coincident cluster") {
    const Matrix u = Matrix::from_rows({{1.0, 1.0}});
    const Matrix d2 = Matrix::from_rows({{0.0, 0.0}});
    const auto delta = typicality_scales(u, d2, 2.0);
    CHECK(delta[0] == kDeltaFloor);
}

TEST_CASE("typicality scales: homogeneous of degree one in d2") {
    Rng rng(4);
    Matrix u(2, 10), d2(2, 10), d2x10(2, 10);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 10; ++k) {
            u(i, k) = rng.next_double();
            d2(i, k) = rng.next_double() * 5 + 0.1;
            d2x10(i, k) = 10.0 * d2(i, k);
        }
    const auto d1 = typicality_scales(u, d2, 2.0);
    const auto d10 = typicality_scales(u, d2x10, 2.0);
    for (std::size_t i = 0; i < 2; ++i) CHECK(d10[i] == doctest::Approx(10.0 * d1[i]));
}

TEST_CASE("possibilistic memberships: prototype coincidence gives 1") {
    const Matrix d2 = Matrix::from_rows({{0.0}});
    const Matrix t = possibilistic_memberships(d2, {2.5}, 1.0, 2.0);
    CHECK(t(0, 0) == 1.0);
}

TEST_CASE("possibilistic memberships: unit case gives 0.5") {
    const Matrix d2 = Matrix::from_rows({{1.0}});
    const Matrix t = possibilistic_memberships(d2, {1.0}, 1.0, 2.0);
    CHECK(t(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("possibilistic memberships: beta = 0 gives all ones") {
    Rng rng(9);
    Matrix d2(3, 20);
    for (auto& cell : d2.flat()) cell = rng.next_double() * 100;
    const Matrix t = possibilistic_memberships(d2, {1.0, 2.0, 3.0}, 0.0, 2.0);
    for (const double v : t.flat()) CHECK(v == 1.0);
}

TEST_CASE("possibilistic memberships solve the fixed-V stationarity condition") {
    // central finite differences on g(t) = beta t^tau d2 + delta (1-t)^tau
    const double h = 1e-6;
    for (const double tau : {1.5, 2.0, 3.0})
        for (const double beta : {0.5, 1.0, 2.0})
            for (const double delta : {0.5, 1.0, 4.0})
                for (const double d2v : {0.1, 1.0, 9.0}) {
                    const Matrix d2 = Matrix::from_rows({{d2v}});
                    const Matrix t = possibilistic_memberships(d2, {delta}, beta, tau);
                    const auto g = [&](double x) {
                        return beta * std::pow(x, tau) * d2v + delta * std::pow(1.0 - x, tau);
                    };
                    const double grad = (g(t(0, 0) + h) - g(t(0, 0) - h)) / (2.0 * h);
                    CHECK(std::abs(grad) < 1e-4);
                }
}

TEST_CASE("centroid update: uniform weights give the arithmetic mean") {
    const auto data = DataSet::complete(
        Matrix::from_rows({{1.0, 2.0}, {3.0, 6.0}, {5.0, 4.0}, {7.0, 0.0}}));
    Parameters p;
    const Matrix u = Matrix(2, 4, 0.5);
    const Matrix t = Matrix(2, 4, 0.5);
    const Centroids v = update_centroids(data, u, t, p);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(v.v(i, 0) == doctest::Approx(4.0));
        CHECK(v.v(i, 1) == doctest::Approx(3.0));
    }
}

TEST_CASE("centroid update: single cluster with beta=0, u=1 is the data mean") {
    const auto data = DataSet::complete(Matrix::from_rows({{2.0}, {4.0}, {9.0}}));
    Parameters p;
    p.beta = 0.0;
    const Matrix u(1, 3, 1.0);
    const Matrix t(1, 3, 1.0);
    const Centroids v = update_centroids(data, u, t, p);
    CHECK(v.v(0, 0) == doctest::Approx(5.0));
}

TEST_CASE("centroid update: hand-computed weighted mean") {
    // weights (0.9, 0.1) on points {0, 10} via u = sqrt(w), beta = 0
    const auto data = DataSet::complete(Matrix::from_rows({{0.0}, {10.0}}));
    Parameters p;
    p.beta = 0.0;
    Matrix u(1, 2);
    u(0, 0) = std::sqrt(0.9);
    u(0, 1) = std::sqrt(0.1);
    const Matrix t(1, 2, 1.0);
    const Centroids v = update_centroids(data, u, t, p);
    CHECK(v.v(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("centroid update: zero weights are a degenerate-cluster error") {
    const auto data = DataSet::complete(Matrix::from_rows({{1.0}, {2.0}}));
    Parameters p;
    p.beta = 0.0;
    const Matrix u(1, 2, 0.0);
    const Matrix t(1, 2, 1.0);
    CHECK_THROWS_AS(update_centroids(data, u, t, p), DegenerateError);
}

TEST_CASE("objective: points at their centroid with t = 1 vanish") {
    const auto data = DataSet::complete(Matrix::from_rows({{2.0, 3.0}, {2.0, 3.0}}));
    const Centroids v{Matrix::from_rows({{2.0, 3.0}})};
    const Matrix u(1, 2, 1.0);
    const Matrix t(1, 2, 1.0);
    Parameters p;
    CHECK(objective_value(data, u, t, {1.0}, v, p) == doctest::Approx(0.0));
}

TEST_CASE("objective: hand evaluation, two copies of the unit case") {
    // two identical points at distance 1 from a single centroid, u=1, t=0.5:
    // per point (1*1 + 1*0.25)*1 + 1*0.25 = 1.5, doubled = 3.0
    const auto data = DataSet::complete(Matrix::from_rows({{1.0}, {1.0}}));
    const Centroids v{Matrix::from_rows({{0.0}})};
    const Matrix u(1, 2, 1.0);
    const Matrix t(1, 2, 0.5);
    Parameters p;
    CHECK(objective_value(data, u, t, {1.0}, v, p) == doctest::Approx(3.0));
}

TEST_CASE("objective: fuzzy term scales linearly with alpha") {
    const auto data = DataSet::complete(Matrix::from_rows({{1.0}, {3.0}}));
    const Centroids v{Matrix::from_rows({{0.0}})};
    const Matrix u(1, 2, 1.0);
    const Matrix t(1, 2, 0.5);
    Parameters p1;
    Parameters p2;
    p2.alpha = 2.0;
    // subtract the alpha-independent parts: beta t^tau d2 and delta (1-t)^tau
    const double fixed = 0.25 * (1.0 + 9.0) + 1.0 * 0.25 * 2;
    const double j1 = objective_value(data, u, t, {1.0}, v, p1);
    const double j2 = objective_value(data, u, t, {1.0}, v, p2);
    CHECK(j2 - fixed == doctest::Approx(2.0 * (j1 - fixed)));
}

TEST_CASE("objective uses classic interior weights under both weight forms") {
    const auto data = DataSet::complete(Matrix::from_rows({{1.0}, {3.0}}));
    const Centroids v{Matrix::from_rows({{0.0}})};
    const Matrix u(1, 2, 0.5);
    const Matrix t(1, 2, 0.5);
    Parameters lit;
    lit.alpha = 3.0;
    Parameters cls = lit;
    cls.weight_form = WeightForm::ClassicPfcm;
    CHECK(objective_value(data, u, t, {1.0}, v, lit) ==
          doctest::Approx(objective_value(data, u, t, {1.0}, v, cls)));
}

TEST_CASE("eq. 2 memberships beat 1000 random column-stochastic matrices") {
    // fixed V and delta on a 5-point, 2-cluster instance; first term of the
    // objective with alpha = 1, m = 2
    const Matrix d2 = Matrix::from_rows({{1.0, 4.0, 0.5, 9.0, 2.0}, {3.0, 1.0, 5.0, 1.0, 2.5}});
    const Matrix u_star = fuzzy_memberships(d2, 2.0);
    const auto first_term = [&](const Matrix& u) {
        double s = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 5; ++k) s += u(i, k) * u(i, k) * d2(i, k);
        return s;
    };
    const double best = first_term(u_star);
    Rng rng(123);
    for (int trial = 0; trial < 1000; ++trial) {
        Matrix u(2, 5);
        for (std::size_t k = 0; k < 5; ++k) {
            const double a = -std::log(1.0 - rng.next_double());
            const double b = -std::log(1.0 - rng.next_double());
            u(0, k) = a / (a + b);
            u(1, k) = b / (a + b);
        }
        CHECK(best <= first_term(u) + 1e-12);
    }
}

TEST_CASE("run_pfcm rejects incomplete data and bad parameters") {
    Matrix v(4, 2, 1.0);
    Mask m(4, 2, true);
    m.set(0, 0, false);
    v(0, 0) = 0.0;
    const DataSet incomplete(v, m);
    Parameters p;
    CHECK_THROWS_AS(run_pfcm(incomplete, p, 1), DataError);

    Rng rng(2);
    Matrix x(4, 2);
    for (auto& cell : x.flat()) cell = rng.next_normal();
    const auto ok = DataSet::complete(x);
    Parameters bad;
    bad.c = 4;
    CHECK_THROWS_AS(run_pfcm(ok, bad, 1), ConfigError);
}

TEST_CASE("run_pfcm is deterministic per seed") {
    const DataSet iris = testutil::load_iris();
    Parameters p;
    const RunResult a = run_pfcm(iris, p, 77);
    const RunResult b = run_pfcm(iris, p, 77);
    CHECK(a.iterations == b.iterations);
    CHECK(a.converged == b.converged);
    CHECK(a.centroids.v == b.centroids.v);
    CHECK(a.partition.u == b.partition.u);
    CHECK(a.partition.t == b.partition.t);
    CHECK(a.objective_trace == b.objective_trace);
    const RunResult c = run_pfcm(iris, p, 78);
    CHECK(a.centroids.v != c.centroids.v);
}

TEST_CASE("run_pfcm centroids stay in the data's bounding box") {
    Rng rng(31);
    Matrix x(40, 3);
    for (auto& cell : x.flat()) cell = rng.next_normal() * 3.0;
    const auto data = DataSet::complete(x);
    Parameters p;
    p.c = 3;
    const RunResult r = run_pfcm(data, p, 5);
    for (std::size_t j = 0; j < 3; ++j) {
        double lo = x(0, j), hi = x(0, j);
        for (std::size_t k = 1; k < 40; ++k) {
            lo = std::min(lo, x(k, j));
            hi = std::max(hi, x(k, j));
        }
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r.centroids.v(i, j) >= lo);
            CHECK(r.centroids.v(i, j) <= hi);
        }
    }
}

TEST_CASE("run_pfcm on two tight, far-separated groups finds the group means") {
    Rng rng(8);
    Matrix x(40, 2);
    double mean0[2] = {0.0, 0.0}, mean1[2] = {0.0, 0.0};
    for (std::size_t k = 0; k < 20; ++k)
        for (std::size_t j = 0; j < 2; ++j) {
            x(k, j) = rng.next_normal() * 1e-5;
            mean0[j] += x(k, j) / 20;
        }
    for (std::size_t k = 20; k < 40; ++k)
        for (std::size_t j = 0; j < 2; ++j) {
            x(k, j) = 100.0 + rng.next_normal() * 1e-5;
            mean1[j] += x(k, j) / 20;
        }
    Parameters p;
    p.epsilon = 1e-9;
    const RunResult r = run_pfcm(DataSet::complete(x), p, 42);
    REQUIRE(r.converged);
    const std::size_t lo = r.centroids.v(0, 0) < r.centroids.v(1, 0) ? 0 : 1;
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(r.centroids.v(lo, j) - mean0[j]) < 1e-6);
        CHECK(std::abs(r.centroids.v(1 - lo, j) - mean1[j]) < 1e-6);
    }
}

TEST_CASE("iris base partition hardens to the published 50/100 split") {
    const DataSet iris = testutil::load_iris();
    Parameters p;
    const RunResult r = run_pfcm(iris, p, 3);
    REQUIRE(r.converged);
    const Labels labels = harden(r.partition, Hardening::Typicality);
    std::size_t counts[2] = {0, 0};
    for (const auto l : labels) ++counts[l];
    CHECK(std::min(counts[0], counts[1]) == 50);
    CHECK(std::max(counts[0], counts[1]) == 100);
}

TEST_CASE("beta = 0 reduces to plain FCM") {
    const DataSet iris = testutil::load_iris();
    Parameters p;
    p.beta = 0.0;
    for (const std::uint64_t seed : {1, 2, 3}) {
        const RunResult r = run_pfcm(iris, p, seed);
        for (const double t : r.partition.t.flat()) CHECK(t == 1.0);
        const Centroids ref = testutil::fcm_reference(iris, p.c, p.m, p.epsilon, p.max_iter, seed);
        CHECK(frobenius_diff(r.centroids.v, ref.v) < 1e-9);
    }
}

TEST_CASE("non-convergence under a tight cap is flagged, not thrown") {
    const DataSet iris = testutil::load_iris();
    Parameters p;
    p.max_iter = 2;
    const RunResult r = run_pfcm(iris, p, 1);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 2);
    CHECK(r.objective_trace.size() == 2);
}

TEST_CASE("objective trace matches a recomputation at the returned state") {
    const DataSet iris = testutil::load_iris();
    Parameters p;
    const RunResult r = run_pfcm(iris, p, 10);
    REQUIRE(!r.objective_trace.empty());
    const double recomputed = objective_value(iris, r.partition.u, r.partition.t,
                                              r.partition.delta, r.centroids, p);
    CHECK(r.objective_trace.back() == doctest::Approx(recomputed).epsilon(1e-12));
}
