#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "pfcm/imputation.hpp"
#include "pfcm/injection.hpp"
#include "test_helpers.hpp"

using namespace pfcm;

namespace {

DataSet toy_incomplete() {
    // 4 x 2, two missing cells
    Matrix v = Matrix::from_rows({{1.0, 10.0}, {2.0, 0.0}, {3.0, 30.0}, {0.0, 40.0}});
    Mask m(4, 2, true);
    m.set(1, 1, false);
    m.set(3, 0, false);
    return DataSet(v, m);
}

}  // namespace

TEST_CASE("init_missing: no missing cells leaves data untouched and draws nothing") {
    const auto data = DataSet::complete(Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}}));
    Rng rng(5);
    const DataSet out = init_missing(data, rng);
    CHECK(out.values == data.values);
    Rng fresh(5);
    CHECK(rng.next_u64() == fresh.next_u64());  // no draws were consumed
}

TEST_CASE("init_missing: single-value column support") {
    Matrix v = Matrix::from_rows({{5.0, 1.0}, {5.0, 2.0}, {0.0, 3.0}});
    Mask m(3, 2, true);
    m.set(2, 0, false);
    const DataSet data(v, m);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DataSet out = init_missing(data, seed);
        CHECK(out.values(2, 0) == 5.0);
    }
}

TEST_CASE("init_missing: imputed values come from the same column's observed multiset") {
    const DataSet data = toy_incomplete();
    const std::set<double> col0 = {1.0, 2.0, 3.0};
    const std::set<double> col1 = {10.0, 30.0, 40.0};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DataSet out = init_missing(data, seed);
        CHECK(col1.count(out.values(1, 1)) == 1);
        CHECK(col0.count(out.values(3, 0)) == 1);
        // observed cells untouched
        CHECK(out.values(0, 0) == 1.0);
        CHECK(out.values(2, 1) == 30.0);
    }
}

TEST_CASE("ocs_impute: symmetric weights give the centroid midpoint") {
    Matrix v = Matrix::from_rows({{1.0, 0.0}, {2.0, 5.0}});
    Mask m(2, 2, true);
    m.set(0, 1, false);
    const DataSet data(v, m);
    const Centroids centroids{Matrix::from_rows({{0.0, 2.0}, {4.0, 8.0}})};
    const Matrix u(2, 2, 0.5);
    const Matrix t(2, 2, 0.5);
    Parameters p;
    const DataSet out = ocs_impute(data, u, t, centroids, p);
    CHECK(out.values(0, 1) == doctest::Approx(5.0));  // (2 + 8) / 2
    CHECK(out.values(0, 0) == 1.0);
    CHECK(out.values(1, 1) == 5.0);
}

TEST_CASE("ocs_impute: single cluster copies the centroid coordinate") {
    Matrix v = Matrix::from_rows({{1.0, 0.0}, {2.0, 5.0}});
    Mask m(2, 2, true);
    m.set(0, 1, false);
    const DataSet data(v, m);
    const Centroids centroids{Matrix::from_rows({{0.5, 7.25}})};
    const Matrix u(1, 2, 1.0);
    const Matrix t(1, 2, 0.5);
    Parameters p;
    const DataSet out = ocs_impute(data, u, t, centroids, p);
    CHECK(out.values(0, 1) == 7.25);
}

TEST_CASE("ocs_impute: hand-evaluated weighted combination") {
    // u = (0.8, 0.2), t = (0.5, 0.5), alpha = beta = 1, m = tau = 2,
    // centroid column (0, 10):
    // ((0.64+0.25)*0 + (0.04+0.25)*10) / (0.89+0.29) = 2.45762711...
    Matrix v = Matrix::from_rows({{1.0, 0.0}, {2.0, 5.0}});
    Mask m(2, 2, true);
    m.set(0, 1, false);
    const DataSet data(v, m);
    const Centroids centroids{Matrix::from_rows({{3.0, 0.0}, {4.0, 10.0}})};
    Matrix u(2, 2, 0.5), t(2, 2, 0.5);
    u(0, 0) = 0.8;
    u(1, 0) = 0.2;
    Parameters p;
    const DataSet out = ocs_impute(data, u, t, centroids, p);
    CHECK(out.values(0, 1) == doctest::Approx(2.9 / 1.18));
}

TEST_CASE("ocs_impute stays in the centroid hull on randomized instances") {
    Rng rng(77);
    for (int inst = 0; inst < 1000; ++inst) {
        const std::size_t c = 2 + rng.next_index(3);
        const std::size_t n = 3 + rng.next_index(5);
        const std::size_t s = 2 + rng.next_index(2);  // >= 2 so the masked row keeps coverage
        Matrix values(n, s);
        Mask mask(n, s, true);
        for (auto& cell : values.flat()) cell = rng.next_normal() * 5;
        const std::size_t mk = rng.next_index(n), mj = rng.next_index(s);
        mask.set(mk, mj, false);
        Matrix vm(c, s);
        for (auto& cell : vm.flat()) cell = rng.next_normal() * 5;
        Matrix u(c, n), t(c, n);
        for (std::size_t k = 0; k < n; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < c; ++i) {
                u(i, k) = rng.next_double() + 1e-9;
                sum += u(i, k);
                t(i, k) = rng.next_double() * 0.999 + 1e-3;
            }
            for (std::size_t i = 0; i < c; ++i) u(i, k) /= sum;
        }
        Parameters p;
        const DataSet out = ocs_impute(DataSet(values, mask), u, t, Centroids{vm}, p);
        double lo = vm(0, mj), hi = vm(0, mj);
        for (std::size_t i = 1; i < c; ++i) {
            lo = std::min(lo, vm(i, mj));
            hi = std::max(hi, vm(i, mj));
        }
        CHECK(out.values(mk, mj) >= lo - 1e-12);
        CHECK(out.values(mk, mj) <= hi + 1e-12);
    }
}

TEST_CASE("nps_impute: coincident point copies its centroid") {
    Matrix v = Matrix::from_rows({{1.0, 2.0, 0.0}, {9.0, 9.0, 9.0}});
    Mask m(2, 3, true);
    m.set(0, 2, false);
    const DataSet data(v, m);
    // point 0 currently reads (1,2,0); centroid 0 placed exactly there
    const Centroids centroids{Matrix::from_rows({{1.0, 2.0, 0.0}, {8.0, 8.0, 8.0}})};
    const DataSet out = nps_impute(data, centroids);
    CHECK(out.values(0, 2) == 0.0);  // centroid 0's third coordinate
    CHECK(out.values(1, 0) == 9.0);
}

TEST_CASE("nps_impute: equidistant tie goes to the lowest cluster index") {
    Matrix v = Matrix::from_rows({{0.0, 0.0}, {9.0, 9.0}});
    Mask m(2, 2, true);
    m.set(0, 1, false);
    const DataSet data(v, m);
    const Centroids centroids{Matrix::from_rows({{-1.0, 5.0}, {1.0, -5.0}})};
    const DataSet out = nps_impute(data, centroids);
    CHECK(out.values(0, 1) == 5.0);
}

TEST_CASE("nps_impute: every imputed cell equals a centroid coordinate of its column") {
    Rng rng(42);
    Matrix values(6, 3);
    for (auto& cell : values.flat()) cell = rng.next_normal() * 4;
    Mask mask(6, 3, true);
    mask.set(0, 0, false);
    mask.set(2, 1, false);
    mask.set(2, 2, false);
    mask.set(5, 1, false);
    const DataSet data(values, mask);
    Matrix vm(3, 3);
    for (auto& cell : vm.flat()) cell = rng.next_normal() * 4;
    const DataSet out = nps_impute(data, Centroids{vm});
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t j = 0; j < 3; ++j) {
            if (mask.observed(k, j)) {
                CHECK(out.values(k, j) == values(k, j));
            } else {
                bool matches_some_centroid = false;
                for (std::size_t i = 0; i < 3; ++i)
                    matches_some_centroid = matches_some_centroid || out.values(k, j) == vm(i, j);
                CHECK(matches_some_centroid);
            }
        }
}

TEST_CASE("ocs and nps coincide for a single cluster") {
    Matrix v = Matrix::from_rows({{1.0, 0.0}, {2.0, 5.0}, {3.0, 6.0}});
    Mask m(3, 2, true);
    m.set(0, 1, false);
    m.set(2, 0, false);
    const DataSet data(v, m);
    const Centroids centroid{Matrix::from_rows({{1.5, 4.5}})};
    const Matrix u(1, 3, 1.0);
    const Matrix t(1, 3, 0.7);
    Parameters p;
    const DataSet a = ocs_impute(data, u, t, centroid, p);
    const DataSet b = nps_impute(data, centroid);
    CHECK(a.values == b.values);
}

TEST_CASE("run_incomplete on complete data equals run_pfcm bit for bit") {
    const DataSet iris = testutil::load_iris();
    Parameters p;
    for (const Strategy strategy : {Strategy::OCS, Strategy::NPS}) {
        const RunResult a = run_incomplete(iris, p, strategy, 4242);
        const RunResult b = run_pfcm(iris, p, 4242);
        CHECK(a.iterations == b.iterations);
        CHECK(a.centroids.v == b.centroids.v);
        CHECK(a.partition.u == b.partition.u);
        CHECK(a.imputed.values == b.imputed.values);
    }
}

TEST_CASE("run_incomplete: observed cells survive, mask comes back all-true") {
    const DataSet iris = testutil::load_iris();
    const DataSet holey = inject_missing(iris, InjectionSpec{0.2, 9});
    Parameters p;
    for (const Strategy strategy : {Strategy::OCS, Strategy::NPS}) {
        const RunResult r = run_incomplete(holey, p, strategy, 31);
        REQUIRE(r.imputed.mask.all_observed());
        for (std::size_t k = 0; k < iris.n(); ++k)
            for (std::size_t j = 0; j < iris.s(); ++j)
                if (holey.mask.observed(k, j))
                    CHECK(r.imputed.values(k, j) == iris.values(k, j));
    }
}

TEST_CASE("run_incomplete is deterministic per seed") {
    const DataSet iris = testutil::load_iris();
    const DataSet holey = inject_missing(iris, InjectionSpec{0.15, 3});
    Parameters p;
    for (const Strategy strategy : {Strategy::OCS, Strategy::NPS}) {
        const RunResult a = run_incomplete(holey, p, strategy, 5);
        const RunResult b = run_incomplete(holey, p, strategy, 5);
        CHECK(a.iterations == b.iterations);
        CHECK(a.centroids.v == b.centroids.v);
        CHECK(a.imputed.values == b.imputed.values);
        CHECK(a.objective_trace == b.objective_trace);
    }
}

TEST_CASE("capped nps run: final imputations sit on the returned centroids") {
    // when the cap ends the run, the last write used the centroids that come
    // back in the result, so the equality is exact
    const DataSet iris = testutil::load_iris();
    const DataSet holey = inject_missing(iris, InjectionSpec{0.1, 7});
    Parameters p;
    p.max_iter = 3;
    const RunResult r = run_incomplete(holey, p, Strategy::NPS, 11);
    REQUIRE_FALSE(r.converged);
    for (std::size_t k = 0; k < iris.n(); ++k)
        for (std::size_t j = 0; j < iris.s(); ++j)
            if (!holey.mask.observed(k, j)) {
                bool on_centroid = false;
                for (std::size_t i = 0; i < p.c; ++i)
                    on_centroid = on_centroid || r.imputed.values(k, j) == r.centroids.v(i, j);
                CHECK(on_centroid);
            }
}

TEST_CASE("ocs runs keep imputations inside the per-column centroid range") {
    const DataSet iris = testutil::load_iris();
    const DataSet holey = inject_missing(iris, InjectionSpec{0.25, 13});
    Parameters p;
    p.max_iter = 4;  // end by cap so the final write matches returned centroids
    const RunResult r = run_incomplete(holey, p, Strategy::OCS, 17);
    REQUIRE_FALSE(r.converged);
    for (std::size_t k = 0; k < iris.n(); ++k)
        for (std::size_t j = 0; j < iris.s(); ++j)
            if (!holey.mask.observed(k, j)) {
                double lo = r.centroids.v(0, j), hi = r.centroids.v(0, j);
                for (std::size_t i = 1; i < p.c; ++i) {
                    lo = std::min(lo, r.centroids.v(i, j));
                    hi = std::max(hi, r.centroids.v(i, j));
                }
                CHECK(r.imputed.values(k, j) >= lo - 1e-12);
                CHECK(r.imputed.values(k, j) <= hi + 1e-12);
            }
}
