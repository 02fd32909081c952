#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cluster_reference.hpp"
#include "iotrust/community.hpp"
#include "iotrust/rng.hpp"

using namespace iotrust;

namespace {

std::vector<std::size_t> sorted_devices(const std::vector<TrustReport>& reports) {
    std::vector<std::size_t> devices;
    for (const TrustReport& report : reports)
        devices.push_back(report.device);
    std::sort(devices.begin(), devices.end());
    return devices;
}

}  // namespace

TEST_CASE("avg_precision is the column mean over providers") {
    PrecisionMatrix pt(3, 2);
    CHECK(avg_precision(pt, 0) == 1.0);

    pt.set(0, 1, 0.8);
    pt.set(1, 1, 0.4);
    pt.set(2, 1, 0.6);
    CHECK(avg_precision(pt, 1) == doctest::Approx(0.6));

    pt.set(0, 0, 0.0);
    pt.set(1, 0, 0.0);
    pt.set(2, 0, 0.0);
    CHECK(avg_precision(pt, 0) == 0.0);

    CHECK_THROWS_AS(avg_precision(pt, 2), std::out_of_range);
}

TEST_CASE("form_clusters assigns grids, density, and the actual cluster") {
    SUBCASE("nine devices across three grids") {
        // 2 low reports, 4 uncertain with precision 0.8, 3 trusted with 0.4
        std::vector<TrustReport> reports;
        std::vector<double> precisions(9, 0.0);
        for (std::size_t d = 0; d < 2; ++d) {
            reports.push_back({d, 0.1});
            precisions[d] = 0.9;
        }
        for (std::size_t d = 2; d < 6; ++d) {
            reports.push_back({d, 0.5});
            precisions[d] = 0.8;
        }
        for (std::size_t d = 6; d < 9; ++d) {
            reports.push_back({d, 0.9});
            precisions[d] = 0.4;
        }
        const ClusterResult result = form_clusters(reports, precisions);
        CHECK(result.min_points == 3);
        CHECK(result.grids[0].size() == 2);
        CHECK(result.grids[1].size() == 4);
        CHECK(result.grids[2].size() == 3);
        CHECK(!result.is_dense[0]);
        CHECK(result.is_dense[1]);
        CHECK(result.is_dense[2]);
        CHECK(*result.avg_prec[1] == doctest::Approx(0.8));
        CHECK(*result.avg_prec[2] == doctest::Approx(0.4));
        CHECK(result.actual_cluster == 1);
    }

    SUBCASE("precision ties resolve to the rightmost dense grid") {
        const std::vector<TrustReport> reports = {{0, 0.1}, {1, 0.5}, {2, 0.9}};
        const std::vector<double> precisions = {1.0, 1.0, 1.0};
        const ClusterResult result = form_clusters(reports, precisions);
        CHECK(result.min_points == 1);
        CHECK(result.is_dense[0]);
        CHECK(result.is_dense[1]);
        CHECK(result.is_dense[2]);
        CHECK(result.actual_cluster == 2);
    }

    SUBCASE("unanimous reports make a single dense grid") {
        std::vector<TrustReport> reports;
        std::vector<double> precisions(10, 1.0);
        for (std::size_t d = 0; d < 10; ++d)
            reports.push_back({d, 0.9});
        const ClusterResult result = form_clusters(reports, precisions);
        CHECK(result.grids[2].size() == 10);
        CHECK(result.actual_cluster == 2);
        CHECK(!result.is_dense[0]);
        CHECK(!result.is_dense[1]);
    }

    SUBCASE("grid boundaries are half-open at 0.3 and 0.7") {
        const std::vector<TrustReport> reports = {{0, 0.3}, {1, 0.7}, {2, 0.29999}};
        const std::vector<double> precisions = {1.0, 1.0, 1.0};
        const ClusterResult result = form_clusters(reports, precisions);
        CHECK(result.grids[0].size() == 1);
        CHECK(result.grids[1].size() == 1);
        CHECK(result.grids[2].size() == 1);
    }

    CHECK_THROWS_AS(form_clusters(std::vector<TrustReport>{}, std::vector<double>{}),
                    std::invalid_argument);
}

TEST_CASE("select_ratings applies the three filtering rules") {
    SUBCASE("actual on the right: neighbor needs > 0.3, wrong needs > 0.7") {
        // devices: 0-2 trusted grid (actual), 3-4 middle, 5-6 left
        const std::vector<TrustReport> reports = {{0, 0.9}, {1, 0.8},  {2, 0.95}, {3, 0.5},
                                                  {4, 0.6}, {5, 0.1},  {6, 0.2}};
        const std::vector<double> precisions = {1.0, 1.0, 1.0, 0.5, 0.3, 0.5, 0.9};
        const ClusterResult result = form_clusters(reports, precisions);
        REQUIRE(result.actual_cluster == 2);
        const std::vector<TrustReport> selected = select_ratings(result);
        // rule 1 keeps 0,1,2; rule 2 keeps 3 (0.5 > 0.3) but not 4 (0.3 is not
        // strict); rule 3 keeps 6 (0.9 > 0.7) but not 5
        CHECK(sorted_devices(selected) == std::vector<std::size_t>{0, 1, 2, 3, 6});
    }

    SUBCASE("actual in the middle: both sides are neighbors, no wrong cluster") {
        const std::vector<TrustReport> reports = {{0, 0.5}, {1, 0.4}, {2, 0.6},
                                                  {3, 0.1}, {4, 0.9}};
        const std::vector<double> precisions = {1.0, 1.0, 1.0, 0.5, 0.5};
        const ClusterResult result = form_clusters(reports, precisions);
        REQUIRE(result.actual_cluster == 1);
        const std::vector<TrustReport> selected = select_ratings(result);
        CHECK(sorted_devices(selected) == std::vector<std::size_t>{0, 1, 2, 3, 4});
    }
}

TEST_CASE("domain_trust_update blends previous and fresh values equally") {
    const DomainTrustRecord prev{0, 0.5, 3};

    const std::vector<TrustReport> same = {{0, 0.5}, {1, 0.5}};
    CHECK(domain_trust_update(prev, same).value == doctest::Approx(0.5));

    const std::vector<TrustReport> high = {{0, 0.8}, {1, 1.0}};
    const DomainTrustRecord next = domain_trust_update(prev, high);
    CHECK(next.value == doctest::Approx(0.7));
    CHECK(next.iteration == 4);
    CHECK(next.sp == 0);

    const DomainTrustRecord full{2, 1.0, 0};
    const std::vector<TrustReport> zero = {{0, 0.0}};
    CHECK(domain_trust_update(full, zero).value == doctest::Approx(0.5));

    CHECK_THROWS_AS(domain_trust_update(prev, std::vector<TrustReport>{}),
                    std::invalid_argument);

    // stays inside the unit interval for unit-interval inputs
    Rng rng(64);
    for (int i = 0; i < 500; ++i) {
        DomainTrustRecord record{0, rng.uniform(), 0};
        std::vector<TrustReport> selected;
        const std::size_t n = 1 + rng.index(10);
        for (std::size_t d = 0; d < n; ++d)
            selected.push_back({d, rng.uniform()});
        record = domain_trust_update(record, selected);
        CHECK(record.value >= 0.0);
        CHECK(record.value <= 1.0);
    }
}

TEST_CASE("update_precision moves entries toward their fixed points") {
    // one report per grid: device 0 lands in the actual (right) grid,
    // device 1 in the neighbor, device 2 in the wrong grid
    const std::vector<TrustReport> reports = {{0, 0.9}, {1, 0.5}, {2, 0.1}};
    PrecisionMatrix pt(1, 4);
    pt.set(0, 0, 1.0);
    pt.set(0, 1, 0.2);
    pt.set(0, 2, 0.8);
    pt.set(0, 3, 0.77);
    std::vector<double> precisions = {1.0, 1.0, 1.0, 1.0};
    precisions[1] = 0.9;  // keep grid-2 the actual via the tie-break anyway

    ClusterResult result = form_clusters(reports, precisions);
    REQUIRE(result.actual_cluster == 2);
    update_precision(pt, result, 0);

    CHECK(pt.at(0, 0) == doctest::Approx(1.0));   // fixed point of the actual rule
    CHECK(pt.at(0, 1) == doctest::Approx(0.35));  // (0.2 + 0.5) / 2
    CHECK(pt.at(0, 2) == doctest::Approx(0.4));   // 0.8 / 2
    CHECK(pt.at(0, 3) == doctest::Approx(0.77));  // non-reporting device untouched

    // neighbor rule from above moves down toward 0.5; wrong rule fixes 0
    PrecisionMatrix pt2(1, 4);
    pt2.set(0, 1, 0.8);
    pt2.set(0, 2, 0.0);
    result = form_clusters(reports, precisions);
    update_precision(pt2, result, 0);
    CHECK(pt2.at(0, 1) == doctest::Approx(0.65));
    CHECK(pt2.at(0, 2) == 0.0);
}

TEST_CASE("precision updates are half-rate contractions to 1, 0.5 and 0") {
    Rng rng(31337);
    const auto actual_rule = [](double x) { return 0.5 * (x + 1.0); };
    const auto neighbor_rule = [](double x) { return 0.5 * (x + 0.5); };
    const auto wrong_rule = [](double x) { return 0.5 * x; };

    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform();
        const double b = rng.uniform();
        CHECK(std::abs(actual_rule(a) - actual_rule(b)) ==
              doctest::Approx(0.5 * std::abs(a - b)));
        CHECK(std::abs(neighbor_rule(a) - neighbor_rule(b)) ==
              doctest::Approx(0.5 * std::abs(a - b)));
        CHECK(std::abs(wrong_rule(a) - wrong_rule(b)) ==
              doctest::Approx(0.5 * std::abs(a - b)));
    }

    double x = 0.13;
    for (int i = 0; i < 60; ++i)
        x = actual_rule(x);
    CHECK(x == doctest::Approx(1.0));
    x = 0.97;
    for (int i = 0; i < 60; ++i)
        x = neighbor_rule(x);
    CHECK(x == doctest::Approx(0.5));
    x = 0.97;
    for (int i = 0; i < 60; ++i)
        x = wrong_rule(x);
    CHECK(x == doctest::Approx(0.0));
}

TEST_CASE("a dense actual cluster always exists") {
    Rng rng(555);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng.index(40);
        std::vector<TrustReport> reports;
        std::vector<double> precisions(n);
        for (std::size_t d = 0; d < n; ++d) {
            reports.push_back({d, rng.uniform()});
            precisions[d] = rng.uniform();
        }
        const ClusterResult result = form_clusters(reports, precisions);
        REQUIRE(result.actual_cluster >= 0);
        CHECK(result.is_dense[static_cast<std::size_t>(result.actual_cluster)]);
        CHECK(result.grids[static_cast<std::size_t>(result.actual_cluster)].size() >=
              result.min_points);
    }
}

TEST_CASE("selection keeps the actual cluster and guards the wrong cluster") {
    Rng rng(808);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.index(30);
        std::vector<TrustReport> reports;
        std::vector<double> precisions(n);
        for (std::size_t d = 0; d < n; ++d) {
            reports.push_back({d, rng.uniform()});
            precisions[d] = rng.uniform();
        }
        const ClusterResult result = form_clusters(reports, precisions);
        const std::vector<TrustReport> selected = select_ratings(result);
        const std::vector<std::size_t> chosen = sorted_devices(selected);

        for (const ClusterPoint& point :
             result.grids[static_cast<std::size_t>(result.actual_cluster)])
            CHECK(std::binary_search(chosen.begin(), chosen.end(), point.device));

        for (int j = 0; j < 3; ++j) {
            if (result.role_of(j) != ClusterResult::Role::wrong)
                continue;
            for (const ClusterPoint& point : result.grids[static_cast<std::size_t>(j)])
                if (point.avg_precision <= 0.7)
                    CHECK(!std::binary_search(chosen.begin(), chosen.end(), point.device));
        }
    }
}

TEST_CASE("clustering and selection match the naive reference") {
    Rng rng(20240202);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.index(30);
        std::vector<TrustReport> reports;
        std::vector<double> precisions(n);
        for (std::size_t d = 0; d < n; ++d) {
            // sprinkle exact boundary values to exercise the threshold edges
            double value = rng.uniform();
            if (rng.bernoulli(0.15))
                value = rng.bernoulli(0.5) ? 0.3 : 0.7;
            reports.push_back({d, value});
            precisions[d] = rng.bernoulli(0.15) ? (rng.bernoulli(0.5) ? 0.3 : 0.7)
                                                : rng.uniform();
        }

        const ClusterResult result = form_clusters(reports, precisions);
        const auto ref = cluster_reference::ref_form_clusters(reports, precisions);

        REQUIRE(result.actual_cluster == ref.actual);
        CHECK(result.min_points == ref.min_points);
        for (int j = 0; j < 3; ++j) {
            CHECK(result.is_dense[static_cast<std::size_t>(j)] == ref.dense[j]);
            std::vector<std::size_t> devices;
            for (const ClusterPoint& point : result.grids[static_cast<std::size_t>(j)])
                devices.push_back(point.device);
            CHECK(devices == ref.grid_devices[j]);
            if (ref.dense[j])
                CHECK(*result.avg_prec[static_cast<std::size_t>(j)] == ref.avg_prec[j]);
        }

        CHECK(sorted_devices(select_ratings(result)) ==
              cluster_reference::ref_selected_devices(ref, precisions));
    }
}

TEST_CASE("identical inputs produce identical clustering results") {
    std::vector<TrustReport> reports;
    std::vector<double> precisions;
    Rng rng(1);
    for (std::size_t d = 0; d < 25; ++d) {
        reports.push_back({d, rng.uniform()});
        precisions.push_back(rng.uniform());
    }
    const ClusterResult a = form_clusters(reports, precisions);
    const ClusterResult b = form_clusters(reports, precisions);
    CHECK(a.actual_cluster == b.actual_cluster);
    CHECK(a.grids == b.grids);
    CHECK(select_ratings(a) == select_ratings(b));
}
