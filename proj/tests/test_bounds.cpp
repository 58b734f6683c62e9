#include "doctest.h"

#include <cmath>

#include "nri/bounds.hpp"
#include "nri/rng.hpp"
#include "test_util.hpp"

using namespace nri;
using namespace nri::testutil;

namespace {

ComplexMatrix shift2() {
    ComplexMatrix a(2);
    a(0, 1) = 1.0;
    return a;
}

ComplexMatrix diag1(double v) {
    ComplexMatrix a(1);
    a(0, 0) = v;
    return a;
}

void check_terms(const ChainReport& rep, const std::vector<double>& expected, double eps = 1e-10) {
    REQUIRE(rep.terms.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k)
        CHECK(rep.terms[k].second == doctest::Approx(expected[k]).epsilon(eps));
    CHECK(rep.all_satisfied());
}

}  // namespace

TEST_CASE("kittaneh chain on the shift collapses at the lower end") {
    OperatorCache a(shift2());
    const auto rep = kittaneh_chain(a);
    check_terms(rep, {0.25, 0.25, 0.5});
    CHECK(rep.chain_id == "kittaneh");
    CHECK(rep.assertions.size() == 2);
}

TEST_CASE("abs_sum chain on the shift") {
    OperatorCache a(shift2());
    check_terms(abs_sum_chain(a), {0.25, 0.5, 0.5, 0.5});
}

TEST_CASE("squared refinement chain on the shift") {
    OperatorCache a(shift2());
    check_terms(squared_refinement_chain(a), {0.25, 0.3125, 1.0 / 3.0, 0.5});
}

TEST_CASE("additive refinement chain on the shift is flat") {
    OperatorCache a(shift2());
    check_terms(additive_refinement_chain(a), {0.25, 0.25, 0.25});
}

TEST_CASE("cartesian chains on the shift") {
    OperatorCache a(shift2());
    check_terms(cartesian_power_chain(a, 1.0), {0.25, 0.25, 0.25});
    check_terms(cartesian_lower_chain(a, ScalarFn::power(2.0)), {0.0625, 0.0625, 0.0625, 0.0625});
}

TEST_CASE("four-point chains on the shift") {
    OperatorCache a(shift2());
    check_terms(upper_fourpoint(a, ScalarFn::square()), {0.25, 0.3125});
    check_terms(fourpoint_vs_integral(a, ScalarFn::power(2.0)), {0.3125, 1.0 / 3.0});
}

TEST_CASE("power mean chain on the shift") {
    OperatorCache a(shift2());
    check_terms(power_mean_chain(a, 1.0), {0.25, 0.25, 0.5});
}

TEST_CASE("weighted refined chain on the shift") {
    OperatorCache a(shift2());
    const auto rep = weighted_refined_chain(a, 0.5, ScalarFn::power(1.0));
    check_terms(rep, {0.25, 0.5, 0.5});
    REQUIRE(rep.params.size() == 1);
    CHECK(rep.params[0].first == "t");
    CHECK(rep.params[0].second == 0.5);
}

TEST_CASE("two-operand chains on scalars") {
    OperatorCache a(diag1(2.0));
    OperatorCache b(diag1(4.0));
    check_terms(prop_mean_chain(a, b, ScalarFn::power(2.0)), {2.25, 7.0 / 3.0, 2.5});
    check_terms(bourin_norm_check(a, b, ScalarFn::square()), {9.0, 10.0});
    const auto rep = convex_sup_chain(a, b, ScalarFn::square(), 2);
    check_terms(rep, {9.0, 28.0 / 3.0, 10.0}, 1e-8);
    CHECK(rep.sup_is_estimate);
}

TEST_CASE("chain parameter validation") {
    OperatorCache a(shift2());
    OperatorCache b(shift2());
    CHECK_THROWS_AS(power_mean_chain(a, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(cartesian_power_chain(a, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(weighted_refined_chain(a, 1.5, ScalarFn::identity()), std::invalid_argument);
    CHECK_THROWS_AS(prop_mean_chain(a, b, ScalarFn::power(0.5)), std::invalid_argument);
    const auto decreasing = ScalarFn::custom(
        "neg", [](double x) { return -x; },
        {.nonnegative = false, .increasing = false, .convex = true, .operator_convex = true});
    CHECK_THROWS_AS(upper_fourpoint(a, decreasing), std::invalid_argument);
}

TEST_CASE("chains hold on random ensembles") {
    Rng rng(211);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 4;
        OperatorCache a(random_ginibre(rng, n));
        OperatorCache b(random_ginibre(rng, n));
        CHECK(kittaneh_chain(a).all_satisfied());
        CHECK(abs_sum_chain(a).all_satisfied());
        CHECK(squared_refinement_chain(a).all_satisfied());
        CHECK(additive_refinement_chain(a).all_satisfied());
        CHECK(cartesian_power_chain(a, 1.5).all_satisfied());
        CHECK(cartesian_lower_chain(a, ScalarFn::power(1.5)).all_satisfied());
        CHECK(upper_fourpoint(a, ScalarFn::power(1.5)).all_satisfied());
        CHECK(fourpoint_vs_integral(a, ScalarFn::power(1.5)).all_satisfied());
        CHECK(power_mean_chain(a, 1.5).all_satisfied());
        CHECK(prop_mean_chain(a, b, ScalarFn::power(1.5)).all_satisfied());
        CHECK(bourin_norm_check(a, b, ScalarFn::power(1.5)).all_satisfied());
        CHECK(convex_sup_chain(a, b, ScalarFn::power(1.5), 2).all_satisfied());
        for (double t : {0.0, 0.3, 0.5, 1.0})
            CHECK(weighted_refined_chain(a, t, ScalarFn::power(1.0)).all_satisfied());
    }
}

TEST_CASE("weighted refinement term never exceeds the unrefined bound") {
    Rng rng(223);
    for (int trial = 0; trial < 8; ++trial) {
        OperatorCache a(random_ginibre(rng, 3));
        for (double t : {0.1, 0.25, 0.4, 0.5}) {
            const auto rep = weighted_refined_chain(a, t, ScalarFn::power(1.5));
            CHECK(rep.terms[1].second <= rep.terms[2].second + 1e-9 * (1.0 + rep.terms[2].second));
        }
    }
}

TEST_CASE("weighted refined chain at t = 1/2, p = 2 hits half the gram sum") {
    Rng rng(227);
    for (int trial = 0; trial < 6; ++trial) {
        OperatorCache a(random_ginibre(rng, 4));
        const auto rep = weighted_refined_chain(a, 0.5, ScalarFn::power(1.0));
        const double half_gram = 0.5 * spectral_norm(a.gram_sum());
        CHECK(std::abs(rep.terms[1].second - half_gram) <= 1e-10 * (1.0 + half_gram));
    }
}

TEST_CASE("report JSON has a stable field order") {
    OperatorCache a(shift2());
    const auto rep = weighted_refined_chain(a, 0.25, ScalarFn::power(1.0));
    const auto j = to_json(rep);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    const std::vector<std::string> expected = {"chain_id", "params", "terms", "assertions",
                                               "sup_is_estimate"};
    CHECK(keys == expected);
    CHECK(j["chain_id"] == "weighted_refined");
    CHECK(j["params"]["t"] == 0.25);
    CHECK(j["terms"].size() == 3);
    CHECK(j["assertions"].size() == 2);
}

TEST_CASE("operator cache rejects non-finite input") {
    ComplexMatrix bad(2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(OperatorCache{bad}, std::invalid_argument);
}
