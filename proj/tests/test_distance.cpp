#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "distspec/distance.hpp"

using namespace distspec;

TEST_CASE("distance profile of the 4-vertex path") {
    auto p = distance_profile(generate_family(Family::path, 4));
    REQUIRE(p.n == 4);
    REQUIRE(p.diameter == 3);
    REQUIRE(p.d(0, 3) == 3);
    REQUIRE(p.d(2, 1) == 1);
    REQUIRE(p.d(1, 1) == 0);
    REQUIRE(p.dist_degrees == std::vector<std::int64_t>{6, 4, 4, 6});
    REQUIRE(p.second_degrees == std::vector<std::int64_t>{30, 22, 22, 30});
    REQUIRE(p.wiener == 10);
}

TEST_CASE("distance profile of small named graphs") {
    auto k1 = distance_profile(Graph(1, {}));
    REQUIRE(k1.diameter == 0);
    REQUIRE(k1.wiener == 0);
    REQUIRE(k1.dist_degrees == std::vector<std::int64_t>{0});

    auto c4 = distance_profile(generate_family(Family::cycle, 4));
    REQUIRE(c4.diameter == 2);
    REQUIRE(c4.dist_degrees == std::vector<std::int64_t>{4, 4, 4, 4});
    REQUIRE(c4.wiener == 8);

    auto star5 = distance_profile(generate_family(Family::star, 5));
    REQUIRE(star5.diameter == 2);
    REQUIRE(star5.dist_degrees == std::vector<std::int64_t>{4, 7, 7, 7, 7});
    REQUIRE(star5.wiener == 16);

    auto k5 = distance_profile(generate_family(Family::complete, 5));
    REQUIRE(k5.diameter == 1);
    REQUIRE(k5.wiener == 10);
}

TEST_CASE("distance profile rejects disconnected graphs") {
    REQUIRE_THROWS_WITH(distance_profile(Graph(5, {{0, 1}, {2, 3}})),
                        Catch::Matchers::ContainsSubstring("3 components"));
}

TEST_CASE("distance profile rejects oversized graphs") {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < 4097; ++i) edges.emplace_back(i, i + 1);
    REQUIRE_THROWS_AS(distance_profile(Graph(4097, std::move(edges))), input_error);
}

TEST_CASE("power sequence on the 4-vertex path, alpha 1") {
    auto p = distance_profile(generate_family(Family::path, 4));
    auto seq = power_sequence(p, 1.0, 3);
    REQUIRE(seq.depth == 3);
    REQUIRE_FALSE(seq.overflowed);
    REQUIRE(seq.m(1) == std::vector<double>{6, 4, 4, 6});
    REQUIRE(seq.m(2) == std::vector<double>{30, 22, 22, 30});
    REQUIRE(seq.m(3) == std::vector<double>{156, 112, 112, 156});
    REQUIRE(seq.s(1) == 104.0);
    REQUIRE(seq.s(2) == 2768.0);
    REQUIRE(seq.s(3) == 73760.0);
}

TEST_CASE("power sequence with other exponents") {
    auto p = distance_profile(generate_family(Family::path, 4));

    auto sq = power_sequence(p, 2.0, 2);
    REQUIRE(sq.m(1) == std::vector<double>{36, 16, 16, 36});
    REQUIRE(sq.m(2) == std::vector<double>{156, 124, 124, 156});
    REQUIRE(sq.s(1) == 3104.0);
    REQUIRE(sq.s(2) == 79424.0);

    auto inv = power_sequence(p, -1.0, 2);
    REQUIRE(inv.m(1)[0] == Catch::Approx(1.0 / 6.0));
    REQUIRE(inv.s(1) == Catch::Approx(2.0 / 36.0 + 2.0 / 16.0));
    REQUIRE_FALSE(inv.overflowed);

    // 6^600 squared leaves double range
    auto huge = power_sequence(p, 600.0, 2);
    REQUIRE(huge.overflowed);
}

TEST_CASE("power sequence rejects bad arguments") {
    auto p = distance_profile(generate_family(Family::path, 4));
    REQUIRE_THROWS_AS(power_sequence(p, 1.0, 1), input_error);
    REQUIRE_THROWS_AS(power_sequence(p, 1.0, 51), input_error);
    REQUIRE_THROWS_AS(power_sequence(p, std::nan(""), 2), input_error);

    auto k1 = distance_profile(Graph(1, {}));
    REQUIRE_THROWS_AS(power_sequence(k1, 1.0, 2), input_error);
}
