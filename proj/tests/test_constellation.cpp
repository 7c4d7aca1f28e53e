#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "uwofdm/constellation.hpp"

using namespace uwofdm;

TEST_CASE("points sit at the Q-th roots of unity")
{
    for (int order : {2, 4, 8, 16}) {
        PskConstellation c(order);
        REQUIRE(c.order() == order);
        for (int q = 0; q < order; ++q) {
            const cplx expected = std::polar(1.0, 2.0 * std::numbers::pi * q / order);
            CHECK(std::abs(c.point(q) - expected) < 1e-15);
            CHECK(std::abs(std::abs(c.point(q)) - 1.0) < 1e-15);
        }
        CHECK(c.point(0) == cplx{1.0, 0.0});
    }
}

TEST_CASE("bits_per_symbol is log2 of the order")
{
    CHECK(PskConstellation(2).bits_per_symbol() == 1);
    CHECK(PskConstellation(4).bits_per_symbol() == 2);
    CHECK(PskConstellation(16).bits_per_symbol() == 4);
}

TEST_CASE("labels are Gray coded: neighbors differ in one bit")
{
    for (int order : {4, 8, 16, 32}) {
        PskConstellation c(order);
        for (int q = 0; q < order; ++q) {
            const std::uint32_t here = c.bits_of(q);
            const std::uint32_t next = c.bits_of((q + 1) % order);
            CHECK(std::popcount(here ^ next) == 1);
        }
        CHECK(c.bits_of(0) == 0);
    }
}

TEST_CASE("bits_of and index_of_bits invert each other")
{
    PskConstellation c(16);
    for (int q = 0; q < 16; ++q)
        CHECK(c.index_of_bits(c.bits_of(q)) == q);
    for (std::uint32_t bits = 0; bits < 16; ++bits)
        CHECK(c.bits_of(c.index_of_bits(bits)) == bits);
}

TEST_CASE("nearest recovers exact and perturbed points")
{
    PskConstellation c(8);
    for (int q = 0; q < 8; ++q) {
        CHECK(c.nearest(c.point(q)) == q);
        CHECK(c.nearest(c.point(q) * 3.7) == q);              // scale invariant
        CHECK(c.nearest(c.point(q) + cplx{0.05, -0.03}) == q); // small noise
    }
}

TEST_CASE("nearest ties resolve to the lowest index")
{
    // The origin is an exact floating-point tie for the small orders: the
    // distance to every point computes as exactly 1.0. Off-axis "geometric"
    // ties and larger orders are not exact in doubles, because the points
    // carry ulp-level trigonometric residue.
    for (int order : {2, 4, 8})
        CHECK(PskConstellation(order).nearest(cplx{0.0, 0.0}) == 0);
}

TEST_CASE("index_of_point distinguishes membership from proximity")
{
    PskConstellation c(4);
    CHECK(c.index_of_point(c.point(2)) == 2);
    CHECK(c.index_of_point(c.point(2) + cplx{1e-12, 0.0}) == 2);
    CHECK(c.index_of_point(cplx{0.9, 0.1}) == -1);
    CHECK(c.index_of_point(c.point(1) * 1.01) == -1);
}

TEST_CASE("invalid orders are rejected")
{
    CHECK_THROWS_AS(PskConstellation(0), std::invalid_argument);
    CHECK_THROWS_AS(PskConstellation(1), std::invalid_argument);
    CHECK_THROWS_AS(PskConstellation(3), std::invalid_argument);
    CHECK_THROWS_AS(PskConstellation(-4), std::invalid_argument);
    CHECK_THROWS_AS(PskConstellation(12), std::invalid_argument);
}
