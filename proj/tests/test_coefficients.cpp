#include <doctest.h>

#include <cmath>

#include "ortho/coefficients.hpp"
#include "ortho/errors.hpp"

using namespace ortho;

// Hand-solved prefix of the defining equations (independent oracle):
//   N=1: c_0/2 + c_1/3 = 0            -> c_1 = -3/2
//   N=2: c_0/3 + c_1/4 + c_2/5 = 0    -> c_2 = 5/24
//   N=3: c_0/4 + c_1/5 + c_2/6 + c_3/7 = 0 -> c_3 = 77/720
static const BigRational kOracle[4] = {BigRational(1), BigRational(-3, 2), BigRational(5, 24),
                                       BigRational(77, 720)};

TEST_CASE("exact engine reproduces the hand-solved prefix") {
    auto table = compute_exact(3);
    REQUIRE(table.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(table[i] == kOracle[i]);
}

TEST_CASE("exact engine: base case") {
    auto table = compute_exact(0);
    REQUIRE(table.size() == 1);
    CHECK(table[0] == BigRational(1));
}

TEST_CASE("exact recurrence residual vanishes identically") {
    auto table = compute_exact(120);
    for (std::size_t n : {std::size_t(1), std::size_t(7), std::size_t(63), std::size_t(120)}) {
        CHECK(recurrence_residual(table, n) == 0);
    }
}

TEST_CASE("sign pattern of the first coefficients") {
    auto table = compute_exact(3);
    CHECK(table[0] > 0);
    CHECK(table[1] < 0);
    CHECK(table[2] > 0);
    CHECK(table[3] > 0);
}

TEST_CASE("exact partial sums") {
    auto table = compute_exact(2);
    CHECK(table.partial_sum(2) == BigRational(-7, 24));
}

TEST_CASE("exact engine enforces its caps") {
    CHECK_THROWS_AS(compute_exact(5, ExactLimits{.max_index = 4}), ResourceLimitError);
    // a digit budget of 1 is unsatisfiable immediately
    CHECK_THROWS_AS(compute_exact(20, ExactLimits{.max_index = 2000, .max_denominator_digits = 1}),
                    ResourceLimitError);
}

TEST_CASE("float engine matches the oracle prefix to 30+ digits at 128 bits") {
    auto table = compute_float(3);
    REQUIRE(table.size() == 4);
    for (int i = 0; i < 4; ++i) {
        BigFloat expect = to_bigfloat(kOracle[i], 192);
        BigFloat got(0, digits_for_bits(192));
        got = table[i];
        CHECK(static_cast<double>(abs((got - expect) / expect)) < 1e-30);
    }
    // C_2 = 1 - 3/2 + 5/24 = -7/24
    BigFloat c2 = table.partial_sum(2);
    BigFloat expect = to_bigfloat(BigRational(-7, 24), 192);
    CHECK(static_cast<double>(abs(c2 - expect)) < 1e-30);
}

TEST_CASE("float engine base case") {
    auto table = compute_float(0);
    REQUIRE(table.size() == 1);
    CHECK(table[0] == 1);
    CHECK(table.partial_sum(0) == 1);
}

TEST_CASE("partial sums track values to working precision") {
    auto table = compute_float(200);
    for (std::size_t n : {std::size_t(5), std::size_t(50), std::size_t(200)}) {
        BigFloat diff = table.partial_sum(n) - table.partial_sum(n - 1) - table[n];
        CHECK(static_cast<double>(abs(diff)) < 1e-36);
    }
}

TEST_CASE("cross validation: 128-bit table tracks the exact prefix") {
    auto exact = compute_exact(300);
    auto flt = compute_float(300);
    BigFloat err = cross_validate(exact, flt, 300);
    CHECK(static_cast<double>(err) < std::pow(2.0, -100));

    SUBCASE("prefix zero is trivially exact") {
        CHECK(static_cast<double>(cross_validate(exact, flt, 0)) == 0.0);
    }

    SUBCASE("53-bit cancellation loss is visible against 128 bits") {
        auto low = compute_float(300, PrecisionConfig{.mantissa_bits = 53});
        BigFloat low_err = cross_validate(exact, low, 300);
        CHECK(static_cast<double>(low_err) > 100 * static_cast<double>(err));
        CHECK(static_cast<double>(low_err) > std::pow(2.0, -53));
    }
}

TEST_CASE("float engine: serial reference equals the parallel kernel bitwise") {
    auto par = compute_float(150, PrecisionConfig{}, ExecPolicy{});
    auto ser = compute_float(150, PrecisionConfig{}, ExecPolicy::serial_ref());
    for (std::size_t n = 0; n <= 150; ++n) {
        CHECK(par[n] == ser[n]);
        CHECK(par.partial_sum(n) == ser.partial_sum(n));
    }
}

TEST_CASE("exact engine: serial reference equals the parallel kernel") {
    auto par = compute_exact(60, ExactLimits{}, ExecPolicy{});
    auto ser = compute_exact(60, ExactLimits{}, ExecPolicy::serial_ref());
    for (std::size_t n = 0; n <= 60; ++n) CHECK(par[n] == ser[n]);
}

TEST_CASE("plain vs compensated summation agree at their shared precision") {
    auto comp = compute_float(120);
    auto plain = compute_float(120, PrecisionConfig{.mantissa_bits = 128,
                                                    .summation = PrecisionConfig::Summation::plain});
    for (std::size_t n : {std::size_t(50), std::size_t(120)}) {
        BigFloat rel = abs((comp[n] - plain[n]) / comp[n]);
        CHECK(static_cast<double>(rel) < 1e-30);
    }
}

TEST_CASE("precision config validation") {
    CHECK_THROWS_AS(compute_float(4, PrecisionConfig{.mantissa_bits = 32}),
                    std::invalid_argument);
}

TEST_CASE("dyadic bound probe sees no growth trend on a mid-size table") {
    auto table = compute_float(4000);
    auto probe = dyadic_bound_probe(table, 500, 4000);
    REQUIRE(probe.block_max.size() >= 3);
    CHECK(probe.bounded(1.1));
}
