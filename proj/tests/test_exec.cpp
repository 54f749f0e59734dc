#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ortho/bigfloat.hpp"
#include "ortho/exec.hpp"

using namespace ortho;

TEST_CASE("blocked sums: parallel equals serial bitwise (double)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> data(100'000);
    for (auto& v : data) v = dist(rng);

    for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(1023), std::size_t(1024),
                          std::size_t(1025), data.size()}) {
        ExecPolicy par{};
        ExecPolicy ser = ExecPolicy::serial_ref();
        auto term = [&](std::size_t i) { return data[i]; };
        CHECK(blocked_sum(n, par, 0.0, term) == blocked_sum(n, ser, 0.0, term));
        CHECK(blocked_sum_compensated(n, par, 0.0, term) ==
              blocked_sum_compensated(n, ser, 0.0, term));
    }
}

TEST_CASE("blocked sums: parallel equals serial bitwise (BigFloat)") {
    set_working_bits(128);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<BigFloat> data(5000, make_zero(128));
    for (auto& v : data) v += dist(rng);

    auto term = [&](std::size_t i) { return data[i]; };
    ExecPolicy par{};
    ExecPolicy ser = ExecPolicy::serial_ref();
    const BigFloat zero = make_zero(128);
    CHECK(blocked_sum(data.size(), par, zero, term) == blocked_sum(data.size(), ser, zero, term));
    CHECK(blocked_sum_compensated(data.size(), par, zero, term) ==
          blocked_sum_compensated(data.size(), ser, zero, term));
}

TEST_CASE("blocked sums: rational reduction is exact in any mode") {
    std::vector<BigRational> data;
    for (long k = 1; k <= 2000; ++k) data.emplace_back(1, k);
    auto term = [&](std::size_t i) { return data[i]; };
    BigRational a = blocked_sum(data.size(), ExecPolicy{}, BigRational(0), term);
    BigRational b = blocked_sum(data.size(), ExecPolicy::serial_ref(), BigRational(0), term);
    CHECK(a == b);
    BigRational direct = 0;
    for (const auto& q : data) direct += q;
    CHECK(a == direct);
}

TEST_CASE("compensated summation beats plain on cancellation-heavy input") {
    // pairs (v, -v + 2^-20) with every element exactly representable: the
    // true sum is known exactly and plain summation smears it with roundoff
    std::vector<double> data;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    const double tiny = std::ldexp(1.0, -20);
    for (int i = 0; i < 20'000; ++i) {
        const double v = std::floor(std::ldexp(dist(rng), 30));
        data.push_back(v);
        data.push_back(-v + tiny);
    }
    auto term = [&](std::size_t i) { return data[i]; };
    const double expected = 20'000 * tiny;
    const double plain = blocked_sum(data.size(), ExecPolicy{}, 0.0, term);
    const double comp = blocked_sum_compensated(data.size(), ExecPolicy{}, 0.0, term);
    CHECK(std::abs(comp - expected) <= std::abs(plain - expected));
    CHECK(comp == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("parallel_for covers every index exactly once") {
    std::vector<int> hits(10'000, 0);
    parallel_for(hits.size(), ExecPolicy{}, [&](std::size_t i) { hits[i]++; });
    for (int h : hits) CHECK(h == 1);
}
