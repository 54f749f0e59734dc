#pragma once

#include <cstddef>
#include <vector>

#include <omp.h>

namespace ortho {

/// Execution policy for the data-parallel kernels. Every kernel has a serial
/// reference path and an OpenMP path producing bit-identical results: both
/// reduce over the same fixed block decomposition, so the outcome does not
/// depend on the thread count.
struct ExecPolicy {
    enum class Mode { serial, parallel };
    Mode mode = Mode::parallel;
    std::size_t block = 1024;

    static ExecPolicy serial_ref() { return {Mode::serial, 1024}; }
};

namespace detail {

inline std::size_t block_count(std::size_t n, std::size_t block) {
    return (n + block - 1) / block;
}

}  // namespace detail

/// Deterministic blocked reduction of term(0) + ... + term(n-1).
///
/// Blocks are summed left-to-right internally and combined in block order, so
/// serial and parallel modes agree exactly. `zero` supplies the accumulator
/// seed (and, for BigFloat, its precision).
template <class T, class Term>
T blocked_sum(std::size_t n, const ExecPolicy& pol, const T& zero, Term&& term) {
    if (n == 0) return zero;
    const std::size_t nb = detail::block_count(n, pol.block);
    if (pol.mode == ExecPolicy::Mode::serial || nb == 1) {
        T acc = zero;
        for (std::size_t b = 0; b < nb; ++b) {
            const std::size_t lo = b * pol.block;
            const std::size_t hi = lo + pol.block < n ? lo + pol.block : n;
            T part = zero;
            for (std::size_t i = lo; i < hi; ++i) part += term(i);
            acc += part;
        }
        return acc;
    }
    std::vector<T> parts(nb, zero);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * pol.block;
        const std::size_t hi = lo + pol.block < n ? lo + pol.block : n;
        T part = zero;
        for (std::size_t i = lo; i < hi; ++i) part += term(i);
        parts[static_cast<std::size_t>(b)] = part;
    }
    T acc = zero;
    for (std::size_t b = 0; b < nb; ++b) acc += parts[b];
    return acc;
}

/// Neumaier-compensated variant of blocked_sum; same determinism guarantee.
template <class T, class Term>
T blocked_sum_compensated(std::size_t n, const ExecPolicy& pol, const T& zero, Term&& term) {
    using std::abs;
    struct Pair { T sum, comp; };
    auto add = [](Pair& p, const T& v) {
        T t = p.sum + v;
        if (abs(p.sum) >= abs(v)) {
            p.comp += (p.sum - t) + v;
        } else {
            p.comp += (v - t) + p.sum;
        }
        p.sum = t;
    };
    if (n == 0) return zero;
    const std::size_t nb = detail::block_count(n, pol.block);
    std::vector<Pair> parts(nb, Pair{zero, zero});
    auto run_block = [&](std::size_t b) {
        const std::size_t lo = b * pol.block;
        const std::size_t hi = lo + pol.block < n ? lo + pol.block : n;
        Pair p{zero, zero};
        for (std::size_t i = lo; i < hi; ++i) add(p, term(i));
        parts[b] = p;
    };
    if (pol.mode == ExecPolicy::Mode::serial || nb == 1) {
        for (std::size_t b = 0; b < nb; ++b) run_block(b);
    } else {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < static_cast<long>(nb); ++b) run_block(static_cast<std::size_t>(b));
    }
    Pair acc{zero, zero};
    for (std::size_t b = 0; b < nb; ++b) {
        add(acc, parts[b].sum);
        acc.comp += parts[b].comp;
    }
    return acc.sum + acc.comp;
}

/// Parallel loop over [0, n); bodies must be independent. Serial mode runs the
/// identical iteration order.
template <class Body>
void parallel_for(std::size_t n, const ExecPolicy& pol, Body&& body) {
    if (pol.mode == ExecPolicy::Mode::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) body(static_cast<std::size_t>(i));
}

}  // namespace ortho
