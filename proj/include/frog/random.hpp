#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>

namespace frog {

std::uint64_t mix64(std::uint64_t z);

// Counter-based stream: the k-th output is a bijective mix of (key, k), so any
// substream named by (seed, ids...) is reproducible without shared state.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key = 0, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

    static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);
    RngStream child(std::uint64_t id) const;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }
    result_type operator()() { return at(counter_++); }
    result_type at(std::uint64_t k) const;

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    // Uniform on (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }
    double exponential();
    int sign() { return ((*this)() >> 63) ? 1 : -1; }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// Runs body(i) for i in [0, n) on up to `workers` threads (0 = auto). The
// assignment of indices to threads does not affect results as long as body(i)
// only draws from streams derived from i.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);
unsigned default_workers();

}  // namespace frog
