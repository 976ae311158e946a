#pragma once

// Wolstenholme primes: p >= 5 with p | B_{p-3}, equivalently p^3 | H(p-1).

#include <algorithm>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "harmonic.hpp"

namespace harmpadic {

enum class WolstenholmeMethod { Harmonic, Bernoulli, Both };

inline std::string to_string(WolstenholmeMethod m) {
    switch (m) {
    case WolstenholmeMethod::Harmonic: return "harmonic";
    case WolstenholmeMethod::Bernoulli: return "bernoulli";
    case WolstenholmeMethod::Both: return "both";
    }
    return "?";
}

struct WolstenholmeResult {
    u64 prime = 0;
    bool is_wolstenholme = false;
    long h_p_minus_1_valuation = 0;  ///< nu_p(H(p-1)); a lower bound when !valuation_exact
    bool valuation_exact = true;
    WolstenholmeMethod method = WolstenholmeMethod::Harmonic;

    friend bool operator==(const WolstenholmeResult&, const WolstenholmeResult&) = default;
};

/// Sums 1/i modulo p^3 directly; when B_{p-3} is inside the exact table the
/// Bernoulli criterion is evaluated as well and must agree.
inline WolstenholmeResult wolstenholme_test(u64 p, const BernoulliTable& table = default_bernoulli_table(),
                                            bool cross_check = true) {
    require_prime_at_least(p, 5);
    WolstenholmeResult r;
    r.prime = p;
    Integer h = reciprocal_sum_below_prime(p, 3);
    if (h != 0) {
        r.h_p_minus_1_valuation = valuation_of(h, p);
        r.is_wolstenholme = false;
    } else {
        r.is_wolstenholme = true;
        HarmonicValuation v = nu_p_harmonic(to_integer(p - 1), p);
        r.h_p_minus_1_valuation = v.valuation.value();
        r.valuation_exact = v.exact;
    }
    if (cross_check && p - 3 <= table.cap()) {
        bool by_bernoulli = is_wolstenholme_via_bernoulli(p, table, true);
        if (by_bernoulli != r.is_wolstenholme) {
            throw std::logic_error("harmonic and Bernoulli Wolstenholme criteria disagree at p = " + std::to_string(p));
        }
        r.method = WolstenholmeMethod::Both;
    }
    return r;
}

struct ScanProgress {
    u64 lo = 0;
    u64 hi = 0;
    u64 last_prime_done = 0;  ///< every prime <= this one is in `results`
    std::vector<WolstenholmeResult> results;
};

struct ScanOptions {
    unsigned workers = 1;
    std::size_t checkpoint_every = 10'000;  ///< primes per checkpoint
    std::function<void(const ScanProgress&)> on_checkpoint;
    bool cross_check = true;
};

/// Tests every prime in [lo, hi] (primes below 5 are skipped). Results are in
/// ascending prime order regardless of worker count. Passing a previous
/// checkpoint as `resume` continues after its last completed prime.
inline ScanProgress wolstenholme_scan(u64 lo, u64 hi, const ScanOptions& opt = {}, ScanProgress resume = {},
                                      const BernoulliTable& table = default_bernoulli_table()) {
    if (lo > hi) throw DomainError("empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    ScanProgress progress = std::move(resume);
    if (progress.hi != 0 && (progress.lo != lo || progress.hi != hi)) {
        throw DomainError("checkpoint belongs to a different range");
    }
    progress.lo = lo;
    progress.hi = hi;
    u64 start = std::max<u64>({lo, 5, progress.last_prime_done + 1});
    std::vector<u64> primes = start <= hi ? primes_in_range(start, hi) : std::vector<u64>{};

    const unsigned workers = std::max(1u, opt.workers);
    const std::size_t chunk = std::max<std::size_t>(1, opt.checkpoint_every);
    for (std::size_t begin = 0; begin < primes.size(); begin += chunk) {
        std::size_t end = std::min(primes.size(), begin + chunk);
        std::vector<WolstenholmeResult> out(end - begin);
        std::vector<std::exception_ptr> errors(workers);
        auto work = [&](unsigned w) {
            try {
                for (std::size_t i = begin + w; i < end; i += workers) {
                    out[i - begin] = wolstenholme_test(primes[i], table, opt.cross_check);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        progress.results.insert(progress.results.end(), out.begin(), out.end());
        progress.last_prime_done = primes[end - 1];
        if (opt.on_checkpoint) opt.on_checkpoint(progress);
    }
    progress.last_prime_done = hi;
    return progress;
}

} // namespace harmpadic
