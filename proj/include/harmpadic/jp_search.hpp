#pragma once

// Enumeration of J_p = { n >= 1 : p divides the numerator of H(n) }.
//
// If n = pm + k lies in J_p then m lies in J_p or m = 0: the sum
// W(m) + D(m, k) is p-integral, so nu_p(H(m)) <= 0 would force
// nu_p(H(n)) = nu_p(H(m)) - 1 < 0. The search therefore grows J_p digit by
// digit from the root 0, and an empty level certifies that nothing is missing.

#include <algorithm>
#include <string>
#include <vector>

#include "harmonic.hpp"

namespace harmpadic {

enum class JpStatus { Complete, Truncated, Undetermined };

inline std::string to_string(JpStatus s) {
    switch (s) {
    case JpStatus::Complete: return "Complete";
    case JpStatus::Truncated: return "Truncated";
    case JpStatus::Undetermined: return "Undetermined";
    }
    return "?";
}

struct JpMember {
    Integer n;
    long valuation;  ///< exact unless `exact` is false, then a lower bound
    bool exact = true;
};

struct JpStats {
    long levels_explored = 0;
    long nodes_expanded = 0;
    long max_valuation_seen = 0;
    long recomputations = 0;
};

struct JpResult {
    u64 prime = 0;
    JpStatus status = JpStatus::Complete;
    long level_cap = 0;
    std::vector<JpMember> members;      ///< ascending by n
    std::vector<Integer> undetermined;  ///< members whose valuation hit the precision ceiling
    JpStats stats;

    std::vector<Integer> member_values() const {
        std::vector<Integer> out;
        out.reserve(members.size());
        for (const auto& m : members) out.push_back(m.n);
        return out;
    }
};

struct JpOptions {
    long level_cap = 40;
    long precision = kDefaultPrecision;
    long precision_ceiling = kDefaultPrecisionCeiling;
    long guard = 3;
};

/// Brute-force members of J_p up to `bound` from exact harmonic numbers.
inline std::vector<u64> jp_scan_exact(u64 p, u64 bound, u64 exact_bound = kExactModeBound) {
    std::vector<Valuation> vals = valuation_stream(p, bound, exact_bound);
    std::vector<u64> out;
    for (u64 n = 1; n < vals.size(); ++n) {
        if (vals[n] >= Valuation(1)) out.push_back(n);
    }
    return out;
}

namespace detail {

struct SearchNode {
    Integer n;
    PadicApprox h;  ///< H(n)
    long level;
};

} // namespace detail

/// Breadth-first lifting over base-p digits. Requires p >= 5.
inline JpResult jp_enumerate(u64 p, const JpOptions& opt = {}) {
    require_prime(p);
    if (p < 5) {
        throw DomainError("digit lifting needs p >= 5; use the exact scan (jp --scan --bound N) for p = " +
                          std::to_string(p));
    }
    if (opt.level_cap < 1 || opt.precision < 1 || opt.precision_ceiling < opt.precision || opt.guard < 0) {
        throw DomainError("invalid search options");
    }

    JpResult result;
    result.prime = p;
    result.level_cap = opt.level_cap;

    // Recompute H(n) from scratch, doubling precision until its valuation sits
    // clear of the certified bound. Returns false at the ceiling.
    auto recompute = [&](const Integer& n, long start_k, PadicApprox& out) {
        DigitsBaseP digits = DigitsBaseP::of(n, p);
        long k = std::min(std::max(start_k, opt.precision), opt.precision_ceiling);
        while (true) {
            ++result.stats.recomputations;
            out = harmonic_mod_pk(digits, k);
            bool settled = !out.is_zero_to_precision() && out.valuation() < out.absolute_precision() - opt.guard;
            if (settled) return true;
            if (k >= opt.precision_ceiling) return false;
            k = std::min(2 * k, opt.precision_ceiling);
        }
    };

    std::vector<detail::SearchNode> frontier;
    std::vector<detail::SearchNode> next;
    bool root = true;
    for (long level = 1;; ++level) {
        next.clear();
        std::vector<detail::SearchNode> parents;
        if (root) {
            parents.push_back({Integer(0), PadicApprox::zero_to(p, opt.precision + opt.guard + 2), 0});
        } else {
            parents = std::move(frontier);
        }

        for (auto& node : parents) {
            ++result.stats.nodes_expanded;
            // H(pm) = H(m)/p + W(m); the root has H(0) = 0 exactly.
            PadicApprox base = PadicApprox::zero_to(p, 0);
            long abs = 0;
            if (root) {
                abs = node.h.absolute_precision();
                base = PadicApprox::zero_to(p, abs);
            } else {
                if (node.h.absolute_precision() - 1 < opt.guard + 2) recompute(node.n, opt.precision, node.h);
                abs = node.h.absolute_precision() - 1;
                auto poly = block_sum_polynomial(p, abs);
                base = padd(node.h.shifted(-1), PadicApprox::from_residue(p, (*poly)(node.n), abs));
            }
            const Integer mod = pow_p(p, abs);
            const Integer pm = node.n * static_cast<unsigned long>(p);
            std::vector<Integer> inv;
            inv.reserve(p - 1);
            for (u64 i = 1; i < p; ++i) inv.push_back(pm + static_cast<unsigned long>(i));
            batch_invert(std::span<Integer>(inv), mod);

            Integer prefix = 0;
            for (u64 k = 0; k < p; ++k) {
                if (k > 0) prefix = (prefix + inv[k - 1]) % mod;
                if (root && k == 0) continue;
                Integer child = pm + static_cast<unsigned long>(k);
                PadicApprox h = k == 0 ? base : padd(base, PadicApprox::from_residue(p, prefix, abs));

                bool settled = !h.is_zero_to_precision() && h.valuation() < h.absolute_precision() - opt.guard;
                if (!settled && (h.is_zero_to_precision() || h.valuation() >= 1)) {
                    // Only potential members are worth certifying at higher precision.
                    settled = recompute(child, 2 * opt.precision, h);
                    if (!settled && h.is_zero_to_precision()) {
                        result.members.push_back({child, h.valuation(), false});
                        result.undetermined.push_back(child);
                        continue;
                    }
                }
                if (!h.is_zero_to_precision() && h.valuation() >= 1) {
                    result.members.push_back({child, h.valuation(), true});
                    result.stats.max_valuation_seen = std::max(result.stats.max_valuation_seen, h.valuation());
                    next.push_back({child, h, level});
                }
            }
        }
        root = false;
        result.stats.levels_explored = level;
        if (next.empty()) {
            result.status = JpStatus::Complete;
            break;
        }
        if (level >= opt.level_cap) {
            result.status = JpStatus::Truncated;
            break;
        }
        frontier = std::move(next);
        next = {};
    }

    if (!result.undetermined.empty()) result.status = JpStatus::Undetermined;
    std::sort(result.members.begin(), result.members.end(), [](const JpMember& a, const JpMember& b) { return a.n < b.n; });
    std::sort(result.undetermined.begin(), result.undetermined.end());
    return result;
}

/// Whether J_p is exactly {p-1, p(p-1), p^2-1}. Needs a Complete enumeration.
inline bool certify_harmonic_prime(const JpResult& r) {
    if (r.status != JpStatus::Complete) {
        throw NotCertified("J_" + std::to_string(r.prime) + " enumeration is " + to_string(r.status) +
                           "; harmonic-prime certification needs a Complete result");
    }
    const Integer p = to_integer(r.prime);
    std::vector<Integer> expected{p - 1, p * (p - 1), p * p - 1};
    return r.member_values() == expected;
}

} // namespace harmpadic
