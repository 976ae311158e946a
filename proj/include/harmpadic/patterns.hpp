#pragma once

// Valuation towers nu_p(H(p^m n)), m = 0, 1, 2, ..., for n coprime to p, and
// the p = 5 style valuation tables.
//
// Allowed tower shapes (b = nu_p(H(n))):
//   b <= 2                      descent: b, b-1, b-2, ...
//   non-Wolstenholme p, b >= 4  case 1:  b, 2, 1, 0, ...
//   non-Wolstenholme p, b = 3   case 2:  2m + 3 for every m
//                               case 3:  ascent 2m + 3, then M - m, nu = 0 at m = M
//   Wolstenholme p, b = 3       case 1:  3, 2, 1, 0, ...
//   Wolstenholme p, b >= 4      case 2:  >= 2m + 4 for every m
//                               case 3:  >= 2m + 4, then M - m
//
// The ascent/descent boundary is checked under two conventions: the published
// one (m <= M/3 + 1, resp. m <= (M+1)/3 + 1) and the one that follows from the
// cancellation argument (3m + 3 <= M, resp. 3m + 4 <= M), which is the only
// one compatible with H(pn) = H(n)/p + O(p^2) for small M. A tower matching
// either is accepted and the matching convention is recorded.

#include <optional>
#include <string>
#include <vector>

#include "wolstenholme.hpp"

namespace harmpadic {

enum class TowerCase {
    Descent,
    NonWolstenholmeCase1,
    NonWolstenholmeCase2,
    NonWolstenholmeCase3,
    WolstenholmeCase1,
    WolstenholmeCase2,
    WolstenholmeCase3,
    Violation,
    Withheld,
};

inline std::string to_string(TowerCase c) {
    switch (c) {
    case TowerCase::Descent: return "Descent";
    case TowerCase::NonWolstenholmeCase1: return "NonWolstenholme-case1";
    case TowerCase::NonWolstenholmeCase2: return "NonWolstenholme-case2";
    case TowerCase::NonWolstenholmeCase3: return "NonWolstenholme-case3";
    case TowerCase::WolstenholmeCase1: return "Wolstenholme-case1";
    case TowerCase::WolstenholmeCase2: return "Wolstenholme-case2";
    case TowerCase::WolstenholmeCase3: return "Wolstenholme-case3";
    case TowerCase::Violation: return "Violation";
    case TowerCase::Withheld: return "Withheld";
    }
    return "?";
}

struct TowerClassification {
    TowerCase kind = TowerCase::Violation;
    std::optional<long> turning_index;  ///< M, the level where the valuation reaches 0
    bool prefix_only = false;           ///< case 2 only observed on a finite prefix
    std::string boundary_convention;    ///< "published", "derived", "both" (case 3 only)
};

namespace detail {

inline bool descends_from(const std::vector<long>& v, std::size_t from, long start) {
    for (std::size_t m = from; m < v.size(); ++m) {
        if (v[m] != start - static_cast<long>(m - from)) return false;
    }
    return true;
}

/// M from the observed tower: the first zero, or extrapolated from a final
/// descending entry.
inline std::optional<long> turning_index(const std::vector<long>& v) {
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (v[m] == 0) return static_cast<long>(m);
    }
    long last = static_cast<long>(v.size()) - 1;
    if (v.back() > 0) return last + v.back();
    return std::nullopt;
}

} // namespace detail

/// Matches an observed tower v[0..m_max] against the allowed shapes.
inline TowerClassification classify_valuations(const std::vector<long>& v, bool wolstenholme) {
    TowerClassification out;
    if (v.empty()) return out;
    const long base = v[0];
    const long last = static_cast<long>(v.size()) - 1;

    if (base <= 2) {
        out.kind = detail::descends_from(v, 0, base) ? TowerCase::Descent : TowerCase::Violation;
        return out;
    }
    bool drops_to_two = v.size() < 2 || detail::descends_from(v, 1, 2);
    if (!wolstenholme && base >= 4) {
        out.kind = drops_to_two ? TowerCase::NonWolstenholmeCase1 : TowerCase::Violation;
        return out;
    }
    if (wolstenholme && base == 3) {
        out.kind = drops_to_two ? TowerCase::WolstenholmeCase1 : TowerCase::Violation;
        return out;
    }

    // Remaining: (non-W, base 3) with exact ascent 2m+3, or (W, base >= 4) with ascent >= 2m+4.
    const long offset = wolstenholme ? 4 : 3;
    auto on_ascent = [&](long m) {
        return wolstenholme ? v[m] >= 2 * m + offset : v[m] == 2 * m + offset;
    };
    bool all_ascent = true;
    for (long m = 0; m <= last; ++m) all_ascent = all_ascent && on_ascent(m);
    if (all_ascent) {
        out.kind = wolstenholme ? TowerCase::WolstenholmeCase2 : TowerCase::NonWolstenholmeCase2;
        out.prefix_only = true;
        return out;
    }

    auto M = detail::turning_index(v);
    if (!M) return out;
    auto matches = [&](auto ascent_bound) {
        for (long m = 0; m <= last; ++m) {
            bool ok = ascent_bound(m) ? on_ascent(m) : v[m] == *M - m;
            if (!ok) return false;
        }
        return true;
    };
    const double Md = static_cast<double>(*M);
    bool published = wolstenholme ? matches([&](long m) { return m <= (Md + 1) / 3 + 1; })
                                  : matches([&](long m) { return m <= Md / 3 + 1; });
    bool derived = matches([&](long m) { return 3 * m + offset <= *M; });
    if (!published && !derived) return out;
    out.kind = wolstenholme ? TowerCase::WolstenholmeCase3 : TowerCase::NonWolstenholmeCase3;
    out.turning_index = M;
    out.boundary_convention = published && derived ? "both" : (published ? "published" : "derived");
    return out;
}

struct PatternReport {
    u64 prime = 0;
    Integer base_n;
    bool wolstenholme_prime = false;
    std::vector<HarmonicValuation> tower;  ///< index m: nu_p(H(p^m n))
    TowerClassification classification;
    std::string diagnostics;

    Valuation base_valuation() const { return tower.at(0).valuation; }
};

struct TowerOptions {
    long m_max = 6;
    long precision = kDefaultPrecision;
    long precision_ceiling = kDefaultPrecisionCeiling;
};

inline PatternReport classify_tower(u64 p, const Integer& n, const TowerOptions& opt = {},
                                    const BernoulliTable& table = default_bernoulli_table()) {
    require_prime_at_least(p, 5);
    if (n <= 0) throw DomainError("tower base must be a positive integer");
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) throw DomainError("tower base must be coprime to p");
    if (opt.m_max < 0) throw DomainError("m_max must be non-negative");

    PatternReport report;
    report.prime = p;
    report.base_n = n;
    report.wolstenholme_prime = wolstenholme_test(p, table).is_wolstenholme;
    DigitsBaseP digits = DigitsBaseP::of(n, p);
    std::vector<long> values;
    std::vector<long> undetermined;
    for (long m = 0; m <= opt.m_max; ++m) {
        HarmonicValuation hv = nu_p_harmonic(digits.times_power(static_cast<std::size_t>(m)), opt.precision,
                                             opt.precision_ceiling);
        report.tower.push_back(hv);
        if (!hv.exact) undetermined.push_back(m);
        else values.push_back(hv.valuation.value());
    }
    if (!undetermined.empty()) {
        report.classification.kind = TowerCase::Withheld;
        report.diagnostics = "precision ceiling reached at m =";
        for (long m : undetermined) report.diagnostics += " " + std::to_string(m);
        return report;
    }
    report.classification = classify_valuations(values, report.wolstenholme_prime);
    return report;
}

/// Rows m = 0..rows-1, columns k = 0..p-1: nu_p(H(pm + k)).
struct ValuationTable {
    u64 prime = 0;
    std::vector<std::vector<Valuation>> rows;
};

inline ValuationTable table_generate(u64 p, u64 rows, u64 exact_bound = kExactModeBound) {
    require_prime(p);
    if (rows == 0) throw DomainError("table needs at least one row");
    u64 n_max = p * rows - 1;
    require_exact_mode(n_max, exact_bound);
    std::vector<Valuation> vals = valuation_stream(p, n_max, exact_bound);
    ValuationTable t;
    t.prime = p;
    for (u64 m = 0; m < rows; ++m) {
        t.rows.emplace_back(vals.begin() + static_cast<long>(m * p), vals.begin() + static_cast<long>((m + 1) * p));
    }
    return t;
}

} // namespace harmpadic
