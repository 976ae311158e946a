#pragma once

// Command-line surface. run_cli() parses arguments, runs one command and
// returns the process exit code:
//   0 success, 1 a verify suite failed, 2 usage or domain error,
//   3 undetermined result, 4 capacity exceeded.
// Every flag can also be set through HARMPADIC_<FLAG>; explicit flags win.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cache.hpp"

namespace harmpadic {

enum ExitCode : int { kExitOk = 0, kExitPropertyFailed = 1, kExitUsage = 2, kExitUndetermined = 3, kExitCapacity = 4 };

struct RunConfig {
    long precision = kDefaultPrecision;
    long precision_ceiling = kDefaultPrecisionCeiling;
    long level_cap = 40;
    std::size_t bernoulli_cap = kDefaultBernoulliCap;
    u64 exact_mode_bound = kExactModeBound;
    unsigned worker_count = std::max(1u, std::thread::hardware_concurrency());
    std::string cache_dir;
    bool use_cache = true;
    std::string output_format;  ///< empty: the command's own default

    void validate() const {
        if (precision < 1 || precision_ceiling < 1 || level_cap < 1 || bernoulli_cap < 1 || exact_mode_bound < 1 ||
            worker_count < 1) {
            throw DomainError("numeric settings must be positive");
        }
        if (precision_ceiling < precision) throw DomainError("precision ceiling is below the starting precision");
        if (!output_format.empty() && output_format != "json" && output_format != "csv" && output_format != "text") {
            throw DomainError("unknown output format '" + output_format + "' (json, csv or text)");
        }
    }

    std::string format_or(const std::string& fallback) const { return output_format.empty() ? fallback : output_format; }
};

inline std::string default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::string(xdg) + "/harmpadic";
    if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/harmpadic";
    return ".harmpadic-cache";
}

/// Shared per-run state: the configuration, the optional cache and a
/// Bernoulli table seeded from (and written back to) the cache.
class Session {
public:
    explicit Session(RunConfig cfg) : cfg_(std::move(cfg)), table_(cfg_.bernoulli_cap) {
        cfg_.validate();
        if (cfg_.use_cache) {
            cache_.emplace(cfg_.cache_dir.empty() ? default_cache_dir() : cfg_.cache_dir);
            seeded_ = cache_->load_bernoulli(table_);
        }
    }

    ~Session() {
        if (!cache_) return;
        try {
            std::size_t have = table_.computed();
            if (have > seeded_ && have > 64) cache_->store_bernoulli(table_, have - 1);
        } catch (const std::exception&) {
        }
    }

    const RunConfig& config() const { return cfg_; }
    const BernoulliTable& table() const { return table_; }
    const ResultCache* cache() const { return cache_ ? &*cache_ : nullptr; }

private:
    RunConfig cfg_;
    BernoulliTable table_;
    std::optional<ResultCache> cache_;
    std::size_t seeded_ = 0;
};

inline void print_json(std::ostream& out, const Json& j, bool compact = false) {
    validate_document(j);
    out << (compact ? j.dump() : j.dump(2)) << "\n";
}

// ---- commands --------------------------------------------------------------

inline int cmd_valuation(Session& s, const std::string& n_text, u64 p, bool digits, std::ostream& out) {
    require_prime(p);
    const Integer n = parse_integer(n_text);
    const auto& cfg = s.config();
    HarmonicValuation hv = nu_p_harmonic(n, p, cfg.precision, cfg.precision_ceiling);
    std::optional<PadicApprox> approx;
    if (digits && n != 0) approx = harmonic_mod_pk(n, p, hv.precision_used);
    if (cfg.format_or("text") == "json") {
        print_json(out, valuation_document(n, p, hv, approx));
    } else {
        out << (hv.exact ? "" : ">=") << hv.valuation.str() << "\n";
        if (approx) out << approx->str() << "\n";
    }
    return hv.exact ? kExitOk : kExitUndetermined;
}

struct JpArgs {
    u64 p = 0;
    bool scan = false;
    u64 bound = 0;
    std::optional<long> cap;
};

inline int cmd_jp(Session& s, const JpArgs& a, std::ostream& out) {
    require_prime(a.p);
    const auto& cfg = s.config();
    const std::string fmt = cfg.format_or("json");
    if (a.scan) {
        if (a.bound == 0) throw DomainError("scan mode needs --bound N");
        std::vector<u64> members = jp_scan_exact(a.p, a.bound, cfg.exact_mode_bound);
        Json doc = jp_scan_document(a.p, a.bound, members);
        if (fmt == "json") {
            print_json(out, doc);
        } else {
            for (u64 m : members) out << m << "\n";
        }
        return kExitOk;
    }

    JpOptions opt;
    opt.level_cap = a.cap.value_or(cfg.level_cap);
    opt.precision = cfg.precision;
    opt.precision_ceiling = cfg.precision_ceiling;
    const std::string key = std::to_string(a.p);

    std::optional<JpResult> result;
    if (const ResultCache* c = s.cache()) {
        if (auto entry = c->load(CacheKind::Jp, key)) {
            JpResult cached = jp_from_json(entry->payload);
            // Only Complete enumerations are stored; they do not depend on the options.
            if (cached.status == JpStatus::Complete && cached.prime == a.p) result = std::move(cached);
        }
    }
    if (!result) {
        result = jp_enumerate(a.p, opt);
        if (const ResultCache* c = s.cache(); c && result->status == JpStatus::Complete) {
            c->store(CacheKind::Jp, key, to_json(*result));
        }
    }

    Json doc = to_json(*result);
    if (result->status == JpStatus::Undetermined) {
        doc["diagnostics"] = "precision ceiling " + std::to_string(opt.precision_ceiling) + " reached for " +
                             std::to_string(result->undetermined.size()) + " candidate(s)";
    }
    if (fmt == "json") {
        print_json(out, doc);
    } else {
        out << "p=" << a.p << " status=" << to_string(result->status) << " members=" << result->members.size() << "\n";
        for (const auto& m : result->members) out << m.n.get_str() << " " << (m.exact ? "" : ">=") << m.valuation << "\n";
    }
    return result->status == JpStatus::Undetermined ? kExitUndetermined : kExitOk;
}

struct WolstenholmeArgs {
    std::optional<u64> p;
    std::vector<u64> range;
    bool resume = false;
    bool only_positive = false;
};

inline void print_wolstenholme(std::ostream& out, const WolstenholmeResult& r, const std::string& fmt) {
    if (fmt == "json") {
        print_json(out, to_json(r), true);
    } else {
        out << r.prime << " " << (r.is_wolstenholme ? "wolstenholme" : "-") << " nu(H(p-1))="
            << (r.valuation_exact ? "" : ">=") << r.h_p_minus_1_valuation << "\n";
    }
}

inline int cmd_wolstenholme(Session& s, const WolstenholmeArgs& a, std::ostream& out, std::ostream& err) {
    const auto& cfg = s.config();
    const std::string fmt = cfg.format_or("json");
    if (a.p.has_value() == !a.range.empty()) throw DomainError("give exactly one of --p or --range LO HI");
    if (a.p) {
        print_wolstenholme(out, wolstenholme_test(*a.p, s.table()), fmt);
        return kExitOk;
    }
    if (a.range.size() != 2 || a.range[0] > a.range[1]) throw DomainError("invalid range");
    const u64 lo = a.range[0];
    const u64 hi = a.range[1];
    const std::string key = std::to_string(lo) + "-" + std::to_string(hi);
    const ResultCache* cache = s.cache();

    ScanProgress resume;
    if (a.resume) {
        if (!cache) throw DomainError("--resume needs the cache");
        if (auto entry = cache->load(CacheKind::WolstenholmeScan, key)) {
            resume = scan_from_json(entry->payload);
            err << "resuming after p = " << resume.last_prime_done << " (" << resume.results.size() << " primes done)\n";
        }
    }
    ScanOptions opt;
    opt.workers = cfg.worker_count;
    if (cache) {
        opt.on_checkpoint = [&](const ScanProgress& p) { cache->store(CacheKind::WolstenholmeScan, key, to_json(p)); };
    }
    ScanProgress done = wolstenholme_scan(lo, hi, opt, std::move(resume), s.table());
    if (cache) cache->store(CacheKind::WolstenholmeScan, key, to_json(done));
    for (const auto& r : done.results) {
        if (!a.only_positive || r.is_wolstenholme) print_wolstenholme(out, r, fmt);
    }
    return kExitOk;
}

inline int cmd_tower(Session& s, u64 p, const std::string& n_text, long m_max, std::ostream& out) {
    const auto& cfg = s.config();
    TowerOptions opt{m_max, cfg.precision, cfg.precision_ceiling};
    PatternReport r = classify_tower(p, parse_integer(n_text), opt, s.table());
    if (cfg.format_or("json") == "json") {
        print_json(out, to_json(r));
    } else {
        out << to_string(r.classification.kind);
        if (!r.classification.boundary_convention.empty()) out << " (" << r.classification.boundary_convention << ")";
        out << ":";
        for (const auto& hv : r.tower) out << " " << (hv.exact ? "" : ">=") << hv.valuation.str();
        out << "\n";
        if (!r.diagnostics.empty()) out << r.diagnostics << "\n";
    }
    return r.classification.kind == TowerCase::Withheld ? kExitUndetermined : kExitOk;
}

inline int cmd_table(Session& s, u64 p, u64 rows, std::ostream& out) {
    const auto& cfg = s.config();
    ValuationTable t = table_generate(p, rows, cfg.exact_mode_bound);
    const std::string fmt = cfg.format_or("csv");
    if (fmt == "csv") out << to_csv(t);
    else if (fmt == "json") print_json(out, to_json(t));
    else out << to_text(t);
    return kExitOk;
}

inline int cmd_verify(Session& s, const std::string& suite, std::ostream& out) {
    std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    std::vector<SuiteReport> reports;
    for (const auto& name : names) reports.push_back(run_suite(name, {}, s.table()));
    bool ok = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.ok(); });
    if (s.config().format_or("text") == "json") {
        print_json(out, verify_document(reports));
    } else {
        for (const auto& r : reports) {
            out << r.name << ": " << r.passed << " passed, " << r.failed << " failed (" << r.seconds << " s)\n";
            for (const auto& f : r.failures) out << "  FAIL " << f << "\n";
        }
    }
    return ok ? kExitOk : kExitPropertyFailed;
}

// ---- argument parsing --------------------------------------------------------

/// Runs one command. `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"p-adic valuations of harmonic numbers", "harmpadic"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    RunConfig cfg;
    bool no_cache = false;
    bool json = false;
    app.add_option("--precision,-K", cfg.precision, "starting p-adic precision K")->envname("HARMPADIC_PRECISION");
    app.add_option("--ceiling", cfg.precision_ceiling, "largest precision tried before giving up")
        ->envname("HARMPADIC_CEILING");
    app.add_option("--level-cap", cfg.level_cap, "digit levels explored by the J_p search")
        ->envname("HARMPADIC_LEVEL_CAP");
    app.add_option("--bernoulli-cap", cfg.bernoulli_cap, "largest Bernoulli index computed exactly")
        ->envname("HARMPADIC_BERNOULLI_CAP");
    app.add_option("--exact-bound", cfg.exact_mode_bound, "largest n handled by exact rational arithmetic")
        ->envname("HARMPADIC_EXACT_BOUND");
    app.add_option("--workers", cfg.worker_count, "scan worker threads")->envname("HARMPADIC_WORKERS");
    app.add_option("--cache-dir", cfg.cache_dir, "result cache directory")->envname("HARMPADIC_CACHE_DIR");
    app.add_flag("--no-cache", no_cache, "neither read nor write the cache")->envname("HARMPADIC_NO_CACHE");
    app.add_option("--format", cfg.output_format, "json, csv or text")->envname("HARMPADIC_FORMAT");
    app.add_flag("--json", json, "shorthand for --format json")->envname("HARMPADIC_JSON");

    std::string n_text;
    u64 p = 0;

    auto* val = app.add_subcommand("valuation", "nu_p(H(n)) for n of any size");
    bool digits = false;
    val->add_option("--p", p, "prime")->required()->envname("HARMPADIC_P");
    val->add_option("--n", n_text, "non-negative decimal integer")->required()->envname("HARMPADIC_N");
    val->add_flag("--digits", digits, "also print the p-adic approximation")->envname("HARMPADIC_DIGITS");

    auto* jp = app.add_subcommand("jp", "members of J_p");
    JpArgs jp_args;
    long jp_cap = 0;
    jp->add_option("--p", jp_args.p, "prime")->required()->envname("HARMPADIC_P");
    jp->add_flag("--scan", jp_args.scan, "exact brute-force scan up to --bound")->envname("HARMPADIC_SCAN");
    jp->add_option("--bound", jp_args.bound, "scan bound")->envname("HARMPADIC_BOUND");
    auto* cap_opt = jp->add_option("--cap", jp_cap, "digit-level cap for the lifting search")->envname("HARMPADIC_CAP");

    auto* wol = app.add_subcommand("wolstenholme", "Wolstenholme prime test or range scan");
    WolstenholmeArgs w_args;
    u64 w_p = 0;
    auto* w_p_opt = wol->add_option("--p", w_p, "single prime")->envname("HARMPADIC_P");
    wol->add_option("--range", w_args.range, "LO HI")->expected(2)->delimiter(',')->envname("HARMPADIC_RANGE");
    wol->add_flag("--resume", w_args.resume, "continue from the cached checkpoint")->envname("HARMPADIC_RESUME");
    wol->add_flag("--only-positive", w_args.only_positive, "print Wolstenholme primes only")
        ->envname("HARMPADIC_ONLY_POSITIVE");

    auto* tower = app.add_subcommand("tower", "classify nu_p(H(p^m n)) for m = 0..mmax");
    long m_max = 6;
    tower->add_option("--p", p, "prime >= 5")->required()->envname("HARMPADIC_P");
    tower->add_option("--n", n_text, "base, coprime to p")->required()->envname("HARMPADIC_N");
    tower->add_option("--mmax", m_max, "highest level")->envname("HARMPADIC_MMAX");

    auto* table = app.add_subcommand("table", "nu_p(H(pm + k)) for rows m and columns k");
    u64 rows = 0;
    table->add_option("--p", p, "prime")->required()->envname("HARMPADIC_P");
    table->add_option("--rows", rows, "number of rows m = 0..rows-1")->required()->envname("HARMPADIC_ROWS");

    auto* verify = app.add_subcommand("verify", "run a property suite");
    std::string suite = "all";
    verify->add_option("--suite", suite, "lemmas, kummer, vonstaudt, formula1, oracle or all")
        ->envname("HARMPADIC_SUITE");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (json) cfg.output_format = "json";
        cfg.use_cache = !no_cache;
        Session session(cfg);
        if (*val) return cmd_valuation(session, n_text, p, digits, out);
        if (*jp) {
            if (*cap_opt) jp_args.cap = jp_cap;
            return cmd_jp(session, jp_args, out);
        }
        if (*wol) {
            if (*w_p_opt) w_args.p = w_p;
            return cmd_wolstenholme(session, w_args, out, err);
        }
        if (*tower) return cmd_tower(session, p, n_text, m_max, out);
        if (*table) return cmd_table(session, p, rows, out);
        if (*verify) return cmd_verify(session, suite, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const PrecisionExhausted& e) {
        err << "undetermined: " << e.what() << "\n";
        return kExitUndetermined;
    } catch (const NotCertified& e) {
        err << "undetermined: " << e.what() << "\n";
        return kExitUndetermined;
    }
    return kExitUsage;
}

} // namespace harmpadic
