#include "CLI11.hpp"
#include "json.hpp"

#include "landau/assemble.hpp"
#include "landau/errors.hpp"
#include "landau/oracle.hpp"

#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>

using namespace landau;
using nlohmann::json;

namespace {

enum class Format { factored, digits, log, json };

const std::map<std::string, Format> kFormats = {
    {"factored", Format::factored}, {"digits", Format::digits}, {"log", Format::log}, {"json", Format::json}};

std::string log10_string(const Real& log_value) { return to_string(log_value / log(Real(10)), precision_digits()); }

json result_json(const LandauResult& r) {
    json j;
    j["n"] = r.n;
    if (r.context) {
        j["rho"] = to_string(r.context->rho.value, precision_digits());
        j["ellN"] = r.context->ellN;
        j["N_brackets"] = r.context->N_brackets();
    } else {
        j["rho"] = nullptr;
        j["ellN"] = 0;
        j["N_brackets"] = "1";
    }
    j["correction_num"] = r.correction.numerator_value().get_str();
    j["correction_den"] = r.correction.denominator_value().get_str();
    j["ell_g"] = r.ell_g;
    j["log10_g"] = log10_string(r.log_g);
    return j;
}

void print_result(const LandauResult& r, Format format, std::size_t digit_budget) {
    switch (format) {
    case Format::factored:
        std::cout << "n = " << r.n << '\n';
        if (r.context) {
            std::cout << "N = " << r.context->N_brackets() << '\n';
            std::cout << "ell(N) = " << r.context->ellN << '\n';
            std::cout << "g(n) = " << (r.correction.is_one() ? "N" : render(r.correction) + " * N") << '\n';
        } else {
            std::cout << "g(n) = " << render(r.correction) << '\n';
        }
        std::cout << "ell(g(n)) = " << r.ell_g << '\n';
        std::cout << "log10 g(n) = " << log10_string(r.log_g) << '\n';
        break;
    case Format::digits:
        std::cout << to_decimal(r.value(), digit_budget) << '\n';
        break;
    case Format::log:
        std::cout << log10_string(r.log_g) << '\n';
        break;
    case Format::json:
        std::cout << result_json(r).dump() << '\n';
        break;
    }
}

void print_row(std::uint64_t n, const PrimeFraction& g, Format format, std::size_t digit_budget) {
    switch (format) {
    case Format::factored:
        std::cout << n << ' ' << render(g) << '\n';
        break;
    case Format::digits:
        std::cout << n << ' ' << to_decimal(g, digit_budget) << '\n';
        break;
    case Format::log:
        std::cout << n << ' ' << log10_string(g.log()) << '\n';
        break;
    case Format::json:
        std::cout << json{{"n", n}, {"g", render(g)}, {"ell", g.ell()}, {"log10_g", log10_string(g.log())}}.dump()
                  << '\n';
        break;
    }
}

std::string fraction_text(const GFraction& f) {
    auto join = [](const std::vector<std::uint64_t>& v) {
        std::string s;
        for (auto p : v) s += (s.empty() ? "" : " * ") + std::to_string(p);
        return s.empty() ? std::string("1") : s;
    };
    if (f.Qs.empty()) return "1";
    return join(f.Qs) + " / " + join(f.qs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landau's function g(n): the largest order of a permutation of n elements"};
    app.require_subcommand(1);

    Config config;
    std::string cache_dir;
    std::optional<std::uint64_t> sieve_limit;
    app.add_option("--precision", config.precision_digits, "Working precision in decimal digits")
        ->check(CLI::Range(20, 34));
    app.add_option("--cache-dir", cache_dir, "Directory for the prime, E2 and delta1 caches")
        ->envname("LANDAU_CACHE_DIR");
    app.add_option("--sieve-limit", sieve_limit, "Sieve up to this bound instead of the automatic one");
    app.add_option("--digit-budget", config.digit_budget, "Largest decimal expansion to print")
        ->check(CLI::Range(std::size_t{1000}, std::numeric_limits<std::size_t>::max()));

    std::optional<Format> format;
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "factored, digits, log or json")
            ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    };

    std::uint64_t n = 0;
    auto* compute = app.add_subcommand("compute", "Compute g(n)");
    compute->add_option("n", n, "Argument of g")->required();
    add_format(compute);

    std::uint64_t a = 0, b = 0;
    auto* table = app.add_subcommand("table", "g(n) for a <= n <= b from the list algorithm");
    table->add_option("a", a)->required();
    table->add_option("b", b)->required()->check(CLI::Range(std::uint64_t{0}, std::uint64_t{1'000'000}));
    add_format(table);

    std::uint64_t max_n = 100000;
    auto* verify = app.add_subcommand("verify", "Compare compute against the list algorithm for 7 <= n <= max_n");
    verify->add_option("max_n", max_n)->check(CLI::Range(std::uint64_t{7}, std::uint64_t{1'000'000}));

    std::uint64_t p_k = 0, m = 0;
    auto* gfun = app.add_subcommand("gfun", "G(p_k, m)");
    gfun->add_option("p_k", p_k, "An odd prime")->required();
    gfun->add_option("m", m)->required();

    auto* champion = app.add_subcommand("superchampion", "The superchampion N attached to n");
    champion->add_option("n", n)->required()->check(CLI::Range(std::uint64_t{7}, std::uint64_t{1'000'000'000'000'000'000ULL}));
    bool champion_json = false;
    champion->add_flag("--json", champion_json);

    double budget_ratio = 0;
    auto* prefixes = app.add_subcommand("prefixes", "Dump the plain prefixes D(B) as 'delta ben dell'");
    prefixes->add_option("n", n)->required()->check(CLI::Range(std::uint64_t{7}, std::uint64_t{1'000'000'000'000'000'000ULL}));
    prefixes->add_option("--budget", budget_ratio, "Use D(B') with B' = budget * rho instead of D(B)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (!cache_dir.empty()) {
        config.cache_dir = cache_dir;
        std::filesystem::create_directories(config.cache_dir);
    }
    config.sieve_limit_override = sieve_limit;

    try {
        Engine engine(config);

        if (*compute) {
            if (n > 1'000'000'000'000'000ULL)
                std::cerr << "warning: n above 10^15, the existence of delta1 is not known there\n";
            print_result(engine.compute_g(n), format.value_or(Format::factored), config.digit_budget);
            return 0;
        }

        if (*table) {
            if (a > b) throw std::invalid_argument("empty range");
            auto list = g_list_merge_prune(b);
            for (std::uint64_t i = a; i <= b; ++i) print_row(i, list.query(i), format.value_or(Format::digits), config.digit_budget);
            return 0;
        }

        if (*verify) {
            auto list = g_list_merge_prune(max_n);
            engine.prepare(max_n);
            std::uint64_t ok = 0, total = 0, mismatches = 0, failures = 0;
            for (std::uint64_t i = 7; i <= max_n; ++i) {
                ++total;
                PrimeFraction want = list.query(i);
                try {
                    auto r = engine.compute_g(i);
                    if (r.value() == want) {
                        ++ok;
                        continue;
                    }
                    ++mismatches;
                    std::cout << "mismatch n=" << i << " compute=" << render(r.value()) << " list=" << render(want)
                              << '\n';
                } catch (const Error& e) {
                    ++failures;
                    std::cout << "failure n=" << i << " (exit " << e.exit_code() << "): " << e.what() << '\n';
                }
            }
            std::cout << ok << '/' << total << " OK";
            if (mismatches) std::cout << ", " << mismatches << " mismatches";
            if (failures) std::cout << ", " << failures << " failures";
            std::cout << '\n';
            if (mismatches) return 1;
            return failures ? 2 : 0;
        }

        if (*gfun) {
            std::uint64_t limit = config.sieve_limit_override.value_or(p_k + std::max<std::uint64_t>(m, 20000) + 1'000'000);
            auto primes = config.cache_dir.empty() ? PrimeTable::build(limit)
                                                   : PrimeTable::build_cached(limit, config.cache_dir / "primes.bin");
            Delta1Table delta1(primes, config.cache_dir.empty() ? std::filesystem::path{} : config.cache_dir / "delta1.txt");
            auto r = g_function(primes, delta1, p_k, m);
            delta1.save();
            std::cout << "G(" << p_k << ", " << m << ") = " << fraction_text(r.fraction) << '\n';
            std::cout << "cost = " << r.fraction.cost << '\n';
            std::cout << "algorithm = " << r.algorithm << '\n';
            return 0;
        }

        if (*champion) {
            auto ctx = engine.context(n);
            if (champion_json) {
                json j{{"n", n},
                       {"rho", to_string(ctx.rho.value, precision_digits())},
                       {"rho_q", ctx.rho.q},
                       {"rho_j", ctx.rho.j},
                       {"N_brackets", ctx.N_brackets()},
                       {"ellN", ctx.ellN},
                       {"ell_next", ctx.N_plus_ell},
                       {"p_k", ctx.p_k},
                       {"p_k1", ctx.p_k1},
                       {"x1", to_string(ctx.x1, precision_digits())},
                       {"B1", to_string(ctx.B1, precision_digits())}};
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "N = " << ctx.N_brackets() << '\n';
                std::cout << "ell(N) = " << ctx.ellN << ", next superchampion at " << ctx.N_plus_ell << '\n';
                std::cout << "rho = " << to_string(ctx.rho.value, precision_digits()) << " from " << ctx.rho.q;
                if (ctx.rho.j > 1) std::cout << '^' << ctx.rho.j;
                std::cout << '\n';
                std::cout << "p_k = " << ctx.p_k << ", p_k+1 = " << ctx.p_k1 << '\n';
                std::cout << "x1 = " << to_string(ctx.x1, precision_digits()) << '\n';
                std::cout << "B1 = " << to_string(ctx.B1, precision_digits()) << '\n';
            }
            return 0;
        }

        if (*prefixes) {
            auto ctx = engine.context(n);
            std::vector<PrefixCandidate> D;
            if (budget_ratio > 0) {
                D = build_prefix_sets(ctx, ctx.rho.value * Real(budget_ratio));
            } else {
                auto loop = bound_loop(ctx);
                std::cerr << "B = " << to_string(loop.bound.B, 20) << " (" << to_string(loop.bound.B / ctx.rho.value, 6)
                          << " rho), |D(B)| = " << loop.prefixes.size() << '\n';
                D = std::move(loop.prefixes);
            }
            for (const auto& d : D) std::cout << render(d.delta) << ' ' << to_string(d.ben, 20) << ' ' << d.dell << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
