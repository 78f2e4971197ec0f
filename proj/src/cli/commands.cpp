#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"

#include "clab/characters.hpp"
#include "clab/congruence.hpp"
#include "clab/exppair.hpp"
#include "clab/identities.hpp"
#include "clab/io.hpp"
#include "clab/variance.hpp"

namespace clab::cli {

namespace {

using io::json;

/// Raised during validation; always maps to exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by a check subcommand whose identity fails; maps to exit 1.
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Job = std::function<void(std::ostream&)>;

template <class T>
const T& require(const std::optional<T>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing required option ") + flag);
    return *v;
}

Format resolve_format(const RunConfig& cfg, Format fallback) {
    if (!cfg.format) return fallback;
    if (*cfg.format == "csv") return Format::Csv;
    if (*cfg.format == "json") return Format::Json;
    throw UsageError("--format must be csv or json, got '" + *cfg.format + "'");
}

unsigned resolve_cli_threads(const RunConfig& cfg) {
    if (const char* env = std::getenv("CONGRUENCE_LAB_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end != '\0' || v == 0 || v > 4096) {
            throw UsageError(std::string("CONGRUENCE_LAB_THREADS must be a positive integer, got '") + env + "'");
        }
        return static_cast<unsigned>(v);
    }
    if (cfg.threads) {
        if (*cfg.threads == 0) throw UsageError("--threads must be positive");
        return *cfg.threads;
    }
    return 0;
}

PrimePower modulus(const RunConfig& cfg) {
    const auto p = require(cfg.p, "--p");
    if (cfg.m == 0) throw UsageError("--m must be >= 1");
    return PrimePower::make(p, cfg.m);
}

ExperimentConfig experiment(const RunConfig& cfg) {
    const auto pp = modulus(cfg);
    const double N = require(cfg.N, "--N");
    if (!std::isfinite(N) || N < 0.0) throw UsageError("--N must be a finite non-negative number");
    if (!(cfg.epsilon >= 0.0)) throw UsageError("--epsilon must be >= 0");
    return ExperimentConfig::make(pp, require(cfg.alpha2, "--alpha2"), N, cfg.epsilon);
}

void require_histogram_size(const ExperimentConfig& e) {
    if (e.pp.q() >= (u64{1} << 31)) throw UsageError("q must be below 2^31 for histogram subcommands");
}

void require_cap(const ExperimentConfig& e, const RunConfig& cfg) {
    if (e.pp.q() > cfg.q_cap) {
        throw UsageError("q=" + std::to_string(e.pp.q()) + " exceeds --q-cap " + std::to_string(cfg.q_cap));
    }
}

HistogramRoute parse_route(const std::string& name) {
    if (name == "auto") return HistogramRoute::Auto;
    if (name == "sweep") return HistogramRoute::Sweep;
    if (name == "convolution") return HistogramRoute::Convolution;
    throw UsageError("--route must be auto, sweep or convolution, got '" + name + "'");
}

ThresholdMode parse_mode(const std::string& name) {
    if (name == "unconditional") return ThresholdMode::Unconditional;
    if (name == "fixed-prime") return ThresholdMode::FixedPrime;
    if (name == "lindelof") return ThresholdMode::Lindelof;
    throw UsageError("--mode must be unconditional, fixed-prime or lindelof, got '" + name + "'");
}

const char* mode_name(ThresholdMode mode) {
    switch (mode) {
        case ThresholdMode::Unconditional: return "unconditional";
        case ThresholdMode::FixedPrime: return "fixed-prime";
        case ThresholdMode::Lindelof: return "lindelof";
    }
    return "unknown";
}

ExponentPair parse_pair(const RunConfig& cfg) {
    ExponentPair pair{BigRational::parse(cfg.k), BigRational::parse(cfg.l), {}};
    if (!in_exponent_region(pair.k, pair.l)) {
        throw UsageError("(k, l) = (" + cfg.k + ", " + cfg.l + ") lies outside 0 <= k <= 1/2 <= l <= 1");
    }
    return pair;
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---- subcommands -----------------------------------------------------------

Job cmd_count(const RunConfig& cfg) {
    const auto e = experiment(cfg);
    const auto alpha3 = require(cfg.alpha3, "--alpha3");
    const auto format = cfg.format ? resolve_format(cfg, Format::Csv) : Format::Csv;
    return [e, alpha3, format](std::ostream& out) {
        const u64 count = count_solutions(e, alpha3);
        if (format == Format::Json) {
            emit_json(out, {{"config", io::config_json(e)}, {"alpha3", alpha3}, {"count", count}});
        } else {
            out << count << '\n';
        }
    };
}

Job cmd_histogram(const RunConfig& cfg) {
    const auto e = experiment(cfg);
    require_histogram_size(e);
    const auto format = resolve_format(cfg, Format::Csv);
    const SweepOptions options{resolve_cli_threads(cfg), parse_route(cfg.route), nullptr};
    return [e, format, options](std::ostream& out) {
        const auto histogram = solution_histogram(e, options);
        if (format == Format::Json) {
            emit_json(out, {{"config", io::config_json(e)}, {"histogram", io::to_json(histogram)}});
        } else {
            io::write_histogram_csv(out, histogram);
        }
    };
}

Job cmd_main_term(const RunConfig& cfg) {
    const auto e = experiment(cfg);
    const auto format = resolve_format(cfg, Format::Json);
    return [e, format](std::ostream& out) {
        const auto report = main_term(e);
        if (format == Format::Json) {
            emit_json(out, {{"config", io::config_json(e)}, {"main_term", io::to_json(report)}});
            return;
        }
        out << "key,value\n";
        const json body = io::to_json(report);
        for (const auto& [key, value] : body.items()) {
            out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
    };
}

Job cmd_exceptional(const RunConfig& cfg) {
    const auto e = experiment(cfg);
    require_histogram_size(e);
    const double delta = require(cfg.delta, "--delta");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw UsageError("--delta must be positive");
    if (e.N < 1.0) throw UsageError("--N must be >= 1 for the exceptional set");
    if (cfg.sample && (*cfg.sample == 0 || *cfg.sample > e.pp.phi())) {
        throw UsageError("--sample must lie in [1, phi(q)]");
    }
    const auto format = resolve_format(cfg, Format::Json);
    const SweepOptions options{resolve_cli_threads(cfg), parse_route(cfg.route), nullptr};
    const auto sample = cfg.sample;
    const auto seed = cfg.seed;
    return [e, delta, format, options, sample, seed](std::ostream& out) {
        const auto histogram = solution_histogram(e, options);
        const auto report = exceptional_set(e, delta, histogram);
        json body = io::to_json(report);
        body["delta"] = delta;
        if (sample) {
            // Sampling only thins what is reported; the statistics above cover every alpha3.
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<u64> pick(1, e.pp.q() - 1);
            std::set<u64> chosen;
            while (chosen.size() < *sample) {
                const u64 a = pick(rng);
                if (a % e.pp.p() != 0) chosen.insert(a);
            }
            json rows = json::array();
            for (const u64 a : chosen) {
                const double s = static_cast<double>(histogram.counts[a]);
                const double rel = std::abs(s / report.predicted - 1.0);
                rows.push_back({{"alpha3", a}, {"S", histogram.counts[a]}, {"rel_error", rel}, {"exceptional", rel > delta}});
            }
            body.erase("indices");
            body["sample_seed"] = seed;
            body["sample"] = rows;
        }
        if (format == Format::Json) {
            emit_json(out, {{"config", io::config_json(e)}, {"exceptional", body}});
            return;
        }
        out << "alpha3,S,rel_error\n";
        for (const u64 a : report.indices) {
            const double s = static_cast<double>(histogram.counts[a]);
            out << a << ',' << histogram.counts[a] << ',' << json(std::abs(s / report.predicted - 1.0)).dump() << '\n';
        }
    };
}

Job cmd_variance_check(const RunConfig& cfg) {
    const auto e = experiment(cfg);
    require_cap(e, cfg);
    const SweepOptions options{resolve_cli_threads(cfg), HistogramRoute::Auto, nullptr};
    return [e, options](std::ostream& out) {
        const auto report = variance_decomposition_check(e, options);
        emit_json(out, {{"config", io::config_json(e)}, {"variance", io::to_json(report)}});
        if (!report.passed()) {
            std::string routes;
            for (const auto& r : report.diverged_routes()) routes += (routes.empty() ? "" : ", ") + r;
            throw CheckFailure("variance routes diverged from V_def: " + routes);
        }
    };
}

Job cmd_quadruple_check(const RunConfig& cfg) {
    const auto e = experiment(cfg);
    require_cap(e, cfg);
    return [e](std::ostream& out) {
        const auto count = quadruple_count_identity(e);
        emit_json(out, {{"config", io::config_json(e)}, {"quadruple", io::to_json(count)}});
        if (count.lhs != count.rhs) {
            throw CheckFailure("quadruple-count identity failed: lhs=" + count.lhs.get_str() +
                               " rhs=" + count.rhs.get_str());
        }
    };
}

Job cmd_gauss_check(const RunConfig& cfg) {
    const auto p_max = require(cfg.p_max, "--p-max");
    if (p_max > 500) throw UsageError("--p-max must be <= 500");
    const u64 twisted_max = std::min<u64>(p_max, cfg.twisted_p_max);
    if (cfg.twisted_p_max > 500) throw UsageError("--twisted-p-max must be <= 500");
    return [p_max, twisted_max](std::ostream& out) {
        const auto line = [&out](const char* suite, u64 limit, const IdentityStats& s) {
            out << suite << ": p<=" << limit << " primes=" << s.primes << " cases=" << s.cases
                << " worst_scaled_error=" << json(s.worst_scaled_error).dump() << '\n';
        };
        IdentityStats stats;
        if (auto f = check_gauss_sums(p_max, &stats)) throw CheckFailure(f->describe());
        line("gauss", p_max, stats);
        if (auto f = check_tau(p_max, &stats)) throw CheckFailure(f->describe());
        line("tau", p_max, stats);
        if (auto f = check_twisted_double_sum(twisted_max, &stats)) throw CheckFailure(f->describe());
        line("twisted", twisted_max, stats);
    };
}

void print_pair_line(std::ostream& out, const ExponentPair& pair) {
    const auto f = objective_f(pair);
    out << format_pair(pair) << " f=" << f.str() << '\n';
    out << "decimal " << pair.k.decimal(15) << ',' << pair.l.decimal(15) << " f=" << f.decimal(15) << '\n';
}

Job cmd_exppair_apply(const RunConfig& cfg) {
    std::string letters;
    try {
        letters = parse_word(cfg.word);
    } catch (const WordSyntaxError& ex) {
        throw UsageError(ex.what());
    }
    const auto format = resolve_format(cfg, Format::Csv);
    return [letters, format](std::ostream& out) {
        const auto pair = apply_word(letters, trivial_pair());
        if (format == Format::Json) {
            emit_json(out, {{"pair", io::to_json(pair)}, {"f", objective_f(pair).fraction()}});
        } else {
            print_pair_line(out, pair);
        }
    };
}

Job cmd_exppair_search(const RunConfig& cfg) {
    if (cfg.budget == 0) throw UsageError("--budget must be positive");
    const auto format = resolve_format(cfg, Format::Csv);
    const auto budget = cfg.budget;
    return [budget, format](std::ostream& out) {
        const auto result = search_min_f(budget);
        if (format == Format::Json) {
            emit_json(out, io::to_json(result));
            return;
        }
        out << "word " << (result.best_pair.word.empty() ? "(empty)" : compress_word(result.best_pair.word)) << '\n';
        print_pair_line(out, result.best_pair);
        out << "nodes_expanded " << result.nodes_expanded << '\n';
        out << "frontier_bound " << result.frontier_bound.decimal(15) << '\n';
    };
}

Job cmd_exppair_bracket(const RunConfig& cfg) {
    const auto format = resolve_format(cfg, Format::Csv);
    return [format](std::ostream& out) {
        using R = BigRational::Rounding;
        const auto b = remark_bracket();
        const auto lo = b.f_lower.decimal(12, R::Floor);
        const auto hi = b.f_upper.decimal(12, R::Ceil);
        if (format == Format::Json) {
            emit_json(out, {{"word", compress_word(bracket_word())},
                            {"lower", {{"pair", io::to_json(b.lower_pair)}, {"f", b.f_lower.fraction()},
                                       {"f_outward", lo}, {"f_nearest", b.f_lower.decimal(12)}}},
                            {"upper", {{"pair", io::to_json(b.upper_pair)}, {"f", b.f_upper.fraction()},
                                       {"f_outward", hi}, {"f_nearest", b.f_upper.decimal(12)}}}});
            return;
        }
        out << lo << " / " << hi << '\n';
        out << "word " << compress_word(bracket_word()) << '\n';
        out << "lower seed 0,1/2 f=" << b.f_lower.decimal(20) << '\n';
        out << "upper seed 0,1 f=" << b.f_upper.decimal(20) << '\n';
    };
}

Job cmd_thresholds(const RunConfig& cfg) {
    const auto pp = modulus(cfg);
    if (!(cfg.epsilon >= 0.0) || !std::isfinite(cfg.epsilon)) throw UsageError("--epsilon must be >= 0");
    std::vector<ThresholdMode> modes{ThresholdMode::Unconditional, ThresholdMode::FixedPrime, ThresholdMode::Lindelof};
    if (cfg.mode) {
        modes = {parse_mode(*cfg.mode)};
        n_threshold(pp, cfg.epsilon, modes.front());  // an explicitly requested empty window is a usage error
    }
    std::optional<ExponentPair> pair;
    if (cfg.Delta) {
        if (!(*cfg.Delta > 0.0 && *cfg.Delta <= 1.0)) throw UsageError("--Delta must lie in (0, 1]");
        pair = parse_pair(cfg);
    }
    const double epsilon = cfg.epsilon;
    const auto Delta = cfg.Delta;
    return [pp, modes, epsilon, pair, Delta](std::ostream& out) {
        json windows = json::array();
        for (const auto mode : modes) {
            json row{{"mode", mode_name(mode)},
                     {"exponent", threshold_exponent(mode).fraction()},
                     {"lower_exponent", threshold_exponent(mode).to_double() + epsilon}};
            try {
                const auto w = n_threshold(pp, epsilon, mode);
                row["N_min"] = w.N_min;
                row["N_max"] = w.N_max;
                row["empty"] = false;
            } catch (const std::domain_error&) {
                row["N_min"] = nullptr;
                row["N_max"] = nullptr;
                row["empty"] = true;
            }
            windows.push_back(row);
        }
        json body{{"q", pp.q()}, {"epsilon", epsilon}, {"upper_exponent", "7/12"}, {"windows", windows}};
        if (pair) {
            const double mu = mu_threshold(*pair, *Delta, static_cast<double>(pp.q()));
            body["mu"] = {{"k", pair->k.fraction()}, {"l", pair->l.fraction()}, {"Delta", *Delta},
                          {"value", std::isinf(mu) ? json("inf") : json(mu)}};
        }
        emit_json(out, body);
    };
}

Job cmd_bound_ratios(const RunConfig& cfg) {
    const auto pp = modulus(cfg);
    const double N = require(cfg.N, "--N");
    if (!(N >= 1.0) || !std::isfinite(N)) throw UsageError("--N must be >= 1");
    if (pp.q() >= (u64{1} << 31)) throw UsageError("q must be below 2^31 for bound-ratios");
    const auto pair = parse_pair(cfg);
    const auto format = resolve_format(cfg, Format::Csv);
    const auto n = static_cast<u64>(std::floor(N));
    return [pp, n, pair, format](std::ostream& out) {
        const auto report = bound_ratio_report(pp, n, pair);
        if (format == Format::Json) {
            emit_json(out, io::to_json(report));
        } else {
            io::write_bound_ratios_csv(out, report);
        }
    };
}

Job cmd_padic_count(const RunConfig& cfg) {
    const auto p = require(cfg.p, "--p");
    if (!is_odd_prime(p)) throw UsageError("--p must be an odd prime");
    const auto gamma = BigRational::parse(require(cfg.gamma, "--gamma"));
    if (gamma.sign() <= 0) throw UsageError("--gamma must be positive");
    const double Nd = require(cfg.N, "--N");
    if (!(Nd >= 0.0) || !std::isfinite(Nd) || Nd != std::floor(Nd)) throw UsageError("--N must be a non-negative integer");
    const auto N = static_cast<u64>(Nd);
    const auto alpha2 = require(cfg.alpha2, "--alpha2");
    const auto alpha3 = require(cfg.alpha3, "--alpha3");
    if (reduce(alpha2, p) == 0 || reduce(alpha3, p) == 0) throw UsageError("alpha2 and alpha3 must be coprime to p");
    const unsigned m = padic_modulus_exponent(p, gamma, N);
    if (m > 0) PrimePower::make(p, m);  // the reduced modulus must fit
    const auto format = resolve_format(cfg, Format::Csv);
    return [p, gamma, N, alpha2, alpha3, m, format](std::ostream& out) {
        const u64 count = padic_small_value_count(p, gamma, N, alpha2, alpha3);
        if (format == Format::Json) {
            emit_json(out, {{"p", p}, {"gamma", gamma.fraction()}, {"N", N}, {"alpha2", alpha2},
                            {"alpha3", alpha3}, {"modulus_exponent", m}, {"count", count}});
        } else {
            out << count << '\n';
        }
    };
}

// ---- option wiring -----------------------------------------------------------

void add_modulus(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--p", cfg.p, "odd prime p");
    sub->add_option("--m", cfg.m, "exponent m of q = p^m")->capture_default_str();
}

void add_experiment(CLI::App* sub, RunConfig& cfg) {
    add_modulus(sub, cfg);
    sub->add_option("--alpha2", cfg.alpha2, "coefficient alpha2, coprime to p");
    sub->add_option("--N", cfg.N, "box half-width");
    sub->add_option("--epsilon", cfg.epsilon, "window slack epsilon")->capture_default_str();
}

void add_output(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--output", cfg.output_path, "write the report to this file instead of stdout");
    sub->add_option("--format", cfg.format, "csv or json");
}

void add_threads(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--threads", cfg.threads, "worker threads (CONGRUENCE_LAB_THREADS overrides)");
    sub->add_option("--route", cfg.route, "histogram route: auto, sweep or convolution")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Small solutions of diagonal quadratic congruences modulo prime powers", "congruence_lab"};
    app.require_subcommand(1, 1);

    std::vector<std::pair<CLI::App*, std::function<Job(const RunConfig&)>>> commands;
    const auto command = [&](CLI::App* parent, const std::string& name, const std::string& help,
                             std::function<Job(const RunConfig&)> factory) {
        CLI::App* sub = parent->add_subcommand(name, help);
        commands.emplace_back(sub, std::move(factory));
        add_output(sub, cfg);
        return sub;
    };

    auto* count = command(&app, "count", "S(alpha3) by direct enumeration", cmd_count);
    add_experiment(count, cfg);
    count->add_option("--alpha3", cfg.alpha3, "coefficient alpha3");

    auto* histogram = command(&app, "histogram", "S(alpha3) for every residue alpha3", cmd_histogram);
    add_experiment(histogram, cfg);
    add_threads(histogram, cfg);

    auto* main = command(&app, "main-term", "main term with its ingredients", cmd_main_term);
    add_experiment(main, cfg);

    auto* exceptional = command(&app, "exceptional", "coprime alpha3 far from the main term", cmd_exceptional);
    add_experiment(exceptional, cfg);
    add_threads(exceptional, cfg);
    exceptional->add_option("--delta", cfg.delta, "relative deviation threshold");
    exceptional->add_option("--sample", cfg.sample, "report only K random coprime alpha3");
    exceptional->add_option("--seed", cfg.seed, "seed for --sample")->capture_default_str();

    auto* variance = command(&app, "variance-check", "three-route variance agreement", cmd_variance_check);
    add_experiment(variance, cfg);
    variance->add_option("--threads", cfg.threads, "worker threads (CONGRUENCE_LAB_THREADS overrides)");
    variance->add_option("--q-cap", cfg.q_cap, "largest q accepted")->capture_default_str();

    auto* quadruple = command(&app, "quadruple-check", "character vs counting form of the fourth moment",
                              cmd_quadruple_check);
    add_experiment(quadruple, cfg);
    quadruple->add_option("--q-cap", cfg.q_cap, "largest q accepted")->capture_default_str();

    auto* gauss = command(&app, "gauss-check", "Gauss-sum identity suites for all odd primes up to a bound",
                          cmd_gauss_check);
    gauss->add_option("--p-max", cfg.p_max, "largest prime tested (<= 500)");
    gauss->add_option("--twisted-p-max", cfg.twisted_p_max, "largest prime for the twisted double sum suite")
        ->capture_default_str();

    CLI::App* exppair = app.add_subcommand("exppair", "exponent-pair calculus");
    exppair->require_subcommand(1, 1);
    auto* apply = command(exppair, "apply", "apply a word of A and B to (0, 1)", cmd_exppair_apply);
    apply->add_option("--word", cfg.word, "word such as ABA2B, rightmost letter first");
    auto* search = command(exppair, "search", "branch and bound for the smallest f", cmd_exppair_search);
    search->add_option("--budget", cfg.budget, "node budget")->capture_default_str();
    command(exppair, "bracket", "the two-seed bracket of the minimal f", cmd_exppair_bracket);

    auto* thresholds = command(&app, "thresholds", "admissible N window per mode", cmd_thresholds);
    add_modulus(thresholds, cfg);
    thresholds->add_option("--epsilon", cfg.epsilon, "window slack epsilon")->capture_default_str();
    thresholds->add_option("--mode", cfg.mode, "unconditional, fixed-prime or lindelof");
    thresholds->add_option("--Delta", cfg.Delta, "also report mu_{k,l}(Delta, q)");
    thresholds->add_option("--k", cfg.k, "exponent pair k for --Delta")->capture_default_str();
    thresholds->add_option("--l", cfg.l, "exponent pair l for --Delta")->capture_default_str();

    auto* bounds = command(&app, "bound-ratios", "character-sum maximum against reference bounds", cmd_bound_ratios);
    add_modulus(bounds, cfg);
    bounds->add_option("--N", cfg.N, "sum length");
    bounds->add_option("--k", cfg.k, "exponent pair k")->capture_default_str();
    bounds->add_option("--l", cfg.l, "exponent pair l")->capture_default_str();

    auto* padic = command(&app, "padic-count", "triples with |Q(x)|_p <= N^-gamma", cmd_padic_count);
    padic->add_option("--p", cfg.p, "odd prime p");
    padic->add_option("--gamma", cfg.gamma, "exponent gamma, e.g. 1/2 or 0.5");
    padic->add_option("--N", cfg.N, "box half-width (integer)");
    padic->add_option("--alpha2", cfg.alpha2, "coefficient alpha2");
    padic->add_option("--alpha3", cfg.alpha3, "coefficient alpha3");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return static_cast<int>(ExitCode::Pass);
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return static_cast<int>(ExitCode::Pass);
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return static_cast<int>(ExitCode::Usage);
    }

    const auto chosen = std::find_if(commands.begin(), commands.end(), [](const auto& c) { return c.first->parsed(); });
    if (chosen == commands.end()) {
        err << "error: a subcommand is required\n";
        return static_cast<int>(ExitCode::Usage);
    }

    Job job;
    try {
        job = chosen->second(cfg);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return static_cast<int>(ExitCode::Usage);
    }

    std::ofstream file;
    if (cfg.output_path) {
        file.open(*cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open " << *cfg.output_path << " for writing\n";
            return static_cast<int>(ExitCode::Usage);
        }
    }
    std::ostream& sink = cfg.output_path ? static_cast<std::ostream&>(file) : out;

    try {
        job(sink);
    } catch (const CheckFailure& ex) {
        sink.flush();
        err << "check failed: " << ex.what() << '\n';
        return static_cast<int>(ExitCode::CheckFailed);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return static_cast<int>(ExitCode::CheckFailed);
    }
    sink.flush();
    if (!sink) {
        err << "error: failed writing output\n";
        return static_cast<int>(ExitCode::CheckFailed);
    }
    return static_cast<int>(ExitCode::Pass);
}

}  // namespace clab::cli
