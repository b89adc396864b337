#include "ilsvm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ilsvm/dataset.hpp"
#include "ilsvm/errors.hpp"
#include "ilsvm/report.hpp"
#include "ilsvm/tuner.hpp"

namespace ilsvm::cli {

const char* to_string(Subcommand s) {
    switch (s) {
        case Subcommand::tune: return "tune";
        case Subcommand::grid: return "grid";
        case Subcommand::eval: return "eval";
    }
    return "?";
}

const char* to_string(Format f) { return f == Format::csv ? "csv" : "libsvm"; }

CliArgs parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Iterated local search tuner for RBF-kernel SVM hyperparameters (C, gamma)", "ilsvm"};
    app.require_subcommand(1);

    struct Raw {
        std::string data;
        std::string format;
        std::string label_col;
        int k = 5;
        int max_iters = 20;
        int patience = 5;
        std::uint64_t seed = 42;
        bool scale = false;
        double c = 0.0;
        double gamma = 0.0;
        std::string out;
        unsigned threads = 0;
    } raw;

    const std::pair<Subcommand, const char*> subs[] = {
        {Subcommand::tune, "Iterated local search, with the grid-search baseline in the report"},
        {Subcommand::grid, "Plain 5x5 powers-of-ten grid search"},
        {Subcommand::eval, "Cross-validated accuracy of one (C, gamma) pair"},
    };
    std::vector<CLI::App*> apps;
    std::vector<CLI::Option*> c_opts, gamma_opts, format_opts, threads_opts, label_opts, out_opts;
    for (const auto& [sub, desc] : subs) {
        auto* s = app.add_subcommand(to_string(sub), desc);
        s->add_option("--data", raw.data, "Dataset file")->required();
        format_opts.push_back(
            s->add_option("--format", raw.format, "libsvm or csv (default: from extension)")
                ->check(CLI::IsMember({"libsvm", "csv"})));
        label_opts.push_back(s->add_option("--label-col", raw.label_col, "Label column (csv only)"));
        s->add_option("--k", raw.k, "Cross-validation folds")->check(CLI::Range(2, 1 << 20));
        s->add_option("--max-iters", raw.max_iters, "ILS iterations after the initial grid")
            ->check(CLI::NonNegativeNumber);
        s->add_option("--patience", raw.patience, "Consecutive rejections before stopping (0 = unlimited)")
            ->check(CLI::NonNegativeNumber);
        s->add_option("--seed", raw.seed, "Seed for folds and perturbations");
        s->add_flag("--scale", raw.scale, "Standardize features before tuning");
        c_opts.push_back(s->add_option("--c", raw.c, "C for eval")->check(CLI::PositiveNumber));
        gamma_opts.push_back(s->add_option("--gamma", raw.gamma, "gamma for eval")->check(CLI::PositiveNumber));
        out_opts.push_back(s->add_option("--out", raw.out, "Write the report here instead of stdout"));
        threads_opts.push_back(
            s->add_option("--threads", raw.threads, "Concurrent candidate evaluations")->check(CLI::PositiveNumber));
        apps.push_back(s);
    }

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help(), kOk);
    } catch (const CLI::ParseError& e) {
        throw UsageError(fmt::format("{}\n\n{}", e.what(), app.help()));
    }

    std::size_t which = 0;
    while (!apps[which]->parsed()) ++which;
    CliArgs args;
    args.subcommand = subs[which].first;
    args.data_path = raw.data;
    if (format_opts[which]->count() > 0)
        args.format = raw.format == "csv" ? Format::csv : Format::libsvm;
    else
        args.format = std::filesystem::path(raw.data).extension() == ".csv" ? Format::csv : Format::libsvm;
    if (label_opts[which]->count() > 0) args.label_column = raw.label_col;
    args.k = raw.k;
    args.max_iterations = raw.max_iters;
    args.patience = raw.patience == 0 ? std::nullopt : std::optional<int>(raw.patience);
    args.seed = raw.seed;
    args.scale = raw.scale;
    if (c_opts[which]->count() > 0) args.c_value = raw.c;
    if (gamma_opts[which]->count() > 0) args.gamma_value = raw.gamma;
    if (out_opts[which]->count() > 0) args.out_path = raw.out;
    if (threads_opts[which]->count() > 0) args.threads = raw.threads;

    if (args.format == Format::csv && !args.label_column)
        throw UsageError("--label-col is required for csv input");
    if (args.format == Format::libsvm && args.label_column)
        throw UsageError("--label-col only applies to csv input");
    if (args.subcommand == Subcommand::eval) {
        if (!args.c_value || !args.gamma_value) {
            std::string missing = !args.c_value && !args.gamma_value ? "--c and --gamma"
                                  : !args.c_value                    ? "--c"
                                                                     : "--gamma";
            throw UsageError(fmt::format("eval requires --c and --gamma (missing {})", missing));
        }
    } else if (args.c_value || args.gamma_value) {
        throw UsageError(fmt::format("--c/--gamma are only accepted by eval, not {}", to_string(args.subcommand)));
    }
    return args;
}

namespace {

Dataset load(const CliArgs& args) {
    std::ifstream in(args.data_path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open '{}'", args.data_path));
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (args.format == Format::csv) return parse_csv(text, *args.label_column);
    return parse_libsvm(text);
}

TunerConfig tuner_config(const CliArgs& args) {
    TunerConfig cfg;
    cfg.k = args.k;
    cfg.max_iterations = args.max_iterations;
    cfg.patience = args.patience;
    cfg.seed = args.seed;
    cfg.scale_features = args.scale;
    cfg.threads = args.threads.value_or(0);
    return cfg;
}

Json config_echo(const CliArgs& args, const TunerConfig& cfg) {
    Json j{{"subcommand", to_string(args.subcommand)},
           {"data", args.data_path},
           {"format", to_string(args.format)},
           {"label_column", args.label_column ? Json(*args.label_column) : Json(nullptr)},
           {"k", cfg.k},
           {"max_iterations", cfg.max_iterations},
           {"patience", cfg.patience ? Json(*cfg.patience) : Json(nullptr)},
           {"seed", cfg.seed},
           {"scale", cfg.scale_features},
           {"solver",
            {{"kkt_tolerance", cfg.solver.kkt_tolerance},
             {"max_passes", cfg.solver.max_passes},
             {"max_iterations", cfg.solver.max_iterations}}}};
    if (args.subcommand == Subcommand::eval) {
        j["C"] = *args.c_value;
        j["gamma"] = *args.gamma_value;
    }
    return j;
}

void log_evaluation(std::ostream& err, const char* tag, const Evaluation& e) {
    fmt::print(err, "{}: C={:.6g} gamma={:.6g} acc={:.6f}\n", tag, e.params.c, e.params.gamma, e.cv_accuracy);
}

Json execute(const CliArgs& args, std::ostream& err) {
    const auto data = load(args);
    const auto cfg = tuner_config(args);
    cfg.validate();
    fmt::print(err, "loaded {} samples, {} features ({} positive, {} negative)\n", data.size(),
               data.n_features(), data.count(1), data.count(-1));

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    const auto echo = config_echo(args, cfg);
    EvalCache cache;

    switch (args.subcommand) {
        case Subcommand::tune: {
            auto result = ils_tune(data, cfg, cache, [&](const IterationRecord& r) {
                fmt::print(err, "iter {}: C={:.6g} gamma={:.6g} acc={:.6f} {} ({} new", r.index,
                           r.best_candidate.params.c, r.best_candidate.params.gamma,
                           r.best_candidate.cv_accuracy, r.accepted ? "accepted" : "rejected",
                           r.new_evaluations);
                if (r.failed_candidates > 0)
                    fmt::print(err, ", {} skipped: solver did not converge", r.failed_candidates);
                fmt::print(err, ")\n");
            });
            // Same folds and cache as the initial grid, so this costs nothing.
            const auto baseline = baseline_grid(data, cfg, cache);
            log_evaluation(err, "baseline", baseline);
            log_evaluation(err, "best", result.best);
            return make_report(echo, result.initial, result.iterations, result.best, baseline,
                               result.total_evaluations, elapsed());
        }
        case Subcommand::grid: {
            const auto baseline = baseline_grid(data, cfg, cache);
            log_evaluation(err, "grid", baseline);
            return make_report(echo, baseline, {}, baseline, baseline, cache.computed(), elapsed());
        }
        case Subcommand::eval: {
            const auto params = HyperParams::make(*args.c_value, *args.gamma_value);
            const Dataset& d = cfg.scale_features ? standardize(data).data : data;
            const auto folds = kfold_split(d, cfg.k, cfg.seed);
            const auto e = cv_accuracy(d, folds, params, cfg.solver, cache);
            log_evaluation(err, "eval", e);
            return make_report(echo, e, {}, e, std::nullopt, cache.computed(), elapsed());
        }
    }
    throw std::logic_error("unknown subcommand");
}

}  // namespace

int run(const CliArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const auto text = write_json(execute(args, err));
        if (args.out_path) {
            std::ofstream f(*args.out_path, std::ios::binary | std::ios::trunc);
            if (!f) {
                fmt::print(err, "error: cannot write '{}'\n", *args.out_path);
                return kDataError;
            }
            f << text;
        } else {
            out << text;
            out.flush();
        }
        return kOk;
    } catch (const DataError& e) {
        fmt::print(err, "data error: {}\n", e.what());
        return kDataError;
    } catch (const ConvergenceError& e) {
        fmt::print(err, "numeric failure: {}\n", e.what());
        return kNumericError;
    } catch (const std::domain_error& e) {
        fmt::print(err, "numeric failure: {}\n", e.what());
        return kNumericError;
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "usage error: {}\n", e.what());
        return kUsage;
    }
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run(parse_args(args), std::cout, std::cerr);
    } catch (const UsageError& e) {
        (e.exit_code == kOk ? std::cout : std::cerr) << e.what() << '\n';
        return e.exit_code;
    }
}

}  // namespace ilsvm::cli
