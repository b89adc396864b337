#include "ilsvm/report.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace ilsvm {

Json to_json(const HyperParams& p) { return Json{{"C", p.c}, {"gamma", p.gamma}}; }

Json to_json(const ParamRange& r) {
    const auto v = r.values();
    return Json(std::vector<double>(v.begin(), v.end()));
}

Json to_json(const Evaluation& e) {
    return Json{{"C", e.params.c},
                {"gamma", e.params.gamma},
                {"cv_accuracy", e.cv_accuracy},
                {"fold_accuracies", e.fold_accuracies}};
}

Json to_json(const IterationRecord& r) {
    return Json{{"index", r.index},
                {"range_gamma_used", to_json(r.range_gamma_used)},
                {"range_c_used", to_json(r.range_c_used)},
                {"winner", to_json(r.best_candidate)},
                {"accepted", r.accepted},
                {"new_evaluations", r.new_evaluations},
                {"failed_candidates", r.failed_candidates}};
}

Json make_report(const Json& config, const Evaluation& initial, const std::vector<IterationRecord>& iterations,
                 const Evaluation& best, const std::optional<Evaluation>& baseline,
                 std::uint64_t total_evaluations, double wall_time_seconds) {
    Json iters = Json::array();
    for (const auto& r : iterations) iters.push_back(to_json(r));
    return Json{{"schema_version", kReportSchemaVersion},
                {"config", config},
                {"initial", to_json(initial)},
                {"iterations", std::move(iters)},
                {"best", to_json(best)},
                {"baseline", baseline ? to_json(*baseline) : Json(nullptr)},
                {"total_evaluations", total_evaluations},
                {"wall_time_seconds", wall_time_seconds}};
}

namespace {

void write(const Json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
        case Json::value_t::number_float:
            out += fmt::format("{:.17g}", j.get<double>());
            break;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            // Flat arrays of scalars stay on one line.
            const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += pad;
                write(e, out, depth + 1);
            }
            out += flat ? "]" : "\n" + close_pad + "]";
            break;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                write(value, out, depth + 1);
            }
            out += "\n" + close_pad + "}";
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string write_json(const Json& j) {
    std::string out;
    write(j, out, 0);
    out += '\n';
    return out;
}

}  // namespace ilsvm
