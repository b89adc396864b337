#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ilsvm/evaluator.hpp"
#include "ilsvm/search_space.hpp"
#include "ilsvm/tuner.hpp"

namespace ilsvm {

inline constexpr const char* kReportSchemaVersion = "1.0";

using Json = nlohmann::ordered_json;

Json to_json(const HyperParams& p);
Json to_json(const ParamRange& r);
/// {"C", "gamma", "cv_accuracy", "fold_accuracies"}
Json to_json(const Evaluation& e);
Json to_json(const IterationRecord& r);

/// Report object with keys, in order: schema_version, config, initial,
/// iterations, best, baseline, total_evaluations, wall_time_seconds.
Json make_report(const Json& config, const Evaluation& initial, const std::vector<IterationRecord>& iterations,
                 const Evaluation& best, const std::optional<Evaluation>& baseline,
                 std::uint64_t total_evaluations, double wall_time_seconds);

/// Pretty-printed JSON with every floating-point number written with 17
/// significant digits, so equal doubles give equal bytes.
std::string write_json(const Json& j);

}  // namespace ilsvm
