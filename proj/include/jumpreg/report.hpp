#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumpreg/bayes.hpp"
#include "jumpreg/m_process.hpp"
#include "jumpreg/selection.hpp"
#include "jumpreg/step_fit.hpp"

namespace jumpreg {

inline constexpr const char* kVersion = "0.1.0";

struct ReportMeta {
  std::optional<std::uint64_t> seed;
  nlohmann::json config = nlohmann::json::object();
  // Tests pin the timestamp so reruns compare byte-for-byte.
  std::optional<std::string> timestamp_override;
};

nlohmann::json score_to_json(const CriterionScore& score);
nlohmann::json fit_to_json(const StepFit& fit,
                           const std::vector<Interval>* cis = nullptr);
nlohmann::json posterior_to_json(const BreakPosterior& post);

// Report schema: {meta: {seed, version, config, timestamp},
//                 models: [...], fits: [...], diagnostics: {warnings}}.
nlohmann::json make_report(const ReportMeta& meta,
                           std::span<const CriterionScore> models,
                           const nlohmann::json& fits,
                           std::span<const std::string> warnings);

void write_text(const std::string& path, const std::string& text);
std::string models_csv(std::span<const CriterionScore> models);

// Plot-ready step-function trace: two rows per window (start and end),
// no header.
std::string trace_csv(const StepFit& fit, double x_min, double x_max);

}  // namespace jumpreg
