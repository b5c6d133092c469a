#include "jumpreg/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc;
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

nlohmann::json score_to_json(const CriterionScore& score) {
  nlohmann::json j;
  j["label"] = score.model_label;
  j["family"] = score.family == ModelFamily::jump ? "jump" : "polynomial";
  j["d_or_degree"] = score.d_or_degree;
  j["loglik_max"] = score.loglik_max;
  j["bias_or_penalty"] = score.bias_or_penalty;
  j["score"] = score.score;
  j["extras"] = score.extras;
  return j;
}

nlohmann::json fit_to_json(const StepFit& fit,
                           const std::vector<Interval>* cis) {
  nlohmann::json j;
  j["d"] = fit.d();
  j["breakpoints"] = fit.breakpoints;
  j["levels"] = fit.levels;
  j["split_index"] = fit.split_index;
  j["rss"] = fit.rss;
  j["sigma0"] = fit.sigma0_hat;
  j["loglik_max"] = fit.loglik_max;
  j["n"] = fit.n;
  if (cis != nullptr) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Interval& ci : *cis) {
      arr.push_back({{"lo", ci.lo}, {"hi", ci.hi}});
    }
    j["ci"] = arr;
  }
  return j;
}

nlohmann::json posterior_to_json(const BreakPosterior& post) {
  nlohmann::json j;
  j["interval_lefts"] = post.interval_lefts;
  j["interval_rights"] = post.interval_rights;
  j["weights"] = post.weights;
  j["posterior_mean"] = post.posterior_mean;
  j["credible_interval"] = {post.credible_interval.first,
                            post.credible_interval.second};
  j["level"] = post.level;
  return j;
}

nlohmann::json make_report(const ReportMeta& meta,
                           std::span<const CriterionScore> models,
                           const nlohmann::json& fits,
                           std::span<const std::string> warnings) {
  nlohmann::json report;
  nlohmann::json m;
  if (meta.seed.has_value()) m["seed"] = *meta.seed;
  m["version"] = kVersion;
  m["config"] = meta.config;
  m["timestamp"] = meta.timestamp_override.has_value()
                       ? *meta.timestamp_override
                       : iso_timestamp();
  report["meta"] = m;
  nlohmann::json model_arr = nlohmann::json::array();
  for (const CriterionScore& s : models) model_arr.push_back(score_to_json(s));
  report["models"] = model_arr;
  report["fits"] = fits.is_null() ? nlohmann::json::array() : fits;
  report["diagnostics"] = {
      {"warnings", std::vector<std::string>(warnings.begin(), warnings.end())}};
  return report;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::io_error, "failed writing " + path);
}

std::string models_csv(std::span<const CriterionScore> models) {
  std::ostringstream out;
  out << "label,family,d_or_degree,loglik_max,bias_or_penalty,score,sigma0\n";
  for (const CriterionScore& s : models) {
    const auto it = s.extras.find("sigma0");
    out << s.model_label << ','
        << (s.family == ModelFamily::jump ? "jump" : "polynomial") << ','
        << s.d_or_degree << ',' << format_number(s.loglik_max) << ','
        << format_number(s.bias_or_penalty) << ',' << format_number(s.score)
        << ',' << (it != s.extras.end() ? format_number(it->second) : "")
        << '\n';
  }
  return out.str();
}

std::string trace_csv(const StepFit& fit, double x_min, double x_max) {
  std::ostringstream out;
  for (int w = 0; w < fit.d(); ++w) {
    const double lo = (w == 0) ? x_min : fit.breakpoints[w - 1];
    const double hi = (w == fit.d() - 1) ? x_max : fit.breakpoints[w];
    out << format_number(lo) << ',' << format_number(fit.levels[w]) << '\n';
    out << format_number(hi) << ',' << format_number(fit.levels[w]) << '\n';
  }
  return out.str();
}

}  // namespace jumpreg
