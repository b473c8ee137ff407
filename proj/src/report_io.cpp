#include "polybern/report_io.hpp"

#include <cstdio>

namespace polybern {

using nlohmann::json;

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json to_json(const ParamVector& params) {
  json out = json::array();
  for (const auto& p : params.probs()) out.push_back(to_string(p));
  return out;
}

ParamVector params_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("params must be a JSON array of strings");
  std::vector<Rational> probs;
  for (const auto& item : j) probs.push_back(parse_rational(item.get<std::string>()));
  return ParamVector(std::move(probs));
}

json to_json(const Margin& margin) {
  if (const auto* r = std::get_if<Rational>(&margin)) return to_string(*r);
  if (const auto* d = std::get_if<double>(&margin)) return *d;
  return nullptr;
}

json to_json(const Witness& witness) {
  json out{{"params", to_json(witness.params)}};
  if (witness.k) out["k"] = *witness.k;
  if (witness.r) out["r"] = *witness.r;
  if (witness.q) out["q"] = *witness.q;
  if (witness.probe) out["probe"] = *witness.probe;
  return out;
}

json to_json(const CheckRecord& check) {
  json out{{"name", check.name},
           {"status", to_string(check.status)},
           {"margin", to_json(check.margin)},
           {"exact", std::holds_alternative<Rational>(check.margin)}};
  if (check.witness) out["witness"] = to_json(*check.witness);
  if (!check.note.empty()) out["note"] = check.note;
  return out;
}

json to_json(const SChainReport& chain) {
  json s = json::array();
  for (const auto& v : chain.s_values) s.push_back(to_string(v));
  return json{{"r", chain.r},
              {"s_values", s},
              {"moment", to_string(chain.moment)},
              {"min_gap", to_string(chain.min_gap)},
              {"chain_monotone", chain.chain_monotone},
              {"equality_attained", chain.equality_attained}};
}

json to_json(const MixingProfile& profile) {
  json alphas = json::array();
  json betas = json::array();
  json spacings = json::array();
  for (const auto& a : profile.alphas()) alphas.push_back(to_string(a));
  for (const auto& b : profile.betas()) betas.push_back(to_string(b));
  for (const auto& s : alpha_spacings(profile)) spacings.push_back(to_string(s));
  return json{{"n", profile.degree()}, {"alphas", alphas}, {"betas", betas}, {"spacings", spacings}};
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  json findings = json::array();
  for (const auto& f : report.findings) {
    json item{{"name", f.name}, {"value", f.value}, {"witness", to_json(f.witness)}};
    if (!f.note.empty()) item["note"] = f.note;
    findings.push_back(std::move(item));
  }
  json chains = json::array();
  for (const auto& s : report.chains) chains.push_back(to_json(s));
  json out{{"suite", report.suite},
           {"checks", checks},
           {"findings", findings},
           {"diagnostics", report.diagnostics},
           {"stripped_zeros", report.stripped_zeros},
           {"summary",
            {{"pass", report.count(CheckStatus::pass)},
             {"violated", report.count(CheckStatus::violated)},
             {"skipped", report.count(CheckStatus::skipped)}}}};
  if (report.params) out["params"] = to_json(*report.params);
  if (report.equality_attained) out["equality_attained"] = *report.equality_attained;
  if (!report.chains.empty()) out["s_chains"] = chains;
  if (report.probes > 0) out["probes"] = report.probes;
  return out;
}

json to_json(const DerivativeRecord& record) {
  return json{{"first", record.first},
              {"second", record.second},
              {"method", to_string(record.method)},
              {"bound_check", record.bound_check}};
}

json document(json payload) {
  json out{{"schema", kSchemaVersion}};
  for (auto& [key, value] : payload.items()) out[key] = value;
  return out;
}

}  // namespace polybern
