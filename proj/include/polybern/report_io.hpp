#pragma once

// JSON documents for reports and records. Rationals travel as "num/den"
// strings so they round-trip without loss. Every top-level document carries
// "schema": 1.

#include <string>

#include <json.hpp>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/entropy.hpp"
#include "polybern/mixing.hpp"
#include "polybern/verification.hpp"

namespace polybern {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const ParamVector& params);
nlohmann::json to_json(const Margin& margin);
nlohmann::json to_json(const Witness& witness);
nlohmann::json to_json(const CheckRecord& check);
nlohmann::json to_json(const SChainReport& chain);
nlohmann::json to_json(const MixingProfile& profile);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const DerivativeRecord& record);

/// Wraps a payload with the schema version.
nlohmann::json document(nlohmann::json payload);

ParamVector params_from_json(const nlohmann::json& j);

/// Formats a double so that it parses back to the same value.
std::string format_double(double value);

}  // namespace polybern
