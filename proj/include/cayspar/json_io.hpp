#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "cayspar/gadget.hpp"
#include "cayspar/sparsify.hpp"
#include "cayspar/verify.hpp"

namespace cayspar {

inline constexpr int kJsonSchemaVersion = 1;

/// Non-finite doubles become the strings "inf"/"-inf"/"nan" (JSON has no
/// representation for them).
nlohmann::json json_number(double v);

nlohmann::json to_json(const ImportanceProfile& profile);
nlohmann::json to_json(const SparsifierResult& result, const GroupTable& g);
nlohmann::json to_json(const VerifyReport& report);
nlohmann::json to_json(const AndGadget& gadget, const std::string& groupLabel, bool verified);

}  // namespace cayspar
