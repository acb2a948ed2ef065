#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace schunck {

/// Bounded means a cap was hit before a verdict could be reached; it is
/// never a pass.
enum class Verdict { Pass, Fail, Skip, Bounded };

std::string_view to_string(Verdict v);
/// Fail dominates Bounded, which dominates Pass, which dominates Skip.
Verdict combine(Verdict a, Verdict b);

struct CheckRecord {
  std::string check;
  std::string algebra_id;
  int depth = 0;
  Verdict verdict = Verdict::Skip;
  nlohmann::json witness = nlohmann::json::object();

  nlohmann::json to_json() const;
};

}  // namespace schunck
