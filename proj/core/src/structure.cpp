#include "schunck/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "schunck/error.hpp"
#include "schunck/parallel.hpp"
#include "schunck/report.hpp"

namespace schunck {

Structure::Structure(LiePtr l, std::string id) : lie_(std::move(l)), field_(2), id_(std::move(id)) {
  if (!lie_) throw InputError("structure: null Lie algebra");
  field_ = lie_->field();
}

Structure::Structure(GroupPtr g, Field p, std::string id) : group_(std::move(g)), field_(p), id_(std::move(id)) {
  if (!group_) throw InputError("structure: null group");
}

std::size_t Structure::size() const noexcept { return is_lie() ? lie_->dim() : group_->order(); }

Module Structure::trivial_module(std::size_t dim) const {
  return is_lie() ? Module::trivial(lie_, dim) : Module::trivial(field_, group_, dim);
}

Structure Structure::at_prime(Field p) const {
  if (is_lie()) throw PreconditionError("a Lie algebra's prime is fixed by its field");
  return Structure(group_, p, id_);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
    case Verdict::Bounded: return "BOUNDED";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::Skip: return 0;
      case Verdict::Pass: return 1;
      case Verdict::Bounded: return 2;
      case Verdict::Fail: return 3;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

nlohmann::json CheckRecord::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["algebra_id"] = algebra_id;
  j["depth"] = depth;
  j["verdict"] = std::string(to_string(verdict));
  j["witness"] = witness;
  return j;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("SCHUNCK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace schunck
