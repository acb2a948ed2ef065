#pragma once

#include <cstddef>
#include <string>

#include "schunck/module.hpp"

namespace schunck {

/// A Lie algebra over F_p, or a finite group paired with the prime whose
/// modular representations are studied.
class Structure {
 public:
  explicit Structure(LiePtr l, std::string id = {});
  Structure(GroupPtr g, Field p, std::string id = {});

  bool is_lie() const noexcept { return lie_ != nullptr; }
  Field field() const noexcept { return field_; }
  const LiePtr& lie() const noexcept { return lie_; }
  const GroupPtr& group() const noexcept { return group_; }
  const std::string& id() const noexcept { return id_; }
  /// Dimension or order.
  std::size_t size() const noexcept;

  Module trivial_module(std::size_t dim = 1) const;
  /// Same algebra, group studied at another prime.
  Structure at_prime(Field p) const;

 private:
  LiePtr lie_;
  GroupPtr group_;
  Field field_;
  std::string id_;
};

}  // namespace schunck
