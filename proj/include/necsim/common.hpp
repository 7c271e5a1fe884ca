#ifndef NECSIM_COMMON_HPP
#define NECSIM_COMMON_HPP

#include <stdexcept>
#include <string>

namespace necsim {

inline constexpr const char* kVersion = "0.1.0";

/// Thrown when a requested computation exceeds the configured desk-scale
/// enumeration or decoding budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace necsim

#endif
