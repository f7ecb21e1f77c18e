#pragma once

#include <stdexcept>
#include <string>

namespace vna {

enum class ErrorKind {
  structural,  // mismatched parents, wrong shapes
  domain,      // input outside an operation's domain
  numeric,     // non-convergence, ill-conditioning, inconsistent verdicts
  resource,    // configured caps exceeded
  parse,       // malformed external input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error structural_error(const std::string& what) {
  return {ErrorKind::structural, what};
}
inline Error domain_error(const std::string& what) {
  return {ErrorKind::domain, what};
}
inline Error numeric_error(const std::string& what) {
  return {ErrorKind::numeric, what};
}
inline Error resource_error(const std::string& what) {
  return {ErrorKind::resource, what};
}
inline Error parse_error(const std::string& what) {
  return {ErrorKind::parse, what};
}

}  // namespace vna
