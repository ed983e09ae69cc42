#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hypsob {

// Error taxonomy shared by the core, the C API and the CLI exit codes.
enum class ErrorCode {
  Domain = 1,        // argument outside the mathematical domain
  Spec = 2,          // illegal space/operator specification
  Divergence = 3,    // a required integral is infinite
  Applicability = 4, // theorem hypotheses not satisfied
  Parse = 5,         // malformed JSON / input
  Resolution = 6,    // grid too coarse for the requested evaluation
  NotANumber = 7,    // NaN encountered where forbidden
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_domain(const std::string& msg) {
  throw Error(ErrorCode::Domain, msg);
}
[[noreturn]] inline void throw_spec(const std::string& msg) {
  throw Error(ErrorCode::Spec, msg);
}
[[noreturn]] inline void throw_divergence(const std::string& msg) {
  throw Error(ErrorCode::Divergence, msg);
}
[[noreturn]] inline void throw_applicability(const std::string& msg) {
  throw Error(ErrorCode::Applicability, msg);
}
[[noreturn]] inline void throw_parse(const std::string& msg) {
  throw Error(ErrorCode::Parse, msg);
}
[[noreturn]] inline void throw_resolution(const std::string& msg) {
  throw Error(ErrorCode::Resolution, msg);
}

} // namespace hypsob
