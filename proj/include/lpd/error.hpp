#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lpd
{

enum class ErrorCode
{
  Parse,              // malformed text input
  DegreeMismatch,
  OutOfRange,
  EmptyGenerators,
  NotInGroup,
  NotPreserved,       // group does not act on the given structure
  LimitExceeded,      // desk-scale enumeration / index limit hit
  Intransitive,
  InvalidArgument,
  NonConstantBlockSize,
  NonConstantReplication,
  NonConstantLambda,
  UncoveredPair,
  TrivialDesign,
  Degenerate,
  NotOneDesign,
  Disconnected,
  Internal            // an identity that must hold did not
};

inline char const *to_string(ErrorCode code)
{
  switch (code) {
  case ErrorCode::Parse: return "parse";
  case ErrorCode::DegreeMismatch: return "degree-mismatch";
  case ErrorCode::OutOfRange: return "out-of-range";
  case ErrorCode::EmptyGenerators: return "empty-generators";
  case ErrorCode::NotInGroup: return "not-in-group";
  case ErrorCode::NotPreserved: return "not-preserved";
  case ErrorCode::LimitExceeded: return "limit-exceeded";
  case ErrorCode::Intransitive: return "intransitive";
  case ErrorCode::InvalidArgument: return "invalid-argument";
  case ErrorCode::NonConstantBlockSize: return "non-constant-block-size";
  case ErrorCode::NonConstantReplication: return "non-constant-replication";
  case ErrorCode::NonConstantLambda: return "non-constant-lambda";
  case ErrorCode::UncoveredPair: return "uncovered-pair";
  case ErrorCode::TrivialDesign: return "trivial-design";
  case ErrorCode::Degenerate: return "degenerate";
  case ErrorCode::NotOneDesign: return "not-a-1-design";
  case ErrorCode::Disconnected: return "disconnected";
  case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string const &what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what),
    _code(code)
  {}

  ErrorCode code() const noexcept
  { return _code; }

private:
  ErrorCode _code;
};

[[noreturn]] inline void fail(ErrorCode code, std::string const &what)
{ throw Error(code, what); }

inline void ensure(bool cond, ErrorCode code, std::string const &what)
{
  if (!cond)
    fail(code, what);
}

// Limits keeping every enumeration at desk scale. The element limit can be
// overridden through the LPD_ENUM_LIMIT environment variable.
struct Limits
{
  std::size_t element_limit = 1000000;
  std::size_t index_limit = 10000;
  std::size_t point_limit = 10000;
};

inline Limits default_limits()
{
  Limits limits;
  if (char const *env = std::getenv("LPD_ENUM_LIMIT")) {
    char *end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0)
      limits.element_limit = static_cast<std::size_t>(value);
  }
  return limits;
}

} // namespace lpd
