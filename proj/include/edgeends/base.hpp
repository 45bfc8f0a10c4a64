#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace edgeends {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

using Json = nlohmann::ordered_json;

// Schema tag stamped on every JSON document the tools emit.
inline constexpr const char* kSchema = "edgeends/v1";

// Domain errors: bad inputs, violated preconditions, parity violations.
// Carry a machine-readable code plus an optional JSON payload so the CLI
// can emit structured reports instead of bare messages.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message, Json detail = Json::object())
      : std::runtime_error(message), code_(std::move(code)), detail_(std::move(detail)) {}
  const std::string& code() const { return code_; }
  const Json& detail() const { return detail_; }

 private:
  std::string code_;
  Json detail_;
};

// I/O and file-format errors (exit code 2 at the CLI).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, const std::string& message, Json detail = Json::object())
      : std::runtime_error(message), code_(std::move(code)), detail_(std::move(detail)) {}
  const std::string& code() const { return code_; }
  const Json& detail() const { return detail_; }

 private:
  std::string code_;
  Json detail_;
};

// Bug traps: states the theory says are unreachable. Never caught as a
// domain condition.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& message) : std::logic_error(message) {}
};

inline void require(bool cond, const char* what) {
  if (!cond) throw InternalError(what);
}

}  // namespace edgeends
