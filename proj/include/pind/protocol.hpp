#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>

namespace pind::protocol {

struct InputRequest {
  std::string var;
  std::string prompt;
  bool operator==(const InputRequest&) const = default;
};
struct InputResponse {
  std::string value;
  bool operator==(const InputResponse&) const = default;
};
struct Output {
  std::string var;
  std::string value;
  bool operator==(const Output&) const = default;
};
struct ProofDone {
  std::size_t nodes = 0;
  bool operator==(const ProofDone&) const = default;
};
struct Result {
  std::string status;  // success | failed | error
  bool operator==(const Result&) const = default;
};
struct Error {
  std::string code;
  std::string message;
  bool operator==(const Error&) const = default;
};

using Event = std::variant<InputRequest, InputResponse, Output, ProofDone, Result, Error>;

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(const std::string& message, std::string line)
      : std::runtime_error(message + ": " + line), line_(std::move(line)) {}
  const std::string& line() const { return line_; }

 private:
  std::string line_;
};

// One JSON object, no trailing newline.
std::string encode_event(const Event& e);
// Throws ProtocolError on malformed JSON, unknown types or missing fields.
Event decode_event(const std::string& line);

}  // namespace pind::protocol
