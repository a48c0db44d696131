#include "pind/protocol.hpp"

#include <json.hpp>

namespace pind::protocol {

using nlohmann::json;

std::string encode_event(const Event& e) {
  struct {
    json operator()(const InputRequest& r) const {
      return {{"type", "input_request"}, {"var", r.var}, {"prompt", r.prompt}};
    }
    json operator()(const InputResponse& r) const {
      return {{"type", "input_response"}, {"value", r.value}};
    }
    json operator()(const Output& o) const {
      return {{"type", "output"}, {"var", o.var}, {"value", o.value}};
    }
    json operator()(const ProofDone& p) const {
      return {{"type", "proof_done"}, {"nodes", p.nodes}};
    }
    json operator()(const Result& r) const { return {{"type", "result"}, {"status", r.status}}; }
    json operator()(const Error& r) const {
      return {{"type", "error"}, {"code", r.code}, {"message", r.message}};
    }
  } to_json;
  return std::visit(to_json, e).dump();
}

namespace {

std::string text(const json& j, const char* field, const std::string& line) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    throw ProtocolError(std::string("missing string field '") + field + "'", line);
  }
  return it->get<std::string>();
}

}  // namespace

Event decode_event(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("not a JSON object", line);
  std::string type = text(j, "type", line);
  if (type == "input_request") return InputRequest{text(j, "var", line), text(j, "prompt", line)};
  if (type == "input_response") return InputResponse{text(j, "value", line)};
  if (type == "output") return Output{text(j, "var", line), text(j, "value", line)};
  if (type == "proof_done") {
    auto it = j.find("nodes");
    if (it == j.end() || !it->is_number_unsigned()) {
      throw ProtocolError("missing count field 'nodes'", line);
    }
    return ProofDone{it->get<std::size_t>()};
  }
  if (type == "result") {
    std::string status = text(j, "status", line);
    if (status != "success" && status != "failed" && status != "error") {
      throw ProtocolError("unknown status '" + status + "'", line);
    }
    return Result{status};
  }
  if (type == "error") return Error{text(j, "code", line), text(j, "message", line)};
  throw ProtocolError("unknown event type '" + type + "'", line);
}

}  // namespace pind::protocol
