#include "pind/session.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "pind/levels.hpp"
#include "pind/parser.hpp"
#include "pind/protocol.hpp"
#include "pind/prover.hpp"

namespace pind {

int exit_code(const Status& status) {
  switch (status.kind) {
    case Status::Kind::Success: return kExitSuccess;
    case Status::Kind::Failed: return kExitProofFailed;
    case Status::Kind::Error: return kExitExecution;
  }
  return kExitExecution;
}

std::size_t depth_limit_from_env(std::size_t fallback) {
  const char* v = std::getenv("PIND_DEPTH_LIMIT");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) return fallback;
  return static_cast<std::size_t>(n);
}

namespace {

struct UsageError {
  std::string code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError{"io_error", "cannot read " + path};
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Copies every answer into the JSON stream as it is consumed.
class EchoChoices : public ChoiceSource {
 public:
  EchoChoices(ChoiceSource& inner, std::ostream& out) : inner_(inner), out_(out) {}

  std::optional<std::string> next(const ChoiceRequest& request) override {
    auto answer = inner_.next(request);
    if (answer) {
      out_ << protocol::encode_event(protocol::InputResponse{*answer}) << '\n' << std::flush;
    }
    return answer;
  }
  bool retries() const override { return inner_.retries(); }
  void rejected(const ChoiceRequest& req, const std::string& answer,
                const std::string& why) override {
    inner_.rejected(req, answer, why);
  }

 private:
  ChoiceSource& inner_;
  std::ostream& out_;
};

// Answers arrive as input_response lines.
class JsonChoices : public ChoiceSource {
 public:
  JsonChoices(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::optional<std::string> next(const ChoiceRequest&) override {
    std::string line;
    while (std::getline(in_, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        auto ev = protocol::decode_event(line);
        if (auto* r = std::get_if<protocol::InputResponse>(&ev)) return r->value;
        emit({"unexpected_event", "expected input_response"});
      } catch (const protocol::ProtocolError& e) {
        emit({"protocol_error", e.what()});
      }
    }
    return std::nullopt;
  }
  bool retries() const override { return true; }
  void rejected(const ChoiceRequest& req, const std::string&, const std::string& why) override {
    emit({"invalid_choice", why});
    out_ << protocol::encode_event(protocol::InputRequest{req.var, req.prompt}) << '\n'
         << std::flush;
  }

 private:
  void emit(const protocol::Error& e) {
    out_ << protocol::encode_event(e) << '\n' << std::flush;
  }
  std::istream& in_;
  std::ostream& out_;
};

class Session {
 public:
  Session(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err)
      : config_(config), in_(in), out_(out), err_(err) {}

  bool json() const { return config_.output == OutputMode::Json; }

  void json_line(const protocol::Event& e) { out_ << protocol::encode_event(e) << '\n' << std::flush; }

  int report_error(const std::string& code, const std::string& message, int exit,
                   const std::string& status) {
    if (json()) {
      json_line(protocol::Error{code, message});
      json_line(protocol::Result{status});
    } else {
      err_ << message << '\n';
    }
    return exit;
  }

  void load() {
    std::string text = read_file(config_.program_path);
    try {
      program_ = parse_program(text);
    } catch (const ParseError& e) {
      throw UsageError{"parse_error", config_.program_path + ": " + e.what()};
    }
    loaded_ = true;
  }

  // Parses, checks, proves and plays one goal.
  int solve(const std::string& goal_text, ChoiceSource& choices) {
    Formula goal = Formula::top();
    try {
      goal = parse_goal(goal_text);
      check_levels(program_, goal);
    } catch (const ParseError& e) {
      return report_error("parse_error", std::string("goal: ") + e.what(), kExitUsage, "error");
    } catch (const LevelError& e) {
      return report_error("level_error", e.what(), kExitUsage, "error");
    }

    try {
      tree_ = Prover(program_, ProverOptions{config_.depth_limit}).prove(goal);
    } catch (const ProofFailure& e) {
      return report_error("proof_failed", e.what(), kExitProofFailed, "failed");
    } catch (const SearchLimitExceeded& e) {
      return report_error("search_limit", std::string("proof failed: ") + e.what(),
                          kExitProofFailed, "failed");
    }
    if (json()) json_line(protocol::ProofDone{tree_->size()});
    if (config_.output == OutputMode::Trace) out_ << tree_->dump();

    EventSink sink = [&](const Event& e) { render(e); };
    EchoChoices echo(choices, out_);
    ChoiceSource& source = json() ? static_cast<ChoiceSource&>(echo) : choices;
    Transcript t = execute(*tree_, source, sink);
    return exit_code(t.status());
  }

  void render(const Event& e) {
    if (json()) {
      if (auto* r = std::get_if<ChoiceRequested>(&e)) {
        json_line(protocol::InputRequest{r->var, r->prompt});
      } else if (auto* w = std::get_if<WitnessPrinted>(&e)) {
        json_line(protocol::Output{w->var, w->value});
      } else if (auto* s = std::get_if<Status>(&e)) {
        if (s->kind == Status::Kind::Error) json_line(protocol::Error{s->code, s->detail});
        json_line(protocol::Result{to_string(s->kind)});
      }
      return;
    }
    if (auto* w = std::get_if<WitnessPrinted>(&e)) {
      out_ << w->var << " = " << w->value << '\n';
    } else if (auto* s = std::get_if<Status>(&e)) {
      if (s->kind == Status::Kind::Error) err_ << "execution error: " << s->detail << '\n';
    }
  }

  std::unique_ptr<ChoiceSource> interactive() {
    if (json()) return std::make_unique<JsonChoices>(in_, out_);
    return std::make_unique<InteractiveChoices>(in_, out_);
  }

  const SessionConfig& config_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  Program program_;
  bool loaded_ = false;
  std::optional<ProofTree> tree_;
};

}  // namespace

int run_script(const SessionConfig& config, std::istream& in, std::ostream& out,
               std::ostream& err) {
  Session s(config, in, out, err);
  try {
    s.load();
  } catch (const UsageError& e) {
    return s.report_error(e.code, e.message, kExitUsage, "error");
  }
  std::unique_ptr<ChoiceSource> choices;
  if (config.choices) {
    choices = std::make_unique<ScriptedChoices>(*config.choices);
  } else {
    choices = s.interactive();
  }
  return s.solve(config.goal_text, *choices);
}

int run_repl(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  Session s(config, in, out, err);
  try {
    s.load();
  } catch (const UsageError& e) {
    return s.report_error(e.code, e.message, kExitUsage, "error");
  }
  auto choices = s.interactive();
  std::string line;
  while (true) {
    if (!s.json()) out << "?- " << std::flush;
    if (!std::getline(in, line)) break;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (line == ":quit") break;
    if (line == ":tree") {
      if (s.tree_) {
        out << s.tree_->dump();
      } else {
        s.report_error("no_tree", "no proof yet", 0, "error");
      }
      continue;
    }
    s.solve(line, *choices);
  }
  return kExitSuccess;
}

}  // namespace pind
