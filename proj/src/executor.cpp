#include "pind/executor.hpp"

#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pind/unify.hpp"

namespace pind {

std::string to_string(Status::Kind k) {
  switch (k) {
    case Status::Kind::Success: return "success";
    case Status::Kind::Failed: return "failed";
    case Status::Kind::Error: return "error";
  }
  return "error";
}

std::string to_string(const Event& e) {
  struct {
    std::string operator()(const ChoiceRequested& r) const { return "request " + r.var; }
    std::string operator()(const ChoiceMade& c) const { return "choice " + c.var + " = " + c.value; }
    std::string operator()(const WitnessPrinted& w) const { return w.var + " = " + w.value; }
    std::string operator()(const Status& s) const {
      std::string out = "status " + pind::to_string(s.kind);
      if (!s.code.empty()) out += " " + s.code;
      if (!s.detail.empty()) out += ": " + s.detail;
      return out;
    }
  } render;
  return std::visit(render, e);
}

Status Transcript::status() const {
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (const auto* s = std::get_if<Status>(&*it)) return *s;
  }
  return Status{Status::Kind::Error, "", ""};
}

std::vector<WitnessPrinted> Transcript::witnesses() const {
  std::vector<WitnessPrinted> out;
  for (const auto& e : events) {
    if (const auto* w = std::get_if<WitnessPrinted>(&e)) out.push_back(*w);
  }
  return out;
}

std::string Transcript::to_string() const {
  std::string out;
  for (const auto& e : events) out += pind::to_string(e) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::string> ScriptedChoices::next(const ChoiceRequest&) {
  if (values_.empty()) return std::nullopt;
  std::string v = values_.front();
  values_.pop_front();
  return v;
}

std::optional<std::string> InteractiveChoices::next(const ChoiceRequest& request) {
  std::string line;
  while (true) {
    out_ << request.prompt << ' ' << std::flush;
    if (!std::getline(in_, line)) return std::nullopt;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    return line.substr(b, e - b + 1);
  }
}

void InteractiveChoices::rejected(const ChoiceRequest&, const std::string& answer,
                                  const std::string& why) {
  out_ << "'" << answer << "' rejected: " << why << '\n';
}

Term parse_choice(const ChoiceRequest& request, const std::string& answer) {
  auto all = [&](auto pred) {
    for (unsigned char c : answer) {
      if (!pred(c)) return false;
    }
    return !answer.empty();
  };
  if (all([](unsigned char c) { return std::isdigit(c); })) return Term::nat(Natural(answer));
  if (request.natural_only) throw InvalidChoice(request.var, answer, "expected a natural number");
  bool constant = !answer.empty() && std::islower(static_cast<unsigned char>(answer[0])) &&
                  all([](unsigned char c) { return std::isalnum(c) || c == '_'; });
  if (!constant) throw InvalidChoice(request.var, answer, "expected a number or a constant");
  return Term::compound(answer);
}

// ---------------------------------------------------------------------------

BranchChoice select_branch(const ProofNode& node, const Run& F, const Run& agreement) {
  std::vector<BranchChoice> consistent;
  for (std::size_t k = 0; k < node.thetas.size(); ++k) {
    const Run& theta = node.thetas[k];
    Run e = agreement;
    bool ok = true;
    for (const auto& b : F) {
      const Term* v = std::get_if<Term>(&b.key);
      if (!v) continue;
      if (!unify(apply(F, *v), apply(theta, *v), e)) {
        ok = false;
        break;
      }
    }
    if (ok) consistent.push_back({k, std::move(e)});
  }
  if (consistent.empty()) {
    throw NoConsistentBranch("no case of " + node.sequent.to_string() + " agrees with " +
                             F.to_string());
  }
  if (consistent.size() > 1) {
    throw NoConsistentBranch("ambiguous case analysis on " + node.sequent.to_string() + " under " +
                             F.to_string());
  }
  return consistent.front();
}

Run build_delta_total(const Run& psi_base, const Run& delta, const Term& step_var, std::size_t k,
                      std::size_t width) {
  if (k == 0) return psi_base;
  auto keep = [](const Binding& b) {
    if (std::holds_alternative<LocKey>(b.key)) return true;
    return std::get<Term>(b.key).is_witness();
  };
  Run total = psi_base.filter(keep);
  Run generic = delta.filter(keep);
  for (std::size_t i = 0; i < k; ++i) total = compose(shift(generic, step_var, i, width), total);
  return unshift(total, k, width);
}

namespace {

Term ground_value(const std::string& var, const Term& value) {
  Term v = eval_arith(value);
  if (!v.ground()) throw NonGroundWitness(var, v.to_string());
  return v;
}

void run_induction_goal(const Run& sigma, const Run& total, const Formula& goal, const Run& F,
                        const EventSink& emit) {
  switch (goal.kind()) {
    case FormulaKind::And:
      run_induction_goal(sigma, total, goal.lhs(), F, emit);
      run_induction_goal(sigma, total, goal.rhs(), F, emit);
      return;
    case FormulaKind::Exists: {
      const Binder& b = goal.binder();
      if (!b.loc) throw NonGroundWitness(b.display, "no location");
      auto at = lookup(total, *b.loc);
      if (!at) throw NonGroundWitness(b.display, to_string(BindingKey{*b.loc}));
      Term t = ground_value(b.display, apply(F, apply(sigma, *at)));
      if (b.from_goal) emit(WitnessPrinted{b.display, t.to_string()});
      run_induction_goal(sigma, total, substitute(goal.body(), b.var, t), F, emit);
      return;
    }
    default:
      return;
  }
}

class Machine {
 public:
  Machine(const ProofTree& tree, ChoiceSource& choices, const EventSink& emit)
      : tree_(tree), choices_(choices), emit_(emit) {}

  void run(std::size_t i) {
    const ProofNode& node = tree_.at(i);
    auto kids = tree_.children(i);
    switch (node.rule) {
      case Rule::ForallR:
        choose(node);
        break;
      case Rule::DefL: {
        if (kids.empty()) return;
        BranchChoice pick = select_branch(node, F_, E_);
        E_ = std::move(pick.agreement);
        run(kids.at(pick.child));
        return;
      }
      case Rule::Induction:
        induction(node, kids);
        return;
      case Rule::ExistsR:
        if (node.binder && node.binder->from_goal && node.witness) {
          const std::string& name = node.binder->display;
          Term t = ground_value(name, apply(E_, apply(F_, apply(node.result, *node.witness))));
          emit_(WitnessPrinted{name, t.to_string()});
        }
        break;
      default:
        break;
    }
    for (std::size_t c : kids) run(c);
  }

 private:
  void choose(const ProofNode& node) {
    std::string name = node.binder ? node.binder->display : node.eigen->to_string();
    ChoiceRequest req{name, "choose " + name + ":", node.nat_guarded};
    emit_(ChoiceRequested{req.var, req.prompt});
    while (true) {
      auto answer = choices_.next(req);
      if (!answer) throw ChoiceSourceExhausted(name);
      try {
        Term value = parse_choice(req, *answer);
        emit_(ChoiceMade{name, value.to_string()});
        F_.bind(*node.eigen, value);
        return;
      } catch (const InvalidChoice& e) {
        if (!choices_.retries()) throw;
        choices_.rejected(req, *answer, e.what());
      }
    }
  }

  void induction(const ProofNode& node, const std::vector<std::size_t>& kids) {
    Term bound = eval_arith(apply(F_, apply(E_, *node.induction_var)));
    if (!bound.is_nat()) {
      throw ExecutionError("unknown_bound",
                           "induction bound " + node.induction_var->to_string() + " is not known");
    }
    if (bound.value() == 0) {
      run(kids.at(0));
      return;
    }
    if (bound.value() > Natural(std::numeric_limits<std::size_t>::max() / (node.width + 1))) {
      throw ExecutionError("bound_too_large", "induction bound " + bound.to_string() + " is too large");
    }
    auto k = static_cast<std::size_t>(bound.value());
    const ProofNode& base = tree_.at(kids.at(0));
    const ProofNode& step = tree_.at(kids.at(1));
    Run total = build_delta_total(base.result, step.result, *node.step_var, k, node.width);
    exec_induction(node.sequent.sigma, total, step.sequent.goal, F_, emit_);
  }

  const ProofTree& tree_;
  ChoiceSource& choices_;
  const EventSink& emit_;
  Run F_;
  Run E_;
};

}  // namespace

void exec_induction(const Run& sigma, const Run& delta_total, const Formula& goal, const Run& F,
                    const EventSink& emit) {
  run_induction_goal(sigma, delta_total, goal, F, emit);
}

Transcript execute(const ProofTree& tree, ChoiceSource& choices, const EventSink& sink) {
  Transcript transcript;
  EventSink emit = [&](const Event& e) {
    transcript.events.push_back(e);
    if (sink) sink(e);
  };
  try {
    if (tree.size() == 0) throw ExecutionError("empty_tree", "empty proof tree");
    Machine(tree, choices, emit).run(tree.root_index());
    emit(Status{Status::Kind::Success, "", ""});
  } catch (const ExecutionError& e) {
    emit(Status{Status::Kind::Error, e.code(), e.what()});
  } catch (const std::exception& e) {
    emit(Status{Status::Kind::Error, "internal", e.what()});
  }
  return transcript;
}

}  // namespace pind
