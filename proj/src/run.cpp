#include "pind/run.hpp"

#include <sstream>

namespace pind {

std::string to_string(const BindingKey& key) {
  if (const Term* t = std::get_if<Term>(&key)) return t->to_string();
  const auto& loc = std::get<LocKey>(key);
  std::ostringstream os;
  os << "loc(" << loc.base;
  if (!loc.path.empty()) {
    os << '@';
    for (std::size_t i = 0; i < loc.path.size(); ++i) {
      if (i) os << '.';
      os << loc.path[i];
    }
  }
  os << ')';
  return os.str();
}

Run::Run(std::initializer_list<Binding> bindings) {
  for (const auto& b : bindings) bind(b.key, b.value);
}

const Term* Run::find(const BindingKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &bindings_[it->second].value;
}

std::optional<std::size_t> Run::position(const BindingKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

// True if resolving `t` through `run` would reach `var`.
bool reaches(const Run& run, const Term& var, const Term& t) {
  if (t.ground()) return false;
  if (t.is_variable()) {
    if (t == var) return true;
    const Term* v = run.find(t);
    return v && reaches(run, var, *v);
  }
  for (const auto& a : t.args()) {
    if (reaches(run, var, a)) return true;
  }
  return false;
}

}  // namespace

void Run::bind(BindingKey key, Term value) {
  if (index_.count(key)) {
    throw std::logic_error("run already binds " + pind::to_string(key));
  }
  if (const Term* var = std::get_if<Term>(&key)) {
    if (!var->is_variable()) {
      throw std::logic_error("binding key is not a variable: " +
                             var->to_string());
    }
    if (reaches(*this, *var, value)) {
      throw std::logic_error("cyclic binding for " + var->to_string());
    }
  }
  index_.emplace(key, bindings_.size());
  bindings_.push_back(Binding{std::move(key), std::move(value)});
}

Run Run::filter(const std::function<bool(const Binding&)>& keep) const {
  Run out;
  for (const auto& b : bindings_) {
    if (keep(b)) {
      out.index_.emplace(b.key, out.bindings_.size());
      out.bindings_.push_back(b);
    }
  }
  return out;
}

void Run::truncate(std::size_t n) {
  while (bindings_.size() > n) {
    index_.erase(bindings_.back().key);
    bindings_.pop_back();
  }
}

Run Run::prefix(std::size_t n) const {
  Run out;
  for (std::size_t i = 0; i < n && i < bindings_.size(); ++i) {
    out.index_.emplace(bindings_[i].key, i);
    out.bindings_.push_back(bindings_[i]);
  }
  return out;
}

std::string Run::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    if (i) os << ',';
    os << '(' << pind::to_string(bindings_[i].key) << ','
       << bindings_[i].value << ')';
  }
  os << '}';
  return os.str();
}

bool operator==(const Run& a, const Run& b) {
  if (a.bindings_.size() != b.bindings_.size()) return false;
  for (std::size_t i = 0; i < a.bindings_.size(); ++i) {
    if (!(a.bindings_[i].key == b.bindings_[i].key) ||
        !(a.bindings_[i].value == b.bindings_[i].value)) {
      return false;
    }
  }
  return true;
}

Term apply(const Run& run, const Term& t) {
  if (run.empty() || t.ground()) return eval_arith(t);
  return map_variables(t, [&](const Term& v) -> std::optional<Term> {
    if (const Term* value = run.find(v)) return apply(run, *value);
    return std::nullopt;
  });
}

std::optional<Term> lookup(const Run& run, const BindingKey& key) {
  if (const Term* v = run.find(key)) return apply(run, *v);
  return std::nullopt;
}

Run resolve(const Run& run) {
  Run out;
  for (const auto& b : run) out.bind(b.key, apply(run, b.value));
  return out;
}

Run compose(const Run& newer, const Run& older) {
  Run merged = older;
  std::vector<const Binding*> shared;
  for (const auto& b : newer) {
    if (merged.contains(b.key)) {
      shared.push_back(&b);
      continue;
    }
    try {
      merged.bind(b.key, b.value);
    } catch (const std::logic_error& e) {
      throw CompositionConflict(e.what());
    }
  }
  for (const Binding* b : shared) {
    Term mine = apply(merged, *merged.find(b->key));
    Term theirs = apply(merged, b->value);
    if (!(mine == theirs)) {
      throw CompositionConflict("conflicting values for " + to_string(b->key) +
                                ": " + mine.to_string() + " vs " +
                                theirs.to_string());
    }
  }
  return resolve(merged);
}

namespace {

Term shift_term(const Term& t, const Term& step_var, std::size_t step,
                std::size_t width) {
  return map_variables(t, [&](const Term& v) -> std::optional<Term> {
    if (v == step_var) return Term::nat(static_cast<unsigned long long>(step));
    if (v.is_witness()) return Term::indexed("w", v.index() + step * width);
    return std::nullopt;
  });
}

}  // namespace

Run shift(const Run& delta, const Term& step_var, std::size_t step,
          std::size_t width) {
  Run out;
  for (const auto& b : delta) {
    BindingKey key = b.key;
    if (const Term* var = std::get_if<Term>(&b.key)) {
      if (*var == step_var) continue;
      if (var->is_witness()) {
        key = Term::indexed("w", var->index() + step * width);
      }
    } else {
      auto loc = std::get<LocKey>(b.key);
      loc.path.push_back(step);
      key = loc;
    }
    out.bind(std::move(key), shift_term(b.value, step_var, step, width));
  }
  return out;
}

Run unshift(const Run& run, std::size_t steps, std::size_t width) {
  if (steps == 0) return run;
  const std::size_t offset = (steps - 1) * width;
  auto back = [&](const Term& t) {
    return map_variables(t, [&](const Term& v) -> std::optional<Term> {
      if (v.is_witness() && v.index() >= offset) {
        return Term::indexed("w", v.index() - offset);
      }
      return std::nullopt;
    });
  };
  Run out;
  for (const auto& b : run) {
    BindingKey key = b.key;
    if (const Term* var = std::get_if<Term>(&b.key)) {
      if (var->is_witness()) {
        if (var->index() < offset + width) continue;
        key = Term::indexed("w", var->index() - offset);
      }
    } else {
      auto loc = std::get<LocKey>(b.key);
      if (loc.path.empty() || loc.path.back() != steps - 1) continue;
      loc.path.pop_back();
      key = loc;
    }
    out.bind(std::move(key), back(b.value));
  }
  return out;
}

}  // namespace pind
