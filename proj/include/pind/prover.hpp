#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pind/formula.hpp"
#include "pind/parser.hpp"
#include "pind/proof_tree.hpp"
#include "pind/unify.hpp"

namespace pind {

class ProofFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchLimitExceeded : public std::runtime_error {
 public:
  explicit SearchLimitExceeded(std::size_t limit)
      : std::runtime_error("search limit of " + std::to_string(limit) +
                           " rule applications exceeded"),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

struct ProverOptions {
  std::size_t node_limit = 100000;
  // Stack reserved for the search thread, in bytes.
  std::size_t stack_size = std::size_t(1) << 30;
};

// Per-search source of fresh names. Clause variables of the c-th clause
// instance become X_c.
struct FreshNames {
  std::size_t eigen = 0;
  std::size_t witness = 0;
  std::size_t clause = 0;
  std::size_t step = 0;
};

struct ClauseInstance {
  Run theta;     // bindings the head unification added
  Formula body;  // renamed apart
  std::size_t clause_index = 0;
};

// Every clause whose renamed head unifies with `atom` under `run`, in
// program order. `theta` holds only the new bindings.
std::vector<ClauseInstance> enumerate_definitions(const Term& atom, const Run& run,
                                                  const Program& program,
                                                  FreshNames& fresh,
                                                  Rigidity rigid = {});

class Prover {
 public:
  explicit Prover(Program program, ProverOptions options = {})
      : program_(std::move(program)), options_(options) {}

  // Builds the proof tree of `goal`. Throws ProofFailure or
  // SearchLimitExceeded.
  ProofTree prove(const Formula& goal) const;

  const Program& program() const { return program_; }

 private:
  Program program_;
  ProverOptions options_;
};

}  // namespace pind
