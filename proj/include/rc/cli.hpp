#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "rc/json_io.hpp"

namespace rc::cli {

enum class Exit { Ok = 0, InputError = 1, Undecided = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  Mode mode = Mode::Rigorous;
  std::optional<Int> asymmetry_constant;
  int max_k = 8;
  std::optional<std::size_t> budget;
  std::optional<Int> box;
  std::optional<int> k;          // emit-milp
  std::optional<std::string> z;  // qelim universal variable
  bool exists = false;           // qelim: plain existential closure
  int threads = 1;
  std::optional<std::string> out;
};

struct Outcome {
  Exit code = Exit::Ok;
  Json result;
};

// Default budget, overridable through RCX_BUDGET.
std::size_t default_budget();

// Runs one subcommand. Input problems throw InputError or std::invalid_argument.
Outcome run(const RunConfig& c);

std::string render(const Json& j);

}  // namespace rc::cli
