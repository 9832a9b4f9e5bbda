#pragma once

#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "lambek/formula.hpp"

namespace lambek {

/// One acceptance case: run() returns pass/fail plus a short human detail.
struct ReproCase {
  std::string name;
  std::string summary;
  std::function<std::pair<bool, std::string>()> run;
};

const std::vector<ReproCase>& repro_cases();

/// Runs the selected cases (all when `only` is empty), printing one line per
/// case and a final tally; returns 0 iff every selected case passed.
/// Unknown names in `only` count as failures.
int run_repro(const std::vector<std::string>& only, std::ostream& out, bool json_output);

/// Random structural formula generator shared by the acceptance sweep and
/// the property tests. Connectives are drawn from `conns`; leaves from
/// `vars` (plus the unit when allow_unit).
Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars,
                       const std::vector<Conn>& conns, bool allow_unit = false);

Sequent random_sequent(std::mt19937_64& rng, int depth, int max_antecedent,
                       const std::vector<std::string>& vars, const std::vector<Conn>& conns,
                       bool allow_empty_antecedent, bool allow_unit = false);

}  // namespace lambek
