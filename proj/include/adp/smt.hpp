#ifndef ADP_SMT_HPP
#define ADP_SMT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adp {

struct ConstraintSet;

struct SmtError : std::runtime_error {
  explicit SmtError(const std::string& what) : std::runtime_error(what) {}
};

// QF_NIA script for the constraint set: unknowns in [0, hi], all base
// inequalities, and "at least min_strict of the strict groups hold" via
// boolean selectors.
std::string emit_smtlib(const ConstraintSet& cs, int hi, int min_strict);

// Runs `command` with the script on stdin; expects sat/unsat plus a
// (get-value ...) answer. Returns the model as unknown-id -> value, or
// nullopt on unsat. Throws SmtError when the command misbehaves.
std::optional<std::vector<int>> smt_solve(const ConstraintSet& cs, int hi, int min_strict,
                                          const std::string& command);

}  // namespace adp

#endif
