#include "adp/smt.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "adp/redpair.hpp"

namespace adp {

namespace {

std::string upoly_sexpr(const UPoly& p, const ConstraintSet& cs) {
  if (p.terms().empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (c != 1 || m.empty()) factors.push_back(std::to_string(c));
    for (int id : m) factors.push_back(cs.unknowns[id].name());
    if (factors.size() == 1)
      parts.push_back(factors[0]);
    else {
      std::string s = "(*";
      for (const std::string& f : factors) s += " " + f;
      parts.push_back(s + ")");
    }
  }
  if (parts.size() == 1) return parts[0];
  std::string s = "(+";
  for (const std::string& t : parts) s += " " + t;
  return s + ")";
}

std::string ineq_sexpr(const Ineq& iq, const ConstraintSet& cs) {
  return "(>= " + upoly_sexpr(iq.expr, cs) + " " + std::to_string(iq.lb) + ")";
}

}  // namespace

std::string emit_smtlib(const ConstraintSet& cs, int hi, int min_strict) {
  std::ostringstream out;
  out << "(set-logic QF_NIA)\n";
  for (const Unknown& u : cs.unknowns) {
    out << "(declare-const " << u.name() << " Int)\n";
    out << "(assert (and (>= " << u.name() << " 0) (<= " << u.name() << " " << hi << ")))\n";
  }
  for (const Ineq& iq : cs.base) out << "; " << iq.tag << "\n(assert " << ineq_sexpr(iq, cs) << ")\n";
  std::vector<std::string> selectors;
  for (std::size_t g = 0; g < cs.strict.size(); ++g) {
    std::string sel = "strict_" + std::to_string(cs.strict[g].adp_index);
    selectors.push_back(sel);
    out << "(declare-const " << sel << " Bool)\n";
    std::string disj = "(or";
    for (const StrictOption& opt : cs.strict[g].options) {
      std::string conj = "(and true";
      for (const Ineq& iq : opt.ineqs) conj += " " + ineq_sexpr(iq, cs);
      disj += " " + conj + ")";
    }
    disj += ")";
    out << "(assert (=> " << sel << " " << disj << "))\n";
  }
  out << "(assert (>= (+ 0";
  for (const std::string& sel : selectors) out << " (ite " << sel << " 1 0)";
  out << ") " << min_strict << "))\n";
  out << "(check-sat)\n(get-value (";
  for (std::size_t i = 0; i < cs.unknowns.size(); ++i)
    out << (i ? " " : "") << cs.unknowns[i].name();
  out << "))\n";
  return out.str();
}

namespace {

std::string run_command(const std::string& command, const std::string& input) {
  char script_path[] = "/tmp/adp_smt_in_XXXXXX";
  char out_path[] = "/tmp/adp_smt_out_XXXXXX";
  int fd1 = mkstemp(script_path);
  int fd2 = mkstemp(out_path);
  if (fd1 < 0 || fd2 < 0) throw SmtError("cannot create temporary files");
  {
    std::ofstream f(script_path);
    f << input;
  }
  std::string cmd = command + " < " + script_path + " > " + std::string(out_path) + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream f(out_path);
  std::ostringstream ss;
  ss << f.rdbuf();
  std::remove(script_path);
  std::remove(out_path);
  if (rc != 0 && ss.str().find("unsat") == std::string::npos)
    throw SmtError("solver command failed: " + command + "\n" + ss.str());
  return ss.str();
}

}  // namespace

std::optional<std::vector<int>> smt_solve(const ConstraintSet& cs, int hi, int min_strict,
                                          const std::string& command) {
  std::string script = emit_smtlib(cs, hi, min_strict);
  std::string output = run_command(command, script);
  if (output.find("unsat") != std::string::npos) return std::nullopt;
  if (output.find("sat") == std::string::npos)
    throw SmtError("unexpected solver answer:\n" + output);

  // Parse the (get-value ...) pairs: "(name value)" with value a numeral or
  // "(- numeral)".
  std::vector<int> model(cs.unknowns.size(), 0);
  for (std::size_t i = 0; i < cs.unknowns.size(); ++i) {
    const std::string name = cs.unknowns[i].name();
    std::size_t at = output.find("(" + name + " ");
    if (at == std::string::npos) throw SmtError("missing model value for " + name);
    std::size_t v = at + name.size() + 2;
    bool neg = false;
    while (v < output.size() && (output[v] == '(' || output[v] == '-' || output[v] == ' ')) {
      if (output[v] == '-') neg = true;
      ++v;
    }
    int value = 0;
    while (v < output.size() && std::isdigit(static_cast<unsigned char>(output[v])))
      value = value * 10 + (output[v++] - '0');
    model[i] = neg ? -value : value;
  }
  return model;
}

}  // namespace adp
