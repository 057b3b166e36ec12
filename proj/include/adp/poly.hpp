#ifndef ADP_POLY_HPP
#define ADP_POLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "adp/rational.hpp"
#include "adp/term.hpp"

namespace adp {

// Polynomial over named variables with exact rational coefficients.
// Monomials map variable names to exponents >= 1.
class Poly {
 public:
  using Monomial = std::map<std::string, int>;

  Poly() = default;
  static Poly constant(Rational c);
  static Poly variable(const std::string& x);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational constant_coeff() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  Rational eval(const std::map<std::string, Rational>& assignment) const;
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;  // no zero coefficients stored
};

// All coefficients of p - q nonnegative: p >= q for every assignment of
// naturals. The strict variant additionally needs a positive constant part.
bool abs_pos_geq(const Poly& p, const Poly& q);
bool abs_pos_gt(const Poly& p, const Poly& q);

// Multilinear polynomial template for one symbol: monomials are subsets of
// the argument placeholders (bitmask), coefficients natural numbers.
struct SymPoly {
  int arity = 0;
  std::map<std::uint32_t, std::int64_t> coeffs;  // mask -> coefficient, no zeros

  static SymPoly zero(int arity) { return {arity, {}}; }
  static SymPoly constant(int arity, std::int64_t c);
  static SymPoly linear(int arity, std::int64_t c0, std::vector<std::int64_t> cs);

  Poly instantiate(const std::vector<Poly>& args) const;
  std::string str(const std::string& symbol) const;
  bool operator==(const SymPoly& o) const { return arity == o.arity && coeffs == o.coeffs; }
};

// Interpretation: one multilinear polynomial per (symbol, annotated) pair.
struct PolyInterp {
  std::map<std::pair<std::string, bool>, SymPoly> entries;

  const SymPoly* find(const std::string& symbol, bool annotated) const;
  std::string str() const;
};

// Homomorphic evaluation; annotated occurrences use the annotated-symbol
// polynomial. Missing symbols evaluate to zero.
Poly eval_term(const PolyInterp& pol, const Term& t);

// Sum of the interpretations of all annotated subterms (each taken with the
// annotated polynomial of its root, arguments flattened).
Poly sharp_sum(const PolyInterp& pol, const Term& r);

}  // namespace adp

#endif
