#include "adp/poly.hpp"

#include <stdexcept>

namespace adp {

Poly Poly::constant(Rational c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(const std::string& x) {
  Poly p;
  p.add_term({{x, 1}}, Rational(1));
  return p;
}

Rational Poly::constant_coeff() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [x, e] : m2) m[x] += e;
      out.add_term(m, c1 * c2);
    }
  }
  return out;
}

Poly Poly::scaled(const Rational& c) const {
  Poly out;
  for (const auto& [m, k] : terms_) out.add_term(m, k * c);
  return out;
}

Rational Poly::eval(const std::map<std::string, Rational>& assignment) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (const auto& [x, e] : m) {
      auto it = assignment.find(x);
      Rational base = it == assignment.end() ? Rational(0) : it->second;
      for (int i = 0; i < e; ++i) v *= base;
    }
    total += v;
  }
  return total;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string mono;
    for (const auto& [x, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += x;
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      s += c.str();
    else if (c == Rational(1))
      s += mono;
    else
      s += c.str() + "*" + mono;
  }
  return s;
}

bool abs_pos_geq(const Poly& p, const Poly& q) {
  Poly d = p - q;
  for (const auto& [m, c] : d.terms()) {
    (void)m;
    if (c < Rational(0)) return false;
  }
  return true;
}

bool abs_pos_gt(const Poly& p, const Poly& q) {
  return abs_pos_geq(p, q) && (p - q).constant_coeff() >= Rational(1);
}

SymPoly SymPoly::constant(int arity, std::int64_t c) {
  SymPoly s{arity, {}};
  if (c != 0) s.coeffs[0] = c;
  return s;
}

SymPoly SymPoly::linear(int arity, std::int64_t c0, std::vector<std::int64_t> cs) {
  if (static_cast<int>(cs.size()) != arity)
    throw std::invalid_argument("linear template arity mismatch");
  SymPoly s{arity, {}};
  if (c0 != 0) s.coeffs[0] = c0;
  for (int i = 0; i < arity; ++i)
    if (cs[i] != 0) s.coeffs[1u << i] = cs[i];
  return s;
}

Poly SymPoly::instantiate(const std::vector<Poly>& args) const {
  if (static_cast<int>(args.size()) != arity)
    throw std::invalid_argument("interpretation applied to wrong argument count");
  Poly out;
  for (const auto& [mask, c] : coeffs) {
    Poly term = Poly::constant(Rational(c));
    for (int i = 0; i < arity; ++i)
      if (mask & (1u << i)) term = term * args[i];
    out = out + term;
  }
  return out;
}

std::string SymPoly::str(const std::string& symbol) const {
  std::string s = symbol + " -> ";
  if (coeffs.empty()) return s + "0";
  bool first = true;
  for (const auto& [mask, c] : coeffs) {
    if (!first) s += " + ";
    first = false;
    std::string mono;
    for (int i = 0; i < arity; ++i)
      if (mask & (1u << i)) {
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
      }
    if (mono.empty())
      s += std::to_string(c);
    else if (c == 1)
      s += mono;
    else
      s += std::to_string(c) + "*" + mono;
  }
  return s;
}

const SymPoly* PolyInterp::find(const std::string& symbol, bool annotated) const {
  auto it = entries.find({symbol, annotated});
  return it == entries.end() ? nullptr : &it->second;
}

std::string PolyInterp::str() const {
  std::string s;
  for (const auto& [key, sp] : entries) {
    if (!s.empty()) s += "; ";
    s += sp.str(key.second ? key.first + "#" : key.first);
  }
  return s;
}

Poly eval_term(const PolyInterp& pol, const Term& t) {
  if (t.is_var()) return Poly::variable(t.name());
  std::vector<Poly> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(eval_term(pol, a));
  const SymPoly* sp = pol.find(t.name(), t.annotated());
  if (!sp) return Poly();
  return sp->instantiate(args);
}

Poly sharp_sum(const PolyInterp& pol, const Term& r) {
  Poly total;
  for (const auto& [pos, sub] : annotated_subterms(r)) {
    (void)pos;
    total = total + eval_term(pol, sub.with_annotation(true));
  }
  return total;
}

}  // namespace adp
