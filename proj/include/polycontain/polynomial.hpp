#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "polycontain/error.hpp"
#include "polycontain/rational.hpp"

namespace polycontain {

/// Exponent vector over the variables x1..xd, z1..zd (x block first).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial one(std::size_t num_vars) { return Monomial(std::vector<int>(num_vars, 0)); }
  static Monomial variable(std::size_t num_vars, std::size_t index);

  const std::vector<int>& exponents() const { return exps_; }
  std::size_t num_vars() const { return exps_.size(); }
  int degree() const { return degree_; }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

  /// Graded lexicographic: lower degree first, then larger leading exponent first.
  bool operator<(const Monomial& other) const;

  std::string to_string() const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// All monomials of total degree <= degree_bound in graded-lex order.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(std::size_t num_vars, int degree_bound);

  std::size_t num_vars() const { return num_vars_; }
  int degree_bound() const { return degree_bound_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  /// Position of m, or size() when absent.
  std::size_t index_of(const Monomial& m) const;

 private:
  std::size_t num_vars_ = 0;
  int degree_bound_ = 0;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
};

inline MonomialBasis basis(std::size_t num_vars, int degree) {
  if (degree < 0) throw Error(ErrorCode::kArgument, "monomial basis degree must be >= 0");
  return MonomialBasis(num_vars, degree);
}

std::string coefficient_string(const Rational& c);
std::string coefficient_string(double c);

/// Sparse polynomial; T is Rational (exact) or double (residual checks).
template <class T>
class Polynomial {
 public:
  using Terms = std::map<Monomial, T>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const T& c) {
    Polynomial p(num_vars);
    p.add_term(Monomial::one(num_vars), c);
    return p;
  }
  static Polynomial variable(std::size_t num_vars, std::size_t index) {
    Polynomial p(num_vars);
    p.add_term(Monomial::variable(num_vars, index), T(1));
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  T coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(const Monomial& m, const T& c) {
    if (m.num_vars() != num_vars_) throw Error(ErrorCode::kDimension, "monomial variable count mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, T(-c));
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return *this * T(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.num_vars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  bool operator==(const Polynomial& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }

  /// "c·x1^a·z2^b + ..." in graded-lex order; "0" for the zero polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool negative = c < 0;
      const T mag = negative ? T(-c) : c;
      if (first) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      first = false;
      const bool unit = mag == 1;
      if (m.degree() == 0) out += coefficient_string(mag);
      else if (unit) out += m.to_string();
      else out += coefficient_string(mag) + "·" + m.to_string();
    }
    return out;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw Error(ErrorCode::kDimension, "polynomial variable count mismatch");
  }

  std::size_t num_vars_;
  Terms terms_;
};

using RationalPolynomial = Polynomial<Rational>;
using RealPolynomial = Polynomial<double>;

/// Affine polynomial c0 + sum_j coeffs[j] * var(offset + j) in num_vars variables.
template <class T>
Polynomial<T> affine_polynomial(std::size_t num_vars, const T& c0, const std::vector<T>& coeffs,
                                std::size_t offset) {
  Polynomial<T> p = Polynomial<T>::constant(num_vars, c0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) p.add_term(Monomial::variable(num_vars, offset + j), coeffs[j]);
  return p;
}

/// Symmetric matrix over a monomial basis: the quadratic form [m]^T G [m].
template <class T>
struct GramForm {
  MonomialBasis basis;
  std::vector<T> matrix;  // row-major, basis.size() squared

  GramForm() = default;
  GramForm(MonomialBasis b, std::vector<T> m) : basis(std::move(b)), matrix(std::move(m)) {
    if (matrix.size() != basis.size() * basis.size())
      throw Error(ErrorCode::kDimension, "Gram matrix size does not match its basis");
  }
  std::size_t size() const { return basis.size(); }
  const T& operator()(std::size_t i, std::size_t j) const { return matrix[i * basis.size() + j]; }
  T& operator()(std::size_t i, std::size_t j) { return matrix[i * basis.size() + j]; }
};

template <class T>
Polynomial<T> gram_to_poly(const GramForm<T>& g) {
  const std::size_t n = g.size();
  Polynomial<T> out(g.basis.num_vars());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j) == 0) continue;
      out.add_term(g.basis[i] * g.basis[j], g(i, j));
    }
  }
  return out;
}

}  // namespace polycontain
