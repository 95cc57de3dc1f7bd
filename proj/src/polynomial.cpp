#include "polycontain/polynomial.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace polycontain {

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw Error(ErrorCode::kArgument, "negative monomial exponent");
    degree_ += e;
  }
}

Monomial Monomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw Error(ErrorCode::kArgument, "variable index out of range");
  std::vector<int> e(num_vars, 0);
  e[index] = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.exps_.size() != exps_.size())
    throw Error(ErrorCode::kDimension, "monomial variable count mismatch");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

bool Monomial::operator<(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ < other.degree_;
  // Same degree: x1^2 comes before x1 z1 comes before z1^2.
  return std::lexicographical_compare(exps_.begin(), exps_.end(), other.exps_.begin(),
                                      other.exps_.end(), std::greater<int>());
}

std::string Monomial::to_string() const {
  const std::size_t n = exps_.size();
  const bool split = n % 2 == 0;
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += "·";
    if (split && i >= n / 2) out += "z" + std::to_string(i - n / 2 + 1);
    else out += "x" + std::to_string(i + 1);
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

MonomialBasis::MonomialBasis(std::size_t num_vars, int degree_bound)
    : num_vars_(num_vars), degree_bound_(degree_bound) {
  std::vector<int> e(num_vars, 0);
  // Compositions of each total degree in descending lexicographic order.
  std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int left) {
    if (pos + 1 == num_vars) {
      e[pos] = left;
      monomials_.emplace_back(e);
      e[pos] = 0;
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[pos] = v;
      fill(pos + 1, left - v);
    }
    e[pos] = 0;
  };
  for (int deg = 0; deg <= degree_bound; ++deg) {
    if (num_vars == 0) {
      if (deg == 0) monomials_.emplace_back(e);
      continue;
    }
    fill(0, deg);
  }
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t MonomialBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? monomials_.size() : it->second;
}

std::string coefficient_string(const Rational& c) { return to_string(c); }

std::string coefficient_string(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

}  // namespace polycontain
