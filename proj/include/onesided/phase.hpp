#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "onesided/errors.hpp"

namespace onesided {

/// Real polynomial P(x, y) = sum a_{alpha beta} x^alpha y^beta, stored sparsely.
class PolynomialPhase {
 public:
  using Monomial = std::pair<int, int>;

  PolynomialPhase() = default;

  explicit PolynomialPhase(std::map<Monomial, double> coeffs) {
    for (const auto& [m, a] : coeffs) {
      if (m.first < 0 || m.second < 0) throw DomainError("phase: negative monomial degree");
      if (!std::isfinite(a)) throw DomainError("phase: non-finite coefficient");
      if (a != 0.0) coeffs_[m] = a;
    }
  }

  /// a * x^k * y^l.
  static PolynomialPhase monomial(double a, int k, int l) { return PolynomialPhase({{{k, l}, a}}); }

  [[nodiscard]] const std::map<Monomial, double>& coeffs() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }

  [[nodiscard]] double coeff(int alpha, int beta) const {
    const auto it = coeffs_.find({alpha, beta});
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  /// Largest x-degree among nonzero monomials.
  [[nodiscard]] int k() const {
    int d = 0;
    for (const auto& [m, a] : coeffs_) d = std::max(d, m.first);
    return d;
  }
  /// Largest y-degree among nonzero monomials.
  [[nodiscard]] int l() const {
    int d = 0;
    for (const auto& [m, a] : coeffs_) d = std::max(d, m.second);
    return d;
  }
  [[nodiscard]] int total_degree() const {
    int d = 0;
    for (const auto& [m, a] : coeffs_) d = std::max(d, m.first + m.second);
    return d;
  }

  [[nodiscard]] double operator()(double x, double y) const {
    double s = 0.0;
    for (const auto& [m, a] : coeffs_) s += a * std::pow(x, m.first) * std::pow(y, m.second);
    return s;
  }

  [[nodiscard]] double dy(double x, double y) const {
    double s = 0.0;
    for (const auto& [m, a] : coeffs_) {
      if (m.second == 0) continue;
      s += a * m.second * std::pow(x, m.first) * std::pow(y, m.second - 1);
    }
    return s;
  }

  [[nodiscard]] double dyy(double x, double y) const {
    double s = 0.0;
    for (const auto& [m, a] : coeffs_) {
      if (m.second < 2) continue;
      s += a * m.second * (m.second - 1) * std::pow(x, m.first) * std::pow(y, m.second - 2);
    }
    return s;
  }

  /// For phases of degree <= 1 in y, P(x, y) = A(x) + B(x) y; returns {A(x), B(x)}.
  [[nodiscard]] std::pair<double, double> linear_in_y(double x) const {
    double a0 = 0.0;
    double b0 = 0.0;
    for (const auto& [m, a] : coeffs_) {
      const double t = a * std::pow(x, m.first);
      if (m.second == 0) {
        a0 += t;
      } else {
        b0 += t;
      }
    }
    return {a0, b0};
  }

  /// Coefficients scaled by factor^{-(alpha+beta)}: Q(factor x, factor y) = P(x, y).
  [[nodiscard]] PolynomialPhase rescaled(double factor) const {
    std::map<Monomial, double> out;
    for (const auto& [m, a] : coeffs_) out[m] = a * std::pow(factor, -(m.first + m.second));
    return PolynomialPhase(std::move(out));
  }

  friend PolynomialPhase operator+(const PolynomialPhase& p, const PolynomialPhase& q) {
    auto c = p.coeffs_;
    for (const auto& [m, a] : q.coeffs_) c[m] += a;
    return PolynomialPhase(std::move(c));
  }

 private:
  std::map<Monomial, double> coeffs_;
};

/// Scaling lambda = |a_kl|^{1/(k+l)} of the leading monomial and the
/// normalized phase Q with Q(lambda x, lambda y) = P(x, y).
struct NormalizedPhase {
  double lambda = 1.0;
  PolynomialPhase q;
};

inline NormalizedPhase normalize_phase(const PolynomialPhase& phase) {
  const int k = phase.k();
  const int l = phase.l();
  const double a = phase.coeff(k, l);
  if (a == 0.0) throw DomainError("normalize_phase: leading coefficient a_kl vanishes");
  if (k + l < 1) throw DomainError("normalize_phase: need k + l >= 1");
  const double lambda = std::pow(std::abs(a), 1.0 / (k + l));
  return {lambda, phase.rescaled(lambda)};
}

}  // namespace onesided
