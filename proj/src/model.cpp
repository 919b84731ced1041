#include "fracheat/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracheat::model {

ModelParams validate(const ModelParams& p) {
  std::string errors;
  auto flag = [&](const std::string& msg) {
    if (!errors.empty()) errors += "; ";
    errors += msg;
  };
  if (p.d < 1) flag("d must be a positive integer");
  if (!(p.alpha > 0.0)) flag("alpha must be positive");
  if (p.d >= 1 && !(p.alpha < p.d)) flag("alpha must be < d");
  if (!(p.beta > 0.0 && p.beta <= 2.0)) flag("beta must lie in (0, 2]");
  if (!(p.hurst > 0.5)) flag("hurst must exceed 1/2");
  if (!(p.hurst < 1.0)) flag("hurst must be < 1");
  if (!(p.a > 0.0)) flag("a must be positive");
  if (!(p.b >= p.a)) flag("b must be >= a");
  if (!errors.empty()) throw std::invalid_argument("invalid parameters: " + errors);
  return p;
}

ExponentSet exponents(const ModelParams& p) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ExponentSet e{};
  e.alpha_h = p.hurst * (2.0 * p.hurst - 1.0);
  e.beta_h = e.alpha_h * std::exp2(2.0 * p.hurst - 2.0);
  e.m = p.alpha / p.beta;
  e.h = 1.0 - e.m;
  e.rho_defined = p.alpha < p.beta;
  e.rho = e.rho_defined ? (2.0 * p.hurst * p.beta - p.alpha) / (p.beta - p.alpha) : nan;
  e.delta_defined = p.alpha < 2.0 * p.hurst * p.beta;
  e.delta = e.delta_defined ? (2.0 * p.hurst * p.beta - p.alpha) / (2.0 * p.beta - p.alpha) : nan;
  return e;
}

bool existence_condition(const ModelParams& p) { return p.alpha < p.beta; }

bool necessity_precondition(const ModelParams& p) { return p.alpha < 2.0 * p.hurst * p.beta; }

}  // namespace fracheat::model
