#pragma once

namespace fracheat::model {

// One problem instance: dimension, Riesz exponent, fractional-Laplacian order,
// temporal Hurst index, and the initial-condition bounds a <= u0 <= b.
struct ModelParams {
  int d = 1;
  double alpha = 0.5;
  double beta = 2.0;
  double hurst = 0.75;
  double a = 1.0;
  double b = 1.0;
};

// Throws std::invalid_argument listing every violated constraint.
ModelParams validate(const ModelParams& p);

struct ExponentSet {
  double rho;         // (2 H beta - alpha) / (beta - alpha)
  bool rho_defined;   // alpha < beta
  double delta;       // (2 H beta - alpha) / (2 beta - alpha)
  bool delta_defined; // alpha < 2 H beta
  double alpha_h;     // H (2H - 1)
  double beta_h;      // alpha_h 2^{2H-2}
  double m;           // alpha / beta
  double h;           // 1 - alpha / beta
};
ExponentSet exponents(const ModelParams& p);

// alpha < beta: existence of the mild solution.
bool existence_condition(const ModelParams& p);

// alpha < 2 H beta: finiteness of the first chaos coefficient and of E L(t).
bool necessity_precondition(const ModelParams& p);

}  // namespace fracheat::model
