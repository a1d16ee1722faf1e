#pragma once

namespace parareal::num {

/// Constants of the substitution V(S,t) = E e^{-alpha x - beta^2 tau} u(x,tau),
/// x = ln(S/E), tau = (T - t) sigma^2 / 2, which maps Black-Scholes onto
/// u_tau = u_xx.
struct TransformConstants {
  double kappa = 0.0;  // 2r / sigma^2
  double alpha = 0.0;  // (kappa - 1) / 2
  double beta = 0.0;   // (kappa + 1) / 2
};

/// Throws std::invalid_argument if sigma <= 0.
TransformConstants transform_constants(double rate, double sigma);

/// Transformed call payoff max(e^{beta x} - e^{alpha x}, 0).
double payoff_transformed(double x, const TransformConstants& c);

enum class BoundarySide { left, right };

/// Dirichlet data for the transformed call: 0 on the left, and on the right
/// the exact heat evolution of the two payoff exponentials,
/// e^{beta x + beta^2 tau} - e^{alpha x + alpha^2 tau}.
double boundary_value(BoundarySide side, double x, double tau, const TransformConstants& c);

/// Maps a heat-equation value back to an option price: E e^{-alpha x - beta^2 tau} u.
double invert_transform(double u, double x, double tau, double strike,
                        const TransformConstants& c);

}  // namespace parareal::num
