#pragma once

#include "groupform/random.hpp"

namespace groupform {

/// Ornstein-Uhlenbeck exploration noise: x += theta*(mu - x) + sigma*N(0,1).
class OuNoise {
 public:
  OuNoise() = default;
  OuNoise(double mu, double theta, double sigma) : mu_(mu), theta_(theta), sigma_(sigma), x_(mu) {}

  double sample(Rng& rng) {
    x_ += theta_ * (mu_ - x_) + sigma_ * standard_normal(rng);
    return x_;
  }

  void reset() { x_ = mu_; }

  double mu() const { return mu_; }
  double theta() const { return theta_; }
  double sigma() const { return sigma_; }
  double value() const { return x_; }

  void set_sigma(double sigma) { sigma_ = sigma; }
  void set_value(double x) { x_ = x; }

 private:
  double mu_ = 0.0;
  double theta_ = 0.15;
  double sigma_ = 0.2;
  double x_ = 0.0;
};

}  // namespace groupform
