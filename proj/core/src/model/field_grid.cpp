#include "lightcone/model/field_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lightcone/error.hpp"

namespace lightcone::model {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ArgumentError(std::string(name) + " must be finite and positive");
  }
}

}  // namespace

FieldGrid FieldGrid::build(int mode_count, double k_max, double speed, double normalization) {
  if (mode_count < 2 || mode_count % 2 != 0) {
    throw ArgumentError("mode_count must be even and at least 2 (got " + std::to_string(mode_count) + ")");
  }
  require_positive(k_max, "k_max");
  require_positive(speed, "speed");
  require_positive(normalization, "normalization");

  FieldGrid g;
  g.k_max_ = k_max;
  g.speed_ = speed;
  g.normalization_ = normalization;
  g.dk_ = 2.0 * k_max / mode_count;

  const int half = mode_count / 2;
  g.momenta_.reserve(mode_count);
  for (int n = half; n >= 1; --n) g.momenta_.push_back(-n * g.dk_);
  for (int n = 1; n <= half; ++n) g.momenta_.push_back(n * g.dk_);

  for (double k : g.momenta_) {
    const double w = speed * std::abs(k);
    g.frequencies_.push_back(w);
    // (N·ω)·Δk in this order: scaling N by 4 then scales the radicand exactly.
    g.couplings_.push_back(std::sqrt(normalization * w * g.dk_));
  }
  return g;
}

double FieldGrid::box_length() const { return 2.0 * std::numbers::pi / dk_; }

}  // namespace lightcone::model
