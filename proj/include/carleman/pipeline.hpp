#pragma once

#include "carleman/iterate.hpp"

namespace carleman {

struct PipelineOptions {
  int dim = kDefaultOrder;
  FixedPointOptions fixed_point;
  SpectralOptions spectral;
  ChartOptions chart;
  /// Negative means dim - 1.
  int k_max = -1;
};

/// Everything derived from one map and one fixed point.
struct Pipeline {
  FixedPointFrame frame;
  CarlemanMatrix m;
  CarlemanMatrix mg;
  SpectralFactorization spectral;
  SchroederChart chart;
  IterateExpansion expansion;
};

/// Locates the fixed point from `guess` by Newton's method and runs the chain
/// build_matrix -> shift_conjugate -> diagonalize -> build_chart / build_expansion.
Pipeline build_pipeline(const PowerSeries& f, Complex guess, const PipelineOptions& options = {});

/// Same, at a fixed point that is already known.
Pipeline build_pipeline_at(const PowerSeries& f, Complex x_star, const PipelineOptions& options = {});

}  // namespace carleman
