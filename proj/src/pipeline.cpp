#include "carleman/pipeline.hpp"

namespace carleman {

namespace {

Pipeline assemble(const PowerSeries& f, FixedPointFrame frame, const PipelineOptions& options) {
  if (options.dim < 2) throw Error(ErrorCode::InvalidArgument, "pipeline: dimension must be at least 2");
  Pipeline p;
  p.frame = std::move(frame);
  p.m = build_matrix(f, options.dim);
  p.mg = shift_conjugate(p.m, p.frame, options.spectral.tol_tri);
  p.spectral = diagonalize(p.mg, p.frame, options.spectral);
  p.chart = build_chart(p.spectral, p.frame, options.chart);
  p.expansion = build_expansion(p.spectral, p.frame, options.k_max, options.chart);
  return p;
}

}  // namespace

Pipeline build_pipeline(const PowerSeries& f, Complex guess, const PipelineOptions& options) {
  return assemble(f, find_fixed_point(f, guess, options.fixed_point), options);
}

Pipeline build_pipeline_at(const PowerSeries& f, Complex x_star, const PipelineOptions& options) {
  return assemble(f, make_frame(f, x_star, options.fixed_point), options);
}

}  // namespace carleman
