#pragma once

#include <fftw3.h>

#include <vector>

#include "cylnls/field.hpp"

namespace cylnls {

/// Owns the FFTW plans of one grid, created once under a global planner lock
/// (FFTW planning is not thread-safe) with FFTW_UNALIGNED so they execute on
/// any caller buffer; execution itself is thread-safe.
class TransformEngine {
 public:
  explicit TransformEngine(const CylinderGrid& grid);
  ~TransformEngine();

  TransformEngine(const TransformEngine&) = delete;
  TransformEngine& operator=(const TransformEngine&) = delete;

  void run_y(std::vector<Complex>& values, bool forward);
  void run_x(std::vector<Complex>& values, bool forward);

 private:
  int d_;
  int n_y_;
  int n_x_;
  double scale_y_;  // N_y^(-d/2)
  double scale_x_;  // N_x^(-1/2)
  fftw_plan y_fwd_ = nullptr;
  fftw_plan y_bwd_ = nullptr;
  fftw_plan x_fwd_ = nullptr;
  fftw_plan x_bwd_ = nullptr;
};

}  // namespace cylnls
