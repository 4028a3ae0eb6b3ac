#include "cylnls/transforms.hpp"

#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/transforms_impl.hpp"

namespace cylnls {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::vector<Complex>& v) {
  return reinterpret_cast<fftw_complex*>(v.data());
}

}  // namespace

TransformEngine::TransformEngine(const CylinderGrid& grid)
    : d_(grid.d),
      n_y_(grid.N_y),
      n_x_(grid.N_x),
      scale_y_(std::pow(static_cast<double>(grid.N_y), -0.5 * grid.d)),
      scale_x_(1.0 / std::sqrt(static_cast<double>(grid.N_x))) {
  // All plans built up front under the planner lock; FFTW_UNALIGNED lets them
  // execute on whatever buffer the caller hands in later.
  std::lock_guard<std::mutex> lock(planner_mutex());
  std::vector<Complex> scratch(grid.size());
  int ny[2] = {n_y_, n_y_};
  int nx[1] = {n_x_};
  const int y_flat = static_cast<int>(grid.y_count());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  // Transverse axes: stride N_x between consecutive points of the last axis,
  // one transform per torus index.
  y_fwd_ = fftw_plan_many_dft(d_, ny, n_x_, as_fftw(scratch), nullptr, n_x_, 1,
                              as_fftw(scratch), nullptr, n_x_, 1, FFTW_FORWARD,
                              flags);
  y_bwd_ = fftw_plan_many_dft(d_, ny, n_x_, as_fftw(scratch), nullptr, n_x_, 1,
                              as_fftw(scratch), nullptr, n_x_, 1, FFTW_BACKWARD,
                              flags);
  // Torus axis: contiguous lines, one per transverse point.
  x_fwd_ = fftw_plan_many_dft(1, nx, y_flat, as_fftw(scratch), nullptr, 1, n_x_,
                              as_fftw(scratch), nullptr, 1, n_x_, FFTW_FORWARD,
                              flags);
  x_bwd_ = fftw_plan_many_dft(1, nx, y_flat, as_fftw(scratch), nullptr, 1, n_x_,
                              as_fftw(scratch), nullptr, 1, n_x_, FFTW_BACKWARD,
                              flags);
}

TransformEngine::~TransformEngine() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  for (fftw_plan p : {y_fwd_, y_bwd_, x_fwd_, x_bwd_}) {
    if (p != nullptr) fftw_destroy_plan(p);
  }
}

void TransformEngine::run_y(std::vector<Complex>& values, bool forward) {
  fftw_execute_dft(forward ? y_fwd_ : y_bwd_, as_fftw(values),
                   as_fftw(values));
  for (Complex& v : values) v *= scale_y_;
}

void TransformEngine::run_x(std::vector<Complex>& values, bool forward) {
  fftw_execute_dft(forward ? x_fwd_ : x_bwd_, as_fftw(values),
                   as_fftw(values));
  for (Complex& v : values) v *= scale_x_;
}

void fft_y(const CylinderGrid& grid, std::vector<Complex>& values,
           bool forward) {
  grid.engine().run_y(values, forward);
}

void fft_x(const CylinderGrid& grid, std::vector<Complex>& values,
           bool forward) {
  grid.engine().run_x(values, forward);
}

ComplexField transform(const ComplexField& f, SpaceTag target) {
  if (f.values.size() != f.grid->size()) {
    throw ConfigError("transform: value array does not match grid");
  }
  ComplexField out = f;
  if (f.tag == target) return out;

  // Step through the axis passes separating the three representations:
  // Physical <-> SpectralY (y pass), SpectralY <-> Spectral (x pass).
  auto& vals = out.values;
  const CylinderGrid& g = *f.grid;
  switch (f.tag) {
    case SpaceTag::Physical:
      fft_y(g, vals, true);
      if (target == SpaceTag::Spectral) fft_x(g, vals, true);
      break;
    case SpaceTag::SpectralY:
      if (target == SpaceTag::Physical) {
        fft_y(g, vals, false);
      } else {
        fft_x(g, vals, true);
      }
      break;
    case SpaceTag::Spectral:
      fft_x(g, vals, false);
      if (target == SpaceTag::Physical) fft_y(g, vals, false);
      break;
  }
  out.tag = target;
  return out;
}

}  // namespace cylnls
