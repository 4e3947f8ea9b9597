#include "mlwalk/kernels.hpp"

namespace mlwalk::kernels {

namespace {

void coin_apply_scalar(const Complex* coin, int dim, const Complex* in, Complex* out) {
  const auto* c = reinterpret_cast<const double*>(coin);
  const auto* v = reinterpret_cast<const double*>(in);
  auto* o = reinterpret_cast<double*>(out);
  for (int i = 0; i < dim; ++i) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double* cij = c + 2 * (static_cast<std::ptrdiff_t>(j) * dim + i);
      const double vr = v[2 * j];
      const double vi = v[2 * j + 1];
      acc_re += cij[0] * vr - cij[1] * vi;
      acc_im += cij[1] * vr + cij[0] * vi;
    }
    o[2 * i] = acc_re;
    o[2 * i + 1] = acc_im;
  }
}

void squared_norms_scalar(const Complex* in, std::size_t count, double* out) {
  const auto* v = reinterpret_cast<const double*>(in);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = v[2 * k] * v[2 * k] + v[2 * k + 1] * v[2 * k + 1];
  }
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar", &coin_apply_scalar, &squared_norms_scalar};
  return set;
}

}  // namespace mlwalk::kernels
