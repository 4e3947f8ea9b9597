#include <immintrin.h>

#include "mlwalk/kernels.hpp"

namespace mlwalk::kernels {

namespace {

// Two output rows per 256-bit register, accumulating over columns in the
// same order as the scalar loop. (c * vr) addsub (swap(c) * vi) yields
// (cr*vr - ci*vi, ci*vr + cr*vi) lane by lane.
void coin_apply_avx2(const Complex* coin, int dim, const Complex* in, Complex* out) {
  const auto* c = reinterpret_cast<const double*>(coin);
  const auto* v = reinterpret_cast<const double*>(in);
  auto* o = reinterpret_cast<double*>(out);
  int i = 0;
  for (; i + 2 <= dim; i += 2) {
    __m256d acc = _mm256_setzero_pd();
    for (int j = 0; j < dim; ++j) {
      const __m256d cij = _mm256_loadu_pd(c + 2 * (static_cast<std::ptrdiff_t>(j) * dim + i));
      const __m256d vr = _mm256_set1_pd(v[2 * j]);
      const __m256d vi = _mm256_set1_pd(v[2 * j + 1]);
      const __m256d swapped = _mm256_permute_pd(cij, 0b0101);
      const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(cij, vr), _mm256_mul_pd(swapped, vi));
      acc = _mm256_add_pd(acc, prod);
    }
    _mm256_storeu_pd(o + 2 * i, acc);
  }
  if (i < dim) {
    __m128d acc = _mm_setzero_pd();
    for (int j = 0; j < dim; ++j) {
      const __m128d cij = _mm_loadu_pd(c + 2 * (static_cast<std::ptrdiff_t>(j) * dim + i));
      const __m128d vr = _mm_set1_pd(v[2 * j]);
      const __m128d vi = _mm_set1_pd(v[2 * j + 1]);
      const __m128d swapped = _mm_shuffle_pd(cij, cij, 0b01);
      const __m128d prod = _mm_addsub_pd(_mm_mul_pd(cij, vr), _mm_mul_pd(swapped, vi));
      acc = _mm_add_pd(acc, prod);
    }
    _mm_storeu_pd(o + 2 * i, acc);
  }
}

void squared_norms_avx2(const Complex* in, std::size_t count, double* out) {
  const auto* v = reinterpret_cast<const double*>(in);
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d a = _mm256_loadu_pd(v + 2 * k);      // z0 z1
    const __m256d b = _mm256_loadu_pd(v + 2 * k + 4);  // z2 z3
    const __m256d sums = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    // hadd gives (|z0|, |z2|, |z1|, |z3|); restore order.
    _mm256_storeu_pd(out + k, _mm256_permute4x64_pd(sums, 0b11011000));
  }
  for (; k < count; ++k) {
    out[k] = v[2 * k] * v[2 * k] + v[2 * k + 1] * v[2 * k + 1];
  }
}

}  // namespace

const KernelSet* avx2_kernels_impl() {
  static const KernelSet set{"avx2", &coin_apply_avx2, &squared_norms_avx2};
  return &set;
}

}  // namespace mlwalk::kernels
