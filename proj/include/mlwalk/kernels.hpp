#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

// Inner loops of the walk engine. Every variant evaluates the same
// expression tree in the same order (no FMA, no reassociation), so all
// variants are bit-identical to the scalar reference.
namespace mlwalk::kernels {

using Complex = std::complex<double>;

// out[i] = sum_j coin[i][j] * in[j], j ascending, coin column-major.
using CoinApplyFn = void (*)(const Complex* coin, int dim, const Complex* in,
                             Complex* out);
// out[k] = re(in[k])^2 + im(in[k])^2.
using SquaredNormsFn = void (*)(const Complex* in, std::size_t count,
                                double* out);

struct KernelSet {
  std::string_view name;
  CoinApplyFn coin_apply;
  SquaredNormsFn squared_norms;
};

const KernelSet& scalar();
// nullptr when not compiled in or unsupported by this CPU.
const KernelSet* avx2();

// Kernel set used by the engine. Chosen on first use from the
// MLWALK_KERNELS environment variable ("scalar", "avx2", "auto"; default
// auto = best supported).
const KernelSet& active();
// Switches the active set; returns false if `name` is unavailable.
bool select(std::string_view name);
std::vector<std::string_view> available();

}  // namespace mlwalk::kernels
