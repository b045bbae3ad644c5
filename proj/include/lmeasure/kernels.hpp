#pragma once

// Data-parallel inner loops shared by the estimators: reductions over sample
// buffers and step-function functionals over atom arrays.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at runtime from CPU features; the
// scalar table is always available for equivalence testing. Reductions may
// differ from the scalar reference by rounding (different summation order);
// element-wise kernels are bit-identical.

#include <cstddef>
#include <span>
#include <string_view>

namespace lmeasure::kernels {

enum class Isa { scalar, avx2 };

/// Piecewise-constant function on [0, 1): value[j] on [breakpoints[j],
/// breakpoints[j+1]). breakpoints.size() == values.size() + 1.
struct StepView {
  std::span<const double> breakpoints;
  std::span<const double> values;
};

/// Sums of (v - shift) and (v - shift)^2.
struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

struct Table {
  Isa isa;
  double (*sum)(std::span<const double> v);
  double (*dot)(std::span<const double> a, std::span<const double> b);
  Moments (*shifted_moments)(std::span<const double> v, double shift);
  /// sum_k masses[k] * (f(locations[k]) - offset)
  double (*step_functional)(std::span<const double> masses, std::span<const double> locations,
                            StepView f, double offset);
  /// out[k] = f(locations[k]) * masses[k]
  void (*step_scale)(std::span<const double> masses, std::span<const double> locations,
                     StepView f, std::span<double> out);
};

/// Best table supported by this CPU (resolved on first call).
const Table& active();

/// Table for a specific ISA, or nullptr when this build/CPU lacks it.
const Table* table_for(Isa isa);

Isa detect();
std::string_view name(Isa isa);

namespace scalar {
extern const Table kTable;
}
#if defined(LMEASURE_HAVE_AVX2_KERNELS)
namespace avx2 {
extern const Table kTable;
}
#endif

}  // namespace lmeasure::kernels
