#include <immintrin.h>

#include "lmeasure/kernels.hpp"

namespace lmeasure::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double sum(std::span<const double> v) {
  const double* p = v.data();
  const std::size_t n = v.size();
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(p + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(p + i + 4));
    a2 = _mm256_add_pd(a2, _mm256_loadu_pd(p + i + 8));
    a3 = _mm256_add_pd(a3, _mm256_loadu_pd(p + i + 12));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(p + i));
  double acc = hsum(_mm256_add_pd(_mm256_add_pd(a0, a1), _mm256_add_pd(a2, a3)));
  for (; i < n; ++i) acc += p[i];
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4),
                         a1);
  }
  for (; i + 4 <= n; i += 4) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), a0);
  }
  double acc = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

Moments shifted_moments(std::span<const double> v, double shift) {
  const std::size_t n = v.size();
  const __m256d s = _mm256_set1_pd(shift);
  __m256d m1a = _mm256_setzero_pd(), m1b = _mm256_setzero_pd();
  __m256d m2a = _mm256_setzero_pd(), m2b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d da = _mm256_sub_pd(_mm256_loadu_pd(v.data() + i), s);
    const __m256d db = _mm256_sub_pd(_mm256_loadu_pd(v.data() + i + 4), s);
    m1a = _mm256_add_pd(m1a, da);
    m1b = _mm256_add_pd(m1b, db);
    m2a = _mm256_fmadd_pd(da, da, m2a);
    m2b = _mm256_fmadd_pd(db, db, m2b);
  }
  Moments m{hsum(_mm256_add_pd(m1a, m1b)), hsum(_mm256_add_pd(m2a, m2b))};
  for (; i < n; ++i) {
    const double d = v[i] - shift;
    m.sum += d;
    m.sum_sq += d * d;
  }
  return m;
}

// Four step-function values at once: start from piece 0 and overwrite with
// piece j wherever x >= breakpoint j.
inline __m256d step_values(StepView f, __m256d x) {
  __m256d val = _mm256_set1_pd(f.values[0]);
  for (std::size_t j = 1; j < f.values.size(); ++j) {
    const __m256d mask = _mm256_cmp_pd(x, _mm256_set1_pd(f.breakpoints[j]), _CMP_GE_OQ);
    val = _mm256_blendv_pd(val, _mm256_set1_pd(f.values[j]), mask);
  }
  return val;
}

inline double step_value(StepView f, double x) {
  double val = f.values[0];
  for (std::size_t j = 1; j < f.values.size(); ++j) {
    if (x >= f.breakpoints[j]) val = f.values[j];
  }
  return val;
}

double step_functional(std::span<const double> masses, std::span<const double> locations,
                       StepView f, double offset) {
  const std::size_t n = masses.size();
  const __m256d off = _mm256_set1_pd(offset);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d val = step_values(f, _mm256_loadu_pd(locations.data() + k));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(masses.data() + k), _mm256_sub_pd(val, off), acc);
  }
  double total = hsum(acc);
  for (; k < n; ++k) total += masses[k] * (step_value(f, locations[k]) - offset);
  return total;
}

void step_scale(std::span<const double> masses, std::span<const double> locations, StepView f,
                std::span<double> out) {
  const std::size_t n = masses.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d val = step_values(f, _mm256_loadu_pd(locations.data() + k));
    _mm256_storeu_pd(out.data() + k, _mm256_mul_pd(val, _mm256_loadu_pd(masses.data() + k)));
  }
  for (; k < n; ++k) out[k] = step_value(f, locations[k]) * masses[k];
}

}  // namespace

const Table kTable = {Isa::avx2, sum, dot, shifted_moments, step_functional, step_scale};

}  // namespace lmeasure::kernels::avx2
