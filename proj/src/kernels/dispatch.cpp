#include "lmeasure/kernels.hpp"

namespace lmeasure::kernels {

Isa detect() {
#if defined(LMEASURE_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
  return Isa::scalar;
}

const Table* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar::kTable;
    case Isa::avx2:
#if defined(LMEASURE_HAVE_AVX2_KERNELS)
      return detect() == Isa::avx2 ? &avx2::kTable : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const Table& active() {
  static const Table* const table = table_for(detect());
  return *table;
}

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace lmeasure::kernels
