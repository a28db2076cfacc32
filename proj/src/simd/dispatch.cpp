#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"

namespace driftreg::simd {
namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(DRIFTREG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(DRIFTREG_HAVE_NEON)
      return true;  // baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_unchecked(Isa isa) noexcept {
  switch (isa) {
#if defined(DRIFTREG_HAVE_AVX2)
    case Isa::avx2:
      return detail::avx2_table();
#endif
#if defined(DRIFTREG_HAVE_NEON)
    case Isa::neon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("DRIFTREG_ISA")) {
    try {
      const Isa requested = parse_isa(env);
      if (cpu_supports(requested)) return &table_unchecked(requested);
    } catch (const std::invalid_argument&) {
      // fall through to autodetection
    }
  }
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (cpu_supports(isa)) return &table_unchecked(isa);
  }
  return &detail::scalar_table();
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

bool isa_available(Isa isa) noexcept { return cpu_supports(isa); }

const KernelTable& kernels_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument("SIMD variant not available: " + std::string(isa_name(isa)));
  }
  return table_unchecked(isa);
}

const KernelTable& kernels() noexcept {
  return *active_slot().load(std::memory_order_acquire);
}

Isa active_isa() noexcept { return kernels().isa; }

void set_active_isa(Isa isa) {
  active_slot().store(&kernels_for(isa), std::memory_order_release);
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  throw std::invalid_argument("unknown SIMD variant: " + std::string(name));
}

}  // namespace driftreg::simd
