#pragma once

// Dense double-precision inner loops used by the linear algebra layer.
//
// Every kernel has a scalar reference implementation; AVX2+FMA (x86-64) and
// NEON (aarch64) variants are compiled into separate translation units and
// selected once at runtime. Variants agree with the scalar reference up to
// floating-point reassociation in reductions; they are not bit-identical.

#include <cstddef>
#include <string_view>

namespace driftreg::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha*x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = A*x, A row-major rows x cols
  void (*gemv)(const double* a, const double* x, double* y, std::size_t rows,
               std::size_t cols);
  // A += alpha*x*y^T, A row-major rows x cols
  void (*ger)(double alpha, const double* x, const double* y, double* a,
              std::size_t rows, std::size_t cols);
  // Plane rotation: x <- c*x - s*y, y <- s*x + c*y
  void (*rot)(double* x, double* y, std::size_t n, double c, double s);
};

bool isa_available(Isa isa) noexcept;

// Table for a specific ISA; throws std::invalid_argument when it was not
// compiled in or the CPU does not support it.
const KernelTable& kernels_for(Isa isa);

// Currently active table. Defaults to the widest supported ISA unless the
// DRIFTREG_ISA environment variable (scalar|avx2|neon) says otherwise.
const KernelTable& kernels() noexcept;

Isa active_isa() noexcept;
void set_active_isa(Isa isa);

std::string_view isa_name(Isa isa) noexcept;
Isa parse_isa(std::string_view name);

}  // namespace driftreg::simd
