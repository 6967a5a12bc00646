#include <atomic>
#include <cstdlib>
#include <string>

#include "thcs/kernels.hpp"
#include "thcs/log.hpp"

namespace thcs::kernels {

#ifndef THCS_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

std::string_view name(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool available(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return avx2_table() != nullptr && cpu_has_avx2();
  }
  return false;
}

namespace {

const KernelTable* table_for(Backend b) noexcept {
  return b == Backend::avx2 ? avx2_table() : &scalar_table();
}

const KernelTable* initial_table() noexcept {
  Backend want = available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("THCS_SIMD")) {
    const std::string value(env);
    if (value == "scalar") {
      want = Backend::scalar;
    } else if (value == "avx2" && !available(Backend::avx2)) {
      log::warn("THCS_SIMD=avx2 requested but unavailable; using scalar kernels");
      want = Backend::scalar;
    }
  }
  return table_for(want);
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Backend b) {
  if (!available(b)) throw Error("kernel backend '" + std::string(name(b)) + "' is unavailable");
  current().store(table_for(b), std::memory_order_release);
}

ScopedBackend::ScopedBackend(Backend b) : previous_(active().backend) { select(b); }
ScopedBackend::~ScopedBackend() { current().store(table_for(previous_), std::memory_order_release); }

}  // namespace thcs::kernels
