#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pfz {

using Int = boost::multiprecision::cpp_int;

// Input or state that violates a contract (bad presentation, malformed file,
// out-of-range arguments).  CLI maps this to exit code 2.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation refused because it exceeds the desk-scale enumeration budget.
// CLI maps this to exit code 3.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Required data (Fano component data, nesting info) is absent.  Exit code 4.
struct missing_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumGuard = 10'000'000;

// Enumeration budget, overridable via PFZETA_ENUM_GUARD or a force flag.
inline std::uint64_t enum_guard_limit() {
  if (const char* s = std::getenv("PFZETA_ENUM_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumGuard;
}

inline void check_enum_guard(std::uint64_t size, const std::string& what,
                             bool force = false) {
  if (force) return;
  std::uint64_t limit = enum_guard_limit();
  if (size > limit)
    throw resource_error(what + " needs " + std::to_string(size) +
                         " steps, over the guard of " + std::to_string(limit) +
                         " (use --force or PFZETA_ENUM_GUARD to override)");
}

inline Int int_pow(Int base, unsigned long long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline std::int64_t ll_pow(std::int64_t base, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Int binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// Exact rational with int64 parts, enough for pole locations and abscissae.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw validation_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace pfz
