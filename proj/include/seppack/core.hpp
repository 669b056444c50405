#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sep {

// Vectors are stored with fixed capacity 3; the active dimension travels with
// the owning object (Body, Packing, Hull). Unused components stay zero.
using Vec = std::array<double, 3>;

inline Vec vec2(double x, double y) { return {x, y, 0.0}; }
inline Vec vec3(double x, double y, double z) { return {x, y, z}; }

inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator-(const Vec& a) { return {-a[0], -a[1], -a[2]}; }
inline Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec& operator+=(Vec& a, const Vec& b) { a[0] += b[0]; a[1] += b[1]; a[2] += b[2]; return a; }
inline Vec& operator-=(Vec& a, const Vec& b) { a[0] -= b[0]; a[1] -= b[1]; a[2] -= b[2]; return a; }

inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }
inline double norm2sq(const Vec& a) { return dot(a, a); }
// z-component of the 2D cross product (b - a) x (c - a)
inline double cross2(const Vec& a, const Vec& b, const Vec& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}
inline Vec normalized(const Vec& a) {
  double n = norm2(a);
  return n > 0 ? (1.0 / n) * a : a;
}

constexpr double kPi = 3.14159265358979323846;
// Default relative tolerance; comparisons are scaled by the instance size.
constexpr double kEpsRel = 1e-9;

enum class Errc {
  invalid_body,
  invalid_direction,
  invalid_argument,
  degenerate_hull,
  lower_dimensional,
  unsupported_method,
  capacity_exceeded,
  insufficient_unfolding,
  unverified_packing,
  parse_error,
  internal,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

// -------------------------------------------------------------------------
// Deterministic RNG. splitmix64 for stream splitting, xorshift-based core.
// All randomized code paths derive their streams from explicit seeds so that
// results are reproducible bit-for-bit at a fixed thread count.
// -------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// derived seed for chain/probe index sub-streams
inline std::uint64_t splitmix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }
  // derive an independent stream (for strata / chains)
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return Rng(splitmix64(s));
  }

  std::uint64_t next_u64() {  // xoshiro256**
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform in [0,1)
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  double normal() {  // Marsaglia polar, deterministic given the stream
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0;
  bool have_spare_ = false;
};

// -------------------------------------------------------------------------
// Thread budget. Parallel kernels consult this unless given an explicit
// count; 1 disables OpenMP regions entirely.
// -------------------------------------------------------------------------
namespace threads {
void set_max(int n);          // n <= 0 restores the hardware default
int max();                    // current budget (>= 1)
int resolve(int requested);   // requested <= 0 -> max()
}  // namespace threads

}  // namespace sep
