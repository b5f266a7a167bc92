#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace qutv {

// Hamilton quaternion w + x*i + y*j + z*k over double.
// Multiplication follows i*j = k, j*k = i, k*i = j and is noncommutative;
// every routine in this library is written against that order.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  // Real scalar embeds on the w axis.
  constexpr explicit Quaternion(double real) : w(real) {}

  constexpr Quaternion& operator+=(const Quaternion& b) {
    w += b.w;
    x += b.x;
    y += b.y;
    z += b.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& b) {
    w -= b.w;
    x -= b.x;
    y -= b.y;
    z -= b.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double modulus() const { return std::sqrt(norm_sq()); }
  constexpr bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion conj(const Quaternion& a) { return {a.w, -a.x, -a.y, -a.z}; }

inline Quaternion inverse(const Quaternion& a) {
  const double n = a.norm_sq();
  return conj(a) * (1.0 / n);
}

// Unit direction a/|a|, with the convention 1 for a = 0 (used by the
// Householder phase choice, which must stay well defined on zero pivots).
inline Quaternion sign_of(const Quaternion& a) {
  const double m = a.modulus();
  if (m == 0.0) return Quaternion(1.0);
  return a * (1.0 / m);
}

// Deterministic stream of standard Gaussian quaternions: the four components
// of each draw are iid N(0,1), consumed in w,x,y,z order from one engine.
class GaussianQuaternionSource {
 public:
  explicit GaussianQuaternionSource(std::uint64_t seed) : engine_(seed) {}

  Quaternion next() {
    const double w = normal_(engine_);
    const double x = normal_(engine_);
    const double y = normal_(engine_);
    const double z = normal_(engine_);
    return {w, x, y, z};
  }

  std::vector<Quaternion> take(std::size_t count) {
    std::vector<Quaternion> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline std::vector<Quaternion> qgauss(std::uint64_t seed, std::size_t count) {
  return GaussianQuaternionSource(seed).take(count);
}

}  // namespace qutv
