#ifndef TSQ_QSQRT3_HPP_
#define TSQ_QSQRT3_HPP_

// Exact arithmetic in the field Q(sqrt 3) and points of the plane over it.
// Every vertex of the flats generated by this library has coordinates here,
// so equality, hashing and orientation tests are exact.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tsq {

  class Rational {
   public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : _num(n), _den(1) {}  // NOLINT
    Rational(std::int64_t n, std::int64_t d) : _num(n), _den(d) {
      normalize();
    }

    std::int64_t num() const noexcept {
      return _num;
    }
    std::int64_t den() const noexcept {
      return _den;
    }

    int sign() const noexcept {
      return (_num > 0) - (_num < 0);
    }
    bool is_integer() const noexcept {
      return _den == 1;
    }
    double to_double() const noexcept {
      return static_cast<double>(_num) / static_cast<double>(_den);
    }

    friend Rational operator+(Rational const& a, Rational const& b) {
      return make(static_cast<__int128>(a._num) * b._den
                      + static_cast<__int128>(b._num) * a._den,
                  static_cast<__int128>(a._den) * b._den);
    }
    friend Rational operator-(Rational const& a, Rational const& b) {
      return make(static_cast<__int128>(a._num) * b._den
                      - static_cast<__int128>(b._num) * a._den,
                  static_cast<__int128>(a._den) * b._den);
    }
    friend Rational operator*(Rational const& a, Rational const& b) {
      return make(static_cast<__int128>(a._num) * b._num,
                  static_cast<__int128>(a._den) * b._den);
    }
    friend Rational operator/(Rational const& a, Rational const& b) {
      if (b._num == 0) {
        throw std::domain_error("Rational: division by zero");
      }
      return make(static_cast<__int128>(a._num) * b._den,
                  static_cast<__int128>(a._den) * b._num);
    }
    Rational operator-() const {
      Rational r;
      r._num = -_num;
      r._den = _den;
      return r;
    }
    Rational& operator+=(Rational const& o) {
      return *this = *this + o;
    }
    Rational& operator-=(Rational const& o) {
      return *this = *this - o;
    }

    friend bool operator==(Rational const&, Rational const&) = default;
    friend bool operator<(Rational const& a, Rational const& b) {
      return static_cast<__int128>(a._num) * b._den
             < static_cast<__int128>(b._num) * a._den;
    }
    friend bool operator>(Rational const& a, Rational const& b) {
      return b < a;
    }
    friend bool operator<=(Rational const& a, Rational const& b) {
      return !(b < a);
    }
    friend bool operator>=(Rational const& a, Rational const& b) {
      return !(a < b);
    }

    std::string to_string() const {
      return _den == 1 ? std::to_string(_num)
                       : std::to_string(_num) + "/" + std::to_string(_den);
    }

   private:
    static Rational make(__int128 n, __int128 d) {
      if (d == 0) {
        throw std::domain_error("Rational: zero denominator");
      }
      if (d < 0) {
        n = -n;
        d = -d;
      }
      __int128 a = n < 0 ? -n : n, b = d;
      while (b != 0) {
        __int128 t = a % b;
        a          = b;
        b          = t;
      }
      if (a > 1) {
        n /= a;
        d /= a;
      }
      if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
        throw std::overflow_error("Rational: overflow");
      }
      Rational r;
      r._num = static_cast<std::int64_t>(n);
      r._den = static_cast<std::int64_t>(d);
      return r;
    }

    void normalize() {
      *this = make(_num, _den);
    }

    std::int64_t _num = 0;
    std::int64_t _den = 1;
  };

  // p + q*sqrt(3) with rational p, q.
  class QSqrt3 {
   public:
    constexpr QSqrt3() = default;
    QSqrt3(Rational p) : _p(p) {}  // NOLINT
    QSqrt3(std::int64_t p) : _p(p) {}  // NOLINT
    QSqrt3(Rational p, Rational q) : _p(p), _q(q) {}

    static QSqrt3 sqrt3() {
      return QSqrt3(0, 1);
    }

    Rational const& rational_part() const noexcept {
      return _p;
    }
    Rational const& sqrt3_part() const noexcept {
      return _q;
    }

    friend QSqrt3 operator+(QSqrt3 const& a, QSqrt3 const& b) {
      return {a._p + b._p, a._q + b._q};
    }
    friend QSqrt3 operator-(QSqrt3 const& a, QSqrt3 const& b) {
      return {a._p - b._p, a._q - b._q};
    }
    friend QSqrt3 operator*(QSqrt3 const& a, QSqrt3 const& b) {
      return {a._p * b._p + Rational(3) * a._q * b._q,
              a._p * b._q + a._q * b._p};
    }
    QSqrt3 operator-() const {
      return {-_p, -_q};
    }
    QSqrt3& operator+=(QSqrt3 const& o) {
      return *this = *this + o;
    }
    QSqrt3& operator-=(QSqrt3 const& o) {
      return *this = *this - o;
    }

    // Sign of p + q*sqrt(3): when the parts disagree in sign, compare p^2
    // against 3 q^2.
    int sign() const {
      int sp = _p.sign(), sq = _q.sign();
      if (sq == 0) {
        return sp;
      }
      if (sp == 0 || sp == sq) {
        return sq;
      }
      Rational lhs = _p * _p, rhs = Rational(3) * _q * _q;
      if (lhs == rhs) {
        return 0;  // unreachable for rationals, sqrt 3 is irrational
      }
      return lhs > rhs ? sp : sq;
    }

    friend bool operator==(QSqrt3 const&, QSqrt3 const&) = default;
    friend bool operator<(QSqrt3 const& a, QSqrt3 const& b) {
      return (a - b).sign() < 0;
    }
    friend bool operator>(QSqrt3 const& a, QSqrt3 const& b) {
      return b < a;
    }
    friend bool operator<=(QSqrt3 const& a, QSqrt3 const& b) {
      return !(b < a);
    }
    friend bool operator>=(QSqrt3 const& a, QSqrt3 const& b) {
      return !(a < b);
    }

    double to_double() const noexcept {
      return _p.to_double() + _q.to_double() * std::sqrt(3.0);
    }

    std::string to_string() const {
      if (_q.sign() == 0) {
        return _p.to_string();
      }
      std::string q = _q.to_string() + "*sqrt3";
      if (_p.sign() == 0) {
        return q;
      }
      return _p.to_string() + (_q.sign() > 0 ? "+" : "") + q;
    }

   private:
    Rational _p;
    Rational _q;
  };

  inline std::ostream& operator<<(std::ostream& os, QSqrt3 const& x) {
    return os << x.to_string();
  }

  struct Point {
    QSqrt3 x;
    QSqrt3 y;

    friend bool operator==(Point const&, Point const&) = default;
    friend Point operator+(Point const& a, Point const& b) {
      return {a.x + b.x, a.y + b.y};
    }
    friend Point operator-(Point const& a, Point const& b) {
      return {a.x - b.x, a.y - b.y};
    }
    friend Point operator*(QSqrt3 const& s, Point const& a) {
      return {s * a.x, s * a.y};
    }
    Point operator-() const {
      return {-x, -y};
    }

    // Lexicographic (x, then y); used for deterministic scans.
    friend bool operator<(Point const& a, Point const& b) {
      if (a.x != b.x) {
        return a.x < b.x;
      }
      return a.y < b.y;
    }

    std::string to_string() const {
      return "(" + x.to_string() + ", " + y.to_string() + ")";
    }
  };

  inline QSqrt3 dot(Point const& a, Point const& b) {
    return a.x * b.x + a.y * b.y;
  }

  inline QSqrt3 cross(Point const& a, Point const& b) {
    return a.x * b.y - a.y * b.x;
  }

  inline QSqrt3 norm2(Point const& a) {
    return dot(a, a);
  }

  // Unit vector at angle 30*k degrees; every direction used by the flats is
  // of this form.
  inline Point unit_at_30(int k) {
    k = ((k % 12) + 12) % 12;
    Rational const h(1, 2);
    QSqrt3 const   r3h(0, h);  // sqrt(3)/2
    QSqrt3 const   half(h);
    switch (k) {
      case 0: return {1, 0};
      case 1: return {r3h, half};
      case 2: return {half, r3h};
      case 3: return {0, 1};
      case 4: return {-half, r3h};
      case 5: return {-r3h, half};
      case 6: return {-1, 0};
      case 7: return {-r3h, -half};
      case 8: return {-half, -r3h};
      case 9: return {0, -1};
      case 10: return {half, -r3h};
      default: return {r3h, -half};
    }
  }

  // Rotation about the origin by 30*k degrees.
  inline Point rotate_30(Point const& p, int k) {
    Point c = unit_at_30(k);  // (cos, sin)
    return {c.x * p.x - c.y * p.y, c.y * p.x + c.x * p.y};
  }

  inline Point rotate_60(Point const& p, int k) {
    return rotate_30(p, 2 * k);
  }

  // Index k in [0, 12) with d == unit_at_30(k), or -1 if d is not such a
  // unit vector.
  inline int direction_index(Point const& d) {
    for (int k = 0; k < 12; ++k) {
      if (unit_at_30(k) == d) {
        return k;
      }
    }
    return -1;
  }

  struct RationalHash {
    size_t operator()(Rational const& r) const noexcept {
      size_t h = std::hash<std::int64_t>()(r.num());
      return h ^ (std::hash<std::int64_t>()(r.den()) + 0x9e3779b97f4a7c15ULL
                  + (h << 6) + (h >> 2));
    }
  };

  struct PointHash {
    size_t operator()(Point const& p) const noexcept {
      RationalHash rh;
      size_t       h = 0;
      for (Rational const* r : {&p.x.rational_part(),
                                &p.x.sqrt3_part(),
                                &p.y.rational_part(),
                                &p.y.sqrt3_part()}) {
        h ^= rh(*r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

}  // namespace tsq

#endif  // TSQ_QSQRT3_HPP_
