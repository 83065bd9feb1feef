#pragma once

// Exact rational with an int64 fast path; falls back to mpq_class whenever an
// intermediate result leaves 64 bits. Used for tableau entries, where almost
// every value is a small fraction.

#include "wtap/rational.hpp"

#include <cstdint>
#include <memory>
#include <numeric>

namespace wtap::detail {

class Num {
 public:
  Num() = default;
  Num(std::int64_t v) : n_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Num(const mpq_class& q) { assign(q); }
  Num(const Num& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Num(Num&&) noexcept = default;
  Num& operator=(const Num& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Num& operator=(Num&&) noexcept = default;

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    set_mpz(q.get_num(), n_);
    set_mpz(q.get_den(), d_);
    return q;
  }

  int sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
  }
  bool is_zero() const { return sign() == 0; }

  friend bool operator==(const Num& a, const Num& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    return a.to_mpq() == b.to_mpq();
  }
  friend bool operator<(const Num& a, const Num& b) {
    if (!a.big_ && !b.big_) {
      return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    }
    return a.to_mpq() < b.to_mpq();
  }

  friend Num operator*(const Num& a, const Num& b) {
    if (!a.big_ && !b.big_) {
      const std::int64_t g1 = gcd64(a.n_, b.d_);
      const std::int64_t g2 = gcd64(b.n_, a.d_);
      const __int128 n = static_cast<__int128>(a.n_ / g1) * (b.n_ / g2);
      const __int128 d = static_cast<__int128>(a.d_ / g2) * (b.d_ / g1);
      Num r;
      if (r.set_small(n, d)) return r;
    }
    return Num(a.to_mpq() * b.to_mpq());
  }

  friend Num operator/(const Num& a, const Num& b) { return a * b.inverse(); }

  Num inverse() const {
    if (!big_) {
      Num r;
      r.n_ = n_ < 0 ? -d_ : d_;
      r.d_ = n_ < 0 ? -n_ : n_;
      if (n_ != INT64_MIN) return r;
    }
    return Num(1 / to_mpq());
  }

  Num operator-() const {
    if (!big_ && n_ != INT64_MIN) {
      Num r;
      r.n_ = -n_;
      r.d_ = d_;
      return r;
    }
    return Num(-to_mpq());
  }

  Num& operator+=(const Num& b) { return add(b, false); }
  Num& operator-=(const Num& b) { return add(b, true); }
  Num& operator*=(const Num& b) { return *this = *this * b; }

 private:
  static std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    const std::int64_t g = std::gcd(a, b);
    return g == 0 ? 1 : g;
  }

  static void set_mpz(mpz_class& z, std::int64_t v) {
    if (v >= LONG_MIN && v <= LONG_MAX) {
      z = static_cast<long>(v);
    } else {
      z = mpz_class(std::to_string(v));
    }
  }

  // Stores n/d (d > 0, lowest terms) if both fit; false otherwise.
  bool set_small(__int128 n, __int128 d) {
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) return false;
    n_ = static_cast<std::int64_t>(n);
    d_ = static_cast<std::int64_t>(d);
    big_.reset();
    return true;
  }

  void assign(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      n_ = q.get_num().get_si();
      d_ = q.get_den().get_si();
      big_.reset();
    } else {
      big_ = std::make_unique<mpq_class>(q);
    }
  }

  Num& add(const Num& b, bool negate) {
    if (!big_ && !b.big_) {
      const std::int64_t g = gcd64(d_, b.d_);
      const std::int64_t da = d_ / g;
      const std::int64_t db = b.d_ / g;
      __int128 t = static_cast<__int128>(n_) * db;
      const __int128 u = static_cast<__int128>(b.n_) * da;
      t = negate ? t - u : t + u;
      // gcd(t, g) reduces the result to lowest terms.
      const std::int64_t tg = static_cast<std::int64_t>(t % g);
      const std::int64_t g2 = gcd64(tg, g);
      const __int128 d = static_cast<__int128>(da) * (b.d_ / g2);
      if (t == 0) {
        n_ = 0;
        d_ = 1;
        return *this;
      }
      if (set_small(t / g2, d)) return *this;
    }
    mpq_class r = to_mpq();
    if (negate) r -= b.to_mpq(); else r += b.to_mpq();
    assign(r);
    return *this;
  }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace wtap::detail
