#include "relfree/rat.hpp"

#include <ostream>

namespace relfree {

Rat::Rat(long num, long den) {
  if (den == 0) throw Error("Rat: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error("Rat: division by zero");
  q_ /= o.q_;
  return *this;
}

Rat Rat::inverse() const {
  if (is_zero()) throw Error("Rat: inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rat(std::move(r));
}

void Rat::add_mul(const Rat& a, const Rat& b) {
  static thread_local mpq_class t;
  mpq_mul(t.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
  mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), t.get_mpq_t());
}

void Rat::sub_mul(const Rat& a, const Rat& b) {
  static thread_local mpq_class t;
  mpq_mul(t.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
  mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), t.get_mpq_t());
}

Rat Rat::parse(std::string_view s) {
  if (s.empty()) throw Error("Rat: empty literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      mpq_class q(std::string(s), 10);
      q.canonicalize();
      return Rat(std::move(q));
    }
    mpz_class num(std::string(s.substr(0, slash)), 10);
    mpz_class den(std::string(s.substr(slash + 1)), 10);
    if (den == 0) throw Error("Rat: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(std::move(q));
  } catch (const std::invalid_argument&) {
    throw Error("Rat: bad literal '" + std::string(s) + "'");
  }
}

std::string Rat::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat binomial(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rat(mpq_class(b));
}

}  // namespace relfree
