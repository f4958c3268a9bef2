#include "normalbasis/scalar.hpp"

#include <array>

namespace normalbasis {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : bases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : bases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

CoeffField CoeffField::prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0 || p >= (std::uint64_t{1} << 63) || !is_prime_u64(p))
    throw UsageError("prime field modulus must be an odd prime below 2^63, got " + std::to_string(p));
  return {FieldKind::prime, p};
}

std::string CoeffField::describe() const {
  return is_rational() ? std::string("rational") : "prime:" + std::to_string(modulus);
}

ModP::ModP(std::int64_t v, std::uint64_t p) : p_(p) {
  if (p == 0) throw UsageError("ModP: modulus not set");
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  v_ = static_cast<std::uint64_t>(r);
}

ModP& ModP::operator+=(const ModP& o) {
  check(o);
  v_ += o.v_;
  if (v_ >= p_) v_ -= p_;
  return *this;
}

ModP& ModP::operator-=(const ModP& o) {
  check(o);
  v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_);
  return *this;
}

ModP& ModP::operator*=(const ModP& o) {
  check(o);
  v_ = mulmod(v_, o.v_, p_);
  return *this;
}

ModP& ModP::operator/=(const ModP& o) {
  check(o);
  return *this *= o.inverse();
}

ModP ModP::inverse() const {
  if (v_ == 0) throw DivisionByZero("ModP: inverse of zero");
  return raw(powmod(v_, p_ - 2, p_), p_);
}

mpq_class Scalar<mpq_class>::inverse(const mpq_class& a) {
  if (sgn(a) == 0) throw DivisionByZero("rational: inverse of zero");
  return 1 / a;
}

std::string Scalar<mpq_class>::to_string(const mpq_class& a) {
  mpq_class c = a;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class Scalar<mpq_class>::parse(const CoeffField&, std::string_view s) {
  auto bad = [&] { return UsageError("malformed rational \"" + std::string(s) + "\""); };
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') throw bad();
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw DivisionByZero("rational with zero denominator");
  mpq_class q(zn, zd);
  q.canonicalize();
  return q;
}

void Scalar<mpq_class>::check_field(const CoeffField& f) {
  if (!f.is_rational()) throw UsageError("rational scalars used with a prime field");
}

ModP Scalar<ModP>::from_rational(const CoeffField& f, const mpq_class& q) {
  auto reduce = [&](const mpz_class& z) {
    mpz_class r = z % mpz_class(std::to_string(f.modulus));
    if (r < 0) r += mpz_class(std::to_string(f.modulus));
    return ModP::raw(std::stoull(r.get_str()), f.modulus);
  };
  ModP den = reduce(q.get_den());
  if (den.value() == 0)
    throw DivisionByZero("denominator " + q.get_den().get_str() + " vanishes modulo " + std::to_string(f.modulus));
  return reduce(q.get_num()) / den;
}

ModP Scalar<ModP>::parse(const CoeffField& f, std::string_view s) {
  // Residues are decimal; fractions and negatives are accepted and reduced.
  return from_rational(f, Scalar<mpq_class>::parse(CoeffField::rationals(), s));
}

void Scalar<ModP>::check_field(const CoeffField& f) {
  if (f.is_rational()) throw UsageError("prime-field scalars used with the rational field");
}

mpq_class dot(const CoeffField&, const mpq_class* a, const mpq_class* b, std::size_t n) {
  mpq_class acc = 0, tmp;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0 || sgn(b[i]) == 0) continue;
    mpq_mul(tmp.get_mpq_t(), a[i].get_mpq_t(), b[i].get_mpq_t());
    acc += tmp;
  }
  return acc;
}

ModP dot(const CoeffField& f, const ModP* a, const ModP* b, std::size_t n) {
  const std::uint64_t p = f.modulus;
  // Products are below 2^126, so folding whenever bit 127 is reached keeps
  // the accumulator from wrapping.
  constexpr unsigned __int128 fold_at = static_cast<unsigned __int128>(1) << 127;
  unsigned __int128 acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<unsigned __int128>(a[i].value()) * b[i].value();
    if (acc >= fold_at) acc %= p;
  }
  return ModP::raw(static_cast<std::uint64_t>(acc % p), p);
}

}  // namespace normalbasis
