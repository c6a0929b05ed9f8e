#include "dvg/witt_ring.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

#include "dvg/error.hpp"

namespace dvg {

namespace detail {

struct RingData {
  RingParams params;
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> poly;  // low-to-high, monic, size deg + 1
  // sigma_powers[k][i] = coordinates of sigma^k(x^i), k in [0, deg)
  std::vector<std::vector<std::vector<std::uint64_t>>> sigma_powers;
};

}  // namespace detail

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 addmod(u64 a, u64 b, u64 m) {
  const u64 s = a + b;  // a, b < m < 2^63
  return s >= m ? s - m : s;
}
u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic Miller-Rabin for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
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

// ---- polynomials over F_p (low-to-high) ----

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

u64 inv_mod_prime(u64 a, u64 p) { return powmod(a, p - 2, p); }

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = submod(a[i], b[i], p);
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
  trim(c);
  return c;
}

std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, u64 p) {
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {{}, a};
  const u64 lead_inv = inv_mod_prime(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (int k = degree(a); k >= db; --k) {
    const u64 coef = mulmod(a[k], lead_inv, p);
    q[k - db] = coef;
    if (coef == 0) continue;
    for (int i = 0; i <= db; ++i) a[k - db + i] = submod(a[k - db + i], mulmod(coef, b[i], p), p);
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly poly_mod(const Poly& a, const Poly& m, u64 p) { return poly_divmod(a, m, p).second; }

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, u64 exp, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_mod(base, m, p);
  while (exp > 0) {
    if (exp & 1) result = poly_mod(poly_mul(result, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    exp >>= 1;
  }
  return result;
}

// Ben-Or: f of degree n is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= n/2.
bool is_irreducible(const Poly& f, u64 p) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  Poly h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    if (degree(poly_gcd(f, poly_sub(h, x, p), p)) > 0) return false;
  }
  return true;
}

// Inverse of a modulo f over F_p; a must be coprime to f.
Poly poly_inverse(const Poly& a, const Poly& f, u64 p) {
  Poly r0 = f, r1 = poly_mod(a, f, p);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p);
    Poly s = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degree(r0) != 0) throw Error(ErrorCode::NotAUnit, "element is not invertible mod p");
  const u64 scale = inv_mod_prime(r0[0], p);
  for (auto& c : s0) c = mulmod(c, scale, p);
  return poly_mod(s0, f, p);
}

// Conway polynomials C_{p,n}, low-to-high coefficients.
struct ConwayEntry {
  u64 p;
  int deg;
  std::array<u64, 9> coeffs;
};

constexpr ConwayEntry kConway[] = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 2, 1, 0, 2, 0, 1}},
    {3, 7, {1, 0, 2, 0, 0, 0, 0, 1}},
    {3, 8, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
    {5, 1, {3, 1}},
    {5, 2, {2, 4, 1}},
    {5, 3, {3, 3, 0, 1}},
    {5, 4, {2, 4, 4, 0, 1}},
    {5, 5, {3, 4, 0, 0, 0, 1}},
    {5, 6, {2, 0, 1, 4, 1, 0, 1}},
    {5, 7, {3, 3, 0, 0, 0, 0, 0, 1}},
    {5, 8, {2, 4, 3, 0, 1, 0, 0, 0, 1}},
    {7, 1, {4, 1}},
    {7, 2, {3, 6, 1}},
    {7, 3, {4, 0, 6, 1}},
    {7, 4, {3, 4, 5, 0, 1}},
    {7, 5, {4, 1, 0, 0, 0, 1}},
    {7, 6, {3, 6, 4, 5, 1, 0, 1}},
    {7, 7, {4, 6, 0, 0, 0, 0, 0, 1}},
    {7, 8, {3, 2, 6, 4, 0, 0, 0, 0, 1}},
};

Poly default_defining_poly(u64 p, int deg) {
  for (const auto& e : kConway) {
    if (e.p == p && e.deg == deg) return Poly(e.coeffs.begin(), e.coeffs.begin() + deg + 1);
  }
  // Enumerate monic candidates with the tail read as a base-p number whose
  // most significant digit is the x^{deg-1} coefficient.
  Poly f(deg + 1, 0);
  f[deg] = 1;
  for (;;) {
    if (is_irreducible(f, p)) return f;
    int i = 0;
    while (i < deg && ++f[i] == p) f[i++] = 0;
    if (i == deg) throw Error(ErrorCode::HenselFailure, "no irreducible polynomial found");
  }
}

const detail::RingData& data_of(const std::shared_ptr<const detail::RingData>& d) {
  if (!d) throw Error(ErrorCode::RingMismatch, "element has no ring");
  return *d;
}

bool same_ring(const std::shared_ptr<const detail::RingData>& a,
               const std::shared_ptr<const detail::RingData>& b) {
  if (a == b) return a != nullptr;
  if (!a || !b) return false;
  return a->params == b->params && a->poly == b->poly;
}

void check_same(const std::shared_ptr<const detail::RingData>& a,
                const std::shared_ptr<const detail::RingData>& b) {
  if (!same_ring(a, b)) throw Error(ErrorCode::RingMismatch, "operands belong to different rings");
}

std::vector<u64> mul_coeffs(const detail::RingData& r, std::span<const u64> a, std::span<const u64> b) {
  const int n = r.params.deg;
  const u64 m = r.modulus;
  if (n == 1) return {mulmod(a[0], b[0], m)};
  std::vector<u64> prod(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j], m), m);
  }
  for (int k = 2 * n - 2; k >= n; --k) {
    const u64 c = prod[k];
    if (c == 0) continue;
    for (int i = 0; i < n; ++i) prod[k - n + i] = submod(prod[k - n + i], mulmod(c, r.poly[i], m), m);
  }
  prod.resize(n);
  return prod;
}

}  // namespace

// ---------------------------------------------------------------- WittRing

WittRing WittRing::make(const RingParams& params) {
  if (!is_prime(params.p)) throw Error(ErrorCode::NotPrime, std::to_string(params.p) + " is not prime");
  if (params.deg < 1) throw Error(ErrorCode::MalformedInput, "deg must be >= 1");
  return make(params, default_defining_poly(params.p, params.deg));
}

WittRing WittRing::make(const RingParams& params, std::vector<u64> defining_poly) {
  if (!is_prime(params.p)) throw Error(ErrorCode::NotPrime, std::to_string(params.p) + " is not prime");
  if (params.deg < 1) throw Error(ErrorCode::MalformedInput, "deg must be >= 1");
  if (params.precision < 1) throw Error(ErrorCode::MalformedInput, "precision must be >= 1");

  u64 modulus = 1;
  for (int i = 0; i < params.precision; ++i) {
    if (modulus > ((u64{1} << 63) - 1) / params.p)
      throw Error(ErrorCode::PrecisionTooLarge, "p^N must be below 2^63");
    modulus *= params.p;
  }

  if (static_cast<int>(defining_poly.size()) != params.deg + 1)
    throw Error(ErrorCode::MalformedInput, "defining polynomial must have degree deg");
  for (auto& c : defining_poly) c %= modulus;
  if (defining_poly.back() != 1 % modulus)
    throw Error(ErrorCode::MalformedInput, "defining polynomial must be monic");
  Poly reduced(defining_poly);
  for (auto& c : reduced) c %= params.p;
  if (!is_irreducible(reduced, params.p))
    throw Error(ErrorCode::MalformedInput, "defining polynomial is not irreducible mod p");

  auto data = std::make_shared<detail::RingData>();
  data->params = params;
  data->modulus = modulus;
  data->poly = std::move(defining_poly);
  const int n = params.deg;

  // Identity block for sigma^0 lets elements be built before sigma is known.
  std::vector<std::vector<u64>> identity(n, std::vector<u64>(n, 0));
  for (int i = 0; i < n; ++i) identity[i][i] = 1 % modulus;
  data->sigma_powers.push_back(identity);

  WittRing ring(data);
  if (n > 1) {
    // Newton iteration for the root of f congruent to x^p mod p.
    const WittElem x = ring.generator();
    WittElem y = pow(x, params.p);
    auto eval = [&](const WittElem& t, bool derivative) {
      WittElem acc = ring.zero();
      for (int k = n; k >= (derivative ? 1 : 0); --k) {
        const u64 c = derivative ? mulmod(data->poly[k], static_cast<u64>(k) % modulus, modulus)
                                 : data->poly[k];
        acc = acc * t + ring.from_int(static_cast<std::int64_t>(c));
      }
      return acc;
    };
    int iterations = 0;
    for (;;) {
      const WittElem value = eval(y, false);
      if (value.is_zero()) break;
      if (++iterations > 128) throw Error(ErrorCode::HenselFailure, "Frobenius lift did not converge");
      WittElem slope;
      try {
        slope = unit_inverse(eval(y, true));
      } catch (const Error&) {
        throw Error(ErrorCode::HenselFailure, "defining polynomial is not separable mod p");
      }
      y = y - value * slope;
    }

    // sigma is Z/p^N-linear; column i of sigma^1 is y^i.
    std::vector<std::vector<u64>> sigma1(n);
    WittElem power = ring.one();
    for (int i = 0; i < n; ++i) {
      sigma1[i].assign(power.coeffs().begin(), power.coeffs().end());
      power = power * y;
    }
    for (int k = 1; k < n; ++k) {
      const auto& prev = data->sigma_powers.back();
      std::vector<std::vector<u64>> next(n, std::vector<u64>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          if (prev[i][l] == 0) continue;
          for (int j = 0; j < n; ++j)
            next[i][j] = addmod(next[i][j], mulmod(prev[i][l], sigma1[l][j], modulus), modulus);
        }
      data->sigma_powers.push_back(std::move(next));
    }
  }
  return ring;
}

const RingParams& WittRing::params() const { return data_of(data_).params; }
u64 WittRing::modulus() const { return data_of(data_).modulus; }
std::span<const u64> WittRing::defining_poly() const { return data_of(data_).poly; }

WittElem WittRing::zero() const { return WittElem(data_, std::vector<u64>(deg(), 0)); }

WittElem WittRing::one() const { return from_int(1); }

WittElem WittRing::from_int(std::int64_t value) const {
  const u64 m = modulus();
  std::vector<u64> c(deg(), 0);
  if (value >= 0) {
    c[0] = static_cast<u64>(value) % m;
  } else {
    const u64 mag = static_cast<u64>(-(value + 1)) + 1;
    c[0] = submod(0, mag % m, m);
  }
  return WittElem(data_, std::move(c));
}

WittElem WittRing::p_power(int e) const {
  if (e >= precision()) return zero();
  u64 v = 1;
  for (int i = 0; i < e; ++i) v *= p();
  return from_int(static_cast<std::int64_t>(v));
}

WittElem WittRing::generator() const {
  std::vector<u64> c(deg(), 0);
  if (deg() == 1) {
    // f = x + a, so the class of x is -a.
    c[0] = submod(0, data_of(data_).poly[0], modulus());
  } else {
    c[1] = 1;
  }
  return WittElem(data_, std::move(c));
}

WittElem WittRing::frobenius_image() const { return frobenius(generator(), 1); }

WittElem WittRing::element(std::vector<u64> coeffs) const {
  if (static_cast<int>(coeffs.size()) != deg())
    throw Error(ErrorCode::MalformedInput, "element must have deg coordinates");
  for (auto& c : coeffs) c %= modulus();
  return WittElem(data_, std::move(coeffs));
}

WittRing WittRing::with_precision(int precision) const {
  RingParams params = this->params();
  params.precision = precision;
  std::vector<u64> poly(defining_poly().begin(), defining_poly().end());
  return make(params, std::move(poly));
}

bool operator==(const WittRing& a, const WittRing& b) { return same_ring(a.data_, b.data_); }

// ---------------------------------------------------------------- WittElem

bool WittElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

bool WittElem::is_unit() const {
  const u64 p = data_of(ring_).params.p;
  return std::any_of(coeffs_.begin(), coeffs_.end(), [p](u64 c) { return c % p != 0; });
}

WittElem operator+(const WittElem& a, const WittElem& b) {
  check_same(a.ring_, b.ring_);
  const u64 m = a.ring_->modulus;
  std::vector<u64> c(a.coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = addmod(a.coeffs_[i], b.coeffs_[i], m);
  return WittElem(a.ring_, std::move(c));
}

WittElem operator-(const WittElem& a, const WittElem& b) {
  check_same(a.ring_, b.ring_);
  const u64 m = a.ring_->modulus;
  std::vector<u64> c(a.coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = submod(a.coeffs_[i], b.coeffs_[i], m);
  return WittElem(a.ring_, std::move(c));
}

WittElem operator-(const WittElem& a) {
  const u64 m = data_of(a.ring_).modulus;
  std::vector<u64> c(a.coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = submod(0, a.coeffs_[i], m);
  return WittElem(a.ring_, std::move(c));
}

WittElem operator*(const WittElem& a, const WittElem& b) {
  check_same(a.ring_, b.ring_);
  return WittElem(a.ring_, mul_coeffs(*a.ring_, a.coeffs_, b.coeffs_));
}

bool operator==(const WittElem& a, const WittElem& b) {
  return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
}

std::string WittElem::to_string() const {
  std::ostringstream os;
  if (coeffs_.size() == 1) {
    os << coeffs_[0];
    return os.str();
  }
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << coeffs_[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- free functions

std::optional<int> valuation(const WittElem& a) {
  const u64 p = a.ring().p();
  std::optional<int> best;
  for (u64 c : a.coeffs()) {
    if (c == 0) continue;
    int v = 0;
    while (c % p == 0) {
      c /= p;
      ++v;
    }
    if (!best || v < *best) best = v;
  }
  return best;
}

int valuation_capped(const WittElem& a) { return valuation(a).value_or(a.ring().precision()); }

WittElem frobenius(const WittElem& a, std::int64_t power) {
  const auto& r = data_of(a.ring_);
  const int n = r.params.deg;
  const auto k = static_cast<std::size_t>(((power % n) + n) % n);
  if (k == 0) return a;
  const auto& columns = r.sigma_powers[k];
  const u64 m = r.modulus;
  std::vector<u64> c(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < n; ++j) c[j] = addmod(c[j], mulmod(a.coeffs_[i], columns[i][j], m), m);
  }
  return WittElem(a.ring_, std::move(c));
}

WittElem unit_inverse(const WittElem& a) {
  const WittRing ring = a.ring();
  if (!a.is_unit()) throw Error(ErrorCode::NotAUnit, a.to_string() + " has positive valuation");
  const u64 p = ring.p();
  Poly f(ring.defining_poly().begin(), ring.defining_poly().end());
  for (auto& c : f) c %= p;
  Poly abar(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : abar) c %= p;
  trim(abar);
  Poly inv = poly_inverse(abar, f, p);
  inv.resize(ring.deg(), 0);
  WittElem b = ring.element(std::move(inv));
  // Newton: b <- b (2 - a b) doubles the number of correct p-adic digits.
  const WittElem two = ring.from_int(2);
  for (int digits = 1; digits < ring.precision(); digits *= 2) b = b * (two - a * b);
  return b;
}

WittElem pow(const WittElem& a, std::uint64_t exponent) {
  WittElem result = a.ring().one();
  WittElem base = a;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

WittElem divide_by_p_power(const WittElem& a, int e) {
  const auto& r = data_of(a.ring_);
  if (e <= 0) return a;
  if (valuation_capped(a) < e) throw Error(ErrorCode::NotAUnit, "element is not divisible by p^e");
  u64 pe = 1;
  for (int i = 0; i < e && i < r.params.precision; ++i) pe *= r.params.p;
  std::vector<u64> c(a.coeffs_);
  for (auto& x : c) x /= pe;
  return WittElem(a.ring_, std::move(c));
}

WittElem change_precision(const WittElem& a, const WittRing& target) {
  const auto& src = data_of(a.ring_);
  const auto& dst = data_of(target.data_);
  if (src.params.p != dst.params.p || src.params.deg != dst.params.deg)
    throw Error(ErrorCode::RingMismatch, "precision change requires equal p and deg");
  const u64 common = std::min(src.modulus, dst.modulus);
  for (std::size_t i = 0; i < src.poly.size(); ++i)
    if (src.poly[i] % common != dst.poly[i] % common)
      throw Error(ErrorCode::RingMismatch, "defining polynomials disagree");
  std::vector<u64> c(a.coeffs_);
  for (auto& x : c) x %= dst.modulus;
  return WittElem(target.data_, std::move(c));
}

}  // namespace dvg
