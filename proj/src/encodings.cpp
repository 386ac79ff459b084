#include "cardmpc/encodings.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "cardmpc/error.hpp"

namespace cardmpc {

namespace {

// Inverse of a modulo m, for gcd(a, m) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a % m, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) fail(ErrorCode::Domain, "moduli are not coprime");
  return ((old_s % m) + m) % m;
}

bool is_prime_power(std::int64_t q, std::int64_t* prime, int* exponent) {
  if (q < 2) return false;
  std::int64_t p = 0;
  for (std::int64_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) p = q;
  int e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return false;
  *prime = p;
  *exponent = e;
  return true;
}

}  // namespace

std::vector<std::int64_t> CrtDecomposition::moduli() const {
  std::vector<std::int64_t> out;
  for (const auto& f : factors) out.push_back(f.modulus);
  return out;
}

std::int64_t CrtDecomposition::modulus_sum() const {
  std::int64_t s = 0;
  for (const auto& f : factors) s += f.modulus;
  return s;
}

CrtDecomposition crt_decompose(std::int64_t n) {
  if (n < 1) fail(ErrorCode::Domain, "n must be positive, got " + std::to_string(n));
  if (n < 2) fail(ErrorCode::SchemeInapplicable, "CRT scheme needs n >= 2");
  CrtDecomposition d;
  d.n = n;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    PrimePowerFactor f{p, 0, 1};
    while (rest % p == 0) {
      rest /= p;
      ++f.exponent;
      f.modulus *= p;
    }
    d.factors.push_back(f);
  }
  if (rest > 1) d.factors.push_back({rest, 1, rest});
  if (d.factors.size() < 2) {
    fail(ErrorCode::SchemeInapplicable,
         std::to_string(n) + " is a prime power; the CRT scheme needs at least two distinct prime factors");
  }
  std::sort(d.factors.begin(), d.factors.end(),
            [](const PrimePowerFactor& a, const PrimePowerFactor& b) { return a.modulus < b.modulus; });
  d.largest = d.factors.back().modulus;
  return d;
}

std::int64_t crt_reconstruct(const std::vector<std::int64_t>& residues, const CrtDecomposition& d) {
  if (residues.size() != d.factors.size()) {
    fail(ErrorCode::Domain, "expected " + std::to_string(d.factors.size()) + " residues, got " +
                                std::to_string(residues.size()));
  }
  std::int64_t x = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const std::int64_t q = d.factors[i].modulus;
    if (residues[i] < 0 || residues[i] >= q) fail(ErrorCode::Domain, "residue out of range for its modulus");
    const std::int64_t rest = d.n / q;
    // rest * inverse(rest mod q) is 1 mod q and 0 mod every other modulus.
    const std::int64_t basis = rest * mod_inverse(rest % q, q) % d.n;
    x = (x + residues[i] * basis) % d.n;
  }
  return x;
}

int ceil_lg(std::int64_t n) {
  if (n < 1) fail(ErrorCode::Domain, "ceil_lg needs n >= 1");
  int bits = 0;
  for (std::uint64_t v = static_cast<std::uint64_t>(n - 1); v != 0; v >>= 1) ++bits;
  return bits;
}

Scheme Scheme::direct(int n) {
  if (n < 2) fail(ErrorCode::Domain, "direct scheme needs n >= 2");
  Scheme s(Kind::Direct, n);
  s.parts_ = {n};
  return s;
}

Scheme Scheme::binary(int n) {
  if (n < 2) fail(ErrorCode::Domain, "binary scheme needs n >= 2");
  Scheme s(Kind::Binary, n);
  s.parts_.assign(static_cast<std::size_t>(ceil_lg(n)), 2);
  return s;
}

Scheme Scheme::crt(int n) {
  Scheme s(Kind::Crt, n);
  s.decomposition_ = crt_decompose(n);
  for (const auto& f : s.decomposition_.factors) s.parts_.push_back(static_cast<int>(f.modulus));
  return s;
}

Scheme Scheme::crt_from_moduli(const std::vector<int>& moduli) {
  if (moduli.size() < 2) fail(ErrorCode::SchemeInapplicable, "CRT scheme needs at least two moduli");
  std::int64_t n = 1;
  std::vector<std::int64_t> primes;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::int64_t p = 0;
    int e = 0;
    if (!is_prime_power(moduli[i], &p, &e)) {
      fail(ErrorCode::SchemeInapplicable, std::to_string(moduli[i]) + " is not a prime power");
    }
    if (std::find(primes.begin(), primes.end(), p) != primes.end()) {
      fail(ErrorCode::SchemeInapplicable, "moduli share the prime " + std::to_string(p));
    }
    if (i > 0 && moduli[i] <= moduli[i - 1]) fail(ErrorCode::SchemeInapplicable, "moduli must be ascending");
    primes.push_back(p);
    n *= moduli[i];
  }
  return crt(static_cast<int>(n));
}

Scheme Scheme::parse(std::string_view name, int n) {
  if (name == "direct") return direct(n);
  if (name == "binary") return binary(n);
  if (name == "crt") return crt(n);
  fail(ErrorCode::Domain, "unknown scheme '" + std::string(name) + "' (expected direct, binary or crt)");
}

const CrtDecomposition& Scheme::decomposition() const {
  if (kind_ != Kind::Crt) fail(ErrorCode::SchemeMismatch, "scheme has no CRT decomposition");
  return decomposition_;
}

std::string Scheme::name() const { return scheme_kind_name(kind_); }

const char* scheme_kind_name(Scheme::Kind k) noexcept {
  switch (k) {
    case Scheme::Kind::Direct: return "direct";
    case Scheme::Kind::Binary: return "binary";
    case Scheme::Kind::Crt: return "crt";
  }
  return "?";
}

CardCount Commitment::count() const noexcept {
  CardCount c;
  for (const auto& p : parts) c += p.count();
  return c;
}

std::string Commitment::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '|';
    out += parts[i].symbols();
  }
  return out;
}

Commitment encode(const Scheme& scheme, int a) {
  if (a < 0 || a >= scheme.n()) {
    fail(ErrorCode::Domain, "value " + std::to_string(a) + " outside [0, " + std::to_string(scheme.n()) + ")");
  }
  Commitment c{scheme, {}};
  const auto& moduli = scheme.part_moduli();
  switch (scheme.kind()) {
    case Scheme::Kind::Direct:
      c.parts.push_back(encode_En(scheme.n(), a));
      break;
    case Scheme::Kind::Binary:
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        const auto shift = moduli.size() - 1 - i;
        c.parts.push_back(encode_En(2, (a >> shift) & 1));
      }
      break;
    case Scheme::Kind::Crt:
      for (int q : moduli) c.parts.push_back(encode_En(q, a % q));
      break;
  }
  return c;
}

namespace {

void check_shape(const Commitment& c) {
  const auto& moduli = c.scheme.part_moduli();
  if (c.parts.size() != moduli.size()) {
    fail(ErrorCode::MalformedEncoding, "expected " + std::to_string(moduli.size()) + " parts, got " +
                                           std::to_string(c.parts.size()));
  }
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (static_cast<int>(c.parts[i].size()) != moduli[i]) {
      fail(ErrorCode::MalformedEncoding, "part " + std::to_string(i) + " has " + std::to_string(c.parts[i].size()) +
                                             " cards, expected " + std::to_string(moduli[i]));
    }
  }
}

}  // namespace

int decode(const Commitment& c) {
  check_shape(c);
  std::vector<std::int64_t> residues;
  for (const auto& part : c.parts) residues.push_back(decode_En(part));
  switch (c.scheme.kind()) {
    case Scheme::Kind::Direct:
      return static_cast<int>(residues[0]);
    case Scheme::Kind::Binary: {
      std::int64_t v = 0;
      for (auto bit : residues) v = (v << 1) | bit;
      if (v >= c.scheme.n()) {
        fail(ErrorCode::MalformedEncoding, "binary commitment encodes " + std::to_string(v) + ", outside Z/" +
                                               std::to_string(c.scheme.n()) + "Z");
      }
      return static_cast<int>(v);
    }
    case Scheme::Kind::Crt:
      return static_cast<int>(crt_reconstruct(residues, c.scheme.decomposition()));
  }
  return -1;
}

Commitment parse_commitment(const Scheme& scheme, std::string_view symbols) {
  Commitment c{scheme, {}};
  std::size_t start = 0;
  while (true) {
    const auto bar = symbols.find('|', start);
    c.parts.push_back(Sequence::from_symbols(symbols.substr(start, bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  check_shape(c);
  return c;
}

int commitment_width(const Scheme& scheme) {
  const auto& m = scheme.part_moduli();
  return std::accumulate(m.begin(), m.end(), 0);
}

}  // namespace cardmpc
