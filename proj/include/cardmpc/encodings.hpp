#pragma once

// Commitment schemes over Z/nZ built from E_n sequences.
//
//   direct  one E_n(a)
//   binary  one E_2 per bit of a, most significant bit first
//   crt     one E_q(a mod q) per prime-power factor q of n, ascending q

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cardmpc/deck.hpp"

namespace cardmpc {

struct PrimePowerFactor {
  std::int64_t prime = 0;
  int exponent = 0;
  std::int64_t modulus = 0;  // prime^exponent

  friend bool operator==(const PrimePowerFactor&, const PrimePowerFactor&) = default;
};

struct CrtDecomposition {
  std::int64_t n = 0;
  std::vector<PrimePowerFactor> factors;  // ascending modulus
  std::int64_t largest = 0;

  std::vector<std::int64_t> moduli() const;
  std::int64_t modulus_sum() const;
};

// Throws SchemeInapplicable when n has fewer than two distinct prime factors.
CrtDecomposition crt_decompose(std::int64_t n);

// Unique x in [0, n) with x = residues[i] mod factors[i].modulus.
std::int64_t crt_reconstruct(const std::vector<std::int64_t>& residues, const CrtDecomposition& d);

// ceil(lg n), taken as the bit length of n - 1.
int ceil_lg(std::int64_t n);

class Scheme {
 public:
  enum class Kind { Direct, Binary, Crt };

  static Scheme direct(int n);
  static Scheme binary(int n);
  static Scheme crt(int n);
  // Validates that `moduli` are ascending, pairwise coprime prime powers, k > 1.
  static Scheme crt_from_moduli(const std::vector<int>& moduli);
  // "direct" | "binary" | "crt".
  static Scheme parse(std::string_view name, int n);

  Kind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  const std::vector<int>& part_moduli() const noexcept { return parts_; }
  const CrtDecomposition& decomposition() const;

  std::string name() const;

  friend bool operator==(const Scheme& a, const Scheme& b) { return a.kind_ == b.kind_ && a.n_ == b.n_; }

 private:
  Scheme(Kind kind, int n) : kind_(kind), n_(n) {}

  Kind kind_;
  int n_;
  std::vector<int> parts_;  // modulus of each part, in layout order
  CrtDecomposition decomposition_;
};

const char* scheme_kind_name(Scheme::Kind k) noexcept;

struct Commitment {
  Scheme scheme;
  std::vector<Sequence> parts;

  CardCount count() const noexcept;
  // e.g. "CH|HCH"; harness-only face-up view.
  std::string to_string() const;
};

Commitment encode(const Scheme& scheme, int a);
int decode(const Commitment& c);
Commitment parse_commitment(const Scheme& scheme, std::string_view symbols);

// Cards per commitment: n, 2 ceil(lg n), or the sum of the CRT moduli.
int commitment_width(const Scheme& scheme);

}  // namespace cardmpc
