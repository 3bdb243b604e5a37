#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dmf {

// Field element: base-p digits of the polynomial-basis coordinates, packed
// little-endian into one integer (digit i has weight p^i).
using Elt = std::uint32_t;

class GF;
using GFPtr = std::shared_ptr<const GF>;

/// The finite field F_{p^n} = F_p[x]/(f), f the lexicographically least monic
/// irreducible of degree n (coefficients compared from x^{n-1} down to x^0).
class GF {
 public:
  static GFPtr make(std::uint32_t p, std::uint32_t n);
  /// Uses a caller-supplied monic modulus (low degree first); throws if reducible.
  static GFPtr make_with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return n_; }
  std::uint32_t size() const { return q_; }
  bool is_prime() const { return n_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }
  Elt generator() const { return exp_[1]; }

  Elt add(Elt a, Elt b) const {
    if (prime_) { Elt s = a + b; return s >= p_ ? s - p_ : s; }
    if (p_ == 2) return a ^ b;
    if (small_) return add_tab_[a * q_ + b];
    if (!a) return b;
    if (!b) return a;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t d = lb >= la ? lb - la : lb + ord_ - la;
    std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + static_cast<std::uint32_t>(z)];
  }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt sub(Elt a, Elt b) const { return add(a, neg_[b]); }
  Elt mul(Elt a, Elt b) const {
    if (prime_) return static_cast<Elt>((static_cast<std::uint64_t>(a) * b) % p_);
    if (!a || !b) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elt inv(Elt a) const {
    if (!a) throw std::domain_error("GF: inverse of zero");
    return exp_[(ord_ - log_[a]) % ord_];
  }
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::int64_t e) const;
  Elt frob(Elt a) const { return pow(a, p_); }
  /// Unique x with x^p = a.
  Elt pth_root(Elt a) const { return pow(a, q_ / p_); }
  /// Discrete log base generator(); a must be nonzero.
  std::uint32_t log(Elt a) const { return log_[a]; }
  Elt exp(std::uint64_t i) const { return exp_[i % ord_]; }
  std::uint32_t order() const { return ord_; }

  Elt from_int(std::int64_t v) const;  // image of an integer in the prime field
  std::vector<std::uint32_t> digits(Elt a) const;
  Elt from_digits(const std::vector<std::uint32_t>& d) const;
  std::vector<Elt> elements() const;
  std::string to_string(Elt a) const;

  GF(std::uint32_t p, std::vector<std::uint32_t> modulus);

 private:
  std::uint32_t p_, n_, q_, ord_;
  bool prime_, small_;
  std::vector<std::uint32_t> mod_;
  std::vector<Elt> exp_;            // length 2*ord so log sums need no reduction
  std::vector<std::uint32_t> log_;
  std::vector<std::int32_t> zech_;
  std::vector<Elt> neg_;
  std::vector<Elt> add_tab_;
};

bool is_prime_u64(std::uint64_t n);
/// Rabin irreducibility test over F_p (coefficients low degree first, any leading coefficient).
bool fp_poly_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f);

/// F_p ⊂ F_q ⊂ F_{q^m} with q = p^e; F_q is embedded in F_{q^m} via the least root of its modulus.
struct FieldCtx {
  std::uint32_t p = 0, e = 0, m = 0;
  GFPtr base;  // F_q
  GFPtr ext;   // F_{q^m}
  std::vector<Elt> embed;  // F_q element -> F_{q^m} element
  std::unordered_map<Elt, Elt> restrict_map;

  std::uint32_t q() const { return base->size(); }
  Elt up(Elt a) const { return embed[a]; }
  /// Inverse of up(); returns false if x is not in the image of F_q.
  bool down(Elt x, Elt& out) const;
};

FieldCtx field_make(std::uint32_t p, std::uint32_t e, std::uint32_t m);

/// Shared F_q for a prime power q (standard modulus); throws if q is not a prime power.
GFPtr gf_of(std::uint32_t q);

}  // namespace dmf
