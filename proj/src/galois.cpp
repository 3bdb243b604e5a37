#include "dmf/galois.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "dmf/factor.hpp"
#include "dmf/parallel.hpp"
#include "dmf/univ_factor.hpp"

namespace dmf {

namespace {

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct Props {
  bool full, transposition, prime_cycle;
};

Props classify(const std::vector<int>& parts, int d) {
  Props p{false, false, false};
  p.full = parts.size() == 1 && parts[0] == d;
  int twos = 0;
  bool others_odd = true;
  for (int x : parts) {
    if (x == 2)
      ++twos;
    else if (x % 2 == 0)
      others_odd = false;
    if (is_prime_int(x) && 2 * x > d) p.prime_cycle = true;
  }
  p.transposition = twos == 1 && others_odd;
  return p;
}

// Degree of c over F_q inside F_{q^m}.
std::uint32_t element_degree(const GF& E, std::uint32_t q, std::uint32_t m, Elt c) {
  for (std::uint32_t j = 1; j < m; ++j) {
    if (m % j) continue;
    Elt x = c;
    for (std::uint32_t r = 0; r < j; ++r) x = E.pow(x, q);
    if (x == c) return j;
  }
  return m;
}

}  // namespace

CycleTypeDensities symmetric_densities(int d) {
  CycleTypeDensities out;
  if (d < 1) return out;
  std::vector<int> parts;
  // each partition λ has density 1 / ∏ i^{m_i} m_i!
  std::function<void(int, int)> rec = [&](int left, int maxp) {
    if (left == 0) {
      double w = 1;
      std::vector<int> mult(static_cast<std::size_t>(d) + 1, 0);
      for (int x : parts) ++mult[static_cast<std::size_t>(x)];
      for (int i = 1; i <= d; ++i)
        for (int k = 1; k <= mult[static_cast<std::size_t>(i)]; ++k) w /= static_cast<double>(i) * k;
      std::vector<int> asc(parts.rbegin(), parts.rend());
      Props p = classify(asc, d);
      if (p.full) out.full_cycle += w;
      if (p.transposition) out.transposition += w;
      if (p.prime_cycle) out.prime_cycle += w;
      return;
    }
    for (int x = std::min(left, maxp); x >= 1; --x) {
      parts.push_back(x);
      rec(left - x, x);
      parts.pop_back();
    }
  };
  rec(d, d);
  return out;
}

GaloisCertificate galois_sample(const GF& F, const BiPoly& Q, std::size_t trials, std::uint64_t seed) {
  GaloisCertificate cert;
  const int d = bipoly::deg(Q);
  cert.degree = d;
  if (d < 1) throw std::invalid_argument("galois_sample: degree must be at least 1");
  const std::uint32_t q = F.size();
  // fields with plenty of points, capped in size
  std::uint32_t m0 = 1;
  std::uint64_t Qm = q;
  while (Qm < 20ull * static_cast<std::uint64_t>(d) + 20 && Qm * q <= (1u << 20)) {
    ++m0;
    Qm *= q;
  }
  std::vector<std::uint32_t> ms;
  for (std::uint32_t m = m0, size = static_cast<std::uint32_t>(Qm); ms.size() < 3; ++m) {
    ms.push_back(m);
    if (static_cast<std::uint64_t>(size) * q > (1u << 20)) break;
    size *= q;
  }
  std::vector<std::vector<int>> pats(trials);
  parallel_for(trials, [&](std::size_t i) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + i);
    const std::uint32_t m = ms[i % ms.size()];
    const FieldCtx& ctx = tower(F.p(), F.degree(), m);
    const GF& E = *ctx.ext;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Elt c = static_cast<Elt>(rng() % E.size());
      if (element_degree(E, q, m, c) != m) continue;
      Poly pc = bipoly::specialize(ctx, Q, c);
      if (!is_squarefree(E, pc)) continue;
      pats[i] = degree_pattern(E, pc);
      return;
    }
  });
  for (auto& p : pats) {
    if (p.empty()) continue;
    ++cert.trials;
    ++cert.types[p];
    Props pr = classify(p, d);
    cert.saw_full_cycle |= pr.full;
    cert.saw_transposition |= pr.transposition;
    cert.saw_prime_cycle |= pr.prime_cycle;
  }
  if (d == 1) {
    cert.saw_full_cycle = cert.saw_prime_cycle = cert.saw_transposition = true;
  }
  cert.certified = cert.saw_full_cycle && cert.saw_transposition && cert.saw_prime_cycle;
  if (cert.certified) {
    cert.confidence = 1;
    cert.verdict = "S_" + std::to_string(d) + " certified";
  } else {
    CycleTypeDensities D = symmetric_densities(d);
    double miss = 0;
    const double T = static_cast<double>(cert.trials);
    if (!cert.saw_full_cycle) miss = std::max(miss, std::pow(1 - D.full_cycle, T));
    if (!cert.saw_transposition) miss = std::max(miss, std::pow(1 - D.transposition, T));
    if (!cert.saw_prime_cycle) miss = std::max(miss, std::pow(1 - D.prime_cycle, T));
    cert.confidence = 1 - miss;
    std::ostringstream os;
    os << "inconclusive (missing:";
    if (!cert.saw_full_cycle) os << " full cycle";
    if (!cert.saw_transposition) os << " transposition";
    if (!cert.saw_prime_cycle) os << " large prime cycle";
    os << ")";
    cert.verdict = os.str();
  }
  return cert;
}

}  // namespace dmf
