#include "shabound/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

namespace shabound {

namespace {

constexpr std::uint32_t kTrialLimit = 1000000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j < kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Strong probable-prime test to base a; n odd, n > a.
bool strong_probable_prime(const Int& n, unsigned long a) {
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int x;
  Int base = a;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Int n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int halve_mod(const Int& a, const Int& n) {
  Int v = mod_floor(a, n);
  if (mpz_odd_p(v.get_mpz_t())) v += n;
  return v / 2;
}

// Strong Lucas probable-prime test with Selfridge parameters; n odd, not a square.
bool strong_lucas_probable_prime(const Int& n) {
  long d_sel = 5;
  for (;;) {
    Int dd = d_sel;
    int j = mpz_jacobi(dd.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && mpz_cmpabs(dd.get_mpz_t(), n.get_mpz_t()) < 0) return false;
    d_sel = d_sel > 0 ? -(d_sel + 2) : -(d_sel - 2);
  }
  const Int big_d = d_sel;
  const Int big_p = 1;
  const Int big_q = (1 - d_sel) / 4;

  Int k = n + 1;
  unsigned long s = mpz_scan1(k.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), s);

  Int u = 1, v = big_p, qk = mod_floor(big_q, n);
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    u = (u * v) % n;
    v = mod_floor(v * v - 2 * qk, n);
    qk = (qk * qk) % n;
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      Int u2 = halve_mod(big_p * u + v, n);
      Int v2 = halve_mod(big_d * u + big_p * v, n);
      u = u2;
      v = v2;
      qk = mod_floor(qk * big_q, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = mod_floor(v * v - 2 * qk, n);
    if (v == 0) return true;
    qk = (qk * qk) % n;
  }
  return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or nothing when
// the iteration allowance runs out.
std::optional<Int> rho_split(const Int& n, std::uint64_t& allowance) {
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  constexpr std::uint64_t kBatch = 128;
  for (unsigned long c = 1; allowance > 0; ++c) {
    Int y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    auto step = [&](const Int& z) -> Int { return (z * z + c) % n; };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          Int diff = x - y;
          q = (q * abs(diff)) % n;
        }
        if (allowance <= lim) {
          allowance = 0;
          g = gcd(q, n);
          if (g == 1 || g == n) return std::nullopt;
          break;
        }
        allowance -= lim;
        g = gcd(q, n);
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        Int diff = x - ys;
        g = gcd(abs(diff), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

}  // namespace

FactorBudget FactorBudget::from_env() {
  FactorBudget b;
  if (const char* env = std::getenv("SHABOUND_FACTOR_BUDGET")) {
    try {
      b.rho_iterations = std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return b;
}

std::vector<Int> Factorization::primes() const {
  std::vector<Int> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

unsigned Factorization::valuation(const Int& q) const {
  for (const auto& f : factors)
    if (f.prime == q) return f.exponent;
  return 0;
}

Int Factorization::product() const {
  Int acc = sign;
  for (const auto& f : factors) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    acc *= pw;
  }
  return acc;
}

const Int& prime_range_limit() {
  static const Int limit = [] {
    Int l;
    mpz_ui_pow_ui(l.get_mpz_t(), 2, 128);
    return l;
  }();
  return limit;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n >= prime_range_limit()) throw RangeError("primality input exceeds 128-bit working range");
  static constexpr unsigned long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long w : kWitnesses) {
    if (n == w) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
  }
  for (unsigned long w : kWitnesses)
    if (!strong_probable_prime(n, w)) return false;
  // Witnesses 2..41 are a proof below 3.317e24; above it add a strong Lucas test.
  static const Int kProvenBound("3317044064679887385961981");
  if (n < kProvenBound) return true;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  return strong_lucas_probable_prime(n);
}

FactorOutcome factor(const Int& n, const FactorBudget& budget) {
  if (n == 0) throw ValidationError("n", "cannot factor zero");
  Factorization out;
  out.value = n;
  out.sign = n < 0 ? -1 : 1;
  Int rem = abs(n);
  std::map<Int, unsigned> found;

  bool rem_is_prime = false;
  for (std::uint32_t p : small_primes()) {
    if (rem == 1) break;
    if (Int(p) * p > rem) {
      rem_is_prime = true;
      break;
    }
    while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
      ++found[Int(p)];
    }
  }
  Int unresolved = 1;
  if (rem > 1) {
    if (rem_is_prime) {
      ++found[rem];
    } else {
      std::uint64_t allowance = budget.rho_iterations;
      std::vector<Int> stack{rem};
      while (!stack.empty()) {
        Int m = std::move(stack.back());
        stack.pop_back();
        if (m == 1) continue;
        if (m < prime_range_limit()) {
          if (is_prime(m)) {
            ++found[m];
            continue;
          }
        } else if (strong_probable_prime(m, 2)) {
          // Probably prime but not certifiable in range: rho cannot help.
          unresolved *= m;
          continue;
        }
        if (mpz_perfect_power_p(m.get_mpz_t())) {
          bool split = false;
          for (unsigned long k = mpz_sizeinbase(m.get_mpz_t(), 2); k >= 2; --k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
              for (unsigned long i = 0; i < k; ++i) stack.push_back(root);
              split = true;
              break;
            }
          }
          if (split) continue;
        }
        if (auto d = rho_split(m, allowance)) {
          Int other = m / *d;
          stack.push_back(*d);
          stack.push_back(other);
        } else {
          unresolved *= m;
        }
      }
    }
  }
  for (auto& [prime, e] : found) out.factors.push_back({prime, e});
  if (unresolved != 1) return Incomplete{std::move(out), unresolved};
  return out;
}

Factorization factor_complete(const Int& n, const FactorBudget& budget) {
  auto result = factor(n, budget);
  if (auto* inc = std::get_if<Incomplete>(&result)) throw IncompleteFactorization(inc->cofactor);
  return std::get<Factorization>(std::move(result));
}

unsigned valuation(const Int& n, const Int& q) {
  if (n == 0) throw ValidationError("n", "valuation of zero");
  Int tmp;
  return static_cast<unsigned>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t()));
}

long valuation(const Rat& x, const Int& q) {
  if (x == 0) throw ValidationError("x", "valuation of zero");
  return static_cast<long>(valuation(Int(x.get_num()), q)) -
         static_cast<long>(valuation(Int(x.get_den()), q));
}

Int inverse_mod(const Int& a, const Int& m) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw ValidationError("a", a.get_str() + " is not invertible modulo " + m.get_str());
  return inv;
}

Int reduce_mod(const Rat& x, const Int& m) {
  Int num = mod_floor(Int(x.get_num()), m);
  if (x.get_den() == 1) return num;
  return mod_floor(num * inverse_mod(Int(x.get_den()), m), m);
}

Int smallest_primitive_root(const Int& ell, const FactorBudget& budget) {
  if (ell == 2) return 1;
  const Int order = ell - 1;
  const auto fac = factor_complete(order, budget);
  for (Int r = 2;; ++r) {
    bool ok = true;
    for (const auto& f : fac.factors) {
      Int e = order / f.prime, x;
      mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), ell.get_mpz_t());
      if (x == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
}

ResidueCharacter::ResidueCharacter(Int ell, unsigned p, const FactorBudget& budget)
    : ell_(std::move(ell)), p_(p) {
  if (p < 3 || !is_prime(Int(p))) throw ValidationError("p", "p must be an odd prime");
  if (!is_prime(ell_)) throw ValidationError("ell", ell_.get_str() + " is not prime");
  if (mpz_fdiv_ui(ell_.get_mpz_t(), p) != 1)
    throw ValidationError("ell", ell_.get_str() + " is not 1 mod " + std::to_string(p));
  exponent_ = (ell_ - 1) / p;
  Int r = smallest_primitive_root(ell_, budget);
  mpz_powm(generator_.get_mpz_t(), r.get_mpz_t(), exponent_.get_mpz_t(), ell_.get_mpz_t());
  powers_.reserve(p);
  Int acc = 1;
  for (unsigned i = 0; i < p; ++i) {
    powers_.push_back(acc);
    acc = (acc * generator_) % ell_;
  }
}

unsigned ResidueCharacter::operator()(const Int& a) const {
  Int r = mod_floor(a, ell_);
  if (r == 0) throw ValidationError("a", a.get_str() + " is divisible by " + ell_.get_str());
  Int h;
  mpz_powm(h.get_mpz_t(), r.get_mpz_t(), exponent_.get_mpz_t(), ell_.get_mpz_t());
  for (unsigned i = 0; i < p_; ++i)
    if (powers_[i] == h) return i;
  throw std::logic_error("residue character: power not in subgroup of order p");
}

unsigned ResidueCharacter::operator()(const Rat& a) const {
  if (mpz_divisible_p(a.get_den().get_mpz_t(), ell_.get_mpz_t()))
    throw ValidationError("a", "denominator divisible by " + ell_.get_str());
  return (*this)(reduce_mod(a, ell_));
}

unsigned character_eval(const ResidueCharacter& chi, const Int& a) { return chi(a); }

unsigned fermat_quotient(const Rat& u, unsigned p) {
  const Int pp = Int(p) * p;
  if (valuation(u, Int(p)) != 0) throw ValidationError("u", "not a unit at p");
  Int r = reduce_mod(u, pp);
  Int x;
  Int e = p - 1;
  mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), pp.get_mpz_t());
  Int q = (x - 1) / p;
  return static_cast<unsigned>(mpz_fdiv_ui(q.get_mpz_t(), p));
}

bool is_unit_pth_power_at_p(const Rat& u, unsigned p) { return fermat_quotient(u, p) == 0; }

bool is_local_pth_power(const Rat& x, const Int& q, unsigned p) {
  if (x == 0) throw ValidationError("x", "zero has no valuation");
  if (!is_prime(q)) throw ValidationError("q", q.get_str() + " is not prime");
  const long v = valuation(x, q);
  if (v % static_cast<long>(p) != 0) return false;
  Rat unit = x;
  Int qv;
  mpz_pow_ui(qv.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(std::labs(v)));
  if (v > 0) unit /= qv;
  if (v < 0) unit *= qv;
  unit.canonicalize();
  if (q == p) return is_unit_pth_power_at_p(unit, p);
  if (mpz_fdiv_ui(q.get_mpz_t(), p) == 1) return ResidueCharacter(q, p)(unit) == 0;
  return true;
}

Int crt_solve(std::span<const Congruence> congruences) {
  for (std::size_t i = 0; i < congruences.size(); ++i) {
    if (congruences[i].modulus <= 0) throw ValidationError("modulus", "moduli must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (gcd(congruences[i].modulus, congruences[j].modulus) != 1)
        throw ValidationError("modulus", "moduli " + congruences[j].modulus.get_str() + " and " +
                                             congruences[i].modulus.get_str() +
                                             " are not coprime");
  }
  Int x = 0, m = 1;
  for (const auto& c : congruences) {
    // x + m*k = residue (mod modulus)
    Int delta = mod_floor(c.residue - x, c.modulus);
    Int k = mod_floor(delta * inverse_mod(m % c.modulus, c.modulus), c.modulus);
    x += m * k;
    m *= c.modulus;
  }
  return mod_floor(x, m);
}

std::variant<std::size_t, Incomplete> count_distinct_prime_factors(const Int& n,
                                                                    const FactorBudget& budget) {
  auto result = factor(n, budget);
  if (auto* inc = std::get_if<Incomplete>(&result)) return std::move(*inc);
  return std::get<Factorization>(result).factors.size();
}

SplittingData cyclotomic_splitting(const Int& ell, unsigned p) {
  if (p < 3 || !is_prime(Int(p))) throw ValidationError("p", "p must be an odd prime");
  if (ell == p) throw ValidationError("ell", "ell = p is ramified in Q(zeta_p)");
  if (!is_prime(ell)) throw ValidationError("ell", ell.get_str() + " is not prime");
  const unsigned long base = mpz_fdiv_ui(ell.get_mpz_t(), p);
  unsigned f = 1;
  for (unsigned long acc = base; acc != 1; acc = acc * base % p) ++f;
  return {ell, p, f, (p - 1) / f};
}

}  // namespace shabound
