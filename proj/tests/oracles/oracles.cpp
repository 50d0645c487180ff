#include "oracles.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace oracle {

Z sigma(std::int64_t n, int e) {
  Z s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    Z p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e));
    s += p;
  }
  return s;
}

std::vector<Q> classical_eisenstein(int k, std::int64_t N) {
  Q c0;
  switch (k) {
    case 4: c0 = Q(1, 240); break;
    case 6: c0 = Q(-1, 504); break;
    case 8: c0 = Q(1, 480); break;
    case 10: c0 = Q(-1, 264); break;
    case 12: c0 = Q(691, 65520); break;
    case 14: c0 = Q(-1, 24); break;
    default: throw std::invalid_argument("classical_eisenstein: unsupported weight");
  }
  std::vector<Q> out(static_cast<std::size_t>(N + 1));
  out[0] = c0;
  for (std::int64_t n = 1; n <= N; ++n) out[static_cast<std::size_t>(n)] = Q(sigma(n, k - 1));
  return out;
}

std::vector<Z> delta_product(std::int64_t N) {
  // prod (1 - q^n)^24 up to q^(N-1), then shift by one
  std::vector<Z> p(static_cast<std::size_t>(N), 0);
  p[0] = 1;
  for (std::int64_t n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::int64_t i = N - 1; i >= n; --i) p[static_cast<std::size_t>(i)] -= p[static_cast<std::size_t>(i - n)];
  std::vector<Z> out(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t i = 0; i < N; ++i) out[static_cast<std::size_t>(i + 1)] = p[static_cast<std::size_t>(i)];
  return out;
}

std::vector<Q> series_mul(const std::vector<Q>& f, const std::vector<Q>& g) {
  const std::size_t n = std::min(f.size(), g.size());
  std::vector<Q> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += f[i] * g[j];
  return out;
}

namespace {

Z binom(long n, long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  Z out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

std::vector<Q> derive(std::vector<Q> f, int times) {
  for (int t = 0; t < times; ++t)
    for (std::size_t n = 0; n < f.size(); ++n) f[n] = f[n] * Q(static_cast<long>(n));
  return f;
}

}  // namespace

std::vector<Q> naive_bracket(const std::vector<Q>& f, int k, const std::vector<Q>& g, int l, int m) {
  const std::size_t n = std::min(f.size(), g.size());
  std::vector<Q> out(n);
  for (int r = 0; r <= m; ++r) {
    Q c = Q(binom(k + m - 1, m - r) * binom(l + m - 1, r));
    if (r % 2) c = -c;
    if (c == 0) continue;
    std::vector<Q> term = series_mul(derive(f, r), derive(g, m - r));
    for (std::size_t i = 0; i < n; ++i) out[i] += c * term[i];
  }
  return out;
}

Unit fundamental_unit_scan(std::int64_t d) {
  const bool halved = d % 4 == 1;
  const long target = halved ? 4 : 1;
  for (long y = 1; y < 10000000; ++y) {
    Z dy2 = Z(d) * y * y;
    for (int sign : {-1, 1}) {
      Z x2 = dy2 + sign * target;
      if (x2 <= 0) continue;
      Z x = sqrt(x2);
      if (x * x == x2) return Unit{x, Z(y), sign, halved};
    }
  }
  throw std::runtime_error("fundamental_unit_scan: no unit found");
}

namespace {

int kronecker_prime(std::int64_t D, std::int64_t p) {
  if (p == 2) {
    if (D % 2 == 0) return 0;
    const std::int64_t r = ((D % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const std::int64_t a = ((D % p) + p) % p;
  if (a == 0) return 0;
  std::int64_t e = (p - 1) / 2, base = a, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

}  // namespace

int kronecker(std::int64_t D, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("kronecker: n must be positive");
  int result = 1;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p)
    while (m % p == 0) {
      m /= p;
      result *= kronecker_prime(D, p);
    }
  if (m > 1) result *= kronecker_prime(D, m);
  return result;
}

namespace {

using Form = std::tuple<long, long, long>;

long gcd3(long a, long b, long c) {
  auto g = [](long x, long y) {
    x = std::labs(x);
    y = std::labs(y);
    while (y) {
      long t = x % y;
      x = y;
      y = t;
    }
    return x;
  };
  return g(g(a, b), c);
}

Form rho(const Form& f, long D, long double s) {
  const auto [a, b, c] = f;
  (void)a;
  const long ac = std::labs(c);
  const long two_c = 2 * ac;
  long lo_excl;
  long hi_incl;
  if (s < ac) {
    lo_excl = -ac;
    hi_incl = ac;
  } else {
    lo_excl = static_cast<long>(std::floor(s - two_c));
    hi_incl = static_cast<long>(std::floor(s));
  }
  long r = lo_excl + 1;
  long want = ((-b) % two_c + two_c) % two_c;
  r += ((want - r) % two_c + two_c) % two_c;
  if (r > hi_incl) throw std::logic_error("rho: no admissible b");
  return Form{c, r, (r * r - D) / (4 * c)};
}

}  // namespace

int narrow_class_number(std::int64_t D) {
  const long double s = std::sqrt(static_cast<long double>(D));
  std::set<Form> reduced;
  for (long b = 1; b < s; ++b) {
    if ((b - D) % 2) continue;
    const long num = b * b - D;  // = 4ac < 0
    for (long A = 1; 2 * A < s + b; ++A) {
      if (!(s - b < 2 * A)) continue;
      for (long a : {A, -A}) {
        if (num % (4 * a)) continue;
        const long c = num / (4 * a);
        if (gcd3(a, b, c) == 1) reduced.insert(Form{a, b, c});
      }
    }
  }
  int cycles = 0;
  std::set<Form> seen;
  for (const Form& f : reduced) {
    if (seen.count(f)) continue;
    ++cycles;
    Form g = f;
    while (!seen.count(g)) {
      seen.insert(g);
      g = rho(g, D, s);
      if (!reduced.count(g)) throw std::logic_error("rho left the reduced set");
    }
  }
  return cycles;
}

std::int64_t ideal_count(std::int64_t D, std::int64_t n) {
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) total += kronecker(D, d);
  return total;
}

bool totally_positive_float(std::int64_t d, std::int64_t a, std::int64_t b) {
  const long double r = std::sqrt(static_cast<long double>(d));
  long double w1, w2;
  if (d % 4 == 1) {
    w1 = (1 + r) / 2;
    w2 = (1 - r) / 2;
  } else {
    w1 = r;
    w2 = -r;
  }
  return a + b * w1 > 0 && a + b * w2 > 0;
}

}  // namespace oracle
