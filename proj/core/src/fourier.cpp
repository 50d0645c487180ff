#include "hmf/fourier.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

namespace hmf {

// ---------------------------------------------------------------------------
// WeightVector

WeightVector WeightVector::parallel(int degree, int k) {
  return WeightVector{std::vector<int>(static_cast<std::size_t>(degree), k)};
}

bool WeightVector::is_parallel() const {
  return std::adjacent_find(components.begin(), components.end(), std::not_equal_to<>()) ==
         components.end();
}

int WeightVector::k0() const {
  if (components.empty()) return 0;
  return *std::max_element(components.begin(), components.end());
}

std::string WeightVector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < components.size(); ++i) os << (i ? "," : "") << components[i];
  os << ")";
  return os.str();
}

WeightVector operator+(const WeightVector& x, const WeightVector& y) {
  if (x.degree() != y.degree()) throw PreconditionError("weight vectors of different length");
  WeightVector r = x;
  for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] += y.components[i];
  return r;
}

// ---------------------------------------------------------------------------
// TraceBox

TraceBox::TraceBox(const QuadraticRing& ring, std::int64_t trace_bound)
    : ring_(ring), trace_bound_(trace_bound) {
  if (trace_bound < 1) throw PreconditionError("trace bound must be positive");
  const auto T = static_cast<std::size_t>(trace_bound);
  offsets_.assign(T + 2, 0);
  bmax_.assign(T + 1, -1);
  for (std::int64_t t = 1; t <= trace_bound; ++t) {
    std::int64_t bm = -1;
    if (ring.degree == 1) {
      bm = 0;
    } else if (ring.half_omega) {
      // largest b = t (mod 2) with d b^2 < t^2
      std::int64_t b = t;
      while (b >= 0 && ring.d * b * b >= t * t) --b;
      if (b >= 0 && ((t - b) & 1)) --b;
      bm = b;
    } else if (t % 2 == 0) {
      std::int64_t b = t;
      while (b >= 0 && 4 * ring.d * b * b >= t * t) --b;
      bm = b;
    }
    bmax_[static_cast<std::size_t>(t)] = bm;
    std::size_t n = 0;
    if (bm >= 0) n = ring.degree == 1 ? 1 : (ring.half_omega ? static_cast<std::size_t>(bm + 1)
                                                             : static_cast<std::size_t>(2 * bm + 1));
    offsets_[static_cast<std::size_t>(t) + 1] = offsets_[static_cast<std::size_t>(t)] + n;
  }
  keys_.reserve(offsets_.back());
  for (std::int64_t t = 1; t <= trace_bound; ++t) {
    const std::int64_t bm = bmax(t);
    if (bm < 0) continue;
    if (ring.degree == 1) {
      keys_.push_back({t, 0});
    } else if (ring.half_omega) {
      for (std::int64_t b = bm; b >= -bm; b -= 2) keys_.push_back({(t - b) / 2, b});
    } else {
      for (std::int64_t b = -bm; b <= bm; ++b) keys_.push_back({t / 2, b});
    }
  }
}

std::size_t TraceBox::index_unchecked(std::int64_t t, std::int64_t b) const {
  if (ring_.degree == 1) return static_cast<std::size_t>(t - 1);
  const std::int64_t bm = bmax(t);
  if (ring_.half_omega) return offset(t) + static_cast<std::size_t>((bm - b) / 2);
  return offset(t) + static_cast<std::size_t>(b + bm);
}

std::optional<std::size_t> TraceBox::index_of(const LatticePoint& p) const {
  if (ring_.degree == 1 && p.b != 0) return std::nullopt;
  const std::int64_t t = trace_of(p);
  if (t < 1 || t > trace_bound_) return std::nullopt;
  const std::int64_t bm = bmax(t);
  if (bm < 0 || p.b > bm || p.b < -bm) return std::nullopt;
  return index_unchecked(t, p.b);
}

// ---------------------------------------------------------------------------
// FourierExpansion

FourierExpansion::FourierExpansion(FieldDesc field, WeightVector weight, std::int64_t trace_bound,
                                   FieldElement const_term, int twopi_power)
    : field_(std::move(field)),
      weight_(std::move(weight)),
      box_(field_.ring, trace_bound),
      const_term_(std::move(const_term)),
      twopi_power_(twopi_power),
      ca_(box_.size()),
      cb_(box_.size()) {
  if (weight_.degree() != field_.degree) throw PreconditionError("weight length differs from field degree");
  if (const_term_.ring().degree == 1) const_term_ = FieldElement(field_.ring, const_term_.a());
}

FieldElement FourierExpansion::at(std::size_t index) const {
  return FieldElement(field_.ring, ca_[index], cb_[index]);
}

FieldElement FourierExpansion::coefficient(const LatticePoint& nu) const {
  if (nu.a == 0 && nu.b == 0) return const_term_;
  auto idx = box_.index_of(nu);
  if (idx) return at(*idx);
  const FieldElement x = to_element(field_.ring, nu);
  if (!is_totally_positive(x)) throw PreconditionError("coefficient index is neither 0 nor totally positive");
  throw TruncationError("coefficient index " + x.to_string() + " lies beyond trace bound " +
                        std::to_string(trace_bound()));
}

FieldElement FourierExpansion::coefficient(const FieldElement& nu) const {
  if (nu.is_zero()) return const_term_;
  if (!nu.is_integral() || !is_totally_positive(nu))
    throw PreconditionError("coefficient index is neither 0 nor a totally positive integer");
  if (nu.trace() > trace_bound())
    throw TruncationError("coefficient index " + nu.to_string() + " lies beyond trace bound " +
                          std::to_string(trace_bound()));
  return coefficient(to_lattice(nu));
}

void FourierExpansion::set(const LatticePoint& nu, const FieldElement& value) {
  if (nu.a == 0 && nu.b == 0) {
    const_term_ = value;
    return;
  }
  auto idx = box_.index_of(nu);
  if (!idx) throw PreconditionError("key outside the trace box");
  set_at(*idx, value.a(), value.b());
}

void FourierExpansion::set_at(std::size_t index, Rational a, Rational b) {
  if (field_.degree == 1 && sgn(b) != 0) throw PreconditionError("irrational value over Q");
  ca_[index] = std::move(a);
  cb_[index] = std::move(b);
}

bool FourierExpansion::is_rational() const {
  if (!const_term_.is_rational()) return false;
  return std::all_of(cb_.begin(), cb_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool FourierExpansion::is_zero() const {
  if (!const_term_.is_zero()) return false;
  for (std::size_t i = 0; i < ca_.size(); ++i)
    if (sgn(ca_[i]) != 0 || sgn(cb_[i]) != 0) return false;
  return true;
}

bool operator==(const FourierExpansion& x, const FourierExpansion& y) {
  return x.field_.d == y.field_.d && x.weight_ == y.weight_ && x.trace_bound() == y.trace_bound() &&
         x.twopi_power_ == y.twopi_power_ && x.const_term_ == y.const_term_ && x.ca_ == y.ca_ &&
         x.cb_ == y.cb_;
}

FourierExpansion const_expansion(const FieldDesc& field, const WeightVector& weight,
                                 std::int64_t trace_bound, const Rational& c) {
  return FourierExpansion(field, weight, trace_bound, FieldElement(field.ring, c));
}

FourierExpansion truncate(const FourierExpansion& f, std::int64_t trace_bound) {
  if (trace_bound > f.trace_bound()) throw TruncationError("cannot extend an expansion beyond its trace bound");
  FourierExpansion r(f.field(), f.weight(), trace_bound, f.const_term(), f.twopi_power());
  for (std::size_t i = 0; i < r.size(); ++i) r.set_at(i, f.coeff_a(i), f.coeff_b(i));
  return r;
}

namespace {

void require_same_field(const FourierExpansion& f, const FourierExpansion& g) {
  if (f.field().d != g.field().d) throw PreconditionError("expansions over different fields");
}

void require_compatible(const FourierExpansion& f, const FourierExpansion& g) {
  require_same_field(f, g);
  if (!(f.weight() == g.weight())) throw PreconditionError("weight mismatch: " + f.weight().to_string() +
                                                           " vs " + g.weight().to_string());
  if (f.twopi_power() != g.twopi_power()) throw PreconditionError("2 pi i scale mismatch");
}

FourierExpansion combine_linear(const FourierExpansion& f, const FourierExpansion& g, int sign) {
  require_compatible(f, g);
  const std::int64_t T = std::min(f.trace_bound(), g.trace_bound());
  FieldElement c = sign > 0 ? f.const_term() + g.const_term() : f.const_term() - g.const_term();
  FourierExpansion r(f.field(), f.weight(), T, c, f.twopi_power());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (sign > 0) r.set_at(i, f.coeff_a(i) + g.coeff_a(i), f.coeff_b(i) + g.coeff_b(i));
    else r.set_at(i, f.coeff_a(i) - g.coeff_a(i), f.coeff_b(i) - g.coeff_b(i));
  }
  return r;
}

// Integer form of an expansion: value = (a + b w) / den.
struct IntSeries {
  Integer den = 1;
  Integer const_a, const_b;
  std::vector<Integer> a, b;
  bool rational = true;
};

IntSeries to_int_series(const FourierExpansion& f, std::size_t n) {
  IntSeries s;
  Integer den = 1;
  auto fold = [&den](const Rational& q) { mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t()); };
  fold(f.const_term().a());
  fold(f.const_term().b());
  for (std::size_t i = 0; i < n; ++i) {
    fold(f.coeff_a(i));
    fold(f.coeff_b(i));
  }
  s.den = den;
  auto scale = [&den](const Rational& q) { return Integer(q.get_num() * (den / q.get_den())); };
  s.const_a = scale(f.const_term().a());
  s.const_b = scale(f.const_term().b());
  s.rational = sgn(s.const_b) == 0;
  s.a.resize(n);
  s.b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.a[i] = scale(f.coeff_a(i));
    s.b[i] = scale(f.coeff_b(i));
    if (sgn(s.b[i]) != 0) s.rational = false;
  }
  return s;
}

// Exact elements of O with big integer coordinates.
struct ZElem {
  Integer a, b;
};

void zmul(ZElem& out, const ZElem& x, const ZElem& y, const QuadraticRing& ring, Integer& tmp) {
  // (x.a + x.b w)(y.a + y.b w), w^2 = t w + c
  tmp = x.b * y.b;
  Integer na = x.a * y.a;
  Integer nb = x.a * y.b;
  mpz_addmul(nb.get_mpz_t(), x.b.get_mpz_t(), y.a.get_mpz_t());
  if (ring.half_omega) nb += tmp;
  mpz_addmul_ui(na.get_mpz_t(), tmp.get_mpz_t(), static_cast<unsigned long>(ring.omega_const()));
  out.a = std::move(na);
  out.b = std::move(nb);
}

ZElem zconj(const ZElem& x, const QuadraticRing& ring) {
  if (ring.degree == 1) return x;
  if (ring.half_omega) return ZElem{x.a + x.b, -x.b};
  return ZElem{x.a, -x.b};
}

// Visits all (i1, i2) with key(i1) + key(i2) equal to the key with trace t
// and second coordinate b.
template <class Fn>
void for_each_pair(const TraceBox& box, std::int64_t t, std::int64_t b, Fn&& fn) {
  const auto& ring = box.ring();
  if (ring.degree == 1) {
    for (std::int64_t t1 = 1; t1 < t; ++t1)
      fn(static_cast<std::size_t>(t1 - 1), static_cast<std::size_t>(t - t1 - 1));
    return;
  }
  const std::int64_t step = ring.half_omega ? 2 : 1;
  for (std::int64_t t1 = 1; t1 < t; ++t1) {
    const std::int64_t t2 = t - t1;
    const std::int64_t bm1 = box.bmax(t1);
    const std::int64_t bm2 = box.bmax(t2);
    if (bm1 < 0 || bm2 < 0) continue;
    std::int64_t lo = std::max(-bm1, b - bm2);
    const std::int64_t hi = std::min(bm1, b + bm2);
    if (ring.half_omega && ((lo - t1) & 1)) ++lo;
    for (std::int64_t b1 = lo; b1 <= hi; b1 += step)
      fn(box.index_unchecked(t1, b1), box.index_unchecked(t2, b - b1));
  }
}

// Pair weight for the bracket: prod_j Q_j(tau_j x, tau_j y) with
// Q_j(x, y) = sum_t (-1)^t C(k_j+m-1, m-t) C(l_j+m-1, t) x^t y^(m-t).
class BracketWeight {
 public:
  BracketWeight(const FieldDesc& field, const WeightVector& k, const WeightVector& l, int m,
                const TraceBox& box)
      : ring_(field.ring), m_(m) {
    const int n = field.degree;
    parallel_ = k.is_parallel() && l.is_parallel();
    for (int j = 0; j < n; ++j) {
      std::vector<Integer> w(static_cast<std::size_t>(m + 1));
      for (int t = 0; t <= m; ++t) {
        w[static_cast<std::size_t>(t)] =
            binomial(k.components[static_cast<std::size_t>(j)] + m - 1, m - t) *
            binomial(l.components[static_cast<std::size_t>(j)] + m - 1, t);
        if (t & 1) w[static_cast<std::size_t>(t)] = -w[static_cast<std::size_t>(t)];
      }
      w_.push_back(std::move(w));
    }
    powers_.resize(box.size() + 1);
    powers_[0] = power_list(ZElem{0, 0});
    for (std::size_t i = 0; i < box.size(); ++i)
      powers_[i + 1] = power_list(ZElem{to_integer(box.key(i).a), to_integer(box.key(i).b)});
  }

  bool parallel() const { return parallel_; }

  /// Weight for keys at positions i1, i2; position 0 stands for the key 0.
  ZElem weight(std::size_t p1, std::size_t p2) {
    const auto& xp = powers_[p1];
    const auto& yp = powers_[p2];
    ZElem u1 = q_value(w_[0], xp, yp);
    if (ring_.degree == 1) return u1;
    if (parallel_) {
      // U conj(U) = N(U)
      Integer n = u1.a * u1.a - u1.b * u1.b * ring_.omega_const();
      if (ring_.half_omega) mpz_addmul(n.get_mpz_t(), u1.a.get_mpz_t(), u1.b.get_mpz_t());
      return ZElem{n, 0};
    }
    ZElem u2 = zconj(q_value(w_[1], xp, yp), ring_);
    ZElem out;
    zmul(out, u1, u2, ring_, tmp_);
    return out;
  }

 private:
  std::vector<ZElem> power_list(const ZElem& x) {
    std::vector<ZElem> p(static_cast<std::size_t>(m_ + 1));
    p[0] = ZElem{1, 0};
    for (int j = 1; j <= m_; ++j) zmul(p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j - 1)], x, ring_, tmp_);
    return p;
  }

  ZElem q_value(const std::vector<Integer>& w, const std::vector<ZElem>& xp, const std::vector<ZElem>& yp) {
    ZElem acc{0, 0};
    ZElem term;
    for (int t = 0; t <= m_; ++t) {
      const auto& wt = w[static_cast<std::size_t>(t)];
      if (sgn(wt) == 0) continue;
      zmul(term, xp[static_cast<std::size_t>(t)], yp[static_cast<std::size_t>(m_ - t)], ring_, tmp_);
      mpz_addmul(acc.a.get_mpz_t(), term.a.get_mpz_t(), wt.get_mpz_t());
      mpz_addmul(acc.b.get_mpz_t(), term.b.get_mpz_t(), wt.get_mpz_t());
    }
    return acc;
  }

  QuadraticRing ring_;
  int m_;
  bool parallel_ = true;
  std::vector<std::vector<Integer>> w_;
  std::vector<std::vector<ZElem>> powers_;
  Integer tmp_;
};

FourierExpansion finish(const FieldDesc& field, const WeightVector& weight, std::int64_t T, int twopi,
                        const Integer& den, const ZElem& c, const std::vector<Integer>& oa,
                        const std::vector<Integer>& ob) {
  Rational ca(c.a, den), cb(c.b, den);
  ca.canonicalize();
  cb.canonicalize();
  FieldElement ct(field.ring, std::move(ca), std::move(cb));
  FourierExpansion r(field, weight, T, ct, twopi);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Rational qa(oa[i], den);
    Rational qb(ob[i], den);
    qa.canonicalize();
    qb.canonicalize();
    r.set_at(i, std::move(qa), std::move(qb));
  }
  return r;
}

// sum over nu1 + nu2 = nu of f(nu1) g(nu2) * W(nu1, nu2), with W = 1 when
// `bracket` is null.
FourierExpansion convolve(const FourierExpansion& f, const FourierExpansion& g, const WeightVector& weight,
                          int twopi, BracketWeight* bracket) {
  const FieldDesc& field = f.field();
  const auto& ring = field.ring;
  const std::int64_t T = std::min(f.trace_bound(), g.trace_bound());
  const TraceBox box(ring, T);
  const std::size_t n = box.size();
  const IntSeries F = to_int_series(f, n);
  const IntSeries G = to_int_series(g, n);
  const bool same = &f == &g;
  Integer den = F.den * G.den;
  std::vector<Integer> oa(n), ob(n);
  const bool scalar_weight = bracket == nullptr || ring.degree == 1 || bracket->parallel();

  if (F.rational && G.rational && scalar_weight) {
    Integer prod;
    for (std::int64_t t = 1; t <= T; ++t) {
      const std::int64_t bm = box.bmax(t);
      if (bm < 0) continue;
      for (std::size_t o = box.offset(t); o < box.offset(t + 1); ++o) {
        const std::int64_t b = box.key(o).b;
        Integer& acc = oa[o];
        if (bracket == nullptr) {
          if (same && ring.degree == 1) {
            // symmetric square: pairs (i, t-2-i) counted twice
            if (t >= 2) {
              const std::size_t last = static_cast<std::size_t>(t - 2);
              for (std::size_t i = 0; 2 * i < last; ++i)
                mpz_addmul(acc.get_mpz_t(), F.a[i].get_mpz_t(), F.a[last - i].get_mpz_t());
              acc *= 2;
              if (last % 2 == 0) mpz_addmul(acc.get_mpz_t(), F.a[last / 2].get_mpz_t(), F.a[last / 2].get_mpz_t());
            }
          } else {
            for_each_pair(box, t, b, [&](std::size_t i1, std::size_t i2) {
              mpz_addmul(acc.get_mpz_t(), F.a[i1].get_mpz_t(), G.a[i2].get_mpz_t());
            });
          }
          mpz_addmul(acc.get_mpz_t(), F.const_a.get_mpz_t(), G.a[o].get_mpz_t());
          mpz_addmul(acc.get_mpz_t(), F.a[o].get_mpz_t(), G.const_a.get_mpz_t());
        } else {
          for_each_pair(box, t, b, [&](std::size_t i1, std::size_t i2) {
            if (sgn(F.a[i1]) == 0 || sgn(G.a[i2]) == 0) return;
            ZElem w = bracket->weight(i1 + 1, i2 + 1);
            prod = F.a[i1] * G.a[i2];
            mpz_addmul(acc.get_mpz_t(), prod.get_mpz_t(), w.a.get_mpz_t());
          });
          ZElem w0 = bracket->weight(0, o + 1);
          prod = F.const_a * G.a[o];
          mpz_addmul(acc.get_mpz_t(), prod.get_mpz_t(), w0.a.get_mpz_t());
          ZElem w1 = bracket->weight(o + 1, 0);
          prod = F.a[o] * G.const_a;
          mpz_addmul(acc.get_mpz_t(), prod.get_mpz_t(), w1.a.get_mpz_t());
        }
      }
    }
    ZElem c{F.const_a * G.const_a, 0};
    if (bracket != nullptr) c.a *= bracket->weight(0, 0).a;
    return finish(field, weight, T, twopi, den, c, oa, ob);
  }

  // General path: field-valued coefficients or non-parallel bracket weights.
  Integer tmp;
  ZElem prod, term;
  auto value_f = [&](std::size_t p) { return p == 0 ? ZElem{F.const_a, F.const_b} : ZElem{F.a[p - 1], F.b[p - 1]}; };
  auto value_g = [&](std::size_t p) { return p == 0 ? ZElem{G.const_a, G.const_b} : ZElem{G.a[p - 1], G.b[p - 1]}; };
  auto accumulate = [&](ZElem& acc, std::size_t p1, std::size_t p2) {
    ZElem x = value_f(p1);
    ZElem y = value_g(p2);
    if ((sgn(x.a) == 0 && sgn(x.b) == 0) || (sgn(y.a) == 0 && sgn(y.b) == 0)) return;
    zmul(prod, x, y, ring, tmp);
    if (bracket != nullptr) {
      ZElem w = bracket->weight(p1, p2);
      zmul(term, prod, w, ring, tmp);
      prod = term;
    }
    acc.a += prod.a;
    acc.b += prod.b;
  };
  for (std::int64_t t = 1; t <= T; ++t) {
    if (box.bmax(t) < 0) continue;
    for (std::size_t o = box.offset(t); o < box.offset(t + 1); ++o) {
      ZElem acc{0, 0};
      for_each_pair(box, t, box.key(o).b, [&](std::size_t i1, std::size_t i2) { accumulate(acc, i1 + 1, i2 + 1); });
      accumulate(acc, 0, o + 1);
      accumulate(acc, o + 1, 0);
      oa[o] = std::move(acc.a);
      ob[o] = std::move(acc.b);
    }
  }
  ZElem c{0, 0};
  accumulate(c, 0, 0);
  return finish(field, weight, T, twopi, den, c, oa, ob);
}

}  // namespace

FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g) { return combine_linear(f, g, 1); }

FourierExpansion subtract(const FourierExpansion& f, const FourierExpansion& g) {
  return combine_linear(f, g, -1);
}

FourierExpansion scalar_mul(const Rational& c, const FourierExpansion& f) {
  FourierExpansion r(f.field(), f.weight(), f.trace_bound(), FieldElement(f.field().ring, c) * f.const_term(),
                     f.twopi_power());
  for (std::size_t i = 0; i < r.size(); ++i) r.set_at(i, c * f.coeff_a(i), c * f.coeff_b(i));
  return r;
}

FourierExpansion scalar_mul(const FieldElement& c, const FourierExpansion& f) {
  if (c.ring().degree == 2 && c.ring() != f.field().ring) throw PreconditionError("scalar from another field");
  if (c.is_rational()) return scalar_mul(c.a(), f);
  FourierExpansion r(f.field(), f.weight(), f.trace_bound(), c * f.const_term(), f.twopi_power());
  for (std::size_t i = 0; i < r.size(); ++i) {
    FieldElement v = c * f.at(i);
    r.set_at(i, v.a(), v.b());
  }
  return r;
}

FourierExpansion multiply(const FourierExpansion& f, const FourierExpansion& g) {
  require_same_field(f, g);
  return convolve(f, g, f.weight() + g.weight(), f.twopi_power() + g.twopi_power(), nullptr);
}

FourierExpansion rc_bracket(const FourierExpansion& f, const FourierExpansion& g, int m) {
  require_same_field(f, g);
  if (m < 0) throw PreconditionError("bracket order must be non-negative");
  if (m == 0) return multiply(f, g);
  for (int c : f.weight().components)
    if (c < 1) throw PreconditionError("bracket needs weights >= 1");
  for (int c : g.weight().components)
    if (c < 1) throw PreconditionError("bracket needs weights >= 1");
  const int n = f.field().degree;
  WeightVector w = f.weight() + g.weight() + WeightVector::parallel(n, 2 * m);
  const TraceBox box(f.field().ring, std::min(f.trace_bound(), g.trace_bound()));
  BracketWeight bw(f.field(), f.weight(), g.weight(), m, box);
  return convolve(f, g, w, f.twopi_power() + g.twopi_power() + n * m, &bw);
}

FieldElement coefficient(const FourierExpansion& f, const FieldElement& nu) { return f.coefficient(nu); }

FourierExpansion operator+(const FourierExpansion& f, const FourierExpansion& g) { return add(f, g); }
FourierExpansion operator-(const FourierExpansion& f, const FourierExpansion& g) { return subtract(f, g); }
FourierExpansion operator*(const FourierExpansion& f, const FourierExpansion& g) { return multiply(f, g); }
FourierExpansion operator*(const Rational& c, const FourierExpansion& f) { return scalar_mul(c, f); }

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const FourierExpansion& f) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (sgn(f.coeff_a(i)) == 0 && sgn(f.coeff_b(i)) == 0) continue;
    const auto& k = f.box().key(i);
    entries.push_back({{"a", to_fraction_string(make_rational(k.a))},
                       {"b", to_fraction_string(make_rational(k.b))},
                       {"coeff_a", to_fraction_string(f.coeff_a(i))},
                       {"coeff_b", to_fraction_string(f.coeff_b(i))}});
  }
  nlohmann::json doc = {
      {"version", 1},
      {"field", {{"d", f.field().d}, {"degree", f.field().degree}}},
      {"weight", f.weight().components},
      {"trace_bound", f.trace_bound()},
      {"twopi_power", f.twopi_power()},
      {"const_term", to_fraction_string(f.const_term().a())},
      {"const_term_b", to_fraction_string(f.const_term().b())},
      {"entries", entries},
  };
  return doc;
}

FourierExpansion expansion_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("version").get<int>() != 1) throw PreconditionError("unsupported expansion version");
    FieldDesc field = make_field(doc.at("field").at("d").get<std::int64_t>());
    WeightVector w{doc.at("weight").get<std::vector<int>>()};
    FieldElement c(field.ring, parse_rational(doc.at("const_term").get<std::string>()),
                   doc.contains("const_term_b") ? parse_rational(doc.at("const_term_b").get<std::string>())
                                                : Rational(0));
    FourierExpansion f(field, w, doc.at("trace_bound").get<std::int64_t>(), c, doc.at("twopi_power").get<int>());
    for (const auto& e : doc.at("entries")) {
      Rational a = parse_rational(e.at("a").get<std::string>());
      Rational b = parse_rational(e.at("b").get<std::string>());
      if (a.get_den() != 1 || b.get_den() != 1) throw PreconditionError("non-integral key");
      LatticePoint key{to_int64(a.get_num()), to_int64(b.get_num())};
      f.set(key, FieldElement(field.ring, parse_rational(e.at("coeff_a").get<std::string>()),
                              parse_rational(e.at("coeff_b").get<std::string>())));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed expansion document: ") + e.what());
  }
}

}  // namespace hmf
