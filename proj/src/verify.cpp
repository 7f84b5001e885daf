#include "catlab/verify.hpp"

#include "catlab/errors.hpp"
#include "catlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace catlab::verify {

namespace {

using Vec = std::vector<Residue>;

struct KahanSum {
  double sum = 0, comp = 0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct ComplexKahan {
  KahanSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.sum, im.sum}; }
};

double power(double base, double e) { return std::pow(base, e); }

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericError("instance too large: count overflow");
  return r;
}

// Sum vectors of an s-tuple of indices.
Vec tuple_sum(const std::vector<Vec>& vs, const std::vector<std::size_t>& idx, Residue m) {
  Vec acc(vs.front().size(), 0);
  for (auto i : idx)
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = arith::add_mod(acc[c], vs[i][c], m);
  return acc;
}

bool next_tuple(std::vector<std::size_t>& idx, std::size_t t) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < t) return true;
    idx[i] = 0;
  }
  return false;
}

std::uint64_t key_space(Residue m, std::size_t dim) {
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (space > std::numeric_limits<std::uint64_t>::max() / m) throw NumericError("instance too large: key space");
    space *= m;
  }
  return space;
}

std::uint64_t encode_key(const Vec& v, Residue m) {
  std::uint64_t key = 0;
  for (Residue c : v) key = key * m + c;
  return key;
}

void check_mitm_budget(std::uint64_t t, unsigned s) {
  if (s < 1) throw InputError("s must be >= 1");
  if (power(static_cast<double>(t), s) > kEnumerationBudget) throw NumericError("instance too large");
}

// Number of pairs of ordered s-tuples with equal sums: sum of squared multiplicities.
std::uint64_t count_collisions(const std::vector<Vec>& vs, unsigned s, Residue m, CountMethod method) {
  const std::size_t t = vs.size();
  if (method == CountMethod::naive) {
    if (power(static_cast<double>(t), 2.0 * s) > kNaiveBudget) throw NumericError("instance too large");
    std::vector<Vec> sums;
    std::vector<std::size_t> idx(s, 0);
    do sums.push_back(tuple_sum(vs, idx, m));
    while (next_tuple(idx, t));
    std::uint64_t count = 0;
    for (const auto& x : sums)
      for (const auto& y : sums) count += x == y;
    return count;
  }
  check_mitm_budget(t, s);
  const std::uint64_t space = key_space(m, vs.front().size());
  std::vector<std::size_t> idx(s, 0);
  std::uint64_t total = 0;
  if (space <= (std::uint64_t{1} << 26)) {
    std::vector<std::uint32_t> mult(space, 0);
    do ++mult[encode_key(tuple_sum(vs, idx, m), m)];
    while (next_tuple(idx, t));
    for (auto c : mult) total += static_cast<std::uint64_t>(c) * c;
  } else {
    std::unordered_map<std::uint64_t, std::uint64_t> mult;
    do ++mult[encode_key(tuple_sum(vs, idx, m), m)];
    while (next_tuple(idx, t));
    for (const auto& [key, c] : mult) total += c * c;
  }
  return total;
}

// u A^x mod N for x = 1..T.
std::vector<Vec> orbit_vectors(const symplectic::SymplecticMatrix& a, const quant::HeisenbergIndex& u, Residue n,
                               std::uint64_t t) {
  const std::size_t dim = a.entries().size();
  const Vec am = symplectic::reduce_mod(a.entries(), n);
  Vec cur(dim);
  for (std::size_t i = 0; i < dim; ++i) cur[i] = arith::reduce(u[i], n);
  std::vector<Vec> out;
  for (std::uint64_t x = 1; x <= t; ++x) {
    Vec next(dim, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) next[j] = arith::add_mod(next[j], arith::mul_mod(cur[i], am[i * dim + j], n), n);
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

void check_u(const symplectic::SymplecticMatrix& a, const quant::HeisenbergIndex& u, Residue n) {
  if (u.size() != static_cast<std::size_t>(a.dim())) throw InputError("u must have length 2d");
  if (std::all_of(u.begin(), u.end(), [n](std::int64_t c) { return arith::reduce(c, n) == 0; }))
    throw InputError("u must be nonzero mod N");
}

std::vector<Vec> lambda_vectors(const SpectralData& sd, Residue m, std::uint64_t t) {
  std::vector<Vec> out;
  Vec cur(sd.lambda.size(), 1);
  for (std::uint64_t x = 1; x <= t; ++x) {
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = arith::mul_mod(cur[i], sd.lambda[i] % m, m);
    out.push_back(cur);
  }
  return out;
}

void check_r(const SpectralData& sd, unsigned r) {
  if (r < 1 || r > sd.k) throw InputError("r must satisfy 1 <= r <= k");
}

void check_a(const SpectralData& sd, const std::vector<std::int64_t>& a) {
  if (a.size() != sd.lambda.size()) throw InputError("coefficient vector must have length 2d");
}

Residue sequence_value(const SpectralData& sd, const std::vector<Residue>& a, std::uint64_t x, Residue m) {
  Residue acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc = arith::add_mod(acc, arith::mul_mod(a[i], arith::pow_mod(sd.lambda[i] % m, x, m), m), m);
  return acc;
}

std::uint64_t period_with(const SpectralData& sd, const std::vector<Residue>& a, Residue m,
                          const std::vector<std::uint64_t>& divisors_of_l) {
  const std::uint64_t span = a.size();
  std::vector<Residue> head;
  for (std::uint64_t x = 0; x < span; ++x) head.push_back(sequence_value(sd, a, x, m));
  for (auto t : divisors_of_l) {
    bool ok = true;
    for (std::uint64_t x = 0; x < span && ok; ++x) ok = sequence_value(sd, a, x + t, m) == head[x];
    if (ok) return t;
  }
  throw NumericError("sequence period does not divide the lcm of the eigenvalue orders");
}

std::vector<std::uint64_t> period_candidates(const SpectralData& sd, unsigned r) {
  std::uint64_t l = 1;
  for (Residue lam : sd.lambda)
    l = arith::checked_lcm(l, arith::mult_order(static_cast<std::int64_t>(lam), sd.p, r));
  return arith::divisors(l);
}

std::vector<Residue> reduce_vector(const std::vector<std::int64_t>& a, Residue m) {
  std::vector<Residue> out;
  for (auto c : a) out.push_back(arith::reduce(c, m));
  return out;
}

std::complex<double> full_sum(const SpectralData& sd, const std::vector<Residue>& a, Residue m,
                              std::uint64_t range_len) {
  std::vector<Residue> cur(a.size(), 1);
  ComplexKahan acc;
  for (std::uint64_t x = 1; x <= range_len; ++x) {
    Residue v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      cur[i] = arith::mul_mod(cur[i], sd.lambda[i] % m, m);
      v = arith::add_mod(v, arith::mul_mod(a[i], cur[i], m), m);
    }
    acc.add(std::polar(1.0, 2 * M_PI * static_cast<double>(v) / static_cast<double>(m)));
  }
  return acc.value();
}

}  // namespace

SpectralData spectral_data(const symplectic::SymplecticMatrix& a, Residue p, unsigned k) {
  if (!symplectic::is_good_prime(a, p)) throw InputError("p = " + std::to_string(p) + " is not a good prime for this matrix");
  if (k < 1) throw InputError("k must be >= 1");
  const Residue n = arith::checked_pow(p, k);
  const unsigned precision = arith::max_exponent(p);
  const Residue big = arith::checked_pow(p, precision);
  const auto lifted = arith::hensel_lift_roots(symplectic::char_poly(a), p, precision);
  SpectralData sd;
  sd.p = p;
  sd.k = k;
  for (Residue lam : lifted) {
    sd.lambda.push_back(lam % n);
    sd.orders.push_back(arith::mult_order(static_cast<std::int64_t>(lam % n), p, k));
    sd.gammas.push_back(arith::korobov_gamma(static_cast<std::int64_t>(lam), p));
    sd.gamma_max = std::max(sd.gamma_max, sd.gammas.back());
  }
  const std::size_t m = lifted.size();
  sd.ratio_gammas.assign(m, std::vector<unsigned>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Residue rho = arith::mul_mod(lifted[i], arith::inv_mod(lifted[j], big), big);
      sd.ratio_gammas[i][j] = arith::korobov_gamma(static_cast<std::int64_t>(rho), p);
      sd.gamma_max = std::max(sd.gamma_max, sd.ratio_gammas[i][j]);
    }
  return sd;
}

std::string to_string(CountMethod m) { return m == CountMethod::naive ? "naive" : "meet-in-the-middle"; }

CongruenceCount count_Q(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx,
                        const quant::HeisenbergIndex& u, unsigned s, CountMethod method) {
  check_u(a, u, ctx.N());
  CongruenceCount out;
  out.N = ctx.N();
  out.u = u;
  out.s = s;
  out.method = method;
  out.T = symplectic::matrix_order(a, ctx.p(), ctx.k());
  check_mitm_budget(out.T, s);
  out.count = count_collisions(orbit_vectors(a, u, ctx.N(), out.T), s, ctx.N(), method);
  return out;
}

std::uint64_t count_lambda_system(const SpectralData& sd, unsigned r, unsigned s, std::uint64_t T,
                                  CountMethod method) {
  check_r(sd, r);
  if (T < 1) throw InputError("T must be >= 1");
  check_mitm_budget(T, s);
  const Residue m = arith::checked_pow(sd.p, r);
  return count_collisions(lambda_vectors(sd, m, T), s, m, method);
}

std::vector<Solution> enumerate_Q_solutions(const symplectic::SymplecticMatrix& a,
                                            const arith::PrimePowerModulus& ctx, const quant::HeisenbergIndex& u,
                                            unsigned s) {
  check_u(a, u, ctx.N());
  const std::uint64_t t = symplectic::matrix_order(a, ctx.p(), ctx.k());
  check_mitm_budget(t, s);
  const auto vs = orbit_vectors(a, u, ctx.N(), t);
  std::unordered_map<std::uint64_t, std::vector<Tuple>> buckets;
  key_space(ctx.N(), vs.front().size());
  std::vector<std::size_t> idx(s, 0);
  do {
    Tuple tuple;
    for (auto i : idx) tuple.push_back(i + 1);
    buckets[encode_key(tuple_sum(vs, idx, ctx.N()), ctx.N())].push_back(std::move(tuple));
  } while (next_tuple(idx, t));
  std::vector<Solution> out;
  for (const auto& [key, tuples] : buckets)
    for (const auto& x : tuples)
      for (const auto& y : tuples) out.push_back({x, y});
  std::sort(out.begin(), out.end(),
            [](const Solution& l, const Solution& r) { return std::tie(l.xs, l.ys) < std::tie(r.xs, r.ys); });
  return out;
}

KrReport kr_inequality_check(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx,
                             const quant::HeisenbergIndex& u, unsigned s, std::uint64_t seed) {
  const CongruenceCount q = count_Q(a, ctx, u, s);
  const quant::Propagator prop = quant::build_propagator(a, ctx);
  const spectra::EigenDecomposition eig = spectra::spectral_decomposition(prop, seed);
  const linalg::CMatrix tu = quant::heisenberg_matrix(u, ctx.N(), a.d());
  KrReport rep;
  rep.Q = q.count;
  rep.T = q.T;
  for (std::size_t j = 0; j < eig.bases.size(); ++j) {
    const linalg::CMatrix v = eig.frame(j);
    rep.max_coefficient = std::max(rep.max_coefficient, linalg::numerical_radius(linalg::adjoint(v) * (tu * v)));
  }
  const double dim = static_cast<double>(prop.dim());
  rep.lhs = power(rep.max_coefficient, 2.0 * s);
  rep.rhs = dim * static_cast<double>(rep.Q) / power(static_cast<double>(rep.T), 2.0 * s);
  rep.holds = rep.lhs <= rep.rhs * (1 + 1e-9);
  return rep;
}

ReductionReport reduction_check(const symplectic::SymplecticMatrix& a, Residue p, unsigned k,
                                const quant::HeisenbergIndex& u, const Solution& solution) {
  const Residue n = arith::checked_pow(p, k);
  const std::size_t dim = a.entries().size();
  if (u.size() != dim) throw InputError("u must have length 2d");
  if (solution.xs.size() != solution.ys.size() || solution.xs.empty())
    throw InputError("solution needs s indices on each side");
  Vec b(dim * dim, 0);
  for (auto x : solution.xs) {
    const Vec px = symplectic::mat_pow_mod(a.entries(), x, n);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = arith::add_mod(b[i], px[i], n);
  }
  for (auto y : solution.ys) {
    const Vec py = symplectic::mat_pow_mod(a.entries(), y, n);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = arith::sub_mod(b[i], py[i], n);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    Residue acc = 0;
    for (std::size_t i = 0; i < dim; ++i) acc = arith::add_mod(acc, arith::mul_mod(arith::reduce(u[i], n), b[i * dim + j], n), n);
    if (acc != 0) throw InputError("not a solution");
  }

  ReductionReport rep;
  rep.m = symplectic::u_orbit_matrix(u, a, p).m;
  if (rep.m >= k) {
    rep.modulus = 1;
    rep.matrix_congruence = rep.eigenvalue_congruence = true;
    return rep;
  }
  const unsigned level = k - rep.m;
  rep.modulus = arith::checked_pow(p, level);
  rep.matrix_congruence = std::all_of(b.begin(), b.end(), [&](Residue v) { return v % rep.modulus == 0; });
  rep.eigenvalue_congruence = true;
  for (Residue lam : arith::hensel_lift_roots(symplectic::char_poly(a), p, level)) {
    Residue acc = 0;
    for (auto x : solution.xs) acc = arith::add_mod(acc, arith::pow_mod(lam, x, rep.modulus), rep.modulus);
    for (auto y : solution.ys) acc = arith::sub_mod(acc, arith::pow_mod(lam, y, rep.modulus), rep.modulus);
    if (acc != 0) rep.eigenvalue_congruence = false;
  }
  return rep;
}

std::uint64_t sequence_period(const SpectralData& sd, const std::vector<std::int64_t>& a, unsigned r) {
  check_r(sd, r);
  check_a(sd, a);
  const Residue m = arith::checked_pow(sd.p, r);
  return period_with(sd, reduce_vector(a, m), m, period_candidates(sd, r));
}

ExpSumRecord exp_sum(const SpectralData& sd, const std::vector<std::int64_t>& a, unsigned r,
                     std::uint64_t range_len) {
  check_r(sd, r);
  check_a(sd, a);
  const Residue m = arith::checked_pow(sd.p, r);
  ExpSumRecord rec;
  rec.a = a;
  rec.r = r;
  rec.range_len = range_len;
  rec.t_r = sequence_period(sd, a, r);
  rec.value = full_sum(sd, reduce_vector(a, m), m, range_len);
  rec.saving = rec.t_r > 1 ? std::log(std::abs(rec.value)) / std::log(static_cast<double>(rec.t_r))
                           : std::numeric_limits<double>::quiet_NaN();
  return rec;
}

ExpSumRecord saving_exponent(const SpectralData& sd, const std::vector<std::int64_t>& a, unsigned r) {
  check_r(sd, r);
  check_a(sd, a);
  if (std::all_of(a.begin(), a.end(), [&](std::int64_t c) { return arith::reduce(c, sd.p) == 0; }))
    throw InputError("coefficient vector divisible by p");
  const std::uint64_t t = sequence_period(sd, a, r);
  if (t < 2) throw InputError("sequence period must exceed 1");
  return exp_sum(sd, a, r, t);
}

ExpSumRecord worst_saving(const SpectralData& sd, unsigned r) {
  check_r(sd, r);
  const Residue m = arith::checked_pow(sd.p, r);
  const std::size_t dim = sd.lambda.size();
  if (power(static_cast<double>(m), static_cast<double>(dim)) > kMomentBudget) throw NumericError("instance too large");
  const auto candidates = period_candidates(sd, r);
  ExpSumRecord best;
  best.saving = -std::numeric_limits<double>::infinity();
  std::vector<Residue> a(dim, 0);
  std::vector<std::size_t> idx(dim, 0);
  while (next_tuple(idx, m)) {
    for (std::size_t i = 0; i < dim; ++i) a[i] = idx[i];
    if (std::all_of(a.begin(), a.end(), [&](Residue c) { return c % sd.p == 0; })) continue;
    const std::uint64_t t = period_with(sd, a, m, candidates);
    if (t < 2) continue;
    const auto value = full_sum(sd, a, m, t);
    const double saving = std::log(std::abs(value)) / std::log(static_cast<double>(t));
    if (saving > best.saving) {
      best.a.assign(a.begin(), a.end());
      best.r = r;
      best.t_r = best.range_len = t;
      best.value = value;
      best.saving = saving;
    }
  }
  return best;
}

MomentReport moment_identity(const SpectralData& sd, unsigned r, unsigned s, std::uint64_t T) {
  check_r(sd, r);
  if (s < 1 || T < 1) throw InputError("s and T must be >= 1");
  const Residue m = arith::checked_pow(sd.p, r);
  const std::size_t dim = sd.lambda.size();
  if (power(static_cast<double>(m), static_cast<double>(dim)) > kMomentBudget) throw NumericError("instance too large");
  const auto vs = lambda_vectors(sd, m, T);
  std::vector<std::complex<double>> roots(m);
  for (Residue c = 0; c < m; ++c) roots[c] = std::polar(1.0, 2 * M_PI * static_cast<double>(c) / static_cast<double>(m));

  std::vector<KahanSum> w(r + 1);
  std::vector<std::size_t> idx(dim, 0);
  do {
    ComplexKahan sum;
    for (const auto& v : vs) {
      Residue e = 0;
      for (std::size_t i = 0; i < dim; ++i) e = arith::add_mod(e, arith::mul_mod(idx[i], v[i], m), m);
      sum.add(roots[e]);
    }
    unsigned val = r;
    for (auto c : idx)
      if (c != 0) val = std::min(val, arith::valuation(static_cast<std::int64_t>(c), sd.p));
    w[r - val].add(power(std::abs(sum.value()), 2.0 * s));
  } while (next_tuple(idx, m));

  MomentReport rep;
  rep.r = r;
  rep.s = s;
  rep.T = T;
  KahanSum total;
  for (const auto& x : w) {
    rep.w.push_back(x.sum);
    total.add(x.sum);
  }
  rep.lhs = total.sum;
  rep.rhs = checked_mul(key_space(m, dim), count_lambda_system(sd, r, s, T));
  const double rounded = std::round(rep.lhs);
  rep.match = std::abs(rep.lhs - rounded) <= 1e-6 * std::max(1.0, rep.lhs) &&
              rounded == static_cast<double>(rep.rhs);
  return rep;
}

Rational RateConstants::eta(long long s) const {
  if (s < 1) throw InputError("s must be >= 1");
  return (Rational(s - 1, d) + 1 - d) / (2 * s);
}

Rational RateConstants::alt_exponent(long long s) const {
  if (s < 1) throw InputError("s must be >= 1");
  return Rational(d, 2 * s);
}

RateConstants rate_constants(int d) {
  if (d < 1) throw InputError("d must be >= 1");
  RateConstants rc;
  rc.d = d;
  const long long dd = d;
  rc.kappa = Rational(dd, 2 * (2 * dd * dd - dd + 1));
  rc.s0 = dd * (2 * dd - 1) + 1;
  return rc;
}

}  // namespace catlab::verify
