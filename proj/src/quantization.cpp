#include "catlab/quantization.hpp"

#include "catlab/errors.hpp"

#include <cmath>
#include <random>

namespace catlab::quant {

namespace {

cplx unit_root(Residue e, Residue two_n) {
  return std::polar(1.0, 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(two_n));
}

Residue first_half_dot(const HeisenbergIndex& u, int d, Residue m) {
  Residue acc = 0;
  for (int i = 0; i < d; ++i)
    acc = arith::add_mod(acc, arith::mul_mod(arith::reduce(u[i], m), arith::reduce(u[d + i], m), m), m);
  return acc;
}

// Index of w + shift for every w, shift given mod N.
std::vector<std::size_t> shift_table(const std::vector<Residue>& shift, Residue n, int d, std::size_t dim) {
  std::vector<std::size_t> out(dim);
  std::vector<Residue> w(d, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t target = 0;
    for (int i = 0; i < d; ++i) target = target * n + (w[i] + shift[i]) % n;
    out[idx] = target;
    for (int i = d - 1; i >= 0; --i) {
      if (++w[i] < n) break;
      w[i] = 0;
    }
  }
  return out;
}

// Exponent table of T(u) over all w (units of e_{2N}).
std::vector<Residue> exponent_table(const HeisenbergIndex& u, Residue n, int d, std::size_t dim) {
  const Residue two_n = 2 * n;
  const Residue base = first_half_dot(u, d, two_n);
  std::vector<Residue> u2(d);
  for (int i = 0; i < d; ++i) u2[i] = arith::reduce(u[d + i], two_n);
  std::vector<Residue> out(dim);
  std::vector<Residue> w(d, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    Residue e = base;
    for (int i = 0; i < d; ++i) e = arith::add_mod(e, arith::mul_mod(2 * u2[i] % two_n, w[i], two_n), two_n);
    out[idx] = e;
    for (int i = d - 1; i >= 0; --i) {
      if (++w[i] < n) break;
      w[i] = 0;
    }
  }
  return out;
}

std::vector<Residue> first_half_mod(const HeisenbergIndex& u, int d, Residue n) {
  std::vector<Residue> out(d);
  for (int i = 0; i < d; ++i) out[i] = arith::reduce(u[i], n);
  return out;
}

void check_index(const HeisenbergIndex& u, int d) {
  if (u.size() != static_cast<std::size_t>(2 * d)) throw InputError("u must have length 2d");
}

}  // namespace

std::size_t space_dimension(Residue n, int d) {
  if (n == 0 || d < 1) throw InputError("invalid space parameters");
  std::size_t dim = 1;
  for (int i = 0; i < d; ++i) {
    if (dim > (std::size_t{1} << 40) / n) throw NumericError("instance too large: N^d overflows the index space");
    dim *= n;
  }
  return dim;
}

std::size_t dense_dimension(Residue n, int d) {
  std::size_t dim = space_dimension(n, d);
  if (dim > kDenseBudget)
    throw NumericError("dense budget exceeded: N^d = " + std::to_string(dim) + " > " + std::to_string(kDenseBudget));
  return dim;
}

std::size_t encode(const std::vector<Residue>& w, Residue n) {
  std::size_t idx = 0;
  for (Residue c : w) idx = idx * n + c % n;
  return idx;
}

std::vector<Residue> decode(std::size_t index, Residue n, int d) {
  std::vector<Residue> w(d);
  for (int i = d - 1; i >= 0; --i) {
    w[i] = index % n;
    index /= n;
  }
  return w;
}

StateVector::StateVector(Residue n, int dd) : N(n), d(dd), values(space_dimension(n, dd)) {}

StateVector::StateVector(Residue n, int dd, std::vector<cplx> v) : N(n), d(dd), values(std::move(v)) {
  if (values.size() != space_dimension(n, dd)) throw InputError("state vector length must be N^d");
}

cplx inner(const StateVector& phi1, const StateVector& phi2) {
  if (phi1.N != phi2.N || phi1.d != phi2.d) throw InputError("state vector dimension mismatch");
  return linalg::dot(phi2.values, phi1.values) / static_cast<double>(phi1.size());
}

double norm(const StateVector& phi) { return std::sqrt(std::real(inner(phi, phi))); }

HeisenbergIndex canonical(const HeisenbergIndex& u, Residue n) {
  HeisenbergIndex out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = static_cast<std::int64_t>(arith::reduce(u[i], n));
  return out;
}

std::int64_t omega(const HeisenbergIndex& u, const HeisenbergIndex& v) {
  if (u.size() != v.size() || u.size() % 2 != 0) throw InputError("omega: vectors must have equal even length");
  const std::size_t d = u.size() / 2;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < d; ++i) acc += u[i] * v[d + i] - u[d + i] * v[i];
  return acc;
}

Residue phase_exponent(const HeisenbergIndex& u, const std::vector<Residue>& w, Residue n) {
  const int d = static_cast<int>(w.size());
  check_index(u, d);
  const Residue two_n = 2 * n;
  Residue e = first_half_dot(u, d, two_n);
  for (int i = 0; i < d; ++i)
    e = arith::add_mod(e, arith::mul_mod(2 * arith::reduce(u[d + i], two_n) % two_n, w[i] % n, two_n), two_n);
  return e;
}

StateVector apply_heisenberg(const HeisenbergIndex& u, const StateVector& phi) {
  check_index(u, phi.d);
  const std::size_t dim = phi.size();
  if (dim != space_dimension(phi.N, phi.d)) throw InputError("state vector length must be N^d");
  const auto shift = shift_table(first_half_mod(u, phi.d, phi.N), phi.N, phi.d, dim);
  const auto expo = exponent_table(u, phi.N, phi.d, dim);
  StateVector out(phi.N, phi.d);
  for (std::size_t w = 0; w < dim; ++w) out.values[w] = unit_root(expo[w], 2 * phi.N) * phi.values[shift[w]];
  return out;
}

CMatrix heisenberg_matrix(const HeisenbergIndex& u, Residue n, int d) {
  check_index(u, d);
  const std::size_t dim = dense_dimension(n, d);
  const auto shift = shift_table(first_half_mod(u, d, n), n, d, dim);
  const auto expo = exponent_table(u, n, d, dim);
  CMatrix t(dim, dim);
  for (std::size_t w = 0; w < dim; ++w) t(w, shift[w]) = unit_root(expo[w], 2 * n);
  return t;
}

namespace {

HeisenbergIndex negate(const HeisenbergIndex& u) {
  HeisenbergIndex out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = -u[i];
  return out;
}

void check_terms(int d, const Observable::Terms& terms) {
  if (d < 1) throw InputError("observable dimension d must be >= 1");
  for (const auto& [u, c] : terms) check_index(u, d);
}

}  // namespace

Observable::Observable(int d, Terms terms, std::string id) : d_(d), terms_(std::move(terms)), id_(std::move(id)) {
  check_terms(d_, terms_);
  for (const auto& [u, c] : terms_) {
    auto it = terms_.find(negate(u));
    cplx partner = it == terms_.end() ? cplx(0) : it->second;
    if (std::abs(partner - std::conj(c)) > 1e-12) throw InputError("observable not real-valued");
  }
}

Observable Observable::symmetrized(int d, Terms terms, std::string id) {
  check_terms(d, terms);
  Terms full = terms;
  for (const auto& [u, c] : terms)
    if (!terms.count(negate(u))) full[negate(u)] = std::conj(c);
  return Observable(d, std::move(full), std::move(id));
}

double Observable::mean() const {
  auto it = terms_.find(HeisenbergIndex(2 * d_, 0));
  return it == terms_.end() ? 0.0 : it->second.real();
}

double Observable::nonconstant_l1() const {
  double acc = 0;
  for (const auto& [u, c] : terms_)
    if (u != HeisenbergIndex(2 * d_, 0)) acc += std::abs(c);
  return acc;
}

CMatrix observable_operator(const Observable& f, Residue n) {
  const int d = f.d();
  const std::size_t dim = dense_dimension(n, d);
  CMatrix op(dim, dim);
  for (const auto& [u, c] : f.terms()) {
    const auto shift = shift_table(first_half_mod(u, d, n), n, d, dim);
    const auto expo = exponent_table(u, n, d, dim);
    for (std::size_t w = 0; w < dim; ++w) op(w, shift[w]) += c * unit_root(expo[w], 2 * n);
  }
  return op;
}

Propagator build_propagator(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx) {
  const int d = a.d();
  const Residue n = ctx.N();
  const Residue two_n = 2 * n;
  const symplectic::IntMatrix& m = a.entries();
  const symplectic::IntMatrix j = symplectic::standard_form(d);
  if (!(symplectic::transpose(m) * j * m == j)) throw InputError("matrix is not symplectic");
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c)
      if ((m(r, c) - (r == c ? 1 : 0)) % 2 != 0) throw InputError("matrix must be congruent to I mod 2");
  const std::size_t dim = dense_dimension(n, d);
  const std::size_t nodes = dim * dim;

  // Relation T(g) U = U T(gA) for each generator g = e_i, h = gA, read entrywise:
  // U[a + g1, b + h1] = e_{2N}(E(h, b) - E(g, a)) U[a, b].
  struct Edge {
    std::vector<std::size_t> shift_a, shift_b;
    std::vector<Residue> exp_g, exp_h;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < 2 * d; ++i) {
    HeisenbergIndex g(2 * d, 0);
    g[i] = 1;
    HeisenbergIndex h = m.row(i);
    edges.push_back({shift_table(first_half_mod(g, d, n), n, d, dim), shift_table(first_half_mod(h, d, n), n, d, dim),
                     exponent_table(g, n, d, dim), exponent_table(h, n, d, dim)});
  }

  constexpr std::int32_t kUnseen = -1, kDead = -2;
  std::vector<std::int32_t> expo(nodes, kUnseen);
  std::vector<std::uint32_t> queue;
  queue.reserve(nodes);
  int consistent = 0;
  for (std::size_t seed = 0; seed < nodes; ++seed) {
    if (expo[seed] != kUnseen) continue;
    queue.clear();
    queue.push_back(static_cast<std::uint32_t>(seed));
    expo[seed] = 0;
    bool ok = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      const std::size_t ai = node / dim, bi = node % dim;
      const Residue e = static_cast<Residue>(expo[node]);
      for (const Edge& edge : edges) {
        const std::size_t target = edge.shift_a[ai] * dim + edge.shift_b[bi];
        const Residue next = (e + edge.exp_h[bi] + two_n - edge.exp_g[ai]) % two_n;
        if (expo[target] == kUnseen) {
          expo[target] = static_cast<std::int32_t>(next);
          queue.push_back(static_cast<std::uint32_t>(target));
        } else if (static_cast<Residue>(expo[target]) != next) {
          ok = false;
        }
      }
    }
    if (ok) {
      ++consistent;
    } else {
      for (auto node : queue) expo[node] = kDead;
    }
  }
  if (consistent != 1) throw NumericError("intertwiner dimension ≠ 1");

  for (auto& e : expo)
    if (e == kDead) e = kUnseen;
  std::size_t first = 0;
  while (first < dim && expo[first] < 0) ++first;
  if (first == dim) throw NumericError("intertwiner dimension ≠ 1");
  const Residue shift = static_cast<Residue>(expo[first]);
  Propagator out;
  out.N = n;
  out.d = d;
  out.matrix = CMatrix(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < dim; ++c) count += expo[r * dim + c] >= 0;
    if (count == 0) throw NumericError("intertwiner has a zero row");
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t c = 0; c < dim; ++c) {
      auto& e = expo[r * dim + c];
      if (e < 0) continue;
      e = static_cast<std::int32_t>((static_cast<Residue>(e) + two_n - shift) % two_n);
      out.matrix(r, c) = amp * unit_root(static_cast<Residue>(e), two_n);
    }
  }
  out.phase_exponents = std::move(expo);

  // Unitarity: exhaustive for small dimensions, random probes otherwise.
  double residual = 0;
  if (dim <= 512) {
    residual = linalg::unitarity_residual(out.matrix);
  } else {
    std::mt19937_64 rng(dim);
    std::normal_distribution<double> gauss;
    const CMatrix adj = linalg::adjoint(out.matrix);
    for (int probe = 0; probe < 4; ++probe) {
      std::vector<cplx> x(dim);
      for (auto& v : x) v = cplx(gauss(rng), gauss(rng));
      auto y = linalg::apply(adj, linalg::apply(out.matrix, x));
      double diff = 0;
      for (std::size_t i = 0; i < dim; ++i) diff += std::norm(y[i] - x[i]);
      residual = std::max(residual, std::sqrt(diff) / linalg::norm2(x));
    }
  }
  if (residual > 1e-8) throw NumericError("propagator unitarity residual " + std::to_string(residual));
  return out;
}

double egorov_residual(const Propagator& u, const symplectic::SymplecticMatrix& a, std::size_t sample_size,
                       std::uint64_t seed) {
  const int d = a.d();
  if (d != u.d) throw InputError("propagator and matrix dimensions differ");
  const Residue n = u.N;
  const std::size_t dim = u.dim();
  std::vector<HeisenbergIndex> probes;
  for (int i = 0; i < 2 * d; ++i) {
    HeisenbergIndex g(2 * d, 0);
    g[i] = 1;
    probes.push_back(g);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(0, static_cast<std::int64_t>(n) - 1);
  for (std::size_t s = 0; s < sample_size; ++s) {
    HeisenbergIndex v(2 * d);
    for (auto& c : v) c = coord(rng);
    probes.push_back(v);
  }
  const CMatrix adj = linalg::adjoint(u.matrix);
  double worst = 0;
  for (const auto& v : probes) {
    const auto shift = shift_table(first_half_mod(v, d, n), n, d, dim);
    const auto expo = exponent_table(v, n, d, dim);
    CMatrix tu(dim, dim);
    for (std::size_t w = 0; w < dim; ++w) {
      const cplx ph = unit_root(expo[w], 2 * n);
      for (std::size_t c = 0; c < dim; ++c) tu(w, c) = ph * u.matrix(shift[w], c);
    }
    CMatrix diff = adj * tu;
    const HeisenbergIndex va = a.act(v);
    const auto shift_a = shift_table(first_half_mod(va, d, n), n, d, dim);
    const auto expo_a = exponent_table(va, n, d, dim);
    for (std::size_t w = 0; w < dim; ++w) diff(w, shift_a[w]) -= unit_root(expo_a[w], 2 * n);
    worst = std::max(worst, linalg::frobenius_norm(diff) / std::sqrt(static_cast<double>(dim)));
  }
  return worst;
}

ScalarPower power_scalar(const Propagator& u, std::uint64_t e) {
  const std::size_t dim = u.dim();
  CMatrix result = CMatrix::identity(dim);
  CMatrix base = u.matrix;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  ScalarPower out{result(0, 0), 0.0};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      out.deviation = std::max(out.deviation, std::abs(result(i, j) - (i == j ? out.scalar : cplx(0))));
  return out;
}

}  // namespace catlab::quant
