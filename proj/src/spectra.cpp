#include "catlab/spectra.hpp"

#include "catlab/errors.hpp"
#include "catlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace catlab::spectra {

namespace {

constexpr double kClusterGap = 1e-7;
constexpr double kResidualTolerance = 1e-9;

double wrap_phase(double theta) {
  theta -= std::floor(theta);
  return theta >= 1.0 ? 0.0 : theta;
}

// Modified Gram-Schmidt, two passes.
void orthonormalize(std::vector<std::vector<cplx>>& vs) {
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const cplx c = linalg::dot(vs[j], vs[i]);
        for (std::size_t r = 0; r < vs[i].size(); ++r) vs[i][r] -= c * vs[j][r];
      }
      const double nrm = linalg::norm2(vs[i]);
      if (nrm < 1e-6) throw NumericError("eigenspace basis degenerate");
      for (auto& x : vs[i]) x /= nrm;
    }
}

struct Cluster {
  double phase;
  std::vector<std::vector<cplx>> vectors;
  std::vector<double> residuals;
};

std::optional<std::vector<Cluster>> try_decompose(const CMatrix& u, double t) {
  const std::size_t n = u.rows();
  const cplx rot = std::polar(1.0, 2 * M_PI * t);
  CMatrix h = u;
  h *= rot;
  CMatrix back = linalg::adjoint(u);
  back *= std::conj(rot);
  h += back;
  h *= 0.5;
  const linalg::HermitianEigen eig = linalg::hermitian_eigen(h);

  std::vector<double> phase(n);
  std::vector<std::vector<cplx>> vecs(n);
  for (std::size_t j = 0; j < n; ++j) {
    vecs[j] = eig.vectors.column(j);
    phase[j] = wrap_phase(std::arg(linalg::dot(vecs[j], linalg::apply(u, vecs[j]))) / (2 * M_PI));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return phase[a] < phase[b]; });

  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || phase[order[i]] - phase[order[i - 1]] > kClusterGap) groups.emplace_back();
    groups.back().push_back(order[i]);
  }
  if (groups.size() > 1 && phase[order.front()] + 1.0 - phase[order.back()] <= kClusterGap) {
    groups.front().insert(groups.front().end(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }

  std::vector<Cluster> clusters;
  for (const auto& g : groups) {
    Cluster c;
    cplx mean = 0;
    for (auto j : g) {
      c.vectors.push_back(vecs[j]);
      mean += std::polar(1.0, 2 * M_PI * phase[j]);
    }
    c.phase = wrap_phase(std::arg(mean) / (2 * M_PI));
    orthonormalize(c.vectors);
    const cplx ev = std::polar(1.0, 2 * M_PI * c.phase);
    for (const auto& v : c.vectors) {
      auto uv = linalg::apply(u, v);
      double res = 0;
      for (std::size_t r = 0; r < n; ++r) res += std::norm(uv[r] - ev * v[r]);
      res = std::sqrt(res);
      if (!(res < kResidualTolerance)) return std::nullopt;
      c.residuals.push_back(res);
    }
    clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) { return a.phase < b.phase; });
  return clusters;
}

}  // namespace

std::size_t EigenDecomposition::dimension() const {
  std::size_t total = 0;
  for (const auto& b : bases) total += b.size();
  return total;
}

CMatrix EigenDecomposition::frame(std::size_t j) const {
  const auto& basis = bases.at(j);
  const std::size_t n = basis.empty() ? 0 : basis.front().size();
  CMatrix v(n, basis.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) v(r, c) = basis[c].values[r] * scale;
  return v;
}

double EigenDecomposition::max_residual() const {
  double m = 0;
  for (const auto& rs : residuals)
    for (double r : rs) m = std::max(m, r);
  return m;
}

EigenDecomposition spectral_decomposition(const quant::Propagator& u, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 1.0);
  const double scale = std::sqrt(static_cast<double>(u.dim()));
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto clusters = try_decompose(u.matrix, angle(rng));
    if (!clusters) continue;
    EigenDecomposition out;
    for (auto& c : *clusters) {
      out.eigenphases.push_back(c.phase);
      std::vector<StateVector> basis;
      for (auto& v : c.vectors) {
        for (auto& x : v) x *= scale;
        basis.emplace_back(u.N, u.d, std::move(v));
      }
      out.bases.push_back(std::move(basis));
      out.residuals.push_back(std::move(c.residuals));
    }
    return out;
  }
  throw NumericError("spectral decomposition failed");
}

cplx matrix_coefficient(const quant::HeisenbergIndex& u, const StateVector& psi) {
  if (std::abs(quant::norm(psi) - 1.0) > 1e-8) throw InputError("state vector is not normalized");
  return quant::inner(quant::apply_heisenberg(u, psi), psi);
}

DiscrepancyReport discrepancy(const EigenDecomposition& eig, const quant::Observable& f, Residue n, unsigned k,
                              std::uint64_t order) {
  CMatrix op = quant::observable_operator(f, n);
  const std::size_t dim = op.rows();
  if (eig.dimension() != dim) throw InputError("decomposition and observable dimensions differ");
  const double mean = f.mean();
  for (std::size_t i = 0; i < dim; ++i) op(i, i) -= mean;

  DiscrepancyReport rep;
  rep.N = n;
  rep.k = k;
  rep.T = order;
  rep.dim = dim;
  rep.observable = f.id();
  for (std::size_t j = 0; j < eig.bases.size(); ++j) {
    const CMatrix v = eig.frame(j);
    CMatrix b = linalg::adjoint(v) * (op * v);
    b = b + linalg::adjoint(b);
    b *= 0.5;
    const auto e = linalg::jacobi_eigen(b);
    const double radius = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    for (std::size_t i = 0; i < b.rows(); ++i) rep.per_vector_max = std::max(rep.per_vector_max, std::abs(b(i, i)));
    rep.per_eigenspace.emplace_back(eig.eigenphases[j], radius);
    rep.delta = std::max(rep.delta, radius);
  }
  if (rep.delta > f.nonconstant_l1() + 1e-9) throw NumericError("discrepancy exceeds the coefficient l1 bound");
  return rep;
}

DiscrepancyReport discrepancy(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx,
                              const quant::Observable& f, std::uint64_t seed) {
  if (f.d() != a.d()) throw InputError("observable and matrix dimensions differ");
  const std::uint64_t order = symplectic::matrix_order(a, ctx.p(), ctx.k());
  const quant::Propagator u = quant::build_propagator(a, ctx);
  const EigenDecomposition eig = spectral_decomposition(u, seed);
  return discrepancy(eig, f, ctx.N(), ctx.k(), order);
}

double kappa(int d) { return static_cast<double>(d) / (2.0 * (2.0 * d * d - d + 1)); }

std::optional<double> fit_slope(const std::vector<DiscrepancyReport>& rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows)
    if (r.delta > 0) {
      xs.push_back(std::log(static_cast<double>(r.N)));
      ys.push_back(std::log(r.delta));
    }
  if (xs.size() < 2) return std::nullopt;
  const double m = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

DecayTable decay_experiment(const symplectic::SymplecticMatrix& a, Residue p, unsigned k_min, unsigned k_max,
                            const quant::Observable& f, std::uint64_t seed) {
  if (k_min < 1 || k_max < k_min) throw InputError("invalid k range");
  DecayTable table;
  table.d = a.d();
  for (unsigned k = k_min; k <= k_max; ++k) {
    const arith::PrimePowerModulus ctx(p, k);
    try {
      table.rows.push_back(discrepancy(a, ctx, f, seed));
    } catch (const NumericError& e) {
      throw NumericError("k = " + std::to_string(k) + ": " + e.what());
    }
    table.kappa_bound.push_back(std::pow(static_cast<double>(ctx.N()), -kappa(a.d())));
    table.slope_so_far.push_back(fit_slope(table.rows));
  }
  table.slope = fit_slope(table.rows);
  return table;
}

void write_csv(const DecayTable& table, std::ostream& out) {
  out << "k,N,T,dim,delta,kappa_bound,slope_so_far\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    out << r.k << ',' << r.N << ',' << r.T << ',' << r.dim << ',' << io::format_double(r.delta) << ','
        << io::format_double(table.kappa_bound[i]) << ','
        << (table.slope_so_far[i] ? io::format_double(*table.slope_so_far[i]) : std::string("undefined")) << '\n';
  }
}

}  // namespace catlab::spectra
