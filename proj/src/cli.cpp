#include "catlab/cli.hpp"

#include "catlab/errors.hpp"
#include "catlab/io.hpp"
#include "catlab/spectra.hpp"
#include "catlab/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

namespace catlab::cli {

namespace {

using symplectic::SymplecticMatrix;

struct Config {
  std::string matrix;
  std::uint64_t p = 0;
  unsigned k = 1;
  unsigned k_min = 0, k_max = 0;
  std::string observable;
  bool symmetrize = false;
  std::string u;
  unsigned s = 1;
  unsigned r = 1;
  std::string a;
  std::uint64_t T = 0;
  int d = 1;
  std::uint64_t limit = 100;
  std::string out;
  std::uint64_t seed = 0;
  bool force = false;
  bool assume_irreducible = false;
  bool fault = false;
};

// CSV destination: --out file or the supplied stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write output: " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string fmt(double x) { return io::format_double(x); }

SymplecticMatrix load_matrix(const Config& c) {
  if (c.matrix.empty()) throw InputError("--matrix is required");
  return io::read_matrix(c.matrix);
}

// Admissibility and good-prime membership unless --force.
void require_good_prime(const SymplecticMatrix& a, const Config& c) {
  if (c.force) return;
  if (!symplectic::validate_matrix(a).admitted(c.assume_irreducible)) throw InputError("matrix not admitted");
  if (!symplectic::is_good_prime(a, c.p))
    throw InputError("p = " + std::to_string(c.p) + " is not a good prime for this matrix");
}

int cmd_validate(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  const auto rep = symplectic::validate_matrix(a);
  auto line = [&](const std::string& key, const std::string& value) {
    out << std::left << std::setw(20) << key << value << '\n';
  };
  line("d", std::to_string(a.d()));
  line("symplectic", rep.symplectic ? "yes" : "no");
  line("A = I mod 2", rep.parity_ok ? "yes" : "no");
  line("irreducible", symplectic::to_string(rep.irreducible));
  line("no roots of unity", symplectic::to_string(rep.root_of_unity_free));
  for (const auto& dtl : rep.details) line("note", dtl);
  const bool ok = rep.admitted(c.assume_irreducible);
  line("admitted", ok ? "yes" : "no");
  return ok ? kExitOk : kExitInput;
}

int cmd_primes(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  const auto primes = symplectic::good_primes(a, c.limit, c.assume_irreducible);
  for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? " " : "") << primes[i];
  out << '\n';
  return kExitOk;
}

int cmd_order(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  require_good_prime(a, c);
  const arith::PrimePowerModulus ctx(c.p, c.k);
  out << "N=" << ctx.N() << " T=" << symplectic::matrix_order(a, c.p, c.k) << '\n';
  const auto sd = verify::spectral_data(a, c.p, c.k);
  for (std::size_t i = 0; i < sd.lambda.size(); ++i)
    out << "lambda=" << sd.lambda[i] << " order=" << sd.orders[i] << " gamma=" << sd.gammas[i] << '\n';
  out << "gamma_max=" << sd.gamma_max << '\n';
  return kExitOk;
}

int cmd_propagator(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  require_good_prime(a, c);
  const arith::PrimePowerModulus ctx(c.p, c.k);
  const quant::Propagator u = quant::build_propagator(a, ctx);
  const std::uint64_t order = symplectic::matrix_order(a, c.p, c.k);
  const auto scalar = quant::power_scalar(u, order);
  out << "N=" << u.N << " dim=" << u.dim() << " T=" << order << '\n';
  out << "unitarity_residual=" << fmt(linalg::unitarity_residual(u.matrix)) << '\n';
  out << "egorov_residual=" << fmt(quant::egorov_residual(u, a, 100, c.seed)) << '\n';
  out << "power_scalar_deviation=" << fmt(scalar.deviation) << " |c|=" << fmt(std::abs(scalar.scalar)) << '\n';
  if (!c.out.empty()) {
    Sink sink(c.out, out);
    *sink << "row,col,re,im\n";
    for (std::size_t i = 0; i < u.dim(); ++i)
      for (std::size_t j = 0; j < u.dim(); ++j)
        if (std::abs(u.matrix(i, j)) > 0)
          *sink << i << ',' << j << ',' << fmt(u.matrix(i, j).real()) << ',' << fmt(u.matrix(i, j).imag()) << '\n';
  }
  return kExitOk;
}

int cmd_discrepancy(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  require_good_prime(a, c);
  if (c.observable.empty()) throw InputError("--observable is required");
  const quant::Observable f = io::read_observable(c.observable, c.symmetrize);
  unsigned k_min = c.k, k_max = c.k;
  if (c.k_min || c.k_max) {
    k_min = c.k_min ? c.k_min : 1;
    k_max = c.k_max ? c.k_max : k_min;
  }
  const auto table = spectra::decay_experiment(a, c.p, k_min, k_max, f, c.seed);
  {
    Sink sink(c.out, out);
    spectra::write_csv(table, *sink);
  }
  const auto rc = verify::rate_constants(a.d());
  out << "slope=" << (table.slope ? fmt(*table.slope) : std::string("undefined")) << '\n';
  out << "kappa_d=" << rc.kappa << " reference_slope=" << fmt(-spectra::kappa(a.d())) << '\n';
  return kExitOk;
}

int cmd_qcount(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  require_good_prime(a, c);
  if (c.u.empty()) throw InputError("-u is required");
  const auto u = io::parse_int_list(c.u);
  const arith::PrimePowerModulus ctx(c.p, c.k);
  std::vector<verify::CongruenceCount> rows{verify::count_Q(a, ctx, u, c.s)};
  const double naive_size = std::pow(static_cast<double>(rows.front().T), 2.0 * c.s);
  if (naive_size <= verify::kNaiveBudget) rows.push_back(verify::count_Q(a, ctx, u, c.s, verify::CountMethod::naive));
  Sink sink(c.out, out);
  *sink << "N,u,s,T,Q,method\n";
  for (const auto& q : rows)
    *sink << q.N << ',' << io::join(q.u, ";") << ',' << q.s << ',' << q.T << ',' << q.count << ','
          << verify::to_string(q.method) << '\n';
  return kExitOk;
}

int cmd_expsum(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  require_good_prime(a, c);
  const auto sd = verify::spectral_data(a, c.p, c.r);
  std::optional<std::vector<std::int64_t>> coeffs;
  if (!c.a.empty()) coeffs = io::parse_int_list(c.a);
  Sink sink(c.out, out);
  *sink << "r,t_r,abs_S,saving\n";
  for (unsigned r = 1; r <= c.r; ++r) {
    const auto rec = coeffs ? verify::saving_exponent(sd, *coeffs, r) : verify::worst_saving(sd, r);
    *sink << r << ',' << rec.t_r << ',' << fmt(std::abs(rec.value)) << ',' << fmt(rec.saving) << '\n';
  }
  return kExitOk;
}

int cmd_moments(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = load_matrix(c);
  require_good_prime(a, c);
  const auto sd = verify::spectral_data(a, c.p, c.r);
  Sink sink(c.out, out);
  *sink << "r,s,T,lhs,rhs,match";
  for (unsigned j = 0; j <= c.r; ++j) *sink << ",W_" << j;
  *sink << '\n';
  for (unsigned r = 1; r <= c.r; ++r) {
    const std::uint64_t t = c.T ? c.T : symplectic::matrix_order(a, c.p, r);
    const auto rep = verify::moment_identity(sd, r, c.s, t);
    *sink << r << ',' << c.s << ',' << t << ',' << fmt(rep.lhs) << ',' << rep.rhs << ','
          << (rep.match ? "true" : "false");
    for (unsigned j = 0; j <= c.r; ++j) *sink << ',' << (j < rep.w.size() ? fmt(rep.w[j]) : std::string());
    *sink << '\n';
  }
  return kExitOk;
}

// Brute-force order by repeated multiplication.
std::uint64_t brute_order(const SymplecticMatrix& a, arith::Residue n) {
  const std::size_t dim = a.entries().size();
  const auto base = symplectic::reduce_mod(a.entries(), n);
  auto cur = base;
  for (std::uint64_t e = 1; e <= 100000000; ++e) {
    if (symplectic::is_identity(cur, dim)) return e;
    cur = symplectic::mat_mul_mod(cur, base, dim, n);
  }
  throw NumericError("brute-force order exceeded its budget");
}

int cmd_verify(const Config& c, std::ostream& out) {
  const SymplecticMatrix a = symplectic::fixture_a2();
  const arith::Residue p = 5;
  const std::vector<std::int64_t> u{1, 0};
  bool all = true;
  auto report = [&](bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    all = all && ok;
  };

  {
    double worst = 0, unit = 0;
    for (unsigned k = 1; k <= 2; ++k) {
      quant::Propagator prop = quant::build_propagator(a, arith::PrimePowerModulus(p, k));
      if (c.fault && k == 1) {
        for (std::size_t i = 0; i < prop.dim(); ++i) std::swap(prop.matrix(i, 0), prop.matrix(i, 1));
        prop.phase_exponents.reset();
      }
      worst = std::max(worst, quant::egorov_residual(prop, a, 100, c.seed));
      unit = std::max(unit, linalg::unitarity_residual(prop.matrix));
    }
    report(worst < 1e-10 && unit < 1e-10, "egorov",
           "A2 p=5 k=1..2 max_residual=" + fmt(worst) + " unitarity=" + fmt(unit));
  }
  {
    bool ok = true;
    std::string detail = "A2 p=5";
    for (unsigned k = 1; k <= 3; ++k) {
      const auto fast = symplectic::matrix_order(a, p, k);
      const auto slow = brute_order(a, arith::checked_pow(p, k));
      ok = ok && fast == slow;
      detail += " ord(5^" + std::to_string(k) + ")=" + std::to_string(fast) + "/" + std::to_string(slow);
    }
    report(ok, "order-growth", detail);
  }
  {
    bool ok = true;
    std::string detail = "A2 u=(1,0)";
    for (unsigned k = 1; k <= 2; ++k)
      for (unsigned s = 1; s <= 2; ++s) {
        const auto kr = verify::kr_inequality_check(a, arith::PrimePowerModulus(p, k), u, s, c.seed);
        ok = ok && kr.holds;
        detail += " N=" + std::to_string(arith::checked_pow(p, k)) + ",s=" + std::to_string(s) + ":" + fmt(kr.lhs) +
                  "<=" + fmt(kr.rhs);
      }
    report(ok, "coefficient-bound", detail);
  }
  {
    bool ok = true;
    std::size_t checked = 0;
    unsigned m = 0;
    for (unsigned s = 1; s <= 2; ++s)
      for (const auto& sol : verify::enumerate_Q_solutions(a, arith::PrimePowerModulus(p, 2), u, s)) {
        const auto rep = verify::reduction_check(a, p, 2, u, sol);
        ok = ok && rep.matrix_congruence && rep.eigenvalue_congruence;
        m = std::max(m, rep.m);
        ++checked;
      }
    report(ok, "congruence-reduction",
           "A2 p=5 k=2 u=(1,0) s<=2 solutions=" + std::to_string(checked) + " m=" + std::to_string(m));
  }
  {
    const auto sd = verify::spectral_data(a, p, 2);
    const double limit = 1.0 - 1.0 / (2.0 * a.d()) + 0.2;
    bool ok = true;
    std::string detail = "A2 p=5 limit=" + fmt(limit);
    for (unsigned r = 1; r <= 2; ++r) {
      const auto w = verify::worst_saving(sd, r);
      ok = ok && w.saving <= limit;
      detail += " r=" + std::to_string(r) + ":max_saving=" + fmt(w.saving) + "@a=(" + io::join(w.a, ",") + ")";
    }
    report(ok, "expsum-saving", detail);
  }
  {
    const auto sd = verify::spectral_data(a, p, 2);
    bool ok = true;
    std::string detail = "A2 p=5";
    for (unsigned r = 1; r <= 2; ++r)
      for (unsigned s = 1; s <= 2; ++s) {
        const auto t = symplectic::matrix_order(a, p, r);
        const auto rep = verify::moment_identity(sd, r, s, t);
        ok = ok && rep.match;
        detail += " (r=" + std::to_string(r) + ",s=" + std::to_string(s) + ",T=" + std::to_string(t) +
                  "):" + std::to_string(rep.rhs);
      }
    report(ok, "moment-identity", detail);
  }
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_rates(const Config& c, std::ostream& out) {
  const auto rc = verify::rate_constants(c.d);
  out << "kappa=" << rc.kappa << " s0=" << rc.s0 << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"catlab: quantized cat maps modulo prime powers", "catlab"};
  app.require_subcommand(1);
  Config c;
  std::function<int(const Config&, std::ostream&)> handler;

  auto sub = [&](const std::string& name, const std::string& help,
                 std::function<int(const Config&, std::ostream&)> fn) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->callback([&handler, fn] { handler = fn; });
    cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
    return cmd;
  };
  auto matrix = [&](CLI::App* cmd) {
    cmd->add_option("--matrix", c.matrix, "matrix JSON file");
    cmd->add_flag("--assume-irreducible", c.assume_irreducible, "accept an inconclusive irreducibility test");
  };
  auto modulus = [&](CLI::App* cmd, bool with_k) {
    cmd->add_option("-p", c.p, "prime")->required();
    if (with_k) cmd->add_option("-k", c.k, "exponent")->capture_default_str();
    cmd->add_flag("--force", c.force, "skip the good-prime membership check");
  };
  auto output = [&](CLI::App* cmd) { cmd->add_option("--out", c.out, "output CSV path"); };

  CLI::App* validate = sub("validate", "check admissibility of a matrix", cmd_validate);
  matrix(validate);

  CLI::App* primes = sub("primes", "list good primes", cmd_primes);
  matrix(primes);
  primes->add_option("--limit", c.limit, "largest prime to test")->capture_default_str();

  CLI::App* order = sub("order", "order of A modulo p^k", cmd_order);
  matrix(order);
  modulus(order, true);

  CLI::App* prop = sub("propagator", "build U_N(A) and report its residuals", cmd_propagator);
  matrix(prop);
  modulus(prop, true);
  output(prop);

  CLI::App* disc = sub("discrepancy", "discrepancy over a range of k", cmd_discrepancy);
  matrix(disc);
  modulus(disc, true);
  disc->add_option("--k-min", c.k_min, "first k");
  disc->add_option("--k-max", c.k_max, "last k");
  disc->add_option("--observable", c.observable, "observable JSON file");
  disc->add_flag("--symmetrize", c.symmetrize, "insert missing conjugate terms");
  output(disc);

  CLI::App* qcount = sub("qcount", "count solutions of the orbit congruence", cmd_qcount);
  matrix(qcount);
  modulus(qcount, true);
  qcount->add_option("-u", c.u, "comma-separated vector u");
  qcount->add_option("-s", c.s, "tuple length")->capture_default_str();
  output(qcount);

  CLI::App* expsum = sub("expsum", "full-period exponential sums", cmd_expsum);
  matrix(expsum);
  modulus(expsum, false);
  expsum->add_option("-r", c.r, "largest r")->capture_default_str();
  expsum->add_option("-a", c.a, "comma-separated coefficient vector (default: worst case)");
  output(expsum);

  CLI::App* moments = sub("moments", "moment identity and gcd-class sums", cmd_moments);
  matrix(moments);
  modulus(moments, false);
  moments->add_option("-r", c.r, "largest r")->capture_default_str();
  moments->add_option("-s", c.s, "moment order")->capture_default_str();
  moments->add_option("-T", c.T, "summation length (default ord(A, p^r))");
  output(moments);

  CLI::App* ver = sub("verify", "run the verification battery", cmd_verify);
  ver->add_flag("--fault", c.fault, "corrupt the propagator (test only)");

  CLI::App* rates = sub("rates", "rate constants", cmd_rates);
  rates->add_option("-d", c.d, "half-dimension")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    return handler(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace catlab::cli
