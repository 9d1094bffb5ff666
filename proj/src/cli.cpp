#include "specop/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "specop/hypergeometric.hpp"
#include "specop/jacobi.hpp"
#include "specop/series.hpp"
#include "specop/tridiag_eigen.hpp"

namespace specop::cli {
namespace {

constexpr double kEigenTol = 1e-12;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return v;
}

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string hex_fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json point_to_json(const PointEigen& e) {
  return {{"j", e.j},         {"branch", std::string(to_string(e.branch))},
          {"lambda", e.lambda}, {"rho", e.rho},
          {"pole", e.pole},   {"valid", e.valid},
          {"degenerate", e.degenerate}};
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

// ---------------------------------------------------------------- parsing

WeightSequence SpaceSpec::weight() const {
  if (family == "bergman") return make_weight(BergmanType{alpha});
  if (family == "dirichlet-pow") return make_weight(DirichletPower{alpha});
  throw UsageError("unknown space family '" + family + "'");
}

std::string SpaceSpec::text() const { return family + ":" + fmt17(alpha); }

SpaceSpec parse_space(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw UsageError("--space expects FAMILY:ALPHA");
  SpaceSpec s;
  s.family = std::string(text.substr(0, colon));
  s.alpha = parse_double(text.substr(colon + 1), "alpha");
  if (s.family != "bergman" && s.family != "dirichlet-pow")
    throw UsageError("unknown space family '" + s.family + "' (expected bergman or dirichlet-pow)");
  if (s.family == "bergman" && !(s.alpha < 1.0)) throw UsageError("bergman spaces need alpha < 1");
  return s;
}

std::complex<double> parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw UsageError("empty complex literal");
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    const double mod = parse_double(text.substr(0, at), "modulus");
    const double phase = parse_double(text.substr(at + 1), "phase");
    return std::polar(mod, phase);
  }
  if (text.back() != 'i') return {parse_double(text, "real number"), 0.0};

  // Split RE(+|-)IMi at the last sign that is not part of an exponent.
  std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, "imaginary part");
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_double(body.substr(0, split), "real part"), imag_part(body.substr(split))};
}

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_complex(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& z : parse_complex_list(text)) {
    if (z.imag() != 0.0) throw UsageError("expected real values in list");
    out.push_back(z.real());
  }
  return out;
}

// ---------------------------------------------------------------- numerics shared by commands

double max_relative_deviation(const CoeffSeq& x, const CoeffSeq& y) {
  const Eigen::Index n = std::min(x.size(), y.size());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double diff = std::abs(x(k) - y(k));
    if (diff == 0.0) continue;
    const double scale = std::max(std::abs(y(k)), std::numeric_limits<double>::min());
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

double section_residual(const SymTridiag& t, const CoeffSeq& h, double lambda) {
  const Eigen::VectorXcd r = t.apply(Eigen::VectorXcd(h)) - lambda * h;
  const Eigen::Index interior = std::max<Eigen::Index>(t.dim() - 1, 1);
  return r.head(interior).norm() / h.norm();
}

// ---------------------------------------------------------------- spectrum

SpectralReport build_spectrum_report(const SpectrumOptions& opts) {
  if (opts.n < 1) throw UsageError("--n must be >= 1");
  if (!(opts.tol > 0.0)) throw UsageError("--tol must be positive");
  if (!(opts.margin > 0.0)) throw UsageError("--margin must be positive");

  SpectralReport rep;
  rep.options = opts;
  const GaugeResult g = gauge_reduce(opts.a);
  rep.a_mod = g.modulus;
  rep.a_phase = g.phase;
  rep.essential = essential_interval(opts.a);
  rep.run_id = hex_fnv1a("spectrum|" + opts.space.text() + "|" + fmt17(opts.a.real()) + "|" + fmt17(opts.a.imag()) +
                         "|" + std::to_string(opts.n) + "|" + std::to_string(opts.jmax) + "|" + fmt17(opts.tol) +
                         "|" + fmt17(opts.margin));

  const WeightSequence w = opts.space.weight();
  const bool closed_form = opts.space.family == "bergman" && g.modulus > 0.0;
  if (closed_form) rep.predicted = point_spectrum(opts.space.alpha, opts.a, opts.jmax);
  if (opts.space.family == "bergman" && opts.space.alpha == 0.0)
    rep.notes.push_back("Hardy space: Toeplitz operator, point spectrum empty");
  if (g.modulus == 0.0) rep.notes.push_back("a = 0: V_0 is diagonal, spectrum is the closure of the ratios");
  if (std::abs(g.modulus - 1.0) < 1e-15) rep.notes.push_back("|a| = 1: 0 is in the spectrum, V_a is not invertible");
  if (opts.space.family != "bergman") rep.notes.push_back("no closed-form point spectrum for this family");

  const SymTridiag t = jacobi_truncation(w, g.modulus, opts.n);
  const EigenResult eig = eigenvalues(t, kEigenTol);
  const Outliers outl = outliers(t, rep.essential, opts.margin);
  rep.section.dimension = opts.n;
  rep.section.achieved_tol = eig.achieved_tol;
  rep.section.converged = eig.converged;
  if (!opts.outliers_only) rep.section.eigenvalues = to_vector(eig.values);
  rep.section.below = outl.below;
  rep.section.above = outl.above;
  if (!eig.converged) rep.failures.push_back("eigensolver did not converge");

  if (closed_form) {
    std::vector<PointEigen> minus, plus;
    bool minus_exists = false, plus_exists = false;
    for (const auto& e : rep.predicted) {
      if (!e.valid) continue;
      (e.branch == Branch::minus ? minus : plus).push_back(e);
      (e.branch == Branch::minus ? minus_exists : plus_exists) = true;
    }
    for (const auto& [preds, found] : {std::pair{&minus, &outl.below}, std::pair{&plus, &outl.above}}) {
      for (const auto& m : match_eigenvalues(*preds, *found)) {
        MatchRow row{m.predicted.j, m.predicted.branch, m.predicted.lambda, m.section_value, m.delta, 0.0};
        const CoeffSeq h = eigenfunction_closed(opts.space.alpha, g.modulus, m.predicted, opts.n);
        row.residual = section_residual(t, to_orthonormal(w, h), m.predicted.lambda);
        rep.matches.push_back(row);
        if (!(row.delta < opts.tol))
          rep.failures.push_back("j=" + std::to_string(row.j) + " " + std::string(to_string(row.branch)) +
                                 ": |delta| = " + fmt17(row.delta) + " exceeds tol");
      }
      if (preds->size() > found->size())
        rep.failures.push_back("fewer section outliers than predicted eigenvalues");
    }
    if (!minus_exists && !outl.below.empty())
      rep.failures.push_back("outliers below the essential interval where the point spectrum has none");
    if (!plus_exists && !outl.above.empty())
      rep.failures.push_back("outliers above the essential interval where the point spectrum has none");
  }
  rep.success = rep.failures.empty();
  return rep;
}

nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json j;
  j["command"] = "spectrum";
  j["run_id"] = r.run_id;
  j["space"] = {{"family", r.options.space.family}, {"alpha", r.options.space.alpha}};
  j["a"] = {{"re", r.options.a.real()}, {"im", r.options.a.imag()}, {"modulus", r.a_mod}, {"phase", r.a_phase}};
  j["parameters"] = {{"n", r.options.n},
                     {"jmax", r.options.jmax},
                     {"tol", r.options.tol},
                     {"margin", r.options.margin},
                     {"outliers_only", r.options.outliers_only}};
  j["essential"] = {r.essential.first, r.essential.second};
  j["predicted"] = nlohmann::json::array();
  for (const auto& e : r.predicted) j["predicted"].push_back(point_to_json(e));
  j["section"] = {{"dimension", r.section.dimension},
                  {"below", r.section.below},
                  {"above", r.section.above},
                  {"achieved_tol", r.section.achieved_tol},
                  {"converged", r.section.converged}};
  if (!r.options.outliers_only) j["section"]["eigenvalues"] = r.section.eigenvalues;
  j["matches"] = nlohmann::json::array();
  j["residuals"] = nlohmann::json::array();
  for (const auto& m : r.matches) {
    j["matches"].push_back({{"j", m.j},
                            {"branch", std::string(to_string(m.branch))},
                            {"predicted", m.predicted},
                            {"section", m.section},
                            {"delta", m.delta}});
    j["residuals"].push_back(m.residual);
  }
  j["notes"] = r.notes;
  j["failures"] = r.failures;
  j["success"] = r.success;
  return j;
}

void write_csv(const SpectralReport& r, std::ostream& os, bool header) {
  if (header) os << "run_id,alpha,a_mod,a_phase,kind,j,branch,value\n";
  const std::string prefix = r.run_id + "," + fmt17(r.options.space.alpha) + "," + fmt17(r.a_mod) + "," +
                             fmt17(r.a_phase) + ",";
  os << prefix << "essential_lo,,," << fmt17(r.essential.first) << "\n";
  os << prefix << "essential_hi,,," << fmt17(r.essential.second) << "\n";
  for (const auto& e : r.predicted)
    if (e.valid) os << prefix << "predicted," << e.j << "," << to_string(e.branch) << "," << fmt17(e.lambda) << "\n";
  const auto& sec = r.options.outliers_only ? std::vector<double>{} : r.section.eigenvalues;
  if (r.options.outliers_only) {
    for (double v : r.section.below) os << prefix << "section,,," << fmt17(v) << "\n";
    for (double v : r.section.above) os << prefix << "section,,," << fmt17(v) << "\n";
  } else {
    for (double v : sec) os << prefix << "section,,," << fmt17(v) << "\n";
  }
  for (const auto& m : r.matches)
    os << prefix << "residual," << m.j << "," << to_string(m.branch) << "," << fmt17(m.residual) << "\n";
}

SpectrumOptions options_from_json(const nlohmann::json& j) {
  SpectrumOptions o;
  o.space.family = j.at("space").at("family").get<std::string>();
  o.space.alpha = j.at("space").at("alpha").get<double>();
  o.a = {j.at("a").at("re").get<double>(), j.at("a").at("im").get<double>()};
  const auto& p = j.at("parameters");
  o.n = p.at("n").get<int>();
  o.jmax = p.at("jmax").get<int>();
  o.tol = p.at("tol").get<double>();
  o.margin = p.at("margin").get<double>();
  o.outliers_only = p.at("outliers_only").get<bool>();
  return o;
}

// ---------------------------------------------------------------- sweep

std::vector<SweepRow> run_sweep(const SpaceSpec& space, double a_min, double a_max, int steps, int n, int jmax,
                                double margin) {
  if (steps < 1) throw UsageError("--steps must be >= 1");
  if (n < 1) throw UsageError("--n must be >= 1");
  const WeightSequence w = space.weight();
  std::vector<SweepRow> rows(static_cast<std::size_t>(steps));

  auto task = [&](std::size_t k) {
    const double a = steps == 1 ? a_min : a_min + (a_max - a_min) * static_cast<double>(k) / (steps - 1);
    SweepRow row;
    row.a = a;
    if (space.family == "bergman" && a != 0.0) {
      for (const auto& e : point_spectrum(space.alpha, a, jmax)) {
        if (!e.valid) continue;
        (e.branch == Branch::minus ? row.minus_valid : row.plus_valid) += 1;
      }
    }
    const SymTridiag t = jacobi_truncation(w, std::abs(a), n);
    const Outliers o = outliers(t, essential_interval(a), margin);
    row.outliers_below = static_cast<int>(o.below.size());
    row.outliers_above = static_cast<int>(o.above.size());
    rows[k] = row;
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECOP_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) workers = std::min(workers, static_cast<unsigned>(cap));
  }
  workers = std::min<unsigned>(workers, static_cast<unsigned>(steps));

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < workers; ++i)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < rows.size(); k = next++) task(k);
    });
  pool.clear();  // joins
  return rows;
}

// ---------------------------------------------------------------- verify

VerifyResult run_verify(const VerifyOptions& opts) {
  VerifyResult res;
  auto fail = [&](double alpha, double a, const PointEigen& e, std::string check, double value, double threshold) {
    res.failures.push_back({alpha, a, e.j, e.branch, std::move(check), value, threshold});
  };
  for (double alpha : opts.alphas) {
    if (!(alpha < 1.0) || alpha == 0.0) continue;
    const WeightSequence w = make_weight(BergmanType{alpha});
    for (double a : opts.a_values) {
      if (!(a > 0.0)) continue;
      const SymTridiag t = jacobi_truncation(w, a, opts.n);
      const BoundsResult bounds = eigenvalue_bounds(w, a);
      const auto [ess_lo, ess_hi] = essential_interval(a);
      for (const auto& e : valid_point_spectrum(alpha, a, opts.jmax)) {
        ++res.cases;
        const double lambda = e.lambda + opts.perturb;

        if (!(e.lambda > 0.0)) fail(alpha, a, e, "positivity", e.lambda, 0.0);
        if (e.branch == Branch::minus ? !(e.lambda < ess_lo) : !(e.lambda > ess_hi))
          fail(alpha, a, e, "branch_placement", e.lambda, e.branch == Branch::minus ? ess_lo : ess_hi);
        if (e.lambda < bounds.lo || e.lambda > bounds.hi || (bounds.hi_open && e.lambda == bounds.hi))
          res.bound_violations.push_back(
              {alpha, a, e.j, e.branch, "bounds_containment", e.lambda, e.lambda < bounds.lo ? bounds.lo : bounds.hi});

        const CoeffSeq closed = eigenfunction_closed(alpha, a, e, opts.terms);
        const MinimalSolution minimal =
            eigenfunction_minimal(w, a, lambda_from_pole(a, e.pole, e.branch) + opts.perturb, opts.terms);
        const double dev = max_relative_deviation(minimal.coeffs, closed);
        res.worst_coeff_dev = std::max(res.worst_coeff_dev, dev);
        if (!(dev <= opts.coeff_tol)) fail(alpha, a, e, "closed_vs_recurrence", dev, opts.coeff_tol);

        const CoeffSeq h = to_orthonormal(w, eigenfunction_closed(alpha, a, e, opts.n));
        const double resid = section_residual(t, h, lambda);
        res.worst_residual = std::max(res.worst_residual, resid);
        if (!(resid < opts.residual_tol)) fail(alpha, a, e, "section_residual", resid, opts.residual_tol);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------- command driver

namespace {

struct Output {
  std::ostream& stream;
  std::unique_ptr<std::ofstream> file;
};

Output open_output(const std::string& path, std::ostream& fallback) {
  if (path.empty()) return {fallback, nullptr};
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw UsageError("cannot open --out path '" + path + "'");
  std::ostream& s = *f;
  return {s, std::move(f)};
}

nlohmann::json failure_json(const VerifyFailure& f) {
  return {{"alpha", f.alpha},       {"a", f.a},         {"j", f.j},
          {"branch", std::string(to_string(f.branch))}, {"check", f.check},
          {"value", f.value},       {"threshold", f.threshold}};
}

template <typename T>
nlohmann::json complex_json(const std::complex<T>& z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of V_a = M*_{a-z} M_{a-z} on weighted Hardy spaces", "specop"};
  app.require_subcommand(1);

  std::string format = "json", out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "write output to PATH instead of stdout");
  };

  // spectrum
  std::string space_text = "bergman:-1", a_text = "0.5";
  SpectrumOptions sopt;
  auto* spectrum = app.add_subcommand("spectrum", "finite-section spectrum matched against closed forms");
  spectrum->add_option("--space", space_text, "bergman:ALPHA | dirichlet-pow:ALPHA");
  spectrum->add_option("--a", a_text, "RE[+IMi] | MOD@PHASE");
  spectrum->add_option("--n", sopt.n, "section dimension");
  spectrum->add_option("--jmax", sopt.jmax, "largest eigenvalue index to predict");
  spectrum->add_option("--tol", sopt.tol, "match tolerance");
  spectrum->add_option("--margin", sopt.margin, "outlier margin around the essential interval");
  spectrum->add_flag("--outliers-only", sopt.outliers_only, "omit the full eigenvalue list");
  add_common(spectrum);

  // verify
  VerifyOptions vopt;
  std::string alphas_text, as_text;
  auto* verify = app.add_subcommand("verify", "closed-form eigenfunctions vs recurrence and section residuals");
  verify->add_option("--alphas", alphas_text, "comma-separated alpha grid");
  verify->add_option("--as", as_text, "comma-separated |a| grid");
  verify->add_option("--jmax", vopt.jmax);
  verify->add_option("--n", vopt.n, "section dimension for residuals");
  verify->add_option("--terms", vopt.terms, "coefficients compared");
  verify->add_option("--perturb", vopt.perturb, "add this to every predicted eigenvalue");
  add_common(verify);

  // sweep
  std::string sweep_space = "bergman:-1";
  double a_min = 0.5, a_max = 1.5, sweep_margin = 1e-6;
  int steps = 11, sweep_n = 500, sweep_jmax = 5;
  auto* sweep = app.add_subcommand("sweep", "branch and outlier counts across |a|");
  sweep->add_option("--space", sweep_space);
  sweep->add_option("--a-min", a_min);
  sweep->add_option("--a-max", a_max);
  sweep->add_option("--steps", steps);
  sweep->add_option("--n", sweep_n);
  sweep->add_option("--jmax", sweep_jmax);
  sweep->add_option("--margin", sweep_margin);
  std::string sweep_format = "csv";
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", out_path);

  // inner
  std::string inner_space = "bergman:-1", poly_text;
  double inner_tol = 1e-6;
  auto* inner = app.add_subcommand("inner", "test M*_f M_f 1 = 1 for a polynomial f");
  inner->add_option("--space", inner_space);
  inner->add_option("--poly", poly_text, "coefficients f_0,f_1,... as complex literals")->required();
  inner->add_option("--tol", inner_tol);
  add_common(inner);

  // dirichlet
  double d_alpha = 1.0, d_lambda = 0.1;
  std::string d_a_text = "0.5";
  int d_terms = 30, d_norm_terms = 200;
  auto* dirichlet = app.add_subcommand("dirichlet", "hypergeometric eigenfunction candidate diagnostics");
  dirichlet->add_option("--alpha", d_alpha, "weight binom(n+alpha, n), alpha > 0");
  dirichlet->add_option("--a", d_a_text);
  dirichlet->add_option("--lambda", d_lambda);
  dirichlet->add_option("--terms", d_terms);
  dirichlet->add_option("--norm-terms", d_norm_terms);
  add_common(dirichlet);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (spectrum->parsed()) {
      sopt.space = parse_space(space_text);
      sopt.a = parse_complex(a_text);
      const SpectralReport rep = build_spectrum_report(sopt);
      Output o = open_output(out_path, out);
      if (format == "csv")
        write_csv(rep, o.stream);
      else
        o.stream << to_json(rep).dump(2) << "\n";
      if (!rep.success)
        for (const auto& f : rep.failures) err << "failure: " << f << "\n";
      return rep.success ? kSuccess : kVerificationFailed;
    }

    if (verify->parsed()) {
      if (!alphas_text.empty()) vopt.alphas = parse_real_list(alphas_text);
      if (!as_text.empty()) vopt.a_values = parse_real_list(as_text);
      const VerifyResult res = run_verify(vopt);
      Output o = open_output(out_path, out);
      if (format == "csv") {
        o.stream << "alpha,a,j,branch,check,value,threshold\n";
        for (const auto& f : res.failures)
          o.stream << fmt17(f.alpha) << "," << fmt17(f.a) << "," << f.j << "," << to_string(f.branch) << ","
                   << f.check << "," << fmt17(f.value) << "," << fmt17(f.threshold) << "\n";
      } else {
        nlohmann::json j{{"command", "verify"},
                         {"cases", res.cases},
                         {"perturb", vopt.perturb},
                         {"worst_coeff_deviation", res.worst_coeff_dev},
                         {"worst_residual", res.worst_residual},
                         {"failure_count", res.failures.size()},
                         {"passed", res.failures.empty()}};
        j["failures"] = nlohmann::json::array();
        for (std::size_t k = 0; k < std::min<std::size_t>(10, res.failures.size()); ++k)
          j["failures"].push_back(failure_json(res.failures[k]));
        j["bound_violations"] = nlohmann::json::array();
        for (const auto& v : res.bound_violations) j["bound_violations"].push_back(failure_json(v));
        o.stream << j.dump(2) << "\n";
      }
      for (std::size_t k = 0; k < std::min<std::size_t>(10, res.failures.size()); ++k) {
        const auto& f = res.failures[k];
        err << "failure: alpha=" << fmt17(f.alpha) << " a=" << fmt17(f.a) << " j=" << f.j << " "
            << to_string(f.branch) << " " << f.check << " " << fmt17(f.value) << " > " << fmt17(f.threshold) << "\n";
      }
      return res.failures.empty() ? kSuccess : kVerificationFailed;
    }

    if (sweep->parsed()) {
      const SpaceSpec space = parse_space(sweep_space);
      const auto rows = run_sweep(space, a_min, a_max, steps, sweep_n, sweep_jmax, sweep_margin);
      Output o = open_output(out_path, out);
      if (sweep_format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
          j.push_back({{"a", r.a},
                       {"minus_valid", r.minus_valid},
                       {"plus_valid", r.plus_valid},
                       {"outliers_below", r.outliers_below},
                       {"outliers_above", r.outliers_above}});
        o.stream << j.dump(2) << "\n";
      } else {
        o.stream << "alpha,a,minus_valid,plus_valid,outliers_below,outliers_above\n";
        for (const auto& r : rows)
          o.stream << fmt17(space.alpha) << "," << fmt17(r.a) << "," << r.minus_valid << "," << r.plus_valid << ","
                   << r.outliers_below << "," << r.outliers_above << "\n";
      }
      return kSuccess;
    }

    if (inner->parsed()) {
      const SpaceSpec space = parse_space(inner_space);
      const auto coeffs = parse_complex_list(poly_text);
      CoeffSeq f(static_cast<Eigen::Index>(coeffs.size()));
      for (std::size_t k = 0; k < coeffs.size(); ++k) f(static_cast<Eigen::Index>(k)) = coeffs[k];
      const WeightSequence w = space.weight();
      CoeffSeq one = CoeffSeq::Zero(f.size());
      one(0) = 1.0;
      const CoeffSeq v = apply_poly_V(w, f, one);
      const bool is_inner = inner_check(w, f, inner_tol);
      Output o = open_output(out_path, out);
      if (format == "csv") {
        o.stream << "n,re,im\n";
        for (Eigen::Index k = 0; k < v.size(); ++k)
          o.stream << k << "," << fmt17(v(k).real()) << "," << fmt17(v(k).imag()) << "\n";
        o.stream << "# " << (is_inner ? "inner" : "not inner") << "\n";
      } else {
        nlohmann::json j{{"command", "inner"}, {"space", space.text()}, {"tol", inner_tol}};
        j["V_f_1"] = nlohmann::json::array();
        for (Eigen::Index k = 0; k < v.size(); ++k) j["V_f_1"].push_back(complex_json(v(k)));
        j["inner"] = is_inner;
        j["verdict"] = is_inner ? "inner" : "not inner";
        o.stream << j.dump(2) << "\n";
      }
      return kSuccess;
    }

    if (dirichlet->parsed()) {
      const std::complex<double> a = parse_complex(d_a_text);
      const double a_mod = std::abs(a);
      if (d_terms < 2 || d_norm_terms < 2) throw UsageError("--terms and --norm-terms must be >= 2");
      const OdeParams p = dirichlet_params(d_alpha, a_mod, d_lambda);
      const CoeffSeq cand = dirichlet_candidate(p, d_terms);
      const CoeffSeq rec = eigenfunction_recurrence(dirichlet_binomial_weight(d_alpha), a_mod, d_lambda, d_terms);
      const double deviation = max_relative_deviation(cand, rec);
      const OdeResidual resid = ode_residual(p, cand);
      const NormDiagnostic diag = dirichlet_norm_diagnostic(d_alpha, a_mod, d_lambda, d_norm_terms);
      const bool ok = deviation < 1e-8 && resid.max_rel < 1e-10;

      Output o = open_output(out_path, out);
      if (format == "csv") {
        o.stream << "n,log10_partial_norm\n";
        for (Eigen::Index k = 0; k < diag.log10_partial_norms.size(); ++k)
          o.stream << k << "," << fmt17(diag.log10_partial_norms(k)) << "\n";
      } else {
        nlohmann::json j{{"command", "dirichlet"},
                         {"params",
                          {{"alpha", p.alpha},
                           {"a_mod", p.a_mod},
                           {"lambda", p.lambda},
                           {"b", p.b},
                           {"c", complex_json(p.c)},
                           {"mu", complex_json(p.mu)},
                           {"nu", complex_json(p.nu)},
                           {"mu_plus_nu", complex_json(p.mu + p.nu)}}},
                         {"terms", d_terms},
                         {"candidate_vs_recurrence_max_rel_deviation", deviation},
                         {"ode_residual", {{"max_abs", resid.max_abs}, {"max_rel", resid.max_rel}}},
                         {"verified", ok}};
        j["diagnostic"] = {{"label", "diagnostic: weighted partial norms of the candidate; no claim is made"},
                           {"norm_terms", d_norm_terms},
                           {"c_modulus", diag.c_modulus},
                           {"last_increment_log10", diag.last_increment},
                           {"growth_per_term_log10", diag.growth_per_term},
                           {"log10_partial_norms", to_vector(diag.log10_partial_norms)}};
        o.stream << j.dump(2) << "\n";
      }
      return ok ? kSuccess : kVerificationFailed;
    }
  } catch (const DegenerateParameter& e) {
    err << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace specop::cli
