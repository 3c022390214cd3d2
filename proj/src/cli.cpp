#include "lieheat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "lieheat/geometry.hpp"
#include "lieheat/group.hpp"
#include "lieheat/kernels.hpp"
#include "lieheat/spectrum.hpp"

namespace lieheat::cli {

namespace {

using json = nlohmann::json;

constexpr double kChartRadius = 0.5;
constexpr double kVolumeRadius = 1.0;
constexpr int kChartPoints = 20;
constexpr int kVolumePoints = 100;
constexpr double kStep = 1e-3;
constexpr double kTraceEps = 1e-12;
const std::vector<double> kFlatnessTimes = {0.05, 0.0875, 0.125, 0.1625, 0.2};

// Portable uniform [0,1) draw; std distributions differ between libraries.
double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::vector<Eigen::VectorXd> random_chart_points(int n, int count, double radius, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Eigen::VectorXd> pts;
  while (static_cast<int>(pts.size()) < count) {
    Eigen::VectorXd dir(n);
    for (int i = 0; i < n; ++i) dir(i) = 2.0 * uniform01(gen) - 1.0;
    const double len = dir.norm();
    if (len < 1e-3) continue;
    pts.push_back(dir / len * (radius * uniform01(gen)));
  }
  return pts;
}

// A regular torus point at distance `norm` from the origin, off every wall.
Eigen::VectorXd probe_point(int rank, double norm) {
  Eigen::VectorXd h(rank);
  for (int a = 0; a < rank; ++a) h(a) = 1.0 / (a + 1.0);
  return h / h.norm() * norm;
}

Check make_check(std::string name, std::string anchor, double measured, double expected, double tolerance) {
  Check c{std::move(name), std::move(anchor), measured, expected, tolerance, false};
  c.pass = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
  return c;
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"paper_anchor", c.paper_anchor},
                      {"measured", c.measured},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  return {{"group", r.group}, {"metric_scale", r.metric_scale}, {"seed", r.seed}, {"checks", checks},
          {"overall", r.overall}};
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace

VerificationReport verify_group(const GroupSpec& spec, std::uint64_t seed) {
  const GroupModel g = GroupModel::build(spec);
  const int n = g.dim();
  VerificationReport rep;
  rep.group = spec.name();
  rep.metric_scale = spec.metric_scale;
  rep.seed = seed;
  auto& checks = rep.checks;

  {
    const auto r2 = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    const double lap = laplace_beltrami_chart(g.alg, r2, Eigen::VectorXd(Eigen::VectorXd::Zero(n)), kStep);
    checks.push_back(make_check("laplacian_at_identity", "Eq. 2.1", lap, 2.0 * n, 1e-6));
  }
  {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd xp = Eigen::VectorXd::Zero(n), xm = xp;
      xp(k) = kStep;
      xm(k) = -kStep;
      const Eigen::MatrixXd d = (chart_metric(g.alg, xp).g - chart_metric(g.alg, xm).g) / (2.0 * kStep);
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    checks.push_back(make_check("normal_coordinates", "Eq. 2.1", worst, 0.0, 1e-8));
  }
  {
    double worst = 0.0;
    for (const auto& x : random_chart_points(n, kVolumePoints, kVolumeRadius, seed)) {
      const double j = j_function(g.alg, x);
      worst = std::max(worst, std::abs(std::sqrt(chart_metric(g.alg, x).det_g) - j * j));
    }
    checks.push_back(make_check("volume_density", "Eq. 2.1", worst, 0.0, 1e-10));
  }

  const auto chart_pts = random_chart_points(n, kChartPoints, kChartRadius, seed ^ 0x9e3779b97f4a7c15ULL);
  {
    // j is an eigenfunction of the flat Laplacian with eigenvalue tr_g(Cas)/24.
    double worst = 0.0;
    const auto j = [&](const Eigen::VectorXd& y) { return j_function(g.alg, y); };
    for (const auto& x : chart_pts)
      worst = std::max(worst, std::abs(flat_laplacian(j, x, kStep) / j(x) - g.casimir_trace / 24.0));
    checks.push_back(make_check("flat_laplacian_of_j", "Eq. 3.1", worst, 0.0, 1e-4));
  }
  checks.push_back(make_check("kostant_identity", "Eq. 3.2", std::abs(g.casimir_trace + 24.0 * g.rho_norm2), 0.0,
                              std::max(1e-9 * std::abs(g.casimir_trace), 1e-12)));
  {
    double worst = 0.0;
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(n);
    for (auto kind : {TestField::gaussian, TestField::radial_quadratic, TestField::radial_quartic,
                      TestField::linear_gaussian})
      worst = std::max(worst, std::abs(chart_identity_residual(g.alg, g.roots, test_field<double>(kind), origin, kStep)));
    checks.push_back(make_check("duflo_laplacian_at_identity", "Eq. 3.4", worst, 0.0, 1e-4));
  }
  {
    double worst = 0.0;
    for (const auto& x : chart_pts)
      for (auto kind : {TestField::gaussian, TestField::radial_quadratic, TestField::radial_quartic})
        worst = std::max(worst, std::abs(chart_identity_residual(g.alg, g.roots, test_field<double>(kind), x, kStep)));
    checks.push_back(make_check("chart_conjugation", "Lemma 3.2", worst, 0.0, 1e-4));
  }

  const Eigen::VectorXd h03 = probe_point(g.rank(), 0.3);
  {
    const KernelComparison cmp = kernel_compare(g, h03, 0.05, kTraceEps, g.rho_norm2);
    checks.push_back(make_check("shifted_kernel_ratio", "Lemma 3.3", cmp.rel_diff, 0.0, 1e-6));
  }
  {
    const auto s = scalar_curvature(g.alg);
    checks.push_back(make_check("scalar_curvature", "Lemma 3.4", std::abs(s.from_curvature + 0.25 * g.casimir_trace),
                                0.0, 1e-10));
  }
  {
    const KernelComparison cmp = kernel_compare(g, h03, 0.05, kTraceEps);
    checks.push_back(make_check("kernel_agreement", "Theorem 3.5", cmp.rel_diff, 0.0, 1e-6));
  }
  {
    const double t = 0.1;
    const HeatTraceValue z = heat_trace(g, t, kTraceEps);
    const HeatTraceValue v = vhat(g, t, kTraceEps);
    const double via_kernel = z.value / asymptotic_kernel(g, Eigen::VectorXd::Zero(n), t);
    checks.push_back(make_check("trace_kernel_consistency", "Eq. 2.4", std::abs(via_kernel / v.value - 1.0), 0.0, 1e-12));
  }
  {
    const TraceCurve curve = trace_curve(g, kFlatnessTimes, kTraceEps);
    double worst = 0.0;
    for (double v : curve.vhat) worst = std::max(worst, std::abs(v / curve.vhat.front() - 1.0));
    checks.push_back(make_check("vhat_flatness", "Corollary 3.6", worst, 0.0, 1e-6));
  }
  {
    const HeatEquationResidual r = heat_equation_residual(g, probe_point(g.rank(), 0.4), 0.1, kTraceEps);
    checks.push_back(make_check("heat_equation_residual", "Eq. 2.1", r.relative(), 0.0, 1e-3));
  }

  rep.overall = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  return rep;
}

unsigned thread_limit() {
  unsigned limit = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LIEHEAT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) limit = static_cast<unsigned>(v);
  }
  return limit;
}

namespace {

int cmd_describe(const GroupSpec& spec, std::ostream& out) {
  const GroupModel g = GroupModel::build(spec);
  json roots = json::array(), weights = json::array();
  for (const auto& a : g.roots.roots) roots.push_back(vector_json(a));
  for (const auto& w : g.roots.fundamental_weights) weights.push_back(vector_json(w));
  const double kostant = std::abs(g.casimir_trace + 24.0 * g.rho_norm2);
  const double lemma = std::abs(scalar_curvature(g.alg).from_curvature + 0.25 * g.casimir_trace);
  json doc = {{"group", spec.name()},
              {"dim", g.dim()},
              {"rank", g.rank()},
              {"metric_scale", spec.metric_scale},
              {"casimir_trace", g.casimir_trace},
              {"scalar_curvature", g.scalar_curvature},
              {"rho_norm2", g.rho_norm2},
              {"roots", roots},
              {"fundamental_weights", weights},
              {"identities", {{"kostant_residual", kostant}, {"lemma34_residual", lemma}}}};
  out << doc.dump(2) << '\n';
  const bool ok = kostant <= std::max(1e-9 * std::abs(g.casimir_trace), 1e-12) && lemma <= 1e-10;
  return ok ? kOk : kCheckFailed;
}

int cmd_trace(const GroupSpec& spec, double t_min, double t_max, int steps, double tail_eps, std::ostream& out) {
  if (!(t_min > 0.0) || steps < 1 || !(tail_eps > 0.0) || (steps > 1 && !(t_max > t_min)))
    throw Usage("trace needs 0 < t-min < t-max, steps >= 1 and tail-eps > 0");
  std::vector<double> ts;
  for (int i = 0; i < steps; ++i)
    ts.push_back(steps == 1 ? t_min : t_min + (t_max - t_min) * i / (steps - 1));
  const TraceCurve curve = trace_curve(GroupModel::build(spec), ts, tail_eps);
  out << "t,Z,vhat,tail_bound\n";
  char line[160];
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", curve.t_values[i], curve.z[i], curve.vhat[i],
                  curve.tail_bound[i]);
    out << line;
  }
  return kOk;
}

Eigen::VectorXd parse_point(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Usage("malformed --point coordinate '" + item + "'");
    }
    if (used != item.size()) throw Usage("malformed --point coordinate '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw Usage("--point needs at least one coordinate");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

int cmd_kernel(const GroupSpec& spec, double t, const std::string& point, double tail_eps, std::ostream& out) {
  if (!(t > 0.0) || !(tail_eps > 0.0)) throw Usage("kernel needs t > 0 and tail-eps > 0");
  const GroupModel g = GroupModel::build(spec);
  const Eigen::VectorXd h = parse_point(point);
  if (h.size() != g.rank())
    throw Usage("--point needs " + std::to_string(g.rank()) + " Cartan coordinate(s) for " + spec.name());
  const KernelComparison cmp = kernel_compare(g, h, t, tail_eps);
  json doc = {{"spectral_ratio", cmp.spectral_ratio},
              {"asymptotic_ratio", cmp.asymptotic_ratio},
              {"rel_diff", cmp.rel_diff},
              {"tail_bound", cmp.tail_bound}};
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const std::string& group, double scale, std::uint64_t seed, const std::string& out_path,
               std::ostream& out) {
  std::vector<GroupSpec> specs;
  if (group == "all") {
    for (const char* name : {"torus:1", "su2", "so3", "su3"}) specs.push_back(parse_group_spec(name, scale));
  } else {
    specs.push_back(parse_group_spec(group, scale));
  }

  std::vector<VerificationReport> reports(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        reports[i] = verify_group(specs[i], seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<unsigned>(thread_limit(), static_cast<unsigned>(specs.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  json doc;
  bool overall = true;
  for (const auto& r : reports) overall = overall && r.overall;
  if (group == "all") {
    json groups = json::array();
    for (const auto& r : reports) groups.push_back(to_json(r));
    doc = {{"groups", groups}, {"overall", overall}};
  } else {
    doc = to_json(reports.front());
  }
  const std::string text = doc.dump(2) + "\n";
  out << text;
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open --out file '" + out_path + "'");
    file << text;
  }
  return overall ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat traces, heat-kernel asymptotics and bi-invariant geometry of compact Lie groups", "lieheat"};
  app.require_subcommand(1);

  std::string group;
  double scale = 1.0;

  auto* describe = app.add_subcommand("describe", "Algebra, root data and curvature identities as JSON");
  describe->add_option("--group", group, "torus:<rank>, su2, so3 or su3")->required();
  describe->add_option("--scale", scale, "metric scale s");

  double t_min = 0.05, t_max = 0.2, tail_eps = 1e-12;
  int steps = 16;
  auto* trace = app.add_subcommand("trace", "Heat trace Z(t) and normalized trace as CSV");
  trace->add_option("--group", group)->required();
  trace->add_option("--scale", scale);
  trace->add_option("--t-min", t_min);
  trace->add_option("--t-max", t_max);
  trace->add_option("--steps", steps);
  trace->add_option("--tail-eps", tail_eps);

  double t = 0.05;
  std::string point;
  auto* kernel = app.add_subcommand("kernel", "Spectral vs. small-time kernel ratio at a torus point");
  kernel->add_option("--group", group)->required();
  kernel->add_option("--scale", scale);
  kernel->add_option("--t", t);
  kernel->add_option("--point", point, "comma-separated Cartan coordinates")->required();
  kernel->add_option("--tail-eps", tail_eps);

  std::uint64_t seed = 0;
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "Run every identity check and emit a JSON report");
  verify->add_option("--group", group, "group spec or 'all'")->required();
  verify->add_option("--scale", scale);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out_path);

  std::vector<const char*> argv{"lieheat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(group, scale, seed, out_path, out);
    const GroupSpec spec = parse_group_spec(group, scale);
    if (*describe) return cmd_describe(spec, out);
    if (*trace) return cmd_trace(spec, t_min, t_max, steps, tail_eps, out);
    if (*kernel) return cmd_kernel(spec, t, point, tail_eps, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace lieheat::cli
