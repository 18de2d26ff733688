#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>

#include "gnewton/cli/commands.hpp"

namespace gnewton::cli {

namespace {

struct Suite {
  std::string name;
  double threshold;
  double worst = 0.0;
  int cases = 0;
  void record(double r) {
    worst = std::max(worst, std::isfinite(r) ? r : INFINITY);
    ++cases;
  }
  bool ok() const { return worst <= threshold; }
};

const ChartId kCharts[] = {ChartId::Exp, ChartId::Qr, ChartId::Cayley};

void grassmann_cases(int n, int m, std::uint64_t seed, std::map<std::string, Suite>& s) {
  Rng rng(seed * 1000003u + static_cast<std::uint64_t>(n * 31 + m));
  const RandomProjector rp = random_projector(n, m, seed * 7919u + static_cast<std::uint64_t>(n * 13 + m));
  const Projector& p = rp.projector;
  const OrthoFrame& f = rp.frame;

  const Matrix x = random_symmetric(n, rng), y = random_symmetric(n, rng);
  const Matrix px = tangent_project(p, x), py = tangent_project(p, y);
  const double scale = std::max(1.0, x.norm() * y.norm());
  s["projection"].record((tangent_project(p, px) - px).norm() / std::max(1.0, x.norm()));
  s["projection"].record(std::abs(inner(px, y) - inner(x, py)) / scale);

  const Matrix z1 = gaussian_matrix(m, n - m, rng), z2 = gaussian_matrix(m, n - m, rng);
  const Matrix x1 = f.tangent(z1), x2 = f.tangent(z2);
  const Matrix o1 = commutator(x1, p.matrix()), o2 = commutator(x2, p.matrix());
  s["metric"].record(std::abs(inner(x1, x2) - inner(o1, o2)) / std::max(1.0, x1.norm() * x2.norm()));
  s["metric"].record(std::abs(inner(x1, x2) - 2.0 * inner(z1, z2)) / std::max(1.0, x1.norm() * x2.norm()));
  s["projection"].record(tangent_residual(p, x1) / std::max(1.0, x1.norm()));

  const Matrix zs = 0.5 * z1 / std::max(1e-300, z1.norm());
  const Matrix shared = chart_second_derivative(f, zs);
  for (ChartId id : kCharts) {
    const Matrix c = chart(f, zs, id).matrix();
    s["chart-validity"].record(std::max(idempotence_residual(c), std::abs(c.trace() - m)));
    s["chart-agreement"].record((chart_second_derivative_check(f, zs, id) - shared).norm() / zs.squaredNorm());
  }

  const Projector q = random_projector(n, m, seed * 104729u + static_cast<std::uint64_t>(n * 17 + m + 1)).projector;
  const double d = distance(p, q);
  s["distance"].record(std::abs(d - distance_from_cosines(p, q)));
  s["distance"].record(std::abs(d - distance_from_sines(p, q)));
  s["distance"].record(std::abs(half_squared_distance(p, range_basis(q)) - 0.5 * d * d));
  s["distance"].record(std::abs(distance(p, p)));
}

void lagrange_cases(int n, std::uint64_t seed, std::map<std::string, Suite>& s) {
  Rng rng(seed * 2654435761u + static_cast<std::uint64_t>(n));
  const RandomLagProjector rl = random_lag_projector(n, seed * 40503u + static_cast<std::uint64_t>(n));
  Matrix z = random_symmetric(n, rng);
  z *= 0.5 / std::max(1e-300, z.norm());
  for (ChartId id : kCharts) {
    const SymplecticFrame g = lg_chart_frame(rl.frame, z, id);
    const Matrix c = g.as_ortho().projector_matrix();
    s["lagrangian"].record(std::max({lagrangian_residual(c), idempotence_residual(c),
                                     symplecticity_residual(g.theta())}));
  }
}

}  // namespace

int cmd_check(const CheckOptions& opts, std::ostream& out) {
  std::map<std::string, Suite> suites = {
      {"projection", {"projection", 1e-10}},
      {"metric", {"metric", 1e-10}},
      {"chart-validity", {"chart-validity", 1e-10}},
      {"chart-agreement", {"chart-agreement", 1e-4}},
      {"distance", {"distance", 1e-9}},
      {"lagrangian", {"lagrangian", 1e-10}},
  };
  for (int n : opts.sizes) {
    if (n < 2 || n > 12) {
      out << "size " << n << " outside [2, 12]\n";
      return 1;
    }
  }
  for (int seed = 0; seed < opts.seeds; ++seed) {
    for (int n : opts.sizes) {
      for (int m = 1; m < n; ++m) grassmann_cases(n, m, static_cast<std::uint64_t>(seed), suites);
      if (n % 2 == 0) lagrange_cases(n / 2, static_cast<std::uint64_t>(seed), suites);
    }
  }
  if (opts.inject_fault) suites["projection"].record(1.0);

  bool all = true;
  out << std::left << std::setw(18) << "suite" << std::setw(8) << "cases" << std::setw(14) << "max_residual"
      << std::setw(12) << "threshold" << "result\n";
  for (const auto& [name, s] : suites) {
    all = all && s.ok();
    out << std::left << std::setw(18) << name << std::setw(8) << s.cases << std::setw(14) << std::setprecision(3)
        << std::scientific << s.worst << std::setw(12) << s.threshold << (s.ok() ? "PASS" : "FAIL") << "\n";
    out << std::defaultfloat;
  }
  return all ? 0 : 1;
}

}  // namespace gnewton::cli
