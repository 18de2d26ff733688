// One line per acceptance criterion; exit status is the number of failures.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gnewton/cli/matrix_io.hpp"
#include "gnewton/cli/report.hpp"
#include "gnewton/errors.hpp"
#include "gnewton/solvers.hpp"
#include "test_support.hpp"

using namespace gnewton;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

const ChartId kCharts[] = {ChartId::Exp, ChartId::Qr, ChartId::Cayley};

Eigen::VectorXd uniform(int n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

Matrix random_orthogonal(int n, Rng& rng) { return gaussian_matrix(n, n, rng).householderQr().householderQ(); }

// ---- 1 ----------------------------------------------------------------

Verdict geometry() {
  double proj = 0, adj = 0, metric = 0, ode = 0;
  for (int seed = 0; seed < 20; ++seed) {
    for (int n = 3; n <= 10; ++n) {
      for (int m = 1; m < n; ++m) {
        Rng rng(static_cast<std::uint64_t>(seed * 1000 + n * 10 + m));
        RandomProjector rp = random_projector(n, m, static_cast<std::uint64_t>(seed * 7777 + n * 100 + m));
        const Projector& p = rp.projector;
        const Matrix pm = p.matrix();
        Matrix x = random_symmetric(n, rng), y = random_symmetric(n, rng);
        Matrix px = tangent_project(p, x), py = tangent_project(p, y);
        proj = std::max(proj, (tangent_project(p, px) - px).norm() / x.norm());
        adj = std::max(adj, std::abs(inner(px, y) - inner(x, py)) / (x.norm() * y.norm()));

        // tangent vectors through the commutator, compared with Omega = [xi, P]
        Matrix o1 = (px * pm - pm * px), o2 = (py * pm - pm * py);
        metric = std::max(metric, std::abs((px.transpose() * py).trace() - (o1.transpose() * o2).trace()) /
                                      std::max(1.0, px.norm() * py.norm()));

        // geodesic: the tangential part of the acceleration vanishes
        Matrix xi = px / px.norm();
        const double h = 1e-3;
        for (double t : {0.3, 0.8}) {
          auto at = [&](double s) { return geodesic(p, xi, s).matrix(); };
          Matrix acc = (at(t + h) - 2.0 * at(t) + at(t - h)) / (h * h);
          Matrix pt = at(t);
          Matrix c = acc * pt - pt * acc;
          Matrix tangential = c * pt - pt * c;
          ode = std::max(ode, tangential.norm());
        }
      }
    }
  }
  Verdict v;
  v.pass = proj <= 1e-10 && adj <= 1e-10 && metric <= 1e-10 && ode <= 1e-6;
  v.detail = "idempotence " + sci(proj) + ", self-adjointness " + sci(adj) + ", metric " + sci(metric) +
             ", geodesic ODE " + sci(ode);
  return v;
}

// ---- 2 ----------------------------------------------------------------

double pair_slope(const std::function<Matrix(double)>& diff) {
  std::vector<double> eps = {1e-1, 1e-2, 1e-3}, d;
  for (double e : eps) d.push_back(diff(e).norm());
  return oracle::loglog_slope(eps, d);
}

Verdict charts() {
  double validity = 0, deriv = 0, min_slope = INFINITY;
  const double h = 1e-5;
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(static_cast<std::uint64_t>(500 + seed));
    for (auto [n, m] : {std::pair{4, 2}, std::pair{6, 1}, std::pair{7, 3}, std::pair{9, 5}}) {
      RandomProjector rp = random_projector(n, m, static_cast<std::uint64_t>(seed * 31 + n));
      const OrthoFrame& f = rp.frame;
      Matrix z = gaussian_matrix(m, n - m, rng);
      z /= z.norm();
      for (ChartId id : kCharts) {
        Matrix c = chart(f, z, id).matrix();
        Matrix c2 = c * c;
        validity = std::max({validity, (c2 - c).norm(), (c - c.transpose()).norm(), std::abs(c.trace() - m)});
        Matrix fd = (chart(f, h * z, id).matrix() - chart(f, -h * z, id).matrix()) / (2 * h);
        deriv = std::max(deriv, (fd - f.tangent(z)).norm());
      }
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          min_slope = std::min(min_slope, pair_slope([&](double e) {
                                 return Matrix(chart(f, e * z, kCharts[a]).matrix() -
                                               chart(f, e * z, kCharts[b]).matrix());
                               }));
    }
    for (int n : {2, 3, 4}) {
      RandomLagProjector rl = random_lag_projector(n, static_cast<std::uint64_t>(seed * 17 + n));
      const SymplecticFrame& f = rl.frame;
      Matrix z = random_symmetric(n, rng);
      z /= z.norm();
      const Matrix j = symplectic_j(n);
      for (ChartId id : kCharts) {
        Matrix c = lg_chart(f, z, id).matrix();
        validity = std::max({validity, (c * c - c).norm(), (c - c.transpose()).norm(),
                             std::abs(c.trace() - n), (c * j * c).norm()});
        Matrix fd = (lg_chart(f, h * z, id).matrix() - lg_chart(f, -h * z, id).matrix()) / (2 * h);
        deriv = std::max(deriv, (fd - f.tangent(z)).norm());
      }
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          min_slope = std::min(min_slope, pair_slope([&](double e) {
                                 return Matrix(lg_chart(f, e * z, kCharts[a]).matrix() -
                                               lg_chart(f, e * z, kCharts[b]).matrix());
                               }));
    }
  }
  Verdict v;
  v.pass = validity <= 1e-10 && deriv <= 1e-6 && min_slope >= 2.9;
  v.detail = "projector residual " + sci(validity) + ", derivative at 0 " + sci(deriv) +
             ", min pairwise slope " + std::to_string(min_slope);
  return v;
}

// ---- 3 ----------------------------------------------------------------

double oracle_distance(const Matrix& p, const Matrix& q, int m) {
  Eigen::SelfAdjointEigenSolver<Matrix> ep(p), eq(q);
  Matrix y1 = ep.eigenvectors().rightCols(m), y2 = eq.eigenvectors().rightCols(m);
  Eigen::JacobiSVD<Matrix> svd(y1.transpose() * y2);
  double s = 0;
  for (int i = 0; i < m; ++i) {
    double th = std::acos(std::clamp(svd.singularValues()(i), -1.0, 1.0));
    s += th * th;
  }
  return std::sqrt(2.0 * s);
}

Verdict distances() {
  double cs = 0, half = 0, orc = 0;
  for (auto [n, m] : {std::pair{5, 2}, std::pair{4, 3}}) {
    for (int k = 0; k < 50; ++k) {
      Projector p = random_projector(n, m, static_cast<std::uint64_t>(2 * k + 1000 * n)).projector;
      Projector q = random_projector(n, m, static_cast<std::uint64_t>(2 * k + 1 + 1000 * n)).projector;
      const double d = distance(p, q);
      cs = std::max(cs, std::abs(distance_from_cosines(p, q) - distance_from_sines(p, q)));
      half = std::max(half, std::abs(half_squared_distance(p, range_basis(q)) - 0.5 * d * d));
      orc = std::max(orc, std::abs(d - oracle_distance(p.matrix(), q.matrix(), m)));
    }
  }
  Matrix e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  const double antipodal = std::abs(distance(Projector(e1, 1), Projector(e2, 1)) - std::sqrt(2.0) * M_PI / 2);
  Verdict v;
  v.pass = cs <= 1e-9 && half <= 1e-8 && antipodal <= 1e-12 && orc <= 1e-9;
  v.detail = "cosine vs sine " + sci(cs) + ", half squared " + sci(half) + ", Gr(1,2) antipodal " +
             sci(antipodal) + ", SVD oracle " + sci(orc);
  return v;
}

// ---- 4 ----------------------------------------------------------------

struct DerivErr {
  double grad = 0, hess = 0;
};

void compare(double analytic, double fd, double& worst) {
  worst = std::max(worst, std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-12));
}

void gr_derivatives(const CostFunction& cost, const OrthoFrame& f, Rng& rng, DerivErr& e) {
  const Projector p = f.projector();
  const Matrix g = riemannian_gradient_gr(cost, p);
  for (int dir = 0; dir < 3; ++dir) {
    Matrix z = gaussian_matrix(f.rank(), f.dim() - f.rank(), rng);
    z /= z.norm();
    const Matrix xi = f.tangent(z);
    const double grad = inner(g, xi), quad = inner(xi, riemannian_hessian_apply_gr(cost, p, xi));
    for (ChartId id : kCharts) {
      auto phi = [&](double t) { return cost.eval(chart(f, t * z, id).matrix()); };
      compare(grad, oracle::fd_first_scalar(phi, 1e-4), e.grad);
      compare(quad, oracle::fd_second_scalar(phi, 1e-3), e.hess);
    }
  }
}

void lg_derivatives(const CostFunction& cost, const SymplecticFrame& f, Rng& rng, DerivErr& e) {
  const LagProjector p = f.projector();
  const Matrix g = riemannian_gradient_lg(cost, p);
  for (int dir = 0; dir < 3; ++dir) {
    Matrix z = random_symmetric(f.half_dim(), rng);
    z /= z.norm();
    const Matrix xi = f.tangent(z);
    const double grad = inner(g, xi), quad = inner(xi, riemannian_hessian_apply_lg(cost, p, xi));
    for (ChartId id : kCharts) {
      auto phi = [&](double t) { return cost.eval(lg_chart(f, t * z, id).matrix()); };
      compare(grad, oracle::fd_first_scalar(phi, 1e-4), e.grad);
      compare(quad, oracle::fd_second_scalar(phi, 1e-3), e.hess);
    }
  }
}

Verdict derivatives() {
  DerivErr ray, inv, ham;
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(static_cast<std::uint64_t>(900 + seed));
    RayleighCost rc(random_symmetric(7, rng));
    gr_derivatives(rc, random_projector(7, 3, static_cast<std::uint64_t>(seed)).frame, rng, ray);
    InvariantSubspaceCost ic(gaussian_matrix(6, 6, rng));
    gr_derivatives(ic, random_projector(6, 2, static_cast<std::uint64_t>(seed + 50)).frame, rng, inv);
    Matrix s = random_symmetric(3, rng), t = random_symmetric(3, rng), h(6, 6);
    h << s, t, t, -s;
    HamiltonianRayleighCost hc(h);
    lg_derivatives(hc, random_lag_projector(3, static_cast<std::uint64_t>(seed + 90)).frame, rng, ham);
  }
  const double worst = std::max({ray.grad, ray.hess, inv.grad, inv.hess, ham.grad, ham.hess});
  Verdict v;
  v.pass = worst <= 1e-4;
  v.detail = "relative errors: rayleigh " + sci(ray.grad) + "/" + sci(ray.hess) + ", invariant " + sci(inv.grad) +
             "/" + sci(inv.hess) + ", hamiltonian " + sci(ham.grad) + "/" + sci(ham.hess) + " (gradient/hessian)";
  return v;
}

// ---- 5 ----------------------------------------------------------------

double rel(const Matrix& x, const Matrix& ref) { return (x - ref).norm() / std::max(1.0, ref.norm()); }

Verdict solvers() {
  double syl = 0, lyap = 0, dense = 0, direct = 0, recursive = 0;
  int overlaps = 0, overlap_cases = 0;
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(static_cast<std::uint64_t>(1300 + seed));
    for (auto [m, k] : {std::pair{2, 3}, std::pair{4, 8}, std::pair{8, 8}}) {
      Matrix a11 = random_symmetric(m, rng) + 4.0 * Matrix::Identity(m, m);
      Matrix a22 = random_symmetric(k, rng) - 4.0 * Matrix::Identity(k, k);
      Matrix c = gaussian_matrix(m, k, rng);
      syl = std::max(syl, rel(solve_sylvester(a11, a22, c), oracle::sylvester(a11, a22, c)));

      Matrix g1 = gaussian_matrix(m, m, rng) + 3.0 * Matrix::Identity(m, m);
      Matrix g2 = gaussian_matrix(k, k, rng) - 3.0 * Matrix::Identity(k, k);
      dense = std::max(dense, rel(solve_sylvester_dense(g1, g2, c), oracle::sylvester(g1, g2, c)));

      const int n = m + k;
      Matrix a = gaussian_matrix(n, n, rng);
      InvariantBlocks b = InvariantBlocks::from(a, m);
      Matrix op = oracle::invariant_operator(b.a11, b.a12, b.a21, b.a22);
      Matrix want = oracle::unvec(op.fullPivLu().solve(oracle::vec(invariant_newton_rhs(b))), m, k);
      direct = std::max(direct, rel(solve_invariant_newton_direct(b), want));

      // near an invariant subspace with separated spectra the recursion contracts
      Matrix w = Matrix::Zero(n, n);
      w.topLeftCorner(m, m) = 0.3 * gaussian_matrix(m, m, rng) + 5.0 * Matrix::Identity(m, m);
      w.bottomRightCorner(k, k) = 0.3 * gaussian_matrix(k, k, rng);
      w.topRightCorner(m, k) = gaussian_matrix(m, k, rng);
      w.bottomLeftCorner(k, m) = 0.02 * gaussian_matrix(k, m, rng);
      InvariantBlocks wb = InvariantBlocks::from(w, m);
      recursive = std::max(recursive, rel(solve_invariant_newton_recursive(wb).z, solve_invariant_newton_direct(wb)));

      for (const Matrix& s : {a11, Matrix(random_symmetric(m, rng))}) {
        ++overlap_cases;
        try {
          solve_sylvester(s, s, Matrix::Ones(m, m));
        } catch (const SpectralOverlapError&) {
          ++overlaps;
        }
      }
    }
    for (int n : {3, 8}) {
      Matrix s = random_symmetric(n, rng) + 5.0 * Matrix::Identity(n, n);
      Matrix c = random_symmetric(n, rng);
      lyap = std::max(lyap, rel(solve_lyapunov(s, c), oracle::sylvester(s, -s, c)));
      ++overlap_cases;
      try {
        Matrix x = random_symmetric(n, rng);
        solve_sylvester_dense(x, x, c);
      } catch (const SpectralOverlapError&) {
        ++overlaps;
      }
    }
  }
  Verdict v;
  v.pass = std::max({syl, lyap, dense, direct}) <= 1e-9 && recursive <= 1e-6 && overlaps == overlap_cases;
  v.detail = "sylvester " + sci(syl) + ", nonsymmetric sylvester " + sci(dense) + ", lyapunov " + sci(lyap) +
             ", direct " + sci(direct) + ", recursive vs direct " + sci(recursive) + ", overlap raised " +
             std::to_string(overlaps) + "/" + std::to_string(overlap_cases);
  return v;
}

// ---- 6, 7, 8 ----------------------------------------------------------

bool quadratic(const NewtonTrace& tr) {
  try {
    return estimate_quadratic_rate(error_sequence(tr)).quadratic;
  } catch (const Error&) {
    return false;
  }
}

int last_iter(const NewtonTrace& tr) { return tr.records.empty() ? -1 : tr.records.back().iter; }

Verdict algorithm1() {
  int good = 0;
  double worst_dist = 0;
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(static_cast<std::uint64_t>(2000 + seed));
    Eigen::VectorXd lam = uniform(8, -3.0, 3.0, rng);
    std::sort(lam.data(), lam.data() + 8, std::greater<>());
    const double lift = std::max(0.0, 1.0 - (lam(1) - lam(2)));
    lam.head(2).array() += lift;
    Matrix q = random_orthogonal(8, rng);
    Matrix a = q * lam.asDiagonal() * q.transpose();
    a = 0.5 * (a + a.transpose()).eval();
    Projector ref(oracle::dominant_projector(a, 2), 2);
    OrthoFrame start = perturbed_frame(frame_from_projector(ref), 0.05, static_cast<std::uint64_t>(seed));
    NewtonConfig cfg;
    NewtonTrace tr = run_algorithm1(a, start, cfg, ref);
    const double d = distance(Projector(tr.final_projector, 2), ref);
    worst_dist = std::max(worst_dist, d);
    const bool ok = tr.status == RunStatus::Converged && tr.records.back().grad_norm <= 1e-12 &&
                    last_iter(tr) <= 8 && quadratic(tr) && d <= 1e-8;
    good += ok;
  }
  Verdict v;
  v.pass = good >= 18;
  v.detail = std::to_string(good) + "/20 seeds converged quadratically within 8 iterations, max distance " +
             sci(worst_dist);
  return v;
}

Verdict algorithm2() {
  int good[2] = {0, 0};
  double worst_symp = 0;
  int idx = 0;
  for (int n : {2, 3}) {
    for (int seed = 0; seed < 20; ++seed) {
      Rng rng(static_cast<std::uint64_t>(3000 + 100 * n + seed));
      Matrix s = random_symmetric(n, rng), t = random_symmetric(n, rng), h(2 * n, 2 * n);
      h << s, t, t, -s;
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      Matrix vplus = es.eigenvectors().rightCols(n);  // positive eigenvalues, a Lagrangian subspace
      Projector ref(vplus * vplus.transpose(), n);
      HamiltonianRayleighCost cost(h);
      SymplecticFrame start =
          perturbed_frame(lag_frame_from_projector(LagProjector(ref)), 0.05, static_cast<std::uint64_t>(seed));
      NewtonConfig cfg;
      NewtonTrace tr = run_algorithm2(cost, start, cfg, ref);

      // replay the frames to check each one
      double symp = symplecticity_residual(start.theta());
      SymplecticFrame f = start;
      for (size_t k = 0; k + 1 < tr.records.size(); ++k) {
        f = algorithm2_step(cost, f).frame;
        symp = std::max(symp, symplecticity_residual(f.theta()));
      }
      for (const Matrix& p : tr.iterates) symp = std::max(symp, lagrangian_residual(p));
      worst_symp = std::max(worst_symp, symp);

      const bool ok = tr.status == RunStatus::Converged && tr.records.back().grad_norm <= 1e-12 &&
                      last_iter(tr) <= 8 && quadratic(tr) && symp <= 1e-9;
      good[idx] += ok;
    }
    ++idx;
  }
  Verdict v;
  v.pass = good[0] >= 18 && good[1] >= 18 && worst_symp <= 1e-9;
  v.detail = "4x4 " + std::to_string(good[0]) + "/20, 6x6 " + std::to_string(good[1]) +
             "/20 converged quadratically within 8 iterations, max symplecticity residual " + sci(worst_symp);
  return v;
}

Matrix block_with_spectrum(const Eigen::VectorXd& eig, Rng& rng) {
  const int n = static_cast<int>(eig.size());
  Matrix u = Matrix::Zero(n, n);
  u.diagonal() = eig;
  u.triangularView<Eigen::StrictlyUpper>() = 0.5 * gaussian_matrix(n, n, rng);
  Matrix q = random_orthogonal(n, rng);
  return q * u * q.transpose();
}

Verdict algorithm3() {
  int good = 0, quad = 0;
  double worst_res = 0, worst_dist = 0;
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(static_cast<std::uint64_t>(4000 + seed));
    Eigen::VectorXd top = uniform(2, 3.0, 4.0, rng);
    Eigen::VectorXd rest = uniform(4, -1.0, 1.0, rng);
    Matrix b = Matrix::Zero(6, 6);
    b.topLeftCorner(2, 2) = block_with_spectrum(top, rng);
    b.bottomRightCorner(4, 4) = block_with_spectrum(rest, rng);
    b.topRightCorner(2, 4) = gaussian_matrix(2, 4, rng);
    // similarity with singular values in [1, 2]
    Eigen::VectorXd sv = uniform(6, 1.0, 2.0, rng);
    Matrix t = random_orthogonal(6, rng) * sv.asDiagonal() * random_orthogonal(6, rng);
    Matrix a = t * b * t.inverse();
    Projector ref(oracle::projector_onto(t.leftCols(2)), 2);
    OrthoFrame start = perturbed_frame(frame_from_projector(ref), 0.05, static_cast<std::uint64_t>(seed));
    NewtonConfig cfg;
    NewtonTrace tr = run_algorithm3(a, start, cfg, InvariantSolver::Direct, ref);
    const Matrix& p = tr.final_projector;
    const double res = ((Matrix::Identity(6, 6) - p) * a * p).norm();
    const double d = distance(Projector(p, 2), ref);
    worst_res = std::max(worst_res, res);
    worst_dist = std::max(worst_dist, d);
    good += res <= 1e-10 && d <= 1e-8;
    quad += quadratic(tr);
  }
  Verdict v;
  v.pass = good >= 18 && quad >= 18;
  v.detail = std::to_string(good) + "/20 reached the constructed subspace, " + std::to_string(quad) +
             "/20 quadratic, max invariance residual " + sci(worst_res) + ", max distance " + sci(worst_dist);
  return v;
}

// ---- 9 ----------------------------------------------------------------

Verdict specialization() {
  double worst = 0;
  NewtonConfig cfg;
  cfg.mu = ChartId::Exp;
  cfg.nu = ChartId::Qr;
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(static_cast<std::uint64_t>(5000 + seed));
    Matrix a = random_symmetric(5, rng);
    OrthoFrame f = random_projector(5, 2, static_cast<std::uint64_t>(seed + 300)).frame;
    StepResult g = newton_step_generic(RayleighCost(a), f, cfg);
    StepResult s = algorithm1_step(a, f);
    const double scale = std::max(1.0, s.z.norm());
    worst = std::max({worst, (g.z - s.z).norm() / scale,
                      (g.frame.projector_matrix() - s.frame.projector_matrix()).norm()});
  }
  Verdict v;
  v.pass = worst <= 1e-9;
  v.detail = "max difference " + sci(worst);
  return v;
}

// ---- 10 ---------------------------------------------------------------

int run_cli(const std::string& args) {
  int status = std::system((std::string(GNEWTON_CLI_PATH) + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines_without_timing(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (line.find("\"elapsed\"") == std::string::npos) out.push_back(line);
  return out;
}

Verdict cli_end_to_end() {
  fs::path dir = fs::temp_directory_path() / ("gnewton_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string mat = (dir / "diag.txt").string();
  std::ofstream(mat) << "4 0 0 0\n0 3 0 0\n0 0 2 0\n0 0 0 1\n";
  const std::string r1 = (dir / "r1.json").string(), r2 = (dir / "r2.json").string();
  const std::string base = "rayleigh-gr " + mat + " --m 2 --seed 0 2>/dev/null --out ";
  const int c1 = run_cli(base + r1), c2 = run_cli(base + r2);

  Verdict v;
  double err = INFINITY;
  std::vector<std::string> problems;
  try {
    std::ifstream f(r1);
    cli::json doc = cli::json::parse(f);
    problems = cli::validate_report(doc);
    const auto& rows = doc["final"]["projector"];
    Matrix p(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)].get<double>();
    Matrix want = Eigen::Vector4d(1, 1, 0, 0).asDiagonal();
    err = (p - want).norm();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  const bool same = lines_without_timing(r1) == lines_without_timing(r2);
  fs::remove_all(dir);
  v.pass = c1 == 0 && c2 == 0 && err <= 1e-8 && problems.empty() && same;
  v.detail = "exit codes " + std::to_string(c1) + "/" + std::to_string(c2) + ", projector error " + sci(err) +
             ", schema " + (problems.empty() ? "valid" : problems.front()) + ", repeat " +
             (same ? "identical" : "differs");
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double seconds;  // runtime limit, 0 for none
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "geometry suite", 10, geometry},
      {2, "chart suite", 10, charts},
      {3, "distance suite", 0, distances},
      {4, "derivative oracles", 30, derivatives},
      {5, "linear solvers", 0, solvers},
      {6, "Rayleigh on Gr(2,8)", 5, algorithm1},
      {7, "Rayleigh on LG(n)", 0, algorithm2},
      {8, "invariant subspace", 0, algorithm3},
      {9, "generic vs specialized step", 0, specialization},
      {10, "CLI end to end", 0, cli_end_to_end},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.seconds == 0 || secs < c.seconds;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::printf("criterion %2d %s  %s: %s (%.2f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs,
                in_time ? "" : ", over the time limit");
    std::fflush(stdout);
  }
  return failures;
}
