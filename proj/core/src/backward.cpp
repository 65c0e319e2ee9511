#include "gnplate/backward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "gnplate/csv.hpp"
#include "gnplate/errors.hpp"

namespace gnplate {

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix diagonal_matrix(const Eigen::VectorXd& d) {
  SparseMatrix S(d.size(), d.size());
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) t.emplace_back(k, k, d[k]);
  S.setFromTriplets(t.begin(), t.end());
  return S;
}

// Copy of `M` restricted to rows and columns in the given component blocks.
SparseMatrix restrict_blocks(const SparseMatrix& M, const Grid& g, std::initializer_list<Component> rows,
                             std::initializer_list<Component> cols) {
  const int n = g.size();
  auto in = [n](int idx, std::initializer_list<Component> set) {
    const int block = idx / n;
    return std::any_of(set.begin(), set.end(), [&](Component c) { return static_cast<int>(c) == block; });
  };
  std::vector<Triplet> t;
  for (int k = 0; k < M.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(M, k); it; ++it) {
      if (in(static_cast<int>(it.row()), rows) && in(static_cast<int>(it.col()), cols)) {
        t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      }
    }
  }
  SparseMatrix out(M.rows(), M.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix assemble_mixed_form(const MaterialParams& p, const Grid& grid, const GridOperators& ops) {
  const double I = p.I();
  const double h = p.half_thickness;
  const double a = grid.cell_area();
  const int n = grid.size();
  std::vector<Triplet> t;
  auto sym_diag = [&](Component r, Component c, double v) {
    for (int i = 0; i < n; ++i) {
      t.emplace_back(static_cast<int>(r) * n + i, static_cast<int>(c) * n + i, v);
      t.emplace_back(static_cast<int>(c) * n + i, static_cast<int>(r) * n + i, v);
    }
  };
  auto block = [&](Component r, Component c, const SparseMatrix& M, double s) {
    for (int k = 0; k < M.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(M, k); it; ++it) {
        t.emplace_back(static_cast<int>(r) * n + static_cast<int>(it.row()),
                       static_cast<int>(c) * n + static_cast<int>(it.col()), s * it.value());
      }
    }
  };
  // 0.5 U' M U reproduces the mixed functional: off-diagonal pairs carry the
  // full product coefficient on each side.
  sym_diag(Component::v1, Component::z1, a * p.rho * I);
  sym_diag(Component::v2, Component::z2, a * p.rho * I);
  sym_diag(Component::w, Component::y, a * 2.0 * h * p.rho);
  sym_diag(Component::tau, Component::theta, -a * I * p.c);
  sym_diag(Component::wp, Component::P, -a * I * p.r);
  sym_diag(Component::tau, Component::P, -a * I * p.kappa);
  sym_diag(Component::wp, Component::theta, -a * I * p.kappa);
  SparseMatrix negS = -(I * ops.Lap - 2.0 * h * ops.Id);
  block(Component::tau, Component::tau, negS, a * p.k2);
  block(Component::tau, Component::wp, negS, a * p.hbar2);
  block(Component::wp, Component::tau, negS, a * p.hbar2);
  block(Component::wp, Component::wp, negS, a * p.h2);
  SparseMatrix out(kNumComponents * n, kNumComponents * n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace

BackwardMatrices assemble_backward(const MaterialParams& params, const Grid& grid) {
  OperatorMatrices fwd = assemble(params, grid);
  const GridOperators ops = GridOperators::build(grid);

  MaterialParams flipped = params;
  flipped.d1 = -params.d1;
  flipped.d2 = -params.d2;
  flipped.k2 = -params.k2;
  flipped.h2 = -params.h2;
  flipped.hbar2 = -params.hbar2;
  SparseMatrix A_back = assemble_generator(flipped, grid, ops);

  // Time reversal t -> -t with the rates negated.
  const SparseMatrix S = diagonal_matrix(rate_sign_vector(grid));
  const SparseMatrix reversed = -(S * fwd.A_op * S);
  const double mismatch = (A_back - reversed).norm();
  if (mismatch != 0.0) {
    fail(ErrorCode::AssemblyInconsistent,
         "backward generator differs from the time-reversed forward one by " + format_double(mismatch));
  }

  using C = Component;
  const SparseMatrix& E = fwd.E_form;
  const SparseMatrix capacity = restrict_blocks(E, grid, {C::theta, C::P}, {C::theta, C::P});
  const SparseMatrix conduction = restrict_blocks(E, grid, {C::tau, C::wp}, {C::tau, C::wp});
  SparseMatrix E2 = E - 2.0 * capacity - 2.0 * conduction;
  SparseMatrix E3 = assemble_mixed_form(params, grid, ops);
  SparseMatrix E1 = E;
  return {std::move(fwd), std::move(A_back), std::move(E1), std::move(E2), std::move(E3)};
}

Functionals functionals(const State& U, const BackwardMatrices& m) {
  const Eigen::VectorXd& x = U.vector();
  return {0.5 * x.dot(m.E1_form * x), 0.5 * x.dot(m.E2_form * x), 0.5 * x.dot(m.E3_form * x)};
}

void write_backward_csv(const std::string& path, const BackwardReport& r) {
  CsvWriter csv(path, {"t", "E1", "E2", "E3", "energy_norm"});
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    csv.cell(r.times[k]).cell(r.E1[k]).cell(r.E2[k]).cell(r.E3[k]).cell(r.energy_norm[k]);
    csv.end_row();
  }
}

namespace {

long step_count(double dt, double t_end) {
  const double ratio = t_end / dt;
  const long n = std::lround(ratio);
  if (n < 0 || std::abs(ratio - static_cast<double>(n)) > 1e-8 * std::max(1.0, ratio)) {
    fail(ErrorCode::InvalidArgument, "dt must divide t_end");
  }
  return n;
}

void push(BackwardReport& r, const State& U, const BackwardMatrices& m) {
  const Functionals f = functionals(U, m);
  r.times.push_back(U.time());
  r.E1.push_back(f.E1);
  r.E2.push_back(f.E2);
  r.E3.push_back(f.E3);
  r.energy_norm.push_back(energy_norm(U.vector(), m.forward));
}

}  // namespace

BackwardRun run_backward(const State& U0, const BackwardMatrices& m, double dt, double t_end) {
  BackwardRun out{U0, {}};
  push(out.report, U0, m);
  if (!(dt > 0.0) || t_end == 0.0) return out;
  const long n = step_count(dt, t_end);
  const MidpointStepper stepper(m.forward, m.A_back, dt);
  State U = U0;
  const double t0 = U0.time();
  for (long k = 0; k < n; ++k) {
    U = stepper.step(U, Eigen::VectorXd());
    U.set_time(t0 + static_cast<double>(k + 1) * dt);
    push(out.report, U, m);
  }
  out.final_state = std::move(U);
  return out;
}

namespace {

// Largest lambda with U' D U <= lambda U' E U. D lives on (theta, P) only and
// E restricted there is I [[c, kappa], [kappa, r]] (x) Id, so the bound is the
// 2x2 pencil eigenvalue times the top eigenvalue of 2h - I Lap.
double dissipation_rate_bound(const MaterialParams& p, const Grid& g) {
  Eigen::Matrix2d K2;
  K2 << p.k2, p.hbar2, p.hbar2, p.h2;
  Eigen::Matrix2d Cap;
  Cap << p.c, p.kappa, p.kappa, p.r;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(K2, Cap, Eigen::EigenvaluesOnly);
  const double pencil = es.eigenvalues().maxCoeff();
  auto top = [](double hstep, int count) {
    const double s = std::sin(count * std::numbers::pi / (2.0 * (count + 1)));
    return 4.0 / (hstep * hstep) * s * s;
  };
  const double lap_max = top(g.hx(), g.nx()) + top(g.hy(), g.ny());
  return std::max(0.0, pencil) * (p.I() * lap_max + 2.0 * p.half_thickness) / p.I();
}

}  // namespace

UniquenessReport backward_uniqueness_check(const MaterialParams& params, const Grid& grid, double dt,
                                           double t_end, double epsilon, unsigned seed) {
  const BackwardMatrices m = assemble_backward(params, grid);
  UniquenessReport rep;
  rep.epsilon = epsilon;

  const BackwardRun zero = run_backward(State(grid), m, dt, t_end);
  rep.zero_data_max_norm = *std::max_element(zero.report.energy_norm.begin(), zero.report.energy_norm.end());
  rep.zero_stays_zero = rep.zero_data_max_norm <= 1e-12;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  State U0(grid);
  for (Eigen::Index k = 0; k < U0.vector().size(); ++k) U0.vector()[k] = normal(rng);
  U0.vector() *= epsilon / energy_norm(U0.vector(), m.forward);
  const BackwardRun pert = run_backward(U0, m, dt, t_end);
  const auto& norms = pert.report.energy_norm;
  rep.initial_norm = norms.front();
  rep.final_norm = norms.back();

  // Least-squares slope of log(norm).
  const auto& ts = pert.report.times;
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double cnt = static_cast<double>(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double y = std::log(norms[k]);
    st += ts[k];
    sy += y;
    stt += ts[k] * ts[k];
    sty += ts[k] * y;
  }
  const double den = cnt * stt - st * st;
  rep.fitted_rate = den > 0.0 ? (cnt * sty - st * sy) / den : 0.0;

  const double mu = dissipation_rate_bound(params, grid);
  if (mu * dt < 1.0) {
    rep.rate_bound = std::log((1.0 + mu * dt) / (1.0 - mu * dt)) / (2.0 * dt);
  } else {
    rep.rate_bound = std::numeric_limits<double>::infinity();
  }
  bool finite = true;
  for (double v : norms) finite = finite && std::isfinite(v);
  const double allowed = rep.initial_norm * std::exp(rep.rate_bound * t_end) * (1.0 + 1e-9);
  rep.growth_bounded = finite && rep.final_norm <= allowed;
  return rep;
}

RoundTripReport forward_backward_roundtrip(const State& U0, const BackwardMatrices& m, double dt,
                                           double t_end) {
  const RunResult fwd = run(U0, m.forward, Sources{}, dt, t_end);
  const Eigen::VectorXd S = rate_sign_vector(U0.grid());
  State reversed(U0.grid(), S.cwiseProduct(fwd.final_state.vector()), 0.0);
  const BackwardRun back = run_backward(reversed, m, dt, t_end);
  const Eigen::VectorXd recovered = S.cwiseProduct(back.final_state.vector());
  const double ref = energy_norm(U0.vector(), m.forward);
  const double err = energy_norm(recovered - U0.vector(), m.forward);
  return {ref > 0.0 ? err / ref : err, fwd.report, back.report};
}

LocalizationReport localization_impossibility_check(const EnergyReport& report, double threshold) {
  LocalizationReport rep;
  rep.threshold = threshold;
  if (report.size() < 5 || !(report.E0.front() > 0.0)) return rep;
  rep.applicable = true;
  rep.min_E0 = *std::min_element(report.E0.begin(), report.E0.end());
  rep.all_positive = std::all_of(report.E0.begin(), report.E0.end(),
                                 [](double e) { return e > 0.0 && std::isfinite(e); });
  if (!rep.all_positive) {
    rep.relative_curvature = std::numeric_limits<double>::infinity();
    return rep;
  }
  const double t_half = 0.5 * (report.times.front() + report.times.back());
  std::vector<double> ts, ys;
  for (std::size_t k = 0; k < report.size(); ++k) {
    if (report.times[k] >= t_half) {
      ts.push_back(report.times[k]);
      ys.push_back(std::log(report.E0[k]));
    }
  }
  // Quadratic fit in a centred, scaled time variable for conditioning.
  const double tc = 0.5 * (ts.front() + ts.back());
  const double L = std::max(0.5 * (ts.back() - ts.front()), std::numeric_limits<double>::min());
  Eigen::MatrixXd V(ts.size(), 3);
  Eigen::VectorXd y(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double s = (ts[k] - tc) / L;
    V(k, 0) = 1.0;
    V(k, 1) = s;
    V(k, 2) = s * s;
    y[k] = ys[k];
  }
  const Eigen::Vector3d c = V.colPivHouseholderQr().solve(y);
  rep.slope = c[1] / L;
  rep.curvature = 2.0 * c[2] / (L * L);
  rep.relative_curvature =
      rep.slope != 0.0 ? std::abs(rep.curvature) / std::abs(rep.slope) : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace gnplate
