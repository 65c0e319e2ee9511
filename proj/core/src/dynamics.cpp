#include "gnplate/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "gnplate/csv.hpp"
#include "gnplate/errors.hpp"

namespace gnplate {

namespace {

using Triplet = Eigen::Triplet<double>;

class BlockBuilder {
 public:
  explicit BlockBuilder(int n) : n_(n) {}

  void add(Component row, Component col, const SparseMatrix& M, double scale) {
    if (scale == 0.0) return;
    const int r0 = static_cast<int>(row) * n_;
    const int c0 = static_cast<int>(col) * n_;
    for (int k = 0; k < M.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(M, k); it; ++it) {
        t_.emplace_back(r0 + static_cast<int>(it.row()), c0 + static_cast<int>(it.col()),
                        scale * it.value());
      }
    }
  }

  SparseMatrix build() {
    SparseMatrix out(kNumComponents * n_, kNumComponents * n_);
    out.setFromTriplets(t_.begin(), t_.end());
    out.makeCompressed();
    return out;
  }

 private:
  int n_;
  std::vector<Triplet> t_;
};

constexpr std::array<Component, 2> kV{Component::v1, Component::v2};
constexpr std::array<Component, 2> kZ{Component::z1, Component::z2};

const SparseMatrix& first_derivative(const GridOperators& ops, int alpha) {
  return alpha == 0 ? ops.Dx : ops.Dy;
}

// Conduction-type operator I * Lap - 2h * Id, shared by the thermal rows.
SparseMatrix conduction_operator(const MaterialParams& p, const GridOperators& ops) {
  SparseMatrix S = p.I() * ops.Lap - 2.0 * p.half_thickness * ops.Id;
  S.makeCompressed();
  return S;
}

}  // namespace

SparseMatrix assemble_generator(const MaterialParams& p, const Grid& grid, const GridOperators& ops) {
  const double I = p.I();
  const double h = p.half_thickness;
  const double delta = p.delta();
  BlockBuilder b(grid.size());

  for (int a = 0; a < 2; ++a) {
    const SparseMatrix& Da = first_derivative(ops, a);
    b.add(kV[a], kZ[a], ops.Id, 1.0);
    b.add(kZ[a], kV[a], ops.Lap, p.mu / p.rho);
    b.add(kZ[a], kV[a], ops.Id, -2.0 * h * p.mu / (p.rho * I));
    for (int c = 0; c < 2; ++c) {
      const SparseMatrix DaDc = Da * first_derivative(ops, c);
      b.add(kZ[a], kV[c], DaDc, (p.lambda + p.mu) / p.rho);
    }
    b.add(kZ[a], Component::w, Da, -2.0 * h * p.mu / (p.rho * I));
    b.add(kZ[a], Component::theta, Da, -p.d1 / p.rho);
    b.add(kZ[a], Component::P, Da, -p.d2 / p.rho);
  }

  b.add(Component::w, Component::y, ops.Id, 1.0);
  b.add(Component::y, Component::w, ops.Lap, p.mu / p.rho);
  b.add(Component::y, Component::v1, ops.Dx, p.mu / p.rho);
  b.add(Component::y, Component::v2, ops.Dy, p.mu / p.rho);

  b.add(Component::tau, Component::theta, ops.Id, 1.0);
  b.add(Component::wp, Component::P, ops.Id, 1.0);

  // Capacity matrix [[c, kappa], [kappa, r]] inverted onto the two balance laws.
  const SparseMatrix S = conduction_operator(p, ops);
  const double inv = 1.0 / (I * delta);
  struct Row {
    Component target;
    double from_heat;  // weight of the entropy balance
    double from_mass;  // weight of the diffusion balance
  };
  for (const Row row : {Row{Component::theta, p.r * inv, -p.kappa * inv},
                        Row{Component::P, -p.kappa * inv, p.c * inv}}) {
    const double wh = row.from_heat;
    const double wm = row.from_mass;
    b.add(row.target, Component::tau, S, wh * p.k1 + wm * p.hbar1);
    b.add(row.target, Component::wp, S, wh * p.hbar1 + wm * p.h1);
    b.add(row.target, Component::theta, S, wh * p.k2 + wm * p.hbar2);
    b.add(row.target, Component::P, S, wh * p.hbar2 + wm * p.h2);
    b.add(row.target, Component::z1, ops.Dx, -I * (wh * p.d1 + wm * p.d2));
    b.add(row.target, Component::z2, ops.Dy, -I * (wh * p.d1 + wm * p.d2));
  }
  return b.build();
}

SparseMatrix assemble_energy_form(const MaterialParams& p, const Grid& grid, const GridOperators& ops) {
  const double I = p.I();
  const double h = p.half_thickness;
  const double a = grid.cell_area();
  BlockBuilder b(grid.size());

  for (int al = 0; al < 2; ++al) {
    const SparseMatrix& Da = first_derivative(ops, al);
    b.add(kV[al], kV[al], ops.Lap, -a * I * p.mu);
    b.add(kV[al], kV[al], ops.Id, a * 2.0 * h * p.mu);
    for (int be = 0; be < 2; ++be) {
      const SparseMatrix DaDb = Da * first_derivative(ops, be);
      b.add(kV[al], kV[be], DaDb, -a * I * (p.lambda + p.mu));
    }
    b.add(kV[al], Component::w, Da, a * 2.0 * h * p.mu);
    b.add(Component::w, kV[al], Da, -a * 2.0 * h * p.mu);
    b.add(kZ[al], kZ[al], ops.Id, a * p.rho * I);
  }
  b.add(Component::w, Component::w, ops.Lap, -a * 2.0 * h * p.mu);
  b.add(Component::y, Component::y, ops.Id, a * 2.0 * h * p.rho);

  const SparseMatrix negS = -conduction_operator(p, ops);
  b.add(Component::tau, Component::tau, negS, a * p.k1);
  b.add(Component::tau, Component::wp, negS, a * p.hbar1);
  b.add(Component::wp, Component::tau, negS, a * p.hbar1);
  b.add(Component::wp, Component::wp, negS, a * p.h1);

  b.add(Component::theta, Component::theta, ops.Id, a * I * p.c);
  b.add(Component::theta, Component::P, ops.Id, a * I * p.kappa);
  b.add(Component::P, Component::theta, ops.Id, a * I * p.kappa);
  b.add(Component::P, Component::P, ops.Id, a * I * p.r);
  return b.build();
}

SparseMatrix assemble_dissipation_form(const MaterialParams& p, const Grid& grid,
                                       const GridOperators& ops) {
  const double a = grid.cell_area();
  const SparseMatrix negS = -conduction_operator(p, ops);
  BlockBuilder b(grid.size());
  b.add(Component::theta, Component::theta, negS, a * p.k2);
  b.add(Component::theta, Component::P, negS, a * p.hbar2);
  b.add(Component::P, Component::theta, negS, a * p.hbar2);
  b.add(Component::P, Component::P, negS, a * p.h2);
  return b.build();
}

double dissipation_identity_residual(const OperatorMatrices& m, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const Eigen::Index n = m.A_op.rows();
  double worst = 0.0;
  Eigen::VectorXd U(n);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index k = 0; k < n; ++k) U[k] = uni(rng);
    const Eigen::VectorXd AU = m.A_op * U;
    const double norm2 = U.dot(m.E_form * U);
    const double lhs = U.dot(m.E_form * AU) + U.dot(m.D_form * U);
    worst = std::max(worst, std::abs(lhs) / norm2);
  }
  return worst;
}

OperatorMatrices assemble(const MaterialParams& params, const Grid& grid) {
  require_valid(params);
  const GridOperators ops = GridOperators::build(grid);
  OperatorMatrices m{params, grid, assemble_generator(params, grid, ops),
                     assemble_energy_form(params, grid, ops),
                     assemble_dissipation_form(params, grid, ops)};
  const double residual = dissipation_identity_residual(m, 100, 20240917u);
  if (!(residual <= 1e-12)) {
    fail(ErrorCode::AssemblyInconsistent,
         "energy identity residual " + format_double(residual) + " exceeds 1e-12");
  }
  return m;
}

Eigen::VectorXd source_vector(const Sources& src, const MaterialParams& p, const Grid& grid, double t) {
  const Eigen::Index n = grid.size();
  Eigen::VectorXd F = Eigen::VectorXd::Zero(kNumComponents * n);
  auto seg = [&](Component c) { return F.segment(static_cast<Eigen::Index>(c) * n, n); };
  auto sample = [&](const std::function<Field(double)>& fn) -> Eigen::VectorXd {
    if (!fn) return Eigen::VectorXd::Zero(n);
    Field f = fn(t);
    if (!(f.grid() == grid)) fail(ErrorCode::GridMismatch, "source field on a different grid");
    if (!f.values().allFinite()) fail(ErrorCode::NonFinite, "source field");
    return f.values();
  };
  const double I = p.I();
  seg(Component::z1) = sample(src.f1) / (p.rho * I);
  seg(Component::z2) = sample(src.f2) / (p.rho * I);
  seg(Component::y) = sample(src.f) / p.rho;
  if (src.W || src.V) {
    const Eigen::VectorXd W = sample(src.W);
    const Eigen::VectorXd V = sample(src.V);
    const double inv = 1.0 / (I * p.delta());
    seg(Component::theta) = (p.r * W - p.kappa * V) * inv;
    seg(Component::P) = (p.c * V - p.kappa * W) * inv;
  }
  return F;
}

double energy(const State& U, const OperatorMatrices& m) {
  return 0.5 * U.vector().dot(m.E_form * U.vector());
}

double dissipation(const State& U, const OperatorMatrices& m) {
  return U.vector().dot(m.D_form * U.vector());
}

double energy_norm(const Eigen::VectorXd& U, const OperatorMatrices& m) {
  const double q = U.dot(m.E_form * U);
  if (std::isnan(q)) return q;
  return std::sqrt(std::max(0.0, q));
}

double thermal_energy_norm(const Eigen::VectorXd& U, const OperatorMatrices& m) {
  const Eigen::Index n = m.grid.size();
  const Eigen::Index first = static_cast<Eigen::Index>(Component::tau) * n;
  Eigen::VectorXd part = Eigen::VectorXd::Zero(U.size());
  part.segment(first, 4 * n) = U.segment(first, 4 * n);
  return energy_norm(part, m);
}

double source_power(const State& U, const Eigen::VectorXd& forcing, const OperatorMatrices& m) {
  if (forcing.size() == 0) return 0.0;
  return U.vector().dot(m.E_form * forcing);
}

// Implicit solves of (Id - c G) x = b. Every position row of G is an identity
// block onto the matching rate, so positions are eliminated and only the rate
// unknowns are factorized: (Id - c G_rr - c^2 G_rp) x_r = b_r + c G_rp b_p,
// then x_p = b_p + c x_r. The residual is still checked on the full system.
class ReducedSolver {
 public:
  ReducedSolver(const SparseMatrix& G, double c, const Grid& grid) : c_(c), n_(grid.size()) {
    const int n = n_;
    const int half = 5 * n;
    std::vector<Triplet> pr, pp;
    pr.reserve(half);
    pp.reserve(half);
    for (int k = 0; k < 5; ++k) {
      for (int i = 0; i < n; ++i) {
        pr.emplace_back(k * n + i, static_cast<int>(kRates[k]) * n + i, 1.0);
        pp.emplace_back(k * n + i, static_cast<int>(kPositions[k]) * n + i, 1.0);
      }
    }
    SparseMatrix Sr(half, G.cols());
    SparseMatrix Sp(half, G.cols());
    Sr.setFromTriplets(pr.begin(), pr.end());
    Sp.setFromTriplets(pp.begin(), pp.end());
    SparseMatrix Gpr = Sp * G * SparseMatrix(Sr.transpose());
    SparseMatrix Gpp = Sp * G * SparseMatrix(Sp.transpose());
    SparseMatrix id(half, half);
    id.setIdentity();
    if (Gpp.norm() != 0.0 || (Gpr - id).norm() != 0.0) {
      fail(ErrorCode::AssemblyInconsistent, "position rows of the generator are not pure rate identities");
    }
    Grr_ = Sr * G * SparseMatrix(Sr.transpose());
    Grp_ = Sr * G * SparseMatrix(Sp.transpose());
    full_ = SparseMatrix(G.rows(), G.cols());
    full_.setIdentity();
    full_ -= c * G;
    Eigen::SparseMatrix<double> lhs = id - c * Grr_ - c * c * Grp_;
    lhs.makeCompressed();
    lu_.analyzePattern(lhs);
    lu_.factorize(lhs);
    if (lu_.info() != Eigen::Success) {
      fail(ErrorCode::SolverFailure, "sparse LU factorization failed: " + lu_.lastErrorMessage());
    }
  }

  /// Returns x and the relative residual of the full system.
  std::pair<Eigen::VectorXd, double> solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd x = apply_inverse(b);
    const double bnorm = b.norm();
    double rel = 0.0;
    for (int pass = 0; pass < 4; ++pass) {
      const Eigen::VectorXd r = b - full_ * x;
      rel = bnorm > 0.0 ? r.norm() / bnorm : r.norm();
      if (rel <= 1e-12) break;
      x += apply_inverse(r);
    }
    return {std::move(x), rel};
  }

  [[nodiscard]] const SparseMatrix& full() const { return full_; }

 private:
  static constexpr std::array<Component, 5> kPositions{Component::v1, Component::v2, Component::w,
                                                       Component::tau, Component::wp};
  static constexpr std::array<Component, 5> kRates{Component::z1, Component::z2, Component::y,
                                                   Component::theta, Component::P};

  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& b) const {
    const Eigen::Index n = n_;
    Eigen::VectorXd bp(5 * n), br(5 * n);
    for (int k = 0; k < 5; ++k) {
      bp.segment(k * n, n) = b.segment(static_cast<Eigen::Index>(kPositions[k]) * n, n);
      br.segment(k * n, n) = b.segment(static_cast<Eigen::Index>(kRates[k]) * n, n);
    }
    const Eigen::VectorXd xr = lu_.solve(br + c_ * (Grp_ * bp));
    const Eigen::VectorXd xp = bp + c_ * xr;
    Eigen::VectorXd x(b.size());
    for (int k = 0; k < 5; ++k) {
      x.segment(static_cast<Eigen::Index>(kPositions[k]) * n, n) = xp.segment(k * n, n);
      x.segment(static_cast<Eigen::Index>(kRates[k]) * n, n) = xr.segment(k * n, n);
    }
    return x;
  }

  double c_;
  int n_;
  SparseMatrix Grr_;
  SparseMatrix Grp_;
  SparseMatrix full_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

struct MidpointStepper::Impl {
  Impl(SparseMatrix r, const SparseMatrix& G, double c, const Grid& grid)
      : rhs(std::move(r)), solver(G, c, grid) {}
  SparseMatrix rhs;
  ReducedSolver solver;
};

MidpointStepper::MidpointStepper(const OperatorMatrices& m, double dt)
    : MidpointStepper(m, m.A_op, dt) {}

MidpointStepper::MidpointStepper(const OperatorMatrices& m, const SparseMatrix& G, double dt)
    : m_(&m), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  SparseMatrix id(G.rows(), G.cols());
  id.setIdentity();
  impl_ = std::make_unique<Impl>(id + 0.5 * dt * G, G, 0.5 * dt, m.grid);
}

MidpointStepper::~MidpointStepper() = default;
MidpointStepper::MidpointStepper(MidpointStepper&&) noexcept = default;
MidpointStepper& MidpointStepper::operator=(MidpointStepper&&) noexcept = default;

State MidpointStepper::step(const State& U, const Sources& sources) const {
  if (sources.empty()) return step(U, Eigen::VectorXd());
  return step(U, source_vector(sources, m_->params, U.grid(), U.time() + 0.5 * dt_));
}

State MidpointStepper::step(const State& U, const Eigen::VectorXd& forcing) const {
  if (!(U.grid() == m_->grid)) fail(ErrorCode::GridMismatch, "state grid differs from operator grid");
  Eigen::VectorXd b = impl_->rhs * U.vector();
  if (forcing.size() != 0) b += dt_ * forcing;
  auto [x, rel] = impl_->solver.solve(b);
  last_residual_ = rel;
  if (!(rel <= 1e-12) || !x.allFinite()) {
    fail(ErrorCode::SolverFailure, "midpoint solve residual " + format_double(rel));
  }
  return State(U.grid(), std::move(x), U.time() + dt_);
}

State step(const State& U, const OperatorMatrices& m, const Sources& sources, double dt) {
  return MidpointStepper(m, dt).step(U, sources);
}

State resolvent_solve(const State& Ustar, const OperatorMatrices& m) {
  const ReducedSolver solver(m.A_op, 1.0, m.grid);
  auto [x, rel] = solver.solve(Ustar.vector());
  if (!(rel <= 1e-12) || !x.allFinite()) {
    fail(ErrorCode::SolverFailure, "resolvent residual " + format_double(rel));
  }
  return State(Ustar.grid(), std::move(x), Ustar.time());
}

void write_energy_csv(const std::string& path, const EnergyReport& r) {
  CsvWriter csv(path, {"t", "E0", "D", "balance_residual", "src_power"});
  for (std::size_t k = 0; k < r.size(); ++k) {
    csv.cell(r.times[k]).cell(r.E0[k]).cell(r.D[k]).cell(r.balance_residual[k]).cell(r.src_power[k]);
    csv.end_row();
  }
}

RunResult run(const State& U0, const OperatorMatrices& m, const Sources& sources, double dt,
              double t_end, const StepObserver& observer) {
  RunResult out{U0, {}};
  auto& rep = out.report;
  rep.times.push_back(U0.time());
  rep.E0.push_back(energy(U0, m));
  rep.D.push_back(dissipation(U0, m));
  rep.balance_residual.push_back(0.0);
  rep.src_power.push_back(
      sources.empty() ? 0.0 : source_power(U0, source_vector(sources, m.params, U0.grid(), U0.time()), m));
  if (!(dt > 0.0) || t_end == 0.0) return out;

  const double ratio = t_end / dt;
  const long nsteps = std::lround(ratio);
  if (nsteps < 1 || std::abs(ratio - static_cast<double>(nsteps)) > 1e-8 * std::max(1.0, ratio)) {
    fail(ErrorCode::InvalidArgument, "dt must divide t_end");
  }
  const MidpointStepper stepper(m, dt);
  const double t0 = U0.time();
  State U = U0;
  for (long n = 0; n < nsteps; ++n) {
    U.set_time(t0 + static_cast<double>(n) * dt);
    Eigen::VectorXd forcing;
    if (!sources.empty()) forcing = source_vector(sources, m.params, U.grid(), U.time() + 0.5 * dt);
    State next = stepper.step(U, forcing);
    next.set_time(t0 + static_cast<double>(n + 1) * dt);
    const State mid(U.grid(), 0.5 * (U.vector() + next.vector()), U.time() + 0.5 * dt);
    const double e_next = energy(next, m);
    const double d_mid = dissipation(mid, m);
    const double p_mid = source_power(mid, forcing, m);
    rep.times.push_back(next.time());
    rep.E0.push_back(e_next);
    rep.D.push_back(d_mid);
    rep.src_power.push_back(p_mid);
    rep.balance_residual.push_back(std::abs(e_next - rep.E0[rep.E0.size() - 2] + dt * d_mid - dt * p_mid));
    if (observer) observer(U, next);
    U = std::move(next);
  }
  out.final_state = std::move(U);
  return out;
}

double ModeCheckResult::min_div_ratio() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& mode : modes) best = std::min(best, mode.div_ratio);
  return best;
}

ModeCheckResult overdetermined_mode_check(const MaterialParams& p, const Grid& grid, int n_modes) {
  if (p.model_type != ModelType::TypeIII) {
    fail(ErrorCode::TypeMismatch, "the overdetermined mode check needs type III parameters");
  }
  require_valid(p);
  ModeCheckResult result;
  const double j_coef = p.r * p.d1 - p.kappa * p.d2;
  const double l_coef = p.c * p.d2 - p.kappa * p.d1;
  if (j_coef == 0.0 && l_coef == 0.0) return result;
  result.applicable = true;

  const GridOperators ops = GridOperators::build(grid);
  const SparseMatrix E = assemble_energy_form(p, grid, ops);
  const int n = grid.size();
  // Mechanical positions (v1, v2, w) and their rates (z1, z2, y).
  const std::array<Component, 3> pos{Component::v1, Component::v2, Component::w};
  const std::array<Component, 3> vel{Component::z1, Component::z2, Component::y};
  Eigen::MatrixXd K(3 * n, 3 * n);
  Eigen::VectorXd M(3 * n);
  const Eigen::MatrixXd Ed = Eigen::MatrixXd(E);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      K.block(a * n, b * n, n, n) =
          Ed.block(static_cast<int>(pos[a]) * n, static_cast<int>(pos[b]) * n, n, n);
    }
    M.segment(a * n, n) = Ed.diagonal().segment(static_cast<int>(vel[a]) * n, n);
  }
  // Symmetric reduction M^{-1/2} K M^{-1/2}; M is diagonal.
  const Eigen::VectorXd s = M.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd Ks = s.asDiagonal() * K * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ks);
  if (es.info() != Eigen::Success) fail(ErrorCode::EigenFailure, "mechanical eigen-solve failed");

  const int count = std::min(n_modes, 3 * n);
  const Eigen::SparseMatrix<double> Dx = ops.Dx;
  const Eigen::SparseMatrix<double> Dy = ops.Dy;
  for (int k = 0; k < count; ++k) {
    const Eigen::VectorXd x = s.asDiagonal() * es.eigenvectors().col(k);
    const Eigen::VectorXd div = Dx * x.segment(0, n) + Dy * x.segment(n, n);
    result.modes.push_back({es.eigenvalues()(k), div.norm() / x.norm()});
  }
  return result;
}

}  // namespace gnplate
