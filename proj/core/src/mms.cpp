#include "gnplate/mms.hpp"

#include <cmath>
#include <numbers>

#include "gnplate/errors.hpp"

namespace gnplate {

namespace {

// sin(q x) or sin^2(q x) with its first two derivatives.
struct Mode {
  double q;
  bool squared;

  [[nodiscard]] double f(double x) const {
    const double s = std::sin(q * x);
    return squared ? s * s : s;
  }
  [[nodiscard]] double df(double x) const {
    return squared ? q * std::sin(2.0 * q * x) : q * std::cos(q * x);
  }
  [[nodiscard]] double ddf(double x) const {
    return squared ? 2.0 * q * q * std::cos(2.0 * q * x) : -q * q * std::sin(q * x);
  }
};

struct Profile {
  Mode X;
  Mode Y;

  [[nodiscard]] double v(double x, double y) const { return X.f(x) * Y.f(y); }
  [[nodiscard]] double dx(double x, double y) const { return X.df(x) * Y.f(y); }
  [[nodiscard]] double dy(double x, double y) const { return X.f(x) * Y.df(y); }
  [[nodiscard]] double dxx(double x, double y) const { return X.ddf(x) * Y.f(y); }
  [[nodiscard]] double dyy(double x, double y) const { return X.f(x) * Y.ddf(y); }
  [[nodiscard]] double dxy(double x, double y) const { return X.df(x) * Y.df(y); }
  [[nodiscard]] double lap(double x, double y) const { return dxx(x, y) + dyy(x, y); }
};

// Time factors with their first two derivatives.
struct Clock {
  double (*f)(double);
  double (*df)(double);
  double (*ddf)(double);
};

double a0(double t) { return std::cos(t); }
double a1(double t) { return -std::sin(t); }
double a2(double t) { return -std::cos(t); }
double b0(double t) { return std::sin(2.0 * t) + 0.5; }
double b1(double t) { return 2.0 * std::cos(2.0 * t); }
double b2(double t) { return -4.0 * std::sin(2.0 * t); }
double c0(double t) { return std::exp(-t); }
double c1(double t) { return -std::exp(-t); }
double c2(double t) { return std::exp(-t); }
double d0(double t) { return std::cos(1.5 * t); }
double d1(double t) { return -1.5 * std::sin(1.5 * t); }
double d2(double t) { return -2.25 * std::cos(1.5 * t); }

constexpr Clock kRot{a0, a1, a2};
constexpr Clock kDefl{b0, b1, b2};
constexpr Clock kHeat{c0, c1, c2};
constexpr Clock kMass{d0, d1, d2};

struct Fields {
  // The squared factors keep the second derivatives across the boundary
  // consistent with the zero ghost layer used by grad(div).
  Profile V1, V2, W, T, Q;

  Fields(double Lx, double Ly) {
    const double px = std::numbers::pi / Lx;
    const double py = std::numbers::pi / Ly;
    V1 = {{px, true}, {py, false}};
    V2 = {{px, false}, {py, true}};
    W = {{px, false}, {py, false}};
    T = {{2.0 * px, false}, {py, false}};
    Q = {{px, false}, {2.0 * py, false}};
  }
};

}  // namespace

ManufacturedSolution::ManufacturedSolution(const MaterialParams& params, double Lx, double Ly,
                                           double amplitude)
    : p_(params), Lx_(Lx), Ly_(Ly), amp_(amplitude) {}

State ManufacturedSolution::exact(const Grid& grid, double t) const {
  const Fields F(Lx_, Ly_);
  State s(grid, t);
  auto put = [&](Component c, const Profile& pr, double factor) {
    s.set_field(c, Field::sample(grid, [&](double x, double y) { return amp_ * factor * pr.v(x, y); }));
  };
  put(Component::v1, F.V1, kRot.f(t));
  put(Component::z1, F.V1, kRot.df(t));
  put(Component::v2, F.V2, kRot.f(t));
  put(Component::z2, F.V2, kRot.df(t));
  put(Component::w, F.W, kDefl.f(t));
  put(Component::y, F.W, kDefl.df(t));
  put(Component::tau, F.T, kHeat.f(t));
  put(Component::theta, F.T, kHeat.df(t));
  put(Component::wp, F.Q, kMass.f(t));
  put(Component::P, F.Q, kMass.df(t));
  return s;
}

Sources ManufacturedSolution::sources(const Grid& grid) const {
  const Fields F(Lx_, Ly_);
  const MaterialParams p = p_;
  const double A = amp_;
  const double I = p.I();
  const double h = p.half_thickness;
  Sources src;

  auto rotation_load = [=](int alpha) {
    return [=](double t) {
      const double a = kRot.f(t);
      return Field::sample(grid, [&](double x, double y) {
        const Profile& Va = alpha == 0 ? F.V1 : F.V2;
        // d_alpha of div v
        const double graddiv = alpha == 0 ? F.V1.dxx(x, y) + F.V2.dxy(x, y)
                                          : F.V1.dxy(x, y) + F.V2.dyy(x, y);
        const double dth = (alpha == 0 ? F.T.dx(x, y) : F.T.dy(x, y)) * kHeat.df(t);
        const double dP = (alpha == 0 ? F.Q.dx(x, y) : F.Q.dy(x, y)) * kMass.df(t);
        const double dw = (alpha == 0 ? F.W.dx(x, y) : F.W.dy(x, y)) * kDefl.f(t);
        const double rhs = I * (p.mu * Va.lap(x, y) * a + (p.lambda + p.mu) * graddiv * a - p.d1 * dth -
                                p.d2 * dP) -
                           2.0 * h * p.mu * (Va.v(x, y) * a + dw);
        return A * (p.rho * I * Va.v(x, y) * kRot.ddf(t) - rhs);
      });
    };
  };
  src.f1 = rotation_load(0);
  src.f2 = rotation_load(1);
  src.f = [=](double t) {
    return Field::sample(grid, [&](double x, double y) {
      const double div = F.V1.dx(x, y) + F.V2.dy(x, y);
      const double rhs = p.mu * (F.W.lap(x, y) * kDefl.f(t) + div * kRot.f(t));
      return A * (p.rho * F.W.v(x, y) * kDefl.ddf(t) - rhs);
    });
  };

  // Entropy (heat) and diffusion (mass) balances share one shape.
  auto balance = [=](bool heat) {
    return [=](double t) {
      return Field::sample(grid, [&](double x, double y) {
        const double tau = F.T.v(x, y) * kHeat.f(t);
        const double theta = F.T.v(x, y) * kHeat.df(t);
        const double thetadot = F.T.v(x, y) * kHeat.ddf(t);
        const double wp = F.Q.v(x, y) * kMass.f(t);
        const double P = F.Q.v(x, y) * kMass.df(t);
        const double Pdot = F.Q.v(x, y) * kMass.ddf(t);
        const double lap_tau = F.T.lap(x, y) * kHeat.f(t);
        const double lap_theta = F.T.lap(x, y) * kHeat.df(t);
        const double lap_wp = F.Q.lap(x, y) * kMass.f(t);
        const double lap_P = F.Q.lap(x, y) * kMass.df(t);
        const double div_zdot = (F.V1.dx(x, y) + F.V2.dy(x, y)) * kRot.df(t);
        double lhs, rhs;
        if (heat) {
          lhs = I * (p.c * thetadot + p.kappa * Pdot);
          rhs = I * (p.k1 * lap_tau + p.hbar1 * lap_wp + p.k2 * lap_theta + p.hbar2 * lap_P) -
                I * p.d1 * div_zdot - 2.0 * h * (p.k1 * tau + p.hbar1 * wp + p.k2 * theta + p.hbar2 * P);
        } else {
          lhs = I * (p.kappa * thetadot + p.r * Pdot);
          rhs = I * (p.h1 * lap_wp + p.hbar1 * lap_tau + p.hbar2 * lap_theta + p.h2 * lap_P) -
                I * p.d2 * div_zdot - 2.0 * h * (p.h1 * wp + p.hbar1 * tau + p.hbar2 * theta + p.h2 * P);
        }
        return A * (lhs - rhs);
      });
    };
  };
  src.W = balance(true);
  src.V = balance(false);
  return src;
}

namespace {

double weighted_norm(const Eigen::VectorXd& v, const Grid& g) {
  return std::sqrt(g.cell_area()) * v.norm();
}

double order(double e_coarse, double e_fine, double ratio) {
  if (e_coarse == 0.0 && e_fine == 0.0) return 0.0;
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

}  // namespace

MmsResult mms_verify(const MaterialParams& params, const MmsOptions& opt) {
  require_valid(params);
  if (opt.grid_sizes.size() < 2 || opt.dts.size() < 3) {
    fail(ErrorCode::InvalidArgument, "need at least two grids and three time steps");
  }
  const ManufacturedSolution ms(params, opt.Lx, opt.Ly, opt.amplitude);
  MmsResult out;

  for (int n : opt.grid_sizes) {
    const Grid g(opt.Lx, opt.Ly, n, n);
    const OperatorMatrices m = assemble(params, g);
    const RunResult r = run(ms.exact(g, 0.0), m, ms.sources(g), opt.space_dt, opt.space_t_end);
    const Eigen::VectorXd err = r.final_state.vector() - ms.exact(g, opt.space_t_end).vector();
    const double ref = weighted_norm(ms.exact(g, opt.space_t_end).vector(), g);
    out.h.push_back(g.hx());
    out.space_errors.push_back(ref > 0.0 ? weighted_norm(err, g) / ref : weighted_norm(err, g));
  }

  const Grid g(opt.Lx, opt.Ly, opt.time_grid, opt.time_grid);
  const OperatorMatrices m = assemble(params, g);
  std::vector<Eigen::VectorXd> finals;
  for (double dt : opt.dts) {
    out.dts.push_back(dt);
    finals.push_back(run(ms.exact(g, 0.0), m, ms.sources(g), dt, opt.time_t_end).final_state.vector());
  }
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    out.time_differences.push_back(weighted_norm(finals[k] - finals[k + 1], g));
  }

  const std::size_t ns = out.space_errors.size();
  out.space_order = order(out.space_errors[ns - 2], out.space_errors[ns - 1], out.h[ns - 2] / out.h[ns - 1]);
  const std::size_t nt = out.time_differences.size();
  out.time_order = order(out.time_differences[nt - 2], out.time_differences[nt - 1],
                         out.dts[nt - 1] / out.dts[nt]);
  return out;
}

}  // namespace gnplate
