#include "gnplate/grid.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "gnplate/csv.hpp"
#include "gnplate/errors.hpp"

namespace gnplate {

Grid::Grid(double Lx, double Ly, int nx, int ny) : Lx_(Lx), Ly_(Ly), nx_(nx), ny_(ny) {
  if (nx < 3 || ny < 3) fail(ErrorCode::InvalidArgument, "grid needs at least 3 interior nodes per axis");
  if (!(Lx > 0.0) || !(Ly > 0.0) || !std::isfinite(Lx) || !std::isfinite(Ly)) {
    fail(ErrorCode::InvalidArgument, "grid side lengths must be positive and finite");
  }
}

Field::Field(const Grid& grid) : grid_(grid), values_(Eigen::VectorXd::Zero(grid.size())) {}

Field::Field(const Grid& grid, Eigen::VectorXd values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) fail(ErrorCode::GridMismatch, "field length differs from grid size");
}

double Field::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= grid_.nx() || j >= grid_.ny()) return 0.0;
  return values_[grid_.index(i, j)];
}

namespace {
void require_same(const Grid& a, const Grid& b) {
  if (!(a == b)) fail(ErrorCode::GridMismatch, "fields live on different grids");
}
}  // namespace

Field& Field::operator+=(const Field& other) {
  require_same(grid_, other.grid_);
  values_ += other.values_;
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same(grid_, other.grid_);
  values_ -= other.values_;
  return *this;
}

Field& Field::operator*=(double s) {
  values_ *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

std::pair<Field, Field> grad(const Field& f) {
  const Grid& g = f.grid();
  Field fx(g);
  Field fy(g);
  const double sx = 0.5 / g.hx();
  const double sy = 0.5 / g.hy();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      fx(i, j) = (f.at(i + 1, j) - f.at(i - 1, j)) * sx;
      fy(i, j) = (f.at(i, j + 1) - f.at(i, j - 1)) * sy;
    }
  }
  return {std::move(fx), std::move(fy)};
}

Field div(const Field& g1, const Field& g2) {
  require_same(g1.grid(), g2.grid());
  auto [a, unused_a] = grad(g1);
  auto [unused_b, b] = grad(g2);
  return a + b;
}

Field laplacian(const Field& f) {
  const Grid& g = f.grid();
  Field out(g);
  const double ax = 1.0 / (g.hx() * g.hx());
  const double ay = 1.0 / (g.hy() * g.hy());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double c = f(i, j);
      out(i, j) = (f.at(i + 1, j) + f.at(i - 1, j) - 2.0 * c) * ax +
                  (f.at(i, j + 1) + f.at(i, j - 1) - 2.0 * c) * ay;
    }
  }
  return out;
}

double inner(const Field& f, const Field& g) {
  require_same(f.grid(), g.grid());
  double sum = 0.0;
  const auto& a = f.values();
  const auto& b = g.values();
  for (Eigen::Index k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return f.grid().cell_area() * sum;
}

double cross_section_sum(const Field& f, int j) {
  const Grid& g = f.grid();
  if (j < 0 || j >= g.ny()) fail(ErrorCode::IndexOutOfRange, "row " + std::to_string(j));
  double sum = 0.0;
  for (int i = 0; i < g.nx(); ++i) sum += f(i, j);
  return g.hx() * sum;
}

GridOperators GridOperators::build(const Grid& g) {
  using Triplet = Eigen::Triplet<double>;
  const int n = g.size();
  std::vector<Triplet> dx, dy, lap;
  dx.reserve(2 * n);
  dy.reserve(2 * n);
  lap.reserve(5 * n);
  const double sx = 0.5 / g.hx();
  const double sy = 0.5 / g.hy();
  const double ax = 1.0 / (g.hx() * g.hx());
  const double ay = 1.0 / (g.hy() * g.hy());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const int k = g.index(i, j);
      lap.emplace_back(k, k, -2.0 * (ax + ay));
      if (i + 1 < g.nx()) {
        dx.emplace_back(k, g.index(i + 1, j), sx);
        lap.emplace_back(k, g.index(i + 1, j), ax);
      }
      if (i > 0) {
        dx.emplace_back(k, g.index(i - 1, j), -sx);
        lap.emplace_back(k, g.index(i - 1, j), ax);
      }
      if (j + 1 < g.ny()) {
        dy.emplace_back(k, g.index(i, j + 1), sy);
        lap.emplace_back(k, g.index(i, j + 1), ay);
      }
      if (j > 0) {
        dy.emplace_back(k, g.index(i, j - 1), -sy);
        lap.emplace_back(k, g.index(i, j - 1), ay);
      }
    }
  }
  GridOperators ops;
  ops.Dx.resize(n, n);
  ops.Dy.resize(n, n);
  ops.Lap.resize(n, n);
  ops.Id.resize(n, n);
  ops.Dx.setFromTriplets(dx.begin(), dx.end());
  ops.Dy.setFromTriplets(dy.begin(), dy.end());
  ops.Lap.setFromTriplets(lap.begin(), lap.end());
  ops.Id.setIdentity();
  return ops;
}

void write_field_csv(std::ostream& os, const Field& f) {
  const Grid& g = f.grid();
  os << "i,j,x1,x2,value\n";
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      os << i << ',' << j << ',' << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
         << format_double(f(i, j)) << '\n';
    }
  }
}

void write_field_csv(const std::string& path, const Field& f) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::InvalidArgument, "cannot open " + path);
  write_field_csv(os, f);
}

}  // namespace gnplate
