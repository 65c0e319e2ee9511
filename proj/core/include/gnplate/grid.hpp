#pragma once

#include <iosfwd>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gnplate {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Uniform node-centred lattice on [0, Lx] x [0, Ly]. Only interior nodes
/// carry unknowns; the boundary ring is an implicit homogeneous Dirichlet
/// layer. Node (i, j) sits at ((i + 1) hx, (j + 1) hy), flattened i-fastest.
class Grid {
 public:
  Grid(double Lx, double Ly, int nx, int ny);

  [[nodiscard]] double Lx() const { return Lx_; }
  [[nodiscard]] double Ly() const { return Ly_; }
  [[nodiscard]] int nx() const { return nx_; }
  [[nodiscard]] int ny() const { return ny_; }
  [[nodiscard]] double hx() const { return Lx_ / (nx_ + 1); }
  [[nodiscard]] double hy() const { return Ly_ / (ny_ + 1); }
  [[nodiscard]] double cell_area() const { return hx() * hy(); }
  [[nodiscard]] int size() const { return nx_ * ny_; }
  [[nodiscard]] int index(int i, int j) const { return i + nx_ * j; }
  [[nodiscard]] double x(int i) const { return (i + 1) * hx(); }
  [[nodiscard]] double y(int j) const { return (j + 1) * hy(); }

  bool operator==(const Grid&) const = default;

 private:
  double Lx_;
  double Ly_;
  int nx_;
  int ny_;
};

/// Scalar nodal values on a grid.
class Field {
 public:
  explicit Field(const Grid& grid);
  Field(const Grid& grid, Eigen::VectorXd values);

  template <class F>
  static Field sample(const Grid& grid, F&& fn) {
    Field out(grid);
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) out(i, j) = fn(grid.x(i), grid.y(j));
    }
    return out;
  }

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  [[nodiscard]] double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  /// Value at (i, j) with the Dirichlet ghost layer (zero outside).
  [[nodiscard]] double at(int i, int j) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

 private:
  Grid grid_;
  Eigen::VectorXd values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Central differences (f,1 , f,2) with zero ghosts.
std::pair<Field, Field> grad(const Field& f);
/// Exact negative adjoint of grad.
Field div(const Field& g1, const Field& g2);
/// Five-point Laplacian with zero ghosts.
Field laplacian(const Field& f);
/// cell_area * sum f g.
double inner(const Field& f, const Field& g);
/// hx * sum_i f(i, j).
double cross_section_sum(const Field& f, int j);

/// Assembled versions of the stencils, acting on flattened nodal vectors.
struct GridOperators {
  SparseMatrix Dx;   ///< central d/dx1, skew-symmetric
  SparseMatrix Dy;   ///< central d/dx2, skew-symmetric
  SparseMatrix Lap;  ///< five-point Laplacian, symmetric negative definite
  SparseMatrix Id;

  static GridOperators build(const Grid& grid);
};

/// CSV with header `i,j,x1,x2,value`, i fastest.
void write_field_csv(std::ostream& os, const Field& f);
void write_field_csv(const std::string& path, const Field& f);

}  // namespace gnplate
