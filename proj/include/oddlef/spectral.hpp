#pragma once

#include "oddlef/function_spec.hpp"
#include "oddlef/lefschetz.hpp"
#include "oddlef/parallel.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace oddlef {

struct LiftError : std::runtime_error {
  LiftError(std::string axiom_, const std::string& what)
      : std::runtime_error(axiom_ + ": " + what), axiom(std::move(axiom_)) {}
  std::string axiom;
};

enum class SpinStructure { periodic, antiperiodic };

// JSON-facing description of a built-in model.
struct ModelDescriptor {
  std::string model;  // "circle" | "torus3"
  int cutoff = 8;
  std::vector<SpinStructure> spin;  // one entry per axis
  int lift_sign = 1;
  int reflection_axis = 2;  // torus3 only
};

using Complex = std::complex<double>;

// One eigenvector of D: a momentum mode times a spinor eigenvector of the
// symbol. k2 holds twice the momentum so antiperiodic half-integer lattices
// stay integral.
struct Mode {
  std::array<int, 3> k2{0, 0, 0};
  int branch = 0;
  double lambda = 0.0;
  std::array<Complex, 2> spinor{1.0, 0.0};
};

class Basis {
 public:
  Basis(std::vector<Mode> modes, std::vector<std::uint8_t> core);
  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  bool is_core(std::size_t i) const { return core_[i] != 0; }
  long index_of(const std::array<int, 3>& k2, int branch) const;

 private:
  std::vector<Mode> modes_;
  std::vector<std::uint8_t> core_;
  std::map<std::pair<std::array<int, 3>, int>, long> index_;
};

// Row-major sparse complex matrix with sorted columns per row.
class SparseOp {
 public:
  struct Entry {
    std::size_t col;
    Complex value;
  };

  explicit SparseOp(std::size_t n) : rows_(n) {}
  static SparseOp identity(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  void insert(std::size_t row, std::size_t col, Complex v);
  void finalize();  // sort columns, merge duplicates, drop zeros
  const std::vector<Entry>& row(std::size_t r) const { return rows_[r]; }
  Complex coeff(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const;

  SparseOp multiply(const SparseOp& o) const;
  SparseOp adjoint() const;
  SparseOp scaled(Complex s) const;
  SparseOp plus(const SparseOp& o) const;
  double max_abs_difference(const SparseOp& o) const;

 private:
  std::vector<std::vector<Entry>> rows_;
};

struct TraceValue {
  double value = 0.0;
  double tail_bound = 0.0;  // truncation estimate from Gaussian decay
};

// t samples strictly positive and strictly decreasing toward 0.
struct HeatCurve {
  std::vector<std::pair<double, Complex>> samples;
  void validate() const;
};

// A truncated Dirac operator with involution lift on a flat model geometry.
// The lift axioms (tau^2 = 1, self-adjoint unitary, anticommutation with D)
// are verified exactly on the truncated basis at construction.
class ModelGeometry {
 public:
  const ModelDescriptor& descriptor() const { return desc_; }
  int ambient_dim() const { return ambient_dim_; }
  int cutoff() const { return desc_.cutoff; }
  int lift_sign() const { return desc_.lift_sign; }
  int reflection_axis() const { return reflection_axis_; }
  const std::vector<FixedComponentSpec>& fixed_components() const { return fixed_components_; }
  const std::vector<std::array<double, 3>>& fixed_point_positions() const { return fixed_pos_; }

  // modes with |momentum|_inf <= cutoff + pad on the axes that functions can
  // shift; the core flag marks |momentum|_inf <= cutoff
  Basis make_basis(int pad = 0) const;

  SparseOp tau_matrix(const Basis& b) const;
  SparseOp multiplication_operator(const Basis& b, const FunctionSpec& f) const;

  TraceValue heat_supertrace(double t, Exec ex = Exec::parallel) const;
  HeatCurve heat_curve(const std::vector<double>& ts, Exec ex = Exec::parallel) const;

  // pointwise supertrace density tr[tau P_t(tau x, x)]
  double local_density(const std::array<double, 3>& x, double t) const;

  // trapezoid integral of the density over the manifold (exact for the mode
  // sum once the grid outresolves the highest frequency)
  double integrate_density(double t, int grid_per_axis, Exec ex = Exec::parallel) const;

  // integral of |density| outside the eps-neighborhood of the fixed set
  double outside_fixed_set_mass(double eps, double t, int grid_points,
                                Exec ex = Exec::parallel) const;

  ModelGeometry(ModelDescriptor desc, int ambient_dim, int reflection_axis,
                std::vector<FixedComponentSpec> comps, std::vector<std::array<double, 3>> pos);

 private:
  ModelDescriptor desc_;
  int ambient_dim_;
  int reflection_axis_;
  std::vector<FixedComponentSpec> fixed_components_;
  std::vector<std::array<double, 3>> fixed_pos_;

  struct DensityContext;
  DensityContext density_terms() const;
  static double density_at(const DensityContext& ctx, double xr, double t);
  void verify_lift_axioms() const;
};

ModelGeometry build_circle(SpinStructure spin, int lift_sign, int cutoff);
ModelGeometry build_torus3(int reflection_axis, const std::array<SpinStructure, 3>& spin,
                           int lift_sign, int cutoff);
ModelGeometry build_geometry(const ModelDescriptor& desc);

std::vector<double> log_spaced(double tmin, double tmax, int count);  // decreasing

}  // namespace oddlef
