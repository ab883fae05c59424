#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "lpflow/grid.hpp"

namespace lpflow {

using cplx = std::complex<double>;

/// Exponents of a mixed partial derivative d_1^a1 d_2^a2.
struct MultiIndex {
  int a1 = 0;
  int a2 = 0;
  int order() const { return a1 + a2; }
};

/// Real scalar field on the torus, holding both the physical samples and the
/// normalized Fourier coefficients c_xi with f(x) = sum_xi c_xi exp(i xi.x).
/// Immutable after construction: every operation returns a new field.
class Field {
 public:
  Field() = default;

  static Field from_physical(const TorusGrid& grid, std::vector<double> samples);
  /// Columns xi1 = 0 and xi1 = n/2 are symmetrized so both views agree.
  static Field from_spectral(const TorusGrid& grid, std::vector<cplx> coeffs);
  static Field zeros(const TorusGrid& grid);
  static Field constant(const TorusGrid& grid, double value);

  template <class F>
  static Field sample(const TorusGrid& grid, F&& f) {
    std::vector<double> s(grid.points());
    const double h = grid.spacing();
    for (int i2 = 0; i2 < grid.n; ++i2)
      for (int i1 = 0; i1 < grid.n; ++i1) s[static_cast<std::size_t>(i2) * grid.n + i1] = f(i1 * h, i2 * h);
    return from_physical(grid, std::move(s));
  }

  const TorusGrid& grid() const { return grid_; }
  bool empty() const { return physical_.empty(); }
  std::span<const double> physical() const { return physical_; }
  std::span<const cplx> spectral() const { return spectral_; }

  double at(int i1, int i2) const { return physical_[static_cast<std::size_t>(i2) * grid_.n + i1]; }
  /// Coefficient of exp(i(xi1 x1 + xi2 x2)); negative xi1 resolved by conjugate symmetry.
  cplx coefficient(int xi1, int xi2) const;
  double mean() const { return spectral_.empty() ? 0.0 : spectral_[0].real(); }

  Field operator-() const;
  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);

 private:
  TorusGrid grid_;
  std::vector<double> physical_;
  std::vector<cplx> spectral_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator*(Field a, double s);

/// Applies m(xi1, xi2) to every Fourier coefficient. m must be Hermitian
/// (m(-xi) = conj m(xi)) for the result to be real.
template <class M>
Field apply_multiplier(const Field& f, M&& m) {
  const TorusGrid& g = f.grid();
  std::vector<cplx> out(g.modes());
  auto in = f.spectral();
  const int h = g.half();
  for (int i2 = 0; i2 < g.n; ++i2) {
    const int xi2 = g.row_wavenumber(i2);
    for (int i1 = 0; i1 < h; ++i1) {
      const std::size_t idx = static_cast<std::size_t>(i2) * h + i1;
      out[idx] = in[idx] * cplx(m(i1, xi2));
    }
  }
  return Field::from_spectral(g, std::move(out));
}

/// Exact spectral derivative. Odd derivatives along an axis annihilate that
/// axis's Nyquist mode.
Field derivative(const Field& f, MultiIndex alpha);

/// -1/|xi|^2, with the mean mode mapped to zero.
Field inverse_laplacian(const Field& f);

/// Zero-padded physical samples on the 2n x 2n grid.
std::vector<double> oversample(const Field& f);

/// Builds a base-grid field from 2n x 2n samples, keeping modes with |xi_i| < n/2.
Field from_oversampled(const TorusGrid& grid, std::span<const double> samples);

/// Product of two fields formed on the padded grid and truncated back: exact
/// for the retained band whenever the factors have no Nyquist content.
Field multiply(const Field& a, const Field& b);

/// One term coeff * a * b of a bilinear sum.
struct ProductTerm {
  const Field* a;
  const Field* b;
  double coeff = 1.0;
};

/// sum_t coeff_t a_t b_t accumulated on the padded grid with a single
/// truncation at the end.
Field sum_of_products(std::span<const ProductTerm> terms);

/// Keeps only modes with |xi_1|, |xi_2| <= n/3.
Field dealias(const Field& f);

/// Sum with a fixed pairwise reduction tree, independent of thread count.
double pairwise_sum(std::span<const double> values);

double integral(const Field& f);
/// Integral of f*g over the torus, evaluated spectrally (exact for band-limited data).
double inner(const Field& f, const Field& g);

/// Sup norm evaluated on the 2x oversampled grid.
double sup_norm(const Field& f);

/// Pointwise sup of sqrt(sum_c w_c f_c^2) on the oversampled grid; empty
/// weights mean all ones.
double sup_norm(std::span<const Field> components, std::span<const double> weights = {});

/// Two-component vector field.
struct VecField {
  std::array<Field, 2> c;

  Field& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const Field& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  const TorusGrid& grid() const { return c[0].grid(); }

  static VecField zeros(const TorusGrid& g) { return {{Field::zeros(g), Field::zeros(g)}}; }

  VecField operator-() const { return {{-c[0], -c[1]}}; }
  VecField& operator+=(const VecField& o);
  VecField& operator-=(const VecField& o);
  VecField& operator*=(double s);
};

VecField operator+(VecField a, const VecField& b);
VecField operator-(VecField a, const VecField& b);
VecField operator*(double s, VecField a);

Field divergence(const VecField& v);
VecField gradient(const Field& f);
/// Scalar vorticity d_1 v^2 - d_2 v^1.
Field curl(const VecField& v);
/// v = (-d_2 psi, d_1 psi).
VecField perp_gradient(const Field& psi);
/// Helmholtz projection onto divergence-free fields (I - xi xi^T / |xi|^2);
/// the mean is kept.
VecField leray_project(const VecField& v);
/// (a . grad) b with exact products.
VecField advect(const VecField& a, const VecField& b);
Field advect(const VecField& a, const Field& b);

double sup_norm(const VecField& v);
/// Sup of the Frobenius norm of the velocity gradient.
double gradient_sup_norm(const VecField& v);

/// max |div v| <= tol * (||grad v||_C0 + 1).
bool is_divergence_free(const VecField& v, double tol = 1e-10);
/// Throws Error(NotDivergenceFree) when the check above fails.
void require_divergence_free(const VecField& v, const char* where);

/// All distinct partials of order D with their multiplicities, so that the
/// Frobenius norm of the full derivative tensor is sup_norm(fields, weights).
struct DerivativeSet {
  std::vector<Field> fields;
  std::vector<double> weights;
};
DerivativeSet derivatives_of_order(const Field& f, int order);

}  // namespace lpflow
