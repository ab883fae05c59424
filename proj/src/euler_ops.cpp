#include "lpflow/euler_ops.hpp"

#include "lpflow/error.hpp"

namespace lpflow {

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  c11 += o.c11;
  c12 += o.c12;
  c22 += o.c22;
  return *this;
}
SymTensor& SymTensor::operator-=(const SymTensor& o) {
  c11 -= o.c11;
  c12 -= o.c12;
  c22 -= o.c22;
  return *this;
}
SymTensor& SymTensor::operator*=(double s) {
  c11 *= s;
  c12 *= s;
  c22 *= s;
  return *this;
}
SymTensor SymTensor::operator-() const { return {-c11, -c12, -c22}; }

double SymTensor::sup_norm() const {
  const Field f[] = {c11, c12, c22};
  const double w[] = {1.0, 2.0, 1.0};
  return lpflow::sup_norm(std::span<const Field>(f), std::span<const double>(w));
}

SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
SymTensor operator*(double s, SymTensor a) { return a *= s; }

SymTensor sym_outer(const VecField& a, const VecField& b) {
  const ProductTerm t11[] = {{&a[0], &b[0], 1.0}};
  const ProductTerm t22[] = {{&a[1], &b[1], 1.0}};
  const ProductTerm t12[] = {{&a[0], &b[1], 0.5}, {&a[1], &b[0], 0.5}};
  return {sum_of_products(t11), sum_of_products(t12), sum_of_products(t22)};
}

VecField divergence(const SymTensor& t) {
  return {{derivative(t.c11, {1, 0}) + derivative(t.c12, {0, 1}), derivative(t.c12, {1, 0}) + derivative(t.c22, {0, 1})}};
}

Field div_div(const SymTensor& t) {
  return derivative(t.c11, {2, 0}) + 2.0 * derivative(t.c12, {1, 1}) + derivative(t.c22, {0, 2});
}

EulerSnapshot::EulerSnapshot(double time, VecField v, int jet_order)
    : time_(time), jet_(velocity_time_jet(v, jet_order)), pressure_(lpflow::pressure(jet_.value())) {}

Field pressure_form(const VecField& a, const VecField& b) { return -inverse_laplacian(div_div(sym_outer(a, b))); }

SymTensor reynolds_form(const LPBank& bank, int k, const VecField& a, const VecField& b) {
  const VecField ga = bank.leq(a, k);
  const VecField gb = &a == &b ? ga : bank.leq(b, k);
  const SymTensor full = sym_outer(a, b);
  return sym_outer(ga, gb) - map_components(full, [&](const Field& f) { return bank.leq(f, k); });
}

Field truncated_pressure_form(const LPBank& bank, int k, const VecField& a, const VecField& b) {
  const VecField ga = bank.leq(a, k);
  const VecField gb = &a == &b ? ga : bank.leq(b, k);
  return -inverse_laplacian(bank.leq(div_div(sym_outer(ga, gb)), k));
}

Field pressure(const VecField& v) {
  require_divergence_free(v, "pressure");
  return pressure_form(v, v);
}

SymTensor reynolds_stress(const LPBank& bank, const VecField& v, int k) { return reynolds_form(bank, k, v, v); }

StressTriple reynolds_trichotomy(const LPBank& bank, const VecField& v, int k) {
  const VecField g = bank.leq(v, k);
  const VecField h = v - g;
  const VecField f = bank.leq(v, k + 2) - g;
  auto P = [&](const Field& x) { return bank.leq(x, k); };
  auto PT = [&](const SymTensor& t) { return map_components(t, P); };
  const VecField pf = bank.leq(f, k);
  const VecField pg = bank.leq(g, k);

  StressTriple out;
  out.hh = -PT(sym_outer(h, h));
  // P(F^j G^l) - G^l P(F^j) + P(G^j F^l) - G^j P(F^l), symmetric in (j, l).
  out.hl = -(2.0 * (PT(sym_outer(f, g)) - sym_outer(g, pf)));
  // P(G^j G^l) - G^j P(G^l) - G^l P(G^j) + G^j G^l.
  out.ll = -(PT(sym_outer(g, g)) - 2.0 * sym_outer(g, pg) + sym_outer(g, g));
  return out;
}

Field truncated_pressure(const LPBank& bank, const VecField& v, int k) {
  return truncated_pressure_form(bank, k, v, v);
}

Field pressure_increment(const LPBank& bank, const VecField& v, int k) {
  return truncated_pressure(bank, v, k + 1) - truncated_pressure(bank, v, k);
}

namespace {

// d_l a^j d_j b^l, symmetrized in (a, b); equals d_j d_l (a^j b^l) when both are divergence free.
Field gradient_contraction(const VecField& a, const VecField& b) {
  const Field a11 = derivative(a[0], {1, 0}), a12 = derivative(a[0], {0, 1});
  const Field a21 = derivative(a[1], {1, 0}), a22 = derivative(a[1], {0, 1});
  const Field b11 = derivative(b[0], {1, 0}), b12 = derivative(b[0], {0, 1});
  const Field b21 = derivative(b[1], {1, 0}), b22 = derivative(b[1], {0, 1});
  // a^j_{,l} b^l_{,j}: (1,1) a11 b11, (1,2) a12 b21, (2,1) a21 b12, (2,2) a22 b22.
  const ProductTerm t[] = {{&a11, &b11, 1.0}, {&a12, &b21, 1.0}, {&a21, &b12, 1.0}, {&a22, &b22, 1.0}};
  return sum_of_products(t);
}

}  // namespace

PressureParts pressure_increment_parts(const LPBank& bank, const VecField& v, int k) {
  const VecField b = bank.leq(v, k + 1);
  const VecField w = bank.shell(v, k + 1);
  const VecField low = bank.leq(v, k - 4);
  const VecField mid = bank.band(v, k - 3, k);

  PressureParts out;
  out.ll = -bank.kernel_op(gradient_contraction(b, b), k + 1, Symbol::InvLapShell);
  // d_l low^j w^l = (w . grad) low^j.
  const VecField adv = advect(w, low);
  const Field d = derivative(adv[0], {1, 0}) + derivative(adv[1], {0, 1});
  out.hl = -2.0 * inverse_laplacian(bank.band(d, k - 3, k));
  const SymTensor q = sym_outer(w, w) + 2.0 * sym_outer(mid, w);
  out.hh = -inverse_laplacian(bank.leq(div_div(q), k));
  return out;
}

PressureParts lp_pressure_parts(const LPBank& bank, const VecField& v, int k) {
  const VecField g = bank.leq(v, k);
  const VecField h = v - g;
  PressureParts out;
  out.ll = -bank.kernel_op(gradient_contraction(g, g), k, Symbol::InvLapShell);
  const VecField adv = advect(h, g);
  const Field d = derivative(adv[0], {1, 0}) + derivative(adv[1], {0, 1});
  out.hl = -2.0 * bank.kernel_op(d, k, Symbol::InvLapShell);
  out.hh = -bank.kernel_op(div_div(sym_outer(h, h)), k, Symbol::InvLapShell);
  return out;
}

DerivativeSet lp_pressure_piece(const LPBank& bank, const VecField& v, int k, int D) {
  if (D < 0 || D > 2) fail(ErrorKind::InvalidArgument, "lp_pressure_piece supports D in {0, 1, 2}");
  return derivatives_of_order(lp_pressure_parts(bank, v, k).sum(), D);
}

const char* target_name(AdvTarget t) {
  switch (t) {
    case AdvTarget::ShellNext: return "Pk1_v";
    case AdvTarget::LowVelocity: return "Pleqk_v";
    case AdvTarget::LowGradient: return "grad_Pleqk_v";
    case AdvTarget::ShellPressure: return "Pk_p";
    case AdvTarget::PressureIncrement: return "delta_p";
    case AdvTarget::TruncatedPressureGradient: return "grad_p_k";
  }
  return "?";
}

AdvTarget parse_target(const std::string& name) {
  for (AdvTarget t : {AdvTarget::ShellNext, AdvTarget::LowVelocity, AdvTarget::LowGradient, AdvTarget::ShellPressure,
                      AdvTarget::PressureIncrement, AdvTarget::TruncatedPressureGradient})
    if (name == target_name(t)) return t;
  fail(ErrorKind::InvalidArgument, "unsupported advective-derivative target '" + name + "'");
}

double Components::sup_norm() const { return lpflow::sup_norm(fields, weights); }

std::vector<FieldJet> target_jets(const LPBank& bank, const VecJet& vjet, int k, AdvTarget target, int m) {
  vjet.require_order(m, "target jet");
  const VecJet v = vjet.truncated(m);
  std::vector<FieldJet> out;
  auto components_of = [&](const VecJet& j) {
    out.push_back(map(j, [](const VecField& x) { return x[0]; }));
    out.push_back(map(j, [](const VecField& x) { return x[1]; }));
  };
  switch (target) {
    case AdvTarget::ShellNext:
      components_of(map(v, [&](const VecField& x) { return bank.shell(x, k + 1); }));
      break;
    case AdvTarget::LowVelocity:
      components_of(map(v, [&](const VecField& x) { return bank.leq(x, k); }));
      break;
    case AdvTarget::LowGradient:
      for (int j = 0; j < 2; ++j)
        for (MultiIndex e : {MultiIndex{1, 0}, MultiIndex{0, 1}})
          out.push_back(map(v, [&](const VecField& x) { return derivative(bank.leq(x[j], k), e); }));
      break;
    case AdvTarget::ShellPressure:
      out.push_back(leibniz(v, [&](const VecField& a, const VecField& b) { return bank.shell(pressure_form(a, b), k); }));
      break;
    case AdvTarget::PressureIncrement:
      out.push_back(leibniz(v, [&](const VecField& a, const VecField& b) {
        return truncated_pressure_form(bank, k + 1, a, b) - truncated_pressure_form(bank, k, a, b);
      }));
      break;
    case AdvTarget::TruncatedPressureGradient: {
      const FieldJet p = leibniz(v, [&](const VecField& a, const VecField& b) { return truncated_pressure_form(bank, k, a, b); });
      out.push_back(map(p, [](const Field& x) { return derivative(x, {1, 0}); }));
      out.push_back(map(p, [](const Field& x) { return derivative(x, {0, 1}); }));
      break;
    }
  }
  return out;
}

Components advective_derivative(const LPBank& bank, const EulerSnapshot& s, int k, AdvTarget target, int r) {
  if (r < 1 || r > 2) fail(ErrorKind::InvalidArgument, "advective derivative order must be 1 or 2");
  s.jet().require_order(r, "advective_derivative");
  const VecJet u = map(s.jet().truncated(r - 1), [&](const VecField& x) { return bank.leq(x, k); });
  Components out;
  for (const FieldJet& j : target_jets(bank, s.jet(), k, target, r)) {
    out.fields.push_back(material_derivative_value(u, j, r));
    out.weights.push_back(1.0);
  }
  return out;
}

VecField shell_advective_derivative(const LPBank& bank, const EulerSnapshot& s, int k, int r) {
  if (r < 1 || r > 2) fail(ErrorKind::InvalidArgument, "advective derivative order must be 1 or 2");
  s.jet().require_order(r, "shell_advective_derivative");
  auto rhs = [&](const VecField& a, const VecField& b) {
    const VecField wa = bank.shell(a, k + 1), wb = bank.shell(b, k + 1);
    const VecField ba = bank.leq(a, k + 1), bb = bank.leq(b, k + 1);
    VecField out = -0.5 * (advect(wa, bb) + advect(wb, ba));
    out -= gradient(bank.shell(pressure_form(a, b), k + 1));
    out += divergence(reynolds_form(bank, k + 1, a, b) - reynolds_form(bank, k, a, b));
    return out;
  };
  const VecJet e = leibniz(s.jet(), s.jet(), rhs, r - 1);
  if (r == 1) return e.value();
  const VecJet u = map(s.jet().truncated(0), [&](const VecField& x) { return bank.leq(x, k); });
  return material_derivative(u, e).value();
}

double euler_identity_residual(const EulerSnapshot& s) {
  s.jet().require_order(1, "euler_identity_residual");
  const VecField& v = s.velocity();
  const VecField q = advect(v, v) + gradient(s.pressure());
  const VecField res = s.jet()[1] + VecField{{dealias(q[0]), dealias(q[1])}};
  return sup_norm(res);
}

double truncated_energy(const LPBank& bank, const VecField& v, int k) {
  const VecField g = bank.leq(v, k);
  return 0.5 * (inner(g[0], g[0]) + inner(g[1], g[1]));
}

double energy_increment(const LPBank& bank, const VecField& v, int k) {
  return truncated_energy(bank, v, k + 1) - truncated_energy(bank, v, k);
}

double energy_flux(const LPBank& bank, const VecField& v, int k) {
  const VecField g = bank.leq(v, k);
  const SymTensor r = reynolds_stress(bank, v, k);
  double acc = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) acc += inner(derivative(g[l], j == 0 ? MultiIndex{1, 0} : MultiIndex{0, 1}), r(j, l));
  return -acc;
}

double energy_increment_rate(const LPBank& bank, const VecField& v, int k) {
  return energy_flux(bank, v, k + 1) - energy_flux(bank, v, k);
}

double kinetic_energy(const VecField& v) { return 0.5 * (inner(v[0], v[0]) + inner(v[1], v[1])); }

double enstrophy(const VecField& v) {
  const Field w = curl(v);
  return 0.5 * inner(w, w);
}

}  // namespace lpflow
