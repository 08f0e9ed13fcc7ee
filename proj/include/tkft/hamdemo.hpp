#pragma once

#include <span>
#include <string>
#include <vector>

namespace tkft {

using Real = long double;

struct Monomial {
  Real coef = 0;
  std::vector<int> exponents;
};

// A polynomial in n variables as a list of monomials.
struct Polynomial {
  int n = 0;
  std::vector<Monomial> terms;

  Real operator()(std::span<const Real> q) const;
  Polynomial derivative(int k) const;
};

// X(q) = sum_k x_k(q) d/dq_k on a chart of R^n.
struct PolyVectorField {
  std::vector<Polynomial> components;

  int dim() const { return static_cast<int>(components.size()); }

  static PolyVectorField rotation();  // (-q2, q1)
  static PolyVectorField cubic();     // (q2, -q1 - q1^3)
  static PolyVectorField zero(int n);
};

// Components separated by ';', each a list of `coef@e1,...,en` terms.
// "-1@0,1 ; 1@1,0" is the rotation field. Throws MalformedInput.
PolyVectorField parse_field(const std::string& text);
std::string format_field(const PolyVectorField& x);

struct PhaseState {
  std::vector<Real> q;
  std::vector<Real> p;
};

// Hamilton's equations for H(q, p) = sum_i p_i x_i(q):
// dq_k/dt = x_k(q), dp_k/dt = -sum_i p_i dx_i/dq_k.
PhaseState hamiltonian_rhs(const PolyVectorField& x, const PhaseState& s);

struct UniversalityReport {
  Real max_p = 0;          // max |p(t)| along the lifted orbit from (q0, 0)
  Real max_dq = 0;         // max |q(t) - q_ref(t)|, q_ref solving dq/dt = X(q)
  std::size_t steps = 0;
  Real t_end = 0;
  bool aborted = false;    // a non-finite value appeared; the maxima cover t <= t_end
  std::vector<std::vector<Real>> samples;  // t, q, p, q_ref rows when requested
};

// Classical RK4 with step h on [0, T] for both systems.
UniversalityReport verify_universality(const PolyVectorField& x, std::span<const Real> q0, Real T,
                                       Real h, std::size_t sample_every = 0);

struct ConvergenceReport {
  Real error_h = 0;   // max |q_h(t) - q*(t)| over the grid of h
  Real error_h2 = 0;  // same with h/2
  Real ratio = 0;
};

// Discretisation error of the lifted system at h and h/2 against q*, either
// the exact flow `exact(t)` or, when none is given, RK4 at h/128.
ConvergenceReport convergence(const PolyVectorField& x, std::span<const Real> q0, Real T, Real h,
                              std::vector<Real> (*exact)(Real t) = nullptr);

// Exact flow of the rotation field from (1, 0).
std::vector<Real> rotation_from_unit(Real t);

std::string universality_text(const std::string& name, const UniversalityReport& r,
                              const ConvergenceReport& c);
std::string universality_csv(const UniversalityReport& r, int n);

}  // namespace tkft
