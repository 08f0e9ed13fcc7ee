#include "tkft/hamdemo.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "tkft/error.hpp"

namespace tkft {

Real Polynomial::operator()(std::span<const Real> q) const {
  Real sum = 0;
  for (const auto& m : terms) {
    Real v = m.coef;
    for (int k = 0; k < n; ++k)
      for (int e = 0; e < m.exponents[static_cast<std::size_t>(k)]; ++e) v *= q[static_cast<std::size_t>(k)];
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int k) const {
  Polynomial d{n, {}};
  for (const auto& m : terms) {
    const int e = m.exponents[static_cast<std::size_t>(k)];
    if (e == 0 || m.coef == 0) continue;
    Monomial t = m;
    t.coef *= e;
    --t.exponents[static_cast<std::size_t>(k)];
    d.terms.push_back(std::move(t));
  }
  return d;
}

PolyVectorField PolyVectorField::rotation() { return parse_field("-1@0,1 ; 1@1,0"); }
PolyVectorField PolyVectorField::cubic() { return parse_field("1@0,1 ; -1@1,0 -1@3,0"); }

PolyVectorField PolyVectorField::zero(int n) {
  PolyVectorField x;
  x.components.assign(static_cast<std::size_t>(n), Polynomial{n, {}});
  return x;
}

PolyVectorField parse_field(const std::string& text) {
  std::vector<std::string> parts{""};
  for (char c : text) {
    if (c == ';') parts.emplace_back();
    else parts.back().push_back(c);
  }
  const int n = static_cast<int>(parts.size());
  PolyVectorField x;
  for (const auto& part : parts) {
    Polynomial p{n, {}};
    std::istringstream is(part);
    for (std::string term; is >> term;) {
      const auto at = term.find('@');
      if (at == std::string::npos) throw MalformedInput("term '" + term + "' needs coef@e1,...,en");
      Monomial m;
      try {
        std::size_t used = 0;
        m.coef = std::stold(term.substr(0, at), &used);
        if (used != at) throw std::invalid_argument("coef");
        std::string exps = term.substr(at + 1);
        for (char& c : exps)
          if (c == ',') c = ' ';
        std::istringstream es(exps);
        for (std::string e; es >> e;) {
          std::size_t u = 0;
          const int v = std::stoi(e, &u);
          if (u != e.size() || v < 0) throw std::invalid_argument("exponent");
          m.exponents.push_back(v);
        }
      } catch (const std::exception&) {
        throw MalformedInput("cannot read term '" + term + "'");
      }
      if (static_cast<int>(m.exponents.size()) != n)
        throw MalformedInput("term '" + term + "' needs " + std::to_string(n) + " exponents");
      p.terms.push_back(std::move(m));
    }
    x.components.push_back(std::move(p));
  }
  return x;
}

std::string format_field(const PolyVectorField& x) {
  std::ostringstream os;
  for (int i = 0; i < x.dim(); ++i) {
    if (i) os << " ;";
    for (const auto& m : x.components[static_cast<std::size_t>(i)].terms) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%Lg", m.coef);
      os << ' ' << buf << '@';
      for (std::size_t k = 0; k < m.exponents.size(); ++k) os << (k ? "," : "") << m.exponents[k];
    }
  }
  return os.str();
}

namespace {

struct Lifted {
  const PolyVectorField& x;
  std::vector<std::vector<Polynomial>> jacobian;  // jacobian[i][k] = dx_i/dq_k

  explicit Lifted(const PolyVectorField& field) : x(field) {
    const int n = x.dim();
    jacobian.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) jacobian[static_cast<std::size_t>(i)].push_back(x.components[static_cast<std::size_t>(i)].derivative(k));
  }

  // y = (q, p).
  void operator()(const std::vector<Real>& y, std::vector<Real>& dy) const {
    const std::size_t n = x.components.size();
    std::span<const Real> q(y.data(), n);
    for (std::size_t k = 0; k < n; ++k) {
      dy[k] = x.components[k](q);
      Real s = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (y[n + i] != 0) s += y[n + i] * jacobian[i][k](q);
      dy[n + k] = -s;
    }
  }
};

using Rhs = std::function<void(const std::vector<Real>&, std::vector<Real>&)>;

void rk4_step(const Rhs& f, std::vector<Real>& y, Real h) {
  const std::size_t m = y.size();
  std::vector<Real> k1(m), k2(m), k3(m), k4(m), tmp(m);
  f(y, k1);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h / 2 * k1[i];
  f(tmp, k2);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h / 2 * k2[i];
  f(tmp, k3);
  for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h * k3[i];
  f(tmp, k4);
  for (std::size_t i = 0; i < m; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

Real norm(std::span<const Real> v) {
  Real s = 0;
  for (Real a : v) s += a * a;
  return std::sqrt(s);
}

bool finite(const std::vector<Real>& v) {
  for (Real a : v)
    if (!std::isfinite(a)) return false;
  return true;
}

std::size_t step_count(Real T, Real h) {
  if (!(h > 0) || !(T > 0)) throw MalformedInput("horizon and step must be positive");
  return static_cast<std::size_t>(std::llround(T / h));
}

// q along the lifted orbit from (q0, 0) at every `every`-th step.
std::vector<std::vector<Real>> lifted_q(const PolyVectorField& x, std::span<const Real> q0,
                                        std::size_t steps, Real h, std::size_t every) {
  const std::size_t n = q0.size();
  const Lifted lifted(x);
  std::vector<Real> y(2 * n, 0);
  std::copy(q0.begin(), q0.end(), y.begin());
  std::vector<std::vector<Real>> out{std::vector<Real>(q0.begin(), q0.end())};
  for (std::size_t s = 1; s <= steps; ++s) {
    rk4_step(std::cref(lifted), y, h);
    if (!finite(y)) throw MalformedInput("integration produced a non-finite value");
    if (s % every == 0) out.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return out;
}

}  // namespace

PhaseState hamiltonian_rhs(const PolyVectorField& x, const PhaseState& s) {
  const std::size_t n = x.components.size();
  if (s.q.size() != n || s.p.size() != n) throw MalformedInput("state dimension mismatch");
  std::vector<Real> y(s.q), dy(2 * n);
  y.insert(y.end(), s.p.begin(), s.p.end());
  const Lifted lifted(x);
  lifted(y, dy);
  return {std::vector<Real>(dy.begin(), dy.begin() + static_cast<std::ptrdiff_t>(n)),
          std::vector<Real>(dy.begin() + static_cast<std::ptrdiff_t>(n), dy.end())};
}

UniversalityReport verify_universality(const PolyVectorField& x, std::span<const Real> q0, Real T,
                                       Real h, std::size_t sample_every) {
  const std::size_t n = x.components.size();
  if (q0.size() != n) throw MalformedInput("initial point has the wrong dimension");
  const std::size_t steps = step_count(T, h);
  const Lifted lifted(x);
  const Rhs reference = [&](const std::vector<Real>& q, std::vector<Real>& dq) {
    for (std::size_t k = 0; k < n; ++k) dq[k] = x.components[k](q);
  };
  std::vector<Real> y(2 * n, 0), qr(q0.begin(), q0.end());
  std::copy(q0.begin(), q0.end(), y.begin());
  UniversalityReport r;
  auto sample = [&](Real t) {
    std::vector<Real> row{t};
    row.insert(row.end(), y.begin(), y.end());
    row.insert(row.end(), qr.begin(), qr.end());
    r.samples.push_back(std::move(row));
  };
  if (sample_every) sample(0);
  std::vector<Real> diff(n);
  for (std::size_t s = 1; s <= steps; ++s) {
    rk4_step(std::cref(lifted), y, h);
    rk4_step(reference, qr, h);
    if (!finite(y) || !finite(qr)) {
      r.aborted = true;
      break;
    }
    for (std::size_t k = 0; k < n; ++k) diff[k] = y[k] - qr[k];
    r.max_p = std::max(r.max_p, norm(std::span<const Real>(y.data() + n, n)));
    r.max_dq = std::max(r.max_dq, norm(diff));
    r.steps = s;
    r.t_end = static_cast<Real>(s) * h;
    if (sample_every && s % sample_every == 0) sample(r.t_end);
  }
  return r;
}

ConvergenceReport convergence(const PolyVectorField& x, std::span<const Real> q0, Real T, Real h,
                              std::vector<Real> (*exact)(Real t)) {
  const std::size_t steps = step_count(T, h);
  constexpr std::size_t fine = 128;
  std::vector<std::vector<Real>> truth;
  if (!exact) truth = lifted_q(x, q0, steps * fine, h / fine, 1);
  auto error = [&](std::size_t refine) {
    const auto path = lifted_q(x, q0, steps * refine, h / static_cast<Real>(refine), 1);
    Real worst = 0;
    std::vector<Real> diff(q0.size());
    for (std::size_t s = 0; s < path.size(); ++s) {
      const auto ref = exact ? exact(static_cast<Real>(s) * h / static_cast<Real>(refine))
                             : truth[s * (fine / refine)];
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = path[s][k] - ref[k];
      worst = std::max(worst, norm(diff));
    }
    return worst;
  };
  ConvergenceReport c;
  c.error_h = error(1);
  c.error_h2 = error(2);
  c.ratio = c.error_h2 > 0 ? c.error_h / c.error_h2 : 0;
  return c;
}

std::vector<Real> rotation_from_unit(Real t) { return {std::cos(t), std::sin(t)}; }

std::string universality_text(const std::string& name, const UniversalityReport& r,
                              const ConvergenceReport& c) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "field %s\nsteps %zu t_end %.6Lf%s\nmax |p| %.6Le\nmax |q - q_ref| %.6Le\n"
                "error(h) %.6Le\nerror(h/2) %.6Le\nratio %.4Lf\n",
                name.c_str(), r.steps, r.t_end, r.aborted ? " (aborted: non-finite value)" : "",
                r.max_p, r.max_dq, c.error_h, c.error_h2, c.ratio);
  return buf;
}

std::string universality_csv(const UniversalityReport& r, int n) {
  std::ostringstream os;
  os << "t";
  for (int k = 1; k <= n; ++k) os << ",q" << k;
  for (int k = 1; k <= n; ++k) os << ",p" << k;
  for (int k = 1; k <= n; ++k) os << ",qref" << k;
  os << '\n';
  char buf[64];
  for (const auto& row : r.samples) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12Le", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace tkft
