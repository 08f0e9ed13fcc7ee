#include "tkft/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tkft/bordism.hpp"
#include "tkft/corpus.hpp"
#include "tkft/error.hpp"
#include "tkft/flowchart.hpp"
#include "tkft/flowchart_tm.hpp"
#include "tkft/hamdemo.hpp"
#include "tkft/murec.hpp"
#include "tkft/tm_format.hpp"

namespace tkft {

namespace {

std::string outcome_text(const RunResult& r) {
  return r.outcome == RunResult::Outcome::Halted ? "halted" : "out-of-fuel";
}

void finish(SuiteReport& r, std::ostringstream& os) {
  os << "result " << (r.passed ? "pass" : "fail") << '\n';
  r.text = os.str();
}

TuringMachine compiled_machine(const std::string& program) {
  return flowchart_to_tm(compile_to_flowchart(corpus::program(program)));
}

std::vector<std::vector<Natural>> grid(std::size_t arity, int hi) {
  std::vector<std::vector<Natural>> out{{}};
  for (std::size_t k = 0; k < arity; ++k) {
    std::vector<std::vector<Natural>> next;
    for (const auto& prefix : out)
      for (int v = 0; v <= hi; ++v) {
        auto row = prefix;
        row.emplace_back(v);
        next.push_back(std::move(row));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, GeneralizedShift>> corpus_shifts(std::uint64_t seed) {
  std::vector<std::pair<std::string, GeneralizedShift>> out;
  out.emplace_back("full-shift", corpus::full_shift());
  out.emplace_back("jump-completion", corpus::jump_completion());
  out.emplace_back("identity-r2", GeneralizedShift::identity(2));
  Rng rng(seed);
  for (int states = 1; states <= 3; ++states)
    out.emplace_back("reversible-machine-" + std::to_string(states),
                     compile_tm(corpus::random_reversible_machine(rng, states)));
  for (int r = 1; r <= 3; ++r)
    out.emplace_back("permutation-r" + std::to_string(r),
                     corpus::random_permutation_shift(rng, r, 4));
  return out;
}

SuiteReport verify_conjugacy_tm_gshift(const SuiteOptions& o, int machines, int configs,
                                       int steps) {
  SuiteReport r{"conjugacy-tm-gshift", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << " seed " << o.seed << '\n';
  os << "machines " << machines << " configs " << configs << " steps " << steps << '\n';
  Rng rng(o.seed);
  std::size_t checks = 0, failures = 0;
  for (int i = 0; i < machines; ++i) {
    const TuringMachine m = corpus::random_machine(rng, 4);
    const Encoding enc = Encoding::standard(m);
    const GeneralizedShift s = compile_tm(m, enc);
    for (int j = 0; j < configs; ++j) {
      Configuration c = corpus::random_configuration(rng, m, 6);
      BiWord w = encode_config(m, enc, c);
      for (int k = 1; k <= steps; ++k) {
        if (auto next = step(m, c)) c = std::move(*next);
        w = apply(s, w);
        ++checks;
        if (w != encode_config(m, enc, c)) {
          if (failures++ == 0)
            os << "counterexample machine " << i << " config " << j << " step " << k << ": "
               << format_biword(w) << " vs " << format_biword(encode_config(m, enc, c)) << '\n'
               << format_machine(m);
          break;
        }
      }
    }
  }
  os << "checks " << checks << " failures " << failures << '\n';
  r.passed = failures == 0;
  finish(r, os);
  return r;
}

SuiteReport verify_conjugacy_gshift_blockmap(const SuiteOptions& o, int words) {
  SuiteReport r{"conjugacy-gshift-blockmap", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << " seed " << o.seed << " words " << words << '\n';
  Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  for (const auto& [name, s] : corpus_shifts(o.seed)) {
    const BlockMap f = gshift_to_blockmap(s);
    std::size_t failures = 0;
    for (int i = 0; i < words; ++i) {
      const BiWord t = corpus::random_biword(rng, 8);
      const CantorPoint want = kappa(apply(s, t));
      CantorPoint got;
      try {
        got = apply_blockmap(f, kappa(t));
      } catch (const DomainGap&) {
        got = {-1, -1};
      }
      if (got != want && failures++ == 0)
        os << "counterexample " << name << " on " << format_biword(t) << ": "
           << format_point(got) << " vs " << format_point(want) << '\n';
    }
    os << name << " r " << s.r() << " pieces " << f.pieces.size() << " failures " << failures
       << '\n';
    if (failures) r.passed = false;
  }
  finish(r, os);
  return r;
}

SuiteReport verify_volume(const SuiteOptions& o) {
  SuiteReport r{"volume", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << '\n';
  auto check = [&](const std::string& name, const BlockMap& f) {
    const auto v = check_volume(f);
    const auto d = check_disjoint(f);
    os << name << " pieces " << f.pieces.size() << " source-area " << to_string(v.source_area)
       << " target-area " << to_string(v.target_area) << " violations " << v.violations.size()
       << (d.ok() ? "" : " overlapping-blocks") << '\n';
    for (const auto& bad : v.violations)
      os << "  piece " << bad.piece << ": " << bad.reason << '\n';
    if (d.sources) os << "  sources " << d.sources->first << " and " << d.sources->second << " overlap\n";
    if (d.targets) os << "  targets " << d.targets->first << " and " << d.targets->second << " overlap\n";
    if (!v.ok() || !d.ok()) r.passed = false;
  };
  if (o.blockmap) {
    check("input", *o.blockmap);
  } else {
    for (const auto& [name, s] : corpus_shifts(o.seed)) check(name, gshift_to_blockmap(s));
    ThickenOptions allow;
    allow.allow_irreversible = true;
    const std::pair<std::string, TuringMachine> machines[] = {
        {"succ1", corpus::succ1()}, {"add", corpus::add_unary()}, {"mul", compiled_machine("mul")}};
    for (const auto& [name, m] : machines) {
      const auto sk = thicken(m, allow);
      BlockMap all;
      bool ok = true;
      for (const auto& t : sk.tubes()) {
        const auto v = check_volume(t.map);
        ok = ok && v.ok();
        all.pieces.insert(all.pieces.end(), t.map.pieces.begin(), t.map.pieces.end());
      }
      const auto v = check_volume(all);
      os << "tubes of " << name << " count " << sk.tubes().size() << " pieces " << all.pieces.size()
         << " per-piece " << (v.violations.empty() && ok ? "ok" : "violated") << '\n';
      if (!v.violations.empty() || !ok) r.passed = false;
    }
  }
  finish(r, os);
  return r;
}

SuiteReport verify_betti(const SuiteOptions& o, int graphs) {
  SuiteReport r{"betti", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << " seed " << o.seed << " graphs " << graphs << '\n';
  Rng rng(o.seed);
  std::size_t mismatches = 0;
  for (int i = 0; i < graphs; ++i) {
    const auto g = corpus::random_graph(rng, 12, 20);
    const auto b = betti1(g), f = forest_cycle_dimension(g);
    if (b != f && mismatches++ == 0)
      os << "counterexample graph " << i << ": betti1 " << b << " forest " << f << '\n';
  }
  os << "random graphs mismatches " << mismatches << '\n';
  if (mismatches) r.passed = false;

  os << "program b1 loop_count\n";
  for (const auto& p : corpus::programs()) {
    const auto fc = compile_to_flowchart(parse_program(p.source));
    const auto g = build_graph(flowchart_to_tm(fc));
    os << p.name << ' ' << betti1(g) << ' ' << loop_count(fc) << '\n';
  }

  const auto succ = build_graph(corpus::succ1());
  const auto s_b1 = betti1(succ), s_loops = control_loop_count(succ);
  os << "succ1 b1 " << s_b1 << " control loops " << s_loops << '\n';
  if (s_b1 > s_loops) r.passed = false;
  const auto add = build_graph(corpus::add_unary());
  const auto a_b1 = betti1(add);
  const auto a_loops = loop_count(compile_to_flowchart(corpus::program("add")));
  os << "add b1 " << a_b1 << " flowchart loops " << a_loops << '\n';
  if (a_b1 > a_loops) r.passed = false;
  finish(r, os);
  return r;
}

SuiteReport verify_reach(const SuiteOptions& o) {
  SuiteReport r{"reach", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << " fuel " << o.fuel << '\n';
  ThickenOptions allow;
  allow.allow_irreversible = true;
  struct Case {
    std::string name;
    TuringMachine m;
    int hi;
  };
  const Case cases[] = {{"succ1", corpus::succ1(), 20},
                        {"add", corpus::add_unary(), 10},
                        {"mul", compiled_machine("mul"), 10}};
  for (const auto& c : cases) {
    const auto sk = thicken(c.m, allow);
    std::size_t inputs = 0, halted = 0, failures = 0;
    for (const auto& args : grid(input_arity(c.m), c.hi)) {
      ++inputs;
      const auto run_result = run(c.m, initial_configuration(c.m, args), o.fuel);
      const auto trace = reach(sk, args, o.fuel);
      const bool run_halted = run_result.outcome == RunResult::Outcome::Halted;
      const bool reached = trace.outcome == ReachTrace::Outcome::Reached;
      bool same = run_halted == reached && run_result.steps == trace.steps;
      if (same && run_halted) same = decode_output(c.m, run_result.config.tape) == trace.output;
      halted += run_halted;
      if (!same && failures++ == 0)
        os << "counterexample " << c.name << " input " << format_inputs(args) << ": run "
           << outcome_text(run_result) << " steps " << run_result.steps << ", reach "
           << (reached ? "reached" : "diverged") << " steps " << trace.steps << '\n';
    }
    os << c.name << " inputs " << inputs << " halted " << halted << " failures " << failures
       << '\n';
    if (failures || halted != inputs) r.passed = false;
  }
  finish(r, os);
  return r;
}

SuiteReport verify_lenc(const SuiteOptions& o) {
  SuiteReport r{"lenc", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << " fuel " << o.fuel << '\n';
  const auto m = corpus::succ1();
  const auto sk = thicken(m);
  const auto scaled = sk.rescaled(3);
  const auto rows = conjecture_report(sk, 1, 100, o.fuel);
  std::size_t failures = 0;
  for (const auto& row : rows) {
    const auto n = row.n.convert_to<std::uint64_t>();
    const auto t = run(m, initial_configuration(m, std::vector<Natural>{row.n}), o.fuel);
    const auto l3 = length_complexity(scaled, {row.n}, o.fuel);
    const bool ok = row.reached && t.outcome == RunResult::Outcome::Halted && row.steps == n + 1 &&
                    t.steps == n + 1 && row.length == Rational(row.steps) && l3 &&
                    *l3 == 3 * row.length;
    if (!ok && failures++ == 0) os << "counterexample n " << n << '\n';
  }
  os << conjecture_csv(rows);
  os << "inputs " << rows.size() << " failures " << failures << '\n';
  r.passed = failures == 0;
  finish(r, os);
  return r;
}

SuiteReport verify_oracle_murec(const SuiteOptions& o) {
  SuiteReport r{"oracle-murec", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << " fuel " << o.fuel << '\n';
  os << "program inputs agree tm-steps-max loops b1\n";
  for (const std::string name : {"succ", "add", "mul", "tsub", "mu", "nozero"}) {
    const auto e = corpus::program(name);
    const auto fc = compile_to_flowchart(e);
    const auto m = flowchart_to_tm(fc);
    const bool diverging = name == "nozero";
    std::size_t inputs = 0, agree = 0;
    std::uint64_t max_steps = 0;
    for (const auto& args : grid(static_cast<std::size_t>(e->arity()), 10)) {
      ++inputs;
      const auto want = eval(e, args, o.fuel);
      const auto got = run(m, initial_configuration(m, args), o.fuel);
      max_steps = std::max(max_steps, got.steps);
      bool ok;
      if (diverging)
        ok = want.outcome == EvalResult::Outcome::OutOfFuel &&
             got.outcome == RunResult::Outcome::OutOfFuel;
      else
        ok = want.outcome == EvalResult::Outcome::Value &&
             got.outcome == RunResult::Outcome::Halted &&
             decode_output(m, got.config.tape) == want.values;
      agree += ok;
      if (!ok && inputs - agree == 1)
        os << "counterexample " << name << " input " << format_inputs(args) << ": eval "
           << (want.outcome == EvalResult::Outcome::Value ? format_inputs(want.values) : "out-of-fuel")
           << ", machine " << outcome_text(got) << ' '
           << (got.outcome == RunResult::Outcome::Halted ? format_inputs(decode_output(m, got.config.tape)) : "")
           << '\n';
    }
    os << name << ' ' << inputs << ' ' << agree << ' ' << max_steps << ' ' << loop_count(fc) << ' '
       << betti1(build_graph(m)) << '\n';
    if (agree != inputs) r.passed = false;
  }
  finish(r, os);
  return r;
}

SuiteReport verify_hamdemo(const SuiteOptions&) {
  SuiteReport r{"hamdemo", true, {}};
  std::ostringstream os;
  os << "suite " << r.name << " T 1 h 1e-3\n";
  struct Field {
    std::string name;
    PolyVectorField x;
    std::vector<Real> q0;
    std::vector<Real> (*exact)(Real);
  };
  const Field fields[] = {{"rotation", PolyVectorField::rotation(), {1, 0}, rotation_from_unit},
                          {"cubic", PolyVectorField::cubic(), {0.5L, 0}, nullptr}};
  for (const auto& f : fields) {
    const auto u = verify_universality(f.x, f.q0, 1, 1e-3L);
    const auto c = convergence(f.x, f.q0, 1, 1e-3L, f.exact);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s max|p| %.3Le max|q-qref| %.3Le ratio %.2Lf\n",
                  f.name.c_str(), u.max_p, u.max_dq, c.ratio);
    os << buf;
    if (u.aborted || !(u.max_p <= 1e-6L) || !(u.max_dq <= 1e-5L) || !(c.ratio >= 12) ||
        !(c.ratio <= 20))
      r.passed = false;
  }
  finish(r, os);
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "conjugacy-tm-gshift", "conjugacy-gshift-blockmap", "volume", "betti", "oracle-murec",
      "lenc",                "reach",                     "hamdemo"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "conjugacy-tm-gshift") return verify_conjugacy_tm_gshift(o);
  if (name == "conjugacy-gshift-blockmap") return verify_conjugacy_gshift_blockmap(o);
  if (name == "volume") return verify_volume(o);
  if (name == "betti") return verify_betti(o);
  if (name == "oracle-murec") return verify_oracle_murec(o);
  if (name == "lenc") return verify_lenc(o);
  if (name == "reach") return verify_reach(o);
  if (name == "hamdemo") return verify_hamdemo(o);
  throw MalformedInput("unknown suite '" + name + "'");
}

}  // namespace tkft
