// tkft: compile, run, verify and draw the machine-to-flow pipeline.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tkft/bordism.hpp"
#include "tkft/cantor.hpp"
#include "tkft/error.hpp"
#include "tkft/flowchart.hpp"
#include "tkft/flowchart_tm.hpp"
#include "tkft/gshift.hpp"
#include "tkft/hamdemo.hpp"
#include "tkft/murec.hpp"
#include "tkft/tm.hpp"
#include "tkft/tm_format.hpp"
#include "tkft/verify.hpp"

using namespace tkft;

namespace {

constexpr int kVerifyFailed = 1;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MalformedInput("cannot write '" + path + "'");
  out << data;
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used == std::string(v).size()) return n;
  } catch (const std::exception&) {
  }
  throw MalformedInput(std::string(name) + " must be a natural number");
}

std::vector<Natural> parse_naturals(const std::string& text) {
  std::vector<Natural> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw MalformedInput("expected naturals separated by commas, got '" + text + "'");
    out.emplace_back(item);
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos)
      return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    const auto n = std::stoull(text);
    return {n, n};
  } catch (const std::exception&) {
    throw MalformedInput("expected a range like 1..100, got '" + text + "'");
  }
}

const std::vector<std::string> kStages = {"murec", "flowchart", "tm", "gshift", "blockmap"};

int stage_index(const std::string& s) {
  for (std::size_t i = 0; i < kStages.size(); ++i)
    if (kStages[i] == s) return static_cast<int>(i);
  throw MalformedInput("unknown format '" + s + "' (murec, flowchart, tm, gshift, blockmap)");
}

struct Artifact {
  std::optional<ExprPtr> expr;
  std::optional<Flowchart> chart;
  std::optional<TuringMachine> machine;
  std::optional<GeneralizedShift> shift;
  std::optional<BlockMap> blocks;
};

Artifact load_artifact(const std::string& stage, const std::string& text) {
  Artifact a;
  if (stage == "murec") a.expr = parse_program(text);
  else if (stage == "flowchart") a.chart = parse_flowchart(text);
  else if (stage == "tm") a.machine = parse_machine_any(text);
  else if (stage == "gshift") a.shift = parse_shift_any(text);
  else a.blocks = parse_blockmap_any(text);
  return a;
}

int cmd_compile(const std::string& from, const std::string& to, const std::string& input,
                const std::string& out, bool json) {
  const int a = stage_index(from), b = stage_index(to);
  if (b <= a)
    throw MalformedInput("unsupported edge " + from + " -> " + to +
                         " (the pipeline runs murec -> flowchart -> tm -> gshift -> blockmap)");
  Artifact art = load_artifact(from, read_file(input));
  std::ostringstream summary;
  for (int stage = a + 1; stage <= b; ++stage) {
    switch (stage) {
      case 1:
        art.chart = compile_to_flowchart(*art.expr);
        summary << "flowchart blocks " << art.chart->blocks.size() << " registers "
                << art.chart->registers << " loop_count " << loop_count(*art.chart) << '\n';
        break;
      case 2:
        art.machine = flowchart_to_tm(*art.chart);
        summary << "tm states " << art.machine->num_states() << " symbols "
                << art.machine->num_symbols() << " b1 " << betti1(build_graph(*art.machine))
                << " reversible " << (is_reversible(*art.machine).reversible ? "yes" : "no") << '\n';
        break;
      case 3: {
        const Encoding enc = Encoding::standard(*art.machine);
        art.shift = compile_tm(*art.machine, enc);
        summary << "gshift r " << art.shift->r() << " (state bits " << enc.state_width
                << ", symbol bits " << enc.symbol_width << ")\n";
        break;
      }
      case 4:
        art.blocks = gshift_to_blockmap(*art.shift);
        summary << "blockmap pieces " << art.blocks->pieces.size() << '\n';
        break;
    }
  }
  std::string data;
  switch (b) {
    case 1:
      data = format_flowchart(*art.chart);
      break;
    case 2:
      data = json ? machine_to_json(*art.machine).dump(2) + "\n" : format_machine(*art.machine);
      break;
    case 3:
      data = json ? shift_to_json(*art.shift).dump(2) + "\n" : format_shift(*art.shift);
      break;
    case 4:
      data = json ? blockmap_to_json(*art.blocks).dump(2) + "\n" : format_blockmap(*art.blocks);
      break;
  }
  write_output(out, data);
  (out.empty() || out == "-" ? std::cerr : std::cout) << summary.str();
  return 0;
}

std::vector<Natural> inputs_from(const std::string& input, const std::string& args) {
  if (!input.empty() && !args.empty()) throw MalformedInput("give either --input or --args");
  if (!input.empty()) return parse_naturals(input);
  if (!args.empty()) return parse_naturals(args);
  throw MalformedInput("this model needs --input or --args");
}

int cmd_run(const std::string& model, const std::string& file, const std::string& input,
            const std::string& args, const std::string& word, std::uint64_t fuel,
            const std::string& trace, const std::string& path_log, bool allow_irreversible) {
  const std::string text = read_file(file);
  if (model == "tm") {
    const auto m = parse_machine_any(text);
    const auto xs = inputs_from(input, args);
    Configuration c = initial_configuration(m, xs);
    std::ostringstream csv;
    csv << "step,state,tape\n";
    if (!trace.empty()) {
      std::uint64_t k = 0;
      csv << k << ',' << m.state_name(c.state) << ",\"" << format_tape(m, c.tape) << "\"\n";
      while (k < fuel) {
        auto next = step(m, c);
        if (!next) break;
        c = std::move(*next);
        ++k;
        csv << k << ',' << m.state_name(c.state) << ",\"" << format_tape(m, c.tape) << "\"\n";
      }
      write_output(trace, csv.str());
      c = initial_configuration(m, xs);
    }
    const auto r = run(m, c, fuel);
    if (r.outcome == RunResult::Outcome::Halted)
      std::cout << "Halted(" << format_inputs(decode_output(m, r.config.tape)) << ") steps "
                << r.steps << " state " << m.state_name(r.config.state) << '\n';
    else
      std::cout << "OutOfFuel(" << r.steps << ")\n";
    std::cout << "tape " << format_tape(m, r.config.tape) << '\n';
    return 0;
  }
  if (model == "bordism") {
    const auto m = parse_machine_any(text);
    ThickenOptions options;
    options.allow_irreversible = allow_irreversible;
    const auto sk = thicken(m, options);
    const auto t = reach(sk, inputs_from(input, args), fuel, !path_log.empty());
    if (t.outcome == ReachTrace::Outcome::Reached)
      std::cout << "Reached(" << format_inputs(t.output) << ") steps " << t.steps << " length "
                << to_string(t.length) << '\n';
    else
      std::cout << "Diverged(" << t.steps << ") length inf\n";
    if (!trace.empty()) write_output(trace, trace_csv_header() + trace_csv_row(t));
    if (!path_log.empty()) write_output(path_log, trace_log(sk, t));
    return 0;
  }
  if (model == "murec") {
    const auto e = parse_program(text);
    const auto r = eval(e, inputs_from(input, args), fuel);
    if (r.outcome == EvalResult::Outcome::Value)
      std::cout << "Value(" << format_inputs(r.values) << ") fuel-used " << r.fuel_used << '\n';
    else
      std::cout << "OutOfFuel(" << r.fuel_used << ")\n";
    return 0;
  }
  if (model == "flowchart") {
    const auto fc = parse_flowchart(text);
    const auto r = run_flowchart(fc, inputs_from(input, args), fuel);
    if (r.outcome == FlowRun::Outcome::Halted)
      std::cout << "Halted(" << format_inputs(r.outputs) << ") steps " << r.steps << '\n';
    else
      std::cout << "OutOfFuel(" << r.steps << ")\n";
    return 0;
  }
  if (model == "gshift") {
    const auto s = parse_shift_any(text);
    if (word.empty()) throw MalformedInput("gshift runs need --word '...0|1...'");
    BiWord w = parse_biword(word);
    const std::uint64_t steps = input.empty() ? 1 : parse_naturals(input).at(0).convert_to<std::uint64_t>();
    std::ostringstream csv;
    csv << "step,word\n0," << format_biword(w) << '\n';
    for (std::uint64_t k = 1; k <= steps; ++k) {
      w = apply(s, w);
      csv << k << ',' << format_biword(w) << '\n';
    }
    std::cout << format_biword(w) << '\n';
    if (!trace.empty()) write_output(trace, csv.str());
    return 0;
  }
  throw MalformedInput("unknown model '" + model + "' (tm, gshift, bordism, murec, flowchart)");
}

int cmd_verify(const std::string& suite, const std::string& file, const SuiteOptions& base,
               const std::string& out) {
  SuiteOptions o = base;
  if (!file.empty()) {
    if (suite != "volume") throw MalformedInput("only the volume suite takes a file");
    o.blockmap = parse_blockmap_any(read_file(file));
  }
  const auto r = run_suite(suite, o);
  write_output(out, r.text);
  return r.passed ? 0 : kVerifyFailed;
}

int cmd_emit(const std::string& kind, const std::string& file, const std::string& from,
             const std::string& range, std::uint64_t fuel, bool allow_irreversible,
             const std::string& out) {
  const std::string text = read_file(file);
  ThickenOptions options;
  options.allow_irreversible = allow_irreversible;
  if (kind == "graph-dot") {
    write_output(out, graph_dot(build_graph(parse_machine_any(text))));
  } else if (kind == "blocks-svg") {
    const BlockMap f = from == "blockmap" ? parse_blockmap_any(text)
                                          : gshift_to_blockmap(parse_shift_any(text));
    write_output(out, blockmap_svg(f));
  } else if (kind == "trace-csv") {
    const auto sk = thicken(parse_machine_any(text), options);
    const auto [lo, hi] = parse_range(range);
    std::string csv = trace_csv_header();
    const std::size_t arity = input_arity(sk.machine());
    for (auto n = lo; n <= hi; ++n)
      csv += trace_csv_row(reach(sk, std::vector<Natural>(arity, Natural(n)), fuel));
    write_output(out, csv);
  } else if (kind == "conjecture-csv") {
    const auto sk = thicken(parse_machine_any(text), options);
    const auto [lo, hi] = parse_range(range);
    write_output(out, conjecture_csv(conjecture_report(sk, lo, hi, fuel)));
  } else if (kind == "flowchart-dot") {
    const Flowchart fc = from == "flowchart" ? parse_flowchart(text)
                                             : compile_to_flowchart(parse_program(text));
    write_output(out, flowchart_dot(fc));
  } else {
    throw MalformedInput("unknown kind '" + kind +
                         "' (graph-dot, blocks-svg, trace-csv, conjecture-csv, flowchart-dot)");
  }
  return 0;
}

int cmd_hamdemo(const std::string& field, const std::string& q0_text, double T, double h,
                const std::string& csv, std::size_t sample) {
  PolyVectorField x;
  std::vector<Real> q0;
  std::vector<Real> (*exact)(Real) = nullptr;
  if (field == "rotation") {
    x = PolyVectorField::rotation();
    q0 = {1, 0};
    exact = rotation_from_unit;
  } else if (field == "cubic") {
    x = PolyVectorField::cubic();
    q0 = {0.5L, 0};
  } else if (field == "zero") {
    x = PolyVectorField::zero(2);
    q0 = {1, 0};
  } else {
    x = parse_field(field);
    q0.assign(static_cast<std::size_t>(x.dim()), 0);
  }
  if (!q0_text.empty()) {
    q0.clear();
    std::istringstream is(q0_text);
    for (std::string item; std::getline(is, item, ',');) {
      try {
        q0.push_back(std::stold(item));
      } catch (const std::exception&) {
        throw MalformedInput("bad --q0 entry '" + item + "'");
      }
    }
    exact = nullptr;
  }
  if (static_cast<int>(q0.size()) != x.dim())
    throw MalformedInput("--q0 needs " + std::to_string(x.dim()) + " coordinates");
  const auto r = verify_universality(x, q0, T, h, csv.empty() ? 0 : sample);
  const auto c = convergence(x, q0, T, h, exact);
  std::cout << universality_text(field, r, c);
  if (!csv.empty()) write_output(csv, universality_csv(r, x.dim()));
  return r.aborted ? kVerifyFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tkft: compile mu-recursive programs to Turing machines, generalized shifts and Cantor\n"
      "block maps; run, verify and draw every stage.\n"
      "Environment: TKFT_FUEL sets the default fuel (100000), TKFT_SEED the default seed (7)."};
  app.require_subcommand(1);

  std::uint64_t fuel = 100000, seed = 7;
  try {
    fuel = env_or("TKFT_FUEL", fuel);
    seed = env_or("TKFT_SEED", seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::string from, to, input_file, out;
  bool json = false;
  auto* compile = app.add_subcommand("compile", "translate an artifact along the pipeline");
  compile->add_option("--from", from, "murec | flowchart | tm | gshift")->required();
  compile->add_option("--to", to, "flowchart | tm | gshift | blockmap")->required();
  compile->add_option("file", input_file, "input file ('-' for stdin)")->required();
  compile->add_option("--out", out, "output file (default stdout)");
  compile->add_flag("--json", json, "write tm, gshift and blockmap artifacts as JSON");

  std::string model, run_input, run_args, word, trace, path_log;
  bool allow = false;
  auto* run_cmd = app.add_subcommand("run", "run a model on an input");
  run_cmd->add_option("--model", model, "tm | gshift | bordism | murec | flowchart")->required();
  run_cmd->add_option("file", input_file, "model file")->required();
  run_cmd->add_option("--input", run_input, "input natural(s); for gshift the number of steps");
  run_cmd->add_option("--args", run_args, "comma-separated naturals");
  run_cmd->add_option("--word", word, "gshift start word, e.g. '...01|1...'");
  run_cmd->add_option("--fuel", fuel, "step budget");
  run_cmd->add_option("--trace", trace, "write a CSV trace");
  run_cmd->add_option("--path", path_log, "bordism: write the tube-by-tube log");
  run_cmd->add_flag("--allow-irreversible", allow, "bordism: thicken irreversible machines");

  std::string suite, suite_file;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd
      ->add_option("suite", suite,
                   "conjugacy-tm-gshift | conjugacy-gshift-blockmap | volume | betti | "
                   "oracle-murec | lenc | reach | hamdemo")
      ->required();
  verify_cmd->add_option("file", suite_file, "volume: block map file to check");
  verify_cmd->add_option("--seed", seed, "seed for randomized suites");
  verify_cmd->add_option("--fuel", fuel, "step budget");
  verify_cmd->add_option("--out", out, "report file (default stdout)");

  std::string kind, range = "1..100";
  auto* emit = app.add_subcommand("emit", "write DOT, SVG or CSV");
  emit->add_option("kind", kind, "graph-dot | blocks-svg | trace-csv | conjecture-csv | flowchart-dot")
      ->required();
  emit->add_option("file", input_file, "input file")->required();
  emit->add_option("--from", from, "blocks-svg: gshift (default) or blockmap; flowchart-dot: murec (default) or flowchart");
  emit->add_option("--range", range, "trace-csv / conjecture-csv inputs, e.g. 1..100");
  emit->add_option("--fuel", fuel, "step budget");
  emit->add_flag("--allow-irreversible", allow, "thicken irreversible machines");
  emit->add_option("--out", out, "output file (default stdout)");

  std::string field = "rotation", q0, csv;
  double T = 1, h = 1e-3;
  std::size_t sample = 10;
  auto* ham = app.add_subcommand("hamdemo", "lift a polynomial field to T*R^n and compare flows");
  ham->set_help_flag("--help", "Print this help message and exit");
  ham->add_option("--field", field, "rotation | cubic | zero | 'coef@e1,e2 ...; ...'");
  ham->add_option("--q0", q0, "initial point, comma-separated");
  ham->add_option("--T", T, "horizon");
  ham->add_option("--h", h, "step");
  ham->add_option("--csv", csv, "write sampled trajectories as CSV");
  ham->add_option("--sample", sample, "CSV row every this many steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*compile) return cmd_compile(from, to, input_file, out, json);
    if (*run_cmd)
      return cmd_run(model, input_file, run_input, run_args, word, fuel, trace, path_log, allow);
    if (*verify_cmd) {
      SuiteOptions o;
      o.seed = seed;
      o.fuel = fuel;
      return cmd_verify(suite, suite_file, o, out);
    }
    if (*emit) return cmd_emit(kind, input_file, from, range, fuel, allow, out);
    if (*ham) return cmd_hamdemo(field, q0, T, h, csv, sample);
  } catch (const Refused& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
