#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sofic/bridge.hpp"
#include "sofic/errors.hpp"
#include "sofic/family.hpp"
#include "sofic/group_io.hpp"
#include "sofic/rank_function.hpp"
#include "sofic/reports.hpp"

namespace sofic::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string group_file;
  std::optional<std::uint32_t> prime;
  std::string schedule;
  int radius = 2;
  std::string out_dir = "sofic-out";
  std::uint64_t seed = 1;

  // convert
  std::string direction = "roundtrip";
  std::string delta = "1/10";
  std::string epsilon = "1/2";
  std::string graph_file;
  std::string good_file;

  // rank, finiteness
  std::string element;
  std::string a;
  std::string b;

  // axioms, regularity
  std::size_t n = 32;
  std::size_t trials = 200;
  std::string matrix_file;
};

struct Schedule {
  enum class Kind { kQuotient, kFolner } kind;
  std::vector<std::int64_t> sizes;
};

Schedule parse_schedule(const std::string& schedule_text) {
  if (schedule_text.empty()) throw UsageError("--schedule is required, e.g. quotient:4,8,16");
  const auto colon = schedule_text.find(':');
  if (colon == std::string::npos) throw UsageError("schedule must look like KIND:N1,N2,...");
  Schedule s;
  const std::string kind = schedule_text.substr(0, colon);
  if (kind == "quotient") {
    s.kind = Schedule::Kind::kQuotient;
  } else if (kind == "folner") {
    s.kind = Schedule::Kind::kFolner;
  } else {
    throw UsageError("unknown schedule kind '" + kind + "' (expected quotient or folner)");
  }
  std::stringstream list(schedule_text.substr(colon + 1));
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v < 1) throw UsageError("bad schedule size '" + item + "'");
    s.sizes.push_back(v);
  }
  if (s.sizes.empty()) throw UsageError("schedule has no levels");
  for (std::size_t i = 1; i < s.sizes.size(); ++i) {
    if (s.sizes[i] < s.sizes[i - 1]) throw UsageError("schedule sizes must be nondecreasing");
  }
  return s;
}

std::vector<SoficApproximation> build_family(const Group& group, const std::string& schedule_text,
                                             int radius) {
  const Schedule s = parse_schedule(schedule_text);
  return s.kind == Schedule::Kind::kQuotient ? quotient_family(group, s.sizes, radius)
                                             : folner_family(group, s.sizes, radius);
}

PrimeField pick_prime(const RunConfig& cfg, const GroupDocument& doc) {
  if (cfg.prime) return PrimeField(*cfg.prime);
  return PrimeField(doc.prime.value_or(2));
}

GroupDocument load_group(const RunConfig& cfg) {
  if (cfg.group_file.empty()) throw UsageError("--group is required");
  return load_group_file(cfg.group_file);
}

fs::path prepare_out(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot write " + path.string());
  body(f);
  if (!f) throw ResourceError("write failed for " + path.string());
}

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  return f;
}

std::string level_file(const std::string& stem, std::size_t level, const std::string& ext) {
  return stem + "_" + std::to_string(level) + ext;
}

// --- subcommands -------------------------------------------------------------

int cmd_approximate(const RunConfig& cfg, std::ostream& out) {
  const auto doc = load_group(cfg);
  const auto family = build_family(doc.group, cfg.schedule, cfg.radius);
  const fs::path dir = prepare_out(cfg);
  std::ostringstream csv;
  csv << kDefectCsvHeader << '\n';
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& approx = family[k];
    const auto report = defect_report(approx);
    write_file(dir / level_file("approximation", k + 1, ".txt"),
               [&](std::ostream& f) { write_approximation(f, approx); });
    write_file(dir / level_file("defects", k + 1, ".txt"),
               [&](std::ostream& f) { write_defect_report(f, approx, report); });
    write_defect_csv_row(csv, k + 1, approx, report);
    out << "level " << k + 1 << " [" << approx.label() << "] max_a " << to_string(report.max_a)
        << " defect_b " << to_string(report.defect_b) << " max_agreement_c "
        << to_string(report.max_c) << '\n';
  }
  write_file(dir / "defects.csv", [&](std::ostream& f) { f << csv.str(); });
  return kExitOk;
}

int convert_maps_to_graph(const RunConfig& cfg, const GroupDocument& doc, bool round_trip_too,
                          std::ostream& out) {
  if (cfg.radius < 0) throw UsageError("--radius must be non-negative");
  const Rational delta = parse_rational(cfg.delta);
  const auto family = build_family(doc.group, cfg.schedule, 2 * cfg.radius + 2);
  const fs::path dir = prepare_out(cfg);
  int status = kExitOk;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& approx = family[k];
    const auto result = maps_to_graph(approx, cfg.radius, delta);
    write_file(dir / level_file("graph", k + 1, ".txt"),
               [&](std::ostream& f) { write_edge_list(f, result.graph); });
    write_file(dir / level_file("good", k + 1, ".txt"),
               [&](std::ostream& f) { write_good_set(f, result.good, approx.v_size()); });
    write_file(dir / level_file("threshold", k + 1, ".txt"), [&](std::ostream& f) {
      write_threshold_report(f, doc.group, cfg.radius, delta, result.good, approx.v_size());
    });
    out << "level " << k + 1 << " [" << approx.label() << "] good "
        << result.good.vertices.size() << '/' << approx.v_size() << " delta "
        << to_string(result.good.delta) << '\n';
    if (!round_trip_too) continue;
    const auto rt = round_trip(approx, cfg.radius, delta);
    write_file(dir / level_file("roundtrip", k + 1, ".txt"), [&](std::ostream& f) {
      f << "good_vertices " << rt.good_vertices << '\n';
      f << "compared " << rt.compared << '\n';
      f << "mismatches " << rt.mismatches.size() << '\n';
      for (const auto& [v, g] : rt.mismatches) f << v << ' ' << doc.group.format(g) << '\n';
    });
    out << "  roundtrip compared " << rt.compared << " mismatches " << rt.mismatches.size()
        << '\n';
    if (!rt.mismatches.empty()) status = kExitViolation;
  }
  return status;
}

int convert_graph_to_maps(const RunConfig& cfg, const GroupDocument& doc, std::ostream& out) {
  if (cfg.graph_file.empty()) throw UsageError("--graph is required for graph-to-maps");
  if (cfg.radius < 0) throw UsageError("--radius must be non-negative");
  auto gin = open_input(cfg.graph_file);
  const LabeledDigraph graph = read_edge_list(gin, doc.group);
  GoodSet good;
  if (cfg.good_file.empty()) {
    for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) good.vertices.push_back(v);
    good.delta = Rational(0);
  } else {
    auto in = open_input(cfg.good_file);
    good = read_good_set(in, graph.vertex_count());
  }
  const auto elements = ball(doc.group, cfg.radius / 2).elements();
  const auto approx = graph_to_maps(graph, good, cfg.radius, elements, doc.group,
                                    parse_rational(cfg.epsilon));
  const auto report = defect_report(approx);
  const fs::path dir = prepare_out(cfg);
  write_file(dir / "approximation.txt", [&](std::ostream& f) { write_approximation(f, approx); });
  write_file(dir / "defects.txt", [&](std::ostream& f) { write_defect_report(f, approx, report); });
  write_file(dir / "threshold.txt", [&](std::ostream& f) {
    write_threshold_report(f, doc.group, cfg.radius, parse_rational(cfg.delta), good,
                           graph.vertex_count());
  });
  out << "vertices " << approx.v_size() << " good " << good.vertices.size() << " max_a "
      << to_string(report.max_a) << " defect_b " << to_string(report.defect_b)
      << " max_agreement_c " << to_string(report.max_c) << '\n';
  return kExitOk;
}

int cmd_convert(const RunConfig& cfg, std::ostream& out) {
  const auto doc = load_group(cfg);
  if (cfg.direction == "maps-to-graph") return convert_maps_to_graph(cfg, doc, false, out);
  if (cfg.direction == "roundtrip") return convert_maps_to_graph(cfg, doc, true, out);
  if (cfg.direction == "graph-to-maps") return convert_graph_to_maps(cfg, doc, out);
  throw UsageError("unknown direction '" + cfg.direction + "'");
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  if (cfg.element.empty()) throw UsageError("--element is required");
  const auto doc = load_group(cfg);
  const auto a = doc.element(cfg.element, pick_prime(cfg, doc));
  const auto family = build_family(doc.group, cfg.schedule, cfg.radius);
  const auto seq = pseudo_rank_sequence(a, family);
  const fs::path dir = prepare_out(cfg);
  write_file(dir / "rank.csv", [&](std::ostream& f) { write_rank_csv(f, seq); });
  write_file(dir / "rank_summary.txt", [&](std::ostream& f) { write_rank_summary(f, seq, cfg.seed); });
  write_rank_csv(out, seq);
  out << "warnings " << seq.warning_count() << '\n';
  return kExitOk;
}

int cmd_finiteness(const RunConfig& cfg, std::ostream& out) {
  if (cfg.a.empty() || cfg.b.empty()) throw UsageError("--a and --b are required");
  const auto doc = load_group(cfg);
  const PrimeField field = pick_prime(cfg, doc);
  const auto a = doc.element(cfg.a, field);
  const auto b = doc.element(cfg.b, field);
  const auto family = build_family(doc.group, cfg.schedule, cfg.radius);
  const auto verdict = direct_finiteness_check(a, b, family);
  const fs::path dir = prepare_out(cfg);
  write_file(dir / "verdict.csv", [&](std::ostream& f) { write_verdict_csv(f, verdict); });
  write_file(dir / "verdict.txt", [&](std::ostream& f) { write_verdict_summary(f, verdict, cfg.seed); });
  write_verdict_summary(out, verdict, cfg.seed);
  if (verdict.counterexample() || !verdict.corroborated()) {
    write_file(dir / "counterexample.txt", [&](std::ostream& f) {
      write_verdict_summary(f, verdict, cfg.seed);
      write_verdict_csv(f, verdict);
    });
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_axioms(const RunConfig& cfg, std::ostream& out) {
  const auto report = pseudo_rank_axioms_check(cfg.prime.value_or(2), cfg.n, cfg.trials, cfg.seed);
  const fs::path dir = prepare_out(cfg);
  write_file(dir / "axioms.txt", [&](std::ostream& f) { write_axioms_report(f, report); });
  write_axioms_report(out, report);
  return report.violations() == 0 ? kExitOk : kExitViolation;
}

int cmd_regularity(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir = prepare_out(cfg);
  if (!cfg.matrix_file.empty()) {
    auto in = open_input(cfg.matrix_file);
    const FpMatrix x = read_matrix(in);
    const FpMatrix y = regular_witness(x);
    const bool ok = verify_regular_witness(x, y);
    write_file(dir / "witness.txt", [&](std::ostream& f) { write_matrix(f, y); });
    write_file(dir / "regularity.txt", [&](std::ostream& f) {
      f << "matrix " << cfg.matrix_file << '\n' << "verified " << (ok ? 1 : 0) << "/1\n";
    });
    out << "verified " << (ok ? 1 : 0) << "/1\n";
    return ok ? kExitOk : kExitViolation;
  }
  const auto report = regularity_check(cfg.prime.value_or(7), cfg.n, cfg.trials, cfg.seed);
  write_file(dir / "regularity.txt", [&](std::ostream& f) { write_regularity_report(f, report); });
  write_regularity_report(out, report);
  return report.verified == report.trials ? kExitOk : kExitViolation;
}

// --- option wiring -------------------------------------------------------------

void add_output_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  app->add_option("--seed", cfg.seed, "Seed for all randomness")->capture_default_str();
}

void add_group_options(CLI::App* app, RunConfig& cfg, bool with_schedule) {
  app->add_option("--group", cfg.group_file, "Group description (JSON)")->required();
  app->add_option("--prime", cfg.prime, "Prime p of the coefficient field");
  if (with_schedule) {
    app->add_option("--schedule", cfg.schedule, "Family schedule, e.g. quotient:4,8,16 or folner:8,16");
  }
  app->add_option("--radius", cfg.radius, "Ball radius")->capture_default_str();
  add_output_options(app, cfg);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sofic approximations, pseudo-rank sequences and finiteness checks", "sofic"};
  app.require_subcommand(1);

  auto* approximate = app.add_subcommand("approximate", "Build a family and measure its defects");
  add_group_options(approximate, cfg, true);

  auto* convert = app.add_subcommand("convert", "Convert between map and graph approximations");
  add_group_options(convert, cfg, true);
  convert->add_option("--direction", cfg.direction, "maps-to-graph, graph-to-maps or roundtrip")
      ->check(CLI::IsMember({"maps-to-graph", "graph-to-maps", "roundtrip"}))
      ->capture_default_str();
  convert->add_option("--delta", cfg.delta, "Target delta")->capture_default_str();
  convert->add_option("--epsilon", cfg.epsilon, "Epsilon of the produced approximation")
      ->capture_default_str();
  convert->add_option("--graph", cfg.graph_file, "Edge list (graph-to-maps)");
  convert->add_option("--good", cfg.good_file, "Good vertex set (graph-to-maps)");

  auto* rank_cmd = app.add_subcommand("rank", "Normalized rank sequence of an element");
  add_group_options(rank_cmd, cfg, true);
  rank_cmd->add_option("--element", cfg.element, "Element name or expression")->required();

  auto* finiteness = app.add_subcommand("finiteness", "Check ab = 1 implies ba = 1");
  add_group_options(finiteness, cfg, true);
  finiteness->add_option("--a", cfg.a, "Element a")->required();
  finiteness->add_option("--b", cfg.b, "Element b")->required();

  auto* axioms = app.add_subcommand("axioms", "Exact pseudo-rank axiom checks");
  axioms->add_option("--prime", cfg.prime, "Prime p (default 2)");
  axioms->add_option("--n", cfg.n, "Matrix size")->capture_default_str();
  axioms->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  add_output_options(axioms, cfg);

  auto* regularity = app.add_subcommand("regularity", "Generalized inverse witnesses x y x = x");
  regularity->add_option("--prime", cfg.prime, "Prime p (default 7)");
  regularity->add_option("--n", cfg.n, "Matrix size")->capture_default_str();
  regularity->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  regularity->add_option("--matrix", cfg.matrix_file, "Check a single matrix file instead");
  add_output_options(regularity, cfg);

  std::vector<const char*> argv{"sofic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*approximate) return cmd_approximate(cfg, out);
    if (*convert) return cmd_convert(cfg, out);
    if (*rank_cmd) return cmd_rank(cfg, out);
    if (*finiteness) return cmd_finiteness(cfg, out);
    if (*axioms) return cmd_axioms(cfg, out);
    if (*regularity) return cmd_regularity(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sofic::cli
