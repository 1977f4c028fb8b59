// Prints one line per acceptance criterion. Exit status is the number of
// failing criteria.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "../common/random_prefan.hpp"
#include "locwheel/certify.hpp"
#include "locwheel/generators.hpp"

using namespace locwheel;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << "criterion " << id << " " << (ok ? "PASS" : "FAIL") << " [" << name << "] " << detail
            << std::endl;
  failures += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

std::vector<Radius> radii_3_to_10_inf() {
  std::vector<Radius> out;
  for (Length r = 3; r <= 10; ++r) out.push_back(Radius(r));
  out.push_back(Radius::infinite());
  return out;
}

/// Violations grouped by invariant, plus the first few in full.
std::string summarize(const VerdictReport& rep) {
  std::map<std::string, int> by_kind;
  for (const auto& v : rep.violations) ++by_kind[v.invariant];
  std::ostringstream out;
  for (auto& [k, c] : by_kind) out << " " << k << "=" << c;
  for (std::size_t i = 0; i < rep.violations.size() && i < 3; ++i) {
    const auto& v = rep.violations[i];
    out << "\n    " << v.invariant << " @ " << v.location << ": " << v.detail;
  }
  return out.str();
}

int run_command(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

void criterion_exhaustive() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult res = dichotomy_suite(7, radii_3_to_10_inf(), suite_threads());
  int wheels = 0;
  for (const auto& row : res.rows) wheels += row.branch == "wheel";
  std::ostringstream d;
  d << res.rows.size() << " instances (" << wheels << " wheel, " << res.rows.size() - wheels
    << " decomposition), " << res.report.violations.size() << " violations, " << fmt_seconds(seconds_since(t0));
  if (!res.report.pass()) d << summarize(res.report);
  report(1, "exhaustive dichotomy n<=7, r in 3..10,inf", res.report.pass() && seconds_since(t0) <= 900, d.str());
}

void criterion_weighted() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult res = weighted_suite(500, 9, 5, {Radius(4), Radius(6), Radius(10)}, 20240611, suite_threads());
  std::ostringstream d;
  d << res.rows.size() << " instances, " << res.report.violations.size() << " violations, "
    << fmt_seconds(seconds_since(t0));
  if (!res.report.pass()) d << summarize(res.report);
  report(2, "weighted random n<=9, lengths 1..5, r in {4,6,10}", res.report.pass() && seconds_since(t0) <= 600,
         d.str());
}

void criterion_infinite() {
  int total = 0;
  int disagree = 0;
  int errors = 0;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& g : connected_graphs(n)) {
      ++total;
      try {
        bool decomposition = !decide(g, Radius::infinite()).is_wheel();
        disagree += decomposition == has_k4_subdivision(g);
      } catch (const std::exception&) {
        ++errors;
      }
    }
  }
  std::ostringstream d;
  d << total << " graphs, " << disagree << " disagreements with the K4-subdivision search, " << errors << " errors";
  report(3, "r=inf matches K4-subdivision freeness", disagree == 0 && errors == 0, d.str());
}

void criterion_properties() {
  std::ostringstream d;
  bool ok = true;
  auto part = [&](const char* tag, int runs, int bad, const std::string& extra = {}) {
    d << "\n    (" << tag << ") " << runs << " instances, " << bad << " failures" << extra;
    ok = ok && bad == 0 && runs >= 200;
  };
  std::mt19937_64 rng(7);
  auto draw = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  // (a), (b), (c) on generated r-weighted wheels.
  int a_bad = 0;
  int b_bad = 0;
  int c_bad = 0;
  std::string c_first;
  const int wheels = 300;
  for (int i = 0; i < wheels; ++i) {
    Radius r(draw(3, 12));
    GeneratedWheel gw = generate_r_weighted_wheel(draw(3, 8), r, rng());
    GeneratedWheel sub = subdivide_wheel(gw, rng());
    auto diam = diameter(wheel_graph(sub.graph, sub.wheel));
    a_bad += !is_r_local_wheel(sub.graph, sub.wheel, r) || !diam || !r.admits(*diam);
    b_bad += !is_r_locally_3_connected(gw.graph, r);
    try {
      WheelSubdivision b = make_bounded(gw.graph, gw.wheel, r);
      c_bad += !is_r_bounded(gw.graph, b, r) || !is_wheel_subdivision_of(gw.graph, b);
    } catch (const LogicError& e) {
      if (c_bad++ == 0) {
        std::ostringstream w;
        w << "; first: r=" << r.str() << " pieces";
        for (Length l : piece_lengths(gw.graph, gw.wheel)) w << " " << l;
        w << " rim " << cycle_length(gw.graph, gw.wheel.rim) << " (" << e.what() << ")";
        c_first = w.str();
      }
    }
  }
  part("a: r-local wheel diameter <= r", wheels, a_bad);
  part("b: r-weighted wheels are r-locally 3-connected", wheels, b_bad);
  part("c: make_bounded gives an r-bounded subwheel", wheels, c_bad, c_first);

  // (d) random pre-fans.
  int d_runs = 0;
  int d_bad = 0;
  int d_moreover = 0;
  for (std::uint64_t seed = 1; d_runs < 300; ++seed) {
    auto pc = testing::random_pre_fan(seed);
    if (!pc) continue;
    ++d_runs;
    try {
      Fan f = reduce_to_fan(pc->graph, pc->r, pc->fan);
      PreFan as = f.as_pre_fan();
      auto before = testing::fan_edges(pc->fan.pieces);
      auto after = testing::fan_edges(f.pieces);
      bool contained = std::includes(before.begin(), before.end(), after.begin(), after.end());
      bool good = is_fan(pc->graph, pc->r, as) && contained && as.start() == pc->fan.start() &&
                  as.end() == pc->fan.end() && fan_shape(as) == f.shared;
      if (testing::ends_are_private(pc->fan)) {
        ++d_moreover;
        good = good && f.pieces.size() >= 2;
      }
      d_bad += !good;
    } catch (const std::exception&) {
      ++d_bad;
    }
  }
  part("d: pre-fan reduces to a fan", d_runs, d_bad, " (" + std::to_string(d_moreover) + " with private ends)");

  // (e), (f) on random graphs that need cutting.
  int e_runs = 0;
  int e_bad = 0;
  int f_runs = 0;
  int f_bad = 0;
  for (std::uint64_t seed = 1; (e_runs < 200 || f_runs < 200) && seed < 20000; ++seed) {
    std::mt19937_64 g_rng(seed);
    int n = std::uniform_int_distribution<int>(5, 10)(g_rng);
    WeightedGraph g = random_connected_graph(n, std::uniform_int_distribution<int>(20, 70)(g_rng), 3, g_rng());
    Radius r(std::uniform_int_distribution<int>(3, 10)(g_rng));
    CutHistory h = run_cuts(g, r, CutPolicy::kVerticesAndPairs);
    if (h.cuts.empty()) continue;
    CutHistory replay;
    replay.graph = g;
    for (VertexId v : g.vertices()) replay.origin[v] = v;
    for (const auto& op : h.cuts) {
      WeightedGraph after = apply_cut(replay.graph, op);
      ++f_runs;
      f_bad += !slices_are_far(after, op, r);
      replay.record(op, std::move(after));
    }
    for (const auto& t : torsos_of(h.graph)) {
      if (t.kind != TorsoKind::kThreeConnected) continue;
      ++e_runs;
      try {
        WheelSubdivision w = lift_wheel(g, h, find_wheel(t.graph, r));
        WeightedGraph wg = wheel_graph(g, w);
        std::map<VertexId, VertexId> identity;
        for (VertexId v : wg.vertices()) identity[v] = v;
        e_bad += !embeds_as_subgraph(g, wg, identity);
      } catch (const std::exception&) {
        ++e_bad;
      }
      break;
    }
  }
  part("e: lifted wheels are subgraphs of the input", e_runs, e_bad);
  part("f: slices of a cut vertex are far apart", f_runs, f_bad);
  report(4, "property suites", ok, d.str());
}

void criterion_mutation() {
  int sep = run_command(std::string(LOCWHEEL_MUTANT_SEPARATOR_PATH) + " > /dev/null");
  int bnd = run_command(std::string(LOCWHEEL_MUTANT_BOUNDED_PATH) + " > /dev/null");
  std::ostringstream d;
  d << "weakened 2-separator: suite " << (sep == 1 ? "fails" : sep == 0 ? "passes" : "crashed")
    << "; off-by-one bound: suite " << (bnd == 1 ? "fails" : bnd == 0 ? "passes" : "crashed");
  report(5, "mutation sensitivity", sep == 1 && bnd == 1, d.str());
}

void criterion_determinism() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("locwheel_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::pair<std::string, WeightedGraph>> inputs{
      {"k4", parse_graph_text("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")},
      {"c8", parse_graph_text("8 8\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 0\n")},
      {"k23", theta_family(2, 2, 2)},
      {"random", random_connected_graph(9, 45, 5, 99)},
      {"wheel", generate_r_weighted_wheel(6, Radius(8), 3).graph}};
  int same = 0;
  for (const auto& [name, g] : inputs) {
    fs::path graph = dir / (name + ".txt");
    std::ofstream(graph) << graph_text(g);
    std::string outs[2];
    for (int k = 0; k < 2; ++k) {
      fs::path out = dir / (name + "_" + std::to_string(k) + ".json");
      run_command(std::string(LOCWHEEL_CLI_PATH) + " decide --graph " + graph.string() + " --r 8 --out " +
                  out.string());
      std::ifstream in(out, std::ios::binary);
      outs[k] = std::string(std::istreambuf_iterator<char>(in), {});
    }
    same += !outs[0].empty() && outs[0] == outs[1];
  }
  fs::remove_all(dir);
  report(6, "deterministic certificates", same == static_cast<int>(inputs.size()),
         std::to_string(same) + "/" + std::to_string(inputs.size()) + " inputs byte-identical across two runs");
}

}  // namespace

int main() {
  criterion_exhaustive();
  criterion_weighted();
  criterion_infinite();
  criterion_properties();
  criterion_mutation();
  criterion_determinism();
  return failures;
}
