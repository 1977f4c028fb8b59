#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "locwheel/certify.hpp"
#include "locwheel/dot.hpp"
#include "locwheel/generators.hpp"

using namespace locwheel;

namespace {

constexpr int kExitWheel = 10;
constexpr int kExitDecomposition = 20;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WeightedGraph read_graph(const std::string& path) { return parse_graph_text(read_file(path)); }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

/// "3,4,inf" or "3..10,inf".
std::vector<Radius> parse_radius_set(const std::string& text) {
  std::vector<Radius> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(Radius::parse(item));
      continue;
    }
    Radius lo = Radius::parse(item.substr(0, dots));
    Radius hi = Radius::parse(item.substr(dots + 2));
    if (lo.is_infinite() || hi.is_infinite() || lo.value() > hi.value()) throw InputError("bad range " + item);
    for (Length v = lo.value(); v <= hi.value(); ++v) out.push_back(Radius(v));
  }
  if (out.empty()) throw InputError("empty radius set");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local wheels and local decompositions of width two"};
  app.require_subcommand(1);

  std::string graph_path;
  std::string r_text;
  std::string out_path;
  std::string cert_path;

  auto* decide_cmd = app.add_subcommand("decide", "Find an r-bounded wheel or a decomposition");
  decide_cmd->add_option("--graph", graph_path, "Graph file")->required();
  decide_cmd->add_option("--r", r_text, "Radius (integer or inf)")->required();
  decide_cmd->add_option("--out", out_path, "Certificate file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate");
  verify_cmd->add_option("--graph", graph_path, "Graph file")->required();
  verify_cmd->add_option("--r", r_text, "Radius (integer or inf)")->required();
  verify_cmd->add_option("--cert", cert_path, "Certificate file")->required();

  int max_vertices = 10;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force search for an r-bounded wheel");
  oracle_cmd->add_option("--graph", graph_path, "Graph file")->required();
  oracle_cmd->add_option("--r", r_text, "Radius (integer or inf)")->required();
  oracle_cmd->add_option("--max-vertices", max_vertices, "Refuse larger graphs");

  std::string family;
  std::vector<int> params;
  int spokes = 5;
  int n = 8;
  int p_percent = 40;
  Length max_len = 5;
  std::uint64_t seed = 1;
  std::string gen_r = "6";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph");
  gen_cmd->add_option("--family", family, "wheel | subdivided-k4 | theta | random")
      ->required()
      ->check(CLI::IsMember({"wheel", "subdivided-k4", "theta", "random"}));
  gen_cmd->add_option("params", params, "subdivided-k4: k; theta: a b c");
  gen_cmd->add_option("--spokes", spokes, "Wheel spokes");
  gen_cmd->add_option("--r", gen_r, "Wheel radius");
  gen_cmd->add_option("--n", n, "Random: vertices");
  gen_cmd->add_option("--p", p_percent, "Random: extra edge probability in percent");
  gen_cmd->add_option("--max-len", max_len, "Random: largest edge length");
  gen_cmd->add_option("--seed", seed, "Seed");
  gen_cmd->add_option("--out", out_path, "Graph file (default stdout)");

  int max_n = 5;
  std::string r_set = "3,4,5,inf";
  std::string csv_path;
  auto* suite_cmd = app.add_subcommand("suite", "Exhaustive dichotomy suite on unit-length graphs");
  suite_cmd->add_option("--max-n", max_n, "Largest vertex count (at most 8)");
  suite_cmd->add_option("--r-set", r_set, "Radii, e.g. 3..10,inf");
  suite_cmd->add_option("--csv", csv_path, "CSV output (default stdout)");

  auto* dot_cmd = app.add_subcommand("export-dot", "Render a certificate as Graphviz");
  dot_cmd->add_option("--graph", graph_path, "Graph file")->required();
  dot_cmd->add_option("--cert", cert_path, "Certificate file")->required();
  dot_cmd->add_option("--out", out_path, "DOT file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*decide_cmd) {
      WeightedGraph g = read_graph(graph_path);
      Certificate c = decide_certificate(g, Radius::parse(r_text));
      emit(out_path, to_json(c).dump(2) + "\n");
      return c.is_wheel() ? kExitWheel : kExitDecomposition;
    }
    if (*verify_cmd) {
      WeightedGraph g = read_graph(graph_path);
      Certificate c = certificate_from_text(read_file(cert_path));
      VerdictReport rep = verify_certificate(g, Radius::parse(r_text), c);
      if (rep.pass()) {
        std::cout << "pass\n";
        return 0;
      }
      std::cout << "fail\n" << rep.str();
      return 1;
    }
    if (*oracle_cmd) {
      WeightedGraph g = read_graph(graph_path);
      bool wheel = oracle_has_bounded_wheel(g, Radius::parse(r_text), max_vertices);
      std::cout << (wheel ? "wheel" : "no wheel") << "\n";
      return wheel ? kExitWheel : kExitDecomposition;
    }
    if (*gen_cmd) {
      WeightedGraph g;
      if (family == "wheel") {
        g = generate_r_weighted_wheel(spokes, Radius::parse(gen_r), seed).graph;
      } else if (family == "subdivided-k4") {
        if (params.size() != 1) throw InputError("subdivided-k4 takes one parameter k");
        g = subdivided_k4(params[0]);
      } else if (family == "theta") {
        if (params.size() != 3) throw InputError("theta takes three arm lengths");
        g = theta_family(params[0], params[1], params[2]);
      } else {
        if (n < 1 || p_percent < 0 || p_percent > 100 || max_len < 1) throw InputError("bad random parameters");
        g = random_connected_graph(n, p_percent, max_len, seed);
      }
      emit(out_path, graph_text(g));
      return 0;
    }
    if (*suite_cmd) {
      SuiteResult res = dichotomy_suite(max_n, parse_radius_set(r_set), suite_threads());
      std::ostringstream csv;
      write_suite_csv(csv, res.rows);
      emit(csv_path, csv.str());
      std::cerr << res.rows.size() << " instances, " << res.report.violations.size() << " violations\n"
                << res.report.str();
      return res.report.pass() ? 0 : 1;
    }
    if (*dot_cmd) {
      WeightedGraph g = read_graph(graph_path);
      Certificate c = certificate_from_text(read_file(cert_path));
      emit(out_path, certificate_dot(g, c));
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
