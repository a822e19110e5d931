#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cfindep/run.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<long> N, precision, K, trials;
  std::optional<std::string> height, gamma, mode, out, format, example;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool timings = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  sub->add_option("--N", o.N, "prefix length / truncation index");
  sub->add_option("--precision", o.precision, "working precision in bits");
  sub->add_option("--height", o.height, "coefficient height bound for relation search");
  sub->add_option("--gamma", o.gamma, "gamma as NUM/DEN, strictly inside (0,1)");
  sub->add_option("--seed", o.seed, "seed for randomized suites");
  sub->add_option("--trials", o.trials, "trials for randomized suites");
  sub->add_option("--mode", o.mode, "condition-5 mode: auto, house-half or real-part-sign");
  sub->add_option("--K", o.K, "catalog parameter K");
  sub->add_option("--threads", o.threads, "worker threads");
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_flag("--timings", o.timings, "include wall-clock timings (breaks byte-identical output)");
}

cfindep::RunConfig assemble(const std::string& task, const Overrides& o) {
  cfindep::RunConfig c;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    c = cfindep::parse_run_config(ss.str());
  }
  if (task != "run") c.task = task;
  if (o.N) c.N = *o.N;
  if (o.precision) c.precision = *o.precision;
  if (o.K) c.K = *o.K;
  if (o.trials) c.trials = *o.trials;
  if (o.height) c.height = *o.height;
  if (o.gamma) c.gamma = *o.gamma;
  if (o.mode) c.condition5_mode = *o.mode;
  if (o.out) c.output = *o.out;
  if (o.format) c.format = *o.format;
  if (o.example) c.example = *o.example;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.timings) c.timings = true;
  return c;
}

int emit(const cfindep::RunConfig& c, const cfindep::RunOutcome& r) {
  std::string body = c.format == "text" ? cfindep::render_text(r.report) : r.report.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.output);
    if (!f) {
      std::cerr << "cannot write " << c.output << "\n";
      return cfindep::kExitConfig;
    }
    f << body;
  }
  if (r.report.contains("error")) std::cerr << r.report["error"]["message"].get<std::string>() << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued fractions with algebraic partial quotients: hypothesis checks, lemmas and relation probes"};
  app.require_subcommand(1);
  Overrides o;
  std::string chosen;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    sub->callback([&chosen, name] { chosen = name; });
    return sub;
  };
  add("convergents", "exact convergents p_n/q_n of the first configured sequence");
  add("enclose", "certified enclosure of the first configured continued fraction");
  add("check-theorem1", "check every hypothesis of the independence criterion for the configured sequences");
  add("check-named-example", "run the hypothesis checks on a catalog configuration")
      ->add_option("example", o.example, "catalog name (see 'list')");
  add("lemma1", "ratio trace q_{n,a}/q_{n,b} for two configured sequences");
  add("lemma2", "|[z_0; z_1, ...]| >= 1 when every |z_k| >= 2 (tuples or a seeded random suite)");
  add("lemma3", "Re [z_0; z_1, ...] >= Re z_0 when every Re z_k > 0 (tuples or a seeded random suite)");
  add("remark", "a_n = n^2+1 against b_n = n^2: bounded ratio of denominators");
  add("relation", "integer-relation probe over the field for a named example or configured sequences")
      ->add_option("--example", o.example, "catalog name");
  add("list", "list the catalog of named configurations");
  add("run", "run the task named in --config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cfindep::kExitConfig;
  }
  cfindep::RunConfig c;
  try {
    c = assemble(chosen, o);
  } catch (const cfindep::Error& e) {
    cfindep::RunOutcome r;
    r.exit_code = cfindep::exit_code_for(e.code());
    r.report = cfindep::json{{"tool", "cfindep"},
                             {"version", cfindep::kToolVersion},
                             {"task", chosen},
                             {"config", cfindep::json::object()},
                             {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}},
                             {"exit_code", r.exit_code}};
    cfindep::RunConfig fallback;
    if (o.out) fallback.output = *o.out;
    if (o.format) fallback.format = *o.format;
    return emit(fallback, r);
  }
  return emit(c, cfindep::run(c));
}
