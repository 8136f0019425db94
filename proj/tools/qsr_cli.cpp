#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsr/asymptotics.hpp"
#include "qsr/io.hpp"
#include "qsr/protocol.hpp"
#include "qsr/selftest.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
  std::string state_path;
  std::string generator;
  std::string out_path;
  std::string format = "json";
  double epsilon = -1.0;
  std::uint64_t seed = 0;
};

void add_state_opts(CLI::App* cmd, CommonOpts& o) {
  auto* s = cmd->add_option("--state", o.state_path, "state file (JSON)");
  auto* g = cmd->add_option("--generator", o.generator,
                            "generator spec, e.g. ghz(4,2) or haar_pure(A2xB2xR4,7)");
  s->excludes(g);
}

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

qsr::LoadedState load(const CommonOpts& o) {
  if (!o.state_path.empty()) return qsr::load_state_file(o.state_path);
  if (!o.generator.empty()) return qsr::make_generator(o.generator);
  throw std::invalid_argument("one of --state or --generator is required");
}

const qsr::PureStateVector& need_pure(const qsr::LoadedState& s, const char* cmd) {
  if (!s.pure.has_value())
    throw std::invalid_argument(std::string(cmd) + " requires a pure state");
  return *s.pure;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write output file: " + o.out_path);
  f << text;
}

json base_doc(const char* command, double epsilon) {
  json j;
  j["schema"] = "1";
  j["command"] = command;
  j["units"] = "bits";
  if (epsilon >= 0) j["epsilon"] = epsilon;
  return j;
}

json cost_report_json(const qsr::CostReport& r) {
  return json{{"delta_q_bits", r.delta_q},
              {"delta_e_bits", r.delta_e},
              {"one_shot_cost_bits", r.one_shot_cost},
              {"entanglement_cost_bits", r.entanglement_cost},
              {"epsilon", r.epsilon},
              {"epsilon_prime", r.epsilon_prime}};
}

int run_entropy(const CommonOpts& o) {
  auto s = load(o);
  if (o.format != "json") throw std::invalid_argument("entropy supports --format json only");
  json doc = base_doc("entropy", o.epsilon);
  doc["layout"] = json::array();
  for (const auto& sub : s.rho.layout().subsystems())
    doc["layout"].push_back({sub.label, sub.dim});
  doc["von_neumann_bits"] = qsr::von_neumann(s.rho);
  json marg = json::object();
  for (const auto& sub : s.rho.layout().subsystems())
    marg[sub.label] = qsr::von_neumann(qsr::partial_trace(s.rho, {sub.label}));
  doc["marginal_entropy_bits"] = std::move(marg);

  auto labels = s.rho.layout().labels();
  if (labels.size() >= 2) {
    std::vector<std::string> cond(labels.begin() + 1, labels.end());
    doc["conditional_entropy_bits"] = qsr::conditional_entropy(s.rho, cond);
    doc["hmin_smooth_bits"] = qsr::hmin_smooth(s.rho, cond, o.epsilon).value;
    doc["hmin_conditioning"] = cond;
  }
  if (s.pure.has_value() && labels.size() >= 3) {
    std::vector<std::string> rest(labels.begin() + 2, labels.end());
    doc["hmax_smooth_bits"] =
        qsr::hmax_smooth(*s.pure, {labels[0]}, {labels[1]}, rest, o.epsilon).value;
    doc["hmax_conditioning"] = labels[1];
  }
  emit(o, doc.dump(2) + "\n");
  return 0;
}

int run_bound_oneshot(const CommonOpts& o) {
  auto s = load(o);
  const auto& psi = need_pure(s, "bound-oneshot");
  if (o.format != "json")
    throw std::invalid_argument("bound-oneshot supports --format json only");
  auto r = qsr::thm1_cost(psi, o.epsilon);
  json doc = base_doc("bound-oneshot", o.epsilon);
  doc.update(cost_report_json(r));
  emit(o, doc.dump(2) + "\n");
  return 0;
}

int run_bound_second_order(const CommonOpts& o, long n) {
  auto s = load(o);
  const auto& psi = need_pure(s, "bound-second-order");
  if (o.format != "json")
    throw std::invalid_argument("bound-second-order supports --format json only");
  auto c = qsr::thm2_expansion(psi, o.epsilon);
  json doc = base_doc("bound-second-order", o.epsilon);
  doc["a_bits"] = c.a;
  doc["b_bits"] = c.b;
  doc["remainder_note"] = c.remainder_note;
  if (n > 0) {
    doc["n"] = n;
    doc["estimate_at_n_bits"] = c.a * (double)n + c.b * std::sqrt((double)n);
  }
  emit(o, doc.dump(2) + "\n");
  return 0;
}

int run_simulate_merge(const CommonOpts& o, int qubits, int trials) {
  auto s = load(o);
  const auto& psi = need_pure(s, "simulate-merge");
  auto stats = qsr::merge_stats(psi, qubits, trials, o.epsilon, o.seed);
  if (o.format == "csv") {
    emit(o, qsr::merge_trials_csv(stats.trials));
    return 0;
  }
  json doc = base_doc("simulate-merge", o.epsilon);
  doc["qubits_sent"] = qubits;
  doc["trials"] = trials;
  doc["seed"] = o.seed;
  doc["mean_fidelity"] = stats.mean_fidelity;
  doc["min_fidelity"] = stats.min_fidelity;
  doc["max_fidelity"] = stats.max_fidelity;
  doc["success_fraction"] = stats.success_fraction;
  json rows = json::array();
  for (const auto& t : stats.trials)
    rows.push_back({{"seed", t.seed},
                    {"qubits_sent", t.qubits_sent},
                    {"decoupling_error", t.decoupling_error},
                    {"fidelity", t.achieved_fidelity}});
  doc["trials_log"] = std::move(rows);
  emit(o, doc.dump(2) + "\n");
  return 0;
}

int run_simulate_redistribute(const CommonOpts& o, int qubits, long ebits) {
  auto s = load(o);
  const auto& psi = need_pure(s, "simulate-redistribute");
  if (o.format != "json")
    throw std::invalid_argument("simulate-redistribute supports --format json only");
  if (ebits < 0) {
    long n_a = (long)std::llround(std::log2((double)psi.layout().dim_of("A")));
    ebits = std::max(0L, n_a - qubits);
  }
  auto out = qsr::redistribute(psi, qubits, (int)ebits, o.epsilon, o.seed);
  json doc = base_doc("simulate-redistribute", o.epsilon);
  doc["q_budget"] = qubits;
  doc["initial_ebits"] = ebits;
  doc["seed"] = o.seed;
  doc["qubits_physically_sent"] = out.qubits_physically_sent;
  doc["ebits_consumed"] = out.ebits_consumed;
  doc["ebits_returned"] = out.ebits_returned;
  doc["final_fidelity"] = out.final_fidelity;
  doc["per_stage"] = out.per_stage;
  emit(o, doc.dump(2) + "\n");
  return 0;
}

int run_scan(const CommonOpts& o, const std::vector<double>& eps_grid) {
  auto s = load(o);
  const auto& psi = need_pure(s, "scan");
  if (eps_grid.empty()) throw std::invalid_argument("scan requires --eps-grid");
  struct Row {
    double eps, ep, a, b;
  };
  std::vector<Row> rows;
  for (double e : eps_grid) {
    auto c = qsr::thm2_expansion(psi, e);
    rows.push_back({e, qsr::epsilon_prime(e), c.a, c.b});
  }
  if (o.format == "csv") {
    std::ostringstream out;
    out << "epsilon,epsilon_prime,a_bits,b_bits\n";
    char buf[160];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.eps, r.ep, r.a, r.b);
      out << buf;
    }
    emit(o, out.str());
    return 0;
  }
  json doc = base_doc("scan", -1.0);
  json pts = json::array();
  for (const auto& r : rows)
    pts.push_back({{"epsilon", r.eps},
                   {"epsilon_prime", r.ep},
                   {"a_bits", r.a},
                   {"b_bits", r.b}});
  doc["points"] = std::move(pts);
  emit(o, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for one-shot quantum state redistribution"};
  app.require_subcommand(1);

  CommonOpts o;
  int qubits = 0;
  int trials = 100;
  long n = 0;
  long ebits = -1;
  std::vector<double> eps_grid;

  auto* entropy = app.add_subcommand("entropy", "entropy panel for a state");
  add_state_opts(entropy, o);
  add_output_opts(entropy, o);
  entropy->add_option("--epsilon", o.epsilon, "smoothing parameter")->required();

  auto* oneshot = app.add_subcommand("bound-oneshot", "Theorem 1 one-shot cost");
  add_state_opts(oneshot, o);
  add_output_opts(oneshot, o);
  oneshot->add_option("--epsilon", o.epsilon, "error tolerance in (0,1)")->required();

  auto* second = app.add_subcommand("bound-second-order", "Theorem 2 expansion");
  add_state_opts(second, o);
  add_output_opts(second, o);
  second->add_option("--epsilon", o.epsilon, "error tolerance in (0,1/2)")->required();
  second->add_option("--n", n, "also evaluate a n + b sqrt(n)");

  auto* merge = app.add_subcommand("simulate-merge", "Monte-Carlo merging trials");
  add_state_opts(merge, o);
  add_output_opts(merge, o);
  merge->add_option("--epsilon", o.epsilon, "success threshold 1 - epsilon")->required();
  merge->add_option("--qubits", qubits, "qubits sent per trial")->required();
  merge->add_option("--trials", trials, "number of trials");
  merge->add_option("--seed", o.seed, "master seed");

  auto* redist = app.add_subcommand("simulate-redistribute", "staged redistribution");
  add_state_opts(redist, o);
  add_output_opts(redist, o);
  redist->add_option("--epsilon", o.epsilon, "target error")->required();
  redist->add_option("--qubits", qubits, "qubit budget to Bob")->required();
  redist->add_option("--ebits", ebits, "pre-shared ebits (default: the minimum needed)");
  redist->add_option("--seed", o.seed, "seed");

  auto* scan = app.add_subcommand("scan", "scan expansion coefficients over epsilon");
  add_state_opts(scan, o);
  add_output_opts(scan, o);
  scan->add_option("--eps-grid", eps_grid, "epsilon grid values")
      ->required()
      ->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::ostringstream dummy;
    app.exit(e, dummy, dummy);
    std::cerr << "error: validation: " << e.what() << "\n";
    return 2;
  }

  try {
    if (entropy->parsed()) return run_entropy(o);
    if (oneshot->parsed()) return run_bound_oneshot(o);
    if (second->parsed()) return run_bound_second_order(o, n);
    if (merge->parsed()) return run_simulate_merge(o, qubits, trials);
    if (redist->parsed()) return run_simulate_redistribute(o, qubits, ebits);
    if (scan->parsed()) return run_scan(o, eps_grid);
    if (selftest->parsed()) {
      int failures = qsr::run_acceptance(std::cout);
      if (failures > 0) {
        std::cerr << "error: solver: " << failures << " acceptance criteria failed\n";
        return 3;
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: validation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: solver: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
